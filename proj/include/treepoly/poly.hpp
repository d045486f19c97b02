#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace treepoly {

using Coefficient = std::uint64_t;

// Exact independence-style polynomial: coeffs()[k] counts sets of size k.
// Invariants: non-empty, coeffs()[0] == 1, leading coefficient >= 1.
class Polynomial {
public:
    Polynomial() : coeffs_{1} {}
    explicit Polynomial(std::vector<Coefficient> coeffs);
    Polynomial(std::initializer_list<Coefficient> coeffs)
        : Polynomial(std::vector<Coefficient>(coeffs)) {}

    static Polynomial one() { return Polynomial(); }

    std::span<const Coefficient> coeffs() const noexcept { return coeffs_; }
    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    Coefficient operator[](std::size_t k) const { return coeffs_.at(k); }

    // Sum of coefficients, i.e. the value at x = 1.
    Coefficient evaluate_at_one() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;
    friend auto operator<=>(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<Coefficient> coeffs_;
};

// Both throw Error(overflow) rather than wrap.
Polynomial mul(const Polynomial& a, const Polynomial& b);
// a + x*b
Polynomial combine(const Polynomial& a, const Polynomial& b);

bool is_unimodal(const Polynomial& p) noexcept;
bool is_log_concave(const Polynomial& p) noexcept;
bool is_symmetric(const Polynomial& p) noexcept;
bool is_fibonacci_number(Coefficient c) noexcept;
bool is_fibonacci(const Polynomial& p) noexcept;

enum class Monotonicity { ascending, descending, neither };

// Constant sequences report ascending.
Monotonicity monotonicity(const Polynomial& p) noexcept;
const char* monotonicity_name(Monotonicity m) noexcept;

// Smallest index attaining the maximum coefficient.
std::size_t argmax_lowest(const Polynomial& p) noexcept;

// "1,7,15,10,1"
std::string format_coeffs(const Polynomial& p);
Polynomial parse_coeffs(std::string_view text);

}  // namespace treepoly
