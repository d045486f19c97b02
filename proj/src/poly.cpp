#include "treepoly/poly.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "treepoly/error.hpp"

namespace treepoly {

Polynomial::Polynomial(std::vector<Coefficient> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty() || coeffs_.front() != 1 || coeffs_.back() == 0) {
        throw Error(ErrorCode::invariant_violation,
                    "polynomial must have constant term 1 and a non-zero leading coefficient");
    }
}

Coefficient Polynomial::evaluate_at_one() const {
    Coefficient total = 0;
    for (Coefficient c : coeffs_) {
        if (__builtin_add_overflow(total, c, &total)) {
            throw Error(ErrorCode::overflow, "coefficient sum overflows 64 bits");
        }
    }
    return total;
}

Polynomial mul(const Polynomial& a, const Polynomial& b) {
    const auto x = a.coeffs(), y = b.coeffs();
    std::vector<Coefficient> out(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            Coefficient term;
            if (__builtin_mul_overflow(x[i], y[j], &term) ||
                __builtin_add_overflow(out[i + j], term, &out[i + j])) {
                throw Error(ErrorCode::overflow, "polynomial product overflows 64-bit coefficients");
            }
        }
    }
    return Polynomial(std::move(out));
}

Polynomial combine(const Polynomial& a, const Polynomial& b) {
    const auto x = a.coeffs(), y = b.coeffs();
    std::vector<Coefficient> out(std::max(x.size(), y.size() + 1), 0);
    std::copy(x.begin(), x.end(), out.begin());
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (__builtin_add_overflow(out[k + 1], y[k], &out[k + 1])) {
            throw Error(ErrorCode::overflow, "polynomial sum overflows 64-bit coefficients");
        }
    }
    return Polynomial(std::move(out));
}

bool is_unimodal(const Polynomial& p) noexcept {
    const auto c = p.coeffs();
    std::size_t k = 1;
    while (k < c.size() && c[k] >= c[k - 1]) ++k;
    while (k < c.size() && c[k] <= c[k - 1]) ++k;
    return k == c.size();
}

bool is_log_concave(const Polynomial& p) noexcept {
    // 128-bit products of 64-bit coefficients cannot overflow.
    using Wide = unsigned __int128;
    const auto c = p.coeffs();
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
        if (Wide{c[k]} * c[k] < Wide{c[k - 1]} * c[k + 1]) return false;
    }
    return true;
}

bool is_symmetric(const Polynomial& p) noexcept {
    const auto c = p.coeffs();
    return std::equal(c.begin(), c.begin() + c.size() / 2, c.rbegin());
}

namespace {

constexpr auto fibonacci_table() {
    // Every Fibonacci number representable in 64 bits, from F(1) = F(2) = 1.
    std::array<Coefficient, 92> fib{};
    fib[0] = 1;
    fib[1] = 2;
    for (std::size_t i = 2; i < fib.size(); ++i) fib[i] = fib[i - 1] + fib[i - 2];
    return fib;
}

constexpr auto kFibonacci = fibonacci_table();

}  // namespace

bool is_fibonacci_number(Coefficient c) noexcept {
    return std::binary_search(kFibonacci.begin(), kFibonacci.end(), c);
}

bool is_fibonacci(const Polynomial& p) noexcept {
    const auto c = p.coeffs();
    return std::all_of(c.begin(), c.end(), is_fibonacci_number);
}

Monotonicity monotonicity(const Polynomial& p) noexcept {
    const auto c = p.coeffs();
    if (std::is_sorted(c.begin(), c.end())) return Monotonicity::ascending;
    if (std::is_sorted(c.begin(), c.end(), std::greater<>())) return Monotonicity::descending;
    return Monotonicity::neither;
}

const char* monotonicity_name(Monotonicity m) noexcept {
    switch (m) {
        case Monotonicity::ascending: return "ascending";
        case Monotonicity::descending: return "descending";
        case Monotonicity::neither: return "neither";
    }
    return "neither";
}

std::size_t argmax_lowest(const Polynomial& p) noexcept {
    const auto c = p.coeffs();
    return static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
}

std::string format_coeffs(const Polynomial& p) {
    std::string out;
    for (Coefficient c : p.coeffs()) {
        if (!out.empty()) out.push_back(',');
        out += std::to_string(c);
    }
    return out;
}

Polynomial parse_coeffs(std::string_view text) {
    std::vector<Coefficient> coeffs;
    while (true) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        Coefficient value = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
            throw Error(ErrorCode::malformed_input, "bad coefficient '" + std::string(item) + "'");
        }
        coeffs.push_back(value);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return Polynomial(std::move(coeffs));
}

}  // namespace treepoly
