#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

#include "treepoly/tree.hpp"

namespace treepoly {

// Order of two codes read as binary integers. Every non-empty code starts with
// '1', so this is length first, then lexicographic.
std::strong_ordering code_compare(std::string_view a, std::string_view b) noexcept;

// Balanced '1'/'0' word identifying an unlabeled tree. The empty code stands
// for the empty tree.
class CanonicalCode {
public:
    CanonicalCode() = default;

    // Throws Error(malformed_code) unless bits is a single balanced word.
    static CanonicalCode parse(std::string_view bits);

    const std::string& bits() const noexcept { return bits_; }
    std::size_t vertex_count() const noexcept { return bits_.size() / 2; }
    bool empty() const noexcept { return bits_.empty(); }

    friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
    friend std::strong_ordering operator<=>(const CanonicalCode& a, const CanonicalCode& b) noexcept {
        return code_compare(a.bits_, b.bits_);
    }

private:
    explicit CanonicalCode(std::string bits) : bits_(std::move(bits)) {}

    friend CanonicalCode rooted_code(const Tree&);
    friend struct CanonicalForm canonical_form(const Tree&);

    std::string bits_;
};

// True iff bits is one balanced word: equal counts, every proper prefix has
// strictly more '1' than '0'.
bool is_well_formed_code(std::string_view bits) noexcept;

CanonicalCode rooted_code(const Tree& t);

struct CanonicalForm {
    CanonicalCode code;
    Vertex root = 0;  // center whose rooted code is the maximum
};

CanonicalForm canonical_form(const Tree& t);

inline CanonicalCode free_code(const Tree& t) {
    if (t.empty()) return {};
    return canonical_form(t).code;
}

// Rooted tree whose rooted_code is c; vertex i is the i-th '1' in c.
Tree decode(const CanonicalCode& c);

}  // namespace treepoly
