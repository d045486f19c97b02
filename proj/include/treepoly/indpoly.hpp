#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "treepoly/canon.hpp"
#include "treepoly/poly.hpp"
#include "treepoly/tree.hpp"

namespace treepoly {

// Polynomials of free trees keyed by canonical code. Reads are concurrent;
// insertion is insert-if-absent under an exclusive lock. An optional fallback
// (typically the persistent store) is consulted on a miss and its hits are
// copied into memory.
class MemoCache {
public:
    using Fallback = std::function<std::optional<Polynomial>(const std::string& code)>;

    MemoCache() = default;
    explicit MemoCache(Fallback fallback) : fallback_(std::move(fallback)) {}

    MemoCache(const MemoCache&) = delete;
    MemoCache& operator=(const MemoCache&) = delete;

    std::optional<Polynomial> find(const std::string& code) const;
    bool insert(const std::string& code, const Polynomial& p);
    std::size_t size() const;
    void clear();

    // Trees above this vertex count are computed but not retained. Keeps the
    // cache bounded when the top-level trees are themselves being persisted.
    void set_retention_limit(std::size_t max_vertices) { retention_limit_ = max_vertices; }

private:
    Fallback fallback_;
    std::size_t retention_limit_ = static_cast<std::size_t>(-1);
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::string, Polynomial> entries_;
};

// I(t; x) by the deletion recurrence I(T) = I(T - v) + x I(T - N[v]) with v
// the canonical root (a center), multiplying over forest components.
Polynomial independence_polynomial(const Tree& t, MemoCache& cache);
// Same, for a tree whose canonical form the caller already holds.
Polynomial independence_polynomial(const Tree& t, const CanonicalForm& form, MemoCache& cache);

// Product of the component polynomials; the empty forest gives 1.
Polynomial forest_polynomial(const Forest& forest, MemoCache& cache);

// Subset enumeration over all 2^n vertex sets; n <= kBruteForceMaxVertices.
inline constexpr std::size_t kBruteForceMaxVertices = 24;
Polynomial brute_force_polynomial(const Tree& t);

}  // namespace treepoly
