#include "treepoly/indpoly.hpp"

#include <array>
#include <bit>
#include <mutex>
#include <vector>

#include "treepoly/error.hpp"

namespace treepoly {

std::optional<Polynomial> MemoCache::find(const std::string& code) const {
    {
        std::shared_lock lock(mutex_);
        if (auto it = entries_.find(code); it != entries_.end()) return it->second;
    }
    if (!fallback_) return std::nullopt;
    auto found = fallback_(code);
    if (found && code.size() / 2 <= retention_limit_) {
        std::unique_lock lock(mutex_);
        entries_.try_emplace(code, *found);
    }
    return found;
}

bool MemoCache::insert(const std::string& code, const Polynomial& p) {
    if (code.size() / 2 > retention_limit_) return false;
    std::unique_lock lock(mutex_);
    return entries_.try_emplace(code, p).second;
}

std::size_t MemoCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

void MemoCache::clear() {
    std::unique_lock lock(mutex_);
    entries_.clear();
}

Polynomial forest_polynomial(const Forest& forest, MemoCache& cache) {
    Polynomial product;
    for (const Tree& component : forest) {
        product = mul(product, independence_polynomial(component, cache));
    }
    return product;
}

Polynomial independence_polynomial(const Tree& t, MemoCache& cache) {
    if (t.size() == 0) return Polynomial{1};
    if (t.size() == 1) return Polynomial{1, 1};

    return independence_polynomial(t, canonical_form(t), cache);
}

Polynomial independence_polynomial(const Tree& t, const CanonicalForm& form, MemoCache& cache) {
    if (t.size() == 0) return Polynomial{1};
    if (t.size() == 1) return Polynomial{1, 1};

    const std::string& code = form.code.bits();
    if (auto hit = cache.find(code)) return *hit;

    const Vertex pivot[] = {form.root};
    const auto without_pivot = forest_polynomial(delete_vertices(t, pivot), cache);
    const auto without_closed = forest_polynomial(delete_vertices(t, closed_neighborhood(t, form.root)), cache);
    auto result = combine(without_pivot, without_closed);
    cache.insert(code, result);
    return result;
}

Polynomial brute_force_polynomial(const Tree& t) {
    const std::size_t n = t.size();
    if (n > kBruteForceMaxVertices) {
        throw Error(ErrorCode::too_large, "brute force limited to " +
                                              std::to_string(kBruteForceMaxVertices) + " vertices");
    }
    std::vector<std::uint32_t> adjacency(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex u : t.neighbors(v)) adjacency[v] |= 1u << u;
    }

    // Walk all subsets in Gray-code order, tracking the number of edges
    // inside the current subset; each step flips one vertex.
    std::array<Coefficient, kBruteForceMaxVertices + 1> bins{};
    std::uint32_t subset = 0;
    std::uint32_t internal_edges = 0;
    bins[0] = 1;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < total; ++step) {
        const auto v = static_cast<unsigned>(std::countr_zero(step));
        const auto touching = static_cast<std::uint32_t>(std::popcount(adjacency[v] & subset));
        subset ^= 1u << v;
        if (subset & (1u << v)) {
            internal_edges += touching;
        } else {
            internal_edges -= touching;
        }
        if (internal_edges == 0) ++bins[static_cast<std::size_t>(std::popcount(subset))];
    }

    std::size_t top = n;
    while (top > 0 && bins[top] == 0) --top;
    return Polynomial(std::vector<Coefficient>(bins.begin(), bins.begin() + top + 1));
}

}  // namespace treepoly
