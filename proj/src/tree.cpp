#include "treepoly/tree.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <string>
#include <unordered_set>

#include "treepoly/error.hpp"

namespace treepoly {

namespace {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }

    std::vector<std::uint32_t> parent;
};

void check_vertex(const Tree& t, Vertex v) {
    if (v >= t.size()) {
        throw Error(ErrorCode::invalid_argument,
                    "vertex " + std::to_string(v) + " out of range for tree of size " +
                        std::to_string(t.size()));
    }
}

}  // namespace

Tree::Tree(Unchecked, std::size_t n, std::span<const Edge> edges, std::optional<Vertex> root)
    : offsets_(n == 0 ? 0 : n + 1, 0), root_(root) {
    if (n == 0) return;
    for (const auto& [a, b] : edges) {
        ++offsets_[a + 1];
        ++offsets_[b + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(2 * edges.size());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [a, b] : edges) {
        adjacency_[fill[a]++] = b;
        adjacency_[fill[b]++] = a;
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
    }
}

Tree Tree::from_edges(std::size_t n, std::span<const Edge> edges, std::optional<Vertex> root) {
    if (root && *root >= n) {
        throw Error(ErrorCode::invalid_argument, "root " + std::to_string(*root) + " out of range");
    }
    std::unordered_set<std::uint64_t> seen;
    DisjointSets sets(n);
    for (const auto& [a, b] : edges) {
        if (a >= n || b >= n) {
            throw Error(ErrorCode::label_out_of_range,
                        "edge endpoint out of range 0.." + std::to_string(n == 0 ? 0 : n - 1));
        }
        if (a == b) {
            throw Error(ErrorCode::cycle, "self-loop at vertex " + std::to_string(a));
        }
        const auto lo = std::min(a, b), hi = std::max(a, b);
        if (!seen.insert((std::uint64_t{lo} << 32) | hi).second) {
            throw Error(ErrorCode::duplicate_edge,
                        "duplicate edge " + std::to_string(lo) + "-" + std::to_string(hi));
        }
        if (!sets.unite(a, b)) {
            throw Error(ErrorCode::cycle,
                        "cycle detected at edge " + std::to_string(a) + "-" + std::to_string(b));
        }
    }
    if (n > 0 && edges.size() != n - 1) {
        throw Error(ErrorCode::disconnected,
                    std::to_string(n) + " vertices but only " + std::to_string(edges.size()) +
                        " edges");
    }
    return Tree(Unchecked{}, n, edges, root);
}

std::span<const Vertex> Tree::neighbors(Vertex v) const {
    check_vertex(*this, v);
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
}

Tree Tree::with_root(Vertex r) const {
    check_vertex(*this, r);
    Tree copy = *this;
    copy.root_ = r;
    return copy;
}

std::vector<Edge> Tree::edges() const {
    std::vector<Edge> out;
    out.reserve(size() == 0 ? 0 : size() - 1);
    for (Vertex v = 0; v < size(); ++v) {
        for (Vertex u : neighbors(v)) {
            if (v < u) out.emplace_back(v, u);
        }
    }
    return out;
}

Tree Tree::relabeled(std::span<const Vertex> perm) const {
    if (perm.size() != size()) {
        throw Error(ErrorCode::invalid_argument, "permutation size does not match tree size");
    }
    auto es = edges();
    for (auto& [a, b] : es) {
        a = perm[a];
        b = perm[b];
    }
    std::optional<Vertex> r;
    if (root_) r = perm[*root_];
    return from_edges(size(), es, r);
}

Tree parse_edge_list(std::string_view text) {
    std::vector<std::pair<long long, long long>> raw;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        long long values[2];
        int count = 0;
        std::size_t pos = 0;
        while (true) {
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
            if (pos == line.size()) break;
            if (count == 2) {
                throw Error(ErrorCode::malformed_input,
                            "line " + std::to_string(line_no) + ": expected two integers");
            }
            const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), values[count]);
            if (ec != std::errc{} || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t' && *ptr != '\r')) {
                throw Error(ErrorCode::malformed_input,
                            "line " + std::to_string(line_no) + ": not an integer");
            }
            pos = static_cast<std::size_t>(ptr - line.data());
            ++count;
        }
        if (count == 0) continue;
        if (count != 2) {
            throw Error(ErrorCode::malformed_input,
                        "line " + std::to_string(line_no) + ": expected two integers");
        }
        raw.emplace_back(values[0], values[1]);
    }

    std::unordered_set<long long> labels;
    for (const auto& [a, b] : raw) {
        labels.insert(a);
        labels.insert(b);
    }
    const auto n = static_cast<long long>(labels.size());
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const auto& [a, b] : raw) {
        for (long long label : {a, b}) {
            if (label < 1 || label > n) {
                throw Error(ErrorCode::label_out_of_range,
                            "label " + std::to_string(label) + " outside 1.." + std::to_string(n));
            }
        }
        edges.emplace_back(static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1));
    }
    return Tree::from_edges(static_cast<std::size_t>(n), edges);
}

std::vector<Vertex> closed_neighborhood(const Tree& t, Vertex v) {
    auto nbrs = t.neighbors(v);
    std::vector<Vertex> out(nbrs.begin(), nbrs.end());
    out.insert(std::upper_bound(out.begin(), out.end(), v), v);
    return out;
}

Forest delete_vertices(const Tree& t, std::span<const Vertex> vs) {
    const std::size_t n = t.size();
    std::vector<char> removed(n, 0);
    for (Vertex v : vs) {
        check_vertex(t, v);
        removed[v] = 1;
    }

    // Label components by flood fill in ascending start order.
    constexpr std::uint32_t unassigned = ~0u;
    std::vector<std::uint32_t> component(n, unassigned);
    std::vector<Vertex> stack;
    std::uint32_t count = 0;
    for (Vertex s = 0; s < n; ++s) {
        if (removed[s] || component[s] != unassigned) continue;
        component[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            for (Vertex u : t.neighbors(v)) {
                if (!removed[u] && component[u] == unassigned) {
                    component[u] = count;
                    stack.push_back(u);
                }
            }
        }
        ++count;
    }

    std::vector<std::uint32_t> local(n, 0);
    std::vector<std::uint32_t> sizes(count, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (!removed[v]) local[v] = sizes[component[v]]++;
    }
    std::vector<std::vector<Edge>> edges(count);
    for (Vertex v = 0; v < n; ++v) {
        if (removed[v]) continue;
        for (Vertex u : t.neighbors(v)) {
            if (v < u && !removed[u]) edges[component[v]].emplace_back(local[v], local[u]);
        }
    }

    Forest forest;
    forest.reserve(count);
    for (std::uint32_t c = 0; c < count; ++c) {
        forest.push_back(Tree::from_edges(sizes[c], edges[c]));
    }
    return forest;
}

std::vector<Vertex> centers(const Tree& t) {
    const std::size_t n = t.size();
    if (n == 0) throw Error(ErrorCode::empty_tree, "centers of the empty tree");
    if (n <= 2) {
        std::vector<Vertex> all(n);
        std::iota(all.begin(), all.end(), 0u);
        return all;
    }
    std::vector<std::uint32_t> degree(n);
    std::vector<Vertex> layer;
    for (Vertex v = 0; v < n; ++v) {
        degree[v] = static_cast<std::uint32_t>(t.degree(v));
        if (degree[v] == 1) layer.push_back(v);
    }
    std::size_t remaining = n;
    std::vector<Vertex> next;
    while (remaining > 2) {
        remaining -= layer.size();
        next.clear();
        for (Vertex leaf : layer) {
            for (Vertex u : t.neighbors(leaf)) {
                if (--degree[u] == 1) next.push_back(u);
            }
        }
        layer.swap(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

std::vector<std::uint32_t> degree_sequence(const Tree& t) {
    std::vector<std::uint32_t> out(t.size());
    for (Vertex v = 0; v < t.size(); ++v) out[v] = static_cast<std::uint32_t>(t.degree(v));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

Tree add_leaf(const Tree& t, Vertex v) {
    if (t.empty()) throw Error(ErrorCode::empty_tree, "cannot attach a leaf to the empty tree");
    check_vertex(t, v);
    auto es = t.edges();
    es.emplace_back(v, static_cast<Vertex>(t.size()));
    return Tree(Tree::Unchecked{}, t.size() + 1, es, t.root());
}

}  // namespace treepoly
