#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace treepoly {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Immutable unlabeled tree over dense vertex indices 0..n-1, stored as
// compressed adjacency with each neighbor list sorted ascending. The empty
// tree (n = 0) is valid.
class Tree {
public:
    Tree() = default;

    // Validates that the edges form a tree on n vertices. Throws Error with
    // duplicate_edge, cycle, disconnected or label_out_of_range.
    static Tree from_edges(std::size_t n, std::span<const Edge> edges,
                           std::optional<Vertex> root = std::nullopt);

    std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    bool empty() const noexcept { return size() == 0; }

    std::span<const Vertex> neighbors(Vertex v) const;
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }

    std::optional<Vertex> root() const noexcept { return root_; }
    Tree with_root(Vertex r) const;

    std::vector<Edge> edges() const;

    // Same tree with vertex v renamed to perm[v].
    Tree relabeled(std::span<const Vertex> perm) const;

    friend bool operator==(const Tree&, const Tree&) = default;

private:
    struct Unchecked {};
    Tree(Unchecked, std::size_t n, std::span<const Edge> edges, std::optional<Vertex> root);

    friend Tree add_leaf(const Tree&, Vertex);

    std::vector<std::uint32_t> offsets_;
    std::vector<Vertex> adjacency_;
    std::optional<Vertex> root_;
};

using Forest = std::vector<Tree>;

// One edge per line, two whitespace-separated 1-based labels. Blank lines are
// ignored. Empty input yields the empty tree.
Tree parse_edge_list(std::string_view text);

std::vector<Vertex> closed_neighborhood(const Tree& t, Vertex v);

// Components of t after removing vs, each re-indexed to 0..k-1 preserving the
// relative order of the surviving vertices. Components are ordered by their
// smallest original vertex.
Forest delete_vertices(const Tree& t, std::span<const Vertex> vs);

// One or two vertices of minimum eccentricity, ascending.
std::vector<Vertex> centers(const Tree& t);

std::vector<std::uint32_t> degree_sequence(const Tree& t);

// t plus a new leaf (index n) attached to v.
Tree add_leaf(const Tree& t, Vertex v);

}  // namespace treepoly
