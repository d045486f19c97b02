#include "treepoly/canon.hpp"

#include <algorithm>
#include <vector>

#include "treepoly/error.hpp"

namespace treepoly {

std::strong_ordering code_compare(std::string_view a, std::string_view b) noexcept {
    if (a.size() != b.size()) return a.size() <=> b.size();
    const int c = a.compare(b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool is_well_formed_code(std::string_view bits) noexcept {
    if (bits.empty()) return true;
    long depth = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            ++depth;
        } else if (bits[i] == '0') {
            --depth;
        } else {
            return false;
        }
        if (depth < 0) return false;
        if (depth == 0 && i + 1 != bits.size()) return false;
    }
    return depth == 0;
}

CanonicalCode CanonicalCode::parse(std::string_view bits) {
    if (!is_well_formed_code(bits)) {
        throw Error(ErrorCode::malformed_code, "malformed code '" + std::string(bits) + "'");
    }
    return CanonicalCode(std::string(bits));
}

namespace {

// Post-order over a BFS ordering from root; children codes sorted descending.
std::string encode_from(const Tree& t, Vertex root) {
    const std::size_t n = t.size();
    const auto none = static_cast<Vertex>(n);
    std::vector<Vertex> order;
    std::vector<Vertex> parent(n, none);
    order.reserve(n);
    order.push_back(root);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Vertex v = order[i];
        for (Vertex u : t.neighbors(v)) {
            if (u == parent[v]) continue;
            parent[u] = v;
            order.push_back(u);
        }
    }

    std::vector<std::string> codes(n);
    std::vector<std::string*> children;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Vertex v = *it;
        children.clear();
        std::size_t length = 2;
        for (Vertex u : t.neighbors(v)) {
            if (u == parent[v]) continue;
            children.push_back(&codes[u]);
            length += codes[u].size();
        }
        std::sort(children.begin(), children.end(), [](const std::string* a, const std::string* b) {
            return code_compare(*a, *b) > 0;
        });
        std::string& out = codes[v];
        out.reserve(length);
        out.push_back('1');
        for (std::string* child : children) {
            out += *child;
            std::string().swap(*child);
        }
        out.push_back('0');
    }
    return std::move(codes[root]);
}

}  // namespace

CanonicalCode rooted_code(const Tree& t) {
    if (t.empty()) throw Error(ErrorCode::empty_tree, "rooted code of the empty tree");
    if (!t.root()) throw Error(ErrorCode::invalid_argument, "rooted code requires a root");
    return CanonicalCode(encode_from(t, *t.root()));
}

CanonicalForm canonical_form(const Tree& t) {
    if (t.empty()) throw Error(ErrorCode::empty_tree, "canonical form of the empty tree");
    const auto cs = centers(t);
    CanonicalForm best{CanonicalCode(encode_from(t, cs[0])), cs[0]};
    if (cs.size() == 2) {
        std::string other = encode_from(t, cs[1]);
        if (code_compare(other, best.code.bits_) > 0) {
            best = {CanonicalCode(std::move(other)), cs[1]};
        }
    }
    return best;
}

Tree decode(const CanonicalCode& c) {
    const auto& bits = c.bits();
    if (!is_well_formed_code(bits)) {
        throw Error(ErrorCode::malformed_code, "malformed code '" + bits + "'");
    }
    if (bits.empty()) return Tree{};
    std::vector<Edge> edges;
    edges.reserve(bits.size() / 2);
    std::vector<Vertex> path;
    Vertex next = 0;
    for (char bit : bits) {
        if (bit == '1') {
            if (!path.empty()) edges.emplace_back(path.back(), next);
            path.push_back(next++);
        } else {
            path.pop_back();
        }
    }
    return Tree::from_edges(next, edges, Vertex{0});
}

}  // namespace treepoly
