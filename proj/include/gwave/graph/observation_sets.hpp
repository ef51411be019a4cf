#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "gwave/graph/graph.hpp"
#include "gwave/numerics/linear_solve.hpp"

namespace gwave {

enum class AbsorbencyRule {
    /// Every vertex is in S or adjacent to a vertex of S.
    dominating,
    /// Every vertex (including those of S) is adjacent to a vertex of S.
    total,
    /// Only the vertices of E = V - S need a neighbour in S.
    unobserved_only,
};

inline bool is_absorbent(Graph const& g, VertexSet const& s,
                         AbsorbencyRule rule = AbsorbencyRule::dominating)
{
    std::vector<char> in_s(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
    for (Vertex v : s) {
        detail::require(v >= 1 && v <= g.vertex_count(), "is_absorbent: vertex outside graph");
        in_s[v] = 1;
    }
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
        if (in_s[v] && rule != AbsorbencyRule::total)
            continue;
        auto const& nb = g.neighbors(v);
        bool const covered = std::any_of(nb.begin(), nb.end(), [&](Vertex u) { return in_s[u] != 0; });
        if (!covered)
            return false;
    }
    return true;
}

/// N_S >= N_E and Δ(S;E) has full column rank.
inline bool is_dominantly_absorbent(Graph const& g, VertexPartition const& p, double tol = 1e-10)
{
    if (p.ns() < p.ne())
        return false;
    if (p.ne() == 0)
        return true;
    auto const sub = submatrix_SE(laplacian(g), p);
    return matrix_rank(sub, tol) == p.ne();
}

namespace detail {

inline void articulation_dfs(Graph const& g, Vertex u, Vertex parent, int& timer,
                             std::vector<int>& disc, std::vector<int>& low, std::vector<char>& cut)
{
    disc[u] = low[u] = ++timer;
    int children = 0;
    for (Vertex w : g.neighbors(u)) {
        if (w == parent)
            continue;
        if (disc[w]) {
            low[u] = std::min(low[u], disc[w]);
            continue;
        }
        ++children;
        articulation_dfs(g, w, u, timer, disc, low, cut);
        low[u] = std::min(low[u], low[w]);
        if (parent != 0 && low[w] >= disc[u])
            cut[u] = 1;
    }
    if (parent == 0 && children > 1)
        cut[u] = 1;
}

}  // namespace detail

/// Articulation points (joints), sorted.
inline VertexSet find_joints(Graph const& g)
{
    auto const n = static_cast<std::size_t>(g.vertex_count()) + 1;
    std::vector<int> disc(n, 0), low(n, 0);
    std::vector<char> cut(n, 0);
    int timer = 0;
    detail::articulation_dfs(g, 1, 0, timer, disc, low, cut);
    VertexSet out;
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        if (cut[v])
            out.push_back(v);
    return out;
}

/// Spanning tree by Kruskal's algorithm; with unit weights the edges are
/// scanned in lexicographic (min endpoint, max endpoint) order.
inline std::vector<Edge> kruskal_spanning_tree(Graph const& g)
{
    std::vector<Edge> edges = g.edges();
    std::sort(edges.begin(), edges.end());
    std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<Edge> tree;
    for (auto const& e : edges) {
        int const a = find(e.u);
        int const b = find(e.v);
        if (a == b)
            continue;
        parent[b] = a;
        tree.push_back(e);
        if (static_cast<int>(tree.size()) == g.vertex_count() - 1)
            break;
    }
    return tree;
}

/// Absorbent set from a spanning tree: vertices of tree-degree >= d are added
/// for d = d_max down to 2, stopping as soon as the set is absorbent in g.
inline VertexSet find_absorbent_set(Graph const& g)
{
    if (g.vertex_count() == 1)
        return {1};
    auto const tree = kruskal_spanning_tree(g);
    std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
    for (auto const& e : tree) {
        ++deg[e.u];
        ++deg[e.v];
    }
    int const dmax = *std::max_element(deg.begin() + 1, deg.end());

    std::vector<char> in_s(deg.size(), 0);
    auto current = [&] {
        VertexSet s;
        for (Vertex v = 1; v <= g.vertex_count(); ++v)
            if (in_s[v])
                s.push_back(v);
        return s;
    };
    for (int d = dmax; d >= 2; --d) {
        for (Vertex v = 1; v <= g.vertex_count(); ++v)
            if (deg[v] >= d)
                in_s[v] = 1;
        if (is_absorbent(g, current()))
            return current();
    }

    // Only reached for tiny graphs (N = 2) where the tree has no vertex of
    // degree 2: add vertices by decreasing graph degree until absorbent.
    std::vector<Vertex> order(static_cast<std::size_t>(g.vertex_count()));
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    for (Vertex v : order) {
        if (is_absorbent(g, current()))
            break;
        in_s[v] = 1;
    }
    return current();
}

}  // namespace gwave
