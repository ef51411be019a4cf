#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gwave/numerics/matrix.hpp"

namespace gwave {

/// 1-based vertex label.
using Vertex = int;
using VertexSet = std::vector<Vertex>;

struct Edge {
    Vertex u;
    Vertex v;
    friend auto operator<=>(Edge const&, Edge const&) = default;
};

/// Undirected, unweighted, connected simple graph on vertices 1..N.
class Graph {
public:
    Graph(int vertex_count, std::vector<Edge> edges) : n_{vertex_count}
    {
        if (n_ < 1)
            throw InvalidArgument("Graph: vertex count must be >= 1");
        std::set<Edge> seen;
        for (auto e : edges) {
            if (e.u < 1 || e.u > n_ || e.v < 1 || e.v > n_)
                throw InvalidArgument("Graph: edge {" + std::to_string(e.u) + "," +
                                      std::to_string(e.v) + "} has a label outside 1.." +
                                      std::to_string(n_));
            if (e.u == e.v)
                throw InvalidArgument("Graph: self-loop at vertex " + std::to_string(e.u));
            if (e.u > e.v)
                std::swap(e.u, e.v);
            if (!seen.insert(e).second)
                throw InvalidArgument("Graph: duplicate edge {" + std::to_string(e.u) + "," +
                                      std::to_string(e.v) + "}");
            edges_.push_back(e);
        }
        adj_.assign(static_cast<std::size_t>(n_) + 1, {});
        for (auto const& e : edges_) {
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
        for (auto& a : adj_)
            std::sort(a.begin(), a.end());
        if (component_count({}) != 1)
            throw InvalidArgument("Graph: graph is not connected");
    }

    [[nodiscard]] int vertex_count() const { return n_; }
    /// Edges with u < v, in input order.
    [[nodiscard]] std::vector<Edge> const& edges() const { return edges_; }
    [[nodiscard]] std::vector<Vertex> const& neighbors(Vertex v) const { return adj_.at(v); }
    [[nodiscard]] int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }

    [[nodiscard]] bool adjacent(Vertex a, Vertex b) const
    {
        auto const& n = adj_.at(a);
        return std::binary_search(n.begin(), n.end(), b);
    }

    /// Connected components of the graph with the given vertices removed.
    [[nodiscard]] int component_count(VertexSet const& removed) const
    {
        std::vector<char> gone(static_cast<std::size_t>(n_) + 1, 0);
        for (Vertex v : removed)
            gone.at(v) = 1;
        std::vector<char> seen(gone);
        int comps = 0;
        std::vector<Vertex> stack;
        for (Vertex s = 1; s <= n_; ++s) {
            if (seen[s])
                continue;
            ++comps;
            seen[s] = 1;
            stack.push_back(s);
            while (!stack.empty()) {
                Vertex const x = stack.back();
                stack.pop_back();
                for (Vertex y : adj_[x])
                    if (!seen[y]) {
                        seen[y] = 1;
                        stack.push_back(y);
                    }
            }
        }
        return comps;
    }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

/// Observation set S and its complement E, both sorted.
class VertexPartition {
public:
    VertexPartition(int vertex_count, VertexSet observed)
    {
        std::sort(observed.begin(), observed.end());
        if (observed.empty())
            throw InvalidArgument("VertexPartition: observation set is empty");
        if (std::adjacent_find(observed.begin(), observed.end()) != observed.end())
            throw InvalidArgument("VertexPartition: observation set has duplicates");
        if (observed.front() < 1 || observed.back() > vertex_count)
            throw InvalidArgument("VertexPartition: observation vertex outside 1.." +
                                  std::to_string(vertex_count));
        s_ = std::move(observed);
        for (Vertex v = 1; v <= vertex_count; ++v)
            if (!std::binary_search(s_.begin(), s_.end(), v))
                e_.push_back(v);
        n_ = vertex_count;
    }

    [[nodiscard]] VertexSet const& observed() const { return s_; }
    [[nodiscard]] VertexSet const& unobserved() const { return e_; }
    [[nodiscard]] int vertex_count() const { return n_; }
    [[nodiscard]] std::size_t ns() const { return s_.size(); }
    [[nodiscard]] std::size_t ne() const { return e_.size(); }
    [[nodiscard]] bool is_observed(Vertex v) const { return std::binary_search(s_.begin(), s_.end(), v); }

private:
    int n_ = 0;
    VertexSet s_;
    VertexSet e_;
};

/// Zero-based indices of 1-based labels.
inline std::vector<std::size_t> to_indices(VertexSet const& labels)
{
    std::vector<std::size_t> idx;
    idx.reserve(labels.size());
    for (Vertex v : labels)
        idx.push_back(static_cast<std::size_t>(v - 1));
    return idx;
}

/// Graph Laplacian with unit edge weights: 1 off the diagonal for each edge,
/// minus the degree on the diagonal.
inline DenseMatrix laplacian(Graph const& g)
{
    auto const n = static_cast<std::size_t>(g.vertex_count());
    DenseMatrix d(n, n);
    for (auto const& e : g.edges()) {
        d(e.u - 1, e.v - 1) = 1.0;
        d(e.v - 1, e.u - 1) = 1.0;
        d(e.u - 1, e.u - 1) -= 1.0;
        d(e.v - 1, e.v - 1) -= 1.0;
    }
    return d;
}

/// Rows S, columns E of the Laplacian (N_S x N_E).
inline DenseMatrix submatrix_SE(DenseMatrix const& lap, VertexPartition const& p)
{
    detail::require(lap.rows() == static_cast<std::size_t>(p.vertex_count()) && lap.is_square(),
                    "submatrix_SE: Laplacian size does not match the partition");
    auto const rows = to_indices(p.observed());
    auto const cols = to_indices(p.unobserved());
    return lap.select(rows, cols);
}

}  // namespace gwave
