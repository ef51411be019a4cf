#pragma once

#include <random>
#include <vector>

#include "gwave/graph/graph.hpp"
#include "gwave/numerics/matrix.hpp"

namespace fixtures {

// Five-vertex test network used throughout the experiments.
inline gwave::Graph five_vertex()
{
    return gwave::Graph(5, {{1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {4, 5}});
}

// Six-vertex network with a joint at vertex 3.
inline gwave::Graph six_vertex_joint()
{
    return gwave::Graph(6, {{1, 2}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {3, 6}, {5, 6}});
}

inline gwave::Graph k2() { return gwave::Graph(2, {{1, 2}}); }
inline gwave::Graph path3() { return gwave::Graph(3, {{1, 2}, {2, 3}}); }
inline gwave::Graph cycle4() { return gwave::Graph(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}); }

inline gwave::Graph complete(int n)
{
    std::vector<gwave::Edge> e;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            e.push_back({u, v});
    return gwave::Graph(n, e);
}

// Random connected graph: random spanning tree plus extra edges with probability p.
inline gwave::Graph random_connected(int n, double p, std::mt19937_64& rng)
{
    std::vector<gwave::Edge> e;
    std::vector<std::vector<char>> has(n + 1, std::vector<char>(n + 1, 0));
    for (int v = 2; v <= n; ++v) {
        std::uniform_int_distribution<int> pick(1, v - 1);
        int const u = pick(rng);
        e.push_back({u, v});
        has[u][v] = has[v][u] = 1;
    }
    std::bernoulli_distribution coin(p);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (!has[u][v] && coin(rng))
                e.push_back({u, v});
    return gwave::Graph(n, e);
}

inline gwave::DenseMatrix random_symmetric(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    gwave::DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            a(i, j) = a(j, i) = u(rng);
    return a;
}

inline gwave::DenseMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    gwave::DenseMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            a(i, j) = u(rng);
    return a;
}

}  // namespace fixtures
