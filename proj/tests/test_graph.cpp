#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "gwave/graph/graph.hpp"
#include "gwave/graph/observation_sets.hpp"
#include "gwave/numerics/linear_solve.hpp"

using gwave::DenseMatrix;
using gwave::VertexPartition;

TEST(Graph, RejectsInvalidInput)
{
    EXPECT_THROW(gwave::Graph(3, {{1, 1}, {1, 2}, {2, 3}}), gwave::InvalidArgument);
    EXPECT_THROW(gwave::Graph(3, {{1, 2}, {2, 1}, {2, 3}}), gwave::InvalidArgument);
    EXPECT_THROW(gwave::Graph(3, {{1, 2}}), gwave::InvalidArgument);
    EXPECT_THROW(gwave::Graph(3, {{1, 4}, {1, 2}}), gwave::InvalidArgument);
    EXPECT_THROW(gwave::Graph(0, {}), gwave::InvalidArgument);
    EXPECT_NO_THROW(gwave::Graph(1, {}));
}

TEST(Partition, ComplementAndValidation)
{
    VertexPartition p(5, {4, 1, 5});
    EXPECT_EQ(p.observed(), (gwave::VertexSet{1, 4, 5}));
    EXPECT_EQ(p.unobserved(), (gwave::VertexSet{2, 3}));
    EXPECT_THROW(VertexPartition(5, {}), gwave::InvalidArgument);
    EXPECT_THROW(VertexPartition(5, {1, 1}), gwave::InvalidArgument);
    EXPECT_THROW(VertexPartition(5, {6}), gwave::InvalidArgument);
}

TEST(Laplacian, TwoVertex)
{
    EXPECT_EQ(gwave::laplacian(fixtures::k2()), (DenseMatrix{{-1, 1}, {1, -1}}));
}

TEST(Laplacian, FiveVertexNetwork)
{
    DenseMatrix const expected{{-2, 0, 0, 1, 1},
                              {0, -3, 1, 1, 1},
                              {0, 1, -2, 1, 0},
                              {1, 1, 1, -4, 1},
                              {1, 1, 0, 1, -3}};
    EXPECT_EQ(gwave::laplacian(fixtures::five_vertex()), expected);
}

TEST(Laplacian, SixVertexJointNetwork)
{
    DenseMatrix const expected{{-2, 1, 0, 1, 0, 0},
                              {1, -3, 1, 1, 0, 0},
                              {0, 1, -4, 1, 1, 1},
                              {1, 1, 1, -3, 0, 0},
                              {0, 0, 1, 0, -2, 1},
                              {0, 0, 1, 0, 1, -2}};
    EXPECT_EQ(gwave::laplacian(fixtures::six_vertex_joint()), expected);
}

TEST(Laplacian, RowSumsZeroAndSymmetric)
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = fixtures::random_connected(2 + trial % 10, 0.3, rng);
        auto d = gwave::laplacian(g);
        EXPECT_TRUE(d.is_symmetric(0.0));
        for (std::size_t r = 0; r < d.rows(); ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < d.cols(); ++c)
                s += d(r, c);
            EXPECT_EQ(s, 0.0);
        }
    }
}

TEST(SubmatrixSE, ReferenceExamples)
{
    auto const d6 = gwave::laplacian(fixtures::six_vertex_joint());
    EXPECT_EQ(gwave::submatrix_SE(d6, VertexPartition(6, {1, 2, 5})),
              (DenseMatrix{{0, 1, 0}, {1, 1, 0}, {1, 0, 1}}));
    EXPECT_EQ(gwave::submatrix_SE(d6, VertexPartition(6, {1, 2, 3, 4})),
              (DenseMatrix{{0, 0}, {0, 0}, {1, 1}, {0, 0}}));
    auto const d5 = gwave::laplacian(fixtures::five_vertex());
    EXPECT_EQ(gwave::submatrix_SE(d5, VertexPartition(5, {1, 4, 5})),
              (DenseMatrix{{0, 0}, {1, 1}, {1, 0}}));
    EXPECT_THROW(gwave::submatrix_SE(d5, VertexPartition(6, {1})), gwave::InvalidArgument);
}

TEST(Absorbent, Examples)
{
    EXPECT_TRUE(gwave::is_absorbent(fixtures::complete(3), {1}));
    EXPECT_FALSE(gwave::is_absorbent(fixtures::path3(), {1}));
    EXPECT_TRUE(gwave::is_absorbent(fixtures::five_vertex(), {1, 4}));
}

TEST(Absorbent, RuleVariants)
{
    // star: centre alone covers everything except itself under the total rule
    gwave::Graph star(4, {{1, 2}, {1, 3}, {1, 4}});
    EXPECT_TRUE(gwave::is_absorbent(star, {1}));
    EXPECT_FALSE(gwave::is_absorbent(star, {1}, gwave::AbsorbencyRule::total));
    EXPECT_TRUE(gwave::is_absorbent(star, {1, 2}, gwave::AbsorbencyRule::total));
    EXPECT_TRUE(gwave::is_absorbent(fixtures::path3(), {2}, gwave::AbsorbencyRule::unobserved_only));
}

TEST(DominantlyAbsorbent, Examples)
{
    auto const g6 = fixtures::six_vertex_joint();
    EXPECT_TRUE(gwave::is_dominantly_absorbent(g6, VertexPartition(6, {1, 2, 5})));
    EXPECT_FALSE(gwave::is_dominantly_absorbent(g6, VertexPartition(6, {1, 2, 3, 4})));
    auto const g5 = fixtures::five_vertex();
    EXPECT_FALSE(gwave::is_dominantly_absorbent(g5, VertexPartition(5, {1, 4})));
    EXPECT_TRUE(gwave::is_dominantly_absorbent(g5, VertexPartition(5, {1, 4, 5})));
}

TEST(DominantlyAbsorbent, ImpliesAbsorbentAndHalfTheVertices)
{
    std::mt19937_64 rng(99);
    int da_count = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int const n = 2 + trial % 11;
        auto g = fixtures::random_connected(n, 0.35, rng);
        std::bernoulli_distribution coin(0.6);
        gwave::VertexSet s;
        for (int v = 1; v <= n; ++v)
            if (coin(rng))
                s.push_back(v);
        if (s.empty())
            s.push_back(1);
        VertexPartition p(n, s);
        if (gwave::is_dominantly_absorbent(g, p)) {
            ++da_count;
            EXPECT_TRUE(gwave::is_absorbent(g, s));
            EXPECT_GE(2 * static_cast<int>(p.ns()), n);
        }
    }
    EXPECT_GT(da_count, 20);
}

TEST(Joints, Examples)
{
    EXPECT_EQ(gwave::find_joints(fixtures::path3()), (gwave::VertexSet{2}));
    EXPECT_TRUE(gwave::find_joints(fixtures::complete(4)).empty());
    EXPECT_EQ(gwave::find_joints(fixtures::six_vertex_joint()), (gwave::VertexSet{3}));
}

TEST(Joints, AgreeWithRemovalCount)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int const n = 2 + trial % 10;
        auto g = fixtures::random_connected(n, 0.2, rng);
        auto joints = gwave::find_joints(g);
        std::set<int> js(joints.begin(), joints.end());
        for (int v = 1; v <= n; ++v)
            EXPECT_EQ(js.count(v) == 1, g.component_count({v}) > 1) << "vertex " << v;
    }
}

TEST(Joints, SensorsBehindJointAreNotDominantlyAbsorbent)
{
    auto const g = fixtures::six_vertex_joint();
    auto const d = gwave::laplacian(g);
    gwave::VertexSet const big{1, 2, 3, 4};
    for (unsigned mask = 1; mask < (1u << big.size()); ++mask) {
        gwave::VertexSet s;
        for (std::size_t b = 0; b < big.size(); ++b)
            if (mask & (1u << b))
                s.push_back(big[b]);
        VertexPartition p(6, s);
        EXPECT_LT(gwave::matrix_rank(gwave::submatrix_SE(d, p)), p.ne());
    }
}

TEST(Kruskal, Examples)
{
    gwave::Graph tri(3, {{2, 3}, {1, 3}, {1, 2}});
    EXPECT_EQ(gwave::kruskal_spanning_tree(tri), (std::vector<gwave::Edge>{{1, 2}, {1, 3}}));

    gwave::Graph tree(5, {{4, 5}, {1, 2}, {2, 3}, {2, 4}});
    auto t = gwave::kruskal_spanning_tree(tree);
    std::sort(t.begin(), t.end());
    auto e = tree.edges();
    std::sort(e.begin(), e.end());
    EXPECT_EQ(t, e);

    auto g5 = fixtures::five_vertex();
    auto t5 = gwave::kruskal_spanning_tree(g5);
    ASSERT_EQ(t5.size(), 4u);
    EXPECT_NO_THROW(gwave::Graph(5, t5));  // connected with N-1 edges, hence acyclic
}

TEST(FindAbsorbentSet, Examples)
{
    gwave::Graph star(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}});
    EXPECT_EQ(gwave::find_absorbent_set(star), (gwave::VertexSet{1}));
    gwave::Graph path(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
    EXPECT_TRUE(gwave::is_absorbent(path, gwave::find_absorbent_set(path)));
    auto g5 = fixtures::five_vertex();
    EXPECT_TRUE(gwave::is_absorbent(g5, gwave::find_absorbent_set(g5)));
    EXPECT_EQ(gwave::find_absorbent_set(gwave::Graph(1, {})), (gwave::VertexSet{1}));
    EXPECT_TRUE(gwave::is_absorbent(fixtures::k2(), gwave::find_absorbent_set(fixtures::k2())));
}

TEST(FindAbsorbentSet, AlwaysAbsorbentOnRandomGraphs)
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = fixtures::random_connected(1 + trial % 15, 0.15, rng);
        EXPECT_TRUE(gwave::is_absorbent(g, gwave::find_absorbent_set(g)));
    }
}
