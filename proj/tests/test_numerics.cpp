#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "gwave/numerics.hpp"

using gwave::DenseMatrix;
using gwave::Vector;

namespace {

double det3(DenseMatrix const& a)
{
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

void expect_eigen_invariants(DenseMatrix const& a, gwave::EigenResult const& r)
{
    std::size_t const n = a.rows();
    auto const& q = r.eigenvectors;
    auto const qtq = q.transpose() * q;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            EXPECT_NEAR(qtq(i, j), i == j ? 1.0 : 0.0, 1e-10);
    double const scale = std::max(1.0, a.frobenius());
    for (std::size_t j = 0; j < n; ++j) {
        auto const col = q.column(j);
        auto const aq = a * col;
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            res += std::pow(aq[i] - r.eigenvalues[j] * col[i], 2);
        EXPECT_LE(std::sqrt(res), 1e-9 * scale);
        if (j > 0) {
            EXPECT_GE(r.eigenvalues[j - 1], r.eigenvalues[j]);
        }
    }
}

}  // namespace

TEST(SymEig, DiagonalMatrix)
{
    DenseMatrix a{{-1, 0}, {0, -3}};
    auto r = gwave::sym_eig(a);
    EXPECT_DOUBLE_EQ(r.eigenvalues[0], -1.0);
    EXPECT_DOUBLE_EQ(r.eigenvalues[1], -3.0);
    EXPECT_EQ(r.eigenvectors, DenseMatrix::identity(2));
}

TEST(SymEig, TwoVertexLaplacianMatchesClosedForm)
{
    DenseMatrix a{{-1, 1}, {1, -1}};
    // 2x2 symmetric closed form: mean +- sqrt(((a-d)/2)^2 + b^2)
    double const mean = 0.5 * (a(0, 0) + a(1, 1));
    double const rad = std::sqrt(std::pow(0.5 * (a(0, 0) - a(1, 1)), 2) + a(0, 1) * a(0, 1));
    auto r = gwave::sym_eig(a);
    EXPECT_NEAR(r.eigenvalues[0], mean + rad, 1e-14);
    EXPECT_NEAR(r.eigenvalues[1], mean - rad, 1e-14);
    EXPECT_NEAR(r.eigenvalues[0], 0.0, 1e-14);
    EXPECT_NEAR(r.eigenvalues[1], -2.0, 1e-14);
    expect_eigen_invariants(a, r);
}

TEST(SymEig, PathLaplacianRootsOfCharacteristicPolynomial)
{
    DenseMatrix a{{-1, 1, 0}, {1, -2, 1}, {0, 1, -1}};
    auto r = gwave::sym_eig(a);
    Vector const expected{0.0, -1.0, -3.0};
    for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_NEAR(r.eigenvalues[j], expected[j], 1e-13);
        DenseMatrix shifted = a;
        for (std::size_t i = 0; i < 3; ++i)
            shifted(i, i) -= r.eigenvalues[j];
        EXPECT_NEAR(det3(shifted), 0.0, 1e-12);
    }
    expect_eigen_invariants(a, r);
}

TEST(SymEig, RejectsNonSymmetric)
{
    DenseMatrix a{{0, 1}, {0, 0}};
    EXPECT_THROW(gwave::sym_eig(a), gwave::InvalidArgument);
}

TEST(SymEig, ReportsNonConvergence)
{
    std::mt19937_64 rng(3);
    auto a = fixtures::random_symmetric(8, rng);
    gwave::JacobiOptions opt;
    opt.max_sweeps = 1;
    try {
        gwave::sym_eig(a, opt);
        FAIL() << "expected NumericalError";
    } catch (gwave::NumericalError const& e) {
        EXPECT_NE(std::string(e.what()).find("1 sweeps"), std::string::npos);
    }
}

TEST(SymEig, RandomReconstructionUpTo50)
{
    std::mt19937_64 rng(11);
    for (std::size_t n : {1u, 2u, 3u, 7u, 20u, 50u}) {
        auto a = fixtures::random_symmetric(n, rng);
        auto r = gwave::sym_eig(a);
        expect_eigen_invariants(a, r);
        auto lam = DenseMatrix::diagonal(r.eigenvalues);
        auto back = r.eigenvectors * lam * r.eigenvectors.transpose();
        double err = (back - a).max_abs();
        EXPECT_LE(err, 1e-9 * std::max(1.0, a.max_abs())) << "n=" << n;
    }
}

TEST(SymEig, RepeatedEigenvaluesDeterministic)
{
    // 4-cycle Laplacian has a double eigenvalue -2.
    DenseMatrix a{{-2, 1, 0, 1}, {1, -2, 1, 0}, {0, 1, -2, 1}, {1, 0, 1, -2}};
    auto r1 = gwave::sym_eig(a);
    auto r2 = gwave::sym_eig(a);
    EXPECT_EQ(r1.eigenvectors, r2.eigenvectors);
    EXPECT_NEAR(r1.eigenvalues[1], -2.0, 1e-12);
    EXPECT_NEAR(r1.eigenvalues[2], -2.0, 1e-12);
    expect_eigen_invariants(a, r1);
    for (std::size_t j = 0; j < 4; ++j) {
        auto col = r1.eigenvectors.column(j);
        auto first = std::find_if(col.begin(), col.end(), [](double v) { return std::abs(v) > 1e-12; });
        ASSERT_NE(first, col.end());
        EXPECT_GT(*first, 0.0);
    }
}

TEST(MatrixRank, Examples)
{
    EXPECT_EQ(gwave::matrix_rank(DenseMatrix(3, 2)), 0u);
    EXPECT_EQ(gwave::matrix_rank(DenseMatrix{{0, 0}, {0, 0}, {1, 1}, {0, 0}}), 1u);
    EXPECT_EQ(gwave::matrix_rank(DenseMatrix{{0, 1, 0}, {1, 1, 0}, {1, 0, 1}}), 3u);
    EXPECT_THROW(gwave::matrix_rank(DenseMatrix(2, 2), 0.0), gwave::InvalidArgument);
}

TEST(MatrixRank, InvariantUnderPermutation)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t const rows = 3 + trial % 5, cols = 2 + trial % 4;
        // low rank product
        std::size_t const k = 1 + trial % std::min(rows, cols);
        auto a = fixtures::random_matrix(rows, k, rng) * fixtures::random_matrix(k, cols, rng);
        std::vector<std::size_t> pr(rows), pc(cols);
        std::iota(pr.begin(), pr.end(), 0u);
        std::iota(pc.begin(), pc.end(), 0u);
        std::shuffle(pr.begin(), pr.end(), rng);
        std::shuffle(pc.begin(), pc.end(), rng);
        auto b = a.select(pr, pc);
        EXPECT_EQ(gwave::matrix_rank(a), k);
        EXPECT_EQ(gwave::matrix_rank(b), gwave::matrix_rank(a));
    }
}

TEST(LeastSquares, Examples)
{
    auto r1 = gwave::solve_least_squares(DenseMatrix::identity(2), Vector{3, 4});
    EXPECT_NEAR(r1.x[0], 3.0, 1e-14);
    EXPECT_NEAR(r1.x[1], 4.0, 1e-14);
    EXPECT_FALSE(r1.rank_deficient);

    auto r2 = gwave::solve_least_squares(DenseMatrix{{1}, {1}}, Vector{1, 3});
    EXPECT_NEAR(r2.x[0], 2.0, 1e-14);

    auto r3 = gwave::solve_least_squares(DenseMatrix{{1}}, Vector{1}, 1.0);
    EXPECT_NEAR(r3.x[0], 0.5, 1e-14);
}

TEST(LeastSquares, RankDeficientGivesMinimumNorm)
{
    // x1 + x2 = 2: minimum norm solution (1, 1)
    auto r = gwave::solve_least_squares(DenseMatrix{{1, 1}}, Vector{2});
    EXPECT_TRUE(r.rank_deficient);
    EXPECT_EQ(r.rank, 1u);
    EXPECT_NEAR(r.x[0], 1.0, 1e-14);
    EXPECT_NEAR(r.x[1], 1.0, 1e-14);
}

TEST(LeastSquares, WeightedRidge)
{
    // minimize (x-1)^2 + 4 * (2x)^2 -> x = 1/17
    Vector w{2.0};
    auto r = gwave::solve_least_squares(DenseMatrix{{1}}, Vector{1}, 4.0, w);
    EXPECT_NEAR(r.x[0], 1.0 / 17.0, 1e-14);
}

TEST(LeastSquares, SquareSystemMatchesDirectSolve)
{
    std::mt19937_64 rng(17);
    for (std::size_t n : {1u, 4u, 9u, 16u}) {
        auto a = fixtures::random_matrix(n, n, rng);
        for (std::size_t i = 0; i < n; ++i)
            a(i, i) += 3.0;
        Vector b(n);
        std::uniform_real_distribution<double> u(-1, 1);
        for (auto& v : b)
            v = u(rng);
        auto ls = gwave::solve_least_squares(a, b);
        auto direct = gwave::solve_dense(a, b);
        double const scale = gwave::norm2(direct);
        for (std::size_t i = 0; i < n; ++i)
            EXPECT_NEAR(ls.x[i], direct[i], 1e-10 * scale);
    }
}

TEST(SolveSpd, MatchesDenseAndDetectsIndefinite)
{
    DenseMatrix a{{4, 1, 0}, {1, 3, 1}, {0, 1, 2}};
    Vector b{1, 2, 3};
    auto x = gwave::solve_spd(a, b);
    ASSERT_TRUE(x.has_value());
    auto y = gwave::solve_dense(a, b);
    for (int i = 0; i < 3; ++i)
        EXPECT_NEAR((*x)[i], y[i], 1e-14);
    EXPECT_FALSE(gwave::solve_spd(DenseMatrix{{1, 2}, {2, 1}}, Vector{1, 1}).has_value());
}

TEST(PseudoInverse, LeftInverseOfFullColumnRank)
{
    DenseMatrix a{{0, 0}, {1, 1}, {1, 0}};
    auto p = gwave::pseudo_inverse(a);
    auto pa = p * a;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            EXPECT_NEAR(pa(i, j), i == j ? 1.0 : 0.0, 1e-14);
}

TEST(Toeplitz, Examples)
{
    auto x1 = gwave::solve_reconstruction_toeplitz(1, Vector{22});
    EXPECT_NEAR(x1[0], 2.0, 1e-15);
    auto x2 = gwave::solve_reconstruction_toeplitz(2, Vector{12, 12});
    EXPECT_NEAR(x2[0], 120.0 / 109.0, 1e-15);
    EXPECT_NEAR(x2[1], 108.0 / 109.0, 1e-15);
    EXPECT_THROW(gwave::solve_reconstruction_toeplitz(2, Vector{1}), gwave::InvalidArgument);
}

TEST(Toeplitz, MatchesDenseEliminationUpTo50)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-5, 5);
    for (std::size_t n = 1; n <= 50; ++n) {
        Vector rhs(n);
        for (auto& v : rhs)
            v = u(rng);
        auto x = gwave::solve_reconstruction_toeplitz(n, rhs);
        auto ref = gwave::solve_dense(gwave::reconstruction_toeplitz_matrix(n), rhs);
        for (std::size_t i = 0; i < n; ++i)
            EXPECT_NEAR(x[i], ref[i], 1e-12 * std::max(1.0, std::abs(ref[i])));
        auto resid = gwave::reconstruction_toeplitz_matrix(n) * x;
        for (std::size_t i = 0; i < n; ++i)
            resid[i] -= rhs[i];
        EXPECT_LE(gwave::norm2(resid), 1e-12 * gwave::norm2(rhs));
    }
}

TEST(FiniteDiff, ConstantSeries)
{
    Vector f(10, 3.5);
    auto d = gwave::finite_diff(f, 0.1);
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_NEAR(d.first[i], 0.0, 1e-12);
        EXPECT_NEAR(d.second[i], 0.0, 1e-10);
    }
}

TEST(FiniteDiff, ExactForQuadratics)
{
    double const dt = 0.1;
    Vector f(21);
    for (std::size_t i = 0; i < f.size(); ++i) {
        double const t = static_cast<double>(i) * dt;
        f[i] = 2.0 - 3.0 * t + 0.5 * t * t;
    }
    auto d = gwave::finite_diff(f, dt);
    for (std::size_t i = 0; i < f.size(); ++i) {
        double const t = static_cast<double>(i) * dt;
        EXPECT_NEAR(d.second[i], 1.0, 1e-10);
        EXPECT_NEAR(d.first[i], -3.0 + t, 1e-11);
    }
    // t^2: interior second derivative 2 to 1e-12
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::pow(static_cast<double>(i) * dt, 2);
    d = gwave::finite_diff(f, dt);
    for (std::size_t i = 1; i + 1 < f.size(); ++i)
        EXPECT_NEAR(d.second[i], 2.0, 1e-12);
}

TEST(FiniteDiff, SineFirstDerivative)
{
    double const dt = 0.01;
    Vector f(700);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::sin(static_cast<double>(i) * dt);
    auto d = gwave::finite_diff(f, dt);
    for (std::size_t i = 1; i + 1 < f.size(); ++i)
        EXPECT_NEAR(d.first[i], std::cos(static_cast<double>(i) * dt), 1e-4);
}

TEST(FiniteDiff, TooShort)
{
    EXPECT_THROW(gwave::finite_diff(Vector{1, 2}, 0.1), gwave::InvalidArgument);
    auto d = gwave::finite_diff(Vector{0, 1, 4}, 1.0);
    EXPECT_NEAR(d.second[0], 2.0, 1e-15);
    EXPECT_NEAR(d.second[2], 2.0, 1e-15);
}
