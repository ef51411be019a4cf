#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "gwave/graph/graph.hpp"
#include "gwave/numerics/eigen.hpp"
#include "gwave/numerics/linear_solve.hpp"

namespace gwave {

/// One distinct eigenvalue -omega^2 of the Laplacian and its eigenvector group.
struct EigenCluster {
    double eigenvalue = 0.0;  ///< group mean, equal to -omega^2
    double omega = 0.0;
    /// N x m matrix with orthonormal columns.
    DenseMatrix vectors;

    [[nodiscard]] std::size_t multiplicity() const { return vectors.cols(); }
};

struct SpectralDecomposition {
    /// Ordered by increasing omega (cluster 0 is the zero mode).
    std::vector<EigenCluster> clusters;
    std::size_t n = 0;
    /// Relative gaps between neighbouring clusters smaller than 1e3 * cluster_tol.
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t K() const { return clusters.size(); }

    /// Total mode count (equals n) and the flat offset of cluster k.
    [[nodiscard]] std::size_t offset(std::size_t k) const
    {
        std::size_t o = 0;
        for (std::size_t j = 0; j < k; ++j)
            o += clusters[j].multiplicity();
        return o;
    }

    /// Mode vectors as columns, in cluster order (N x N, orthonormal).
    [[nodiscard]] DenseMatrix basis() const
    {
        DenseMatrix q(n, n);
        std::size_t col = 0;
        for (auto const& c : clusters)
            for (std::size_t l = 0; l < c.multiplicity(); ++l, ++col)
                for (std::size_t r = 0; r < n; ++r)
                    q(r, col) = c.vectors(r, l);
        return q;
    }
};

namespace detail {

// Modified Gram-Schmidt on the columns of q, in place.
inline void orthonormalize_columns(DenseMatrix& q)
{
    for (std::size_t j = 0; j < q.cols(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            double d = 0.0;
            for (std::size_t r = 0; r < q.rows(); ++r)
                d += q(r, i) * q(r, j);
            for (std::size_t r = 0; r < q.rows(); ++r)
                q(r, j) -= d * q(r, i);
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < q.rows(); ++r)
            nrm += q(r, j) * q(r, j);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0)
            throw NumericalError("decompose: degenerate eigenvector group");
        for (std::size_t r = 0; r < q.rows(); ++r)
            q(r, j) /= nrm;
    }
}

}  // namespace detail

/// Groups the Laplacian spectrum into distinct eigenvalues. Consecutive sorted
/// eigenvalues within cluster_tol * max(1, |lambda|) belong to one cluster.
inline SpectralDecomposition decompose(DenseMatrix const& lap, double cluster_tol = 1e-8)
{
    detail::require(cluster_tol > 0, "decompose: cluster_tol must be positive");
    auto const eig = sym_eig(lap);
    std::size_t const n = lap.rows();
    double const zero_tol = 1e-9 * std::max(1.0, lap.max_abs());
    if (n == 0 || std::abs(eig.eigenvalues.front()) > zero_tol)
        throw InvalidArgument("decompose: no zero eigenvalue, input is not a graph Laplacian");
    if (eig.eigenvalues.front() > zero_tol)
        throw InvalidArgument("decompose: positive eigenvalue, input is not a graph Laplacian");

    SpectralDecomposition out;
    out.n = n;
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n) {
            double const prev = eig.eigenvalues[end - 1];
            double const cur = eig.eigenvalues[end];
            if (std::abs(prev - cur) > cluster_tol * std::max(1.0, std::abs(prev)))
                break;
            ++end;
        }
        EigenCluster c;
        double sum = 0.0;
        for (std::size_t j = start; j < end; ++j)
            sum += eig.eigenvalues[j];
        c.eigenvalue = sum / static_cast<double>(end - start);
        if (start == 0)
            c.eigenvalue = 0.0;
        c.omega = std::sqrt(std::max(0.0, -c.eigenvalue));
        c.vectors = DenseMatrix(n, end - start);
        for (std::size_t j = start; j < end; ++j)
            for (std::size_t r = 0; r < n; ++r)
                c.vectors(r, j - start) = eig.eigenvectors(r, j);
        detail::orthonormalize_columns(c.vectors);
        out.clusters.push_back(std::move(c));
        start = end;
    }

    for (std::size_t k = 1; k < out.clusters.size(); ++k) {
        double const a = out.clusters[k - 1].eigenvalue;
        double const b = out.clusters[k].eigenvalue;
        if (std::abs(a - b) <= 1e3 * cluster_tol * std::max(1.0, std::abs(a)))
            out.warnings.push_back("near-degenerate eigenvalues " + std::to_string(a) + " and " +
                                   std::to_string(b) + " kept as separate clusters");
    }
    return out;
}

inline std::size_t max_multiplicity(SpectralDecomposition const& spec)
{
    std::size_t m = 0;
    for (auto const& c : spec.clusters)
        m = std::max(m, c.multiplicity());
    return m;
}

/// Rows S of the eigenvector group of cluster k (N_S x m_k).
inline DenseMatrix restricted_group(SpectralDecomposition const& spec, std::size_t k,
                                    VertexSet const& s)
{
    auto const& v = spec.clusters.at(k).vectors;
    DenseMatrix a(s.size(), v.cols());
    for (std::size_t i = 0; i < s.size(); ++i) {
        detail::require(s[i] >= 1 && static_cast<std::size_t>(s[i]) <= spec.n,
                        "restricted_group: vertex outside graph");
        for (std::size_t l = 0; l < v.cols(); ++l)
            a(i, l) = v(static_cast<std::size_t>(s[i] - 1), l);
    }
    return a;
}

struct StrategicReport {
    bool strategic = true;
    /// Cluster indices whose restricted group is rank deficient.
    std::vector<std::size_t> failing_clusters;
    std::string message;
};

/// Number of singular values of a above an absolute threshold.
inline std::size_t absolute_rank(DenseMatrix const& a, double tol)
{
    if (a.rows() == 0 || a.cols() == 0)
        return 0;
    auto const s = svd(a).singular;
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](double v) { return v > tol; }));
}

/// Checks rank(A^(k)) = m_k for every cluster. tol is an absolute threshold on
/// singular values (the groups have orthonormal columns).
inline StrategicReport strategic_report(SpectralDecomposition const& spec, VertexSet const& s,
                                        double tol = 1e-8)
{
    detail::require(!s.empty(), "is_strategic: observation set is empty");
    StrategicReport rep;
    for (std::size_t k = 0; k < spec.K(); ++k) {
        auto const a = restricted_group(spec, k, s);
        if (absolute_rank(a, tol) < spec.clusters[k].multiplicity()) {
            rep.strategic = false;
            rep.failing_clusters.push_back(k);
        }
    }
    if (!rep.strategic) {
        rep.message = "observation set is not strategic: rank deficient for eigenvalue";
        for (auto k : rep.failing_clusters) {
            char buf[96];
            std::snprintf(buf, sizeof buf, " %.12g (multiplicity %zu)", spec.clusters[k].eigenvalue,
                          spec.clusters[k].multiplicity());
            rep.message += buf;
        }
    }
    return rep;
}

inline bool is_strategic(SpectralDecomposition const& spec, VertexSet const& s, double tol = 1e-8)
{
    return strategic_report(spec, s, tol).strategic;
}

}  // namespace gwave
