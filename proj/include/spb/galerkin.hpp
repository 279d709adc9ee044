#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spb/rational.hpp"
#include "spb/spectra.hpp"

namespace spb {

/// Trial space for the degree-B Fubini-Study problem on the projective
/// line: functions z^j zbar^k (1+|z|^2)^{-m}. Indices are bounded by the
/// monomial cutoff d and by square-integrability; the top shell
/// j+k = B+2m is kept only at its stiffness-safe point (j,k) = (B+m, m),
/// since every other point on that shell would require a divergent
/// radial moment in the stiffness assembly.
struct BasisSpec {
    int B = 1;
    int m = 0;
    int d = 0;

    void validate() const {
        require(B >= 1, "BasisSpec: B must be >= 1");
        require(m >= 0, "BasisSpec: m must be >= 0");
        require(d >= 0, "BasisSpec: d must be >= 0");
    }

    std::vector<std::pair<int, int>> indices() const {
        validate();
        std::vector<std::pair<int, int>> out;
        for (int j = 0; j <= d; ++j)
            for (int k = 0; k <= d; ++k)
                if (j + k <= B + 2 * m - 1 ||
                    (j == B + m && k == m))
                    out.emplace_back(j, k);
        return out;
    }
};

using RatMatrix = std::vector<std::vector<Rat>>;

/// One angular-momentum block of the discretization: basis elements with a
/// common value of ell = j-k, their Gram matrix, and the two stiffness
/// matrices (antiholomorphic-derivative form and covariant-holomorphic
/// form). The overall factor pi is cancelled throughout.
struct GalerkinBlock {
    int ell = 0;
    std::vector<std::pair<int, int>> indices;
    RatMatrix gram;
    RatMatrix a_dbar;
    RatMatrix a_del;
};

/// Radial Fubini-Study moment (1/pi) int_C |z|^{2p} (1+|z|^2)^{-s} dx dy
/// = p! (s-p-2)! / (s-1)!, finite exactly when s >= p+2.
inline Rat moment(int p, int s) {
    require(p >= 0, "moment: p must be >= 0");
    require(s >= p + 2, "moment: divergent, need s >= p+2");
    return Rat(factorial(static_cast<unsigned>(p)) *
                   factorial(static_cast<unsigned>(s - p - 2)),
               factorial(static_cast<unsigned>(s - 1)));
}

namespace detail {

/// Radial pairing of two bracket polynomials c0 + c1 u against the weight
/// |z|^{2(p-1)} (1+u)^{-s}; zero coefficients are skipped before the
/// moment is evaluated so that only genuinely needed moments are checked
/// for convergence.
inline Rat bracket_pairing(const Int& c0, const Int& c0p, const Int& c1,
                           const Int& c1p, int p, int s, int j, int k) {
    Rat acc(0);
    Int w0 = c0 * c0p;
    Int w1 = c0 * c1p + c1 * c0p;
    Int w2 = c1 * c1p;
    try {
        if (w0 != 0) acc += Rat(w0) * moment(p - 1, s);
        if (w1 != 0) acc += Rat(w1) * moment(p, s);
        if (w2 != 0) acc += Rat(w2) * moment(p + 1, s);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(
            "assemble: divergent moment required by basis element (j,k) = (" +
            std::to_string(j) + "," + std::to_string(k) +
            "); the basis bound is ill-chosen");
    }
    return acc;
}

}  // namespace detail

/// Assembles the Gram and stiffness matrices over the trial space, split
/// into angular blocks by ell = j-k (cross-block pairings vanish by the
/// angular integral, so they are never materialized). All entries are
/// exact rationals.
inline std::vector<GalerkinBlock> assemble(const BasisSpec& spec) {
    spec.validate();
    auto basis = spec.indices();
    const int s = spec.B + 2 * spec.m + 2;
    std::vector<GalerkinBlock> blocks;
    for (int ell = -spec.d; ell <= spec.d; ++ell) {
        GalerkinBlock blk;
        blk.ell = ell;
        for (auto& jk : basis)
            if (jk.first - jk.second == ell) blk.indices.push_back(jk);
        if (blk.indices.empty()) continue;
        std::sort(blk.indices.begin(), blk.indices.end());
        const std::size_t n = blk.indices.size();
        blk.gram.assign(n, std::vector<Rat>(n, Rat(0)));
        blk.a_dbar.assign(n, std::vector<Rat>(n, Rat(0)));
        blk.a_del.assign(n, std::vector<Rat>(n, Rat(0)));
        for (std::size_t r = 0; r < n; ++r) {
            auto [j, k] = blk.indices[r];
            for (std::size_t c = 0; c < n; ++c) {
                auto [jp, kp] = blk.indices[c];
                ensure((j + jp + k + kp) % 2 == 0,
                       "assemble: same-block power sum must be even");
                int p = (j + jp + k + kp) / 2;
                blk.gram[r][c] = moment(p, s);
                // dbar psi ~ z^j zbar^{k-1} (1+u)^{-m-1} [k + (k-m) u]
                blk.a_dbar[r][c] = detail::bracket_pairing(
                    Int(k), Int(kp), Int(k - spec.m), Int(kp - spec.m), p, s,
                    j, k);
                // cov psi ~ z^{j-1} zbar^k (1+u)^{-m-1} [j + (j-m-B) u]
                blk.a_del[r][c] = detail::bracket_pairing(
                    Int(j), Int(jp), Int(j - spec.m - spec.B),
                    Int(jp - spec.m - spec.B), p, s, j, k);
            }
        }
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

namespace detail {

inline Eigen::MatrixXd to_dense(const RatMatrix& m) {
    Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[r].size(); ++c)
            out(r, c) = static_cast<double>(m[r][c]);
    return out;
}

}  // namespace detail

/// Smallest count generalized eigenvalues of A v = lambda G v for one
/// block, via Cholesky reduction of the (positive definite) Gram matrix.
/// Residuals of the returned pairs are verified to 1e-9.
inline std::vector<double> block_spectrum(const GalerkinBlock& blk,
                                          std::size_t count,
                                          bool use_del = false) {
    const RatMatrix& a_rat = use_del ? blk.a_del : blk.a_dbar;
    Eigen::MatrixXd G = detail::to_dense(blk.gram);
    Eigen::MatrixXd A = detail::to_dense(a_rat);
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error(
            "block_spectrum: Gram matrix is not positive definite (linearly "
            "dependent basis)");
    Eigen::MatrixXd L = llt.matrixL();
    Eigen::MatrixXd reduced =
        L.triangularView<Eigen::Lower>().solve(A).transpose();
    reduced = L.triangularView<Eigen::Lower>().solve(reduced);
    reduced = 0.5 * (reduced + reduced.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced);
    ensure(es.info() == Eigen::Success, "block_spectrum: solver failed");
    double scale = 1.0 + A.cwiseAbs().maxCoeff();
    std::vector<double> out;
    for (Eigen::Index i = 0;
         i < es.eigenvalues().size() && out.size() < count; ++i) {
        double lam = es.eigenvalues()(i);
        Eigen::VectorXd v =
            L.transpose().triangularView<Eigen::Upper>().solve(
                es.eigenvectors().col(i));
        double res = (A * v - lam * G * v).norm() /
                     ((1.0 + std::abs(lam)) * v.norm() * scale);
        ensure(res <= 1e-9, "block_spectrum: residual above 1e-9");
        out.push_back(lam);
    }
    return out;
}

/// Full low spectrum report for the line bundle of degree B over the
/// projective line: merges all block spectra, clusters with gap
/// threshold 1, and compares cluster centers and counts against the
/// closed forms q(B+q+1) and B+2q+1 for q <= q_max.
struct P1SpectrumReport {
    SpectrumTable table;
    std::vector<double> measured_centers;
    std::vector<Int> measured_counts;
    std::vector<double> residuals;
    double max_residual = 0.0;
    bool counts_ok = false;
    bool pass = false;
};

inline P1SpectrumReport p1_spectrum_report(int B, int m, int d, int q_max) {
    require(q_max >= 0, "p1_spectrum_report: q_max must be >= 0");
    require(m >= q_max + 1,
            "p1_spectrum_report: need m >= q_max+1 so the exact "
            "eigensections lie in the trial space");
    require(d >= B + 2 * m, "p1_spectrum_report: need d >= B+2m");
    BasisSpec spec{B, m, d};
    auto blocks = assemble(spec);
    std::vector<double> all;
    for (const auto& blk : blocks) {
        auto eigs = block_spectrum(blk, blk.indices.size());
        all.insert(all.end(), eigs.begin(), eigs.end());
    }
    std::sort(all.begin(), all.end());

    std::vector<std::vector<double>> clusters;
    for (double lam : all) {
        if (clusters.empty() || lam - clusters.back().back() > 1.0)
            clusters.push_back({lam});
        else
            clusters.back().push_back(lam);
    }

    P1SpectrumReport rep;
    rep.table.space = Space::ProjectiveSpace;
    rep.table.params = {{"n", Rat(1)}, {"B", Rat(B)}};
    rep.counts_ok = true;
    for (int q = 0; q <= q_max; ++q) {
        Rat target = Rat(q) * Rat(B + q + 1);
        Int want_count = Int(B + 2 * q + 1);
        SpectrumRow row;
        row.q = q;
        row.eigenvalue = target;
        row.multiplicity = want_count;
        rep.table.rows.push_back(row);
        if (static_cast<std::size_t>(q) >= clusters.size()) {
            rep.counts_ok = false;
            rep.measured_centers.push_back(
                std::numeric_limits<double>::quiet_NaN());
            rep.measured_counts.push_back(Int(0));
            rep.residuals.push_back(
                std::numeric_limits<double>::infinity());
            continue;
        }
        const auto& cl = clusters[static_cast<std::size_t>(q)];
        double center = 0.0;
        for (double lam : cl) center += lam;
        center /= static_cast<double>(cl.size());
        double target_d = static_cast<double>(target);
        double res =
            std::abs(center - target_d) / std::max(1.0, target_d);
        rep.measured_centers.push_back(center);
        rep.measured_counts.push_back(Int(cl.size()));
        rep.residuals.push_back(res);
        rep.max_residual = std::max(rep.max_residual, res);
        if (Int(cl.size()) != want_count) rep.counts_ok = false;
    }
    rep.pass = rep.counts_ok && rep.max_residual <= 1e-8;
    return rep;
}

/// Verifies the exact operator difference: the covariant-holomorphic
/// stiffness minus the antiholomorphic stiffness equals B times the Gram
/// matrix, entry by entry in rational arithmetic, in every block.
inline bool kodaira_difference_check(int B, int m, int d) {
    BasisSpec spec{B, m, d};
    for (const auto& blk : assemble(spec)) {
        for (std::size_t r = 0; r < blk.indices.size(); ++r)
            for (std::size_t c = 0; c < blk.indices.size(); ++c)
                if (blk.a_del[r][c] - blk.a_dbar[r][c] !=
                    Rat(B) * blk.gram[r][c])
                    return false;
    }
    return true;
}

}  // namespace spb
