#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spb/charclass.hpp"
#include "spb/rational.hpp"

namespace spb {

enum class Space { AbelianVariety, ProjectiveSpace, Grassmannian };

inline const char* space_name(Space s) {
    switch (s) {
        case Space::AbelianVariety: return "abelian";
        case Space::ProjectiveSpace: return "pn";
        case Space::Grassmannian: return "grassmann";
    }
    return "?";
}

/// Elementary divisors d_1 | d_2 | ... | d_n of a polarization.
struct PolarizationData {
    std::vector<int> delta;

    void validate() const {
        require(!delta.empty(), "PolarizationData: empty divisor list");
        for (std::size_t i = 0; i < delta.size(); ++i) {
            require(delta[i] >= 1, "PolarizationData: divisors must be >= 1");
            if (i + 1 < delta.size())
                require(delta[i + 1] % delta[i] == 0,
                        "PolarizationData: broken divisibility chain");
        }
    }

    Int product() const {
        Int p = 1;
        for (int d : delta) p *= d;
        return p;
    }
};

/// One spectral line: level index, exact eigenvalue, multiplicity when
/// known (empty optional renders as "unknown"), and free-form flags.
struct SpectrumRow {
    int q = 0;
    Rat eigenvalue;
    std::optional<Int> multiplicity;
    std::vector<std::string> flags;
};

/// Eigenvalue/multiplicity table for one space and parameter set.
struct SpectrumTable {
    Space space = Space::AbelianVariety;
    std::vector<std::pair<std::string, Rat>> params;
    std::vector<SpectrumRow> rows;

    void validate_known_multiplicities() const {
        for (const auto& r : rows)
            if (r.multiplicity)
                ensure(*r.multiplicity >= 1,
                       "SpectrumTable: known multiplicity below 1");
    }
};

/// Laplacian spectrum of a positive line bundle of curvature scale B on an
/// n-dimensional Abelian variety with the given polarization.  With
/// dual_k = 0 the rows are (q, qB, C(n+q-1, q) prod(delta)); with
/// dual_k = k >= 1 the rows list the dual-ladder eigenvalues (q+n+k)B,
/// whose multiplicities are not computed here.
inline SpectrumTable abelian_spectrum(int n, const Rat& B,
                                      const PolarizationData& pol, int q_max,
                                      int dual_k = 0) {
    require(n >= 1, "abelian_spectrum: n must be >= 1");
    require(static_cast<int>(pol.delta.size()) == n,
            "abelian_spectrum: polarization length must equal n");
    require(B > 0, "abelian_spectrum: B must be positive");
    require(q_max >= 0, "abelian_spectrum: q_max must be >= 0");
    require(dual_k >= 0, "abelian_spectrum: dual_k must be >= 0");
    pol.validate();
    SpectrumTable t;
    t.space = Space::AbelianVariety;
    t.params.emplace_back("n", Rat(n));
    t.params.emplace_back("B", B);
    for (std::size_t i = 0; i < pol.delta.size(); ++i)
        t.params.emplace_back("delta" + std::to_string(i + 1),
                              Rat(pol.delta[i]));
    t.params.emplace_back("dual_k", Rat(dual_k));
    Int dprod = pol.product();
    for (int q = 0; q <= q_max; ++q) {
        SpectrumRow row;
        row.q = q;
        if (dual_k == 0) {
            row.eigenvalue = Rat(q) * B;
            row.multiplicity =
                binomial(Int(n + q - 1), static_cast<unsigned>(q)) * dprod;
        } else {
            row.eigenvalue = Rat(q + n + dual_k) * B;
            row.multiplicity = std::nullopt;
        }
        t.rows.push_back(std::move(row));
    }
    if (dual_k == 0)
        ensure(t.rows[0].eigenvalue == 0,
               "abelian_spectrum: ground level must sit at zero");
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        ensure(t.rows[i - 1].eigenvalue < t.rows[i].eigenvalue,
               "abelian_spectrum: eigenvalues must increase strictly");
    t.validate_known_multiplicities();
    return t;
}

/// Level eigenvalue difference constants on projective n-space with the
/// standard metric normalization: N(q, k) = (q-k)B + (q^2-k^2) + n(q-k).
inline Rat intermediate_eigenvalue(int n, int B, int q, int k) {
    require(n >= 1, "intermediate_eigenvalue: n must be >= 1");
    require(k >= 0 && k <= q, "intermediate_eigenvalue: need 0 <= k <= q");
    long long d = static_cast<long long>(q) - k;
    long long s = static_cast<long long>(q) * q - static_cast<long long>(k) * k;
    return Rat(d * B + s + static_cast<long long>(n) * d);
}

/// Laplacian spectrum on projective n-space: level q sits at
/// qB + q(n+q) with multiplicity equal to the exact section count of the
/// level-q value bundle.
inline SpectrumTable pn_spectrum(int n, int B, int q_max) {
    require(n >= 1, "pn_spectrum: n must be >= 1");
    require(B >= 1, "pn_spectrum: B must be >= 1");
    require(q_max >= 0, "pn_spectrum: q_max must be >= 0");
    SpectrumTable t;
    t.space = Space::ProjectiveSpace;
    t.params.emplace_back("n", Rat(n));
    t.params.emplace_back("B", Rat(B));
    for (int q = 0; q <= q_max; ++q) {
        SpectrumRow row;
        row.q = q;
        row.eigenvalue = intermediate_eigenvalue(n, B, q, 0);
        row.multiplicity = hrr_dimension(n, B, q);
        t.rows.push_back(std::move(row));
    }
    ensure(t.rows[0].eigenvalue == 0, "pn_spectrum: ground level must be 0");
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        ensure(t.rows[i - 1].eigenvalue < t.rows[i].eigenvalue,
               "pn_spectrum: eigenvalues must increase strictly");
    t.validate_known_multiplicities();
    return t;
}

/// Dual (conjugate-section) ladder on projective n-space starting from
/// level q: step k carries eigenvalue (q+n+k)(B+q-k).  The ladder
/// terminates at k = B+q, where the eigensection is anti-holomorphic and
/// the eigenvalue is zero; later steps annihilate the section, so their
/// rows are omitted.
inline SpectrumTable pn_dual_ladder(int n, int B, int q, int k_max) {
    require(n >= 1 && B >= 1, "pn_dual_ladder: need n, B >= 1");
    require(q >= 0, "pn_dual_ladder: q must be >= 0");
    require(k_max >= 0, "pn_dual_ladder: k_max must be >= 0");
    SpectrumTable t;
    t.space = Space::ProjectiveSpace;
    t.params.emplace_back("n", Rat(n));
    t.params.emplace_back("B", Rat(B));
    t.params.emplace_back("q", Rat(q));
    int k_end = std::min(k_max, B + q);
    for (int k = 0; k <= k_end; ++k) {
        SpectrumRow row;
        row.q = k;
        row.eigenvalue = Rat(q + n + k) * Rat(B + q - k);
        if (k == B + q) {
            ensure(row.eigenvalue == 0,
                   "pn_dual_ladder: terminal step must reach zero");
            row.flags.push_back("anti-holomorphic");
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// Normalization constant of the q-step ladder round trip: q! B^q on an
/// Abelian variety, prod_{k=0}^{q-1} N(q,k) on projective n-space.  No
/// such constant is available for the Grassmannian beyond the first level.
inline Rat ladder_constant(Space space, int n, const Rat& B, int q) {
    require(q >= 0, "ladder_constant: q must be >= 0");
    require(B > 0, "ladder_constant: B must be positive");
    switch (space) {
        case Space::AbelianVariety: {
            Rat c(factorial(static_cast<unsigned>(q)));
            for (int i = 0; i < q; ++i) c *= B;
            return c;
        }
        case Space::ProjectiveSpace: {
            require(n >= 1, "ladder_constant: n must be >= 1");
            Rat c(1);
            for (int k = 0; k < q; ++k) {
                long long d = static_cast<long long>(q) - k;
                long long s = static_cast<long long>(q) * q -
                              static_cast<long long>(k) * k;
                c *= Rat(d) * B + Rat(s + static_cast<long long>(n) * d);
            }
            return c;
        }
        case Space::Grassmannian:
            throw std::invalid_argument(
                "ladder_constant: no round-trip constant is available for "
                "the Grassmannian beyond the first level");
    }
    throw std::invalid_argument("ladder_constant: unknown space");
}

/// First two Laplacian eigenvalues on the Grassmannian G(mu, nu) for a
/// line bundle with B <= -1 (the canonically positive direction): the
/// bottom is 0 and the second level sits at -B + (mu + nu).
inline std::pair<Rat, Rat> grassmann_eigenvalues(int mu, int nu, int B) {
    require(mu >= 1 && nu >= 1, "grassmann_eigenvalues: need mu, nu >= 1");
    require(B <= -1,
            "grassmann_eigenvalues: only B <= -1 is supported; for B >= 0 "
            "the ordering of the candidate bottom levels is not established");
    return {Rat(0), Rat(-B + mu + nu)};
}

/// Tangent direction of G(mu, nu) identified with the matrix unit in row
/// i, column i' (both 1-based).
struct GrassmannIndex {
    int i = 1;
    int ip = 1;

    bool operator==(const GrassmannIndex&) const = default;
};

/// Curvature component of G(mu, nu) on four matrix-unit directions:
/// R(I,J,K,L) = d_ij d_kl d_i'l' d_j'k' + d_il d_kj d_i'j' d_k'l'
/// with d the Kronecker delta; the value is always 0, 1, or 2.
inline int grassmann_curvature(int mu, int nu, const GrassmannIndex& I,
                               const GrassmannIndex& J, const GrassmannIndex& K,
                               const GrassmannIndex& L) {
    auto in_range = [&](const GrassmannIndex& X) {
        return X.i >= 1 && X.i <= mu && X.ip >= 1 && X.ip <= nu;
    };
    require(mu >= 1 && nu >= 1, "grassmann_curvature: need mu, nu >= 1");
    require(in_range(I) && in_range(J) && in_range(K) && in_range(L),
            "grassmann_curvature: index out of range");
    int t1 = (I.i == J.i && K.i == L.i && I.ip == L.ip && J.ip == K.ip) ? 1 : 0;
    int t2 = (I.i == L.i && K.i == J.i && I.ip == J.ip && K.ip == L.ip) ? 1 : 0;
    return t1 + t2;
}

/// Result of the brute-force curvature structure scan on G(mu, nu).
struct GrassmannStructureReport {
    int mu = 0, nu = 0;
    bool vanishing_patterns_ok = false;
    bool support_classification_ok = false;
    bool symmetry_ok = false;
    bool nullity_ok = false;
    int nullity = 0;

    bool pass() const {
        return vanishing_patterns_ok && support_classification_ok &&
               symmetry_ok && nullity_ok;
    }
};

/// Exhaustive scan over all index tuples of G(mu, nu) verifying:
///  * four vanishing patterns of the curvature.  Two directions X, Y are
///    "disjoint" when they differ in both row and column (Y then lies in
///    the null cone of X); the patterns are
///      (1) I=J and K != L                               => R = 0,
///      (2) I != J, I != L and K = J                     => R = 0,
///      (3) I != J, I = L and K != J                     => R = 0,
///      (4) J, L disjoint from I and K disjoint from J   => R = 0;
///  * the complete support classification: R = 2 exactly when I=J=K=L,
///    and R = 1 exactly on row-paired/column-paired rectangle tuples;
///  * the exchange symmetry R(I,J,K,L) = R(K,J,I,L);
///  * for every direction X the Hermitian form H_X(V,W) = R(X,X,V,W) is
///    diagonal on matrix units with kernel exactly the directions disjoint
///    from X, of dimension (mu-1)(nu-1).
inline GrassmannStructureReport grassmann_structure_check(int mu, int nu) {
    require(mu >= 1 && mu <= 5 && nu >= 1 && nu <= 5,
            "grassmann_structure_check: brute-force budget is mu, nu <= 5");
    GrassmannStructureReport rep;
    rep.mu = mu;
    rep.nu = nu;
    std::vector<GrassmannIndex> units;
    for (int i = 1; i <= mu; ++i)
        for (int ip = 1; ip <= nu; ++ip) units.push_back({i, ip});

    auto disjoint = [](const GrassmannIndex& X, const GrassmannIndex& Y) {
        return X.i != Y.i && X.ip != Y.ip;
    };

    bool patterns = true, support = true, symmetry = true;
    for (const auto& I : units)
        for (const auto& J : units)
            for (const auto& K : units)
                for (const auto& L : units) {
                    int r = grassmann_curvature(mu, nu, I, J, K, L);
                    bool plain = I.i == J.i && K.i == L.i && I.ip == L.ip &&
                                 J.ip == K.ip;
                    bool transposed = I.ip == J.ip && K.ip == L.ip &&
                                      I.i == L.i && J.i == K.i;
                    if (r != static_cast<int>(plain) +
                                 static_cast<int>(transposed))
                        support = false;
                    if ((r == 2) != (I == J && J == K && K == L))
                        support = false;
                    if (r != grassmann_curvature(mu, nu, K, J, I, L))
                        symmetry = false;
                    if (I == J && !(K == L) && r != 0) patterns = false;
                    if (!(I == J) && !(I == L) && K == J && r != 0)
                        patterns = false;
                    if (!(I == J) && I == L && !(K == J) && r != 0)
                        patterns = false;
                    if (disjoint(I, J) && disjoint(I, L) && disjoint(J, K) &&
                        r != 0)
                        patterns = false;
                }
    rep.vanishing_patterns_ok = patterns;
    rep.support_classification_ok = support;
    rep.symmetry_ok = symmetry;

    bool nullity_ok = true;
    int expected = (mu - 1) * (nu - 1);
    for (const auto& X : units) {
        int kernel = 0;
        for (const auto& V : units)
            for (const auto& W : units) {
                int h = grassmann_curvature(mu, nu, X, X, V, W);
                if (!(V == W)) {
                    if (h != 0) nullity_ok = false;  // must be diagonal
                } else {
                    bool null_dir = disjoint(V, X);
                    if (null_dir && h != 0) nullity_ok = false;
                    if (!null_dir && h == 0) nullity_ok = false;
                    if (h == 0) ++kernel;
                }
            }
        if (kernel != expected) nullity_ok = false;
    }
    rep.nullity_ok = nullity_ok;
    rep.nullity = expected;
    return rep;
}

/// Curvature data of the level-q spectral bundle over the parameter space:
/// coefficient matrix C = pi * (-W_ab d_a d_b / d_n^2) stored as exact
/// rational multiples of pi, plus the bundle rank C(n+q-1, q) prod(delta).
struct BundleCurvatureReport {
    int n = 0, q = 0;
    PolarizationData delta;
    std::vector<std::vector<Rat>> coefficient_over_pi;
    Int rank;
};

inline BundleCurvatureReport spectral_bundle_curvature(
    const std::vector<std::vector<Rat>>& W, const PolarizationData& pol,
    int n, int q) {
    require(n >= 1, "spectral_bundle_curvature: n must be >= 1");
    require(q >= 0, "spectral_bundle_curvature: q must be >= 0");
    require(static_cast<int>(pol.delta.size()) == n,
            "spectral_bundle_curvature: polarization length must equal n");
    pol.validate();
    require(static_cast<int>(W.size()) == n,
            "spectral_bundle_curvature: W must be n x n");
    for (const auto& row : W)
        require(static_cast<int>(row.size()) == n,
                "spectral_bundle_curvature: W must be n x n");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            require(W[a][b] == W[b][a],
                    "spectral_bundle_curvature: W must be Hermitian");
    BundleCurvatureReport rep;
    rep.n = n;
    rep.q = q;
    rep.delta = pol;
    Rat dn2 = Rat(pol.delta[n - 1]) * Rat(pol.delta[n - 1]);
    rep.coefficient_over_pi.assign(n, std::vector<Rat>(n, Rat(0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            rep.coefficient_over_pi[a][b] =
                -W[a][b] * Rat(pol.delta[a]) * Rat(pol.delta[b]) / dn2;
    rep.rank = binomial(Int(n + q - 1), static_cast<unsigned>(q)) *
               pol.product();
    return rep;
}

}  // namespace spb
