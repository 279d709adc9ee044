#pragma once

#include <complex>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

#include "spb/rational.hpp"

namespace spb {

/// Element of the truncated polynomial ring Q[w]/(w^{n+1}): the rational
/// cohomology of n-dimensional complex projective space with w the
/// hyperplane class.  coeffs[i] is the degree-i coefficient.
struct CohomologyClass {
    int n = 0;
    std::vector<Rat> coeffs;

    CohomologyClass() = default;
    explicit CohomologyClass(int dim) : n(dim), coeffs(dim + 1, Rat(0)) {
        require(dim >= 1, "CohomologyClass: dimension must be >= 1");
    }

    static CohomologyClass one(int dim) {
        CohomologyClass c(dim);
        c.coeffs[0] = 1;
        return c;
    }

    const Rat& operator[](int i) const { return coeffs[i]; }
    Rat& operator[](int i) { return coeffs[i]; }

    bool operator==(const CohomologyClass& o) const {
        return n == o.n && coeffs == o.coeffs;
    }

    // Hidden friend so the Rat overload is only found by argument-
    // dependent lookup; a namespace-scope operator taking Rat forces
    // convertibility probes on unrelated scalar types.
    friend CohomologyClass operator*(const Rat& s, const CohomologyClass& a) {
        CohomologyClass c(a.n);
        for (int i = 0; i <= a.n; ++i) c[i] = s * a[i];
        return c;
    }
};

inline CohomologyClass operator+(const CohomologyClass& a,
                                 const CohomologyClass& b) {
    require(a.n == b.n, "CohomologyClass: dimension mismatch in +");
    CohomologyClass c(a.n);
    for (int i = 0; i <= a.n; ++i) c[i] = a[i] + b[i];
    return c;
}

/// Product in Q[w]/(w^{n+1}); all terms of degree > n are discarded.
inline CohomologyClass operator*(const CohomologyClass& a,
                                 const CohomologyClass& b) {
    require(a.n == b.n, "CohomologyClass: dimension mismatch in *");
    CohomologyClass c(a.n);
    for (int i = 0; i <= a.n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= a.n; ++j) {
            if (b[j] == 0) continue;
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

/// exp of a class with zero degree-0 part; the series terminates because
/// the argument is nilpotent in the truncated ring.
inline CohomologyClass exp_class(const CohomologyClass& a) {
    require(a[0] == 0, "exp_class: argument must have zero constant term");
    CohomologyClass result = CohomologyClass::one(a.n);
    CohomologyClass power = CohomologyClass::one(a.n);
    Int kfact = 1;
    for (int k = 1; k <= a.n; ++k) {
        power = power * a;
        kfact *= k;
        result = result + (Rat(1, kfact) * power);
    }
    return result;
}

/// e^{s w} as a cohomology class.
inline CohomologyClass exp_line(int n, const Rat& s) {
    CohomologyClass lin(n);
    if (n >= 1) lin[1] = s;
    return exp_class(lin);
}

/// Power sums p_m = sum_j lambda_j^m of the Chern roots of the tangent
/// bundle of projective n-space.  The roots are the n nonzero solutions of
/// sum_i (-1)^i C(n+1, i) x^{n-i} = 0, so the elementary symmetric values
/// are e_i = C(n+1, i) and every power sum is an exact integer.
struct ChernRootData {
    int n = 0;
    std::vector<Int> power_sums;  // p_1 .. p_{m_max}
};

inline ChernRootData chern_power_sums(int n, int m_max) {
    require(n >= 1, "chern_power_sums: n must be >= 1");
    require(m_max >= 1, "chern_power_sums: m_max must be >= 1");
    auto elem = [&](int i) -> Int {
        if (i > n) return 0;
        return binomial(Int(n + 1), static_cast<unsigned>(i));
    };
    ChernRootData data;
    data.n = n;
    data.power_sums.reserve(m_max);
    // Newton's identities: p_m = sum_{i=1}^{m-1} (-1)^{i-1} e_i p_{m-i}
    //                            + (-1)^{m-1} m e_m.
    for (int m = 1; m <= m_max; ++m) {
        Int p = 0;
        for (int i = 1; i < m; ++i) {
            Int term = elem(i) * data.power_sums[m - i - 1];
            p += (i % 2 == 1) ? term : -term;
        }
        Int tail = Int(m) * elem(m);
        p += (m % 2 == 1) ? tail : -tail;
        data.power_sums.push_back(p);
    }
    ensure(data.power_sums[0] == Int(n + 1),
           "chern_power_sums: p_1 must equal n+1");
    return data;
}

/// Reconstructs elementary symmetric values from power sums (the inverse
/// Newton recurrence); used by round-trip tests.
inline std::vector<Rat> elementary_from_power_sums(
    const std::vector<Int>& p, int count) {
    std::vector<Rat> e{Rat(1)};  // e_0
    for (int k = 1; k <= count; ++k) {
        Rat acc = 0;
        for (int i = 1; i <= k; ++i) {
            Rat term = e[k - i] * Rat(p[i - 1]);
            acc += (i % 2 == 1) ? term : -term;
        }
        e.push_back(acc / k);
    }
    return e;
}

namespace detail {

/// Coefficients l_1..l_n of log(x / (1 - e^{-x})) as exact rationals,
/// obtained from the Bernoulli series of the function itself via the
/// power-series identity k f_k = sum_{j=1}^{k} j l_j f_{k-j}.
inline std::vector<Rat> log_todd_factor_series(int n) {
    std::vector<Rat> b = bernoulli_numbers(static_cast<std::size_t>(n) + 1);
    std::vector<Rat> f(n + 1);
    Int kfact = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) kfact *= k;
        Rat v = b[k] / Rat(kfact);
        f[k] = (k % 2 == 0) ? v : -v;  // series of x/(1 - e^{-x})
    }
    std::vector<Rat> l(n + 1, Rat(0));
    for (int k = 1; k <= n; ++k) {
        Rat acc = Rat(k) * f[k];
        for (int j = 1; j < k; ++j) acc -= Rat(j) * l[j] * f[k - j];
        l[k] = acc / k;
    }
    return l;
}

}  // namespace detail

/// Todd class of the tangent bundle of projective n-space, assembled from
/// Chern-root power sums: log td = sum_m l_m p_m w^m with l the series of
/// log(x / (1 - e^{-x})), then exponentiated in the truncated ring.
inline CohomologyClass todd_class(int n) {
    require(n >= 1, "todd_class: n must be >= 1");
    ChernRootData roots = chern_power_sums(n, n);
    std::vector<Rat> l = detail::log_todd_factor_series(n);
    CohomologyClass logtd(n);
    for (int m = 1; m <= n; ++m) logtd[m] = l[m] * Rat(roots.power_sums[m - 1]);
    return exp_class(logtd);
}

/// Chern character of the q-th symmetric power of the tangent bundle,
/// via the complete-homogeneous recurrence q h_q = sum_{m=1}^q P_m h_{q-m},
/// where P_m = sum_j e^{m lambda_j w} expands through power sums as
/// P_m = n + sum_k m^k p_k / k! w^k.
inline CohomologyClass ch_sym_power(int n, int q) {
    require(n >= 1, "ch_sym_power: n must be >= 1");
    require(q >= 0, "ch_sym_power: q must be >= 0");
    ChernRootData roots = chern_power_sums(n, n);
    auto adams = [&](int m) {
        CohomologyClass P(n);
        P[0] = n;
        Int mk = 1;
        Int kfact = 1;
        for (int k = 1; k <= n; ++k) {
            mk *= m;
            kfact *= k;
            P[k] = Rat(mk * roots.power_sums[k - 1], kfact);
        }
        return P;
    };
    std::vector<CohomologyClass> h{CohomologyClass::one(n)};
    for (int t = 1; t <= q; ++t) {
        CohomologyClass acc(n);
        for (int m = 1; m <= t; ++m) acc = acc + (adams(m) * h[t - m]);
        h.push_back(Rat(1, t) * acc);
    }
    ensure(h[q][0] == Rat(binomial(Int(n + q - 1), static_cast<unsigned>(q))),
           "ch_sym_power: degree-0 coefficient must equal the bundle rank");
    return h[q];
}

/// Holomorphic section count of O(B) twisted by the q-th symmetric power
/// of the tangent bundle on projective n-space: the degree-n coefficient of
/// td(T) e^{Bw} ch(Sym^q T).  Positivity of B makes higher cohomology
/// vanish, so the index equals the section count; the rational assembly
/// must produce an exact integer.
inline Int hrr_dimension(int n, int B, int q) {
    require(n >= 1, "hrr_dimension: n must be >= 1");
    require(B >= 1, "hrr_dimension: B must be >= 1");
    require(q >= 0, "hrr_dimension: q must be >= 0");
    CohomologyClass total =
        todd_class(n) * exp_line(n, Rat(B)) * ch_sym_power(n, q);
    const Rat& top = total[n];
    ensure(boost::multiprecision::denominator(top) == 1,
           "hrr_dimension: top coefficient is not an integer");
    return boost::multiprecision::numerator(top);
}

namespace detail {

/// Streams weak compositions (k_1..k_n) of q in lexicographic order,
/// invoking fn on each; storage stays O(n).
template <typename Fn>
void for_each_composition(int n, int q, Fn&& fn) {
    std::vector<int> k(n, 0);
    k[0] = q;
    for (;;) {
        fn(static_cast<const std::vector<int>&>(k));
        int last = k[n - 1];
        int i = n - 2;
        while (i >= 0 && k[i] == 0) --i;
        if (i < 0) break;
        k[i] -= 1;
        k[i + 1] = last + 1;
        for (int t = i + 2; t < n; ++t) k[t] = 0;
    }
}

}  // namespace detail

/// Closed-form section count as a sum of generalized binomial coefficients
/// C(y+n+B, n) over weak compositions (k_1..k_n) of q, with
/// y = sum_j k_j lambda_j and lambda_j = 1 - e^{2 pi i j/(n+1)} the complex
/// Chern roots.  Evaluated in floating complex arithmetic; returns the
/// nearest integer and the absolute imaginary residual of the raw sum.
/// Throws when the sum cannot be trusted to identify an integer.
inline std::pair<Int, double> closed_form_dimension(int n, int B, int q) {
    require(n >= 1, "closed_form_dimension: n must be >= 1");
    require(B >= 1, "closed_form_dimension: B must be >= 1");
    require(q >= 0, "closed_form_dimension: q must be >= 0");
    using C = std::complex<double>;
    const double pi = 3.14159265358979323846;
    std::vector<C> lambda(n);
    for (int j = 1; j <= n; ++j)
        lambda[j - 1] = C(1.0, 0.0) - std::exp(C(0.0, 2.0 * pi * j / (n + 1)));
    C sum(0.0, 0.0);
    detail::for_each_composition(n, q, [&](const std::vector<int>& k) {
        C y(0.0, 0.0);
        for (int j = 0; j < n; ++j)
            y += static_cast<double>(k[j]) * lambda[j];
        C val(1.0, 0.0);
        for (int i = 1; i <= n; ++i)
            val *= (y + C(static_cast<double>(B + i), 0.0)) /
                   C(static_cast<double>(i), 0.0);
        sum += val;
    });
    double imag_residual = std::abs(sum.imag());
    double rounded = std::nearbyint(sum.real());
    double int_residual = std::abs(sum.real() - rounded);
    if (imag_residual >= 1e-6 || int_residual >= 1e-6)
        throw std::runtime_error(
            "closed_form_dimension: precision loss, residuals " +
            std::to_string(imag_residual) + " / " +
            std::to_string(int_residual));
    Int value(static_cast<long long>(rounded));
    return {value, imag_residual};
}

/// Dimension polynomial for projective 2-space:
/// (q+1)/2 * (B^2 + 3(q+1)B + 2(q+1)^2), always an integer.
inline Int p2_closed_form(int B, int q) {
    require(B >= 1, "p2_closed_form: B must be >= 1");
    require(q >= 0, "p2_closed_form: q must be >= 0");
    Int qq(q + 1);
    Int prod = qq * (Int(B) * B + 3 * qq * B + 2 * qq * qq);
    ensure(prod % 2 == 0, "p2_closed_form: product must be even");
    return prod / 2;
}

/// Verifies, as an identity of exact rational polynomials in an
/// indeterminate z, that the degree-n coefficient of td(T) e^{zw} equals
/// C(z+n, n) = prod_{i=1}^n (z+i)/i.
inline bool binom_poly_identity_check(int n) {
    require(n >= 1 && n <= 8, "binom_poly_identity_check: need 1 <= n <= 8");
    CohomologyClass td = todd_class(n);
    // Left side: coefficient of w^n in td * e^{zw} = sum_k td_{n-k} z^k / k!.
    std::vector<Rat> lhs(n + 1);
    Int kfact = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) kfact *= k;
        lhs[k] = td[n - k] / Rat(kfact);
    }
    // Right side: expand prod (z+i)/i.
    std::vector<Rat> rhs{Rat(1)};
    for (int i = 1; i <= n; ++i) {
        std::vector<Rat> next(rhs.size() + 1, Rat(0));
        for (std::size_t t = 0; t < rhs.size(); ++t) {
            next[t] += rhs[t] * Rat(i);
            next[t + 1] += rhs[t];
        }
        for (auto& c : next) c /= Rat(i);
        rhs = std::move(next);
    }
    return lhs == rhs;
}

/// Cross-verification record for one (n, B, q): the exact rational-ring
/// count, the complex closed form, and (when n = 2) the explicit
/// polynomial formula.
struct DimensionReport {
    int n = 0, B = 0, q = 0;
    Int exact_hrr;
    Int closed_form;
    double closed_form_imag_residual = 0.0;
    std::optional<Int> n2_formula;

    bool agree() const {
        if (exact_hrr != closed_form) return false;
        if (closed_form_imag_residual >= 1e-6) return false;
        if (n2_formula && *n2_formula != exact_hrr) return false;
        return true;
    }
};

inline DimensionReport make_dimension_report(int n, int B, int q) {
    DimensionReport r;
    r.n = n;
    r.B = B;
    r.q = q;
    r.exact_hrr = hrr_dimension(n, B, q);
    auto [cf, resid] = closed_form_dimension(n, B, q);
    r.closed_form = cf;
    r.closed_form_imag_residual = resid;
    if (n == 2) r.n2_formula = p2_closed_form(B, q);
    return r;
}

}  // namespace spb
