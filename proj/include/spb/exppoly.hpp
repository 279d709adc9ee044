#pragma once

#include <algorithm>
#include <compare>
#include <complex>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "spb/rational.hpp"

namespace spb {

/// Gaussian rational x + iy with exact rational parts.
struct GaussRat {
    Rat re, im;

    GaussRat() = default;
    GaussRat(Rat r, Rat i = Rat(0)) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool operator==(const GaussRat&) const = default;

    GaussRat operator+(const GaussRat& o) const {
        return {re + o.re, im + o.im};
    }
    GaussRat operator-(const GaussRat& o) const {
        return {re - o.re, im - o.im};
    }
    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRat operator-() const { return {-re, -im}; }
};

inline std::strong_ordering compare(const Rat& a, const Rat& b) {
    if (a < b) return std::strong_ordering::less;
    if (b < a) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

inline std::strong_ordering compare(const GaussRat& a, const GaussRat& b) {
    auto c = compare(a.re, b.re);
    return c != 0 ? c : compare(a.im, b.im);
}

/// Element of the polynomial ring Q(i)[rho] where rho is a formal positive
/// radical (the single irrational scale of a theta family, rho^2 = pi d B).
/// rho is never rewritten, so powers of rho stay linearly independent over
/// Q(i) and equality is exact coefficient-wise comparison; this is what
/// makes symbolic zero tests sound.
struct RingElem {
    std::vector<GaussRat> c;  // c[k] multiplies rho^k

    RingElem() = default;
    RingElem(Rat r) : c{GaussRat(std::move(r))} { normalize(); }
    RingElem(GaussRat g) : c{std::move(g)} { normalize(); }

    static RingElem radical(GaussRat scale) {
        RingElem e;
        e.c = {GaussRat(Rat(0)), std::move(scale)};
        e.normalize();
        return e;
    }

    void normalize() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    bool operator==(const RingElem&) const = default;

    RingElem operator+(const RingElem& o) const {
        RingElem r;
        r.c.resize(std::max(c.size(), o.c.size()));
        for (std::size_t k = 0; k < r.c.size(); ++k) {
            if (k < c.size()) r.c[k] = r.c[k] + c[k];
            if (k < o.c.size()) r.c[k] = r.c[k] + o.c[k];
        }
        r.normalize();
        return r;
    }
    RingElem operator-() const {
        RingElem r = *this;
        for (auto& g : r.c) g = -g;
        return r;
    }
    RingElem operator-(const RingElem& o) const { return *this + (-o); }
    RingElem operator*(const RingElem& o) const {
        RingElem r;
        if (c.empty() || o.c.empty()) return r;
        r.c.assign(c.size() + o.c.size() - 1, GaussRat());
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < o.c.size(); ++j)
                r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
        r.normalize();
        return r;
    }
};

inline std::strong_ordering compare(const RingElem& a, const RingElem& b) {
    if (a.c.size() != b.c.size())
        return a.c.size() < b.c.size() ? std::strong_ordering::less
                                       : std::strong_ordering::greater;
    for (std::size_t k = 0; k < a.c.size(); ++k) {
        auto c = compare(a.c[k], b.c[k]);
        if (c != 0) return c;
    }
    return std::strong_ordering::equal;
}

/// One exact term  coeff * e^{pi kappa} * z^p zbar^r e^{g z^2 + a z + b zbar}.
/// kappa is the rational exponent of the exact transcendental weight
/// e^{pi kappa} carried by theta series terms; g is the rational Gaussian
/// dressing rate (B/2 for holomorphic-frame sections, 0 otherwise).
struct ExpPolyTerm {
    RingElem coeff;
    Rat kappa;
    int p = 0;
    int r = 0;
    Rat gauss;
    RingElem a, b;
};

namespace detail {

using TermKey = std::tuple<int, int, Rat, RingElem, RingElem, Rat>;

inline TermKey key_of(const ExpPolyTerm& t) {
    return {t.p, t.r, t.gauss, t.a, t.b, t.kappa};
}

struct TermKeyLess {
    bool operator()(const TermKey& x, const TermKey& y) const {
        if (std::get<0>(x) != std::get<0>(y))
            return std::get<0>(x) < std::get<0>(y);
        if (std::get<1>(x) != std::get<1>(y))
            return std::get<1>(x) < std::get<1>(y);
        if (auto c = compare(std::get<2>(x), std::get<2>(y)); c != 0)
            return c < 0;
        if (auto c = compare(std::get<3>(x), std::get<3>(y)); c != 0)
            return c < 0;
        if (auto c = compare(std::get<4>(x), std::get<4>(y)); c != 0)
            return c < 0;
        return compare(std::get<5>(x), std::get<5>(y)) < 0;
    }
};

}  // namespace detail

/// Finite exact sum of ExpPolyTerm with a fixed curvature constant B > 0.
/// tensor_level is ladder bookkeeping (the tangent factor is trivial on
/// the torus, so the level only tracks how many ladder steps were taken).
struct ExpPolySection {
    Rat B;
    int tensor_level = 0;
    std::vector<ExpPolyTerm> terms;

    bool is_zero() const { return terms.empty(); }
};

/// Merges like terms, drops zero coefficients, and sorts terms by their
/// exponential class; idempotent.
inline ExpPolySection canonical(ExpPolySection s) {
    std::map<detail::TermKey, RingElem, detail::TermKeyLess> acc;
    for (auto& t : s.terms) {
        if (t.coeff.is_zero()) continue;
        auto [it, fresh] = acc.emplace(detail::key_of(t), t.coeff);
        if (!fresh) it->second = it->second + t.coeff;
    }
    s.terms.clear();
    for (auto& [key, coeff] : acc) {
        if (coeff.is_zero()) continue;
        ExpPolyTerm t;
        t.coeff = coeff;
        t.p = std::get<0>(key);
        t.r = std::get<1>(key);
        t.gauss = std::get<2>(key);
        t.a = std::get<3>(key);
        t.b = std::get<4>(key);
        t.kappa = std::get<5>(key);
        s.terms.push_back(std::move(t));
    }
    return s;
}

inline ExpPolySection operator+(const ExpPolySection& s,
                                const ExpPolySection& t) {
    require(s.B == t.B, "ExpPolySection: curvature constants differ in +");
    ExpPolySection r;
    r.B = s.B;
    r.tensor_level = s.tensor_level;
    r.terms = s.terms;
    r.terms.insert(r.terms.end(), t.terms.begin(), t.terms.end());
    return canonical(std::move(r));
}

inline ExpPolySection scale(const RingElem& c, const ExpPolySection& s) {
    ExpPolySection r = s;
    for (auto& t : r.terms) t.coeff = t.coeff * c;
    return canonical(std::move(r));
}

inline ExpPolySection operator-(const ExpPolySection& s,
                                const ExpPolySection& t) {
    return s + scale(RingElem(Rat(-1)), t);
}

/// Pointwise product of sections (used by Leibniz-rule property tests);
/// exponents add, coefficients multiply, e^{pi kappa} tags add.
inline ExpPolySection operator*(const ExpPolySection& s,
                                const ExpPolySection& t) {
    require(s.B == t.B, "ExpPolySection: curvature constants differ in *");
    ExpPolySection r;
    r.B = s.B;
    r.tensor_level = s.tensor_level + t.tensor_level;
    for (const auto& x : s.terms)
        for (const auto& y : t.terms) {
            ExpPolyTerm m;
            m.coeff = x.coeff * y.coeff;
            m.kappa = x.kappa + y.kappa;
            m.p = x.p + y.p;
            m.r = x.r + y.r;
            m.gauss = x.gauss + y.gauss;
            m.a = x.a + y.a;
            m.b = x.b + y.b;
            r.terms.push_back(std::move(m));
        }
    return canonical(std::move(r));
}

enum class OperatorKind { dz, dzbar, cov_dz, delta0, delta_up0 };

namespace detail {

inline void push_dz(const ExpPolyTerm& t, const Rat& /*B*/,
                    std::vector<ExpPolyTerm>& out) {
    // d/dz of coeff z^p zbar^r e^{g z^2 + a z + b zbar}:
    //   p z^{p-1} + (a + 2g z) z^p  (times the shared factors).
    if (t.p > 0) {
        ExpPolyTerm u = t;
        u.coeff = u.coeff * RingElem(Rat(t.p));
        u.p -= 1;
        out.push_back(std::move(u));
    }
    if (!t.a.is_zero()) {
        ExpPolyTerm u = t;
        u.coeff = u.coeff * t.a;
        out.push_back(std::move(u));
    }
    if (t.gauss != 0) {
        ExpPolyTerm u = t;
        u.coeff = u.coeff * RingElem(Rat(2) * t.gauss);
        u.p += 1;
        out.push_back(std::move(u));
    }
}

inline void push_dzbar(const ExpPolyTerm& t, std::vector<ExpPolyTerm>& out) {
    if (t.r > 0) {
        ExpPolyTerm u = t;
        u.coeff = u.coeff * RingElem(Rat(t.r));
        u.r -= 1;
        out.push_back(std::move(u));
    }
    if (!t.b.is_zero()) {
        ExpPolyTerm u = t;
        u.coeff = u.coeff * t.b;
        out.push_back(std::move(u));
    }
}

}  // namespace detail

/// Exact application of the basic first- and second-order operators:
///   dz        : d/dz
///   dzbar     : d/dzbar
///   cov_dz    : d/dz - B zbar   (covariant derivative in the holomorphic
///                                frame of weight e^{-B|z|^2})
///   delta0    : -(d/dz - B zbar) d/dzbar
///   delta_up0 : -d/dzbar (d/dz - B zbar)
inline ExpPolySection apply_operator(OperatorKind kind,
                                     const ExpPolySection& s) {
    ExpPolySection r;
    r.B = s.B;
    r.tensor_level = s.tensor_level;
    auto cov = [&](const ExpPolyTerm& t, std::vector<ExpPolyTerm>& out) {
        detail::push_dz(t, s.B, out);
        ExpPolyTerm u = t;  // -B zbar multiplication
        u.coeff = u.coeff * RingElem(-s.B);
        u.r += 1;
        out.push_back(std::move(u));
    };
    for (const auto& t : s.terms) {
        switch (kind) {
            case OperatorKind::dz:
                detail::push_dz(t, s.B, r.terms);
                break;
            case OperatorKind::dzbar:
                detail::push_dzbar(t, r.terms);
                break;
            case OperatorKind::cov_dz:
                cov(t, r.terms);
                break;
            case OperatorKind::delta0: {
                std::vector<ExpPolyTerm> mid;
                detail::push_dzbar(t, mid);
                for (const auto& m : mid) {
                    std::vector<ExpPolyTerm> fin;
                    cov(m, fin);
                    for (auto& f : fin) {
                        f.coeff = f.coeff * RingElem(Rat(-1));
                        r.terms.push_back(std::move(f));
                    }
                }
                break;
            }
            case OperatorKind::delta_up0: {
                std::vector<ExpPolyTerm> mid;
                cov(t, mid);
                for (const auto& m : mid) {
                    std::vector<ExpPolyTerm> fin;
                    detail::push_dzbar(m, fin);
                    for (auto& f : fin) {
                        f.coeff = f.coeff * RingElem(Rat(-1));
                        r.terms.push_back(std::move(f));
                    }
                }
                break;
            }
        }
    }
    return canonical(std::move(r));
}

/// Raises by repeated covariant holomorphic differentiation; each step
/// moves one tensor level down (toward plain sections).
inline ExpPolySection ladder_up(ExpPolySection s, int steps) {
    require(steps >= 0, "ladder_up: steps must be >= 0");
    for (int i = 0; i < steps; ++i)
        s = apply_operator(OperatorKind::cov_dz, std::move(s));
    s.tensor_level -= steps;
    return s;
}

/// Lowers by repeated -d/dzbar; each step raises the tensor level.
inline ExpPolySection ladder_down(ExpPolySection s, int steps) {
    require(steps >= 0, "ladder_down: steps must be >= 0");
    for (int i = 0; i < steps; ++i) {
        s = apply_operator(OperatorKind::dzbar, std::move(s));
        s = scale(RingElem(Rat(-1)), std::move(s));
    }
    s.tensor_level += steps;
    return s;
}

/// delta0(s) - lambda s in canonical form; an empty term list certifies an
/// exact eigensection.
inline ExpPolySection eigen_residual(const ExpPolySection& s,
                                     const Rat& lambda) {
    return apply_operator(OperatorKind::delta0, s) -
           scale(RingElem(lambda), s);
}

/// Commutation residual delta0(cov_dz s) - cov_dz(delta0 s) - B cov_dz s;
/// vanishes identically for every section.
inline ExpPolySection bk_residual(const ExpPolySection& s) {
    ExpPolySection up = apply_operator(OperatorKind::cov_dz, s);
    ExpPolySection lhs = apply_operator(OperatorKind::delta0, up);
    ExpPolySection mid = apply_operator(
        OperatorKind::cov_dz, apply_operator(OperatorKind::delta0, s));
    return lhs - mid - scale(RingElem(s.B), up);
}

/// Parameters of one theta-type holomorphic section on the square torus
/// of side ell with B ell^2 = pi delta; delta is both the flux quantum
/// count and the dimension of the holomorphic section space, j indexes the
/// basis, and M is the series truncation half-width.
struct ThetaSpec {
    Rat B;
    int delta = 1;
    int j = 0;
    int M = 8;

    void validate() const {
        require(B > 0, "ThetaSpec: B must be positive");
        require(delta >= 1, "ThetaSpec: delta must be >= 1");
        require(j >= 0 && j < delta, "ThetaSpec: need 0 <= j < delta");
        require(M >= 1, "ThetaSpec: M must be >= 1");
    }
};

using Complex50 = boost::multiprecision::cpp_complex_50;
using Float50 = Complex50::value_type;

namespace detail {

inline Float50 to_float50(const Rat& r) {
    return Float50(boost::multiprecision::numerator(r)) /
           Float50(boost::multiprecision::denominator(r));
}

inline Float50 pi50() { return boost::math::constants::pi<Float50>(); }

/// Side length ell = sqrt(pi delta / B).
inline Float50 side_length(const ThetaSpec& spec) {
    return sqrt(pi50() * spec.delta / to_float50(spec.B));
}

/// Numeric value of the formal radical rho = sqrt(pi delta B).
inline Float50 radical_value(const ThetaSpec& spec) {
    return sqrt(pi50() * spec.delta * to_float50(spec.B));
}

inline Complex50 eval_ring(const RingElem& e, const Float50& rho) {
    Complex50 acc(0, 0);
    Float50 rk(1);
    for (const auto& g : e.c) {
        acc += Complex50(to_float50(g.re), to_float50(g.im)) * rk;
        rk *= rho;
    }
    return acc;
}

inline Complex50 eval_term(const ExpPolyTerm& t, const Complex50& z,
                           const Float50& rho) {
    Complex50 zbar = conj(z);
    Complex50 expo = to_float50(t.gauss) * z * z + eval_ring(t.a, rho) * z +
                     eval_ring(t.b, rho) * zbar +
                     Complex50(pi50() * to_float50(t.kappa), 0);
    Complex50 val = eval_ring(t.coeff, rho) * exp(expo);
    for (int i = 0; i < t.p; ++i) val *= z;
    for (int i = 0; i < t.r; ++i) val *= zbar;
    return val;
}

inline Complex50 eval_section(const ExpPolySection& s, const Complex50& z,
                              const Float50& rho) {
    Complex50 acc(0, 0);
    for (const auto& t : s.terms) acc += eval_term(t, z, rho);
    return acc;
}

}  // namespace detail

/// Theta basis construction result: the exact section, the measured
/// modulus-one vertical multiplier constant, the truncation width, and the
/// worst relative residual of the two quasi-periodicity relations.
struct ThetaBasisResult {
    ExpPolySection section;
    std::complex<double> chi{1.0, 0.0};
    int M = 0;
    double automorphy_residual = 0.0;
};

/// Builds the j-th holomorphic theta section in the Gaussian-dressed frame
///   f_j(z) = e^{B z^2/2} sum_{m in Z + j/delta, |m| <= M}
///            e^{-pi delta m^2} e^{2 i rho m z},   rho = sqrt(pi delta B),
/// then verifies at 32 pseudo-random points of the fundamental domain, in
/// 50-digit arithmetic, the relations
///   f(z + ell)    = e^{B(ell z + ell^2/2)} f(z)
///   f(z + i ell)  = e^{B(-i ell z + ell^2/2)} chi_j f(z)
/// to 1e-10 relative error, recording the measured constant chi_j.
inline ThetaBasisResult theta_basis(const ThetaSpec& spec) {
    spec.validate();
    ThetaBasisResult out;
    out.M = spec.M;
    ExpPolySection s;
    s.B = spec.B;
    s.tensor_level = 0;
    for (int m = -spec.M; m <= spec.M; ++m) {
        Rat mt = Rat(m) + Rat(spec.j, spec.delta);  // m tilde
        ExpPolyTerm t;
        t.coeff = RingElem(Rat(1));
        t.kappa = -Rat(spec.delta) * mt * mt;  // e^{-pi delta m~^2}
        t.gauss = spec.B / 2;
        t.a = RingElem::radical(GaussRat(Rat(0), Rat(2) * mt));  // 2 i m~ rho
        s.terms.push_back(std::move(t));
    }
    out.section = canonical(std::move(s));

    using detail::eval_section;
    Float50 ell = detail::side_length(spec);
    Float50 rho = detail::radical_value(spec);
    Float50 Bv = detail::to_float50(spec.B);
    std::mt19937 rng(20260814u + static_cast<unsigned>(spec.j) +
                     997u * static_cast<unsigned>(spec.delta));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Complex50 chi(0, 0);
    double worst = 0.0;
    for (int pt = 0; pt < 32; ++pt) {
        Complex50 z(ell * Float50(unif(rng)), ell * Float50(unif(rng)));
        Complex50 fz = eval_section(out.section, z, rho);
        Complex50 fx = eval_section(out.section, z + Complex50(ell, 0), rho);
        Complex50 fy = eval_section(out.section, z + Complex50(0, ell), rho);
        Complex50 horizontal = exp(Bv * (ell * z + ell * ell / 2)) * fz;
        Complex50 vertical_base =
            exp(Bv * (-Complex50(0, 1) * ell * z + ell * ell / 2)) * fz;
        if (pt == 0) {
            chi = fy / vertical_base;
            Float50 unit_err = abs(abs(chi) - 1);
            worst = std::max(worst, unit_err.convert_to<double>());
        }
        Float50 res_x = abs(fx - horizontal) / abs(horizontal);
        Float50 res_y = abs(fy - chi * vertical_base) / abs(vertical_base);
        worst = std::max(worst, res_x.convert_to<double>());
        worst = std::max(worst, res_y.convert_to<double>());
    }
    out.automorphy_residual = worst;
    out.chi = std::complex<double>(chi.real().convert_to<double>(),
                                   chi.imag().convert_to<double>());
    if (worst > 1e-10)
        throw std::runtime_error(
            "theta_basis: automorphy residual " + std::to_string(worst) +
            " exceeds 1e-10; increase the truncation width");
    return out;
}

/// Weighted L2 inner product <s, t> = int s conj(t) e^{-B|z|^2} over the
/// fundamental square [0, ell)^2, by the trapezoid rule on an N x N
/// periodic grid (spectrally accurate for smooth periodic integrands).
/// The integrand's periodicity is pre-checked at 8 points to 1e-8; a
/// failure means s and t do not belong to the same automorphy class.
inline std::complex<double> l2_inner(const ExpPolySection& s,
                                     const ExpPolySection& t,
                                     const ThetaSpec& spec, int N = 256) {
    spec.validate();
    require(N >= 8, "l2_inner: grid too small");
    require(s.B == spec.B && t.B == spec.B,
            "l2_inner: sections must share the curvature constant");
    using std::complex;
    const double pi_d = 3.14159265358979323846;
    double Bv = static_cast<double>(detail::to_float50(spec.B));
    double ell = static_cast<double>(detail::side_length(spec));
    double rho = static_cast<double>(detail::radical_value(spec));

    struct NumTerm {
        complex<double> coeff, a, b;
        double gauss;
        int p, r;
    };
    auto ring_d = [&](const RingElem& e) {
        complex<double> acc(0, 0);
        double rk = 1.0;
        for (const auto& g : e.c) {
            acc += complex<double>(static_cast<double>(g.re),
                                   static_cast<double>(g.im)) *
                   rk;
            rk *= rho;
        }
        return acc;
    };
    auto compile = [&](const ExpPolySection& sec) {
        std::vector<NumTerm> out;
        out.reserve(sec.terms.size());
        for (const auto& term : sec.terms) {
            NumTerm n;
            n.coeff = ring_d(term.coeff) *
                      std::exp(pi_d * static_cast<double>(term.kappa));
            n.a = ring_d(term.a);
            n.b = ring_d(term.b);
            n.gauss = static_cast<double>(term.gauss);
            n.p = term.p;
            n.r = term.r;
            out.push_back(n);
        }
        return out;
    };
    std::vector<NumTerm> cs = compile(s), ct = compile(t);
    auto eval_d = [](const std::vector<NumTerm>& sec,
                     complex<double> z) -> complex<double> {
        complex<double> acc(0, 0);
        complex<double> zbar = conj(z);
        for (const auto& n : sec) {
            complex<double> val =
                n.coeff * std::exp(n.gauss * z * z + n.a * z + n.b * zbar);
            for (int i = 0; i < n.p; ++i) val *= z;
            for (int i = 0; i < n.r; ++i) val *= zbar;
            acc += val;
        }
        return acc;
    };
    auto integrand = [&](complex<double> z) {
        return eval_d(cs, z) * conj(eval_d(ct, z)) *
               std::exp(-Bv * std::norm(z));
    };

    std::mt19937 rng(424242u);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int pt = 0; pt < 8; ++pt) {
        complex<double> z(ell * unif(rng), ell * unif(rng));
        complex<double> base = integrand(z);
        double mag = std::abs(base) + 1e-300;
        if (std::abs(integrand(z + complex<double>(ell, 0)) - base) / mag >
                1e-8 ||
            std::abs(integrand(z + complex<double>(0, ell)) - base) / mag >
                1e-8)
            throw std::invalid_argument(
                "l2_inner: integrand is not doubly periodic; the sections "
                "are not in the same automorphy class");
    }

    complex<double> acc(0, 0);
    double h = ell / N;
    for (int iy = 0; iy < N; ++iy) {
        complex<double> row(0, 0);
        for (int ix = 0; ix < N; ++ix)
            row += integrand(complex<double>(ix * h, iy * h));
        acc += row;
    }
    return acc * (h * h);
}

/// Convenience: a single monomial-type term section.
inline ExpPolySection make_section(const Rat& B, RingElem coeff, int p, int r,
                                   RingElem a, RingElem b,
                                   Rat gauss = Rat(0), Rat kappa = Rat(0)) {
    ExpPolySection s;
    s.B = B;
    ExpPolyTerm t;
    t.coeff = std::move(coeff);
    t.p = p;
    t.r = r;
    t.a = std::move(a);
    t.b = std::move(b);
    t.gauss = std::move(gauss);
    t.kappa = std::move(kappa);
    s.terms.push_back(std::move(t));
    return canonical(std::move(s));
}

}  // namespace spb
