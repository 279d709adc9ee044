"""Reference oracle for the symbolic section algebra and theta basis.

Validates, before the C++ implementation exists:
  1. symbolic operator identities (sympy, exact):
       - ladder round trip: (-d/dzbar)^q (cov_dz)^q s = q! B^q s for
         holomorphic s, both plain e^{az} and Gaussian-dressed
         e^{B z^2/2 + az} terms, q <= 5;
       - eigen-relations Delta0 (cov_dz)^q s = qB * (cov_dz)^q s;
       - partial ladder: k down-steps from level q land in the (q-k)B
         eigenspace;
       - commutator identity Delta(cov_dz s) - cov_dz(Delta s) = B cov_dz s
         and (Delta_up - Delta0) = B * Id on random sections.
  2. the theta basis construction (numeric, mpmath/numpy):
       f_j(z) = e^{B z^2/2} * sum_{m in Z + j/delta}
                    exp(-B l^2 m^2) * exp(2 i B l m z),
       with B l^2 = pi delta  (so the flux through the cell is 2 pi delta
       and the basis has exactly delta elements).
     Checks the two automorphy relations exactly satisfied by this family,
       f(z+l)  = e^{B(l z + l^2/2)} f(z)
       f(z+il) = e^{B(-i l z + l^2/2)} f(z)        (character = 1),
     plus Gram diagonality for delta = 2 and cross-level orthogonality of
     laddered eigensections on the 256^2 trapezoid grid, freezing the
     margins used by the acceptance tests.
"""

import numpy as np
import sympy as sp


def sym_checks():
    z, zb = sp.symbols('z zbar')
    B, a = sp.symbols('B a', positive=True)

    def cov_dz(f):
        return sp.diff(f, z) - B * zb * f

    def delta0(f):
        return -cov_dz(sp.diff(f, zb))

    def delta_up(f):
        return -sp.diff(cov_dz(f), zb)

    def down(f, k):
        for _ in range(k):
            f = -sp.diff(f, zb)
        return f

    def up(f, q):
        for _ in range(q):
            f = cov_dz(f)
        return f

    for base, name in ((sp.exp(a * z), 'plain'),
                       (sp.exp(B * z**2 / 2 + a * z), 'gaussian-dressed')):
        for q in range(6):
            lifted = up(base, q)
            rt = sp.simplify(down(lifted, q) - sp.factorial(q) * B**q * base)
            assert rt == 0, (name, q, 'round trip')
            eig = sp.simplify(delta0(lifted) - q * B * lifted)
            assert eig == 0, (name, q, 'eigen')
            for k in range(q + 1):
                part = down(lifted, k)
                res = sp.simplify(delta0(part) - (q - k) * B * part)
                assert res == 0, (name, q, k, 'partial ladder')
    print("ladder round trip / eigen-relations / partial ladder: exact, q <= 5")

    rng = np.random.default_rng(7)
    ok = True
    for trial in range(30):
        p_, r_ = int(rng.integers(0, 3)), int(rng.integers(0, 3))
        ar = sp.Rational(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
        br = sp.Rational(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
        s = z**p_ * zb**r_ * sp.exp(ar * z + br * zb)
        bk = sp.simplify(delta0(cov_dz(s)) - cov_dz(delta0(s)) - B * cov_dz(s))
        comm = sp.simplify(delta_up(s) - delta0(s) - B * s)
        ok &= (bk == 0) and (comm == 0)
    s0 = z**2 * zb * sp.exp(z + 2 * zb)
    assert sp.simplify(delta0(cov_dz(s0)) - cov_dz(delta0(s0)) - B * cov_dz(s0)) == 0
    print("bk identity + (Delta_up - Delta0) = B Id on random sections:", ok)


def theta(z, B, delta, j, M=8):
    ell = np.sqrt(np.pi * delta / B)
    total = 0.0 + 0.0j
    for m in range(-M, M + 1):
        mt = m + j / delta
        total += np.exp(-B * ell * ell * mt * mt + 2j * B * ell * mt * z)
    return np.exp(B * z * z / 2) * total


def theta_ladder(z, B, delta, j, q, M=8):
    """(cov_dz)^q f_j, computed term-by-term: cov_dz maps
    e^{Bz^2/2 + az} * P(z, zbar) to e^{...} * [(Bz + a - B zbar) P + P_z]."""
    ell = np.sqrt(np.pi * delta / B)
    total = np.zeros_like(z, dtype=complex)
    for m in range(-M, M + 1):
        mt = m + j / delta
        a = 2j * B * ell * mt
        poly = np.ones_like(z, dtype=complex)
        for _ in range(q):
            # d/dz of previous poly is handled via finite set: poly is a
            # polynomial in (z, zbar); differentiate numerically exactly by
            # tracking it symbolically instead -> use recurrence on arrays
            # P_{k+1} = (Bz + a - B zbar) P_k + dP_k/dz, with dP/dz computed
            # from the previous recurrence layers; here we just carry the
            # closed form for q <= 3 below.
            raise RuntimeError('use closed form')
    return total


def ladder_closed(z, B, delta, j, q, M=8):
    """Closed forms of (cov_dz)^q f_j for q <= 3 via w = Bz + a - B zbar:
    q=0: 1, q=1: w, q=2: w^2 + B, q=3: w^3 + 3Bw  (coefficients from the
    Hermite-type recurrence P_{q+1} = w P_q + B q P_{q-1}... checked in
    sym_checks via sympy)."""
    ell = np.sqrt(np.pi * delta / B)
    total = np.zeros_like(z, dtype=complex)
    for m in range(-M, M + 1):
        mt = m + j / delta
        a = 2j * B * ell * mt
        w = B * z + a - B * np.conj(z)
        if q == 0:
            P = np.ones_like(w)
        elif q == 1:
            P = w
        elif q == 2:
            P = w * w + B
        elif q == 3:
            P = w**3 + 3 * B * w
        else:
            raise ValueError
        total += P * np.exp(-B * ell * ell * mt * mt + 2j * B * ell * mt * z)
    return np.exp(B * z * z / 2) * total


def hermite_recurrence_check():
    z, zb = sp.symbols('z zbar')
    B, a = sp.symbols('B a', positive=True)
    w = B * z + a - B * zb
    f = sp.exp(B * z**2 / 2 + a * z)
    cur = f
    polys = []
    for q in range(4):
        polys.append(sp.simplify(cur / f))
        cur = sp.diff(cur, z) - B * zb * cur
    expect = [sp.Integer(1), w, w**2 + B, w**3 + 3 * B * w]
    for q, (got, want) in enumerate(zip(polys, expect)):
        assert sp.simplify(got - sp.expand(want)) == 0, q
    print("closed ladder polynomials (1, w, w^2+B, w^3+3Bw): confirmed")


def numeric_checks():
    B, delta = 1.3, 2
    ell = np.sqrt(np.pi * delta / B)
    rng = np.random.default_rng(11)
    pts = (rng.random(32) + 1j * rng.random(32)) * ell
    worst1 = worst2 = 0.0
    for j in range(delta):
        f0 = theta(pts, B, delta, j)
        r1 = np.abs(theta(pts + ell, B, delta, j)
                    - np.exp(B * (ell * pts + ell * ell / 2)) * f0) / np.abs(f0)
        r2 = np.abs(theta(pts + 1j * ell, B, delta, j)
                    - np.exp(B * (-1j * ell * pts + ell * ell / 2)) * f0) / np.abs(f0)
        worst1 = max(worst1, r1.max()); worst2 = max(worst2, r2.max())
    print(f"automorphy residuals (32 random pts): x-dir {worst1:.2e}, y-dir {worst2:.2e}")

    N = 256
    xs = (np.arange(N) + 0.0) * ell / N
    X, Y = np.meshgrid(xs, xs, indexing='ij')
    Z = X + 1j * Y
    weight = np.exp(-B * np.abs(Z)**2)

    def inner(u, v):
        return np.sum(u * np.conj(v) * weight) * (ell / N)**2

    f = [theta(Z, B, delta, j) for j in range(delta)]
    g01 = abs(inner(f[0], f[1])) / np.sqrt(abs(inner(f[0], f[0])) * abs(inner(f[1], f[1])))
    print(f"delta=2 Gram off-diagonal (normalized): {g01:.2e}")

    for dlt in (1, 2):
        elld = np.sqrt(np.pi * dlt / B)
        xsd = np.arange(N) * elld / N
        Xd, Yd = np.meshgrid(xsd, xsd, indexing='ij')
        Zd = Xd + 1j * Yd
        wd = np.exp(-B * np.abs(Zd)**2)
        inner_d = lambda u, v: np.sum(u * np.conj(v) * wd) * (elld / N)**2
        sec = {q: ladder_closed(Zd, B, dlt, 0, q) for q in range(4)}
        worst = 0.0
        for q in range(4):
            for qp in range(q + 1, 4):
                v = abs(inner_d(sec[q], sec[qp])) / np.sqrt(
                    abs(inner_d(sec[q], sec[q])) * abs(inner_d(sec[qp], sec[qp])))
                worst = max(worst, v)
        print(f"delta={dlt}: worst cross-level |<q,q'>|/norms (q<q'<=3): {worst:.2e}")

    # adjointness spot check: <cov_dz s, t> vs <s, -dzbar t> for
    # s = f_0 (level 0), t = ladder^1 f_0 (level 1):
    # -dzbar t = -d/dzbar (w e^{...}) = B e^{...} (per closed form)
    s = theta(Z, B, delta, 0)
    t = ladder_closed(Z, B, delta, 0, 1)
    lhs = inner(ladder_closed(Z, B, delta, 0, 1), t)
    rhs = inner(s, B * theta(Z, B, delta, 0))
    # <cov_dz s, t> = <s, -dzbar t>: -dzbar(w e) = B e since dzbar w = -B
    print(f"adjointness: <Cs,t>={lhs:.6e}  <s,-dzb t>={np.conj(rhs):.6e}  "
          f"rel diff {abs(lhs - np.conj(rhs).conjugate()) / abs(lhs):.2e}")

    # truncation: ratio of the dropped m = +/-9 term to the max term on the domain
    mt = 9 + 0.0
    tail = np.exp(-B * ell**2 * mt**2 + 2 * B * ell * mt * ell)
    peak = np.exp(B * ell**2)
    print(f"M=8 tail/peak bound: {tail / peak:.2e}")


if __name__ == '__main__':
    sym_checks()
    hermite_recurrence_check()
    numeric_checks()
