"""Oracle for the exact-rational Rayleigh-Ritz module on O(B) over P1.

Mirrors the planned assembly exactly and validates, ahead of the C++:
  - the moment formula against adaptive quadrature;
  - the weak-form difference identity A_par - A_dbar = B * Gram, both by
    exact assembly and by symbolic integration on sample pairs;
  - full spectra for the acceptance configurations B = 1..4, m = 4,
    d = B + 8: clusters q(B+q+1) with multiplicities B+2q+1 for q <= 3.

Assembly conventions (c = 2 Fubini-Study, u = |z|^2):
  basis        psi_{j,k} = z^j zbar^k (1+u)^{-m}, restricted to
               j+k <= B+2m-1 plus the single edge monomial (j,k) = (B+m, m)
               (interior pairs keep every moment finite; on the edge the
               u^2 bracket coefficient must vanish, which happens exactly
               at k = m for the dbar form and j = B+m for the del form)
  Gram         G = moment(p, s), p = (j+j'+k+k')/2, s = B+2m+2
  dbar form    brackets [k + (k-m)u], [k' + (k'-m)u], base power p-1
  del form     brackets [j + (j-m-B)u], [j' + (j'-m-B)u], base power p-1
  moment(p,s)  = p! (s-p-2)! / (s-1)!   (the 1/pi is absorbed globally)
"""

from fractions import Fraction
import math

import mpmath as mp
import numpy as np


def moment(p, s):
    assert s >= p + 2 and p >= 0, (p, s)
    return Fraction(math.factorial(p) * math.factorial(s - p - 2),
                    math.factorial(s - 1))


def basis_set(B, m, d):
    S = [(j, k) for j in range(d + 1) for k in range(d + 1)
         if j + k <= B + 2 * m - 1]
    edge = (B + m, m)
    if edge[0] <= d and edge not in S:
        S.append(edge)
    return S


def assemble(B, m, d):
    S = basis_set(B, m, d)
    blocks = {}
    s = B + 2 * m + 2
    for (j, k) in S:
        blocks.setdefault(j - k, []).append((j, k))
    out = {}
    for ell, mem in sorted(blocks.items()):
        mem.sort()
        nb = len(mem)
        G = [[Fraction(0)] * nb for _ in range(nb)]
        Adb = [[Fraction(0)] * nb for _ in range(nb)]
        Adl = [[Fraction(0)] * nb for _ in range(nb)]
        for a, (j, k) in enumerate(mem):
            for b, (jp, kp) in enumerate(mem):
                p = (j + jp + k + kp) // 2
                G[a][b] = moment(p, s)
                for (c1, c2, Amat) in (
                        ((k, k - m), (kp, kp - m), Adb),
                        ((j, j - m - B), (jp, jp - m - B), Adl)):
                    terms = ((c1[0] * c2[0], 0),
                             (c1[0] * c2[1] + c1[1] * c2[0], 1),
                             (c1[1] * c2[1], 2))
                    val = Fraction(0)
                    for coef, du in terms:
                        if coef != 0:
                            val += coef * moment(p - 1 + du, s)
                    Amat[a][b] = val
        out[ell] = (mem, G, Adb, Adl)
    return out


def check_difference_identity(B, m, d):
    for ell, (mem, G, Adb, Adl) in assemble(B, m, d).items():
        nb = len(mem)
        for a in range(nb):
            for b in range(nb):
                if Adl[a][b] - Adb[a][b] != B * G[a][b]:
                    return False, (ell, mem[a], mem[b])
    return True, None


def spectrum(B, m, d):
    evs = []
    for ell, (mem, G, Adb, Adl) in assemble(B, m, d).items():
        Gf = np.array([[float(x) for x in row] for row in G])
        Af = np.array([[float(x) for x in row] for row in Adb])
        w = np.linalg.eigvalsh(np.linalg.solve(Gf, Af))
        # symmetric solve: use generalized form via Cholesky for stability
        L = np.linalg.cholesky(Gf)
        Linv = np.linalg.inv(L)
        w = np.linalg.eigvalsh(Linv @ Af @ Linv.T.conj())
        evs.extend(w.tolist())
    return sorted(evs)


def cluster(vals, gap=1.0):
    groups = [[vals[0]]]
    for v in vals[1:]:
        if v - np.mean(groups[-1]) > gap:
            groups.append([])
        groups[-1].append(v)
    return [(float(np.mean(g)), len(g)) for g in groups]


def quad_moment(p, s):
    f = lambda u: u**p * (1 + u)**(-s)
    return mp.quad(f, [0, mp.inf])


def main():
    mp.mp.dps = 30
    print("== moment formula vs quadrature ==")
    for (p, s) in ((0, 2), (1, 4), (2, 5), (3, 9), (5, 12)):
        exact = moment(p, s)
        q = quad_moment(p, s)
        resid = float(abs(q - mp.mpf(exact.numerator) / exact.denominator))
        print(f"   moment({p},{s}) = {exact} ; quad residual {resid:.1e}")

    print("== difference identity A_del - A_dbar = B*Gram (exact rationals) ==")
    for (B, m, d) in ((1, 2, 4), (4, 3, 10), (2, 4, 10), (3, 4, 11)):
        ok, bad = check_difference_identity(B, m, d)
        print(f"   B={B} m={m} d={d}: {'exact' if ok else f'FAIL {bad}'}")

    print("== single-function scalar identity ==")
    B, m = 3, 2
    s = B + 2 * m + 2
    # psi = (1+u)^{-m}: j = k = 0, brackets [-mu] and [-(m+B)u], base power -1
    gram = moment(0, s)
    adb = m * m * moment(1, s)
    adl = (m + B) * (m + B) * moment(1, s)
    print(f"   a_del - a_dbar = {adl - adb}, B*g = {B * gram}: "
          f"{'equal' if adl - adb == B * gram else 'MISMATCH'}")

    print("== acceptance configurations B=1..4, m=4, d=B+8 ==")
    for B in (1, 2, 3, 4):
        m, d = 4, B + 8
        evs = spectrum(B, m, d)
        cl = cluster(evs)
        want = [(q * (B + q + 1), B + 2 * q + 1) for q in range(4)]
        got = cl[:4]
        rel = [abs(c[0] - w[0]) / max(1.0, w[0]) for c, w in zip(got, want)]
        counts_ok = all(c[1] == w[1] for c, w in zip(got, want))
        print(f"   B={B}: clusters {[(round(c, 10), n) for c, n in got]}")
        print(f"         targets  {want}  counts_ok={counts_ok} "
              f"worst_rel={max(rel):.1e}")

    print("== B=2, m=3, d=8 example block check ==")
    evs = spectrum(2, 3, 8)
    print("   clusters:", cluster(evs)[:3])


if __name__ == '__main__':
    main()
