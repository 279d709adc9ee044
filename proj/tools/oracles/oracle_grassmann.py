#!/usr/bin/env python3
"""Brute-force oracle for the Grassmannian curvature structure checks.

Tangent directions of G(mu, nu) at a base point are matrix units
E_{i i'} with 1 <= i <= mu (row), 1 <= i' <= nu (column).  The curvature
component on four directions I, J, K, L (I = (i, i') etc.) is

    R(I, J, K, L) = d_ij d_kl d_i'l' d_j'k'  +  d_il d_kj d_i'j' d_k'l'

with d the Kronecker delta.  This formula is re-derived independently here
from the compact-symmetric-space trace form

    R(A, B, C, D) = tr(A B^* C D^*) + tr(C B^* A D^*)

on mu x nu matrices, so the two must agree identically.

Facts frozen for the C++ test suite:
  * support classification: the value is 2 iff I=J=K=L; it is 1 exactly on
      plain type      I=(a,x) J=(a,y) K=(b,y) L=(b,x)   (rows paired IJ|KL,
                      columns paired IL|JK), excluding I=J=K=L,
      transposed type I=(a,x) J=(b,x) K=(b,y) L=(a,y),
    and 0 everywhere else;
  * vanishing patterns (strongest true forms, N_X := directions differing
    from X in BOTH row and column, the null directions of X):
      P5: I=J and K != L                        => R = 0
      P6: I != J, I != L and K = J              => R = 0
      P7: I != J, I = L and K != J              => R = 0
      P8: J in N_I, L in N_I and K in N_J       => R = 0
    The naive pair-level form of P8 (I != J, I != L, K != J as plain tuple
    inequalities) is FALSE for mu, nu >= 2: plaquette tuples such as
    I=(1,1) J=(1,2) K=(2,2) L=(2,1) satisfy it with R = 1.  This script
    counts those tuples to document the discrepancy.
  * symmetry R(I,J,K,L) = R(K,J,I,L) over all tuples;
  * for each direction X the Hermitian form H_X(V,W) = R(X,X,V,W) is
    diagonal in the matrix-unit basis with kernel exactly
    {E_{jj'} : j != i, j' != i'}: nullity (mu-1)(nu-1);
  * second eigenvalue formula -B + (c/2)(mu+nu), c = 2, B < 0.
"""

import itertools

import numpy as np


def units(mu, nu):
    return [(i, ip) for i in range(mu) for ip in range(nu)]


def curv(I, J, K, L):
    i, ip = I
    j, jp = J
    k, kp = K
    l, lp = L
    t1 = (i == j) and (k == l) and (ip == lp) and (jp == kp)
    t2 = (i == l) and (k == j) and (ip == jp) and (kp == lp)
    return int(t1) + int(t2)


def curv_trace(mu, nu, I, J, K, L):
    def E(idx):
        m = np.zeros((mu, nu))
        m[idx] = 1.0
        return m

    A, B, C, D = E(I), E(J), E(K), E(L)
    return int(round(np.trace(A @ B.T @ C @ D.T) + np.trace(C @ B.T @ A @ D.T)))


def in_null(X, Y):
    return X[0] != Y[0] and X[1] != Y[1]


def plaquette_support(I, J, K, L):
    plain = I[0] == J[0] and K[0] == L[0] and I[1] == L[1] and J[1] == K[1]
    transposed = I[1] == J[1] and K[1] == L[1] and I[0] == L[0] and J[0] == K[0]
    return plain, transposed


def check_all(mu, nu):
    U = units(mu, nu)
    viol5 = viol6 = viol7 = viol8 = literal8 = 0
    for I, J, K, L in itertools.product(U, repeat=4):
        r = curv(I, J, K, L)
        plain, transposed = plaquette_support(I, J, K, L)
        assert r == int(plain) + int(transposed)
        assert (r == 2) == (I == J == K == L)
        assert r == curv(K, J, I, L)
        if I == J and K != L and r != 0:
            viol5 += 1
        if I != J and I != L and K == J and r != 0:
            viol6 += 1
        if I != J and I == L and K != J and r != 0:
            viol7 += 1
        if in_null(I, J) and in_null(I, L) and in_null(J, K) and r != 0:
            viol8 += 1
        if I != J and I != L and K != J and r != 0:
            literal8 += 1
    return viol5, viol6, viol7, viol8, literal8


def nullity(mu, nu, X):
    U = units(mu, nu)
    H = np.array([[curv(X, X, V, W) for W in U] for V in U], dtype=float)
    assert np.allclose(H, np.diag(np.diag(H)))
    evals = np.diag(H)
    kernel = [U[t] for t in range(len(U)) if evals[t] == 0]
    expected = [(j, jp) for (j, jp) in U if j != X[0] and jp != X[1]]
    assert kernel == expected, (kernel, expected)
    return len(kernel)


def second_eigenvalue(mu, nu, B):
    assert B < 0
    return -B + (mu + nu)


def main():
    print("== curvature formula vs symmetric-space trace form ==")
    for mu, nu in [(1, 1), (2, 2), (3, 2), (2, 4)]:
        U = units(mu, nu)
        for I, J, K, L in itertools.product(U, repeat=4):
            assert curv(I, J, K, L) == curv_trace(mu, nu, I, J, K, L)
        print(f"   mu={mu} nu={nu}: identical on all {len(U) ** 4} tuples")

    print("== single-value examples ==")
    e = (0, 0)
    print(f"   R(E11,E11,E11,E11) = {curv(e, e, e, e)}  (expect 2)")
    f = (1, 1)
    print(f"   R(E11,E11,E22,E22) = {curv(e, e, f, f)}  (expect 0)")
    g = (0, 1)
    print(f"   R(E11,E11,E12,E12) = {curv(e, e, g, g)}  (expect 1)")

    print("== vanishing patterns and support classification, mu,nu <= 5 ==")
    for mu in range(1, 6):
        for nu in range(1, 6):
            v5, v6, v7, v8, lit8 = check_all(mu, nu)
            assert v5 == v6 == v7 == v8 == 0
            print(
                f"   mu={mu} nu={nu}: P5..P8 hold; "
                f"naive pair-level P8 violations = {lit8}"
            )

    print("== plaquette witness for the naive pair-level reading ==")
    I, J, K, L = (0, 0), (0, 1), (1, 1), (1, 0)
    print(
        f"   I=(1,1) J=(1,2) K=(2,2) L=(2,1): R = {curv(I, J, K, L)} "
        f"(pairwise distinct tuple, curvature nonzero)"
    )

    print("== nullity (mu-1)(nu-1) for every direction ==")
    for mu in range(1, 6):
        for nu in range(1, 6):
            vals = {nullity(mu, nu, X) for X in units(mu, nu)}
            assert vals == {(mu - 1) * (nu - 1)}
            print(f"   mu={mu} nu={nu}: nullity {vals.pop()} for all directions")

    print("== second eigenvalue -B + (mu+nu), B < 0 ==")
    for mu, nu, B, want in [(2, 2, -1, 5), (3, 1, -2, 6), (1, 1, -1, 3)]:
        got = second_eigenvalue(mu, nu, B)
        assert got == want
        print(f"   (mu={mu}, nu={nu}, B={B}) -> (0, {got})")

    print("all grassmann oracle checks passed")


if __name__ == "__main__":
    main()
