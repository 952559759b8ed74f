"""Integer lattice utilities: Smith normal form, left kernels, and the
component-group analysis of monomial equation systems on a torus.

A system prod_j x_j^(A[r][j]) = c_r over nonzero complex numbers is solvable
iff every integer left-kernel vector u of A satisfies prod_r c_r^(u_r) = 1
(the torus is divisible).  When solvable, the solution set is a coset of the
diagonalizable group Hom(Z^n / rowlattice(A), C^*), whose component group is
the torsion of that quotient: the Smith invariant factors > 1.
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

from .cyclo import Cyc, cyc


def smith_normal_form(a: Sequence[Sequence[int]]):
    """Return (s, d, t) with s @ a @ t = d diagonal, d_k | d_{k+1}, s, t unimodular."""
    m = len(a)
    n = len(a[0]) if m else 0
    A = [list(map(int, row)) for row in a]
    S = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    T = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            S[i], S[j] = S[j], S[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in T:
                row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        if q:
            A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
            S[dst] = [x + q * y for x, y in zip(S[dst], S[src])]

    def addmul_col(dst, src, q):
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in T:
                row[dst] += q * row[src]

    for k in range(min(m, n)):
        while True:
            piv = None
            for i in range(k, m):
                for j in range(k, n):
                    if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            swap_rows(k, piv[0])
            swap_cols(k, piv[1])
            dirty = False
            for i in range(k + 1, m):
                q = A[i][k] // A[k][k]
                addmul_row(i, k, -q)
                if A[i][k]:
                    dirty = True
            for j in range(k + 1, n):
                q = A[k][j] // A[k][k]
                addmul_col(j, k, -q)
                if A[k][j]:
                    dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if A[i][j] % A[k][k]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            addmul_row(k, bad, 1)
        if A[k][k] < 0:
            A[k] = [-x for x in A[k]]
            S[k] = [-x for x in S[k]]
    return S, A, T


def invariant_factors(a) -> List[int]:
    if not a or not a[0]:
        return []
    _, d, _ = smith_normal_form(a)
    out = []
    for k in range(min(len(d), len(d[0]))):
        if d[k][k]:
            out.append(abs(d[k][k]))
    return out


def left_kernel(a) -> List[List[int]]:
    """Integer basis of {u : u @ a = 0}."""
    m = len(a)
    if m == 0:
        return []
    S, D, _ = smith_normal_form(a)
    r = sum(1 for k in range(min(len(D), len(D[0]))) if D[k][k] != 0)
    return [S[i] for i in range(r, m)]


def torsion_of_quotient(a) -> List[int]:
    """Invariant factors > 1 of Z^ncols / (row lattice of a)."""
    if not a:
        return []
    return [d for d in invariant_factors(a) if d > 1]


def monomial_system_solvable(a, targets: Sequence[Cyc]) -> bool:
    """Solvability of prod x^a_r = targets_r over the complex torus."""
    for u in left_kernel(a):
        prod = cyc(1)
        for c, e in zip(targets, u):
            if e:
                prod = prod * (cyc(c) ** e)
        if prod != cyc(1):
            return False
    return True


def solve_root_of_unity_system(a, exps: Sequence[int], modulus: int) -> Optional[List[int]]:
    """Solve A y = exps (mod modulus) over the integers; None if inconsistent.

    Used when every target is the modulus-th root of unity to a known power.
    """
    S, D, T = smith_normal_form(a)
    m, n = len(a), len(a[0])
    rhs = [sum(S[i][r] * exps[r] for r in range(m)) for i in range(len(S))]
    y = [0] * n
    for k in range(min(m, n)):
        d = D[k][k]
        if d == 0:
            if rhs[k] % modulus:
                return None
            continue
        g = math.gcd(d, modulus)
        if rhs[k] % g:
            return None
        dd, rr, mm = d // g, rhs[k] // g, modulus // g
        y[k] = (rr * pow(dd, -1, mm)) % mm if mm > 1 else 0
    for k in range(min(m, n), m):
        if rhs[k] % modulus:
            return None
    return [sum(T[i][j] * y[j] for j in range(n)) % modulus for i in range(n)]


def torsion_generators(a, ncols: int) -> List[Tuple[int, List[int]]]:
    """Generators of the torsion of Z^ncols / rowlattice: (order, exponent vector).

    An entry (d, v) means x_j = zeta_d^(v_j) generates that cyclic factor of
    the component group of {x : x^rows = 1}.
    """
    if not a:
        return []
    S, D, T = smith_normal_form(a)
    out = []
    for k in range(min(len(D), len(D[0]))):
        d = D[k][k]
        if d > 1:
            out.append((d, [T[i][k] for i in range(ncols)]))
    return out
