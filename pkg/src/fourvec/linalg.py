"""Exact dense linear algebra over Fraction / Cyc entries.

Matrices are lists of row lists.  Entries may be ints, Fractions or Cycs,
mixed freely; all algorithms only use +, -, *, / and zero tests, so the
results stay exact.  Kernel and solution bases are reduced-echelon
canonical, which makes them reproducible across runs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .cyclo import Cyc, cyc, sqrt_rational, zeta

Q = Fraction


class LinearError(Exception):
    pass


class SplitError(Exception):
    """Raised when an eigen-split does not complete within the conductor bound."""


def _is_zero(x) -> bool:
    if isinstance(x, Cyc):
        return x.is_zero
    return x == 0


def mat_copy(a):
    return [list(r) for r in a]


def identity(n, one=1):
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def matmul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            s = None
            for t in range(k):
                x = ai[t]
                if _is_zero(x):
                    continue
                term = x * b[t][j]
                s = term if s is None else s + term
            row.append(s if s is not None else 0 * ai[0])
        out.append(row)
    return out


def matvec(a, v):
    out = []
    for row in a:
        s = None
        for x, y in zip(row, v):
            if _is_zero(x) or _is_zero(y):
                continue
            term = x * y
            s = term if s is None else s + term
        out.append(s if s is not None else 0 * row[0])
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def rref(a, ncols: Optional[int] = None):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = mat_copy(a)
    if not rows:
        return rows, []
    ncols = ncols if ncols is not None else len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, len(rows)):
            if not _is_zero(rows[i][c]):
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r] + rows[r:], pivots


def rank(a) -> int:
    _, p = rref(a)
    return len(p)


def kernel(a) -> list:
    """Canonical basis (rows) of the right kernel of a."""
    if not a:
        return []
    n = len(a[0])
    rows, pivots = rref(a)
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    basis = []
    for f in free:
        v = [Q(0)] * n
        v[f] = Q(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(v)
    return basis


def solve(a, b):
    """Solve a x = b; returns (particular, kernel_basis) or None if inconsistent."""
    if len(a) != len(b):
        raise LinearError("dimension mismatch: %d rows vs %d rhs" % (len(a), len(b)))
    if not a:
        return [], []
    n = len(a[0])
    aug = [list(r) + [b[i]] for i, r in enumerate(a)]
    rows, pivots = rref(aug, ncols=n)
    # rows whose first n entries vanish must have zero rhs
    for row in rows:
        if all(_is_zero(x) for x in row[:n]) and not _is_zero(row[n]):
            return None
    x = [Q(0)] * n
    for r, c in enumerate(pivots):
        x[c] = rows[r][n]
    return x, kernel(a)


def inverse(a):
    n = len(a)
    aug = [list(r) + [Q(1) if i == j else Q(0) for j in range(n)] for i, r in enumerate(a)]
    rows, pivots = rref(aug, ncols=n)
    if len(pivots) != n:
        raise LinearError("matrix not invertible")
    return [row[n:] for row in rows[:n]]


def det(a):
    rows = mat_copy(a)
    n = len(rows)
    d = Q(1)
    sign = 1
    for c in range(n):
        p = None
        for i in range(c, n):
            if not _is_zero(rows[i][c]):
                p = i
                break
        if p is None:
            return Q(0) * d
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        d = d * rows[c][c]
        inv = rows[c][c]
        for i in range(c + 1, n):
            if not _is_zero(rows[i][c]):
                f = rows[i][c] / inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d * sign


# -- minimal polynomials and eigen splitting ----------------------------------


def _poly_eval_matvec(coeffs, mv: Callable, v):
    """(sum_k c_k A^k) v via Horner with matvec closure mv."""
    out = [c * coeffs[-1] for c in v]
    for k in range(len(coeffs) - 2, -1, -1):
        out = mv(out)
        out = [x + coeffs[k] * y for x, y in zip(out, v)]
    return out


def _poly_norm(p):
    p = list(p)
    while p and _is_zero(p[-1]):
        p.pop()
    return p


def _poly_divmod_f(a, b):
    a = _poly_norm(a)
    b = _poly_norm(b)
    q = [Q(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while r and len(r) >= len(b):
        f = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = f
        for j in range(len(b)):
            r[j + k] = r[j + k] - f * b[j]
        r = _poly_norm(r)
    return q, r


def _poly_mul_f(a, b):
    if not a or not b:
        return []
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not _is_zero(x):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return out


def _poly_gcd(a, b):
    a, b = _poly_norm(a), _poly_norm(b)
    while b:
        _, r = _poly_divmod_f(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [x / lead for x in a]
    return a


def _poly_lcm(a, b):
    g = _poly_gcd(a, b)
    if not g:
        return []
    q, r = _poly_divmod_f(_poly_mul_f(a, b), g)
    assert not r
    lead = q[-1]
    return [x / lead for x in q]


def minimal_polynomial(mv: Callable, dim: int) -> list:
    """Monic minimal polynomial (coeff list, low to high) of the operator mv.

    mv maps a coordinate list to a coordinate list.  Krylov chains are taken
    from standard basis vectors until their spans fill the whole space, so the
    returned polynomial annihilates the operator exactly.
    """
    # echelon span of all chain vectors seen so far (an invariant subspace,
    # so start vectors inside it are already annihilated by mu)
    span = {}

    def reduce_vec(v):
        v = list(v)
        for p in sorted(span):
            if not _is_zero(v[p]):
                f = v[p]
                row = span[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add_vec(v):
        v = reduce_vec(v)
        piv = next((i for i, x in enumerate(v) if not _is_zero(x)), None)
        if piv is None:
            return False
        inv = v[piv]
        span[piv] = [x / inv for x in v]
        return True

    mu = [Q(1)]
    for start in range(dim):
        if len(span) == dim:
            break
        e = [Q(0)] * dim
        e[start] = Q(1)
        if not any(not _is_zero(x) for x in reduce_vec(e)):
            continue
        # full Krylov chain from e: its annihilator polynomial, then lcm
        chain = [e]
        local = []  # echelon of the chain with combination tracking
        while True:
            w = chain[-1]
            red = list(w)
            combo = [Q(0)] * len(chain)
            combo[len(chain) - 1] = Q(1)
            for (pv, row, rowcombo) in local:
                if not _is_zero(red[pv]):
                    f = red[pv]
                    red = [x - f * y for x, y in zip(red, row)]
                    combo = [
                        c - f * d
                        for c, d in zip(combo, rowcombo + [Q(0)] * (len(combo) - len(rowcombo)))
                    ]
            piv = next((i for i, x in enumerate(red) if not _is_zero(x)), None)
            if piv is None:
                poly = _poly_norm(combo)
                lead = poly[-1]
                poly = [x / lead for x in poly]
                mu = _poly_lcm(mu, poly) if len(mu) > 1 else poly
                break
            inv = red[piv]
            local.append((piv, [x / inv for x in red], [c / inv for c in combo]))
            chain.append(mv(w))
        for w in chain[:-1]:
            add_vec(w)
    return mu


def squarefree_part(p: list) -> list:
    """p / gcd(p, p') — the radical of a univariate polynomial."""
    dp = [k * p[k] for k in range(1, len(p))]
    g = _poly_gcd(p, dp)
    q, r = _poly_divmod_f(p, g)
    assert not r
    lead = q[-1]
    return [x / lead for x in q]


def is_squarefree(p: list) -> bool:
    dp = [k * p[k] for k in range(1, len(p))]
    return len(_poly_gcd(p, dp)) == 1


DEFAULT_CONDUCTOR_BOUND = 48


def _candidate_roots(poly, bound: int):
    """Exact roots of a monic irreducible Fraction polynomial inside small
    cyclotomic fields: rationals, quadratic-formula roots, and rational
    multiples of roots of unity up to the conductor bound."""
    deg = len(poly) - 1
    if deg == 1:
        return [cyc(-poly[0])]
    if deg == 2:
        b, c = poly[1], poly[0]
        disc = b * b - 4 * c
        s = sqrt_rational(disc)
        return [(cyc(-b) + s) / 2, (cyc(-b) - s) / 2]
    # try q * zeta_m^k: |const term| = |q|^deg
    const = poly[0]
    roots = []
    qmag = abs(Fraction(const))
    qcands = set()
    for sgn in (1, -1):
        # rational deg-th root of qmag, if it exists
        num, den = qmag.numerator, qmag.denominator
        rn = round(num ** (1.0 / deg)) if num > 0 else 0
        rd = round(den ** (1.0 / deg))
        for dn in (rn - 1, rn, rn + 1):
            for dd in (rd - 1, rd, rd + 1):
                if dn > 0 and dd > 0 and Fraction(dn, dd) ** deg == qmag:
                    qcands.add(sgn * Fraction(dn, dd))
    for q0 in sorted(qcands):
        for m in range(1, bound + 1):
            if m % 4 == 2:
                continue
            for k in range(m):
                lam = cyc(q0) * zeta(m, k)
                acc = cyc(poly[-1])
                for cf in reversed(poly[:-1]):
                    acc = acc * lam + cyc(cf)
                if acc.is_zero and lam not in roots:
                    roots.append(lam)
            if len(roots) == deg:
                return roots
    return roots if len(roots) == deg else None


def eigen_split(mat, conductor_bound: int = DEFAULT_CONDUCTOR_BOUND):
    """Split a semisimple exact matrix into (eigenvalue, eigenbasis rows) pairs.

    Eigenvalues are located inside cyclotomic fields of conductor up to the
    bound; SplitError signals that the bound is too small (or the minimal
    polynomial is not squarefree, i.e. the matrix is not semisimple).
    """
    n = len(mat)
    mv = lambda v: matvec(mat, v)
    mu = minimal_polynomial(mv, n)
    if not is_squarefree(mu):
        raise SplitError("matrix is not semisimple (minimal polynomial not squarefree)")
    def _rat(c):
        if isinstance(c, Cyc):
            return c.as_rational() if c.is_rational else None
        return Q(c)

    mu_rat = [_rat(c) for c in mu]
    factors = None
    if all(c is not None for c in mu_rat):
        import sympy

        mu = mu_rat
        x = sympy.symbols("x")
        p = sum(sympy.Rational(c.numerator, c.denominator) * x ** k for k, c in enumerate(mu))
        _, fl = sympy.factor_list(p)
        factors = []
        for f, e in fl:
            assert e == 1
            cl = sympy.Poly(f, x).all_coeffs()[::-1]
            lead = Q(str(cl[-1]))
            factors.append([Q(str(c)) / lead for c in cl])
    else:
        # entries already cyclotomic: fall back to root candidates on mu itself
        factors = [mu]
    eigs = []
    for f in factors:
        if len(f) == 2 and not isinstance(f[0], Cyc):
            eigs.append(cyc(-Q(f[0])))
            continue
        fr = [c if not isinstance(c, Cyc) else c for c in f]
        try:
            frq = [Q(c) if not isinstance(c, Cyc) else c.as_rational() for c in fr]
            got = _candidate_roots(frq, conductor_bound)
        except (ValueError, TypeError):
            got = None
        if got is None:
            raise SplitError("unsplittable within conductor bound %d (factor degree %d)" % (conductor_bound, len(f) - 1))
        eigs.extend(got)
    out = []
    total = 0
    for lam in eigs:
        shifted = [[mat[i][j] - (lam if i == j else cyc(0)) for j in range(n)] for i in range(n)]
        basis = kernel(shifted)
        if not basis:
            raise SplitError("claimed eigenvalue has empty eigenspace")
        total += len(basis)
        out.append((lam, basis))
    if total != n:
        raise SplitError("eigenspace dimensions sum to %d != %d" % (total, n))
    return out
