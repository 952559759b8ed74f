"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Every scalar in the package is a ``Cyc``: a vector of rational coefficients
on the power basis zeta_n^0 .. zeta_n^(phi(n)-1), reduced modulo the n-th
cyclotomic polynomial and stored at the minimal possible conductor (never
2 mod 4, so the representation of a field element is unique).  Complex
conjugation is the ring automorphism zeta_n -> zeta_n^(n-1).

No floating point is used anywhere; ``Cyc.approx`` exists only so callers
can prescreen search candidates numerically before verifying exactly.
"""

from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

Q = Fraction

__all__ = [
    "Cyc",
    "cyc",
    "zeta",
    "I",
    "sqrt_rational",
    "half_angle",
    "root_of_unity_log",
    "parse_scalar",
    "format_scalar",
]


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    r, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            r -= r // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        r -= r // m
    return r


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple:
    """Monic coefficients (low to high) of the n-th cyclotomic polynomial."""
    # x^n - 1 = prod_{d | n} Phi_d; divide out the proper divisors.
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            den = _cyclotomic(d)
            num = _polydiv_exact(num, list(den))
    return tuple(num)


def _polydiv_exact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[len(den) - 1 + k]
        out[k] = c
        if c:
            for j, dj in enumerate(den):
                num[j + k] -= c * dj
    assert all(x == 0 for x in num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def _reduction_table(n: int):
    """Coefficient rows expressing zeta_n^k for k in [phi(n), n) on the power basis."""
    d = _phi(n)
    phi_n = _cyclotomic(n)
    rows = []
    prev = [Q(0)] * d
    if d >= 1:
        cur = [Q(0)] * d
        cur[d - 1] = Q(1)
        prev = cur
    for _k in range(d, n):
        # multiply prev (= zeta^{k-1}) by zeta and reduce.
        top = prev[d - 1]
        nxt = [Q(0)] + prev[: d - 1]
        if top:
            for j in range(d):
                nxt[j] -= top * phi_n[j]
        rows.append(tuple(nxt))
        prev = nxt
    return tuple(rows)


def _reduce_power(n: int, k: int):
    """zeta_n^k on the power basis, any integer k."""
    d = _phi(n)
    k %= n
    if k < d:
        v = [Q(0)] * d
        v[k] = Q(1)
        return v
    return list(_reduction_table(n)[k - d])


@lru_cache(maxsize=None)
def _embed_matrix(d: int, n: int):
    """Columns: zeta_d^j (j < phi(d)) written on the conductor-n power basis."""
    assert n % d == 0
    cols = []
    for j in range(_phi(d)):
        cols.append(tuple(_reduce_power(n, j * (n // d))))
    return cols


@lru_cache(maxsize=None)
def _demote_solver(n: int, d: int):
    """Row-reduced data for solving x = sum_j y_j * embed(d->n)_j."""
    cols = _embed_matrix(d, n)
    m, k = _phi(n), _phi(d)
    rows = [[cols[j][i] for j in range(k)] for i in range(m)]
    # Gauss with partial structure; record pivot positions and the elimination
    # steps as an augmented identity to re-apply to right sides.
    aug = [row[:] + [Q(1) if i == j else Q(0) for j in range(m)] for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    elim = [row[k:] for row in aug]
    return pivots, elim, k, m


def _try_demote(coeffs, n: int, d: int):
    pivots, elim, k, m = _demote_solver(n, d)
    if len(pivots) < k:
        return None
    y = [Q(0)] * k
    rhs = [sum(elim[i][j] * coeffs[j] for j in range(m) if coeffs[j]) for i in range(m)]
    for r, c in enumerate(pivots):
        y[c] = rhs[r]
    # consistency: rows beyond the pivots must vanish.
    for i in range(len(pivots), m):
        if rhs[i] != 0:
            return None
    return y


def _allowed_divisors(n: int):
    divs = [d for d in range(1, n + 1) if n % d == 0 and d % 4 != 2]
    return sorted(divs)


class Cyc:
    """A cyclotomic number in canonical minimal-conductor form."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs, _canonical: bool = False):
        if _canonical:
            self.n = n
            self.c = coeffs
            return
        if n % 4 == 2:
            # Q(zeta_{2m}) = Q(zeta_m) for odd m; fold via zeta_{2m} = -zeta_m^{(m+1)/2}.
            m = n // 2
            folded = [Q(0)] * _phi(m)
            for k, a in enumerate(coeffs):
                if a:
                    pw = _reduce_power(m, (k * ((m + 1) // 2)) % m)
                    s = a if k % 2 == 0 else -a
                    for j, b in enumerate(pw):
                        folded[j] += s * b
            n, coeffs = m, folded
        d = _phi(n)
        coeffs = [Q(x) for x in coeffs]
        assert len(coeffs) == d, (n, len(coeffs))
        if n > 1:
            for div in _allowed_divisors(n):
                if div == n:
                    break
                down = _try_demote(coeffs, n, div)
                if down is not None:
                    n, coeffs = div, down
                    break
        self.n = n
        self.c = tuple(coeffs)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def rational(q) -> "Cyc":
        return Cyc(1, (Q(q),), _canonical=True)

    @staticmethod
    def root_of_unity(n: int, k: int = 1) -> "Cyc":
        return Cyc(n, _reduce_power(n, k))

    # -- predicates / accessors ------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.n == 1

    @property
    def is_zero(self) -> bool:
        return self.n == 1 and self.c[0] == 0

    def as_rational(self) -> Fraction:
        if self.n != 1:
            raise ValueError("not rational: %s" % self)
        return self.c[0]

    def is_real(self) -> bool:
        return self.conj() == self

    def approx(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(float(a) * z ** k for k, a in enumerate(self.c))

    # -- arithmetic -------------------------------------------------------

    def _promote(self, m: int):
        """Coefficients of self on the conductor-m power basis (self.n | m)."""
        if m == self.n:
            return list(self.c)
        out = [Q(0)] * _phi(m)
        cols = _embed_matrix(self.n, m)
        for j, a in enumerate(self.c):
            if a:
                for i, b in enumerate(cols[j]):
                    if b:
                        out[i] += a * b
        return out

    def __add__(self, other):
        other = cyc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == 1 and other.n == 1:
            return Cyc(1, (self.c[0] + other.c[0],), _canonical=True)
        m = _lcm_conductor(self.n, other.n)
        a = self._promote(m)
        b = other._promote(m)
        return Cyc(m, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return Cyc(self.n, tuple(-x for x in self.c), _canonical=True)

    def __sub__(self, other):
        other = cyc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = cyc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == 1:
            q = self.c[0]
            if q == 0:
                return ZERO
            return Cyc(other.n, tuple(q * x for x in other.c), _canonical=True)
        if other.n == 1:
            q = other.c[0]
            if q == 0:
                return ZERO
            return Cyc(self.n, tuple(q * x for x in self.c), _canonical=True)
        m = _lcm_conductor(self.n, other.n)
        a = self._promote(m)
        b = other._promote(m)
        d = _phi(m)
        prod = [Q(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        table = _reduction_table(m)
        for k in range(d, 2 * d - 1):
            ck = prod[k]
            if ck:
                row = table[k - d] if k - d < len(table) else None
                if row is None:
                    row = _reduce_power(m, k)
                for j, b2 in enumerate(row):
                    if b2:
                        out[j] += ck * b2
        return Cyc(m, out)

    def inverse(self) -> "Cyc":
        if self.is_zero:
            raise ZeroDivisionError("cyclotomic division by zero")
        if self.n == 1:
            return Cyc(1, (1 / self.c[0],), _canonical=True)
        # extended Euclid in Q[x] against the cyclotomic polynomial:
        # maintain r_i = t_i*Phi + s_i*a, stop when r1 = 0, gcd in r0.
        phi_n = [Q(x) for x in _cyclotomic(self.n)]
        r0, r1 = phi_n, _poly_trim(list(self.c))
        s0, s1 = [], [Q(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            qs1 = _poly_mul(q, s1)
            s_new = [Q(0)] * max(len(s0), len(qs1))
            for i, x in enumerate(s0):
                s_new[i] += x
            for i, x in enumerate(qs1):
                s_new[i] -= x
            r0, r1 = r1, r
            s0, s1 = s1, _poly_trim(s_new)
        if len(r0) != 1:
            raise ZeroDivisionError("element not invertible (gcd not constant)")
        inv_coeffs = [x / r0[0] for x in s0]
        d = _phi(self.n)
        out = [Q(0)] * d
        for k, x in enumerate(inv_coeffs):
            if x:
                for j, b in enumerate(_reduce_power(self.n, k)):
                    out[j] += x * b
        return Cyc(self.n, out)

    def __truediv__(self, other):
        other = cyc(other)
        if other is NotImplemented:
            return NotImplemented
        if other.n == 1:
            return Cyc(self.n, tuple(x / other.c[0] for x in self.c), _canonical=True)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return cyc(other) / self

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return cyc(other) - self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "Cyc":
        if self.n == 1:
            return self
        d = _phi(self.n)
        out = [Q(0)] * d
        for k, a in enumerate(self.c):
            if a:
                for j, b in enumerate(_reduce_power(self.n, -k)):
                    out[j] += a * b
        return Cyc(self.n, out)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        other = cyc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.n == other.n and self.c == other.c

    def __hash__(self):
        return hash((self.n, self.c))

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        return "Cyc(%s)" % format_scalar(self)


def _lcm_conductor(a: int, b: int) -> int:
    m = a * b // gcd(a, b)
    return m


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    q = [Q(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and r:
        f = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = f
        for j in range(len(b)):
            r[j + k] -= f * b[j]
        r = _poly_trim(r)
    return q, r


def cyc(x):
    """Coerce ints, Fractions and Cycs to Cyc; NotImplemented otherwise."""
    if isinstance(x, Cyc):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyc(1, (Q(x),), _canonical=True)
    return NotImplemented


def zeta(n: int, k: int = 1) -> Cyc:
    return Cyc(n, _reduce_power(n, k))


ZERO = Cyc(1, (Q(0),), _canonical=True)
ONE = Cyc(1, (Q(1),), _canonical=True)
I = zeta(4)


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> Cyc:
    """Exact square root of a prime via quadratic Gauss sums."""
    if p == 2:
        return zeta(8) + zeta(8, -1)
    g = ZERO
    for k in range(1, p):
        g = g + zeta(p, k * k)  # sum over squares counts each QR twice - usual trick
    # g = sum_k legendre(k) zeta^k = (sum over squares)*2 - (sum over all nonzero)
    # sum over all nonzero zeta^k = -1.
    g = g + ONE  # now g = 2*sum_{QR} zeta^r + 1 = Gauss sum
    if p % 4 == 1:
        return g
    return g * zeta(4, -1)  # g = i*sqrt(p) for p = 3 mod 4


def sqrt_rational(q) -> Cyc:
    """An exact cyclotomic square root of a rational number (principal-ish choice)."""
    q = Q(q)
    if q == 0:
        return ZERO
    sign = I if q < 0 else ONE
    q = abs(q)
    num, den = q.numerator, q.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    m = num * den
    root = Q(1, den)
    sq = 1
    p = 2
    mm = m
    out = ONE
    while p * p <= mm:
        if mm % p == 0:
            e = 0
            while mm % p == 0:
                mm //= p
                e += 1
            sq *= p ** (e // 2)
            if e % 2:
                out = out * _sqrt_prime(p)
        p += 1
    if mm > 1:
        out = out * _sqrt_prime(mm)
    res = out * Cyc.rational(root * sq) * sign
    assert res * res == Cyc.rational(q if sign is ONE else -q)
    return res


def root_of_unity_log(x: Cyc, max_order: int = 96):
    """Return (m, t) with x = zeta_m^t, or None if x is not a root of unity."""
    if x * x.conj() != ONE:
        return None
    p = x
    for m in range(1, max_order + 1):
        if p == ONE:
            # x has order m; express as power of zeta_m
            for t in range(m):
                if x == zeta(m, t):
                    return (m, t)
            return None
        p = p * x
    return None


def half_angle(lam: Cyc) -> Cyc:
    """Canonical mu with mu^-1 * conj(mu) = lam, for lam a root of unity.

    Maps 1 -> 1 and -1 -> i (the scale used when realifying diagonal cocycles).
    """
    lt = root_of_unity_log(lam)
    if lt is None:
        raise ValueError("half_angle needs a root of unity, got %s" % lam)
    m, t = lt
    if t == 0:
        return ONE
    mu = zeta(2 * m, m - t)
    assert mu.inverse() * mu.conj() == lam
    return mu


# -- text grammar -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(z\d+|\d+/\d+|\d+|\^|\*|\+|-|\(|\))")


def _tokenize(s: str):
    pos = 0
    out = []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError("bad scalar syntax at %r" % s[pos:])
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def parse_expr(self):
        t = self.peek()
        neg = False
        if t in ("+", "-"):
            self.next()
            neg = t == "-"
        v = self.parse_term()
        if neg:
            v = -v
        while self.peek() in ("+", "-"):
            op = self.next()
            rhs = self.parse_term()
            v = v - rhs if op == "-" else v + rhs
        return v

    def parse_term(self):
        v = self.parse_factor()
        while self.peek() == "*":
            self.next()
            v = v * self.parse_factor()
        return v

    def parse_factor(self):
        t = self.next()
        if t is None:
            raise ValueError("unexpected end of scalar")
        if t == "(":
            v = self.parse_expr()
            if self.next() != ")":
                raise ValueError("missing )")
        elif t == "-":
            return -self.parse_factor()
        elif t.startswith("z"):
            v = zeta(int(t[1:]))
        else:
            v = Cyc.rational(Q(t))
        if self.peek() == "^":
            self.next()
            sign = 1
            if self.peek() == "-":
                self.next()
                sign = -1
            e = self.next()
            v = v ** (sign * int(e))
        return v


def parse_scalar(s: str) -> Cyc:
    """Parse the scalar grammar: rationals, z<n> for zeta_n, + - * ^."""
    p = _Parser(_tokenize(s))
    v = p.parse_expr()
    if p.peek() is not None:
        raise ValueError("trailing tokens in scalar %r" % s)
    return cyc(v)


def format_scalar(x) -> str:
    x = cyc(x)
    if x.n == 1:
        return str(x.c[0])
    parts = []
    for k, a in enumerate(x.c):
        if a == 0:
            continue
        if k == 0:
            parts.append((a, ""))
        elif k == 1:
            parts.append((a, "z%d" % x.n))
        else:
            parts.append((a, "z%d^%d" % (x.n, k)))
    out = ""
    for a, sym in parts:
        mag = abs(a)
        term = sym if sym and mag == 1 else (str(mag) if not sym else "%s*%s" % (mag, sym))
        if not out:
            out = term if a > 0 else "-" + term
        else:
            out += (" + " if a > 0 else " - ") + term
    return out or "0"
