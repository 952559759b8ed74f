"""The simple Lie algebra of type E7 over Q, its Chevalley basis, and the
order-2 automorphism that grades it into a 63-dimensional even part (type A7)
and a 70-dimensional odd part.

Node numbering of the extended diagram: 0 is the lowest root, 1..7 are the
simple roots, with the chain 0-1-3-4-5-6-7 and node 2 hanging off node 4.
The grading automorphism fixes every canonical generator except e_2, which
it negates; concretely a root vector picks up the parity of its coefficient
on alpha_2.

Structure constants are the +-1 signs of a bimultiplicative asymmetry
function on the root lattice; the choice is validated by an exhaustive
Jacobi check and the Chevalley relations.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .cyclo import Cyc, cyc
from .linalg import matmul

Q = Fraction

# Cartan matrix, Bourbaki numbering (chain 1-3-4-5-6-7, node 2 on node 4).
E7_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)]
RANK = 7
DIM = 133
N_ROOTS = 126
N_POS = 63


def cartan_matrix() -> List[List[int]]:
    C = [[2 if i == j else 0 for j in range(RANK)] for i in range(RANK)]
    for a, b in E7_EDGES:
        C[a - 1][b - 1] = -1
        C[b - 1][a - 1] = -1
    return C


def _positive_roots(C) -> List[Tuple[int, ...]]:
    simples = [tuple(1 if j == i else 0 for j in range(RANK)) for i in range(RANK)]
    roots = set(simples)
    frontier = list(simples)
    while frontier:
        new = []
        for b in frontier:
            for i in range(RANK):
                pairing = sum(b[j] * C[j][i] for j in range(RANK))
                if pairing < 0:
                    cand = tuple(b[j] + (1 if j == i else 0) for j in range(RANK))
                    if cand not in roots:
                        roots.add(cand)
                        new.append(cand)
        frontier = new
    out = sorted(roots, key=lambda r: (sum(r), r))
    return out


class ConstructionError(Exception):
    pass


@dataclass
class GradedAlgebra:
    """E7 with its Z/2-grading; built once by build_e7 and treated immutable."""

    cartan: List[List[int]]
    pos_roots: List[Tuple[int, ...]]
    roots: List[Tuple[int, ...]]
    root_index: Dict[Tuple[int, ...], int]
    eps_mask: List[List[int]]
    g0_indices: List[int] = field(default_factory=list)
    g1_indices: List[int] = field(default_factory=list)
    _pair_table: Dict[Tuple[int, int], Tuple[Tuple[int, int], ...]] = field(default_factory=dict)

    # basis layout: 0..6 the Cartan h_1..h_7, then 7+k for root vector e_{roots[k]}.

    def root_vec_index(self, root_idx: int) -> int:
        return 7 + root_idx

    def eps(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> int:
        s = 0
        for i in range(RANK):
            if a[i]:
                mi = self.eps_mask[i]
                for j in range(RANK):
                    if b[j] and mi[j]:
                        s += a[i] * b[j]
        return -1 if s % 2 else 1

    def coroot_pairing(self, beta: Tuple[int, ...], i: int) -> int:
        """<beta, alpha_i^vee> for the i-th simple root (0-based)."""
        return sum(beta[j] * self.cartan[j][i] for j in range(RANK))

    def _bracket_basis(self, i: int, j: int) -> Tuple[Tuple[int, int], ...]:
        """[x_i, x_j] for basis indices i < j as ((index, int coeff), ...)."""
        if i < 7 and j < 7:
            return ()
        if i < 7:
            beta = self.roots[j - 7]
            c = self.coroot_pairing(beta, i)
            return ((j, c),) if c else ()
        alpha = self.roots[i - 7]
        beta = self.roots[j - 7]
        s = tuple(a + b for a, b in zip(alpha, beta))
        if all(x == 0 for x in s):
            # Jacobi with the bimultiplicative sign function forces
            # [e_alpha, e_-alpha] = -h_alpha (simply laced, coroot = root).
            return tuple((t, -alpha[t]) for t in range(RANK) if alpha[t])
        k = self.root_index.get(s)
        if k is None:
            return ()
        return ((7 + k, self.eps(alpha, beta)),)

    def bracket_basis(self, i: int, j: int) -> Tuple[Tuple[int, int], ...]:
        if i == j:
            return ()
        if i < j:
            return self._pair_table[(i, j)]
        return tuple((k, -c) for k, c in self._pair_table[(j, i)])

    def bracket(self, x: Dict[int, Cyc], y: Dict[int, Cyc]) -> Dict[int, Cyc]:
        out: Dict[int, Cyc] = {}
        for i, xi in x.items():
            for j, yj in y.items():
                for k, c in self.bracket_basis(i, j):
                    v = out.get(k)
                    term = xi * yj * c
                    v = term if v is None else v + term
                    if isinstance(v, Cyc) and v.is_zero:
                        out.pop(k, None)
                    else:
                        out[k] = v
        return {k: v for k, v in out.items() if not (isinstance(v, Cyc) and v.is_zero) and v != 0}

    def ad_matrix(self, x: Dict[int, Cyc]) -> list:
        """Matrix of bracket(x, .) on the 133-dim basis, dense rows."""
        zero = cyc(0)
        cols = []
        for b in range(DIM):
            col = [zero] * DIM
            for i, xi in x.items():
                for k, c in self.bracket_basis(i, b):
                    col[k] = col[k] + xi * c
            cols.append(col)
        return [[cols[j][i] for j in range(DIM)] for i in range(DIM)]

    def simple_e(self, i: int) -> Dict[int, Cyc]:
        """Canonical raising generator for the i-th simple root (0-based)."""
        idx = 7 + self.root_index[tuple(1 if j == i else 0 for j in range(RANK))]
        return {idx: cyc(1)}

    def simple_f(self, i: int) -> Dict[int, Cyc]:
        """Canonical lowering generator; the sign makes [e_i, f_i] = h_i."""
        idx = 7 + self.root_index[tuple(-1 if j == i else 0 for j in range(RANK))]
        return {idx: cyc(-1)}

    def theta_sign(self, basis_idx: int) -> int:
        if basis_idx < 7:
            return 1
        return -1 if self.roots[basis_idx - 7][1] % 2 else 1

    def theta(self, x: Dict[int, Cyc]) -> Dict[int, Cyc]:
        return {i: (v if self.theta_sign(i) == 1 else -v) for i, v in x.items()}

    def killing(self, x: Dict[int, Cyc], y: Dict[int, Cyc]) -> Cyc:
        """Trace form tr(ad x ad y), exact."""
        total = cyc(0)
        ady: Dict[int, List[Tuple[int, Cyc]]] = {}
        for j, yj in y.items():
            for b in range(DIM):
                for k, c in self.bracket_basis(j, b):
                    ady.setdefault(b, []).append((k, yj * c))
        for i, xi in x.items():
            for b, terms in ady.items():
                # contribution to tr: coefficient of e_b in [x,[y,e_b]]
                for k, v in terms:
                    for m, c in self.bracket_basis(i, k):
                        if m == b:
                            total = total + xi * v * c
        return total

    def jacobi_check(self, exhaustive: bool = False, samples: int = 1000, seed: int = 0):
        """Verify [[x,y],z] + [[y,z],x] + [[z,x],y] = 0 on basis triples."""
        if exhaustive:
            triples = itertools.combinations(range(DIM), 3)
        else:
            rng = random.Random(seed)
            triples = (tuple(sorted(rng.sample(range(DIM), 3))) for _ in range(samples))
        tbl = self.bracket_basis
        for (i, j, k) in triples:
            acc: Dict[int, int] = {}
            for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                for m, c1 in tbl(a, b):
                    for n, c2 in tbl(m, c):
                        acc[n] = acc.get(n, 0) + c1 * c2
            for n, v in acc.items():
                if v != 0:
                    raise ConstructionError("Jacobi fails on basis triple %s at %d: %d" % ((i, j, k), n, v))
        return True


def _eps_mask(C) -> List[List[int]]:
    """F2 mask M with eps(a,b) = (-1)^(a^T M b): -1 on (i,i) and on adjacent i<j."""
    M = [[0] * RANK for _ in range(RANK)]
    for i in range(RANK):
        M[i][i] = 1
    for a, b in E7_EDGES:
        i, j = min(a, b) - 1, max(a, b) - 1
        M[i][j] = 1
    return M


@lru_cache(maxsize=1)
def build_e7() -> GradedAlgebra:
    C = cartan_matrix()
    pos = _positive_roots(C)
    if len(pos) != N_POS:
        raise ConstructionError("expected 63 positive roots, got %d" % len(pos))
    roots = pos + [tuple(-x for x in r) for r in pos]
    alg = GradedAlgebra(
        cartan=C,
        pos_roots=pos,
        roots=roots,
        root_index={r: i for i, r in enumerate(roots)},
        eps_mask=_eps_mask(C),
    )
    alg._pair_table = {
        (i, j): alg._bracket_basis(i, j) for i in range(DIM) for j in range(i + 1, DIM)
    }
    # grading by parity of the alpha_2 coefficient
    for b in range(DIM):
        (alg.g0_indices if alg.theta_sign(b) == 1 else alg.g1_indices).append(b)
    if len(alg.g0_indices) != 63 or len(alg.g1_indices) != 70:
        raise ConstructionError(
            "grading dims %d/%d, expected 63/70" % (len(alg.g0_indices), len(alg.g1_indices))
        )
    # Chevalley relations for the canonical generators (f_i = -e_{-alpha_i})
    for i in range(RANK):
        got = alg.bracket(alg.simple_e(i), alg.simple_f(i))
        if got != {i: cyc(1)}:
            raise ConstructionError("[e_%d, f_%d] != h_%d: %s" % (i, i, i, got))
        ei = 7 + alg.root_index[tuple(1 if j == i else 0 for j in range(RANK))]
        if alg.bracket_basis(i, ei) != ((ei, 2),):
            raise ConstructionError("[h_%d, e_%d] != 2 e_%d" % (i, i, i))
    # highest root must carry the standard E7 marks
    high = pos[-1]
    if high != (2, 2, 3, 4, 3, 2, 1):
        raise ConstructionError("highest root %s is not the standard one" % (high,))
    alg.jacobi_check(exhaustive=False, samples=400, seed=11)
    return alg


def theta_eigenspace(alg: GradedAlgebra, sign: int) -> List[int]:
    """Basis indices of the +1 or -1 eigenspace of the grading automorphism."""
    return list(alg.g0_indices if sign > 0 else alg.g1_indices)


def elt(pairs) -> Dict[int, Cyc]:
    """Build a sparse algebra element from (basis index, scalar) pairs."""
    out: Dict[int, Cyc] = {}
    for i, v in pairs:
        v = cyc(v)
        if not v.is_zero:
            out[i] = out.get(i, cyc(0)) + v
    return {i: v for i, v in out.items() if not v.is_zero}


def is_real_elt(x: Dict[int, Cyc]) -> bool:
    return all(v.conj() == v for v in x.values())
