"""First Galois cohomology of finite groups carrying an involution.

Groups are handled abstractly as index sets with a multiplication closure, a
fixed involutive automorphism sigma, and optional generator lists; cocycles
are the g with g sigma(g) = 1 and classes are orbits of the twisted
conjugation g -> h g sigma(h)^-1.  Everything is exhaustive: the groups that
appear (stabilizer quotients, the order-256 pointwise stabilizer, toy
extensions in the tests) have at most a few tens of thousands of elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np


class CohomologyError(Exception):
    pass


class FinGroup:
    """A finite group as an indexed element list with hashable element keys."""

    def __init__(self, elements: List, mul_elems: Callable, sigma_elems: Optional[Callable] = None,
                 key: Optional[Callable] = None):
        self.key = key or (lambda x: x)
        self.elements = list(elements)
        self.index: Dict = {self.key(x): i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise CohomologyError("duplicate elements")
        self._mul_elems = mul_elems
        self._mul_cache: Dict[Tuple[int, int], int] = {}
        self.n = len(self.elements)
        ident = None
        for i, x in enumerate(self.elements):
            if all(self.mul(i, j) == j for j in range(min(self.n, 3))):
                if all(self.mul(i, j) == j for j in range(self.n)):
                    ident = i
                    break
        if ident is None:
            raise CohomologyError("no identity found")
        self.e = ident
        self._inv = [None] * self.n
        if sigma_elems is None:
            self.sigma = list(range(self.n))
        else:
            self.sigma = [self.index[self.key(sigma_elems(x))] for x in self.elements]
            for i in range(self.n):
                if self.sigma[self.sigma[i]] != i:
                    raise CohomologyError("sigma is not an involution")

    @staticmethod
    def from_tables(mul: np.ndarray, sigma: Optional[Sequence[int]] = None) -> "FinGroup":
        n = len(mul)
        g = FinGroup.__new__(FinGroup)
        g.key = lambda x: x
        g.elements = list(range(n))
        g.index = {i: i for i in range(n)}
        g._mul_elems = None
        g._mul_table = np.asarray(mul)
        g._mul_cache = {}
        g.n = n
        ident = [i for i in range(n) if all(g._mul_table[i][j] == j for j in range(n))]
        if len(ident) != 1:
            raise CohomologyError("no identity")
        g.e = ident[0]
        g._inv = [None] * n
        g.sigma = list(sigma) if sigma is not None else list(range(n))
        return g

    @staticmethod
    def generate(gens: List, mul_elems: Callable, sigma_elems=None, key=None,
                 limit: int = 3_000_000) -> "FinGroup":
        """Closure of a generator list (which must include enough to reach 1)."""
        key = key or (lambda x: x)
        seen: Dict = {}
        elements: List = []
        frontier = list(gens)
        for x in frontier:
            k = key(x)
            if k not in seen:
                seen[k] = len(elements)
                elements.append(x)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = mul_elems(x, g)
                    k = key(y)
                    if k not in seen:
                        seen[k] = len(elements)
                        elements.append(y)
                        new.append(y)
                        if len(elements) > limit:
                            raise CohomologyError("generated group exceeds limit")
            frontier = new
        return FinGroup(elements, mul_elems, sigma_elems, key=key)

    def mul(self, a: int, b: int) -> int:
        if self._mul_elems is None:
            return int(self._mul_table[a][b])
        got = self._mul_cache.get((a, b))
        if got is None:
            y = self._mul_elems(self.elements[a], self.elements[b])
            got = self.index[self.key(y)]
            self._mul_cache[(a, b)] = got
        return got

    def inv(self, a: int) -> int:
        if self._inv[a] is None:
            for b in range(self.n):
                if self.mul(a, b) == self.e:
                    self._inv[a] = b
                    break
            else:
                raise CohomologyError("no inverse")
        return self._inv[a]


def cocycles(G: FinGroup) -> List[int]:
    """Indices of g with g sigma(g) = 1."""
    return [a for a in range(G.n) if G.mul(a, G.sigma[a]) == G.e]


def h1_classes(G: FinGroup, gens: Optional[List[int]] = None) -> List[List[int]]:
    """Cocycles partitioned into twisted-conjugation classes.

    gens: generator indices for the orbit closure (defaults to the whole
    group, which is fine for small groups).  Classes come back sorted with a
    deterministic representative-first order.
    """
    zs = cocycles(G)
    zset = set(zs)
    gens = list(range(G.n)) if gens is None else list(gens)
    # verify the generators generate (orbits under a subgroup would be finer)
    if len(gens) != G.n:
        closure = {G.e}
        frontier = [G.e]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = G.mul(g, x)
                    if y not in closure:
                        closure.add(y)
                        new.append(y)
            frontier = new
        if len(closure) != G.n:
            raise CohomologyError("generators do not generate the group")
    remaining = set(zs)
    classes = []
    while remaining:
        seed = min(remaining)
        orbit = {seed}
        frontier = [seed]
        while frontier:
            new = []
            for a in frontier:
                for h in gens:
                    b = G.mul(G.mul(h, a), G.inv(G.sigma[h]))
                    if b not in orbit:
                        if b not in zset:
                            raise CohomologyError("twisted conjugation left the cocycle set")
                        orbit.add(b)
                        new.append(b)
            frontier = new
        cls = sorted(orbit)
        classes.append(cls)
        remaining -= orbit
    classes.sort(key=lambda c: (0 if c[0] == G.e else 1, c[0]))
    return classes


def class_of(classes: List[List[int]], idx: int) -> int:
    for k, cls in enumerate(classes):
        if idx in cls:
            return k
    raise CohomologyError("cocycle not in any class")


def twisted_sigma(G: FinGroup, c: int) -> List[int]:
    """tau(x) = c sigma(x) c^-1; requires c sigma(c) = 1 so that tau^2 = id."""
    if G.mul(c, G.sigma[c]) != G.e:
        raise CohomologyError("twist element is not a cocycle")
    cinv = G.inv(c)
    tau = [G.mul(G.mul(c, G.sigma[x]), cinv) for x in range(G.n)]
    for x in range(G.n):
        if tau[tau[x]] != x:
            raise CohomologyError("twisted map is not an involution")
    return tau


def with_sigma(G: FinGroup, sigma: Sequence[int]) -> FinGroup:
    H = FinGroup.__new__(FinGroup)
    H.key = G.key
    H.elements = G.elements
    H.index = G.index
    H._mul_elems = G._mul_elems
    if G._mul_elems is None:
        H._mul_table = G._mul_table
    H._mul_cache = G._mul_cache
    H.n = G.n
    H.e = G.e
    H._inv = G._inv
    H.sigma = list(sigma)
    return H


def csigma_action_on_class(G: FinGroup, n_idx: int, lift: int) -> int:
    """[n] . c = [g^-1 n sigma(g)] for a lift g of c in the ambient group G."""
    return G.mul(G.mul(G.inv(lift), n_idx), G.sigma[lift])


def fiber_prop1(
    G: FinGroup,
    n_indices: Sequence[int],
    proj: Sequence[int],
    c_class_rep: int,
    g_c: int,
) -> List[int]:
    """Fiber of pi_* over [c] for an exact sequence 1 -> N -> G -> C -> 1.

    proj maps each G-index to a C-label; g_c must be a cocycle of G projecting
    into the class of c.  Returns representatives n_j * g_c in G-indices, one
    per orbit of the fixed-subgroup action on the twisted H1 of N.
    """
    if G.mul(g_c, G.sigma[g_c]) != G.e:
        raise CohomologyError("g_c is not a cocycle")
    tau = twisted_sigma(G, g_c)
    nset = set(n_indices)
    # N with the twisted involution
    n_list = sorted(nset)
    pos = {x: i for i, x in enumerate(n_list)}
    mulN = np.array([[pos[G.mul(a, b)] for b in n_list] for a in n_list])
    sigN = [pos[tau[x]] for x in n_list]
    N = FinGroup.from_tables(mulN, sigN)
    n_classes = h1_classes(N)
    # C^tau acting via arbitrary lifts; tau must descend to the quotient
    tau_on_c: Dict[int, int] = {}
    for g in range(G.n):
        tau_on_c.setdefault(proj[g], proj[tau[g]])
    for g in range(G.n):
        if tau_on_c[proj[g]] != proj[tau[g]]:
            raise CohomologyError("tau does not descend to the quotient")
    lifts = {}
    for g in range(G.n):
        lbl = proj[g]
        if tau_on_c[lbl] == lbl and lbl not in lifts:
            lifts[lbl] = g
    # orbit closure of N-classes under the C^tau action
    reps = [cls[0] for cls in n_classes]
    clsmap = {}
    for k, cls in enumerate(n_classes):
        for x in cls:
            clsmap[x] = k
    merged = {k: k for k in range(len(n_classes))}

    def find(a):
        while merged[a] != a:
            merged[a] = merged[merged[a]]
            a = merged[a]
        return a

    for k, rep in enumerate(reps):
        for lift in lifts.values():
            img = csigma_action_on_class(G, rep, lift)
            a, b = find(k), find(clsmap[img])
            if a != b:
                merged[max(a, b)] = min(a, b)
    orbit_reps = sorted({find(k) for k in range(len(n_classes))})
    return [G.mul(reps[k], g_c) for k in orbit_reps]
