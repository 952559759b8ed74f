"""The SL(8)-module wedge^4 K^8, its identification with the odd part of
graded E7, and the module automorphisms used to fold orbit lists.

Fourvectors are dense 70-vectors over the cyclotomic scalars on the basis
e_ijkl (indices strictly increasing, lexicographic order).  The isomorphism
psi sends the elementary matrices E_12, E_23, ..., E_78 to the canonical
raising generators of the even subalgebra (lowest-root node first), and T
carries e_1234 to the highest-weight root vector of the odd part with
coefficient 1.  T is forced one weight at a time: every weight of wedge^4
is simple, so equivariance along the simple raising/lowering operators
propagates a single scalar per basis vector from the normalization; the
full 14-generator equivariance is then asserted exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclo import Cyc, I, cyc, zeta
from .e7 import DIM, RANK, GradedAlgebra, build_e7, ConstructionError
from . import linalg as la

Q = Fraction

COMBOS: List[Tuple[int, int, int, int]] = list(itertools.combinations(range(1, 9), 4))
COMBO_INDEX: Dict[Tuple[int, int, int, int], int] = {c: k for k, c in enumerate(COMBOS)}
ZERO = cyc(0)
ONE = cyc(1)


def sort_sign(idx: Sequence[int]) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """Sign of the permutation sorting idx; (0, None) on repeats."""
    idx = list(idx)
    sign = 1
    for a in range(len(idx)):
        for b in range(len(idx) - 1 - a):
            if idx[b] > idx[b + 1]:
                idx[b], idx[b + 1] = idx[b + 1], idx[b]
                sign = -sign
            elif idx[b] == idx[b + 1]:
                return 0, None
    return sign, tuple(idx)


class FourVector:
    """Element of wedge^4 K^8 on the e_ijkl basis."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[Cyc]):
        assert len(coeffs) == 70
        self.c = tuple(coeffs)

    @staticmethod
    def zero() -> "FourVector":
        return FourVector([ZERO] * 70)

    @staticmethod
    def from_terms(terms) -> "FourVector":
        """terms: iterable of (scalar, (i,j,k,l)); indices may need sorting."""
        c = [ZERO] * 70
        for s, idx in terms:
            sgn, key = sort_sign(idx)
            if sgn == 0:
                continue
            k = COMBO_INDEX[key]
            c[k] = c[k] + cyc(s) * sgn
        return FourVector(c)

    @staticmethod
    def basis(i, j, k, l) -> "FourVector":
        return FourVector.from_terms([(1, (i, j, k, l))])

    def support(self) -> List[int]:
        return [k for k, x in enumerate(self.c) if not x.is_zero]

    def is_zero(self) -> bool:
        return all(x.is_zero for x in self.c)

    def is_real(self) -> bool:
        return all(x.conj() == x for x in self.c)

    def conj(self) -> "FourVector":
        return FourVector([x.conj() for x in self.c])

    def __add__(self, other):
        return FourVector([a + b for a, b in zip(self.c, other.c)])

    def __sub__(self, other):
        return FourVector([a - b for a, b in zip(self.c, other.c)])

    def __neg__(self):
        return FourVector([-a for a in self.c])

    def scale(self, s) -> "FourVector":
        s = cyc(s)
        return FourVector([s * a for a in self.c])

    def __eq__(self, other):
        return isinstance(other, FourVector) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        terms = []
        for k, x in enumerate(self.c):
            if not x.is_zero:
                terms.append("(%s)e_%s" % (x, "".join(map(str, COMBOS[k]))))
        return " + ".join(terms) if terms else "0"


# -- 8x8 matrices --------------------------------------------------------------


def mat8(rows) -> list:
    return [[cyc(x) for x in r] for r in rows]


def mat8_id() -> list:
    return [[ONE if i == j else ZERO for j in range(8)] for i in range(8)]


def mat8_diag(entries) -> list:
    return [[cyc(entries[i]) if i == j else ZERO for j in range(8)] for i in range(8)]


def mat8_mul(a, b) -> list:
    return la.matmul(a, b)


def mat8_inv(a) -> list:
    return la.inverse(a)


def mat8_conj(a) -> list:
    return [[cyc(x).conj() for x in r] for r in a]


def mat8_det(a) -> Cyc:
    return cyc(la.det(a))


def mat8_eq(a, b) -> bool:
    return all(cyc(x) == cyc(y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat8_is_real(a) -> bool:
    return all(cyc(x).is_real() for r in a for x in r)


def _det4(g, rows, cols) -> Cyc:
    total = ZERO
    r0, r1, r2, r3 = rows
    for perm in itertools.permutations(range(4)):
        sgn, _ = sort_sign([perm.index(t) for t in range(4)])
        term = g[r0 - 1][cols[perm[0]] - 1] * g[r1 - 1][cols[perm[1]] - 1]
        if term.is_zero:
            continue
        term = term * g[r2 - 1][cols[perm[2]] - 1] * g[r3 - 1][cols[perm[3]] - 1]
        total = total + term * sgn
    return total


def act_group(g, v: FourVector) -> FourVector:
    """Fourth exterior power action of an 8x8 matrix."""
    out = [ZERO] * 70
    for k in v.support():
        cols = COMBOS[k]
        coeff = v.c[k]
        # column extraction: rows of g at the 4 chosen columns
        colmat = [[g[r][c - 1] for c in cols] for r in range(8)]
        for j, rows in enumerate(COMBOS):
            d = _det4_cols(colmat, rows)
            if not d.is_zero:
                out[j] = out[j] + coeff * d
    return FourVector(out)


def _det4_cols(colmat, rows) -> Cyc:
    r = [colmat[t - 1] for t in rows]
    # Laplace on 2x2 blocks for fewer scalar multiplies
    m01 = []
    for (a, b) in itertools.combinations(range(4), 2):
        m01.append((a, b, r[0][a] * r[1][b] - r[0][b] * r[1][a]))
    total = ZERO
    for (a, b, d2) in m01:
        if d2.is_zero:
            continue
        rest = [t for t in range(4) if t not in (a, b)]
        c, d = rest
        d2b = r[2][c] * r[3][d] - r[2][d] * r[3][c]
        if d2b.is_zero:
            continue
        sgn, _ = sort_sign([a, b, c, d])
        total = total + d2 * d2b * sgn
    return total


def act_lie(x, v: FourVector) -> FourVector:
    """Derivation action of an 8x8 Lie algebra element."""
    out = [ZERO] * 70
    for k in v.support():
        idx = COMBOS[k]
        coeff = v.c[k]
        for t in range(4):
            col = idx[t]
            for r in range(8):
                xe = x[r][col - 1]
                if xe.is_zero:
                    continue
                newidx = list(idx)
                newidx[t] = r + 1
                sgn, key = sort_sign(newidx)
                if sgn == 0:
                    continue
                j = COMBO_INDEX[key]
                out[j] = out[j] + coeff * xe * sgn
    return FourVector(out)


# -- numeric prescreen helpers -------------------------------------------------


def mat8_numeric(g):
    import numpy as np

    return np.array([[cyc(x).approx() for x in r] for r in g], dtype=complex)


@lru_cache(maxsize=1)
def _wedge_index_arrays():
    import numpy as np

    rows = np.array([[c - 1 for c in combo] for combo in COMBOS])
    return rows


def act_group_numeric_matrix(gnum):
    """70x70 complex matrix of the wedge^4 action of a numeric 8x8 matrix."""
    import numpy as np

    rows = _wedge_index_arrays()
    # minors[J, I] = det g[rows[J], cols[I]]
    sub = gnum[rows[:, None, :, None], rows[None, :, None, :]]
    return np.linalg.det(sub)


# -- the even-part isomorphism psi ---------------------------------------------

SL8_PAIRS: List[Tuple[int, int]] = [(i, j) for i in range(1, 9) for j in range(1, 9) if i != j]
SL8_BASIS: List = SL8_PAIRS + [("h", i) for i in range(1, 8)]  # E_ij then H_i = E_ii - E_{i+1,i+1}
SL8_DIM = 63


def sl8_elt(mat) -> list:
    """Coerce to a traceless 8x8 matrix of Cycs."""
    m = mat8(mat)
    tr = sum((m[i][i] for i in range(8)), ZERO)
    if not tr.is_zero:
        raise ValueError("matrix is not traceless")
    return m


def sl8_unit(i: int, j: int) -> list:
    m = [[ZERO] * 8 for _ in range(8)]
    m[i - 1][j - 1] = ONE
    return m


def sl8_coords(m) -> list:
    """Coordinates of a traceless matrix on SL8_BASIS."""
    out = []
    for (i, j) in SL8_PAIRS:
        out.append(m[i - 1][j - 1])
    # diagonal part: d_i = sum of first i diagonal entries gives H-coordinates
    acc = ZERO
    for i in range(1, 8):
        acc = acc + m[i - 1][i - 1]
        out.append(acc)
    return out


def sl8_from_coords(coords) -> list:
    m = [[ZERO] * 8 for _ in range(8)]
    for k, (i, j) in enumerate(SL8_PAIRS):
        m[i - 1][j - 1] = cyc(coords[k])
    hs = coords[56:]
    diag = [ZERO] * 8
    for i in range(7):
        diag[i] = diag[i] + cyc(hs[i])
        diag[i + 1] = diag[i + 1] - cyc(hs[i])
    for i in range(8):
        m[i][i] = m[i][i] + diag[i]
    return m


@dataclass
class WedgeModule:
    """Everything layered on top of the graded algebra: psi, T, nu, phi."""

    alg: GradedAlgebra
    psi_images: List[Dict[int, Cyc]]  # image of each SL8_BASIS element in the algebra
    psi_solver: tuple  # data to invert psi on the even part
    t_root_of_combo: List[int]  # g1 basis position (algebra index) for each combo
    t_scale: List[Cyc]  # T(e_I) = t_scale[I] * x_{t_root_of_combo[I]}
    phi_perm: List[int]
    p_basis: List[FourVector]

    # -- psi ------------------------------------------------------------------

    def psi(self, m) -> Dict[int, Cyc]:
        coords = sl8_coords(m)
        out: Dict[int, Cyc] = {}
        for k, c in enumerate(coords):
            c = cyc(c)
            if c.is_zero:
                continue
            for idx, v in self.psi_images[k].items():
                w = out.get(idx, ZERO) + c * v
                if w.is_zero:
                    out.pop(idx, None)
                else:
                    out[idx] = w
        return out

    def psi_inv(self, x: Dict[int, Cyc]) -> list:
        """Inverse of psi on the even part; raises if x is not even."""
        g0_pos, inv_rows = self.psi_solver
        vec = [ZERO] * SL8_DIM
        for idx, v in x.items():
            p = g0_pos.get(idx)
            if p is None:
                raise ValueError("element not in the even part")
            vec[p] = v
        coords = la.matvec(inv_rows, vec)
        return sl8_from_coords(coords)

    # -- intertwiner ------------------------------------------------------------

    def T(self, v: FourVector) -> Dict[int, Cyc]:
        out: Dict[int, Cyc] = {}
        for k in v.support():
            idx = self.t_root_of_combo[k]
            out[idx] = out.get(idx, ZERO) + v.c[k] * self.t_scale[k]
        return {i: x for i, x in out.items() if not x.is_zero}

    def T_inv(self, x: Dict[int, Cyc]) -> FourVector:
        out = [ZERO] * 70
        pos = self._combo_of_root
        for idx, v in x.items():
            k = pos.get(idx)
            if k is None:
                raise ValueError("element not in the odd part")
            out[k] = out[k] + v / self.t_scale[k]
        return FourVector(out)

    @property
    def _combo_of_root(self) -> Dict[int, int]:
        return {r: k for k, r in enumerate(self.t_root_of_combo)}

    # -- module automorphisms ----------------------------------------------------

    def nu_vec(self, v: FourVector) -> FourVector:
        out = list(v.c)
        for k, combo in enumerate(COMBOS):
            if 1 in combo:
                out[k] = -out[k]
        return FourVector(out)

    def nu1_vec(self, v: FourVector) -> FourVector:
        return self.nu_vec(v).scale(I)

    def nu_group(self, g) -> list:
        out = [[g[i][j] for j in range(8)] for i in range(8)]
        for i in range(8):
            for j in range(8):
                if (i == 0) != (j == 0):
                    out[i][j] = -out[i][j]
        return out

    def phi_vec(self, v: FourVector) -> FourVector:
        out = [ZERO] * 70
        for k, x in enumerate(v.c):
            out[self.phi_perm[k]] = x
        return FourVector(out)

    def phi_group(self, g) -> list:
        ginv_t = la.transpose(mat8_inv(g))
        return mat8_mul(mat8_mul(PHI_Q, ginv_t), mat8_inv(PHI_Q))

    def cartan_basis(self) -> List[FourVector]:
        return list(self.p_basis)


PHI_Q = None  # set below
PHI_PAIRS = [
    ((1, 2, 4, 5), (1, 2, 3, 6)),
    ((1, 3, 4, 5), (1, 2, 3, 7)),
    ((1, 3, 4, 6), (1, 2, 4, 7)),
    ((1, 3, 5, 6), (1, 2, 5, 7)),
    ((1, 4, 5, 6), (1, 2, 6, 7)),
    ((1, 4, 5, 7), (1, 3, 6, 7)),
    ((2, 3, 4, 5), (1, 2, 3, 8)),
    ((2, 3, 4, 6), (1, 2, 4, 8)),
    ((2, 3, 4, 7), (1, 3, 4, 8)),
    ((2, 3, 5, 6), (1, 2, 5, 8)),
    ((2, 3, 5, 7), (1, 3, 5, 8)),
    ((2, 3, 6, 7), (1, 4, 5, 8)),
    ((2, 4, 5, 6), (1, 2, 6, 8)),
    ((2, 4, 5, 7), (1, 3, 6, 8)),
    ((2, 4, 5, 8), (2, 3, 6, 8)),
    ((2, 4, 6, 7), (1, 4, 6, 8)),
    ((2, 5, 6, 7), (1, 5, 6, 8)),
    ((3, 4, 5, 6), (1, 2, 7, 8)),
    ((3, 4, 5, 7), (1, 3, 7, 8)),
    ((3, 4, 5, 8), (2, 3, 7, 8)),
    ((3, 4, 6, 7), (1, 4, 7, 8)),
    ((3, 4, 6, 8), (2, 4, 7, 8)),
    ((3, 5, 6, 7), (1, 5, 7, 8)),
    ((3, 5, 6, 8), (2, 5, 7, 8)),
    ((4, 5, 6, 7), (1, 6, 7, 8)),
    ((4, 5, 6, 8), (2, 6, 7, 8)),
    ((4, 5, 7, 8), (3, 6, 7, 8)),
]


def _phi_permutation() -> List[int]:
    perm = list(range(70))
    for a, b in PHI_PAIRS:
        ia, ib = COMBO_INDEX[a], COMBO_INDEX[b]
        perm[ia], perm[ib] = ib, ia
    return perm


def _build_phi_q() -> list:
    q = [[ZERO] * 8 for _ in range(8)]
    for i in range(8):
        q[i][7 - i] = cyc((-1) ** i)
    return q


PHI_Q = _build_phi_q()


P_TERMS = [
    [(1, (1, 2, 3, 4)), (1, (5, 6, 7, 8))],
    [(1, (1, 3, 5, 7)), (1, (2, 4, 6, 8))],
    [(1, (1, 2, 5, 6)), (1, (3, 4, 7, 8))],
    [(1, (1, 3, 6, 8)), (1, (2, 4, 5, 7))],
    [(1, (1, 4, 5, 8)), (1, (2, 3, 6, 7))],
    [(-1, (1, 4, 6, 7)), (-1, (2, 3, 5, 8))],
    [(-1, (1, 2, 7, 8)), (-1, (3, 4, 5, 6))],
]


@lru_cache(maxsize=1)
def build_module() -> WedgeModule:
    alg = build_e7()
    # psi on generators: E_{i,i+1} -> canonical raising generators of the A7
    # chain (lowest-root node, then simple nodes 1,3,4,5,6,7).
    lowest = tuple(-x for x in alg.pos_roots[-1])
    chain = [lowest] + [
        tuple(1 if j == i else 0 for j in range(RANK)) for i in (0, 2, 3, 4, 5, 6)
    ]
    e_gen = []
    f_gen = []
    for root in chain:
        ei = 7 + alg.root_index[root]
        fi = 7 + alg.root_index[tuple(-x for x in root)]
        e_gen.append({ei: ONE})
        f_gen.append({fi: cyc(-1)})
    images: Dict[Tuple[int, int], Dict[int, Cyc]] = {}
    for t in range(7):
        images[(t + 1, t + 2)] = e_gen[t]
        images[(t + 2, t + 1)] = f_gen[t]

    def image_of_pair(i: int, j: int) -> Dict[int, Cyc]:
        if (i, j) in images:
            return images[(i, j)]
        if j > i:
            a = image_of_pair(i, i + 1)
            b = image_of_pair(i + 1, j)
        else:
            a = image_of_pair(i, j + 1)
            b = image_of_pair(j + 1, j)
        out = alg.bracket(a, b)
        images[(i, j)] = out
        return out

    psi_images = []
    for (i, j) in SL8_PAIRS:
        psi_images.append(image_of_pair(i, j))
    for i in range(1, 8):
        hi = alg.bracket(image_of_pair(i, i + 1), image_of_pair(i + 1, i))
        psi_images.append(hi)

    # solver for psi^-1: matrix columns = psi images on the even coordinates
    g0_pos = {idx: p for p, idx in enumerate(alg.g0_indices)}
    cols = []
    for img in psi_images:
        col = [ZERO] * SL8_DIM
        for idx, v in img.items():
            col[g0_pos[idx]] = v
        cols.append(col)
    mat = [[cols[j][i] for j in range(SL8_DIM)] for i in range(SL8_DIM)]
    inv_rows = la.inverse(mat)

    module = WedgeModule(
        alg=alg,
        psi_images=psi_images,
        psi_solver=(g0_pos, inv_rows),
        t_root_of_combo=[],
        t_scale=[],
        phi_perm=_phi_permutation(),
        p_basis=[],
    )
    _check_psi_homomorphism(module)
    _build_intertwiner(module)
    module.p_basis = [FourVector.from_terms(t) for t in P_TERMS]
    return module


def _check_psi_homomorphism(module: WedgeModule):
    alg = module.alg
    # [psi(a), psi(b)] = psi([a,b]) over the E_ij basis (h's are brackets of these)
    for (i, j) in SL8_PAIRS:
        for (k, l) in SL8_PAIRS:
            lhs = alg.bracket(module.psi(sl8_unit(i, j)), module.psi(sl8_unit(k, l)))
            ab = [[ZERO] * 8 for _ in range(8)]
            if j == k:
                ab[i - 1][l - 1] = ab[i - 1][l - 1] + ONE
            if l == i:
                ab[k - 1][j - 1] = ab[k - 1][j - 1] - ONE
            rhs = module.psi(ab)
            if lhs != rhs:
                raise ConstructionError("psi is not a homomorphism on E_%d%d, E_%d%d" % (i, j, k, l))


def _weight_of_combo(combo) -> Tuple[int, ...]:
    return tuple((1 if i in combo else 0) - (1 if i + 1 in combo else 0) for i in range(1, 8))


def _build_intertwiner(module: WedgeModule):
    alg = module.alg
    # weights of odd root vectors w.r.t. the diagonal Cartan psi(H_i)
    h_imgs = [module.psi(sl8_elt_h(i)) for i in range(1, 8)]
    root_by_weight: Dict[Tuple[int, ...], int] = {}
    for idx in alg.g1_indices:
        wt = []
        for him in h_imgs:
            br = alg.bracket(him, {idx: ONE})
            if not br:
                wt.append(0)
            else:
                assert set(br) == {idx}
                wt.append(int(br[idx].as_rational()))
        key = tuple(wt)
        assert key not in root_by_weight, "odd weight spaces must be simple"
        root_by_weight[key] = idx
    t_root = [root_by_weight[_weight_of_combo(c)] for c in COMBOS]

    # propagate scales from c_{1234} = 1 along simple raising/lowering operators
    scales: List[Optional[Cyc]] = [None] * 70
    scales[COMBO_INDEX[(1, 2, 3, 4)]] = ONE
    gens = []
    for t in range(7):
        gens.append(sl8_unit(t + 1, t + 2))
        gens.append(sl8_unit(t + 2, t + 1))
    gen_imgs = [module.psi(g) for g in gens]
    pending = [COMBO_INDEX[(1, 2, 3, 4)]]
    while pending:
        k = pending.pop()
        ck = scales[k]
        ek = FourVector([ONE if t == k else ZERO for t in range(70)])
        for g, gim in zip(gens, gen_imgs):
            moved = act_lie(g, ek)
            sup = moved.support()
            if not sup:
                continue
            assert len(sup) == 1
            k2 = sup[0]
            coeff = moved.c[k2]  # e_I . g = coeff * e_I'
            br = alg.bracket(gim, {t_root[k]: ONE})
            # bracket must land on the matching root line
            if not br:
                raise ConstructionError("equivariance propagation dies on generator")
            assert set(br) == {t_root[k2]}
            n = br[t_root[k2]]
            cand = ck * coeff / n
            if scales[k2] is None:
                scales[k2] = cand
                pending.append(k2)
            elif scales[k2] != cand:
                raise ConstructionError("inconsistent intertwiner scales (no intertwiner)")
    assert all(s is not None for s in scales), "weight graph is connected"
    module.t_root_of_combo = t_root
    module.t_scale = scales

    # exact equivariance over all 14 simple generators and the whole basis
    for g, gim in zip(gens, gen_imgs):
        for k in range(70):
            ek = FourVector([ONE if t == k else ZERO for t in range(70)])
            lhs = module.T(act_lie(g, ek))
            rhs = alg.bracket(gim, module.T(ek))
            if lhs != rhs:
                raise ConstructionError("intertwiner fails equivariance check")
    # normalization: T(e_1234) is a highest weight vector for the raising set
    top = module.T(FourVector.basis(1, 2, 3, 4))
    assert list(top.values()) == [ONE]
    for t in range(7):
        if alg.bracket(module.psi(sl8_unit(t + 1, t + 2)), top):
            raise ConstructionError("T(e_1234) is not a highest weight vector")


def sl8_elt_h(i: int) -> list:
    m = [[ZERO] * 8 for _ in range(8)]
    m[i - 1][i - 1] = ONE
    m[i][i] = cyc(-1)
    return m


# -- geometric identities -------------------------------------------------------


def two_form(terms) -> Dict[Tuple[int, int], Cyc]:
    """2-form from (scalar, (i,j)) terms; antisymmetric storage i<j."""
    out: Dict[Tuple[int, int], Cyc] = {}
    for s, (i, j) in terms:
        s = cyc(s)
        if i == j:
            continue
        if i > j:
            i, j, s = j, i, -s
        out[(i, j)] = out.get((i, j), ZERO) + s
    return {k: v for k, v in out.items() if not v.is_zero}


def wedge_two_forms(a, b) -> FourVector:
    terms = []
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            terms.append((x * y, (i, j, k, l)))
    return FourVector.from_terms(terms)


def wedge_one_forms(forms) -> FourVector:
    """Wedge of four complex 1-forms given as length-8 coefficient lists."""
    out = [ZERO] * 70
    f = [[cyc(x) for x in form] for form in forms]
    for idx in itertools.product(range(1, 9), repeat=4):
        c = f[0][idx[0] - 1]
        if c.is_zero:
            continue
        c = c * f[1][idx[1] - 1]
        if c.is_zero:
            continue
        c = c * f[2][idx[2] - 1] * f[3][idx[3] - 1]
        if c.is_zero:
            continue
        sgn, key = sort_sign(idx)
        if sgn == 0:
            continue
        out[COMBO_INDEX[key]] = out[COMBO_INDEX[key]] + c * sgn
    return FourVector(out)


def real_part(v: FourVector) -> FourVector:
    return FourVector([(x + x.conj()) / 2 for x in v.c])


def _fv(spec) -> FourVector:
    return FourVector.from_terms([(s, idx) for s, idx in spec])


PHI5 = _fv([
    (1, (1, 2, 3, 4)), (-1, (1, 2, 5, 6)), (1, (1, 2, 7, 8)), (1, (1, 3, 5, 7)),
    (1, (1, 3, 6, 8)), (-1, (1, 4, 5, 8)), (1, (1, 4, 6, 7)), (1, (2, 3, 5, 8)),
    (-1, (2, 3, 6, 7)), (1, (2, 4, 5, 7)), (1, (2, 4, 6, 8)), (1, (3, 4, 5, 6)),
    (-1, (3, 4, 7, 8)), (1, (5, 6, 7, 8)),
])

PHI7 = _fv([
    (-3, (1, 2, 3, 4)), (1, (1, 2, 5, 6)), (1, (1, 2, 7, 8)), (-1, (1, 3, 5, 7)),
    (1, (1, 3, 6, 8)), (1, (1, 4, 5, 8)), (1, (1, 4, 6, 7)), (1, (2, 3, 5, 8)),
    (1, (2, 3, 6, 7)), (1, (2, 4, 5, 7)), (-1, (2, 4, 6, 8)), (1, (3, 4, 5, 6)),
    (1, (3, 4, 7, 8)), (-3, (5, 6, 7, 8)),
])


def phi11(b) -> FourVector:
    b = cyc(b)
    base = _fv([
        (-1, (1, 2, 5, 6)), (1, (1, 3, 5, 7)), (1, (1, 4, 5, 8)),
        (1, (2, 3, 6, 7)), (1, (2, 4, 6, 8)), (-1, (3, 4, 7, 8)),
    ])
    bpart = _fv([
        (1, (1, 2, 3, 4)), (-1, (1, 2, 7, 8)), (-1, (1, 3, 6, 8)), (1, (1, 4, 6, 7)),
        (1, (2, 3, 5, 8)), (-1, (2, 4, 5, 7)), (-1, (3, 4, 5, 6)), (1, (5, 6, 7, 8)),
    ])
    return base + bpart.scale(b)


def phi19(b, c) -> FourVector:
    b, c = Q(b), Q(c)
    return _fv([
        (-(2 + c), (1, 2, 3, 4)), (b - 1, (1, 3, 5, 7)), (-(b - 1), (1, 3, 6, 8)),
        (b + 1, (1, 4, 5, 8)), (b + 1, (1, 4, 6, 7)), (b + 1, (2, 3, 5, 8)),
        (b + 1, (2, 3, 6, 7)), (-(b - 1), (2, 4, 5, 7)), (b - 1, (2, 4, 6, 8)),
        (-(2 + c), (5, 6, 7, 8)), (c, (1, 2, 5, 6)), (c, (1, 2, 7, 8)),
        (c, (3, 4, 5, 6)), (c, (3, 4, 7, 8)),
    ])


def geom_identity_report() -> List[Tuple[str, bool]]:
    """Check the holonomy fourvector identities against 2-form squares."""
    report = []
    w1 = two_form([(1, (1, 2)), (-1, (3, 4)), (1, (5, 6)), (-1, (7, 8))])
    w2 = two_form([(1, (1, 3)), (-1, (4, 2)), (1, (5, 7)), (-1, (8, 6))])
    w3 = two_form([(1, (1, 4)), (-1, (2, 3)), (1, (5, 8)), (-1, (6, 7))])
    lhs = (wedge_two_forms(w2, w2) - wedge_two_forms(w1, w1) - wedge_two_forms(w3, w3)).scale(Q(1, 2))
    report.append(("spin7 form = (-w1^2 + w2^2 - w3^2)/2", lhs == PHI5))

    u1 = two_form([(1, (1, 2)), (1, (3, 4)), (1, (6, 5)), (1, (8, 7))])
    # sign-solved variant; the +-assignment here is the unique one (up to
    # global sign) whose square completes the quaternion-kaehler identity
    u2 = two_form([(1, (1, 3)), (-1, (2, 4)), (1, (5, 7)), (-1, (6, 8))])
    u3 = two_form([(-1, (1, 4)), (-1, (2, 3)), (1, (6, 7)), (1, (5, 8))])
    lhs = (wedge_two_forms(u1, u1) + wedge_two_forms(u2, u2) + wedge_two_forms(u3, u3)).scale(Q(-1, 2))
    report.append(("quaternion-kaehler form = -(u1^2 + u2^2 + u3^2)/2", lhs == PHI7))

    w = two_form([(1, (1, 5)), (-1, (3, 7)), (1, (2, 6)), (-1, (4, 8))])
    e = lambda k: [ONE if t == k - 1 else ZERO for t in range(8)]

    def cplx(a, k, l):  # e_k + a*i*e_l
        v = e(k)
        v[l - 1] = cyc(a) * I
        return v

    omega = wedge_one_forms([cplx(1, 1, 5), cplx(-1, 3, 7), cplx(1, 2, 6), cplx(-1, 4, 8)])
    for b in (Q(3), Q(-2), Q(1, 2)):
        lhs = wedge_two_forms(w, w).scale(Q(1, 2)) - real_part(omega).scale(b)
        report.append(("su4 form, b=%s" % b, lhs == phi11(b)))

    g1 = mat8_diag([-1, -1, -1, 1, -1, 1, 1, 1])
    report.append(("b=1 reduction to -spin7 form", act_group(g1, phi11(1)) == -PHI5))
    g2 = mat8_diag([1, -1, -1, 1, 1, 1, 1, 1])
    report.append(("b=-1 reduction to -spin7 form", act_group(g2, phi11(-1)) == -PHI5))

    for b, c in ((Q(3), Q(1)), (Q(-2), Q(5))):
        lhs = (
            wedge_two_forms(u2, u2).scale(b - 1)
            - wedge_two_forms(u1, u1).scale(c)
            - wedge_two_forms(u3, u3).scale(b + 1)
        ).scale(Q(1, 2))
        report.append(("hyperkaehler family b=%s c=%s" % (b, c), lhs == phi19(b, c)))
    return report
