"""Pointed normal-form algebras: the double D and its quotients.

An engine has a finite abelian group Gamma, v-letters and w-letters, each with
a coaction element of Gamma and a character of Gamma, and the relations

    gamma v_i = chi_i(gamma) v_i gamma
    w_j gamma = chi_j(gamma)^-1 gamma w_j
    w_j v_i = chi_i(c_j) v_i w_j + [i == j] (c_i c'_i - 1)

where c_i, c'_j are the coactions of v_i, w_j.  Elements are dicts keyed by
labels (v-word, gamma, w-word) with words taken from the Nichols bases.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Hashable, Iterable, Optional, Sequence

from .abgroup import (
    Bicharacter,
    DoublePairing,
    Element,
    GroupSpec,
    Subgroup,
    apply_hom,
    closure,
    hom_kernel,
    max_group_order,
    nondegenerate,
    orthogonal,
    split_mono_check,
)
from .linalg import SparseEchelon, add_scaled, determinant_int
from .pairing import NicholsBasis, V_SIDE, W_SIDE
from .scalars import CyclotomicNumber, root_of_unity
from .yd import Character, DoubleDatum

log = logging.getLogger(__name__)

Label = tuple  # (v-word, gamma, w-word)
Elem = Dict[Label, CyclotomicNumber]
Tensor = Dict[tuple, CyclotomicNumber]


@dataclass(frozen=True)
class Letter:
    label: int
    coaction: Element
    character: Character


def _acc(target: dict, key, value: CyclotomicNumber) -> None:
    cur = target.get(key)
    new = value if cur is None else cur + value
    if new.is_zero():
        target.pop(key, None)
    else:
        target[key] = new


class PointedEngine:
    """Normal-form algebra B(X) (x) k[Gamma] (x) B(Y) with the relations above."""

    def __init__(
        self,
        n: int,
        gamma: GroupSpec,
        v_letters: Sequence[Letter],
        w_letters: Sequence[Letter],
        P: Sequence[Sequence[int]],
        max_degree: int,
    ):
        self.n = n
        self.gamma = gamma
        self.v_letters = {x.label: x for x in v_letters}
        self.w_letters = {x.label: x for x in w_letters}
        self.P = [list(r) for r in P]
        self.max_degree = max_degree
        self.v_basis = NicholsBasis(P, n, list(self.v_letters), V_SIDE, max_degree)
        self.w_basis = NicholsBasis(P, n, list(self.w_letters), W_SIDE, max_degree)
        self._one = CyclotomicNumber.one(n)
        self._zero = CyclotomicNumber.zero(n)
        self._mul_cache: dict = {}
        self._lw_cache: dict = {}
        self._delta_cache: dict = {}
        self.warnings: list[str] = []

    # --- sizes and bases -----------------------------------------------------

    @property
    def finite(self) -> bool:
        return self.v_basis.finite and self.w_basis.finite

    @property
    def dimension(self) -> Optional[int]:
        if not self.finite:
            return None
        return self.v_basis.dimension * self.gamma.order * self.w_basis.dimension

    def basis(self) -> list[Label]:
        if not self.finite:
            raise ValueError("the engine is truncated; no finite basis")
        return [
            (x, g, y)
            for x in self.v_basis.basis_words()
            for g in self.gamma.elements()
            for y in self.w_basis.basis_words()
        ]

    def grading_dims(self) -> dict:
        """Dimension of each total word degree."""
        out: dict = {}
        for dx, layer_x in enumerate(self.v_basis.bases):
            for dy, layer_y in enumerate(self.w_basis.bases):
                k = len(layer_x) * len(layer_y) * self.gamma.order
                if k:
                    out[dx + dy] = out.get(dx + dy, 0) + k
        return dict(sorted(out.items()))

    @staticmethod
    def degree(label: Label) -> int:
        return len(label[0]) + len(label[2])

    # --- constructors ----------------------------------------------------------

    def scalar(self, c) -> CyclotomicNumber:
        if isinstance(c, CyclotomicNumber):
            return c
        return CyclotomicNumber.one(self.n) * c

    def one(self) -> Elem:
        return {((), self.gamma.identity, ()): self._one}

    def group(self, g: Element) -> Elem:
        return {((), self.gamma.elem(g), ()): self._one}

    def v(self, i: int) -> Elem:
        if i not in self.v_letters:
            raise KeyError(f"v_{i} is not a generator of this engine")
        return self.reduce_label(((i,), self.gamma.identity, ()))

    def w(self, j: int) -> Elem:
        if j not in self.w_letters:
            raise KeyError(f"w_{j} is not a generator of this engine")
        return self.reduce_label(((), self.gamma.identity, (j,)))

    def reduce_label(self, label: Label) -> Elem:
        """Express (any v-word, gamma, any w-word) in basis labels."""
        x, g, y = label
        out: Elem = {}
        for bx, cx in self.v_basis.express(tuple(x)).items():
            for by, cy in self.w_basis.express(tuple(y)).items():
                _acc(out, (bx, g, by), cx * cy)
        return out

    # --- linear helpers ----------------------------------------------------------

    def add(self, *elems: Elem) -> Elem:
        out: Elem = {}
        for e in elems:
            for k, v in e.items():
                _acc(out, k, v)
        return out

    def scale(self, c, e: Elem) -> Elem:
        c = self.scalar(c)
        if c.is_zero():
            return {}
        return {k: v * c for k, v in e.items()}

    def sub(self, a: Elem, b: Elem) -> Elem:
        return self.add(a, self.scale(-1, b))

    # --- characters -------------------------------------------------------------

    def _chi_v_word(self, x: Sequence[int], g: Element) -> int:
        return sum(self.v_letters[i].character.exponent(g) for i in x)

    def _chi_w_word(self, y: Sequence[int], g: Element) -> int:
        return sum(self.w_letters[j].character.exponent(g) for j in y)

    def _zeta(self, e: int) -> CyclotomicNumber:
        return root_of_unity(self.n, e)

    # --- multiplication ---------------------------------------------------------

    def _left_v(self, i: int, label: Label) -> Elem:
        x, g, y = label
        out: Elem = {}
        for b, c in self.v_basis.express((i,) + x).items():
            out[(b, g, y)] = c
        return out

    def _left_group(self, h: Element, label: Label) -> Elem:
        x, g, y = label
        return {(x, self.gamma.add(g, h), y): self._zeta(self._chi_v_word(x, h))}

    def _left_w(self, j: int, label: Label) -> Elem:
        key = (j, label)
        hit = self._lw_cache.get(key)
        if hit is not None:
            return hit
        x, g, y = label
        wl = self.w_letters[j]
        out: Elem = {}
        # w_j passes all of x, then the group element
        e = sum(self.v_letters[i].character.exponent(wl.coaction) for i in x)
        e -= wl.character.exponent(g)
        c = self._zeta(e)
        for by, cy in self.w_basis.express((j,) + y).items():
            _acc(out, (x, g, by), c * cy)
        # delta terms where w_j meets v_j
        if j in self.v_letters:
            vl = self.v_letters[j]
            delta = self.gamma.add(vl.coaction, wl.coaction)
            prefix = 0
            for k, i in enumerate(x):
                if i == j:
                    rest = x[:k] + x[k + 1 :]
                    base = self._zeta(prefix)
                    twist = self._zeta(self._chi_v_word(x[k + 1 :], delta))
                    g2 = self.gamma.add(delta, g)
                    for bx, cx in self.v_basis.express(rest).items():
                        _acc(out, (bx, g2, y), base * twist * cx)
                        _acc(out, (bx, g, y), -(base * cx))
                prefix += self.v_letters[i].character.exponent(wl.coaction)
        self._lw_cache[key] = out
        return out

    def _apply(self, op, arg, elem: Elem) -> Elem:
        out: Elem = {}
        for label, c in elem.items():
            for k, v in op(arg, label).items():
                _acc(out, k, v * c)
        return out

    def mul_labels(self, a: Label, b: Label) -> Elem:
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        x, g, y = a
        cur: Elem = {b: self._one}
        for j in reversed(y):
            cur = self._apply(self._left_w, j, cur)
        if g != self.gamma.identity:
            cur = self._apply(self._left_group, g, cur)
        for i in reversed(x):
            cur = self._apply(self._left_v, i, cur)
        self._mul_cache[key] = cur
        return cur

    def mul(self, *elems: Elem) -> Elem:
        result = elems[0]
        for other in elems[1:]:
            out: Elem = {}
            for la, ca in result.items():
                for lb, cb in other.items():
                    c = ca * cb
                    for k, v in self.mul_labels(la, lb).items():
                        _acc(out, k, v * c)
            result = out
        return result

    def power(self, e: Elem, k: int) -> Elem:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, e)
        return out

    # --- coalgebra ------------------------------------------------------------

    def _v_split(self, x: Sequence[int]):
        """Terms (exp, kept-left word, coaction sum of right letters, right word)."""
        m = len(x)
        out = []
        for mask in range(1 << m):
            exp = 0
            right_seen: list = []
            left = []
            right = []
            co = self.gamma.identity
            for k in range(m):
                i = x[k]
                if mask >> k & 1:
                    for kk in right_seen:
                        exp += self.v_letters[i].character.exponent(self.v_letters[x[kk]].coaction)
                    left.append(i)
                else:
                    right_seen.append(k)
                    right.append(i)
                    co = self.gamma.add(co, self.v_letters[i].coaction)
            out.append((exp, tuple(left), co, tuple(right)))
        return out

    def _w_split(self, y: Sequence[int]):
        m = len(y)
        out = []
        for mask in range(1 << m):
            exp = 0
            left = []
            right = []
            co = self.gamma.identity
            for k in range(m):
                j = y[k]
                if mask >> k & 1:
                    left.append(k)
                else:
                    right.append(j)
                    co = self.gamma.add(co, self.w_letters[j].coaction)
                    for kk in left:
                        exp -= self.w_letters[y[kk]].character.exponent(self.w_letters[j].coaction)
            out.append((exp, tuple(y[k] for k in left), co, tuple(right)))
        return out

    def coproduct_label(self, label: Label) -> Tensor:
        hit = self._delta_cache.get(label)
        if hit is not None:
            return hit
        x, g, y = label
        out: Tensor = {}
        for ex, xl, co_x, xr in self._v_split(x):
            cxl = self.v_basis.express(xl)
            cxr = self.v_basis.express(xr)
            if not cxl or not cxr:
                continue
            for ey, yl, co_y, yr in self._w_split(y):
                cyl = self.w_basis.express(yl)
                cyr = self.w_basis.express(yr)
                if not cyl or not cyr:
                    continue
                coeff = self._zeta(ex + ey)
                gl = self.gamma.add(self.gamma.add(co_x, g), co_y)
                for bxl, c1 in cxl.items():
                    for byl, c2 in cyl.items():
                        left = (bxl, gl, byl)
                        c12 = coeff * c1 * c2
                        for bxr, c3 in cxr.items():
                            for byr, c4 in cyr.items():
                                _acc(out, (left, (bxr, g, byr)), c12 * c3 * c4)
        self._delta_cache[label] = out
        return out

    def coproduct(self, e: Elem) -> Tensor:
        out: Tensor = {}
        for label, c in e.items():
            for k, v in self.coproduct_label(label).items():
                _acc(out, k, v * c)
        return out

    def counit(self, e: Elem) -> CyclotomicNumber:
        total = self._zero
        for (x, g, y), c in e.items():
            if not x and not y:
                total = total + c
        return total

    # --- tensors ------------------------------------------------------------------

    def tensor(self, *elems: Elem) -> Tensor:
        out: Tensor = {(): self._one}
        for e in elems:
            new: Tensor = {}
            for k, c in out.items():
                for l, d in e.items():
                    _acc(new, k + (l,), c * d)
            out = new
        return out

    def tensor_mul(self, a: Tensor, b: Tensor) -> Tensor:
        out: Tensor = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                partial: dict = {(): ca * cb}
                for la, lb in zip(ka, kb):
                    prod = self.mul_labels(la, lb)
                    new: dict = {}
                    for pk, pc in partial.items():
                        for l, c in prod.items():
                            _acc(new, pk + (l,), pc * c)
                    partial = new
                    if not partial:
                        break
                for k, v in partial.items():
                    _acc(out, k, v)
        return out

    def apply_coproduct(self, t: Tensor, slot: int) -> Tensor:
        out: Tensor = {}
        for key, c in t.items():
            for (l1, l2), v in self.coproduct_label(key[slot]).items():
                _acc(out, key[:slot] + (l1, l2) + key[slot + 1 :], v * c)
        return out

    def flip(self, t: Tensor, perm: Sequence[int]) -> Tensor:
        return {tuple(k[p] for p in perm): v for k, v in t.items()}

    def embed(self, t: Tensor, slots: Sequence[int], arity: int) -> Tensor:
        """Place a tensor into the given slots of an arity-fold tensor, 1 elsewhere."""
        unit = ((), self.gamma.identity, ())
        out: Tensor = {}
        for k, v in t.items():
            key = [unit] * arity
            for s, l in zip(slots, k):
                key[s] = l
            out[tuple(key)] = v
        return out

    def tensor_sub(self, a: Tensor, b: Tensor) -> Tensor:
        out = dict(a)
        for k, v in b.items():
            _acc(out, k, -v)
        return out


# --- the double itself -------------------------------------------------------------


class DoubleEngine(PointedEngine):
    """The double built from a DoubleDatum, over Gamma = F x G."""

    def __init__(self, D: DoubleDatum, max_degree: Optional[int] = None):
        self.datum = D
        gamma = D.gamma
        zf, zg = D.F.identity, D.G.identity
        v_letters = [Letter(i, D.f(i) + zg, D.v_character(i)) for i in range(D.size)]
        w_letters = [
            Letter(i, zf + D.g(i), D.v_character(i).inverse()) for i in range(D.size)
        ]
        md = D.max_degree if max_degree is None else max_degree
        super().__init__(D.n, gamma, v_letters, w_letters, D.q_exponents(), md)
        P = D.q_exponents()
        for i in range(D.size):
            if P[i][i] % D.n == 0:
                msg = (
                    f"tau0(f_{i}, g_{i}) = 1: the Nichols algebra of v_{i} is a "
                    "polynomial ring, so the engine is truncated"
                )
                self.warnings.append(msg)
                log.warning(msg)

    def f(self, x: Element) -> Elem:
        return self.group(tuple(x) + self.datum.G.identity)

    def g(self, x: Element) -> Elem:
        return self.group(self.datum.F.identity + tuple(x))


def build(D: DoubleDatum, max_degree: Optional[int] = None) -> DoubleEngine:
    return DoubleEngine(D, max_degree)


# --- central grouplikes and the decomposition checks ------------------------------------


@dataclass
class CentralData:
    C: Subgroup
    P: Subgroup
    orthogonal_matches: Optional[bool] = None


def central_condition_matrix(D: DoubleDatum) -> list[list[int]]:
    """Exponents of tau0(f, g_i) tau0(f_i, g) on the generators of F x G, one column per i."""
    return [[D.v_character(i).exps[k] for i in range(D.size)] for k in range(D.gamma.rank)]


def central_by_kernel(D: DoubleDatum) -> Subgroup:
    return hom_kernel(D.gamma, central_condition_matrix(D), [D.n] * D.size)


def generated_p(D: DoubleDatum) -> Subgroup:
    return Subgroup(D.gamma, [D.fg(i) for i in range(D.size)])


def central_grouplikes(D: DoubleDatum) -> CentralData:
    gamma = D.gamma
    P = generated_p(D)
    C = central_by_kernel(D)
    if gamma.order <= max_group_order():
        # the defining scan is the source of truth; the kernel supplies generators
        chars = [D.v_character(i) for i in range(D.size)]
        scanned = [x for x in gamma.elements() if all(ch.exponent(x) == 0 for ch in chars)]
        if len(scanned) != C.order or any(x not in C for x in scanned):
            raise ArithmeticError("central scan disagrees with the kernel computation")
        C._elements = tuple(sorted(scanned))
        P = closure(gamma, P.generators)
    match = None
    if nondegenerate(D.tau0):
        match = orthogonal(D.pairing, P, check=False) == C
    return CentralData(C, P, match)


@dataclass
class CenterSplitReport:
    hypotheses: dict
    applicable: bool
    order_C: int
    order_P: int
    order_FG: int
    sizes_ok: Optional[bool] = None
    a_split: Optional[bool] = None
    a_prime: Optional[dict] = None
    a_double_prime: Optional[dict] = None
    algebra_maps: Optional[int] = None
    algebra_maps_match: Optional[bool] = None
    generators_killed: Optional[bool] = None
    equivalent: Optional[bool] = None
    retraction: Optional[tuple] = None

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def _killing_witness(D: DoubleDatum) -> list:
    """For each i, a grouplike on which the character of v_i is not 1."""
    out = []
    for i in range(D.size):
        ch = D.v_character(i)
        wit = next((e for e in D.gamma.generators() if ch.exponent(e) != 0), None)
        out.append(wit)
    return out


def center_split_report(D: DoubleDatum) -> CenterSplitReport:
    gamma = D.gamma
    nd = nondegenerate(D.tau0)
    nontrivial = all(any(x for x in D.fg(i)) for i in range(D.size))
    hyp = {"finite": True, "nondegenerate": bool(nd), "fg_nontrivial": nontrivial}
    cd = central_grouplikes(D)
    C, P = cd.C, cd.P
    rep = CenterSplitReport(hyp, bool(nd), C.order, P.order, gamma.order)
    if not nd:
        return rep
    rep.sizes_ok = C.order * P.order == gamma.order
    CP = C.join(P)
    meet = C.order * P.order // CP.order
    Q = P.quotient_data()
    split = split_mono_check(C, Q.spec, Q.project)
    rep.a_split = split.split
    rep.retraction = split.retraction
    inj = meet == 1
    surj = CP.order == gamma.order
    rep.a_prime = {"mono": inj, "epi": surj, "iso": inj and surj}
    rep.a_double_prime = {"mono": inj, "epi": surj, "iso": inj and surj}
    rep.algebra_maps = Q.spec.order
    rep.algebra_maps_match = Q.spec.order == C.order
    if nontrivial:
        rep.generators_killed = all(w is not None for w in _killing_witness(D))
    rep.equivalent = (
        rep.a_split == rep.a_prime["iso"] == rep.a_double_prime["iso"]
        if rep.sizes_ok
        else False
    )
    return rep


# --- Radford decomposition ---------------------------------------------------------


@dataclass
class RadfordRecord:
    ok: bool
    violations: list
    dimension: int = 0
    image_rank: int = 0
    target_dimension: int = 0


def group_retraction(D: DoubleDatum, C: Subgroup, P: Subgroup, images: Sequence[Element]):
    """Compose F x G -> (F x G)/P with the retraction given on generators of the quotient."""
    Q = P.quotient_data()

    def rho(x: Element) -> Element:
        return apply_hom(D.gamma, images, Q.project(x))

    return rho


def radford_pipeline(D: DoubleDatum, rho, engine: Optional[DoubleEngine] = None) -> RadfordRecord:
    """Check rho: F x G -> C kills P and is a retraction, then test the Radford map."""
    from .ideals import ThinIdealDatum, quotient_build, project_to_quotient

    cd = central_grouplikes(D)
    gamma = D.gamma
    violations = []
    for c in cd.C.generators:
        if rho(c) != c:
            violations.append(f"retraction moves central element {c}")
    for i in range(D.size):
        if rho(D.fg(i)) != gamma.identity:
            violations.append(
                f"relation w_{i} v_{i} - q v_{i} w_{i} = f_{i}g_{i} - 1 is not respected: "
                f"rho(f_{i}g_{i}) = {rho(D.fg(i))}"
            )
    for x in cd.C.generators:
        if x not in cd.C:
            violations.append("image outside C")
    if violations:
        return RadfordRecord(False, violations)
    eng = engine or build(D)
    quot = quotient_build(D, ThinIdealDatum(cd.C))
    qbasis = quot.basis()
    c_elems = list(cd.C.elements)
    target_index = {}
    for c in c_elems:
        for lb in qbasis:
            target_index[(c, lb)] = len(target_index)
    ech = SparseEchelon(D.n, track=False)
    basis = eng.basis()
    proj_cache: dict = {}
    for label in basis:
        vec: dict = {}
        for (l1, l2), coeff in eng.coproduct_label(label).items():
            x1, g1, y1 = l1
            if x1 or y1:
                continue
            c = rho(g1)
            img = proj_cache.get(l2)
            if img is None:
                img = project_to_quotient(D, quot, l2)
                proj_cache[l2] = img
            for lb, v in img.items():
                _acc(vec, target_index[(c, lb)], coeff * v)
        ech.insert(label, vec)
    return RadfordRecord(
        ech.rank == len(basis) == len(target_index),
        [],
        len(basis),
        ech.rank,
        len(target_index),
    )


# --- Frobenius-Lusztig setup -------------------------------------------------------


def cartan_matrix(kind: str, rank: int) -> list[list[int]]:
    kind = kind.upper()
    A = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i, j, aij=-1, aji=-1):
        A[i][j] = aij
        A[j][i] = aji

    if kind == "A":
        for i in range(rank - 1):
            link(i, i + 1)
    elif kind == "B":
        if rank < 2:
            raise ValueError("B_n needs n >= 2")
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 2, rank - 1, -2, -1)
    elif kind == "C":
        if rank < 2:
            raise ValueError("C_n needs n >= 2")
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 2, rank - 1, -1, -2)
    elif kind == "D":
        if rank < 4:
            raise ValueError("D_n needs n >= 4")
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif kind == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E_n needs n in 6, 7, 8")
        # Bourbaki numbering: 1-3-4-5-6(-7-8), 2 attached to 4
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        for a, b in zip(chain, chain[1:]):
            link(a, b)
        link(1, 3)
    elif kind == "F":
        if rank != 4:
            raise ValueError("F_4 has rank 4")
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif kind == "G":
        if rank != 2:
            raise ValueError("G_2 has rank 2")
        link(0, 1, -1, -3)
    else:
        raise ValueError(f"unknown Cartan type {kind!r}")
    return A


def parse_cartan_type(name: str) -> list[list[int]]:
    """'A2', 'B3', 'A1xA1' (block diagonal) and so on."""
    blocks = [cartan_matrix(part[0], int(part[1:])) for part in name.upper().split("X")]
    size = sum(len(b) for b in blocks)
    A = [[0] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                A[off + i][off + j] = v
        off += len(b)
    return A


def symmetrizer(A: Sequence[Sequence[int]]) -> list[int]:
    """Smallest positive d with d_i a_ij = d_j a_ji, componentwise."""
    from fractions import Fraction

    size = len(A)
    d: list = [None] * size
    for start in range(size):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(size):
                if j != i and A[i][j] and d[j] is None:
                    d[j] = d[i] * A[i][j] / A[j][i]
                    comp.append(j)
                    stack.append(j)
        den = 1
        for i in comp:
            den = den * d[i].denominator // gcd(den, d[i].denominator)
        ints = [int(d[i] * den) for i in comp]
        g = 0
        for v in ints:
            g = gcd(g, v)
        for i, v in zip(comp, ints):
            d[i] = v // g
    for i in range(size):
        for j in range(size):
            if d[i] * A[i][j] != d[j] * A[j][i]:
                raise ValueError("Cartan matrix is not symmetrizable")
    return [int(x) for x in d]


def fl_setup(cartan, l: int, max_degree: int = 12) -> DoubleDatum:
    """F = G = (Z/l)^I, f_i = g_i = K_i, tau0(K_i, K_j) = q^(-d_i a_ij)."""
    A = parse_cartan_type(cartan) if isinstance(cartan, str) else [list(r) for r in cartan]
    if l <= 1 or l % 2 == 0:
        raise ValueError("l must be an odd integer > 1")
    d = symmetrizer(A)
    has_g2 = any(
        A[i][j] * A[j][i] == 3 for i in range(len(A)) for j in range(len(A)) if i != j
    )
    if has_g2 and l % 3 == 0:
        raise ValueError("l must not be a multiple of 3 when a G2 component is present")
    r = len(A)
    grp = GroupSpec((l,) * r)
    E = [[(-d[i] * A[i][j]) % l for j in range(r)] for i in range(r)]
    tau0 = Bicharacter(grp, grp, l, E)
    K = grp.generators()
    return DoubleDatum(grp, grp, tau0, tuple((k, k) for k in K), max_degree)


@dataclass
class KernelConditionsReport:
    cartan: list
    l: int
    T_equals_C: bool
    C_meet_P_trivial: bool
    nondegenerate: bool
    coprime_det: bool
    determinant: int

    @property
    def agree(self) -> bool:
        vals = {self.T_equals_C, self.C_meet_P_trivial, self.nondegenerate, self.coprime_det}
        return len(vals) == 1

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["agree"] = self.agree
        return d


def antidiagonal_subgroup(D: DoubleDatum) -> Subgroup:
    """{(g, g^-1)} for F = G."""
    if D.F != D.G:
        raise ValueError("needs F = G")
    return Subgroup(D.gamma, [e + D.G.neg(e) for e in D.G.generators()])


def kernel_conditions_report(cartan, l: int) -> KernelConditionsReport:
    A = parse_cartan_type(cartan) if isinstance(cartan, str) else [list(r) for r in cartan]
    D = fl_setup(A, l)
    C = central_by_kernel(D)
    P = generated_p(D)
    T = antidiagonal_subgroup(D)
    meet_order = C.order * P.order // C.join(P).order
    det = determinant_int(A)
    return KernelConditionsReport(
        A,
        l,
        T == C,
        meet_order == 1,
        bool(nondegenerate(D.tau0)),
        gcd(l, det) == 1,
        det,
    )


# --- skew primitives -------------------------------------------------------------


@dataclass
class SkewPrimitiveSpace:
    dimension: int
    basis: list
    trivial_dimension: int


def skew_primitive_space(engine: PointedEngine, g: Element, h: Element) -> SkewPrimitiveSpace:
    """Solutions of Delta(x) = x (x) g + h (x) x."""
    g = engine.gamma.elem(g)
    h = engine.gamma.elem(h)
    lg = ((), g, ())
    lh = ((), h, ())
    ech = SparseEchelon(engine.n)
    null = []
    one = CyclotomicNumber.one(engine.n)
    for label in engine.basis():
        vec = dict(engine.coproduct_label(label))
        _acc(vec, (label, lg), -one)
        _acc(vec, (lh, label), -one)
        combo = ech.insert(label, vec)
        if combo is not None:
            sol = {label: one}
            for k, c in combo.items():
                _acc(sol, k, -c)
            null.append(sol)
    trivial = 1 if g != h else 0
    return SkewPrimitiveSpace(len(null), null, trivial)
