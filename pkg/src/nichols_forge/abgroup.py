"""Finite abelian groups presented as direct sums of cyclic groups.

Elements are tuples of exponents.  Subgroups are described by generators; the
element list is enumerated on demand when the ambient order is within the
brute-force bound, and membership/order otherwise go through Smith normal
form of the relation lattice.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Callable, Iterable, Iterator, Optional, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from .scalars import CyclotomicNumber, root_of_unity

Element = tuple

DEFAULT_MAX_GROUP_ORDER = 10**4
ENV_BOUND = "NICHOLS_FORGE_MAX_GROUP_ORDER"


class GroupTooLarge(ValueError):
    """Raised when a brute-force enumeration would exceed the configured bound."""


def max_group_order() -> int:
    raw = os.environ.get(ENV_BOUND)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_BOUND} must be an integer, got {raw!r}") from None
        if value < 1:
            raise ValueError(f"{ENV_BOUND} must be positive")
        return value
    return DEFAULT_MAX_GROUP_ORDER


def _check_bound(order: int, what: str) -> None:
    bound = max_group_order()
    if order > bound:
        raise GroupTooLarge(
            f"{what} has order {order}, above the brute-force bound {bound} "
            f"(set {ENV_BOUND} to raise it)"
        )


@dataclass(frozen=True)
class GroupSpec:
    """Z/n_1 + ... + Z/n_r."""

    orders: tuple

    def __post_init__(self):
        orders = tuple(int(x) for x in self.orders)
        if any(x < 1 for x in orders):
            raise ValueError(f"cyclic orders must be >= 1, got {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def elem(self, exps: Iterable[int]) -> Element:
        exps = tuple(exps)
        if len(exps) != self.rank:
            raise ValueError(f"element {exps} does not have rank {self.rank}")
        return tuple(e % n for e, n in zip(exps, self.orders))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def scale(self, k: int, a: Element) -> Element:
        return tuple((k * x) % n for x, n in zip(a, self.orders))

    def element_order(self, a: Element) -> int:
        result = 1
        for x, n in zip(a, self.orders):
            o = n // gcd(n, x)
            result = result * o // gcd(result, o)
        return result

    def elements(self) -> Iterator[Element]:
        _check_bound(self.order, "group")
        return itertools.product(*(range(n) for n in self.orders))

    def generators(self) -> list[Element]:
        gens = []
        for j in range(self.rank):
            e = [0] * self.rank
            e[j] = 1
            gens.append(tuple(e))
        return gens

    def product(self, other: "GroupSpec") -> "GroupSpec":
        return GroupSpec(self.orders + other.orders)


def _smith(rows: Sequence[Sequence[int]], ncols: int):
    """Return (diagonal, U, V) with U*M*V = D for the integer matrix M."""
    if not rows:
        return [], None, Matrix.eye(ncols)
    m = Matrix([list(r) for r in rows])
    d, u, v = smith_normal_decomp(m)
    diag = [int(d[i, i]) for i in range(min(d.rows, d.cols))]
    return diag, u, v


def integer_left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Z-basis of {x in Z^m : x * M = 0} for the m x ncols matrix M."""
    m = len(rows)
    if m == 0:
        return []
    if ncols == 0:
        return [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    diag, u, _ = _smith(rows, ncols)
    rk = sum(1 for x in diag if x != 0)
    return [[int(u[i, j]) for j in range(m)] for i in range(rk, m)]


class QuotientMap:
    """Projection x -> (x V)_k mod d_k onto a Smith presentation, with lifts."""

    def __init__(self, ambient: GroupSpec, spec: GroupSpec, vcols, lift_rows):
        self.ambient = ambient
        self.spec = spec
        self._vcols = vcols
        self._lifts = [ambient.elem(row) for row in lift_rows]

    def project(self, x: Element) -> Element:
        return tuple(
            sum(a * b for a, b in zip(x, col)) % d for col, d in zip(self._vcols, self.spec.orders)
        )

    __call__ = project

    def lift(self, q: Element) -> Element:
        """Some preimage of q."""
        acc = self.ambient.identity
        for qk, base in zip(q, self._lifts):
            if qk:
                acc = self.ambient.add(acc, self.ambient.scale(qk, base))
        return acc


class Subgroup:
    """A subgroup of a finite abelian group, given by generators."""

    def __init__(self, ambient: GroupSpec, generators: Iterable[Element]):
        self.ambient = ambient
        gens = sorted({ambient.elem(g) for g in generators} - {ambient.identity})
        self.generators: tuple = tuple(gens)
        self._elements: Optional[tuple] = None
        self._quotient = None

    # --- structure via Smith normal form ----------------------------------

    def _relations(self) -> list[list[int]]:
        rows = [list(g) for g in self.generators]
        for j, n in enumerate(self.ambient.orders):
            e = [0] * self.ambient.rank
            e[j] = n
            rows.append(e)
        return rows

    def quotient_data(self):
        """Projection data for ambient / self."""
        if self._quotient is None:
            r = self.ambient.rank
            if r == 0:
                self._quotient = QuotientMap(self.ambient, GroupSpec(()), [], [])
                return self._quotient
            diag, _, v = _smith(self._relations(), r)
            keep = [k for k, d in enumerate(diag) if d != 1]
            orders = tuple(abs(diag[k]) for k in keep)
            vcols = [[int(v[i, k]) for i in range(r)] for k in keep]
            vinv = v.inv()
            lift_rows = [tuple(int(vinv[k, i]) for i in range(r)) for k in keep]
            self._quotient = QuotientMap(self.ambient, GroupSpec(orders), vcols, lift_rows)
        return self._quotient

    @property
    def order(self) -> int:
        return self.ambient.order // self.quotient_data().spec.order

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x) -> bool:
        x = self.ambient.elem(x)
        qm = self.quotient_data()
        return qm.project(x) == qm.spec.identity

    @property
    def elements(self) -> tuple:
        """All elements, lexicographically sorted (requires the size bound)."""
        if self._elements is None:
            _check_bound(self.order, "subgroup")
            seen = {self.ambient.identity}
            frontier = [self.ambient.identity]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in self.generators:
                        y = self.ambient.add(x, g)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            self._elements = tuple(sorted(seen))
        return self._elements

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return all(g in other for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.is_subgroup_of(other)
            and other.is_subgroup_of(self)
        )

    def __hash__(self):
        return hash((self.ambient, self.order))

    def __repr__(self):
        return f"Subgroup(order={self.order}, generators={list(self.generators)})"

    def join(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.ambient, self.generators + other.generators)


def closure(ambient: GroupSpec, gens: Iterable[Element]) -> Subgroup:
    """Subgroup generated by ``gens`` with its elements enumerated."""
    _check_bound(ambient.order, "ambient group")
    sub = Subgroup(ambient, gens)
    sub.elements  # noqa: B018 - force enumeration
    return sub


def trivial_subgroup(ambient: GroupSpec) -> Subgroup:
    return Subgroup(ambient, [])


def whole_group(ambient: GroupSpec) -> Subgroup:
    return Subgroup(ambient, ambient.generators())


def quotient(ambient: GroupSpec, T: Subgroup) -> tuple[GroupSpec, Callable[[Element], Element]]:
    """(presentation of ambient / T, projection)."""
    if T.ambient != ambient:
        raise ValueError("subgroup lives in a different ambient group")
    qm = T.quotient_data()
    return qm.spec, qm.project


def hom_kernel(source: GroupSpec, matrix: Sequence[Sequence[int]], moduli: Sequence[int]) -> Subgroup:
    """Kernel of x -> x*matrix (mod moduli) on ``source``."""
    r = source.rank
    s = len(moduli)
    rows = [list(matrix[i]) for i in range(r)]
    for k, m in enumerate(moduli):
        row = [0] * s
        row[k] = m
        rows.append(row)
    gens = [tuple(vec[:r]) for vec in integer_left_kernel(rows, s)] if s else source.generators()
    return Subgroup(source, gens)


def all_subgroups(ambient: GroupSpec, within: Optional[Subgroup] = None) -> list[Subgroup]:
    """Every subgroup of ``within`` (default: the ambient group), deterministically ordered."""
    base = within if within is not None else whole_group(ambient)
    elems = base.elements
    found: dict[tuple, Subgroup] = {}
    layer = [trivial_subgroup(ambient)]
    found[(ambient.identity,)] = layer[0]
    while layer:
        nxt = []
        for sub in layer:
            for x in elems:
                if x in sub:
                    continue
                bigger = Subgroup(ambient, sub.generators + (x,))
                key = tuple(closure(ambient, bigger.generators).elements)
                if key not in found:
                    found[key] = bigger
                    bigger._elements = key
                    nxt.append(bigger)
        layer = nxt
    return sorted(found.values(), key=lambda s: (s.order, s.elements))


# --- bicharacters ---------------------------------------------------------------


@dataclass(frozen=True)
class Bicharacter:
    """tau0(e_a, e_b) = zeta_N ** E[a][b] on generators of left x right."""

    left: GroupSpec
    right: GroupSpec
    root_order: int
    exponents: tuple = field(default=())

    def __post_init__(self):
        ex = tuple(tuple(int(x) % self.root_order for x in row) for row in self.exponents)
        object.__setattr__(self, "exponents", ex)
        if len(ex) != self.left.rank or any(len(row) != self.right.rank for row in ex):
            raise ValueError(
                f"exponent matrix must be {self.left.rank}x{self.right.rank}, "
                f"got {len(ex)}x{len(ex[0]) if ex else 0}"
            )
        N = self.root_order
        for a, na in enumerate(self.left.orders):
            for b, nb in enumerate(self.right.orders):
                e = ex[a][b]
                if (e * na) % N or (e * nb) % N:
                    raise ValueError(
                        f"tau0 entry ({a},{b}) = zeta_{N}^{e} is not compatible with "
                        f"generator orders {na}, {nb}"
                    )

    def exponent(self, f: Element, g: Element) -> int:
        total = 0
        for a, fa in enumerate(f):
            if fa:
                row = self.exponents[a]
                for b, gb in enumerate(g):
                    if gb:
                        total += fa * gb * row[b]
        return total % self.root_order

    def __call__(self, f: Element, g: Element) -> CyclotomicNumber:
        return root_of_unity(self.root_order, self.exponent(f, g))


def bichar_eval(tau0: Bicharacter, f: Element, g: Element) -> CyclotomicNumber:
    return tau0(f, g)


@dataclass
class NondegeneracyResult:
    nondegenerate: bool
    left_witness: Optional[Element] = None  # f != 0 with tau0(f, -) = 1
    right_witness: Optional[Element] = None  # g != 0 with tau0(-, g) = 1

    def __bool__(self):
        return self.nondegenerate


def _nonzero_generator(sub: Subgroup) -> Optional[Element]:
    return sub.generators[0] if sub.generators else None


def nondegenerate(tau0: Bicharacter) -> NondegeneracyResult:
    N = tau0.root_order
    E = tau0.exponents
    left_kernel = hom_kernel(tau0.left, E, [N] * tau0.right.rank)
    Et = [[E[a][b] for a in range(tau0.left.rank)] for b in range(tau0.right.rank)]
    right_kernel = hom_kernel(tau0.right, Et, [N] * tau0.left.rank)
    lw = _nonzero_generator(left_kernel)
    rw = _nonzero_generator(right_kernel)
    return NondegeneracyResult(lw is None and rw is None, lw, rw)


# --- the induced symmetric pairing on F x G -----------------------------------------


@dataclass(frozen=True)
class DoublePairing:
    """<(f, g), (f', g')> = tau0(f', g) tau0(f, g') on F x G."""

    tau0: Bicharacter

    @property
    def group(self) -> GroupSpec:
        return self.tau0.left.product(self.tau0.right)

    def split(self, x: Element) -> tuple[Element, Element]:
        r = self.tau0.left.rank
        return x[:r], x[r:]

    def exponent(self, x: Element, y: Element) -> int:
        f, g = self.split(x)
        f2, g2 = self.split(y)
        return (self.tau0.exponent(f2, g) + self.tau0.exponent(f, g2)) % self.tau0.root_order

    def matrix(self) -> list[list[int]]:
        gens = self.group.generators()
        return [[self.exponent(a, b) for b in gens] for a in gens]


def orthogonal(pairing: DoublePairing, S: Subgroup, check: bool = True) -> Subgroup:
    """{x : <x, s> = 1 for all s in S}."""
    if check and not nondegenerate(pairing.tau0):
        raise ValueError("the pairing is degenerate; orthogonal complements are not dual")
    group = pairing.group
    mat = [[pairing.exponent(e, s) for s in S.generators] for e in group.generators()]
    if not S.generators:
        return whole_group(group)
    return hom_kernel(group, mat, [pairing.tau0.root_order] * len(S.generators))


# --- homomorphism searches ---------------------------------------------------------


@dataclass
class SplitResult:
    split: bool
    retraction: Optional[tuple] = None  # images of the generators of Q in the ambient group

    def __bool__(self):
        return self.split


def split_mono_check(
    C: Subgroup, Q: GroupSpec, iota: Callable[[Element], Element]
) -> SplitResult:
    """Search for a retraction pi: Q -> C with pi(iota(c)) = c.

    The candidate images of the generators of Q are scanned in
    lexicographic order, so the returned witness is reproducible.
    """
    amb = C.ambient
    for c in C.generators:
        if iota(c) == Q.identity:
            return SplitResult(False)  # iota is not injective
    candidates = []
    for n in Q.orders:
        candidates.append([x for x in C.elements if amb.scale(n, x) == amb.identity])
    total = prod(len(c) for c in candidates)
    _check_bound(total, "retraction search space")
    images = [(c, iota(c)) for c in C.generators]
    for choice in itertools.product(*candidates):
        ok = True
        for c, q in images:
            acc = amb.identity
            for k, qk in enumerate(q):
                if qk:
                    acc = amb.add(acc, amb.scale(qk, choice[k]))
            if acc != c:
                ok = False
                break
        if ok:
            return SplitResult(True, tuple(choice))
    return SplitResult(False)


def apply_hom(amb: GroupSpec, images: Sequence[Element], q: Element) -> Element:
    acc = amb.identity
    for k, qk in enumerate(q):
        if qk:
            acc = amb.add(acc, amb.scale(qk, images[k]))
    return acc


def character_values(tau0: Bicharacter, f: Element) -> tuple[CyclotomicNumber, ...]:
    """The character tau0(f, -) recorded on the generators of G."""
    return tuple(tau0(f, g) for g in tau0.right.generators())
