"""Diagonal Yetter-Drinfeld data over finite abelian groups.

A diagonal datum is a list of one-dimensional pieces (chi_i, g_i): the group
acts on v_i through the character chi_i and coacts by g_i.  The braiding on
v_i (x) v_j is multiplication by q_ij = chi_j(g_i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .abgroup import Bicharacter, DoublePairing, Element, GroupSpec
from .scalars import CyclotomicNumber, root_of_unity


@dataclass(frozen=True)
class Character:
    """chi(e_j) = zeta_N ** exps[j] on the generators of ``group``."""

    group: GroupSpec
    root_order: int
    exps: tuple

    def __post_init__(self):
        N = self.root_order
        exps = tuple(int(e) % N for e in self.exps)
        object.__setattr__(self, "exps", exps)
        if len(exps) != self.group.rank:
            raise ValueError("character length does not match the group rank")
        for e, n in zip(exps, self.group.orders):
            if (e * n) % N:
                raise ValueError(f"zeta_{N}^{e} is not an {n}-th root of unity")

    def exponent(self, x: Element) -> int:
        return sum(e * xi for e, xi in zip(self.exps, x)) % self.root_order

    def __call__(self, x: Element) -> CyclotomicNumber:
        return root_of_unity(self.root_order, self.exponent(x))

    def inverse(self) -> "Character":
        return Character(self.group, self.root_order, tuple(-e for e in self.exps))

    def __mul__(self, other: "Character") -> "Character":
        return Character(
            self.group, self.root_order, tuple(a + b for a, b in zip(self.exps, other.exps))
        )

    def is_trivial(self) -> bool:
        return not any(self.exps)


@dataclass(frozen=True)
class YDDatum:
    group: GroupSpec
    root_order: int
    entries: tuple  # of (Character, Element)

    def __post_init__(self):
        if not self.entries:
            raise ValueError("the index set must be nonempty")
        for chi, g in self.entries:
            if chi.group != self.group:
                raise ValueError("all characters must live on the same group")

    def __len__(self):
        return len(self.entries)


def braiding_exponents(V: YDDatum) -> list[list[int]]:
    return [[chi_j.exponent(g_i) for chi_j, _ in V.entries] for _, g_i in V.entries]


def braiding(V: YDDatum) -> list[list[CyclotomicNumber]]:
    """q_ij = chi_j(g_i)."""
    N = V.root_order
    return [[root_of_unity(N, e) for e in row] for row in braiding_exponents(V)]


def commutant(V: YDDatum) -> list[int]:
    """Indices i with q_ij q_ji = 1 for every j."""
    q = braiding_exponents(V)
    N = V.root_order
    return [
        i for i in range(len(V)) if all((q[i][j] + q[j][i]) % N == 0 for j in range(len(V)))
    ]


def pair_symmetric(V: YDDatum, W: YDDatum) -> bool:
    """True iff chi^W_j(g^V_i) chi^V_i(g^W_j) = 1 for all i, j."""
    if V.group != W.group or V.root_order != W.root_order:
        raise ValueError("data must live over the same group and field")
    N = V.root_order
    return all(
        (chi_w.exponent(g_v) + chi_v.exponent(g_w)) % N == 0
        for chi_v, g_v in V.entries
        for chi_w, g_w in W.entries
    )


def direct_sum(V: YDDatum, W: YDDatum) -> YDDatum:
    return YDDatum(V.group, V.root_order, V.entries + W.entries)


def rank_one_shape(chi: Character, g: Element) -> str:
    """Shape of the Nichols algebra of the one-dimensional module (chi, g) in char 0."""
    e = chi.exponent(g)
    if e == 0:
        return "polynomial"
    if 2 * e == chi.root_order:
        return "truncated_at_2"
    return "other"


# --- double data ---------------------------------------------------------------


@dataclass(frozen=True)
class DoubleDatum:
    """Groups F, G, a bicharacter tau0 on F x G and index pairs (f_i, g_i)."""

    F: GroupSpec
    G: GroupSpec
    tau0: Bicharacter
    index: tuple  # of (f_i, g_i)
    max_degree: int = 12

    def __post_init__(self):
        if not self.index:
            raise ValueError("the index set must be nonempty")
        if self.tau0.left != self.F or self.tau0.right != self.G:
            raise ValueError("tau0 must be defined on F x G")
        norm = tuple((self.F.elem(f), self.G.elem(g)) for f, g in self.index)
        object.__setattr__(self, "index", norm)

    @property
    def n(self) -> int:
        return self.tau0.root_order

    @property
    def size(self) -> int:
        return len(self.index)

    @property
    def gamma(self) -> GroupSpec:
        return self.F.product(self.G)

    @property
    def pairing(self) -> DoublePairing:
        return DoublePairing(self.tau0)

    def f(self, i: int) -> Element:
        return self.index[i][0]

    def g(self, i: int) -> Element:
        return self.index[i][1]

    def q_exponents(self) -> list[list[int]]:
        """P[a][b] with tau0(f_a, g_b) = zeta ** P[a][b]."""
        return [
            [self.tau0.exponent(fa, gb) for _, gb in self.index] for fa, _ in self.index
        ]

    def fg(self, i: int) -> Element:
        """The grouplike f_i g_i in F x G."""
        return self.f(i) + self.g(i)

    def v_character(self, i: int) -> Character:
        """(f, g) -> tau0(f, g_i) tau0(f_i, g), the F x G action on v_i."""
        gamma = self.gamma
        exps = [self.tau0.exponent(e, self.g(i)) for e in self.F.generators()]
        exps += [self.tau0.exponent(self.f(i), e) for e in self.G.generators()]
        return Character(gamma, self.n, tuple(exps))

    def v_yd(self) -> YDDatum:
        zero_g = self.G.identity
        return YDDatum(
            self.gamma,
            self.n,
            tuple((self.v_character(i), self.f(i) + zero_g) for i in range(self.size)),
        )

    def w_yd(self) -> YDDatum:
        zero_f = self.F.identity
        return YDDatum(
            self.gamma,
            self.n,
            tuple(
                (self.v_character(i).inverse(), zero_f + self.g(i)) for i in range(self.size)
            ),
        )


@dataclass
class AdjacencyReport:
    edges: list
    connected: bool
    single_index_condition: Optional[bool] = None  # tau0(f_1, g_1)^2 != 1 when |I| = 1

    @property
    def dichotomy_hypothesis(self) -> bool:
        if self.single_index_condition is not None:
            return self.single_index_condition
        return self.connected


def adjacency_and_connectivity(D: DoubleDatum) -> AdjacencyReport:
    P = D.q_exponents()
    N = D.n
    size = D.size
    edges = [
        (i, j)
        for i in range(size)
        for j in range(i + 1, size)
        if (P[i][j] + P[j][i]) % N != 0
    ]
    adj = {i: set() for i in range(size)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in adj[i] - seen:
            seen.add(j)
            stack.append(j)
    connected = len(seen) == size
    single = None
    if size == 1:
        single = (2 * P[0][0]) % N != 0
    return AdjacencyReport(edges, connected, single)
