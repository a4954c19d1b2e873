"""Thin Hopf ideals of the double and their quotient algebras.

A thin ideal datum is (T, Z, zeta): a subgroup T of the central grouplikes
and pairs (z, zeta(z)) with z in the span of the v_i, i in I_T, and zeta(z) in
the span of the w_j, j in I_T, of the same Yetter-Drinfeld type over
Gamma = (F x G) / T.  The quotient by (t - 1, z - zeta(z)) is again a
pointed normal-form algebra: each pivot letter of Z is eliminated, the
remaining v-letters and all w-letters keep their relations over Gamma.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence

from .abgroup import (
    Bicharacter,
    Element,
    GroupSpec,
    QuotientMap,
    Subgroup,
    all_subgroups,
    trivial_subgroup,
)
from .double import (
    Elem,
    Letter,
    PointedEngine,
    _acc,
    build,
    central_grouplikes,
)
from .linalg import SparseEchelon
from .scalars import CyclotomicNumber, from_rational, root_of_unity
from .yd import Character, DoubleDatum, adjacency_and_connectivity, commutant

Vec = Dict[int, CyclotomicNumber]


@dataclass
class ThinIdealDatum:
    """T plus a list of pairs (z, zeta(z)), each a dict index -> scalar."""

    T: Subgroup
    pairs: list = field(default_factory=list)

    @property
    def skinny(self) -> bool:
        return not self.pairs

    def describe(self) -> dict:
        return {
            "T_generators": [list(g) for g in self.T.generators],
            "T_order": self.T.order,
            "pairs": [
                {
                    "z": {str(i): str(c) for i, c in sorted(z.items())},
                    "zeta": {str(j): str(c) for j, c in sorted(zz.items())},
                }
                for z, zz in self.pairs
            ],
        }


def index_set_T(D: DoubleDatum, T: Subgroup) -> list[int]:
    """I_T = {i : f_i g_i in T}."""
    return [i for i in range(D.size) if D.fg(i) in T]


def _rref_pairs(n: int, pairs) -> list:
    """Row reduce the z parts of the pairs, carrying zeta along.

    Returns (pivot, z-row, zeta-row) with z-row[pivot] = 1 and the pivots
    absent from every other z-row.
    """
    rows = []
    for z, zz in pairs:
        z = {k: v for k, v in z.items() if not v.is_zero()}
        zz = {k: v for k, v in zz.items() if not v.is_zero()}
        for p, rz, rzz in rows:
            c = z.get(p)
            if c is not None:
                for k, v in rz.items():
                    _acc(z, k, -(c * v))
                for k, v in rzz.items():
                    _acc(zz, k, -(c * v))
        if not z:
            rows.append((None, z, zz))
            continue
        p = min(z)
        inv = z[p].inverse()
        z = {k: v * inv for k, v in z.items()}
        zz = {k: v * inv for k, v in zz.items()}
        new_rows = []
        for q, rz, rzz in rows:
            c = rz.get(p)
            if c is not None:
                rz, rzz = dict(rz), dict(rzz)
                for k, v in z.items():
                    _acc(rz, k, -(c * v))
                for k, v in zz.items():
                    _acc(rzz, k, -(c * v))
            new_rows.append((q, rz, rzz))
        rows = new_rows + [(p, z, zz)]
    return rows


@dataclass
class ValidationReport:
    ok: bool
    violations: list
    warnings: list

    def as_dict(self) -> dict:
        return {"ok": self.ok, "violations": self.violations, "warnings": self.warnings}


def validate(D: DoubleDatum, datum: ThinIdealDatum) -> ValidationReport:
    violations = []
    warnings = []
    if datum.T.ambient != D.gamma:
        violations.append({"item": "T", "message": "T is not a subgroup of F x G"})
        return ValidationReport(False, violations, warnings)
    chars = [D.v_character(i) for i in range(D.size)]
    for t in datum.T.generators:
        bad = [i for i, ch in enumerate(chars) if ch.exponent(t) != 0]
        if bad:
            violations.append(
                {"item": "T_central", "message": f"{list(t)} is not central (fails for {bad})"}
            )
    IT = set(index_set_T(D, datum.T))
    IC = set(commutant(D.v_yd()))
    if not IT <= IC:
        violations.append({"item": "I_T", "message": f"I_T = {sorted(IT)} not inside I_C"})
    qm = datum.T.quotient_data()
    zf, zg = D.F.identity, D.G.identity

    def v_type(i):
        return (chars[i].exps, qm.project(D.f(i) + zg))

    def w_type(j):
        return (chars[j].inverse().exps, qm.project(zf + D.g(j)))

    for k, (z, zz) in enumerate(datum.pairs):
        supp = [i for i, c in z.items() if not c.is_zero()]
        tsupp = [j for j, c in zz.items() if not c.is_zero()]
        if not supp:
            violations.append({"item": "Z", "message": f"pair {k}: z is zero"})
            continue
        outside = [i for i in supp if i not in IT]
        if outside:
            violations.append({"item": "Z", "message": f"pair {k}: v_{outside} not in V_T"})
        outside = [j for j in tsupp if j not in IT]
        if outside:
            violations.append({"item": "zeta", "message": f"pair {k}: w_{outside} not in W_T"})
        types = {v_type(i) for i in supp}
        if len(types) > 1:
            violations.append({"item": "Z", "message": f"pair {k}: z is not homogeneous"})
        ttypes = {w_type(j) for j in tsupp}
        if tsupp and (len(ttypes) > 1 or ttypes != types):
            violations.append(
                {"item": "type", "message": f"pair {k}: zeta(z) has a different Yetter-Drinfeld type"}
            )
    if datum.pairs:
        rows = _rref_pairs(D.n, datum.pairs)
        if any(p is None for p, _, _ in rows):
            violations.append({"item": "Z", "message": "the z vectors are linearly dependent"})
        else:
            ech = SparseEchelon(D.n, track=False)
            for _, _, zz in rows:
                if ech.insert(None, zz) is not None:
                    violations.append({"item": "zeta", "message": "zeta is not injective"})
                    break
    for i in range(D.size):
        if chars[i].is_trivial():
            warnings.append(
                f"the character of v_{i} is trivial: the classification of thin ideals "
                "does not apply, though the construction is still an ideal"
            )
    return ValidationReport(not violations, violations, warnings)


class QuotientEngine(PointedEngine):
    """A(T, Z, zeta) over Gamma = (F x G) / T."""

    def __init__(self, D: DoubleDatum, datum: ThinIdealDatum, max_degree: Optional[int] = None):
        self.datum = D
        self.ideal = datum
        self.qmap: QuotientMap = datum.T.quotient_data()
        gamma = self.qmap.spec
        rows = _rref_pairs(D.n, datum.pairs) if datum.pairs else []
        if any(p is None for p, _, _ in rows):
            raise ValueError("the z vectors are linearly dependent")
        self.eliminated = {p: (rz, rzz) for p, rz, rzz in rows}
        zf, zg = D.F.identity, D.G.identity
        lifts = [self.qmap.lift(e) for e in gamma.generators()]

        def descend(ch: Character) -> Character:
            return Character(gamma, D.n, tuple(ch.exponent(x) for x in lifts))

        v_letters = [
            Letter(i, self.qmap.project(D.f(i) + zg), descend(D.v_character(i)))
            for i in range(D.size)
            if i not in self.eliminated
        ]
        w_letters = [
            Letter(j, self.qmap.project(zf + D.g(j)), descend(D.v_character(j).inverse()))
            for j in range(D.size)
        ]
        md = D.max_degree if max_degree is None else max_degree
        super().__init__(D.n, gamma, v_letters, w_letters, D.q_exponents(), md)
        self._proj_cache: dict = {}

    @property
    def dim_U(self) -> int:
        return len(self.v_letters) + len(self.w_letters)

    def v_image(self, i: int) -> Elem:
        """Image of v_i of the double."""
        if i not in self.eliminated:
            return self.v(i)
        rz, rzz = self.eliminated[i]
        out: Elem = {}
        for j, c in rzz.items():
            for k, v in self.w(j).items():
                _acc(out, k, v * c)
        for k, c in rz.items():
            if k == i:
                continue
            for lab, v in self.v(k).items():
                _acc(out, lab, -(v * c))
        return out

    def group_image(self, x: Element) -> Elem:
        return self.group(self.qmap.project(x))


def quotient_build(
    D: DoubleDatum, datum: ThinIdealDatum, max_degree: Optional[int] = None
) -> QuotientEngine:
    return QuotientEngine(D, datum, max_degree)


def project_to_quotient(D: DoubleDatum, A: QuotientEngine, label) -> Elem:
    """The image in A of a basis label (v-word, gamma, w-word) of the double."""
    hit = A._proj_cache.get(label)
    if hit is not None:
        return hit
    x, g, y = label
    if not any(i in A.eliminated for i in x):
        out = A.reduce_label((x, A.qmap.project(g), y))
    else:
        parts = [A.v_image(i) for i in x]
        parts.append(A.reduce_label(((), A.qmap.project(g), y)))
        out = A.mul(*parts)
    A._proj_cache[label] = out
    return out


def project_element(D: DoubleDatum, A: QuotientEngine, e: Elem) -> Elem:
    out: Elem = {}
    for label, c in e.items():
        for k, v in project_to_quotient(D, A, label).items():
            _acc(out, k, v * c)
    return out


@dataclass
class GradingCheck:
    degree0: int
    degree1: int
    expected0: int
    expected1: int

    @property
    def ok(self) -> bool:
        return self.degree0 == self.expected0 and self.degree1 == self.expected1


def grading_check(A: QuotientEngine) -> GradingCheck:
    dims = A.grading_dims()
    order = A.gamma.order
    D = A.datum
    expected1 = (2 * D.size - len(A.eliminated)) * order
    return GradingCheck(dims.get(0, 0), dims.get(1, 0), order, expected1)


def ideal_generators_vanish(D: DoubleDatum, A: QuotientEngine) -> bool:
    """t - 1 and z - zeta(z) map to zero."""
    one = A.one()
    for t in A.ideal.T.generators:
        if A.sub(A.group_image(t), one):
            return False
    for z, zz in A.ideal.pairs:
        img: Elem = {}
        for i, c in z.items():
            for k, v in A.v_image(i).items():
                _acc(img, k, v * c)
        for j, c in zz.items():
            for k, v in A.w(j).items():
                _acc(img, k, -(v * c))
        if img:
            return False
    return True


def thinness_check(D: DoubleDatum, A: QuotientEngine) -> dict:
    """V and W map injectively into the quotient."""
    out = {}
    for side, images in (
        ("V", [A.v_image(i) for i in range(D.size)]),
        ("W", [A.w(j) for j in range(D.size)]),
    ):
        ech = SparseEchelon(D.n, track=False)
        for k, img in enumerate(images):
            ech.insert(k, img)
        out[side] = ech.rank == D.size
    return out


# --- enumeration -------------------------------------------------------------------


SKINNY = "skinny_only"
COORDINATE = "coordinate_family"


def default_scalars(n: int) -> list[CyclotomicNumber]:
    return [from_rational(n, 1), from_rational(n, -1)]


def enumerate_thin(
    D: DoubleDatum, family: str = SKINNY, scalars: Optional[Sequence] = None
) -> list[ThinIdealDatum]:
    if family not in (SKINNY, COORDINATE):
        raise ValueError(f"unknown family {family!r}")
    scalars = default_scalars(D.n) if scalars is None else list(scalars)
    cd = central_grouplikes(D)
    out = []
    chars = [D.v_character(i) for i in range(D.size)]
    zf, zg = D.F.identity, D.G.identity
    for T in all_subgroups(D.gamma, cd.C):
        out.append(ThinIdealDatum(T))
        if family == SKINNY:
            continue
        IT = index_set_T(D, T)
        if not IT:
            continue
        qm = T.quotient_data()
        v_type = {i: (chars[i].exps, qm.project(D.f(i) + zg)) for i in IT}
        w_type = {j: (chars[j].inverse().exps, qm.project(zf + D.g(j))) for j in IT}
        for size in range(1, len(IT) + 1):
            for src in itertools.combinations(IT, size):
                for tgt in itertools.permutations(IT, size):
                    if any(v_type[i] != w_type[j] for i, j in zip(src, tgt)):
                        continue
                    for cs in itertools.product(scalars, repeat=size):
                        pairs = [
                            ({i: CyclotomicNumber.one(D.n)}, {j: c})
                            for i, j, c in zip(src, tgt, cs)
                        ]
                        out.append(ThinIdealDatum(T, pairs))
    return out


@dataclass
class DichotomyReport:
    branch: Optional[str]
    applicable: bool
    commutant: list
    non_skinny_count: Optional[int]
    skinny_count: Optional[int]
    certified: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def dichotomy_report(D: DoubleDatum, scalars: Optional[Sequence] = None) -> DichotomyReport:
    adj = adjacency_and_connectivity(D)
    comm = commutant(D.v_yd())
    if D.size == 1:
        branch = "single_index" if adj.single_index_condition else None
    else:
        branch = "connected" if adj.connected else None
    if branch is None:
        return DichotomyReport(None, False, comm, None, None, False)
    fam = enumerate_thin(D, COORDINATE, scalars)
    non_skinny = [d for d in fam if not d.skinny]
    skinny = [d for d in fam if d.skinny]
    return DichotomyReport(
        branch, True, comm, len(non_skinny), len(skinny), not non_skinny and not comm
    )


# --- a thin ideal outside the (T, Z, zeta) family --------------------------------------


@dataclass
class OutsideFamilyReport:
    conditions: dict
    relations_respected: bool
    generators_vanish: bool
    thin: dict
    v_image_in_group_algebra: bool
    spanning_set_independent: bool
    family_scan: list
    family_reproduces: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def outside_family_fixture(max_degree: int = 4):
    """F = G = Z/2, trivial tau0, one index (f, g), ideal (v - (f - 1), fg - 1).

    The quotient is modelled as k[w] (x) k[Gamma] with Gamma = Z/2, v -> f - 1,
    w -> w; the model is truncated at ``max_degree`` because k[w] is
    infinite-dimensional.
    """
    Z2 = GroupSpec((2,))
    tau0 = Bicharacter(Z2, Z2, 2, ((0,),))
    D = DoubleDatum(Z2, Z2, tau0, (((1,), (1,)),), max_degree)
    T = Subgroup(D.gamma, [D.fg(0)])
    qm = T.quotient_data()
    gamma = qm.spec
    trivial = Character(gamma, 2, (0,) * gamma.rank)
    model = PointedEngine(
        2, gamma, [], [Letter(0, qm.project((0, 1)), trivial)], D.q_exponents(), max_degree
    )
    f_bar = model.group(qm.project((1, 0)))
    v_img = model.sub(f_bar, model.one())

    def img_group(x):
        return model.group(qm.project(x))

    conditions = {
        "tau0_trivial_on_index": D.tau0.exponent(D.f(0), D.g(0)) == 0,
        "f_not_in_T": (D.f(0) + D.G.identity) not in T,
    }
    # relations of the double on generators
    eng = build(D, max_degree)
    checks = []
    w = model.w(0)
    for x in D.gamma.generators():
        lam = root_of_unity(2, D.v_character(0).exponent(x))
        # x v = lam v x, w x = lam^-1 x w
        checks.append(model.mul(img_group(x), v_img) == model.scale(lam, model.mul(v_img, img_group(x))))
        checks.append(
            model.mul(w, img_group(x)) == model.scale(lam.inverse(), model.mul(img_group(x), w))
        )
    q = root_of_unity(2, D.tau0.exponent(D.f(0), D.g(0)))
    lhs = model.mul(w, v_img)
    rhs = model.add(
        model.scale(q, model.mul(v_img, w)), img_group(D.fg(0)), model.scale(-1, model.one())
    )
    checks.append(lhs == rhs)
    # coalgebra compatibility on generators
    dv = model.coproduct(v_img)
    expect = model.add(
        model.tensor(v_img, model.one()), model.tensor(img_group(D.f(0) + D.G.identity), v_img)
    )
    checks.append(dv == expect)
    relations_ok = all(checks)
    vanish = not model.sub(v_img, model.sub(f_bar, model.one())) and not model.sub(
        img_group(D.fg(0)), model.one()
    )
    # injectivity on V and W
    thin = {"V": bool(v_img), "W": bool(w)}
    in_group = all(not x and not y for (x, _, y) in v_img)
    # the images of gamma w^k (gamma in Gamma, k <= max_degree) form the model basis
    span = SparseEchelon(2, track=False)
    for g in gamma.elements():
        wk = model.one()
        for k in range(max_degree + 1):
            span.insert((g, k), model.mul(model.group(g), wk))
            if k < max_degree:
                wk = model.mul(wk, w)
    independent = span.rank == gamma.order * (max_degree + 1)
    # no (T, Z, zeta) datum kills v - (f - 1)
    scan = []
    gen = eng.add(eng.v(0), eng.scale(-1, eng.f((1,))), eng.one())
    for datum in enumerate_thin(D, COORDINATE):
        A = quotient_build(D, datum, max_degree)
        image = project_element(D, A, gen)
        scan.append({"datum": datum.describe(), "kills_generator": not image})
    reproduces = any(s["kills_generator"] for s in scan)
    report = OutsideFamilyReport(
        conditions, relations_ok, vanish, thin, in_group, independent, scan, reproduces
    )
    ideal = {"generators": ["v_0 - (f - 1)", "f g - 1"], "T": T}
    return D, ideal, report
