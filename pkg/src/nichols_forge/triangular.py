"""R-matrices of the double, triangularity, and minimal triangular data.

For the double D = B x H with B = B(V) # F and H = B(W) # G the canonical
R-matrix is sum_i b_i (x) h^i where (b_i) is a basis of B and (h^i) is the
dual basis of H under (b, h) -> (-1)^deg(b) tau(S b, h).  Quotients inherit
R through the projection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .abgroup import Bicharacter, Element, GroupSpec, Subgroup, nondegenerate
from .double import DoubleEngine, Elem, PointedEngine, Tensor, _acc, build
from .ideals import (
    QuotientEngine,
    ThinIdealDatum,
    project_to_quotient,
    quotient_build,
    validate,
)
from .linalg import SparseEchelon, inverse, rank
from .pairing import WordPairing, braided_coproduct_exponents, V_SIDE, W_SIDE
from .scalars import CyclotomicNumber, exponent_of, from_rational, root_of_unity
from .yd import DoubleDatum


class TauDegenerate(ArithmeticError):
    """The Gram matrix of tau is singular although both sides are Nichols algebras."""


# --- tau between the two halves of the double ------------------------------------------


def b_labels(engine: DoubleEngine) -> list:
    D = engine.datum
    zg = D.G.identity
    return [(x, f + zg, ()) for x in engine.v_basis.basis_words() for f in D.F.elements()]


def h_labels(engine: DoubleEngine) -> list:
    D = engine.datum
    zf = D.F.identity
    return [((), zf + g, y) for g in D.G.elements() for y in engine.w_basis.basis_words()]


class HalfPairing:
    """tau(x f, g y) = tau0(f, g) tau(x, y) on B-labels times H-labels."""

    def __init__(self, engine: DoubleEngine):
        self.engine = engine
        D = engine.datum
        self.D = D
        self.words = WordPairing(D.q_exponents(), D.n)
        self.r = D.F.rank

    def labels(self, b, h) -> CyclotomicNumber:
        x, fg1, y0 = b
        x0, fg2, y = h
        if y0 or x0 or any(fg1[self.r :]) or any(fg2[: self.r]):
            raise ValueError("tau is evaluated on (B, H) labels only")
        f = fg1[: self.r]
        g = fg2[self.r :]
        t = self.words(x, y)
        if t.is_zero():
            return t
        return root_of_unity(self.D.n, self.D.tau0.exponent(f, g)) * t

    def __call__(self, b: Elem, h: Elem) -> CyclotomicNumber:
        total = CyclotomicNumber.zero(self.D.n)
        for lb, cb in b.items():
            for lh, ch in h.items():
                total = total + cb * ch * self.labels(lb, lh)
        return total


def gram_matrix(engine: DoubleEngine, form=None):
    """Gram matrix of ``form`` (default tau) on B-labels x H-labels."""
    form = form or HalfPairing(engine).labels
    B = b_labels(engine)
    H = h_labels(engine)
    return B, H, [[form(b, h) for h in H] for b in B]


def r_form(engine: DoubleEngine):
    """(b, h) -> (-1)^deg(b) tau(S(b), h), the form whose dual bases give R."""
    half = HalfPairing(engine)

    def form(b, h):
        val = half(antipode_label(engine, b), {h: CyclotomicNumber.one(engine.n)})
        return -val if len(b[0]) % 2 else val

    return form


def _block_inverse(engine: DoubleEngine, B, H, gram):
    """Invert the Gram matrix block by block (degree and letter content)."""
    n = engine.n
    inv = {}
    groups: dict = {}
    for i, (x, _, _) in enumerate(B):
        groups.setdefault((len(x), tuple(sorted(x))), ([], []))[0].append(i)
    for j, (_, _, y) in enumerate(H):
        groups.setdefault((len(y), tuple(sorted(y))), ([], []))[1].append(j)
    for key, (rows, cols) in groups.items():
        if len(rows) != len(cols):
            raise TauDegenerate(f"block {key} is not square")
        block = [[gram[i][j] for j in cols] for i in rows]
        try:
            binv = inverse(block, n)
        except ZeroDivisionError:
            raise TauDegenerate(f"the pairing is degenerate on block {key}") from None
        for a, j in enumerate(cols):
            for b, i in enumerate(rows):
                if not binv[a][b].is_zero():
                    inv[(j, i)] = binv[a][b]
    return inv


@dataclass
class RMatrix:
    terms: Tensor
    inverse: Optional[Tensor] = None
    orientation: str = "canonical"


CANONICAL = "canonical"
NAIVE = "naive"


def dual_basis_tensor(engine: DoubleEngine, form=None) -> Tensor:
    """sum_i b_i (x) h^i with form(b_j, h^i) = delta_ij."""
    B, H, gram = gram_matrix(engine, form)
    inv = _block_inverse(engine, B, H, gram)
    terms: Tensor = {}
    for (j, i), c in inv.items():
        _acc(terms, (B[i], H[j]), c)
    return terms


def canonical_rmatrix(engine: DoubleEngine, orientation: str = CANONICAL) -> RMatrix:
    """R = sum_i b_i (x) h^i, dual bases for (b, h) -> (-1)^deg(b) tau(S b, h).

    ``orientation="naive"`` returns sum_i h^i (x) b_i with dual bases for tau
    itself, which satisfies the hexagon axioms but not the intertwining
    axiom; it is kept for negative checks.
    """
    if not engine.finite:
        raise ValueError("the R-matrix needs a finite-dimensional engine")
    if orientation == NAIVE:
        return RMatrix(engine.flip(dual_basis_tensor(engine), (1, 0)), orientation=NAIVE)
    if orientation != CANONICAL:
        raise ValueError(f"unknown orientation {orientation!r}")
    R = RMatrix(dual_basis_tensor(engine, r_form(engine)), orientation=CANONICAL)
    R.inverse = rmatrix_inverse(engine, R)
    # one-sided suffices: D (x) D is finite-dimensional
    if engine.tensor_mul(R.terms, R.inverse) != engine.tensor(engine.one(), engine.one()):
        raise ArithmeticError("the R-matrix candidate is not invertible")
    return R


# --- antipode helpers ------------------------------------------------------------------


def antipode_label(engine: PointedEngine, label, inverse: bool = False) -> Elem:
    """S (or S^-1) on a basis label, from S(v) = -c^-1 v, S(w) = -c^-1 w, S(g) = g^-1.

    S^-1 uses S^-1(v) = -v c^-1.  Both are anti-multiplicative.
    """
    x, g, y = label
    gamma = engine.gamma
    factors = []
    for i in x:
        c = gamma.neg(engine.v_letters[i].coaction)
        gen = engine.v(i)
        pair = [gen, engine.group(c)] if inverse else [engine.group(c), gen]
        factors.append(engine.scale(-1, engine.mul(*pair)))
    factors.append(engine.group(gamma.neg(g)))
    for j in y:
        c = gamma.neg(engine.w_letters[j].coaction)
        gen = engine.w(j)
        pair = [gen, engine.group(c)] if inverse else [engine.group(c), gen]
        factors.append(engine.scale(-1, engine.mul(*pair)))
    return engine.mul(*reversed(factors))


def antipode(engine: PointedEngine, e: Elem, inverse: bool = False) -> Elem:
    out: Elem = {}
    for label, c in e.items():
        for k, v in antipode_label(engine, label, inverse).items():
            _acc(out, k, v * c)
    return out


def rmatrix_inverse(engine: PointedEngine, R: RMatrix) -> Tensor:
    """(S (x) id) R, which is R^-1 for a genuine R-matrix."""
    out: Tensor = {}
    for (a, b), c in R.terms.items():
        for k, v in antipode_label(engine, a).items():
            _acc(out, (k, b), v * c)
    return out


# --- axioms ------------------------------------------------------------------------


def _first_diff(a: Tensor, b: Tensor):
    for k in sorted(set(a) | set(b), key=repr):
        if a.get(k) != b.get(k):
            return k
    return None


@dataclass
class AxiomReport:
    results: dict
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "results": dict(self.results),
            "witnesses": {k: repr(v) for k, v in self.witnesses.items()},
        }


def algebra_generators(engine: PointedEngine) -> list:
    gens = [("group", g, engine.group(g)) for g in engine.gamma.generators()]
    gens += [("v", i, engine.v(i)) for i in sorted(engine.v_letters)]
    gens += [("w", j, engine.w(j)) for j in sorted(engine.w_letters)]
    return gens


def verify_quasitriangular(engine: PointedEngine, R, qybe: bool = True) -> AxiomReport:
    terms = R.terms if isinstance(R, RMatrix) else R
    rep = AxiomReport({})
    # (i) R Delta(x) = Delta^cop(x) R on generators
    ok = True
    for kind, idx, x in algebra_generators(engine):
        dx = engine.coproduct(x)
        lhs = engine.tensor_mul(terms, dx)
        rhs = engine.tensor_mul(engine.flip(dx, (1, 0)), terms)
        if lhs != rhs:
            ok = False
            rep.witnesses["intertwines_coproduct"] = (kind, idx)
            break
    rep.results["intertwines_coproduct"] = ok
    r13 = engine.embed(terms, (0, 2), 3)
    r23 = engine.embed(terms, (1, 2), 3)
    r12 = engine.embed(terms, (0, 1), 3)
    # (ii) (Delta (x) id) R = R13 R23
    lhs = engine.apply_coproduct(terms, 0)
    rhs = engine.tensor_mul(r13, r23)
    rep.results["left_hexagon"] = lhs == rhs
    if lhs != rhs:
        rep.witnesses["left_hexagon"] = _first_diff(lhs, rhs)
    # (iii) (id (x) Delta) R = R13 R12
    lhs = engine.apply_coproduct(terms, 1)
    rhs = engine.tensor_mul(r13, r12)
    rep.results["right_hexagon"] = lhs == rhs
    if lhs != rhs:
        rep.witnesses["right_hexagon"] = _first_diff(lhs, rhs)
    if qybe:
        lhs = engine.tensor_mul(engine.tensor_mul(r12, r13), r23)
        rhs = engine.tensor_mul(engine.tensor_mul(r23, r13), r12)
        rep.results["yang_baxter"] = lhs == rhs
        if lhs != rhs:
            rep.witnesses["yang_baxter"] = _first_diff(lhs, rhs)
    return rep


def is_triangular_by_product(engine: PointedEngine, R) -> tuple[bool, Optional[tuple]]:
    terms = R.terms if isinstance(R, RMatrix) else R
    prod = engine.tensor_mul(engine.flip(terms, (1, 0)), terms)
    unit = engine.tensor(engine.one(), engine.one())
    return prod == unit, _first_diff(prod, unit)


# --- quotients ---------------------------------------------------------------------


def inherited_rmatrix(D: DoubleDatum, A: QuotientEngine, R: RMatrix) -> Tensor:
    """(pi (x) pi)(R)."""
    out: Tensor = {}
    for (a, b), c in R.terms.items():
        pa = project_to_quotient(D, A, a)
        pb = project_to_quotient(D, A, b)
        for ka, va in pa.items():
            for kb, vb in pb.items():
                _acc(out, (ka, kb), va * vb * c)
    return out


class TransportedPairing:
    """tau on A x A through the inverses of pi restricted to B and to H.

    Requires both restrictions to be bijective onto A.
    """

    def __init__(self, D: DoubleDatum, engine: DoubleEngine, A: QuotientEngine):
        self.A = A
        self.half = HalfPairing(engine)
        basis = A.basis()
        self.basis = basis
        self.b_pre = self._preimages(D, A, b_labels(engine), basis)
        self.h_pre = self._preimages(D, A, h_labels(engine), basis)

    @staticmethod
    def _preimages(D, A, labels, basis):
        if len(labels) != len(basis):
            raise ValueError("pi is not bijective on this half of the double")
        index = {b: k for k, b in enumerate(basis)}
        zero = CyclotomicNumber.zero(D.n)
        mat = [[zero] * len(basis) for _ in labels]
        for r, lab in enumerate(labels):
            for k, v in project_to_quotient(D, A, lab).items():
                mat[r][index[k]] = v
        inv = inverse(mat, D.n)  # rows: A basis -> combination of labels
        out = {}
        for k, b in enumerate(basis):
            out[b] = {labels[r]: inv[k][r] for r in range(len(labels)) if not inv[k][r].is_zero()}
        return out

    def __call__(self, a_label, b_label) -> CyclotomicNumber:
        return self.half(self.b_pre[a_label], self.h_pre[b_label])


def pairing_triangularity_check(D: DoubleDatum, engine: DoubleEngine, A: QuotientEngine):
    """sum tau(a1, b1) tau(b2, a2) = eps(a) eps(b) for all basis labels a, b of A."""
    tp = TransportedPairing(D, engine, A)
    basis = A.basis()
    for a in basis:
        da = A.coproduct_label(a)
        ea = 1 if not a[0] and not a[2] else 0
        for b in basis:
            db = A.coproduct_label(b)
            eb = 1 if not b[0] and not b[2] else 0
            total = CyclotomicNumber.zero(D.n)
            for (a1, a2), ca in da.items():
                for (b1, b2), cb in db.items():
                    t = tp(a1, b1)
                    if t.is_zero():
                        continue
                    total = total + ca * cb * t * tp(b2, a2)
            if total != ea * eb:
                return False, (a, b)
    return True, None


def zeta_skew_criterion(D: DoubleDatum, datum: ThinIdealDatum) -> tuple[bool, Optional[tuple]]:
    """tau(v_i, zeta(v_j)) + tau0(g_j^-1, g_i) tau(v_j, zeta(v_i)) = 0 for all i, j."""
    zeta = {}
    for z, zz in datum.pairs:
        (i,) = [k for k, c in z.items() if not c.is_zero()]
        zeta[i] = {j: c / z[i] for j, c in zz.items()}
    zero = CyclotomicNumber.zero(D.n)
    for i in range(D.size):
        for j in range(D.size):
            a = zeta.get(j, {}).get(i, zero)
            b = zeta.get(i, {}).get(j, zero)
            t = root_of_unity(D.n, D.tau0.exponent(D.F.neg(D.g(j)), D.g(i)))
            if not (a + t * b).is_zero():
                return False, (i, j)
    return True, None


@dataclass
class TriangularReport:
    product_check: bool
    pairing_check: Optional[bool]
    product_witness: Optional[tuple] = None
    pairing_witness: Optional[tuple] = None

    @property
    def triangular(self) -> bool:
        return self.product_check and self.pairing_check is not False

    def as_dict(self) -> dict:
        return {
            "triangular": self.triangular,
            "product_check": self.product_check,
            "pairing_check": self.pairing_check,
            "product_witness": None if self.product_witness is None else repr(self.product_witness),
            "pairing_witness": None if self.pairing_witness is None else repr(self.pairing_witness),
        }


def verify_triangular(
    engine: PointedEngine, R, D: Optional[DoubleDatum] = None, double: Optional[DoubleEngine] = None
) -> TriangularReport:
    ok, wit = is_triangular_by_product(engine, R)
    rep = TriangularReport(ok, None, wit)
    if isinstance(engine, QuotientEngine) and D is not None:
        dbl = double or build(D)
        try:
            pok, pwit = pairing_triangularity_check(D, dbl, engine)
        except ValueError:
            pok, pwit = None, "pi is not bijective on B and H"
        rep.pairing_check = pok
        rep.pairing_witness = pwit
    return rep


# --- minimality ------------------------------------------------------------------


def _legs(terms: Tensor, slot: int) -> list:
    """Basis of the span of the slot-th legs of a 2-tensor."""
    other = 1 - slot
    by_other: dict = {}
    for key, c in terms.items():
        by_other.setdefault(key[other], {})[key[slot]] = c
    return [by_other[k] for k in sorted(by_other, key=repr)]


def generated_subalgebra(engine: PointedEngine, gens: Sequence[Elem], with_coproduct: bool = True) -> int:
    """Dimension of the smallest subalgebra (closed under coproduct legs) containing gens."""
    ech = SparseEchelon(engine.n, track=False)
    elems: list = []

    def add(e: Elem) -> bool:
        if ech.insert(len(elems), e) is None:
            elems.append(e)
            return True
        return False

    add(engine.one())
    queue = list(gens)
    generators: list = []
    while queue:
        e = queue.pop()
        if not add(e):
            continue
        generators.append(e)
        if with_coproduct:
            t = engine.coproduct(e)
            queue.extend(_legs(t, 0))
            queue.extend(_legs(t, 1))
    # close under left multiplication by the generators
    frontier = list(elems)
    while frontier:
        new = []
        for g in generators:
            for e in frontier:
                p = engine.mul(g, e)
                if p and add(p):
                    new.append(p)
        frontier = new
    return ech.rank


def minimality_check(engine: PointedEngine, R) -> tuple[bool, int]:
    terms = R.terms if isinstance(R, RMatrix) else R
    gens = _legs(terms, 0) + _legs(terms, 1)
    dim = generated_subalgebra(engine, gens)
    return dim == engine.dimension, dim


# --- the pairing identities between braided coproducts and tau ------------------------------


def _combine(n: int, terms) -> dict:
    out: dict = {}
    for e, *key in terms:
        _acc(out, tuple(key), root_of_unity(n, e))
    return out


def identity_coproduct_product(engine: DoubleEngine, r, s, s2) -> bool:
    """tau(r, s s') = tau(r_(1), s') tau(r_(2), s) with the braided coproduct of r."""
    D = engine.datum
    tau = WordPairing(D.q_exponents(), D.n)
    lhs = tau(r, tuple(s) + tuple(s2))
    rhs = CyclotomicNumber.zero(D.n)
    for (r1, r2), c in _combine(D.n, braided_coproduct_exponents(D.q_exponents(), D.n, r, V_SIDE)).items():
        rhs = rhs + c * tau(r1, s2) * tau(r2, s)
    return lhs == rhs


def _b_elem(engine: DoubleEngine, word) -> Elem:
    return engine.reduce_label((tuple(word), engine.gamma.identity, ()))


def identity_inverse_antipode_product(engine: DoubleEngine, r, r2, s) -> bool:
    """tau(S'(r) S'(r'), s) = tau(S'(r), s_(1)) tau(S'(r'), s_(2)), S' the inverse antipode."""
    D = engine.datum
    half = HalfPairing(engine)
    sr = antipode(engine, _b_elem(engine, r), inverse=True)
    sr2 = antipode(engine, _b_elem(engine, r2), inverse=True)
    lhs = half(engine.mul(sr, sr2), engine.reduce_label(((), engine.gamma.identity, tuple(s))))
    rhs = CyclotomicNumber.zero(D.n)
    for (s1, s2), c in _combine(D.n, braided_coproduct_exponents(D.q_exponents(), D.n, s, W_SIDE)).items():
        h1 = engine.reduce_label(((), engine.gamma.identity, s1))
        h2 = engine.reduce_label(((), engine.gamma.identity, s2))
        rhs = rhs + c * half(sr, h1) * half(sr2, h2)
    return lhs == rhs


def identity_inverse_antipode_groups(engine: DoubleEngine, r, a: Element, s, x: Element) -> bool:
    """tau(S'(r) a, s x) = tau(S'(r), s) tau(a, x) for a in F, x in G."""
    D = engine.datum
    half = HalfPairing(engine)
    sr = antipode(engine, _b_elem(engine, r), inverse=True)
    left = engine.mul(sr, engine.f(a))
    right = engine.mul(engine.reduce_label(((), engine.gamma.identity, tuple(s))), engine.g(x))
    lhs = half(left, right)
    rhs = half(sr, engine.reduce_label(((), engine.gamma.identity, tuple(s)))) * root_of_unity(
        D.n, D.tau0.exponent(a, x)
    )
    return lhs == rhs


def conjugation_identities(engine: DoubleEngine) -> bool:
    """x v x^-1 = tau0(f_i, x) v for x in G and a w a^-1 = tau0(a^-1, g_j) w for a in F."""
    D = engine.datum
    for x in D.G.elements():
        for i in range(D.size):
            lhs = engine.mul(engine.g(x), engine.v(i), engine.g(D.G.neg(x)))
            if lhs != engine.scale(root_of_unity(D.n, D.tau0.exponent(D.f(i), x)), engine.v(i)):
                return False
    for a in D.F.elements():
        for j in range(D.size):
            lhs = engine.mul(engine.f(a), engine.w(j), engine.f(D.F.neg(a)))
            c = root_of_unity(D.n, D.tau0.exponent(D.F.neg(a), D.g(j)))
            if lhs != engine.scale(c, engine.w(j)):
                return False
    return True


@dataclass
class NondegeneracyEquivalence:
    group_part: bool
    nichols_part: bool  # tau on B(V) x B(W)
    degree_one_and_nichols: bool
    inverse_antipode_part: bool
    full: bool

    @property
    def agree(self) -> bool:
        """The four conditions coincide; only claimed when tau0 is nondegenerate."""
        if not self.group_part:
            return True
        return (
            len({self.nichols_part, self.degree_one_and_nichols, self.inverse_antipode_part, self.full})
            == 1
        )


def nondegeneracy_equivalence(engine: DoubleEngine) -> NondegeneracyEquivalence:
    D = engine.datum
    tau = WordPairing(D.q_exponents(), D.n)
    half = HalfPairing(engine)
    vw = engine.v_basis.basis_words()
    ww = engine.w_basis.basis_words()

    def full_rank(rows) -> bool:
        return bool(rows) and rank(rows, D.n) == len(rows) == len(rows[0])

    nich = full_rank([[tau(x, y) for y in ww] for x in vw])
    deg1 = full_rank([[tau((i,), (j,)) for j in range(D.size)] for i in range(D.size)])
    bar = [antipode(engine, _b_elem(engine, x), inverse=True) for x in vw]
    hs = [engine.reduce_label(((), engine.gamma.identity, y)) for y in ww]
    inv_part = full_rank([[half(b, h) for h in hs] for b in bar])
    try:
        B, H, gram = gram_matrix(engine)
        _block_inverse(engine, B, H, gram)
        full = True
    except TauDegenerate:
        full = False
    return NondegeneracyEquivalence(
        bool(nondegenerate(D.tau0)), nich, deg1 and engine.finite, inv_part, full
    )


# --- minimal triangular data ----------------------------------------------------------


@dataclass
class Carrier:
    g: Element
    n: int
    M: list  # n x n matrix of CyclotomicNumber (may be empty when n = 0)


@dataclass
class GelakiDatum:
    G: GroupSpec
    tau0: Bicharacter
    carriers: list  # of Carrier

    @property
    def n(self) -> int:
        return self.tau0.root_order

    def carrier(self, g: Element) -> Optional[Carrier]:
        g = self.G.elem(g)
        for c in self.carriers:
            if self.G.elem(c.g) == g:
                return c
        return None


@dataclass
class GelakiReport:
    valid: bool
    items: list

    def as_dict(self) -> dict:
        return {"valid": self.valid, "items": self.items}


def validate_gelaki(datum: GelakiDatum) -> GelakiReport:
    items = []
    G, t = datum.G, datum.tau0
    N = t.root_order
    if t.left != G or t.right != G:
        items.append({"item": "groups", "message": "tau0 must be defined on G x G"})
        return GelakiReport(False, items)
    nd = nondegenerate(t)
    if not nd:
        items.append({"item": "nondegenerate", "message": f"kernel witness {nd.left_witness or nd.right_witness}"})
    for a in G.generators():
        for b in G.generators():
            if (t.exponent(a, b) + t.exponent(b, a)) % N:
                items.append(
                    {"item": "skew_symmetry", "message": f"tau0({a},{b}) tau0({b},{a}) != 1"}
                )
    seen = set()
    for c in datum.carriers:
        g = G.elem(c.g)
        if g in seen:
            items.append({"item": "carriers", "message": f"carrier {list(g)} listed twice"})
        seen.add(g)
        if 2 * t.exponent(g, g) % (2 * N) != N:
            items.append({"item": "carrier_sign", "message": f"tau0(g, g) != -1 for g = {list(g)}"})
        if len(c.M) != c.n or any(len(row) != c.n for row in c.M):
            items.append({"item": "matrix_shape", "message": f"M for {list(g)} is not {c.n}x{c.n}"})
            continue
        if c.n and rank(c.M, N) != c.n:
            items.append({"item": "matrix_invertible", "message": f"M for {list(g)} is singular"})
    for c in datum.carriers:
        g = G.elem(c.g)
        partner = datum.carrier(G.neg(g))
        pn = partner.n if partner else 0
        if pn != c.n:
            items.append(
                {"item": "multiplicity_symmetry", "message": f"n_g != n_(g^-1) for g = {list(g)}"}
            )
            continue
        if partner and c.n and any(
            partner.M[a][b] != c.M[b][a] for a in range(c.n) for b in range(c.n)
        ):
            items.append(
                {"item": "transpose_symmetry", "message": f"M_(g^-1) != transpose(M_g) for g = {list(g)}"}
            )
    if not any(c.n for c in datum.carriers):
        items.append({"item": "carriers", "message": "the index set is empty"})
    return GelakiReport(not items, items)


def gelaki_index(datum: GelakiDatum) -> list:
    """(carrier element, position) for each index, carriers sorted."""
    out = []
    for c in sorted(datum.carriers, key=lambda c: datum.G.elem(c.g)):
        for p in range(c.n):
            out.append((datum.G.elem(c.g), p))
    return out


def gelaki_double(datum: GelakiDatum, max_degree: int = 12) -> DoubleDatum:
    G = datum.G
    idx = gelaki_index(datum)
    return DoubleDatum(G, G, datum.tau0, tuple((G.neg(g), g) for g, _ in idx), max_degree)


def gelaki_ideal(datum: GelakiDatum, D: DoubleDatum, phi: Optional[Sequence[Element]] = None) -> ThinIdealDatum:
    """T = {(f, phi(f)^-1)} and zeta(v_i) = sum_k (M_g)_{pos k, pos i} w_k over I_(g^-1)."""
    G = datum.G
    gens = G.generators()
    phi = list(phi) if phi is not None else gens
    T = Subgroup(D.gamma, [e + G.neg(img) for e, img in zip(gens, phi)])
    idx = gelaki_index(datum)
    one = CyclotomicNumber.one(datum.n)
    pairs = []
    for i, (g, p) in enumerate(idx):
        M = datum.carrier(g).M
        target = G.neg(g)
        zz = {}
        for k, (h, q) in enumerate(idx):
            if h == target and not M[q][p].is_zero():
                zz[k] = M[q][p]
        pairs.append(({i: one}, zz))
    return ThinIdealDatum(T, pairs)


def build_HD(datum: GelakiDatum, max_degree: int = 12):
    """(double datum, ideal datum, quotient engine)."""
    D = gelaki_double(datum, max_degree)
    ideal = gelaki_ideal(datum, D)
    A = quotient_build(D, ideal)
    return D, ideal, A


def group_automorphisms(G: GroupSpec) -> list:
    """All automorphisms as images of the generators, in lexicographic order."""
    elems = list(G.elements())
    cands = [[x for x in elems if G.scale(n, x) == G.identity] for n in G.orders]
    out = []
    for choice in itertools.product(*cands):
        seen = set()
        for e in elems:
            acc = G.identity
            for k, ek in enumerate(e):
                if ek:
                    acc = G.add(acc, G.scale(ek, choice[k]))
            seen.add(acc)
        if len(seen) == G.order:
            out.append(tuple(choice))
    return out


def apply_auto(G: GroupSpec, phi, x: Element) -> Element:
    acc = G.identity
    for k, xk in enumerate(x):
        if xk:
            acc = G.add(acc, G.scale(xk, phi[k]))
    return acc


@dataclass
class Structure:
    phi: tuple
    matrices: dict
    triangular: bool
    product_check: bool
    pairing_check: Optional[bool]

    def as_dict(self) -> dict:
        return {
            "phi": [list(x) for x in self.phi],
            "matrices": {
                str(list(g)): [[str(c) for c in row] for row in M] for g, M in self.matrices.items()
            },
            "triangular": self.triangular,
            "product_check": self.product_check,
            "pairing_check": self.pairing_check,
        }


def enumerate_structures(
    datum: GelakiDatum, scalars: Optional[Sequence[CyclotomicNumber]] = None, verify: bool = True
) -> list:
    """All pairs (phi, (M_g)) with entries from ``scalars``, each verified."""
    G, t = datum.G, datum.tau0
    N = datum.n
    if not any(c.n for c in datum.carriers):
        raise ValueError("the carrier set is empty")
    scalars = [from_rational(N, 1), from_rational(N, -1)] if scalars is None else list(scalars)
    idx_groups = [G.elem(c.g) for c in datum.carriers if c.n]
    gens = G.generators()
    phis = []
    for phi in group_automorphisms(G):
        if any(apply_auto(G, phi, g) != g for g in idx_groups):
            continue
        if all(
            t.exponent(f, apply_auto(G, phi, g)) == t.exponent(apply_auto(G, phi, f), g)
            for f in gens
            for g in gens
        ):
            phis.append(phi)
    zero = CyclotomicNumber.zero(N)
    carriers = sorted((c for c in datum.carriers if c.n), key=lambda c: G.elem(c.g))
    # independent choices: one matrix for each pair {g, g^-1}
    reps = []
    for c in carriers:
        g = G.elem(c.g)
        if G.neg(g) in [G.elem(r.g) for r in reps]:
            continue
        reps.append(c)

    def matrices_for(c):
        n = c.n
        for entries in itertools.product(scalars, repeat=n * n):
            M = [list(entries[r * n : (r + 1) * n]) for r in range(n)]
            if rank(M, N) != n:
                continue
            g = G.elem(c.g)
            if G.neg(g) == g and any(M[a][b] != M[b][a] for a in range(n) for b in range(n)):
                continue
            yield M

    out = []
    D = gelaki_double(datum)
    eng = build(D) if verify else None
    R = canonical_rmatrix(eng) if verify else None
    for phi in phis:
        for choice in itertools.product(*[list(matrices_for(c)) for c in reps]):
            mats = {}
            for c, M in zip(reps, choice):
                g = G.elem(c.g)
                mats[g] = M
                mats[G.neg(g)] = [[M[b][a] for b in range(c.n)] for a in range(c.n)]
            new = GelakiDatum(
                G, t, [Carrier(G.elem(c.g), c.n, mats[G.elem(c.g)]) for c in carriers]
            )
            if verify:
                ideal = gelaki_ideal(new, D, phi)
                vr = validate(D, ideal)
                if not vr.ok:
                    out.append(Structure(phi, mats, False, False, None))
                    continue
                A = quotient_build(D, ideal)
                RA = inherited_rmatrix(D, A, R)
                rep = verify_triangular(A, RA, D, eng)
                out.append(
                    Structure(phi, mats, rep.triangular, rep.product_check, rep.pairing_check)
                )
            else:
                out.append(Structure(phi, mats, True, True, None))
    return out
