from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nichols_forge.abgroup import Bicharacter, GroupSpec
from nichols_forge.double import build, fl_setup
from nichols_forge.scalars import CyclotomicNumber, from_rational, root_of_unity
from nichols_forge.triangular import (
    NAIVE,
    Carrier,
    GelakiDatum,
    antipode,
    b_labels,
    build_HD,
    canonical_rmatrix,
    conjugation_identities,
    enumerate_structures,
    gram_matrix,
    h_labels,
    identity_coproduct_product,
    identity_inverse_antipode_groups,
    identity_inverse_antipode_product,
    inherited_rmatrix,
    minimality_check,
    nondegeneracy_equivalence,
    zeta_skew_criterion,
    validate_gelaki,
    verify_quasitriangular,
    verify_triangular,
)

AXIOMS = {"intertwines_coproduct", "left_hexagon", "right_hexagon", "yang_baxter"}


def sweedler_gelaki(sign: int = 1) -> GelakiDatum:
    Z2 = GroupSpec((2,))
    return GelakiDatum(Z2, Bicharacter(Z2, Z2, 2, [[1]]), [Carrier((1,), 1, [[from_rational(2, sign)]])])


def klein_gelaki(signs: dict) -> GelakiDatum:
    """G = (Z/2)^2 with a skew-symmetric nondegenerate tau0; carriers (1,0) and (1,1) allowed."""
    G = GroupSpec((2, 2))
    tau0 = Bicharacter(G, G, 2, [[1, 1], [1, 0]])
    return GelakiDatum(G, tau0, [Carrier(g, 1, [[from_rational(2, s)]]) for g, s in signs.items()])


@pytest.fixture(scope="module")
def sweedler_R(sweedler_engine):
    return canonical_rmatrix(sweedler_engine)


@pytest.fixture(scope="module")
def sweedler_hd():
    return build_HD(sweedler_gelaki())


def test_sweedler_rmatrix(sweedler_engine, sweedler_R):
    rep = verify_quasitriangular(sweedler_engine, sweedler_R)
    assert rep.ok and set(rep.results) == AXIOMS
    assert sweedler_engine.tensor_mul(sweedler_R.terms, sweedler_R.inverse) == sweedler_engine.tensor(
        sweedler_engine.one(), sweedler_engine.one()
    )
    tri = verify_triangular(sweedler_engine, sweedler_R)
    assert not tri.triangular and tri.product_witness is not None
    assert minimality_check(sweedler_engine, sweedler_R) == (True, 16)


def test_rank_one_fl_rmatrix(fl3_engine):
    R = canonical_rmatrix(fl3_engine)
    assert verify_quasitriangular(fl3_engine, R, qybe=False).ok
    assert minimality_check(fl3_engine, R) == (True, 81)


def test_naive_tau_dual_fails_intertwining(fl3_engine):
    R = canonical_rmatrix(fl3_engine, orientation=NAIVE)
    rep = verify_quasitriangular(fl3_engine, R, qybe=False)
    assert not rep.results["intertwines_coproduct"]
    assert "intertwines_coproduct" in rep.witnesses


def test_corrupted_rmatrix_fails(sweedler_engine, sweedler_R):
    terms = dict(sweedler_R.terms)
    key = sorted(terms, key=repr)[-1]
    terms[key] = terms[key] + CyclotomicNumber.one(2)
    rep = verify_quasitriangular(sweedler_engine, terms, qybe=False)
    assert not rep.results["left_hexagon"]
    assert rep.witnesses["left_hexagon"] is not None


def test_trivial_rmatrix_not_minimal(sweedler_engine):
    one = sweedler_engine.tensor(sweedler_engine.one(), sweedler_engine.one())
    ok, dim = minimality_check(sweedler_engine, one)
    assert not ok and dim == 1


def test_gram_degree_zero_is_character_table(sweedler, sweedler_engine, fl3, fl3_engine):
    for D, e in ((sweedler, sweedler_engine), (fl3, fl3_engine)):
        B, H, gram = gram_matrix(e)
        r = D.F.rank
        for a, b in enumerate(B):
            for c, h in enumerate(H):
                if not b[0] and not h[2]:
                    assert gram[a][c] == D.tau0(b[1][:r], h[1][r:])


def test_degree_zero_projection_is_not_identity(sweedler_engine, sweedler_R):
    e = sweedler_engine
    degree0 = {
        k: c
        for k, c in sweedler_R.terms.items()
        if not (k[0][0] or k[0][2] or k[1][0] or k[1][2])
    }
    assert degree0 and degree0 != e.tensor(e.one(), e.one())


def test_sweedler_gelaki(sweedler_hd):
    D, ideal, A = sweedler_hd
    assert validate_gelaki(sweedler_gelaki()).valid
    assert A.dimension == 4
    R = canonical_rmatrix(build(D))
    RA = inherited_rmatrix(D, A, R)
    assert verify_quasitriangular(A, RA).ok
    rep = verify_triangular(A, RA, D)
    assert rep.product_check and rep.pairing_check and rep.triangular
    assert zeta_skew_criterion(D, ideal)[0]
    assert minimality_check(A, RA) == (True, 4)


def test_gelaki_negatives():
    Z2 = GroupSpec((2,))
    bad_sign = GelakiDatum(
        Z2, Bicharacter(Z2, Z2, 2, [[0]]), [Carrier((1,), 1, [[from_rational(2, 1)]])]
    )
    items = {i["item"] for i in validate_gelaki(bad_sign).items}
    assert "carrier_sign" in items and "nondegenerate" in items
    G = GroupSpec((4, 4))
    tau0 = Bicharacter(G, G, 4, [[2, 1], [3, 0]])
    one, minus = from_rational(4, 1), from_rational(4, -1)
    good = GelakiDatum(G, tau0, [Carrier((1, 0), 1, [[one]]), Carrier((3, 0), 1, [[one]])])
    assert validate_gelaki(good).valid
    bad = GelakiDatum(G, tau0, [Carrier((1, 0), 1, [[one]]), Carrier((3, 0), 1, [[minus]])])
    rep = validate_gelaki(bad)
    assert not rep.valid and [i["item"] for i in rep.items] == ["transpose_symmetry"] * 2
    lonely = GelakiDatum(G, tau0, [Carrier((1, 0), 1, [[one]])])
    assert "multiplicity_symmetry" in {i["item"] for i in validate_gelaki(lonely).items}


def test_enumerate_sweedler_structures():
    found = enumerate_structures(sweedler_gelaki())
    assert len(found) == 2
    assert all(s.phi == ((1,),) and s.triangular and s.pairing_check for s in found)


def test_enumerate_klein_fixes_carriers():
    found = enumerate_structures(klein_gelaki({(1, 0): 1, (1, 1): 1}))
    assert len(found) == 4
    for s in found:
        assert s.phi == ((1, 0), (0, 1)) and s.triangular


@settings(max_examples=6, deadline=None)
@given(
    st.sets(st.sampled_from([(1, 0), (1, 1)]), min_size=1),
    st.lists(st.sampled_from([1, -1]), min_size=2, max_size=2),
)
def test_gelaki_quotients_are_triangular(carriers, signs):
    datum = klein_gelaki(dict(zip(sorted(carriers), signs)))
    assert validate_gelaki(datum).valid
    D, ideal, A = build_HD(datum, max_degree=4)
    assert A.dimension == 4 * 2 ** len(carriers)
    RA = inherited_rmatrix(D, A, canonical_rmatrix(build(D)))
    rep = verify_triangular(A, RA, D)
    assert rep.product_check and rep.pairing_check
    assert zeta_skew_criterion(D, ideal)[0]


ENGINES = [("A1", 3), ("A2", 3), ("A1xA1", 5)]


@pytest.mark.parametrize("name,l", ENGINES)
def test_skew_pairing_identities(name, l):
    D = fl_setup(name, l)
    e = build(D)
    rnd = random.Random(11)
    letters = range(D.size)
    for _ in range(20):
        m = rnd.randint(1, 4)
        k = rnd.randint(0, m)
        r = tuple(rnd.choice(letters) for _ in range(m))
        s = tuple(rnd.choice(letters) for _ in range(k))
        s2 = tuple(rnd.choice(letters) for _ in range(m - k))
        assert identity_coproduct_product(e, r, s, s2)
        assert identity_inverse_antipode_product(e, r[:k], r[k:], r)
        a = rnd.choice(list(D.F.elements()))
        x = rnd.choice(list(D.G.elements()))
        assert identity_inverse_antipode_groups(e, r, a, r, x)
    assert conjugation_identities(e)


def test_antipode_axiom(sweedler_engine, fl3_engine):
    for e in (sweedler_engine, fl3_engine):
        for label in e.basis():
            total = {}
            for (a, b), c in e.coproduct_label(label).items():
                prod = e.mul(antipode(e, {a: c}), {b: CyclotomicNumber.one(e.n)})
                total = e.add(total, prod)
            assert total == e.scale(e.counit({label: CyclotomicNumber.one(e.n)}), e.one())


@pytest.mark.parametrize("name,l", [("A1", 3), ("A2", 3), ("A1", 5), ("A1xA1", 3)])
def test_nondegeneracy_equivalence(name, l):
    e = build(fl_setup(name, l))
    rep = nondegeneracy_equivalence(e)
    assert rep.agree
    assert rep.nichols_part and rep.degree_one_and_nichols
    assert rep.group_part == ((name, l) != ("A2", 3))
    assert rep.full == rep.group_part


def test_b_and_h_labels_cover_halves(sweedler_engine):
    assert len(b_labels(sweedler_engine)) == len(h_labels(sweedler_engine)) == 4


def test_order_four_carriers_criterion_matches_triangularity():
    """Carriers g, g^-1 of order 4: M_(g^-1) = M_g is triangular, M_(g^-1) = -M_g is not."""
    G = GroupSpec((4, 4))
    tau0 = Bicharacter(G, G, 4, [[2, 1], [3, 0]])
    one, minus = from_rational(4, 1), from_rational(4, -1)
    R = None
    for partner, expected in ((one, True), (minus, False)):
        datum = GelakiDatum(G, tau0, [Carrier((1, 0), 1, [[one]]), Carrier((3, 0), 1, [[partner]])])
        assert validate_gelaki(datum).valid is expected
        D, ideal, A = build_HD(datum)
        assert A.dimension == 16 * 4
        e = build(D)
        R = R or canonical_rmatrix(e)
        rep = verify_triangular(A, inherited_rmatrix(D, A, R), D, e)
        assert rep.product_check is expected and rep.pairing_check is expected
        assert zeta_skew_criterion(D, ideal)[0] is expected
