from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from nichols_forge.abgroup import Bicharacter, GroupSpec, Subgroup, trivial_subgroup
from nichols_forge.double import build, central_grouplikes, fl_setup
from nichols_forge.ideals import (
    COORDINATE,
    SKINNY,
    ThinIdealDatum,
    dichotomy_report,
    enumerate_thin,
    grading_check,
    ideal_generators_vanish,
    index_set_T,
    project_element,
    project_to_quotient,
    quotient_build,
    outside_family_fixture,
    thinness_check,
    validate,
)
from nichols_forge.scalars import CyclotomicNumber, from_rational
from nichols_forge.yd import DoubleDatum, commutant

from conftest import rank_one_datum


def full_sweedler_ideal(D, c=1):
    C = central_grouplikes(D).C
    return ThinIdealDatum(C, [({0: from_rational(D.n, 1)}, {0: from_rational(D.n, c)})])


def test_validate_examples(sweedler, fl3):
    assert validate(sweedler, ThinIdealDatum(trivial_subgroup(sweedler.gamma))).ok
    assert validate(fl3, ThinIdealDatum(central_grouplikes(fl3).C)).ok
    assert validate(sweedler, full_sweedler_ideal(sweedler)).ok


def test_validate_rejects(sweedler, fl3):
    # (1, 0) is not central in the Sweedler double
    rep = validate(sweedler, ThinIdealDatum(Subgroup(sweedler.gamma, [(1, 0)])))
    assert not rep.ok and rep.violations[0]["item"] == "T_central"
    # v_0 outside V_T when T is trivial
    rep = validate(sweedler, ThinIdealDatum(trivial_subgroup(sweedler.gamma), full_sweedler_ideal(sweedler).pairs))
    assert not rep.ok and {v["item"] for v in rep.violations} >= {"Z"}
    # zeta must not vanish
    bad = ThinIdealDatum(central_grouplikes(sweedler).C, [({0: from_rational(2, 1)}, {})])
    assert not validate(sweedler, bad).ok


def test_validate_warns_on_trivial_character():
    D = rank_one_datum(3, 0, max_degree=3)
    rep = validate(D, ThinIdealDatum(trivial_subgroup(D.gamma)))
    assert rep.ok and rep.warnings


def test_quotient_dimensions(sweedler, fl3, fl3_engine):
    A = quotient_build(sweedler, full_sweedler_ideal(sweedler))
    assert A.gamma.order == 2 and A.dim_U == 1 and A.dimension == 4
    A = quotient_build(fl3, ThinIdealDatum(central_grouplikes(fl3).C))
    assert A.dimension == 27
    A = quotient_build(fl3, ThinIdealDatum(trivial_subgroup(fl3.gamma)))
    assert A.dimension == fl3_engine.dimension == 81


def test_trivial_quotient_is_identity(fl3, fl3_engine):
    A = quotient_build(fl3, ThinIdealDatum(trivial_subgroup(fl3.gamma)))
    for label in fl3_engine.basis():
        assert project_to_quotient(fl3, A, label) == {label: CyclotomicNumber.one(3)}


def test_grading(sweedler, fl3):
    A = quotient_build(sweedler, full_sweedler_ideal(sweedler))
    g = grading_check(A)
    assert g.ok and (g.degree0, g.degree1) == (2, 2)
    A = quotient_build(fl3, ThinIdealDatum(central_grouplikes(fl3).C))
    g = grading_check(A)
    assert g.ok and (g.degree0, g.degree1) == (3, 6)


def test_enumerate_sweedler(sweedler):
    skinny = enumerate_thin(sweedler, SKINNY)
    assert sorted(d.T.order for d in skinny) == [1, 2]
    fam = enumerate_thin(sweedler, COORDINATE)
    extra = [d for d in fam if not d.skinny]
    assert len(extra) == 2
    assert {str(d.pairs[0][1][0]) for d in extra} == {"1", "-1"}
    assert all(d.T.order == 2 for d in extra)


def test_enumerate_connected_a2():
    D = fl_setup("A2", 5)
    fam = enumerate_thin(D, COORDINATE)
    assert all(d.skinny for d in fam)
    C = central_grouplikes(D).C
    assert all(d.T.is_subgroup_of(C) for d in fam)


def test_dichotomy_examples(fl3):
    rep = dichotomy_report(fl3)
    assert rep.branch == "single_index" and rep.certified and rep.non_skinny_count == 0
    rep = dichotomy_report(fl_setup("A1xA1", 3))
    assert not rep.applicable and not rep.certified
    rep = dichotomy_report(fl_setup("A2", 5))
    assert rep.branch == "connected" and rep.certified


def test_dichotomy_sweedler_inapplicable(sweedler):
    rep = dichotomy_report(sweedler)
    assert not rep.applicable


def test_thin_ideal_outside_family():
    D, ideal, rep = outside_family_fixture()
    assert all(rep.conditions.values())
    assert rep.relations_respected and rep.generators_vanish
    assert rep.thin == {"V": True, "W": True}
    assert rep.v_image_in_group_algebra and rep.spanning_set_independent
    assert rep.family_scan and not rep.family_reproduces


def test_projection_is_multiplicative(sweedler, sweedler_engine):
    e = sweedler_engine
    for datum in enumerate_thin(sweedler, COORDINATE):
        A = quotient_build(sweedler, datum)
        for a in e.basis():
            for b in e.basis():
                prod = e.mul({a: CyclotomicNumber.one(2)}, {b: CyclotomicNumber.one(2)})
                lhs = project_element(sweedler, A, prod)
                rhs = A.mul(project_to_quotient(sweedler, A, a), project_to_quotient(sweedler, A, b))
                assert lhs == rhs


@st.composite
def finite_data(draw):
    n = draw(st.sampled_from([2, 3, 4, 6]))
    grp = GroupSpec((n,))
    e = draw(st.integers(1, n - 1))
    size = draw(st.integers(1, 2))
    index = [((draw(st.integers(0, n - 1)),), (draw(st.integers(0, n - 1)),)) for _ in range(size)]
    D = DoubleDatum(grp, grp, Bicharacter(grp, grp, n, [[e]]), index, 6)
    return D


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(finite_data())
def test_enumerated_data_are_valid(D):
    P = D.q_exponents()
    if any(P[i][i] % D.n == 0 for i in range(D.size)):
        return
    IC = set(commutant(D.v_yd()))
    rnd = random.Random(0)
    eng = build(D)
    if not eng.finite:
        return
    basis = eng.basis()
    for datum in enumerate_thin(D, COORDINATE):
        assert validate(D, datum).ok
        assert set(index_set_T(D, datum.T)) <= IC
        A = quotient_build(D, datum)
        assert ideal_generators_vanish(D, A)
        assert grading_check(A).ok
        assert A.gamma.order * datum.T.order == D.gamma.order
        if datum.skinny:
            assert thinness_check(D, A) == {"V": True, "W": True}
        for _ in range(10):
            a, b = rnd.choice(basis), rnd.choice(basis)
            prod = eng.mul({a: CyclotomicNumber.one(D.n)}, {b: CyclotomicNumber.one(D.n)})
            assert project_element(D, A, prod) == A.mul(
                project_to_quotient(D, A, a), project_to_quotient(D, A, b)
            )
