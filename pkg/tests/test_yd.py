from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from nichols_forge.abgroup import Bicharacter, GroupSpec
from nichols_forge.double import fl_setup
from nichols_forge.scalars import root_of_unity
from nichols_forge.yd import (
    Character,
    DoubleDatum,
    YDDatum,
    adjacency_and_connectivity,
    braiding,
    commutant,
    pair_symmetric,
    rank_one_shape,
)

from oracles import rank_one_dims


def single(n: int, e: int) -> YDDatum:
    """One entry over Z/n with chi(g) = zeta_n^e."""
    grp = GroupSpec((n,))
    return YDDatum(grp, n, ((Character(grp, n, (e,)), (1,)),))


def test_braiding_single_minus_one():
    assert braiding(single(2, 1)) == [[root_of_unity(2, 1)]]
    assert braiding(single(2, 1))[0][0] == -root_of_unity(2, 0)


def test_braiding_trivial_characters():
    grp = GroupSpec((3, 3))
    chi = Character(grp, 3, (0, 0))
    V = YDDatum(grp, 3, ((chi, (1, 0)), (chi, (0, 1))))
    assert all(q.is_one() for row in braiding(V) for q in row)


def test_braiding_fl_a2():
    D = fl_setup("A2", 3)
    A = [[2, -1], [-1, 2]]
    q = braiding(D.v_yd())
    for i in range(2):
        for j in range(2):
            assert q[i][j] == root_of_unity(3, -A[i][j])


def test_commutant_examples():
    assert commutant(single(4, 1)) == []
    assert commutant(single(2, 1)) == [0]
    grp = GroupSpec((3,))
    chi = Character(grp, 3, (0,))
    V = YDDatum(grp, 3, ((chi, (1,)), (chi, (2,))))
    assert commutant(V) == [0, 1]


def test_pair_symmetric_examples():
    grp = GroupSpec((3,))
    triv = YDDatum(grp, 3, ((Character(grp, 3, (0,)), (1,)),))
    assert pair_symmetric(triv, triv)
    assert pair_symmetric(single(2, 1), single(2, 1))
    assert not pair_symmetric(single(3, 1), single(3, 1))


def test_adjacency_examples():
    rep = adjacency_and_connectivity(fl_setup("A2", 3))
    assert rep.edges == [(0, 1)] and rep.connected and rep.dichotomy_hypothesis
    rep = adjacency_and_connectivity(fl_setup("A1xA1", 3))
    assert rep.edges == [] and not rep.connected
    rep = adjacency_and_connectivity(fl_setup("A1", 3))
    assert rep.single_index_condition is True
    grp = GroupSpec((2,))
    sw = DoubleDatum(grp, grp, Bicharacter(grp, grp, 2, [[1]]), [((1,), (1,))])
    assert adjacency_and_connectivity(sw).single_index_condition is False


def test_rank_one_shape():
    grp = GroupSpec((10,))
    assert rank_one_shape(Character(grp, 10, (0,)), (1,)) == "polynomial"
    assert rank_one_shape(Character(grp, 10, (5,)), (1,)) == "truncated_at_2"
    assert rank_one_dims(5, 10) == [1, 1, 0]
    assert rank_one_shape(Character(grp, 10, (2,)), (1,)) == "other"
    assert len(rank_one_dims(2, 10)) - 1 == 5


@st.composite
def double_data(draw):
    n = draw(st.sampled_from([2, 3, 4, 6]))
    rank = draw(st.integers(1, 2))
    grp = GroupSpec((n,) * rank)
    E = [[draw(st.integers(0, n - 1)) for _ in range(rank)] for _ in range(rank)]
    size = draw(st.integers(1, 3))
    elems = list(grp.elements())
    index = [(draw(st.sampled_from(elems)), draw(st.sampled_from(elems))) for _ in range(size)]
    return DoubleDatum(grp, grp, Bicharacter(grp, grp, n, E), index)


@settings(max_examples=60, deadline=None)
@given(double_data())
def test_commutant_by_definition(D):
    V = D.v_yd()
    q = braiding(V)
    inside = commutant(V)
    for i in range(len(V)):
        ok = all((q[i][j] * q[j][i]).is_one() for j in range(len(V)))
        assert ok == (i in inside)


@settings(max_examples=60, deadline=None)
@given(double_data())
def test_connected_means_empty_commutant(D):
    rep = adjacency_and_connectivity(D)
    if D.size > 1 and rep.connected:
        assert commutant(D.v_yd()) == []


@settings(max_examples=60, deadline=None)
@given(double_data())
def test_double_halves_braid_inversely(D):
    V, W = D.v_yd(), D.w_yd()
    qV, qW = braiding(V), braiding(W)
    for i in range(D.size):
        for j in range(D.size):
            assert qV[i][j] == D.tau0(D.f(i), D.g(j))
            assert qW[i][j] * D.tau0(D.f(j), D.g(i)) == root_of_unity(D.n, 0)
    assert pair_symmetric(V, W)
