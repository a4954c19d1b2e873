from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nichols_forge.abgroup import (
    Bicharacter,
    DoublePairing,
    GroupSpec,
    GroupTooLarge,
    Subgroup,
    all_subgroups,
    bichar_eval,
    closure,
    nondegenerate,
    orthogonal,
    quotient,
    split_mono_check,
    trivial_subgroup,
    whole_group,
)
from nichols_forge.scalars import root_of_unity

from oracles import generated_scan


def test_closure_examples():
    assert closure(GroupSpec((3, 3)), [(1, 1)]).order == 3
    assert closure(GroupSpec((2,)), []).elements == ((0,),)
    sub = closure(GroupSpec((4, 2)), [(2, 0), (0, 1)])
    assert sub.order == 4
    assert set(sub.elements) == generated_scan((4, 2), [(2, 0), (0, 1)])


def test_closure_bound(monkeypatch):
    monkeypatch.setenv("NICHOLS_FORGE_MAX_GROUP_ORDER", "10")
    with pytest.raises(GroupTooLarge, match="10"):
        closure(GroupSpec((4, 4)), [(1, 0)])


def test_quotient_examples():
    G = GroupSpec((2, 2))
    spec, proj = quotient(G, Subgroup(G, [(1, 1)]))
    assert spec.order == 2
    spec, proj = quotient(G, trivial_subgroup(G))
    assert spec.order == 4
    assert len({proj(x) for x in G.elements()}) == 4
    H = GroupSpec((3, 3))
    spec, proj = quotient(H, Subgroup(H, [(1, 2)]))
    assert spec.orders == (3,)


def test_subgroup_count():
    assert len(all_subgroups(GroupSpec((4, 2)))) == 8
    assert len(all_subgroups(GroupSpec((2, 2)))) == 5


def test_bichar_eval_examples():
    Z3 = GroupSpec((3,))
    t = Bicharacter(Z3, Z3, 3, [[-2]])
    assert bichar_eval(t, (0,), (1,)).is_one()
    assert bichar_eval(t, (1,), (1,)) == root_of_unity(3, 1)
    assert bichar_eval(t, (2,), (1,)) == bichar_eval(t, (1,), (1,)) ** 2


def test_bicharacter_well_definedness():
    Z2 = GroupSpec((2,))
    with pytest.raises(ValueError):
        Bicharacter(Z2, Z2, 3, [[1]])


def test_nondegenerate_examples():
    Z3 = GroupSpec((3,))
    assert nondegenerate(Bicharacter(Z3, Z3, 3, [[-2]]))
    A = GroupSpec((3, 3))
    res = nondegenerate(Bicharacter(A, A, 3, [[1, 1], [1, 1]]))
    assert not res
    assert res.left_witness is not None
    assert not nondegenerate(Bicharacter(A, A, 3, [[0, 0], [0, 0]]))


def test_orthogonal_examples():
    Z3 = GroupSpec((3,))
    pairing = DoublePairing(Bicharacter(Z3, Z3, 3, [[-2]]))
    G = pairing.group
    assert orthogonal(pairing, trivial_subgroup(G)) == whole_group(G)
    assert orthogonal(pairing, whole_group(G)).order == 1
    P = Subgroup(G, [(1, 1)])
    assert set(orthogonal(pairing, P).elements) == {(0, 0), (1, 2), (2, 1)}


def test_split_mono_examples():
    G = GroupSpec((4,))
    C = Subgroup(G, [])
    assert split_mono_check(C, GroupSpec((1,)), lambda c: (0,))
    whole = whole_group(G)
    res = split_mono_check(whole, G, lambda c: c)
    assert res and res.retraction == ((1,),)
    # Z/2 = {0, 2} in Z/4 is not a direct summand
    amb = GroupSpec((4,))
    C2 = Subgroup(amb, [(2,)])
    assert not split_mono_check(C2, GroupSpec((4,)), lambda c: c)


group_orders = st.lists(st.sampled_from([2, 3, 4, 6]), min_size=1, max_size=2)


@settings(max_examples=30, deadline=None)
@given(group_orders.flatmap(lambda o: st.tuples(st.just(tuple(o)), st.lists(st.tuples(*[st.integers(0, n - 1) for n in o]), max_size=3))))
def test_quotient_kernel_is_T(data):
    orders, gens = data
    G = GroupSpec(orders)
    T = Subgroup(G, gens)
    spec, proj = quotient(G, T)
    elems = set(generated_scan(orders, gens))
    assert {x for x in G.elements() if proj(x) == spec.identity} == elems
    assert len({proj(x) for x in G.elements()}) == spec.order


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 4), st.lists(st.integers(0, 3), min_size=2, max_size=2))
def test_orthogonal_sizes_and_double_perp(n, e, gen):
    G = GroupSpec((n,))
    if e % n == 0:
        e = 1
    t = Bicharacter(G, G, n, [[e]])
    if not nondegenerate(t):
        return
    pairing = DoublePairing(t)
    amb = pairing.group
    S = Subgroup(amb, [tuple(x % n for x in gen)])
    perp = orthogonal(pairing, S)
    assert S.order * perp.order == amb.order
    assert orthogonal(pairing, perp) == S
    bigger = S.join(Subgroup(amb, [(1, 0)]))
    assert orthogonal(pairing, bigger).is_subgroup_of(perp)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 2), (3,), (4, 2), (6,)]), st.data())
def test_bimultiplicative(orders, data):
    G = GroupSpec(orders)
    N = 12
    E = [[data.draw(st.integers(0, 11)) * (N // math.gcd(a, b)) % N for b in orders] for a in orders]
    t = Bicharacter(G, G, N, E)
    elems = list(G.elements())
    f1, f2, g = (data.draw(st.sampled_from(elems)) for _ in range(3))
    assert t(G.add(f1, f2), g) == t(f1, g) * t(f2, g)
    assert t(g, G.add(f1, f2)) == t(g, f1) * t(g, f2)
