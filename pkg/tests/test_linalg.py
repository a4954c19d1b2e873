from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from nichols_forge.linalg import SparseEchelon, determinant_int, identity, inverse, matmul, nullspace, rank
from nichols_forge.scalars import from_rational, root_of_unity

N = 3


def mat(rows):
    return [[root_of_unity(N, e) if e is not None else from_rational(N, 0) for e in r] for r in rows]


def test_rank_and_inverse():
    m = mat([[0, 1], [1, 0]])
    assert rank(m, N) == 2
    assert matmul(m, inverse(m, N), N) == identity(2, N)
    singular = mat([[0, 0], [1, 1]])
    assert rank(singular, N) == 1


def test_nullspace():
    m = mat([[0, 0]])
    (v,) = nullspace(m, 2, N)
    assert (v[0] + v[1]).is_zero()


def test_determinant_int():
    assert determinant_int([[2, -1], [-1, 2]]) == 3
    assert determinant_int([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]) == 4


def test_sparse_echelon_dependencies():
    ech = SparseEchelon(N)
    one = from_rational(N, 1)
    assert ech.insert("a", {0: one}) is None
    assert ech.insert("b", {1: one}) is None
    combo = ech.insert("c", {0: 2 * one, 1: -one})
    assert combo == {"a": 2 * one, "b": -one}
    assert ech.rank == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.one_of(st.none(), st.integers(0, 2)), min_size=3, max_size=3), min_size=3, max_size=3))
def test_rank_matches_nullspace(rows):
    m = mat(rows)
    assert rank(m, N) + len(nullspace(m, 3, N)) == 3
