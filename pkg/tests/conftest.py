from __future__ import annotations

import pytest

from nichols_forge.abgroup import Bicharacter, GroupSpec
from nichols_forge.double import build, fl_setup
from nichols_forge.yd import DoubleDatum


def sweedler_datum(max_degree: int = 12) -> DoubleDatum:
    Z2 = GroupSpec((2,))
    return DoubleDatum(Z2, Z2, Bicharacter(Z2, Z2, 2, [[1]]), [((1,), (1,))], max_degree)


def rank_one_datum(n: int, e: int, order: int | None = None, max_degree: int = 12) -> DoubleDatum:
    """F = G = Z/order, tau0(K, K) = zeta_n^e, one index (K, K)."""
    grp = GroupSpec((order or n,))
    return DoubleDatum(grp, grp, Bicharacter(grp, grp, n, [[e]]), [((1,), (1,))], max_degree)


@pytest.fixture(scope="session")
def sweedler():
    return sweedler_datum()


@pytest.fixture(scope="session")
def sweedler_engine(sweedler):
    return build(sweedler)


@pytest.fixture(scope="session")
def fl3():
    return fl_setup("A1", 3)


@pytest.fixture(scope="session")
def fl3_engine(fl3):
    return build(fl3)
