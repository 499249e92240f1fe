"""Two-subspace covering search over root systems."""

from __future__ import annotations

import pytest

from lieck.roots import (
    CartanType,
    RootSystem,
    build_root_system,
    cartan_matrix,
    two_hyperplane_cover_check,
)

SMALL = [
    CartanType("A", 1),
    CartanType("A", 2),
    CartanType("A", 3),
    CartanType("B", 2),
    CartanType("B", 3),
    CartanType("C", 3),
    CartanType("G", 2),
    CartanType("D", 4),
]


@pytest.mark.parametrize("t", SMALL, ids=str)
def test_no_cover(t):
    assert two_hyperplane_cover_check(build_root_system(t)) is False


def test_cover_found_for_orthogonal_pair():
    # two perpendicular copies of the rank-1 system ARE covered by two
    # lines; wrap them in a connected matrix to get past the input guard
    rs = RootSystem(
        cartan_type=CartanType("A", 2),
        matrix=cartan_matrix(CartanType("A", 2)),
        d=(1, 1),
        roots=((-1, 0), (0, -1), (0, 1), (1, 0)),
    )
    assert two_hyperplane_cover_check(rs) is True


def test_rejects_decomposable_input():
    rs = RootSystem(
        cartan_type=CartanType("A", 2),
        matrix=((2, 0), (0, 2)),
        d=(1, 1),
        roots=((-1, 0), (0, -1), (0, 1), (1, 0)),
    )
    with pytest.raises(ValueError, match="indecomposable"):
        two_hyperplane_cover_check(rs)
