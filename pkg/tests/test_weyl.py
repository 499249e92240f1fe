"""Weyl dimension formula against independent combinatorial oracles."""

from __future__ import annotations

from math import comb

import pytest

from lieck.roots import (
    CartanType,
    build_root_system,
    cartan_matrix,
    fundamental_dim_check,
    highest_root,
    weyl_dim,
)

CLASSICAL = (
    [CartanType("A", l) for l in range(1, 9)]
    + [CartanType("B", l) for l in range(2, 9)]
    + [CartanType("C", l) for l in range(2, 9)]
    + [CartanType("D", l) for l in range(3, 9)]
)


def _fundamental(t, r):
    return [1 if i == r - 1 else 0 for i in range(t.rank)]


def test_trivial_weight():
    for t in (CartanType("A", 3), CartanType("G", 2), CartanType("E", 6)):
        assert weyl_dim(t, [0] * t.rank) == 1


@pytest.mark.parametrize(
    "t", CLASSICAL + [CartanType("G", 2), CartanType("F", 4), CartanType("E", 6)], ids=str
)
def test_adjoint_dimension(t):
    # the highest root, rewritten in fundamental-weight coordinates, must
    # give the algebra dimension: root count plus rank
    rs = build_root_system(t)
    theta = highest_root(rs)
    A = cartan_matrix(t)
    coords = [sum(theta[i] * A[i][j] for i in range(t.rank)) for j in range(t.rank)]
    assert weyl_dim(t, coords) == len(rs.roots) + t.rank


def test_defining_modules():
    assert weyl_dim(CartanType("A", 4), _fundamental(CartanType("A", 4), 1)) == 5
    assert weyl_dim(CartanType("B", 4), _fundamental(CartanType("B", 4), 1)) == 9
    assert weyl_dim(CartanType("C", 4), _fundamental(CartanType("C", 4), 1)) == 8
    assert weyl_dim(CartanType("D", 4), _fundamental(CartanType("D", 4), 1)) == 8


@pytest.mark.parametrize("l", range(1, 9))
def test_exterior_powers(l):
    t = CartanType("A", l)
    for r in range(1, l + 1):
        assert weyl_dim(t, _fundamental(t, r)) == comb(l + 1, r)


@pytest.mark.parametrize("l", range(2, 9))
def test_symplectic_fundamentals(l):
    t = CartanType("C", l)
    for r in range(1, l + 1):
        expected = comb(2 * l, r) - (comb(2 * l, r - 2) if r >= 2 else 0)
        assert weyl_dim(t, _fundamental(t, r)) == expected


@pytest.mark.parametrize("l", range(2, 9))
def test_spin_dimensions(l):
    b = CartanType("B", l)
    assert weyl_dim(b, _fundamental(b, l)) == 2**l
    if l >= 3:
        d = CartanType("D", l)
        assert weyl_dim(d, _fundamental(d, l)) == 2 ** (l - 1)
        assert weyl_dim(d, _fundamental(d, l - 1)) == 2 ** (l - 1)


def test_small_exceptional_fundamentals():
    assert weyl_dim(CartanType("G", 2), [1, 0]) == 7
    assert weyl_dim(CartanType("G", 2), [0, 1]) == 14
    assert weyl_dim(CartanType("F", 4), [0, 0, 0, 1]) == 26
    assert weyl_dim(CartanType("E", 6), [1, 0, 0, 0, 0, 0]) == 27


def test_weight_validation():
    t = CartanType("B", 3)
    with pytest.raises(ValueError, match="length"):
        weyl_dim(t, [1, 0])
    with pytest.raises(ValueError, match="nonnegative"):
        weyl_dim(t, [1, 0, -1])


@pytest.mark.parametrize("t", CLASSICAL, ids=str)
def test_closed_forms_match(t):
    report = fundamental_dim_check(t)
    assert report["all_match"]
    assert len(report["entries"]) == t.rank


def test_closed_forms_classical_only():
    with pytest.raises(ValueError):
        fundamental_dim_check(CartanType("G", 2))
