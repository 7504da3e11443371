import pytest

from udbound.errors import ResourceLimitError
from udbound.search import (
    BruteLimits,
    brute_force_ud,
    exponent_vectors,
    ud_lower_bound,
)
from udbound.testing import assert_unimodular


def test_exponent_vectors_order():
    assert list(exponent_vectors(2, 2)) == [(2, 0), (1, 1), (0, 2)]


def test_exponent_vectors_count():
    assert len(list(exponent_vectors(4, 3))) == 15
    assert list(exponent_vectors(0, 3)) == [(0, 0, 0)]


@pytest.mark.parametrize(("text", "ud"), [("A1", 1), ("A2", 3), ("C2", 4), ("G2", 3)])
def test_brute_force(context, text: str, ud: int):
    diagram, ctx = context(text)
    result = brute_force_ud(ctx, diagram)
    assert result.ud == ud
    assert result.checked > 0
    assert_unimodular(ctx, result.witness)


def test_brute_force_c3(context):
    diagram, ctx = context("C3")
    result = brute_force_ud(ctx, diagram)
    assert result.ud == 9
    assert result.witness.degree == 9


@pytest.mark.parametrize("text", ["A3", "B3"])
def test_chain_method_is_a_lower_bound(context, text: str):
    diagram, ctx = context(text)
    result = brute_force_ud(ctx, diagram)
    assert ud_lower_bound(ctx, diagram).bound <= result.ud


def test_brute_force_max_degree(context):
    diagram, ctx = context("A2")
    result = brute_force_ud(ctx, diagram, BruteLimits(max_degree=2))
    assert result.ud == 2


def test_brute_force_cap(context):
    diagram, ctx = context("C3")
    with pytest.raises(ResourceLimitError, match="Weyl group order"):
        brute_force_ud(ctx, diagram, BruteLimits(group_cap=10))
