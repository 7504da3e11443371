from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from udbound.demazure import (
    OperatorContext,
    apply_word,
    ddiff,
    ddiff_by_division,
    reflect,
)
from udbound.polynomial import format_polynomial, parse
from udbound.testing import assert_operators_agree, random_polynomial

if TYPE_CHECKING:
    import random


def test_alpha_and_y(context):
    _, ctx = context("A2")
    x1, x2 = ctx.x
    assert ctx.alpha == (2 * x1 - x2, -x1 + 2 * x2)
    assert ctx.y == (-x1 + x2, x1 - x2)


def test_reflect_is_involution(context, rng: random.Random):
    _, ctx = context("B3")
    for _ in range(20):
        p = random_polynomial(rng, ctx.ring)
        for i in range(1, 4):
            assert reflect(ctx, i, reflect(ctx, i, p)) == p


def test_reflect_fixes_other_weights(context):
    _, ctx = context("G2")
    assert reflect(ctx, 1, ctx.x[1]) == ctx.x[1]
    assert reflect(ctx, 1, ctx.alpha[0]) == -ctx.alpha[0]


@pytest.mark.parametrize("i", [0, 3])
def test_index_out_of_range(context, i: int):
    _, ctx = context("A2")
    with pytest.raises(ValueError, match="out of range"):
        ddiff(ctx, i, ctx.x[0])


def test_ddiff_of_weight(context):
    _, ctx = context("A2")
    assert ddiff(ctx, 1, ctx.x[0]) == 1
    assert ddiff(ctx, 2, ctx.x[0]) == 0


def test_ddiff_constant_is_zero(context):
    _, ctx = context("C2")
    assert ddiff(ctx, 1, ctx.ring.one * 5) == 0


def test_ddiff_square_type_a(context):
    _, ctx = context("A2")
    x1, x2 = ctx.x
    assert ddiff(ctx, 1, x1**2) == x2


def test_power_sum_closed_form(context):
    _, ctx = context("C3")
    x, y = ctx.x[1], ctx.y[1]
    expected = x**2 + x * y + y**2
    assert ctx.power_sum(2, 3) == expected
    assert ddiff(ctx, 2, x**3) == expected


@pytest.mark.parametrize("text", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_closed_form_matches_division(context, rng: random.Random, text: str):
    diagram, ctx = context(text)
    for _ in range(25):
        p = random_polynomial(rng, ctx.ring)
        for i in diagram.vertices:
            assert ddiff(ctx, i, p) == ddiff_by_division(ctx, i, p)


def test_apply_word_rightmost_first(context):
    _, ctx = context("A2")
    p = parse("x1^2", 2)
    assert apply_word(ctx, (2, 1), p) == 1
    assert apply_word(ctx, (1, 2), p) == 0


def test_apply_word_checks_every_index(context):
    _, ctx = context("A2")
    with pytest.raises(ValueError, match="out of range"):
        apply_word(ctx, (1, 5), ctx.ring.zero)


def test_apply_empty_word(context):
    _, ctx = context("A2")
    p = parse("x1 + 3", 2)
    assert apply_word(ctx, (), p) == p


def test_braid_relation_b2(context):
    _, ctx = context("B2")
    p = parse("x1^3*x2 + x2^4 - 2*x1^2*x2^2", 2)
    assert_operators_agree(ctx, (1, 2, 1, 2), (2, 1, 2, 1), p)


def test_braid_relation_g2(context):
    _, ctx = context("G2")
    p = parse("x1^5*x2^2 + x2^7", 2)
    assert_operators_agree(ctx, (1, 2, 1, 2, 1, 2), (2, 1, 2, 1, 2, 1), p)


def test_operators_disagree_raises(context):
    _, ctx = context("A2")
    with pytest.raises(AssertionError, match="differ"):
        assert_operators_agree(ctx, (1,), (2,), ctx.x[0])


def test_context_is_hashable(context):
    _, ctx = context("A1")
    assert hash(ctx) == hash(OperatorContext(ctx.cartan))
    assert format_polynomial(ctx.y[0]) == "-x1"


def test_schubert_expand_degree_one(context):
    from udbound.demazure import schubert_expand
    from udbound.weyl import elements_of_length

    _, ctx = context("A2")
    coefficients = schubert_expand(ctx, ctx.x[0], elements_of_length(ctx, 1))
    assert {w.word: c for w, c in coefficients.items()} == {(1,): 1, (2,): 0}


def test_schubert_expand_longest_element(context):
    from udbound.demazure import schubert_expand
    from udbound.weyl import elements_of_length

    _, ctx = context("A2")
    p = parse("x1^2*x2", 2)
    coefficients = schubert_expand(ctx, p, elements_of_length(ctx, 3))
    assert list(coefficients.values()) == [1]


def test_schubert_expand_errors(context):
    from udbound.demazure import schubert_expand
    from udbound.weyl import elements_of_length

    _, ctx = context("A2")
    with pytest.raises(ValueError, match="homogeneous"):
        schubert_expand(ctx, parse("x1 + 1", 2), [])

    with pytest.raises(ValueError, match="length"):
        schubert_expand(ctx, ctx.x[0], elements_of_length(ctx, 2))


@pytest.mark.parametrize("poly", ["x1*x2", "x1*x3", "x2*x3", "x1*x2*x3"])
def test_schubert_expand_distinct_weights(context, poly: str):
    from udbound.demazure import schubert_expand
    from udbound.weyl import elements_of_length

    _, ctx = context("C3")
    p = parse(poly, 3)
    indices = sorted(int(v[1:]) for v in poly.split("*"))
    coefficients = schubert_expand(ctx, p, elements_of_length(ctx, len(indices)))
    assert all(c >= 0 for c in coefficients.values())

    for w, c in coefficients.items():
        if sorted(w.word) == indices:
            assert c == 1
        assert c == apply_word(ctx, w.word, p)


@pytest.mark.parametrize("text", ["A2", "B2", "G2", "C3"])
def test_ddiff_product_rule(context, rng: random.Random, text: str):
    _, ctx = context(text)
    for _ in range(30):
        p = random_polynomial(rng, ctx.ring, max_degree=4)
        q = random_polynomial(rng, ctx.ring, max_degree=4)
        for i in range(1, ctx.n + 1):
            expected = ddiff(ctx, i, p) * q + reflect(ctx, i, p) * ddiff(ctx, i, q)
            assert ddiff(ctx, i, p * q) == expected
