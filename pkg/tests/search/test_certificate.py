import pytest

from udbound.errors import CertificateError
from udbound.search import (
    Certificate,
    Step,
    StepKind,
    combine,
    verify_certificate,
)
from udbound.testing import assert_unimodular


def test_step_one_chain():
    step = Step(StepKind.ONE_CHAIN, (1, 2, 3))
    assert step.target == 3
    assert step.exponent == 3
    assert step.word == (1, 2, 3)


def test_step_c_type():
    step = Step(StepKind.C_TYPE, (1, 2, 3))
    assert step.target == 1
    assert step.exponent == 5
    assert step.word == (1, 2, 3, 2, 1)


def test_step_relabel():
    step = Step(StepKind.ONE_CHAIN, (1, 2)).relabel((4, 6))
    assert step.path == (4, 6)


def test_from_steps_word_order():
    steps = [Step(StepKind.ONE_CHAIN, (2,)), Step(StepKind.C_TYPE, (1, 2))]
    cert = Certificate.from_steps(2, steps)
    assert cert.monomial == (3, 1)
    assert cert.word == (1, 2, 1, 2)
    assert cert.degree == 4
    assert cert.n == 2


def test_factors_and_describe():
    cert = Certificate((3, 0, 1), (1, 2, 1, 3))
    assert cert.factors() == [[1, 3], [3, 1]]
    assert cert.describe() == "x1^3*x3"


def test_degree_mismatch():
    with pytest.raises(CertificateError, match="differs from word length"):
        Certificate((1, 1), (1,))


def test_negative_exponent():
    with pytest.raises(CertificateError, match="Negative"):
        Certificate((2, -1), (1,))


def test_steps_must_assemble_word():
    steps = (Step(StepKind.ONE_CHAIN, (1, 2)),)
    with pytest.raises(CertificateError, match="assemble"):
        Certificate((0, 2), (2, 1), steps)


def test_steps_must_give_monomial():
    steps = (Step(StepKind.ONE_CHAIN, (1, 2)),)
    with pytest.raises(CertificateError, match="multiply"):
        Certificate((2, 0), (1, 2), steps)


def test_combine_disjoint():
    first = Certificate((1, 0), (1,))
    second = Certificate((0, 1), (2,))
    cert = combine([first, second], 2)
    assert cert.monomial == (1, 1)
    assert cert.word == (2, 1)
    assert cert.steps == ()


def test_combine_keeps_steps():
    first = Certificate.from_steps(2, [Step(StepKind.ONE_CHAIN, (1,))])
    second = Certificate.from_steps(2, [Step(StepKind.ONE_CHAIN, (2,))])
    cert = combine([first, second], 2)
    assert [s.target for s in cert.steps] == [1, 2]
    assert cert.word == (2, 1)


def test_relabel():
    cert = Certificate.from_steps(2, [Step(StepKind.ONE_CHAIN, (1, 2))])
    moved = cert.relabel((3, 1), 3)
    assert moved.monomial == (2, 0, 0)
    assert moved.word == (3, 1)
    assert moved.steps[0].path == (3, 1)


def test_verify_valid_with_trace(context):
    _, ctx = context("C2")
    steps = [Step(StepKind.ONE_CHAIN, (2,)), Step(StepKind.C_TYPE, (1, 2))]
    cert = Certificate.from_steps(2, steps)
    verification = verify_certificate(ctx, cert)
    assert verification.valid
    assert verification.result == 1
    assert [e.letters for e in verification.trace] == [(2,), (1, 2, 1)]
    assert all(e.stripped for e in verification.trace)
    assert_unimodular(ctx, cert)


def test_verify_without_steps_traces_letters(context):
    _, ctx = context("A2")
    cert = Certificate((2, 0), (2, 1))
    verification = verify_certificate(ctx, cert)
    assert verification.valid
    assert [e.letters for e in verification.trace] == [(1,), (2,)]


def test_verify_invalid(context):
    _, ctx = context("C3")
    cert = Certificate((0, 0, 1), (2,))
    verification = verify_certificate(ctx, cert)
    assert not verification.valid
    assert verification.result == 0


def test_verify_wrong_rank(context):
    _, ctx = context("A3")
    with pytest.raises(CertificateError, match="variables"):
        verify_certificate(ctx, Certificate((1, 0), (1,)))


def test_assert_unimodular_raises(context):
    _, ctx = context("A2")
    with pytest.raises(AssertionError, match="not 1"):
        assert_unimodular(ctx, Certificate((2, 0), (1, 2)))
