import math

import numpy as np
import pytest

from opineq.errors import DomainError
from opineq.funcs import (
    NEITHER,
    OPERATOR_CONCAVE,
    OPERATOR_CONVEX,
    classify,
    evaluate,
    evaluate_derivative,
    inverse,
    log,
    negate,
    parse_function,
    power,
    square,
    xlogx,
)
from opineq.matcore import apply_fn, loewner_leq

from conftest import random_spd

CATALOGUE = [power(1.5), power(-0.5), power(0.5), power(0.0), power(1.0), power(3.0),
             inverse(), square(), log(), xlogx(), negate(log()), negate(xlogx())]


def test_eval_examples():
    assert evaluate(power(2), 3.0) == 9.0
    assert evaluate(log(), 1.0) == 0.0
    assert evaluate(xlogx(), math.e) == pytest.approx(math.e, rel=1e-15)
    assert evaluate(power(1), 0.37) == 0.37
    assert evaluate(power(0), 5.0) == 1.0
    with pytest.raises(DomainError):
        evaluate(log(), -1.0)
    with pytest.raises(DomainError):
        evaluate(inverse(), 0.0)


def test_derivative_examples():
    assert evaluate_derivative(power(2), 3.0) == 6.0
    assert evaluate_derivative(log(), 2.0) == 0.5
    assert evaluate_derivative(power(-1), 2.0) == -0.25
    assert evaluate_derivative(xlogx(), 1.0) == 1.0


def test_classify_examples():
    assert classify(power(1.5)) == OPERATOR_CONVEX
    assert classify(power(0.5)) == OPERATOR_CONCAVE
    assert classify(power(3)) == NEITHER
    assert classify(power(-2)) == NEITHER
    assert classify(log()) == OPERATOR_CONCAVE
    assert classify(xlogx()) == OPERATOR_CONVEX
    assert classify(inverse()) == OPERATOR_CONVEX


@pytest.mark.parametrize("f", CATALOGUE, ids=str)
def test_negation_flips_class(f):
    flipped = {OPERATOR_CONVEX: OPERATOR_CONCAVE, OPERATOR_CONCAVE: OPERATOR_CONVEX,
               NEITHER: NEITHER}
    assert classify(negate(f)) == flipped[classify(f)]
    assert negate(negate(f)) == f


def test_aliases_agree_with_power():
    t = np.linspace(0.1, 5.0, 50)
    assert np.array_equal(inverse()(t), power(-1)(t))
    assert np.array_equal(square()(t), power(2)(t))
    assert np.array_equal(inverse().derivative(t), power(-1).derivative(t))
    assert inverse() == power(-1) and square() == power(2)


@pytest.mark.parametrize("f", CATALOGUE, ids=str)
def test_derivative_matches_central_difference(rng, f):
    for t in rng.uniform(0.2, 5.0, size=20):
        h = 1e-6 * (1 + abs(t))
        fd = (f(t + h) - f(t - h)) / (2 * h)
        d = f.derivative(t)
        assert abs(fd - d) <= 1e-6 * max(1.0, abs(d))


@pytest.mark.parametrize("text", ["power:1.5", "log", "xlogx", "inverse", "square", "neg:log"])
def test_parse_roundtrip(text):
    f = parse_function(text)
    assert parse_function(str(f)) == f
    with pytest.raises(ValueError):
        parse_function("exp")


@pytest.mark.parametrize("f", [square(), inverse(), power(1.5), power(-0.5), xlogx(),
                               negate(log()), negate(power(0.5))], ids=str)
def test_operator_convexity_spot_check(rng, f):
    for k in range(50):
        n = 2 + k % 4
        A, B = random_spd(rng, n, 0.2, 5.0), random_spd(rng, n, 0.2, 5.0)
        lam = rng.uniform()
        lhs = apply_fn(f, lam * A + (1 - lam) * B)
        rhs = lam * apply_fn(f, A) + (1 - lam) * apply_fn(f, B)
        assert loewner_leq(lhs, rhs)


def test_power_three_is_not_operator_convex():
    """A witness pair where t^3 breaks the matrix convexity inequality."""
    A = np.array([[2.098, 0.386], [0.386, 0.391]])
    B = np.array([[5.455, 3.057], [3.057, 2.09]])
    lhs = apply_fn(power(3), 0.5 * (A + B))
    rhs = 0.5 * (apply_fn(power(3), A) + apply_fn(power(3), B))
    assert not loewner_leq(lhs, rhs)
