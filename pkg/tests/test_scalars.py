import random

import pytest

from qvertex.errors import TruncationMismatch, ZeroConstantTerm
from qvertex.rationals import Rat
from qvertex.scalars import (TScalar, tp, tp_add, tp_bracket_factorial,
                             tp_divexact, tp_eval, tp_mul, tp_phi, tp_pow,
                             tp_str, ts_invert)


def ts(*coeffs):
    return TScalar(tuple(Rat(c) for c in coeffs))


def test_invert_one_minus_t():
    s = TScalar.from_tpoly(tp(1, -1), 3)
    assert ts_invert(s) == ts(1, 1, 1, 1)


def test_invert_with_half_coefficient():
    # (1 - t/2)^{-1} = 1 + t/2 + t^2/4 + ...
    s = TScalar.from_tpoly(tp(1, Rat(-1, 2)), 4)
    inv = ts_invert(s)
    assert inv == ts(1, Rat(1, 2), Rat(1, 4), Rat(1, 8), Rat(1, 16))


def test_invert_multiply_back():
    s = TScalar.from_tpoly(tp(2, 3, -1, 5), 6)
    assert ts_invert(s) * s == TScalar.one(6)


def test_invert_zero_constant_term():
    with pytest.raises(ZeroConstantTerm):
        ts_invert(TScalar.from_tpoly(tp(0, 1), 3))


def test_invert_random_units():
    rng = random.Random(20240817)
    for _ in range(200):
        T = rng.randrange(0, 9)
        coeffs = [rng.randrange(-9, 10) for _ in range(T + 1)]
        coeffs[0] = rng.choice([c for c in range(-9, 10) if c])
        s = TScalar(tuple(Rat(c) for c in coeffs))
        assert s * ts_invert(s) == TScalar.one(T)


def test_truncation_mismatch_rejected():
    a = TScalar.one(3)
    b = TScalar.one(4)
    with pytest.raises(TruncationMismatch):
        a + b
    with pytest.raises(TruncationMismatch):
        a * b
    with pytest.raises(TruncationMismatch):
        a == b


def test_quotient_ring_closure():
    # t^3 * t^3 = 0 in Q[t]/(t^5)
    a = TScalar.t_power(3, 4)
    assert (a * a).is_zero()


def test_truncate_is_ring_map():
    rng = random.Random(7)
    for _ in range(50):
        a = TScalar(tuple(Rat(rng.randrange(-5, 6)) for _ in range(7)))
        b = TScalar(tuple(Rat(rng.randrange(-5, 6)) for _ in range(7)))
        assert (a * b).truncate(3) == a.truncate(3) * b.truncate(3)
        assert (a + b).truncate(3) == a.truncate(3) + b.truncate(3)


def test_scalar_coercion():
    a = TScalar.from_tpoly(tp(1, 1), 2)
    assert a + 1 == ts(2, 1, 0)
    assert 2 * a == ts(2, 2, 0)
    assert a - Rat(1, 2) == ts(Rat(1, 2), 1, 0)


def test_tpoly_roundtrip():
    a = tp(1, 0, -2)
    b = tp(0, 3)
    assert tp_mul(a, b) == tp(0, 3, 0, -6)
    assert tp_add(a, tp(-1, 0, 2)) == ()
    assert tp_eval(tp_pow(tp(1, 1), 3), 1) == 8


def test_tpoly_divexact():
    num = tp_mul(tp(1, -1), tp(1, 1, 1))
    assert tp_divexact(num, tp(1, -1)) == tp(1, 1, 1)
    with pytest.raises(ValueError):
        tp_divexact(tp(1, 1), tp(1, -1))


def test_phi_and_bracket_factorial():
    # phi_2 = (1-t)(1-t^2), [3]_t! = (1+t)(1+t+t^2)
    assert tp_phi(2) == tp(1, -1, -1, 1)
    assert tp_bracket_factorial(3) == tp_mul(tp(1, 1), tp(1, 1, 1))
    assert tp_eval(tp_phi(3), 1) == 0


def test_str_rendering():
    assert tp_str(tp(1, -1)) == "1 - t"
    assert str(TScalar.from_tpoly(tp(0, 0, Rat(3, 2)), 4)) == "3/2*t^2"
