import random

import pytest

from qvertex.errors import (NonExpandableFactor, OutsideWindow,
                            WindowUnderflow)
from qvertex.laurent import (FactorProduct, LaurentChunk, Monomial, Window,
                             binom_expansion_terms, coefficient, expand,
                             laurent_mul, lform, region)
from qvertex.rationals import Rat
from qvertex.scalars import TScalar, tp

Z12 = region("z1", "z2")
Z21 = region("z2", "z1")

FORM_Z1_MINUS_Z2 = lform((1, "z1"), (-1, "z2"))
FORM_Z1_MINUS_TZ2 = lform((1, "z1"), (-1, "z2", 1))


def fp_power(form, e):
    return FactorProduct.of(factors=[(form, e)])


def one_chunk(window, t_order):
    return LaurentChunk({Monomial(): TScalar.one(t_order)}, window,
                        TScalar.zero(t_order))


def test_expand_geometric_z1_dominant():
    w = Window.of(z1=(-5, 0), z2=(0, 4))
    ch = expand(fp_power(FORM_Z1_MINUS_Z2, -1), Z12, w, 0)
    assert len(ch.terms) == 5
    for k in range(5):
        assert ch.get(Monomial(z1=-1 - k, z2=k)) == TScalar.one(0)
    # support records the infinite tails
    assert ch.support[0] == (None, -1)
    assert ch.support[1] == (0, None)


def test_expand_geometric_z2_dominant():
    w = Window.of(z1=(0, 4), z2=(-5, 0))
    ch = expand(fp_power(FORM_Z1_MINUS_Z2, -1), Z21, w, 0)
    for k in range(5):
        assert ch.get(Monomial(z1=k, z2=-1 - k)) == TScalar.from_rat(-1, 0)


def test_expand_t_adic_inverse():
    # 1/(z1 - t z2): t stays adically small, so z1 dominates in any region
    w = Window.of(z1=(-3, 0), z2=(0, 2))
    for reg in (Z12, Z21):
        ch = expand(fp_power(FORM_Z1_MINUS_TZ2, -1), reg, w, 2)
        assert ch.get(Monomial(z1=-1)) == TScalar.one(2)
        assert ch.get(Monomial(z1=-2, z2=1)) == TScalar.t_power(1, 2)
        assert ch.get(Monomial(z1=-3, z2=2)) == TScalar.t_power(2, 2)
        assert len(ch.terms) == 3


def test_expand_multiply_back_exactly_one():
    w_inv = Window.of(z1=(-4, -1), z2=(0, 3))
    inv = expand(fp_power(FORM_Z1_MINUS_TZ2, -1), Z12, w_inv, 3)
    poly = expand(fp_power(FORM_Z1_MINUS_TZ2, 1), Z12,
                  Window.of(z1=(0, 1), z2=(0, 1)), 3)
    prod = laurent_mul(inv, poly, Window.of(z1=(-2, 0), z2=(0, 2)))
    assert prod.get(Monomial()) == TScalar.one(3)
    assert len(prod.terms) == 1


def test_expand_with_g_budget_multiply_back():
    form = lform((1, "z1"), (-1, "z2", 1), (1, "g"), (-1, "g", 1))
    w_inv = Window.of(z1=(-8, -1), z2=(0, 2), g=(0, 3))
    inv = expand(fp_power(form, -1), region("z1", "z2", "g"), w_inv, 2)
    poly = expand(fp_power(form, 1), region("z1", "z2", "g"),
                  Window.of(z1=(0, 1), z2=(0, 1), g=(0, 1)), 2)
    prod = laurent_mul(inv, poly, Window.of(z1=(-4, 0), z2=(0, 1), g=(0, 3)))
    assert prod.get(Monomial()) == TScalar.one(2)
    assert len(prod.terms) == 1


def test_expand_negative_g_window_rejected():
    with pytest.raises(NonExpandableFactor):
        expand(fp_power(FORM_Z1_MINUS_Z2, -1), Z12,
               Window.of(z1=(-2, 0), z2=(0, 1), g=(-1, 0)), 0)


def test_expand_no_t0_term_rejected():
    form = lform((1, "z1", 1), (-1, "z2", 1))
    with pytest.raises(NonExpandableFactor):
        expand(fp_power(form, -1), Z12, Window.of(z1=(-2, 0), z2=(0, 2)), 2)


def test_mul_identity():
    w = Window.of(z1=(-2, 2), z2=(-2, 2))
    a = LaurentChunk({Monomial(z1=1): TScalar.one(1),
                      Monomial(z2=-1): TScalar.t_power(1, 1)}, w,
                     TScalar.zero(1))
    prod = laurent_mul(a, one_chunk(Window.of(z1=(0, 0), z2=(0, 0)), 1), w)
    assert prod.terms == a.terms


def test_mul_boundary_term_of_finite_chunk():
    # finite truncation of the geometric series times (z1 - z2) leaves the
    # telescoping boundary term, and the product is exact because the chunk
    # is genuinely finite (support equals its terms)
    terms = {Monomial(z1=-1 - k, z2=k): TScalar.one(0) for k in range(4)}
    a = LaurentChunk(terms, Window.of(z1=(-4, -1), z2=(0, 3)),
                     TScalar.zero(0))
    b = expand(fp_power(FORM_Z1_MINUS_Z2, 1), Z12,
               Window.of(z1=(0, 1), z2=(0, 1)), 0)
    prod = laurent_mul(a, b, Window.of(z1=(-4, 1), z2=(0, 4)))
    assert prod.get(Monomial()) == TScalar.one(0)
    assert prod.get(Monomial(z1=-4, z2=4)) == TScalar.from_rat(-1, 0)
    assert len(prod.terms) == 2


def test_mul_underflow_on_unsound_request():
    w_inv = Window.of(z1=(-4, -1), z2=(0, 3))
    inv = expand(fp_power(FORM_Z1_MINUS_Z2, -1), Z12, w_inv, 0)
    b = expand(fp_power(FORM_Z1_MINUS_Z2, 1), Z12,
               Window.of(z1=(0, 1), z2=(0, 1)), 0)
    # z2 = 4 needs the dropped z2^4 tail term of the geometric series
    with pytest.raises(WindowUnderflow):
        laurent_mul(inv, b, Window.of(z1=(-4, 0), z2=(0, 4)))
    # away from the boundary the product is sound and equals 1
    prod = laurent_mul(inv, b, Window.of(z1=(-3, 0), z2=(0, 2)))
    assert prod.get(Monomial()) == TScalar.one(0)
    assert len(prod.terms) == 1


def test_coefficient_access():
    w = Window.of(z1=(-2, 2))
    ch = LaurentChunk({Monomial(z1=1): TScalar.one(0)}, w, TScalar.zero(0))
    assert coefficient(ch, Monomial(z1=1)) == TScalar.one(0)
    assert coefficient(ch, Monomial(z1=-2)).is_zero()
    with pytest.raises(OutsideWindow):
        coefficient(ch, Monomial(z1=3))


def test_delta_residue():
    w = Window.of(z1=(-3, 3), z2=(-3, 3))
    d = expand(fp_power(FORM_Z1_MINUS_Z2, -1), Z12, w, 0).add(
        expand(fp_power(FORM_Z1_MINUS_Z2, -1), Z21, w, 0).scale(
            TScalar.from_rat(-1, 0)))
    assert coefficient(d, Monomial(z1=-1)) == TScalar.one(0)
    assert coefficient(d, Monomial(z1=-2, z2=1)) == TScalar.one(0)
    assert coefficient(d, Monomial(z1=1, z2=-2)) == TScalar.one(0)
    assert coefficient(d, Monomial(z1=-1, z2=1)).is_zero()


def test_delta_identity_full_window():
    # i_{z1;z2} - i_{z2;z1} of 1/(z1-z2) is the formal delta restricted to
    # the window: coefficient 1 exactly on the antidiagonal e1 + e2 = -1
    w = Window.of(z1=(-6, 6), z2=(-6, 6))
    d = expand(fp_power(FORM_Z1_MINUS_Z2, -1), Z12, w, 0).add(
        expand(fp_power(FORM_Z1_MINUS_Z2, -1), Z21, w, 0).scale(
            TScalar.from_rat(-1, 0)))
    expected = {}
    for n in range(-6, 6):
        if -6 <= -n - 1 <= 6:
            expected[Monomial(z1=-n - 1, z2=n)] = TScalar.one(0)
    assert d.terms == expected


def _random_poly_fp(rng):
    pool = [FORM_Z1_MINUS_Z2, FORM_Z1_MINUS_TZ2,
            lform((1, "z2"), (-1, "z3")),
            lform((1, "z1"), (2, "z3", 1)),
            lform((1, "z2"), (1, "z3", 2))]
    factors = []
    for _ in range(rng.randrange(1, 3)):
        factors.append((rng.choice(pool), rng.randrange(1, 3)))
    coeff = tp(*[rng.randrange(-3, 4) for _ in range(rng.randrange(1, 3))])
    if not coeff:
        coeff = tp(1)
    mono = Monomial(z1=rng.randrange(-1, 2), z2=rng.randrange(-1, 2))
    return FactorProduct.of(coeff=coeff, monomial=mono, factors=factors)


def test_polynomial_region_independence():
    rng = random.Random(11)
    w = Window(((-6, 6), (-6, 6), (-6, 6), (0, 0)))
    regs = (region("z1", "z2", "z3"), region("z3", "z1", "z2"),
            region("z2", "z3", "z1"))
    for _ in range(40):
        fp = _random_poly_fp(rng)
        chunks = [expand(fp, r, w, 3) for r in regs]
        assert chunks[0].terms == chunks[1].terms == chunks[2].terms


def _random_tsafe_fp(rng):
    # inverses restricted to t-carrying subordinate terms keep all supports
    # finite, so the guarded product applies
    inv_pool = [FORM_Z1_MINUS_TZ2,
                lform((1, "z2"), (-1, "z3", 1)),
                lform((1, "z1"), (2, "z3", 2))]
    poly_pool = inv_pool + [FORM_Z1_MINUS_Z2, lform((1, "z2"), (1, "z3"))]
    factors = [(rng.choice(inv_pool), -rng.randrange(1, 3))]
    if rng.random() < 0.7:
        factors.append((rng.choice(poly_pool), rng.randrange(1, 3)))
    mono = Monomial(z1=rng.randrange(-1, 2), z3=rng.randrange(0, 2))
    return FactorProduct.of(coeff=tp(rng.choice([1, -1, 2])), monomial=mono,
                            factors=factors)


def test_expand_is_multiplicative():
    rng = random.Random(404)
    reg = region("z1", "z2", "z3")
    target = Window(((-4, 4), (-4, 4), (-4, 4), (0, 0)))
    big = Window(((-14, 14), (-14, 14), (-14, 14), (0, 0)))
    for _ in range(100):
        f1 = _random_tsafe_fp(rng)
        f2 = _random_tsafe_fp(rng)
        c1 = expand(f1, reg, big, 2)
        c2 = expand(f2, reg, big, 2)
        joint = expand(f1.mul(f2), reg, target, 2)
        prod = laurent_mul(c1, c2, target)
        assert prod.terms == joint.terms


def test_monotone_in_t_order():
    w = Window.of(z1=(-6, 0), z2=(0, 5))
    lo = expand(fp_power(FORM_Z1_MINUS_TZ2, -2), Z12, w, 2)
    hi = expand(fp_power(FORM_Z1_MINUS_TZ2, -2), Z12, w, 5)
    for m, c in lo.terms.items():
        assert hi.get(m).truncate(2) == c
    for m, c in hi.terms.items():
        if c.truncate(2).is_zero():
            assert m not in lo.terms


def test_binom_expansion_terms():
    assert list(binom_expansion_terms(2, -1, 5)) == [
        (0, Rat(1)), (1, Rat(-2)), (2, Rat(1))]
    gen = dict(binom_expansion_terms(-2, 1, 3))
    # (x+y)^{-2} = x^{-2}(1 - 2y/x + 3y^2/x^2 - ...)
    assert gen == {0: Rat(1), 1: Rat(-2), 2: Rat(3), 3: Rat(-4)}


def test_substitute_shift():
    # (z1 - z2) under z1 -> z2 + z3 collapses to z3
    fp = fp_power(FORM_Z1_MINUS_Z2, 1)
    sub = fp.substitute({"z1": ("z2", "z3")})
    ch = expand(sub, region("z2", "z3"),
                Window.of(z2=(0, 2), z3=(0, 2)), 0)
    assert ch.terms == {Monomial(z3=1): TScalar.one(0)}


def test_substitute_zero_in_inverted_factor():
    # 1/(z1 - t z2) with z2 -> 0 is just 1/z1
    fp = fp_power(FORM_Z1_MINUS_TZ2, -1)
    sub = fp.substitute({"z2": ()})
    ch = expand(sub, Z12, Window.of(z1=(-2, 0)), 2)
    assert ch.terms == {Monomial(z1=-1): TScalar.one(2)}


def test_substitute_monomial_to_sum():
    # prefactor z1^{-1} with z1 -> z1 + g becomes an inverted factor
    fp = FactorProduct.of(monomial=Monomial(z1=-1))
    sub = fp.substitute({"z1": ("z1", "g")})
    ch = expand(sub, region("z1", "g"),
                Window.of(z1=(-4, 0), g=(0, 2)), 0)
    assert ch.get(Monomial(z1=-1)) == TScalar.one(0)
    assert ch.get(Monomial(z1=-2, g=1)) == TScalar.from_rat(-1, 0)
    assert ch.get(Monomial(z1=-3, g=2)) == TScalar.one(0)
