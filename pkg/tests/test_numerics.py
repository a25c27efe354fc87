import random
from decimal import Decimal
from fractions import Fraction as F

import pytest

from qpiseries.errors import DomainError, PrecisionError
from qpiseries.numerics import (
    ApproxScalar,
    approx_from_exact,
    as_approx,
    consistent_within,
    exact_pow,
)


def test_exact_pow_examples():
    assert exact_pow(F(2, 3), 0) == 1
    assert exact_pow(F(2, 3), 2) == F(4, 9)
    assert exact_pow(F(1, 2), -3) == 8
    with pytest.raises(DomainError):
        exact_pow(F(0), -1)


def test_approx_from_exact_examples():
    x = approx_from_exact(F(1, 3), 10)
    assert x.err <= Decimal("1e-9")
    assert abs(float(x) - 1 / 3) < 1e-9

    z = approx_from_exact(F(0), 50)
    assert z.value == 0 and z.err == 0

    d = approx_from_exact(F(7, 4), 5)
    assert d.value == Decimal("1.75") and d.err == 0


def test_approx_bound_contract():
    # |value - x| <= err <= 10^(1-digits) * max(1, |x|)
    rng = random.Random(5)
    for _ in range(200):
        x = F(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        digits = rng.randint(5, 40)
        a = approx_from_exact(x, digits)
        gap = abs(F(str(a.value)) - x)
        assert gap <= F(str(a.err)) if a.err else gap == 0
        assert a.err <= Decimal(10) ** (1 - digits) * Decimal(max(1, abs(float(x)) * 1.01))


def test_field_axioms_on_exact_scalars():
    rng = random.Random(11)
    for _ in range(300):
        a = F(rng.randint(-40, 40), rng.randint(1, 40))
        b = F(rng.randint(-40, 40), rng.randint(1, 40))
        c = F(rng.randint(-40, 40), rng.randint(1, 40))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        if a != 0:
            assert a * (1 / a) == 1
        # normalization invariants of the exact scalar type
        s = a * b + c
        assert s.denominator > 0
        from math import gcd
        assert gcd(abs(s.numerator), s.denominator) == 1


def _random_walk(ops, digits, seed):
    """Apply a reproducible op sequence to inputs in [-10, 10]."""
    rng = random.Random(seed)
    vals = [as_approx(F(rng.randint(-100, 100), rng.randint(10, 100)), digits)
            for _ in range(8)]
    acc = as_approx(F(1, 3), digits)
    for _ in range(ops):
        other = vals[rng.randrange(len(vals))]
        op = rng.randrange(4)
        if op == 0:
            acc = acc + other
        elif op == 1:
            acc = acc - other
        elif op == 2:
            acc = acc * other * F(1, 64)
        else:
            if other.abs_lower() > Decimal("1e-3"):
                acc = acc / other
        if acc.abs_upper() > Decimal("1e12"):
            acc = acc * F(1, 10**10)
    return acc


def test_composition_reevaluation_within_err():
    # re-evaluating a long composition at double precision moves the value
    # by less than the reported bound
    for seed in (1, 2, 3):
        lo = _random_walk(2000, 30, seed)
        hi = _random_walk(2000, 60, seed)
        gap = abs(float(lo.value) - float(hi.value))
        assert Decimal(str(gap)) <= lo.err + hi.err
        assert consistent_within(lo, hi)


def test_ten_thousand_op_walk():
    lo = _random_walk(10_000, 30, 9)
    hi = _random_walk(10_000, 60, 9)
    assert consistent_within(lo, hi)


def test_division_by_uncertified_interval_raises():
    wide = ApproxScalar(Decimal("1e-30"), Decimal("1e-29"), 30)
    with pytest.raises(PrecisionError):
        as_approx(1, 30) / wide


def test_sqrt_ln_exp_bounds():
    x = as_approx(F(2), 40)
    s = x.sqrt()
    assert abs(float(s) ** 2 - 2.0) < 1e-15
    assert float(x.ln().exp()) == pytest.approx(2.0, abs=1e-15)
    with pytest.raises(DomainError):
        as_approx(F(-1), 20).sqrt()
    with pytest.raises(DomainError):
        as_approx(F(0), 20).ln()


def test_pow_rational_matches_int_pow():
    x = as_approx(F(5, 7), 40)
    a = x.pow_rational(F(3))
    b = x ** 3
    assert consistent_within(a, b)
    # (x^(1/3))^3 == x
    c = x.pow_rational(F(1, 3)) ** 3
    assert consistent_within(c, x)
