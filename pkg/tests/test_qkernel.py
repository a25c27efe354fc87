import random
from fractions import Fraction as F

import pytest

from qpiseries.errors import DomainError, ModeError, PoleError
from qpiseries.numerics import abs_diff_upper, approx_from_exact, as_approx, consistent_within
from qpiseries.qkernel import (
    INF,
    LatticeCtx,
    QPoint,
    qbinomial,
    qgamma,
    qpoch_falling,
    qpoch_multi,
    qpoch_rising,
)


def brute_rising(x, q, n):
    out = F(1)
    for j in range(n):
        out *= 1 - q**j * x
    return out


def test_rising_examples():
    assert qpoch_rising(F(3, 7), F(2, 5), 0) == 1
    assert qpoch_rising(F(1, 2), F(1, 2), 2) == F(3, 8)
    # infinite product within err of a directly multiplied 200-term product
    v = qpoch_rising(as_approx(F(1, 2), 30), as_approx(F(1, 2), 30), INF)
    partial = approx_from_exact(brute_rising(F(1, 2), F(1, 2), 200), 30)
    assert abs_diff_upper(v.value, partial.value) <= v.err + partial.err


def test_rising_infinite_requires_certified_mode():
    with pytest.raises(ModeError):
        qpoch_rising(F(1, 2), F(1, 2), INF)


def test_falling_examples():
    assert qpoch_falling(F(3, 7), F(2, 5), 0) == 1
    assert qpoch_falling(F(1, 2), F(1, 2), 2) == 0
    assert qpoch_falling(F(1, 3), F(1, 2), 3) == F(-2, 27)
    with pytest.raises(DomainError):
        qpoch_falling(F(1, 3), F(0), 2)


def test_qbinomial_examples():
    q = F(3, 11)
    assert qbinomial(7, 0, q) == 1
    assert qbinomial(4, 2, q) == 1 + q + 2 * q**2 + q**3 + q**4
    assert qbinomial(3, 1, F(1, 2)) == F(7, 4)
    assert qbinomial(3, 5, q) == 0 and qbinomial(3, -1, q) == 0


def test_qpoch_multi_examples():
    q = F(1, 2)
    assert qpoch_multi([], [], q, 5) == 1
    a = F(5, 9)
    assert qpoch_multi([a], [a], q, 7) == 1
    assert qpoch_multi([F(1, 2)], [F(1, 4)], q, 2) == F(4, 7)


def test_qpoch_multi_pole_named():
    # denominator factor (1 - q^1 * (1/q)) vanishes at k=1
    with pytest.raises(PoleError, match="b_0"):
        qpoch_multi([F(1, 3)], [F(2, 1)], F(1, 2), 3)


def test_shift_law():
    rng = random.Random(3)
    for _ in range(30):
        x = F(rng.randint(-40, 40), rng.randint(1, 40))
        q = F(rng.randint(-40, 40), rng.randint(1, 40))
        n = rng.randint(0, 50)
        assert qpoch_rising(x, q, n + 1) == qpoch_rising(x, q, n) * (1 - q**n * x)


def test_rising_falling_bridge():
    rng = random.Random(4)
    for _ in range(30):
        x = F(rng.randint(-40, 40), rng.randint(1, 40))
        q = F(rng.randint(1, 40), rng.randint(1, 40))
        n = rng.randint(0, 30)
        assert qpoch_falling(x, q, n) == qpoch_rising(x, 1 / q, n)


def test_qbinomial_symmetry_and_pascal():
    rng = random.Random(6)
    for _ in range(20):
        q = F(rng.randint(1, 30), rng.randint(1, 30))
        if q == 1:
            continue
        m = rng.randint(1, 20)
        n = rng.randint(0, m)
        assert qbinomial(m, n, q) == qbinomial(m, m - n, q)
        if n >= 1:
            assert qbinomial(m, n, q) == qbinomial(m - 1, n - 1, q) + q**n * qbinomial(m - 1, n, q)


def numeric_rising(x, q, n, digits):
    out = as_approx(1, digits)
    qk = as_approx(1, digits)
    xq = as_approx(x, digits)
    qq = as_approx(q, digits)
    for _ in range(n):
        out = out * (1 - xq * qk)
        qk = qk * qq
    return out


def test_infinite_product_err_bounds_longer_partial():
    # the certified truncation stops around 700 factors at q = 9/10 and 30
    # digits; 2500 factors at higher precision dwarfs a 10x longer run
    rng = random.Random(8)
    for _ in range(8):
        x = F(rng.randint(-9, 9), 10)
        q = F(rng.randint(1, 9), 10)
        v = qpoch_rising(as_approx(x, 30), as_approx(q, 30), INF)
        longer = numeric_rising(x, q, 2500, 55)
        assert abs_diff_upper(v.value, longer.value) <= v.err + longer.err


def test_qgamma_examples():
    pt = QPoint(F(1, 2), 1)
    g1 = qgamma(F(1), pt, 30)
    g2 = qgamma(F(2), pt, 30)
    g3 = qgamma(F(3), pt, 30)
    one = as_approx(1, 40)
    assert consistent_within(g1, one)
    assert consistent_within(g2, one)
    assert consistent_within(g3, as_approx(F(3, 2), 40))
    with pytest.raises(DomainError):
        qgamma(F(0), pt, 20)
    with pytest.raises(DomainError):
        qgamma(F(-2), pt, 20)


def test_qgamma_functional_equation():
    # G_q(x+1) = (1-q^x)/(1-q) G_q(x), off-lattice roots via certified powers
    for x in (F(1, 2), F(1, 3), F(1, 4), F(5, 6)):
        for qv in (F(1, 2), F(4, 5)):
            pt = QPoint(qv, 1)
            lhs = qgamma(x + 1, pt, 35)
            qx = as_approx(qv, 45).pow_rational(x)
            rhs = (1 - qx) / (1 - as_approx(qv, 45)) * qgamma(x, pt, 35)
            assert consistent_within(lhs, rhs), (x, qv)


def test_lattice_ctx_powers():
    E = LatticeCtx(F(3, 5), 12)
    assert E.qp(1) == F(3, 5) ** 12
    assert E.qp(1, 2) == F(3, 5) ** 6
    assert E.qpf(F(5, 12)) == F(3, 5) ** 5
    assert E.rpow(-3) == F(5, 3) ** 3
    from qpiseries.errors import LatticeError
    with pytest.raises(LatticeError):
        E.qp(1, 7)


def test_qpoint_validation():
    with pytest.raises(DomainError):
        QPoint(F(3, 2), 2)
    with pytest.raises(DomainError):
        QPoint(F(1, 2), 0)
    assert QPoint(F(9, 10), 2).q == F(81, 100)
