"""q-factorial kernels on an exponent lattice.

Conventions:

* rising factorial   (x;q)_n = (1-x)(1-qx)...(1-q^(n-1) x)
* falling factorial  <x;q>_n = (1-x)(1-x/q)...(1-q^(1-n) x)
* Gaussian binomial  [m,n]_q = (q;q)_m / ((q;q)_n (q;q)_{m-n})
* q-gamma            G_q(x)  = (1-q)^(1-x) (q;q)_inf / (q^x;q)_inf

All functions are polymorphic over exact ``Fraction`` scalars and certified
``ApproxScalar`` values; infinite products are only available in certified
mode, where the truncation tail is folded into the error bound.

Identities in the catalog are evaluated on an exponent lattice: a base point
fixes ``q = p**L`` so that every fractional power ``q**(m/L)`` is the exact
integer power ``p**m``.  :class:`LatticeCtx` provides memoized lattice powers
and factorial products on top of a base point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .errors import DomainError, LatticeError, ModeError, PoleError
from .numerics import (
    _DOWN,
    _UP,
    ApproxScalar,
    approx_from_exact,
    as_approx,
    is_exact,
)

INF = math.inf

_D1 = Decimal(1)


def _is_infinite(n) -> bool:
    return n == INF


def _one_like(*scalars):
    for s in scalars:
        if isinstance(s, ApproxScalar):
            return ApproxScalar.exact(1, s.digits)
    return Fraction(1)


def qpoch_rising(x, q, n):
    """(x;q)_n.  ``n`` may be a nonnegative integer or ``INF``.

    The infinite product requires certified mode (an ApproxScalar among the
    inputs) and |q| < 1; its truncation tail is certified into ``err``.
    """
    if _is_infinite(n):
        if is_exact(x) and is_exact(q):
            raise ModeError("(x;q)_inf requires certified (ApproxScalar) mode")
        return qpoch_multi([x], [], q, INF)
    if n < 0:
        raise DomainError("rising factorial needs n >= 0")
    one = _one_like(x, q)
    out = one
    qk = one
    for _ in range(n):
        out = out * (one - x * qk)
        qk = qk * q
    return out


def qpoch_falling(x, q, n: int):
    """<x;q>_n = (1-x)(1-x/q)...(1-q^(1-n) x); requires q != 0."""
    if n < 0:
        raise DomainError("falling factorial needs n >= 0")
    if is_exact(q) and q == 0:
        raise DomainError("falling factorial needs q != 0")
    one = _one_like(x, q)
    qinv = one / q
    return qpoch_rising(x, qinv, n)


def qbinomial(m: int, n: int, q):
    """Gaussian binomial [m,n]_q; returns 0 for n < 0 or n > m.

    The out-of-range convention lets even/odd split sums run k over all
    integers without explicit upper limits.
    """
    if n < 0 or n > m:
        return _one_like(q) * 0
    num = qpoch_rising(q, q, m)
    den = qpoch_rising(q, q, n) * qpoch_rising(q, q, m - n)
    return num / den


def qpoch_multi(numerators, denominators, q, n):
    """prod_i (a_i;q)_n / prod_j (b_j;q)_n with pole detection.

    For ``n = INF`` (certified mode only) the factors are accumulated in
    interleaved order, one index k at a time, to keep intermediate magnitudes
    tame; the tail of every factor is certified into the error bound.
    """
    if _is_infinite(n):
        return _qpoch_multi_inf(list(numerators), list(denominators), q)
    one = _one_like(q, *numerators, *denominators)
    out = one
    qk = one
    for k in range(n):
        for x in numerators:
            out = out * (one - x * qk)
        for j, x in enumerate(denominators):
            f = one - x * qk
            if is_exact(f) and f == 0:
                raise PoleError(f"denominator factor (b_{j};q)_n vanishes at k={k}")
            out = out / f
        qk = qk * q
    return out


def _tail_log_bound(xu: Decimal, q_up: Decimal, M: int) -> Decimal:
    """Upper bound of |log prod_{k>=M} (1 - x q^k)| for |x| <= xu, q <= q_up < 1.

    Uses sum_{k>=M} |x| q^k / (1 - |x| q^M) <= |x| q^M / ((1-q)(1 - |x| q^M)).
    """
    # Context.power is only "almost always" correctly rounded; pad one part
    # in 10^9 so the result stays a certified upper bound.
    qM = _UP.multiply(_UP.power(q_up, Decimal(M)), Decimal("1.000000002"))
    top = _UP.multiply(xu, qM)
    if top >= 1:
        raise DomainError("infinite product truncated before factors are small")
    den = _UP.multiply(_DOWN.subtract(_D1, q_up), _DOWN.subtract(_D1, top))
    return _UP.divide(top, den)


def _qpoch_multi_inf(numerators, denominators, q):
    scalars = numerators + denominators + [q]
    digits = min(
        (s.digits for s in scalars if isinstance(s, ApproxScalar)),
        default=None,
    )
    if digits is None:
        raise ModeError("infinite products require certified (ApproxScalar) mode")
    qa = as_approx(q, digits)
    nums = [as_approx(x, digits) for x in numerators]
    dens = [as_approx(x, digits) for x in denominators]

    q_up = qa.abs_upper()
    if not (0 < float(qa.value) < 1) or q_up >= 1:
        raise DomainError("infinite products need 0 < q < 1")
    fq = float(q_up)

    # Truncate each factor at the first M with |x| q^M < eps (1-q); run all
    # factors to the common maximum so the interleaving stays aligned.
    eps = 10.0 ** (-(digits - 4))
    M = 1
    for x in nums + dens:
        fx = float(x.abs_upper())
        if fx > 0:
            need = math.log(eps * (1 - fq) / fx) / math.log(fq) if fx >= eps * (1 - fq) else 0.0
            M = max(M, int(need) + 2)

    one = ApproxScalar.exact(1, digits)
    out = one
    qk = one
    for k in range(M):
        for x in nums:
            out = out * (one - x * qk)
        for j, x in enumerate(dens):
            f = one - x * qk
            if f.abs_lower() == 0:
                raise PoleError(
                    f"denominator factor (b_{j};q)_inf not certified nonzero at k={k}"
                )
            out = out / f
        qk = qk * qa

    # Certified tail: |log| of the omitted part of every factor.
    bound = Decimal(0)
    for x in nums + dens:
        xu = x.abs_upper()
        if xu > 0:
            bound = _UP.add(bound, _tail_log_bound(xu, q_up, M))
    if bound >= Decimal("0.5"):
        raise DomainError("infinite product tail bound too large; raise precision")
    # |true - out| <= |out| (e^bound - 1) <= |out| bound/(1-bound)
    inflate = _UP.divide(bound, _DOWN.subtract(_D1, bound))
    extra = _UP.multiply(out.abs_upper(), inflate)
    return ApproxScalar(out.value, _UP.add(out.err, extra), digits)


@dataclass(frozen=True)
class QPoint:
    """Base point q = p**L on the exponent lattice (1/L) Z.

    0 < p < 1 guarantees 0 < q < 1; every fractional power q^(m/L) used by
    an identity evaluated here is the integer power p^m.
    """

    p: Fraction
    L: int

    def __post_init__(self):
        if self.L < 1:
            raise DomainError("lattice denominator L must be >= 1")
        if not (0 < self.p < 1):
            raise DomainError("base point needs 0 < p < 1")

    @property
    def q(self) -> Fraction:
        return self.p**self.L

    def describe(self) -> str:
        return f"p={self.p} L={self.L}"


class LatticeCtx:
    """Memoized lattice powers and q-factorials over one base point.

    With a ``Fraction`` root every quantity stays exact; with an
    ``ApproxScalar`` root every quantity carries a certified bound.
    """

    def __init__(self, root, L: int, digits: int | None = None):
        self.root = root
        self.L = L
        self.digits = digits
        self.one = _one_like(root)
        self._pow = {0: self.one, 1: root}
        self.q = self.rpow(L)

    @classmethod
    def exact(cls, point: QPoint) -> "LatticeCtx":
        return cls(point.p, point.L)

    @classmethod
    def numeric(cls, point: QPoint, digits: int) -> "LatticeCtx":
        return cls(approx_from_exact(point.p, digits), point.L, digits)

    @property
    def is_exact(self) -> bool:
        return self.digits is None

    def rpow(self, m: int):
        """root**m, memoized by binary splitting (negative m allowed)."""
        v = self._pow.get(m)
        if v is not None:
            return v
        if m < 0:
            v = self.one / self.rpow(-m)
        else:
            half = self.rpow(m // 2)
            v = half * half
            if m & 1:
                v = v * self.root
        self._pow[m] = v
        return v

    def qp(self, num: int, den: int = 1):
        """q^(num/den); the exponent must land on the lattice."""
        t = num * self.L
        if t % den:
            raise LatticeError(f"exponent {num}/{den} not on lattice 1/{self.L}")
        return self.rpow(t // den)

    def qpf(self, x: Fraction):
        """q^x for an exact rational exponent on the lattice."""
        x = Fraction(x)
        return self.qp(x.numerator, x.denominator)

    def poch(self, x, n: int, base=None):
        """(x;base)_n, base defaulting to q."""
        return qpoch_rising(x, self.q if base is None else base, n)

    def poch_falling(self, x, n: int, base=None):
        return qpoch_falling(x, self.q if base is None else base, n)

    def poch_inf(self, x, base=None):
        return qpoch_multi([x], [], self.q if base is None else base, INF)

    def poch_multi_inf(self, numerators, denominators, base=None):
        return qpoch_multi(numerators, denominators, self.q if base is None else base, INF)

    def binq(self, m: int, n: int):
        return qbinomial(m, n, self.q)


def qgamma(x: Fraction, point: QPoint, digits: int) -> ApproxScalar:
    """Certified q-gamma value G_q(x) = (1-q)^(1-x) (q;q)_inf / (q^x;q)_inf.

    ``x`` must avoid the poles at nonpositive integers.  On-lattice
    exponents use exact integer root powers; off-lattice ones fall back to
    a certified real power of q.
    """
    x = Fraction(x)
    if x.denominator == 1 and x <= 0:
        raise DomainError(f"q-gamma pole at x={x}")
    ctx = LatticeCtx.numeric(point, digits)
    if (x * point.L).denominator == 1:
        qx = ctx.qp(x.numerator, x.denominator)
    else:
        qx = ctx.q.pow_rational(x)
    ratio = qpoch_multi([ctx.q], [qx], ctx.q, INF)
    return (ctx.one - ctx.q).pow_rational(1 - x) * ratio
