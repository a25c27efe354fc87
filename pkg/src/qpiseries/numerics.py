"""Arbitrary-precision scalars with explicit error contracts.

Two scalar kinds are used throughout the package:

* ``ExactScalar`` (an alias of :class:`fractions.Fraction`): normalized
  arbitrary-size rationals.  Terminating identities are checked entirely in
  this type, so "equal" means equal.
* :class:`ApproxScalar`: a decimal significand at a chosen working precision
  together with a certified absolute error bound ``err``.  The contract is
  that the true quantity being represented always lies in
  ``[value - err, value + err]``.

Error propagation is deliberately plain worst-case interval bookkeeping:
every operation widens ``err`` enough to cover both operand uncertainty and
its own rounding.  Rounding slack is one unit in the last place, added only
when the decimal context actually reports an inexact result, so dyadic and
short decimal quantities keep ``err == 0``.  Upper bounds are computed in a
ROUND_CEILING context, lower bounds in a ROUND_FLOOR context, and Decimal
values are never touched by the ambient default context (all arithmetic goes
through explicit contexts or the exact ``copy_*`` operations).
"""

from __future__ import annotations

import threading
from decimal import (
    ROUND_CEILING,
    ROUND_FLOOR,
    ROUND_HALF_EVEN,
    Context,
    Decimal,
    Inexact,
)
from fractions import Fraction

from .errors import DomainError, PrecisionError

ExactScalar = Fraction

DEFAULT_DIGITS = 50

# Exponent range is far beyond anything q^{L k^2} reaches in the catalog.
_EMAX = 10**9

# Directed contexts for error-bound arithmetic (operands are nonnegative,
# so ROUND_CEILING always rounds toward the safe side).
_UP = Context(prec=12, rounding=ROUND_CEILING, Emin=-_EMAX, Emax=_EMAX)
_DOWN = Context(prec=12, rounding=ROUND_FLOOR, Emin=-_EMAX, Emax=_EMAX)

_ZERO = Decimal(0)
_ONE = Decimal(1)

_tls = threading.local()


def _value_ctx(digits: int) -> Context:
    """Thread-local round-to-nearest context at ``digits`` precision."""
    cache = getattr(_tls, "ctx_cache", None)
    if cache is None:
        cache = {}
        _tls.ctx_cache = cache
    ctx = cache.get(digits)
    if ctx is None:
        ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN, Emin=-_EMAX, Emax=_EMAX)
        cache[digits] = ctx
    return ctx


def _ulp(v: Decimal, digits: int) -> Decimal:
    if not v:
        return _ZERO
    return _ONE.scaleb(v.adjusted() + 1 - digits, _UP)


def abs_diff_upper(a: Decimal, b: Decimal) -> Decimal:
    """Upper bound of |a - b|, safe against context rounding."""
    ctx = _value_ctx(80)
    ctx.clear_flags()
    d = ctx.subtract(a, b).copy_abs()
    if ctx.flags[Inexact]:
        d = _UP.add(d, _ulp(d, 80))
    return d


class ApproxScalar:
    """A decimal value plus a certified absolute error bound.

    Comparison operators compare ``value`` only (used for truncation
    heuristics); certified statements must go through ``err`` explicitly,
    e.g. via :meth:`abs_upper` / :meth:`abs_lower` or
    :func:`consistent_within`.
    """

    __slots__ = ("value", "err", "digits")

    def __init__(self, value: Decimal, err: Decimal, digits: int):
        self.value = value
        self.err = err
        self.digits = digits

    # -- construction -----------------------------------------------------

    @staticmethod
    def exact(x: int | Decimal, digits: int = DEFAULT_DIGITS) -> "ApproxScalar":
        return ApproxScalar(Decimal(x), _ZERO, digits)

    # -- bounds ------------------------------------------------------------

    def abs_upper(self) -> Decimal:
        """Certified upper bound of the represented quantity's magnitude."""
        return _UP.add(self.value.copy_abs(), self.err)

    def abs_lower(self) -> Decimal:
        """Certified lower bound of the magnitude (clamped at zero)."""
        lb = _DOWN.subtract(self.value.copy_abs(), self.err)
        return lb if lb > 0 else _ZERO

    def __float__(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:
        return f"ApproxScalar({self.value} ± {self.err}, {self.digits}d)"

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ApproxScalar):
            return other
        if isinstance(other, int):
            return ApproxScalar.exact(other, self.digits)
        if isinstance(other, Fraction):
            return approx_from_exact(other, self.digits)
        if isinstance(other, Decimal):
            return ApproxScalar(other, _ZERO, self.digits)
        return None

    # -- ring operations ----------------------------------------------------

    def _add_like(self, other, sign: int):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = min(self.digits, o.digits)
        ctx = _value_ctx(d)
        ctx.clear_flags()
        ov = o.value.copy_negate() if sign < 0 else o.value
        v = ctx.add(self.value, ov)
        e = _UP.add(self.err, o.err)
        if ctx.flags[Inexact]:
            e = _UP.add(e, _ulp(v, d))
        return ApproxScalar(v, e, d)

    def __add__(self, other):
        return self._add_like(other, +1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._add_like(other, -1)

    def __rsub__(self, other):
        r = self._add_like(other, -1)
        return -r if r is not NotImplemented else r

    def __neg__(self):
        return ApproxScalar(self.value.copy_negate(), self.err, self.digits)

    def __abs__(self):
        return ApproxScalar(self.value.copy_abs(), self.err, self.digits)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = min(self.digits, o.digits)
        ctx = _value_ctx(d)
        ctx.clear_flags()
        v = ctx.multiply(self.value, o.value)
        e = _UP.add(
            _UP.add(
                _UP.multiply(self.value.copy_abs(), o.err),
                _UP.multiply(o.value.copy_abs(), self.err),
            ),
            _UP.multiply(self.err, o.err),
        )
        if ctx.flags[Inexact]:
            e = _UP.add(e, _ulp(v, d))
        return ApproxScalar(v, e, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _div(self, o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _div(o, self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return _int_pow(self, n)

    # -- comparisons (midpoint only; see class docstring) -------------------

    def _cmp_value(self, other):
        o = self._coerce(other)
        return None if o is None else o.value

    def __lt__(self, other):
        ov = self._cmp_value(other)
        return NotImplemented if ov is None else self.value < ov

    def __le__(self, other):
        ov = self._cmp_value(other)
        return NotImplemented if ov is None else self.value <= ov

    def __gt__(self, other):
        ov = self._cmp_value(other)
        return NotImplemented if ov is None else self.value > ov

    def __ge__(self, other):
        ov = self._cmp_value(other)
        return NotImplemented if ov is None else self.value >= ov

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, ApproxScalar) else other
        if o is None:
            return NotImplemented
        return self.value == o.value and self.err == o.err

    def __hash__(self):
        return hash((self.value, self.err))

    # -- transcendental kernel ----------------------------------------------

    def sqrt(self) -> "ApproxScalar":
        """Square root with certified bound; needs value - err >= 0."""
        d = self.digits
        ctx = _value_ctx(d)
        if self.value < 0:
            raise DomainError("sqrt of negative value")
        lb = _DOWN.subtract(self.value, self.err)
        if lb < 0:
            raise PrecisionError("sqrt: interval not certified nonnegative")
        ctx.clear_flags()
        s = ctx.sqrt(self.value)
        if self.value == 0:
            e = _UP.sqrt(self.err)
        else:
            # |sqrt(x) - sqrt(v)| = |x - v| / (sqrt(x) + sqrt(v)) <= err / sqrt(v)
            s_lo = _DOWN.sqrt(self.value)
            e = _UP.divide(self.err, s_lo)
        if ctx.flags[Inexact]:
            e = _UP.add(e, _ulp(s, d))
        return ApproxScalar(s, e, d)

    def ln(self) -> "ApproxScalar":
        """Natural log; the interval must be certified positive."""
        d = self.digits
        lb = _DOWN.subtract(self.value, self.err)
        if lb <= 0:
            raise DomainError("ln: interval not certified positive")
        ctx = _value_ctx(d)
        ctx.clear_flags()
        v = ctx.ln(self.value)
        e = _UP.divide(self.err, lb)
        if ctx.flags[Inexact]:
            e = _UP.add(e, _ulp(v, d))
        return ApproxScalar(v, e, d)

    def exp(self) -> "ApproxScalar":
        d = self.digits
        if self.err >= 1:
            raise PrecisionError("exp: error bound too wide")
        ctx = _value_ctx(d)
        ctx.clear_flags()
        v = ctx.exp(self.value)
        # |e^x - e^v| <= e^v (e^err - 1) <= e^v * err/(1 - err)
        grow = _UP.divide(self.err, _DOWN.subtract(_ONE, self.err))
        e = _UP.multiply(_UP.add(v.copy_abs(), _ulp(v, d)), grow)
        if ctx.flags[Inexact]:
            e = _UP.add(e, _ulp(v, d))
        return ApproxScalar(v, e, d)

    def pow_rational(self, r: Fraction) -> "ApproxScalar":
        """x ** r for positive x and exact rational exponent, via exp(r ln x)."""
        if r.denominator == 1:
            return _int_pow(self, r.numerator)
        return (self.ln() * r).exp()


def _div(a: ApproxScalar, b: ApproxScalar) -> ApproxScalar:
    d = min(a.digits, b.digits)
    lb = _DOWN.subtract(b.value.copy_abs(), b.err)
    if lb <= 0:
        raise PrecisionError("division: divisor interval contains zero")
    ctx = _value_ctx(d)
    ctx.clear_flags()
    v = ctx.divide(a.value, b.value)
    num = _UP.add(
        _UP.multiply(a.err, b.value.copy_abs()),
        _UP.multiply(a.value.copy_abs(), b.err),
    )
    e = _UP.divide(num, _DOWN.multiply(b.value.copy_abs(), lb))
    if ctx.flags[Inexact]:
        e = _UP.add(e, _ulp(v, d))
    return ApproxScalar(v, e, d)


def _int_pow(x: ApproxScalar, n: int) -> ApproxScalar:
    if n == 0:
        return ApproxScalar.exact(1, x.digits)
    if n < 0:
        return ApproxScalar.exact(1, x.digits) / _int_pow(x, -n)
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    return result


def approx_from_exact(x: Fraction | int, digits: int = DEFAULT_DIGITS) -> ApproxScalar:
    """Round an exact rational to ``digits`` working precision.

    The bound satisfies |value - x| <= err <= 10^(1-digits) * max(1, |x|),
    and err == 0 whenever the decimal expansion terminates within the
    working precision.
    """
    if digits < 1:
        raise DomainError("digits must be >= 1")
    x = Fraction(x)
    ctx = _value_ctx(digits)
    ctx.clear_flags()
    v = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    e = _ulp(v, digits) if ctx.flags[Inexact] else _ZERO
    return ApproxScalar(v, e, digits)


def as_approx(x, digits: int = DEFAULT_DIGITS) -> ApproxScalar:
    """Coerce int/Fraction/Decimal/ApproxScalar to ApproxScalar."""
    if isinstance(x, ApproxScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return approx_from_exact(Fraction(x), digits)
    if isinstance(x, Decimal):
        return ApproxScalar(x, _ZERO, digits)
    raise TypeError(f"cannot convert {type(x).__name__} to ApproxScalar")


def exact_pow(x: Fraction, n: int) -> Fraction:
    """x**n in exact arithmetic; zero base with negative exponent is an error."""
    if x == 0 and n < 0:
        raise DomainError("0 cannot be raised to a negative power")
    return Fraction(x) ** n


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def consistent_within(a: ApproxScalar, b: ApproxScalar) -> bool:
    """True when the two certified intervals overlap."""
    gap = abs_diff_upper(a.value, b.value)
    return gap <= _UP.add(a.err, b.err)
