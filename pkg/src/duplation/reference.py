"""Independent oracles for the test and acceptance suites.

Everything here computes with exact rational arithmetic
(:class:`fractions.Fraction` endpoints, ``math.isqrt`` for directed square
roots) and returns guaranteed enclosures.  None of it calls the algorithms
it judges: powers come from exact integer powers plus either an iterated
square-root chain (dyadic exponents) or bisection on y^q = a^p (ratio
exponents), and logarithms from bisection on the power oracle.

Not meant for production use; correctness over speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, OverflowRangeError
from .intops import U64_MAX, QuotRem

__all__ = ["OracleResult", "ref_mul", "ref_divmod", "ref_pow", "ref_log"]

# Working precision of interval endpoints (bits after the point).  Chains run
# at most ~1100 operations, each widening by 2^-_PREC relative, so enclosures
# stay ~50 orders of magnitude inside the promised 1e-12 bound.
_PREC = 192

_MAX_RATIO_DENOMINATOR = 1 << 16  # bisection route computes mid**q exactly


@dataclass(frozen=True)
class OracleResult:
    """A value with a guaranteed enclosure half-width around it."""

    value: float
    error_bound: float

    def __post_init__(self) -> None:
        if self.error_bound < 0.0:
            raise DomainError("error_bound must be non-negative")


def ref_mul(a: int, b: int) -> int:
    """Product by built-in integer arithmetic, checked to 64-bit range."""
    _check_u64("a", a)
    _check_u64("b", b)
    product = a * b
    if product > U64_MAX:
        raise OverflowRangeError(f"{a} * {b} exceeds the 64-bit unsigned range")
    return product


def ref_divmod(a: int, d: int) -> QuotRem:
    """Quotient/remainder by built-in divmod, checked."""
    _check_u64("a", a)
    _check_u64("d", d)
    if d == 0:
        raise DomainError("divisor must be positive")
    q, r = divmod(a, d)
    return QuotRem(q, r)


def _check_u64(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DomainError(f"{name} must be an integer, got {type(value).__name__}")
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value}")
    if value > U64_MAX:
        raise OverflowRangeError(f"{name} = {value} exceeds the 64-bit unsigned range")


# ---------------------------------------------------------------------------
# Exact-rational interval endpoints.  All values are positive; rounding keeps
# ~_PREC significant bits (relative, not fixed-point: products reach 1e+-300).

def _round_down(x: Fraction, prec: int = _PREC) -> Fraction:
    if x == 0:
        return x
    shift = prec - (x.numerator.bit_length() - x.denominator.bit_length())
    if shift >= 0:
        return Fraction((x.numerator << shift) // x.denominator, 1 << shift)
    return Fraction((x.numerator // (x.denominator << -shift)) << -shift, 1)


def _round_up(x: Fraction, prec: int = _PREC) -> Fraction:
    if x == 0:
        return x
    shift = prec - (x.numerator.bit_length() - x.denominator.bit_length())
    if shift >= 0:
        return Fraction(-((-x.numerator << shift) // x.denominator), 1 << shift)
    return Fraction(-((-x.numerator) // (x.denominator << -shift)) << -shift, 1)


def _sqrt_down(x: Fraction, prec: int = _PREC) -> Fraction:
    if x == 0:
        return x
    s = max(0, prec - (x.numerator.bit_length() - x.denominator.bit_length()) // 2)
    scaled = (x.numerator << (2 * s)) // x.denominator
    return Fraction(math.isqrt(scaled), 1 << s)


def _sqrt_up(x: Fraction, prec: int = _PREC) -> Fraction:
    if x == 0:
        return x
    s = max(0, prec - (x.numerator.bit_length() - x.denominator.bit_length()) // 2)
    scaled = -((-x.numerator << (2 * s)) // x.denominator)  # ceil(x * 4^s)
    root = math.isqrt(scaled)
    if root * root < scaled:
        root += 1
    return Fraction(root, 1 << s)


def _mul_interval(lo1: Fraction, hi1: Fraction, lo2: Fraction, hi2: Fraction) -> tuple[Fraction, Fraction]:
    return _round_down(lo1 * lo2), _round_up(hi1 * hi2)


@lru_cache(maxsize=256)
def _root_chain(base: Fraction, length: int) -> tuple[tuple[Fraction, Fraction], ...]:
    """Enclosures of base^(2^-i) for i = 1..length."""
    chain = []
    lo = hi = base
    for _ in range(length):
        lo, hi = _sqrt_down(lo), _sqrt_up(hi)
        chain.append((lo, hi))
    return tuple(chain)


def _pow_dyadic(base: Fraction, exponent: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of base**exponent for exponent = m/2^k in [0, 1)."""
    if exponent == 0:
        return Fraction(1), Fraction(1)
    k = exponent.denominator.bit_length() - 1
    m = exponent.numerator
    # chain lengths rounded up so repeated probes against one base share a cache entry
    chain = _root_chain(base, k if k > 64 else 64)
    lo, hi = Fraction(1), Fraction(1)
    for i in range(1, k + 1):
        if (m >> (k - i)) & 1:
            rlo, rhi = chain[i - 1]
            lo, hi = _mul_interval(lo, hi, rlo, rhi)
    return lo, hi


def _pow_ratio_bisect(base: Fraction, exponent: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of base**(p/q) for 0 < p/q < 1 by bisection on y**q = base**p.

    Endpoints stay dyadic so every comparison is exact; no rounding slop.
    """
    p, q = exponent.numerator, exponent.denominator
    if q > _MAX_RATIO_DENOMINATOR:
        raise DomainError(f"ratio exponent denominator {q} beyond the oracle's supported range")
    target = base**p
    lo, hi = (base, Fraction(1)) if base < 1 else (Fraction(1), base)
    for _ in range(_PREC + 80):
        mid = _round_down((lo + hi) / 2)
        if not lo < mid < hi:
            break
        if mid**q <= target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= hi * Fraction(1, 1 << 80):
            break
    return lo, hi


def _enclosure_to_result(lo: Fraction, hi: Fraction) -> OracleResult:
    value = float((lo + hi) / 2)
    slack = max(Fraction(value) - lo, hi - Fraction(value), Fraction(0))
    bound = float(slack)
    if Fraction(bound) < slack:  # float() rounds to nearest; the bound may not round down
        bound = math.nextafter(bound, math.inf)
    return OracleResult(value, bound)


def ref_pow(a: float, t: float | Fraction) -> OracleResult:
    """Enclose a**t for positive finite a and non-negative exponent t.

    ``t`` may be a float (treated as the exact dyadic rational it is) or a
    Fraction such as p/q.  The integer part is an exact rational power; the
    fractional part comes from the square-root chain (dyadic) or bisection
    (general ratio).
    """
    a = _check_positive_real("a", a)
    exponent = _check_exponent(t)
    base = Fraction(a)
    if base == 1 or exponent == 0:
        return OracleResult(1.0, 0.0)
    # refuse exponents whose result cannot live comfortably in binary64
    # (exact comparison: no float overflow even for astronomical exponents)
    if exponent * Fraction(abs(math.log2(a))) > 1020:
        raise OverflowRangeError(f"{a}**{t} is outside the binary64 range")
    whole, frac = divmod(exponent, 1)
    if whole > 1 << 16:
        raise DomainError(f"integer exponent part {whole} too large for the oracle")
    ipart = base ** int(whole)
    if frac == 0:
        lo = hi = ipart
    else:
        den = frac.denominator
        if den & (den - 1) == 0:
            flo, fhi = _pow_dyadic(base, frac)
        else:
            flo, fhi = _pow_ratio_bisect(base, frac)
        lo, hi = _mul_interval(ipart, ipart, flo, fhi)
    result = _enclosure_to_result(lo, hi)
    assert result.error_bound <= 1e-12 * result.value, "oracle enclosure wider than promised"
    return result


def ref_log(b: float, a: float) -> OracleResult:
    """Enclose log_b(a) for b > 1 and 1 <= a < b, by bisection on the power oracle."""
    b = _check_positive_real("b", b)
    a = _check_positive_real("a", a)
    if b <= 1.0:
        raise DomainError(f"base must exceed 1, got {b!r}")
    if not 1.0 <= a < b:
        raise DomainError(f"argument must satisfy 1 <= a < base, got a={a!r}, base={b!r}")
    if a == 1.0:
        return OracleResult(0.0, 0.0)
    base = Fraction(b)
    target = Fraction(a)
    xlo, xhi = Fraction(0), Fraction(1)
    for _ in range(48):
        mid = (xlo + xhi) / 2
        plo, phi = _pow_dyadic(base, mid)
        if phi < target:
            xlo = mid
        elif plo > target:
            xhi = mid
        else:
            # the power enclosure straddles a: mid is within width/(a*ln b) of
            # the true log, since |log_b(a/P)| <= 2|a-P| / (min(a,P) * ln b)
            # and ln b >= (b-1)/b for b > 1
            width = phi - plo
            ln_b_floor = (base - 1) / base
            slack = 2 * width / (plo * ln_b_floor)
            return _enclosure_to_result(mid - slack, mid + slack)
    return _enclosure_to_result(xlo, xhi)


def _check_positive_real(name: str, value: float) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {value!r}") from None
    if math.isnan(value) or math.isinf(value) or value <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


def _check_exponent(t: float | Fraction) -> Fraction:
    if isinstance(t, Fraction):
        exponent = t
    elif isinstance(t, int) and not isinstance(t, bool):
        exponent = Fraction(t)
    elif isinstance(t, float):
        if math.isnan(t) or math.isinf(t):
            raise DomainError(f"exponent must be finite, got {t!r}")
        exponent = Fraction(t)
    else:
        raise DomainError(f"exponent must be a real number or Fraction, got {type(t).__name__}")
    if exponent < 0:
        raise DomainError(f"exponent must be non-negative, got {t!r}")
    return exponent
