"""Integer multiplication and division by doubling and halving.

Both algorithms run on the binary expansion of one operand: multiplication
accumulates the doublings selected by the 1-digits of the multiplier
(evaluation mode), and division recovers those digits by comparing against
halved multiples of the divisor (solving mode).  Arithmetic is 64-bit
unsigned with checked overflow; a doubling or accumulation that would wrap
raises :class:`~duplation.errors.OverflowRangeError` instead of producing a
value that breaks the loop invariants.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, OverflowRangeError
from .trace import TraceLog

__all__ = ["U64_MAX", "BinaryExpansion", "QuotRem", "binary_digits", "egyptian_mul", "div_qr"]

U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class BinaryExpansion:
    """Positions of the 1-digits of a non-negative integer, ascending."""

    bit_positions: tuple[int, ...]

    def __post_init__(self) -> None:
        for pos in self.bit_positions:
            if not isinstance(pos, int) or pos < 0:
                raise DomainError(f"bit position {pos!r} is not a non-negative integer")
        if any(a >= b for a, b in zip(self.bit_positions, self.bit_positions[1:])):
            raise DomainError("bit positions must be strictly ascending")

    def to_int(self) -> int:
        """Reconstruct the integer this expansion represents."""
        return sum(1 << pos for pos in self.bit_positions)


@dataclass(frozen=True)
class QuotRem:
    """Quotient/remainder pair: for inputs (a, d), a == quotient*d + remainder."""

    quotient: int
    remainder: int

    def __post_init__(self) -> None:
        if self.quotient < 0 or self.remainder < 0:
            raise DomainError("quotient and remainder must be non-negative")


def _require_u64(name: str, value: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DomainError(f"{name} must be an integer, got {type(value).__name__}")
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value}")
    if value > U64_MAX:
        raise OverflowRangeError(f"{name} = {value} exceeds the 64-bit unsigned range")
    return value


def binary_digits(n: int) -> BinaryExpansion:
    """Return the positions of the 1-digits of ``n`` (empty iff n == 0)."""
    _require_u64("n", n)
    positions = []
    pos = 0
    while n:
        if n & 1:
            positions.append(pos)
        n >>= 1
        pos += 1
    return BinaryExpansion(tuple(positions))


def egyptian_mul(a: int, b: int, trace: TraceLog | None = None) -> int:
    """Multiply by accumulating the doublings of ``a`` picked by ``b``'s 1-digits.

    One trace row is recorded per binary digit of ``b`` (power-of-two
    multiplier, doubled value, marked flag), so a Figure-style doubling table
    is a pure rendering of the log.
    """
    _require_u64("a", a)
    _require_u64("b", b)
    if trace is not None:
        trace.begin("egyptian_mul", {"a": a, "b": b})
    a0, b0 = a, b
    r = 0
    power = 1
    while b > 0:
        assert a0 * b0 == r + a * b  # doubling invariant: original product intact
        if b & 1:
            if r + a > U64_MAX:
                raise OverflowRangeError(
                    f"accumulating {a} onto {r} at multiplier {power} exceeds the 64-bit range"
                )
            r += a
        if trace is not None:
            trace.record(power=power, doubled=a, marked=bool(b & 1))
        b >>= 1
        if b:
            # no doubling after the last digit: peak intermediate stays <= a0*b0
            if a > U64_MAX - a:
                raise OverflowRangeError(
                    f"doubling {a} at multiplier {power} exceeds the 64-bit range"
                )
            a += a
            power <<= 1
    assert a0 * b0 == r
    if trace is not None:
        trace.finish(r)
    return r


def div_qr(a: int, d: int, trace: TraceLog | None = None) -> QuotRem:
    """Quotient and remainder by doubling the divisor, then halving with subtraction.

    The identity a == q*dd + r holds at every program point of both loops and
    is asserted at each one.
    """
    _require_u64("a", a)
    _require_u64("d", d)
    if d == 0:
        raise DomainError("divisor must be positive")
    if trace is not None:
        trace.begin("div_qr", {"a": a, "d": d})
    r, dd, q = a, d, 0
    assert a == q * dd + r
    while dd <= r:
        if dd > U64_MAX - dd:
            raise OverflowRangeError(
                f"doubling the divisor multiple {dd} exceeds the 64-bit range"
            )
        dd += dd
    # dd is now the least doubling of d that exceeds r
    assert a == q * dd + r
    while dd != d:
        assert a == q * dd + r
        dd //= 2
        q += q
        assert a == q * dd + r
        took = dd <= r
        if took:
            r -= dd
            q += 1
        assert a == q * dd + r
        if trace is not None:
            trace.record(multiple=dd, digit=1 if took else 0, remainder=r, quotient=q)
    result = QuotRem(q, r)
    if trace is not None:
        trace.finish(result)
    return result
