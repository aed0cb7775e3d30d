"""Square roots, fractional powers and logarithms by squaring and square-rooting.

The square root is the half-step primitive here, exactly as halving is for
the integer algorithms: powers evaluate a binary-expansion exponent
(evaluation mode), logarithms recover one digit at a time (solving mode).
All functions work in binary64 and are pure; tolerances and iteration caps
travel in an immutable :class:`ToleranceConfig`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import ConvergenceError, DomainError, OverflowRangeError
from .intops import U64_MAX
from .trace import TraceLog

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOLERANCES",
    "RationalExponent",
    "BinaryFraction",
    "BriggsChain",
    "SQRT_CORRECTLY_ROUNDED",
    "SQRT_HERON",
    "heron_sqrt",
    "pow_rational",
    "pow_real",
    "log_base",
    "briggs_chain",
]

# A binary64 sqrt chain from any finite base > 1 dies out in < 63 steps;
# this cap only catches a ToleranceConfig that cripples heron_sqrt.
_CHAIN_CAP = 64

# The Heron walk from x0 = 1 halves its way to sqrt(a) before converging
# quadratically, so extreme magnitudes need ~|log2 a|/2 + ~60 iterations
# (<= ~600 for any binary64 value).  Algorithm-internal square roots run with
# at least this cap: the power loops legitimately square bases out to 1e±192
# even when caller inputs are modest.
_SQRT_WALK_CAP = 1100

SQRT_CORRECTLY_ROUNDED = "correctly_rounded"
SQRT_HERON = "heron"


@dataclass(frozen=True)
class ToleranceConfig:
    """Convergence thresholds plus the safety caps the algorithms need.

    ``heron_eps`` bounds the last Heron step (relative to the iterate by
    default; set ``heron_relative_mode=False`` for the plain absolute test,
    which reproduces small-range behavior but loses accuracy below 1).
    ``pow_eps`` is the width of the "close enough to 1" window that ends the
    power and logarithm loops.
    """

    heron_eps: float = 1.0e-16
    pow_eps: float = 1.0e-14
    max_iterations: int = 200
    heron_relative_mode: bool = True

    def __post_init__(self) -> None:
        if not (self.heron_eps > 0.0 and self.pow_eps > 0.0):
            raise DomainError("tolerances must be positive")
        if self.max_iterations < 1:
            raise DomainError("max_iterations must be at least 1")


DEFAULT_TOLERANCES = ToleranceConfig()


@dataclass(frozen=True)
class RationalExponent:
    """Exponent p/q with non-negative integer p and positive integer q."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool) or self.p < 0:
            raise DomainError(f"p must be a non-negative integer, got {self.p!r}")
        if not isinstance(self.q, int) or isinstance(self.q, bool) or self.q < 1:
            raise DomainError(f"q must be a positive integer, got {self.q!r}")
        if self.p > U64_MAX or self.q > U64_MAX:
            raise OverflowRangeError("exponent components exceed the 64-bit unsigned range")


@dataclass(frozen=True)
class BinaryFraction:
    """Binary digits d_i of a value in [0, 1), value = sum of d_i * 2^-i.

    ``digits[k]`` is d_{k+1}.  ``value`` is the correctly rounded binary64
    sum, exact whenever the digit span fits in 53 bits.
    """

    digits: tuple[int, ...]
    value: float

    def __post_init__(self) -> None:
        if any(d not in (0, 1) for d in self.digits):
            raise DomainError("digits must be 0 or 1")
        if not 0.0 <= self.value < 1.0:
            raise DomainError(f"value {self.value!r} outside [0, 1)")
        if self.value != _dyadic_value(self.digits):
            raise DomainError("value does not equal the rounded digit sum")


def _dyadic_value(digits: tuple[int, ...]) -> float:
    numerator = 0
    for d in digits:
        numerator = (numerator << 1) | d
    # int/int division is correctly rounded, so the sum is exact when representable
    return numerator / (1 << len(digits)) if digits else 0.0


@dataclass(frozen=True)
class BriggsChain:
    """Successive square roots of a base, collected while they exceed 1."""

    base: float
    values: tuple[float, ...]
    count: int

    def __post_init__(self) -> None:
        if self.count != len(self.values):
            raise DomainError("count must equal the number of collected values")
        if any(v <= 1.0 for v in self.values):
            raise DomainError("every chain value must exceed 1")
        if any(u <= v for u, v in zip(self.values, self.values[1:])):
            raise DomainError("chain values must be strictly decreasing")


def _require_real(name: str, value: float) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {value!r}") from None
    if math.isnan(value) or math.isinf(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def _converged(diff: float, x: float, cfg: ToleranceConfig) -> bool:
    if cfg.heron_relative_mode:
        return abs(diff) <= cfg.heron_eps * x
    return -cfg.heron_eps < diff < cfg.heron_eps


def heron_sqrt(a: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES, trace: TraceLog | None = None) -> float:
    """Square root by averaging the guess with the quotient, from x0 = 1.

    The step size halts the loop (relative test by default); the error
    roughly squares every iteration, so the digit count doubles.  With the
    default 200-iteration cap the walk from x0 = 1 covers |log10 a| up to
    about 118; raise ``max_iterations`` for more extreme magnitudes.
    """
    a = _require_real("a", a)
    if a < 0.0:
        raise DomainError(f"square root argument must be non-negative, got {a!r}")
    if trace is not None:
        trace.begin("heron", {"a": a}, asdict(cfg))
    if a == 0.0:
        # the iteration from 1.0 only reaches 0 in the limit
        if trace is not None:
            trace.finish(0.0)
        return 0.0
    x = 1.0
    for _ in range(cfg.max_iterations):
        newx = (x + a / x) / 2.0
        diff = x - newx
        x = newx
        if trace is not None:
            trace.record(estimate=newx, change=diff)
        if _converged(diff, x, cfg):
            if trace is not None:
                trace.finish(x)
            return x
    raise ConvergenceError(
        f"square root of {a!r} did not meet the convergence test in {cfg.max_iterations} iterations"
    )


def _require_positive_base(a: float) -> float:
    a = _require_real("a", a)
    if a <= 0.0:
        raise DomainError(f"base must be positive, got {a!r}")
    return a


def _inner_sqrt_cfg(cfg: ToleranceConfig) -> ToleranceConfig:
    if cfg.max_iterations >= _SQRT_WALK_CAP:
        return cfg
    return ToleranceConfig(
        heron_eps=cfg.heron_eps,
        pow_eps=cfg.pow_eps,
        max_iterations=_SQRT_WALK_CAP,
        heron_relative_mode=cfg.heron_relative_mode,
    )


def _checked_square(a: float, what: str) -> float:
    a = a * a
    if math.isinf(a) or a == 0.0:
        raise OverflowRangeError(f"squaring the {what} left the binary64 range")
    return a


def pow_rational(
    a: float,
    e: RationalExponent,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    trace: TraceLog | None = None,
) -> float:
    """Raise ``a`` to p/q using only squaring, square roots and multiplication.

    While p > q the base is squared and the exponent ratio halved (even p
    halves p, odd p doubles q).  Then the ratio dances around 1: a square
    root doubles p, a factor taken into the accumulator subtracts q from p.
    The accumulator times a^(p/q) equals the original power after every step.
    """
    a = _require_positive_base(a)
    if not isinstance(e, RationalExponent):
        raise DomainError(f"exponent must be a RationalExponent, got {type(e).__name__}")
    p, q = e.p, e.q
    if trace is not None:
        trace.begin("pow_rational", {"a": a, "p": p, "q": q}, asdict(cfg))
    z = 1.0
    eps = cfg.pow_eps
    sqrt_cfg = _inner_sqrt_cfg(cfg)
    iterations = 0
    while p > q:
        iterations += 1
        if iterations > cfg.max_iterations:
            raise ConvergenceError(f"exponent reduction exceeded {cfg.max_iterations} iterations")
        if p % 2 == 0:
            p //= 2
        else:
            if q > U64_MAX - q:
                raise OverflowRangeError(f"doubling the exponent denominator {q} exceeds the 64-bit range")
            q += q
        a = _checked_square(a, "base")
        if trace is not None:
            trace.record(phase="reduce", p=p, q=q, base=a, accumulator=z)
    while True:
        iterations += 1
        if iterations > cfg.max_iterations:
            raise ConvergenceError(f"power iteration exceeded {cfg.max_iterations} iterations")
        if 1.0 - eps < a < 1.0 + eps:
            result = z
            break
        if p == q:
            result = z * a
            break
        if p < q:
            a = heron_sqrt(a, sqrt_cfg)
            if p > U64_MAX - p:
                raise OverflowRangeError(f"doubling the exponent numerator {p} exceeds the 64-bit range")
            p += p
        else:
            p -= q
            z = z * a
        if trace is not None:
            trace.record(phase="dance", p=p, q=q, base=a, accumulator=z)
    if trace is not None:
        trace.finish(result)
    return result


def pow_real(
    a: float,
    t: float,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    trace: TraceLog | None = None,
) -> float:
    """Raise ``a`` to a non-negative real ``t`` by the same squaring/rooting walk.

    First loop: halve t while squaring a until t <= 1 (exact halvings).  Then
    t dances around 1: crossing 1 moves a factor into the accumulator,
    staying below doubles t and square-roots a.  The accumulator times a^t
    equals the original power after every recorded step.
    """
    a = _require_positive_base(a)
    t = _require_real("t", t)
    if t < 0.0:
        raise DomainError(f"exponent must be non-negative, got {t!r}")
    if trace is not None:
        trace.begin("pow_real", {"a": a, "t": t}, asdict(cfg))
    z = 1.0
    eps = cfg.pow_eps
    sqrt_cfg = _inner_sqrt_cfg(cfg)
    while t > 1.0:
        t = t / 2.0
        a = _checked_square(a, "base")
        if trace is not None:
            trace.record(phase="reduce", exponent=t, base=a, accumulator=z)
    iterations = 0
    while a < 1.0 - eps or 1.0 + eps < a:
        iterations += 1
        if iterations > cfg.max_iterations:
            raise ConvergenceError(f"power iteration exceeded {cfg.max_iterations} iterations")
        if t >= 1.0:
            t = t - 1.0  # exact: t in [1, 2)
            z = z * a
            if trace is not None:
                trace.record(phase="dance", exponent=t, base=a, accumulator=z)
        if t < 1.0:
            t = 2.0 * t
            a = heron_sqrt(a, sqrt_cfg)
            if trace is not None:
                trace.record(phase="dance", exponent=t, base=a, accumulator=z)
    if trace is not None:
        trace.finish(z)
    return z


def log_base(
    b: float,
    a: float,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    trace: TraceLog | None = None,
) -> BinaryFraction:
    """Extract the binary digits of log_b(a) for 1 <= a < b.

    Step k square-roots the base chain (root = b^(2^-k)) and takes digit
    d_k = 1 exactly when multiplying the reached power by the root stays
    within a; an exact tie also takes the digit while the root still exceeds
    1 (a tie at root == 1.0 contributes nothing and is refused).  The loop
    ends when the chain no longer exceeds 1 in binary64.
    """
    b = _require_real("b", b)
    a = _require_real("a", a)
    if b <= 1.0:
        raise DomainError(f"base must exceed 1, got {b!r}")
    if not 1.0 <= a < b:
        raise DomainError(f"argument must satisfy 1 <= a < base, got a={a!r}, base={b!r}")
    if trace is not None:
        trace.begin("log_base", {"b": b, "a": a}, asdict(cfg))
    z = 1.0
    frac = 1.0
    sqrt_cfg = _inner_sqrt_cfg(cfg)
    digits: list[int] = []
    while b > 1.0:
        if len(digits) >= _CHAIN_CAP:
            raise ConvergenceError(f"square-root chain exceeded {_CHAIN_CAP} steps; check the config")
        b = heron_sqrt(b, sqrt_cfg)
        frac /= 2.0
        reached = z * b
        take = reached < a or (reached == a and b > 1.0)
        if take:
            z = reached
        digits.append(1 if take else 0)
        if trace is not None:
            trace.record(digit=digits[-1], root=b, power_reached=z, weight=frac)
    result = BinaryFraction(tuple(digits), _dyadic_value(tuple(digits)))
    if trace is not None:
        trace.finish(result)
    return result


def briggs_chain(
    b: float,
    sqrt_mode: str = SQRT_CORRECTLY_ROUNDED,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    trace: TraceLog | None = None,
) -> BriggsChain:
    """Collect the successive square roots of ``b`` while they exceed 1.

    In binary64 the chain from 10 has exactly 53 distinct members, one per
    significand bit.  ``sqrt_mode`` picks the platform's correctly rounded
    square root or this module's Heron iteration (whose fixed point can sit
    one ulp away, shifting the count by one).
    """
    b = _require_real("b", b)
    if b <= 1.0:
        raise DomainError(f"base must exceed 1, got {b!r}")
    if sqrt_mode not in (SQRT_CORRECTLY_ROUNDED, SQRT_HERON):
        raise DomainError(f"unknown sqrt_mode {sqrt_mode!r}")
    if trace is not None:
        trace.begin("briggs", {"b": b, "sqrt_mode": sqrt_mode}, asdict(cfg))
    if sqrt_mode == SQRT_CORRECTLY_ROUNDED:
        root = math.sqrt
    else:
        sqrt_cfg = _inner_sqrt_cfg(cfg)
        root = lambda v: heron_sqrt(v, sqrt_cfg)
    values: list[float] = []
    v = root(b)
    while v > 1.0:
        if len(values) >= _CHAIN_CAP:
            raise ConvergenceError(f"square-root chain exceeded {_CHAIN_CAP} steps; check the config")
        values.append(v)
        if trace is not None:
            trace.record(value=v)
        v = root(v)
    chain = BriggsChain(base=b, values=tuple(values), count=len(values))
    if trace is not None:
        trace.finish(chain)
    return chain
