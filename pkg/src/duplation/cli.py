"""Command-line front end: every algorithm with tracing and tolerance flags.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 overflow,
4 non-convergence.  Results go to stdout; in text trace mode the step table
follows the result, in json trace mode the trace document is the only
output.  Errors go to stderr only.
"""

from __future__ import annotations

import argparse
import math
import sys

from .errors import ConvergenceError, DomainError, OverflowRangeError
from .intops import div_qr, egyptian_mul
from .realops import (
    DEFAULT_TOLERANCES,
    SQRT_CORRECTLY_ROUNDED,
    SQRT_HERON,
    RationalExponent,
    ToleranceConfig,
    briggs_chain,
    heron_sqrt,
    log_base,
    pow_rational,
    pow_real,
)
from .trace import (
    TraceLog,
    render_briggs,
    render_division,
    render_heron,
    render_log_digits,
    render_power,
    render_rhind,
    to_json,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_OVERFLOW = 3
EXIT_NO_CONVERGENCE = 4


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default, which collides with the
    # domain-error code; remap to 1
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _uint(text: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a decimal integer (no fractions), got {text!r}"
        ) from None


def _real(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a real number, got {text!r}") from None


def _build_parser() -> _Parser:
    parser = _Parser(prog="duplation", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trace", choices=("off", "text", "json"), default="off",
                        help="emit the step table (text) or the full trace document (json)")
    common.add_argument("--heron-eps", type=_real, default=None, metavar="EPS",
                        help="square-root convergence threshold")
    common.add_argument("--pow-eps", type=_real, default=None, metavar="EPS",
                        help="width of the near-1 window ending power/log loops")
    common.add_argument("--max-iterations", type=_uint, default=None, metavar="N",
                        help="iteration cap before a non-convergence error")
    common.add_argument("--paper-faithful", action="store_true",
                        help="use the absolute square-root convergence test")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("mul", parents=[common], help="multiply two non-negative integers by doubling")
    p.add_argument("a", type=_uint)
    p.add_argument("b", type=_uint)

    p = sub.add_parser("divmod", parents=[common], help="quotient and remainder by doubling and halving")
    p.add_argument("a", type=_uint)
    p.add_argument("d", type=_uint)

    p = sub.add_parser("sqrt", parents=[common], help="square root by averaging guess and quotient")
    p.add_argument("a", type=_real)

    p = sub.add_parser("pow", parents=[common],
                       help="a^(p/q) as 'pow A P Q', or a^t as 'pow A --exp T'")
    p.add_argument("a", type=_real)
    p.add_argument("p", type=_uint, nargs="?", default=None)
    p.add_argument("q", type=_uint, nargs="?", default=None)
    p.add_argument("--exp", type=_real, default=None, metavar="T",
                   help="real exponent (instead of the P Q pair)")

    p = sub.add_parser("log", parents=[common], help="binary digits of log_b(a), 1 <= a < b")
    p.add_argument("b", type=_real)
    p.add_argument("a", type=_real)

    p = sub.add_parser("briggs", parents=[common], help="count the square roots of b that exceed 1")
    p.add_argument("b", type=_real)
    p.add_argument("--sqrt-mode", choices=("correctly-rounded", "heron"),
                   default="correctly-rounded")
    return parser


def _config_from(ns: argparse.Namespace) -> ToleranceConfig:
    base = DEFAULT_TOLERANCES
    return ToleranceConfig(
        heron_eps=ns.heron_eps if ns.heron_eps is not None else base.heron_eps,
        pow_eps=ns.pow_eps if ns.pow_eps is not None else base.pow_eps,
        max_iterations=ns.max_iterations if ns.max_iterations is not None else base.max_iterations,
        heron_relative_mode=not ns.paper_faithful,
    )


def _format_real(x: float) -> str:
    return repr(x)


def _run(ns: argparse.Namespace, parser: _Parser) -> tuple[str, TraceLog | None, str | None]:
    """Returns (result line, trace log or None, renderer name)."""
    trace = TraceLog() if ns.trace != "off" else None
    cfg = _config_from(ns)
    if ns.command == "mul":
        product = egyptian_mul(ns.a, ns.b, trace=trace)
        return str(product), trace, "rhind"
    if ns.command == "divmod":
        qr = div_qr(ns.a, ns.d, trace=trace)
        return f"{qr.quotient} {qr.remainder}", trace, "division"
    if ns.command == "sqrt":
        return _format_real(heron_sqrt(ns.a, cfg, trace=trace)), trace, "heron"
    if ns.command == "pow":
        rational = ns.p is not None or ns.q is not None
        if rational == (ns.exp is not None):
            parser.error("pow takes either positional P Q or --exp T, not both or neither")
        if rational:
            if ns.q is None:
                parser.error("pow with a rational exponent needs both P and Q")
            result = pow_rational(ns.a, RationalExponent(ns.p, ns.q), cfg, trace=trace)
        else:
            result = pow_real(ns.a, ns.exp, cfg, trace=trace)
        return _format_real(result), trace, "pow"
    if ns.command == "log":
        fraction = log_base(ns.b, ns.a, cfg, trace=trace)
        return _format_real(fraction.value), trace, "log_digits"
    if ns.command == "briggs":
        mode = SQRT_HERON if ns.sqrt_mode == "heron" else SQRT_CORRECTLY_ROUNDED
        chain = briggs_chain(ns.b, mode, cfg, trace=trace)
        return str(chain.count), trace, "briggs"
    raise AssertionError(f"unhandled command {ns.command!r}")


_RENDERERS = {
    "rhind": render_rhind,
    "division": render_division,
    "heron": render_heron,
    "log_digits": render_log_digits,
    "briggs": render_briggs,
    "pow": render_power,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    try:
        line, trace, renderer = _run(ns, parser)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    except DomainError as exc:
        print(f"duplation: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OverflowRangeError as exc:
        print(f"duplation: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except ConvergenceError as exc:
        print(f"duplation: did not converge: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    if ns.trace == "json":
        sys.stdout.write(to_json(trace))
        return EXIT_OK
    print(line)
    if ns.trace == "text":
        sys.stdout.write(_RENDERERS[renderer](trace))
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
