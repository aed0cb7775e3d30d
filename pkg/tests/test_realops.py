import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from duplation import (
    DEFAULT_TOLERANCES,
    SQRT_CORRECTLY_ROUNDED,
    SQRT_HERON,
    BinaryFraction,
    BriggsChain,
    ConvergenceError,
    DomainError,
    OverflowRangeError,
    RationalExponent,
    ToleranceConfig,
    TraceLog,
    briggs_chain,
    heron_sqrt,
    log_base,
    pow_rational,
    pow_real,
)

positive_reals = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False)


class TestToleranceConfig:
    def test_defaults(self):
        cfg = ToleranceConfig()
        assert cfg.heron_eps == 1e-16
        assert cfg.pow_eps == 1e-14
        assert cfg.max_iterations == 200
        assert cfg.heron_relative_mode

    @pytest.mark.parametrize("kwargs", [
        {"heron_eps": 0.0},
        {"pow_eps": -1e-3},
        {"max_iterations": 0},
    ])
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(DomainError):
            ToleranceConfig(**kwargs)


class TestHeronSqrt:
    def test_fixed_point_one(self):
        assert heron_sqrt(1.0) == 1.0

    def test_exact_square(self):
        assert heron_sqrt(4.0) == 2.0

    def test_sqrt_two_squares_back(self):
        x = heron_sqrt(2.0)
        # independent check by multiplication, then the 1-ulp pin
        assert 2.0 * (1.0 - 1e-15) <= x * x <= 2.0 * (1.0 + 1e-15)
        assert abs(x - 1.4142135623730951) <= math.ulp(1.4142135623730951)

    def test_zero_special_case(self):
        assert heron_sqrt(0.0) == 0.0

    @pytest.mark.parametrize("bad", [-1.0, float("nan"), float("inf")])
    def test_domain_errors(self, bad):
        with pytest.raises(DomainError):
            heron_sqrt(bad)

    def test_iteration_cap_raises(self):
        with pytest.raises(ConvergenceError):
            heron_sqrt(1e6, ToleranceConfig(max_iterations=2))

    def test_paper_faithful_absolute_mode_near_one(self):
        cfg = ToleranceConfig(heron_relative_mode=False)
        x = heron_sqrt(2.0, cfg)
        assert 2.0 * (1.0 - 1e-15) <= x * x <= 2.0 * (1.0 + 1e-15)

    @given(positive_reals)
    def test_square_recovers_input(self, a):
        x = heron_sqrt(a)
        assert abs(x * x - a) <= 1e-14 * a

    @given(positive_reals)
    def test_iterates_stay_above_true_root(self, a):
        # one-sided bound: after the first step every iterate squares to >= a
        log = TraceLog()
        heron_sqrt(a, trace=log)
        for event in log.events[1:]:
            x = event.payload["estimate"]
            assert x * x >= a * (1.0 - 1e-12)

    def test_digit_count_doubles_on_traced_run(self):
        log = TraceLog()
        heron_sqrt(2.0, trace=log)
        s = math.sqrt(2.0)
        iterates = [e.payload["estimate"] for e in log.events]
        digits = [-math.log10(max(abs(x - s), 1e-30) / s) for x in iterates]
        for n in range(len(iterates) - 1):
            if abs(iterates[n + 1] - s) <= 2 * math.ulp(s):
                break
            assert digits[n + 1] >= 2 * digits[n] - 1

    def test_trace_result_matches_untraced(self):
        log = TraceLog()
        assert heron_sqrt(7.25, trace=log) == heron_sqrt(7.25) == log.result


class TestPowRational:
    @pytest.mark.parametrize("a", [2.5, 1e-3, 97.1])
    def test_identity_exponent(self, a):
        assert pow_rational(a, RationalExponent(1, 1)) == a

    def test_square_root_case(self):
        assert pow_rational(4.0, RationalExponent(1, 2)) == 2.0

    def test_two_to_three_halves(self):
        r = pow_rational(2.0, RationalExponent(3, 2))
        assert abs(r * r - 2.0 * 2.0 * 2.0) <= 1e-8

    @pytest.mark.parametrize("q", [1, 7, 64])
    def test_zero_exponent(self, q):
        assert pow_rational(5.5, RationalExponent(0, q)) == 1.0

    def test_domain_error_nonpositive_base(self):
        with pytest.raises(DomainError):
            pow_rational(0.0, RationalExponent(1, 2))
        with pytest.raises(DomainError):
            pow_rational(-2.0, RationalExponent(1, 2))

    def test_exponent_validation(self):
        with pytest.raises(DomainError):
            RationalExponent(-1, 2)
        with pytest.raises(DomainError):
            RationalExponent(1, 0)

    def test_integer_width_overflow_in_denominator_scaling(self):
        # odd p keeps doubling q until it leaves the checked width
        with pytest.raises(OverflowRangeError):
            pow_rational(0.5, RationalExponent(2**64 - 1, 1))

    def test_float_range_overflow_in_base_squaring(self):
        with pytest.raises(OverflowRangeError):
            pow_rational(1e6, RationalExponent(64, 1))

    def test_invariant_holds_across_steps(self):
        log = TraceLog()
        result = pow_rational(3.7, RationalExponent(29, 12), trace=log)
        for event in log.events:
            p = event.payload
            reconstructed = p["accumulator"] * math.pow(p["base"], p["p"] / p["q"])
            assert abs(reconstructed - result) <= 1e-9 * result

    def test_trace_result_matches_untraced(self):
        log = TraceLog()
        traced = pow_rational(1.7, RationalExponent(5, 3), trace=log)
        assert traced == pow_rational(1.7, RationalExponent(5, 3)) == log.result


class TestPowReal:
    @pytest.mark.parametrize("a", [2.5, 1e-3, 97.1])
    def test_exponent_one(self, a):
        assert pow_real(a, 1.0) == a

    @pytest.mark.parametrize("a", [2.5, 1e-3, 97.1])
    def test_exponent_zero(self, a):
        assert pow_real(a, 0.0) == 1.0

    def test_nine_to_the_half(self):
        r = pow_real(9.0, 0.5)
        assert abs(r - 3.0) <= 1e-9 * 3.0
        assert abs(r * r - 9.0) <= 1e-8 * 9.0

    def test_one_to_any_power(self):
        assert pow_real(1.0, 1e300) == 1.0

    @pytest.mark.parametrize("bad_t", [-0.5, float("nan"), float("inf")])
    def test_exponent_domain_errors(self, bad_t):
        with pytest.raises(DomainError):
            pow_real(2.0, bad_t)

    def test_float_range_overflow(self):
        with pytest.raises(OverflowRangeError):
            pow_real(10.0, 400.0)

    @given(
        st.floats(min_value=1e-3, max_value=1e3),
        st.integers(min_value=0, max_value=64),
        st.integers(min_value=1, max_value=64),
    )
    def test_agrees_with_rational_path(self, a, p, q):
        rational = pow_rational(a, RationalExponent(p, q))
        real = pow_real(a, p / q)
        assert abs(real - rational) <= 1e-9 * rational

    def test_trace_result_matches_untraced(self):
        log = TraceLog()
        assert pow_real(3.3, 2.25, trace=log) == pow_real(3.3, 2.25) == log.result


class TestLogBase:
    def test_log_of_one_is_all_zero_digits(self):
        result = log_base(10.0, 1.0)
        assert result.value == 0.0
        assert set(result.digits) == {0}

    def test_exact_half_digit(self):
        result = log_base(4.0, 2.0)
        assert result.value == 0.5
        assert result.digits[0] == 1
        assert set(result.digits[1:]) == {0}

    def test_log10_of_two(self):
        result = log_base(10.0, 2.0)
        assert abs(result.value - 0.3010299956639812) <= 1e-10

    def test_digit_determinism(self):
        first = log_base(17.3, 4.2)
        second = log_base(17.3, 4.2)
        assert first == second

    @pytest.mark.parametrize("b, a", [(1.0, 1.0), (0.5, 0.4), (10.0, 0.99), (10.0, 10.0), (10.0, 11.0)])
    def test_domain_errors(self, b, a):
        with pytest.raises(DomainError):
            log_base(b, a)

    def test_digit_invariants_along_trace(self):
        log = TraceLog()
        result = log_base(10.0, 2.0, trace=log)
        weight = 1.0
        partial = 0.0
        for event in log.events:
            p = event.payload
            weight /= 2.0
            assert p["weight"] == weight
            # reached power tracks the digits taken so far: log_b(z) == partial sum
            if p["digit"]:
                partial += weight
            assert abs(math.log(p["power_reached"], 10.0) - partial) <= 1e-12
        assert result.value == sum(
            w for w, d in zip((2.0**-k for k in range(1, len(log.events) + 1)), result.digits) if d
        )

    def test_value_in_unit_interval(self):
        for b, a in [(2.0, 1.5), (99.0, 98.0), (1.5, 1.49)]:
            assert 0.0 <= log_base(b, a).value < 1.0

    def test_trace_result_matches_untraced(self):
        log = TraceLog()
        assert log_base(6.0, 3.5, trace=log) == log_base(6.0, 3.5) == log.result


class TestBinaryFractionInvariants:
    def test_rejects_non_binary_digit(self):
        with pytest.raises(DomainError):
            BinaryFraction((0, 2), 0.25)

    def test_rejects_value_outside_unit_interval(self):
        with pytest.raises(DomainError):
            BinaryFraction((1,), 1.5)

    def test_rejects_value_digit_mismatch(self):
        with pytest.raises(DomainError):
            BinaryFraction((1, 0), 0.75)

    def test_exact_dyadic_value(self):
        assert BinaryFraction((1, 0, 1), 0.625).value == 0.625


class TestBriggsChain:
    def test_ten_has_53_distinct_roots(self):
        assert briggs_chain(10.0).count == 53

    def test_heron_mode_close_to_53(self):
        # documented as within one of the correctly rounded count, not pinned
        count = briggs_chain(10.0, SQRT_HERON).count
        assert abs(count - 53) <= 1

    def test_first_root_of_four_is_two(self):
        assert briggs_chain(4.0).values[0] == 2.0

    def test_tiny_excess_over_one(self):
        chain = briggs_chain(1.0 + 2.0**-50)
        assert 1 <= chain.count <= 2
        assert all(v > 1.0 for v in chain.values)

    def test_domain_error_at_or_below_one(self):
        with pytest.raises(DomainError):
            briggs_chain(1.0)
        with pytest.raises(DomainError):
            briggs_chain(0.5)

    def test_unknown_mode_rejected(self):
        with pytest.raises(DomainError):
            briggs_chain(10.0, "fast")

    @pytest.mark.parametrize("mode", [SQRT_CORRECTLY_ROUNDED, SQRT_HERON])
    def test_values_strictly_decreasing_above_one(self, mode):
        chain = briggs_chain(10.0, mode)
        assert all(u > v for u, v in zip(chain.values, chain.values[1:]))
        assert all(v > 1.0 for v in chain.values)

    def test_each_value_squares_to_predecessor(self):
        chain = briggs_chain(10.0)
        for parent, child in zip(chain.values, chain.values[1:]):
            assert abs(child * child - parent) <= 4 * math.ulp(parent)

    def test_chain_type_invariants_enforced(self):
        with pytest.raises(DomainError):
            BriggsChain(10.0, (2.0, 3.0), 2)  # not decreasing
        with pytest.raises(DomainError):
            BriggsChain(10.0, (2.0,), 2)  # count mismatch
        with pytest.raises(DomainError):
            BriggsChain(10.0, (0.5,), 1)  # value below 1

    def test_trace_result_matches_untraced(self):
        log = TraceLog()
        assert briggs_chain(10.0, trace=log) == briggs_chain(10.0) == log.result


class TestModeDuality:
    @given(st.floats(min_value=1.01, max_value=100.0), st.floats(min_value=0.0, max_value=0.999))
    def test_power_inverts_logarithm(self, b, frac):
        a = 1.0 + (b - 1.0) * frac
        if not 1.0 <= a < b:
            return
        x = log_base(b, a).value
        assert abs(pow_real(b, x) - a) <= 1e-8 * a
