"""Log-gamma, generalized binomials, step ratios, and LogMagnitude."""

import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracbern.special import LogMagnitude, gamma_step_ratio, gen_binom, ln_gamma

# ---------------------------------------------------------------------------
# ln_gamma
# ---------------------------------------------------------------------------


def test_ln_gamma_exact_anchors():
    # Gamma(1) = Gamma(2) = 1; the implementation returns a clean zero.
    assert ln_gamma(1.0) == 0.0
    assert ln_gamma(2.0) == 0.0


def test_ln_gamma_known_values():
    assert ln_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-15)
    assert ln_gamma(5.0) == pytest.approx(3.1780538303479458, rel=1e-15)
    # Gamma(3/2) = sqrt(pi)/2
    assert ln_gamma(1.5) == pytest.approx(-0.1207822376352452, abs=1e-15)
    assert ln_gamma(1.5) == pytest.approx(math.log(math.sqrt(math.pi) / 2.0), abs=1e-15)


def test_ln_gamma_against_mpmath_grid():
    # Dense sweep over every internal window: pull-up recurrence below 0.5,
    # the two Taylor windows, the upward recurrence, and Stirling.
    xs = [1e-4, 0.01, 0.07, 0.25, 0.4999]
    xs += [0.5 + 0.01 * k for k in range(100)]  # [0.5, 1.5)
    xs += [1.5 + 0.01 * k for k in range(100)]  # [1.5, 2.5)
    xs += [2.5 + 0.075 * k for k in range(100)]  # [2.5, 10)
    xs += [10.0, 12.5, 50.0, 171.6, 1e3, 1e4, 1e5, 1e6]
    with mpmath.workdps(40):
        for x in xs:
            want = float(mpmath.loggamma(mpmath.mpf(x)))
            got = ln_gamma(x)
            if want == 0.0:
                assert abs(got) < 1e-15
            else:
                assert abs(got - want) <= 1e-14 * abs(want), f"x={x}"


def test_ln_gamma_no_cancellation_near_the_zeros():
    # The function has zeros at x=1 and x=2; naive log(Gamma(x)) loses most
    # digits there.  Check absolute error stays at the few-eps level.
    with mpmath.workdps(40):
        for x in [0.999999, 1.000001, 1.0000000001, 1.999999, 2.000001]:
            want = float(mpmath.loggamma(mpmath.mpf(x)))
            assert ln_gamma(x) == pytest.approx(want, abs=5e-17, rel=1e-14)


@pytest.mark.parametrize("bad", [0.0, -1.0, -0.5, math.nan, math.inf, -math.inf])
def test_ln_gamma_domain_errors(bad):
    with pytest.raises(ValueError):
        ln_gamma(bad)


@given(st.floats(min_value=0.5, max_value=1e6, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_ln_gamma_recurrence_property(x):
    # ln Gamma(x+1) = ln Gamma(x) + ln x, the defining functional equation.
    lhs = ln_gamma(x + 1.0)
    rhs = ln_gamma(x) + math.log(x)
    assert lhs == pytest.approx(rhs, rel=5e-14, abs=5e-14)


# ---------------------------------------------------------------------------
# gen_binom
# ---------------------------------------------------------------------------


def test_gen_binom_known_values():
    assert gen_binom(7, 0, 0.3) == 1.0
    assert gen_binom(4, 2, 1.0) == pytest.approx(6.0, rel=1e-13)
    assert gen_binom(2, 1, 0.5) == pytest.approx(4.0 / math.pi, rel=1e-13)
    assert gen_binom(2, 1, 0.5) == pytest.approx(1.2732395447351628, rel=1e-13)


def test_gen_binom_edges_are_exactly_one():
    for n in (0, 1, 5, 40, 300):
        for beta in (0.25, 0.5, 0.75, 1.0):
            assert gen_binom(n, 0, beta) == 1.0
            assert gen_binom(n, n, beta) == 1.0


def test_gen_binom_symmetry():
    for n in range(0, 41):
        for k in range(n + 1):
            for beta in (0.25, 1 / 3, 0.5, 0.75, 1.0):
                a = gen_binom(n, k, beta)
                b = gen_binom(n, n - k, beta)
                assert abs(a - b) <= 1e-13 * max(abs(a), abs(b))


def test_gen_binom_beta1_reduces_to_binomial():
    for n in range(0, 61):
        for k in range(n + 1):
            want = math.comb(n, k)
            assert gen_binom(n, k, 1.0) == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("n,k", [(3, 4), (3, -1), (0, 1), (5, 6)])
def test_gen_binom_index_errors(n, k):
    with pytest.raises(IndexError):
        gen_binom(n, k, 0.5)


@given(
    st.integers(min_value=0, max_value=120),
    st.integers(min_value=0, max_value=120),
    st.floats(min_value=0.05, max_value=1.0),
)
@settings(max_examples=200, deadline=None)
def test_gen_binom_positive_and_symmetric(n, k, beta):
    if k > n:
        n, k = k, n
    v = gen_binom(n, k, beta)
    w = gen_binom(n, n - k, beta)
    assert v > 0.0
    assert abs(v - w) <= 1e-13 * max(v, w)


# ---------------------------------------------------------------------------
# gamma_step_ratio
# ---------------------------------------------------------------------------


def test_gamma_step_ratio_known_values():
    assert gamma_step_ratio(0, 1.0) == 1.0
    assert gamma_step_ratio(1, 1.0) == pytest.approx(0.5, rel=1e-15)
    assert gamma_step_ratio(1, 0.5) == pytest.approx(0.8862269254527580, rel=1e-14)


def test_gamma_step_ratio_positive_and_eventually_contracting():
    # The ratio is always positive.  It is NOT bounded by 1 near n=0 for
    # beta < 1 (Gamma dips below 1 on (1,2)); it contracts once n*beta >= 1.
    assert gamma_step_ratio(0, 0.5) > 1.0  # = 1/Gamma(1.5) ~ 1.1284
    assert gamma_step_ratio(1, 0.25) > 1.0
    for beta in (0.25, 1 / 3, 0.5, 0.75, 1.0):
        for n in range(0, 301):
            r = gamma_step_ratio(n, beta)
            assert r > 0.0
            if n * beta >= 1.0:
                assert r <= 1.0


@pytest.mark.parametrize("beta", [0.25, 1 / 3, 0.5])
def test_gamma_step_ratio_telescoping_product(beta):
    # prod_{m<n} ratio(m) telescopes to 1/Gamma(n*beta+1).  Testable as a
    # literal product while the target stays inside normal double range.
    prod = 1.0
    for n in range(1, 301):
        prod *= gamma_step_ratio(n - 1, beta)
        want = math.exp(-ln_gamma(n * beta + 1.0))
        assert abs(prod - want) <= 1e-10 * want, f"beta={beta} n={n}"


@pytest.mark.parametrize("beta", [0.75, 1.0])
def test_gamma_step_ratio_telescoping_log_domain(beta):
    # For larger beta the product underflows doubles long before n=300
    # (1/Gamma(301) ~ 1e-614), so check the telescoped sum of logs instead.
    acc = 0.0
    for n in range(1, 301):
        acc += math.log(gamma_step_ratio(n - 1, beta))
        assert abs(acc + ln_gamma(n * beta + 1.0)) <= 1e-10, f"beta={beta} n={n}"


# ---------------------------------------------------------------------------
# LogMagnitude
# ---------------------------------------------------------------------------


def test_logmagnitude_canonical_zero():
    z = LogMagnitude(sign=0, log_abs=3.7)
    assert z.log_abs == -math.inf
    assert z.to_real() == 0.0
    assert LogMagnitude.from_real(0.0) == z


def test_logmagnitude_sign_validation():
    with pytest.raises(ValueError):
        LogMagnitude(sign=2, log_abs=0.0)
    with pytest.raises(ValueError):
        LogMagnitude.from_real(math.nan)


def test_logmagnitude_round_trip_unit_window():
    # Inside [1/e, e] the log/exp round trip is exact to the last bit.
    for x in [1.0, -1.0, 0.5, -0.7, 1.5, 2.5, -2.718, 0.37]:
        got = LogMagnitude.from_real(x).to_real()
        assert got == pytest.approx(x, abs=0.0, rel=2.3e-16)


@given(st.floats(min_value=1e-300, max_value=1e300, allow_nan=False))
@settings(max_examples=300, deadline=None)
def test_logmagnitude_round_trip_bounded_by_log_size(x):
    # exp(log(x)) wanders by about |ln x| * eps / 2 in relative terms, so the
    # worst case over the full range is a few hundred ulp, not one.
    got = LogMagnitude.from_real(x).to_real()
    rel = abs(got - x) / x
    bound = (4.0 + abs(math.log(x))) * 1.2e-16
    assert rel <= bound


def test_log10_abs_view():
    lm = LogMagnitude.from_real(-100.0)
    assert lm.sign == -1
    assert lm.log10_abs == pytest.approx(2.0, rel=1e-14)
