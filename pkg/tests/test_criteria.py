"""Interval criterion, witness elements, and multiplier thresholds."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soslab import (
    NotOdd,
    NotRamified,
    NotTotallyPositive,
    RingContext,
    ValuationClass,
    decompose_sos,
    doubling_witness,
    dyadic_valuation_class,
    is_square_mod_two,
    is_sum_of_squares,
    large_multiplier_guaranteed,
    odd_multiple_witness,
    peters_five_squares,
    peters_interval,
    ramified_obstruction_witness,
    scan_totally_positive,
    small_multiplier_obstructed,
)

# ---------------------------------------------------------------------------
# the interval criterion


def test_interval_worked_example_d5(ctx5):
    alpha = ctx5.from_sqrt_pair(3, 1)  # 3 + sqrt5
    iv = peters_interval(alpha)
    assert (iv.scale, iv.center, iv.radicand) == (5, 6, 16)
    assert iv.parity_required == 0  # n must be even, like v = 2
    assert iv.admissible_n == (2,)
    assert iv.contains(2) and not iv.contains(1) and not iv.contains(3)
    assert peters_five_squares(alpha)


def test_interval_worked_example_d3(ctx3):
    alpha = ctx3.from_sqrt_pair(4, 2)
    iv = peters_interval(alpha)
    assert (iv.scale, iv.center, iv.radicand) == (6, 4, 4)
    assert iv.admissible_n == (1,)
    assert peters_five_squares(alpha)


def test_interval_inapplicable_for_odd_radical_part(ctx6):
    # Odd sqrtD-coefficient: no candidate n exists; the test reports false.
    assert peters_interval(ctx6.element(3, 1)) is None
    assert not peters_five_squares(ctx6.element(3, 1))


def test_interval_requires_total_positivity(ctx5):
    with pytest.raises(NotTotallyPositive):
        peters_interval(ctx5.element(-3, 0))
    with pytest.raises(NotTotallyPositive):
        peters_interval(ctx5.zero)


def test_interval_empty_means_no_claim(ctx6):
    # 6 + 2 sqrt6 is even in the radical part yet the interval is empty.
    alpha = ctx6.from_sqrt_pair(6, 2)
    iv = peters_interval(alpha)
    assert iv is not None
    assert iv.admissible_n == ()
    assert not peters_five_squares(alpha)


def test_interval_bounds_are_displayable(ctx5):
    iv = peters_interval(ctx5.from_sqrt_pair(3, 1))
    assert iv.lo <= 2 <= iv.hi
    assert iv.lo == pytest.approx((6 - 4) / 5)
    assert iv.hi == pytest.approx((6 + 4) / 5)


@given(st.sampled_from([5, 13, 17, 21, 29]), st.integers(1, 60))
@settings(max_examples=60, deadline=None)
def test_interval_test_matches_oracle_on_half_basis(d, idx):
    """For D = 1 (mod 4) the interval criterion is exact, both directions."""
    ctx = RingContext(d)
    pool = list(scan_totally_positive(ctx, 18))
    alpha = pool[idx % len(pool)]
    claim = peters_five_squares(alpha)
    truth = is_sum_of_squares(alpha, node_budget=10**7)
    assert claim == truth


@given(st.sampled_from([2, 3, 6, 7, 11]), st.integers(1, 60))
@settings(max_examples=60, deadline=None)
def test_interval_test_is_sufficient_on_even_basis(d, idx):
    """For D = 2, 3 (mod 4) a hit still certifies representability."""
    ctx = RingContext(d)
    pool = list(scan_totally_positive(ctx, 18))
    alpha = pool[idx % len(pool)]
    if peters_five_squares(alpha):
        assert is_sum_of_squares(alpha, node_budget=10**7)


# ---------------------------------------------------------------------------
# witnesses


@pytest.mark.parametrize(
    "d,expected",
    [(2, "2+sqrt2"), (3, "2+sqrt3"), (6, "3+sqrt6"), (7, "3+sqrt7"), (5, "1+w"), (13, "2+w")],
)
def test_doubling_witness_form(d, expected):
    w = doubling_witness(RingContext(d))
    assert str(w) == expected
    assert w.is_totally_positive()


@given(st.sampled_from([6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23]))
@settings(deadline=None)
def test_doubled_witness_is_refuted_for_d_at_least_6(d):
    ctx = RingContext(d)
    target = 2 * doubling_witness(ctx)
    assert not is_sum_of_squares(target, node_budget=10**7)


@given(st.sampled_from([2, 3, 5]))
@settings(deadline=None)
def test_doubled_witness_is_representable_for_small_d(d):
    ctx = RingContext(d)
    assert is_sum_of_squares(2 * doubling_witness(ctx), node_budget=10**7)


@pytest.mark.parametrize("d,expected", [(2, "2+sqrt2"), (6, "4+sqrt6"), (3, "3+sqrt3"), (7, "3+sqrt7")])
def test_ramified_witness_examples(d, expected):
    w = ramified_obstruction_witness(RingContext(d))
    assert str(w) == expected
    assert w.is_totally_positive()
    assert dyadic_valuation_class(w) is ValuationClass.IN_P_NOT_P2
    assert not is_square_mod_two(w)


def test_ramified_witness_requires_ramified(ctx5):
    with pytest.raises(NotRamified):
        ramified_obstruction_witness(ctx5)


@pytest.mark.parametrize("d", [2, 3, 6, 7, 11, 14])
@pytest.mark.parametrize("m", [1, 3, 5])
def test_odd_multiple_witness_never_a_square_class(d, m):
    w = odd_multiple_witness(RingContext(d), m)
    assert w == m * doubling_witness(RingContext(d))
    assert not is_square_mod_two(w)


def test_odd_multiple_witness_guards(ctx5, ctx6):
    with pytest.raises(NotRamified):
        odd_multiple_witness(ctx5, 3)
    with pytest.raises(NotOdd):
        odd_multiple_witness(ctx6, 2)
    with pytest.raises(ValueError):
        odd_multiple_witness(ctx6, -3)


# ---------------------------------------------------------------------------
# multiplier thresholds


@pytest.mark.parametrize(
    "d,m,expected",
    [
        (101, 1, True),  # 16 < 101
        (101, 2, True),  # 64 < 101
        (101, 3, False),  # 144 > 101
        (17, 1, True),
        (6, 1, True),  # 16 < 4*6
        (6, 2, False),
        (7, 1, True),
        (2, 1, False),  # 16 > 4*2: no obstruction promised
    ],
)
def test_small_multiplier_threshold(d, m, expected):
    assert small_multiplier_obstructed(RingContext(d), m) is expected


@pytest.mark.parametrize(
    "d,m,expected",
    [(6, 3, True), (6, 2, False), (2, 1, True), (13, 7, True), (13, 6, False)],
)
def test_large_multiplier_threshold(d, m, expected):
    assert large_multiplier_guaranteed(RingContext(d), m) is expected


def test_small_multiplier_rejects_nonpositive(ctx6):
    with pytest.raises(ValueError):
        small_multiplier_obstructed(ctx6, 0)


@given(st.sampled_from([6, 7, 13, 17, 21]), st.integers(1, 8))
@settings(max_examples=40, deadline=None)
def test_small_threshold_refutations_hold(d, m):
    ctx = RingContext(d)
    if small_multiplier_obstructed(ctx, m):
        target = m * doubling_witness(ctx)
        v = decompose_sos(target, node_budget=10**7)
        assert v.kind.name == "EXHAUSTED_NONE"


@given(st.sampled_from([2, 3, 5, 6, 7, 13]), st.integers(1, 8), st.integers(0, 14))
@settings(max_examples=40, deadline=None)
def test_large_threshold_guarantees_hold(d, m, idx):
    ctx = RingContext(d)
    if large_multiplier_guaranteed(ctx, m):
        pool = list(scan_totally_positive(ctx, 10))
        beta = pool[idx % len(pool)]
        assert peters_five_squares(ctx.kappa * m * beta)
