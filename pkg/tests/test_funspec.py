"""Function shapes, their JSON forms, and the sampled triplet checks.

The two-route checks (direct inspection vs full triplet scan) are
exercised on randomized inputs: any disagreement between the routes
raises inside the library, so a quiet pass here certifies both.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padicmetrics import (
    BelowFloorError,
    Canonical,
    DomainMissError,
    NegativeInputError,
    PiecewiseLinear,
    PowerMap,
    PowerStep,
    PrimeShift,
    Reciprocal,
    StepFunction,
    Tabulated,
    TooLargeError,
    check_euclid_preserving_sampled,
    check_metric_preserving_sampled,
    check_ultra_to_metric,
    check_ultrametric_preserving,
    default_samples,
    is_strong_triplet,
    is_triangle_triplet,
    pairs_from_grid,
    samples_digest,
    spec_from_json_dict,
    spec_to_json_dict,
    sufficient_conditions,
)
from padicmetrics.fixtures import identity_map, level_swap_map, zigzag_map

F = Fraction

small_fractions = st.fractions(
    min_value=F(0), max_value=F(20), max_denominator=64
)


# ----------------------------------------------------------- evaluation --


def test_piecewise_linear_values():
    f = level_swap_map()
    assert [f(x) for x in (0, F(1, 2), 1, F(3, 2), 2, F(5, 2), 3, 10)] == [
        F(0), F(1), F(2), F(3, 2), F(1), F(2), F(3), F(3),
    ]


def test_zigzag_values():
    f = zigzag_map()
    table = {
        F(0): F(0), F(1, 2): F(1, 2), F(1): F(1), F(3, 2): F(1, 2),
        F(2): F(7, 8), F(3): F(1, 8), F(7, 2): F(1, 2), F(100): F(1, 2),
    }
    for x, y in table.items():
        assert f(x) == y


def test_linear_tail_extends_last_segment():
    f = identity_map()
    assert f(F(41, 7)) == F(41, 7)


def test_piecewise_linear_validation():
    with pytest.raises(ValueError):
        PiecewiseLinear.from_pairs([(1, 1)])
    with pytest.raises(ValueError):
        PiecewiseLinear.from_pairs([(0, 0), (0, 1)])
    with pytest.raises(ValueError):
        PiecewiseLinear.from_pairs([(0, 0), (1, -1)])
    with pytest.raises(ValueError):
        PiecewiseLinear.from_pairs([(0, 1), (1, 0)], tail="linear")
    with pytest.raises(ValueError):
        PiecewiseLinear.from_pairs([(0, 0), (1, 1)], tail="bogus")


def test_reciprocal_and_canonical():
    r = Reciprocal()
    assert r(0) == 0 and r(F(1, 4)) == 4 and r(8) == F(1, 8)
    c = Canonical()
    assert c(0) == 0 and c(1) == F(1, 2) and c(F(1, 3)) == F(1, 4)


def test_power_map_interpolates_between_powers():
    f = PowerMap(2, 3)
    assert f(0) == 0
    assert f(4) == 9 and f(F(1, 4)) == F(1, 9)
    assert f(3) == 6
    assert f(12) == 54


def test_prime_shift_values():
    f = PrimeShift(sieve_bound=1000)
    assert f(0) == 0 and f(1) == 1
    assert f(4) == 9        # 2**2 -> 3**2
    assert f(5) == 7        # next prime
    assert f(F(1, 2)) == F(1, 3)
    assert f(9) == 25       # 3**2 -> 5**2
    assert f(6) == 9        # between 5 -> 7 and 7 -> 11


def test_prime_shift_certification_window():
    f = PrimeShift(sieve_bound=1000)
    with pytest.raises(BelowFloorError):
        f(F(1, 997))
    with pytest.raises(TooLargeError):
        f(997)


def test_tabulated_lookup_and_misses():
    f = Tabulated.from_mapping({0: 0, 1: 2, 2: 1})
    assert f(1) == 2
    with pytest.raises(DomainMissError):
        f(3)
    with pytest.raises(ValueError):
        Tabulated.from_mapping({1: 1})


def test_step_function_evaluation_and_levels():
    g = StepFunction.from_pairs(F(1, 2), [(1, 1), (2, 3)])
    assert g(0) == 0
    assert g(F(1, 4)) == F(1, 2)
    assert g(1) == 1 and g(F(3, 2)) == 1
    assert g(2) == 3 and g(100) == 3
    assert g.levels() == (F(1, 2), F(1), F(3))
    with pytest.raises(ValueError):
        StepFunction.from_pairs(1, [(2, 1), (1, 1)])


def test_power_step_agrees_on_powers_and_flattens_between():
    f = PowerStep(Reciprocal(), 2)
    assert f(0) == 0
    for m in range(-5, 6):
        assert f(F(2) ** m) == F(2) ** -m
    assert f(3) == f(2) == F(1, 2)


def test_negative_inputs_rejected():
    for f in (Reciprocal(), Canonical(), level_swap_map()):
        with pytest.raises(NegativeInputError):
            f(F(-1))


# ----------------------------------------------------------------- JSON --


ALL_SPECS = (
    level_swap_map(),
    zigzag_map(),
    identity_map(),
    Reciprocal(),
    Canonical(),
    PowerMap(2, 3),
    PrimeShift(sieve_bound=1000),
    PowerStep(Reciprocal(), 2),
    StepFunction.from_pairs(F(1, 2), [(1, 1), (2, 3)]),
    Tabulated.from_mapping({0: 0, 1: 2, 2: 1}),
)


@pytest.mark.parametrize("f", ALL_SPECS, ids=lambda f: f.kind)
def test_json_roundtrip(f):
    data = spec_to_json_dict(f)
    assert data["kind"] == f.kind
    assert spec_from_json_dict(data) == f


def test_spec_json_rejects_garbage():
    with pytest.raises(ValueError):
        spec_from_json_dict({"points": []})
    with pytest.raises(ValueError):
        spec_from_json_dict({"kind": "nope"})
    with pytest.raises(ValueError):
        spec_from_json_dict({"kind": "piecewise_linear", "points": [["0", "0"]]})


# -------------------------------------------------------------- triplets --


@given(a=small_fractions, b=small_fractions, c=small_fractions)
def test_triplet_predicates_are_permutation_invariant(a, b, c):
    perms = [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
    assert len({is_triangle_triplet(*t) for t in perms}) == 1
    assert len({is_strong_triplet(*t) for t in perms}) == 1


@given(a=small_fractions, b=small_fractions, c=small_fractions)
def test_strong_triplets_are_triangle_triplets(a, b, c):
    if is_strong_triplet(a, b, c):
        assert is_triangle_triplet(a, b, c)
    top = sorted((a, b, c))
    assert is_strong_triplet(a, b, c) == (top[1] == top[2])


def test_triplet_predicates_reject_negatives():
    with pytest.raises(NegativeInputError):
        is_triangle_triplet(1, -1, 1)
    with pytest.raises(NegativeInputError):
        is_strong_triplet(F(-1, 2), 1, 1)


# -------------------------------------------------------- sampled checks --


def test_metric_check_passes_identity_and_canonical():
    samples = default_samples(Canonical())
    assert check_metric_preserving_sampled(identity_map(), samples).passed
    assert check_metric_preserving_sampled(Canonical(), samples).passed


def test_metric_check_level_swap_witness():
    verdict = check_metric_preserving_sampled(level_swap_map(), default_samples(level_swap_map()))
    assert not verdict.passed
    w = verdict.witness
    assert w.kind == "triple"
    assert w.points == (F(3, 2), F(2), F(3))
    assert w.images == (F(3, 2), F(1), F(3))
    # the witness re-verifies on its own
    assert is_triangle_triplet(*w.points)
    assert not is_triangle_triplet(*w.images)


def test_metric_check_requires_zero_sample():
    with pytest.raises(ValueError):
        check_metric_preserving_sampled(identity_map(), [1, 2])


def test_amenability_gate():
    shifted = Tabulated.from_mapping({0: 1, 1: 1})
    verdict = check_metric_preserving_sampled(shifted, [0, 1])
    assert not verdict.passed and verdict.witness.kind == "origin"

    collapses = Tabulated.from_mapping({0: 0, 1: 0})
    verdict = check_ultrametric_preserving(collapses, [0, 1])
    assert not verdict.passed and verdict.witness.kind == "vanishes"
    assert verdict.witness.points == (F(1),)


def test_ultra_check_monotone_pass_and_decreasing_fail():
    g = StepFunction.from_pairs(F(1, 2), [(1, 1), (2, 3)])
    assert check_ultrametric_preserving(g, [0, 1, 2, 3]).passed

    verdict = check_ultrametric_preserving(Reciprocal(), [0, 1, 2])
    assert not verdict.passed
    assert verdict.witness.kind == "pair"
    assert verdict.witness.points == (F(1), F(2))
    assert verdict.witness.images == (F(1), F(1, 2))


def test_ultra_check_sees_dips_between_plain_samples():
    # the kink refinement catches a dip that the raw grid {0,1,2,3} misses
    verdict = check_ultrametric_preserving(zigzag_map(), [0, 1, 2, 3])
    assert not verdict.passed
    assert verdict.witness.points == (F(1), F(3, 2))
    assert verdict.witness.images == (F(1), F(1, 2))


def test_ultra_check_level_swap_witness():
    verdict = check_ultrametric_preserving(level_swap_map(), default_samples(level_swap_map()))
    assert not verdict.passed
    assert verdict.witness.points == (F(1), F(3, 2))
    assert verdict.witness.images == (F(2), F(3, 2))


def test_ultra_to_metric_reciprocal_witness():
    verdict = check_ultra_to_metric(Reciprocal(), [0, F(1, 4), 1, 4])
    assert not verdict.passed
    assert verdict.witness.kind == "pair"
    assert verdict.witness.points == (F(1, 4), F(1))
    assert verdict.witness.images == (F(4), F(1))


def test_ultra_to_metric_tolerates_ordered_halving():
    # decreasing is fine as long as no later value drops below half an
    # earlier one: the level swap map stays inside that band
    f = level_swap_map()
    verdict = check_ultra_to_metric(f, default_samples(f))
    assert verdict.passed


@given(
    levels=st.lists(
        st.fractions(min_value=F(1), max_value=F(2), max_denominator=16),
        min_size=1,
        max_size=4,
    )
)
def test_ultra_to_metric_passes_inside_half_band(levels):
    # any positive function with values in [a, 2a] maps strong triplets to
    # triangle triplets, whatever the ordering of the levels
    thresholds = [F(k + 1) for k in range(len(levels))]
    g = StepFunction.from_pairs(levels[0], list(zip(thresholds, levels)))
    samples = [F(0), F(1, 2)] + thresholds + [t + F(1, 2) for t in thresholds]
    assert check_ultra_to_metric(g, samples).passed


@given(
    ys=st.lists(
        st.fractions(min_value=F(0), max_value=F(8), max_denominator=8),
        min_size=1,
        max_size=5,
    ),
    tail=st.sampled_from(("constant", "linear")),
)
def test_two_route_checks_agree_on_random_polylines(ys, tail):
    # both checks run their two internal routes on every call and raise on
    # any disagreement, so this is a pure consistency sweep
    points = [(F(0), F(0))] + [(F(i + 1), y) for i, y in enumerate(ys)]
    if tail == "linear" and points[-1][1] < points[-2][1]:
        tail = "constant"  # a sinking linear tail is rejected by the shape
    f = PiecewiseLinear.from_pairs(points, tail=tail)
    samples = default_samples(f)
    check_ultrametric_preserving(f, samples)
    check_ultra_to_metric(f, samples)
    check_metric_preserving_sampled(f, samples)


# ------------------------------------------------------------ euclid grid --


def test_euclid_check_passes_identity():
    pairs = pairs_from_grid(F(1, 2), 4)
    assert check_euclid_preserving_sampled(identity_map(), pairs).passed


def test_euclid_check_zigzag_grid_witness():
    # the zigzag map fails the pair-sum check on its own grid; this pins
    # the least failing pair so the behaviour cannot drift silently
    pairs = pairs_from_grid(F(1, 8), 8)
    verdict = check_euclid_preserving_sampled(zigzag_map(), pairs)
    assert not verdict.passed
    w = verdict.witness
    assert w.points == (F(3, 4), F(23, 8), F(29, 8))
    assert w.images == (F(3, 4), F(7, 32), F(1, 2))
    assert not is_triangle_triplet(*w.images)


def test_pairs_from_grid_counts_and_validation():
    pairs = pairs_from_grid(1, 3)
    assert len(pairs) == 10  # 4 grid points, unordered pairs with repeats
    assert (F(0), F(0)) in pairs and (F(3), F(3)) in pairs
    with pytest.raises(ValueError):
        pairs_from_grid(0, 3)
    with pytest.raises(ValueError):
        pairs_from_grid(2, 1)


# ------------------------------------------------- sufficient conditions --


def test_sufficient_conditions_canonical():
    f = Canonical()
    report = sufficient_conditions(f, default_samples(f))
    assert not report.band
    assert report.concave
    assert report.subadditive_on_samples


def test_sufficient_conditions_reciprocal():
    f = Reciprocal()
    report = sufficient_conditions(f, default_samples(f))
    assert not report.band
    assert not report.concave
    assert report.subadditive_on_samples


def test_sufficient_conditions_banded_step():
    g = StepFunction.from_pairs(F(3, 2), [(1, 1), (2, 2)])
    report = sufficient_conditions(g, default_samples(g))
    assert report.band


def test_default_samples_cover_shape_features():
    f = level_swap_map()
    xs = default_samples(f)
    assert F(0) in xs
    assert all(bp in xs for bp in (F(0), F(1), F(2), F(3)))
    assert F(3, 2) in xs

    g = StepFunction.from_pairs(F(1, 2), [(1, 1), (2, 3)])
    ys = default_samples(g)
    assert F(1, 2) in ys and F(4) in ys

    zs = default_samples(Reciprocal())
    assert F(0) in zs and len(zs) >= 5


def test_samples_digest_is_order_insensitive():
    a = samples_digest([F(1), F(2), F(1, 2)])
    b = samples_digest([F(2), F(1, 2), F(1), F(1)])
    assert a == b
    assert len(a) == 16
    assert a != samples_digest([F(1), F(2)])
