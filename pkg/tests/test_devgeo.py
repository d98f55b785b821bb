import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projstruct.devgeo import (
    ActionPair,
    DegreeFlag,
    apply_parabolic_normalization,
    chart_degree,
    count_preimages_numeric,
    has_twins,
    max_preimages_on_grid,
    normalize_parabolic_chart,
    pair_to_alpha,
    strip_csv,
    strip_decomposition,
)
from projstruct.errors import DegenerateStrip, UnsupportedExponent, ZeroAlpha, ZeroVector
from projstruct.riccati import ChartModel

P = ChartModel.power


def test_degree_examples():
    assert chart_degree(P(1.5)) == 2
    assert chart_degree(P(1)) == 1
    assert chart_degree(P(2.3)) == 3
    assert chart_degree(ChartModel.parabolic_log(3)) == 3
    assert chart_degree(ChartModel.parabolic_log(0)) == 1
    assert chart_degree(ChartModel.parabolic_log(1)) == 1
    assert chart_degree(ChartModel.branched_cover(4)) == 4
    assert chart_degree(P(2j)) is DegreeFlag.ANNULUS_CASE
    with pytest.raises(UnsupportedExponent):
        chart_degree(P(-1.5, normalize=False))


def test_preimage_count_examples():
    assert count_preimages_numeric(1.5, 0.5 * cmath.exp(-1j)) == 1
    assert count_preimages_numeric(1.5, 0.5 * cmath.exp(1j)) == 2
    assert all(count_preimages_numeric(1, t) == 1 for t in (0.3, -0.2j, 0.5 + 0.5j))
    assert max_preimages_on_grid(2.3) == 3
    with pytest.raises(DegenerateStrip):
        count_preimages_numeric(3j, 0.5)


def test_preimages_land_on_target():
    alpha, target = 2.3 + 0.4j, 0.4 * cmath.exp(2j)
    for k in range(-3, 4):
        x = (cmath.log(target) + 2j * math.pi * k) / alpha
        assert abs(cmath.exp(alpha * x) - target) < 1e-12


def test_strip_examples():
    s = strip_decomposition(2)
    assert s.spacing == pytest.approx(math.pi)
    assert abs(s.direction - 1) < 1e-15
    ann = strip_decomposition(3j)
    assert ann.annulus and ann.spacing == pytest.approx(2 * math.pi / 3)
    assert abs(ann.direction.real) < 1e-15
    assert strip_decomposition(1).spacing == pytest.approx(2 * math.pi)
    with pytest.raises(ZeroAlpha):
        strip_decomposition(0)


def test_strip_lines_are_level_sets():
    alpha = 1.3 + 0.7j
    s = strip_decomposition(alpha)
    for p in s.anchors(3, alpha):
        # moving along the direction keeps Im(alpha x) fixed
        assert abs((alpha * (p + 5 * s.direction)).imag - (alpha * p).imag) < 1e-12
    anchors = s.anchors(1, alpha)
    gap = abs(((anchors[1] - anchors[0]) * s.direction.conjugate()).imag)
    assert gap == pytest.approx(s.spacing)


def test_strip_csv_rows():
    rows = strip_csv(1.5, count=2).strip().splitlines()
    assert rows[0] == "j,u,v,dir_re,dir_im,spacing"
    assert len(rows) == 6


def test_twins_examples():
    assert has_twins(P(1.5))
    assert not has_twins(ChartModel.parabolic_log(1))
    assert has_twins(ChartModel.parabolic_log(2))
    assert not has_twins(P(1))


def test_pair_examples():
    a = 2.5 + 0.3j
    assert abs(pair_to_alpha(ActionPair(2j * math.pi, 2j * math.pi / a)) - a) < 1e-12
    assert abs(pair_to_alpha(ActionPair(2j * math.pi * (a - 1) / a, 2j * math.pi / a)) - (a - 1)) < 1e-12
    assert pair_to_alpha(ActionPair(2j * math.pi, 2j * math.pi)) == 1
    with pytest.raises(ZeroVector):
        pair_to_alpha(ActionPair(1, 0))
    assert ActionPair(-1, 1).degenerate and not ActionPair(1, 1).degenerate


def test_normalize_parabolic_examples():
    chart, lam = normalize_parabolic_chart(3, 1, 3, 0)
    assert chart == ChartModel.parabolic_log(3)
    chart, _ = normalize_parabolic_chart(3, 0, 3, 0)
    assert chart == ChartModel.parabolic_log(0)
    chart, lam = normalize_parabolic_chart(1, 5, 2, 7)
    assert chart == ChartModel.parabolic_log(2)
    for z in (0.3 + 0.1j, 0.5, 0.2 - 0.2j):
        want = cmath.log(z) + z ** -2
        assert abs(apply_parabolic_normalization(1, 5, 2, 7, lam, z) - want) < 1e-9


def test_normalize_parabolic_idempotent():
    chart, lam = normalize_parabolic_chart(1, 1, 4, 0)
    assert chart == ChartModel.parabolic_log(4) and lam == 1


@settings(max_examples=50, deadline=None)
@given(re=st.floats(0.05, 5), im=st.floats(-3, 3))
def test_degree_matches_oracle(re, im):
    # an n-point angular grid only resolves fractional parts >= 1/n
    frac = re - math.floor(re)
    if 0 < frac < 1 / 16:
        re = math.floor(re) + 1 / 16
    alpha = complex(re, im)
    assert chart_degree(P(alpha)) == max_preimages_on_grid(alpha, n=16)


@given(
    deck=st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False),
    equiv=st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False),
    c=st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False),
)
def test_pair_scale_invariance(deck, equiv, c):
    a = pair_to_alpha(ActionPair(deck, equiv))
    b = pair_to_alpha(ActionPair(c * deck, c * equiv))
    assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


@given(kind=st.sampled_from(["power", "log", "cover"]), n=st.integers(1, 8), re=st.floats(0.05, 6))
def test_twins_iff_degree_at_least_two(kind, n, re):
    if kind == "power":
        chart = P(re)
    elif kind == "log":
        chart = ChartModel.parabolic_log(n - 1)
    else:
        chart = ChartModel.branched_cover(n)
    assert has_twins(chart) == (chart_degree(chart) >= 2)
