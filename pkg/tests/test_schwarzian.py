import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projstruct.errors import DerivativeVanishes, SingularOnPath, StepUnderflow, TooFewSteps
from projstruct.moebius import Kind, MoebiusElement, classify
from projstruct.schwarzian import (
    Loop,
    local_leading_coefficient,
    loop_product,
    monodromy_report,
    ode_monodromy,
    relation_check,
    schwarzian_numeric,
    triangle_differential,
)

from _support import random_sl2


def test_schwarzian_examples():
    assert abs(schwarzian_numeric(lambda z: z ** 2, 0.5) - (-6)) < 1e-8
    assert abs(schwarzian_numeric(lambda z: z ** 0.5, 1) - 0.375) < 1e-8
    assert abs(schwarzian_numeric(lambda z: (2 * z + 1) / (z + 3), 0.4)) < 1e-8


def test_schwarzian_errors():
    with pytest.raises(DerivativeVanishes):
        schwarzian_numeric(lambda z: 5.0 + 0 * z, 0.5)
    with pytest.raises(StepUnderflow):
        schwarzian_numeric(lambda z: z, 1.0, h=1e-300)


def test_leading_coefficient_examples():
    assert local_leading_coefficient(1) == 0
    assert local_leading_coefficient(2) == -1.5
    assert local_leading_coefficient(0.5) == 0.375


def test_triangle_coefficients():
    qd = triangle_differential(0.5, 0.5, 0.5)
    assert qd.coefficients == (0.375, 0.375, -0.375)
    assert qd(2) == pytest.approx(9 / 32)
    assert triangle_differential(1, 1, 1)(0.3 + 0.2j) == 0


def test_printed_sign_variant():
    qd = triangle_differential(0.5, 0.5, 0.5, printed_sign=True)
    assert qd.coefficients == (0.375, 0.375, 0.375)
    assert qd(2) == pytest.approx(21 / 32)


def test_leading_coefficient_at_infinity():
    # q(1/w) / w**4 ~ (c0 + c1 + mixed) / w**2
    for alphas in [(1 / 3, 1 / 3, 1 / 3), (0.2 + 0.1j, 0.7, 1.4)]:
        qd = triangle_differential(*alphas)
        assert abs(sum(qd.coefficients) - local_leading_coefficient(alphas[2])) < 1e-14


def test_local_data_at_zero_matches_laurent_series():
    qd = triangle_differential(0.3, 0.6, 0.8)
    data = qd.local_data_at_zero(terms=6)
    assert data.leading == qd.c0
    z = 0.05
    series = qd.c0 / z ** 2 + sum(b * z ** (n - 1) for n, b in enumerate(data.tail))
    assert abs(series - qd(z)) < 1e-6


def test_relation_check_examples():
    assert relation_check(1 / 3, 1 / 3, 1 / 3)
    assert not relation_check(0.5, 0.5, 0.5)
    assert relation_check(0, 0, 0)


def test_monodromy_around_zero_trace():
    qd = triangle_differential(1 / 3, 1 / 3, 1 / 3)
    m = ode_monodromy(qd, Loop.AROUND_0)
    assert abs(m.trace ** 2 - 1) < 1e-4
    assert classify(m).kind is Kind.NON_PARABOLIC


def test_monodromy_trivial_for_zero_differential():
    qd = triangle_differential(1, 1, 1)
    for loop in Loop:
        assert ode_monodromy(qd, loop).distance(MoebiusElement.identity()) < 1e-6


def test_loop_product_is_plus_minus_identity():
    qd = triangle_differential(0.5, 1 / 3, 1 / 6)
    mons = {loop: ode_monodromy(qd, loop) for loop in Loop}
    prod = loop_product(mons)
    eye = MoebiusElement.identity()
    assert min(prod.distance(eye), prod.distance(-eye)) < 1e-4


def test_dihedral_discrepancy_flagged():
    report = monodromy_report(triangle_differential(0.5, 0.5, 0.5))
    assert report["relationHolds"] and not report["relationCheck"]
    assert report["discrepancy"]


def test_integer_exponent_proxy():
    report = monodromy_report(triangle_differential(2, 1.5, 0.5))
    assert report["loops"]["Around0"]["integerExponentChart"] == "branched"


def test_printed_sign_breaks_exponent_at_infinity():
    qd = triangle_differential(1 / 3, 1 / 3, 1 / 3, printed_sign=True)
    m = ode_monodromy(qd, Loop.AROUND_INF)
    assert abs(abs(m.trace) - 1) > 1e-2


def test_ode_monodromy_input_checks():
    qd = triangle_differential(1 / 3, 1 / 3, 1 / 3)
    with pytest.raises(TooFewSteps):
        ode_monodromy(qd, Loop.AROUND_0, steps=100)
    with pytest.raises(SingularOnPath):
        ode_monodromy(qd, Loop.AROUND_1, base=0.0)


@settings(max_examples=40, deadline=None)
@given(
    alpha=st.floats(0.2, 3).filter(lambda a: abs(a - 1) > 0.05),
    r=st.floats(0.3, 0.7),
    phi=st.floats(-2.5, 2.5),
)
def test_power_closed_form(alpha, r, phi):
    z = cmath.rect(r, phi)
    exact = (1 - alpha ** 2) / (2 * z ** 2)
    num = schwarzian_numeric(lambda w: w ** alpha, z)
    assert abs(num / exact - 1) < 1e-5


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), alpha=st.floats(0.2, 2.5), r=st.floats(0.3, 0.7))
def test_moebius_cocycle(seed, alpha, r):
    rng = np.random.default_rng(seed)
    m = random_sl2(rng)
    z = cmath.rect(r, float(rng.uniform(-2, 2)))
    f = lambda w: w ** alpha
    g = lambda w: m.apply(w ** alpha)
    # keep the Moebius pole away from the stencil
    if abs(m.c * f(z) + m.d) < 0.5 * max(abs(m.c), abs(m.d)):
        return
    s_f, s_g = schwarzian_numeric(f, z), schwarzian_numeric(g, z)
    assert abs(s_g - s_f) <= 1e-5 * max(abs(s_f), 1.0)


@pytest.mark.parametrize("alphas", [(1 / 3, 1 / 3, 1 / 3), (0.5, 1 / 3, 1 / 6), (0.2 + 0.3j, 0.7, 1.9)])
def test_loop_traces_match_exponents(alphas):
    qd = triangle_differential(*alphas)
    for loop, a in zip(Loop, alphas):
        t = ode_monodromy(qd, loop).trace
        expected = 2 * cmath.cos(math.pi * a)
        assert min(abs(t - expected), abs(t + expected)) < 1e-4
