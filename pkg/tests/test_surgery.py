from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projstruct.devgeo import has_twins, pair_to_alpha
from projstruct.errors import (
    EndpointNotRegular,
    InputError,
    InvalidTwins,
    NoTwins,
    NotMultipleOf2Pi,
    UndecomposableChart,
)
from projstruct.riccati import ChartModel
from projstruct.surgery import (
    MarkedPoint,
    SurgeryState,
    TroyanovType,
    TwinSpec,
    e_sigma_of_state,
    inverse_move_at_fuchsian,
    move_branch_point,
    troyanov_type,
)

from _support import random_move


def cone(label, angle):
    return MarkedPoint(label, cone=F(angle))


def test_regular_points_are_dropped():
    st_ = SurgeryState(1, (cone("r", 2), cone("p", 4)))
    assert st_.labels == ["p"] and st_.defect == 2


def test_duplicate_labels_rejected():
    with pytest.raises(InputError):
        SurgeryState(0, (cone("p", 4), cone("p", 6)))


def test_simple_branch_point_moves_to_regular_endpoint():
    state = SurgeryState(2, (cone("p", 4),))
    twins = TwinSpec("p", (None, None), (2, 2), ("p1", "p2"), "q")
    new, reverse = move_branch_point(state, twins)
    assert new.labels == ["q"] and new.point("q").cone == 4
    assert new.defect == state.defect
    back, _ = move_branch_point(new, reverse)
    # the regenerated point carries the label of the merged source
    assert back.labels == ["p"] and back.defect == state.defect


def test_six_pi_split():
    state = SurgeryState(2, (cone("p", 6),))
    twins = TwinSpec("p", (None, None), (4, 2), ("p1", "p2"), "q")
    new, _ = move_branch_point(state, twins)
    assert {p.label: p.cone for p in new.points} == {"p2": 4, "q": 4}
    assert new.defect == 4 == state.defect


def test_move_then_reverse_is_identity():
    state = SurgeryState(1, (cone("p", 8), cone("a", 4), cone("b", 6)))
    twins = TwinSpec("p", ("a", "b"), (2, 6), ("s", "t"), "m")
    new, reverse = move_branch_point(state, twins)
    back, again = move_branch_point(new, reverse)
    assert back == state
    assert again == twins


def test_invalid_angle_budget():
    state = SurgeryState(0, (cone("p", 4),))
    with pytest.raises(InvalidTwins):
        move_branch_point(state, TwinSpec("p", (None, None), (2, 4), ("a", "b"), "q"))
    with pytest.raises(InvalidTwins):
        move_branch_point(SurgeryState(0, (cone("p", 3),)), TwinSpec("p", (None, None), (1, 2), ("a", "b"), "q"))


def test_strict_mode_requires_multiples_of_two_pi():
    state = SurgeryState(0, (cone("p", 5),))
    twins = TwinSpec("p", (None, None), (3, 2), ("a", "b"), "q")
    with pytest.raises(NotMultipleOf2Pi):
        move_branch_point(state, twins)
    new, _ = move_branch_point(state, twins, strict=False)
    assert new.defect == state.defect


def test_e_sigma_examples():
    assert e_sigma_of_state(SurgeryState(0, (cone("p", 4),))) == 1
    fuchs = SurgeryState(0, (MarkedPoint("p", chart=ChartModel.power(2.5)),))
    assert e_sigma_of_state(fuchs) == 2
    with pytest.raises(UndecomposableChart):
        e_sigma_of_state(SurgeryState(0, (MarkedPoint("p", chart=ChartModel.power(2j)),)))


def test_inverse_move_at_five_halves():
    state = SurgeryState(0, (MarkedPoint("p", chart=ChartModel.power(2.5)),))
    new, pair = inverse_move_at_fuchsian(state, "p", new_label="q")
    assert new.point("p").chart.close_to(ChartModel.power(1.5))
    assert new.point("q").cone == 4
    assert e_sigma_of_state(new) == e_sigma_of_state(state) == 2
    assert abs(pair_to_alpha(pair) - 1.5) < 1e-12
    assert len(new.points) == len(state.points) + 1


def test_inverse_move_chain_stops_at_half():
    state = SurgeryState(0, (MarkedPoint("p", chart=ChartModel.power(1.5)),))
    new, _ = inverse_move_at_fuchsian(state, "p")
    assert new.point("p").chart.close_to(ChartModel.power(0.5))
    assert not has_twins(new.point("p").chart)
    with pytest.raises(NoTwins):
        inverse_move_at_fuchsian(new, "p", new_label="r")


def test_inverse_move_rejects_singular_endpoint():
    state = SurgeryState(0, (MarkedPoint("p", chart=ChartModel.power(2.5)), cone("b", 4)))
    with pytest.raises(EndpointNotRegular):
        inverse_move_at_fuchsian(state, "p", endpoints=("b", None))


def test_troyanov_examples():
    assert troyanov_type(1, []) is TroyanovType.EUCLIDEAN
    assert troyanov_type(2, []) is TroyanovType.HYPERBOLIC
    assert troyanov_type(0, [1, 1, 1]) is TroyanovType.SPHERICAL
    with pytest.raises(InputError):
        troyanov_type(0, [0])


def test_json_round_trip():
    state = SurgeryState(1, (cone("a", F(8, 3)), MarkedPoint("b", chart=ChartModel.parabolic_log(2))))
    assert SurgeryState.from_json(state.to_json()) == state
    twins = TwinSpec("p", ("a", None), (2, 4), ("x", None), "m")
    assert TwinSpec.from_json(twins.to_json()) == twins


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), length=st.integers(1, 6))
def test_random_moves_conserve_defect_and_e_sigma(seed, length):
    rng = np.random.default_rng(seed)
    pts = [cone(f"c{i}", 2 * int(rng.integers(2, 5))) for i in range(int(rng.integers(1, 4)))]
    pts.append(MarkedPoint("f", chart=ChartModel.power(2.5)))
    state = SurgeryState(int(rng.integers(0, 3)), tuple(pts))
    d0, e0 = state.defect, e_sigma_of_state(state)
    for step in range(length):
        twins = random_move(state, rng, 3 * step)
        if twins is None:
            break
        new, reverse = move_branch_point(state, twins)
        assert new.defect == d0 and e_sigma_of_state(new) == e0
        assert move_branch_point(new, reverse)[0] == state
        state = new
