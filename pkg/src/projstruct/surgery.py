"""Cone-angle bookkeeping for moving branch points along twin curves.

Angles are exact :class:`fractions.Fraction` multiples of pi, so a cone of
angle ``2 pi n`` is stored as ``Fraction(2 n)``. Points of angle ``2 pi``
are regular and are dropped from a state.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .devgeo import ActionPair, has_twins
from .errors import (
    EndpointNotRegular,
    InputError,
    InvalidTwins,
    NoTwins,
    NotMultipleOf2Pi,
    UndecomposableChart,
)
from .riccati import ChartKind, ChartModel

REGULAR = Fraction(2)


@dataclass(frozen=True)
class MarkedPoint:
    label: str
    cone: Fraction | None = None
    chart: ChartModel | None = None

    def __post_init__(self):
        if (self.cone is None) == (self.chart is None):
            raise InputError(f"point {self.label!r} needs exactly one of cone or chart")
        if self.cone is not None:
            cone = Fraction(self.cone)
            if cone <= 0:
                raise InputError(f"cone angle at {self.label!r} must be positive")
            object.__setattr__(self, "cone", cone)

    @property
    def is_regular(self) -> bool:
        return self.cone == REGULAR

    def to_json(self) -> dict:
        if self.cone is not None:
            return {"label": self.label, "cone": {"num": self.cone.numerator, "den": self.cone.denominator}}
        return {"label": self.label, "chart": self.chart.to_json()}


@dataclass(frozen=True)
class SurgeryState:
    genus: int
    points: tuple[MarkedPoint, ...] = ()
    defect: Fraction = field(init=False)

    def __post_init__(self):
        if self.genus < 0:
            raise InputError("genus must be nonnegative")
        pts = tuple(sorted((p for p in self.points if not p.is_regular), key=lambda p: p.label))
        labels = [p.label for p in pts]
        if len(set(labels)) != len(labels):
            raise InputError("point labels must be unique")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "defect", sum((p.cone - 2 for p in pts if p.cone is not None), Fraction(0)))

    def point(self, label: str) -> MarkedPoint | None:
        return next((p for p in self.points if p.label == label), None)

    @property
    def labels(self) -> list[str]:
        return [p.label for p in self.points]

    def to_json(self) -> dict:
        return {"genus": self.genus, "points": [p.to_json() for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> "SurgeryState":
        try:
            genus = int(data["genus"])
            pts = []
            for raw in data.get("points", []):
                label = str(raw["label"])
                if "cone" in raw:
                    pts.append(MarkedPoint(label, cone=_fraction(raw["cone"])))
                else:
                    pts.append(MarkedPoint(label, chart=ChartModel.from_json(raw["chart"])))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed surgery state: {exc}") from exc
        return cls(genus, tuple(pts))


def _fraction(raw) -> Fraction:
    if isinstance(raw, dict):
        return Fraction(int(raw["num"]), int(raw["den"]))
    return Fraction(raw)


@dataclass(frozen=True)
class TwinSpec:
    """Twins from ``source`` ending at ``endpoints`` (``None`` = unlabeled regular point).

    ``angles = (alpha, beta)`` splits the angle at the source. After the move
    ``split_labels[0]`` carries ``beta``, ``split_labels[1]`` carries
    ``alpha`` and the merged endpoint is called ``merged_label``.
    """

    source: str
    endpoints: tuple[str | None, str | None]
    angles: tuple[Fraction, Fraction]
    split_labels: tuple[str | None, str | None]
    merged_label: str

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(Fraction(a) for a in self.angles))
        object.__setattr__(self, "endpoints", tuple(self.endpoints))
        object.__setattr__(self, "split_labels", tuple(self.split_labels))

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "endpoints": list(self.endpoints),
            "angles": [{"num": a.numerator, "den": a.denominator} for a in self.angles],
            "splitLabels": list(self.split_labels),
            "mergedLabel": self.merged_label,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TwinSpec":
        try:
            return cls(
                str(data["source"]),
                tuple(data["endpoints"]),
                tuple(_fraction(a) for a in data["angles"]),
                tuple(data["splitLabels"]),
                str(data["mergedLabel"]),
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed twin specification: {exc}") from exc


def _endpoint_angle(state: SurgeryState, label: str | None) -> Fraction:
    if label is None:
        return REGULAR
    p = state.point(label)
    if p is None:
        return REGULAR
    if p.cone is None:
        raise InvalidTwins(f"endpoint {label!r} is a Fuchsian-type point")
    return p.cone


def move_branch_point(state: SurgeryState, twins: TwinSpec, strict: bool = True) -> tuple[SurgeryState, TwinSpec]:
    """Cut along the twins and reglue; returns the new state and the reverse move."""
    src = state.point(twins.source)
    if src is None or src.cone is None:
        raise InvalidTwins(f"source {twins.source!r} is not a cone point of the state")
    theta = src.cone
    alpha, beta = twins.angles
    if alpha <= 0 or beta <= 0 or alpha + beta != theta:
        raise InvalidTwins(f"angles {alpha}, {beta} do not split the source angle {theta} (units of pi)")
    if theta < 4:
        raise InvalidTwins("source angle must be at least 4 pi")
    e1, e2 = twins.endpoints
    if twins.source in (e1, e2) or (e1 is not None and e1 == e2):
        raise InvalidTwins("endpoints must be distinct from each other and from the source")
    t1, t2 = _endpoint_angle(state, e1), _endpoint_angle(state, e2)
    if strict and any(x.denominator != 1 or x.numerator % 2 for x in (alpha, beta, t1, t2)):
        raise NotMultipleOf2Pi("all four angles must be multiples of 2 pi")

    removed = {twins.source, e1, e2}
    keep = [p for p in state.points if p.label not in removed]
    new_pts = [(twins.split_labels[0], beta), (twins.split_labels[1], alpha), (twins.merged_label, t1 + t2)]
    taken = {p.label for p in keep}
    for label, angle in new_pts:
        if angle == REGULAR:
            continue
        if label is None:
            raise InvalidTwins("a singular point produced by the move needs a label")
        if label in taken:
            raise InvalidTwins(f"label {label!r} already used")
        taken.add(label)
        keep.append(MarkedPoint(label, cone=angle))
    new_state = SurgeryState(state.genus, tuple(keep))

    reverse = TwinSpec(
        source=twins.merged_label,
        endpoints=twins.split_labels,
        angles=(t2, t1),
        split_labels=(e1, e2),
        merged_label=twins.source,
    )
    return new_state, reverse


def point_branching_order(p: MarkedPoint) -> int:
    if p.cone is not None:
        return math.ceil(p.cone / 2) - 1
    a0, n_p = p.chart.decomposition()
    if p.chart.kind is ChartKind.POWER and a0.real <= 0:
        raise UndecomposableChart(f"chart at {p.label!r} has Re exponent 0")
    return n_p


def e_sigma_of_state(state: SurgeryState) -> int:
    return sum(point_branching_order(p) for p in state.points)


def inverse_move_at_fuchsian(
    state: SurgeryState,
    label: str,
    endpoints: tuple[str | None, str | None] = (None, None),
    new_label: str | None = None,
) -> tuple[SurgeryState, ActionPair]:
    """Move ``2 pi`` of angle from a ``z**alpha`` point onto a new simple branch point."""
    p = state.point(label)
    if p is None or p.chart is None or p.chart.kind is not ChartKind.POWER:
        raise InputError(f"{label!r} is not a power-type Fuchsian point")
    if not has_twins(p.chart):
        raise NoTwins(f"Re alpha = {p.chart.exponent.real:g} <= 1: no twins")
    for e in endpoints:
        if e is not None and state.point(e) is not None:
            raise EndpointNotRegular(f"endpoint {e!r} is a singular point")
    q = new_label or f"{label}'"
    if state.point(q) is not None:
        raise InvalidTwins(f"label {q!r} already used")
    alpha = p.chart.exponent
    others = [x for x in state.points if x.label != label]
    others.append(MarkedPoint(label, chart=ChartModel.power(alpha - 1)))
    others.append(MarkedPoint(q, cone=Fraction(4)))
    pair = ActionPair(2j * math.pi * (alpha - 1) / alpha, 2j * math.pi / alpha)
    return SurgeryState(state.genus, tuple(others)), pair


class TroyanovType(enum.Enum):
    HYPERBOLIC = "Hyperbolic"
    EUCLIDEAN = "Euclidean"
    SPHERICAL = "Spherical"


def curvature_sign_value(genus: int, angles) -> Fraction:
    """``kappa / pi`` for ``kappa = 2 pi chi + sum(theta - 2 pi)``; angles in units of pi."""
    chi = 2 - 2 * genus
    return 2 * chi + sum((Fraction(t) - 2 for t in angles), Fraction(0))


def troyanov_type(genus: int, angles) -> TroyanovType:
    if any(Fraction(t) <= 0 for t in angles):
        raise InputError("cone angles must be positive")
    k = curvature_sign_value(genus, angles)
    if k < 0:
        return TroyanovType.HYPERBOLIC
    if k == 0:
        return TroyanovType.EUCLIDEAN
    return TroyanovType.SPHERICAL
