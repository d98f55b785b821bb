"""Local Riccati models over a cusp, section germs, flips and chart extraction.

Coordinates are ``(z, w)`` on ``disk x CP^1`` with the invariant fiber over
``z = 0``. The three model families are

* non-parabolic ``alpha w dz - z dw`` (first integral ``z**alpha / w``),
* parabolic ``(n w + z**n) dz - z dw`` (``n = 0`` is ``dz - z dw``,
  first integral ``log z - w / z**n``),
* trivial ``m w dz - z dw`` with ``m >= 0`` (``m = 0`` is ``dw = 0``).

A section germ is ``w = z**k * unit(z)`` with ``unit(0) != 0``; ``k > 0``
means the section passes through ``(0, 0)``, ``k < 0`` through
``(0, inf)``.

A flip centred at ``(0, 0)`` maps ``(model, w) -> (model - 1, w / z)``; a
flip centred at ``(0, inf)`` maps ``(model, w) -> (model + 1, z w)``. Here
``model +- 1`` shifts ``alpha``, the parabolic index ``n`` or the power
``m``. Flips only shift the order ``k``, so the stored unit series is never
re-truncated.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    CenterNotOnSection,
    InputError,
    IntegrationDivergence,
    InvariantSection,
    NonPositiveCoverOrder,
    NotInvariantFiber,
    TooFewSteps,
)
from .moebius import Kind, MoebiusElement, MonodromyClass

SERIES_LENGTH = 16
EXPONENT_TOL = 1e-12


class ModelKind(enum.Enum):
    NON_PARABOLIC = "NonParabolic"
    PARABOLIC = "Parabolic"
    TRIVIAL_POWER = "TrivialPower"


@dataclass(frozen=True)
class LocalModel:
    kind: ModelKind
    alpha: complex | None = None
    index: int = 0  # parabolic family index n, or trivial power m

    def __post_init__(self):
        if self.kind is ModelKind.NON_PARABOLIC:
            if self.alpha is None:
                raise InputError("non-parabolic model needs alpha")
            object.__setattr__(self, "alpha", complex(self.alpha))
        elif self.index < 0:
            raise InputError("model index must be nonnegative")

    @classmethod
    def non_parabolic(cls, alpha: complex) -> "LocalModel":
        return cls(ModelKind.NON_PARABOLIC, alpha=alpha)

    @classmethod
    def parabolic(cls, n: int = 0) -> "LocalModel":
        return cls(ModelKind.PARABOLIC, index=n)

    @classmethod
    def trivial(cls, m: int = 0) -> "LocalModel":
        return cls(ModelKind.TRIVIAL_POWER, index=m)

    @property
    def invariant_fiber(self) -> bool:
        return not (self.kind is ModelKind.TRIVIAL_POWER and self.index == 0)

    @property
    def one_form(self) -> str:
        if self.kind is ModelKind.NON_PARABOLIC:
            return f"({_fmt(self.alpha)}) w dz - z dw"
        if self.kind is ModelKind.PARABOLIC:
            n = self.index
            return "dz - z dw" if n == 0 else f"({n} w + z^{n}) dz - z dw"
        return "dw = 0" if self.index == 0 else f"{self.index} w dz - z dw"

    @property
    def first_integral(self) -> str:
        if self.kind is ModelKind.NON_PARABOLIC:
            return f"z^({_fmt(self.alpha)}) w^-1"
        if self.kind is ModelKind.PARABOLIC:
            n = self.index
            return "log z - w" if n == 0 else f"log z - w z^-{n}"
        return "w" if self.index == 0 else f"z^{self.index} w^-1"

    def shifted(self, step: int) -> "LocalModel":
        if self.kind is ModelKind.NON_PARABOLIC:
            return LocalModel.non_parabolic(self.alpha + step)
        return LocalModel(self.kind, index=self.index + step)

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "oneForm": self.one_form, "firstIntegral": self.first_integral}
        if self.alpha is not None:
            out["alpha"] = [self.alpha.real, self.alpha.imag]
        else:
            out["index"] = self.index
        return out


def _fmt(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}i"


class ValueAtZero(enum.Enum):
    ZERO = "Zero"
    INFINITY = "Infinity"
    FINITE = "Finite"


@dataclass(frozen=True)
class SectionGerm:
    """``w = z**order * unit(z)`` truncated to ``len(unit)`` coefficients."""

    order: int
    unit: tuple[complex, ...]

    def __post_init__(self):
        unit = tuple(complex(c) for c in self.unit)
        if not unit or unit[0] == 0:
            raise InputError("unit series must have a nonzero constant term")
        object.__setattr__(self, "unit", unit)

    @classmethod
    def from_series(cls, coeffs, length: int = SERIES_LENGTH) -> "SectionGerm":
        """Holomorphic germ from its Taylor coefficients ``c0, c1, ...``."""
        coeffs = [complex(c) for c in coeffs]
        k = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if k is None:
            raise InvariantSection("the zero section is the separatrix w = 0")
        return cls(k, tuple(coeffs[k:k + length]))

    @classmethod
    def pole(cls, n: int, unit=(1.0,)) -> "SectionGerm":
        if n < 1:
            raise InputError("pole order must be at least 1")
        return cls(-n, tuple(unit))

    @property
    def value_at_zero(self) -> ValueAtZero:
        if self.order > 0:
            return ValueAtZero.ZERO
        if self.order < 0:
            return ValueAtZero.INFINITY
        return ValueAtZero.FINITE

    @property
    def vanishing_order(self) -> int:
        """Zero order (``Zero``), pole order (``Infinity``) or 0."""
        return abs(self.order)

    def first_variation(self) -> int | None:
        """Smallest ``j >= 1`` with ``unit[j] != 0`` (None if the unit is constant)."""
        return next((j for j, c in enumerate(self.unit) if j >= 1 and c != 0), None)

    def shifted(self, step: int) -> "SectionGerm":
        return SectionGerm(self.order + step, self.unit)

    def to_json(self) -> dict:
        return {
            "valueAtZero": self.value_at_zero.value,
            "order": self.vanishing_order,
            "unit": [[c.real, c.imag] for c in self.unit],
        }


class ChartKind(enum.Enum):
    POWER = "Power"
    PARABOLIC_LOG = "ParabolicLog"
    BRANCHED_COVER = "BranchedCover"


@dataclass(frozen=True)
class ChartModel:
    """Germ of a projective chart: ``z**e``, ``log z + z**-n`` or ``z**n``.

    Power exponents are stored up to inversion ``w -> 1/w``: the sign is
    chosen with ``Re e > 0`` (``Im e > 0`` when ``Re e = 0``).
    """

    kind: ChartKind
    exponent: complex | None = None
    n: int | None = None

    @classmethod
    def power(cls, exponent: complex, normalize: bool = True) -> "ChartModel":
        e = complex(exponent)
        if abs(e) < EXPONENT_TOL:
            raise InputError("power chart exponent must be nonzero")
        if normalize:
            if abs(e.real) <= EXPONENT_TOL:
                e = complex(0.0, abs(e.imag))
            elif e.real < 0:
                e = -e
        return cls(ChartKind.POWER, exponent=e)

    @classmethod
    def parabolic_log(cls, n: int) -> "ChartModel":
        if n < 0:
            raise InputError("parabolic chart index must be nonnegative")
        return cls(ChartKind.PARABOLIC_LOG, n=n)

    @classmethod
    def branched_cover(cls, n: int) -> "ChartModel":
        if n < 1:
            raise InputError("branched cover order must be at least 1")
        return cls(ChartKind.BRANCHED_COVER, n=n)

    def decomposition(self) -> tuple[complex, int]:
        """``(alpha0, n_p)`` with chart ``z**(alpha0 + n_p)``, ``0 < Re alpha0 <= 1``.

        Parabolic charts give ``(0, n)``. A power chart with ``Re e = 0``
        gives ``(e, 0)``.
        """
        if self.kind is ChartKind.PARABOLIC_LOG:
            return 0j, self.n
        if self.kind is ChartKind.BRANCHED_COVER:
            return 1 + 0j, self.n - 1
        e = self.exponent
        if abs(e.real) <= EXPONENT_TOL:
            return e, 0
        n_p = math.ceil(e.real - EXPONENT_TOL) - 1
        return e - n_p, n_p

    @property
    def branching_order(self) -> int:
        return self.decomposition()[1]

    def close_to(self, other: "ChartModel", tol: float = EXPONENT_TOL) -> bool:
        if self.kind is not other.kind:
            return False
        if self.kind is ChartKind.POWER:
            return abs(self.exponent - other.exponent) <= tol
        return self.n == other.n

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.kind is ChartKind.POWER:
            out["exponent"] = [self.exponent.real, self.exponent.imag]
        else:
            out["n"] = self.n
        a0, n_p = self.decomposition()
        out["alpha0"] = [a0.real, a0.imag]
        out["branchingOrder"] = n_p
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ChartModel":
        kind = ChartKind(data["kind"])
        if kind is ChartKind.POWER:
            re, im = data["exponent"]
            return cls.power(complex(float(re), float(im)))
        if kind is ChartKind.PARABOLIC_LOG:
            return cls.parabolic_log(int(data["n"]))
        return cls.branched_cover(int(data["n"]))


def tangency_order(model: LocalModel, section: SectionGerm) -> int:
    """Order of tangency of the section with the foliation on the fiber over 0."""
    k = section.order
    if model.kind is ModelKind.NON_PARABOLIC:
        return abs(k)
    if model.kind is ModelKind.PARABOLIC:
        if k <= 0:
            return -k
        return min(k, model.index)
    m = model.index
    if m == 0:
        # horizontal foliation: tangency = (order of w - w(0)) - 1
        if k != 0:
            return abs(k) - 1
        j = section.first_variation()
        if j is None:
            raise InvariantSection("constant section is a leaf of dw = 0")
        return j - 1
    if k == m:
        j = section.first_variation()
        if j is None:
            raise InvariantSection(f"section w = c z^{m} is a leaf")
        return k + j
    return abs(k)


@dataclass(frozen=True)
class ModelWithSection:
    model: LocalModel
    section: SectionGerm
    tangency: int = -1

    def __post_init__(self):
        t = tangency_order(self.model, self.section)
        if self.tangency == -1:
            object.__setattr__(self, "tangency", t)
        elif self.tangency != t:
            raise InputError(f"stored tangency {self.tangency} does not match computed {t}")


class Center(enum.Enum):
    ON_SECTION = "OnSection"
    OFF_SECTION = "OffSection"


def _singular_at_zero(model: LocalModel) -> bool:
    if model.kind is ModelKind.PARABOLIC:
        return model.index >= 1
    return model.invariant_fiber


def flip(state: ModelWithSection, center: Center, point: str | None = None) -> ModelWithSection:
    """Elementary transformation of the fiber over 0.

    ``point`` (``"zero"`` or ``"infinity"``) picks the blown-up singular
    point when the choice is not forced by ``center`` and the section.
    """
    model, sec = state.model, state.section
    if not model.invariant_fiber:
        raise NotInvariantFiber("the fiber over 0 is not invariant (model dw = 0)")
    k = sec.order
    if center is Center.ON_SECTION:
        if k == 0:
            raise CenterNotOnSection("the section avoids both singular points")
        forced = "zero" if k > 0 else "infinity"
    else:
        if k > 0:
            forced = "infinity"
        elif k < 0:
            forced = "zero"
        elif point is not None:
            forced = point
        else:
            forced = "zero" if _singular_at_zero(model) else "infinity"
    if point is not None and point != forced:
        raise CenterNotOnSection(f"center {center.value} with this section must be at {forced}")
    if forced == "zero":
        if not _singular_at_zero(model):
            raise CenterNotOnSection("(0, 0) is not a singular point of this model")
        return ModelWithSection(model.shifted(-1), sec.shifted(-1))
    if forced == "infinity":
        return ModelWithSection(model.shifted(+1), sec.shifted(+1))
    raise InputError(f"unknown flip point {point!r}")


def chart_from_section(state: ModelWithSection) -> ChartModel:
    """Projective chart obtained by projecting the section along the leaves."""
    model, sec = state.model, state.section
    k = sec.order
    if model.kind is ModelKind.NON_PARABOLIC:
        # chart is w / z**alpha = z**(k - alpha) * unit
        e = k - model.alpha
        if abs(e) < EXPONENT_TOL:
            raise InvariantSection("section is a leaf")
        return ChartModel.power(e)
    if model.kind is ModelKind.PARABOLIC:
        # chart is w / z**n - log z
        return ChartModel.parabolic_log(max(model.index - k, 0))
    m = model.index
    if k > 0:
        if k <= m:
            raise NonPositiveCoverOrder(
                f"section order {k} <= trivial power {m}; flip at (0, 0) first"
            )
        return ChartModel.branched_cover(k - m)
    if k < 0:
        return ChartModel.branched_cover(m - k)
    if m >= 1:
        return ChartModel.branched_cover(m)
    return regular_chart(sec)


def regular_chart(section: SectionGerm) -> ChartModel:
    """Chart at a regular point of the horizontal foliation: ``z**n`` with ``n - 1`` the tangency."""
    if section.order < 0:
        raise InputError("regular chart needs a holomorphic section")
    if section.order > 0:
        return ChartModel.branched_cover(section.order)
    j = section.first_variation()
    if j is None:
        raise InvariantSection("constant section is a horizontal leaf")
    return ChartModel.branched_cover(j)


def flips_to_transversal(state: ModelWithSection) -> tuple[int, ModelWithSection]:
    """Apply on-section flips until the tangency vanishes or no flip applies."""
    count = 0
    while state.tangency > 0 and state.model.invariant_fiber:
        try:
            nxt = flip(state, Center.ON_SECTION)
        except CenterNotOnSection:
            break
        state = nxt
        count += 1
    return count, state


def minimal_model(cls: MonodromyClass) -> LocalModel:
    if cls.kind is Kind.NON_PARABOLIC:
        return LocalModel.non_parabolic(cls.alpha)
    if cls.kind is Kind.PARABOLIC:
        return LocalModel.parabolic(0)
    return LocalModel.trivial(0)


def invariant_fiber_count(classes, trivial_powers=None) -> int:
    """Number of invariant fibers of a compactification.

    Non-trivial cusps always contribute. Trivial cusps contribute only when
    ``trivial_powers`` assigns them a model ``m w dz - z dw`` with ``m >= 1``;
    the default (all ``dw = 0``) gives ``k0``.
    """
    trivial_powers = trivial_powers or {}
    total = 0
    for j, c in enumerate(classes):
        if not c.is_trivial or trivial_powers.get(j, 0) >= 1:
            total += 1
    return total


def _three_point_map(P: np.ndarray) -> MoebiusElement:
    # columns of P are the images of infinity, 0 and 1
    pinf, p0, p1 = P[:, 0], P[:, 1], P[:, 2]
    x, y = np.linalg.solve(np.column_stack([pinf, p0]), p1)
    return MoebiusElement(x * pinf[0], y * p0[0], x * pinf[1], y * p0[1])


def holonomy_numeric(
    model: LocalModel,
    radius: float = 0.5,
    steps: int = 100_000,
    base_point: complex | None = None,
) -> MoebiusElement:
    """Monodromy of the model's Riccati equation around ``|z| = radius``.

    The points ``inf, 0, 1`` of the fiber over the base point are transported
    in homogeneous coordinates (so ``w = inf`` needs no special chart) by RK4
    with ``steps`` steps, and the Moebius map is rebuilt from their images.
    """
    if steps < 1000:
        raise TooFewSteps("holonomy integration needs at least 1000 steps")
    if not 0 < radius < 1:
        raise InputError("radius must lie in (0, 1)")
    theta0 = 0.0 if base_point is None else cmath.phase(complex(base_point))
    if model.kind is ModelKind.NON_PARABOLIC:
        p, s, e = model.alpha, 0j, 0
    elif model.kind is ModelKind.PARABOLIC:
        p, s, e = complex(model.index), 1 + 0j, model.index
    else:
        p, s, e = complex(model.index), 0j, 0
    U0 = np.array([[1, 0, 1], [0, 1, 1]], dtype=complex)
    U = kernels.riccati_circle(complex(p), complex(s), int(e), float(radius), float(theta0), int(steps), U0)
    if not np.all(np.isfinite(U)):
        raise IntegrationDivergence("transport produced non-finite values")
    return _three_point_map(U)


def holonomy_closed_form(model: LocalModel, radius: float = 0.5, base_point: complex | None = None) -> MoebiusElement:
    """Exact monodromy ``w -> exp(2 pi i alpha) w``, ``w -> w + 2 pi i z0**n`` or Id."""
    if model.kind is ModelKind.NON_PARABOLIC:
        return MoebiusElement.diagonal(cmath.exp(1j * math.pi * model.alpha))
    if model.kind is ModelKind.PARABOLIC:
        z0 = radius * cmath.exp(1j * (0.0 if base_point is None else cmath.phase(complex(base_point))))
        return MoebiusElement(1, 2j * math.pi * z0 ** model.index, 0, 1)
    return MoebiusElement.identity()
