"""Local developing maps: degree, strip decomposition, twins and action pairs.

The developing map of ``z**alpha`` on the universal cover ``x = log z``
is ``x -> exp(alpha x)``. With ``alpha = a + ib`` and ``x = u + iv`` the
level lines of ``Im(alpha x) = b u + a v`` cut the ``x`` plane into strips
that ``exp(alpha x)`` maps biholomorphically onto the slit plane.
"""

from __future__ import annotations

import cmath
import csv
import enum
import io
import math
from dataclasses import dataclass

from .errors import DegenerateStrip, InputError, UnsupportedExponent, ZeroAlpha, ZeroVector
from .riccati import ChartKind, ChartModel

TOL = 1e-12
GRID_SIZE = 32


class DegreeFlag(enum.Enum):
    ANNULUS_CASE = "AnnulusCase"


def chart_degree(chart: ChartModel, tol: float = TOL) -> int | DegreeFlag:
    """Maximum number of preimages of a point under the local chart."""
    if chart.kind is ChartKind.POWER:
        re = chart.exponent.real
        if abs(re) <= tol:
            return DegreeFlag.ANNULUS_CASE
        if re < 0:
            raise UnsupportedExponent("negative real part: invert the chart first")
        return math.ceil(re - tol)
    if chart.kind is ChartKind.PARABOLIC_LOG:
        return max(chart.n, 1)
    return chart.n


def count_preimages_numeric(alpha: complex, target: complex, samples: int = 1000) -> int:
    """Preimages of ``target`` under ``exp(alpha x)`` in one fundamental strip.

    The preimages are ``x_k = (log target + 2 pi i k) / alpha``. Along them
    ``b u + a v = arg(target) + 2 pi k``; the strip ``0 <= b u + a v < 2 pi a``
    is a fundamental domain of ``x -> x + 2 pi i``. ``|k| <= samples`` is
    enumerated directly.
    """
    alpha = complex(alpha)
    target = complex(target)
    if target == 0:
        raise InputError("target must be nonzero")
    a = alpha.real
    if abs(a) <= TOL:
        raise DegenerateStrip("Re alpha = 0: the strip has zero width")
    if a < 0:
        raise UnsupportedExponent("negative real part: invert the chart first")
    theta = cmath.phase(target)
    width = 2 * math.pi * a
    count = 0
    for k in range(-samples, samples + 1):
        level = theta + 2 * math.pi * k
        if 0 <= level < width:
            count += 1
    return count


def target_grid(n: int = GRID_SIZE) -> list[complex]:
    """Polar ``n x n`` grid of targets in the punctured unit disk."""
    out = []
    for i in range(n):
        r = (i + 0.5) / n
        for j in range(n):
            t = -math.pi + 2 * math.pi * (j + 0.5) / n
            out.append(cmath.rect(r, t))
    return out


def max_preimages_on_grid(alpha: complex, n: int = GRID_SIZE, samples: int = 1000) -> int:
    return max(count_preimages_numeric(alpha, t, samples) for t in target_grid(n))


@dataclass(frozen=True)
class StripDecomposition:
    direction: complex
    spacing: float
    half_plane: str
    annulus: bool = False

    def __post_init__(self):
        if not self.spacing > 0:
            raise InputError("strip spacing must be positive")

    def anchors(self, count: int = 5, alpha: complex | None = None) -> list[complex]:
        # one point on each line b u + a v = 2 pi j, j = -count..count
        if alpha is None:
            raise InputError("anchors need alpha")
        return [2j * math.pi * j / complex(alpha) for j in range(-count, count + 1)]

    def to_json(self) -> dict:
        return {
            "direction": [self.direction.real, self.direction.imag],
            "spacing": self.spacing,
            "halfPlane": self.half_plane,
            "annulus": self.annulus,
        }


def strip_decomposition(alpha: complex) -> StripDecomposition:
    """Lines ``b u + a v = 2 pi j``, direction ``conj(alpha)/|alpha|``, spacing ``2 pi/|alpha|``."""
    alpha = complex(alpha)
    if abs(alpha) <= TOL:
        raise ZeroAlpha("alpha must be nonzero")
    direction = alpha.conjugate() / abs(alpha)
    annulus = abs(alpha.real) <= TOL
    if annulus:
        # alpha = ib: vertical lines u = const decomposing v > 0
        return StripDecomposition(direction, 2 * math.pi / abs(alpha.imag), "v > 0", True)
    return StripDecomposition(direction, 2 * math.pi / abs(alpha), "a u - b v < 0")


def strip_csv(alpha: complex, count: int = 5) -> str:
    """CSV rows ``j,u,v,dir_re,dir_im,spacing`` with one anchor per line."""
    strip = strip_decomposition(alpha)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["j", "u", "v", "dir_re", "dir_im", "spacing"])
    for j, p in zip(range(-count, count + 1), strip.anchors(count, alpha)):
        writer.writerow([j, repr(p.real), repr(p.imag), repr(strip.direction.real),
                         repr(strip.direction.imag), repr(strip.spacing)])
    return buf.getvalue()


def has_twins(chart: ChartModel) -> bool:
    if chart.kind is ChartKind.POWER:
        return chart.exponent.real > 1 + TOL
    return chart.n >= 2


@dataclass(frozen=True)
class ActionPair:
    """Deck translation and monodromy-equivariance vectors on the universal cover."""

    deck: complex
    equiv: complex

    @property
    def degenerate(self) -> bool:
        r = complex(self.deck) / complex(self.equiv)
        return abs(r.imag) <= TOL * abs(r) and r.real <= 0


def pair_to_alpha(pair: ActionPair) -> complex:
    """Exponent ``alpha`` after rescaling the deck vector to ``2 pi i``."""
    deck, equiv = complex(pair.deck), complex(pair.equiv)
    if deck == 0 or equiv == 0:
        raise ZeroVector("action pair vectors must be nonzero")
    return deck / equiv


def normalize_parabolic_chart(a: complex, b: complex, n: int, c: complex = 0j) -> tuple[ChartModel, complex]:
    """Normalize ``a log z + b z**-n + c`` to ``log z + z**-n``.

    Returns the chart and the ``lam`` (``lam**n = b/a``) of the
    pre-composition ``z -> lam z``. The post-composition is
    ``w -> (w - c - a log lam) / a``.
    """
    a, b, c = complex(a), complex(b), complex(c)
    if a == 0:
        raise InputError("coefficient of log z must be nonzero")
    if n < 1:
        raise InputError("pole order must be at least 1")
    if b == 0:
        return ChartModel.parabolic_log(0), 1 + 0j
    lam = (b / a) ** (1.0 / n)
    return ChartModel.parabolic_log(n), lam


def apply_parabolic_normalization(a: complex, b: complex, n: int, c: complex, lam: complex, z: complex) -> complex:
    """Normalized chart value at ``z``: should equal ``log z + z**-n`` (or ``log z``)."""
    zz = lam * z
    w = a * cmath.log(zz) + b * zz ** (-n) + c
    return (w - c - a * cmath.log(lam)) / a
