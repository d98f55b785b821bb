"""Schwarzian derivatives and the three-punctured-sphere quadratic differential.

Convention: a chart ``w`` with Schwarzian ``S(w) = q`` is a ratio of
solutions of ``u'' + (q / 2) u = 0``. For ``w = z**alpha``,
``S(w) = (1 - alpha**2) / (2 z**2)`` and the local monodromy of the linear
equation has trace ``-2 cos(pi alpha)``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    DerivativeVanishes,
    IntegrationDivergence,
    SingularOnPath,
    StepUnderflow,
    TooFewSteps,
)
from .moebius import MoebiusElement, product

STENCIL_POINTS = 16
STEP_FACTOR = 0.1
DEFAULT_BASE = 0.5 - 0.5j
LOOP_RADIUS = 0.25
INFINITY_RADIUS = 4.0
RELATION_TOL = 1e-9


def _derivatives(f, z: complex, h: float, n: int = STENCIL_POINTS):
    """First three derivatives from ``n`` samples on the circle ``|w - z| = h``.

    The discrete Fourier coefficients of ``f(z + h exp(2 pi i j / n))`` give
    the Taylor coefficients up to aliasing of order ``h**n``.
    """
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    vals = np.array([complex(f(z + h * w)) for w in roots])
    coeffs = [np.mean(vals * roots ** (-k)) / h ** k for k in range(4)]
    return coeffs[1], 2 * coeffs[2], 6 * coeffs[3], np.max(np.abs(vals))


def _schwarzian_at_step(f, z: complex, h: float) -> complex:
    d1, d2, d3, scale = _derivatives(f, z, h)
    if abs(d1) * h <= 1e-13 * max(scale, 1e-300):
        raise DerivativeVanishes(f"f'({z}) vanishes to working precision")
    r = d2 / d1
    return d3 / d1 - 1.5 * r * r


def schwarzian_numeric(f, z: complex, h: float | None = None) -> complex:
    """``S(f)(z) = f'''/f' - 3/2 (f''/f')**2`` by a circular stencil.

    Default step ``h = 0.1 |z|`` (``0.1`` at ``z = 0``); the estimates at
    ``h`` and ``h / 2`` are combined by Richardson extrapolation.
    """
    z = complex(z)
    if h is None:
        h = STEP_FACTOR * abs(z) if z != 0 else STEP_FACTOR
    if not h > 0 or z + 0.5 * h == z:
        raise StepUnderflow(f"step {h!r} is too small relative to |z|")
    s1 = _schwarzian_at_step(f, z, h)
    s2 = _schwarzian_at_step(f, z, 0.5 * h)
    w = 2.0 ** STENCIL_POINTS
    return (w * s2 - s1) / (w - 1)


def local_leading_coefficient(alpha: complex) -> complex:
    return (1 - complex(alpha) ** 2) / 2


@dataclass(frozen=True)
class LocalQuadraticData:
    alpha: complex
    tail: tuple[complex, ...]  # b_n for n = -1, 0, 1, ...

    @property
    def leading(self) -> complex:
        return local_leading_coefficient(self.alpha)


@dataclass(frozen=True)
class QuadraticDifferential3:
    """``c0/z**2 + c1/(z-1)**2 + mixed/(z(z-1))`` with poles at 0, 1, infinity.

    ``mixed = (alpha0**2 + alpha1**2 - alpha_inf**2 - 1) / 2`` makes the
    leading coefficient at infinity ``c0 + c1 + mixed`` equal to
    ``(1 - alpha_inf**2) / 2``. ``printed_sign=True`` flips the sign of
    ``mixed``; the exponent at infinity is then wrong (kept for comparison).
    """

    alpha0: complex
    alpha1: complex
    alpha_inf: complex
    printed_sign: bool = False

    @property
    def c0(self) -> complex:
        return local_leading_coefficient(self.alpha0)

    @property
    def c1(self) -> complex:
        return local_leading_coefficient(self.alpha1)

    @property
    def mixed(self) -> complex:
        a0, a1, ai = (complex(x) for x in (self.alpha0, self.alpha1, self.alpha_inf))
        m = (a0 ** 2 + a1 ** 2 - ai ** 2 - 1) / 2
        return -m if self.printed_sign else m

    @property
    def coefficients(self) -> tuple[complex, complex, complex]:
        return self.c0, self.c1, self.mixed

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        return self.c0 / z ** 2 + self.c1 / (z - 1) ** 2 + self.mixed / (z * (z - 1))

    def local_data_at_zero(self, terms: int = 8) -> LocalQuadraticData:
        # 1/(z(z-1)) = -sum z**(n-1), 1/(z-1)**2 = sum (n+1) z**n
        tail = [-self.mixed] + [self.c1 * (n + 1) - self.mixed for n in range(terms - 1)]
        return LocalQuadraticData(complex(self.alpha0), tuple(tail))


def triangle_differential(a0: complex, a1: complex, a_inf: complex, printed_sign: bool = False) -> QuadraticDifferential3:
    return QuadraticDifferential3(complex(a0), complex(a1), complex(a_inf), printed_sign)


def relation_check(a0: complex, a1: complex, a_inf: complex, tol: float = RELATION_TOL) -> bool:
    """Whether ``a0 + a1 + a_inf`` is an integer (to ``tol``)."""
    s = complex(a0) + complex(a1) + complex(a_inf)
    return abs(s - round(s.real)) <= tol


class Loop(enum.Enum):
    AROUND_0 = "Around0"
    AROUND_1 = "Around1"
    AROUND_INF = "AroundInf"


def _segment(za: complex, zb: complex, n: int) -> list[complex]:
    return [za + (zb - za) * k / n for k in range(1, n + 1)]


def loop_nodes(loop: Loop, base: complex = DEFAULT_BASE, steps: int = 20_000) -> np.ndarray:
    """Polyline for the standard loop: radial leg, full circle, radial leg back.

    Circles of radius 1/4 around 0 and 1 run counterclockwise; the loop
    around infinity is ``|z| = 4`` run clockwise.
    """
    base = complex(base)
    if loop is Loop.AROUND_INF:
        center, radius, orient = 0j, INFINITY_RADIUS, -1
    else:
        center = 0j if loop is Loop.AROUND_0 else 1 + 0j
        radius, orient = LOOP_RADIUS, 1
    offset = base - center
    if abs(offset) == 0:
        raise SingularOnPath("base point is a singular point")
    start = center + offset * (radius / abs(offset))
    n_circle = max(steps // 2, 1000)
    n_leg = max(steps // 4, 250)
    phi0 = cmath.phase(offset)
    nodes = [base] + _segment(base, start, n_leg)
    nodes += [center + cmath.rect(radius, phi0 + orient * 2 * math.pi * k / n_circle) for k in range(1, n_circle + 1)]
    nodes += _segment(start, base, n_leg)
    nodes = np.array(nodes, dtype=complex)
    nodes[-1] = base
    nodes[n_leg + n_circle] = start
    _check_path(nodes)
    return nodes


def _check_path(nodes: np.ndarray, margin: float = 1e-3) -> None:
    for s in (0.0, 1.0):
        if np.min(np.abs(nodes - s)) < margin:
            raise SingularOnPath(f"loop passes within {margin:g} of the singular point {s:g}")


def ode_monodromy(
    qd: QuadraticDifferential3,
    loop: Loop,
    base: complex = DEFAULT_BASE,
    steps: int = 20_000,
) -> MoebiusElement:
    """Monodromy of ``u'' + (q/2) u = 0`` along a standard loop (unit Wronskian lift)."""
    if steps < 10_000:
        raise TooFewSteps("ODE monodromy needs at least 10^4 steps")
    nodes = loop_nodes(Loop(loop), base, steps)
    c0, c1, cm = qd.coefficients
    Y = kernels.fuchsian_path(complex(c0), complex(c1), complex(cm), nodes, np.eye(2, dtype=complex))
    if not np.all(np.isfinite(Y)):
        raise IntegrationDivergence("transport produced non-finite values")
    return MoebiusElement(Y[0, 0], Y[0, 1], Y[1, 0], Y[1, 1])


def loop_product(mons: dict) -> MoebiusElement:
    """``T_0 T_1 T_inf``, which is ``±Id`` for the standard loops."""
    return product([mons[Loop.AROUND_0], mons[Loop.AROUND_1], mons[Loop.AROUND_INF]])


def _near_integer(x: complex, tol: float = 1e-9) -> bool:
    return abs(x - round(x.real)) <= tol


def monodromy_report(qd: QuadraticDifferential3, base: complex = DEFAULT_BASE, steps: int = 20_000, tol: float = 1e-4) -> dict:
    mons = {loop: ode_monodromy(qd, loop, base, steps) for loop in Loop}
    alphas = {Loop.AROUND_0: qd.alpha0, Loop.AROUND_1: qd.alpha1, Loop.AROUND_INF: qd.alpha_inf}
    loops = {}
    for loop, m in mons.items():
        a = complex(alphas[loop])
        expected = 2 * cmath.cos(math.pi * a)
        entry = {
            "trace": [m.trace.real, m.trace.imag],
            "expectedAbsTrace": abs(expected),
            "traceError": min(abs(m.trace - expected), abs(m.trace + expected)),
        }
        if _near_integer(a):
            # integer exponent: +-Id means a branched chart, otherwise log type
            eye = MoebiusElement.identity()
            trivial = min(m.distance(eye), m.distance(-eye)) < tol
            entry["integerExponentChart"] = "branched" if trivial else "logarithmic"
        loops[loop.value] = entry
    prod = loop_product(mons)
    eye = MoebiusElement.identity()
    prod_err = min(prod.distance(eye), prod.distance(-eye))
    literal = relation_check(qd.alpha0, qd.alpha1, qd.alpha_inf)
    relation_holds = prod_err < tol
    return {
        "loops": loops,
        "productDistanceToId": prod_err,
        "relationHolds": relation_holds,
        "relationCheck": literal,
        "discrepancy": relation_holds and not literal,
    }
