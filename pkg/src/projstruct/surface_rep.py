"""Representations of punctured-surface groups into PSL(2, C).

Generators are ordered ``a1, b1, ..., ag, bg, c1, ..., ck`` and the single
relation is ``[a1, b1] ... [ag, bg] c1 ... ck = Id`` with
``[a, b] = a b a^-1 b^-1``. Images are stored as explicit SL(2, C) lifts;
the sign of their product is the lifting obstruction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, RelationViolated
from .moebius import (
    DEFAULT_TOL,
    Kind,
    MoebiusElement,
    MonodromyClass,
    classify,
    commutator,
    fixed_points,
    product,
)


@dataclass(frozen=True)
class SurfacePresentation:
    genus: int
    cusps: int

    def __post_init__(self):
        if self.genus < 0 or self.cusps < 0:
            raise InputError("genus and cusp count must be nonnegative")

    @property
    def generator_count(self) -> int:
        return 2 * self.genus + self.cusps

    @property
    def labels(self) -> list[str]:
        out = []
        for i in range(1, self.genus + 1):
            out += [f"a{i}", f"b{i}"]
        out += [f"c{j}" for j in range(1, self.cusps + 1)]
        return out

    @property
    def euler_characteristic(self) -> int:
        """Of the closed surface ``S`` (cusps filled in)."""
        return 2 - 2 * self.genus


@dataclass(frozen=True)
class SurfaceRepresentation:
    presentation: SurfacePresentation
    images: tuple[MoebiusElement, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.presentation.generator_count:
            raise InputError(
                f"expected {self.presentation.generator_count} generator images, got {len(images)}"
            )
        object.__setattr__(self, "images", images)

    @classmethod
    def build(cls, genus: int, handles=(), cusps=()) -> "SurfaceRepresentation":
        """From ``handles = [(A1, B1), ...]`` and ``cusps = [C1, ...]``."""
        handles = list(handles)
        if len(handles) != genus:
            raise InputError("need one (A, B) pair per handle")
        images = [m for pair in handles for m in pair] + list(cusps)
        return cls(SurfacePresentation(genus, len(cusps)), tuple(images))

    @property
    def genus(self) -> int:
        return self.presentation.genus

    @property
    def handle_images(self) -> list[tuple[MoebiusElement, MoebiusElement]]:
        g = self.genus
        return [(self.images[2 * i], self.images[2 * i + 1]) for i in range(g)]

    @property
    def cusp_images(self) -> tuple[MoebiusElement, ...]:
        return self.images[2 * self.genus:]

    def with_signs(self, signs) -> "SurfaceRepresentation":
        signs = list(signs)
        if len(signs) != len(self.images):
            raise InputError("one sign per generator is required")
        imgs = tuple(m if s > 0 else -m for m, s in zip(self.images, signs))
        return SurfaceRepresentation(self.presentation, imgs)

    def conjugate(self, c: MoebiusElement) -> "SurfaceRepresentation":
        ci = c.inverse()
        return SurfaceRepresentation(self.presentation, tuple(product([c, m, ci]) for m in self.images))

    def relation_product(self) -> MoebiusElement:
        parts = [commutator(a, b) for a, b in self.handle_images]
        return product(parts + list(self.cusp_images))


@dataclass(frozen=True)
class LiftChoice:
    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (1, -1) for s in signs):
            raise InputError("lift signs must be +1 or -1")
        object.__setattr__(self, "signs", signs)


@dataclass(frozen=True)
class CuspSummary:
    per_cusp: tuple[MonodromyClass, ...] = field(default_factory=tuple)

    @property
    def k0(self) -> int:
        return sum(1 for c in self.per_cusp if not c.is_trivial)


def validate_relation(rep: SurfaceRepresentation, tol: float = DEFAULT_TOL) -> int:
    """Sign ``s`` with ``relation product = s * Id`` for the stored lifts."""
    prod = rep.relation_product()
    eye = MoebiusElement.identity()
    if prod.distance(eye) < tol:
        return 1
    if prod.distance(-eye) < tol:
        return -1
    raise RelationViolated(
        "relation product is not ±Id: "
        f"distance {prod.projective_distance(eye):.3e} exceeds tol {tol:g}"
    )


def lift_sign(rep: SurfaceRepresentation, choice: LiftChoice, tol: float = DEFAULT_TOL) -> int:
    """Sign of the relation product after multiplying generator ``i`` by ``choice.signs[i]``."""
    validate_relation(rep, tol)
    return validate_relation(rep.with_signs(choice.signs), tol)


def local_monodromies(rep: SurfaceRepresentation, tol: float = DEFAULT_TOL) -> CuspSummary:
    return CuspSummary(tuple(classify(c, tol) for c in rep.cusp_images))


def _minimal_cusp_sign(m: MoebiusElement, cls: MonodromyClass) -> int:
    tr = m.trace
    if cls.kind is Kind.TRIVIAL:
        return 1 if tr.real >= 0 else -1
    if cls.kind is Kind.PARABOLIC:
        return 1 if tr.real >= 0 else -1
    target = 2 * cmath.cos(math.pi * cls.alpha)
    plus, minus = abs(tr - target), abs(-tr - target)
    # alpha = 1/2 has trace 0 for both lifts; keep the given lift
    if abs(plus - minus) <= 1e-9 * max(1.0, abs(target)):
        return 1
    return 1 if plus < minus else -1


def minimal_lift(rep: SurfaceRepresentation, tol: float = DEFAULT_TOL) -> LiftChoice:
    """Lift signs matching the minimal local models at the cusps.

    A non-parabolic cusp gets the sign whose matrix has eigenvalues
    ``exp(±i pi alpha)`` (normalized ``alpha``), a parabolic cusp the sign
    with trace +2, a trivial cusp the sign giving +Id. Handle generators
    keep +1.
    """
    signs = [1] * (2 * rep.genus)
    for m in rep.cusp_images:
        signs.append(_minimal_cusp_sign(m, classify(m, tol)))
    return LiftChoice(tuple(signs))


def _preserved_pair(elements, tol: float) -> bool:
    """Whether some pair of sphere points is setwise fixed by every element."""
    candidates = []
    for m in elements:
        if classify(m, tol).kind is Kind.NON_PARABOLIC:
            candidates = fixed_points(m, tol)
            break
    if len(candidates) != 2:
        return False
    p, q = candidates
    for m in elements:
        mp, mq = m.apply_point(p), m.apply_point(q)
        same = mp.chordal_distance(p) < 1e-7 and mq.chordal_distance(q) < 1e-7
        swap = mp.chordal_distance(q) < 1e-7 and mq.chordal_distance(p) < 1e-7
        if not (same or swap):
            return False
    return True


def _common_fixed_point(elements, tol: float) -> bool:
    nontrivial = [m for m in elements if classify(m, tol).kind is not Kind.TRIVIAL]
    if not nontrivial:
        return True
    for p in fixed_points(nontrivial[0], tol):
        if all(m.apply_point(p).chordal_distance(p) < 1e-7 for m in nontrivial):
            return True
    return False


def _fixes_interior_point(elements) -> bool:
    # look for a positive definite hermitian H with g^* H g = H for all g
    basis = [
        np.array([[1, 0], [0, 0]], dtype=complex),
        np.array([[0, 0], [0, 1]], dtype=complex),
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, 1j], [-1j, 0]], dtype=complex),
    ]
    rows = []
    for m in elements:
        g = m.as_array()
        cols = [(g.conj().T @ e @ g - e).ravel() for e in basis]
        block = np.array(cols).T
        rows.append(np.vstack([block.real, block.imag]))
    if not rows:
        return True
    system = np.vstack(rows)
    _, s, vt = np.linalg.svd(system)
    null = vt[np.sum(s > 1e-8 * max(1.0, s.max())):]
    for v in null:
        h = sum(x * e for x, e in zip(v, basis))
        ev = np.linalg.eigvalsh(h)
        if ev.min() > 1e-9 or ev.max() < -1e-9:
            return True
    return False


def is_elementary(rep: SurfaceRepresentation, tol: float = DEFAULT_TOL) -> bool:
    """Heuristic test for an elementary image group.

    Checks the three elementary situations on the generators: a common
    fixed point on the sphere, a preserved pair of points, or a common
    fixed point in hyperbolic space (an invariant positive hermitian form).
    Not used by any parity computation.
    """
    imgs = list(rep.images)
    return _common_fixed_point(imgs, tol) or _preserved_pair(imgs, tol) or _fixes_interior_point(imgs)


def to_json(rep: SurfaceRepresentation) -> dict:
    return {
        "genus": rep.genus,
        "cusps": rep.presentation.cusps,
        "matrices": [
            [[[x.real, x.imag] for x in row] for row in m.as_array().tolist()] for m in rep.images
        ],
        "labels": rep.presentation.labels,
    }


def from_json(data: dict) -> SurfaceRepresentation:
    """Parse the representation file schema (see the CLI documentation)."""
    try:
        genus = int(data["genus"])
        cusps = int(data["cusps"])
        raw = data["matrices"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed representation file: {exc}") from exc
    pres = SurfacePresentation(genus, cusps)
    if len(raw) != pres.generator_count:
        raise InputError(f"expected {pres.generator_count} matrices, found {len(raw)}")
    images = []
    for k, mat in enumerate(raw):
        try:
            entries = [complex(float(e[0]), float(e[1])) for row in mat for e in row]
        except (TypeError, ValueError, IndexError) as exc:
            raise InputError(f"matrix {k}: entries must be [re, im] pairs") from exc
        if len(entries) != 4:
            raise InputError(f"matrix {k} must be 2x2")
        images.append(MoebiusElement(*entries))
    return SurfaceRepresentation(pres, tuple(images))


__all__ = [
    "CuspSummary",
    "LiftChoice",
    "SurfacePresentation",
    "SurfaceRepresentation",
    "from_json",
    "is_elementary",
    "lift_sign",
    "local_monodromies",
    "minimal_lift",
    "to_json",
    "validate_relation",
]
