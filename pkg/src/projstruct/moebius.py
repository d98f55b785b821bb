"""Sign-tracked SL(2, C) matrices and the classification of their
PSL(2, C) classes.

A :class:`MoebiusElement` stores an explicit SL(2, C) lift. The sign of the
lift is kept through products, which is what the parity computations in
:mod:`projstruct.invariants` rely on; everything else (classification,
fixed points, action on the sphere) only depends on the class ``{+M, -M}``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import IllConditioned, SingularMatrix, TrivialElement

DEFAULT_TOL = 1e-9
DET_TOL = 1e-12
# fractional parts within this distance of an integer are snapped
SNAP_TOL = 1e-10


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


@dataclass(frozen=True)
class MoebiusElement:
    """2x2 complex matrix ``[[a, b], [c, d]]`` normalized to determinant 1.

    Inputs whose determinant is not 1 are rescaled by the principal square
    root of the determinant. Inputs already within ``DET_TOL`` of
    determinant 1 are left untouched so that the chosen lift (its sign)
    survives construction.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        if not all(_finite(x) for x in (a, b, c, d)):
            raise SingularMatrix("matrix entries must be finite")
        det = a * d - b * c
        scale = max(abs(a), abs(b), abs(c), abs(d))
        if scale == 0.0 or abs(det) <= 1e-14 * scale * scale:
            raise SingularMatrix(f"matrix is singular (det = {det})")
        if abs(det - 1.0) > DET_TOL:
            r = cmath.sqrt(det)
            a, b, c, d = a / r, b / r, c / r, d / r
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls) -> "MoebiusElement":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_array(cls, m) -> "MoebiusElement":
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def diagonal(cls, lam: complex) -> "MoebiusElement":
        return cls(lam, 0, 0, 1 / lam)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def inverse(self) -> "MoebiusElement":
        return MoebiusElement(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "MoebiusElement":
        return MoebiusElement(-self.a, -self.b, -self.c, -self.d)

    def __matmul__(self, other: "MoebiusElement") -> "MoebiusElement":
        return compose(self, other)

    def apply(self, z: complex) -> complex:
        """Action on the extended plane; ``complex('inf')`` stands for infinity."""
        return self.apply_point(SpherePoint.from_complex(z)).to_complex()

    def apply_point(self, p: "SpherePoint") -> "SpherePoint":
        return SpherePoint(self.a * p.z0 + self.b * p.z1, self.c * p.z0 + self.d * p.z1)

    def distance(self, other: "MoebiusElement") -> float:
        """Max-entry distance between the two lifts (sign sensitive)."""
        return max(abs(x - y) for x, y in zip(self.entries(), other.entries()))

    def projective_distance(self, other: "MoebiusElement") -> float:
        return min(self.distance(other), self.distance(-other))

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    def is_identity(self, tol: float = DEFAULT_TOL) -> bool:
        """True if this lift is ``+Id`` within ``tol``."""
        return self.distance(MoebiusElement.identity()) < tol


def compose(m1: MoebiusElement, m2: MoebiusElement) -> MoebiusElement:
    """Matrix product ``m1 @ m2``, renormalized to determinant 1."""
    a = m1.a * m2.a + m1.b * m2.c
    b = m1.a * m2.b + m1.b * m2.d
    c = m1.c * m2.a + m1.d * m2.c
    d = m1.c * m2.b + m1.d * m2.d
    det = a * d - b * c
    if det != 1.0:
        # the principal root is close to +1 here, so the sign is kept
        r = cmath.sqrt(det)
        a, b, c, d = a / r, b / r, c / r, d / r
    return MoebiusElement(a, b, c, d)


def product(elements) -> MoebiusElement:
    out = MoebiusElement.identity()
    for m in elements:
        out = compose(out, m)
    return out


def commutator(a: MoebiusElement, b: MoebiusElement) -> MoebiusElement:
    """``a b a^-1 b^-1``."""
    return product([a, b, a.inverse(), b.inverse()])


@dataclass(frozen=True)
class SpherePoint:
    """Point ``(z0 : z1)`` of the Riemann sphere.

    Stored scaled so that the coordinate of largest modulus equals 1
    (ties go to ``z0``), which makes equal points compare equal.
    """

    z0: complex
    z1: complex

    def __post_init__(self):
        z0, z1 = complex(self.z0), complex(self.z1)
        if z0 == 0 and z1 == 0:
            raise ValueError("(0 : 0) is not a point of the sphere")
        pivot = z0 if abs(z0) >= abs(z1) else z1
        object.__setattr__(self, "z0", z0 / pivot)
        object.__setattr__(self, "z1", z1 / pivot)

    @classmethod
    def from_complex(cls, z: complex) -> "SpherePoint":
        z = complex(z)
        if not _finite(z):
            return cls(1, 0)
        return cls(z, 1)

    @property
    def is_infinity(self) -> bool:
        return self.z1 == 0

    def to_complex(self) -> complex:
        if self.z1 == 0:
            return complex(math.inf, 0)
        return self.z0 / self.z1

    def chordal_distance(self, other: "SpherePoint") -> float:
        num = abs(self.z0 * other.z1 - self.z1 * other.z0)
        den = math.hypot(abs(self.z0), abs(self.z1)) * math.hypot(abs(other.z0), abs(other.z1))
        return num / den


class Kind(enum.Enum):
    TRIVIAL = "Trivial"
    PARABOLIC = "Parabolic"
    NON_PARABOLIC = "NonParabolic"


@dataclass(frozen=True)
class MonodromyClass:
    kind: Kind
    alpha: complex | None = None
    translation_length: complex | None = None

    @property
    def is_trivial(self) -> bool:
        return self.kind is Kind.TRIVIAL

    def multiplier(self) -> complex:
        if self.kind is not Kind.NON_PARABOLIC:
            return 1.0 + 0j
        return cmath.exp(2j * math.pi * self.alpha)

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.alpha is not None:
            out["alpha"] = [self.alpha.real, self.alpha.imag]
        if self.translation_length is not None:
            out["translationLength"] = [self.translation_length.real, self.translation_length.imag]
        return out


def _reduce_mod1(alpha: complex) -> complex:
    re = alpha.real - math.floor(alpha.real)
    if re > 1.0 - SNAP_TOL or re < SNAP_TOL:
        re = 0.0
    return complex(re, alpha.imag)


def normalize_alpha(alpha: complex) -> complex:
    """Canonical representative of ``alpha`` modulo the integers and sign.

    Picks ``0 <= Re < 1`` and, among ``alpha`` and ``-alpha`` reduced this
    way, the lexicographically smaller ``(Re, Im)``. Real parts closer than
    ``SNAP_TOL`` count as tied.
    """
    alpha = complex(alpha)
    p, q = _reduce_mod1(alpha), _reduce_mod1(-alpha)
    if abs(p.real - q.real) <= SNAP_TOL:
        return p if p.imag <= q.imag else q
    return p if p.real < q.real else q


def _eigvec(m: MoebiusElement, mu: complex) -> tuple[complex, complex]:
    v1 = (m.b, mu - m.a)
    v2 = (mu - m.d, m.c)
    n1 = max(abs(v1[0]), abs(v1[1]))
    n2 = max(abs(v2[0]), abs(v2[1]))
    return v1 if n1 >= n2 else v2


def _trivial_sign(m: MoebiusElement, tol: float) -> int:
    """+1 / -1 if ``m`` is +Id / -Id within ``tol``, else 0."""
    eye = MoebiusElement.identity()
    if m.distance(eye) < tol:
        return 1
    if m.distance(-eye) < tol:
        return -1
    return 0


def _parabolic_data(m: MoebiusElement, tol: float):
    s = 1 if (m.trace).real >= 0 else -1
    a, b, c, d = (s * x for x in m.entries())
    n = np.array([[a - 1, b], [c, d - 1]])
    n_norm = np.abs(n).max()
    if np.abs(n @ n).max() > 0.1 * n_norm * n_norm:
        raise IllConditioned(
            f"trace^2 is within {tol:g} of 4 but the element is not unipotent; tighten tol"
        )
    v = _eigvec(MoebiusElement(a, b, c, d), 1.0)
    p = SpherePoint(*v)
    if abs(p.z0) >= abs(p.z1):
        u = (0, 1 / p.z0)
    else:
        u = (-1 / p.z1, 0)
    cinv = MoebiusElement(p.z0, u[0], p.z1, u[1])
    conj = product([cinv.inverse(), MoebiusElement(a, b, c, d), cinv])
    return p, cinv.inverse(), conj.b / conj.a


def classify(m: MoebiusElement, tol: float = DEFAULT_TOL) -> MonodromyClass:
    """Trivial / Parabolic / NonParabolic class of ``m`` in PSL(2, C)."""
    if _trivial_sign(m, tol):
        return MonodromyClass(Kind.TRIVIAL)
    tr = m.trace
    if abs(tr * tr - 4) < tol:
        _, _, t = _parabolic_data(m, tol)
        return MonodromyClass(Kind.PARABOLIC, translation_length=t)
    lam = (tr + cmath.sqrt(tr * tr - 4)) / 2
    alpha = cmath.log(lam * lam) / (2j * math.pi)
    return MonodromyClass(Kind.NON_PARABOLIC, alpha=normalize_alpha(alpha))


def _nonparabolic_points(m: MoebiusElement, cls: MonodromyClass):
    tr = m.trace
    lam = (tr + cmath.sqrt(tr * tr - 4)) / 2
    target = cmath.exp(-2j * math.pi * cls.alpha)
    # the fixed point with eigenvalue mu has multiplier mu**-2
    mu = lam if abs(lam * lam - target) <= abs(lam ** -2 - target) else 1 / lam
    return SpherePoint(*_eigvec(m, mu)), SpherePoint(*_eigvec(m, 1 / mu))


def fixed_points(m: MoebiusElement, tol: float = DEFAULT_TOL) -> list[SpherePoint]:
    """Fixed points of ``m`` on the sphere.

    For non-parabolic elements the first point is the one with multiplier
    ``exp(2 pi i alpha)`` for the normalized ``alpha`` of :func:`classify`.
    """
    cls = classify(m, tol)
    if cls.kind is Kind.TRIVIAL:
        raise TrivialElement("every point is fixed by the identity")
    if cls.kind is Kind.PARABOLIC:
        p, _, _ = _parabolic_data(m, tol)
        return [p]
    return list(_nonparabolic_points(m, cls))


def normal_form_conjugator(m: MoebiusElement, tol: float = DEFAULT_TOL):
    """Return ``(C, cls)`` with ``C m C^-1`` in normal form.

    Non-parabolic: ``C`` sends the first fixed point to 0 and the second to
    infinity, so ``C m C^-1 = ±diag(exp(i pi alpha), exp(-i pi alpha))``,
    i.e. ``w -> exp(2 pi i alpha) w``. Parabolic: ``C`` sends the fixed point
    to infinity and ``C m C^-1 = ±[[1, t], [0, 1]]``.
    """
    cls = classify(m, tol)
    if cls.kind is Kind.TRIVIAL:
        raise TrivialElement("the identity has no normal form conjugator")
    if cls.kind is Kind.PARABOLIC:
        _, conj, _ = _parabolic_data(m, tol)
        return conj, cls
    p0, pinf = _nonparabolic_points(m, cls)
    cinv = MoebiusElement(pinf.z0, p0.z0, pinf.z1, p0.z1)
    return cinv.inverse(), cls


def normal_form(cls: MonodromyClass) -> MoebiusElement:
    """Closed-form representative: ``w -> exp(2 pi i alpha) w`` or ``w -> w + t``."""
    if cls.kind is Kind.TRIVIAL:
        return MoebiusElement.identity()
    if cls.kind is Kind.PARABOLIC:
        return MoebiusElement(1, cls.translation_length, 0, 1)
    return MoebiusElement.diagonal(cmath.exp(1j * math.pi * cls.alpha))


def same_class(c1: MonodromyClass, c2: MonodromyClass, tol: float = 1e-8) -> bool:
    if c1.kind is not c2.kind:
        return False
    if c1.kind is Kind.NON_PARABOLIC:
        return abs(c1.alpha - c2.alpha) < tol
    return True
