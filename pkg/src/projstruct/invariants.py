"""Parity invariants of the minimal compactification of a representation."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import InputError
from .moebius import DEFAULT_TOL
from .riccati import Center, ModelWithSection, flip
from .surface_rep import (
    SurfaceRepresentation,
    lift_sign,
    local_monodromies,
    minimal_lift,
)


class Parity(enum.IntEnum):
    EVEN = 0
    ODD = 1

    @property
    def label(self) -> str:
        return "Even" if self is Parity.EVEN else "Odd"

    def toggled(self) -> "Parity":
        return Parity(1 - self.value)

    @classmethod
    def of(cls, n: int) -> "Parity":
        return cls(n % 2)


@dataclass(frozen=True)
class CompactificationInvariants:
    genus: int
    chi: int
    k0: int
    w2: Parity

    def __post_init__(self):
        if self.chi != 2 - 2 * self.genus:
            raise InputError("chi must equal 2 - 2g")
        if self.k0 < 0:
            raise InputError("k0 must be nonnegative")


@dataclass(frozen=True)
class StructureLedger:
    per_point: dict = field(default_factory=dict)

    @property
    def e_sigma(self) -> int:
        return sum(self.per_point.values())


def self_intersection(tang: int, chi: int, k0: int) -> int:
    """Self-intersection of a section with tangency ``tang`` to the foliation."""
    if tang < 0 or k0 < 0:
        raise InputError("tangency and k0 must be nonnegative")
    return tang + chi - k0


def w2_parity(rep: SurfaceRepresentation, tol: float = DEFAULT_TOL) -> Parity:
    """Even iff the minimal-model cusp lifts close up to +Id."""
    return Parity.EVEN if lift_sign(rep, minimal_lift(rep, tol), tol) == 1 else Parity.ODD


def compactification_invariants(rep: SurfaceRepresentation, tol: float = DEFAULT_TOL) -> CompactificationInvariants:
    k0 = local_monodromies(rep, tol).k0
    g = rep.genus
    return CompactificationInvariants(g, 2 - 2 * g, k0, w2_parity(rep, tol))


def branching_parity(rep: SurfaceRepresentation, tol: float = DEFAULT_TOL) -> Parity:
    inv = compactification_invariants(rep, tol)
    return Parity.of(inv.w2 + inv.k0)


def theorem_case(rep: SurfaceRepresentation, tol: float = DEFAULT_TOL) -> int | None:
    """1 for (w2 even, k0 odd), 2 for (w2 odd, k0 even), None otherwise."""
    inv = compactification_invariants(rep, tol)
    if inv.w2 is Parity.EVEN and inv.k0 % 2 == 1:
        return 1
    if inv.w2 is Parity.ODD and inv.k0 % 2 == 0:
        return 2
    return None


def theorem_odd_check(rep: SurfaceRepresentation, tol: float = DEFAULT_TOL) -> bool:
    return theorem_case(rep, tol) is not None


def d_lower_bound(rep: SurfaceRepresentation, tol: float = DEFAULT_TOL) -> int:
    """Parity lower bound on the minimal total branching order (not the exact value)."""
    return 1 if theorem_odd_check(rep, tol) else 0


def ledger_parity_check(ledger: StructureLedger, inv: CompactificationInvariants) -> bool:
    return ledger.e_sigma % 2 == (inv.w2 + inv.k0) % 2


def ledger_from_states(states: dict) -> StructureLedger:
    """Ledger whose per-point entries are the tangency orders of ``states``."""
    return StructureLedger({label: s.tangency for label, s in states.items()})


def simulate_flips(
    inv: CompactificationInvariants,
    states: dict,
    moves,
) -> tuple[StructureLedger, CompactificationInvariants, dict]:
    """Apply ``moves = [(label, Center), ...]`` to the cusp states.

    Each flip changes the bundle's parity class, so ``w2`` toggles while the
    flipped point's tangency moves by one.
    """
    states = dict(states)
    w2 = inv.w2
    for label, center in moves:
        state: ModelWithSection = states[label]
        states[label] = flip(state, Center(center))
        w2 = w2.toggled()
    new_inv = CompactificationInvariants(inv.genus, inv.chi, inv.k0, w2)
    return ledger_from_states(states), new_inv, states


def invariants_report(rep: SurfaceRepresentation, tol: float = DEFAULT_TOL) -> dict:
    inv = compactification_invariants(rep, tol)
    parity = Parity.of(inv.w2 + inv.k0)
    case = theorem_case(rep, tol)
    return {
        "genus": inv.genus,
        "chi": inv.chi,
        "k0": inv.k0,
        "w2Parity": inv.w2.label,
        "branchingParity": parity.label,
        "theoremCase": case,
        "dLowerBound": 1 if case is not None else 0,
        "selfIntersectionSamples": [
            {"tang": t, "selfIntersection": self_intersection(t, inv.chi, inv.k0)} for t in range(4)
        ],
    }
