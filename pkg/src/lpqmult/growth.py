"""Divergence evidence for window-limited norms.

A classical norm that is infinite in the limit can only be evidenced from
finite data by growth.  Each global bound is evaluated on a ladder of nested
windows whose dyadic exponent doubles rung to rung (window sizes are squared,
so the number of dyadic blocks doubles); the bound is flagged divergent when
the values keep increasing along the ladder and the last two rung-to-rung
ratios both reach the threshold 2^{1/(2r)}.  Plain window doubling cannot
separate slowly divergent norms (which grow like a power of the block count)
from convergent ones inside floating-point range, exponent doubling can.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class GrowthRung:
    scale: float  # window/domain extent at this rung
    value: float
    mass: float | None = None  # set where |symbol| >= fixed reference level
    support: float | None = None  # measure/count of the nonzero support

    def to_json(self) -> dict:
        out = {"scale": float(self.scale), "value": float(self.value)}
        if self.mass is not None:
            out["mass"] = float(self.mass)
        if self.support is not None:
            out["support"] = float(self.support)
        return out


@dataclass(frozen=True)
class BoundValue:
    """A computed bound with its divergence verdict and evidence."""

    value: float
    divergent: bool = False
    growth: tuple = ()
    flags: tuple = ()

    def to_json(self) -> dict:
        return {
            "value": float(self.value),
            "divergent": bool(self.divergent),
            "growth": [r.to_json() for r in self.growth],
            "flags": list(self.flags),
        }


def exponent_ladder(full_exponent: int, floor: int = 2) -> list[int]:
    """Dyadic exponents [.., E/4, E/2, E], halved down to the floor.

    Used for the global Lorentz comparators, whose divergence can be as slow
    as a power of the block count: successive rungs must double the number of
    blocks (square the window) for a fixed growth-ratio test to ever fire.
    """
    rungs = []
    e = int(full_exponent)
    while e > floor:
        rungs.append(e)
        e = max(floor, (e + 1) // 2)
        if rungs and e == rungs[-1]:
            break
    rungs.append(e)
    return sorted(set(rungs))


def doubling_ladder(full_exponent: int, count: int = 4, floor: int = 2) -> list[int]:
    """The last ``count`` plain window doublings [E-3, E-2, E-1, E]."""
    e = int(full_exponent)
    return sorted(set(max(floor, e - i) for i in range(count)))


def _ratio(prev: float, cur: float) -> float:
    if prev == 0.0:
        return 1.0 if cur == 0.0 else math.inf
    return cur / prev


def assess_divergence(rungs: list[GrowthRung], threshold: float) -> bool:
    """True when values are non-decreasing and the last two ratios >= threshold."""
    values = [r.value for r in rungs]
    if len(values) < 3:
        return False
    for a, b in zip(values, values[1:]):
        if b < a * (1.0 - 1e-9):
            return False
    ratios = [_ratio(a, b) for a, b in zip(values, values[1:])]
    return ratios[-1] >= threshold and ratios[-2] >= threshold


def bound_from_ladder(rungs: list[GrowthRung], threshold: float, flags=()) -> BoundValue:
    """BoundValue at the largest window, with the ladder attached as evidence."""
    divergent = assess_divergence(rungs, threshold)
    return BoundValue(
        value=rungs[-1].value,
        divergent=divergent,
        growth=tuple(rungs),
        flags=tuple(flags),
    )


def assess_mass_witness(rungs: list[GrowthRung]) -> bool:
    """Divergence via the fixed-level mass witness.

    The rung masses count the set where |symbol| stays above a reference level
    pinned on the smallest window; if that count keeps growing by at least
    sqrt(2) across the last two rungs, the limiting norm dominates
    sigma_ref * mass^{1/r} -> infinity on the evidence seen.
    """
    masses = [r.mass for r in rungs if r.mass is not None]
    if len(masses) < 3:
        return False
    for a, b in zip(masses, masses[1:]):
        if b < a * (1.0 - 1e-9):
            return False
    ratios = [_ratio(a, b) for a, b in zip(masses, masses[1:])]
    return ratios[-1] >= math.sqrt(2.0) and ratios[-2] >= math.sqrt(2.0)
