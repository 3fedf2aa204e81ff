"""Interval-average monotonicity certificates and the boundedness criterion.

A symbol is generalized monotone (relative to the family of all intervals)
when its rearrangement is controlled by interval averages:
f*(t) <= C * abar(t) for a finite C.  For such symbols the necessary net-norm
lower bound and the block upper bound are equivalent, so finiteness of the
net norm alone decides multiplier boundedness.  Finite windows cannot prove
the inequality for every t; the certificate therefore records the checked
range and whether C is stable when the range doubles, and the verdict refuses
to speak ("inapplicable") otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds, netspace, rearrange
from .netspace import IntervalFamily
from .symbols import ExponentTriple, FunSymbol, SeqSymbol


@dataclass(frozen=True)
class MonotoneCertificate:
    constant_C: float
    checked_thresholds: tuple
    violated: bool
    witness: float  # threshold where the ratio f*/abar peaks
    stable: bool
    history: tuple  # ((range, C) pairs across range doubling)

    def to_json(self) -> dict:
        return {
            "constant_C": self.constant_C,
            "violated": self.violated,
            "witness": self.witness,
            "stable": self.stable,
            "checked_range": [float(self.checked_thresholds[0]), float(self.checked_thresholds[-1])]
            if len(self.checked_thresholds)
            else [],
            "history": [[float(a), float(b)] for a, b in self.history],
        }


def _ratio_constant(star: np.ndarray, abar: np.ndarray):
    """max over thresholds of star/abar with 0/0 treated as 1."""
    C = 0.0
    witness = 0
    violated = False
    for i, (s, b) in enumerate(zip(star, abar)):
        if b <= 0.0:
            if s > 0.0:
                violated = True
                witness = i
                C = math.inf
                break
            ratio = 1.0
        else:
            ratio = s / b
        if ratio > C:
            C = ratio
            witness = i
    return C, witness, violated


def monotone_constant_seq(a: SeqSymbol, kmax: int) -> MonotoneCertificate:
    """Certificate for a*_k <= C abar_k over k = 1..kmax, all-interval family.

    C is evaluated at kmax/2 and kmax; it is "stable" when the two agree to
    5 percent, the finite-data surrogate for a uniform constant.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    family = IntervalFamily.all_intervals(a)
    kmax = min(kmax, len(a))
    star = rearrange.rearrangement_seq(a)[:kmax]
    profile = netspace.averaged_profile(a, family, thresholds=np.arange(1, kmax + 1))
    C, wit, violated = _ratio_constant(star, profile.values)
    half = max(1, kmax // 2)
    C_half, _, _ = _ratio_constant(star[:half], profile.values[:half])
    stable = (not violated) and (C_half > 0 or C == 0) and abs(C - C_half) <= 0.05 * max(C, 1e-300)
    return MonotoneCertificate(
        constant_C=C,
        checked_thresholds=tuple(range(1, kmax + 1)),
        violated=violated,
        witness=float(wit + 1),
        stable=stable,
        history=((half, C_half), (kmax, C)),
    )


def monotone_constant_fun(
    f: FunSymbol,
    domain: tuple[float, float],
    mesh: float,
    n_thresholds: int = 40,
) -> MonotoneCertificate:
    """Function-side certificate over log-spaced thresholds up to |domain|."""
    A, B = float(domain[0]), float(domain[1])
    total = B - A
    gp = netspace.grid_pairs(f, (A, B), mesh)
    step = rearrange.rearrangement_fun(f, (A, B), mesh)
    t_lo = max(total / 2**14, float(np.min(gp.lengths)))
    ts = np.geomspace(t_lo, total, n_thresholds)
    star = np.array([step.value_at(t) for t in ts])
    prof = netspace.averaged_profile_fun(gp, ts)
    C, wit, violated = _ratio_constant(star, prof.values)
    half = max(2, len(ts) // 2)
    C_half, _, _ = _ratio_constant(star[:half], prof.values[:half])
    stable = (not violated) and abs(C - C_half) <= 0.05 * max(C, 1e-300)
    return MonotoneCertificate(
        constant_C=C,
        checked_thresholds=tuple(float(t) for t in ts),
        violated=violated,
        witness=float(ts[min(wit, len(ts) - 1)]),
        stable=stable,
        history=((float(ts[half - 1]), C_half), (float(ts[-1]), C)),
    )


def criteria_verdict(symbol, e: ExponentTriple, cert: MonotoneCertificate, domain=None) -> str:
    """"bounded" / "unbounded" / "inapplicable" for a certified symbol.

    When the certificate holds with a stable finite constant, multiplier
    boundedness is equivalent to finiteness (non-divergence) of the
    all-interval net norm; a violated or unstable certificate yields no
    verdict.
    """
    if e.mode != "hoermander":
        raise ValueError("hoermander-mode exponents required")
    if cert.violated or not cert.stable or not math.isfinite(cert.constant_C):
        return "inapplicable"
    if isinstance(symbol, SeqSymbol):
        lower = bounds.necessary_lower_seq(symbol, e)
    else:
        if domain is None:
            raise ValueError("function symbols need a domain")
        lower = bounds.necessary_lower_fun(symbol, e, domain)
    return "unbounded" if lower.divergent else "bounded"
