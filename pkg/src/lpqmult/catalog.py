"""Named example symbols with their expected bound values attached.

Each constructor builds a symbol whose bound behaviour is known in closed
form, together with machine-checkable expectations (value + tolerance, or a
divergence claim).  They are addressable by name from the CLI and exercised
wholesale by ``lpqmult validate``.

    power_blocks          even function carrying (|x| - 2^k)^{-1/r} on every
                          dyadic shell: block Lorentz value 1, global Lorentz
                          norm divergent
    power_blocks_seq      the sequence analogue, supported on positive indices
    edge_ramp             even (2 - |x|)^alpha cutoff: derivative variation
                          finite, pointwise-decay comparator divergent
    geometric_staircase   dyadic staircase with geometric drops 2^{-k/r}:
                          per-block variation exactly 1, comparator divergent
    bump_train            bumps 2^{-k/r} (2 - |2^k + 2 - x|)^gamma on
                          [2^k, 2^k + 4]: per-block variation 2^{gamma+1}
    spike_train           isolated spikes 2^{-k/r} at index 2^k + 1:
                          variation bound exactly 2
    alternating_decay     (-1)^k k^{-|tau-2|/(2 tau)}: block Lorentz bound 1,
                          unweighted dyadic variation divergent
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .symbols import (
    ExponentTriple,
    FunSymbol,
    SeqSymbol,
    Singularity,
    make_exponents,
)


@dataclass(frozen=True)
class ExpectedCheck:
    quantity: str
    expected: float | str  # numeric target, "divergent", or "finite"
    rel_tol: float = 0.0
    provenance: str = "derived"


@dataclass(frozen=True)
class NamedExample:
    name: str
    parameters: dict
    symbol: object
    expected: tuple
    exponents: ExponentTriple
    krange: tuple[int, int] | None = None
    domain: tuple[float, float] | None = None
    kmax: int | None = None


def _require_r(r: float) -> None:
    if not r > 1.0:
        raise ValueError("r must exceed 1 (1/r = 1/p - 1/q < 1 for admissible exponents)")


def _hoermander_for_r(r: float) -> ExponentTriple:
    # the symmetric (p, q) with 1/p - 1/q = 1/r: p' = q, and 1 < p < 2 < q,
    # so both bound routes apply and default reports carry the full sandwich
    _require_r(r)
    return make_exponents(2.0 * r / (r + 1.0), 2.0 * r / (r - 1.0), "hoermander")


def power_blocks(r: float = 2.0, k_lo: int = -8, k_hi: int = 12) -> NamedExample:
    """Even function equal to (x - 2^k)^{-1/r} on (2^k, 2^{k+1}), every k."""
    if r <= 1.0:
        raise ValueError("r must exceed 1 for an integrable blow-up")
    inv_r = 1.0 / r

    def evaluator(x):
        x = np.asarray(x, dtype=float)
        ax = np.abs(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            k = np.floor(np.log2(np.where(ax > 0, ax, 1.0)))
            s = ax - 2.0**k
            vals = np.where(s > 0, s, np.inf) ** (-inv_r)
            vals = np.where(s == 0, np.inf, vals)
        return np.where(ax > 0, vals, 0.0)

    sings = []
    for k in range(k_lo - 2, k_hi + 2):
        sings.append(Singularity(2.0**k, -inv_r, "right"))
        sings.append(Singularity(-(2.0**k), -inv_r, "left"))
    symbol = FunSymbol(
        evaluator=evaluator,
        singularities=tuple(sings),
        real_valued=True,
        vanishes_at_infinity=False,
    )
    expected = (
        ExpectedCheck("hoermander_block_sup", 1.0, 0.02, "closed-form"),
        ExpectedCheck("hoermander_block_each", 1.0, 0.02, "closed-form"),
        ExpectedCheck("hoermander_classic", "divergent", provenance="closed-form"),
    )
    return NamedExample(
        name="power_blocks",
        parameters={"r": r, "k_lo": k_lo, "k_hi": k_hi},
        symbol=symbol,
        expected=expected,
        exponents=_hoermander_for_r(r),
        krange=(k_lo, k_hi),
        domain=(-(2.0 ** (k_hi + 1)), 2.0 ** (k_hi + 1)),
    )


def power_blocks_seq(r: float = 2.0, K: int = 12) -> NamedExample:
    """Sequence with (j + 1 - 2^k)^{-1/r} on the positive half of each block."""
    n = 2 ** (K + 1)
    vals = np.zeros(n, dtype=float)
    js = np.arange(n)
    for k in range(0, K + 1):
        lo, hi = 2**k, min(2 ** (k + 1) - 1, n - 1)
        seg = js[lo : hi + 1]
        vals[lo : hi + 1] = (seg + 1.0 - 2.0**k) ** (-1.0 / r)
    symbol = SeqSymbol(0, n - 1, vals, decay_declared=False)
    expected = (
        ExpectedCheck("hoermander_block_each", 1.0, 1e-13, "closed-form"),
        ExpectedCheck("hoermander_classic", "divergent", provenance="closed-form"),
    )
    return NamedExample(
        name="power_blocks_seq",
        parameters={"r": r, "K": K},
        symbol=symbol,
        expected=expected,
        exponents=_hoermander_for_r(r),
        kmax=K,
    )


def edge_ramp(alpha: float = 0.5, r: float = 6.0) -> NamedExample:
    """Even ramp (2 - |x|)^alpha for |x| <= 2, zero beyond."""
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")

    def evaluator(x):
        x = np.asarray(x, dtype=float)
        ax = np.abs(x)
        return np.where(ax <= 2.0, np.maximum(2.0 - ax, 0.0) ** alpha, 0.0)

    def derivative(x):
        x = np.asarray(x, dtype=float)
        ax = np.abs(x)
        with np.errstate(divide="ignore"):
            mag = alpha * np.where(ax < 2.0, np.maximum(2.0 - ax, 0.0), np.inf) ** (alpha - 1.0)
        out = np.where(ax < 2.0, -np.sign(x) * mag, 0.0)
        return np.where(ax == 2.0, np.inf, out)

    symbol = FunSymbol(
        evaluator=evaluator,
        derivative=derivative,
        derivative_singularities=(
            Singularity(2.0, alpha - 1.0, "left"),
            Singularity(-2.0, alpha - 1.0, "right"),
        ),
        real_valued=True,
        vanishes_at_infinity=True,
    )
    expected = (
        ExpectedCheck("lizorkin_dyadic", "finite", provenance="closed-form"),
        ExpectedCheck("lizorkin_classic", "divergent", provenance="closed-form"),
    )
    return NamedExample(
        name="edge_ramp",
        parameters={"alpha": alpha, "r": r},
        symbol=symbol,
        expected=expected,
        exponents=_hoermander_for_r(r),
        krange=(-8, 6),
        domain=(-64.0, 64.0),
    )


def staircase_levels(r: float, K: int) -> np.ndarray:
    """Level on block k, via the recursion level_k = level_{k-1} - 2^{-k/r}."""
    drops = (2.0 ** (-1.0 / r)) ** np.arange(0, K + 1)
    gamma = 1.0 / (1.0 - 2.0 ** (-1.0 / r))
    levels = gamma - np.cumsum(drops)
    return levels


def geometric_staircase(r: float = 6.0, K: int = 12) -> NamedExample:
    """Symmetric staircase: constant on each block, drop 2^{-k/r} entering it."""
    gamma = 1.0 / (1.0 - 2.0 ** (-1.0 / r))
    levels = staircase_levels(r, K)
    n = 2 ** (K + 1)
    pos = np.empty(n, dtype=float)
    pos[0] = gamma
    for k in range(0, K + 1):
        lo, hi = 2**k, min(2 ** (k + 1) - 1, n - 1)
        pos[lo : hi + 1] = levels[k]
    vals = np.concatenate([pos[1:][::-1], pos])
    symbol = SeqSymbol(-(n - 1), n - 1, vals, decay_declared=True)
    expected = (
        ExpectedCheck("lizorkin_block_each", 1.0, 1e-13, "closed-form"),
        ExpectedCheck("lizorkin_classic", "divergent", provenance="closed-form"),
        ExpectedCheck("staircase_tail_vanishes", 0.0, provenance="closed-form"),
    )
    return NamedExample(
        name="geometric_staircase",
        parameters={"r": r, "K": K, "gamma": gamma},
        symbol=symbol,
        expected=expected,
        exponents=_hoermander_for_r(r),
        kmax=K,
    )


def bump_train(r: float = 6.0, gamma: float = 0.5, k_hi: int = 12) -> NamedExample:
    """Bumps 2^{-k/r} (2 - |2^k + 2 - x|)^gamma on [2^k, 2^k + 4], k >= 2."""
    if not (0.0 < gamma < 1.0):
        raise ValueError("gamma must lie in (0, 1)")
    inv_r = 1.0 / r

    def _pieces(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            k = np.floor(np.log2(np.where(x > 0, x, 1.0)))
        inside = (x >= 4.0) & (k >= 2) & (x <= 2.0**k + 4.0)
        center = 2.0**k + 2.0
        prof = 2.0 - np.abs(center - x)
        return k, inside & (prof >= 0.0), center, prof

    def evaluator(x):
        k, inside, _, prof = _pieces(x)
        with np.errstate(invalid="ignore"):
            vals = 2.0 ** (-k * inv_r) * np.where(inside, np.maximum(prof, 0.0), 0.0) ** gamma
        return np.where(inside, vals, 0.0)

    def derivative(x):
        k, inside, center, prof = _pieces(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            mag = gamma * np.where(inside & (prof > 0), prof, np.inf) ** (gamma - 1.0)
            vals = 2.0 ** (-k * inv_r) * mag * np.sign(center - np.asarray(x, dtype=float))
        return np.where(inside, np.where(prof > 0, vals, np.inf), 0.0)

    dsings = []
    for k in range(2, k_hi + 1):
        dsings.append(Singularity(2.0**k, gamma - 1.0, "right"))
        dsings.append(Singularity(2.0**k + 4.0, gamma - 1.0, "left"))
    symbol = FunSymbol(
        evaluator=evaluator,
        derivative=derivative,
        derivative_singularities=tuple(dsings),
        real_valued=True,
        vanishes_at_infinity=True,
    )
    expected = (
        ExpectedCheck("lizorkin_dyadic", "finite", provenance="closed-form"),
        ExpectedCheck("bump_block_each", 2.0 ** (gamma + 1.0), 0.02, "derived"),
    )
    return NamedExample(
        name="bump_train",
        parameters={"r": r, "gamma": gamma, "k_hi": k_hi},
        symbol=symbol,
        expected=expected,
        exponents=_hoermander_for_r(r),
        krange=(2, k_hi),
        domain=(-(2.0 ** (k_hi + 1)), 2.0 ** (k_hi + 1)),
    )


def spike_train(r: float = 6.0, K: int = 12) -> NamedExample:
    """Spikes lambda_{2^k + 1} = 2^{-k/r} for k >= 2, zero elsewhere."""
    n = 2 ** (K + 1)
    vals = np.zeros(n, dtype=float)
    for k in range(2, K + 1):
        m = 2**k + 1
        if m < n:
            vals[m] = 2.0 ** (-k / r)
    symbol = SeqSymbol(0, n - 1, vals, decay_declared=True)
    expected = (
        ExpectedCheck("lizorkin_dyadic_sup", 2.0, 1e-13, "closed-form"),
    )
    return NamedExample(
        name="spike_train",
        parameters={"r": r, "K": K},
        symbol=symbol,
        expected=expected,
        exponents=_hoermander_for_r(r),
        kmax=K,
    )


def alternating_decay(tau: float = 3.0, n_max: int = 13) -> NamedExample:
    """lambda_{+-k} = (-1)^k k^{-|tau-2|/(2 tau)}, lambda_0 = 0."""
    if not (1.0 < tau < math.inf) or tau == 2.0:
        raise ValueError("tau must lie in (1, inf) with tau != 2")
    s = abs(tau - 2.0) / (2.0 * tau)
    n = 2 ** (n_max + 1)
    ks = np.arange(1, n)
    pos = ((-1.0) ** ks) * ks ** (-s)
    vals = np.concatenate([pos[::-1], [0.0], pos])
    symbol = SeqSymbol(-(n - 1), n - 1, vals, decay_declared=True)
    expected = (
        ExpectedCheck("tau_to_tau_le_one", 1.0, 1e-12, "closed-form"),
        ExpectedCheck("marcinkiewicz_variation", "divergent", provenance="closed-form"),
    )
    return NamedExample(
        name="alternating_decay",
        parameters={"tau": tau, "n_max": n_max},
        symbol=symbol,
        expected=expected,
        exponents=make_exponents(2.0, tau) if tau > 2 else make_exponents(tau, 2.0),
        kmax=n_max,
    )


REGISTRY = {
    "power_blocks": power_blocks,
    "power_blocks_seq": power_blocks_seq,
    "edge_ramp": edge_ramp,
    "geometric_staircase": geometric_staircase,
    "bump_train": bump_train,
    "spike_train": spike_train,
    "alternating_decay": alternating_decay,
}


def build(name: str, **params) -> NamedExample:
    if name not in REGISTRY:
        raise KeyError(f"unknown example {name!r}; known: {sorted(REGISTRY)}")
    return REGISTRY[name](**params)
