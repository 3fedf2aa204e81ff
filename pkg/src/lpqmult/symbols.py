"""Multiplier symbols on Z and R, and the dyadic block geometry shared by all bounds.

A symbol is either a finitely supported sequence (``SeqSymbol``, acting on
Fourier coefficients) or a function on the real line (``FunSymbol``, acting on
the Fourier transform).  Every bound in this package is organised around the
dyadic frequency blocks

    continuous:  Delta_k = (-2^{k+1}, -2^k] u [2^k, 2^{k+1}),   k in Z
    discrete:    delta_k = {-2^{k+1}+1..-2^k} u {2^k..2^{k+1}-1} for k >= 1,
                 delta_0 = {-1, 0, 1}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

HOERMANDER = "hoermander"
LIZORKIN = "lizorkin"


class ExponentRangeError(ValueError):
    """Raised when (p, q) lies outside the admissible range of a mode."""


@dataclass(frozen=True)
class ExponentTriple:
    """Exponents (p, q) together with r and its conjugate, 1/r = 1/p - 1/q."""

    p: float
    q: float
    r: float
    r_conj: float
    mode: str

    @property
    def divergence_ratio(self) -> float:
        """Growth-per-rung threshold used by divergence ladders, 2^(1/(2r))."""
        if math.isinf(self.r):
            return 1.05
        return 2.0 ** (1.0 / (2.0 * self.r))


def make_exponents(p: float, q: float, mode: str = HOERMANDER) -> ExponentTriple:
    """Build an ExponentTriple, validating (p, q) against the mode's range.

    hoermander mode requires 1 < p <= 2 <= q < inf; lizorkin mode requires
    1 < p < q < inf.  r is infinite exactly when p == q.
    """
    p = float(p)
    q = float(q)
    if not (math.isfinite(p) and math.isfinite(q)):
        raise ExponentRangeError("p and q must be finite")
    if mode == HOERMANDER:
        if not (1.0 < p <= 2.0 <= q):
            raise ExponentRangeError(
                f"hoermander mode requires 1 < p <= 2 <= q < inf, got p={p}, q={q}"
            )
    elif mode == LIZORKIN:
        if not (1.0 < p < q):
            raise ExponentRangeError(
                f"lizorkin mode requires 1 < p < q < inf, got p={p}, q={q}"
            )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if p == q:
        r = math.inf
        r_conj = 1.0
    else:
        r = 1.0 / (1.0 / p - 1.0 / q)
        r_conj = r / (r - 1.0)
    return ExponentTriple(p=p, q=q, r=r, r_conj=r_conj, mode=mode)


# ---------------------------------------------------------------------------
# dyadic blocks


@dataclass(frozen=True)
class DyadicBlock:
    k: int
    kind: str  # "continuous" | "discrete"

    def __post_init__(self):
        if self.kind not in ("continuous", "discrete"):
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.kind == "discrete" and self.k < 0:
            raise ValueError("discrete blocks are indexed by k >= 0")


def block_members(block: DyadicBlock):
    """Members of a dyadic block.

    Continuous blocks return the two half-open intervals
    ``((-2^{k+1}, -2^k), (2^k, 2^{k+1}))`` as (lo, hi) pairs; discrete blocks
    return the explicit integer index array.
    """
    k = block.k
    if block.kind == "continuous":
        lo, hi = 2.0**k, 2.0 ** (k + 1)
        return ((-hi, -lo), (lo, hi))
    if k == 0:
        return np.array([-1, 0, 1])
    lo, hi = 2**k, 2 ** (k + 1)
    return np.concatenate([np.arange(-hi + 1, -lo + 1), np.arange(lo, hi)])


def block_pools(block: DyadicBlock) -> list[tuple]:
    """The two half-blocks of a dyadic block, as (lo, hi) pairs.

    Per-block bound computations in this package treat the two half-blocks as
    separate pools and take the larger of the two values (no interval straddles
    the gap around the origin, and rearrangement-type quantities per half agree
    with the whole-block ones up to a bounded factor).  Discrete pools are
    inclusive integer runs; delta_0 splits into {-1} and {0, 1}.
    """
    k = block.k
    if block.kind == "continuous":
        lo, hi = 2.0**k, 2.0 ** (k + 1)
        return [(-hi, -lo), (lo, hi)]
    if k == 0:
        return [(-1, -1), (0, 1)]
    lo, hi = 2**k, 2 ** (k + 1) - 1
    return [(-(2 ** (k + 1)) + 1, -lo), (lo, hi)]


# ---------------------------------------------------------------------------
# sequence symbols


@dataclass(frozen=True)
class SeqSymbol:
    """A finitely windowed multiplier sequence {lambda_k}, zero off-window."""

    window_lo: int
    window_hi: int
    values: np.ndarray
    decay_declared: bool = False

    def __post_init__(self):
        if not (self.window_lo <= 0 <= self.window_hi):
            raise ValueError("window must contain 0")
        vals = np.asarray(self.values)
        if vals.ndim != 1 or len(vals) != self.window_hi - self.window_lo + 1:
            raise ValueError("values length must equal window size")
        if not np.all(np.isfinite(vals)):
            raise ValueError("symbol values must be finite")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def is_real(self) -> bool:
        vals = self.values
        if not np.iscomplexobj(vals):
            return True
        return bool(np.all(vals.imag == 0))

    def value_at(self, k: int):
        if self.window_lo <= k <= self.window_hi:
            return self.values[k - self.window_lo]
        return 0.0

    def slice_values(self, lo: int, hi: int) -> np.ndarray:
        """Values on the inclusive index run [lo, hi], zero-extended."""
        out = np.zeros(hi - lo + 1, dtype=self.values.dtype)
        a = max(lo, self.window_lo)
        b = min(hi, self.window_hi)
        if a <= b:
            out[a - lo : b - lo + 1] = self.values[a - self.window_lo : b - self.window_lo + 1]
        return out

    def scaled(self, c) -> "SeqSymbol":
        return SeqSymbol(self.window_lo, self.window_hi, c * self.values, self.decay_declared)

    def truncated(self, lo: int, hi: int) -> "SeqSymbol":
        """Restrict the window to [lo, hi] (clipped so it still contains 0)."""
        lo = max(self.window_lo, min(lo, 0))
        hi = min(self.window_hi, max(hi, 0))
        return SeqSymbol(lo, hi, self.slice_values(lo, hi), self.decay_declared)


# ---------------------------------------------------------------------------
# function symbols


@dataclass(frozen=True)
class Singularity:
    """Declared singular point of a symbol or of its derivative.

    ``exponent`` is the local power-law hint (the quantity behaves like
    |x - location|^exponent on the singular side).  ``side`` says from which
    side the blow-up is approached: "right" (x -> location+), "left"
    (x -> location-), or "both".
    """

    location: float
    exponent: float
    side: str = "both"

    def __post_init__(self):
        if self.side not in ("left", "right", "both"):
            raise ValueError(f"bad singularity side {self.side!r}")
        if self.exponent >= 0:
            raise ValueError("singularity exponent hints must be negative")

    def active_from_left(self) -> bool:
        return self.side in ("left", "both")

    def active_from_right(self) -> bool:
        return self.side in ("right", "both")


@dataclass(frozen=True)
class FunSymbol:
    """A multiplier symbol on R given by evaluators plus singularity hints.

    ``derivative`` is required by the derivative-variation (Lizorkin-type)
    bounds and forces ``real_valued``.  ``singularities`` drive adaptive
    refinement near integrable blow-ups of the symbol; ``derivative_singularities``
    do the same for the derivative.
    """

    evaluator: Callable
    derivative: Callable | None = None
    singularities: tuple = ()
    derivative_singularities: tuple = ()
    real_valued: bool = True
    vanishes_at_infinity: bool = False

    def __post_init__(self):
        if self.derivative is not None and not self.real_valued:
            raise ValueError("derivative-based bounds require a real-valued symbol")
        object.__setattr__(self, "singularities", tuple(self.singularities))
        object.__setattr__(self, "derivative_singularities", tuple(self.derivative_singularities))

    def __call__(self, x):
        return self.evaluator(np.asarray(x, dtype=float))

    def derivative_at(self, x):
        if self.derivative is None:
            raise ValueError("symbol has no derivative evaluator")
        return self.derivative(np.asarray(x, dtype=float))

    def scaled(self, c) -> "FunSymbol":
        ev = self.evaluator
        dv = self.derivative
        real = self.real_valued and (np.imag(c) == 0)
        return FunSymbol(
            evaluator=lambda x, _ev=ev: c * _ev(x),
            derivative=None if dv is None else (lambda x, _dv=dv: c * _dv(x)),
            singularities=self.singularities,
            derivative_singularities=self.derivative_singularities,
            real_valued=bool(real),
            vanishes_at_infinity=self.vanishes_at_infinity,
        )


def grid_sampled_symbol(grid, samples, real_valued: bool = True) -> FunSymbol:
    """FunSymbol fallback built from samples on a grid (piecewise linear)."""
    grid = np.asarray(grid, dtype=float)
    samples = np.asarray(samples)
    if grid.ndim != 1 or grid.shape != samples.shape:
        raise ValueError("grid and samples must be 1-d arrays of equal length")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing")
    if np.iscomplexobj(samples) and np.any(samples.imag != 0):
        real_valued = False

    def evaluator(x, _g=grid, _s=samples):
        x = np.asarray(x, dtype=float)
        out = np.interp(x, _g, np.real(_s), left=0.0, right=0.0)
        if np.iscomplexobj(_s):
            out = out + 1j * np.interp(x, _g, np.imag(_s), left=0.0, right=0.0)
        return out

    return FunSymbol(evaluator=evaluator, real_valued=real_valued, vanishes_at_infinity=True)


# ---------------------------------------------------------------------------
# block / window bookkeeping


def restrict_to_block(symbol, block: DyadicBlock):
    """Zero the symbol outside the given block.

    Idempotent and linear in the symbol.  The block kind must match the symbol
    kind (discrete for SeqSymbol, continuous for FunSymbol).
    """
    if isinstance(symbol, SeqSymbol):
        if block.kind != "discrete":
            raise ValueError("sequence symbols restrict to discrete blocks")
        idx = np.arange(symbol.window_lo, symbol.window_hi + 1)
        mask = np.zeros(len(idx), dtype=bool)
        for lo, hi in block_pools(block):
            mask |= (idx >= lo) & (idx <= hi)
        vals = np.where(mask, symbol.values, 0.0)
        return SeqSymbol(symbol.window_lo, symbol.window_hi, vals, symbol.decay_declared)
    if not isinstance(symbol, FunSymbol):
        raise TypeError("expected SeqSymbol or FunSymbol")
    if block.kind != "continuous":
        raise ValueError("function symbols restrict to continuous blocks")
    pools = block_pools(block)

    def in_block(x):
        x = np.asarray(x, dtype=float)
        mask = np.zeros(x.shape, dtype=bool)
        for lo, hi in pools:
            mask |= (x >= lo) & (x < hi)
        return mask

    ev = symbol.evaluator
    dv = symbol.derivative
    sing = tuple(
        s for s in symbol.singularities if any(lo - 1e-12 <= s.location <= hi + 1e-12 for lo, hi in pools)
    )
    dsing = tuple(
        s
        for s in symbol.derivative_singularities
        if any(lo - 1e-12 <= s.location <= hi + 1e-12 for lo, hi in pools)
    )
    return FunSymbol(
        evaluator=lambda x, _ev=ev: np.where(in_block(x), _ev(np.asarray(x, dtype=float)), 0.0),
        derivative=None
        if dv is None
        else (lambda x, _dv=dv: np.where(in_block(x), _dv(np.asarray(x, dtype=float)), 0.0)),
        singularities=sing,
        derivative_singularities=dsing,
        real_valued=symbol.real_valued,
        vanishes_at_infinity=True,
    )


def blocks_intersecting_window(symbol: SeqSymbol) -> list[int]:
    """Discrete block indices k whose block meets the symbol window."""
    reach = max(abs(symbol.window_lo), abs(symbol.window_hi), 1)
    k_top = int(math.floor(math.log2(reach)))
    out = []
    for k in range(0, k_top + 1):
        for lo, hi in block_pools(DyadicBlock(k, "discrete")):
            if hi >= symbol.window_lo and lo <= symbol.window_hi:
                out.append(k)
                break
    return out


def default_kmax(symbol: SeqSymbol) -> int:
    """Largest k whose discrete block has a half fully inside the window."""
    best = 0
    for k in blocks_intersecting_window(symbol):
        for lo, hi in block_pools(DyadicBlock(k, "discrete")):
            if lo >= symbol.window_lo and hi <= symbol.window_hi:
                best = max(best, k)
                break
    return best


def block_truncation_flags(symbol: SeqSymbol, k: int) -> list[str]:
    """Flags for half-blocks that the window cuts through (partial coverage)."""
    flags = []
    for lo, hi in block_pools(DyadicBlock(k, "discrete")):
        inter_lo = max(lo, symbol.window_lo)
        inter_hi = min(hi, symbol.window_hi)
        if inter_lo > inter_hi:
            continue
        if inter_lo != lo or inter_hi != hi:
            flags.append(f"window truncates block k={k}")
            break
    return flags
