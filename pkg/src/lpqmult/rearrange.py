"""Distribution functions, non-increasing rearrangements and Lorentz quasi-norms.

Sequence-side quantities are exact.  Function-side quantities are defined on a
piecewise-constant approximant of |f| over a documented mesh: cells are sampled
at their midpoint, except that cells touching a declared singularity are split
geometrically toward the singular point and sampled at the endpoint away from
it, so that sup-type functionals of power blow-ups are resolved instead of
being inflated by a fixed factor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .symbols import FunSymbol, SeqSymbol


@dataclass(frozen=True)
class StepRearrangement:
    """A non-increasing step function on the measure axis.

    ``edges`` are the breakpoints 0 = t_0 < t_1 < ... < t_m and ``levels`` the
    (non-increasing) values taken on [t_{i-1}, t_i).  The function is zero past
    t_m when ``tail_zero`` is set.
    """

    edges: np.ndarray
    levels: np.ndarray
    tail_zero: bool = True

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=float)
        levels = np.asarray(self.levels, dtype=float)
        if len(edges) != len(levels) + 1 or edges[0] != 0.0:
            raise ValueError("need edges[0] == 0 and one more edge than levels")
        if np.any(np.diff(edges) <= 0):
            raise ValueError("edges must be strictly increasing")
        if np.any(np.diff(levels) > 1e-12 * max(1.0, float(levels[0]) if len(levels) else 1.0)):
            raise ValueError("levels must be non-increasing")
        edges.setflags(write=False)
        levels.setflags(write=False)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "levels", levels)

    @property
    def total_measure(self) -> float:
        return float(self.edges[-1])

    def value_at(self, t: float) -> float:
        """Right-continuous evaluation of the step function."""
        if t < 0:
            raise ValueError("t must be nonnegative")
        i = np.searchsorted(self.edges, t, side="right") - 1
        if i >= len(self.levels):
            return 0.0
        return float(self.levels[i])

    def distribution(self, sigma: float) -> float:
        """Measure of the set where the step function is >= sigma."""
        mask = self.levels >= sigma
        if not np.any(mask):
            return 0.0
        i = int(np.max(np.nonzero(mask)[0]))
        return float(self.edges[i + 1])

    def sup_weighted(self, p: float) -> float:
        """sup_t t^{1/p} f*(t); on each step the sup sits at the right edge."""
        if len(self.levels) == 0:
            return 0.0
        if math.isinf(p):
            return float(self.levels[0])
        weights = np.power(self.edges[1:], 1.0 / p)
        return float(np.max(weights * self.levels))


# ---------------------------------------------------------------------------
# sequences


def distribution_seq(a: SeqSymbol, sigma: float) -> int:
    """Number of indices with |a_k| >= sigma (sigma > 0)."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return int(np.count_nonzero(np.abs(a.values) >= sigma))


def rearrangement_seq(a: SeqSymbol) -> np.ndarray:
    """|a| sorted non-increasingly; length equals the window size."""
    return np.sort(np.abs(np.asarray(a.values)))[::-1]


def lorentz_seq_norm(a: SeqSymbol, p: float, q: float = math.inf, B=None) -> float:
    """Lorentz quasi-norm of the zero-extension of a restricted to B.

    B is None (whole window) or a sequence of inclusive integer runs
    (lo, hi); the restriction is the union of the runs.  q = inf gives
    sup_k k^{1/p} a*_k; finite q uses sum_k (k^{1/p} a*_k)^q / k.  p = inf is
    allowed only with q = inf and yields sup |a_k|.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    if math.isinf(p) and not math.isinf(q):
        raise ValueError("p = inf requires q = inf")
    if B is None:
        vals = np.abs(np.asarray(a.values))
    else:
        idx = np.arange(a.window_lo, a.window_hi + 1)
        mask = np.zeros(len(idx), dtype=bool)
        for lo, hi in B:
            mask |= (idx >= lo) & (idx <= hi)
        vals = np.abs(np.asarray(a.values)[mask])
    vals = vals[vals > 0]
    if len(vals) == 0:
        return 0.0
    star = np.sort(vals)[::-1]
    if math.isinf(p):
        return float(star[0])
    ranks = np.arange(1, len(star) + 1, dtype=float)
    if math.isinf(q):
        return float(np.max(np.power(ranks, 1.0 / p) * star))
    terms = np.power(np.power(ranks, 1.0 / p) * star, q) / ranks
    return float(np.sum(terms) ** (1.0 / q))


# ---------------------------------------------------------------------------
# functions


def _relevant_singularities(f: FunSymbol, a: float, b: float, use_derivative: bool):
    sings = f.derivative_singularities if use_derivative else f.singularities
    out = []
    for s in sings:
        if a - 1e-12 <= s.location <= b + 1e-12:
            if s.exponent <= -1.0:
                raise ValueError(
                    f"non-integrable singularity hint at {s.location} (exponent {s.exponent})"
                )
            out.append(s)
    return out


def _build_cells(a: float, b: float, mesh: float, sings, depth: int):
    """Cell edges over [a, b]: uniform cells of width <= mesh, geometrically
    split toward each declared singular point so blow-up profiles resolve."""
    if mesh <= 0:
        raise ValueError("mesh must be positive")
    n = max(1, int(math.ceil((b - a) / mesh)))
    n = min(n, 200_000)
    edges = list(np.linspace(a, b, n + 1))
    extra = []
    for s in sings:
        x0 = s.location
        if s.active_from_right() and a - 1e-12 <= x0 < b:
            base = min(b - x0, (b - a) / n)
            extra.extend(x0 + base * 0.5 ** np.arange(1, depth + 1))
            extra.append(x0 + base)
        if s.active_from_left() and a < x0 <= b + 1e-12:
            base = min(x0 - a, (b - a) / n)
            extra.extend(x0 - base * 0.5 ** np.arange(1, depth + 1))
            extra.append(x0 - base)
        if a < x0 < b:
            extra.append(x0)
    edges = np.unique(np.concatenate([np.asarray(edges), np.asarray(extra, dtype=float)])) if extra else np.asarray(edges)
    edges = edges[(edges >= a - 1e-15) & (edges <= b + 1e-15)]
    return edges[:-1], edges[1:]


def rearrangement_fun(
    f: FunSymbol,
    domain: tuple[float, float],
    mesh: float,
    singular_depth: int = 24,
    use_derivative: bool = False,
) -> StepRearrangement:
    """Rearrangement of the piecewise-constant approximant of |f| on a mesh.

    ``domain`` is a single interval (a, b).  Cells adjacent to declared
    singularities are refined geometrically ``singular_depth`` times.  Each
    cell's level is the smallest finite magnitude among its endpoints and
    midpoint: for a profile decreasing away from a singular point this makes
    the weighted functional exact at every breakpoint (midpoint sampling
    would inflate sup-type functionals of such profiles by a fixed factor,
    no matter how fine the mesh).
    """
    a, b = float(domain[0]), float(domain[1])
    if not b > a:
        raise ValueError("domain must be a nondegenerate interval")
    sings = _relevant_singularities(f, a, b, use_derivative)
    lo, hi = _build_cells(a, b, mesh, sings, singular_depth)
    evaluate = f.derivative_at if use_derivative else f.__call__
    with np.errstate(divide="ignore", invalid="ignore"):
        stacked = np.abs(
            np.asarray(
                [evaluate(lo), evaluate(0.5 * (lo + hi)), evaluate(hi)], dtype=complex
            )
        )
    stacked = np.where(np.isfinite(stacked), stacked, np.inf)
    mags = np.min(stacked, axis=0)
    mags = np.where(np.isfinite(mags), mags, 0.0)
    widths = hi - lo
    order = np.argsort(mags)[::-1]
    mags = mags[order]
    widths = widths[order]
    # zero cells carry no mass; the step function is zero past its last edge
    keep_mask = mags > 0
    mags = mags[keep_mask]
    widths = widths[keep_mask]
    if len(mags) == 0:
        return StepRearrangement(np.array([0.0, b - a]), np.array([0.0]))
    edges = np.concatenate([[0.0], np.cumsum(widths)])
    return StepRearrangement(edges, mags)


def lorentz_fun_norm(
    f: FunSymbol,
    p: float,
    interval: tuple[float, float],
    mesh: float,
    rel_tol: float = 1e-3,
    use_derivative: bool = False,
) -> float:
    """sup_t t^{1/p} f*(t) for the approximant of f on one interval.

    The singular refinement depth is doubled until the functional moves by
    less than ``rel_tol`` (relative), starting from depth 12 and capped at 48.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    prev = None
    for depth in (12, 24, 48):
        step = rearrangement_fun(f, interval, mesh, singular_depth=depth, use_derivative=use_derivative)
        val = step.sup_weighted(p)
        if prev is not None and (val <= 0 or abs(val - prev) <= rel_tol * val):
            return val
        prev = val
    return prev


def lorentz_fun_norm_pools(f: FunSymbol, p: float, pools, mesh: float) -> float:
    """Larger of the per-interval Lorentz values over a list of intervals."""
    return max((lorentz_fun_norm(f, p, pool, mesh) for pool in pools), default=0.0)
