"""Interval-averaged functionals and net-space quasi-norms.

The building block is, for a family of intervals, the averaged profile

    abar(t) = sup { |sum_e a| / |e|  :  e in family, |e| >= t }

and the sup-form norm sup_e |e|^{-1/p'} |sum_e a|, which agree after weighting
(the identity |e|^{-1/p'}|S| = |e|^{1/p} (|S|/|e|) is used verbatim so the two
forms are float-identical, not merely close).  Discrete families are exact via
prefix sums; continuous families restrict interval endpoints to a quadrature
grid recorded alongside the result.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .rearrange import _build_cells, _relevant_singularities
from .symbols import DyadicBlock, FunSymbol, SeqSymbol, block_pools


@dataclass(frozen=True)
class IntervalFamily:
    """A family of discrete intervals: all sub-runs of the given pools."""

    pools: tuple
    kind: str = "all"

    @classmethod
    def all_intervals(cls, a: SeqSymbol) -> "IntervalFamily":
        return cls(pools=((a.window_lo, a.window_hi),), kind="all")

    @classmethod
    def within_block(cls, k: int, a: SeqSymbol) -> "IntervalFamily":
        pools = []
        for lo, hi in block_pools(DyadicBlock(k, "discrete")):
            lo2, hi2 = max(lo, a.window_lo), min(hi, a.window_hi)
            if lo2 <= hi2:
                pools.append((lo2, hi2))
        return cls(pools=tuple(pools), kind=f"block:{k}")

    def max_length(self) -> int:
        return max((hi - lo + 1 for lo, hi in self.pools), default=0)


@dataclass(frozen=True)
class AveragedProfile:
    """abar at increasing thresholds; values are non-increasing in t."""

    thresholds: np.ndarray
    values: np.ndarray
    vacuous: np.ndarray  # True where no family member was long enough

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("threshold,value\n")
            for t, v in zip(self.thresholds, self.values):
                fh.write(f"{t},{v!r}\n")


def _best_avg_by_length(a: SeqSymbol, family: IntervalFamily) -> np.ndarray:
    """best_avg[L-1] = max over family members of length L of |sum|/L."""
    m = family.max_length()
    best = np.zeros(m, dtype=float)
    for lo, hi in family.pools:
        vals = a.slice_values(lo, hi)
        n = len(vals)
        prefix = np.concatenate([[0.0 + 0.0j], np.cumsum(vals.astype(complex))])
        for L in range(1, n + 1):
            diffs = prefix[L:] - prefix[:-L]
            best[L - 1] = max(best[L - 1], float(np.max(np.abs(diffs))) / L)
    return best


def interval_avg_sup_seq(a: SeqSymbol, t: int, family: IntervalFamily) -> float:
    """sup over members with |e| >= t of |sum_e a| / |e| (0 if vacuous)."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    best = _best_avg_by_length(a, family)
    if t > len(best):
        return 0.0
    return float(np.max(best[t - 1 :]))


def averaged_profile(a: SeqSymbol, family: IntervalFamily, thresholds=None) -> AveragedProfile:
    best = _best_avg_by_length(a, family)
    m = len(best)
    if thresholds is None:
        thresholds = np.arange(1, m + 1)
    thresholds = np.asarray(thresholds, dtype=int)
    suffix = np.maximum.accumulate(best[::-1])[::-1] if m else np.zeros(0)
    values = np.zeros(len(thresholds))
    vac = thresholds > m
    inside = ~vac
    values[inside] = suffix[thresholds[inside] - 1]
    return AveragedProfile(thresholds=thresholds, values=values, vacuous=vac)


def net_norm_seq(a: SeqSymbol, p: float, family: IntervalFamily) -> float:
    """sup_e |e|^{-1/p'} |sum_e a| over the family, exact.

    Computed as max_L L^{1/p} best_avg(L); for p = inf the weight is L^0 = 1
    and the value is the largest |average| (q = inf convention throughout).
    """
    if p <= 0:
        raise ValueError("p must be positive")
    best = _best_avg_by_length(a, family)
    if len(best) == 0:
        return 0.0
    lengths = np.arange(1, len(best) + 1, dtype=float)
    weights = np.ones_like(lengths) if math.isinf(p) else np.power(lengths, 1.0 / p)
    return float(np.max(weights * best))


def sup_form_from_profile(profile: AveragedProfile, p: float) -> float:
    """sup_t t^{1/p} abar(t) over the profile's thresholds."""
    if len(profile.thresholds) == 0:
        return 0.0
    t = profile.thresholds.astype(float)
    weights = np.ones_like(t) if math.isinf(p) else np.power(t, 1.0 / p)
    return float(np.max(weights * profile.values))


def dyadic_profile_seq(a: SeqSymbol, p: float, q: float, family: IntervalFamily) -> float:
    """Dyadic-threshold form of the net norm: thresholds t = 2^n, n >= 0."""
    m = family.max_length()
    if m == 0:
        return 0.0
    ns = np.arange(0, int(math.floor(math.log2(m))) + 1)
    prof = averaged_profile(a, family, thresholds=2**ns)
    weights = np.power(2.0, ns / p)
    terms = weights * prof.values
    if math.isinf(q):
        return float(np.max(terms))
    return float(np.sum(terms**q) ** (1.0 / q))


# ---------------------------------------------------------------------------
# continuous families on a quadrature grid


@dataclass(frozen=True)
class GridPairs:
    """All grid-endpoint intervals of one base interval: lengths and averages."""

    grid: np.ndarray
    lengths: np.ndarray
    avgs: np.ndarray


def _finite_scalar(evaluate, part):
    def integrand(x):
        v = part(np.asarray(evaluate(x), dtype=complex))
        v = float(v)
        return v if math.isfinite(v) else 0.0

    return integrand


def _cell_integrals(f: FunSymbol, lo, hi, sings, use_derivative: bool) -> np.ndarray:
    """Per-cell integrals: Simpson on smooth cells, adaptive quadrature on
    cells touching a declared singular point (where endpoint samples blow up)."""
    evaluate = f.derivative_at if use_derivative else f.__call__
    mid = 0.5 * (lo + hi)
    with np.errstate(invalid="ignore"):
        flo = np.asarray(evaluate(lo), dtype=complex)
        fmid = np.asarray(evaluate(mid), dtype=complex)
        fhi = np.asarray(evaluate(hi), dtype=complex)
        vals = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
    bad = ~np.isfinite(vals)
    for s in sings:
        x0 = s.location
        bad |= np.isclose(lo, x0, rtol=0, atol=1e-12 * max(1.0, abs(x0)))
        bad |= np.isclose(hi, x0, rtol=0, atol=1e-12 * max(1.0, abs(x0)))
    if np.any(bad):
        import warnings
        from scipy.integrate import IntegrationWarning

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntegrationWarning)
            for i in np.nonzero(bad)[0]:
                re = quad(_finite_scalar(evaluate, np.real), lo[i], hi[i], epsabs=0.0, epsrel=1e-8, limit=200)[0]
                im = 0.0
                if not f.real_valued:
                    im = quad(_finite_scalar(evaluate, np.imag), lo[i], hi[i], epsabs=0.0, epsrel=1e-8, limit=200)[0]
                vals[i] = re + 1j * im
    return vals


def grid_pairs(
    f: FunSymbol,
    interval: tuple[float, float],
    mesh: float,
    use_derivative: bool = False,
    singular_depth: int = 20,
    max_points: int = 2500,
) -> GridPairs:
    """Prefix-integral pair data for all grid-endpoint subintervals."""
    a, b = float(interval[0]), float(interval[1])
    sings = _relevant_singularities(f, a, b, use_derivative)
    mesh = max(mesh, (b - a) / max_points)
    lo, hi = _build_cells(a, b, mesh, sings, singular_depth)
    cell = _cell_integrals(f, lo, hi, sings, use_derivative)
    grid = np.concatenate([[a], hi])
    prefix = np.concatenate([[0.0 + 0.0j], np.cumsum(cell)])
    i, j = np.triu_indices(len(grid), k=1)
    lengths = grid[j] - grid[i]
    avgs = np.abs(prefix[j] - prefix[i]) / lengths
    return GridPairs(grid=grid, lengths=lengths, avgs=avgs)


def net_norm_fun(
    f: FunSymbol,
    p: float,
    intervals,
    mesh: float,
    use_derivative: bool = False,
) -> float:
    """sup_e |e|^{-1/p'} |int_e f| over grid-endpoint intervals of the bases."""
    if p <= 0:
        raise ValueError("p must be positive")
    out = 0.0
    for interval in intervals:
        gp = grid_pairs(f, interval, mesh, use_derivative=use_derivative)
        weights = np.ones_like(gp.lengths) if math.isinf(p) else np.power(gp.lengths, 1.0 / p)
        out = max(out, float(np.max(weights * gp.avgs)))
    return out


def averaged_profile_fun(gp: GridPairs, thresholds) -> AveragedProfile:
    thresholds = np.asarray(thresholds, dtype=float)
    values = np.zeros(len(thresholds))
    vac = np.zeros(len(thresholds), dtype=bool)
    for idx, t in enumerate(thresholds):
        mask = gp.lengths >= t
        if not np.any(mask):
            vac[idx] = True
        else:
            values[idx] = float(np.max(gp.avgs[mask]))
    return AveragedProfile(thresholds=thresholds, values=values, vacuous=vac)


def dyadic_profile_fun(
    f: FunSymbol,
    p: float,
    q: float,
    intervals,
    mesh: float,
) -> float:
    """Dyadic-threshold net form for grid families, thresholds 2^k clipped to
    the resolved scales of the domain."""
    pairs = [grid_pairs(f, iv, mesh) for iv in intervals]
    total = max(float(np.max(gp.lengths)) for gp in pairs)
    finest = min(float(np.min(gp.lengths)) for gp in pairs)
    k_lo = int(math.ceil(math.log2(max(finest, 1e-12))))
    k_hi = int(math.floor(math.log2(total)))
    ks = np.arange(k_lo, k_hi + 1)
    terms = []
    for k in ks:
        t = 2.0**k
        best = 0.0
        for gp in pairs:
            mask = gp.lengths >= t
            if np.any(mask):
                best = max(best, float(np.max(gp.avgs[mask])))
        terms.append(2.0 ** (k / p) * best)
    terms = np.asarray(terms)
    if math.isinf(q):
        return float(np.max(terms)) if len(terms) else 0.0
    return float(np.sum(terms**q) ** (1.0 / q))
