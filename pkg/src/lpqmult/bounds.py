"""Sufficient upper bounds, necessary lower bounds, and the sandwich report.

Conventions shared by every per-block quantity here:

* the two half-blocks are treated as separate pools and the block value is the
  larger of the two pool values (pools never straddle the origin gap, and the
  whole-block value agrees with the max-pool value up to a factor at most 2,
  which the multiplier estimates absorb);
* windows/domains are finite, so classical norms that are infinite in the
  limit are reported as finite values flagged ``divergent`` with the growth
  ladder attached (see :mod:`lpqmult.growth`) instead of a bare infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import netspace, rearrange
from .growth import (
    BoundValue,
    GrowthRung,
    assess_divergence,
    assess_mass_witness,
    bound_from_ladder,
    doubling_ladder,
    exponent_ladder,
)
from .netspace import IntervalFamily
from .rearrange import lorentz_seq_norm, rearrangement_fun
from .symbols import (
    DyadicBlock,
    ExponentTriple,
    FunSymbol,
    SeqSymbol,
    block_pools,
    block_truncation_flags,
    blocks_intersecting_window,
    default_kmax,
)


# ---------------------------------------------------------------------------
# block upper bounds (rearrangement route)


def hoermander_block_values_seq(a: SeqSymbol, e: ExponentTriple, kmax: int | None = None):
    """Per-block Lorentz (r, inf) values: max over the two half-block pools."""
    if kmax is None:
        kmax = default_kmax(a)
    out = []
    for k in blocks_intersecting_window(a):
        if k > kmax:
            continue
        best = 0.0
        for pool in block_pools(DyadicBlock(k, "discrete")):
            best = max(best, lorentz_seq_norm(a, e.r, math.inf, B=[pool]))
        out.append((k, best))
    return out


def hoermander_upper_seq(a: SeqSymbol, e: ExponentTriple, kmax: int | None = None) -> BoundValue:
    """sup_k of the block Lorentz (r, inf) values over blocks in the window."""
    if e.mode != "hoermander":
        raise ValueError("hoermander-mode exponents required")
    if kmax is None:
        kmax = default_kmax(a)
    table = hoermander_block_values_seq(a, e, kmax)
    flags = []
    for k, _ in table:
        flags.extend(block_truncation_flags(a, k))
    value = max((v for _, v in table), default=0.0)
    return BoundValue(value=value, flags=tuple(flags))


def hoermander_block_values_fun(
    f: FunSymbol, e: ExponentTriple, krange: tuple[int, int], mesh: float = 1 / 64
):
    """Per-block Lorentz values on continuous blocks.

    ``mesh`` is relative: the base cell width on block k is mesh * 2^k, so all
    blocks are resolved equally regardless of scale.
    """
    k_lo, k_hi = krange
    out = []
    for k in range(k_lo, k_hi + 1):
        best = 0.0
        for pool in block_pools(DyadicBlock(k, "continuous")):
            abs_mesh = mesh * 2.0**k
            best = max(best, rearrange.lorentz_fun_norm(f, e.r, pool, abs_mesh))
        out.append((k, best))
    return out


def hoermander_upper_fun(
    f: FunSymbol, e: ExponentTriple, krange: tuple[int, int], mesh: float = 1 / 64
) -> BoundValue:
    """sup over k in krange of the per-block Lorentz values, with a ladder over
    the top of the k-range to surface growth across the range boundary."""
    if e.mode != "hoermander":
        raise ValueError("hoermander-mode exponents required")
    table = hoermander_block_values_fun(f, e, krange, mesh)
    k_lo, k_hi = krange
    rungs = []
    for top in _krange_ladder(k_lo, k_hi):
        sup = max((v for k, v in table if k <= top), default=0.0)
        rungs.append(GrowthRung(scale=2.0**top, value=sup))
    flags = ("boundary blocks are mesh-partial",)
    return bound_from_ladder(rungs, e.divergence_ratio, flags=flags)


def _krange_ladder(k_lo: int, k_hi: int) -> list[int]:
    return sorted(set(max(k_lo, k_hi - i) for i in range(4)))


# ---------------------------------------------------------------------------
# classical (global) upper bounds


def _window_exponent(a: SeqSymbol) -> int:
    """Smallest E with the window inside [-2^E, 2^E]."""
    reach = max(abs(a.window_lo), abs(a.window_hi), 4)
    return int(math.ceil(math.log2(reach)))


def hoermander_classic_seq(a: SeqSymbol, e: ExponentTriple) -> BoundValue:
    """Global Lorentz (r, inf) norm over a window-squaring divergence ladder.

    Alongside the norm value each rung records the count of entries at or
    above a reference level pinned on the smallest rung window; growth of that
    count across rungs certifies divergence of the limiting norm (which
    dominates sigma_ref * count^{1/r}), catching norms that grow only like a
    power of the block count.
    """
    exps = exponent_ladder(_window_exponent(a))
    first = a.truncated(-(2 ** exps[0]), 2 ** exps[0])
    fm = np.abs(np.asarray(first.values))
    fm = fm[fm > 0]
    sigma_ref = float(np.min(fm)) * (1.0 - 1e-12) if len(fm) else 0.0
    rungs = []
    for exp in exps:
        trunc = a.truncated(-(2**exp), 2**exp)
        value = lorentz_seq_norm(trunc, e.r, math.inf)
        tm = np.abs(np.asarray(trunc.values))
        mass = float(np.count_nonzero(tm >= sigma_ref)) if sigma_ref > 0 else 0.0
        support = float(np.count_nonzero(tm > 0))
        rungs.append(GrowthRung(scale=float(2**exp), value=value, mass=mass, support=support))
    divergent = assess_divergence(rungs, e.divergence_ratio) or assess_mass_witness(rungs)
    return BoundValue(value=rungs[-1].value, divergent=divergent, growth=tuple(rungs))


def _merged_rearrangement(f: FunSymbol, intervals, mesh: float, depth: int = 24):
    """Union rearrangement over several intervals (concatenate step data)."""
    widths = []
    levels = []
    for iv in intervals:
        step = rearrangement_fun(f, iv, mesh, singular_depth=depth)
        widths.append(np.diff(step.edges))
        levels.append(step.levels)
    widths = np.concatenate(widths)
    levels = np.concatenate(levels)
    order = np.argsort(levels)[::-1]
    widths, levels = widths[order], levels[order]
    keep = levels > 0
    if not np.any(keep):
        return rearrange.StepRearrangement(np.array([0.0, 1.0]), np.array([0.0]))
    edges = np.concatenate([[0.0], np.cumsum(widths[keep])])
    return rearrange.StepRearrangement(edges, levels[keep])


def hoermander_classic_fun(
    f: FunSymbol, e: ExponentTriple, domain: tuple[float, float], mesh: float | None = None
) -> BoundValue:
    """Global Lorentz (r, inf) norm of f over the domain, ladder over the
    domain's dyadic exponent, mass witness at a fixed reference level."""
    A, B = float(domain[0]), float(domain[1])
    if mesh is None:
        mesh = (B - A) / 4096
    full_exp = int(math.ceil(math.log2(max(abs(A), abs(B), 2.0))))
    exps = exponent_ladder(full_exp)
    steps = {}
    for exp in exps:
        lo, hi = max(A, -(2.0**exp)), min(B, 2.0**exp)
        ivs = [iv for iv in ((lo, min(hi, 0.0)), (max(lo, 0.0), hi)) if iv[1] > iv[0]]
        steps[exp] = _merged_rearrangement(f, ivs, mesh)
    coarsest = steps[exps[0]]
    positive = coarsest.levels[coarsest.levels > 0]
    sigma_ref = float(np.min(positive)) * (1.0 - 1e-12) if len(positive) else 0.0
    rungs = []
    for exp, step in sorted(steps.items()):
        value = step.sup_weighted(e.r)
        mass = step.distribution(sigma_ref) if sigma_ref > 0 else 0.0
        rungs.append(
            GrowthRung(scale=2.0**exp, value=value, mass=mass, support=step.total_measure)
        )
    divergent = assess_divergence(rungs, e.divergence_ratio) or assess_mass_witness(rungs)
    return BoundValue(value=rungs[-1].value, divergent=divergent, growth=tuple(rungs))


# ---------------------------------------------------------------------------
# derivative-variation (Lizorkin route) upper bounds


def _require_lizorkin_seq(a: SeqSymbol, e: ExponentTriple):
    if e.mode != "lizorkin":
        raise ValueError("lizorkin-mode exponents required")
    if not a.is_real:
        raise ValueError("difference-variation bounds require a real sequence")
    if not a.decay_declared:
        raise ValueError("difference-variation bounds require decay_declared")


def lizorkin_block_values_seq(a: SeqSymbol, e: ExponentTriple, kmax: int | None = None):
    """Per-block weighted first-difference sums, per side, max over sides.

    Block k carries 2^{k/r} * sum_{m=2^k}^{2^{k+1}-1} |lambda_m - lambda_{m-1}|
    on the positive side and the mirrored sum on the negative side; differences
    use zero-extension outside the window (consistent with declared decay).
    """
    _require_lizorkin_seq(a, e)
    if kmax is None:
        kmax = default_kmax(a)
    vals = np.real(np.asarray(a.values))
    out = []
    for k in range(0, kmax + 1):
        lo, hi = 2**k, 2 ** (k + 1) - 1
        pos_slice = a.slice_values(lo - 1, hi).astype(float)
        pos = float(np.sum(np.abs(np.diff(np.real(pos_slice)))))
        neg_slice = a.slice_values(-hi, -lo + 1).astype(float)
        neg = float(np.sum(np.abs(np.diff(np.real(neg_slice)))))
        weight = 2.0 ** (k / e.r)
        out.append((k, weight * max(pos, neg)))
    return out


def lizorkin_upper_seq(a: SeqSymbol, e: ExponentTriple, kmax: int | None = None) -> BoundValue:
    if kmax is None:
        kmax = default_kmax(a)
    table = lizorkin_block_values_seq(a, e, kmax)
    rungs = []
    for top in doubling_ladder(max(kmax, 2), floor=1):
        top = min(top, kmax)
        sup = max((v for k, v in table if k <= top), default=0.0)
        rungs.append(GrowthRung(scale=float(2**top), value=sup))
    return bound_from_ladder(rungs, e.divergence_ratio)


def lizorkin_block_values_fun(
    f: FunSymbol, e: ExponentTriple, krange: tuple[int, int], quad_tol: float = 1e-4
):
    """Per-block 2^{k/r} int |lambda'| over each half-block, max over halves."""
    if e.mode != "lizorkin":
        raise ValueError("lizorkin-mode exponents required")
    if f.derivative is None:
        raise ValueError("derivative evaluator required")
    if not f.vanishes_at_infinity:
        raise ValueError("derivative-variation bound requires a symbol vanishing at infinity")
    out = []
    for k in range(krange[0], krange[1] + 1):
        best = 0.0
        for lo, hi in block_pools(DyadicBlock(k, "continuous")):
            pts = sorted(
                s.location
                for s in f.derivative_singularities
                if lo < s.location < hi
            )
            val, _err = quad(
                lambda x: float(np.abs(f.derivative_at(x))),
                lo,
                hi,
                points=pts or None,
                epsabs=0.0,
                epsrel=quad_tol,
                limit=300,
            )
            best = max(best, float(val))
        out.append((k, 2.0 ** (k / e.r) * best))
    return out


def lizorkin_upper_fun(
    f: FunSymbol, e: ExponentTriple, krange: tuple[int, int], quad_tol: float = 1e-4
) -> BoundValue:
    table = lizorkin_block_values_fun(f, e, krange, quad_tol)
    rungs = []
    for top in _krange_ladder(*krange):
        sup = max((v for k, v in table if k <= top), default=0.0)
        rungs.append(GrowthRung(scale=2.0**top, value=sup))
    return bound_from_ladder(rungs, e.divergence_ratio)


# ---------------------------------------------------------------------------
# classical pointwise-decay comparators


def lizorkin_classic_seq_terms(a: SeqSymbol, e: ExponentTriple):
    """Pointwise-decay comparator terms over the window.

    Returns (k, level_terms, diff_terms) with level = |k|^{1/r} |a_k| and
    diff = |k|^{1/r+1} |a_k - a_{k+1}| (zero extension past the window); the
    comparator itself is sup_k (level + diff).
    """
    ks = np.arange(a.window_lo, a.window_hi + 1)
    vals = np.asarray(np.real(a.values), dtype=float)
    nxt = np.empty_like(vals)
    nxt[:-1] = vals[1:]
    nxt[-1] = 0.0  # zero extension past the window
    absk = np.abs(np.arange(a.window_lo, a.window_hi + 1, dtype=float))
    w = absk ** (1.0 / e.r)  # zero at k = 0, killing both terms there
    level = w * np.abs(vals)
    diff = (w * absk) * np.abs(vals - nxt)
    return ks, level, diff


def lizorkin_classic_seq(a: SeqSymbol, e: ExponentTriple) -> BoundValue:
    _require_lizorkin_seq(a, e)
    _, level, diff = lizorkin_classic_seq_terms(a, e)
    total = level + diff
    rungs = []
    for exp in doubling_ladder(_window_exponent(a)):
        W = 2**exp
        lo_i = max(a.window_lo, -W) - a.window_lo
        hi_i = min(a.window_hi, W) - a.window_lo
        if W <= a.window_hi:
            # truncating at W changes only the forward difference at k = W,
            # which now jumps to the zero extension
            lam_w = abs(float(np.real(a.values[W - a.window_lo])))
            edge = W ** (1.0 / e.r) * lam_w + W ** (1.0 / e.r + 1.0) * lam_w
            value = max(float(np.max(total[lo_i:hi_i], initial=0.0)), edge)
        else:
            value = float(np.max(total[lo_i : hi_i + 1], initial=0.0))
        rungs.append(GrowthRung(scale=float(W), value=value))
    return bound_from_ladder(rungs, e.divergence_ratio)


def lizorkin_classic_fun(
    f: FunSymbol,
    e: ExponentTriple,
    domain: tuple[float, float],
    n_grid: int = 2048,
) -> BoundValue:
    """sup_xi (|xi|^{1/r}|f| + |xi|^{1/r+1}|f'|) over a grid, with geometric
    approach points toward declared derivative singularities.

    The divergence ladder refines the approach distance: a symbol whose
    derivative blows up shows steady growth as the grid closes in, a smooth
    symbol stabilises.
    """
    if f.derivative is None:
        raise ValueError("derivative evaluator required")
    A, B = float(domain[0]), float(domain[1])
    base = np.linspace(A, B, n_grid)

    def sup_at(depth: int) -> float:
        pts = [base]
        spacing = (B - A) / n_grid
        for s in f.derivative_singularities:
            if not (A <= s.location <= B):
                continue
            offs = spacing * 0.5 ** np.arange(1, depth + 1)
            if s.active_from_right():
                pts.append(s.location + offs)
            if s.active_from_left():
                pts.append(s.location - offs)
        xs = np.unique(np.concatenate(pts))
        xs = xs[(xs >= A) & (xs <= B)]
        lam = np.abs(np.asarray(f(xs), dtype=complex))
        dlam = np.abs(np.asarray(f.derivative_at(xs), dtype=complex))
        w = np.abs(xs)
        with np.errstate(invalid="ignore"):
            terms = w ** (1.0 / e.r) * lam + w ** (1.0 / e.r + 1.0) * dlam
        terms = terms[np.isfinite(terms)]
        return float(np.max(terms, initial=0.0))

    rungs = [GrowthRung(scale=2.0**depth, value=sup_at(depth)) for depth in (10, 20, 40)]
    return bound_from_ladder(rungs, e.divergence_ratio)


# ---------------------------------------------------------------------------
# necessary lower bounds (net route)


def necessary_lower_seq(a: SeqSymbol, e: ExponentTriple) -> BoundValue:
    """sup over all window intervals of |e|^{-1/r'} |sum_e a|.

    The divergence ladder uses plain window doublings: a divergent net norm
    grows by a fixed power of the window size, so the literal factor test
    2^{1/(2r)} per doubling suffices here.
    """
    if e.mode != "hoermander":
        raise ValueError("hoermander-mode exponents required")
    rungs = []
    for exp in doubling_ladder(_window_exponent(a)):
        trunc = a.truncated(-(2**exp), 2**exp)
        value = netspace.net_norm_seq(trunc, e.r, IntervalFamily.all_intervals(trunc))
        rungs.append(GrowthRung(scale=float(2**exp), value=value))
    return bound_from_ladder(rungs, e.divergence_ratio)


def necessary_lower_fun(
    f: FunSymbol, e: ExponentTriple, domain: tuple[float, float], mesh: float | None = None
) -> BoundValue:
    if e.mode != "hoermander":
        raise ValueError("hoermander-mode exponents required")
    A, B = float(domain[0]), float(domain[1])
    if mesh is None:
        mesh = (B - A) / 1024
    full_exp = int(math.ceil(math.log2(max(abs(A), abs(B), 2.0))))
    rungs = []
    for exp in doubling_ladder(full_exp):
        lo, hi = max(A, -(2.0**exp)), min(B, 2.0**exp)
        value = netspace.net_norm_fun(f, e.r, [(lo, hi)], mesh)
        rungs.append(GrowthRung(scale=2.0**exp, value=value))
    return bound_from_ladder(rungs, e.divergence_ratio)


# ---------------------------------------------------------------------------
# same-exponent and variation comparators


def tau_to_tau_upper(a: SeqSymbol, tau: float, kmax: int | None = None) -> BoundValue:
    """Same-exponent multiplier bound via block Lorentz norms with
    r = 2 tau / |2 - tau|.  tau = 2 is the plain sup-norm case and is rejected
    here; use the p = q = 2 path (global sup of |lambda|) instead."""
    if not (1.0 < tau < math.inf):
        raise ValueError("tau must lie in (1, inf)")
    if tau == 2.0:
        raise ValueError("tau = 2 reduces to the sup-norm identity; use p = q = 2")
    from .symbols import make_exponents

    e = make_exponents(2.0, tau) if tau > 2.0 else make_exponents(tau, 2.0)
    return hoermander_upper_seq(a, e, kmax=kmax)


def marcinkiewicz_variation_values(a: SeqSymbol, nmax: int | None = None):
    """Unweighted dyadic variation sums on the positive axis,
    sum_{k=2^n}^{2^{n+1}-1} |a_k - a_{k-1}| per n."""
    if nmax is None:
        nmax = default_kmax(a)
    out = []
    for n in range(0, nmax + 1):
        lo, hi = 2**n, 2 ** (n + 1) - 1
        sl = np.real(a.slice_values(lo - 1, hi)).astype(float)
        out.append((n, float(np.sum(np.abs(np.diff(sl))))))
    return out


def marcinkiewicz_variation(a: SeqSymbol, nmax: int | None = None, threshold: float = 1.2) -> BoundValue:
    table = marcinkiewicz_variation_values(a, nmax)
    nm = table[-1][0]
    rungs = []
    for top in doubling_ladder(max(nm, 2), floor=1):
        top = min(top, nm)
        sup = max((v for n, v in table if n <= top), default=0.0)
        rungs.append(GrowthRung(scale=float(2**top), value=sup))
    return bound_from_ladder(rungs, threshold)


# ---------------------------------------------------------------------------
# the sandwich


@dataclass(frozen=True)
class SandwichReport:
    exponents: ExponentTriple
    lower_necessary: BoundValue
    upper_hoermander_block: BoundValue
    upper_hoermander_classic: BoundValue
    upper_lizorkin_dyadic: BoundValue | None
    upper_lizorkin_classic: BoundValue | None
    empirical_opnorm: dict | None
    per_block_table: tuple
    ratios: dict

    def to_json(self) -> dict:
        return {
            "exponents": {
                "p": self.exponents.p,
                "q": self.exponents.q,
                "r": None if math.isinf(self.exponents.r) else self.exponents.r,
                "r_conj": self.exponents.r_conj,
                "mode": self.exponents.mode,
            },
            "lower_necessary": self.lower_necessary.to_json(),
            "upper_hoermander_block": self.upper_hoermander_block.to_json(),
            "upper_hoermander_classic": self.upper_hoermander_classic.to_json(),
            "upper_lizorkin_dyadic": None
            if self.upper_lizorkin_dyadic is None
            else self.upper_lizorkin_dyadic.to_json(),
            "upper_lizorkin_classic": None
            if self.upper_lizorkin_classic is None
            else self.upper_lizorkin_classic.to_json(),
            "empirical_opnorm": self.empirical_opnorm,
            "per_block_table": [[int(k), float(v)] for k, v in self.per_block_table],
            "ratios": self.ratios,
        }


def _ratio_or_none(num: float, den: float):
    if den <= 0:
        return None
    return num / den


def sandwich(
    symbol,
    e: ExponentTriple,
    kmax: int | None = None,
    krange: tuple[int, int] | None = None,
    mesh: float = 1 / 64,
    domain: tuple[float, float] | None = None,
    opnorm_options: dict | None = None,
) -> SandwichReport:
    """Assemble every applicable bound for one symbol at one exponent pair.

    Derivative-variation fields are filled only when the symbol carries the
    data they need (real sequence with declared decay, or a function with a
    derivative evaluator) and 1 < p < q.  No cross-bound inequality is
    asserted beyond block <= classic, which holds up to grid tolerance by
    restriction contraction.
    """
    lizorkin_applicable = 1.0 < e.p < e.q
    if isinstance(symbol, SeqSymbol):
        lower = necessary_lower_seq(symbol, e)
        table = tuple(hoermander_block_values_seq(symbol, e, kmax))
        block = hoermander_upper_seq(symbol, e, kmax)
        classic = hoermander_classic_seq(symbol, e)
        liz = liz_classic = None
        if lizorkin_applicable and symbol.is_real and symbol.decay_declared:
            le = ExponentTriple(e.p, e.q, e.r, e.r_conj, "lizorkin")
            liz = lizorkin_upper_seq(symbol, le, kmax)
            liz_classic = lizorkin_classic_seq(symbol, le)
    elif isinstance(symbol, FunSymbol):
        if domain is None or krange is None:
            raise ValueError("function symbols need a domain and a krange")
        lower = necessary_lower_fun(symbol, e, domain)
        table = tuple(hoermander_block_values_fun(symbol, e, krange, mesh))
        block = hoermander_upper_fun(symbol, e, krange, mesh)
        classic = hoermander_classic_fun(symbol, e, domain)
        liz = liz_classic = None
        if lizorkin_applicable and symbol.derivative is not None and symbol.vanishes_at_infinity:
            le = ExponentTriple(e.p, e.q, e.r, e.r_conj, "lizorkin")
            liz = lizorkin_upper_fun(symbol, le, krange)
            liz_classic = lizorkin_classic_fun(symbol, le, domain)
    else:
        raise TypeError("expected SeqSymbol or FunSymbol")

    if block.value > classic.value * 1.05 + 1e-12:
        raise RuntimeError(
            f"restriction contraction violated: block sup {block.value} exceeds "
            f"classic value {classic.value} beyond grid tolerance"
        )

    empirical = None
    if opnorm_options is not None:
        from . import opnorm as opnorm_mod

        empirical = opnorm_mod.empirical_for_sandwich(symbol, e, domain=domain, **opnorm_options)

    ratios = {
        "lower_over_block_upper": _ratio_or_none(lower.value, block.value),
        "block_over_classic": _ratio_or_none(block.value, classic.value),
        "lower_over_classic": _ratio_or_none(lower.value, classic.value),
    }
    if empirical is not None:
        ratios["empirical_over_lower"] = _ratio_or_none(empirical["value"], lower.value)
        ratios["empirical_over_block_upper"] = _ratio_or_none(empirical["value"], block.value)

    return SandwichReport(
        exponents=e,
        lower_necessary=lower,
        upper_hoermander_block=block,
        upper_hoermander_classic=classic,
        upper_lizorkin_dyadic=liz,
        upper_lizorkin_classic=liz_classic,
        empirical_opnorm=empirical,
        per_block_table=table,
        ratios=ratios,
    )
