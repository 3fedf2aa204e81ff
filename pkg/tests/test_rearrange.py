import math

import numpy as np
import pytest

from lpqmult.catalog import power_blocks, power_blocks_seq, edge_ramp
from lpqmult.rearrange import (
    StepRearrangement,
    distribution_seq,
    lorentz_fun_norm,
    lorentz_seq_norm,
    rearrangement_fun,
    rearrangement_seq,
)
from lpqmult.symbols import FunSymbol, SeqSymbol


def _seq(values, lo=0):
    values = np.asarray(values)
    return SeqSymbol(lo, lo + len(values) - 1, values)


def test_distribution_counts():
    a = _seq([3.0, 1.0, 2.0])
    assert distribution_seq(a, 1.5) == 2
    assert distribution_seq(a, 3.0) == 1
    assert distribution_seq(a, 3.1) == 0
    with pytest.raises(ValueError):
        distribution_seq(a, 0.0)


def test_rearrangement_seq_sorts():
    a = _seq([1.0, -2.0, 0.5])
    assert np.array_equal(rearrangement_seq(a), np.array([2.0, 1.0, 0.5]))


def test_rearrangement_seq_matches_sort_oracle():
    rng = np.random.default_rng(11)
    for _ in range(25):
        vals = rng.standard_normal(rng.integers(1, 80)) + 1j * rng.standard_normal(1)
        a = _seq(vals)
        oracle = np.sort(np.abs(vals))[::-1]
        assert np.array_equal(rearrangement_seq(a), oracle)


def test_rearrangement_equimeasurable():
    rng = np.random.default_rng(7)
    vals = rng.standard_normal(64)
    a = _seq(vals)
    star = rearrangement_seq(a)
    for sigma in (0.1, 0.5, 1.0, 2.0):
        assert distribution_seq(a, sigma) == int(np.count_nonzero(star >= sigma))


def test_power_block_sequence_rearrangement():
    # restriction to one block sorts to m^{-1/r}
    r = 2.0
    ex = power_blocks_seq(r=r, K=5)
    for k in (1, 3, 5):
        vals = ex.symbol.slice_values(2**k, 2 ** (k + 1) - 1)
        star = np.sort(np.abs(vals))[::-1]
        expect = (np.arange(1, 2**k + 1)) ** (-1 / r)
        assert np.allclose(star, expect, rtol=1e-14, atol=0)


def test_step_rearrangement_basics():
    step = StepRearrangement(np.array([0.0, 1.0, 3.0]), np.array([2.0, 0.5]))
    assert step.value_at(0.0) == 2.0
    assert step.value_at(1.0) == 0.5  # right-continuous
    assert step.value_at(5.0) == 0.0
    assert step.distribution(0.5) == 3.0
    assert step.distribution(1.0) == 1.0
    assert step.sup_weighted(2.0) == max(1.0 * 2.0, math.sqrt(3.0) * 0.5)


def test_step_sup_at_breakpoints_is_true_sup():
    # the weighted functional increases within each step, so the breakpoint
    # evaluation equals a dense-t supremum
    rng = np.random.default_rng(14)
    for _ in range(10):
        m = int(rng.integers(2, 12))
        edges = np.concatenate([[0.0], np.cumsum(rng.uniform(0.1, 2.0, m))])
        levels = np.sort(rng.uniform(0.1, 5.0, m))[::-1]
        step = StepRearrangement(edges, levels)
        p = float(rng.uniform(0.7, 6.0))
        # value_at is right-continuous, so sample just below each edge too
        ts = np.concatenate([np.linspace(1e-9, edges[-1], 20_001), edges[1:] * (1 - 1e-12)])
        dense = max(t ** (1 / p) * step.value_at(t) for t in ts)
        assert abs(step.sup_weighted(p) - dense) <= 1e-9 * dense


def test_step_rearrangement_validation():
    with pytest.raises(ValueError):
        StepRearrangement(np.array([0.0, 1.0]), np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        StepRearrangement(np.array([0.5, 1.0]), np.array([1.0]))
    with pytest.raises(ValueError):
        StepRearrangement(np.array([0.0, 1.0, 2.0]), np.array([1.0, 2.0]))


def test_indicator_rearrangement():
    f = FunSymbol(evaluator=lambda x: ((np.asarray(x) >= 0) & (np.asarray(x) <= 2)).astype(float))
    step = rearrangement_fun(f, (-4.0, 4.0), mesh=1 / 8)
    assert step.value_at(0.5) == 1.0
    assert step.value_at(1.9) == 1.0
    assert step.value_at(2.1) == 0.0
    assert abs(step.distribution(1.0) - 2.0) < 1e-12


def test_power_block_fun_distribution_analog():
    # on one shell the distribution of the restriction is sigma^{-r} above
    # the shell's minimum level
    r = 2.0
    ex = power_blocks(r=r, k_lo=-5, k_hi=10)
    k = 2
    step = rearrangement_fun(ex.symbol, (2.0**k, 2.0 ** (k + 1)), mesh=2.0**k / 128)
    for sigma in (0.6, 1.0, 2.0, 4.0):
        assert step.distribution(sigma) == pytest.approx(sigma**-r, rel=0.02)


def test_power_block_fun_rearrangement_profile():
    # on one shell the decreasing profile rearranges to t^{-1/r}
    r = 2.0
    ex = power_blocks(r=r, k_lo=-5, k_hi=10)
    for k in (-4, 0, 6):
        lo, hi = 2.0**k, 2.0 ** (k + 1)
        step = rearrangement_fun(ex.symbol, (lo, hi), mesh=(hi - lo) / 64)
        ts = step.edges[1:]
        vals = step.levels
        keep = vals > 0
        assert np.allclose(ts[keep] ** (-1 / r), vals[keep], rtol=0.02)


def test_rearrangement_fun_dense_sampling_oracle():
    # edge ramp on [1, 2]: compare step levels against a brute-force sorted
    # sample (the sqrt-steep vanishing edge needs a fine mesh for sup accuracy)
    ex = edge_ramp(alpha=0.5)
    step = rearrangement_fun(ex.symbol, (1.0, 2.0), mesh=1e-4)
    xs = np.linspace(1.0, 2.0, 1_000_001)
    sample = np.sort(np.abs(np.asarray(ex.symbol(xs), dtype=float)))[::-1]
    ts = np.linspace(0.005, 0.995, 99)
    step_vals = np.array([step.value_at(t) for t in ts])
    brute_vals = sample[(ts * 1_000_000).astype(int)]
    assert np.max(np.abs(step_vals - brute_vals)) < 1e-2


def test_rearrangement_rejects_nonintegrable_hint():
    from lpqmult.symbols import Singularity

    f = FunSymbol(
        evaluator=lambda x: np.abs(np.asarray(x, dtype=float)) ** -1.5,
        singularities=(Singularity(0.0, -1.5, "both"),),
    )
    with pytest.raises(ValueError):
        rearrangement_fun(f, (0.0, 1.0), mesh=1 / 16)


# ---------------------------------------------------------------------------
# Lorentz norms


def test_lorentz_seq_single_spike():
    a = _seq([1.0])
    for p in (0.5, 1.0, 2.0, 7.0):
        assert lorentz_seq_norm(a, p) == 1.0
    assert lorentz_seq_norm(a, math.inf) == 1.0


def test_lorentz_seq_power_block_is_one():
    ex = power_blocks_seq(r=2.0, K=8)
    for k in range(0, 9):
        pool = (2**k, 2 ** (k + 1) - 1)
        v = lorentz_seq_norm(ex.symbol, 2.0, math.inf, B=[pool])
        assert abs(v - 1.0) < 1e-13


def test_lorentz_seq_global_grows_with_blocks():
    r = 2.0
    vals = {}
    for K in (6, 9, 12):
        ex = power_blocks_seq(r=r, K=K)
        v = lorentz_seq_norm(ex.symbol, r, math.inf)
        assert abs(v - (K + 1) ** (1 / r)) < 1e-12
        vals[K] = v
    assert vals[6] < vals[9] < vals[12]


def test_lorentz_seq_finite_q_normalization():
    # single unit spike: sum_k (k^{1/p} a*_k)^q / k = 1 for any p, q
    a = _seq([1.0])
    assert lorentz_seq_norm(a, 2.0, 1.0) == 1.0
    assert lorentz_seq_norm(a, 2.0, 3.0) == 1.0
    # two equal entries, p = q = 1: 1 + 2^{1}/2 = 2
    b = _seq([1.0, 1.0])
    assert lorentz_seq_norm(b, 1.0, 1.0) == pytest.approx(2.0, rel=1e-15)


def test_lorentz_seq_p_inf_requires_q_inf():
    a = _seq([1.0, 2.0])
    assert lorentz_seq_norm(a, math.inf, math.inf) == 2.0
    with pytest.raises(ValueError):
        lorentz_seq_norm(a, math.inf, 2.0)


def test_lorentz_homogeneity():
    rng = np.random.default_rng(3)
    vals = rng.standard_normal(40)
    a = _seq(vals)
    scaled = _seq(4.0 * vals)
    for p in (1.5, 2.0, 4.0):
        assert lorentz_seq_norm(scaled, p) == 4.0 * lorentz_seq_norm(a, p)


def test_restriction_contraction_random():
    rng = np.random.default_rng(9)
    for _ in range(30):
        n = int(rng.integers(4, 64))
        a = SeqSymbol(-n, n, rng.standard_normal(2 * n + 1))
        p = float(rng.uniform(1.2, 5.0))
        full = lorentz_seq_norm(a, p)
        for lo, hi in [(-n, -1), (0, n), (-3, 3)]:
            assert lorentz_seq_norm(a, p, B=[(lo, hi)]) <= full * (1 + 1e-12)


def test_lorentz_fun_constant_block():
    f = FunSymbol(evaluator=lambda x: 3.0 * np.ones_like(np.asarray(x, dtype=float)))
    for p, L in [(2.0, 1.0), (3.0, 4.0)]:
        v = lorentz_fun_norm(f, p, (0.0, L), mesh=L / 64)
        assert v == pytest.approx(3.0 * L ** (1 / p), rel=1e-12)


def test_lorentz_fun_power_block_one():
    ex = power_blocks(r=2.0, k_lo=-5, k_hi=10)
    for k in (-5, -1, 0, 4, 10):
        lo, hi = 2.0**k, 2.0 ** (k + 1)
        v = lorentz_fun_norm(ex.symbol, 2.0, (lo, hi), mesh=(hi - lo) / 64)
        assert abs(v - 1.0) < 0.02
        # mirrored half gives the same value
        vneg = lorentz_fun_norm(ex.symbol, 2.0, (-hi, -lo), mesh=(hi - lo) / 64)
        assert abs(vneg - v) < 1e-6


def test_lorentz_fun_step_oracle():
    # piecewise-constant symbol: norm equals max_i t_i^{1/p} level_i of the
    # sorted step representation
    rng = np.random.default_rng(21)
    edges = np.cumsum(rng.uniform(0.2, 1.0, 8))
    levels = rng.uniform(0.1, 2.0, 8)

    def evaluator(x):
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(edges, x, side="right")
        out = np.where(idx < len(levels), levels[np.minimum(idx, len(levels) - 1)], 0.0)
        return np.where((x >= 0) & (x < edges[-1]), out, 0.0)

    f = FunSymbol(evaluator=evaluator)
    p = 2.0
    # oracle: sort (width, level) pairs by level, accumulate measure
    widths = np.diff(np.concatenate([[0.0], edges]))
    order = np.argsort(levels)[::-1]
    cum = np.cumsum(widths[order])
    oracle = np.max(cum ** (1 / p) * levels[order])
    v = lorentz_fun_norm(f, p, (0.0, float(edges[-1])), mesh=float(edges[-1]) / 4096)
    assert v == pytest.approx(oracle, rel=5e-3)
