"""Discretized multiplier operators and empirical Lp -> Lq norm probes.

The estimator is a lower-bound probe only: it reports the best ratio
||Tf||_q / ||f||_p over every test function it evaluated.  The trial set mixes
pure Fourier modes at the largest spectrum entries (whose ratio is exactly the
spectrum magnitude, for any p and q) with a nonlinear power-type ascent from
seeded random starts.  No claim of convergence to the true norm is made for
p != q.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .symbols import ExponentTriple, FunSymbol, SeqSymbol


class AliasingError(ValueError):
    """Symbol window too wide for the sample count."""


@dataclass(frozen=True)
class DiscreteMultiplier:
    """Diagonal Fourier multiplier on N samples.

    kind "periodic": functions on (0, 1), N samples, coefficients of the
    trigonometric interpolant; kind "line": functions on [-L/2, L/2) with the
    symbol sampled at frequencies 2*pi*j/L (Nyquist pi*N/L).
    """

    kind: str
    N: int
    spectrum: np.ndarray
    L: float | None = None

    def __post_init__(self):
        if self.kind not in ("periodic", "line"):
            raise ValueError("kind must be 'periodic' or 'line'")
        if self.N < 2 or (self.N & (self.N - 1)) != 0:
            raise ValueError("N must be a power of two")
        spectrum = np.asarray(self.spectrum, dtype=complex).copy()
        if len(spectrum) != self.N:
            raise ValueError("spectrum length must equal N")
        spectrum.setflags(write=False)
        object.__setattr__(self, "spectrum", spectrum)

    @property
    def cell_weight(self) -> float:
        return 1.0 / self.N if self.kind == "periodic" else self.L / self.N

    def frequencies(self) -> np.ndarray:
        idx = np.fft.fftfreq(self.N, d=1.0 / self.N).astype(int)
        if self.kind == "periodic":
            return idx
        return 2.0 * math.pi * idx / self.L


def make_periodic_multiplier(a: SeqSymbol, N: int, enforce_guard: bool = True) -> DiscreteMultiplier:
    """Periodic model of a sequence symbol on N samples.

    The aliasing guard max |k| <= N/4 keeps the nonlinear dual maps of the
    estimator from wrapping spectrum significantly; pass enforce_guard=False
    only for linear one-shot uses (the witness construction).
    """
    reach = max(abs(a.window_lo), abs(a.window_hi))
    if enforce_guard and reach > N // 4:
        raise AliasingError(f"symbol window reach {reach} exceeds N/4 = {N // 4}")
    idx = np.fft.fftfreq(N, d=1.0 / N).astype(int)
    spectrum = np.zeros(N, dtype=complex)
    for pos, k in enumerate(idx):
        if a.window_lo <= k <= a.window_hi and abs(k) <= N // 2:
            spectrum[pos] = a.values[k - a.window_lo]
    return DiscreteMultiplier(kind="periodic", N=N, spectrum=spectrum)


def make_line_multiplier(f: FunSymbol, N: int, L: float) -> DiscreteMultiplier:
    """Line model: symbol sampled at frequencies 2*pi*j/L, |j| <= N/2.

    Frequencies that coincide with a declared singular location are perturbed
    by half a frequency step (pi/L) before sampling.
    """
    freqs = 2.0 * math.pi * np.fft.fftfreq(N, d=1.0 / N) / L
    xs = freqs.copy()
    half_step = math.pi / L
    for s in f.singularities:
        hit = np.isclose(xs, s.location, rtol=0, atol=1e-12 * max(1.0, abs(s.location)))
        xs = np.where(hit, xs + half_step, xs)
    vals = np.asarray(f(xs), dtype=complex)
    vals = np.where(np.isfinite(vals), vals, 0.0)
    return DiscreteMultiplier(kind="line", N=N, spectrum=vals, L=float(L))


def apply_multiplier(T: DiscreteMultiplier, f: np.ndarray) -> np.ndarray:
    f = np.asarray(f)
    if len(f) != T.N:
        raise ValueError(f"expected {T.N} samples, got {len(f)}")
    return np.fft.ifft(T.spectrum * np.fft.fft(f))


def _apply_adjoint(T: DiscreteMultiplier, f: np.ndarray) -> np.ndarray:
    return np.fft.ifft(np.conj(T.spectrum) * np.fft.fft(f))


def lp_norm_periodic(f: np.ndarray, p: float) -> float:
    """((1/N) sum |f_j|^p)^{1/p}; p = inf gives the max."""
    return _lp_norm(np.asarray(f), p, 1.0 / len(f))


def _lp_norm(f: np.ndarray, p: float, weight: float) -> float:
    mags = np.abs(f)
    if math.isinf(p):
        return float(np.max(mags))
    if p < 1:
        raise ValueError("p must be >= 1")
    return float((weight * np.sum(mags**p)) ** (1.0 / p))


@dataclass(frozen=True)
class OpNormEstimate:
    value: float
    iterations: int
    restarts: int
    seed: int
    trajectory: tuple  # per restart: tuple of per-iteration ratios

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "iterations": self.iterations,
            "restarts": self.restarts,
            "seed": self.seed,
            "restart_best": [max(t) if t else 0.0 for t in self.trajectory],
        }

    def trajectory_rows(self):
        for ri, curve in enumerate(self.trajectory):
            for it, ratio in enumerate(curve):
                yield ri, it, ratio


def _dual(g: np.ndarray, s: float) -> np.ndarray:
    """|g|^{s-1} * phase(g), the norming map of the s-norm."""
    mags = np.abs(g)
    phase = np.where(mags > 0, g / np.where(mags > 0, mags, 1.0), 0.0)
    return mags ** (s - 1.0) * phase


def _mode_ratios(T: DiscreteMultiplier, p: float, q: float, count: int = 8):
    """Ratios of pure Fourier modes at the largest spectrum magnitudes."""
    w = T.cell_weight
    order = np.argsort(np.abs(T.spectrum))[::-1]
    ratios = []
    n = np.arange(T.N)
    for pos in order[:count]:
        if np.abs(T.spectrum[pos]) == 0.0 and ratios:
            break
        f = np.exp(2j * math.pi * pos * n / T.N)
        g = apply_multiplier(T, f)
        denom = _lp_norm(f, p, w)
        if denom > 0:
            ratios.append(_lp_norm(g, q, w) / denom)
    return ratios


def estimate_opnorm(
    T: DiscreteMultiplier,
    p: float,
    q: float,
    iters: int = 200,
    restarts: int = 16,
    seed: int = 0,
) -> OpNormEstimate:
    """Best observed ||Tf||_q / ||f||_p, a lower bound on the discrete norm.

    Each restart runs the ascent f <- normalize_p(dual_{p'}(T* dual_q(T f)))
    from a seeded complex-gaussian start, stopping early once the ratio moves
    by less than 1e-8 relative.  The running maximum over every evaluated
    test function (pure modes included) is returned, so the value is
    non-decreasing in both iters and restarts.
    """
    if not (1.0 < p < math.inf and 1.0 < q < math.inf):
        raise ValueError("estimator requires 1 < p, q < inf")
    w = T.cell_weight
    p_conj = p / (p - 1.0)
    best = 0.0
    for ratio in _mode_ratios(T, p, q):
        best = max(best, ratio)
    trajectories = []
    for restart in range(restarts):
        rng = np.random.default_rng([seed, restart])
        f = rng.standard_normal(T.N) + 1j * rng.standard_normal(T.N)
        norm_f = _lp_norm(f, p, w)
        if norm_f == 0:
            trajectories.append(())
            continue
        f = f / norm_f
        curve = []
        prev = None
        for _ in range(iters):
            g = apply_multiplier(T, f)
            ng = _lp_norm(g, q, w)
            curve.append(ng)  # f is p-normalized, so the ratio is ||Tf||_q
            best = max(best, ng)
            if ng == 0.0:
                break
            if prev is not None and abs(ng - prev) <= 1e-8 * ng:
                break
            prev = ng
            h = _apply_adjoint(T, _dual(g, q))
            v = _dual(h, p_conj)
            nv = _lp_norm(v, p, w)
            if nv == 0.0:
                break
            f = v / nv
        trajectories.append(tuple(curve))
    return OpNormEstimate(
        value=best, iterations=iters, restarts=restarts, seed=seed, trajectory=tuple(trajectories)
    )


def witness_ratio(a: SeqSymbol, e0: tuple[int, int], p: float, q: float, N: int) -> float:
    """Ratio ||T f||_q / ||f||_p for f with Fourier coefficients chi_{e0}.

    e0 is an inclusive integer run inside the symbol window.  Requires
    N >= 8 * max|e0 endpoint| so the window of interest sits well inside the
    resolved band; the symbol is truncated to the representable range (the
    action on f only involves indices in e0, so truncation is harmless).
    """
    lo, hi = e0
    if not (a.window_lo <= lo <= hi <= a.window_hi):
        raise ValueError("e0 must lie inside the symbol window")
    reach = max(abs(lo), abs(hi), 1)
    if N < 8 * reach:
        raise AliasingError(f"N = {N} < 8 * max|e0| = {8 * reach}")
    trunc = a.truncated(-(N // 4), N // 4)
    T = make_periodic_multiplier(trunc, N)
    idx = np.fft.fftfreq(N, d=1.0 / N).astype(int)
    coeffs = np.where((idx >= lo) & (idx <= hi), 1.0 + 0.0j, 0.0)
    f = np.fft.ifft(coeffs * N)
    g = apply_multiplier(T, f)
    return lp_norm_periodic(g, q) / lp_norm_periodic(f, p)


def ratios_on_trial_set(T: DiscreteMultiplier, p: float, q: float, n_random: int = 8, seed: int = 0):
    """Ratios of a fixed trial family (pure modes + seeded random functions).

    Used to check norm-exponent monotonicity on identical inputs.
    """
    w = T.cell_weight
    out = list(_mode_ratios(T, p, q))
    rng = np.random.default_rng(seed)
    for _ in range(n_random):
        f = rng.standard_normal(T.N) + 1j * rng.standard_normal(T.N)
        denom = _lp_norm(f, p, w)
        if denom > 0:
            out.append(_lp_norm(apply_multiplier(T, f), q, w) / denom)
    return out


def empirical_for_sandwich(
    symbol,
    e: ExponentTriple,
    domain=None,
    N: int = 1024,
    iters: int = 200,
    restarts: int = 16,
    seed: int = 0,
) -> dict:
    """Operator-norm estimate serialized for the sandwich report.

    Sequence windows wider than the aliasing guard are truncated (recorded in
    the flags) so the probe stays meaningful at the requested N.
    """
    flags = []
    if isinstance(symbol, SeqSymbol):
        reach = max(abs(symbol.window_lo), abs(symbol.window_hi))
        if reach > N // 4:
            symbol = symbol.truncated(-(N // 4), N // 4)
            flags.append(f"window truncated to +-{N // 4} for aliasing guard")
        T = make_periodic_multiplier(symbol, N)
    else:
        if domain is None:
            raise ValueError("line model needs a domain")
        L = 2.0 * max(abs(domain[0]), abs(domain[1]))
        T = make_line_multiplier(symbol, N, L)
        flags.append(f"line model: freq step {2 * math.pi / L:.6g}, Nyquist {math.pi * N / L:.6g}")
    est = estimate_opnorm(T, e.p, e.q, iters=iters, restarts=restarts, seed=seed)
    out = est.to_json()
    out["N"] = N
    out["model"] = T.kind
    out["flags"] = flags
    return out
