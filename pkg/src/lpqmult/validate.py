"""Run the expected checks attached to the named examples.

Each check row records what was asserted, what came out, and PASS/FAIL.  A
``tolerance`` override replaces the coarse (quadrature-based) tolerances only;
rows asserted at machine precision keep their float-roundoff allowance, so an
override of 0 fails exactly the quadrature-limited rows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds
from .catalog import ExpectedCheck, NamedExample
from .symbols import ExponentTriple, FunSymbol

MACHINE_TOL = 1e-12


@dataclass(frozen=True)
class CheckRow:
    example: str
    quantity: str
    expected: str
    computed: str
    passed: bool

    def format(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.example:22s} {self.quantity:28s} expected={self.expected} got={self.computed}"


def _tol(check: ExpectedCheck, override: float | None) -> float:
    if override is not None and check.rel_tol > MACHINE_TOL:
        return override
    return check.rel_tol


def _close(computed: float, expected: float, tol: float) -> bool:
    return abs(computed - expected) <= tol * max(abs(expected), 1.0)


def _lizorkin_exponents(e: ExponentTriple) -> ExponentTriple:
    return ExponentTriple(e.p, e.q, e.r, e.r_conj, "lizorkin")


def run_check(ex: NamedExample, check: ExpectedCheck, tolerance: float | None = None) -> CheckRow:
    e = ex.exponents
    q = check.quantity
    tol = _tol(check, tolerance)

    if q == "hoermander_block_sup":
        if isinstance(ex.symbol, FunSymbol):
            bv = bounds.hoermander_upper_fun(ex.symbol, e, ex.krange)
        else:
            bv = bounds.hoermander_upper_seq(ex.symbol, e, ex.kmax)
        ok = _close(bv.value, check.expected, tol)
        return CheckRow(ex.name, q, f"{check.expected}", f"{bv.value:.6g}", ok)

    if q == "hoermander_block_each":
        if isinstance(ex.symbol, FunSymbol):
            table = bounds.hoermander_block_values_fun(ex.symbol, e, ex.krange)
        else:
            table = bounds.hoermander_block_values_seq(ex.symbol, e, ex.kmax)
        bad = [(k, v) for k, v in table if not _close(v, check.expected, tol)]
        return CheckRow(
            ex.name, q, f"{check.expected} per block", f"{len(bad)} blocks off" if bad else "all match", not bad
        )

    if q == "hoermander_classic":
        if isinstance(ex.symbol, FunSymbol):
            bv = bounds.hoermander_classic_fun(ex.symbol, e, ex.domain)
        else:
            bv = bounds.hoermander_classic_seq(ex.symbol, e)
        return _divergence_row(ex, q, check, bv)

    le = _lizorkin_exponents(e)

    if q == "lizorkin_dyadic":
        if isinstance(ex.symbol, FunSymbol):
            bv = bounds.lizorkin_upper_fun(ex.symbol, le, ex.krange)
        else:
            bv = bounds.lizorkin_upper_seq(ex.symbol, le, ex.kmax)
        return _divergence_row(ex, q, check, bv)

    if q == "lizorkin_dyadic_sup":
        bv = bounds.lizorkin_upper_seq(ex.symbol, le, ex.kmax)
        ok = _close(bv.value, check.expected, tol) and not bv.divergent
        return CheckRow(ex.name, q, f"{check.expected}", f"{bv.value:.6g}", ok)

    if q == "lizorkin_block_each":
        table = bounds.lizorkin_block_values_seq(ex.symbol, le, ex.kmax)
        bad = [(k, v) for k, v in table if not _close(v, check.expected, tol)]
        return CheckRow(
            ex.name, q, f"{check.expected} per block", f"{len(bad)} blocks off" if bad else "all match", not bad
        )

    if q == "bump_block_each":
        table = bounds.lizorkin_block_values_fun(ex.symbol, le, ex.krange)
        bad = [(k, v) for k, v in table if not _close(v, check.expected, tol)]
        return CheckRow(
            ex.name, q, f"{check.expected:.6g} per block", f"{len(bad)} blocks off" if bad else "all match", not bad
        )

    if q == "lizorkin_classic":
        if isinstance(ex.symbol, FunSymbol):
            bv = bounds.lizorkin_classic_fun(ex.symbol, le, ex.domain)
        else:
            bv = bounds.lizorkin_classic_seq(ex.symbol, le)
        return _divergence_row(ex, q, check, bv)

    if q == "staircase_tail_vanishes":
        r, K = ex.parameters["r"], ex.parameters["K"]
        gamma = ex.parameters["gamma"]
        top = float(np.real(ex.symbol.value_at(2**K)))
        tail = 2.0 ** (-(K + 1) / r) * gamma  # geometric tail past block K
        ok = top > 0.0 and _close(top, tail, 1e-9)
        return CheckRow(ex.name, q, f"~{tail:.3e} (positive)", f"{top:.3e}", ok)

    if q == "tau_to_tau_le_one":
        bv = bounds.tau_to_tau_upper(ex.symbol, ex.parameters["tau"], kmax=ex.kmax)
        ok = bv.value <= check.expected + 1e-12
        return CheckRow(ex.name, q, f"<= {check.expected}", f"{bv.value:.12g}", ok)

    if q == "marcinkiewicz_variation":
        bv = bounds.marcinkiewicz_variation(ex.symbol, nmax=ex.kmax)
        return _divergence_row(ex, q, check, bv)

    raise KeyError(f"unknown check quantity {q!r}")


def _divergence_row(ex, q, check, bv) -> CheckRow:
    if check.expected == "divergent":
        ok = bv.divergent
        return CheckRow(ex.name, q, "divergent", _describe(bv), ok)
    if check.expected == "finite":
        ok = not bv.divergent and math.isfinite(bv.value)
        return CheckRow(ex.name, q, "finite (stable)", _describe(bv), ok)
    raise ValueError(f"bad divergence expectation {check.expected!r}")


def _describe(bv) -> str:
    tag = "divergent" if bv.divergent else "stable"
    return f"{bv.value:.6g} ({tag})"


def run_example(ex: NamedExample, tolerance: float | None = None) -> list[CheckRow]:
    return [run_check(ex, check, tolerance) for check in ex.expected]
