"""Exit criteria of the package, runnable from tests and from ``scalespace2x2 selftest``.

Each criterion returns ``(passed, detail)``; :func:`run_all` adds timing and
enforces the runtime budget where one is set.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .conditions import eta, numeric_validate, sample_feasible, vartheta, zeta
from .design import compare, optimize
from .iteration import circulant_power_oracle, equivalent_filter
from .realization import realize_balanced
from .spectral import (
    DesignParams,
    cross_product,
    equivalent_response,
    falloff,
    gaussian_response,
    response_table,
    sigma_aa,
    sigma_xx,
    spectral_point,
)

T = 0.25
REFERENCE_FILTERS = [
    DesignParams(1.0, 1.0, 0.0, T),
    DesignParams(1.0, 0.5, 0.0, T),
    DesignParams(1.0, 0.0, -0.5, T),
    DesignParams(1.0, 0.48, -0.26, T),
]
SAMPLE_SEED = 7


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: Optional[float]

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:g} s)" if self.limit else ""
        return f"[{status}] {self.number}. {self.name}: {self.detail}; {self.seconds:.2f} s{budget}"


def oracle_equivalence():
    N = 64
    theta_k = 2.0 * np.pi * np.arange(N) / N
    worst = 0.0
    for p in REFERENCE_FILTERS:
        m = realize_balanced(p)
        for l in (1, 5, 50):
            spectrum = equivalent_filter(m, p.t, l, N).frequency_response()
            worst = max(worst, float(np.max(np.abs(spectrum - equivalent_response(p, theta_k, l)))))
    worst_dense = 0.0
    for p in REFERENCE_FILTERS:
        m = realize_balanced(p)
        block = circulant_power_oracle(m, p.t, 5, 16)
        kernel = equivalent_filter(m, p.t, 5, 16).coefficients
        worst_dense = max(worst_dense, float(np.max(np.abs(block[:, 0] - kernel))))
    ok = worst < 1e-8 and worst_dense < 1e-12
    return ok, f"max |DFT - F^l| = {worst:.2e} (< 1e-8), max |M^5 col - kernel| = {worst_dense:.2e} (< 1e-12)"


def reference_falloffs():
    lo, hi = np.pi / 16, np.pi / 4
    got = {
        "(1,0,-0.5)": falloff(DesignParams(1.0, 0.0, -0.5, T), 100, lo, hi),
        "(1,0.48,-0.26)": falloff(DesignParams(1.0, 0.48, -0.26, T), 100, lo, hi),
        "gaussian": falloff(DesignParams(1.0, 0.0, 0.0, T), 100, lo, hi),
    }
    target = {"(1,0,-0.5)": (0.83, 0.01), "(1,0.48,-0.26)": (0.93, 0.01), "gaussian": (0.41, 0.05)}
    ok = all(abs(got[k] - v) <= tol for k, (v, tol) in target.items())
    return ok, ", ".join(f"{k} -> {got[k]:.4f} (target {v} ± {tol})" for k, (v, tol) in target.items())


def optimizer_reproduction():
    r = optimize(100, np.pi / 16, np.pi / 4, T)
    b, c, d = r.params.b, r.params.c, r.params.d
    ok = abs(r.objective - 0.9234) <= 0.005 and abs(b - 1.0) <= 0.05 and abs(c - (1.0 + 2.0 * d)) <= 0.01
    return ok, (
        f"objective {r.objective:.5f} (0.9234 ± 0.005) at b={b:.4f}, c={c:.4f}, d={d:.4f}; "
        f"|c-(1+2d)| = {abs(c - 1 - 2 * d):.2e}"
    )


def closed_form_spot_checks():
    p = DesignParams(1.0, 0.0, -0.5, T)
    th = np.linspace(0.0, np.pi, 256)
    sp = spectral_point(p, th)
    e_phi = float(np.max(np.abs(sp.phi - (1.0 + np.cos(th) / 2.0))))
    e_root = float(np.max(np.abs(np.sqrt(sp.delta) - np.sqrt(6.0 - 2.0 * np.cos(2.0 * th)) / 4.0)))
    return e_phi < 1e-12 and e_root < 1e-12, f"max phi error {e_phi:.2e}, max sqrt(Delta) error {e_root:.2e} (< 1e-12)"


def scale_space_soundness():
    samples = sample_feasible(100, SAMPLE_SEED)
    failed = []
    for p in samples:
        report = numeric_validate(p, grid_size=256, l_max=150, tol=1e-8)
        if not report.passed:
            failed.append((p, report.failures))
    return not failed, f"{len(samples) - len(failed)}/{len(samples)} sampled feasible params pass" + (
        f"; first failure {failed[0]}" if failed else ""
    )


def gaussian_reduction():
    th = np.linspace(0.0, np.pi, 256)
    ls = np.arange(0, 201)
    worst = 0.0
    for p in sample_feasible(20, SAMPLE_SEED, d=0.0):
        F = response_table(p, th, ls)
        G = gaussian_response(p.t, th, ls[:, None])
        worst = max(worst, float(np.max(np.abs(F - G))))
    return worst < 1e-10, f"max |F^l - sigma_xx^l| = {worst:.2e} over 20 params, l <= 200 (< 1e-10)"


def crossing_demonstration():
    table = compare([(DesignParams(1.0, 0.0, 0.0, T), 5), (DesignParams(1.0, 0.0, -0.5, T), 35)])
    locs = table.crossings[(0, 1)]
    return len(locs) >= 1, f"sign changes at theta = {[round(x, 4) for x in locs]}"


def witness_suite():
    samples = sample_feasible(100, SAMPLE_SEED)
    tt, ww = np.meshgrid(np.linspace(0.0, 0.25, 64), np.linspace(-1.0, 1.0, 64), indexing="ij")
    th = np.linspace(0.0, np.pi, 256)
    mins = {"eta": np.inf, "zeta": np.inf, "vartheta": np.inf}
    identity = 0.0
    for p in samples:
        mins["eta"] = min(mins["eta"], float(eta(p, tt, ww).min()))
        mins["zeta"] = min(mins["zeta"], float(zeta(p, ww).min()))
        mins["vartheta"] = min(mins["vartheta"], float(vartheta(p, tt, ww).min()))
        direct = sigma_xx(p, th) * sigma_aa(p, th) - cross_product(p, th)
        identity = max(identity, float(np.max(np.abs(eta(p, p.t, np.cos(th)) - direct))))
    ok = all(v >= -1e-12 for v in mins.values()) and identity < 1e-12
    return ok, ", ".join(f"min {k} = {v:.2e}" for k, v in mins.items()) + f", eta identity error {identity:.2e}"


def mixing_behavior():
    th = np.linspace(0.0, np.pi, 256)
    step_size = th[1] - th[0]
    mu2 = spectral_point(DesignParams(1.0, 0.5, 0.0, T), th).mu2
    binary = bool(np.all(np.minimum(np.abs(mu2), np.abs(mu2 - 1.0)) < 1e-12))
    ones = th[np.abs(mu2 - 1.0) < 1e-12]
    zeros = th[np.abs(mu2) < 1e-12]
    switch = 0.5 * (ones.max() + zeros.min()) if ones.size and zeros.size else np.nan
    monotone = bool(ones.size and zeros.size and ones.max() < zeros.min())
    switch_ok = monotone and abs(switch - np.pi / 2) <= step_size
    sp = spectral_point(DesignParams(1.0, 1.0, 0.0, T), th)
    half = float(max(np.max(np.abs(sp.mu1 - 0.5)), np.max(np.abs(sp.mu2 - 0.5))))
    ok = binary and switch_ok and half == 0.0
    return ok, f"mu2 binary: {binary}, switch at {switch:.5f} (pi/2 = {np.pi / 2:.5f}), degenerate max |mu - 1/2| = {half:.1e}"


CRITERIA: list = [
    (1, "oracle equivalence", oracle_equivalence, 5.0),
    (2, "reference fall-off values", reference_falloffs, 1.0),
    (3, "optimizer reproduction", optimizer_reproduction, 60.0),
    (4, "closed-form spot checks", closed_form_spot_checks, None),
    (5, "scale-space soundness", scale_space_soundness, 120.0),
    (6, "Gaussian reduction", gaussian_reduction, None),
    (7, "crossing demonstration", crossing_demonstration, None),
    (8, "witness suite", witness_suite, None),
    (9, "mixing-coefficient behavior", mixing_behavior, None),
]


def run_criterion(number: int, name: str, fn: Callable, limit: Optional[float]) -> CriterionResult:
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, not an aborted run
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    if limit is not None and seconds > limit:
        passed = False
        detail += f"; over the {limit:g} s budget"
    return CriterionResult(number, name, bool(passed), detail, seconds, limit)


def run_all(echo: Optional[Callable[[str], None]] = None) -> list:
    results = []
    for entry in CRITERIA:
        r = run_criterion(*entry)
        if echo is not None:
            echo(r.line())
        results.append(r)
    return results
