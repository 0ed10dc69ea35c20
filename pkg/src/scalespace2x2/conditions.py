"""Feasibility of (b, c, d) and numeric checks of the scale-space requirements.

The closed-form region is

    d <= 0
    0 <= b + c <= 2 + 2d
    -2d <= b - c <= 2
    bc - c^2 - 2d >= 0
    bc + 2d + c^2 - 2c <= 0

It implies the box -d <= b <= 2 + d, -1 <= c <= 1 + 2d. Membership is
sufficient for the equivalent filter to be a scale-space kernel for every
t in [0, 1/4]; it is not necessary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .spectral import DesignParams, gaussian_response, mixing_coefficients, sigma_xx

FEASIBILITY_TOL = 1e-12

REQUIREMENTS = (
    "real",
    "positive",
    "unimodal",
    "consistent_reduction",
    "normalized",
    "linear_diffusion",
)


def constraint_slacks(b: float, c: float, d: float) -> dict:
    """Slack of every region constraint; non-negative means satisfied."""
    return {
        "d ≤ 0": -d,
        "0 ≤ b+c": b + c,
        "b+c ≤ 2+2d": 2.0 + 2.0 * d - (b + c),
        "-2d ≤ b-c": (b - c) + 2.0 * d,
        "b-c ≤ 2": 2.0 - (b - c),
        "bc-c²-2d ≥ 0": b * c - c * c - 2.0 * d,
        "bc+2d+c²-2c ≤ 0": -(b * c + 2.0 * d + c * c - 2.0 * c),
    }


def interval_slacks(b: float, c: float, d: float) -> dict:
    """Slacks of the box bounds on b and c implied by the region."""
    return {
        "-d ≤ b": b + d,
        "b ≤ 2+d": 2.0 + d - b,
        "-1 ≤ c": c + 1.0,
        "c ≤ 1+2d": 1.0 + 2.0 * d - c,
    }


@dataclass
class Violation:
    constraint: str
    slack: float


@dataclass
class FeasibilityReport:
    feasible: bool
    violations: list
    slacks: dict
    intervals: dict

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "violations": [{"constraint": v.constraint, "slack": v.slack} for v in self.violations],
            "slacks": self.slacks,
            "intervals": self.intervals,
        }


def theorem2_check(p: DesignParams, tol: float = FEASIBILITY_TOL) -> FeasibilityReport:
    """Evaluate the closed-form region at (b, c, d).

    Violated box bounds are listed next to the region constraints. They are
    implied by the region, so they never make an otherwise feasible point
    infeasible; they only give a more readable diagnosis.
    """
    slacks = constraint_slacks(p.b, p.c, p.d)
    intervals = interval_slacks(p.b, p.c, p.d)
    violations = [Violation(k, v) for k, v in slacks.items() if v < -tol]
    if violations:
        violations += [Violation(k, v) for k, v in intervals.items() if v < -tol]
    return FeasibilityReport(not violations, violations, slacks, intervals)


def is_feasible(b: float, c: float, d: float, tol: float = FEASIBILITY_TOL) -> bool:
    return min(constraint_slacks(b, c, d).values()) >= -tol


# Witness functions of the sufficiency argument. ``w`` stands for cos(theta).

def eta(p: DesignParams, t, w):
    """sigma_xx * sigma_aa - sigma_xa * sigma_ax written as a polynomial in t and w."""
    b, c, d = p.b, p.c, p.d
    return 4.0 * (1.0 - w) * (b + d - (c - d) * w) * t**2 - 2.0 * (1.0 + b - (1.0 + c) * w) * t + 1.0


def zeta(p: DesignParams, w):
    b, c, d = p.b, p.c, p.d
    return 4.0 - (1.0 - w) * (b + d - (c - d) * w)


def discriminant(p: DesignParams, t, w):
    """Delta as a function of (t, w): psi^2 - 16 t^2 d (1 - w^2)."""
    psi = 2.0 * t * ((p.b - 1.0) + (1.0 - p.c) * w)
    return psi**2 - 16.0 * t**2 * p.d * (1.0 - w**2)


def xi_phi(p: DesignParams, t):
    return 2.0 * t * (1.0 + p.c)


def xi_psi(p: DesignParams, t):
    return 2.0 * t * (1.0 - p.c)


def xi_delta(p: DesignParams, t, w):
    """Rate of Delta along theta: dDelta/dtheta = -xi_delta * sin(theta).

    ``xi_phi`` and ``xi_psi`` follow the same sign rule for phi and psi.
    """
    b, c, d = p.b, p.c, p.d
    return 8.0 * t**2 * ((1.0 - c) * (-(1.0 - b) + (1.0 - c) * w) + 4.0 * d * w)


def vartheta(p: DesignParams, t, w):
    return 4.0 * discriminant(p, t, w) * xi_phi(p, t) ** 2 - xi_delta(p, t, w) ** 2


def xi(p: DesignParams, w, l: int):
    """Slope factor of the response: dF^l/dtheta = -xi * sin(theta).

    Uses ``p.t``. Undefined where Delta = 0 (repeated eigenvalues).
    """
    t = p.t
    w = np.asarray(w, dtype=float)
    s_xx = (1.0 - 2.0 * t) + 2.0 * t * w
    s_aa = (1.0 - 2.0 * p.b * t) + 2.0 * t * p.c * w
    phi, psi = s_xx + s_aa, s_xx - s_aa
    delta = discriminant(p, t, w)
    root = np.sqrt(delta)
    lam1, lam2 = (phi - root) / 2.0, (phi + root) / 2.0
    mu1, mu2 = 0.5 - psi / (2.0 * root), 0.5 + psi / (2.0 * root)
    x_phi, x_psi, x_delta = xi_phi(p, t), xi_psi(p, t), xi_delta(p, t, w)
    d_mu2 = (2.0 * delta * x_psi - psi * x_delta) / (4.0 * delta * root)
    d_lam1 = (2.0 * root * x_phi - x_delta) / (4.0 * root)
    d_lam2 = (2.0 * root * x_phi + x_delta) / (4.0 * root)
    return (
        (lam2**l - lam1**l) * d_mu2
        + l * mu1 * lam1 ** (l - 1) * d_lam1
        + l * mu2 * lam2 ** (l - 1) * d_lam2
    )


@dataclass
class RequirementResult:
    """Outcome of one requirement; ``margin`` >= 0 means it holds.

    The witness is the (theta, l) point with the smallest margin, reported
    whether or not the requirement passed.
    """

    passed: bool
    margin: float
    theta: Optional[float]
    l: Optional[int]
    note: str = ""


@dataclass
class ValidationReport:
    params: DesignParams
    results: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    @property
    def failures(self) -> list:
        return [k for k, r in self.results.items() if not r.passed]

    def to_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "passed": self.passed,
            "requirements": {
                k: {"passed": r.passed, "margin": r.margin, "theta": r.theta, "l": r.l, "note": r.note}
                for k, r in self.results.items()
            },
        }


def _witness(margins: np.ndarray, thetas: np.ndarray, ls: np.ndarray, tol: float, note: str = ""):
    i, j = np.unravel_index(np.argmin(margins), margins.shape)
    m = float(margins[i, j])
    return RequirementResult(m >= -tol, m, float(thetas[j]), int(ls[i]), note)


def complex_response_table(p: DesignParams, thetas: np.ndarray, ls: np.ndarray) -> np.ndarray:
    """F^l(theta) allowing complex eigenvalues, for probing infeasible parameters."""
    s_xx = sigma_xx(p, thetas)
    s_aa = (1.0 - 2.0 * p.b * p.t) + 2.0 * p.t * p.c * np.cos(thetas)
    cross = -4.0 * p.t**2 * p.d * np.sin(thetas) ** 2
    phi, psi = s_xx + s_aa, s_xx - s_aa
    root = np.sqrt((psi**2 + 4.0 * cross).astype(complex))
    mu1, mu2 = mixing_coefficients(psi, cross, root)
    L = ls[:, None]
    return mu1 * ((phi - root) / 2.0) ** L + mu2 * ((phi + root) / 2.0) ** L


def numeric_validate(
    p: DesignParams, grid_size: int = 256, l_max: int = 150, tol: float = 1e-8
) -> ValidationReport:
    """Check the six scale-space requirements on a theta grid for l = 1..l_max.

    Works for any parameters, feasible or not; every finding goes into the
    report. "real" asks for real eigenvalues (Delta >= 0) as well as a real
    response.
    """
    if grid_size < 64:
        raise ValueError(f"grid_size must be at least 64, got {grid_size}")
    if l_max < 2:
        raise ValueError(f"l_max must be at least 2, got {l_max}")
    thetas = np.linspace(0.0, np.pi, grid_size)
    ls = np.arange(0, l_max + 1)
    with np.errstate(over="ignore", invalid="ignore"):
        table = complex_response_table(p, thetas, ls)
    F = table.real
    report = ValidationReport(p)

    delta = discriminant(p, p.t, np.cos(thetas))
    real_margin = np.minimum(delta[None, :], -np.abs(table.imag[1:]))
    report.results["real"] = _witness(real_margin, thetas, ls[1:], tol, "min(Delta, -|Im F|)")

    report.results["positive"] = _witness(F[1:], thetas, ls[1:], tol)

    slope = -(np.diff(F[1:], axis=1))
    report.results["unimodal"] = _witness(slope, thetas[1:], ls[1:], tol, "F non-increasing in theta")

    reduction = F[:-1] - F[1:]
    report.results["consistent_reduction"] = _witness(reduction, thetas, ls[1:], tol, "F^(l-1) - F^l")

    norm = -np.abs(F[1:, :1] - 1.0)
    report.results["normalized"] = _witness(norm, thetas[:1], ls[1:], tol)

    if p.d == 0:
        lin = -np.abs(F[1:] - gaussian_response(p.t, thetas, ls[1:, None]))
        note = "d = 0: F^l equals linear diffusion"
    else:
        lin = -np.abs(F[1:2] - sigma_xx(p, thetas))
        note = "F^1 equals one linear-diffusion step"
    report.results["linear_diffusion"] = _witness(lin, thetas, ls[1:], tol, note)

    for r in report.results.values():
        if not np.isfinite(r.margin):
            r.passed = False
    return report


def sample_feasible(
    count: int, seed: int = 0, *, t: float = 0.25, d: Optional[float] = None
) -> list:
    """Rejection-sample ``count`` parameter sets from the feasible region.

    Candidates are drawn uniformly from the box -1 <= d <= 0,
    -d <= b <= 2 + d, -1 <= c <= 1 + 2d and kept when they pass
    :func:`theorem2_check`. Pass ``d`` to sample the slice at that value.
    """
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    if d is not None and not -1.0 <= d <= 0.0:
        raise ValueError(f"the feasible region needs -1 <= d <= 0, got {d}")
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        dd = rng.uniform(-1.0, 0.0) if d is None else d
        b = rng.uniform(-dd, 2.0 + dd)
        c = rng.uniform(-1.0, 1.0 + 2.0 * dd)
        p = DesignParams(float(b), float(c), float(dd), t)
        if theorem2_check(p).feasible:
            out.append(p)
    return out
