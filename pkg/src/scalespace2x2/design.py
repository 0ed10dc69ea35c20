"""Sharp-cutoff design: maximize F^l(theta_lo) - F^l(theta_hi) over the feasible region."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import minimize

from .conditions import constraint_slacks, is_feasible
from .errors import EmptyFeasibleGrid
from .spectral import DesignParams, equivalent_response, falloff

# Gradients of the linear region constraints in (b, c, d); slack = row . x + const.
_LINEAR_ROWS = {
    "d ≤ 0": (0.0, 0.0, -1.0),
    "0 ≤ b+c": (1.0, 1.0, 0.0),
    "b+c ≤ 2+2d": (-1.0, -1.0, 2.0),
    "-2d ≤ b-c": (1.0, -1.0, 2.0),
    "b-c ≤ 2": (-1.0, 1.0, 0.0),
}
ACTIVE_TOL = 1e-6


class TraceEntry(NamedTuple):
    b: float
    c: float
    d: float
    objective: float  # -inf when rejected
    feasible: bool
    phase: str


@dataclass
class DesignResult:
    params: DesignParams
    objective: float
    active_constraints: list
    trace: list = field(repr=False)

    @property
    def rejected(self) -> int:
        return sum(not e.feasible for e in self.trace)

    def to_dict(self, include_trace: bool = False) -> dict:
        out = {
            "params": self.params.as_dict(),
            "objective": self.objective,
            "active_constraints": self.active_constraints,
            "evaluations": len(self.trace),
            "rejected": self.rejected,
        }
        if include_trace:
            out["trace"] = [e._asdict() for e in self.trace]
        return out


class _Objective:
    """Fall-off with rejection of infeasible points; records every call."""

    def __init__(self, l, theta_lo, theta_hi, t, trace):
        self.l, self.lo, self.hi, self.t = l, theta_lo, theta_hi, t
        self.trace = trace

    def __call__(self, x, phase: str) -> float:
        b, c, d = (float(v) for v in x)
        if not is_feasible(b, c, d):
            self.trace.append(TraceEntry(b, c, d, -np.inf, False, phase))
            return -np.inf
        value = falloff(DesignParams(b, c, d, self.t), self.l, self.lo, self.hi)
        self.trace.append(TraceEntry(b, c, d, value, True, phase))
        return value


def _grid(n: int, fix_d: Optional[float]):
    ds = [fix_d] if fix_d is not None else np.linspace(-1.0, 0.0, n)
    for d in ds:
        # Endpoints put grid points exactly on c = 1 + 2d and on the b bounds,
        # where boundary optima live.
        for b in np.linspace(-d, 2.0 + d, n):
            for c in np.linspace(-1.0, 1.0 + 2.0 * d, n):
                yield np.array([b, c, d])


def _refine(objective, x0, equality_rows, iters, rng, step, phase):
    """Nelder-Mead inside the affine subspace {x0 + Z y : rows . (x - x0) = 0}."""
    Z = null_space(np.atleast_2d(equality_rows)) if len(equality_rows) else np.eye(3)
    k = Z.shape[1]
    if k == 0:
        return x0, objective(x0, phase)
    # Random rotation of the start simplex; the only use of the seed.
    Q, _ = np.linalg.qr(rng.standard_normal((k, k)))
    simplex = np.vstack([np.zeros(k), step * Q.T])
    res = minimize(
        lambda y: -objective(x0 + Z @ y, phase),
        np.zeros(k),
        method="Nelder-Mead",
        options={"initial_simplex": simplex, "maxfev": iters, "xatol": 1e-9, "fatol": 1e-12},
    )
    return x0 + Z @ res.x, -res.fun


def optimize(
    l: int = 100,
    theta_lo: float = np.pi / 16,
    theta_hi: float = np.pi / 4,
    t: float = 0.25,
    *,
    grid_density: int = 21,
    refinement_iters: int = 400,
    seed: int = 0,
    fix_d: Optional[float] = None,
) -> DesignResult:
    """Maximize the fall-off between ``theta_lo`` and ``theta_hi`` at iteration ``l``.

    A coarse scan over the feasible grid finds a start point. Nelder-Mead
    then refines it, first on the face of linear constraints that are tight
    there and afterwards in the full space. Infeasible candidates are
    rejected outright (objective -inf). ``fix_d`` restricts the search to one
    d slice, e.g. ``fix_d=0`` for the Gaussian family.
    """
    if not theta_lo < theta_hi:
        raise ValueError("need theta_lo < theta_hi")
    if l < 1:
        raise ValueError(f"l must be at least 1, got {l}")
    if grid_density < 2:
        raise ValueError(f"grid_density must be at least 2, got {grid_density}")
    trace: list = []
    objective = _Objective(l, theta_lo, theta_hi, t, trace)
    rng = np.random.default_rng(seed)

    best_x, best_f = None, -np.inf
    for x in _grid(grid_density, fix_d):
        if not is_feasible(*x):
            continue
        f = objective(x, "grid")
        if f > best_f:
            best_x, best_f = x, f
    if best_x is None:
        raise EmptyFeasibleGrid(f"no feasible point on a grid of density {grid_density}")

    fixed = [(0.0, 0.0, 1.0)] if fix_d is not None else []
    slacks = constraint_slacks(*best_x)
    tight = [row for name, row in _LINEAR_ROWS.items() if abs(slacks[name]) <= ACTIVE_TOL]
    step = 1.0 / (grid_density - 1)
    x, f = best_x, best_f
    if tight:
        x_face, f_face = _refine(objective, best_x, fixed + tight, refinement_iters, rng, step, "face")
        if f_face > f:
            x, f = x_face, f_face
    x_full, f_full = _refine(objective, x, fixed, refinement_iters, rng, step / 4, "full")
    if f_full > f:
        x, f = x_full, f_full

    b, c, d = (float(v) for v in x)
    params = DesignParams(b, c, d, t)
    active = [k for k, v in constraint_slacks(b, c, d).items() if abs(v) <= ACTIVE_TOL]
    return DesignResult(params, falloff(params, l, theta_lo, theta_hi), active, trace)


@dataclass
class ComparisonTable:
    thetas: np.ndarray
    configs: list
    responses: np.ndarray
    crossings: dict

    def to_dict(self) -> dict:
        return {
            "configs": [{"params": p.as_dict(), "l": l} for p, l in self.configs],
            "crossings": {f"{i},{j}": locs for (i, j), locs in self.crossings.items()},
            "thetas": self.thetas.tolist(),
            "responses": self.responses.tolist(),
        }


def sign_changes(thetas: np.ndarray, diff: np.ndarray, zero_tol: float = 1e-12) -> list:
    """Linearly interpolated locations where ``diff`` changes sign.

    Samples with |diff| <= zero_tol count as zero and are skipped, so
    touching zero without crossing is not reported.
    """
    idx = np.flatnonzero(np.abs(diff) > zero_tol)
    out = []
    for i, j in zip(idx[:-1], idx[1:]):
        if np.sign(diff[i]) != np.sign(diff[j]):
            th = thetas[i] + (thetas[j] - thetas[i]) * diff[i] / (diff[i] - diff[j])
            out.append(float(th))
    return out


def compare(configs: Sequence, theta_grid: int = 512) -> ComparisonTable:
    """Responses of several (params, l) configurations and their pairwise crossings."""
    configs = list(configs)
    if len(configs) < 2:
        raise ValueError("compare needs at least two configurations")
    thetas = np.linspace(0.0, np.pi, theta_grid)
    responses = np.array([equivalent_response(p, thetas, l) for p, l in configs])
    inner = slice(1, -1)
    crossings = {}
    for i in range(len(configs)):
        for j in range(i + 1, len(configs)):
            crossings[(i, j)] = sign_changes(thetas[inner], (responses[i] - responses[j])[inner])
    return ComparisonTable(thetas, configs, responses, crossings)
