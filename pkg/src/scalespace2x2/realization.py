"""Concrete 3-tap filter matrices that realize a :class:`DesignParams`.

Kernels are stored in the "inside-t" convention: one iteration computes
``x_r + t * sum_s f_rs * x_s``, so the symbol of ``f_rs`` is
``delta_rs + t * (alpha e^{-j theta} + beta + gamma e^{j theta})``. The
full-update kernel of a diagonal filter is ``delta + t * inside``; for
``f_xx = [1, -2, 1]`` that is ``[t, 1 - 2t, t]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import PositiveD
from .spectral import DesignParams, cross_product, sigma_aa, sigma_xx

SYMMETRY_TOL = 1e-12


class FilterTaps(NamedTuple):
    """3-tap kernel ``[alpha, beta, gamma]`` with ``beta`` at the center.

    ``alpha`` multiplies the sample one step ahead (the e^{-j theta} term of
    the symbol) and ``gamma`` the sample one step behind.
    """

    alpha: float
    beta: float
    gamma: float

    @classmethod
    def zero(cls) -> "FilterTaps":
        return cls(0.0, 0.0, 0.0)

    @property
    def is_symmetric(self) -> bool:
        return abs(self.alpha - self.gamma) <= SYMMETRY_TOL

    @property
    def is_antisymmetric(self) -> bool:
        return abs(self.alpha + self.gamma) <= SYMMETRY_TOL and abs(self.beta) <= SYMMETRY_TOL

    def full_update(self, t: float, is_diagonal: bool) -> "FilterTaps":
        """Kernel applied per step once the identity term is folded in."""
        return FilterTaps(t * self.alpha, (1.0 if is_diagonal else 0.0) + t * self.beta, t * self.gamma)


@dataclass(frozen=True)
class MatrixOfFilters:
    """P x P grid of 3-tap filters; ``taps[r][s]`` feeds channel s into channel r."""

    taps: tuple = field()

    def __post_init__(self):
        rows = tuple(tuple(FilterTaps(*f) for f in row) for row in self.taps)
        P = len(rows)
        if P < 2 or any(len(row) != P for row in rows):
            raise ValueError("a matrix of filters must be a full P x P grid with P >= 2")
        object.__setattr__(self, "taps", rows)

    @property
    def order(self) -> int:
        return len(self.taps)

    def tap_matrix(self, offset: int) -> np.ndarray:
        """B_i: the P x P matrix of the taps at ``offset`` in {-1, 0, 1}.

        Offset -1 collects the alphas, 0 the betas and +1 the gammas.
        """
        index = {-1: 0, 0: 1, 1: 2}[offset]
        return np.array([[f[index] for f in row] for row in self.taps], dtype=float)

    def symbol(self, t: float, theta: float) -> np.ndarray:
        """The P x P symbol matrix H(theta) = I + t * sum_i B_i e^{j i theta}."""
        H = t * (
            self.tap_matrix(-1) * np.exp(-1j * theta)
            + self.tap_matrix(0)
            + self.tap_matrix(1) * np.exp(1j * theta)
        )
        return np.eye(self.order) + H

    def to_dict(self) -> dict:
        return {"order": self.order, "taps": [[list(f) for f in row] for row in self.taps]}


def _check_d(p: DesignParams):
    if p.d > 0:
        raise PositiveD(f"d = {p.d} > 0 has no real anti-symmetric cross-filter pair")


def _diagonal_filters(p: DesignParams):
    return FilterTaps(1.0, -2.0, 1.0), FilterTaps(p.c, -2.0 * p.b, p.c)


def realize_balanced(p: DesignParams) -> MatrixOfFilters:
    """Cross filters with equal magnitude, ``+-sqrt(-d)``."""
    _check_d(p)
    f_xx, f_aa = _diagonal_filters(p)
    r = np.sqrt(-p.d)
    f_ax = FilterTaps(r, 0.0, -r)
    f_xa = FilterTaps(-r, 0.0, r)
    return MatrixOfFilters(((f_xx, f_xa), (f_ax, f_aa)))


def realize_multiplier_free_cross(p: DesignParams) -> MatrixOfFilters:
    """Cross filters ``f_ax = [1, 0, -1]`` and ``f_xa = [d, 0, -d]``.

    One cross filter is a plain difference, which needs no multiplier.
    """
    _check_d(p)
    f_xx, f_aa = _diagonal_filters(p)
    f_ax = FilterTaps(1.0, 0.0, -1.0)
    f_xa = FilterTaps(p.d, 0.0, -p.d) if p.d != 0 else FilterTaps.zero()
    return MatrixOfFilters(((f_xx, f_xa), (f_ax, f_aa)))


def taps_to_sigma(f: Sequence[float], t: float, is_diagonal: bool, theta):
    alpha, beta, gamma = f
    delta = 1.0 if is_diagonal else 0.0
    return delta + t * (alpha * np.exp(-1j * theta) + beta + gamma * np.exp(1j * theta))


@dataclass
class RealizationReport:
    passed: bool
    max_errors: dict
    diagnostics: list

    def to_dict(self) -> dict:
        return {"passed": self.passed, "max_errors": self.max_errors, "diagnostics": self.diagnostics}


def verify_realization(
    m: MatrixOfFilters, p: DesignParams, grid_size: int = 256, tol: float = 1e-12
) -> RealizationReport:
    """Check that the taps of ``m`` reproduce the closed-form symbols of ``p``.

    Failures are returned as report entries, never raised.
    """
    if m.order != 2:
        raise ValueError(f"closed-form symbols exist only for order 2, got {m.order}")
    thetas = np.linspace(0.0, np.pi, grid_size)
    (f_xx, f_xa), (f_ax, f_aa) = m.taps
    s_xx = taps_to_sigma(f_xx, p.t, True, thetas)
    s_aa = taps_to_sigma(f_aa, p.t, True, thetas)
    prod = taps_to_sigma(f_xa, p.t, False, thetas) * taps_to_sigma(f_ax, p.t, False, thetas)

    errors = {
        "sigma_xx": float(np.max(np.abs(s_xx - sigma_xx(p, thetas)))),
        "sigma_aa": float(np.max(np.abs(s_aa - sigma_aa(p, thetas)))),
        "cross": float(np.max(np.abs(prod - cross_product(p, thetas)))),
    }
    diagnostics = [f"{name} deviates by {err:.3e}" for name, err in errors.items() if err > tol]
    for name, f in (("f_xx", f_xx), ("f_aa", f_aa)):
        if not f.is_symmetric:
            diagnostics.append(f"{name} is not symmetric (alpha={f.alpha}, gamma={f.gamma}); response not real")
    cross_pair = (f_xa.is_symmetric and f_ax.is_symmetric) or (f_xa.is_antisymmetric and f_ax.is_antisymmetric)
    if not cross_pair:
        diagnostics.append("f_xa and f_ax must be both symmetric or both anti-symmetric")
    return RealizationReport(not diagnostics, errors, diagnostics)
