"""Closed-form spectral algebra of the 2x2 matrix of 3-tap filters.

Every function here is vectorized over ``theta``: pass a float to get a float
back, pass an array to get an array of the same shape.

The symbols of the four filters are

    sigma_xx = (1 - 2t) + 2t cos(theta)
    sigma_aa = (1 - 2bt) + 2tc cos(theta)
    sigma_xa * sigma_ax = -4 t^2 d sin(theta)^2

and the equivalent filter of the primary channel after ``l`` iterations has
frequency response ``mu1 * lambda1**l + mu2 * lambda2**l`` where the lambdas
are the eigenvalues of the symbol matrix and the mus are the mixing
coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import NegativeDiscriminant, NonRealResponse

ArrayLike = Union[float, np.ndarray]

#: Below this value of sqrt(Delta) the two eigenvalues are treated as equal
#: and both mixing coefficients are set to 1/2.
DEGENERACY_EPS = 1e-12
#: Discriminants in [-DISCRIMINANT_TOL, 0) are rounding noise and clipped to 0.
DISCRIMINANT_TOL = 1e-12
IMAG_TOL = 1e-10


@dataclass(frozen=True)
class DesignParams:
    """Parameters (b, c, d, t) of a candidate scale-space kernel.

    ``b`` and ``c`` set the auxiliary self-filter ``[c, -2b, c]``, ``d`` is the
    product of the leading taps of the two cross filters and ``t`` is the
    step size of one iteration.
    """

    b: float
    c: float
    d: float
    t: float = 0.25

    def __post_init__(self):
        if not 0.0 <= self.t <= 0.25:
            raise ValueError(f"t must lie in [0, 1/4], got {self.t}")

    def replace(self, **changes) -> "DesignParams":
        fields = dict(b=self.b, c=self.c, d=self.d, t=self.t)
        fields.update(changes)
        return DesignParams(**fields)

    def as_dict(self) -> dict:
        return dict(b=self.b, c=self.c, d=self.d, t=self.t)


@dataclass(frozen=True)
class SpectralPoint:
    """All per-frequency quantities at ``theta`` (scalars or equal-shape arrays)."""

    theta: ArrayLike
    sigma_xx: ArrayLike
    sigma_aa: ArrayLike
    cross: ArrayLike
    phi: ArrayLike
    psi: ArrayLike
    delta: ArrayLike
    lambda1: ArrayLike
    lambda2: ArrayLike
    mu1: ArrayLike
    mu2: ArrayLike

    @property
    def sqrt_delta(self) -> ArrayLike:
        return np.sqrt(self.delta)

    def response(self, l: int) -> ArrayLike:
        return _mix(self.mu1, self.mu2, self.lambda1, self.lambda2, l)


@dataclass(frozen=True)
class ResponseCurve:
    iteration: int
    thetas: np.ndarray
    values: np.ndarray


def _scalar_or_array(x):
    x = np.asarray(x)
    return x.item() if x.ndim == 0 else x


def sigma_xx(p: DesignParams, theta: ArrayLike) -> ArrayLike:
    return (1.0 - 2.0 * p.t) + 2.0 * p.t * np.cos(theta)


def sigma_aa(p: DesignParams, theta: ArrayLike) -> ArrayLike:
    return (1.0 - 2.0 * p.b * p.t) + 2.0 * p.t * p.c * np.cos(theta)


def cross_product(p: DesignParams, theta: ArrayLike) -> ArrayLike:
    """Product sigma_xa * sigma_ax of the two cross-filter symbols."""
    return -4.0 * p.t**2 * p.d * np.sin(theta) ** 2


def _mix(mu1, mu2, lam1, lam2, l):
    if l < 0:
        raise ValueError(f"iteration count must be non-negative, got {l}")
    if l == 0:
        return _scalar_or_array(np.ones_like(np.asarray(mu1, dtype=float)))
    return mu1 * lam1**l + mu2 * lam2**l


def mixing_coefficients(psi, cross, root):
    """(mu1, mu2) without cancellation; works for real or complex ``root``.

    The coefficient that 1/2 -+ psi/(2 root) would compute by subtraction is
    rewritten as 2 cross / (root (root + |psi|)), so it is exactly zero when
    ``cross`` is. Degenerate points (root ~ 0) get 1/2 each.
    """
    psi = np.asarray(psi, dtype=float)
    degenerate = np.abs(root) < DEGENERACY_EPS
    safe_root = np.where(degenerate, 1.0, root)
    small = 2.0 * cross / (safe_root * (safe_root + np.abs(psi)))
    mu1 = np.where(psi >= 0, small, 1.0 - small)
    mu2 = np.where(psi >= 0, 1.0 - small, small)
    return np.where(degenerate, 0.5, mu1), np.where(degenerate, 0.5, mu2)


def point_from_symbols(theta, s_xx, s_aa, cross) -> SpectralPoint:
    """Eigen-structure of the symbol matrix given its raw symbol values.

    Works for any real ``s_xx``, ``s_aa`` and real product ``cross``, not only
    for the parametric family; raises :class:`NegativeDiscriminant` when the
    eigenvalues are complex.
    """
    s_xx = np.asarray(s_xx, dtype=float)
    s_aa = np.asarray(s_aa, dtype=float)
    cross = np.asarray(cross, dtype=float)
    phi = s_xx + s_aa
    psi = s_xx - s_aa
    delta = psi**2 + 4.0 * cross
    if np.any(delta < -DISCRIMINANT_TOL):
        worst = np.unravel_index(np.argmin(delta), np.shape(delta)) if np.ndim(delta) else ()
        raise NegativeDiscriminant(
            f"discriminant {np.min(delta):.3e} < 0 at theta={np.asarray(theta)[worst]!r}; "
            "eigenvalues are complex"
        )
    delta = np.maximum(delta, 0.0)
    root = np.sqrt(delta)
    mu1, mu2 = mixing_coefficients(psi, cross, root)
    out = dict(
        theta=theta,
        sigma_xx=s_xx,
        sigma_aa=s_aa,
        cross=cross,
        phi=phi,
        psi=psi,
        delta=delta,
        lambda1=(phi - root) / 2.0,
        lambda2=(phi + root) / 2.0,
        mu1=mu1,
        mu2=mu2,
    )
    return SpectralPoint(**{k: _scalar_or_array(v) for k, v in out.items()})


def spectral_point(p: DesignParams, theta: ArrayLike) -> SpectralPoint:
    return point_from_symbols(
        theta, sigma_xx(p, theta), sigma_aa(p, theta), cross_product(p, theta)
    )


def equivalent_response(p: DesignParams, theta: ArrayLike, l: int) -> ArrayLike:
    """Frequency response F^l(theta) of the equivalent filter after ``l`` steps."""
    return spectral_point(p, theta).response(l)


def response_table(p: DesignParams, thetas, iterations) -> np.ndarray:
    """F^l(theta) for every ``l`` in ``iterations`` (rows) and theta (columns)."""
    sp = spectral_point(p, np.asarray(thetas, dtype=float))
    ls = np.asarray(iterations, dtype=int)
    if np.any(ls < 0):
        raise ValueError("iteration counts must be non-negative")
    ls = ls[:, None]
    return sp.mu1 * sp.lambda1**ls + sp.mu2 * sp.lambda2**ls


def gaussian_response(t: float, theta: ArrayLike, l: int) -> ArrayLike:
    """Response of ``l`` linear-diffusion steps, ((1 - 2t) + 2t cos theta)^l.

    ``l`` may be an array that broadcasts against ``theta``.
    """
    if np.any(np.asarray(l) < 0):
        raise ValueError(f"iteration count must be non-negative, got {l}")
    return ((1.0 - 2.0 * t) + 2.0 * t * np.cos(theta)) ** l


def falloff(p: DesignParams, l: int, theta_lo: float, theta_hi: float) -> float:
    """Sharpness of the cut-off: F^l(theta_lo) - F^l(theta_hi)."""
    if not 0.0 <= theta_lo < theta_hi <= np.pi:
        raise ValueError("need 0 <= theta_lo < theta_hi <= pi")
    lo, hi = equivalent_response(p, np.array([theta_lo, theta_hi]), l)
    return float(lo - hi)


def response_curve(p: DesignParams, l: int, grid_size: int = 256) -> ResponseCurve:
    if grid_size < 2:
        raise ValueError(f"grid_size must be at least 2, got {grid_size}")
    thetas = np.linspace(0.0, np.pi, grid_size)
    return ResponseCurve(l, thetas, np.asarray(equivalent_response(p, thetas, l)))


def circulant_equivalent_response(
    row_responses: Sequence[Union[complex, np.ndarray, Callable]],
    P: int,
    theta: ArrayLike,
    l: int,
) -> ArrayLike:
    """Equivalent response of a P x P circulant matrix of filters.

    ``row_responses`` holds the symbols F_1k of the first-row filters, either
    as values already sampled at ``theta`` or as callables of ``theta``. The
    first entry must include the identity term. Every mixing coefficient of a
    circulant system is 1/P, so the response is the mean of lambda_j**l with
    lambda_j = sum_k F_1k * exp(2j*pi*j*k/P).
    """
    if P < 2:
        raise ValueError(f"P must be at least 2, got {P}")
    if len(row_responses) != P:
        raise ValueError(f"expected {P} row responses, got {len(row_responses)}")
    if l < 0:
        raise ValueError(f"iteration count must be non-negative, got {l}")
    rows = np.stack(
        [np.asarray(r(theta) if callable(r) else r, dtype=complex) * np.ones_like(theta, dtype=complex)
         for r in row_responses]
    )
    jk = np.outer(np.arange(P), np.arange(P))
    roots = np.exp(2j * np.pi * jk / P)
    lambdas = np.tensordot(roots, rows, axes=(1, 0))
    value = np.mean(lambdas**l, axis=0)
    scale = np.maximum(1.0, np.abs(value))
    if np.any(np.abs(value.imag) > IMAG_TOL * scale):
        raise NonRealResponse(
            f"imaginary residue {np.max(np.abs(value.imag)):.3e}; is the first row symmetric?"
        )
    return _scalar_or_array(value.real)
