"""Time-domain ground truth for a P x P matrix of filters on circular signals.

Nothing in this module uses the closed-form spectral formulas; it is the
oracle those formulas are checked against.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEigenbasis, DimensionMismatch, SizeLimit
from .realization import MatrixOfFilters

MAX_DENSE_SIZE = 1024
CLUSTER_TOL = 1e-9
COND_LIMIT = 1e12


@dataclass(frozen=True)
class SystemState:
    """Primary channel (row 0) and auxiliary channels of the system at one iteration."""

    channels: np.ndarray
    iteration: int = 0

    def __post_init__(self):
        ch = np.atleast_2d(np.asarray(self.channels, dtype=float))
        if ch.shape[1] < 3:
            raise ValueError(f"signals need at least 3 samples, got {ch.shape[1]}")
        object.__setattr__(self, "channels", ch)

    @classmethod
    def from_primary(cls, x, order: int = 2) -> "SystemState":
        """Start state with the given primary signal and zero auxiliaries."""
        x = np.asarray(x, dtype=float)
        channels = np.zeros((order, x.size))
        channels[0] = x
        return cls(channels, 0)

    @property
    def primary(self) -> np.ndarray:
        return self.channels[0]


@dataclass(frozen=True)
class EquivalentFilter:
    coefficients: np.ndarray
    iteration: int

    def frequency_response(self) -> np.ndarray:
        return dft(self.coefficients)


def circular_filter(f, x: np.ndarray) -> np.ndarray:
    """y[n] = alpha x[n+1] + beta x[n] + gamma x[n-1], indices mod N."""
    alpha, beta, gamma = f
    return alpha * np.roll(x, -1) + beta * x + gamma * np.roll(x, 1)


def step(s: SystemState, m: MatrixOfFilters, t: float, convention: str = "increment") -> SystemState:
    """Apply the matrix of filters once.

    ``convention="increment"`` computes ``x_r + t * sum_s f_rs * x_s``. The
    alternative ``"convex"`` uses ``(1 - t) x_r`` as the leading term; it is
    for experimentation only and the closed-form results do not cover it.
    """
    P = m.order
    if s.channels.shape[0] != P:
        raise DimensionMismatch(f"state has {s.channels.shape[0]} channels, matrix has order {P}")
    if convention == "increment":
        lead = 1.0
    elif convention == "convex":
        lead = 1.0 - t
    else:
        raise ValueError(f"unknown convention {convention!r}")
    out = np.empty_like(s.channels)
    for r in range(P):
        acc = np.zeros(s.channels.shape[1])
        for c in range(P):
            acc += circular_filter(m.taps[r][c], s.channels[c])
        out[r] = lead * s.channels[r] + t * acc
    return SystemState(out, s.iteration + 1)


def iterate(x, m: MatrixOfFilters, t: float, l: int, convention: str = "increment") -> np.ndarray:
    """Primary signal after ``l`` steps, starting from zero auxiliaries."""
    if l < 0:
        raise ValueError(f"iteration count must be non-negative, got {l}")
    state = SystemState.from_primary(x, m.order)
    for _ in range(l):
        state = step(state, m, t, convention)
    return state.primary


def equivalent_filter(m: MatrixOfFilters, t: float, l: int, N: int) -> EquivalentFilter:
    """Impulse response of the primary channel after ``l`` iterations.

    The kernel wraps around once ``N < 2l + 1``; its DFT is still the exact
    response at the frequencies 2 pi k / N.
    """
    impulse = np.zeros(N)
    impulse[0] = 1.0
    return EquivalentFilter(iterate(impulse, m, t, l), l)


def _circulant(f, N: int) -> np.ndarray:
    alpha, beta, gamma = f
    C = np.zeros((N, N))
    n = np.arange(N)
    C[n, (n + 1) % N] += alpha
    C[n, n] += beta
    C[n, (n - 1) % N] += gamma
    return C


def system_matrix(m: MatrixOfFilters, t: float, N: int) -> np.ndarray:
    """Dense NP x NP matrix of one iteration (identity plus t times the filter blocks)."""
    P = m.order
    M = np.eye(N * P)
    for r in range(P):
        for s in range(P):
            M[r * N:(r + 1) * N, s * N:(s + 1) * N] += t * _circulant(m.taps[r][s], N)
    return M


def circulant_power_oracle(m: MatrixOfFilters, t: float, l: int, N: int) -> np.ndarray:
    """Top-left N x N block of M**l, by repeated dense multiplication."""
    if N * m.order > MAX_DENSE_SIZE:
        raise SizeLimit(f"N*P = {N * m.order} exceeds {MAX_DENSE_SIZE}")
    if l < 1:
        raise ValueError(f"l must be at least 1, got {l}")
    M = system_matrix(m, t, N)
    power = M.copy()
    for _ in range(l - 1):
        power = power @ M
    return power[:N, :N]


@dataclass(frozen=True)
class PerFrequencyEigen:
    """Eigenvalues and mixing coefficients of H(theta_k), one row per bin.

    Columns are sorted by ascending real part, so for order 2 column 0 is
    lambda_1 and column 1 is lambda_2.
    """

    thetas: np.ndarray
    eigenvalues: np.ndarray
    mixing: np.ndarray

    def response(self, l: int) -> np.ndarray:
        return np.sum(self.mixing * self.eigenvalues**l, axis=1)


def _realify(a: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    return a.real.copy() if np.all(np.abs(a.imag) <= tol) else a


def per_frequency_eigen(m: MatrixOfFilters, t: float, N: int) -> PerFrequencyEigen:
    P = m.order
    if P > 4:
        raise ValueError(f"per-frequency eigen-decomposition supports P <= 4, got {P}")
    thetas = 2.0 * np.pi * np.arange(N) / N
    lams = np.empty((N, P), dtype=complex)
    mus = np.empty((N, P), dtype=complex)
    for k, theta in enumerate(thetas):
        w, V = np.linalg.eig(m.symbol(t, theta))
        order = np.lexsort((w.imag, w.real))
        w, V = w[order], V[:, order]
        distinct = np.all(np.abs(w[:, None] - w[None, :]) + np.eye(P) > CLUSTER_TOL)
        if np.linalg.cond(V) > COND_LIMIT:
            kind = "distinct" if distinct else "repeated (defective)"
            raise DegenerateEigenbasis(f"singular eigenbasis with {kind} eigenvalues at theta={theta:.6g}")
        g = V[0, :]
        g_tilde = np.linalg.inv(V)[:, 0]
        mu = g * g_tilde
        # Within a cluster of equal eigenvalues only the total weight is
        # defined; it is split evenly (1/2 each for a repeated pair).
        seen = np.zeros(P, dtype=bool)
        for i in range(P):
            if seen[i]:
                continue
            members = np.abs(w - w[i]) <= CLUSTER_TOL * max(1.0, abs(w[i]))
            seen |= members
            mu[members] = mu[members].sum() / members.sum()
        if abs(mu.sum() - 1.0) > 1e-8:
            raise DegenerateEigenbasis(f"mixing coefficients sum to {mu.sum()} at theta={theta:.6g}")
        lams[k], mus[k] = w, mu
    return PerFrequencyEigen(thetas, _realify(lams), _realify(mus))


def dft(s) -> np.ndarray:
    """N-point DFT with kernel e^{+j 2 pi r s / N}: X_k = sum_n x_n e^{j 2 pi k n / N}."""
    s = np.asarray(s)
    return np.fft.ifft(s) * s.shape[-1]
