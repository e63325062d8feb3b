"""Entanglement and spreading metrics for walk states.

Covers the von Neumann entropy of the reduced coin state (log base 2, so 1
means maximal walker-coin entanglement), its ensemble statistics over a
deterministic sphere sample of initial states, the normalized Shannon
entropy of the position distribution (natural log over ln(T+1)), and the
second moment with its log-log diffusion-exponent fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .sphere import sphere_angles
from .walk import (
    CoinSequence,
    InitialCoinState,
    ProbabilityDistribution,
    evolve,
    initial_state,
    position_distribution,
    reduced_coin_state,
    step,
)

__all__ = [
    "EnsembleStatistics",
    "MomentSeries",
    "entanglement_entropy",
    "average_entanglement",
    "ensemble_entropies",
    "shannon_entropy",
    "second_moment",
    "walk_moment_series",
    "fit_diffusion_exponent",
]

DEFAULT_ENSEMBLE = 296


def entanglement_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy -sum lam log2 lam of a qubit density matrix.

    0 for pure states, 1 for the maximally mixed state. The input must be
    Hermitian, unit trace and positive semidefinite within 1e-8.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (2, 2):
        raise ValueError(f"density matrix must be 2x2, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-8:
        raise ValueError("density matrix is not Hermitian within 1e-8")
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise ValueError("density matrix trace differs from 1")
    lam = np.linalg.eigvalsh(rho)
    if float(lam.min()) < -1e-8:
        raise ValueError(f"density matrix eigenvalue {lam.min():.3e} is negative")
    lam = np.clip(lam, 0.0, 1.0)
    nz = lam[lam > 0.0]
    s = float(-(nz * np.log2(nz)).sum())
    return min(max(s, 0.0), 1.0)


@dataclass(frozen=True)
class EnsembleStatistics:
    """Mean and population spread of a metric over n initial states."""

    mean: float
    std_dev: float
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ensemble size must be >= 1")
        if self.std_dev < 0.0:
            raise ValueError("standard deviation cannot be negative")


def ensemble_entropies(seq: CoinSequence, ensemble_size: int = DEFAULT_ENSEMBLE) -> np.ndarray:
    """Final-state entanglement entropy for each sphere-lattice initial state."""
    ensemble_size = int(ensemble_size)
    if ensemble_size < 1:
        raise ValueError("ensemble size must be >= 1")
    thetas, phis = sphere_angles(ensemble_size)
    out = np.empty(ensemble_size)
    for i in range(ensemble_size):
        state = evolve(InitialCoinState(float(thetas[i]), float(phis[i])), seq)
        out[i] = entanglement_entropy(reduced_coin_state(state))
    return out


def average_entanglement(
    seq: CoinSequence, ensemble_size: int = DEFAULT_ENSEMBLE
) -> EnsembleStatistics:
    """Mean/std of the final entanglement entropy over the state ensemble.

    The ensemble is the deterministic Fibonacci sphere lattice, so results
    are reproducible run to run. A unit-fidelity sequence gives mean 1
    with vanishing spread.
    """
    values = ensemble_entropies(seq, ensemble_size)
    return EnsembleStatistics(
        mean=float(values.mean()),
        std_dev=float(values.std()),
        n=int(values.size),
    )


def shannon_entropy(dist: ProbabilityDistribution | np.ndarray, T: int) -> float:
    """Normalized Shannon entropy (-sum P ln P) / ln(T+1), with 0 ln 0 = 0.

    Equals 1 for the uniform distribution over the T+1 reachable sites.
    """
    T = int(T)
    if T < 1:
        raise ValueError("T must be >= 1")
    p = dist.probabilities if isinstance(dist, ProbabilityDistribution) else np.asarray(dist, dtype=float)
    nz = p[p > 0.0]
    return float(-(nz * np.log(nz)).sum() / math.log(T + 1))


def second_moment(dist: ProbabilityDistribution) -> float:
    """Second moment m = sum_x x^2 P(x) of the position distribution."""
    x = dist.positions.astype(float)
    return float((x * x * dist.probabilities).sum())


@dataclass(frozen=True)
class MomentSeries:
    """Second moments m(t) for t = 1..T with a power-law fit m ~ c t^alpha."""

    values: np.ndarray = field(repr=False)
    alpha: float = 0.0
    prefactor: float = 0.0

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("moment series must be a nonempty 1d array")
        t = np.arange(1, values.size + 1, dtype=float)
        if np.any(values > t * t + 1e-9):
            raise ValueError("second moment exceeds the light-cone bound t^2")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def T(self) -> int:
        return int(self.values.size)


def fit_diffusion_exponent(series: MomentSeries | np.ndarray) -> float:
    """Least-squares slope of ln m(t) against ln t.

    2 for ballistic spreading, 1 for diffusive; strictly between for
    superdiffusive walks. Requires at least three positive values.
    """
    values = series.values if isinstance(series, MomentSeries) else np.asarray(series, dtype=float)
    if values.size < 3:
        raise ValueError("need at least three points to fit an exponent")
    if np.any(values <= 0.0):
        raise ValueError("second moments must be positive for a log-log fit")
    t = np.arange(1, values.size + 1, dtype=float)
    slope, _ = np.polyfit(np.log(t), np.log(values), 1)
    return float(slope)


def walk_moment_series(seq: CoinSequence, init: InitialCoinState) -> MomentSeries:
    """Evolve stepwise and collect m(t) for t = 1..T, with the fitted exponent."""
    state = initial_state(init)
    values = np.empty(seq.T)
    for t in range(1, seq.T + 1):
        state = step(state, seq.coin_at(t))
        values[t - 1] = second_moment(position_distribution(state))
    if seq.T >= 3 and np.all(values > 0.0):
        t = np.arange(1, seq.T + 1, dtype=float)
        slope, intercept = np.polyfit(np.log(t), np.log(values), 1)
        return MomentSeries(values=values, alpha=float(slope), prefactor=float(np.exp(intercept)))
    return MomentSeries(values=values)
