"""Optimization machinery over coin sequences.

Exhaustive search over all 2^T bit strings, simulated annealing over
(gamma0, gamma1, bits), and the coin-angle landscape scan. The exhaustive
paths evaluate the channel fidelity against the fully depolarizing target
directly from the Kraus blocks of the walk unitary, which is algebraically
identical to the tomography route in the channel module; the equality of
the two routes is asserted by tests, not assumed here.

Enumeration is vectorized: batches of bit strings evolve together, and the
full 2^T sweep composes precomputed half-sequence evolutions through a
position-space convolution (evaluated by FFT), cutting the per-string cost
to the channel reconstruction alone. Workers partition the bit-string
range; partial results are merged in ascending bit-string order so the
outcome is independent of the worker count. The WALKMEG_THREADS
environment variable caps the worker pool.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .coins import rotation_coin
from .walk import CoinSequence

__all__ = [
    "ResourceLimitError",
    "SearchResult",
    "AnnealConfig",
    "AnnealResult",
    "LandscapePoint",
    "ClosureRow",
    "brute_force",
    "anneal",
    "landscape_scan",
    "extension_closure_report",
    "worker_count",
]

BRUTE_FORCE_MAX_T = 24
LANDSCAPE_MAX_T = 12

_SPLIT_THRESHOLD = 14  # below this a flat batched sweep is faster
_CHUNK = 1 << 13


class ResourceLimitError(RuntimeError):
    """A search was requested beyond the configured resource guard."""


def worker_count(requested: int | None = None) -> int:
    """Effective worker count.

    An explicit request is honored as given; the default is the CPU count.
    Either way the WALKMEG_THREADS environment variable, when set, caps
    the result.
    """
    count = os.cpu_count() or 1 if requested is None else max(1, int(requested))
    env = os.environ.get("WALKMEG_THREADS")
    if env is not None:
        try:
            count = min(count, max(1, int(env)))
        except ValueError:
            raise ValueError(f"WALKMEG_THREADS must be an integer, got {env!r}") from None
    return count


# ---------------------------------------------------------------------------
# batched fidelity evaluation
# ---------------------------------------------------------------------------

def _evolve_basis_batch(coin0: np.ndarray, coin1: np.ndarray, bits: np.ndarray) -> np.ndarray:
    """Evolve both coin-basis inputs for a batch of bit rows.

    bits has shape (B, T) with 0/1 entries; the result has shape
    (B, 2, 2, 2T+1) indexed by (row, input basis, coin bit, position).
    """
    n_rows, T = bits.shape
    width = 2 * T + 1
    amp = np.zeros((n_rows, 2, 2, width), dtype=np.complex128)
    amp[:, 0, 0, T] = 1.0
    amp[:, 1, 1, T] = 1.0
    c0 = np.asarray(coin0, dtype=np.complex128)
    c1 = np.asarray(coin1, dtype=np.complex128)
    for t in range(T):
        sel = bits[:, t, None, None]
        coin = np.where(sel == 0, c0[None], c1[None])  # (B, 2, 2)
        up = coin[:, None, 0, 0, None] * amp[:, :, 0, :] + coin[:, None, 0, 1, None] * amp[:, :, 1, :]
        dn = coin[:, None, 1, 0, None] * amp[:, :, 0, :] + coin[:, None, 1, 1, None] * amp[:, :, 1, :]
        nxt = np.zeros_like(amp)
        nxt[:, :, 0, 1:] = up[:, :, :-1]
        nxt[:, :, 1, :-1] = dn[:, :, 1:]
        amp = nxt
    return amp


def _fidelities_from_blocks(amp: np.ndarray, weight: float = 1.0) -> np.ndarray:
    """Depolarizing-target fidelity from batched basis evolutions.

    amp is (B, 2, 2, n) as produced by _evolve_basis_batch, or its Fourier
    transform along the position axis with weight = 1/n_fft. The Kraus
    blocks are K_x[c, c_in] = amp[c_in, c, x]; their Pauli coefficients
    assemble the trace-1 chi matrix, whose eigenvalues give
    F = (sum_i sqrt(lam_i))^2 / 4 against chi = 1/4.
    """
    k00 = amp[:, 0, 0, :]
    k01 = amp[:, 1, 0, :]
    k10 = amp[:, 0, 1, :]
    k11 = amp[:, 1, 1, :]
    coeff = np.stack(
        [
            0.5 * (k00 + k11),
            0.5 * (k01 + k10),
            0.5j * (k01 - k10),
            0.5 * (k00 - k11),
        ],
        axis=-1,
    )  # (B, n, 4)
    chi = np.einsum("bxm,bxn->bmn", coeff, coeff.conj()) * weight
    lam = np.linalg.eigvalsh(chi)
    np.clip(lam, 0.0, None, out=lam)
    return np.square(np.sqrt(lam).sum(axis=-1)) * 0.25


def _bits_matrix(values: np.ndarray, T: int) -> np.ndarray:
    shifts = np.arange(T - 1, -1, -1, dtype=np.uint32)
    return ((values[:, None] >> shifts) & 1).astype(np.int8)


def batch_fidelities(coin0: np.ndarray, coin1: np.ndarray, bits: np.ndarray) -> np.ndarray:
    """Fidelity against the depolarizing target for each bit row."""
    bits = np.asarray(bits)
    if bits.ndim != 2:
        raise ValueError("bits must be a 2d array of 0/1 rows")
    out = np.empty(bits.shape[0])
    for lo in range(0, bits.shape[0], _CHUNK):
        part = bits[lo : lo + _CHUNK]
        out[lo : lo + part.shape[0]] = _fidelities_from_blocks(
            _evolve_basis_batch(coin0, coin1, part)
        )
    return out


def _enumerate_range_flat(coin0, coin1, T: int, lo: int, hi: int) -> np.ndarray:
    out = np.empty(hi - lo)
    for start in range(lo, hi, _CHUNK):
        stop = min(start + _CHUNK, hi)
        values = np.arange(start, stop, dtype=np.uint32)
        blocks = _evolve_basis_batch(coin0, coin1, _bits_matrix(values, T))
        out[start - lo : stop - lo] = _fidelities_from_blocks(blocks)
    return out


def _enumerate_range_split(coin0, coin1, T: int, prefix_lo: int, prefix_hi: int) -> np.ndarray:
    """Fidelities for all strings whose leading bits lie in [prefix_lo, prefix_hi).

    The prefix occupies the high bits, so the result is the contiguous
    slice [prefix_lo * 2^Ts, prefix_hi * 2^Ts) of the full sweep. Prefix
    states and suffix transfer operators are evolved once; translation
    invariance turns their composition into a position convolution, done
    via FFT. Fidelities come straight from the frequency-domain Kraus
    blocks (Parseval), skipping the inverse transform.
    """
    t_pre = T // 2
    t_suf = T - t_pre
    n_suf = 1 << t_suf
    n_fft = 1 << max(2 * T + 1 - 1, 1).bit_length()

    pre_vals = np.arange(prefix_lo, prefix_hi, dtype=np.uint32)
    pre = _evolve_basis_batch(coin0, coin1, _bits_matrix(pre_vals, t_pre))
    suf_vals = np.arange(n_suf, dtype=np.uint32)
    suf = _evolve_basis_batch(coin0, coin1, _bits_matrix(suf_vals, t_suf))
    pre_f = np.fft.fft(pre, n=n_fft, axis=-1)  # (P, 2in, 2mid, nf)
    suf_f = np.fft.fft(suf, n=n_fft, axis=-1)  # (S, 2mid, 2out, nf)

    out = np.empty((prefix_hi - prefix_lo) * n_suf)
    for i in range(pre_f.shape[0]):
        total = (
            pre_f[i, :, 0, :][None, :, None, :] * suf_f[:, 0, :, :][:, None, :, :]
            + pre_f[i, :, 1, :][None, :, None, :] * suf_f[:, 1, :, :][:, None, :, :]
        )  # (S, 2in, 2out, nf)
        out[i * n_suf : (i + 1) * n_suf] = _fidelities_from_blocks(total, weight=1.0 / n_fft)
    return out


def _enumerate_worker(args) -> np.ndarray:
    coin0, coin1, T, lo, hi, split = args
    if split:
        return _enumerate_range_split(coin0, coin1, T, lo, hi)
    return _enumerate_range_flat(coin0, coin1, T, lo, hi)


def enumerate_fidelities(
    coin0: np.ndarray, coin1: np.ndarray, T: int, workers: int | None = None
) -> np.ndarray:
    """Fidelity of every bit string of length T, indexed by its integer value.

    Bit strings map to indices with the first step as the most significant
    bit. Worker partitions are contiguous index ranges concatenated in
    ascending order, so any worker count yields the identical array.
    """
    split = T >= _SPLIT_THRESHOLD
    n_jobs = worker_count(workers)
    if split:
        span = 1 << (T // 2)
    else:
        span = 1 << T
    if n_jobs <= 1 or span < 4 * n_jobs:
        return _enumerate_worker((coin0, coin1, T, 0, span, split))

    import multiprocessing

    bounds = np.linspace(0, span, n_jobs + 1, dtype=int)
    jobs = [
        (np.asarray(coin0), np.asarray(coin1), T, int(lo), int(hi), split)
        for lo, hi in zip(bounds[:-1], bounds[1:])
        if hi > lo
    ]
    with multiprocessing.Pool(len(jobs)) as pool:
        parts = pool.map(_enumerate_worker, jobs)
    return np.concatenate(parts)


# ---------------------------------------------------------------------------
# exhaustive search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exhaustive sweep over bit strings."""

    best_fidelity: float
    optimal_bits: tuple[str, ...]
    count_optimal: int
    evaluations: int

    def __post_init__(self):
        if not 0.0 <= self.best_fidelity <= 1.0:
            raise ValueError("best fidelity must lie in [0, 1]")
        if self.count_optimal != len(self.optimal_bits):
            raise ValueError("count_optimal must match the collected strings")


def brute_force(
    T: int,
    coin0: np.ndarray,
    coin1: np.ndarray,
    tolerance: float = 1e-9,
    relative_to: str = "unity",
    workers: int | None = None,
) -> SearchResult:
    """Evaluate every bit string of length T and collect the optimal set.

    With relative_to="unity" (the default) a string is optimal when its
    fidelity exceeds 1 - tolerance; with "best" the threshold hangs off
    the observed maximum instead. Deterministic for any worker split.
    """
    T = int(T)
    if not 1 <= T <= BRUTE_FORCE_MAX_T:
        raise ResourceLimitError(
            f"brute force supports 1 <= T <= {BRUTE_FORCE_MAX_T}, got {T}"
        )
    if not tolerance > 0.0:
        raise ValueError("tolerance must be positive")
    if relative_to not in ("unity", "best"):
        raise ValueError("relative_to must be 'unity' or 'best'")
    fid = enumerate_fidelities(coin0, coin1, T, workers)
    best = float(fid.max())
    threshold = (1.0 if relative_to == "unity" else best) - tolerance
    hits = np.nonzero(fid > threshold)[0]
    return SearchResult(
        best_fidelity=best,
        optimal_bits=tuple(format(int(v), f"0{T}b") for v in hits),
        count_optimal=int(hits.size),
        evaluations=int(fid.size),
    )


def optimal_counts(
    T: int,
    coin0: np.ndarray,
    coin1: np.ndarray,
    tolerances: tuple[float, ...] = (1e-6, 1e-9, 1e-12),
    workers: int | None = None,
) -> dict[float, int]:
    """Number of strings with fidelity above 1 - tol for several tolerances."""
    fid = enumerate_fidelities(coin0, coin1, int(T), workers)
    return {float(tol): int((fid > 1.0 - tol).sum()) for tol in tolerances}


# ---------------------------------------------------------------------------
# simulated annealing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AnnealConfig:
    """Schedule and move set for the annealing search.

    Geometric cooling: temperature starts at initial_temperature, is
    multiplied by cooling_rate after steps_per_temperature proposals, and
    the restart stops at the relative temperature floor. Angle proposals
    are Gaussian with a deviation that shrinks with the temperature;
    bit proposals flip one position. The seed fixes every stream.
    """

    initial_temperature: float = 0.2
    cooling_rate: float = 0.95
    steps_per_temperature: int = 200
    restarts: int = 10
    seed: int = 0
    flip_moves: bool = True
    angle_moves: bool = True
    angle_sigma: float = 0.4

    def __post_init__(self):
        if not self.initial_temperature > 0.0:
            raise ValueError("initial_temperature must be positive")
        if not 0.0 < self.cooling_rate < 1.0:
            raise ValueError("cooling_rate must lie in (0, 1)")
        if self.steps_per_temperature < 1 or self.restarts < 1:
            raise ValueError("steps_per_temperature and restarts must be >= 1")
        if not self.flip_moves and not self.angle_moves:
            raise ValueError("at least one move type must be enabled")
        if not self.angle_sigma > 0.0:
            raise ValueError("angle_sigma must be positive")


class AnnealResult(NamedTuple):
    gamma0: float
    gamma1: float
    bits: str
    fidelity: float


_TEMPERATURE_FLOOR = 1e-6  # relative to the initial temperature
_STOP_COST = 1e-8
_MIN_SIGMA = 1e-4


def _anneal_cost(coin_cache: dict, gamma0: float, gamma1: float, bits: np.ndarray) -> float:
    key = (round(gamma0, 15), round(gamma1, 15))
    coins = coin_cache.get(key)
    if coins is None:
        coins = (rotation_coin(gamma0), rotation_coin(gamma1))
        coin_cache[key] = coins
    fid = _fidelities_from_blocks(_evolve_basis_batch(coins[0], coins[1], bits[None, :]))
    return 1.0 - float(fid[0])


def _anneal_restart(
    T: int,
    config: AnnealConfig,
    optimize_angles: bool,
    gamma0: float,
    gamma1: float,
    rng: np.random.Generator,
    fixed_coins: tuple[np.ndarray, np.ndarray] | None = None,
) -> AnnealResult:
    if fixed_coins is not None:
        coin_cache = {(round(gamma0, 15), round(gamma1, 15)): fixed_coins}
    else:
        coin_cache = {}
    bits = rng.integers(0, 2, T, dtype=np.int8)
    g = [float(gamma0), float(gamma1)]
    cost = _anneal_cost(coin_cache, g[0], g[1], bits)
    best_bits, best_g, best_cost = bits.copy(), list(g), cost

    angle_moves = optimize_angles and config.angle_moves
    flip_moves = config.flip_moves or not angle_moves
    temperature = config.initial_temperature
    floor = config.initial_temperature * _TEMPERATURE_FLOOR
    half_pi = math.pi / 2.0

    while temperature > floor and best_cost > _STOP_COST:
        sigma = max(config.angle_sigma * math.sqrt(temperature / config.initial_temperature), _MIN_SIGMA)
        for _ in range(config.steps_per_temperature):
            cand_bits = bits
            cand_g = g
            if angle_moves and (not flip_moves or rng.random() < 0.5):
                which = int(rng.integers(0, 2))
                cand_g = list(g)
                cand_g[which] = float(
                    np.clip(g[which] + sigma * rng.standard_normal(), 0.0, half_pi)
                )
            else:
                flip = int(rng.integers(0, T))
                cand_bits = bits.copy()
                cand_bits[flip] ^= 1
            cand_cost = _anneal_cost(coin_cache, cand_g[0], cand_g[1], cand_bits)
            delta = cand_cost - cost
            if delta <= 0.0 or rng.random() < math.exp(-delta / temperature):
                bits, g, cost = cand_bits, cand_g, cand_cost
                if cost < best_cost:
                    best_bits, best_g, best_cost = bits.copy(), list(g), cost
                    if best_cost <= _STOP_COST:
                        break
        temperature *= config.cooling_rate

    return AnnealResult(
        gamma0=best_g[0],
        gamma1=best_g[1],
        bits="".join("01"[b] for b in best_bits),
        fidelity=1.0 - best_cost,
    )


def anneal(
    T: int,
    config: AnnealConfig,
    optimize_angles: bool = True,
    gamma0: float = math.pi / 4.0,
    gamma1: float = 0.0,
    coins: tuple[np.ndarray, np.ndarray] | None = None,
) -> AnnealResult:
    """Minimize 1 - fidelity over (gamma0, gamma1, bits) by annealing.

    Runs config.restarts independent restarts from rng streams spawned off
    the single seed and returns the best result; ties break toward the
    earliest restart, so the outcome is reproducible. When optimize_angles
    is false the angles stay fixed at (gamma0, gamma1) and only bit flips
    are proposed. Passing an explicit coin pair also fixes the coins (the
    reported angles are then just the inputs echoed back); this covers
    named coins outside the one-parameter family, like the identity.
    """
    T = int(T)
    if T < 1:
        raise ValueError("T must be >= 1")
    if coins is not None:
        if optimize_angles:
            raise ValueError("cannot optimize angles with explicit coins")
        coins = (np.asarray(coins[0]), np.asarray(coins[1]))
    streams = np.random.SeedSequence(config.seed).spawn(config.restarts)
    best: AnnealResult | None = None
    for stream in streams:
        result = _anneal_restart(
            T,
            config,
            optimize_angles,
            gamma0,
            gamma1,
            np.random.default_rng(stream),
            fixed_coins=coins,
        )
        if best is None or result.fidelity > best.fidelity:
            best = result
    return best


# ---------------------------------------------------------------------------
# angle landscape
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LandscapePoint:
    """Best fidelity over all bit strings at a fixed coin-angle pair."""

    gamma0: float
    gamma1: float
    best_fidelity: float

    def __post_init__(self):
        if not 0.0 <= self.best_fidelity <= 1.0:
            raise ValueError("fidelity must lie in [0, 1]")


def landscape_scan(
    T: int, grid, workers: int | None = None
) -> list[LandscapePoint]:
    """Per-point brute-force maxima over a (gamma0, gamma1) grid.

    Every grid pair is scanned over all 2^T bit strings. Guarded at
    T <= 12 because the cost is len(grid)^2 * 2^T evaluations.
    """
    T = int(T)
    if not 1 <= T <= LANDSCAPE_MAX_T:
        raise ResourceLimitError(
            f"landscape scan supports 1 <= T <= {LANDSCAPE_MAX_T}, got {T}"
        )
    gammas = [float(g) for g in grid]
    if not gammas:
        raise ValueError("grid must contain at least one angle")
    if min(gammas) < 0.0 or max(gammas) > math.pi / 2.0 + 1e-12:
        raise ValueError("grid angles must lie in [0, pi/2]")
    coins = {g: rotation_coin(g) for g in gammas}
    points = []
    for g0 in gammas:
        for g1 in gammas:
            fid = enumerate_fidelities(coins[g0], coins[g1], T, workers)
            points.append(LandscapePoint(g0, g1, float(fid.max())))
    return points


# ---------------------------------------------------------------------------
# structural reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosureRow:
    """How the optimal set at T fares under appending a single 1."""

    T: int
    n_optimal: int
    n_preserved: int

    @property
    def n_violations(self) -> int:
        return self.n_optimal - self.n_preserved


def extension_closure_report(
    coin0: np.ndarray,
    coin1: np.ndarray,
    max_T: int = 10,
    tolerance: float = 1e-9,
) -> list[ClosureRow]:
    """Check whether optimal strings stay optimal when the trailing 1-run grows.

    For each T the report counts optimal strings b and how many of the
    extended strings b + "1" are again optimal at T + 1. This is a
    measured property of the optimal sets, reported rather than assumed;
    the extension does fail for some strings.
    """
    max_T = int(max_T)
    if not 1 <= max_T <= LANDSCAPE_MAX_T:
        raise ResourceLimitError(
            f"closure report supports 1 <= max_T <= {LANDSCAPE_MAX_T}, got {max_T}"
        )
    rows = []
    fid_here = enumerate_fidelities(coin0, coin1, 1)
    for T in range(1, max_T + 1):
        fid_next = enumerate_fidelities(coin0, coin1, T + 1)
        optimal = np.nonzero(fid_here > 1.0 - tolerance)[0]
        extended = (optimal.astype(np.int64) << 1) | 1
        preserved = int((fid_next[extended] > 1.0 - tolerance).sum())
        rows.append(ClosureRow(T=T, n_optimal=int(optimal.size), n_preserved=preserved))
        fid_here = fid_next
    return rows
