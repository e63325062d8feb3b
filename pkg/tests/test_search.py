"""Exhaustive search, annealing and structural reports."""

import math

import numpy as np
import pytest

from walkmeg import (
    HADAMARD,
    IDENTITY,
    AnnealConfig,
    CoinSequence,
    ResourceLimitError,
    anneal,
    brute_force,
    enumerate_fidelities,
    extension_closure_report,
    landscape_scan,
    optimal_counts,
    rotation_coin,
    sequence_fidelity,
    worker_count,
)
from walkmeg.search import batch_fidelities

OPTIMAL_ANGLE_PAIRS = (
    (0.0, math.pi / 4.0),
    (math.pi / 4.0, 0.0),
    (math.pi / 2.0, math.pi / 4.0),
    (math.pi / 4.0, math.pi / 2.0),
)


def test_brute_force_three_steps():
    res = brute_force(3, HADAMARD, IDENTITY)
    assert res.optimal_bits == ("001", "010", "101", "110")
    assert res.count_optimal == 4
    assert res.evaluations == 8
    assert res.best_fidelity == pytest.approx(1.0, abs=1e-9)


def test_brute_force_against_canonical_fidelity():
    # the batched Kraus-block route must agree with the tomography route
    for T in (2, 4, 7):
        fast = enumerate_fidelities(HADAMARD, IDENTITY, T)
        for value in range(1 << T):
            bits = format(value, f"0{T}b")
            slow = sequence_fidelity(CoinSequence(HADAMARD, IDENTITY, bits))
            assert fast[value] == pytest.approx(slow, abs=2e-8), bits


def test_split_enumeration_matches_flat():
    # T=15 runs through the half-sequence convolution path; spot-check
    # rows against direct batched evaluation
    fid = enumerate_fidelities(HADAMARD, IDENTITY, 15)
    assert fid.shape == (1 << 15,)
    rng = np.random.default_rng(9)
    picks = rng.integers(0, 1 << 15, 40)
    rows = np.array([[int(ch) for ch in format(int(v), "015b")] for v in picks])
    direct = batch_fidelities(HADAMARD, IDENTITY, rows)
    np.testing.assert_allclose(fid[picks], direct, atol=1e-10)


def test_sixteen_step_optimal_count():
    res = brute_force(16, HADAMARD, IDENTITY)
    assert res.count_optimal == 368
    assert all(len(b) == 16 for b in res.optimal_bits)


def test_brute_force_deterministic_and_worker_independent():
    a = brute_force(6, HADAMARD, IDENTITY)
    b = brute_force(6, HADAMARD, IDENTITY)
    assert a == b
    for T in (6, 15):
        one = enumerate_fidelities(HADAMARD, IDENTITY, T, workers=1)
        two = enumerate_fidelities(HADAMARD, IDENTITY, T, workers=2)
        assert one.tobytes() == two.tobytes()


def test_brute_force_relative_to_best():
    res = brute_force(2, HADAMARD, IDENTITY, relative_to="best")
    assert res.best_fidelity < 1.0 - 1e-6
    fid = enumerate_fidelities(HADAMARD, IDENTITY, 2)
    assert res.count_optimal == int((fid > fid.max() - 1e-9).sum())
    with pytest.raises(ValueError):
        brute_force(2, HADAMARD, IDENTITY, relative_to="median")


def test_optimal_counts_multiple_tolerances():
    counts = optimal_counts(5, HADAMARD, IDENTITY)
    assert counts[1e-6] == counts[1e-9] == counts[1e-12] == 8


def test_resource_guards():
    with pytest.raises(ResourceLimitError):
        brute_force(0, HADAMARD, IDENTITY)
    with pytest.raises(ResourceLimitError):
        brute_force(25, HADAMARD, IDENTITY)
    with pytest.raises(ResourceLimitError):
        landscape_scan(13, [0.0, math.pi / 4.0])
    with pytest.raises(ResourceLimitError):
        extension_closure_report(HADAMARD, IDENTITY, max_T=13)


def test_worker_count_env_cap(monkeypatch):
    monkeypatch.delenv("WALKMEG_THREADS", raising=False)
    assert worker_count(4) == 4
    monkeypatch.setenv("WALKMEG_THREADS", "2")
    assert worker_count(4) == 2
    assert worker_count() <= 2
    monkeypatch.setenv("WALKMEG_THREADS", "zebra")
    with pytest.raises(ValueError):
        worker_count(4)


def test_anneal_fixed_coins_reaches_optimum():
    result = anneal(
        3, AnnealConfig(seed=7, restarts=4), optimize_angles=False,
        coins=(HADAMARD, IDENTITY),
    )
    assert result.fidelity == pytest.approx(1.0, abs=1e-6)
    assert result.bits in ("001", "010", "101", "110")


def test_anneal_single_step_hits_the_ceiling():
    # no early stop is possible at T = 1, so keep the schedule short
    config = AnnealConfig(seed=3, restarts=2, steps_per_temperature=20)
    result = anneal(1, config, optimize_angles=False, coins=(HADAMARD, IDENTITY))
    assert result.fidelity == pytest.approx(0.5, abs=1e-6)


def test_anneal_free_angles_finds_an_optimal_pair():
    result = anneal(5, AnnealConfig(seed=11, restarts=3), optimize_angles=True)
    assert result.fidelity > 1.0 - 1e-6
    distance = min(
        math.hypot(result.gamma0 - g0, result.gamma1 - g1)
        for g0, g1 in OPTIMAL_ANGLE_PAIRS
    )
    assert distance < 0.05


def test_anneal_deterministic():
    config = AnnealConfig(seed=19, restarts=2)
    assert anneal(4, config) == anneal(4, config)


def test_anneal_never_beats_brute_force():
    best = brute_force(4, HADAMARD, IDENTITY).best_fidelity
    result = anneal(
        4, AnnealConfig(seed=5, restarts=3), optimize_angles=False,
        coins=(HADAMARD, IDENTITY),
    )
    assert result.fidelity <= best + 1e-9


def test_anneal_config_validation():
    with pytest.raises(ValueError):
        AnnealConfig(initial_temperature=0.0)
    with pytest.raises(ValueError):
        AnnealConfig(cooling_rate=1.0)
    with pytest.raises(ValueError):
        AnnealConfig(restarts=0)
    with pytest.raises(ValueError):
        AnnealConfig(flip_moves=False, angle_moves=False)


def test_landscape_small_grid_maxima():
    # at T = 3 only the {gamma=0, gamma=pi/4} pairs reach unit fidelity;
    # the pi/2 pairs (a sigma_x coin) first get there at T = 5
    grid = np.linspace(0.0, math.pi / 2.0, 5)
    points = landscape_scan(3, grid)
    assert len(points) == 25
    top = {
        (round(p.gamma0, 9), round(p.gamma1, 9))
        for p in points
        if p.best_fidelity > 1.0 - 1e-9
    }
    quarter = math.pi / 4.0
    expected = {(0.0, round(quarter, 9)), (round(quarter, 9), 0.0)}
    assert top == expected


def test_extension_closure_report_reference_counts():
    rows = extension_closure_report(HADAMARD, IDENTITY, max_T=9)
    observed = [(r.T, r.n_optimal, r.n_violations) for r in rows if r.T >= 3]
    assert observed == [
        (3, 4, 2),
        (4, 4, 0),
        (5, 8, 2),
        (6, 8, 0),
        (7, 24, 10),
        (8, 24, 4),
        (9, 56, 30),
    ]


def test_complement_closure_holds_only_at_three_steps():
    # swapping every bit maps the T=3 optimal set onto itself, but from
    # T=4 on the complements leave the optimal set
    def complement_preserved(T: int) -> bool:
        fid = enumerate_fidelities(HADAMARD, IDENTITY, T)
        optimal = np.nonzero(fid > 1.0 - 1e-9)[0]
        mask = (1 << T) - 1
        return bool(np.all(fid[optimal ^ mask] > 1.0 - 1e-9))

    assert complement_preserved(3)
    assert not any(complement_preserved(T) for T in range(4, 10))


def test_landscape_angle_validation():
    with pytest.raises(ValueError):
        landscape_scan(3, [])
    with pytest.raises(ValueError):
        landscape_scan(3, [0.0, 2.0])


def test_rotation_angle_pair_equals_named_set():
    # gamma = pi/4 and 0 give the Hadamard and sigma_z coins; the optimal
    # count matches the {H, 1} set even though the fidelity arrays differ
    res_named = brute_force(6, HADAMARD, IDENTITY)
    res_angles = brute_force(6, rotation_coin(math.pi / 4.0), rotation_coin(0.0))
    assert res_angles.best_fidelity == pytest.approx(res_named.best_fidelity, abs=1e-9)
    assert res_angles.count_optimal == res_named.count_optimal