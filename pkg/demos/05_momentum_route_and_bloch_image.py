"""
Momentum-space route, Bloch contraction, and the closed-form test
==================================================================

Three independent views of the same physics for the {H, 1} set:

 1. the coin's final Bloch vector computed by integrating 4x4 momentum
    superoperators agrees with direct state-vector evolution;
 2. an optimal sequence contracts the whole Bloch sphere to the origin
    (the channel is fully depolarizing), a suboptimal one does not;
 3. for bit strings with one or two identity steps, a closed-form
    predicate on the gap lengths decides optimality with no simulation.
"""

import numpy as np

from walkmeg import (
    AffineBlochVector,
    CoinSequence,
    HADAMARD,
    IDENTITY,
    InitialCoinState,
    bloch_image,
    evolve,
    generate_table_sequence,
    iter_family_bits,
    momentum_final_bloch,
    pattern_from_bits,
    reduced_coin_state,
    sequence_fidelity,
    theorem_predicate,
)

# --- 1. two routes to the final coin state -------------------------------
rng = np.random.default_rng(7)
worst = 0.0
for _ in range(50):
    T = int(rng.integers(1, 11))
    bits = "".join(str(b) for b in rng.integers(0, 2, size=T))
    theta = float(np.arccos(rng.uniform(-1, 1)))
    phi = float(rng.uniform(0, 2 * np.pi))
    init = InitialCoinState(theta, phi)

    state = evolve(init, CoinSequence(HADAMARD, IDENTITY, bits))
    rho = reduced_coin_state(state)
    direct = np.array(
        [2 * rho[0, 1].real, -2 * rho[0, 1].imag, (rho[0, 0] - rho[1, 1]).real]
    )
    integrated = momentum_final_bloch(bits, AffineBlochVector.from_bloch(init.bloch))
    worst = max(worst, float(np.max(np.abs(direct - integrated.bloch))))
print(f"momentum route vs direct route, 50 random walks: worst gap = {worst:.3e}")

# --- 2. what the channel does to the Bloch sphere ------------------------
print()
print("image of 200 Bloch-sphere states after the walk:")
for bits in ("0010111111", "1111111111"):
    image = bloch_image(CoinSequence(HADAMARD, IDENTITY, bits), 200)
    radii = np.linalg.norm(image.outputs, axis=1)
    print(f"  bits {bits}: max |r_out| = {radii.max():.3e}")

# --- 3. closed-form optimality test --------------------------------------
print()
print("closed-form predicate vs measured fidelity, strings with 1-2 identity steps:")
agree = 0
total = 0
for bits in iter_family_bits(9):
    predicted = theorem_predicate(pattern_from_bits(bits))
    measured = sequence_fidelity(CoinSequence(HADAMARD, IDENTITY, bits)) > 1 - 1e-9
    agree += predicted == measured
    total += 1
print(f"  {agree}/{total} strings agree")

seq = generate_table_sequence(12)
print(f"  predicate-built sequence at T=12: {seq.bits} "
      f"(fidelity {sequence_fidelity(seq):.12f})")