"""Exact eigenstructure and the modal calculus.

Eigenvalues of the undamped generator are purely imaginary, two interleaved
families i*sigma_j/zeta_k.  States project onto the eigenbasis, evolve by
unit phases, and come back: this script demonstrates the round trip and the
conservation of the modal energy norm.

Run:  python demos/02_spectrum_and_modal_calculus.py
"""

from pathlib import Path

import numpy as np

from piezobeam import (
    BeamParameters,
    StateFunctions,
    eigenvalues,
    modal_norm_sq,
    project,
    projection_residual,
    propagate,
    reconstruct,
)
from piezobeam.csvio import write_csv

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

params = BeamParameters(1, 1, 1, 1, 1)

print("First eigenvalues (family, sign, j, lambda):")
modes = eigenvalues(params, 3)
for mode, lam in modes:
    print(f"   ({mode.family}, {mode.sign:+d}, {mode.j})  ->  {lam:.6f}")
write_csv(
    out / "spectrum.csv",
    ["family", "sign", "j", "im_lambda"],
    [(m.family, m.sign, m.j, lam.imag) for m, lam in eigenvalues(params, 32)],
)
print(f"Wrote 128 eigenvalues to {out / 'spectrum.csv'}")

# A bump in the velocity component, projected onto 24 modes per branch.
state = StateFunctions(
    lambda x: 0.0 * x,
    lambda x: 0.0 * x,
    lambda x: np.exp(-0.5 * ((x - 0.4) / 0.07) ** 2),
    lambda x: 0.0 * x,
)
coeffs = project(state, params, J=24)
residual = projection_residual(state, coeffs, params)
print(f"\nProjected a Gaussian velocity bump onto J=24 modes; truncation residual {residual:.2e}")

n0 = modal_norm_sq(coeffs, params)
for t in (0.0, 1.0, 5.0, 25.0):
    nt = modal_norm_sq(propagate(coeffs, params, t), params)
    print(f"   t={t:5.1f}:  squared norm {nt:.12f}  (drift {abs(nt - n0) / n0:.1e})")

x = np.linspace(0.0, 1.0, 9)
evolved = reconstruct(coeffs, params, x, t=5.0).real
print("\nDisplacement profile at t=5 on a coarse grid:")
print("   " + "  ".join(f"{v:+.4f}" for v in evolved[0]))
print("The norm is conserved exactly: propagation only rotates modal phases.")
