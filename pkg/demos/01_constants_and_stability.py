"""Derived wave constants and the stabilizability trichotomy.

The coupled displacement/charge dynamics supports two wave families with
reciprocal speeds zeta1 >= zeta2.  Whether electrode-current feedback can
stabilize the beam depends only on the arithmetic of zeta2/zeta1:

* irrational (generic parameters): strongly stable, never exponentially;
* odd/odd rational: an invisible mode survives, not even strongly stable;
* mixed-parity rational: exponentially stable, with an explicit gap.

Run:  python demos/01_constants_and_stability.py
"""

import numpy as np

from piezobeam import (
    BeamParameters,
    classify_stability,
    derive_constants,
    parameters_for_ratio,
)

cases = {
    "unit parameters (golden-ratio speeds)": BeamParameters(1, 1, 1, 1, 1),
    "tuned to zeta2/zeta1 = 1/2": parameters_for_ratio(0.5),
    "tuned to zeta2/zeta1 = 1/3": parameters_for_ratio(1.0 / 3.0),
    "a random-looking material": BeamParameters(
        rho=7.6, alpha1=21.0, beta=0.33, gamma=1.9, mu=0.012
    ),
}

for label, params in cases.items():
    dc = derive_constants(params)
    report = classify_stability(dc, length=params.length)
    print(f"\n== {label}")
    print(
        f"   alpha={dc.alpha:.6g}  zeta1={dc.zeta1:.6g}  zeta2={dc.zeta2:.6g}  "
        f"b1={dc.b1:.6g}  b2={dc.b2:.6g}"
    )
    print(f"   identities: b1*b2 = {dc.b1 * dc.b2:.6g} (= -rho/mu = {-params.rho / params.mu:.6g})")
    print(f"   ratio zeta2/zeta1 = {report.ratio:.12g}")
    print(f"   classification: {report.classification.value}")
    if report.approximant:
        a = report.approximant
        print(f"   matched fraction: {a.p}/{a.q} (error {a.error:.2e})")
    if report.gap:
        print(f"   spectral gap {report.gap:.4f}, observation time {report.min_time:.4f}")

print("\nSweeping gamma to show how the classification flips along the way:")
for gamma in np.linspace(0.55, 1.25, 8):
    params = BeamParameters(1, 1, 1, float(gamma), 1)
    report = classify_stability(derive_constants(params), qmax=30, tol=5e-3)
    print(f"   gamma={gamma:.3f}  ratio={report.ratio:.5f}  -> {report.classification.value}")
print(
    "\nWith a loose tolerance many ratios look like low-order fractions; with the"
    "\ndefault budget (qmax=1e4, tol=1e-9) almost every material is 'irrational'."
)
