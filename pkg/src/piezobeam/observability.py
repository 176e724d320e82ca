"""Diophantine approximants, near-unobservable states, and Ingham frame bounds.

When the wave-speed ratio ``zeta2/zeta1`` is irrational it admits odd/odd
rational approximants ``p/q`` with error O(q^-2).  Each approximant pairs one
mode of each wave family into a two-mode state whose electrode-current
output nearly cancels: the output energy over a window decays like ``q^-2``
while the state norm stays constant, so no uniform observability estimate
can hold.  For mixed-parity rational ratios the eigenfrequencies keep a
uniform gap and nonharmonic Fourier (Ingham) frame bounds apply; this module
measures both effects.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    ExhaustedBudget,
    InvalidBudget,
    NotRational,
    ParityViolation,
    TruncationTooSmall,
    ZeroState,
)
from .params import BeamParameters, DerivedConstants, derive_constants
from .spectral import ModalCoefficients, modal_norm_sq, output_energy, phase_integral, sigma

__all__ = [
    "OddApproximant",
    "odd_odd_approximants",
    "near_unobservable_state",
    "observability_quotient",
    "quotient_bound",
    "ingham_gap",
    "FrameBounds",
    "ingham_frame_bounds",
    "exponent_family",
]


@dataclass(frozen=True)
class OddApproximant:
    """Coprime odd/odd fraction ``p/q`` approximating a target ratio.

    ``err`` is the absolute approximation error and ``cq2 = err * q**2`` the
    quality constant; along a well-behaved sequence ``cq2`` stays bounded.
    """

    p: int
    q: int
    err: float
    cq2: float

    @property
    def exact(self) -> bool:
        return self.err == 0.0


def _best_odd_numerator(zeta: float, q: int) -> tuple[int, float] | None:
    """Best coprime odd numerator for denominator ``q`` (ties to smaller p)."""
    m = zeta * q
    lo = 2 * math.floor((m - 1.0) / 2.0) + 1
    best = None
    for p in (lo, lo + 2):
        if p < 1 or math.gcd(p, q) != 1:
            continue
        err = abs(zeta - p / q)
        if best is None or err < best[1]:
            best = (p, err)
    return best


def odd_odd_approximants(
    zeta: float, count: int, qmax: int = 100_000
) -> list[OddApproximant]:
    """Search odd denominators for record odd/odd approximants of ``zeta``.

    For each odd ``q <= qmax`` the best coprime odd numerator is considered,
    and a candidate is kept only when it at least halves the best error so
    far (seeded at 1).  The halving requirement keeps genuine approximation
    records - for badly approximable targets it recovers the classical
    convergent subsequence - and discards incidental near-misses.  The search
    stops at an exact hit.

    Returns up to ``count`` approximants with strictly increasing ``q``.
    Warns with :class:`ExhaustedBudget` if the budget runs out first.
    """
    if not zeta > 0:
        raise InvalidBudget(f"target must be positive, got {zeta}")
    if count < 1 or qmax < 1:
        raise InvalidBudget(f"need count >= 1 and qmax >= 1, got {count}, {qmax}")
    records: list[OddApproximant] = []
    best = 1.0
    for q in range(1, qmax + 1, 2):
        cand = _best_odd_numerator(zeta, q)
        if cand is None:
            continue
        p, err = cand
        if err < 0.5 * best:
            records.append(OddApproximant(p=p, q=q, err=err, cq2=err * q * q))
            best = err
            if err == 0.0 or len(records) >= count:
                break
    if len(records) < count and not (records and records[-1].exact):
        warnings.warn(
            ExhaustedBudget(
                f"found {len(records)} of {count} approximants with q <= {qmax}"
            )
        )
    return records


def _kappa(odd: int) -> float:
    """Sign normalizing ``kappa * sin(odd * pi / 2)`` to +1."""
    return -1.0 if (odd + 1) % 4 == 0 else 1.0


def near_unobservable_state(
    approx: OddApproximant,
    params: BeamParameters,
    J: int | None = None,
    dc: DerivedConstants | None = None,
) -> ModalCoefficients:
    """Two-mode state whose output nearly cancels under the approximant.

    Activates the family-1 mode with ``sigma_j = q*pi/(2L)`` at amplitude
    ``kappa1/b1`` and the family-2 mode with ``sigma_j = p*pi/(2L)`` at
    amplitude ``-kappa2/b2``; the sign factors make both boundary traces
    equal to one, so the output is the difference of two unit phasors whose
    frequencies differ by O(err/q).  Its energy norm is
    ``L * (2*mu + rho * (1/b1^2 + 1/b2^2))``, independent of the approximant.
    """
    dc = dc or derive_constants(params)
    j1 = (approx.q + 1) // 2
    j2 = (approx.p + 1) // 2
    if J is None:
        J = max(j1, j2)
    if max(j1, j2) > J:
        raise TruncationTooSmall(
            f"approximant ({approx.p},{approx.q}) needs J >= {max(j1, j2)}, got {J}"
        )
    c1 = np.zeros(J, dtype=complex)
    c2 = np.zeros(J, dtype=complex)
    c1[j1 - 1] = _kappa(approx.q) / dc.b1
    c2[j2 - 1] = -_kappa(approx.p) / dc.b2
    zeros = np.zeros(J, dtype=complex)
    return ModalCoefficients(c1, zeros, c2, zeros)


def observability_quotient(
    coeffs: ModalCoefficients,
    params: BeamParameters,
    T: float,
    dc: DerivedConstants | None = None,
) -> float:
    """Output energy over ``[0, T]`` divided by the squared state norm.

    A uniform positive lower bound over all states is exact observability;
    the near-unobservable states drive this quotient to zero like ``q^-2``.
    """
    dc = dc or derive_constants(params)
    norm = modal_norm_sq(coeffs, params, dc)
    if norm == 0.0:
        raise ZeroState("observability quotient undefined for the zero state")
    return output_energy(coeffs, params, T, dc) / norm


def quotient_bound(approx: OddApproximant, params: BeamParameters, T: float) -> float:
    """Explicit mean-value bound on the output energy of the approximant state.

    The two active phasors differ in frequency by at most
    ``pi * cq2 / (2 L zeta2 q)``, so the output energy over ``[0, T]`` is at
    most ``pi^2 T^3 cq2^2 / (12 L^2 h^2 zeta2^2 q^2)``.
    """
    dc = derive_constants(params)
    L, h = params.length, params.thickness
    return (math.pi**2 * T**3 * approx.cq2**2) / (
        12.0 * L**2 * h**2 * dc.zeta2**2 * approx.q**2
    )


def ingham_gap(
    params: BeamParameters, p: int, q: int, dc: DerivedConstants | None = None
) -> tuple[float, float]:
    """Uniform eigenfrequency gap for a mixed-parity rational speed ratio.

    For ``zeta2/zeta1 = p/q`` in lowest terms with exactly one of ``p, q``
    even, distinct frequencies ``sigma_j/zeta_k`` never come closer than

        gamma = (pi / L) * min(1/zeta1, 1/zeta2, 1/(2 zeta2 q)),

    and the Ingham frame bounds hold for every window longer than
    ``Tmin = 2 pi / gamma``.  Returns ``(gamma, Tmin)``.

    Raises :class:`ParityViolation` for odd/odd fractions (frequencies
    collide; there is no gap) and :class:`NotRational` if the fraction does
    not match the actual ratio to 1e-9.
    """
    dc = dc or derive_constants(params)
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise InvalidBudget(f"need coprime positive p, q; got ({p}, {q})")
    if p % 2 == 1 and q % 2 == 1:
        raise ParityViolation(
            f"({p}, {q}) are both odd: eigenvalues collide and no gap exists"
        )
    ratio = dc.ratio
    if abs(ratio - p / q) > 1e-9:
        raise NotRational(f"zeta2/zeta1 = {ratio!r} does not equal {p}/{q}")
    L = params.length
    gamma = (math.pi / L) * min(
        1.0 / dc.zeta1, 1.0 / dc.zeta2, 1.0 / (2.0 * dc.zeta2 * q)
    )
    return gamma, 2.0 * math.pi / gamma


def exponent_family(
    params: BeamParameters, J: int, dc: DerivedConstants | None = None
) -> np.ndarray:
    """Sorted eigenfrequencies ``+/- sigma_j / zeta_k`` for ``j <= J``."""
    dc = dc or derive_constants(params)
    s = sigma(np.arange(1, J + 1), params.length)
    freqs = np.concatenate([s / dc.zeta1, s / dc.zeta2])
    return np.sort(np.concatenate([-freqs, freqs]))


class FrameBounds(NamedTuple):
    cmin: float
    cmax: float
    has_collisions: bool


def ingham_frame_bounds(
    exponents,
    T: float,
    trials: int = 200,
    seed: int = 42,
) -> FrameBounds:
    """Empirical frame bounds of ``t -> sum g_n exp(i s_n t)`` on ``[0, T]``.

    Draws ``trials`` complex-Gaussian coefficient vectors and returns the
    extreme values of ``int_0^T |sum g_n e^{i s_n t}|^2 dt / sum |g_n|^2``,
    evaluated through the exact pairwise Gram matrix.  Coincident exponents
    are accepted and flagged; the canceling pair vector is then included
    among the trials, which pins the lower bound to zero.
    """
    if not T > 0:
        raise ValueError(f"T must be > 0, got {T}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    s = np.asarray(exponents, dtype=float)
    if s.ndim != 1 or s.size == 0:
        raise ValueError("exponents must be a non-empty 1-d sequence")
    scale = max(1.0, float(np.max(np.abs(s))))
    delta = s[:, None] - s[None, :]
    collide = (np.abs(delta) < 1e-12 * scale) & ~np.eye(s.size, dtype=bool)
    delta[np.abs(delta) < 1e-12 * scale] = 0.0
    gram = phase_integral(delta, T)

    def rayleigh(g: np.ndarray) -> float:
        val = np.real(np.conj(g) @ gram @ g) / float(np.real(np.conj(g) @ g))
        return max(val, 0.0)

    rng = np.random.default_rng(seed)
    values = []
    for _ in range(trials):
        g = rng.standard_normal(s.size) + 1j * rng.standard_normal(s.size)
        values.append(rayleigh(g))
    has_collisions = bool(np.any(collide))
    if has_collisions:
        a, b = np.argwhere(collide)[0]
        g = np.zeros(s.size, dtype=complex)
        g[a], g[b] = 1.0, -1.0
        values.append(rayleigh(g))
    return FrameBounds(
        cmin=float(np.min(values)), cmax=float(np.max(values)), has_collisions=has_collisions
    )
