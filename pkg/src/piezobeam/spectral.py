"""Exact eigenstructure of the undamped beam generator and modal calculus.

The undamped generator of the coupled stretching system is skew-adjoint with
purely imaginary eigenvalues ``+/- i * sigma_j / zeta_k`` where
``sigma_j = (2j - 1) * pi / (2L)`` and ``k in {1, 2}`` indexes the wave
family.  Its eigenfunctions are sine profiles mixed across the displacement
and charge components by the coefficients ``b1``, ``b2``.  This module
provides the eigen-decomposition, projection of states onto the eigenbasis,
unitary modal propagation, energy norms, the closed-form output energy of the
electrode-current observation, and the inverse of the damped generator at
zero frequency.

Everything is pure and immutable; all operations may run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import QuadratureFailure, SingularModeSystem
from .params import BeamParameters, DerivedConstants, derive_constants

__all__ = [
    "ModeIndex",
    "ModalCoefficients",
    "StateFunctions",
    "sigma",
    "eigenvalues",
    "eigenfunction",
    "reconstruct",
    "project",
    "projection_residual",
    "propagate",
    "modal_norm_sq",
    "output_energy",
    "resolvent_at_zero",
]

DEFAULT_QUADRATURE_CELLS = 2048


@dataclass(frozen=True)
class ModeIndex:
    """Label of one eigenmode: wave family (1 or 2), sign branch, index j >= 1."""

    family: int
    sign: int
    j: int

    def __post_init__(self) -> None:
        if self.family not in (1, 2):
            raise ValueError(f"family must be 1 or 2, got {self.family}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.j < 1:
            raise ValueError(f"mode index j must be >= 1, got {self.j}")


class ModalCoefficients:
    """Complex coefficients of a state in the four eigenmode branches.

    Arrays ``c1, d1, c2, d2`` hold the coefficients of the ``+`` and ``-``
    branches of families 1 and 2 for ``j = 1..J``.  Instances are immutable;
    operations return new objects.
    """

    __slots__ = ("c1", "d1", "c2", "d2")

    def __init__(self, c1, d1, c2, d2):
        arrays = []
        for name, arr in (("c1", c1), ("d1", d1), ("c2", c2), ("d2", d2)):
            a = np.asarray(arr, dtype=complex).copy()
            if a.ndim != 1:
                raise ValueError(f"{name} must be one-dimensional")
            a.flags.writeable = False
            arrays.append(a)
        if len({a.shape for a in arrays}) != 1:
            raise ValueError("coefficient arrays must share one length")
        self.c1, self.d1, self.c2, self.d2 = arrays

    @property
    def truncation(self) -> int:
        return self.c1.shape[0]

    @classmethod
    def zeros(cls, J: int) -> "ModalCoefficients":
        z = np.zeros(J, dtype=complex)
        return cls(z, z, z, z)

    @classmethod
    def single(cls, mode: ModeIndex, J: int, amplitude: complex = 1.0) -> "ModalCoefficients":
        """Coefficient set with a single active mode."""
        if mode.j > J:
            raise ValueError(f"j={mode.j} exceeds truncation J={J}")
        arrays = {k: np.zeros(J, dtype=complex) for k in ("c1", "d1", "c2", "d2")}
        key = ("c" if mode.sign == 1 else "d") + str(mode.family)
        arrays[key][mode.j - 1] = amplitude
        return cls(**arrays)

class StateFunctions:
    """A beam state ``(v, p, vdot, pdot)`` on ``[0, L]``.

    Components are callables mapping position arrays to values; states given
    as grid samples are wrapped with linear interpolation.  Membership in the
    energy space requires ``v(0) = p(0) = 0``.
    """

    __slots__ = ("v", "p", "vdot", "pdot")

    def __init__(self, v: Callable, p: Callable, vdot: Callable, pdot: Callable):
        self.v, self.p, self.vdot, self.pdot = v, p, vdot, pdot

    @classmethod
    def zero(cls) -> "StateFunctions":
        return cls(*(np.zeros_like,) * 4)

    @classmethod
    def from_samples(cls, x, v, p, vdot, pdot) -> "StateFunctions":
        x = np.asarray(x, dtype=float)
        comps = [np.asarray(a, dtype=float) for a in (v, p, vdot, pdot)]

        def interp(values):
            return lambda xs: np.interp(np.asarray(xs, dtype=float), x, values)

        return cls(*(interp(a) for a in comps))

    @classmethod
    def from_modal(cls, coeffs: "ModalCoefficients", params: BeamParameters) -> "StateFunctions":
        def component(i):
            return lambda xs: reconstruct(coeffs, params, xs)[i]

        return cls(*(component(i) for i in range(4)))

    def sample(self, x) -> np.ndarray:
        """Evaluate all four components; returns an array of shape (4, len(x))."""
        x = np.asarray(x, dtype=float)
        out = np.empty((4, x.size), dtype=complex)
        for i, f in enumerate((self.v, self.p, self.vdot, self.pdot)):
            out[i] = f(x)
        if np.all(out.imag == 0):
            return out.real.copy()
        return out


def sigma(j, length: float):
    """Spatial frequencies ``(2j - 1) * pi / (2 * length)`` of the sine basis."""
    return (2.0 * np.asarray(j) - 1.0) * np.pi / (2.0 * length)


def _dc(params: BeamParameters) -> DerivedConstants:
    return derive_constants(params)


def eigenvalues(
    params: BeamParameters, J: int, dc: DerivedConstants | None = None
) -> list[tuple[ModeIndex, complex]]:
    """Eigenvalues ``sign * i * sigma_j / zeta_family`` for ``j = 1..J``.

    All are purely imaginary and come in conjugate pairs; within a family the
    spacing of the imaginary parts is ``pi / (L * zeta_family)``.
    """
    if J < 1:
        raise ValueError(f"J must be >= 1, got {J}")
    dc = dc or _dc(params)
    L = params.length
    out = []
    for j in range(1, J + 1):
        s = sigma(j, L)
        for family, zeta in ((1, dc.zeta1), (2, dc.zeta2)):
            for sign in (+1, -1):
                out.append((ModeIndex(family, sign, j), sign * 1j * s / zeta))
    return out


def _mode_scalars(mode: ModeIndex, dc: DerivedConstants, L: float):
    zeta = dc.zeta1 if mode.family == 1 else dc.zeta2
    b = dc.b1 if mode.family == 1 else dc.b2
    s = sigma(mode.j, L)
    lam_plus = 1j * s / zeta
    return s, b, lam_plus


def eigenfunction(
    mode: ModeIndex, params: BeamParameters, x, dc: DerivedConstants | None = None
) -> np.ndarray:
    """Evaluate one eigenfunction at positions ``x``.

    The component vector is ``(1/lam, b/lam, sign, sign*b) * sin(sigma_j x)``
    with ``lam`` the eigenvalue of the ``+`` branch of the mode's family.
    Returns shape ``(4,)`` for scalar ``x`` and ``(4, len(x))`` otherwise.
    """
    dc = dc or _dc(params)
    s, b, lam = _mode_scalars(mode, dc, params.length)
    profile = np.sin(s * np.asarray(x, dtype=float))
    vec = np.array([1.0 / lam, b / lam, mode.sign, mode.sign * b], dtype=complex)
    return np.multiply.outer(vec, profile)


def reconstruct(
    coeffs: ModalCoefficients,
    params: BeamParameters,
    x,
    t: float = 0.0,
    derivative: bool = False,
    dc: DerivedConstants | None = None,
) -> np.ndarray:
    """Evaluate the modal sum at positions ``x`` and time ``t``.

    With ``derivative=True`` the x-derivative of each component is returned
    (cosine profiles), which is what the energy quadratures need.
    Returns a complex array of shape ``(4, len(x))``.
    """
    dc = dc or _dc(params)
    L = params.length
    x = np.atleast_1d(np.asarray(x, dtype=float))
    J = coeffs.truncation
    s = sigma(np.arange(1, J + 1), L)  # (J,)
    profile = np.cos(np.outer(s, x)) * s[:, None] if derivative else np.sin(np.outer(s, x))
    out = np.zeros((4, x.size), dtype=complex)
    for family, b, zeta, c, d in (
        (1, dc.b1, dc.zeta1, coeffs.c1, coeffs.d1),
        (2, dc.b2, dc.zeta2, coeffs.c2, coeffs.d2),
    ):
        lam = 1j * s / zeta
        phase = np.exp(lam * t)
        cp, dm = c * phase, d / phase
        sum_amp = (cp + dm) / lam
        diff_amp = cp - dm
        out[0] += sum_amp @ profile
        out[1] += b * (sum_amp @ profile)
        out[2] += diff_amp @ profile
        out[3] += b * (diff_amp @ profile)
    return out


def _sine_coefficients(values: np.ndarray, x: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Sine-series coefficients (2/L) * int f(x) sin(s x) dx by trapezoid.

    On a uniform closed grid the trapezoid rule integrates products of this
    sine family exactly, so projection of band-limited states is exact to
    rounding.
    """
    L = x[-1] - x[0]
    kernel = np.sin(np.outer(s, x))
    return (2.0 / L) * np.trapezoid(kernel * values[None, :], x, axis=1)


def project(
    state: StateFunctions,
    params: BeamParameters,
    J: int,
    cells: int = DEFAULT_QUADRATURE_CELLS,
    dc: DerivedConstants | None = None,
) -> ModalCoefficients:
    """Project a state onto the first ``J`` modes of each branch.

    Each component is expanded in the sine basis, then for every ``j`` the
    4x4 linear system tying the four branch coefficients to the four
    component amplitudes is solved.  Reconstructing and re-projecting is the
    identity on the truncated span.

    Raises
    ------
    SingularModeSystem
        If a per-mode system is numerically singular.  This cannot happen for
        valid constants (``b1 != b2`` and distinct family eigenvalues); the
        check is defensive.
    """
    dc = dc or _dc(params)
    L = params.length
    x = np.linspace(0.0, L, cells + 1)
    s = sigma(np.arange(1, J + 1), L)
    samples = state.sample(x)
    amps = np.stack([_sine_coefficients(np.real(comp), x, s) for comp in samples])
    if np.iscomplexobj(samples) and np.any(samples.imag != 0):
        amps = amps + 1j * np.stack(
            [_sine_coefficients(comp.imag, x, s) for comp in samples]
        )

    lam1 = 1j * s / dc.zeta1
    lam2 = 1j * s / dc.zeta2
    b1, b2 = dc.b1, dc.b2
    systems = np.zeros((J, 4, 4), dtype=complex)
    systems[:, 0, 0] = 1.0 / lam1
    systems[:, 0, 1] = 1.0 / lam1
    systems[:, 0, 2] = 1.0 / lam2
    systems[:, 0, 3] = 1.0 / lam2
    systems[:, 1, 0] = b1 / lam1
    systems[:, 1, 1] = b1 / lam1
    systems[:, 1, 2] = b2 / lam2
    systems[:, 1, 3] = b2 / lam2
    systems[:, 2, 0] = 1.0
    systems[:, 2, 1] = -1.0
    systems[:, 2, 2] = 1.0
    systems[:, 2, 3] = -1.0
    systems[:, 3, 0] = b1
    systems[:, 3, 1] = -b1
    systems[:, 3, 2] = b2
    systems[:, 3, 3] = -b2
    if abs(b1 - b2) < 1e-14 * (abs(b1) + abs(b2)):
        raise SingularModeSystem("b1 == b2: mode families are indistinguishable")
    try:
        sol = np.linalg.solve(systems, amps.T[:, :, None])[:, :, 0]
    except np.linalg.LinAlgError as exc:  # pragma: no cover - defensive
        raise SingularModeSystem(str(exc)) from exc
    return ModalCoefficients(sol[:, 0], sol[:, 1], sol[:, 2], sol[:, 3])


def projection_residual(
    state: StateFunctions,
    coeffs: ModalCoefficients,
    params: BeamParameters,
    cells: int = DEFAULT_QUADRATURE_CELLS,
) -> float:
    """Relative L2 mismatch between a state and its truncated reconstruction."""
    x = np.linspace(0.0, params.length, cells + 1)
    original = state.sample(x)
    rebuilt = reconstruct(coeffs, params, x)
    diff = np.abs(np.asarray(original, dtype=complex) - rebuilt) ** 2
    denom = np.trapezoid(np.sum(np.abs(original) ** 2, axis=0), x)
    if denom == 0:
        return 0.0
    return float(np.sqrt(np.trapezoid(np.sum(diff, axis=0), x) / denom))


def propagate(
    coeffs: ModalCoefficients,
    params: BeamParameters,
    t: float,
    dc: DerivedConstants | None = None,
) -> ModalCoefficients:
    """Advance modal coefficients by time ``t`` (a group: ``t < 0`` rewinds).

    Each branch picks up a unit-modulus phase, so the modal energy norm is
    conserved exactly.
    """
    dc = dc or _dc(params)
    s = sigma(np.arange(1, coeffs.truncation + 1), params.length)
    phase1 = np.exp(1j * s * t / dc.zeta1)
    phase2 = np.exp(1j * s * t / dc.zeta2)
    return ModalCoefficients(
        coeffs.c1 * phase1,
        coeffs.d1 / phase1,
        coeffs.c2 * phase2,
        coeffs.d2 / phase2,
    )


def modal_norm_sq(
    coeffs: ModalCoefficients,
    params: BeamParameters,
    dc: DerivedConstants | None = None,
) -> float:
    """Squared energy norm of the state with the given modal coefficients.

    Orthogonality of the eigenfunctions gives

        N^2 = L * sum_j [ (rho + b1^2 mu) (|c1j|^2 + |d1j|^2)
                        + (rho + b2^2 mu) (|c2j|^2 + |d2j|^2) ].

    The physical energy is ``(thickness / 2) * N^2``.
    """
    dc = dc or _dc(params)
    w1 = params.rho + dc.b1**2 * params.mu
    w2 = params.rho + dc.b2**2 * params.mu
    total = w1 * (
        np.sum(np.abs(coeffs.c1) ** 2) + np.sum(np.abs(coeffs.d1) ** 2)
    ) + w2 * (np.sum(np.abs(coeffs.c2) ** 2) + np.sum(np.abs(coeffs.d2) ** 2))
    return float(params.length * total)


def phase_integral(delta, T: float) -> np.ndarray:
    """Exact ``int_0^T exp(i * delta * t) dt`` with a stable small-gap branch.

    Coincident frequencies (``delta == 0`` to rounding) integrate to exactly
    ``T``; tiny gaps use a series to avoid cancellation.
    """
    delta = np.asarray(delta, dtype=float)
    dT = delta * T
    small = np.abs(dT) < 1e-6
    safe = np.where(small, 1.0, delta)
    exact = (np.exp(1j * dT) - 1.0) / (1j * safe)
    series = T * (1.0 + 0.5j * dT - dT**2 / 6.0)
    return np.where(small, series, exact)


def _output_weights(
    coeffs: ModalCoefficients, params: BeamParameters, dc: DerivedConstants
):
    """Frequencies and complex weights of the electrode-current signal.

    The observation is ``-(1/h) * pdot(L, t)``; evaluated on the modal sum it
    is an exponential polynomial ``sum_n w_n exp(i s_n t)`` with frequencies
    ``+/- sigma_j / zeta_k`` and weights proportional to ``b_k`` and the
    boundary sign ``sin(sigma_j L) = (-1)**(j+1)``.
    """
    J = coeffs.truncation
    L, h = params.length, params.thickness
    s = sigma(np.arange(1, J + 1), L)
    bsign = np.where(np.arange(1, J + 1) % 2 == 1, 1.0, -1.0)  # (-1)**(j+1)
    freqs = np.concatenate([s / dc.zeta1, -s / dc.zeta1, s / dc.zeta2, -s / dc.zeta2])
    weights = (
        np.concatenate(
            [
                bsign * dc.b1 * coeffs.c1,
                -bsign * dc.b1 * coeffs.d1,
                bsign * dc.b2 * coeffs.c2,
                -bsign * dc.b2 * coeffs.d2,
            ]
        )
        * (-1.0 / h)
    )
    keep = weights != 0
    return freqs[keep], weights[keep]


def output_energy(
    coeffs: ModalCoefficients,
    params: BeamParameters,
    T: float,
    dc: DerivedConstants | None = None,
) -> float:
    """Exact output energy ``int_0^T |current observation|^2 dt``.

    Computed by analytic pairwise integration of the exponential polynomial,
    not by time quadrature, so resonant (coincident-frequency) pairs are
    handled exactly and nothing aliases.
    """
    if not T > 0:
        raise ValueError(f"T must be > 0, got {T}")
    dc = dc or _dc(params)
    freqs, weights = _output_weights(coeffs, params, dc)
    if freqs.size == 0:
        return 0.0
    scale = max(1.0, float(np.max(np.abs(freqs))))
    delta = freqs[:, None] - freqs[None, :]
    # snap numerically coincident frequencies so exact resonances integrate to T
    delta[np.abs(delta) < 1e-12 * scale] = 0.0
    gram = phase_integral(delta, T)
    total = np.real(weights @ gram @ np.conj(weights))
    return max(float(total), 0.0)


def resolvent_at_zero(
    g: StateFunctions,
    params: BeamParameters,
    cells: int = DEFAULT_QUADRATURE_CELLS,
) -> StateFunctions:
    """Solve ``A_d U = G`` for the damped generator at zero frequency.

    The damped generator (electrical feedback with gain ``1/(2h)``) is
    boundedly invertible at zero.  The position components come from the
    kernel ``K(x, r) = min(x, r)`` of the one-dimensional Laplacian with a
    fixed left end and free right end, plus linear boundary corrections
    proportional to ``g2(L)``; the velocity components are copied from the
    position components of ``G``.

    Raises
    ------
    QuadratureFailure
        If the supplied samples produce non-finite integrals.
    """
    dc = derive_constants(params)
    rho, a1, beta, gamma, mu = (
        params.rho,
        params.alpha1,
        params.beta,
        params.gamma,
        params.mu,
    )
    L, h = params.length, params.thickness
    x = np.linspace(0.0, L, cells + 1)
    g1, g2, g3, g4 = g.sample(x)
    g2L = g2[-1]

    def kernel_integral(f):
        # int_0^L min(x, r) f(r) dr = int_0^x r f + x * int_x^L f
        rf = cumulative_trapezoid(x * f, x, initial=0.0)
        tot = cumulative_trapezoid(f, x, initial=0.0)
        return rf + x * (tot[-1] - tot)

    u1 = (1.0 / a1) * kernel_integral(rho * g3 + gamma * mu * g4) - (
        gamma / (2.0 * h**2 * a1)
    ) * g2L * x
    u2 = -(1.0 / a1) * kernel_integral(
        ((dc.alpha + a1) * rho / (gamma * beta)) * g3 + (mu * dc.alpha / beta) * g4
    ) - (1.0 / (2.0 * h**2)) * (gamma**2 / a1 + 1.0 / beta) * g2L * x
    if not (np.all(np.isfinite(u1)) and np.all(np.isfinite(u2))):
        raise QuadratureFailure("kernel integrals produced non-finite values")
    return StateFunctions.from_samples(x, u1, u2, g1, g2)
