"""Pancharatnam phases and the dynamical topological invariant.

The total phase is the argument of the return amplitude; subtracting the
dynamical phase -<chi| H_R |chi> t (exact and linear in t, since H_R is
static in the rotating frame) leaves the non-adiabatic, non-cyclic geometric
phase. Its winding along k in [0, pi] is the integer invariant nu(t), which
jumps by one at every critical time.

All reported phases live on the principal branch (-pi, pi].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (BandUnsupported, GridTooCoarse, NearCriticalTime,
                     PhaseUndefined, WindingNotQuantized)
from .model import (ModelParams, band_energy, band_weights, bloch_components,
                    floquet_solution, micromotion)
from .dynamics import micromotion_overlap, return_amplitude
from .dqpt import dqpt_condition

# Phase of a complex number smaller than this is numerically meaningless.
AMP_FLOOR = 1e-9

# Exclusion window around critical times, as a fraction of the period.
T_GUARD_FRACTION = 1e-3

MIN_WINDING_GRID = 401
WINDING_INT_TOL = 0.05


@dataclass(frozen=True)
class PhaseRecord:
    """Branch-resolved phase decomposition at one (k, t)."""

    total: float
    dynamical: float
    geometric: float
    band: str
    k: float
    t: float


def principal_branch(x):
    """Reduce an angle (or array of angles) to (-pi, pi]."""
    return np.angle(np.exp(1j * np.asarray(x))) if np.ndim(x) else \
        cmath.phase(cmath.exp(1j * x))


def total_phase(params: ModelParams, band: str, k: float, t: float) -> float:
    """Argument of the return amplitude, principal branch."""
    g = return_amplitude(params, band, k, t).value
    if abs(g) < AMP_FLOOR:
        raise PhaseUndefined(f"|G| = {abs(g):.3e} < {AMP_FLOOR}")
    return cmath.phase(g)


def dynamical_phase(params: ModelParams, band: str, k: float,
                    t: float) -> float:
    """-<chi| H_R(k) |chi> t with H_R = h_xy sx + h_z sz.

    Closed form, no quadrature: the rotating-frame Hamiltonian is static and
    the expectation is taken in the band's t = 0 mode.
    """
    fs = floquet_solution(params, k)
    chi = fs.chi_minus if band == "minus" else fs.chi_plus
    b = bloch_components(params, k)
    h_r = np.array([[b.h_z, b.h_xy], [b.h_xy, -b.h_z]], dtype=complex)
    return float(-(chi.conj() @ h_r @ chi).real * t)


def geometric_phase(params: ModelParams, band: str, k: float,
                    t: float) -> float:
    """total - dynamical, reduced to (-pi, pi]."""
    return principal_branch(total_phase(params, band, k, t)
                            - dynamical_phase(params, band, k, t))


def phase_record(params: ModelParams, band: str, k: float,
                 t: float) -> PhaseRecord:
    tot = total_phase(params, band, k, t)
    dyn = dynamical_phase(params, band, k, t)
    return PhaseRecord(total=tot, dynamical=dyn,
                       geometric=principal_branch(tot - dyn),
                       band=band, k=float(k), t=float(t))


def geometric_phase_grid(params: ModelParams, band: str, k_grid,
                         t: float) -> np.ndarray:
    """Geometric phase over a k array at fixed t; NaN where undefined.

    Uses the quasienergy-free form arg<chi|U_R|chi> + (w/2)<sz> t - w t/2,
    identical (mod 2 pi) to total - dynamical.
    """
    k_grid = np.asarray(k_grid, dtype=float)
    wa, wb = band_weights(params, band, k_grid)
    overlap = wa + np.exp(1j * params.omega_drive * t) * wb
    sz = wa - wb
    raw = (np.angle(overlap)
           + 0.5 * params.omega_drive * t * sz
           - 0.5 * params.omega_drive * t)
    out = np.asarray(principal_branch(raw), dtype=float)
    out[np.abs(overlap) < AMP_FLOOR] = np.nan
    return out


def winding_number(params: ModelParams, band: str, t: float,
                   k_grid_size: int = 2001,
                   return_raw: bool = False):
    """Dynamical invariant nu_band(t): winding of the geometric phase.

    Sums principal-branch-wrapped differences of the geometric phase over
    adjacent points of a uniform k grid on [0, pi] and divides by 2 pi.
    The result is rounded to the nearest integer; a raw value farther than
    0.05 from that integer raises WindingNotQuantized instead of rounding
    silently.
    """
    if k_grid_size < MIN_WINDING_GRID:
        raise ValueError(f"k_grid_size must be >= {MIN_WINDING_GRID}")
    guard = T_GUARD_FRACTION * params.period
    half = 0.5 * params.period
    # distance to the nearest (2n-1) T/2 for t > 0
    if t > 0:
        n_near = max(1, round((t / half + 1) / 2))
        for n in (n_near - 1, n_near, n_near + 1):
            if n >= 1 and abs(t - (2 * n - 1) * half) < guard:
                if dqpt_condition(params).has_dqpt:
                    raise NearCriticalTime(
                        f"t = {t} within {guard} of a critical time")

    k = np.linspace(0.0, math.pi, k_grid_size)
    phi = geometric_phase_grid(params, band, k, t)
    if np.isnan(phi).any():
        raise PhaseUndefined("geometric phase undefined on the winding grid")
    steps = np.asarray(principal_branch(np.diff(phi)))
    big = np.abs(steps) > math.pi * (1.0 - 1e-6)
    if np.any(big[:-1] & big[1:]):
        raise GridTooCoarse("two successive wrapped steps in the ambiguity band")
    raw = float(steps.sum() / (2.0 * math.pi))
    nu = int(round(raw))
    if abs(raw - nu) > WINDING_INT_TOL:
        raise WindingNotQuantized(f"raw winding {raw} not within "
                                  f"{WINDING_INT_TOL} of an integer")
    return (nu, raw) if return_raw else nu


def bloch_expectations(params: ModelParams, band: str, k: float, t: float):
    """(<sx>, <sy>, <sz>) of the evolved Floquet state at (k, t)."""
    fs = floquet_solution(params, k)
    chi = fs.chi_minus if band == "minus" else fs.chi_plus
    psi = micromotion(params, t) @ chi
    a, b = psi[0], psi[1]
    cross = 2.0 * a.conjugate() * b
    return (float(cross.real), float(cross.imag),
            float((abs(a) ** 2 - abs(b) ** 2)))


def geometric_phase_from_tomography(params: ModelParams, k: float, t: float,
                                    band: str = "minus") -> float:
    """Geometric phase reconstructed from Pauli expectation values.

    Mirrors the measurement pipeline: from (<sx>, <sy>, <sz>) of the evolved
    state build the Bloch angles (theta for the initial state from the model
    parameters, vartheta and phi for the evolved state, with the phi quadrant
    fixed by the sign of <sy>), form the overlap of initial and evolved
    modes, and subtract the analytically integrated dynamical contribution
    (<sz> is constant in the rotating frame).

    Only the lower band is supported; the overlap formula also assumes
    h_xy(k) >= 0, the regime in which the pipeline is used.
    """
    if band != "minus":
        raise BandUnsupported("tomography reconstruction defined for band "
                              "'minus' only")
    g = abs(complex(micromotion_overlap(params, band, k, t)))
    if g < AMP_FLOOR:
        raise PhaseUndefined(f"|G| = {g:.3e} < {AMP_FLOOR}")

    sx, sy, sz = bloch_expectations(params, band, k, t)
    w, d1, d2, amp = (params.omega_drive, params.delta1, params.delta2,
                      params.omega_amp)

    zcomp = d1 * math.cos(k) + d2 - w
    xcomp = amp * math.sin(k)
    theta = math.acos(zcomp / math.hypot(zcomp, xcomp))

    norm = math.sqrt(sx * sx + sy * sy + sz * sz)
    cos_vt = max(-1.0, min(1.0, sz / norm))
    rho = math.hypot(sx, sy)
    if rho > 0:
        phi = math.copysign(math.acos(max(-1.0, min(1.0, sx / rho))), 1.0)
        if sy < 0:
            phi = -phi
    else:
        phi = 0.0

    overlap = (math.sin(0.5 * theta) * math.sqrt(0.5 * (1.0 + cos_vt))
               - cmath.exp(1j * phi) * math.cos(0.5 * theta)
               * math.sqrt(0.5 * (1.0 - cos_vt)))
    return principal_branch(cmath.phase(overlap) + 0.5 * w * sz * t
                            - 0.5 * w * t)
