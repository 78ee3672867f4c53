"""Eye-safety arithmetic for the pump-excited gain medium.

The gain disk glows with spontaneous emission in all directions; with a
high-reflectivity coating behind it, the forward irradiance at measurement
distance d_e is 2*P_a/(4*pi*d_e^2) for absorbed pump power P_a.  The limit is
the extended-source maximum permissible exposure (MPE) in the style of the
IEC 60825-1 correction factors:

    MPE = base * C4 * C6 * C7  [W/m^2]

with C4 the wavelength factor (1 below 700 nm, 10^(0.002*(lam-700)) over
700-1050 nm, 5 over 1050-1400 nm), C6 = clamp(alpha, 1.5 mrad, 100 mrad)/1.5
the extended-source factor for angular subtense alpha, and C7 = 1 across the
supported band.  The base coefficient 10.1175 W/m^2 is a calibrated
reconstruction (certified MPE tables can be supplied as an override); treat
the output as a design aid, not a certification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MPE_BASE = 10.1175  # W/m^2; calibrated so MPE(1064 nm, 40 mrad) = 1349 W/m^2
_ALPHA_MIN = 1.5e-3  # rad, point-source floor of C6
_ALPHA_MAX = 100e-3  # rad, extended-source cap of C6


@dataclass(frozen=True)
class SafetySpec:
    """Pump-path efficiencies (source eta_p, transmission eta_t, absorption
    eta_a), measurement distance d_e [m], gain aperture radius a_g [m] and
    wavelength lam [m]."""

    eta_p: float
    eta_t: float
    eta_a: float
    d_e: float
    a_g: float
    lam: float

    def __post_init__(self) -> None:
        for name in ("eta_p", "eta_t", "eta_a"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must be in (0, 1]")
        for name in ("d_e", "a_g", "lam"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")


def absorbed_pump_power(spec: SafetySpec, p_in: float) -> float:
    """Pump power absorbed by the gain medium: eta_p*eta_t*eta_a*p_in."""
    if p_in < 0.0:
        raise ValueError("p_in must be non-negative")
    return spec.eta_p * spec.eta_t * spec.eta_a * p_in


def spontaneous_irradiance(spec: SafetySpec, p_in: float) -> float:
    """Spontaneous-emission irradiance [W/m^2] at distance d_e.

    Factor 2 accounts for the high-reflectivity coating folding the backward
    hemisphere forward.
    """
    return 2.0 * absorbed_pump_power(spec, p_in) / (4.0 * math.pi * spec.d_e**2)


def angular_subtense(spec: SafetySpec) -> float:
    """Apparent source subtense 2*a_g/d_e [rad] at the measurement distance."""
    return 2.0 * spec.a_g / spec.d_e


def load_mpe_table(path: str) -> list[tuple[float, float]]:
    """Read an override table: lines 'wavelength_nm mpe_W_per_m2', sorted."""
    rows: list[tuple[float, float]] = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"malformed MPE table line: {raw!r}")
            rows.append((float(parts[0]), float(parts[1])))
    if not rows:
        raise ValueError("MPE table is empty")
    rows.sort()
    return rows


def mpe_extended_source(
    lam: float, alpha: float, table: list[tuple[float, float]] | None = None
) -> float:
    """Long-exposure extended-source MPE [W/m^2] for wavelength lam [m] and
    angular subtense alpha [rad].

    With `table` given (certified values, (nm, W/m^2) pairs), the MPE is
    linearly interpolated in wavelength instead of reconstructed.
    """
    lam_nm = lam * 1e9
    if not 400.0 <= lam_nm <= 1400.0:
        raise ValueError(f"wavelength {lam_nm:.1f} nm outside the supported 400-1400 nm band")
    if alpha <= 0.0:
        raise ValueError("angular subtense must be positive")
    if table is not None:
        wl = np.array([row[0] for row in table])
        vals = np.array([row[1] for row in table])
        return float(np.interp(lam_nm, wl, vals))
    if lam_nm < 700.0:
        c4 = 1.0
    elif lam_nm < 1050.0:
        c4 = 10.0 ** (0.002 * (lam_nm - 700.0))
    else:
        c4 = 5.0
    c6 = min(max(alpha, _ALPHA_MIN), _ALPHA_MAX) / _ALPHA_MIN
    c7 = 1.0
    return MPE_BASE * c4 * c6 * c7


def max_safe_source_power(
    spec: SafetySpec, table: list[tuple[float, float]] | None = None
) -> tuple[float, float]:
    """(P_a_safe, P_in_safe): largest absorbed and electrical pump powers whose
    spontaneous-emission irradiance at d_e stays at the MPE."""
    mpe = mpe_extended_source(spec.lam, angular_subtense(spec), table)
    p_a_safe = mpe * 4.0 * math.pi * spec.d_e**2 / 2.0
    p_in_safe = p_a_safe / (spec.eta_p * spec.eta_t * spec.eta_a)
    return p_a_safe, p_in_safe
