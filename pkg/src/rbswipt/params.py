"""System parameter set, defaults, and the flat `key = value` config format.

SystemParams is a flat record of every scalar the simulator needs (geometry,
gain medium, doubling crystal, coatings, receiver optics, noise, photovoltaic
cell, safety, pump power), with properties assembling the per-module spec
objects.  Field names double as config keys.

Config files are plain text, one `key = value` assignment per line, `#`
comments allowed.  Values may carry a unit suffix (`f = 3 cm`,
`l_s = 0.4 mm`, `d_eff = 4.7 pm/V`, `eta_c = 43.9 %`); bare numbers are SI.
`gamma_diff` accepts a number or `model:farfield` / `model:pupil`;
`gamma_pd` accepts a number or `auto` (concentrator capture model).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from .it_channel import ConcentratorSpec, NoiseSpec
from .optics import CavityGeometry
from .pv import PVSpec
from .resonator import GainMediumSpec, LossBudget, SHGSpec
from .safety import SafetySpec


class ConfigError(ValueError):
    """Raised for unparseable or invalid configuration input."""


@dataclass(frozen=True)
class SystemParams:
    """Complete simulator configuration; defaults describe the reference
    desk-scale design (1064 nm resonant beam, 532 nm carrier)."""

    # cavity geometry [m]
    f: float = 0.03
    l: float = 0.03015
    d: float = 6.0
    # gain medium
    i_s: float = 1.1976e7  # saturation intensity [W/m^2]
    a_g: float = 2e-3  # aperture radius [m]
    l_g: float = 1e-3  # thickness [m]
    eta_c: float = 0.439  # combined pump efficiency
    gamma_g: float = 0.9851  # transmittance at the resonant wavelength
    lam: float = 1064e-9  # resonant wavelength [m]
    # doubling crystal
    d_eff: float = 4.7e-12  # effective nonlinear coefficient [m/V]
    l_s: float = 0.4e-3  # length [m]
    n0: float = 2.23  # refractive index
    gamma_shg: float = 0.99  # passive transmittance
    # coatings and loss factors
    gamma_l1: float = 0.99
    gamma_l2: float = 0.99
    gamma_l3: float = 0.99
    gamma_l4: float = 0.99
    r_m1: float = 0.995  # transmitter mirror reflectivity (resonant)
    r_m2: float = 0.915  # output-coupler reflectivity (resonant)
    r_m5_2nu: float = 0.995  # dichroic reflectivity at the doubled frequency
    gamma_m5_nu: float = 0.99  # dichroic transmittance at the fundamental
    gamma_m2_2nu: float = 0.99  # output-coupler transmittance at the doubled frequency
    gamma_g_eom: float = 0.9752  # gain-body + modulator transmittance (doubled)
    gamma_pv: float = 0.995  # photovoltaic surface transmittance
    alpha_air: float = 1e-4  # air attenuation [1/m]
    gamma_diff: float | str = "model:farfield"  # diffraction factor or model
    gamma_pd: float | str = "auto"  # detector capture ratio or 'auto'
    # photodiode concentrator
    a_pd: float = 1.6e-7  # detector area [m^2]
    psi_c: float = math.radians(30.0)  # semi-angle field of view [rad]
    n_c: float = 1.5  # concentrator refractive index
    t_s: float = 0.995  # concentrator surface transmittance
    psi: float = 0.0  # incidence angle [rad]
    # receiver electronics / noise
    b: float = 800e6  # bandwidth [Hz]
    r_il: float = 1e4  # load resistance [Ohm]
    i_bk: float = 5.1e-3  # background photocurrent [A]
    gamma: float = 0.4  # photodiode responsivity [A/W]
    # photovoltaic cell
    rho: float = 0.6  # responsivity [A/W]
    i0: float = 0.32e-6  # reverse saturation current [A]
    r_sh: float = 53.82  # shunt resistance [Ohm]
    r_s: float = 0.037  # series resistance [Ohm]
    n: float = 1.48  # diode ideality factor
    n_s: int = 1  # series cell count
    # shared temperature [K]
    t: float = 298.0
    # safety
    eta_p: float = 0.75  # pump source efficiency
    eta_t: float = 0.99  # pump transmission efficiency
    eta_a: float = 0.91  # gain absorption efficiency
    d_e: float = 0.1  # safety measurement distance [m]
    # drive
    p_in: float = 60.0  # electrical pump power [W]

    def __post_init__(self) -> None:
        # spec-object constructors carry the detailed validation
        _ = (self.geometry, self.gain, self.shg, self.loss,
             self.concentrator, self.noise, self.pv, self.safety)
        for name in ("gamma_l3", "gamma_l4", "r_m5_2nu", "gamma_m5_nu",
                     "gamma_m2_2nu", "gamma_g_eom", "gamma_pv"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must be in (0, 1], got {v}")
        gpd = self.gamma_pd
        if isinstance(gpd, str):
            if gpd != "auto":
                raise ValueError(f"gamma_pd must be a number or 'auto', got {gpd!r}")
        elif not 0.0 < float(gpd) <= 1.0:
            raise ValueError(f"gamma_pd must be in (0, 1], got {gpd}")
        if self.p_in < 0.0:
            raise ValueError(f"p_in must be non-negative, got {self.p_in}")

    @property
    def geometry(self) -> CavityGeometry:
        return CavityGeometry(f=self.f, l=self.l, d=self.d)

    @property
    def gain(self) -> GainMediumSpec:
        return GainMediumSpec(i_s=self.i_s, a_g=self.a_g, l_g=self.l_g,
                              eta_c=self.eta_c, gamma_g=self.gamma_g, lam=self.lam)

    @property
    def shg(self) -> SHGSpec:
        return SHGSpec(d_eff=self.d_eff, l_s=self.l_s, n0=self.n0,
                       gamma_shg=self.gamma_shg)

    @property
    def loss(self) -> LossBudget:
        return LossBudget(gamma_l1=self.gamma_l1, gamma_l2=self.gamma_l2,
                          r_m1=self.r_m1, r_m2=self.r_m2,
                          alpha_air=self.alpha_air, gamma_diff=self.gamma_diff)

    @property
    def concentrator(self) -> ConcentratorSpec:
        return ConcentratorSpec(a_pd=self.a_pd, psi_c=self.psi_c, n_c=self.n_c,
                                t_s=self.t_s, psi=self.psi)

    @property
    def noise(self) -> NoiseSpec:
        return NoiseSpec(b=self.b, t=self.t, r_il=self.r_il, i_bk=self.i_bk,
                         gamma=self.gamma)

    @property
    def pv(self) -> PVSpec:
        return PVSpec(rho=self.rho, i0=self.i0, r_sh=self.r_sh, r_s=self.r_s,
                      n=self.n, n_s=self.n_s, t=self.t)

    @property
    def safety(self) -> SafetySpec:
        return SafetySpec(eta_p=self.eta_p, eta_t=self.eta_t, eta_a=self.eta_a,
                          d_e=self.d_e, a_g=self.a_g, lam=self.lam)


_FIELD_NAMES = tuple(f.name for f in dataclasses.fields(SystemParams))
_STRING_OK = {"gamma_diff", "gamma_pd"}
_INT_FIELDS = {"n_s"}

# unit suffix -> SI multiplier (deg is converted, not scaled)
_UNITS: dict[str, float] = {
    "m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "µm": 1e-6, "nm": 1e-9, "pm": 1e-12,
    "m2": 1.0, "cm2": 1e-4, "mm2": 1e-6, "um2": 1e-12,
    "W": 1.0, "mW": 1e-3, "uW": 1e-6, "kW": 1e3,
    "A": 1.0, "mA": 1e-3, "uA": 1e-6, "µA": 1e-6,
    "V": 1.0, "mV": 1e-3,
    "Ohm": 1.0, "ohm": 1.0, "mOhm": 1e-3, "kOhm": 1e3, "MOhm": 1e6,
    "K": 1.0,
    "Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9,
    "rad": 1.0, "mrad": 1e-3,
    "%": 1e-2,
    "A/W": 1.0, "W/m2": 1.0, "W/cm2": 1e4, "m/V": 1.0, "pm/V": 1e-12, "1/m": 1.0,
}
_UNITS_DEG = "deg"

# human-readable SI unit hints for --print-defaults comments
_UNIT_HINT = {
    "f": "m", "l": "m", "d": "m", "i_s": "W/m2", "a_g": "m", "l_g": "m",
    "lam": "m", "d_eff": "m/V", "l_s": "m", "alpha_air": "1/m", "a_pd": "m2",
    "psi_c": "rad", "psi": "rad", "b": "Hz", "r_il": "Ohm", "i_bk": "A",
    "gamma": "A/W", "rho": "A/W", "i0": "A", "r_sh": "Ohm", "r_s": "Ohm",
    "t": "K", "d_e": "m", "p_in": "W",
}


def _parse_value(key: str, raw: str, where: str) -> float | int | str:
    tokens = raw.split()
    if not tokens:
        raise ConfigError(f"{where}: missing value for '{key}'")
    try:
        number = float(tokens[0])
    except ValueError:
        if key in _STRING_OK:
            return raw.strip()
        raise ConfigError(f"{where}: '{key}' needs a numeric value, got {raw!r}") from None
    if len(tokens) > 1:
        unit = " ".join(tokens[1:])
        if unit == _UNITS_DEG:
            number = math.radians(number)
        elif unit in _UNITS:
            number *= _UNITS[unit]
        else:
            raise ConfigError(f"{where}: unknown unit {unit!r} for '{key}'")
    if key in _INT_FIELDS:
        if number != int(number):
            raise ConfigError(f"{where}: '{key}' must be an integer")
        return int(number)
    return number


def parse_config_text(text: str) -> dict[str, float | int | str]:
    """Parse config text into a field -> value mapping (units applied)."""
    result: dict[str, float | int | str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        if "=" not in line:
            raise ConfigError(f"{where}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _FIELD_NAMES:
            raise ConfigError(f"{where}: unknown parameter {key!r}")
        result[key] = _parse_value(key, value.strip(), where)
    return result


def load_params(path: str | None = None, **overrides: float | int | str) -> SystemParams:
    """Defaults, optionally updated from a config file and keyword overrides."""
    values: dict[str, float | int | str] = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                values.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    values.update(overrides)
    try:
        return SystemParams(**values)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc


def format_defaults() -> str:
    """Default configuration as round-trippable `key = value` lines (SI)."""
    lines = []
    defaults = SystemParams()
    for field in dataclasses.fields(SystemParams):
        value = getattr(defaults, field.name)
        text = value if isinstance(value, str) else repr(value)
        hint = _UNIT_HINT.get(field.name)
        comment = f"  # {hint}" if hint else ""
        lines.append(f"{field.name} = {text}{comment}")
    return "\n".join(lines) + "\n"
