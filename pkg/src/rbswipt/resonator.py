"""Steady-state intracavity power balance with intracavity frequency doubling.

The circulating power is found from a saturated-gain round-trip balance
(Rigrod-style two-mirror analysis) in which both end reflectors are replaced
by equivalent amplitude reflection coefficients r1 (transmitter side, lumping
coatings, the doubling crystal and its conversion loss) and r2 (receiver side,
lumping the gain medium transmittance, air, coatings and diffraction
spillover).  The doubling efficiency depends on the circulating power, which
in turn depends on the conversion loss, so the pair (P4, eta) is solved as a
damped fixed point.

Traveling-wave power stations around the loop: P4 is the wave incident on the
transmitter-side equivalent mirror, P1 = r1^2 * P4 its reflection, P2 =
(r1/r2) * P4 the wave incident on the receiver-side mirror, P3 = r2^2 * P2 its
reflection; P1*P4 = P2*P3 is an exact invariant.  The frequency-doubled
carrier leaves the crystal with power P_c = 2 * eta * P4 (both directions).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .constants import C_LIGHT, EPSILON_0
from .optics import CavityGeometry, RayMatrix, beam_radius


@dataclass(frozen=True)
class GainMediumSpec:
    """Thin-disk gain medium: saturation intensity i_s [W/m^2], aperture radius
    a_g [m], thickness l_g [m], combined pump efficiency eta_c, single-pass
    transmittance gamma_g, lasing wavelength lam [m]."""

    i_s: float
    a_g: float
    l_g: float
    eta_c: float
    gamma_g: float
    lam: float

    def __post_init__(self) -> None:
        for name in ("i_s", "a_g", "l_g", "eta_c", "gamma_g", "lam"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.eta_c > 1.0 or self.gamma_g > 1.0:
            raise ValueError("eta_c and gamma_g must be <= 1")

    @property
    def volume(self) -> float:
        return math.pi * self.a_g**2 * self.l_g


@dataclass(frozen=True)
class SHGSpec:
    """Frequency-doubling crystal: effective nonlinear coefficient d_eff [m/V],
    length l_s [m], refractive index n0, passive transmittance gamma_shg."""

    d_eff: float
    l_s: float
    n0: float
    gamma_shg: float

    def __post_init__(self) -> None:
        if self.d_eff < 0.0:
            raise ValueError("d_eff must be non-negative")
        for name in ("l_s", "n0", "gamma_shg"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.n0 <= 1.0:
            raise ValueError("n0 must exceed 1")
        if self.gamma_shg > 1.0:
            raise ValueError("gamma_shg must be <= 1")


@dataclass(frozen=True)
class LossBudget:
    """Round-trip loss factors at the lasing wavelength.

    gamma_l1/gamma_l2: lens transmittances; r_m1/r_m2: mirror reflectivities;
    alpha_air: air attenuation [1/m]; gamma_diff: diffraction spillover factor,
    either a constant in (0, 1] or a model name 'model:farfield' /
    'model:pupil' resolved per geometry by resolve_gamma_diff.
    """

    gamma_l1: float
    gamma_l2: float
    r_m1: float
    r_m2: float
    alpha_air: float
    gamma_diff: float | str = "model:farfield"

    def __post_init__(self) -> None:
        for name in ("gamma_l1", "gamma_l2", "r_m1", "r_m2"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must be in (0, 1], got {v}")
        if self.alpha_air < 0.0:
            raise ValueError("alpha_air must be non-negative")
        if isinstance(self.gamma_diff, str):
            if not self.gamma_diff.startswith("model:"):
                raise ValueError(
                    f"gamma_diff string must be 'model:<name>', got {self.gamma_diff!r}"
                )
        elif not 0.0 < float(self.gamma_diff) <= 1.0:
            raise ValueError(f"gamma_diff must be in (0, 1], got {self.gamma_diff}")


@dataclass(frozen=True)
class IntracavitySolution:
    """Converged traveling-wave powers [W], doubling efficiency, equivalent
    reflection coefficients and carrier power; status 'lasing' or
    'below_threshold' (all powers zero)."""

    p1: float
    p2: float
    p3: float
    p4: float
    eta_shg: float
    r1: float
    r2: float
    p_c: float
    status: str


def air_transmittance(alpha_air: float, d: float) -> float:
    """One-way air transmittance exp(-alpha_air * d)."""
    if alpha_air < 0.0 or d < 0.0:
        raise ValueError("alpha_air and d must be non-negative")
    return math.exp(-alpha_air * d)


def diffraction_loss(
    geom: CavityGeometry,
    abcd: RayMatrix,
    a_g: float,
    lam: float,
    model: str = "farfield",
) -> float:
    """Per-pass fraction of the beam captured by the receiving aperture a_g.

    Both models score a Gaussian of radius w against a centred circular
    aperture of radius a_g: captured fraction 1 - exp(-2*a_g^2/w^2).

    'farfield' (default): w is the far-field divergence spread of the
    aperture-filling mode over one gap length, w = lam*d/(pi*a_g).  Goes to 1
    as d -> 0 and decays smoothly with distance.

    'pupil': w is the multimode beam radius at the receiver pupil plane
    z = l + f + d.  Much more pessimistic at desk scales, because the anchored
    multimode radius there is comparable to the aperture itself.
    """
    if model == "farfield":
        w = lam * geom.d / (math.pi * a_g)
    elif model == "pupil":
        w = beam_radius(geom, abcd, a_g, lam, geom.l + geom.f + geom.d).w
    else:
        raise ValueError(f"unknown diffraction-loss model {model!r}")
    if w == 0.0:
        return 1.0
    return 1.0 - math.exp(-2.0 * a_g * a_g / (w * w))


def resolve_gamma_diff(
    loss: LossBudget, geom: CavityGeometry, abcd: RayMatrix, a_g: float, lam: float
) -> float:
    """Resolve the diffraction factor: user constant passes through unchanged,
    'model:<name>' strings dispatch to diffraction_loss."""
    gd = loss.gamma_diff
    if isinstance(gd, str):
        return diffraction_loss(geom, abcd, a_g, lam, model=gd.removeprefix("model:"))
    return float(gd)


def equivalent_reflectances(
    loss: LossBudget,
    shg: SHGSpec,
    gain: GainMediumSpec,
    eta_shg: float,
    d: float,
    gamma_diff: float,
) -> tuple[float, float]:
    """Equivalent amplitude reflection coefficients of the two cavity ends.

    r1 = (1 - eta) * gamma_shg * sqrt(gamma_l1^2 * r_m1)
    r2 = gamma_g * gamma_air * sqrt(gamma_l2^2 * r_m2 * gamma_diff)
    """
    if not 0.0 <= eta_shg < 1.0:
        raise ValueError("eta_shg must be in [0, 1)")
    r1 = (1.0 - eta_shg) * shg.gamma_shg * math.sqrt(loss.gamma_l1**2 * loss.r_m1)
    r2 = (
        gain.gamma_g
        * air_transmittance(loss.alpha_air, d)
        * math.sqrt(loss.gamma_l2**2 * loss.r_m2 * gamma_diff)
    )
    return r1, r2


def shg_conversion_coefficient(shg: SHGSpec, lam: float) -> float:
    """Plane-wave doubling coefficient K [m^2/W]: eta = K * intensity."""
    return (
        8.0
        * math.pi**2
        * shg.d_eff**2
        * shg.l_s**2
        / (EPSILON_0 * C_LIGHT * lam**2 * shg.n0**3)
    )


def shg_efficiency(shg: SHGSpec, p4: float, w0: float, lam: float) -> float:
    """Doubling efficiency for circulating power p4 focused to radius w0.

    eta = K * 2*p4/(pi*w0^2) (undepleted plane-wave model).  Values above 0.1
    stretch the low-conversion assumption and trigger a warning.
    """
    if p4 < 0.0:
        raise ValueError("p4 must be non-negative")
    if not w0 > 0.0:
        raise ValueError("w0 must be positive")
    eta = shg_conversion_coefficient(shg, lam) * 2.0 * p4 / (math.pi * w0 * w0)
    if eta > 0.1:
        warnings.warn(
            f"doubling efficiency {eta:.3g} exceeds the low-conversion assumption",
            stacklevel=2,
        )
    return eta


def plane_wave_valid(shg: SHGSpec, w0: float, lam: float) -> bool:
    """True when the crystal is shorter than the focal Rayleigh range
    pi*w0^2/lam, i.e. the plane-wave doubling model is self-consistent.
    Informational only; tight focusing setups commonly violate it."""
    return shg.l_s < math.pi * w0 * w0 / lam


def rigrod_p4(gain: GainMediumSpec, r1: float, r2: float, p_in: float) -> float:
    """Circulating power incident on the transmitter-side equivalent mirror.

    P4 = [pi*a_g^2*i_s / ((1 + r1/r2)*(1 - r2*r1))]
         * [l_g*eta_c*p_in/(i_s*V) - ln(1/(r2*r1))]

    Returns 0 when the bracket is non-positive (pump below threshold).
    """
    if not (0.0 < r1 <= 1.0 and 0.0 < r2 <= 1.0):
        raise ValueError("reflection coefficients must be in (0, 1]")
    rr = r1 * r2
    if rr >= 1.0:
        raise ValueError("lossless cavity divergence: r1*r2 must be < 1")
    if p_in < 0.0:
        raise ValueError("p_in must be non-negative")
    bracket = gain.l_g * gain.eta_c * p_in / (gain.i_s * gain.volume) - math.log(1.0 / rr)
    if bracket <= 0.0:
        return 0.0
    prefactor = math.pi * gain.a_g**2 * gain.i_s / ((1.0 + r1 / r2) * (1.0 - rr))
    return prefactor * bracket


def lasing_threshold(gain: GainMediumSpec, r1: float, r2: float) -> float:
    """Pump power at which the round-trip gain bracket crosses zero."""
    return math.log(1.0 / (r1 * r2)) * gain.i_s * math.pi * gain.a_g**2 / gain.eta_c


def solve_intracavity(
    gain: GainMediumSpec,
    shg: SHGSpec,
    loss: LossBudget,
    p_in: float,
    w0: float,
    gamma_diff: float,
    d: float,
    damping: float = 0.5,
    rel_tol: float = 1e-10,
    max_iter: int = 10000,
) -> IntracavitySolution:
    """Solve the coupled (P4, eta) power balance by damped fixed-point iteration.

    w0 is the multimode beam radius at the doubling crystal and gamma_diff the
    already-resolved diffraction factor.  Iterates
    eta <- eta + damping * (shg_efficiency(P4(eta)) - eta) until the relative
    change of P4 drops below rel_tol.  A pump below the eta = 0 threshold
    returns an all-zero solution with status 'below_threshold' (the zero-loss
    reflectances are kept so the threshold stays reconstructable).
    """
    eta = 0.0
    p4_prev = None
    for _ in range(max_iter):
        r1, r2 = equivalent_reflectances(loss, shg, gain, eta, d, gamma_diff)
        p4 = rigrod_p4(gain, r1, r2, p_in)
        if p4 <= 0.0:
            return IntracavitySolution(
                p1=0.0, p2=0.0, p3=0.0, p4=0.0, eta_shg=0.0,
                r1=r1, r2=r2, p_c=0.0, status="below_threshold",
            )
        if p4_prev is not None and abs(p4 - p4_prev) <= rel_tol * abs(p4):
            p2 = (r1 / r2) * p4
            return IntracavitySolution(
                p1=r1 * r1 * p4,
                p2=p2,
                p3=r2 * r2 * p2,
                p4=p4,
                eta_shg=eta,
                r1=r1,
                r2=r2,
                p_c=2.0 * eta * p4,
                status="lasing",
            )
        p4_prev = p4
        eta_target = shg_efficiency(shg, p4, w0, gain.lam)
        eta = eta + damping * (eta_target - eta)
        # conversion cannot exceed unity; keeps transient iterates in-domain
        eta = min(eta, 1.0 - 1e-12)
    raise RuntimeError(
        f"intracavity power balance did not converge in {max_iter} iterations "
        f"(last P4 = {p4_prev}, eta = {eta})"
    )
