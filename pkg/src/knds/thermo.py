"""Surface gravity and horizon temperatures.

Temperatures are reported in units of hbar/(2 pi k_B c), so a temperature
equals the surface gravity numerically (dimension length**-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import SourceParams, horizon_polynomial_deriv
from .errors import DomainError, LambdaZeroError, UnsupportedConfigurationError
from .horizons import DEFAULT_TOL, HorizonSet, solve_horizons, solve_horizons_auto, solve_horizons_kn

__all__ = [
    "HorizonTemperature",
    "TemperatureReport",
    "surface_gravity",
    "temperature_product_form",
    "temperature_derivative_form",
    "temperature_kn",
    "temperature_sds",
    "horizon_angular_velocity",
    "temperature_report",
]


@dataclass(frozen=True)
class HorizonTemperature:
    radius: float
    multiplicity: int
    role: str
    surface_gravity: float
    temperature_over_epsilon: float
    omega: float

    @property
    def exact_zero(self) -> bool:
        return self.temperature_over_epsilon == 0.0


@dataclass(frozen=True)
class TemperatureReport:
    params: SourceParams
    entries: tuple


def surface_gravity(params: SourceParams, r: float) -> float:
    """|B'(r)| / (2 A (r^2 + a^2)); valid at any horizon, including Lambda = 0."""
    # divide by hypot twice so tiny radii do not underflow r^2 + a^2
    rho = math.hypot(r, params.a)
    if rho == 0.0:
        # horizon radius underflowed to zero (eta near the subnormal range)
        return math.inf
    return abs(horizon_polynomial_deriv(params, r)) / (2.0 * params.cap_a) / rho / rho


def _horizon(h: HorizonSet, n: int):
    radii = h.horizon_radii
    if not 1 <= n <= len(radii):
        raise DomainError(f"horizon index {n} out of range 1..{len(radii)}")
    r = radii[n - 1]
    return r, h.multiplicity_of(r)


def temperature_product_form(params: SourceParams, h: HorizonSet, n: int) -> float:
    """lam / (6 A (r_n^2 + a^2)) * |prod_{l != n} (r_n - r_l)| over all four roots.

    ``n`` is the 1-based horizon index into ``h.horizon_radii``.  A
    degenerate horizon returns exactly 0.
    """
    if params.lam == 0.0:
        raise LambdaZeroError("lam = 0: use temperature_kn")
    if not h.all_real:
        raise UnsupportedConfigurationError(
            "product form needs four real roots; this configuration has a complex pair"
        )
    r, k = _horizon(h, n)
    if k > 1:
        return 0.0
    others = list(h.expanded_roots)
    others.remove(r)
    prod = math.prod(r - rl for rl in others)
    rho = math.hypot(r, params.a)
    if rho == 0.0:
        return math.inf
    return params.lam / (6.0 * params.cap_a) / rho / rho * abs(prod)


def temperature_derivative_form(params: SourceParams, h: HorizonSet, n: int) -> float:
    """Canonical temperature: surface gravity at horizon ``n`` (exact 0 if degenerate)."""
    r, k = _horizon(h, n)
    if k > 1:
        return 0.0
    return surface_gravity(params, r)


def temperature_kn(params: SourceParams, which: str = "plus", tol: float = DEFAULT_TOL) -> float:
    """(r+ - r-) / (2 (r_pm^2 + a^2)) for Lambda = 0.

    The factor 1/2 is the Lambda -> 0 limit of the general formula and gives
    the Schwarzschild value 1/(4m).

    >>> temperature_kn(SourceParams(lam=0.0, m=1.0))
    0.25
    """
    if which not in ("plus", "minus"):
        raise ValueError("which must be 'plus' or 'minus'")
    h = solve_horizons_kn(params, tol)
    if h.naked or not h.roots:
        raise DomainError("m^2 < a^2 + Q^2: naked singularity, no horizon temperature")
    if len(h.roots) == 1:
        return 0.0
    r_minus, r_plus = h.roots
    r = r_plus if which == "plus" else r_minus
    return (r_plus - r_minus) / (2.0 * (r * r + params.a * params.a))


def temperature_sds(params: SourceParams, which: str = "B", tol: float = DEFAULT_TOL) -> float:
    """Schwarzschild-de Sitter horizon temperature (lam / (3 r^2)) |3m/lam - r^3|.

    ``which`` is ``"B"`` (black-hole horizon) or ``"C"`` (cosmological).
    """
    if which not in ("B", "C"):
        raise ValueError("which must be 'B' or 'C'")
    if params.a != 0.0 or params.q_sq != 0.0:
        raise DomainError("temperature_sds requires a = 0 and Q^2 = 0")
    x = 9.0 * params.lam * params.m**2
    if not x > 0.0:
        raise DomainError("temperature_sds requires lam > 0 and m > 0")
    if x > 1.0 + tol:
        raise DomainError(f"9 lam m^2 = {x!r} > 1: no black-hole horizon")
    h = solve_horizons(params, tol)
    horizons = h.horizons
    if len(horizons) == 1 and horizons[0][1] == 2:
        return 0.0
    if len(horizons) != 2:
        raise DomainError(f"expected two SdS horizons, found {len(horizons)}")
    r = horizons[0][0] if which == "B" else horizons[1][0]
    lam = params.lam
    return lam / (3.0 * r * r) * abs(3.0 * params.m / lam - r**3)


def horizon_angular_velocity(params: SourceParams, h: HorizonSet, n: int) -> float:
    """a / (r_n^2 + a^2)."""
    r, _ = _horizon(h, n)
    return _omega(r, params.a)


def _omega(r, a):
    if a == 0.0:
        return 0.0
    rho = math.hypot(r, a)
    return a / rho / rho


def temperature_report(params: SourceParams, tol: float = DEFAULT_TOL,
                       h: HorizonSet | None = None) -> TemperatureReport:
    """Temperature, surface gravity and angular velocity at every distinct horizon."""
    if h is None:
        h = solve_horizons_auto(params, tol)
    if h.naked:
        raise DomainError("naked singularity: no horizons")
    entries = []
    a = params.a
    for r, k, role in h.horizons:
        kappa = 0.0 if k > 1 else surface_gravity(params, r)
        entries.append(HorizonTemperature(
            radius=r,
            multiplicity=k,
            role=role,
            surface_gravity=kappa,
            temperature_over_epsilon=kappa,
            omega=_omega(r, a),
        ))
    return TemperatureReport(params=params, entries=tuple(entries))
