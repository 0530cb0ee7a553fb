"""Source parameters, unit conversion and the scalar metric functions.

Everything downstream works in geometric units (G = c = 1) with length as
the base dimension: ``m`` and ``a`` are lengths, ``q_sq`` is a squared
length and ``lam`` has dimension length**-2.  SI values are converted only
at the boundary, by :func:`to_geometric` and :func:`from_geometric`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants as _sc

from .errors import DomainError

__all__ = [
    "PhysicalConstants",
    "CONSTANTS",
    "SourceParams",
    "DerivedScalars",
    "MetricComponents",
    "to_geometric",
    "from_geometric",
    "horizon_polynomial",
    "horizon_polynomial_factored",
    "horizon_polynomial_deriv",
    "horizon_polynomial_deriv2",
    "horizon_polynomial_deriv3",
    "eval_metric",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 values (via :mod:`scipy.constants`), SI units."""

    G: float = _sc.G
    c: float = _sc.c
    hbar: float = _sc.hbar
    k_B: float = _sc.k
    epsilon_0: float = _sc.epsilon_0

    @property
    def epsilon_factor(self) -> float:
        """hbar / (2 pi k_B c), the factor turning surface gravity into temperature.

        Only documented; all temperatures in this package are reported in
        units of this factor.
        """
        return self.hbar / (2.0 * math.pi * self.k_B * self.c)


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class DerivedScalars:
    delta: float
    eta: float
    sigma: float
    cap_a: float


@dataclass(frozen=True)
class SourceParams:
    """Geometric-unit source parameters.

    Parameters
    ----------
    lam : float
        Cosmological constant [length**-2].  Negative values are rejected
        unless ``allow_negative_lambda`` is set; no physical role labels are
        guaranteed in that case.
    m : float
        Geometric mass G M / c**2 [length].
    a : float
        Specific angular momentum J / (M c) [length].  Only a**2 enters the
        formulas, so the absolute value is stored.
    q_sq : float
        Squared geometrized charge Q**2 [length**2].
    """

    lam: float
    m: float
    a: float = 0.0
    q_sq: float = 0.0
    allow_negative_lambda: bool = False

    def __post_init__(self):
        for name in ("lam", "m", "a", "q_sq"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "a", abs(self.a))
        if self.m < 0.0:
            raise DomainError(f"mass must be non-negative, got m={self.m}")
        if self.q_sq < 0.0:
            raise DomainError(f"q_sq must be non-negative, got q_sq={self.q_sq}")
        if self.lam < 0.0 and not self.allow_negative_lambda:
            raise DomainError(
                f"negative cosmological constant lam={self.lam} is not supported "
                "(pass allow_negative_lambda=True for exploratory use)"
            )

    @property
    def delta(self) -> float:
        return 1.0 - self.lam * self.a * self.a / 3.0

    @property
    def cap_a(self) -> float:
        return 1.0 + self.lam * self.a * self.a / 3.0

    @property
    def eta(self) -> float:
        return self.a * self.a + self.q_sq

    @property
    def sigma(self) -> float:
        d = self.delta
        return d * d - 4.0 * self.lam * self.eta

    @property
    def derived(self) -> DerivedScalars:
        return DerivedScalars(self.delta, self.eta, self.sigma, self.cap_a)

    def replace(self, **changes) -> "SourceParams":
        fields = dict(lam=self.lam, m=self.m, a=self.a, q_sq=self.q_sq,
                      allow_negative_lambda=self.allow_negative_lambda)
        fields.update(changes)
        return SourceParams(**fields)


@dataclass(frozen=True)
class MetricComponents:
    rho_sq: float
    b_of_r: float
    d_of_theta: float
    cap_a: float


def to_geometric(M_si, J_si, q_si, lambda_si, *, constants=CONSTANTS) -> SourceParams:
    """Convert SI mass [kg], angular momentum [kg m^2/s], charge [C] and Lambda [m^-2].

    >>> round(to_geometric(1.989e30, 0.0, 0.0, 0.0).m, 1)
    1477.1
    """
    if not M_si > 0.0:
        raise DomainError(f"mass must be positive, got M={M_si} kg")
    G, c = constants.G, constants.c
    m = G * M_si / c**2
    a = J_si / (M_si * c)
    q_sq = G * q_si**2 / (4.0 * math.pi * constants.epsilon_0 * c**4)
    return SourceParams(lam=lambda_si, m=m, a=a, q_sq=q_sq)


def from_geometric(params: SourceParams, *, constants=CONSTANTS):
    """Inverse of :func:`to_geometric`; returns ``(M, J, q, Lambda)`` with q >= 0."""
    G, c = constants.G, constants.c
    M = params.m * c**2 / G
    J = params.a * M * c
    q = math.sqrt(params.q_sq * 4.0 * math.pi * constants.epsilon_0 * c**4 / G)
    return M, J, q, params.lam


def horizon_polynomial(params: SourceParams, r):
    """B(r) = -lam r^4/3 + delta r^2 - 2 m r + a^2 + Q^2 (expanded, Horner form).

    Accepts scalars or numpy arrays (real or complex).
    """
    lam, m, delta, eta = params.lam, params.m, params.delta, params.eta
    return ((-lam / 3.0 * r * r + delta) * r - 2.0 * m) * r + eta


def horizon_polynomial_factored(params: SourceParams, r):
    """B(r) = (r^2 + a^2)(1 - lam r^2/3) - 2 m r + Q^2."""
    a2 = params.a * params.a
    return (r * r + a2) * (1.0 - params.lam * r * r / 3.0) - 2.0 * params.m * r + params.q_sq


def horizon_polynomial_deriv(params: SourceParams, r):
    return (-4.0 * params.lam / 3.0 * r * r + 2.0 * params.delta) * r - 2.0 * params.m


def horizon_polynomial_deriv2(params: SourceParams, r):
    return -4.0 * params.lam * r * r + 2.0 * params.delta


def horizon_polynomial_deriv3(params: SourceParams, r):
    return -8.0 * params.lam * r


def eval_metric(params: SourceParams, r, theta) -> MetricComponents:
    """Scalar coefficient functions of the Boyer-Lindquist-type metric.

    The sign of ``-b_of_r`` is the sign of g^rr.
    """
    cos2 = np.cos(theta) ** 2
    a2 = params.a * params.a
    rho_sq = r * r + a2 * cos2
    d_of_theta = 1.0 + params.lam * a2 / 3.0 * cos2
    return MetricComponents(
        rho_sq=float(rho_sq) if np.ndim(rho_sq) == 0 else rho_sq,
        b_of_r=horizon_polynomial(params, r),
        d_of_theta=float(d_of_theta) if np.ndim(d_of_theta) == 0 else d_of_theta,
        cap_a=params.cap_a,
    )
