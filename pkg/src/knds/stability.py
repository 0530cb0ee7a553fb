"""Zero-temperature ("stable") configurations and the Regge-like relations.

A horizon has zero temperature exactly when it is a repeated root of B, so
a stable configuration solves ``B(r) = 0, B'(r) = 0`` for the pair (m, r)
at fixed (lam, a, Q^2).  Eliminating m gives

    lam r^4 - delta r^2 + eta = 0,   r^2 = (delta +- sqrt(sigma)) / (2 lam),
    m = r (2 delta -+ sqrt(sigma)) / 3,

with the + sign for the outer (r2 = r3) merge and - for the inner (r1 = r2)
merge.  :func:`stable_solution_oracle` solves the same 2x2 system by damped
Newton iteration without using these formulas.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import CONSTANTS, SourceParams
from .errors import DomainError, NoStableSolution, OracleFailure
from .horizons import Coincidence

__all__ = [
    "Character",
    "StableSolution",
    "ReggeCheck",
    "stable_mass_closed_form",
    "stable_solution_oracle",
    "stable_solutions_oracle",
    "kn_extremal",
    "triple_coincidence",
    "triple_lambda_for_eta",
    "check_regge_relations",
    "cosmos_mass",
    "classify_character",
    "link_E",
    "link_E_printed",
    "link_residuals",
]

NEGLIGIBLE_CHARGE = 1e-6
_TRIPLE_SIGMA_TOL = 1e-12


class Character(str, enum.Enum):
    TIMELIKE_BH = "time-like BH"
    COSMOLOGICAL_MERGE = "cosmological merge"
    TIMELIKE_COSMOS = "time-like cosmos"


_CHARACTER = {
    Coincidence.INNER: Character.TIMELIKE_BH,
    Coincidence.LAMBDA0_EXTREMAL: Character.TIMELIKE_BH,
    Coincidence.OUTER: Character.COSMOLOGICAL_MERGE,
    Coincidence.TRIPLE: Character.TIMELIKE_COSMOS,
}


@dataclass(frozen=True)
class StableSolution:
    params: SourceParams
    r_degenerate: float
    coincidence: Coincidence
    branch_sign: str | None = None
    character: Character | None = None

    def __post_init__(self):
        if self.character is None:
            object.__setattr__(self, "character", _CHARACTER[self.coincidence])

    @property
    def m(self) -> float:
        return self.params.m


@dataclass(frozen=True)
class ReggeCheck:
    relation: str
    lhs: float
    rhs: float
    residual: float
    approximate: bool = False


def _relative(lhs, rhs):
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def _branch_coincidence(branch):
    if branch == "outer":
        return Coincidence.OUTER, "+"
    if branch == "inner":
        return Coincidence.INNER, "-"
    raise ValueError(f"branch must be 'inner' or 'outer', got {branch!r}")


def _check_lambda(lam):
    if not lam > 0.0:
        raise DomainError(f"stable KNdS configurations need lam > 0, got {lam}")


def stable_mass_closed_form(lam: float, a: float, q_sq: float, branch: str) -> StableSolution:
    """Stable mass and degenerate radius from the eliminated system.

    Examples
    --------
    >>> sol = stable_mass_closed_form(1 / 9, 0.0, 0.0, "outer")
    >>> round(sol.m, 12), round(sol.r_degenerate, 12)
    (1.0, 3.0)
    """
    _check_lambda(lam)
    coincidence, sign = _branch_coincidence(branch)
    probe = SourceParams(lam=lam, m=0.0, a=a, q_sq=q_sq)
    delta, eta, sigma = probe.delta, probe.eta, probe.sigma
    if sigma < 0.0:
        raise NoStableSolution(f"sigma = {sigma!r} < 0: no stable configuration")
    root_sigma = math.sqrt(sigma)
    if delta + root_sigma <= 0.0:
        raise NoStableSolution(f"delta = {delta!r} <= 0: no positive degenerate radius")
    if branch == "outer":
        r2 = (delta + root_sigma) / (2.0 * lam)
        m_factor = 2.0 * delta - root_sigma
    else:
        # (delta - sqrt(sigma)) rewritten to avoid cancellation
        r2 = 2.0 * eta / (delta + root_sigma)
        m_factor = 2.0 * delta + root_sigma
    if not r2 > 0.0:
        raise NoStableSolution(f"{branch} branch degenerates to r = 0 (a = Q = 0)")
    r = math.sqrt(r2)
    m = r * m_factor / 3.0
    if abs(sigma) <= _TRIPLE_SIGMA_TOL * delta * delta:
        coincidence, sign = Coincidence.TRIPLE, None
    return StableSolution(
        params=probe.replace(m=m),
        r_degenerate=r,
        coincidence=coincidence,
        branch_sign=sign,
    )


def _newton_2x2(lam, delta, eta, m0, r0, max_iter):
    """Damped Newton on F(m, r) = (B, B') from (m0, r0); returns (m, r, trail)."""
    poly = kernels.horizon_poly
    dpoly = kernels.horizon_poly_deriv
    m, r = m0, r0
    trail = []

    def residual(m_, r_):
        f1 = poly(lam, m_, delta, eta, r_)
        f2 = dpoly(lam, m_, delta, eta, r_)
        s = max(1.0, abs(r_))
        norm = max(lam / 3.0 * s**4, abs(delta) * s * s, 2.0 * abs(m_) * s, eta, 1e-300)
        return f1, f2, math.hypot(f1, f2 * s) / norm

    f1, f2, res = residual(m, r)
    for it in range(max_iter):
        trail.append((it, m, r, res))
        d2 = -4.0 * lam * r * r + 2.0 * delta
        # J = [[dB/dr, dB/dm], [dB'/dr, dB'/dm]] = [[B', -2r], [B'', -2]]
        det = -2.0 * f2 + 2.0 * r * d2
        if det == 0.0:
            raise OracleFailure("singular Jacobian in stable-system Newton",
                                diagnostics={"trail": trail})
        dr = (-2.0 * -f1 - (-2.0 * r) * -f2) / det
        dm = (f2 * -f2 - d2 * -f1) / det
        step = 1.0
        for _ in range(40):
            m_new, r_new = m + step * dm, r + step * dr
            g1, g2, res_new = residual(m_new, r_new)
            if res_new < res or res_new == 0.0:
                break
            step *= 0.5
        else:
            break
        converged = abs(step * dr) <= 4e-16 * max(1.0, abs(r)) and abs(step * dm) <= 4e-16 * max(1.0, abs(m))
        m, r, f1, f2, res = m_new, r_new, g1, g2, res_new
        if converged or res <= 1e-16:
            trail.append((it + 1, m, r, res))
            break
    return m, r, trail


def stable_solutions_oracle(lam: float, a: float, q_sq: float,
                            n_grid: int = 400, max_iter: int = 60) -> list:
    """All stable (m, r) pairs found by grid-seeded damped Newton iteration.

    Seeds come from sign changes, on a log grid in r, of B' evaluated at the
    mass m_B(r) that puts a horizon at r.  Returned sorted by radius.
    """
    _check_lambda(lam)
    probe = SourceParams(lam=lam, m=0.0, a=a, q_sq=q_sq)
    delta, eta = probe.delta, probe.eta
    poly = kernels.horizon_poly
    dpoly = kernels.horizon_poly_deriv
    length = 1.0 / math.sqrt(lam)
    r_lo = 1e-6 * length if eta == 0.0 else 1e-3 * min(length, math.sqrt(eta))
    grid = np.geomspace(r_lo, 2.0 * length, n_grid)

    def mass_at(r):
        return poly(lam, 0.0, delta, eta, r) / (2.0 * r)

    def reduced(r):
        return dpoly(lam, mass_at(r), delta, eta, r)

    values = [reduced(float(r)) for r in grid]
    found = []
    diagnostics = []
    for i in range(n_grid - 1):
        lo, hi = float(grid[i]), float(grid[i + 1])
        v_lo, v_hi = values[i], values[i + 1]
        if v_lo == 0.0 or v_lo * v_hi > 0.0:
            continue
        for _ in range(12):
            mid = 0.5 * (lo + hi)
            v_mid = reduced(mid)
            if v_lo * v_mid <= 0.0:
                hi = mid
            else:
                lo, v_lo = mid, v_mid
        r_seed = 0.5 * (lo + hi)
        m, r, trail = _newton_2x2(lam, delta, eta, mass_at(r_seed), r_seed, max_iter)
        final_res = trail[-1][3]
        if not (final_res <= 1e-12 and r > 0.0 and m > 0.0):
            diagnostics.append({"seed": r_seed, "trail": trail})
            continue
        if all(abs(r - r_old) > 1e-9 * max(1.0, r) for _, r_old in found):
            found.append((m, r))
    if diagnostics and not found:
        raise OracleFailure("stable-system Newton failed from every seed",
                            diagnostics={"failures": diagnostics})
    found.sort(key=lambda mr: mr[1])
    return [(probe.replace(m=m), r) for m, r in found]


def stable_solution_oracle(lam: float, a: float, q_sq: float, branch: str,
                           n_grid: int = 400, max_iter: int = 60) -> StableSolution:
    """Numerical counterpart of :func:`stable_mass_closed_form`.

    With two solutions the smaller radius is the inner merge and the larger the
    outer one; a lone solution at a = Q = 0 is the outer merge.
    """
    coincidence, sign = _branch_coincidence(branch)
    sols = stable_solutions_oracle(lam, a, q_sq, n_grid=n_grid, max_iter=max_iter)
    if not sols:
        raise NoStableSolution("no stable configuration found by the oracle")
    eta = a * a + q_sq
    if len(sols) == 1:
        if eta == 0.0 and branch == "outer":
            params, r = sols[0]
        else:
            raise NoStableSolution(f"oracle found a single solution; no distinct {branch} branch")
    else:
        params, r = sols[0] if branch == "inner" else sols[-1]
    return StableSolution(params=params, r_degenerate=r, coincidence=coincidence, branch_sign=sign)


def kn_extremal(a: float, q_sq: float) -> StableSolution:
    """Lambda = 0 stable hole: m^2 = a^2 + Q^2, r+ = r- = m."""
    m = math.sqrt(a * a + q_sq)
    if m == 0.0:
        raise NoStableSolution("a = Q = 0 at lam = 0: no horizon")
    return StableSolution(
        params=SourceParams(lam=0.0, m=m, a=a, q_sq=q_sq),
        r_degenerate=m,
        coincidence=Coincidence.LAMBDA0_EXTREMAL,
    )


def triple_lambda_for_eta(a: float, eta: float) -> float:
    """Lambda > 0 with sigma = (1 - lam a^2/3)^2 - 4 lam eta = 0 and delta > 0."""
    if not eta > 0.0:
        raise DomainError("a triple coincidence needs a^2 + Q^2 > 0")
    # (a^4/9) x^2 - (2a^2/3 + 4 eta) x + 1 = 0, smaller root
    b = 2.0 * a * a / 3.0 + 4.0 * eta
    disc = b * b - 4.0 * a**4 / 9.0
    return 2.0 / (b + math.sqrt(disc))


def triple_coincidence(a: float, *, q_sq: float | None = None, lam: float | None = None) -> StableSolution:
    """The unique configuration with r1 = r2 = r3, fixed by ``a`` and one of ``q_sq`` or ``lam``.

    Examples
    --------
    >>> sol = triple_coincidence(0.0, q_sq=1.0)
    >>> sol.params.lam, round(sol.m, 6), round(sol.r_degenerate, 6)
    (0.25, 0.942809, 1.414214)
    """
    if (q_sq is None) == (lam is None):
        raise ValueError("give exactly one of q_sq or lam")
    a = abs(a)
    if lam is None:
        eta = a * a + q_sq
        lam = triple_lambda_for_eta(a, eta)
        delta = 1.0 - lam * a * a / 3.0
    else:
        _check_lambda(lam)
        delta = 1.0 - lam * a * a / 3.0
        if not delta > 0.0:
            raise DomainError(f"delta = {delta!r} <= 0: no triple coincidence")
        eta = delta * delta / (4.0 * lam)
        q_sq = eta - a * a
        if q_sq < 0.0:
            if q_sq < -1e-12 * eta:
                raise DomainError(f"lam={lam!r}, a={a!r} needs Q^2 = {q_sq!r} < 0")
            q_sq = 0.0
    m = math.sqrt(2.0 * delta**3 / (9.0 * lam))
    r = 3.0 * m / (2.0 * delta)
    return StableSolution(
        params=SourceParams(lam=lam, m=m, a=a, q_sq=q_sq),
        r_degenerate=r,
        coincidence=Coincidence.TRIPLE,
    )


def link_E(params: SourceParams) -> float:
    """E = 3 delta^3 + 4 lam delta eta - 18 m^2 lam (equals sigma (2 delta -+ sqrt sigma) on a stable branch)."""
    d, eta, lam, m = params.delta, params.eta, params.lam, params.m
    return 3.0 * d**3 + 4.0 * lam * d * eta - 18.0 * m * m * lam


def link_E_printed(params: SourceParams) -> float:
    """The variant with delta^2 in the first term; agrees with :func:`link_E` only when a = 0."""
    d, eta, lam, m = params.delta, params.eta, params.lam, params.m
    return 3.0 * d**2 + 4.0 * lam * d * eta - 18.0 * m * m * lam


def link_residuals(sol: StableSolution, E=link_E) -> dict:
    """Residuals of the (m, r) link relations at a stable solution.

    ``radius``: relative error of r = 3 m sigma / E.
    ``link``: 9 m^2 sigma (delta sigma - E) + 2 eta E^2, relative to its largest term.
    ``branch``: 2 delta sigma / E - 1 -+ sqrt(1 - 8 delta eta / (9 m^2)),
    with - for the outer branch and + for the inner one.
    """
    p = sol.params
    d, eta, sigma, m = p.delta, p.eta, p.sigma, p.m
    e = E(p)
    t1 = 9.0 * m * m * sigma * d * sigma
    t2 = -9.0 * m * m * sigma * e
    t3 = 2.0 * eta * e * e
    out = {
        "radius": _relative(3.0 * m * sigma / e, sol.r_degenerate) if e != 0.0 else math.inf,
        "link": abs(t1 + t2 + t3) / max(abs(t1), abs(t2), abs(t3), 1e-300),
    }
    if sol.branch_sign is not None:
        root = math.sqrt(max(0.0, 1.0 - 8.0 * d * eta / (9.0 * m * m)))
        sgn = 1.0 if sol.branch_sign == "+" else -1.0
        out["branch"] = abs(2.0 * d * sigma / e - 1.0 - sgn * root)
    return out


def check_regge_relations(sol: StableSolution) -> list:
    """Every Regge-like relation applicable to ``sol``, with relative residuals.

    Relations marked ``approximate`` hold only to O(lam a^2).
    """
    p = sol.params
    m2 = p.m * p.m
    checks = []

    def add(rel, lhs, rhs, approximate=False):
        checks.append(ReggeCheck(rel, lhs, rhs, _relative(lhs, rhs), approximate))

    if sol.coincidence is Coincidence.LAMBDA0_EXTREMAL:
        add("Eq10", m2, p.eta)
        if p.a > 0.0 and p.q_sq / (p.a * p.a) < NEGLIGIBLE_CHARGE:
            # G = c = 1: J = M a
            add("Eq10*", m2, p.m * p.a)
    elif sol.coincidence is Coincidence.TRIPLE:
        add("Eq18", m2, 8.0 / 9.0 * p.delta * p.eta)
        add("Eq19", m2, 2.0 / 9.0 * p.delta**3 / p.lam)
        add("Eq20", m2, 8.0 / 9.0 * p.eta, approximate=True)
        add("Eq21", 9.0 * p.lam * m2, 2.0, approximate=True)
    elif p.eta == 0.0 and sol.coincidence is Coincidence.OUTER:
        add("Eq13", 9.0 * p.lam * m2, 1.0)
        add("Eq13*", m2, 1.0 / (9.0 * p.lam))
    return checks


def cosmos_mass(lambda_si: float, *, constants=CONSTANTS) -> float:
    """Mass [kg] of the Schwarzschild-de Sitter hole whose two horizons merge, M = c^2 / (3 G sqrt(Lambda)).

    >>> f"{cosmos_mass(1e-52):.3e}"
    '4.489e+52'
    """
    if not lambda_si > 0.0:
        raise DomainError(f"Lambda must be positive, got {lambda_si}")
    return constants.c**2 / (3.0 * constants.G * math.sqrt(lambda_si))


def classify_character(sol: StableSolution) -> Character:
    return _CHARACTER[sol.coincidence]
