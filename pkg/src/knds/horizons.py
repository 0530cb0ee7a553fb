"""Horizon radii, degeneracy detection and causal regions I-IV."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

from . import kernels
from .core import (
    SourceParams,
    horizon_polynomial,
    horizon_polynomial_deriv,
    horizon_polynomial_deriv2,
)
from .errors import DegenerateStructureError, DomainError, LambdaZeroError, OnHorizonError

__all__ = [
    "DEFAULT_TOL",
    "Coincidence",
    "HorizonSet",
    "RegionLabel",
    "solve_horizons",
    "solve_horizons_kn",
    "solve_horizons_auto",
    "classify_region",
    "detect_coincidence",
]

DEFAULT_TOL = 1e-9

INNER_BH = "inner_bh"
OUTER_BH = "outer_bh"
COSMOLOGICAL = "cosmological"
NEGATIVE = "negative"
BOUNDARY = "boundary"


class Coincidence(str, enum.Enum):
    NONE = "none"
    INNER = "inner"  # r1 = r2
    OUTER = "outer"  # r2 = r3
    TRIPLE = "triple"
    LAMBDA0_EXTREMAL = "lambda0-extremal"


@dataclass(frozen=True)
class RegionLabel:
    region: str
    timelike: bool

    @property
    def character(self) -> str:
        return "time-like" if self.timelike else "space-like"


@dataclass(frozen=True)
class HorizonSet:
    """Real roots of B(r) = 0 with multiplicities and physical roles.

    ``roots`` holds the distinct real roots in ascending order;
    ``multiplicities`` and ``roles`` are aligned with it.  A role joining
    several labels with ``+`` marks a degenerate horizon, e.g.
    ``"outer_bh+cosmological"``.  Complex roots are recorded only through
    ``complex_pair_present``.
    """

    params: SourceParams
    roots: tuple
    multiplicities: tuple
    roles: tuple
    complex_pair_present: bool = False
    naked: bool = False
    tol: float = DEFAULT_TOL
    raw_roots: tuple = field(default=(), repr=False)
    anomalies: tuple = ()

    @property
    def expanded_roots(self) -> list:
        """All real roots repeated by multiplicity, ascending."""
        out = []
        for r, k in zip(self.roots, self.multiplicities):
            out.extend([r] * k)
        return out

    @property
    def all_real(self) -> bool:
        return self.params.lam != 0.0 and sum(self.multiplicities) == 4

    @property
    def r0(self):
        """The negative root, or None when there is none."""
        for r, role in zip(self.roots, self.roles):
            if role == NEGATIVE:
                return r
        return None

    @property
    def positive_roots(self) -> list:
        """Non-negative roots (the boundary root r = 0 included) with multiplicity."""
        return [r for r, role in self._expanded_with_roles() if role != NEGATIVE]

    @property
    def horizons(self) -> list:
        """``(radius, multiplicity, role)`` for every genuine horizon."""
        return [
            (r, k, role)
            for r, k, role in zip(self.roots, self.multiplicities, self.roles)
            if role not in (NEGATIVE, BOUNDARY)
        ]

    @property
    def horizon_radii(self) -> list:
        """Horizon radii with multiplicity, ascending (r1 <= r2 <= r3)."""
        out = []
        for r, k, _ in self.horizons:
            out.extend([r] * k)
        return out

    def multiplicity_of(self, r) -> int:
        for root, k in zip(self.roots, self.multiplicities):
            if root == r:
                return k
        raise KeyError(r)

    def _expanded_with_roles(self):
        for r, k, role in zip(self.roots, self.multiplicities, self.roles):
            for _ in range(k):
                yield r, role

    def vieta_residuals(self) -> dict:
        """Relative residuals of the root-coefficient relations (four real roots only)."""
        if not self.all_real:
            raise DomainError("Vieta relations need four real roots")
        lam = self.params.lam
        rs = self.expanded_roots
        scale = max(abs(r) for r in rs)
        total = sum(rs)
        pairs = sum(x * y for x, y in itertools.combinations(rs, 2))
        product = math.prod(rs)
        want_pairs = -3.0 * self.params.delta / lam
        want_product = -3.0 * self.params.eta / lam
        return {
            "sum": abs(total) / scale,
            "pair_sum": _rel(pairs, want_pairs, scale**2),
            "product": _rel(product, want_product, scale**4),
        }


def _rel(x, y, floor):
    return abs(x - y) / max(abs(x), abs(y), floor * 1e-300, 1e-300)


def _taylor_norm(params: SourceParams, c: float) -> float:
    s = max(1.0, abs(c))
    return max(abs(params.lam) / 3.0 * s**4, abs(params.delta) * s * s,
               2.0 * params.m * s, params.eta, 1e-300)


def _near_multiple(params: SourceParams, c: float, k: int, tol: float) -> bool:
    """True when B lies within ``tol`` (relative) of a polynomial with a k-fold root at c."""
    s = max(1.0, abs(c))
    norm = tol * _taylor_norm(params, c)
    taylor = (
        horizon_polynomial(params, c),
        horizon_polynomial_deriv(params, c) * s,
        horizon_polynomial_deriv2(params, c) / 2.0 * s * s,
    )
    return all(abs(t) <= norm for t in taylor[:k])


def _stationary_point(params: SourceParams, x0: float) -> float:
    """Root of B' near x0 (Newton on B' against B'')."""
    c = x0
    for _ in range(50):
        d2 = horizon_polynomial_deriv2(params, c)
        if d2 == 0.0:
            break
        step = horizon_polynomial_deriv(params, c) / d2
        c -= step
        if abs(step) <= 4e-16 * max(1.0, abs(c)):
            break
    return c


def _cluster(params: SourceParams, raw, tol):
    """Group the four numerical roots into (value, multiplicity) real roots.

    Returns ``(real_roots, complex_left)`` with ``real_roots`` a list of
    ``[value, multiplicity]``.
    """
    remaining = list(raw)
    merged = []

    # triple: B'' vanishes at the candidate, so the centre is known exactly
    if params.lam > 0.0 and params.delta > 0.0:
        c3 = math.sqrt(params.delta / (2.0 * params.lam))
        near = sorted(remaining, key=lambda z: abs(z - c3))[:3]
        radius = 10.0 * tol ** (1.0 / 3.0) * max(1.0, c3)
        if all(abs(z - c3) <= radius for z in near) and _near_multiple(params, c3, 3, tol):
            merged.append([c3, 3])
            for z in near:
                remaining.remove(z)

    # doubles, closest pairs first
    while len(remaining) >= 2:
        best = None
        for zi, zj in itertools.combinations(remaining, 2):
            scale = max(1.0, abs(zi), abs(zj))
            dist = abs(zi - zj)
            if dist <= tol * scale:
                cand = (dist, zi, zj, 0.5 * (zi.real + zj.real))
            else:
                c = _stationary_point(params, 0.5 * (zi.real + zj.real))
                radius = 10.0 * math.sqrt(tol) * max(1.0, abs(c))
                if not (abs(zi - c) <= radius and abs(zj - c) <= radius
                        and _near_multiple(params, c, 2, tol)):
                    continue
                cand = (dist, zi, zj, c)
            if best is None or cand[0] < best[0]:
                best = cand
        if best is None:
            break
        _, zi, zj, c = best
        merged.append([c, 2])
        remaining.remove(zi)
        remaining.remove(zj)

    real_roots = merged + [[z.real, 1] for z in remaining if z.imag == 0.0]
    complex_left = [z for z in remaining if z.imag != 0.0]
    real_roots.sort(key=lambda item: item[0])
    return real_roots, complex_left


def _assign_roles(params: SourceParams, real_roots, kn=False):
    roles = []
    horizon_slots = []
    for idx, (r, k) in enumerate(real_roots):
        if r == 0.0 and params.eta == 0.0:
            roles.append(BOUNDARY)
        elif r < 0.0:
            roles.append(NEGATIVE)
        else:
            roles.append(None)
            horizon_slots.extend([idx] * k)
    n = len(horizon_slots)
    if kn:
        names = [INNER_BH, OUTER_BH][-n:] if n else []
    elif n == 3:
        names = [INNER_BH, OUTER_BH, COSMOLOGICAL]
    elif n == 2:
        names = [OUTER_BH, COSMOLOGICAL]
    else:
        names = [COSMOLOGICAL] * n
    grouped = {}
    for idx, name in zip(horizon_slots, names):
        grouped.setdefault(idx, []).append(name)
    for idx, names_here in grouped.items():
        roles[idx] = "+".join(names_here)
    return tuple(roles)


def solve_horizons(params: SourceParams, tol: float = DEFAULT_TOL) -> HorizonSet:
    """Solve B(r) = 0 for Lambda != 0.

    Two or three numerical roots are reported as one degenerate root when
    they lie within ``tol * max(1, |r|)`` of each other, or when B is within
    relative distance ``tol`` (in Taylor coefficients) of a polynomial with a
    repeated root there.  The second test is what catches coincidences whose
    float roots split by O(sqrt(tol)) or turn into a complex pair.

    Examples
    --------
    >>> h = solve_horizons(SourceParams(lam=0.12, m=1.2, q_sq=1.44))
    >>> [round(r, 12) for r in h.expanded_roots]
    [-6.0, 1.0, 2.0, 3.0]
    """
    if params.lam == 0.0:
        raise LambdaZeroError("lam = 0: use solve_horizons_kn for the Kerr-Newman case")
    raw = kernels.solve_horizon_quartic(params.lam, params.m, params.delta, params.eta)
    real_roots, complex_left = _cluster(params, raw, tol)
    if params.eta == 0.0 and real_roots:
        # an exact root at r = 0; snap the numerical one
        i = min(range(len(real_roots)), key=lambda j: abs(real_roots[j][0]))
        if real_roots[i][1] == 1:
            real_roots[i][0] = 0.0
    anomalies = ()
    if sum(k for _, k in real_roots) == 4:
        negatives = sum(k for r, k in real_roots if r < 0.0)
        if negatives != 1:
            anomalies = (f"expected exactly one negative root, found {negatives}",)
    return HorizonSet(
        params=params,
        roots=tuple(r for r, _ in real_roots),
        multiplicities=tuple(k for _, k in real_roots),
        roles=_assign_roles(params, real_roots),
        complex_pair_present=bool(complex_left),
        tol=tol,
        raw_roots=tuple(raw),
        anomalies=anomalies,
    )


def solve_horizons_kn(params: SourceParams, tol: float = DEFAULT_TOL) -> HorizonSet:
    """Kerr-Newman horizons r+- = m +- sqrt(m^2 - a^2 - Q^2) (Lambda = 0).

    A naked singularity returns an empty set with ``naked=True``.  The
    discriminant is treated as zero when ``|m^2 - a^2 - Q^2| <= tol * max(m^2, a^2 + Q^2)``.
    """
    if params.lam != 0.0:
        raise DomainError("solve_horizons_kn requires lam = 0")
    m, eta = params.m, params.eta
    scale2 = max(m * m, eta)
    disc = m * m - eta
    if scale2 == 0.0 or disc < -tol * scale2:
        return HorizonSet(params=params, roots=(), multiplicities=(), roles=(),
                          naked=scale2 != 0.0, tol=tol)
    if disc <= tol * scale2:
        real_roots = [[m, 2]]
    else:
        r_plus = m + math.sqrt(disc)
        r_minus = eta / r_plus
        real_roots = [[r_minus, 1], [r_plus, 1]]
    return HorizonSet(
        params=params,
        roots=tuple(r for r, _ in real_roots),
        multiplicities=tuple(k for _, k in real_roots),
        roles=_assign_roles(params, real_roots, kn=True),
        tol=tol,
    )


def solve_horizons_auto(params: SourceParams, tol: float = DEFAULT_TOL) -> HorizonSet:
    """Dispatch on Lambda: the quartic solver, or the Kerr-Newman formula at Lambda = 0."""
    if params.lam == 0.0:
        return solve_horizons_kn(params, tol)
    return solve_horizons(params, tol)


def detect_coincidence(h: HorizonSet, tol: float | None = None) -> Coincidence:
    """Which horizons coincide.  With ``tol`` given the raw roots are re-clustered."""
    if tol is not None and tol != h.tol:
        h = solve_horizons_auto(h.params, tol)
    horizons = h.horizons
    if h.params.lam == 0.0:
        if any(k >= 2 for _, k, _ in horizons):
            return Coincidence.LAMBDA0_EXTREMAL
        return Coincidence.NONE
    for i, (r, k, _) in enumerate(horizons):
        if k >= 3:
            return Coincidence.TRIPLE
        if k == 2:
            above = any(other > r for other, _, _ in horizons[i + 1:])
            return Coincidence.INNER if above else Coincidence.OUTER
    return Coincidence.NONE


_MISSING = {
    Coincidence.INNER: ("II",),
    Coincidence.OUTER: ("III",),
    Coincidence.TRIPLE: ("II", "III"),
}


def classify_region(params: SourceParams, r: float, h: HorizonSet | None = None,
                    tol: float = DEFAULT_TOL) -> RegionLabel:
    """Region I-IV containing radius ``r`` and its time-like/space-like character.

    Needs three distinct positive horizons.

    >>> classify_region(SourceParams(lam=0.12, m=1.2, q_sq=1.44), 2.5)
    RegionLabel(region='III', timelike=True)
    """
    if h is None:
        h = solve_horizons_auto(params, tol)
    if not r > 0.0:
        raise DomainError(f"radius must be positive, got {r}")
    radii = h.horizon_radii
    for rn in radii:
        if abs(r - rn) <= tol * max(1.0, abs(rn)):
            raise OnHorizonError(f"r={r!r} lies on the horizon r={rn!r}", radius=rn)
    distinct = [rn for rn, _, _ in h.horizons]
    if len(distinct) != 3 or len(radii) != 3:
        kind = detect_coincidence(h)
        if kind in _MISSING:
            missing = _MISSING[kind]
            raise DegenerateStructureError(
                f"{kind.value} coincidence: region(s) {', '.join(missing)} absent",
                missing_regions=missing,
            )
        raise DegenerateStructureError(
            f"need three distinct positive horizons, found {len(distinct)}",
            missing_regions=(),
        )
    r1, r2, r3 = distinct
    if r < r1:
        label = "I"
    elif r < r2:
        label = "II"
    elif r < r3:
        label = "III"
    else:
        label = "IV"
    return RegionLabel(region=label, timelike=label in ("I", "III"))
