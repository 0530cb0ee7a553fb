"""Radial null geodesics of the static (a = 0) metric.

Along a radial null ray dt/dr = +-r^2 / B(r) (upper sign outgoing).  With
B = -(lam/3) prod_m (r - r_m) and four simple roots the partial-fraction
residues give

    t(r) = -+ (3/lam) sum_m alpha_m r_m^2 log|r/r_m - 1| + C,
    alpha_m = 1 / prod_{l != m} (r_m - r_l).

:func:`geodesic_integrate_numerical` integrates r^2/B(r) by adaptive
quadrature and serves as the independent check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .core import SourceParams, horizon_polynomial
from .errors import ClosedFormUnavailableError, DomainError, OnHorizonError
from .horizons import DEFAULT_TOL, HorizonSet, RegionLabel, solve_horizons

__all__ = [
    "OUTGOING",
    "INGOING",
    "GeodesicCoefficients",
    "GeodesicCurve",
    "geodesic_coefficients",
    "geodesic_time",
    "geodesic_integrate_numerical",
    "figure2_params",
    "figure2_dataset",
    "region_intervals",
    "sample_curves",
]

OUTGOING = "outgoing"
INGOING = "ingoing"

HORIZON_OFFSET = 1e-6  # sampling stops this far (relative) from a horizon
REGION_IV_EXTENT = 2.0  # region IV sampled out to this multiple of r3


def _direction_sign(direction):
    if direction == OUTGOING:
        return 1.0
    if direction == INGOING:
        return -1.0
    raise ValueError(f"direction must be {OUTGOING!r} or {INGOING!r}, got {direction!r}")


@dataclass(frozen=True)
class GeodesicCoefficients:
    roots: tuple
    alpha: tuple
    lam: float

    def residue_sum(self) -> float:
        """sum alpha_m r_m^2, which vanishes identically."""
        return math.fsum(al * r * r for al, r in zip(self.alpha, self.roots))


@dataclass(frozen=True)
class GeodesicCurve:
    direction: str
    region: RegionLabel
    interval: tuple
    c_const: float
    samples: list = field(repr=False)
    coeffs: GeodesicCoefficients | None = None
    provenance: str = "closed-form"


def geodesic_coefficients(h: HorizonSet) -> GeodesicCoefficients:
    """alpha_m for the four simple roots of a static configuration.

    >>> from knds.core import SourceParams
    >>> from knds.horizons import solve_horizons
    >>> c = geodesic_coefficients(solve_horizons(SourceParams(lam=0.12, m=1.2, q_sq=1.44)))
    >>> [round(1 / x, 9) for x in c.alpha]
    [-504.0, 14.0, -8.0, 18.0]
    """
    if h.params.a != 0.0:
        raise DomainError("closed-form radial geodesics are implemented for a = 0 only")
    if not h.all_real or len(h.roots) != 4:
        raise ClosedFormUnavailableError(
            "closed form needs four distinct real roots; use geodesic_integrate_numerical"
        )
    roots = tuple(h.roots)
    alpha = []
    for i, ri in enumerate(roots):
        alpha.append(1.0 / math.prod(ri - rl for j, rl in enumerate(roots) if j != i))
    return GeodesicCoefficients(roots=roots, alpha=tuple(alpha), lam=h.params.lam)


def _interval_of(roots, r):
    pos = sorted(x for x in roots if x >= 0.0)
    lo = 0.0
    for x in pos:
        if r < x:
            return (lo, x)
        lo = x
    return (lo, math.inf)


def geodesic_time(coeffs: GeodesicCoefficients, direction: str, r: float,
                  c_const: float = 0.0, anchor_r: float | None = None) -> float:
    """Closed-form t(r) on one branch.

    ``anchor_r`` is a radius where ``c_const`` was fixed; a warning is issued
    when ``r`` lies in a different inter-horizon interval.
    """
    sign = _direction_sign(direction)
    for rm in coeffs.roots:
        if r == rm or abs(r - rm) <= 1e-15 * max(1.0, abs(rm)):
            raise OnHorizonError(f"t(r) diverges at the root r={rm!r}", radius=rm)
    if anchor_r is not None and _interval_of(coeffs.roots, anchor_r) != _interval_of(coeffs.roots, r):
        warnings.warn(
            f"r={r!r} is not in the interval of the anchor r={anchor_r!r}; "
            "the integration constant belongs to another branch",
            RuntimeWarning,
            stacklevel=2,
        )
    total = math.fsum(
        al * rm * rm * math.log(abs(r / rm - 1.0))
        for al, rm in zip(coeffs.alpha, coeffs.roots)
        if rm != 0.0
    )
    return -sign * 3.0 / coeffs.lam * total + c_const


def _exclusion(h: HorizonSet, rn: float) -> float:
    """Half-width of the no-sampling zone around the horizon ``rn``.

    A merged root is really a tight cluster of float roots, so its zone also
    covers twice the cluster spread.
    """
    base = HORIZON_OFFSET * max(1.0, abs(rn))
    if h.multiplicity_of(rn) == 1:
        return base
    spread = 0.0
    for z in h.raw_roots:
        nearest = min(h.roots, key=lambda x: abs(z - x))
        if nearest == rn:
            spread = max(spread, abs(z - rn))
    return max(base, 2.0 * spread)


def _check_interval(params: SourceParams, h: HorizonSet, r_start, r_end):
    lo, hi = min(r_start, r_end), max(r_start, r_end)
    for rn in h.roots:
        if rn == 0.0:
            continue
        # samples sit exactly at the offset, so compare with a hair of slack
        margin = _exclusion(h, rn) * (1.0 - 1e-6)
        if lo - margin < rn < hi + margin:
            raise OnHorizonError(
                f"interval [{lo!r}, {hi!r}] reaches the horizon r={rn!r}", radius=rn
            )


def _breakpoints(lo, hi, roots):
    """Split [lo, hi] so no piece is longer than half its distance to a root."""
    if not roots:
        return [lo, hi]
    pts = [lo]
    x = lo
    while x < hi:
        x = min(hi, x + 0.5 * min(abs(x - rn) for rn in roots))
        pts.append(x)
    return pts


def _segment(integrand, lo, hi, roots):
    if lo == hi:
        return 0.0
    sign = 1.0
    if lo > hi:
        lo, hi, sign = hi, lo, -1.0
    total = []
    pts = _breakpoints(lo, hi, roots)
    with warnings.catch_warnings():
        # next to a double root the float value of B is itself noisy, so quad
        # may report that it cannot reach epsrel; its estimate is still the best available
        warnings.simplefilter("ignore", IntegrationWarning)
        for x0, x1 in zip(pts[:-1], pts[1:]):
            val, _ = quad(integrand, x0, x1, epsabs=0.0, epsrel=1e-12, limit=200)
            total.append(val)
    return sign * math.fsum(total)


def geodesic_integrate_numerical(params: SourceParams, direction: str, r_start: float,
                                 r_end: float, t_start: float = 0.0, r_eval=None):
    """Integrate dt/dr = +-r^2/B(r) by adaptive quadrature from ``r_start``.

    Returns a list of ``(r, t)`` pairs at ``r_eval`` (default: the two
    endpoints).  The interval must stay clear of every horizon.  Pieces are
    spaced geometrically towards nearby roots so double roots stay cheap.
    """
    if params.a != 0.0:
        raise DomainError("radial null geodesics are implemented for a = 0 only")
    sign = _direction_sign(direction)
    roots = []
    if params.lam != 0.0:
        h = solve_horizons(params)
        _check_interval(params, h, r_start, r_end)
        raw = [z.real for z in h.raw_roots if z.imag == 0.0]
        roots = sorted({rn for rn in list(h.roots) + raw if rn != 0.0})
    if r_eval is None:
        r_eval = [r_start, r_end]
    r_eval = [float(x) for x in r_eval]
    lo, hi = min(r_start, r_end), max(r_start, r_end)
    if any(not lo <= x <= hi for x in r_eval):
        raise DomainError("r_eval must lie between r_start and r_end")

    def integrand(r):
        return sign * r * r / horizon_polynomial(params, r)

    # march from r_start through the evaluation points in order of distance
    order = sorted(range(len(r_eval)), key=lambda i: abs(r_eval[i] - r_start))
    out = [0.0] * len(r_eval)
    r_prev, t_prev = float(r_start), float(t_start)
    for i in order:
        t_prev = t_prev + _segment(integrand, r_prev, r_eval[i], roots)
        r_prev = r_eval[i]
        out[i] = t_prev
    return list(zip(r_eval, out))


def figure2_params(r1: float = 1.0) -> SourceParams:
    """Static configuration with roots {-6 r1, r1, 2 r1, 3 r1}.

    Matching -(lam/3)(r - r1)(r - 2r1)(r - 3r1)(r + 6r1) against B gives
    lam = 3/(25 r1^2), m = 1.2 r1, Q^2 = 1.44 r1^2.
    """
    if not r1 > 0.0:
        raise DomainError("r1 must be positive")
    return SourceParams(lam=3.0 / (25.0 * r1 * r1), m=1.2 * r1, a=0.0, q_sq=1.44 * r1 * r1)


_REGION_NAMES = ("I", "II", "III", "IV")


def region_intervals(h: HorizonSet) -> list:
    """``(RegionLabel, lo, hi)`` for each inter-horizon interval (hi may be inf)."""
    edges = [0.0] + sorted(r for r, _, _ in h.horizons) + [math.inf]
    out = []
    if len(edges) - 1 == 4:
        names = _REGION_NAMES
    else:
        names = [f"R{i}" for i in range(len(edges) - 1)]
    for name, lo, hi in zip(names, edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi) if math.isfinite(hi) else 2.0 * lo
        out.append((RegionLabel(name, horizon_polynomial(h.params, mid) > 0.0), lo, hi))
    return out


def _sample_radii(lo, hi, n, lo_gap, hi_gap):
    """``n`` increasing radii in (lo, hi), geometrically clustered towards horizon ends.

    ``lo_gap`` / ``hi_gap`` are the exclusion half-widths at horizon ends, ``None`` otherwise.
    """
    if lo_gap is not None:
        a = lo + lo_gap
    elif lo == 0.0:
        a = HORIZON_OFFSET * max(1.0, hi)
    else:
        a = lo
    b = hi - hi_gap if hi_gap is not None else hi
    mid = 0.5 * (a + b)
    n_left = n // 2
    n_right = n - n_left
    if lo_gap is not None:
        left = lo + np.geomspace(a - lo, mid - lo, n_left, endpoint=False)
    else:
        left = np.linspace(a, mid, n_left, endpoint=False)
    if hi_gap is not None:
        right = hi - np.geomspace(hi - mid, hi - b, n_right)
    else:
        right = np.linspace(mid, b, n_right)
    return [float(x) for x in np.concatenate([left, right])]


def sample_curves(params: SourceParams, samples: int = 200, tol: float = DEFAULT_TOL,
                  with_numerical: bool = False) -> list:
    """Ingoing and outgoing t(r) samples in every inter-horizon interval.

    The integration constant is fixed so that t = 0 at the interval midpoint
    (region IV: at 1.5 r3).  Closed form is used when the roots are simple;
    otherwise the curves are integrated numerically.
    """
    h = solve_horizons(params, tol)
    try:
        coeffs = geodesic_coefficients(h)
    except ClosedFormUnavailableError:
        coeffs = None
    curves = []
    positive = [r for r, _, _ in h.horizons]
    r_top = positive[-1] if positive else 1.0
    for label, lo, hi in region_intervals(h):
        lo_gap = _exclusion(h, lo) if lo in positive else None
        hi_gap = _exclusion(h, hi) if math.isfinite(hi) else None
        hi_eff = hi if hi_gap is not None else REGION_IV_EXTENT * r_top
        radii = _sample_radii(lo, hi_eff, samples, lo_gap, hi_gap)
        anchor = 0.5 * (lo + hi_eff)
        for direction in (OUTGOING, INGOING):
            if coeffs is not None:
                c = -geodesic_time(coeffs, direction, anchor)
                pts = []
                for r in radii:
                    t = geodesic_time(coeffs, direction, float(r), c)
                    pts.append((float(r), t))
                if with_numerical:
                    num = _numerical_track(params, direction, anchor, radii)
                    pts = [(r, t, tn) for (r, t), (_, tn) in zip(pts, num)]
                provenance = "closed-form"
            else:
                pts = _numerical_track(params, direction, anchor, radii)
                c = 0.0
                provenance = "numerical"
            curves.append(GeodesicCurve(direction=direction, region=label, interval=(lo, hi),
                                        c_const=c, samples=pts, coeffs=coeffs,
                                        provenance=provenance))
    return curves


def _numerical_track(params, direction, anchor, radii):
    """Integrate outward and inward from ``anchor`` (t = 0 there)."""
    radii = [float(r) for r in radii]
    below = [r for r in radii if r < anchor]
    above = [r for r in radii if r >= anchor]
    out = {}
    if below:
        for r, t in geodesic_integrate_numerical(params, direction, anchor, min(below),
                                                 r_eval=sorted(below, reverse=True)):
            out[r] = t
    if above:
        for r, t in geodesic_integrate_numerical(params, direction, anchor, max(above),
                                                 r_eval=sorted(above)):
            out[r] = t
    return [(r, out[r]) for r in radii]


def figure2_dataset(r1: float = 1.0, samples: int = 200, with_numerical: bool = False) -> list:
    """Curves for the four-region configuration with roots {-6, 1, 2, 3} r1."""
    return sample_curves(figure2_params(r1), samples=samples, with_numerical=with_numerical)
