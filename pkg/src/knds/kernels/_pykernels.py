"""Pure-Python hot kernels: the horizon polynomial and its quartic solver.

The horizon function is

    B(r) = -(lam/3) r**4 + delta r**2 - 2 m r + eta

which, divided by its leading coefficient, is the depressed quartic
``x**4 + p x**2 + q x + s`` with ``p = -3 delta/lam``, ``q = 6 m/lam`` and
``s = -3 eta/lam``.  Roots come from Ferrari's resolvent-cubic factorisation
(in rescaled units, so tiny lam does not overflow) and are then
Newton-polished against the un-normalised polynomial.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
"""

import cmath
import math

import numpy as np

BACKEND = "python"

_POLISH_MAX_ITER = 12
_POLISH_MIN_ITER = 2


def horizon_poly(lam, m, delta, eta, r):
    return ((-lam / 3.0 * r * r + delta) * r - 2.0 * m) * r + eta


def horizon_poly_deriv(lam, m, delta, eta, r):
    return (-4.0 * lam / 3.0 * r * r + 2.0 * delta) * r - 2.0 * m


def _cubic_value(b, c, d, y):
    return ((y + b) * y + c) * y + d


def cubic_max_real_root(b, c, d):
    """Largest real root of ``y**3 + b y**2 + c y + d``."""
    shift = b / 3.0
    pp = c - b * shift
    qq = 2.0 * shift**3 - shift * c + d
    if pp < 0.0 and 4.0 * pp**3 + 27.0 * qq * qq <= 0.0:
        rad = math.sqrt(-pp / 3.0)
        arg = 1.5 * qq / (pp * rad)
        arg = min(1.0, max(-1.0, arg))
        t = 2.0 * rad * math.cos(math.acos(arg) / 3.0)
    else:
        disc = 0.25 * qq * qq + pp**3 / 27.0
        big = math.copysign(math.pow(abs(qq) / 2.0 + math.sqrt(max(disc, 0.0)), 1.0 / 3.0), -qq)
        t = big - pp / (3.0 * big) if big != 0.0 else 0.0
    y = t - shift
    # one or two Newton steps on the undepressed cubic, kept only if they help
    f = _cubic_value(b, c, d, y)
    for _ in range(3):
        fp = (3.0 * y + 2.0 * b) * y + c
        if fp == 0.0:
            break
        y_new = y - f / fp
        f_new = _cubic_value(b, c, d, y_new)
        if abs(f_new) >= abs(f):
            break
        y, f = y_new, f_new
    return y


def _quadratic_roots(b, c):
    """Both roots of ``x**2 + b x + c``, complex when the discriminant is negative."""
    disc = b * b - 4.0 * c
    if disc >= 0.0:
        sq = math.sqrt(disc)
        big = -0.5 * (b + math.copysign(sq, b))
        if big == 0.0:
            return complex(0.0), complex(0.0)
        return complex(big), complex(c / big)
    half_im = 0.5 * math.sqrt(-disc)
    return complex(-0.5 * b, half_im), complex(-0.5 * b, -half_im)


def depressed_quartic_roots(p, q, s):
    """All four roots of ``x**4 + p x**2 + q x + s`` (unpolished)."""
    y = cubic_max_real_root(-0.5 * p, -s, 0.5 * p * s - 0.125 * q * q)
    w2 = 2.0 * y - p
    if w2 <= 1e-14 * (abs(p) + abs(y)) or q == 0.0:
        u1, u2 = _quadratic_roots(p, s)
        r1 = cmath.sqrt(u1)
        r2 = cmath.sqrt(u2)
        return [r1, -r1, r2, -r2]
    w = math.sqrt(w2)
    h = q / (2.0 * w)
    a1, a2 = _quadratic_roots(-w, y + h)
    b1, b2 = _quadratic_roots(w, y - h)
    return [a1, a2, b1, b2]


def _monomial_scale(lam, m, delta, eta, az):
    """Largest term of B at radius ``az``: the rounding floor for |B|."""
    return max(abs(lam) / 3.0 * az**4, abs(delta) * az * az, 2.0 * abs(m) * az, abs(eta))


def polish_root(lam, m, delta, eta, z):
    """Newton-polish one (possibly complex) root of B; steps that raise |B| are rejected."""
    f = horizon_poly(lam, m, delta, eta, z)
    for it in range(_POLISH_MAX_ITER):
        fp = horizon_poly_deriv(lam, m, delta, eta, z)
        if fp == 0:
            break
        z_new = z - f / fp
        f_new = horizon_poly(lam, m, delta, eta, z_new)
        if abs(f_new) > abs(f) or (abs(f_new) == abs(f) and it >= _POLISH_MIN_ITER):
            break
        z, f = z_new, f_new
        if it + 1 >= _POLISH_MIN_ITER and abs(f) <= 1e-16 * _monomial_scale(lam, m, delta, eta, abs(z)):
            break
    return z


def _sort_key(z):
    return (z.real, z.imag)


def _length_scale(p, q, s):
    """Root-size estimate that brings the monic coefficients to order one."""
    scale = max(math.sqrt(abs(p)), abs(q) ** (1.0 / 3.0), math.sqrt(math.sqrt(abs(s))))
    return scale if scale > 0.0 else 1.0


def _deflated_pair(x, q, s):
    """Small root pair from the two largest-modulus roots via the e3, e4 Vieta relations.

    Returns ``None`` when the two largest roots are not a real or conjugate pair.
    """
    order = sorted(range(4), key=lambda i: abs(x[i]), reverse=True)
    big1, big2 = x[order[0]], x[order[1]]
    if not (big1.imag == 0.0 and big2.imag == 0.0) and big1 != big2.conjugate():
        return None
    if abs(big2) <= abs(x[order[2]]):
        return None
    b_sum = big1.real + big2.real
    b_prod = big1.real * big2.real - big1.imag * big2.imag
    if b_prod == 0.0:
        return None
    prod = s / b_prod
    total = (-q - prod * b_sum) / b_prod
    lo1, lo2 = _quadratic_roots(-total, prod)
    return order, lo1, lo2


def _polish(lam, m, delta, eta, z):
    if z.imag == 0.0:
        return complex(polish_root(lam, m, delta, eta, z.real))
    return complex(polish_root(lam, m, delta, eta, z))


def solve_horizon_quartic(lam, m, delta, eta):
    """Four polished roots of B(r) = 0 as complex numbers, sorted by real part.

    Requires ``lam != 0``.  The quartic is solved in units of a root-size
    estimate; when the roots span many decades the small pair is recovered by
    deflation if that gives a smaller residual than the direct factorisation.
    """
    p = -3.0 * delta / lam
    q = 6.0 * m / lam
    s = -3.0 * eta / lam
    scale = _length_scale(p, q, s)
    ps = p / scale / scale
    qs = q / scale / scale / scale
    ss = s / scale / scale / scale / scale
    x = depressed_quartic_roots(ps, qs, ss)
    out = [_polish(lam, m, delta, eta, scale * z) for z in x]
    deflated = _deflated_pair(x, qs, ss)
    if deflated is not None:
        order, lo1, lo2 = deflated
        alt1 = _polish(lam, m, delta, eta, scale * lo1)
        alt2 = _polish(lam, m, delta, eta, scale * lo2)
        i, j = order[2], order[3]
        res_direct = max(abs(horizon_poly(lam, m, delta, eta, out[i])),
                         abs(horizon_poly(lam, m, delta, eta, out[j])))
        res_alt = max(abs(horizon_poly(lam, m, delta, eta, alt1)),
                      abs(horizon_poly(lam, m, delta, eta, alt2)))
        if res_alt < res_direct:
            out[i], out[j] = alt1, alt2
    out.sort(key=_sort_key)
    return out


def solve_horizon_quartic_batch(lam, m, delta, eta):
    """Vectorised front end: returns an ``(n, 4)`` complex array."""
    lam = np.ascontiguousarray(lam, dtype=np.float64).ravel()
    m = np.ascontiguousarray(m, dtype=np.float64).ravel()
    delta = np.ascontiguousarray(delta, dtype=np.float64).ravel()
    eta = np.ascontiguousarray(eta, dtype=np.float64).ravel()
    n = lam.shape[0]
    out = np.empty((n, 4), dtype=np.complex128)
    for i in range(n):
        out[i] = solve_horizon_quartic(float(lam[i]), float(m[i]), float(delta[i]), float(eta[i]))
    return out
