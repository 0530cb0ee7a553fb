# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernels``: same algorithm, C doubles throughout."""

import numpy as np

from libc.math cimport acos, cos, fabs, pow, sqrt, copysign, hypot

BACKEND = "cython"

DEF POLISH_MAX_ITER = 12
DEF POLISH_MIN_ITER = 2


cdef inline double _poly(double lam, double m, double delta, double eta, double r) nogil:
    return ((-lam / 3.0 * r * r + delta) * r - 2.0 * m) * r + eta


cdef inline double _dpoly(double lam, double m, double delta, double eta, double r) nogil:
    return (-4.0 * lam / 3.0 * r * r + 2.0 * delta) * r - 2.0 * m


cdef inline double complex _cpoly(double lam, double m, double delta, double eta,
                                  double complex r) nogil:
    return ((-lam / 3.0 * r * r + delta) * r - 2.0 * m) * r + eta


cdef inline double complex _cdpoly(double lam, double m, double delta, double eta,
                                   double complex r) nogil:
    return (-4.0 * lam / 3.0 * r * r + 2.0 * delta) * r - 2.0 * m


cdef inline double _cabs(double complex z) nogil:
    return hypot(z.real, z.imag)


cdef double complex _csqrt(double complex z) nogil:
    cdef double x = z.real
    cdef double y = z.imag
    cdef double t
    if x == 0.0 and y == 0.0:
        return 0.0
    t = sqrt(0.5 * (fabs(x) + hypot(x, y)))
    if x >= 0.0:
        return t + 1j * (y / (2.0 * t))
    return fabs(y) / (2.0 * t) + 1j * copysign(t, y)


cdef inline double _cubic_value(double b, double c, double d, double y) nogil:
    return ((y + b) * y + c) * y + d


cdef double _cubic_max_real_root(double b, double c, double d) nogil:
    cdef double shift = b / 3.0
    cdef double pp = c - b * shift
    cdef double qq = 2.0 * shift * shift * shift - shift * c + d
    cdef double rad, arg, t, disc, big, y, f, fp, y_new, f_new
    cdef int k
    if pp < 0.0 and 4.0 * pp * pp * pp + 27.0 * qq * qq <= 0.0:
        rad = sqrt(-pp / 3.0)
        arg = 1.5 * qq / (pp * rad)
        if arg > 1.0:
            arg = 1.0
        elif arg < -1.0:
            arg = -1.0
        t = 2.0 * rad * cos(acos(arg) / 3.0)
    else:
        disc = 0.25 * qq * qq + pp * pp * pp / 27.0
        if disc < 0.0:
            disc = 0.0
        big = copysign(pow(fabs(qq) / 2.0 + sqrt(disc), 1.0 / 3.0), -qq)
        if big != 0.0:
            t = big - pp / (3.0 * big)
        else:
            t = 0.0
    y = t - shift
    f = _cubic_value(b, c, d, y)
    for k in range(3):
        fp = (3.0 * y + 2.0 * b) * y + c
        if fp == 0.0:
            break
        y_new = y - f / fp
        f_new = _cubic_value(b, c, d, y_new)
        if fabs(f_new) >= fabs(f):
            break
        y = y_new
        f = f_new
    return y


cdef void _quadratic_roots(double b, double c, double complex* out) nogil:
    cdef double disc = b * b - 4.0 * c
    cdef double sq, big, half_im
    if disc >= 0.0:
        sq = sqrt(disc)
        big = -0.5 * (b + copysign(sq, b))
        if big == 0.0:
            out[0] = 0.0
            out[1] = 0.0
        else:
            out[0] = big
            out[1] = c / big
    else:
        half_im = 0.5 * sqrt(-disc)
        out[0] = -0.5 * b + 1j * half_im
        out[1] = -0.5 * b - 1j * half_im


cdef void _depressed_quartic_roots(double p, double q, double s, double complex* out) nogil:
    cdef double y = _cubic_max_real_root(-0.5 * p, -s, 0.5 * p * s - 0.125 * q * q)
    cdef double w2 = 2.0 * y - p
    cdef double w, h
    cdef double complex u[2]
    if w2 <= 1e-14 * (fabs(p) + fabs(y)) or q == 0.0:
        _quadratic_roots(p, s, u)
        out[0] = _csqrt(u[0])
        out[1] = -out[0]
        out[2] = _csqrt(u[1])
        out[3] = -out[2]
        return
    w = sqrt(w2)
    h = q / (2.0 * w)
    _quadratic_roots(-w, y + h, out)
    _quadratic_roots(w, y - h, out + 2)


cdef inline double _monomial_scale(double lam, double m, double delta, double eta,
                                   double az) nogil:
    cdef double best = fabs(lam) / 3.0 * az * az * az * az
    cdef double t = fabs(delta) * az * az
    if t > best:
        best = t
    t = 2.0 * fabs(m) * az
    if t > best:
        best = t
    t = fabs(eta)
    if t > best:
        best = t
    return best


cdef double _polish_real(double lam, double m, double delta, double eta, double z) nogil:
    cdef double f = _poly(lam, m, delta, eta, z)
    cdef double fp, z_new, f_new
    cdef int it
    for it in range(POLISH_MAX_ITER):
        fp = _dpoly(lam, m, delta, eta, z)
        if fp == 0.0:
            break
        z_new = z - f / fp
        f_new = _poly(lam, m, delta, eta, z_new)
        if fabs(f_new) > fabs(f) or (fabs(f_new) == fabs(f) and it >= POLISH_MIN_ITER):
            break
        z = z_new
        f = f_new
        if it + 1 >= POLISH_MIN_ITER and fabs(f) <= 1e-16 * _monomial_scale(lam, m, delta, eta, fabs(z)):
            break
    return z


cdef double complex _polish_complex(double lam, double m, double delta, double eta,
                                    double complex z) nogil:
    cdef double complex f = _cpoly(lam, m, delta, eta, z)
    cdef double complex fp, z_new, f_new
    cdef int it
    for it in range(POLISH_MAX_ITER):
        fp = _cdpoly(lam, m, delta, eta, z)
        if fp.real == 0.0 and fp.imag == 0.0:
            break
        z_new = z - f / fp
        f_new = _cpoly(lam, m, delta, eta, z_new)
        if _cabs(f_new) > _cabs(f) or (_cabs(f_new) == _cabs(f) and it >= POLISH_MIN_ITER):
            break
        z = z_new
        f = f_new
        if it + 1 >= POLISH_MIN_ITER and _cabs(f) <= 1e-16 * _monomial_scale(lam, m, delta, eta, _cabs(z)):
            break
    return z


cdef inline double complex _polish(double lam, double m, double delta, double eta,
                                   double complex z) nogil:
    if z.imag == 0.0:
        return _polish_real(lam, m, delta, eta, z.real)
    return _polish_complex(lam, m, delta, eta, z)


cdef double _length_scale(double p, double q, double s) nogil:
    cdef double scale = sqrt(fabs(p))
    cdef double t = pow(fabs(q), 1.0 / 3.0)
    if t > scale:
        scale = t
    t = sqrt(sqrt(fabs(s)))
    if t > scale:
        scale = t
    if scale > 0.0:
        return scale
    return 1.0


cdef int _deflated_pair(double complex* x, double q, double s, int* order,
                        double complex* lo) nogil:
    """Small pair via Vieta from the two largest-modulus roots; 0 when not applicable."""
    cdef int i, j, tmp
    cdef double complex b1, b2
    cdef double b_sum, b_prod, prod, total
    for i in range(4):
        order[i] = i
    # stable insertion sort, descending modulus
    for i in range(1, 4):
        tmp = order[i]
        j = i - 1
        while j >= 0 and _cabs(x[order[j]]) < _cabs(x[tmp]):
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = tmp
    b1 = x[order[0]]
    b2 = x[order[1]]
    if not (b1.imag == 0.0 and b2.imag == 0.0) and not (b1.real == b2.real and b1.imag == -b2.imag):
        return 0
    if _cabs(b2) <= _cabs(x[order[2]]):
        return 0
    b_sum = b1.real + b2.real
    b_prod = b1.real * b2.real - b1.imag * b2.imag
    if b_prod == 0.0:
        return 0
    prod = s / b_prod
    total = (-q - prod * b_sum) / b_prod
    _quadratic_roots(-total, prod, lo)
    return 1


cdef void _solve(double lam, double m, double delta, double eta, double complex* out) nogil:
    cdef double complex tmp
    cdef double complex x[4]
    cdef double complex lo[2]
    cdef double complex alt1, alt2
    cdef int order[4]
    cdef int i, j
    cdef double p = -3.0 * delta / lam
    cdef double q = 6.0 * m / lam
    cdef double s = -3.0 * eta / lam
    cdef double scale = _length_scale(p, q, s)
    cdef double ps = p / scale / scale
    cdef double qs = q / scale / scale / scale
    cdef double ss = s / scale / scale / scale / scale
    cdef double res_direct, res_alt, t
    _depressed_quartic_roots(ps, qs, ss, x)
    for i in range(4):
        out[i] = _polish(lam, m, delta, eta, scale * x[i])
    if _deflated_pair(x, qs, ss, order, lo):
        alt1 = _polish(lam, m, delta, eta, scale * lo[0])
        alt2 = _polish(lam, m, delta, eta, scale * lo[1])
        i = order[2]
        j = order[3]
        res_direct = _cabs(_cpoly(lam, m, delta, eta, out[i]))
        t = _cabs(_cpoly(lam, m, delta, eta, out[j]))
        if t > res_direct:
            res_direct = t
        res_alt = _cabs(_cpoly(lam, m, delta, eta, alt1))
        t = _cabs(_cpoly(lam, m, delta, eta, alt2))
        if t > res_alt:
            res_alt = t
        if res_alt < res_direct:
            out[i] = alt1
            out[j] = alt2
    # insertion sort by (real, imag)
    for i in range(1, 4):
        tmp = out[i]
        j = i - 1
        while j >= 0 and (out[j].real > tmp.real or
                          (out[j].real == tmp.real and out[j].imag > tmp.imag)):
            out[j + 1] = out[j]
            j -= 1
        out[j + 1] = tmp


def horizon_poly(double lam, double m, double delta, double eta, r):
    if isinstance(r, complex):
        return complex(_cpoly(lam, m, delta, eta, r))
    return _poly(lam, m, delta, eta, r)


def horizon_poly_deriv(double lam, double m, double delta, double eta, r):
    if isinstance(r, complex):
        return complex(_cdpoly(lam, m, delta, eta, r))
    return _dpoly(lam, m, delta, eta, r)


def cubic_max_real_root(double b, double c, double d):
    return _cubic_max_real_root(b, c, d)


def depressed_quartic_roots(double p, double q, double s):
    cdef double complex out[4]
    _depressed_quartic_roots(p, q, s, out)
    return [complex(out[0]), complex(out[1]), complex(out[2]), complex(out[3])]


def polish_root(double lam, double m, double delta, double eta, z):
    if isinstance(z, complex):
        return complex(_polish_complex(lam, m, delta, eta, z))
    return _polish_real(lam, m, delta, eta, z)


def solve_horizon_quartic(double lam, double m, double delta, double eta):
    cdef double complex out[4]
    _solve(lam, m, delta, eta, out)
    return [complex(out[0]), complex(out[1]), complex(out[2]), complex(out[3])]


def solve_horizon_quartic_batch(lam, m, delta, eta):
    cdef double[::1] lv = np.ascontiguousarray(lam, dtype=np.float64).ravel()
    cdef double[::1] mv = np.ascontiguousarray(m, dtype=np.float64).ravel()
    cdef double[::1] dv = np.ascontiguousarray(delta, dtype=np.float64).ravel()
    cdef double[::1] ev = np.ascontiguousarray(eta, dtype=np.float64).ravel()
    cdef Py_ssize_t n = lv.shape[0]
    result = np.empty((n, 4), dtype=np.complex128)
    cdef double complex[:, ::1] rv = result
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            _solve(lv[i], mv[i], dv[i], ev[i], &rv[i, 0])
    return result
