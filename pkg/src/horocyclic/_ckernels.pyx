# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the loops in ``_pykernels``; same signatures and results."""
import numpy as np
from libc.math cimport exp, sqrt

cdef double[4] GT = [0.06943184420297371, 0.33000947820757187,
                     0.6699905217924281, 0.9305681557970262]
cdef double[4] GW = [0.17392742256872692, 0.3260725774312731,
                     0.3260725774312731, 0.17392742256872692]


def dl_walk(long p, long q, const long long[:] choices):
    cdef Py_ssize_t n = choices.shape[0], i
    out = np.zeros(n + 1, dtype=np.int64)
    cdef long long[:] o = out
    cdef long long u1 = 0, s1 = 0, u2 = 0, s2 = 0, k = 0, c
    for i in range(n):
        c = choices[i]
        if c < p:
            if s1 == 0 and u1 > 0:
                if c == 0:
                    u1 -= 1
                else:
                    s1 = 1
            else:
                s1 += 1
            if s2 > 0:
                s2 -= 1
            else:
                u2 += 1
            k += 1
        else:
            c -= p
            if s2 == 0 and u2 > 0:
                if c == 0:
                    u2 -= 1
                else:
                    s2 = 1
            else:
                s2 += 1
            if s1 > 0:
                s1 -= 1
            else:
                u1 += 1
            k -= 1
        o[i + 1] = u1 + s1 + u2 + s2 - (k if k >= 0 else -k)
    return out


cdef inline long long _lamp_distance(long long k, long long lo, long long hi, bint empty):
    cdef long long c1 = k if k < 0 else 0
    cdef long long c2 = -k if -k < 0 else 0
    if not empty:
        if lo <= k and lo - 1 < c1:
            c1 = lo - 1
        if hi >= k + 1 and -hi < c2:
            c2 = -hi
    return (k - 2 * c1) + (-k - 2 * c2) - (k if k >= 0 else -k)


def lamplighter_walk(long p, const long long[:] choices):
    cdef Py_ssize_t n = choices.shape[0], i
    cdef Py_ssize_t off = n + 1
    eta_arr = np.zeros(2 * n + 3, dtype=np.int64)
    cdef long long[:] eta = eta_arr
    out = np.zeros(n + 1, dtype=np.int64)
    cdef long long[:] o = out
    cdef long long k = 0, count = 0, lo = 0, hi = 0, c, t, l, step, old, new
    for i in range(n):
        c = choices[i]
        if c < p:
            t = k + 1
            l = c
            step = 1
        else:
            t = k
            l = c - p
            step = -1
        if l:
            old = eta[t + off]
            new = (old + l) % p
            eta[t + off] = new
            if old == 0:
                if count == 0:
                    lo = t
                    hi = t
                else:
                    if t < lo:
                        lo = t
                    if t > hi:
                        hi = t
                count += 1
            elif new == 0:
                count -= 1
                if count > 0:
                    if t == lo:
                        while eta[lo + off] == 0:
                            lo += 1
                    if t == hi:
                        while eta[hi + off] == 0:
                            hi -= 1
        k += step
        o[i + 1] = _lamp_distance(k, lo, hi, count == 0)
    return out


def sol_length_grad(const double[:, :] pts, double p, double q):
    cdef Py_ssize_t m = pts.shape[0], i, g
    grad_arr = np.zeros((m, 3), dtype=np.float64)
    cdef double[:, :] grad = grad_arr
    cdef double total = 0.0, dx, dy, dz, z, a, b, f, w, t, gx, gy, gz, hz
    for i in range(m - 1):
        dx = pts[i + 1, 0] - pts[i, 0]
        dy = pts[i + 1, 1] - pts[i, 1]
        dz = pts[i + 1, 2] - pts[i, 2]
        for g in range(4):
            t = GT[g]
            z = pts[i, 2] + t * dz
            a = exp(-2.0 * p * z)
            b = exp(2.0 * q * z)
            f = sqrt(a * dx * dx + b * dy * dy + dz * dz)
            total += GW[g] * f
            if f > 0.0:
                w = GW[g] / f
                gx = a * dx * w
                gy = b * dy * w
                gz = dz * w
                hz = (-p * a * dx * dx + q * b * dy * dy) * w
                grad[i, 0] -= gx
                grad[i + 1, 0] += gx
                grad[i, 1] -= gy
                grad[i + 1, 1] += gy
                grad[i, 2] += hz * (1.0 - t) - gz
                grad[i + 1, 2] += hz * t + gz
    return total, grad_arr
