"""Pure-Python/numpy versions of the hot loops (reference for ``_ckernels``)."""
import numpy as np

_T, _W = np.polynomial.legendre.leggauss(4)
GAUSS_T = 0.5 * (_T + 1.0)
GAUSS_W = 0.5 * _W


def dl_walk(p, q, choices):
    """Distances to the origin along a simple random walk on DL(p, q).

    ``choices[i]`` in [0, p+q): below p moves x1 to successor ``choices[i]``,
    otherwise x2 to successor ``choices[i] - p``. Each tree position relative
    to its origin is kept as (up, down): the geodesic from the origin climbs
    ``up`` levels and then descends ``down`` levels. The origins lie on the
    all-zero line, so only the label 0 leads back towards them.
    """
    n = len(choices)
    out = np.zeros(n + 1, dtype=np.int64)
    u1 = s1 = u2 = s2 = k = 0
    for i in range(n):
        c = int(choices[i])
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
        out[i + 1] = u1 + s1 + u2 + s2 - (k if k >= 0 else -k)
    return out


def lamp_distance(k, lo, hi, empty):
    """Distance from the identity of (η, k) read through the DL(p, p) encoding."""
    c1 = min(0, k)
    c2 = min(0, -k)
    if not empty:
        if lo <= k:
            c1 = min(c1, lo - 1)
        if hi >= k + 1:
            c2 = min(c2, -hi)
    d1 = k - 2 * c1
    d2 = -k - 2 * c2
    return d1 + d2 - abs(k)


def lamplighter_walk(p, choices):
    """Distances along a walk on Z_p ≀ Z multiplying by uniform generators.

    ``choices[i] < p`` multiplies by (δ₁^ℓ, 1) with ℓ = choices[i], otherwise
    by (δ₀^ℓ, −1) with ℓ = choices[i] − p.
    """
    n = len(choices)
    off = n + 1
    eta = [0] * (2 * n + 3)
    out = np.zeros(n + 1, dtype=np.int64)
    k = 0
    count = 0
    lo = hi = 0
    for i in range(n):
        c = int(choices[i])
        if c < p:
            t, l, step = k + 1, c, 1
        else:
            t, l, step = k, c - p, -1
        if l:
            old = eta[t + off]
            new = (old + l) % p
            eta[t + off] = new
            if old == 0:
                if count == 0:
                    lo = hi = t
                else:
                    lo = min(lo, t)
                    hi = max(hi, t)
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
        out[i + 1] = lamp_distance(k, lo, hi, count == 0)
    return out


def sol_length_grad(pts, p, q):
    """Length of the polyline ``pts`` (M×3) in Sol(p, q) and its gradient."""
    d = np.diff(pts, axis=0)
    dx, dy, dz = d[:, 0:1], d[:, 1:2], d[:, 2:3]
    z = pts[:-1, 2:3] + GAUSS_T[None, :] * dz
    a = np.exp(-2.0 * p * z)
    b = np.exp(2.0 * q * z)
    f = np.sqrt(a * dx * dx + b * dy * dy + dz * dz)
    length = float((f * GAUSS_W).sum())
    inv = np.where(f > 0.0, GAUSS_W / np.where(f > 0.0, f, 1.0), 0.0)
    gx = (a * dx * inv).sum(axis=1)
    gy = (b * dy * inv).sum(axis=1)
    gz = (dz * inv).sum(axis=1)
    hz = (-p * a * dx * dx + q * b * dy * dy) * inv
    hz0 = (hz * (1.0 - GAUSS_T)).sum(axis=1)
    hz1 = (hz * GAUSS_T).sum(axis=1)
    grad = np.zeros_like(pts)
    grad[:-1, 0] -= gx
    grad[1:, 0] += gx
    grad[:-1, 1] -= gy
    grad[1:, 1] += gy
    grad[:-1, 2] += hz0 - gz
    grad[1:, 2] += hz1 + gz
    return length, grad
