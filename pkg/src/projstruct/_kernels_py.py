"""Pure-Python RK4 transport kernels (fallback for the compiled extension)."""

import cmath
import math

import numpy as np


def riccati_circle(p, s, e, radius, theta0, steps, U0):
    """Transport homogeneous vectors once around ``|z| = radius``.

    Integrates ``dU/dtheta = i z A(z) U`` with
    ``A(z) = [[p/z, s z**(e-1)], [0, 0]]`` by classical RK4 in the angle,
    starting at ``theta0``. ``U0`` is a 2x3 array whose columns are the
    tracked points in homogeneous coordinates.
    """
    U = [[complex(x) for x in row] for row in np.asarray(U0)]
    h = 2.0 * math.pi / steps
    ip = 1j * p
    for n in range(steps):
        th = theta0 + n * h
        c0 = 1j * s * (radius * cmath.exp(1j * th)) ** e
        cm = 1j * s * (radius * cmath.exp(1j * (th + 0.5 * h))) ** e
        c1 = 1j * s * (radius * cmath.exp(1j * (th + h))) ** e
        top, bot = U[0], U[1]
        for j in range(3):
            ua, ub = top[j], bot[j]
            k1 = ip * ua + c0 * ub
            k2 = ip * (ua + 0.5 * h * k1) + cm * ub
            k3 = ip * (ua + 0.5 * h * k2) + cm * ub
            k4 = ip * (ua + h * k3) + c1 * ub
            top[j] = ua + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return np.array(U, dtype=complex)


def _h(c0, c1, cm, z):
    return 0.5 * (c0 / (z * z) + c1 / ((z - 1.0) * (z - 1.0)) + cm / (z * (z - 1.0)))


def fuchsian_path(c0, c1, cm, nodes, Y0):
    """Transport a 2x2 solution matrix of ``u'' + h u = 0`` along a polyline.

    ``h`` is half the quadratic differential
    ``c0/z**2 + c1/(z-1)**2 + cm/(z(z-1))``; rows of ``Y`` are ``(u, u')``.
    """
    Y = [[complex(x) for x in row] for row in np.asarray(Y0)]
    zs = [complex(z) for z in np.asarray(nodes)]
    for za, zb in zip(zs[:-1], zs[1:]):
        dz = zb - za
        ha = _h(c0, c1, cm, za)
        hm = _h(c0, c1, cm, 0.5 * (za + zb))
        hb = _h(c0, c1, cm, zb)
        for j in range(2):
            u, v = Y[0][j], Y[1][j]
            k1u, k1v = v, -ha * u
            k2u, k2v = v + 0.5 * dz * k1v, -hm * (u + 0.5 * dz * k1u)
            k3u, k3v = v + 0.5 * dz * k2v, -hm * (u + 0.5 * dz * k2u)
            k4u, k4v = v + dz * k3v, -hb * (u + dz * k3u)
            Y[0][j] = u + dz / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
            Y[1][j] = v + dz / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    return np.array(Y, dtype=complex)
