# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 transport kernels.

Same signatures and semantics as :mod:`projstruct._kernels_py`.
"""

import numpy as np

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)


cdef inline double complex _zpow(double complex z, int e) nogil:
    cdef double complex r = 1.0
    cdef int k
    for k in range(e):
        r = r * z
    return r


def riccati_circle(double complex p, double complex s, int e, double radius,
                   double theta0, long steps, U0):
    cdef double complex[:, ::1] U = np.array(U0, dtype=np.complex128, order="C")
    cdef double h = 2.0 * 3.141592653589793 / steps
    cdef double complex ip = 1j * p
    cdef double complex z0, zm, z1, c0, cm, c1
    cdef double complex k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b, ua, ub
    cdef long n
    cdef int j
    cdef double th
    with nogil:
        for n in range(steps):
            th = theta0 + n * h
            z0 = radius * cexp(1j * th)
            zm = radius * cexp(1j * (th + 0.5 * h))
            z1 = radius * cexp(1j * (th + h))
            c0 = 1j * s * _zpow(z0, e)
            cm = 1j * s * _zpow(zm, e)
            c1 = 1j * s * _zpow(z1, e)
            for j in range(3):
                ua = U[0, j]
                ub = U[1, j]
                k1a = ip * ua + c0 * ub
                k2a = ip * (ua + 0.5 * h * k1a) + cm * ub
                k3a = ip * (ua + 0.5 * h * k2a) + cm * ub
                k4a = ip * (ua + h * k3a) + c1 * ub
                U[0, j] = ua + h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
    return np.asarray(U)


cdef inline double complex _h(double complex c0, double complex c1,
                              double complex cm, double complex z) nogil:
    return 0.5 * (c0 / (z * z) + c1 / ((z - 1.0) * (z - 1.0)) + cm / (z * (z - 1.0)))


def fuchsian_path(double complex c0, double complex c1, double complex cm,
                  nodes, Y0):
    cdef double complex[::1] zs = np.ascontiguousarray(nodes, dtype=np.complex128)
    cdef double complex[:, ::1] Y = np.array(Y0, dtype=np.complex128, order="C")
    cdef Py_ssize_t n, N = zs.shape[0]
    cdef int j
    cdef double complex za, zb, dz, ha, hm, hb
    cdef double complex u, v, k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v
    with nogil:
        for n in range(N - 1):
            za = zs[n]
            zb = zs[n + 1]
            dz = zb - za
            ha = _h(c0, c1, cm, za)
            hm = _h(c0, c1, cm, 0.5 * (za + zb))
            hb = _h(c0, c1, cm, zb)
            for j in range(2):
                u = Y[0, j]
                v = Y[1, j]
                k1u = v
                k1v = -ha * u
                k2u = v + 0.5 * dz * k1v
                k2v = -hm * (u + 0.5 * dz * k1u)
                k3u = v + 0.5 * dz * k2v
                k3v = -hm * (u + 0.5 * dz * k2u)
                k4u = v + dz * k3v
                k4v = -hb * (u + dz * k3u)
                Y[0, j] = u + dz / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
                Y[1, j] = v + dz / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    return np.asarray(Y)
