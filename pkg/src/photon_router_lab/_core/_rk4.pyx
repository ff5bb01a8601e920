# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 propagator; same contract as ``_rk4_py``.

H is real and symmetric, so it acts on the real and imaginary parts
separately. The kernel works on the interleaved float64 view of the state,
which keeps generic complex multiplication out of the inner loops.
"""
import numpy as np


cdef void _apply(const double[::1] p, double[::1] o, Py_ssize_t c,
                 double delta_a, double delta_b, double xi_a, double xi_b,
                 double g_a, double g_b, double omega,
                 double shift) noexcept nogil:
    # o = (H - shift) p on interleaved (re, im) pairs
    cdef Py_ssize_t n = 2 * c + 1
    cdef Py_ssize_t j, r, base
    cdef Py_ssize_t ue = 2 * (2 * n), uf = ue + 2
    cdef double d, xi
    cdef Py_ssize_t chain
    for chain in range(2):
        base = 2 * n * chain
        d = (delta_a if chain == 0 else delta_b) - shift
        xi = xi_a if chain == 0 else xi_b
        for r in range(2):
            o[base + r] = d * p[base + r] - xi * p[base + 2 + r]
            o[base + 2 * (n - 1) + r] = (d * p[base + 2 * (n - 1) + r]
                                         - xi * p[base + 2 * (n - 2) + r])
        for j in range(2, 2 * (n - 1)):
            o[base + j] = d * p[base + j] - xi * (p[base + j - 2] + p[base + j + 2])
    for r in range(2):
        o[2 * c + r] += g_a * p[ue + r]
        o[2 * (n + c) + r] += g_b * p[uf + r]
        o[ue + r] = g_a * p[2 * c + r] + omega * p[uf + r] - shift * p[ue + r]
        o[uf + r] = g_b * p[2 * (n + c) + r] + omega * p[ue + r] - shift * p[uf + r]


cdef inline void _axpy_i(double[::1] dst, const double[::1] x, const double[::1] k,
                         double a, Py_ssize_t size) noexcept nogil:
    # dst = x + (-i a) k
    cdef Py_ssize_t i
    for i in range(0, size, 2):
        dst[i] = x[i] + a * k[i + 1]
        dst[i + 1] = x[i + 1] - a * k[i]


def apply_hamiltonian(psi, out, Py_ssize_t half_length, double delta_a, double delta_b,
                      double xi_a, double xi_b, double g_a, double g_b,
                      double omega, double shift):
    cdef double[::1] p = np.asarray(psi).view(np.float64)
    cdef double[::1] o = np.asarray(out).view(np.float64)
    with nogil:
        _apply(p, o, half_length, delta_a, delta_b, xi_a, xi_b, g_a, g_b, omega, shift)
    return out


def rk4_steps(psi, Py_ssize_t half_length, double delta_a, double delta_b,
              double xi_a, double xi_b, double g_a, double g_b,
              double omega, double shift, double dt, Py_ssize_t nsteps):
    cdef double[::1] p = np.asarray(psi).view(np.float64)
    cdef Py_ssize_t size = p.shape[0]
    cdef double[::1] k1 = np.empty(size)
    cdef double[::1] k2 = np.empty(size)
    cdef double[::1] k3 = np.empty(size)
    cdef double[::1] k4 = np.empty(size)
    cdef double[::1] tmp = np.empty(size)
    cdef double w = dt / 6
    cdef Py_ssize_t step, i
    with nogil:
        for step in range(nsteps):
            _apply(p, k1, half_length, delta_a, delta_b, xi_a, xi_b, g_a, g_b, omega, shift)
            _axpy_i(tmp, p, k1, 0.5 * dt, size)
            _apply(tmp, k2, half_length, delta_a, delta_b, xi_a, xi_b, g_a, g_b, omega, shift)
            _axpy_i(tmp, p, k2, 0.5 * dt, size)
            _apply(tmp, k3, half_length, delta_a, delta_b, xi_a, xi_b, g_a, g_b, omega, shift)
            _axpy_i(tmp, p, k3, dt, size)
            _apply(tmp, k4, half_length, delta_a, delta_b, xi_a, xi_b, g_a, g_b, omega, shift)
            for i in range(0, size, 2):
                p[i] += w * (k1[i + 1] + 2 * (k2[i + 1] + k3[i + 1]) + k4[i + 1])
                p[i + 1] -= w * (k1[i] + 2 * (k2[i] + k3[i]) + k4[i])
    return psi
