"""NumPy fallback for the RK4 propagator."""
import numpy as np


def apply_hamiltonian(psi, out, half_length, delta_a, delta_b, xi_a, xi_b,
                      g_a, g_b, omega, shift):
    """``out = (H - shift) @ psi`` with hard walls beyond ``|j| = L``."""
    n = 2 * half_length + 1
    c = half_length
    for off, delta, xi in ((0, delta_a, xi_a), (n, delta_b, xi_b)):
        d = psi[off:off + n]
        o = out[off:off + n]
        np.multiply(d, delta - shift, out=o)
        o[1:] -= xi * d[:-1]
        o[:-1] -= xi * d[1:]
    u_e, u_f = psi[2 * n], psi[2 * n + 1]
    out[c] += g_a * u_e
    out[n + c] += g_b * u_f
    out[2 * n] = g_a * psi[c] + omega * u_f - shift * u_e
    out[2 * n + 1] = g_b * psi[n + c] + omega * u_e - shift * u_f
    return out


def rk4_steps(psi, half_length, delta_a, delta_b, xi_a, xi_b, g_a, g_b,
              omega, shift, dt, nsteps):
    """Advance ``i dpsi/dt = (H - shift) psi`` by ``nsteps`` RK4 steps in place."""
    args = (half_length, delta_a, delta_b, xi_a, xi_b, g_a, g_b, omega, shift)
    k1, k2, k3, k4, tmp = (np.empty_like(psi) for _ in range(5))
    h = -1j * dt
    for _ in range(nsteps):
        apply_hamiltonian(psi, k1, *args)
        np.multiply(k1, 0.5 * h, out=tmp)
        tmp += psi
        apply_hamiltonian(tmp, k2, *args)
        np.multiply(k2, 0.5 * h, out=tmp)
        tmp += psi
        apply_hamiltonian(tmp, k3, *args)
        np.multiply(k3, h, out=tmp)
        tmp += psi
        apply_hamiltonian(tmp, k4, *args)
        k2 += k3
        k2 *= 2
        k1 += k2
        k1 += k4
        k1 *= h / 6
        psi += k1
    return psi
