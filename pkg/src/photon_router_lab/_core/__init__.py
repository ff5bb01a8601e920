"""Time-stepping kernels for the two-chain lattice.

The compiled extension ``_rk4`` is used when it was built; otherwise the
NumPy implementation in :mod:`._rk4_py` is selected at import. Both share
one signature and advance ``psi`` in place.

State layout (``n = 2L + 1`` sites per chain)::

    A_{-L..L} | B_{-L..L} | U_e | U_f
"""
from . import _rk4_py

try:
    from . import _rk4 as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _rk4_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

BACKEND = "compiled" if _compiled is not None else "python"


def get_kernel(name=None):
    """Kernel module by name; ``None`` picks the fastest available."""
    name = name or BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable kernel backend {name!r}; "
                         f"available: {sorted(BACKENDS)}") from None
