"""Physical parameters, channel dispersion and lattice-mode classification.

Every energy is measured in units of the channel-a hopping ``xi_a`` and in the
frame rotating with the atomic transition frequencies, so only the two
cavity-atom detunings survive as parameters.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import ConfigError

EDGE_TOL = 1e-9
POLE_TOL = 1e-8

PARAM_KEYS = ("xi_a", "xi_b", "delta_a", "delta_b", "g_a", "g_b", "omega")


@dataclass(frozen=True)
class SystemParams:
    """Two coupled-resonator waveguides joined by a driven cyclic atom.

    Parameters
    ----------
    xi_a, xi_b : float
        Inter-cavity hopping of each waveguide (positive).
    delta_a, delta_b : float
        Cavity-atom detunings; the band of channel ``d`` is
        ``[delta_d - 2 xi_d, delta_d + 2 xi_d]``.
    g_a, g_b : float
        Atom-cavity couplings of the ``g-e`` and ``g-f`` transitions at site 0.
    omega : float
        Rabi frequency of the classical drive on ``e-f``.

    The defaults are the matched-band configuration (both bands centred at
    zero, ``omega = 1``, ``g_a = g_b = 0.5``).
    """

    xi_a: float = 1.0
    xi_b: float = 1.0
    delta_a: float = 0.0
    delta_b: float = 0.0
    g_a: float = 0.5
    g_b: float = 0.5
    omega: float = 1.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{f.name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ConfigError(f"{f.name} must be finite, got {value!r}")
            object.__setattr__(self, f.name, float(value))
        if self.xi_a <= 0 or self.xi_b <= 0:
            raise ConfigError("hopping constants xi_a and xi_b must be positive")
        if self.g_a < 0 or self.g_b < 0 or self.omega < 0:
            raise ConfigError("g_a, g_b and omega must be non-negative")

    def with_(self, **changes) -> "SystemParams":
        return replace(self, **changes)

    def channel(self, channel: "Channel") -> tuple[float, float, float]:
        """``(xi, delta, g)`` of one channel."""
        if channel is Channel.A:
            return self.xi_a, self.delta_a, self.g_a
        return self.xi_b, self.delta_b, self.g_b

    def band(self, channel: "Channel") -> tuple[float, float]:
        xi, delta, _ = self.channel(channel)
        return delta - 2 * xi, delta + 2 * xi

    def to_text(self) -> str:
        """Flat ``key = value`` text; floats use their shortest exact repr."""
        return "".join(f"{key} = {getattr(self, key)!r}\n" for key in PARAM_KEYS)

    @classmethod
    def from_text(cls, text: str, base: "SystemParams | None" = None) -> "SystemParams":
        """Parse ``key = value`` lines. Keys absent from ``text`` keep the
        value from ``base`` (or the class defaults)."""
        values = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in PARAM_KEYS:
                raise ConfigError(f"line {lineno}: unknown parameter {key!r}")
            if key in values:
                raise ConfigError(f"line {lineno}: duplicate parameter {key!r}")
            try:
                values[key] = float(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key} is not a number: {value!r}") from None
        return replace(base or cls(), **values)

    @classmethod
    def from_file(cls, path, base: "SystemParams | None" = None) -> "SystemParams":
        return cls.from_text(Path(path).read_text(), base)


class Channel(enum.Enum):
    A = "A"
    B = "B"


class ModeKind(enum.Enum):
    PROPAGATING = "propagating"
    EVANESCENT = "evanescent"
    BAND_EDGE = "band_edge"


@dataclass(frozen=True)
class ModeResolution:
    """Lattice mode of one channel at a fixed energy.

    ``k`` is set for propagating modes, ``(n, kappa)`` for evanescent ones
    (``n`` alone for a band edge). ``complex_wavenumber`` is ``k`` or
    ``n*pi + 1j*kappa`` and always has a non-negative imaginary part.
    """

    kind: ModeKind
    k: float | None = None
    n: int | None = None
    kappa: float | None = None
    group_velocity: float = 0.0
    complex_wavenumber: complex = 0j

    @property
    def is_propagating(self) -> bool:
        return self.kind is ModeKind.PROPAGATING

    @property
    def sin_k(self) -> complex:
        """sin of the complex wavenumber; ``1j*(-1)**n*sinh(kappa)`` when evanescent."""
        if self.kind is ModeKind.PROPAGATING:
            return complex(math.sin(self.k))
        if self.kind is ModeKind.EVANESCENT:
            return 1j * (-1) ** self.n * math.sinh(self.kappa)
        return 0j

    def wave(self, j: int) -> complex:
        """``exp(1j * complex_wavenumber * j)`` with an exact sign for ``n*pi``."""
        if self.kind is ModeKind.EVANESCENT:
            sign = -1.0 if (self.n * j) % 2 else 1.0
            return complex(sign * math.exp(-self.kappa * j))
        return complex(math.cos(self.k * j), math.sin(self.k * j))


def dispersion_energy(channel: Channel, k: float, params: SystemParams) -> float:
    """Band energy ``delta - 2 xi cos k`` of a plane wave in ``channel``."""
    xi, delta, _ = params.channel(channel)
    return delta - 2 * xi * math.cos(k)


def resolve_mode(channel: Channel, energy: float, params: SystemParams,
                 edge_tol: float = EDGE_TOL) -> ModeResolution:
    """Classify ``energy`` as a propagating, evanescent or band-edge mode.

    Propagating modes take the right-moving branch ``k`` in (0, pi).
    Evanescent modes below the band have ``n = 0`` and above it ``n = 1``.
    """
    if not edge_tol > 0:
        raise ConfigError("edge_tol must be positive")
    xi, delta, _ = params.channel(channel)
    x = (delta - energy) / (2 * xi)
    n = 0 if x > 0 else 1
    if abs(x) < 1 - edge_tol:
        k = math.acos(x)
        return ModeResolution(ModeKind.PROPAGATING, k=k,
                              group_velocity=2 * xi * math.sin(k),
                              complex_wavenumber=complex(k))
    if abs(x) > 1 + edge_tol:
        kappa = math.acosh(abs(x))
        return ModeResolution(ModeKind.EVANESCENT, n=n, kappa=kappa,
                              complex_wavenumber=complex(n * math.pi, kappa))
    return ModeResolution(ModeKind.BAND_EDGE, n=n,
                          complex_wavenumber=complex(n * math.pi))
