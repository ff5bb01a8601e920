"""Exception hierarchy.

Domain errors (an input the physics cannot answer) derive from
:class:`RouterError`; the CLI maps them to exit code 1. Usage errors derive
from :class:`ConfigError` and map to exit code 2.
"""


class RouterError(Exception):
    """Base class for domain errors."""


class ConfigError(ValueError):
    """Malformed parameters, grid specs or command options."""


class PoleAtDressedState(RouterError):
    """E^2 - Omega^2 vanishes; the effective potentials are infinite."""


class BandEdgeDegenerate(RouterError):
    """The energy sits on a band edge of one of the channels."""


class IncidentChannelClosed(RouterError):
    """The energy lies outside the band of the incident channel a."""

    def __init__(self, energy, message=None):
        self.energy = energy
        super().__init__(message or f"incident channel closed at E={energy!r}")


class InsideBand(RouterError):
    """Bound-state condition evaluated at an energy inside band b."""


class SingularSystem(RouterError):
    """The lattice linear system could not be solved."""

    def __init__(self, message, condition=float("inf")):
        self.condition = condition
        super().__init__(f"{message} (condition estimate {condition:.3e})")


class EmptyGrid(RouterError):
    """A sweep was requested over no energies."""


class NormDriftExceeded(RouterError):
    """Wavepacket norm drifted beyond tolerance; dt is too large."""


class WallContamination(RouterError):
    """Wavepacket population reached the hard walls before t_end."""
