"""Single-photon routing through two coupled-resonator waveguides joined by a
classically driven cyclic three-level atom."""

from .boundstates import (BoundState, bound_state_residual, bound_wavefunction,
                          find_bound_states, zero_correspondence)
from .errors import (BandEdgeDegenerate, ConfigError, EmptyGrid, IncidentChannelClosed,
                     InsideBand, NormDriftExceeded, PoleAtDressedState, RouterError,
                     SingularSystem, WallContamination)
from .model import (Channel, ModeKind, ModeResolution, SystemParams, dispersion_energy,
                    resolve_mode)
from .oracle import solve_lattice, verify_reduction
from .scattering import (EffectiveCouplings, Regime, ScatteringSolution, SweepTable,
                         coefficients, effective_potentials, scatter, sweep)
from .wavepacket import TransportRecord, WavepacketConfig, compare_stationary, evolve

__version__ = "0.1.0"
