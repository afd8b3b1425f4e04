"""Entanglement dynamics of harmonic-oscillator networks on symmetric graphs."""

__version__ = "0.1.0"

from .graph import Graph, build_family, load_edge_list, laplacian, shortest_path_stats
from .spectral import SpectralSystem, eig_sym, matrix_function
from .dynamics import (
    SimConfig,
    TwoModeCovariance,
    potential,
    propagator,
    covariance_at,
    pair_reduction,
    meanfield_pair_covariance,
)
from .entanglement import (
    TwoModeInvariants,
    StandardForm,
    EofResult,
    invariants,
    standard_form,
    delta_from_invariants,
    eof,
    pair_entanglement,
    max_entanglement,
)
from .oracle import evolve_numeric
