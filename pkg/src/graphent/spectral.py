"""Dense symmetric eigendecomposition of the potential matrix and functions of
its square root."""

from dataclasses import dataclass

import numpy as np


class SpectralError(ValueError):
    """Input is not a valid (symmetric, positive definite) potential."""


SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class SpectralSystem:
    """Eigenvectors ``omega_matrix`` (columns) and mode frequencies ``omegas``.

    ``omegas`` are square roots of the potential's eigenvalues, ascending.
    """

    omega_matrix: np.ndarray
    omegas: np.ndarray

    @property
    def n(self):
        return len(self.omegas)

    def potential(self):
        return matrix_function(self, np.square)


def eig_sym(v):
    v = np.asarray(v, dtype=float)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise SpectralError(f"expected a square matrix, got shape {v.shape}")
    scale = max(1.0, np.abs(v).max())
    if np.abs(v - v.T).max() > SYMMETRY_TOL * scale:
        raise SpectralError("potential matrix is not symmetric")
    lam, vecs = np.linalg.eigh(v)
    if lam[0] <= 0:
        raise SpectralError(f"potential is not positive definite (smallest eigenvalue {lam[0]:.3g})")
    vecs.setflags(write=False)
    omegas = np.sqrt(lam)
    omegas.setflags(write=False)
    return SpectralSystem(vecs, omegas)


def matrix_function(s, f):
    """Apply the scalar function ``f`` to the frequencies: ``Ω diag(f(ω)) Ωᵀ``.

    ``f`` must accept a numpy array.
    """
    values = np.asarray(f(np.asarray(s.omegas)), dtype=float)
    return (s.omega_matrix * values) @ s.omega_matrix.T
