"""Closed-form evolution of the covariance matrix of N coupled oscillators.

Full phase-space matrices use the (x_1..x_N, p_1..p_N) layout. Two-mode
reductions use (x_i, p_i, x_j, p_j); the reordering happens only in
:func:`pair_reduction` and :func:`meanfield_pair_covariance`.
"""

from dataclasses import dataclass

import numpy as np

from .graph import Graph, laplacian
from .spectral import matrix_function


class AsymmetricPairError(ValueError):
    """The two vertices see different local states, so the symmetric EoF
    formula does not apply."""


PAIR_SYMMETRY_TOL = 1e-8


@dataclass(frozen=True)
class SimConfig:
    graph: Graph
    c: float
    t_max: float
    samples: int

    def __post_init__(self):
        if not self.c >= 0:
            raise ValueError(f"coupling constant must be >= 0, got {self.c}")
        if not self.t_max > 0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.samples < 2:
            raise ValueError(f"need at least 2 samples, got {self.samples}")

    def times(self):
        return time_grid(self.t_max, self.samples)


def time_grid(t_max, samples):
    return np.linspace(0.0, t_max, samples)


def symplectic_form(n):
    eye, zero = np.eye(n), np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


@dataclass(frozen=True)
class TwoModeCovariance:
    """4x4 covariance matrix of a vertex pair, ordered (x_1, p_1, x_2, p_2)."""

    matrix: np.ndarray

    @property
    def alpha(self):
        return self.matrix[:2, :2]

    @property
    def alpha2(self):
        return self.matrix[2:, 2:]

    @property
    def beta(self):
        return self.matrix[:2, 2:]

    def asymmetry(self):
        return float(np.abs(self.alpha - self.alpha2).max())

    def is_symmetric_state(self, tol=PAIR_SYMMETRY_TOL):
        scale = max(1.0, float(np.abs(self.matrix).max()))
        return self.asymmetry() <= tol * scale


def potential(g, c):
    """Potential matrix ``I + c L`` of the graph."""
    if c < 0:
        raise ValueError(f"coupling constant must be >= 0, got {c}")
    return np.eye(g.n) + c * laplacian(g)


def _trig(omegas, t):
    wt = omegas * t
    return np.cos(wt), np.sin(wt)


def propagator(s, t):
    """Phase-space evolution matrix ``[[cos Wt, W⁻¹ sin Wt], [-W sin Wt, cos Wt]]``."""
    cos_, sin_ = _trig(s.omegas, t)
    c = matrix_function(s, lambda w: cos_)
    return np.block([
        [c, matrix_function(s, lambda w: sin_ / w)],
        [matrix_function(s, lambda w: -w * sin_), c],
    ])


def _diagonal_blocks(omegas, t):
    # per-mode entries of Γ_xx, Γ_pp, Γ_xp in the eigenbasis
    cos_, sin_ = _trig(omegas, t)
    xx = cos_ ** 2 + sin_ ** 2 / omegas ** 2
    pp = cos_ ** 2 + omegas ** 2 * sin_ ** 2
    xp = (1.0 / omegas - omegas) * sin_ * cos_
    return xx, pp, xp


def covariance_at(s, t):
    """Global covariance matrix at time ``t`` for the uncorrelated start Γ(0) = I."""
    xx, pp, xp = _diagonal_blocks(s.omegas, t)
    gxx = matrix_function(s, lambda w: xx)
    gpp = matrix_function(s, lambda w: pp)
    gxp = matrix_function(s, lambda w: xp)
    return np.block([[gxx, gxp], [gxp, gpp]])


def _assemble(xx_ii, xx_ij, pp_ii, pp_ij, xp_ii, xp_ij, xx_jj=None, pp_jj=None, xp_jj=None):
    xx_jj = xx_ii if xx_jj is None else xx_jj
    pp_jj = pp_ii if pp_jj is None else pp_jj
    xp_jj = xp_ii if xp_jj is None else xp_jj
    return np.array([
        [xx_ii, xp_ii, xx_ij, xp_ij],
        [xp_ii, pp_ii, xp_ij, pp_ij],
        [xx_ij, xp_ij, xx_jj, xp_jj],
        [xp_ij, pp_ij, xp_jj, pp_jj],
    ])


def pair_reduction(s, t, i, j, check=True):
    """Covariance matrix of vertices ``i`` and ``j`` without forming the full Γ(t).

    Raises :class:`AsymmetricPairError` when the two single-mode blocks differ
    (unless ``check`` is false).
    """
    if i == j:
        raise ValueError("pair reduction needs two distinct vertices")
    for v in (i, j):
        if not 0 <= v < s.n:
            raise ValueError(f"vertex {v} out of range for n={s.n}")
    om = s.omega_matrix
    wii, wjj, wij = om[i] * om[i], om[j] * om[j], om[i] * om[j]
    xx, pp, xp = _diagonal_blocks(s.omegas, t)
    m = TwoModeCovariance(_assemble(
        wii @ xx, wij @ xx, wii @ pp, wij @ pp, wii @ xp, wij @ xp,
        xx_jj=wjj @ xx, pp_jj=wjj @ pp, xp_jj=wjj @ xp,
    ))
    if check and not m.is_symmetric_state():
        raise AsymmetricPairError(
            f"vertices {i} and {j} have different single-mode blocks "
            f"(max difference {m.asymmetry():.3g} at t={t:g})"
        )
    return m


def meanfield_frequency(n, c):
    return np.sqrt(1.0 + n * c)


def meanfield_pair_covariance(n, c, t):
    """Closed-form two-site covariance of the complete graph on ``n`` vertices."""
    if n < 2:
        raise ValueError("mean-field cluster needs at least 2 vertices")
    if c < 0:
        raise ValueError(f"coupling constant must be >= 0, got {c}")
    w = meanfield_frequency(n, c)
    sn, cs = np.sin(w * t), np.cos(w * t)
    sin2, sincos = sn * sn, sn * cs
    f = 1.0 / n
    return TwoModeCovariance(_assemble(
        f + (1 - f) * (cs * cs + sin2 / w ** 2),
        f * (1 - w ** -2) * sin2,
        f + (1 - f) * (cs * cs + w ** 2 * sin2),
        f * (1 - w ** 2) * sin2,
        (1 - f) * (1 / w - w) * sincos,
        -f * (1 / w - w) * sincos,
    ))
