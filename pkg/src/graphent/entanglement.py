"""Entanglement of formation of symmetric two-mode Gaussian states.

δ is obtained twice: from the standard form (n, k_x, k_p), which is
authoritative, and from a closed expression in the invariants u, v, w. The
closed expression carries a sign(v) factor on its smaller radical; without it
the expression is only valid for det β <= 0.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .dynamics import (
    AsymmetricPairError,
    SimConfig,
    TwoModeCovariance,
    meanfield_frequency,
    meanfield_pair_covariance,
    pair_reduction,
    potential,
)
from .spectral import eig_sym


class UnphysicalStateError(ValueError):
    """Invariants that no physical covariance matrix can produce."""


# radicands in [-CLAMP_TOL, 0) are roundoff; below -ERROR_TOL they are errors.
# Both are relative to the squared magnitude of the operands.
CLAMP_TOL = 1e-12
ERROR_TOL = 1e-9


def _clamp(x, scale, what):
    if x >= 0:
        return x
    if x < -ERROR_TOL * max(1.0, scale):
        raise UnphysicalStateError(f"negative {what}: {x:.3g}")
    return 0.0


@dataclass(frozen=True)
class TwoModeInvariants:
    u: float
    v: float
    w: float
    xi: float


@dataclass(frozen=True)
class StandardForm:
    n: float
    k_x: float
    k_p: float

    def delta(self):
        d2 = (self.n - self.k_x) * (self.n + self.k_p)
        return math.sqrt(_clamp(d2, self.n ** 2, "delta squared"))


@dataclass(frozen=True)
class EofResult:
    delta: float
    Delta: float
    c_plus: float
    c_minus: float
    eof: float
    rescaled: Optional[float] = None
    invariants: Optional[TwoModeInvariants] = None
    standard_form: Optional[StandardForm] = None
    delta_formula: Optional[float] = None

    @property
    def route_gap(self):
        if self.delta_formula is None:
            return None
        return abs(self.delta - self.delta_formula)


def invariants(m):
    if not isinstance(m, TwoModeCovariance):
        m = TwoModeCovariance(np.asarray(m, dtype=float))
    if not m.is_symmetric_state():
        raise AsymmetricPairError(
            f"single-mode blocks differ by {m.asymmetry():.3g}; EoF needs a symmetric state"
        )
    u = float(np.linalg.det(m.alpha))
    v = float(np.linalg.det(m.beta))
    w = float(np.linalg.det(m.matrix))
    return TwoModeInvariants(u, v, w, u * u + v * v - w)


def standard_form(inv):
    """Recover (n, k_x, k_p) from det α, det β and det Γ.

    k_x² and k_p² are the roots of ``z² - (ξ/u) z + v²``; k_x takes the larger
    root and ``k_p = v / k_x`` keeps the sign of det β.
    """
    if inv.u <= 0:
        raise UnphysicalStateError(f"det alpha must be positive, got {inv.u:.3g}")
    n = math.sqrt(inv.u)
    s = inv.xi / inv.u
    disc = _clamp(s * s - 4 * inv.v * inv.v, s * s, "standard-form discriminant")
    z_big = _clamp((s + math.sqrt(disc)) / 2, abs(s), "k_x squared")
    k_x = math.sqrt(z_big)
    k_p = inv.v / k_x if k_x > 0 else 0.0
    return StandardForm(n, k_x, k_p)


def delta_from_invariants(inv):
    """δ directly from (u, v, w, ξ), with no standard-form intermediate."""
    u, v, xi = inv.u, inv.v, inv.xi
    r = math.sqrt(_clamp(xi * xi - 4 * u * u * v * v, xi * xi, "inner radicand"))
    y_small = _clamp((xi - r) / 2, abs(xi), "outer radicand")
    y_big = _clamp((xi + r) / 2, abs(xi), "outer radicand")
    d2 = u - v - math.sqrt(y_big) + np.sign(v) * math.sqrt(y_small)
    return math.sqrt(_clamp(d2, u, "delta squared"))


def _xlog2x(x):
    return x * math.log2(x) if x > 0 else 0.0


def eof(delta, n_vertices=None):
    """Entanglement of formation in ebits.

    With ``n_vertices`` set, ``rescaled`` holds ``(n_vertices - 1) * eof``.
    """
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    big_delta = min(1.0, delta)
    c_plus = (1 + big_delta) ** 2 / (4 * big_delta)
    c_minus = (1 - big_delta) ** 2 / (4 * big_delta)
    e = 0.0 if big_delta == 1.0 else _xlog2x(c_plus) - _xlog2x(c_minus)
    rescaled = None if n_vertices is None else (n_vertices - 1) * e
    return EofResult(delta, big_delta, c_plus, c_minus, e, rescaled)


def pair_entanglement(m, n_vertices=None):
    """Full EoF evaluation of a two-mode state, both δ routes included."""
    inv = invariants(m)
    sf = standard_form(inv)
    result = eof(sf.delta(), n_vertices)
    return replace(result, invariants=inv, standard_form=sf,
                   delta_formula=delta_from_invariants(inv))


def pair_state_function(graph, c, i, j):
    """Return ``t -> TwoModeCovariance`` for a vertex pair.

    Complete graphs use the closed mean-field expressions; everything else
    goes through the eigendecomposition of the potential.
    """
    if i == j or not (0 <= i < graph.n and 0 <= j < graph.n):
        raise ValueError(f"invalid vertex pair ({i}, {j}) for n={graph.n}")
    if graph.is_complete():
        return lambda t: meanfield_pair_covariance(graph.n, c, t)
    s = eig_sym(potential(graph, c))
    return lambda t: pair_reduction(s, t, i, j)


def entanglement_period(graph, c):
    """Period of the pair entanglement, known in closed form for complete graphs."""
    if not graph.is_complete():
        return None
    return math.pi / meanfield_frequency(graph.n, c)


def trajectory(cfg, pair):
    state = pair_state_function(cfg.graph, cfg.c, *pair)
    return [pair_entanglement(state(t), cfg.graph.n) for t in cfg.times()]


@dataclass(frozen=True)
class MaxEntanglement:
    t_star: float
    eof: float
    rescaled: float


def max_entanglement(cfg: SimConfig, pair, per_period=400, xatol=1e-7):
    """Locate the maximum of the pair EoF in time.

    For complete graphs the search covers one entanglement period sampled at
    ``max(per_period, cfg.samples)`` points; otherwise the configured grid
    on [0, t_max]. The best grid point is refined by bounded scalar
    minimisation on its two neighbouring intervals.
    """
    state = pair_state_function(cfg.graph, cfg.c, *pair)

    def value(t):
        return pair_entanglement(state(t)).eof

    period = entanglement_period(cfg.graph, cfg.c)
    if period is None:
        ts = cfg.times()
    else:
        ts = np.linspace(0.0, period, max(per_period, cfg.samples))
    values = np.array([value(t) for t in ts])
    k = int(np.argmax(values))
    t_best, e_best = float(ts[k]), float(values[k])
    lo, hi = ts[max(k - 1, 0)], ts[min(k + 1, len(ts) - 1)]
    if e_best > 0:
        res = minimize_scalar(lambda t: -value(t), bounds=(lo, hi), method="bounded",
                              options={"xatol": xatol})
        if -res.fun > e_best:
            t_best, e_best = float(res.x), float(-res.fun)
    return MaxEntanglement(t_best, e_best, (cfg.graph.n - 1) * e_best)
