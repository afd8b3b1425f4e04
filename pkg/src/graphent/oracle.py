"""Brute-force propagator: truncated Taylor series with scaling and squaring.

Shares no code with the eigendecomposition path, so it can be used to check it.
"""

import math

import numpy as np

SERIES_ORDER = 16
SCALED_NORM = 0.5


def generator(v):
    """Phase-space generator ``[[0, I], [-V, 0]]`` of the equations of motion."""
    v = np.asarray(v, dtype=float)
    n = v.shape[0]
    return np.block([[np.zeros((n, n)), np.eye(n)], [-v, np.zeros((n, n))]])


def expm_series(a):
    """exp(a) via Taylor series of order 16 on ``a / 2**s``, then s squarings.

    ``s`` is chosen so the induced infinity-norm of the scaled matrix is at
    most 0.5, which bounds the truncation remainder by
    ``0.5**17 / 17! * e**0.5`` (about 2e-20).
    """
    a = np.asarray(a, dtype=float)
    norm = np.abs(a).sum(axis=1).max()
    s = 0 if norm <= SCALED_NORM else math.ceil(math.log2(norm / SCALED_NORM))
    scaled = a / 2.0 ** s
    result = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for k in range(1, SERIES_ORDER + 1):
        term = term @ scaled / k
        result = result + term
    for _ in range(s):
        result = result @ result
    return result


def evolve_numeric(v, t):
    return expm_series(generator(v) * t)
