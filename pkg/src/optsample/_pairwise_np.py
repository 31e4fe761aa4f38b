"""Pure numpy fallback for the compiled pairwise-kernel core.

Same formulas and reduction order as ``_pairwise_cy`` so the two
backends agree to rounding; selection happens in :mod:`optsample.pairwise`.
"""

import numpy as np

SINC_SERIES_CUTOFF = 1e-6


def sqdist(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix of squared euclidean distances between rows of a and b."""
    diff = a[:, None, :] - b[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def sinc_gram(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix of per-coordinate sinc products between rows of a and b."""
    u = np.pi * (a[:, None, :] - b[None, :, :])
    small = np.abs(u) < SINC_SERIES_CUTOFF
    # avoid 0/0 before the where() picks the series branch
    safe = np.where(small, 1.0, u)
    factors = np.where(small, 1.0 - u * u / 6.0, np.sin(safe) / safe)
    return factors.prod(axis=-1)
