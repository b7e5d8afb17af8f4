"""Dense matrix kernels: spectral norm, min-norm least squares, walk counts.

Matrices are plain 2-D numpy arrays. Everything here runs at desk scale
(hundreds of rows), so dense arithmetic is used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .seeds import make_rng


@dataclass
class SpectralReport:
    """Result of a spectral norm estimate.

    converged=False means the estimate was still moving by more than
    rel_tol when max_iter ran out; the last value is reported anyway.
    """

    sigma_max: float
    sigma_max_sq: float
    iterations: int
    converged: bool


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D float array or raise ValueError."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {a.shape}")
    if a.size and not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite")
    return a


def spectral_norm(m, rel_tol: float = 1e-8, max_iter: int = 10_000, seed: int = 0) -> SpectralReport:
    """Largest singular value by seeded power iteration on the Gram matrix.

    The Gram matrix is formed on the smaller side, so tall and wide inputs
    cost the same. Deterministic for a fixed seed.
    """
    a = as_matrix(m)
    k, r = a.shape
    gram = a.T @ a if r <= k else a @ a.T
    if not gram.any():
        return SpectralReport(0.0, 0.0, 0, True)
    rng = make_rng(seed)
    v = rng.standard_normal(gram.shape[0])
    v /= np.linalg.norm(v)
    lam = 0.0
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        w = gram @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            # start vector fell in the null space; try a fresh direction
            v = rng.standard_normal(gram.shape[0])
            v /= np.linalg.norm(v)
            continue
        v = w / norm
        if abs(norm - lam) <= rel_tol * norm:
            lam = norm
            converged = True
            break
        lam = norm
    sigma = float(np.sqrt(lam))
    return SpectralReport(sigma, float(lam), iterations, converged)


def least_squares(a, b) -> np.ndarray:
    """Minimum-norm least squares solution of a @ x ~= b.

    SVD-backed, so rank-deficient inputs get the minimum-norm solution
    rather than a warning or garbage.
    """
    m = as_matrix(a)
    v = np.asarray(b, dtype=float)
    if v.ndim != 1 or v.shape[0] != m.shape[0]:
        raise ValueError(f"right-hand side shape {v.shape} does not match matrix {m.shape}")
    x, _, _, _ = np.linalg.lstsq(m, v, rcond=None)
    return x


def walk_count(a, t: int) -> int:
    """ones(k) . (A A^T)^t . ones(k) for a 0/1 matrix, as an exact integer.

    Counts alternating walks of length 2t that start and end on the row
    side. Computed by iterated matrix-vector products in python integer
    arithmetic, so the count never overflows; (A A^T)^t is never formed.
    """
    m = np.asarray(a)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {m.shape}")
    if t < 0:
        raise ValueError("t must be nonnegative")
    if m.size and not np.isin(m, (0, 1)).all():
        raise ValueError("entries must be 0 or 1")
    ai = m.astype(object)
    w = np.ones(m.shape[0], dtype=object)
    for _ in range(int(t)):
        w = ai @ (ai.T @ w)
    return int(np.sum(w))
