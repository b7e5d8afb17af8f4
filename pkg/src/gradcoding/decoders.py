"""Decoders: recover an approximate all-ones combination from survivors.

Given the k x r submatrix of columns whose workers replied, each decoder
picks coefficients x so that the combined reply a @ x approximates the
vector of ones (one unit of every task's result). err_sq is the squared
distance to that target, err_per_task divides by k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import as_matrix, least_squares, spectral_norm

AUTO = "auto"

# margin applied to the measured spectral norm when resolving nu, so the
# contraction hypothesis survives power-iteration underestimate
NU_MARGIN = 1e-6


@dataclass
class DecoderConfig:
    kind: str  # "one-step" | "optimal" | "iterative"
    rho: float | str = AUTO  # one-step weight; auto = k/(r*s)
    nu: float | str = AUTO  # iterative normalizer; auto = measured norm^2 * (1 + margin)
    t_max: int = 10_000
    tol: float | None = None  # plateau threshold on the trace; None = 1e-10 * k

    def label(self, iterations: int | None = None) -> str:
        if self.kind == "iterative":
            t = self.t_max if iterations is None else iterations
            return f"iterative_t{t}"
        return self.kind


@dataclass
class DecodeOutcome:
    x: np.ndarray  # coefficients, one per surviving worker
    v: np.ndarray  # a @ x
    err_sq: float
    err_per_task: float
    iterations: int
    trace: list[float] | None = None  # squared residual after each pass
    nu_below_spectral: bool = False  # normalizer under the measured norm, no guarantee
    param: float = 0.0  # resolved rho or nu; zero for parameterless decoders


def default_rho(k: int, r: int, s: int) -> float:
    """Uniform weight that is unbiased for the expected survivor load."""
    if k < 1 or r < 1 or s < 1:
        raise ValueError(f"k, r, s must be positive, got {k}, {r}, {s}")
    return k / (r * s)


def _outcome(a: np.ndarray, x: np.ndarray, iterations: int, **extra) -> DecodeOutcome:
    v = a @ x
    err = float(np.sum((v - 1.0) ** 2))
    return DecodeOutcome(x=x, v=v, err_sq=err, err_per_task=err / a.shape[0],
                         iterations=iterations, **extra)


def decode_one_step(a, rho: float) -> DecodeOutcome:
    """Weight every survivor equally by rho. One pass, no linear algebra."""
    m = as_matrix(a)
    x = np.full(m.shape[1], float(rho))
    return _outcome(m, x, 1, param=float(rho))


def decode_optimal(a) -> DecodeOutcome:
    """Minimum-norm least squares coefficients; the best any decoder can do."""
    m = as_matrix(a)
    x = least_squares(m, np.ones(m.shape[0]))
    return _outcome(m, x, 1)


def decode_iterative(a, nu: float, t_max: int = 10_000, tol: float | None = None) -> DecodeOutcome:
    """Richardson-style refinement: u <- u - (a a^T / nu) u, starting at ones.

    With nu at or above the squared spectral norm the trace of squared
    residuals decreases monotonically toward the optimal error and never
    undershoots it. A smaller nu voids that guarantee; the outcome then
    carries nu_below_spectral=True.
    """
    m = as_matrix(a)
    if not nu > 0:
        raise ValueError(f"nu must be positive, got {nu}")
    if t_max < 1:
        raise ValueError(f"t_max must be at least 1, got {t_max}")
    k, r = m.shape
    if tol is None:
        tol = 1e-10 * k
    below = bool(nu < spectral_norm(m).sigma_max_sq)
    u = np.ones(k)
    x = np.zeros(r)
    trace: list[float] = []
    for _ in range(t_max):
        w = (m.T @ u) / nu
        x += w
        u = u - m @ w
        trace.append(float(u @ u))
        if len(trace) >= 2 and abs(trace[-2] - trace[-1]) < tol:
            break
    return _outcome(m, x, len(trace), trace=trace, nu_below_spectral=below,
                    param=float(nu))


def _resolve_nu(a: np.ndarray, cfg: DecoderConfig) -> float:
    if cfg.nu != AUTO:
        return float(cfg.nu)
    measured = spectral_norm(a).sigma_max_sq
    return measured * (1.0 + NU_MARGIN) if measured > 0 else 1.0


def decode(a, cfg: DecoderConfig, s: int | None = None) -> DecodeOutcome:
    """Run the configured decoder, resolving auto parameters.

    Auto rho needs the per-worker load s of the code the survivors came
    from; auto nu measures the spectral norm of the survivor matrix.
    """
    m = as_matrix(a)
    k, r = m.shape
    if cfg.kind == "one-step":
        if cfg.rho == AUTO:
            if s is None:
                raise ValueError("auto rho needs the code load s")
            rho = default_rho(k, r, s)
        else:
            rho = float(cfg.rho)
        return decode_one_step(m, rho)
    if cfg.kind == "optimal":
        return decode_optimal(m)
    if cfg.kind == "iterative":
        return decode_iterative(m, _resolve_nu(m, cfg), t_max=cfg.t_max, tol=cfg.tol)
    raise ValueError(f"unknown decoder kind {cfg.kind!r}")
