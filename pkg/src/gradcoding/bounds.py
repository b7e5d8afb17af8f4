"""Closed-form error predictions and deviation-based guarantees.

The replication construction admits exact expressions for its decoding
error under uniform straggler sampling, plus a tail bound and a
replication threshold derived from it.  For random constructions the
guarantees are conditional: they hold whenever the survivor submatrix
stays within a stated spectral distance of its entrywise mean.  The
check_* helpers measure that distance and package the bound together
with whether its hypothesis held, so callers can tell "bound violated"
apart from "hypothesis not satisfied".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codes import SCHEMES, CodeParams, generate
from .decoders import decode_iterative, decode_one_step, default_rho
from .linalg import as_matrix, spectral_norm
from .seeds import derive_seed
from .stragglers import num_nonstragglers, sample_uniform

_REL_SLACK = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """A bound value plus whether its hypothesis held for the instance."""

    name: str
    value: float
    hypothesis_met: bool
    inputs: dict


@dataclass(frozen=True)
class ConcentrationSummary:
    """Normalized deviation statistics over repeated random draws."""

    scheme: str
    k: int
    n: int
    s: int
    delta: float
    trials: int
    values: tuple  # raw spectral deviations, one per draw
    normalized: tuple  # values divided by sqrt(s)
    mean: float
    q90: float
    max_value: float


def _check_block_params(k: int, s: int) -> None:
    if k < 1 or s < 1:
        raise ValueError("k and s must be positive")
    if s > k or k % s != 0:
        raise ValueError("s must divide k")


def _check_delta(delta: float) -> None:
    if not 0.0 <= delta < 1.0:
        raise ValueError("delta must lie in [0, 1)")


def frc_expected_one_step(k: int, s: int, delta: float) -> float:
    """Large-k mean error of uniform-weight decoding for the replication
    construction at straggler fraction delta.

    This is an asymptote, not an exact mean: at small k the true average
    sits above it, and near delta = 0 the expression dips below zero.
    """
    _check_block_params(k, s)
    _check_delta(delta)
    return delta * k / ((1 - delta) * s) - ((s - 1) / s) / (1 - delta)


def frc_expected_optimal(k: int, s: int, r: int) -> float:
    """Exact mean error of least-squares decoding for the replication
    construction when r uniformly chosen columns survive.

    Each task is unrecoverable iff all s copies of its group are missing,
    which happens with probability C(k-s, r) / C(k, r).
    """
    _check_block_params(k, s)
    if not 1 <= r <= k:
        raise ValueError("r must lie in [1, k]")
    return k * math.comb(k - s, r) / math.comb(k, r)


def frc_tail_bound(k: int, s: int, r: int, alpha: int) -> float:
    """Lower bound on P(error <= alpha * s) for the replication
    construction with r uniform survivors, clamped to [0, 1].

    Union bound over the ways alpha + 1 task groups can lose all copies.
    """
    _check_block_params(k, s)
    if not 1 <= r <= k:
        raise ValueError("r must lie in [1, k]")
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    blocks = k // s
    failures = alpha + 1
    if failures > blocks:
        return 1.0
    term = (
        math.comb(blocks, failures)
        * math.comb(k - failures * s, r)
        / math.comb(k, r)
    )
    return min(1.0, max(0.0, 1.0 - term))


def frc_threshold_s(k: int, delta: float, alpha: int) -> float:
    """Replication level above which the alpha-level tail stays under 1/k."""
    if k < 2:
        raise ValueError("k must be at least 2")
    _check_delta(delta)
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    return (1 + 1 / (1 + alpha)) * math.log(k) / (1 - delta)


def deviation_norm(
    a, s: int, rel_tol: float = 1e-10, max_iter: int = 100_000
) -> float:
    """Spectral norm of a minus its target mean (s/k on every entry)."""
    m = as_matrix(a)
    if s < 1:
        raise ValueError("s must be positive")
    k = m.shape[0]
    return spectral_norm(
        m - (s / k) * np.ones(m.shape), rel_tol=rel_tol, max_iter=max_iter
    ).sigma_max


def graph_second_eigen(g, s: int) -> float:
    """Largest non-principal |eigenvalue| of a symmetric s-regular
    adjacency matrix, computed as the deviation from its mean."""
    m = as_matrix(g)
    if m.shape[0] != m.shape[1] or not np.array_equal(m, m.T):
        raise ValueError("adjacency matrix must be square and symmetric")
    sums = m.sum(axis=1)
    if not np.all(sums == s):
        raise ValueError("adjacency matrix must have constant row sum s")
    # row sums exactly s make the all-ones direction vanish exactly
    return deviation_norm(m, s)


def expander_bound(lambda_g: float, s: int, k: int, delta: float) -> float:
    """Worst-case one-step error cap for an s-regular assignment graph
    with second eigenvalue lambda_g, at straggler fraction delta."""
    if lambda_g < 0:
        raise ValueError("lambda_g must be nonnegative")
    if s < 1 or k < 1:
        raise ValueError("k and s must be positive")
    _check_delta(delta)
    return (lambda_g**2 / s**2) * delta * k / (1 - delta)


def check_ebound(a, s: int, delta: float, gamma: float | None = None) -> BoundReport:
    """Bound the uniform-weight decoding error by the spectral deviation.

    With gamma at least the measured deviation of the survivor submatrix,
    the error of the default-weight decoder is at most
    gamma^2 * k / ((1 - delta) * s^2).  gamma defaults to the measured
    value, which makes the hypothesis hold by construction.
    """
    m = as_matrix(a)
    if s < 1:
        raise ValueError("s must be positive")
    _check_delta(delta)
    k, r = m.shape
    measured = deviation_norm(m, s)
    g = measured if gamma is None else float(gamma)
    if g < 0:
        raise ValueError("gamma must be nonnegative")
    hypothesis_met = g >= measured * (1 - _REL_SLACK) - 1e-12
    value = g**2 * k / ((1 - delta) * s**2)
    rho = default_rho(k, r, s)
    err = decode_one_step(m, rho).err_sq
    return BoundReport(
        name="ebound",
        value=value,
        hypothesis_met=hypothesis_met,
        inputs={
            "k": k,
            "r": r,
            "s": s,
            "delta": delta,
            "gamma": g,
            "measured_deviation": measured,
            "rho": rho,
            "err_one_step": err,
        },
    )


def check_u1_bound(a, s: int, delta: float, gamma: float | None = None) -> BoundReport:
    """Bound the first iterative residual by the spectral deviation.

    Hypothesis: the deviation gamma is at least the measured value and at
    most sqrt(1 - delta) * s.  Under it, with step normalizer
    r * s^2 / k, the first residual satisfies
    |u1|^2 <= 5 * gamma^2 * k / ((1 - delta) * s^2) and the survivor
    submatrix obeys |A|^2 <= 4 * (1 - delta) * s^2.
    """
    m = as_matrix(a)
    if s < 1:
        raise ValueError("s must be positive")
    _check_delta(delta)
    k, r = m.shape
    measured = deviation_norm(m, s)
    g = measured if gamma is None else float(gamma)
    if g < 0:
        raise ValueError("gamma must be nonnegative")
    cap = math.sqrt(1 - delta) * s
    hypothesis_met = (
        g >= measured * (1 - _REL_SLACK) - 1e-12 and g <= cap * (1 + _REL_SLACK)
    )
    nu = r * s**2 / k
    u1_sq = decode_iterative(m, nu, t_max=1).trace[0]
    spectral_sq = spectral_norm(m).sigma_max_sq
    value = 5 * g**2 * k / ((1 - delta) * s**2)
    return BoundReport(
        name="u1-bound",
        value=value,
        hypothesis_met=hypothesis_met,
        inputs={
            "k": k,
            "r": r,
            "s": s,
            "delta": delta,
            "gamma": g,
            "measured_deviation": measured,
            "nu": nu,
            "u1_norm_sq": u1_sq,
            "spectral_sq": spectral_sq,
            "spectral_cap": 4 * (1 - delta) * s**2,
        },
    )


def concentration_probe(
    scheme: str,
    k: int,
    n: int,
    s: int,
    trials: int,
    seed: int,
    delta: float = 0.0,
) -> ConcentrationSummary:
    """Measure how tightly random draws concentrate around their mean.

    For each trial, draw an assignment matrix (and optionally a uniform
    survivor subset at fraction 1 - delta), record its spectral deviation
    from the flat mean, and summarize the deviations divided by sqrt(s).
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    if trials < 1:
        raise ValueError("trials must be positive")
    _check_delta(delta)
    params = CodeParams(k, n, s)
    values = []
    for t in range(trials):
        trial_seed = derive_seed(seed, t)
        am = generate(scheme, params, derive_seed(trial_seed, 0))
        if delta > 0.0:
            r = num_nonstragglers(n, delta)
            mat = sample_uniform(am, r, derive_seed(trial_seed, 1)).a
        else:
            mat = am.g
        values.append(deviation_norm(mat, s))
    normalized = np.array(values) / math.sqrt(s)
    return ConcentrationSummary(
        scheme=scheme,
        k=k,
        n=n,
        s=s,
        delta=delta,
        trials=trials,
        values=tuple(values),
        normalized=tuple(float(v) for v in normalized),
        mean=float(normalized.mean()),
        q90=float(np.quantile(normalized, 0.9)),
        max_value=float(normalized.max()),
    )
