"""Straggler models: which workers reply before the deadline.

Uniform sampling keeps a random r-subset of columns. The adversarial
models instead search for the worst r-subset: cheap and exact for the
block construction, exhaustive for anything small enough to enumerate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .codes import AssignmentMatrix, _check_frc_structure
from .decoders import decode_one_step, decode_optimal, default_rho
from .seeds import make_rng


@dataclass
class StragglerModel:
    kind: str  # "uniform" | "frc_adversary" | "brute_force"
    delta: float = 0.0  # straggler fraction
    objective: str = "optimal"  # brute force target: "one-step" | "optimal"
    rho: float | None = None  # one-step weight; None = k/(r*s)


@dataclass
class NonStragglerSample:
    columns: np.ndarray  # sorted surviving column indices
    a: np.ndarray  # k x r survivor submatrix


def num_nonstragglers(n: int, delta: float) -> int:
    """Survivor count r = round((1 - delta) * n), never below 1."""
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"delta must lie in [0, 1), got {delta}")
    return max(1, round((1.0 - delta) * n))


def sample_uniform(am: AssignmentMatrix, r: int, seed: int) -> NonStragglerSample:
    """Uniformly random r-subset of workers, without replacement."""
    n = am.params.n
    if not 1 <= r <= n:
        raise ValueError(f"r must lie in [1, n], got r={r}, n={n}")
    rng = make_rng(seed)
    columns = np.sort(rng.choice(n, size=r, replace=False))
    return NonStragglerSample(columns=columns, a=am.g[:, columns])


def permute_columns(am: AssignmentMatrix, seed: int) -> AssignmentMatrix:
    """Shuffle worker order. Structure-preserving, used to exercise the
    adversary's indifference to column presentation."""
    rng = make_rng(seed)
    perm = rng.permutation(am.params.n)
    return AssignmentMatrix(am.scheme, am.params, am.g[:, perm], am.seed)


def frc_adversary(am: AssignmentMatrix, r: int) -> NonStragglerSample:
    """Worst-case survivors for the block construction: keep whole groups.

    Every discarded group loses its s tasks outright, so optimal decoding
    on the result has squared error exactly k - r. Columns are grouped by
    content, which makes the choice exact for permuted presentations too.
    Rejects matrices without the repeated-block structure.
    """
    k, n, s = am.params.k, am.params.n, am.params.s
    g = np.asarray(am.g)
    if n != k or k % s != 0:
        raise ValueError("needs a square matrix with s | k")
    _check_frc_structure(g, k, s)
    if not 1 <= r <= n:
        raise ValueError(f"r must lie in [1, n], got r={r}")
    if r % s != 0:
        raise ValueError(f"r must be a multiple of the group size, got r={r}, s={s}")
    groups: dict[bytes, list[int]] = {}
    for j in range(n):
        groups.setdefault(g[:, j].tobytes(), []).append(j)
    ordered = sorted(groups.values(), key=min)
    keep: list[int] = []
    for idxs in ordered[: r // s]:
        keep.extend(idxs)
    columns = np.sort(np.asarray(keep, dtype=int))
    return NonStragglerSample(columns=columns, a=g[:, columns])


def brute_force_adversary(
    am: AssignmentMatrix,
    model: StragglerModel,
    r: int,
    enumeration_cap: int = 2_000_000,
) -> tuple[NonStragglerSample, float]:
    """Exhaustive worst r-subset under the model's objective.

    Ties break to the lexicographically smallest column set. The search
    refuses to start when C(n, r) exceeds enumeration_cap.
    """
    k, n, s = am.params.k, am.params.n, am.params.s
    g = np.asarray(am.g, dtype=float)
    if not 1 <= r <= n:
        raise ValueError(f"r must lie in [1, n], got r={r}")
    if model.objective not in ("one-step", "optimal"):
        raise ValueError(f"unknown objective {model.objective!r}")
    total = math.comb(n, r)
    if total > enumeration_cap:
        raise ValueError(
            f"C({n}, {r}) = {total} subsets exceeds the cap {enumeration_cap}"
        )
    rho = model.rho
    if model.objective == "one-step":
        rho = default_rho(k, r, s) if rho is None else float(rho)
        if not rho > 0:
            raise ValueError(f"rho must be positive, got {rho}")
    best_err = -1.0
    best_cols: tuple[int, ...] | None = None
    for cols in itertools.combinations(range(n), r):
        a = g[:, cols]
        if model.objective == "one-step":
            err = decode_one_step(a, rho).err_sq
        else:
            err = decode_optimal(a).err_sq
        if err > best_err:
            best_err = err
            best_cols = cols
    columns = np.asarray(best_cols, dtype=int)
    return NonStragglerSample(columns=columns, a=am.g[:, columns]), float(best_err)
