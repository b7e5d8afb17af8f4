"""Assignment matrix constructions.

An assignment matrix is a k x n 0/1 matrix: rows are tasks, columns are
workers, and column j marks the tasks whose results worker j sums up
before replying. Four constructions:

  frc       k/s disjoint groups of s tasks, each served by s identical columns
  bgc       every entry independently Bernoulli(s/k)
  rbgc      bgc with overloaded columns (more than 2s entries) thinned to s
  sregular  adjacency matrix of a random s-regular simple graph on k vertices

frc is deterministic; the rest take a seed and are reproducible from it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .seeds import derive_seed, make_rng

SCHEMES = ("frc", "bgc", "rbgc", "sregular")


@dataclass
class CodeParams:
    k: int  # tasks
    n: int  # workers
    s: int  # per-worker load target

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 1 <= self.s <= self.k:
            raise ValueError(f"s must lie in [1, k], got s={self.s}, k={self.k}")


@dataclass
class AssignmentMatrix:
    scheme: str
    params: CodeParams
    g: np.ndarray  # k x n, entries 0/1
    seed: int | None


def gen_frc(params: CodeParams) -> AssignmentMatrix:
    """Block construction: tasks and workers split into k/s groups, each
    group's s workers all serve exactly that group's s tasks."""
    k, n, s = params.k, params.n, params.s
    if n != k:
        raise ValueError(f"this construction needs one worker per task, got n={n}, k={k}")
    if k % s != 0:
        raise ValueError(f"s must divide k, got k={k}, s={s}")
    g = np.kron(np.eye(k // s, dtype=int), np.ones((s, s), dtype=int))
    return AssignmentMatrix("frc", params, g, None)


def gen_bgc(params: CodeParams, seed: int) -> AssignmentMatrix:
    """Independent Bernoulli(s/k) entries."""
    rng = make_rng(seed)
    g = (rng.random((params.k, params.n)) < params.s / params.k).astype(int)
    return AssignmentMatrix("bgc", params, g, int(seed))


def gen_rbgc(params: CodeParams, seed: int) -> AssignmentMatrix:
    """Bernoulli draw, then any column heavier than 2s is thinned back to s.

    The base draw reuses gen_bgc with the same seed, so columns at or
    below the 2s cap are bitwise identical to the plain Bernoulli output.
    Thinning removes uniformly random entries one at a time from its own
    derived stream.
    """
    base = gen_bgc(params, seed)
    g = base.g.copy()
    s = params.s
    prune = make_rng(derive_seed(seed, 1))
    for j in range(params.n):
        d = int(g[:, j].sum())
        if d > 2 * s:
            support = list(np.flatnonzero(g[:, j]))
            while d > s:
                pick = int(prune.integers(len(support)))
                row = support.pop(pick)
                g[row, j] = 0
                d -= 1
    return AssignmentMatrix("rbgc", params, g, int(seed))


def _pairing_attempt(k: int, s: int, rng: np.random.Generator):
    """One pass of stub pairing; returns an edge set or None on a dead end."""
    edges: set[tuple[int, int]] = set()
    stubs = np.repeat(np.arange(k), s)
    while stubs.size:
        stubs = rng.permutation(stubs)
        leftover: list[int] = []
        progress = False
        for u, v in zip(stubs[::2], stubs[1::2]):
            u, v = int(u), int(v)
            key = (u, v) if u < v else (v, u)
            if u == v or key in edges:
                leftover.append(u)
                leftover.append(v)
            else:
                edges.add(key)
                progress = True
        if not progress:
            return None
        stubs = np.asarray(leftover, dtype=int)
    return edges


def gen_sregular(params: CodeParams, seed: int, max_attempts: int = 1000) -> AssignmentMatrix:
    """Random s-regular simple graph on k vertices, as a 0/1 adjacency matrix.

    Stub pairing: each vertex gets s stubs, stubs are shuffled and paired,
    pairs forming self-loops or repeat edges are thrown back and repaired.
    A stuck attempt restarts from scratch, up to max_attempts.
    """
    k, n, s = params.k, params.n, params.s
    if n != k:
        raise ValueError(f"adjacency matrices are square, got n={n}, k={k}")
    if s >= k:
        raise ValueError(f"degree must be below the vertex count, got s={s}, k={k}")
    if (k * s) % 2 != 0:
        raise ValueError(f"k*s must be even to pair stubs, got k={k}, s={s}")
    rng = make_rng(seed)
    for _ in range(max_attempts):
        edges = _pairing_attempt(k, s, rng)
        if edges is None:
            continue
        g = np.zeros((k, k), dtype=int)
        for u, v in edges:
            g[u, v] = 1
            g[v, u] = 1
        return AssignmentMatrix("sregular", params, g, int(seed))
    raise RuntimeError(f"no simple {s}-regular graph found in {max_attempts} attempts")


def generate(scheme: str, params: CodeParams, seed: int | None = None) -> AssignmentMatrix:
    """Draw a matrix for any scheme by name.

    The replication scheme is deterministic and ignores the seed; every
    other scheme requires one.
    """
    if scheme == "frc":
        return gen_frc(params)
    if seed is None:
        raise ValueError(f"scheme {scheme!r} needs a seed")
    if scheme == "bgc":
        return gen_bgc(params, seed)
    if scheme == "rbgc":
        return gen_rbgc(params, seed)
    if scheme == "sregular":
        return gen_sregular(params, seed)
    raise ValueError(f"unknown scheme {scheme!r}")


def _check_frc_structure(g: np.ndarray, k: int, s: int) -> None:
    groups: dict[bytes, list[int]] = {}
    for j in range(k):
        groups.setdefault(g[:, j].tobytes(), []).append(j)
    if len(groups) != k // s:
        raise ValueError(f"expected {k // s} distinct columns, found {len(groups)}")
    covered = np.zeros(k, dtype=bool)
    for idxs in groups.values():
        if len(idxs) != s:
            raise ValueError(f"column group of size {len(idxs)}, expected {s}")
        support = np.flatnonzero(g[:, idxs[0]])
        if support.size != s:
            raise ValueError(f"column weight {support.size}, expected {s}")
        if covered[support].any():
            raise ValueError("task groups overlap")
        covered[support] = True
    if not covered.all():
        raise ValueError("some tasks are not covered by any group")


def validate(am: AssignmentMatrix) -> None:
    """Raise ValueError unless the matrix satisfies its scheme's invariants.

    The frc check is permutation-invariant in the columns, so a matrix
    with shuffled workers still validates.
    """
    k, n, s = am.params.k, am.params.n, am.params.s
    g = np.asarray(am.g)
    if g.shape != (k, n):
        raise ValueError(f"shape {g.shape} does not match params ({k}, {n})")
    if not np.isin(g, (0, 1)).all():
        raise ValueError("entries must be 0 or 1")
    if am.scheme == "frc":
        if n != k or k % s != 0:
            raise ValueError("frc needs n = k and s | k")
        _check_frc_structure(g, k, s)
    elif am.scheme == "bgc":
        pass  # any 0/1 pattern is a legal draw
    elif am.scheme == "rbgc":
        worst = int(g.sum(axis=0).max()) if g.size else 0
        if worst > 2 * s:
            raise ValueError(f"column weight {worst} exceeds the cap 2s = {2 * s}")
    elif am.scheme == "sregular":
        if n != k:
            raise ValueError("adjacency matrices are square")
        if not np.array_equal(g, g.T):
            raise ValueError("adjacency must be symmetric")
        if np.diag(g).any():
            raise ValueError("no self loops allowed")
        if not (g.sum(axis=1) == s).all():
            raise ValueError(f"every vertex must have degree {s}")
    else:
        raise ValueError(f"unknown scheme {am.scheme!r}")


# ---------- plain text serialization ----------
# header "k n s scheme seed" (seed "-" when absent), then k rows of 0/1

def to_text(am: AssignmentMatrix) -> str:
    seed = "-" if am.seed is None else str(am.seed)
    lines = [f"{am.params.k} {am.params.n} {am.params.s} {am.scheme} {seed}"]
    for row in am.g:
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> AssignmentMatrix:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty input")
    header = lines[0].split()
    if len(header) != 5:
        raise ValueError(f"header needs 5 fields 'k n s scheme seed', got {lines[0]!r}")
    try:
        k, n, s = int(header[0]), int(header[1]), int(header[2])
    except ValueError as exc:
        raise ValueError(f"bad header numbers in {lines[0]!r}") from exc
    scheme = header[3]
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")
    seed = None if header[4] == "-" else int(header[4])
    body = lines[1:]
    if len(body) != k:
        raise ValueError(f"expected {k} rows, got {len(body)}")
    g = np.zeros((k, n), dtype=int)
    for i, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != n:
            raise ValueError(f"row {i} has {len(tokens)} entries, expected {n}")
        for j, tok in enumerate(tokens):
            if tok == "1":
                g[i, j] = 1
            elif tok != "0":
                raise ValueError(f"row {i} has non-binary entry {tok!r}")
    return AssignmentMatrix(scheme, CodeParams(k=k, n=n, s=s), g, seed)
