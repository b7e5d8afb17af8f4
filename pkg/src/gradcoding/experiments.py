"""Monte Carlo harness: sweep schemes, straggler levels, and decoders.

A cell is one (scheme, s, delta) combination.  Within a cell every
decoder sees the same sequence of matrix draws and survivor subsets, so
decoder comparisons are paired.  Runs are deterministic: the record list
(and its CSV form) depends only on the config, regardless of how many
worker processes computed it.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib.resources import files
from itertools import product

import numpy as np

from .codes import SCHEMES, CodeParams, generate
from .decoders import DecoderConfig, decode
from .seeds import derive_seed
from .stragglers import num_nonstragglers, sample_uniform

RECORD_HEADER = (
    "scheme,k,n,s,delta,r,decoder,param,trial,seed,err_sq,err_per_task,iterations"
)
AGGREGATE_HEADER = "scheme,k,s,delta,decoder,mean_err_per_task,stderr,trials"

DECODER_KINDS = ("one-step", "optimal", "iterative")

PRESETS = ("fig2", "fig3", "fig4", "fig5")


def load_preset(name: str) -> dict:
    """Load one of the bundled sweep configs as a plain dict.

    The same documents are checked into the repository under figures/ for
    hand editing; the bundled copies make the CLI work from anywhere.
    """
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}")
    text = (files("gradcoding") / "presets" / f"{name}.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class ExperimentConfig:
    schemes: tuple
    k: int
    n: int
    s_values: tuple
    deltas: tuple
    decoders: tuple
    trials: int
    seed: int


@dataclass(frozen=True)
class TrialRecord:
    scheme: str
    k: int
    n: int
    s: int
    delta: float
    r: int
    decoder: str
    param: float
    trial: int
    seed: int
    err_sq: float
    err_per_task: float
    iterations: int


@dataclass(frozen=True)
class SkippedCell:
    scheme: str
    s: int
    delta: float
    reason: str


@dataclass(frozen=True)
class AggregateRow:
    scheme: str
    k: int
    s: int
    delta: float
    decoder: str
    mean_err_per_task: float
    stderr: float
    trials: int


@dataclass(frozen=True)
class ExperimentResult:
    records: list
    skipped: list


def _parse_decoder(obj: dict) -> DecoderConfig:
    if "kind" not in obj:
        raise ValueError("decoder spec needs a 'kind'")
    kind = obj["kind"]
    if kind not in DECODER_KINDS:
        raise ValueError(f"unknown decoder kind {kind!r}")
    known = {"kind", "rho", "nu", "t_max", "tol"}
    extra = set(obj) - known
    if extra:
        raise ValueError(f"unknown decoder options {sorted(extra)}")
    return DecoderConfig(
        kind=kind,
        rho=obj.get("rho", "auto"),
        nu=obj.get("nu", "auto"),
        t_max=obj.get("t_max", 10_000),
        tol=obj.get("tol"),
    )


def parse_config(obj: dict) -> ExperimentConfig:
    """Build a validated config from a plain dict (e.g. loaded JSON)."""
    try:
        schemes = tuple(obj["schemes"])
        k = int(obj["k"])
        s_values = tuple(int(s) for s in obj["s_values"])
        deltas = tuple(float(d) for d in obj["deltas"])
        decoder_objs = list(obj["decoders"])
        trials = int(obj["trials"])
        seed = int(obj["seed"])
    except KeyError as missing:
        raise ValueError(f"config is missing {missing}") from None
    n = int(obj.get("n", k))
    for scheme in schemes:
        if scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {scheme!r}")
    if not schemes or not s_values or not deltas or not decoder_objs:
        raise ValueError("schemes, s_values, deltas, decoders must be non-empty")
    for d in deltas:
        if not 0.0 <= d < 1.0:
            raise ValueError(f"delta must lie in [0, 1), got {d}")
    if trials < 1:
        raise ValueError("trials must be positive")
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    return ExperimentConfig(
        schemes=schemes,
        k=k,
        n=n,
        s_values=s_values,
        deltas=deltas,
        decoders=tuple(_parse_decoder(d) for d in decoder_objs),
        trials=trials,
        seed=seed,
    )


def run_cell(
    scheme: str,
    k: int,
    n: int,
    s: int,
    delta: float,
    decoders: tuple,
    trials: int,
    seed: int,
    cell_id: int,
) -> list:
    """Run every trial of one (scheme, s, delta) cell.

    Each trial draws one matrix and one survivor set, then feeds the same
    submatrix to every decoder.  Iterative decoders contribute one record
    per pass, labeled by how many passes produced it.
    """
    params = CodeParams(k, n, s)
    r = num_nonstragglers(n, delta)
    records = []
    for trial in range(trials):
        trial_seed = derive_seed(seed, cell_id, trial)
        am = generate(scheme, params, derive_seed(trial_seed, 0))
        sub = sample_uniform(am, r, derive_seed(trial_seed, 1))
        for cfg in decoders:
            out = decode(sub.a, cfg, s=s)
            common = dict(
                scheme=scheme, k=k, n=n, s=s, delta=delta, r=r,
                param=out.param, trial=trial, seed=trial_seed,
            )
            if cfg.kind == "iterative":
                for t, u_sq in enumerate(out.trace, start=1):
                    records.append(TrialRecord(
                        decoder=f"iterative_t{t}", err_sq=u_sq,
                        err_per_task=u_sq / k, iterations=t, **common,
                    ))
            else:
                records.append(TrialRecord(
                    decoder=cfg.kind, err_sq=out.err_sq,
                    err_per_task=out.err_per_task,
                    iterations=out.iterations, **common,
                ))
    return records


def _cell_args(config: ExperimentConfig):
    cells = product(config.schemes, config.s_values, config.deltas)
    for cell_id, (scheme, s, delta) in enumerate(cells):
        yield cell_id, scheme, s, delta


def _run_cell_task(args) -> list:
    cell_id, scheme, s, delta, config = args
    return run_cell(
        scheme, config.k, config.n, s, delta,
        config.decoders, config.trials, config.seed, cell_id,
    )


def run_experiment(config: ExperimentConfig, jobs: int = 1) -> ExperimentResult:
    """Run the whole grid; infeasible cells are skipped, not fatal."""
    if jobs < 1:
        raise ValueError("jobs must be positive")
    runnable = []
    skipped = []
    for cell_id, scheme, s, delta in _cell_args(config):
        try:
            # a probe draw surfaces structural mismatches (divisibility,
            # squareness, parity) before any trials are spent
            generate(scheme, CodeParams(config.k, config.n, s), 0)
        except ValueError as bad:
            skipped.append(SkippedCell(scheme, s, delta, str(bad)))
            continue
        runnable.append((cell_id, scheme, s, delta, config))
    records: list = []
    if jobs == 1 or len(runnable) <= 1:
        for args in runnable:
            records.extend(_run_cell_task(args))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for cell_records in pool.map(_run_cell_task, runnable):
                records.extend(cell_records)
    return ExperimentResult(records=records, skipped=skipped)


def _fmt(x: float) -> str:
    return "%.12g" % float(x)


def records_to_csv(records) -> str:
    lines = [RECORD_HEADER]
    for r in records:
        lines.append(",".join([
            r.scheme, str(r.k), str(r.n), str(r.s), _fmt(r.delta), str(r.r),
            r.decoder, _fmt(r.param), str(r.trial), str(r.seed),
            _fmt(r.err_sq), _fmt(r.err_per_task), str(r.iterations),
        ]))
    return "\n".join(lines) + "\n"


def aggregate(records) -> list:
    """Collapse trial records into one row per (scheme, k, s, delta, decoder)."""
    groups: dict[tuple, list] = {}
    for r in records:
        groups.setdefault((r.scheme, r.k, r.s, r.delta, r.decoder), []).append(
            r.err_per_task
        )
    rows = []
    for (scheme, k, s, delta, decoder), vals in groups.items():
        count = len(vals)
        arr = np.array(vals)
        stderr = float(arr.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0
        rows.append(AggregateRow(
            scheme=scheme, k=k, s=s, delta=delta, decoder=decoder,
            mean_err_per_task=float(arr.mean()), stderr=stderr, trials=count,
        ))
    return rows


def aggregate_to_csv(rows) -> str:
    lines = [AGGREGATE_HEADER]
    for r in rows:
        lines.append(",".join([
            r.scheme, str(r.k), str(r.s), _fmt(r.delta), r.decoder,
            _fmt(r.mean_err_per_task), _fmt(r.stderr), str(r.trials),
        ]))
    return "\n".join(lines) + "\n"
