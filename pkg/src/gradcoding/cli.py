"""Command line driver for generating, decoding, and sweeping codes.

Exit codes: 0 on success, 1 for unusable input (flags, files, malformed
matrices or configs), 2 for requests the library rejects (bad parameter
combinations, enumeration caps), 3 for runtime failures such as an
exhausted random-graph search.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bounds import (
    expander_bound,
    frc_expected_one_step,
    frc_expected_optimal,
    frc_tail_bound,
    frc_threshold_s,
)
from .codes import SCHEMES, CodeParams, generate, parse_text, to_text
from .decoders import AUTO, DecoderConfig, decode, decode_one_step, decode_optimal, default_rho
from .descent import make_quadratic_problem, run_gd_demo
from .experiments import (
    PRESETS,
    aggregate,
    aggregate_to_csv,
    load_preset,
    parse_config,
    records_to_csv,
    run_experiment,
)
from .linalg import spectral_norm
from .seeds import derive_seed
from .stragglers import (
    StragglerModel,
    brute_force_adversary,
    frc_adversary,
    num_nonstragglers,
    sample_uniform,
)


class InputError(Exception):
    """Unusable input: missing file, malformed matrix or config."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; this tool reserves 2 for domain
    # errors, so usage problems exit 1 instead
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    return "%.12g" % float(x)


def _fmt_bare(x) -> str:
    # standalone numbers keep a decimal point so they read as reals
    text = _fmt(x)
    if all(ch not in text for ch in ".en"):
        text += ".0"
    return text


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as bad:
        raise InputError(f"cannot read {path}: {bad}") from None


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as bad:
        raise InputError(f"cannot write {path}: {bad}") from None


def _load_matrix(path: str):
    text = _read_text(path)
    try:
        return parse_text(text)
    except ValueError as bad:
        raise InputError(f"bad matrix in {path}: {bad}") from None


def _auto_or_float(text: str):
    if text == AUTO:
        return AUTO
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a number or 'auto', got {text!r}"
        ) from None


def _print_kv(pairs) -> None:
    for key, val in pairs:
        print(f"{key} {val}")


def _decoder_config(args) -> DecoderConfig:
    return DecoderConfig(
        kind=args.decoder, rho=args.rho, nu=args.nu,
        t_max=args.t_max, tol=args.tol,
    )


def _add_decoder_flags(sub) -> None:
    sub.add_argument("--decoder", choices=("one-step", "optimal", "iterative"),
                     default="optimal")
    sub.add_argument("--rho", type=_auto_or_float, default=AUTO,
                     help="one-step weight (default: k/(r*s))")
    sub.add_argument("--nu", type=_auto_or_float, default=AUTO,
                     help="iterative normalizer (default: measured norm)")
    sub.add_argument("--t-max", type=int, default=10_000)
    sub.add_argument("--tol", type=float, default=None,
                     help="iterative plateau threshold (default: 1e-10 * k)")


def _cmd_gen(args) -> int:
    n = args.k if args.n is None else args.n
    am = generate(args.scheme, CodeParams(args.k, n, args.s), args.seed)
    _write_text(args.out, to_text(am))
    return 0


def _survivors(args, am):
    n = am.params.n
    if args.columns is not None:
        try:
            cols = sorted(int(c) for c in args.columns.split(","))
        except ValueError:
            raise InputError(f"bad column list {args.columns!r}") from None
        if len(set(cols)) != len(cols):
            raise InputError("column list has repeats")
        if cols and (cols[0] < 0 or cols[-1] >= n):
            raise InputError(f"columns must lie in [0, {n})")
        if not cols:
            raise InputError("column list is empty")
        columns = np.asarray(cols, dtype=int)
        return columns, am.g[:, columns]
    if args.delta is not None:
        r = num_nonstragglers(n, args.delta)
        sub = sample_uniform(am, r, args.straggler_seed)
        return sub.columns, sub.a
    columns = np.arange(n)
    return columns, am.g


def _cmd_decode(args) -> int:
    am = _load_matrix(args.matrix)
    columns, a = _survivors(args, am)
    cfg = _decoder_config(args)
    out = decode(a, cfg, s=am.params.s)
    pairs = [
        ("decoder", cfg.label(out.iterations)),
        ("r", len(columns)),
        ("columns", ",".join(str(c) for c in columns)),
        ("param", _fmt(out.param)),
        ("err_sq", _fmt(out.err_sq)),
        ("err_per_task", _fmt(out.err_per_task)),
        ("iterations", out.iterations),
    ]
    if cfg.kind == "iterative":
        pairs.append(("nu_below_spectral",
                      "true" if out.nu_below_spectral else "false"))
    _print_kv(pairs)
    return 0


def _cmd_adversary(args) -> int:
    am = _load_matrix(args.matrix)
    k, s = am.params.k, am.params.s
    if args.mode == "frc":
        sample = frc_adversary(am, args.r)
        if args.objective == "one-step":
            rho = default_rho(k, args.r, s) if args.rho == AUTO else args.rho
            err = decode_one_step(sample.a, rho).err_sq
        else:
            err = decode_optimal(sample.a).err_sq
    else:
        model = StragglerModel(
            kind="brute_force", objective=args.objective,
            rho=None if args.rho == AUTO else args.rho,
        )
        sample, err = brute_force_adversary(am, model, args.r,
                                            enumeration_cap=args.cap)
    _print_kv([
        ("columns", ",".join(str(c) for c in sample.columns)),
        ("err_sq", _fmt(err)),
        ("objective", args.objective),
    ])
    return 0


def _cmd_bounds(args) -> int:
    r = args.r if args.r is not None else num_nonstragglers(args.k, args.delta)
    if args.formula is not None:
        if args.formula == "frc-expected-one-step":
            value = frc_expected_one_step(args.k, args.s, args.delta)
        elif args.formula == "frc-expected-optimal":
            value = frc_expected_optimal(args.k, args.s, r)
        elif args.formula == "frc-tail-bound":
            value = frc_tail_bound(args.k, args.s, r, args.alpha)
        elif args.formula == "frc-threshold-s":
            value = frc_threshold_s(args.k, args.delta, args.alpha)
        else:
            if args.lambda_g is None:
                raise ValueError("expander-bound needs --lambda-g")
            value = expander_bound(args.lambda_g, args.s, args.k, args.delta)
        print(_fmt_bare(value))
        return 0
    _print_kv([
        ("k", args.k),
        ("s", args.s),
        ("delta", _fmt(args.delta)),
        ("r", r),
        ("alpha", args.alpha),
        ("one_step_asymptote", _fmt(frc_expected_one_step(args.k, args.s, args.delta))),
        ("optimal_exact", _fmt(frc_expected_optimal(args.k, args.s, r))),
        ("tail_bound", _fmt(frc_tail_bound(args.k, args.s, r, args.alpha))),
        ("threshold_s", _fmt(frc_threshold_s(args.k, args.delta, args.alpha))),
    ])
    return 0


def _cmd_experiment(args) -> int:
    if args.preset is not None:
        obj = load_preset(args.preset)
        source = f"preset {args.preset}"
    else:
        text = _read_text(args.config)
        source = args.config
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as bad:
            raise InputError(f"bad JSON in {source}: {bad}") from None
    try:
        config = parse_config(obj)
    except ValueError as bad:
        raise InputError(f"bad config in {source}: {bad}") from None
    result = run_experiment(config, jobs=args.jobs)
    if args.out is None:
        sys.stdout.write(records_to_csv(result.records))
    else:
        out_dir = Path(args.out)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as bad:
            raise InputError(f"cannot create {out_dir}: {bad}") from None
        _write_text(str(out_dir / "records.csv"), records_to_csv(result.records))
        _write_text(str(out_dir / "aggregate.csv"),
                    aggregate_to_csv(aggregate(result.records)))
    for skip in result.skipped:
        print(
            f"skipped scheme={skip.scheme} s={skip.s} delta={_fmt(skip.delta)}:"
            f" {skip.reason}",
            file=sys.stderr,
        )
    cells = (
        len(config.schemes) * len(config.s_values) * len(config.deltas)
        - len(result.skipped)
    )
    print(
        f"cells {cells} skipped {len(result.skipped)} records {len(result.records)}",
        file=sys.stderr,
    )
    return 0


def _cmd_demo_gd(args) -> int:
    problem = make_quadratic_problem(
        tasks=args.tasks, dim=args.dim, rows_per_task=args.rows_per_task,
        noise=args.noise, seed=derive_seed(args.seed, 0),
    )
    n = args.tasks if args.n is None else args.n
    am = generate(args.scheme, CodeParams(args.tasks, n, args.s),
                  derive_seed(args.seed, 1))
    lr = args.step_size
    if lr == AUTO:
        # half the largest stable step for the quadratic objective
        lr = 1.0 / (2.0 * spectral_norm(problem.x).sigma_max_sq)
    trace = run_gd_demo(
        problem, am, delta=args.delta, decoder=_decoder_config(args),
        lr=lr, rounds=args.steps, seed=derive_seed(args.seed, 2),
    )
    if args.trace_out is not None:
        lines = ["round,loss,grad_dev_sq,bound_sq,decode_err_sq"]
        for i in range(trace.rounds_run):
            lines.append(",".join([
                str(i + 1), _fmt(trace.losses[i + 1]),
                _fmt(trace.grad_dev_sq[i]), _fmt(trace.bound_sq[i]),
                _fmt(trace.decode_err_sq[i]),
            ]))
        _write_text(args.trace_out, "\n".join(lines) + "\n")
    _print_kv([
        ("tasks", args.tasks),
        ("scheme", args.scheme),
        ("s", args.s),
        ("delta", _fmt(args.delta)),
        ("decoder", args.decoder),
        ("step_size", _fmt(lr)),
        ("rounds_run", trace.rounds_run),
        ("initial_loss", _fmt(trace.losses[0])),
        ("final_loss", _fmt(trace.losses[-1])),
        ("loss_opt", _fmt(problem.loss_opt)),
        ("max_grad_dev_sq", _fmt(max(trace.grad_dev_sq, default=0.0))),
        ("diverged", "true" if trace.diverged else "false"),
    ])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gradcoding",
                     description="Straggler-tolerant gradient aggregation tools")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="generate an assignment matrix")
    gen.add_argument("--scheme", choices=SCHEMES, required=True)
    gen.add_argument("--k", type=int, required=True, help="number of tasks")
    gen.add_argument("--n", type=int, default=None,
                     help="number of workers (default: k)")
    gen.add_argument("--s", type=int, required=True, help="tasks per worker")
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", default="-", help="output path (default: stdout)")
    gen.set_defaults(func=_cmd_gen)

    dec = subs.add_parser("decode", help="decode one survivor set")
    dec.add_argument("--matrix", required=True, help="matrix file, - for stdin")
    who = dec.add_mutually_exclusive_group()
    who.add_argument("--delta", type=float, default=None,
                     help="straggler fraction for a uniform draw")
    who.add_argument("--columns", default=None,
                     help="explicit surviving columns, comma separated")
    dec.add_argument("--straggler-seed", type=int, default=0)
    _add_decoder_flags(dec)
    dec.set_defaults(func=_cmd_decode)

    adv = subs.add_parser("adversary", help="worst-case survivor search")
    adv.add_argument("--matrix", required=True, help="matrix file, - for stdin")
    adv.add_argument("--r", type=int, required=True, help="survivor count")
    adv.add_argument("--mode", choices=("frc", "brute"), default="frc")
    adv.add_argument("--objective", choices=("optimal", "one-step"),
                     default="optimal")
    adv.add_argument("--rho", type=_auto_or_float, default=AUTO)
    adv.add_argument("--cap", type=int, default=2_000_000,
                     help="largest subset count the search will enumerate")
    adv.set_defaults(func=_cmd_adversary)

    bnd = subs.add_parser("bounds", help="closed-form predictions")
    bnd.add_argument("--formula",
                     choices=("frc-expected-one-step", "frc-expected-optimal",
                              "frc-tail-bound", "frc-threshold-s",
                              "expander-bound"),
                     default=None,
                     help="print just this formula's value")
    bnd.add_argument("--k", type=int, required=True)
    bnd.add_argument("--s", type=int, required=True)
    bnd.add_argument("--delta", type=float, required=True)
    bnd.add_argument("--alpha", type=int, default=0,
                     help="tolerated task-group failures")
    bnd.add_argument("--r", type=int, default=None,
                     help="survivor count (default: from delta)")
    bnd.add_argument("--lambda-g", type=float, default=None,
                     help="graph second eigenvalue, for expander-bound")
    bnd.set_defaults(func=_cmd_bounds)

    exp = subs.add_parser("experiment", help="run a Monte Carlo sweep")
    src = exp.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="JSON config file")
    src.add_argument("--preset", choices=PRESETS,
                     help="bundled sweep config")
    exp.add_argument("--out", default=None,
                     help="directory for records.csv and aggregate.csv"
                          " (default: records to stdout)")
    exp.add_argument("--jobs", type=int, default=1)
    exp.set_defaults(func=_cmd_experiment)

    demo = subs.add_parser("demo-gd", help="gradient descent with coded sums")
    demo.add_argument("--tasks", type=int, required=True)
    demo.add_argument("--dim", type=int, default=5)
    demo.add_argument("--rows-per-task", type=int, default=5)
    demo.add_argument("--noise", type=float, default=0.1)
    demo.add_argument("--scheme", choices=SCHEMES, default="frc")
    demo.add_argument("--n", type=int, default=None)
    demo.add_argument("--s", type=int, required=True)
    demo.add_argument("--delta", type=float, default=0.0)
    demo.add_argument("--steps", type=int, default=100)
    demo.add_argument("--step-size", type=_auto_or_float, default=AUTO)
    demo.add_argument("--seed", type=int, default=0)
    demo.add_argument("--trace-out", default=None, help="per-round CSV path")
    _add_decoder_flags(demo)
    demo.set_defaults(func=_cmd_demo_gd)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as leave:
        return int(leave.code or 0)
    try:
        return args.func(args)
    except InputError as bad:
        print(f"error: {bad}", file=sys.stderr)
        return 1
    except ValueError as bad:
        print(f"error: {bad}", file=sys.stderr)
        return 2
    except RuntimeError as bad:
        print(f"error: {bad}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
