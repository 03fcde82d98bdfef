"""Command-line front end: traces, crossing schedules, tree bounds, slicing.

Every subcommand emits deterministic bytes for identical invocations:
reals are serialized with 6 significant digits by default (override with
--precision K or the PERMFLOW_PRECISION environment variable), rows are
ordered canonically, and `--start random:SEED` derives its permutation
from a fixed linear congruential generator — s <- (1664525*s +
1013904223) mod 2^32 — driving a backward swap pass, so any
implementation of the same recipe reproduces the same bytes.

Exit codes: 0 success, 2 usage or parse errors, 3 deliberate size limits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Optional, Sequence

from .core import (
    Permutation,
    SizeLimitError,
    disorder_squared,
    reverse_disorder,
    vertex_of,
)
from .dtree import (
    BUILD_FAST_LIMIT,
    BUILD_LIMIT,
    build_optimal,
    info_lower_bound,
    tree_to_json,
)
from .flow import (
    crossing_events,
    estimate_sorting,
    sample_trace,
    time_to_epsilon,
)
from .projection import MAX_STEP, integrate_projected
from .slicing import (
    ALGORITHMS,
    feasible_count,
    instrument,
    is_contradictory,
    isolates_sorted,
    parse_constraints,
    reduction_report,
)

__all__ = ["main"]

DEFAULT_PRECISION = 6
PRECISION_ENV = "PERMFLOW_PRECISION"


# --- start-spec parsing ------------------------------------------------------


def _seeded_shuffle(n: int, seed: int) -> Permutation:
    """The documented reproducible shuffle behind `--start random:SEED`.

    State update s <- (1664525*s + 1013904223) mod 2^32 starting from the
    seed; positions are visited from the last down to the second, each
    swapped with position s mod (i+1). Pure integer arithmetic, so every
    implementation of the recipe agrees byte-for-byte.
    """
    ranks = list(range(1, n + 1))
    s = seed % 2**32
    for i in range(n - 1, 0, -1):
        s = (1664525 * s + 1013904223) % 2**32
        j = s % (i + 1)
        ranks[i], ranks[j] = ranks[j], ranks[i]
    return Permutation.of(ranks)


def _parse_start(spec: str, n: int) -> Permutation:
    if n < 1:
        raise ValueError(f"--n must be >= 1, got {n}")
    if spec == "sorted":
        return Permutation.identity(n)
    if spec == "reverse":
        return Permutation.reverse(n)
    if spec.startswith("random:"):
        try:
            seed = int(spec[len("random:") :])
        except ValueError:
            raise ValueError(f"bad seed in start spec {spec!r}") from None
        return _seeded_shuffle(n, seed)
    try:
        ranks = [int(tok) for tok in spec.split(",")]
    except ValueError:
        raise ValueError(
            f"start spec {spec!r} is none of: sorted, reverse, random:SEED, "
            "or a comma-separated permutation"
        ) from None
    if len(ranks) != n:
        raise ValueError(f"start list has {len(ranks)} entries but --n is {n}")
    return Permutation.of(ranks)


def _parse_perm_list(text: str) -> Permutation:
    try:
        ranks = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"--input must be a comma-separated permutation, got {text!r}") from None
    return Permutation.of(ranks)


# --- formatting --------------------------------------------------------------


def _resolve_precision(flag: Optional[int]) -> int:
    if flag is not None:
        digits = flag
    else:
        raw = os.environ.get(PRECISION_ENV)
        if raw is None:
            return DEFAULT_PRECISION
        try:
            digits = int(raw)
        except ValueError:
            raise ValueError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
    if not (1 <= digits <= 17):
        raise ValueError(f"precision must be in 1..17, got {digits}")
    return digits


def _fmt(x: float, digits: int) -> str:
    return format(x, f".{digits}g")


def _round_floats(obj, digits: int):
    if isinstance(obj, float):
        return float(_fmt(obj, digits))
    if isinstance(obj, dict):
        return {k: _round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round_floats(v, digits) for v in obj]
    return obj


def _to_json(payload: dict, digits: int) -> str:
    return json.dumps(_round_floats(payload, digits))


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _write(text: str, output: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommand handlers ------------------------------------------------------


def _cmd_flow_events(args, digits: int) -> str:
    start = _parse_start(args.start, args.n)
    x0 = vertex_of(start)
    events = crossing_events(x0)
    est = estimate_sorting(start, epsilon=args.epsilon, c=args.c)
    d0 = disorder_squared(x0).d0
    if args.format == "json":
        return _to_json(
            {
                "n": start.n,
                "start": list(start.ranks),
                "d0": d0,
                "events": [
                    {"i": e.pair[0], "j": e.pair[1], "t": e.time} for e in events
                ],
                "t_eps": est.continuous_time,
                "estimate": est.discrete_estimate,
                "lemma_lb": est.lemma_lower_bound,
            },
            digits,
        )
    lines = [
        f"# n={start.n} start={','.join(map(str, start.ranks))}",
        "# d0={} crossings={} t_eps={} estimate={} estimate_ceil={} lemma_lb={}".format(
            _fmt(d0, digits),
            len(events),
            _fmt(est.continuous_time, digits),
            _fmt(est.discrete_estimate, digits),
            math.ceil(est.discrete_estimate),
            _fmt(est.lemma_lower_bound, digits),
        ),
        "i,j,t,value",
    ]
    for e in events:
        lines.append(
            f"{e.pair[0]},{e.pair[1]},{_fmt(e.time, digits)},{_fmt(e.meeting_value, digits)}"
        )
    return "\n".join(lines)


def _cmd_flow_trace(args, digits: int) -> str:
    if args.samples < 2:
        raise ValueError(f"--samples must be >= 2, got {args.samples}")
    if args.t_end <= 0:
        raise ValueError(f"--t-end must be > 0, got {args.t_end}")
    start = _parse_start(args.start, args.n)
    x0 = vertex_of(start)
    wanted = [args.t_end * k / (args.samples - 1) for k in range(args.samples)]
    if args.projected:
        trace = integrate_projected(x0, args.t_end, step=args.step)
        last = len(trace.samples) - 1
        picked = []
        for t in wanted:
            idx = last if t == wanted[-1] else min(int(round(t / args.step)), last)
            picked.append(trace.samples[idx])
        rows = [
            (s.t, s.state.coords, disorder_squared(s.state).d0) for s in picked
        ]
    else:
        trace = sample_trace(x0, wanted)
        rows = [(s.t, s.state.coords, s.disorder) for s in trace.samples]
    if args.format == "json":
        return _to_json(
            {
                "n": start.n,
                "start": list(start.ranks),
                "projected": bool(args.projected),
                "rows": [
                    {"t": t, "x": list(map(float, x)), "disorder": d}
                    for t, x, d in rows
                ],
            },
            digits,
        )
    header = "t," + ",".join(f"x{k}" for k in range(1, start.n + 1)) + ",disorder"
    lines = [header]
    for t, x, d in rows:
        cells = [_fmt(t, digits)] + [_fmt(float(v), digits) for v in x] + [_fmt(d, digits)]
        lines.append(",".join(cells))
    return "\n".join(lines)


def _cmd_dtree(args, digits: int) -> str:
    bound = info_lower_bound(args.n)
    if BUILD_FAST_LIMIT < args.n <= BUILD_LIMIT and not args.allow_slow:
        raise ValueError(
            f"n = {args.n} is slow to search exhaustively; pass --allow-slow"
        )
    built = build_optimal(args.n, allow_slow=args.allow_slow)
    if args.emit_tree:
        with open(args.emit_tree, "w", newline="") as fh:
            fh.write(tree_to_json(built.root) + "\n")
    stats = built.stats
    if args.format == "json":
        return _to_json(
            {
                "n": args.n,
                "info_bound": bound,
                "height": stats.height,
                "leaf_count": stats.leaf_count,
            },
            digits,
        )
    return "n,info_bound,height,leaf_count\n" + (
        f"{args.n},{bound},{stats.height},{stats.leaf_count}"
    )


def _cmd_slice(args, digits: int) -> str:
    if args.instrument is not None:
        if args.input is None:
            raise ValueError("--instrument requires --input LIST")
        start = _parse_perm_list(args.input)
        if start.n != args.n:
            raise ValueError(f"--input has {start.n} entries but --n is {args.n}")
        run = instrument(args.instrument, start)
        report = reduction_report(run)
        iso = isolates_sorted(run.constraints)
        if args.format == "json":
            return _to_json(
                {
                    "algorithm": run.algorithm,
                    "n": start.n,
                    "input": list(start.ranks),
                    "trace": [
                        {
                            "step": k,
                            "lo": s.constraint.lo,
                            "hi": s.constraint.hi,
                            "feasible_before": s.feasible_before,
                            "feasible_after": s.feasible_after,
                            "bits": s.bits,
                        }
                        for k, s in enumerate(run.trace, start=1)
                    ],
                    "comparisons": report.comparisons,
                    "total_bits": report.total_bits,
                    "max_bits": report.max_bits,
                    "halving_fraction": report.halving_fraction,
                    "final_count": report.final_feasible,
                    "isolates_sorted": iso,
                },
                digits,
            )
        lines = [
            "# algorithm={} input={} comparisons={} total_bits={} max_bits={} "
            "halving_fraction={} final_count={} isolates_sorted={}".format(
                run.algorithm,
                ",".join(map(str, start.ranks)),
                report.comparisons,
                _fmt(report.total_bits, digits),
                _fmt(report.max_bits, digits),
                _fmt(report.halving_fraction, digits),
                report.final_feasible,
                _bool(iso),
            ),
            "step,lo,hi,feasible_before,feasible_after,bits",
        ]
        for k, s in enumerate(run.trace, start=1):
            lines.append(
                f"{k},{s.constraint.lo},{s.constraint.hi},"
                f"{s.feasible_before},{s.feasible_after},{_fmt(s.bits, digits)}"
            )
        return "\n".join(lines)

    constraints = parse_constraints(args.constraints or "", args.n)
    count = feasible_count(constraints)
    iso = isolates_sorted(constraints)
    contra = is_contradictory(constraints)
    if args.format == "json":
        return _to_json(
            {
                "n": args.n,
                "constraints": [[c.lo, c.hi] for c in constraints.constraints],
                "count": count,
                "isolates_sorted": iso,
                "contradictory": contra,
            },
            digits,
        )
    return "n,count,isolates_sorted,contradictory\n" + (
        f"{args.n},{count},{_bool(iso)},{_bool(contra)}"
    )


def _cmd_report(args, digits: int) -> str:
    start = Permutation.reverse(3)
    x0 = vertex_of(start)
    d0 = disorder_squared(x0).d0
    events = crossing_events(x0)
    t1 = events[0].time
    t_total = time_to_epsilon(d0, 1.0)
    dt = 1.0 / 3.0
    est = estimate_sorting(start)
    bound = info_lower_bound(3)
    deviations = [
        "staged boundary times ln 2, 2 ln 2, 3 ln 2 ({}, {}, {}) are mutually "
        "inconsistent with the quoted total 1.5 ln 2 = {}; the single closed-form "
        "flow has all three pairs meeting at once at t = {}, and {} is its "
        "epsilon = 1 stopping time rather than a sum of stage times.".format(
            _fmt(math.log(2), digits),
            _fmt(2 * math.log(2), digits),
            _fmt(3 * math.log(2), digits),
            _fmt(t_total, digits),
            _fmt(t1, digits),
            _fmt(t_total, digits),
        ),
        "the operation count t/dt with t = {} and dt = {} evaluates to {}; "
        "equality with the integer minimum info_bound = {} holds only after "
        "rounding down, so the unrounded value is reported with its ceiling {}.".format(
            _fmt(t_total, digits),
            _fmt(dt, digits),
            _fmt(est.discrete_estimate, digits),
            bound,
            math.ceil(est.discrete_estimate),
        ),
    ]
    if args.format == "json":
        return _to_json(
            {
                "n": 3,
                "start": list(start.ranks),
                "d0": d0,
                "t1": t1,
                "crossings": len(events),
                "info_bound": bound,
                "t_total": t_total,
                "dt": dt,
                "estimate": est.discrete_estimate,
                "estimate_ceiling": math.ceil(est.discrete_estimate),
                "lemma_lb": est.lemma_lower_bound,
                "deviations": deviations,
            },
            digits,
        )
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerow(["n", 3])
        writer.writerow(["start", ",".join(map(str, start.ranks))])
        writer.writerow(["d0", _fmt(d0, digits)])
        writer.writerow(["t1", _fmt(t1, digits)])
        writer.writerow(["crossings", len(events)])
        writer.writerow(["info_bound", bound])
        writer.writerow(["t_total", _fmt(t_total, digits)])
        writer.writerow(["dt", _fmt(dt, digits)])
        writer.writerow(["estimate", _fmt(est.discrete_estimate, digits)])
        writer.writerow(["estimate_ceiling", math.ceil(est.discrete_estimate)])
        writer.writerow(["lemma_lb", _fmt(est.lemma_lower_bound, digits)])
        writer.writerow(["deviation_1", deviations[0]])
        writer.writerow(["deviation_2", deviations[1]])
        return buf.getvalue().rstrip("\n")
    lines = [
        "worked example: start = {} (n = 3)".format(",".join(map(str, start.ranks))),
        f"d0 = {_fmt(d0, digits)}",
        f"t1 = {_fmt(t1, digits)}",
        f"crossings = {len(events)}",
        f"info_bound = {bound}",
        f"t_total = {_fmt(t_total, digits)}",
        f"dt = {_fmt(dt, digits)}",
        f"estimate = {_fmt(est.discrete_estimate, digits)}",
        f"estimate_ceiling = {math.ceil(est.discrete_estimate)}",
        f"lemma_lb = {_fmt(est.lemma_lower_bound, digits)}",
        f"NOTED-DEVIATION: {deviations[0]}",
        f"NOTED-DEVIATION: {deviations[1]}",
    ]
    return "\n".join(lines)


def _cmd_bench(args, digits: int) -> str:
    if not (2 <= args.n_min <= args.n_max <= 10**6):
        raise ValueError(
            f"need 2 <= n-min <= n-max <= 10^6, got {args.n_min}..{args.n_max}"
        )
    if args.step < 1:
        raise ValueError(f"--step must be >= 1, got {args.step}")
    rows = []
    for n in range(args.n_min, args.n_max + 1, args.step):
        d0 = reverse_disorder(n)
        t = time_to_epsilon(float(d0), 1.0)
        n_t = n * t
        asymptote = 1.5 * n * math.log(n)
        rows.append((n, d0, t, n_t, asymptote, n_t / asymptote))
    if args.format == "json":
        return _to_json(
            {
                "rows": [
                    {
                        "n": n,
                        "d0": d0,
                        "t": t,
                        "n_t": n_t,
                        "asymptote": asym,
                        "ratio": ratio,
                    }
                    for n, d0, t, n_t, asym, ratio in rows
                ]
            },
            digits,
        )
    lines = ["n,d0,t,n_t,asymptote,ratio"]
    for n, d0, t, n_t, asym, ratio in rows:
        lines.append(
            f"{n},{d0},{_fmt(t, digits)},{_fmt(n_t, digits)},"
            f"{_fmt(asym, digits)},{_fmt(ratio, digits)}"
        )
    return "\n".join(lines)


# --- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "csv"), default=None, help="output format"
    )
    common.add_argument("--output", default=None, help="write to this path instead of stdout")
    common.add_argument(
        "--precision",
        type=int,
        default=None,
        help=f"significant digits for reals (default {DEFAULT_PRECISION}; "
        f"{PRECISION_ENV} overrides the default)",
    )

    parser = argparse.ArgumentParser(
        prog="permflow",
        description="Sorting as contraction flow: traces, crossings, tree bounds, slicing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    flow = sub.add_parser("flow", help="closed-form flow: events and traces")
    flowsub = flow.add_subparsers(dest="flow_command", required=True)

    events = flowsub.add_parser("events", parents=[common], help="crossing schedule")
    events.add_argument("--n", type=int, required=True)
    events.add_argument(
        "--start",
        default="reverse",
        help="sorted | reverse | random:SEED | comma list (default reverse)",
    )
    events.add_argument("--epsilon", type=float, default=1.0)
    events.add_argument("--c", type=float, default=1.0)

    trace = flowsub.add_parser("trace", parents=[common], help="sampled trajectory")
    trace.add_argument("--n", type=int, required=True)
    trace.add_argument("--start", default="reverse")
    trace.add_argument("--samples", type=int, default=11)
    trace.add_argument("--t-end", type=float, required=True)
    trace.add_argument(
        "--projected",
        action="store_true",
        help="integrate the tie-projected field instead of the closed form",
    )
    trace.add_argument(
        "--step",
        type=float,
        default=MAX_STEP,
        help=f"Euler step for --projected (0 < step <= {MAX_STEP})",
    )

    dtree = sub.add_parser("dtree", parents=[common], help="optimal comparison trees")
    dtree.add_argument("--n", type=int, required=True)
    dtree.add_argument(
        "--allow-slow",
        action="store_true",
        help="permit the n=5 exhaustive search",
    )
    dtree.add_argument("--emit-tree", default=None, help="also write the tree JSON here")

    slc = sub.add_parser("slice", parents=[common], help="constraint counting and instrumented sorts")
    slc.add_argument("--n", type=int, required=True)
    group = slc.add_mutually_exclusive_group(required=True)
    group.add_argument("--constraints", default=None, help='e.g. "1<2,2<3" (may be empty)')
    group.add_argument("--instrument", choices=ALGORITHMS, default=None)
    slc.add_argument("--input", default=None, help="comma-separated permutation for --instrument")

    report = sub.add_parser("report", parents=[common], help="n=3 worked example, annotated")

    bench = sub.add_parser("bench", parents=[common], help="lower-bound growth table")
    bench.add_argument("--n-min", type=int, required=True)
    bench.add_argument("--n-max", type=int, required=True)
    bench.add_argument("--step", type=int, default=1, help="stride through n")

    return parser


_HANDLERS = {
    ("flow", "events"): _cmd_flow_events,
    ("flow", "trace"): _cmd_flow_trace,
    ("dtree", None): _cmd_dtree,
    ("slice", None): _cmd_slice,
    ("report", None): _cmd_report,
    ("bench", None): _cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        # report reads most naturally as plain text; data commands default to JSON
        args.format = "text" if args.command == "report" else "json"
    handler = _HANDLERS[(args.command, getattr(args, "flow_command", None))]
    try:
        digits = _resolve_precision(args.precision)
        text = handler(args, digits)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write(text, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
