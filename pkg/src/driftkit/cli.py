"""Command-line interface.

Subcommands: ``generate`` (synthetic streams), ``embed`` (phase-space
states of one window), ``detect`` (stream a detector, emit events),
``evaluate`` (score events against ground truth), ``compliance`` (print
the requirement ledger, optionally with runtime probes).

Exit codes: 0 success, 1 unreadable input or invalid data (path or reason
on stderr), 2 usage error. All randomness flows from ``--seed``.
"""

import argparse
import json
import sys

from . import compliance as compliance_mod
from . import streamio
from .config import RunConfig, default_lambda, load_config
from .detectors import DetectorConfig, DetectorKind, run_detector
from .embedding import EmbeddingParams, embed
from .errors import DriftKitError
from .metrics import EvaluationReport, evaluate
from .stream import (
    StreamWindow,
    generate_logistic_map,
    generate_lorenz,
    generate_piecewise_gaussian,
)

DETECTOR_CHOICES = [k.value for k in DetectorKind]


def _parse_segments(text: str) -> list[tuple[int, float, float]]:
    segments = []
    for part in text.split(","):
        pieces = part.split(":")
        if len(pieces) != 3:
            raise argparse.ArgumentTypeError(
                f"segment {part!r} must be length:mean:stddev"
            )
        segments.append((int(pieces[0]), float(pieces[1]), float(pieces[2])))
    return segments


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(p) for p in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="driftkit",
        description="Streaming concept-drift detection toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a synthetic stream")
    gen_sub = gen.add_subparsers(dest="generator", required=True)

    piecewise = gen_sub.add_parser("piecewise", help="piecewise Gaussian segments")
    piecewise.add_argument(
        "--segments",
        type=_parse_segments,
        required=True,
        metavar="LEN:MEAN:STD[,...]",
    )
    piecewise.add_argument("--seed", type=int, default=0)
    piecewise.add_argument("--output", default="-")
    piecewise.add_argument("--truth-output", default=None)

    lorenz = gen_sub.add_parser("lorenz", help="Lorenz-system x coordinate")
    lorenz.add_argument("--count", type=int, required=True)
    lorenz.add_argument("--dt", type=float, default=0.01)
    lorenz.add_argument("--initial", type=_parse_floats, default=(1.0, 1.0, 1.0))
    lorenz.add_argument("--params", type=_parse_floats, default=(10.0, 28.0, 8.0 / 3.0))
    lorenz.add_argument("--output", default="-")

    logistic = gen_sub.add_parser("logistic", help="logistic-map iterates")
    logistic.add_argument("--count", type=int, required=True)
    logistic.add_argument("--r", type=float, required=True)
    logistic.add_argument("--x0", type=float, required=True)
    logistic.add_argument("--output", default="-")

    emb = sub.add_parser("embed", help="delay-embed one window into states")
    emb.add_argument("--input", default="-")
    emb.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    emb.add_argument("--m", type=int, required=True)
    emb.add_argument("--tau", type=int, required=True)
    emb.add_argument("--output", default="-")

    det = sub.add_parser("detect", help="run one detector over a stream")
    det.add_argument("--detector", choices=DETECTOR_CHOICES)
    det.add_argument("--lambda", dest="lam", type=float, default=None)
    det.add_argument("--n", type=int, default=None, help="window length (udft/crcdd)")
    det.add_argument("--m", type=int, default=None, help="embedding dimension (crcdd)")
    det.add_argument("--tau", type=int, default=None, help="time delay (crcdd)")
    det.add_argument("--negative", action="store_true", default=None)
    det.add_argument("--stride", type=int, default=None)
    det.add_argument("--dft-period", choices=["n", "n-1"], default=None)
    det.add_argument("--literal-mdl", action="store_true", default=None)
    det.add_argument("--input", default=None)
    det.add_argument("--format", choices=["csv", "jsonl"], default=None)
    det.add_argument("--output", default=None)
    det.add_argument("--trace", default=None, help="write per-step statistics CSV")
    det.add_argument("--config", default=None, help="flat JSON run config")

    ev = sub.add_parser("evaluate", help="score events against ground truth")
    ev.add_argument("--events", required=True)
    ev.add_argument("--truth", required=True)
    ev.add_argument("--len", dest="stream_len", type=int, required=True)
    ev.add_argument("--output", default="-")
    ev.add_argument("--csv", default=None, help="append a comparison-table CSV row")
    ev.add_argument("--label", default=None)

    comp = sub.add_parser("compliance", help="print the requirement ledger")
    comp.add_argument("--json", action="store_true")
    comp.add_argument("--probe", action="store_true")

    return parser


def _cmd_generate(args) -> int:
    if args.generator == "piecewise":
        observations, truth = generate_piecewise_gaussian(args.segments, args.seed)
        streamio.write_stream(observations, args.output)
        if args.truth_output:
            streamio.write_ground_truth(truth, args.truth_output)
    elif args.generator == "lorenz":
        observations = generate_lorenz(args.count, args.dt, args.initial, args.params)
        streamio.write_stream(observations, args.output)
    else:
        observations = generate_logistic_map(args.count, args.r, args.x0)
        streamio.write_stream(observations, args.output)
    return 0


def _cmd_embed(args) -> int:
    observations = streamio.read_stream(args.input, args.format)
    window = StreamWindow(index=0, values=[o.value for o in observations])
    space = embed(window, EmbeddingParams(m=args.m, tau=args.tau))
    with streamio.open_write(args.output) as fh:
        for row in space.coords:
            fh.write(",".join(repr(v) for v in row) + "\n")
    return 0


def _detect_config(args) -> tuple[DetectorConfig, RunConfig]:
    base = load_config(args.config) if args.config else RunConfig()

    def pick(flag, config_value, fallback):
        if flag is not None:
            return flag
        if config_value is not None:
            return config_value
        return fallback

    detector = pick(args.detector, base.detector, None)
    if detector is None:
        raise DriftKitError("detect requires --detector (flag or config file)")
    kind = DetectorKind(detector)
    lam = pick(args.lam, base.lam, None)
    if lam is None:
        lam = default_lambda(kind)
    n = pick(args.n, base.n, 250)
    m = pick(args.m, base.m, 2)
    tau = pick(args.tau, base.tau, 8)
    run = RunConfig(
        detector=kind.value,
        lam=float(lam),
        n=int(n),
        m=int(m),
        tau=int(tau),
        negative=bool(pick(args.negative, base.negative or None, False)),
        stride=int(pick(args.stride, base.stride, 1)),
        dft_period=pick(args.dft_period, base.dft_period, "n"),
        literal_mdl=bool(pick(args.literal_mdl, base.literal_mdl or None, False)),
        input=pick(args.input, base.input, "-"),
        output=pick(args.output, base.output, "-"),
        format=pick(args.format, base.format, "csv"),
    )
    cfg = DetectorConfig(
        kind=kind,
        lam=run.lam,
        window_n=run.n if kind.value in ("udft", "crcdd") else None,
        embedding=EmbeddingParams(m=run.m, tau=run.tau) if kind.value == "crcdd" else None,
        negative_mode=run.negative,
        adwin_stride=run.stride,
        dft_period=run.dft_period,
        literal_mdl=run.literal_mdl,
    )
    return cfg, run


def _cmd_detect(args) -> int:
    cfg, run = _detect_config(args)
    observations = streamio.read_stream(run.input, run.format)
    trace: list[tuple[int, float]] | None = [] if args.trace else None
    events = run_detector(cfg, observations, trace=trace)
    streamio.write_events(events, run.output)
    if args.trace:
        with streamio.open_write(args.trace) as fh:
            fh.write("t,statistic\n")
            for t, stat in trace:
                fh.write(f"{t},{stat!r}\n")
    return 0


def _cmd_evaluate(args) -> int:
    events = streamio.read_events(args.events)
    truth = streamio.read_ground_truth(args.truth)
    report: EvaluationReport = evaluate(events, truth, args.stream_len)
    with streamio.open_write(args.output) as fh:
        json.dump(report.to_json_dict(), fh, indent=2)
        fh.write("\n")
    if args.csv:
        label = args.label or (events[0].detector if events else "run")
        with open(args.csv, "a", encoding="utf-8") as fh:
            if fh.tell() == 0:
                fh.write(EvaluationReport.CSV_HEADER + "\n")
            fh.write(report.to_csv_row(label) + "\n")
    return 0


def _cmd_compliance(args) -> int:
    records = compliance_mod.table2()
    if args.json:
        payload = [
            {
                "detector": r.detector,
                "r1_update": r.r1_update,
                "r2_iid": r.r2_iid,
                "r3_fixed_jpd": r.r3_fixed_jpd,
                "r4_bvd": list(r.r4_bvd),
                "rationale": r.rationale,
            }
            for r in records
        ]
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        yn = {True: "Yes", False: "No"}
        print(f"{'Method':<8}{'Update (R1)':<13}{'IID (R2)':<10}"
              f"{'Fixed JPD (R3)':<16}BVD(f, g) (R4)")
        for r in records:
            pair = f"({yn[r.r4_bvd[0]]}, {yn[r.r4_bvd[1]]})"
            print(
                f"{r.detector:<8}{yn[r.r1_update]:<13}{yn[r.r2_iid]:<10}"
                f"{yn[r.r3_fixed_jpd]:<16}{pair}"
            )
    if args.probe:
        print()
        print("probe results (static vs probed):")
        for outcome in compliance_mod.run_probe_suite():
            r3 = {True: "Yes", False: "NO", None: "inconclusive"}[outcome.r3_probe]
            flag = "ok" if outcome.agrees else "DISAGREES"
            print(
                f"{outcome.detector:<8}R1 {outcome.r1_static}/{outcome.r1_probe}  "
                f"R3 {outcome.r3_static}/{r3}  [{flag}]"
            )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors exit with code 2
        return int(exc.code or 0)
    handlers = {
        "generate": _cmd_generate,
        "embed": _cmd_embed,
        "detect": _cmd_detect,
        "evaluate": _cmd_evaluate,
        "compliance": _cmd_compliance,
    }
    try:
        return handlers[args.command](args)
    except OSError as exc:
        print(f"error: cannot access {getattr(exc, 'filename', None) or exc}", file=sys.stderr)
        return 1
    except DriftKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
