"""Command-line entry point.

Exit codes: 0 on success or agreement, 2 when a probe confidently
contradicts the predicted verdict, 1 on bad input or a numeric failure.

CSV outputs carry data rows first and end with a ``#summary,key=value,...``
row. Probe rows are ``j,a,N,in_norm,out_norm,ratio``.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from . import asymptotics, carleson, probes
from .measure import MeasureError, load_measure, moment_sequence
from .quadrature import QuadratureError
from .series import SeriesError, cesaro_apply, read_series, write_series
from .testfns import parse_builtin

EXIT_OK, EXIT_ERROR, EXIT_CONTRADICTION = 0, 1, 2

PROBE_COLUMNS = ("j", "a", "N", "in_norm", "out_norm", "ratio")


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    if x is None:
        return "none"
    return str(x)


def _summary(out, **fields) -> None:
    out.write("#summary," + ",".join(f"{k}={_fmt(v)}" for k, v in fields.items()) + "\n")


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _cmd_moments(args, out) -> int:
    m = load_measure(args.measure)
    mu = moment_sequence(m, args.n_max)
    if args.format == "json":
        json.dump({"measure": m.to_dict(), "moments": mu.tolist()}, out)
        out.write("\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("n", "mu_n"))
        w.writerows((n, repr(float(v))) for n, v in enumerate(mu))
    return EXIT_OK


def _cmd_carleson(args, out) -> int:
    m = load_measure(args.measure)
    rep = carleson.classify(m, args.s, args.gamma, args.depth)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(("j", "t", "q"))
    w.writerows((j, repr(t), repr(q)) for j, t, q in rep.rows())
    _summary(
        out,
        verdict=rep.verdict,
        sup_estimate=rep.sup_estimate,
        limit_estimate=rep.limit_estimate,
        grid_slope=rep.grid_slope,
        log_exponent=rep.log_exponent,
        moment_sup=rep.moment_sup,
    )
    return EXIT_OK


def _load_series(spec: str, n: int):
    if spec.startswith("builtin:"):
        return parse_builtin(spec, n)
    f = read_series(spec)
    if f.truncation != n:
        raise SeriesError(f"series file has truncation {f.truncation}, --n asks for {n}")
    return f


def _cmd_apply(args, out) -> int:
    m = load_measure(args.measure)
    f = _load_series(args.series, args.n)
    write_series(cesaro_apply(m, f), args.out)
    return EXIT_OK


def _cmd_asymptotics(args, out) -> int:
    scan = asymptotics.regime_scan(args.delta, args.c, args.k, args.depth)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(("j", "r", "value", "predicted", "ratio"))
    w.writerows((j, repr(r), repr(v), repr(p), repr(q)) for j, r, v, p, q in scan.rows())
    _summary(out, regime=scan.regime, stabilized=scan.stabilized)
    return EXIT_OK


def _write_ladder(out, rep: probes.ProbeReport) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(PROBE_COLUMNS)
    w.writerows((j, repr(a), n, repr(i), repr(o), repr(r)) for j, a, n, i, o, r in rep.rows())
    _summary(
        out,
        kind=rep.kind,
        verdict=rep.empirical_verdict,
        fitted_exponent=rep.fitted_exponent,
        agreement=rep.agreement,
    )


def _cmd_probe(args, out) -> int:
    m = load_measure(args.measure)
    verdict = probes.theorem_verdict(m, args.alpha, args.beta)
    reports = []
    if args.kind in ("bounded", "full"):
        reports.append(probes.boundedness_probe(m, args.alpha, args.beta, args.depth, verdict))
    if args.kind in ("compact", "full"):
        reports.append(probes.compactness_probe(m, args.alpha, args.beta, args.depth, verdict))
    for rep in reports:
        _write_ladder(out, rep)
    return EXIT_CONTRADICTION if any(r.agreement is False for r in reports) else EXIT_OK


def _cmd_verdict(args, out) -> int:
    m = load_measure(args.measure)
    rep = probes.full_report(m, args.alpha, args.beta, args.depth)
    json.dump(_jsonable(rep.to_dict()), out, indent=2)
    out.write("\n")
    return EXIT_CONTRADICTION if rep.contradiction else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cesaro-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("moments", help="moment sequence mu_0..mu_N")
    q.add_argument("--measure", required=True)
    q.add_argument("--n-max", type=int, required=True)
    q.add_argument("--format", choices=("csv", "json"), default="csv")
    q.set_defaults(run=_cmd_moments)

    q = sub.add_parser("carleson", help="dyadic Carleson quotients and verdict")
    q.add_argument("--measure", required=True)
    q.add_argument("--s", type=float, required=True)
    q.add_argument("--gamma", type=float, default=0.0)
    q.add_argument("--depth", type=int, default=30)
    q.set_defaults(run=_cmd_carleson)

    q = sub.add_parser("apply", help="apply C_mu to a series and write the result")
    q.add_argument("--measure", required=True)
    q.add_argument("--series", required=True, help="builtin:<family>[:args] or a series file")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--out", required=True)
    q.set_defaults(run=_cmd_apply)

    q = sub.add_parser("asymptotics", help="ratio scan of I_r(delta, c, k)")
    q.add_argument("--delta", type=float, required=True)
    q.add_argument("--c", type=float, required=True)
    q.add_argument("--k", type=float, required=True)
    q.add_argument("--depth", type=int, default=20)
    q.set_defaults(run=_cmd_asymptotics)

    for name, helptext in (("probe", "test-function ladders"), ("verdict", "predicted vs empirical report (JSON)")):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("--measure", required=True)
        q.add_argument("--alpha", type=float, required=True)
        q.add_argument("--beta", type=float, required=True)
        q.add_argument("--depth", type=int, default=10)
        if name == "probe":
            q.add_argument("--kind", choices=("bounded", "compact", "full"), default="full")
            q.set_defaults(run=_cmd_probe)
        else:
            q.set_defaults(run=_cmd_verdict)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout if out is None else out
    try:
        return args.run(args, out)
    except (MeasureError, SeriesError, QuadratureError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
