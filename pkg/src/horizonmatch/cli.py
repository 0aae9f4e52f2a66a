"""Command-line interface: fit-garch, fit-arma, sweep, simulate.

Results go to stdout (or --out) as JSON or CSV; see result.schema.json for
the JSON layout. Exit codes: 0 success, 1 the optimizer did not converge
(results are still emitted), 2 usage or input error. Errors are a single
"error: ..." line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import arma, garch, ingest
from .exceptions import HorizonMatchError
from .series import CatchallConfig, OptimizerReport, Series, SweepResult
from .simulate import SimSpec, simulate

__all__ = ["main", "build_parser"]

# estimates this close to the alpha/beta >= 0 boundary print as exact zero
_CLAMP = 1e-8


def _fmt6(value: float) -> str:
    return format(float(value), ".6g")


def _clamped(params: dict) -> dict:
    out = dict(params)
    for key in ("alpha", "beta"):
        if key in out and out[key] < _CLAMP:
            out[key] = 0.0
    return out


def _report_doc(report: OptimizerReport) -> dict:
    return {
        "converged": report.converged,
        "iterations": report.iterations,
        "final_loss": report.final_loss,
        "restarts_used": report.restarts_used,
        "boundary_suspect": report.boundary_suspect,
    }


def _series_doc(series: Series) -> dict:
    return {
        "labels": list(series.labels),
        "values": [float(v) for v in series.values],
        "unit": series.unit,
    }


def _trajectory_docs(result: SweepResult) -> list[dict]:
    return [
        {
            "m": e.m,
            "params": _clamped(e.params()),
            "loss": e.loss,
            "delta_from_m1": dict(e.delta_from_m1),
            "report": _report_doc(e.report),
        }
        for e in result
    ]


def _aggregate_report(result: SweepResult) -> OptimizerReport:
    return OptimizerReport(
        converged=all(e.report.converged for e in result),
        iterations=sum(e.report.iterations for e in result),
        final_loss=result.entries[-1].loss,
        restarts_used=sum(e.report.restarts_used for e in result),
        boundary_suspect=any(e.report.boundary_suspect for e in result),
    )


def _emit(text: str, out_path) -> None:
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


def _emit_doc(doc: dict, args) -> None:
    if args.format == "json":
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _emit("\n".join(_csv_lines(doc)) + "\n", args.out)


def _csv_lines(doc: dict) -> list[str]:
    """CSV rendering of a result document, numbers at 6 significant digits."""
    if "trajectory" in doc:
        entries = doc["trajectory"]
        names = list(entries[0]["params"])
        header = ["m"] + names + ["loss"] + [f"delta_{k}" for k in names]
        lines = [",".join(header)]
        for e in entries:
            row = [str(e["m"])]
            row += [_fmt6(e["params"][k]) for k in names]
            row.append(_fmt6(e["loss"]))
            row += [_fmt6(e["delta_from_m1"][k]) for k in names]
            lines.append(",".join(row))
        return lines
    if doc["command"] == "simulate":
        series = doc["series"]
        return [f"{lab},{float(v)!r}" for lab, v in zip(series["labels"], series["values"])]
    names = list(doc["params"])
    return [
        ",".join(names + ["loss"]),
        ",".join([_fmt6(doc["params"][k]) for k in names] + [_fmt6(doc["loss"])]),
    ]


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", required=True, help="input data file")
    p.add_argument(
        "--data-format",
        choices=("generic", "giss", "noaa"),
        default="generic",
        help="input layout (default: generic CSV)",
    )
    p.add_argument("--label-col", type=int, default=0)
    p.add_argument("--value-col", type=int, default=1)
    p.add_argument("--has-header", action="store_true")
    p.add_argument("--start-year", type=int, default=None)
    p.add_argument("--end-year", type=int, default=None)
    p.add_argument(
        "--prices-to-returns",
        choices=ingest.RETURN_CONVENTIONS,
        default=None,
        help="treat the column as prices and convert to returns",
    )
    p.add_argument("--center", action="store_true", help="subtract the sample mean")


def _load_series(args) -> Series:
    if args.data_format == "generic":
        fmt = ingest.GenericCsv(args.label_col, args.value_col, args.has_header)
    elif args.data_format == "giss":
        fmt = ingest.GissAnnual(args.start_year, args.end_year)
    else:
        fmt = ingest.NoaaAnnual(args.start_year, args.end_year)
    series = ingest.load(args.data, fmt)
    if args.prices_to_returns:
        series = ingest.to_returns(series, args.prices_to_returns)
    if args.center:
        series = ingest.center(series)
    return series


def _parse_weights(text, m: int):
    if text is None:
        return None
    weights = tuple(float(tok) for tok in text.split(","))
    if len(weights) != m:
        raise ValueError(f"--weights needs exactly {m} values, got {len(weights)}")
    return weights


def _cmd_fit_garch(args) -> int:
    if args.m < 1:
        raise ValueError("--m must be >= 1")
    series = _load_series(args)
    if args.method == "gaussian":
        method = "gaussian"
    else:
        method = CatchallConfig(args.m, _parse_weights(args.weights, args.m))
    result = garch.fit(series, method)
    doc = {
        "command": "fit-garch",
        "model": "garch",
        "params": _clamped(result.params.as_dict()),
        "loss": result.loss,
        "report": _report_doc(result.report),
        "series": {
            "labels": list(series.labels),
            "values": [float(v) for v in result.one_step_variances],
            "unit": "one-step conditional variance",
        },
    }
    _emit_doc(doc, args)
    return 0 if result.report.converged else 1


def _cmd_fit_arma(args) -> int:
    if args.m < 1:
        raise ValueError("--m must be >= 1")
    series = _load_series(args)
    result = arma.fit(series, args.model, args.m)
    doc = {
        "command": "fit-arma",
        "model": args.model,
        "params": result.model.as_dict(),
        "loss": result.loss,
        "report": _report_doc(result.report),
        "psi_weights": [float(v) for v in arma.psi_weights(result.model, args.m).coeffs],
        "horizon_weights": [float(v) for v in arma.harmonic_weights(result.model, args.m)],
    }
    _emit_doc(doc, args)
    return 0 if result.report.converged else 1


def _cmd_sweep(args) -> int:
    if args.m_max < 1:
        raise ValueError("--m-max must be >= 1")
    series = _load_series(args)
    if args.model == "garch":
        result = garch.sweep(series, args.m_max)
    else:
        result = arma.sweep(series, args.model, args.m_max)
    report = _aggregate_report(result)
    doc = {
        "command": "sweep",
        "model": args.model,
        "params": _clamped(result.entries[-1].params()),
        "loss": result.entries[-1].loss,
        "report": _report_doc(report),
        "trajectory": _trajectory_docs(result),
    }
    _emit_doc(doc, args)
    return 0 if report.converged else 1


_MODEL_FIELDS = {
    "garch": ("omega", "alpha", "beta"),
    "arima111": ("phi", "theta"),
    "trend-arma11": ("c0", "c1", "phi", "theta"),
}


def _parse_params(model: str, text: str):
    given = {}
    for token in text.split(","):
        if "=" not in token:
            raise ValueError(f"--params entries must look like name=value, got {token!r}")
        name, _, raw = token.partition("=")
        given[name.strip()] = float(raw)
    fields = _MODEL_FIELDS[model]
    if set(given) != set(fields):
        raise ValueError(f"--params for {model} needs exactly {', '.join(fields)}")
    if model == "garch":
        return garch.GarchParams(**given)
    if model == "arima111":
        return arma.Arima111Params(**given)
    return arma.TrendArma11Params(**given)


def _cmd_simulate(args) -> int:
    if args.n < 1:
        raise ValueError("--n must be >= 1")
    if args.burn_in < 0:
        raise ValueError("--burn-in must be >= 0")
    model = _parse_params(args.model, args.params)
    spec = SimSpec(
        model=model,
        length=args.n,
        seed=args.seed,
        burn_in=args.burn_in,
        innovation_scale=args.innovation_scale,
    )
    series = simulate(spec)
    doc = {
        "command": "simulate",
        "model": args.model,
        "params": model.as_dict(),
        "series": _series_doc(series),
    }
    _emit_doc(doc, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horizonmatch",
        description="Multi-horizon matching estimation for GARCH and ARIMA-family models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit-garch", help="fit GARCH(1,1) to a return series")
    _add_data_flags(p)
    p.add_argument("--method", choices=("gaussian", "catchall"), default="gaussian")
    p.add_argument("--m", type=int, default=1, help="horizon count for --method catchall")
    p.add_argument("--weights", default=None, help="comma-separated horizon weights")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_fit_garch)

    p = sub.add_parser("fit-arma", help="fit ARIMA(1,1,1) or trend+ARMA(1,1)")
    _add_data_flags(p)
    p.add_argument("--model", choices=("arima111", "trend-arma11"), required=True)
    p.add_argument("--m", type=int, default=1, help="horizon count (1 = CLS)")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_fit_arma)

    p = sub.add_parser("sweep", help="fit for every m = 1..m_max with warm starts")
    _add_data_flags(p)
    p.add_argument("--model", choices=("garch", "arima111", "trend-arma11"), required=True)
    p.add_argument("--m-max", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("simulate", help="generate a seeded model path")
    p.add_argument("--model", choices=("garch", "arima111", "trend-arma11"), required=True)
    p.add_argument("--params", required=True, help="e.g. omega=0.05,alpha=0.1,beta=0.85")
    p.add_argument("--n", type=int, required=True, help="path length")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--burn-in", type=int, default=500)
    p.add_argument("--innovation-scale", type=float, default=1.0)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return 2
    except (HorizonMatchError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
