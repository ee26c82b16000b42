"""Command-line interface.

Subcommands: predict, verify-paper, train, sweep, grid, montecarlo,
compare, serve. Exit codes: 0 success, 2 usage/parse, 3 data problem,
4 numerical divergence.
"""
import argparse
import csv
import json
import os
import sys

import numpy as np

from . import ENGINE_VERSION, core_net, model_io, paper_model, scenario, training
from .core_net import CANONICAL_INPUTS, ScenarioInput
from .errors import (
    DataError,
    DivergenceError,
    EngineError,
    InvalidRequestError,
    InvalidValueError,
    ShapeError,
    UnknownVariableError,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_DIVERGENCE = 4


class CliError(Exception):
    def __init__(self, message, code=EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _add_model_args(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--model", metavar="PATH", help="model-spec JSON file")
    group.add_argument("--paper", action="store_true",
                       help="use the published paper parameterization")


def _add_input_args(parser):
    for name in CANONICAL_INPUTS:
        parser.add_argument(f"--{name}", type=float, metavar="V")
    parser.add_argument("--all", type=float, metavar="V",
                        help="set every variable to V")
    parser.add_argument("--input-file", metavar="PATH",
                        help='JSON file with {"values": [6 numbers]}')
    parser.add_argument("--allow-out-of-domain", action="store_true",
                        help="permit values outside [0, 1]")


def _load_spec(args):
    if args.paper:
        return paper_model.load_paper_weights()
    if not args.model:
        raise CliError("a model is required: pass --model PATH or --paper")
    try:
        return model_io.load_model(args.model)
    except OSError as err:
        raise CliError(f"cannot read model file: {err}") from None


def _collect_input(args, names=CANONICAL_INPUTS):
    values = [None] * len(names)
    if args.input_file:
        try:
            with open(args.input_file, encoding="utf-8") as fh:
                doc = json.load(fh)
            values = [float(v) for v in doc["values"]]
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
            raise CliError(f"cannot read input file: {err}") from None
        if len(values) != len(names):
            raise CliError(f"input file must supply {len(names)} values, got {len(values)}")
    if args.all is not None:
        values = [args.all] * len(names)
    for i, name in enumerate(names):
        flag = getattr(args, name.replace("-", "_"), None)
        if flag is not None:
            values[i] = flag
    missing = [names[i] for i, v in enumerate(values) if v is None]
    if missing:
        raise CliError(
            "missing variable values: " + ", ".join(f"--{m}" for m in missing)
        )
    return ScenarioInput(np.array(values, dtype=float),
                         allow_out_of_domain=args.allow_out_of_domain)


def _print_json(doc):
    print(json.dumps(doc, indent=2))


def cmd_predict(args):
    spec = _load_spec(args)
    inp = _collect_input(args)
    result = core_net.forward(spec, inp)
    if args.json:
        _print_json({
            "engine_version": ENGINE_VERSION,
            "acceptance": result.acceptance,
            "hidden_pre": result.hidden_pre.tolist(),
            "hidden_post": result.hidden_post.tolist(),
            "gradient": result.input_gradient.tolist(),
        })
        return EXIT_OK
    print(f"acceptance: {result.acceptance!r}")
    print("hidden_pre:  " + " ".join(repr(v) for v in result.hidden_pre.tolist()))
    print("hidden_post: " + " ".join(repr(v) for v in result.hidden_post.tolist()))
    print("input gradient:")
    for name, g in zip(spec.input_names, result.input_gradient.tolist()):
        print(f"  {name:<14} {g!r}")
    return EXIT_OK


def cmd_verify_paper(args):
    if not args.tolerance > 0:
        raise CliError(f"--tolerance must be positive, got {args.tolerance}")
    inp = _collect_input(args)
    report = paper_model.verify_claimed_output(inp, args.tolerance)
    if args.json:
        _print_json({
            "engine_version": ENGINE_VERSION,
            "computed_output": report.computed_output,
            "claimed_output": report.claimed_output,
            "absolute_deviation": report.absolute_deviation,
            "matches": report.matches,
            "note": report.note,
        })
        return EXIT_OK
    print(f"computed output:    {report.computed_output!r}")
    print(f"claimed output:     {report.claimed_output!r}")
    print(f"absolute deviation: {report.absolute_deviation!r}")
    print(f"verdict:            {'MATCH' if report.matches else 'NO MATCH'} "
          f"(tolerance {args.tolerance!r})")
    print(f"note: {report.note}")
    return EXIT_OK


def cmd_train(args):
    try:
        dataset = model_io.load_dataset(args.dataset)
    except OSError as err:
        raise CliError(f"cannot read dataset: {err}") from None
    config = training.TrainingConfig(
        learning_rate=args.lr,
        beta1=args.beta1,
        beta2=args.beta2,
        epsilon=args.epsilon,
        epochs=args.epochs,
        split_ratio=args.split_ratio,
        seed=args.seed,
    )
    spec, history = training.train(dataset, config, hidden_size=args.hidden_size)
    model_io.save_model(spec, args.out)
    print(f"epochs run:      {history.epochs_run}")
    print(f"final train MSE: {history.train_mse[-1]!r}")
    print(f"final test MSE:  {history.final_test_mse!r}")
    print(f"model written:   {args.out}")
    return EXIT_OK


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def cmd_sweep(args):
    spec = _load_spec(args)
    base = _collect_input(args)
    req = scenario.SweepRequest(
        variable=args.variable, start=args.start, end=args.end,
        steps=args.steps, base=base,
    )
    points = scenario.sweep(spec, req)
    if args.csv:
        _write_csv(args.csv, [args.variable, "acceptance"],
                   [[repr(x), repr(y)] for x, y in points])
    if args.json:
        _print_json({
            "engine_version": ENGINE_VERSION,
            "variable": args.variable,
            "points": [[x, y] for x, y in points],
        })
        return EXIT_OK
    print(f"sweep of {args.variable} ({args.steps} steps)")
    for x, y in points:
        print(f"  {x!r:>22}  {y!r}")
    return EXIT_OK


def cmd_grid(args):
    spec = _load_spec(args)
    base = _collect_input(args)
    values_a, values_b, matrix = scenario.grid_sweep(
        spec, args.var_a, args.var_b, args.steps_a, args.steps_b, base
    )
    if args.csv:
        rows = [
            [repr(va), repr(vb), repr(matrix[p][q])]
            for p, va in enumerate(values_a)
            for q, vb in enumerate(values_b)
        ]
        _write_csv(args.csv, [args.var_a, args.var_b, "acceptance"], rows)
    if args.json:
        _print_json({
            "engine_version": ENGINE_VERSION,
            "var_a": args.var_a,
            "var_b": args.var_b,
            "values_a": values_a,
            "values_b": values_b,
            "matrix": matrix,
        })
        return EXIT_OK
    print(f"grid of {args.var_a} x {args.var_b}")
    for p, va in enumerate(values_a):
        for q, vb in enumerate(values_b):
            print(f"  {va!r:>22} {vb!r:>22}  {matrix[p][q]!r}")
    return EXIT_OK


def _parse_dist(text):
    # NAME=KIND:p1,p2[,p3] e.g. costs=triangular:0,0.5,1
    try:
        name, rest = text.split("=", 1)
        kind, params = rest.split(":", 1)
        params = tuple(float(p) for p in params.split(","))
    except ValueError:
        raise CliError(
            f"malformed --dist {text!r}; expected NAME=KIND:p1,p2[,p3]"
        ) from None
    return name, scenario.Distribution(kind, params)


def cmd_montecarlo(args):
    spec = _load_spec(args)
    dists = {}
    for text in args.dist or []:
        name, dist = _parse_dist(text)
        if name not in spec.input_names:
            raise CliError(f"unknown variable in --dist: {name!r}")
        dists[name] = dist
    req = scenario.MonteCarloRequest(
        distributions=tuple(
            dists.get(name, scenario.Distribution("uniform", (0.0, 1.0)))
            for name in spec.input_names
        ),
        samples=args.samples,
        seed=args.seed,
    )
    summary = scenario.monte_carlo(spec, req)
    if args.json:
        _print_json({
            "engine_version": ENGINE_VERSION,
            "mean": summary.mean,
            "std": summary.std,
            "min": summary.min,
            "max": summary.max,
            "quantiles": {str(q): v for q, v in summary.quantiles.items()},
            "samples": summary.samples,
        })
        return EXIT_OK
    print(f"monte carlo over {summary.samples} samples (seed {args.seed})")
    print(f"  mean {summary.mean!r}")
    print(f"  std  {summary.std!r}")
    print(f"  min  {summary.min!r}")
    print(f"  max  {summary.max!r}")
    for q in scenario.QUANTILES:
        print(f"  p{q:<3} {summary.quantiles[q]!r}")
    return EXIT_OK


def _parse_variant(text):
    # LABEL:var=delta,var=delta
    try:
        label, rest = text.split(":", 1)
        deltas = {}
        for part in rest.split(","):
            name, delta = part.split("=", 1)
            deltas[name.strip()] = float(delta)
    except ValueError:
        raise CliError(
            f"malformed --variant {text!r}; expected LABEL:var=delta[,var=delta]"
        ) from None
    return label, deltas


def cmd_compare(args):
    spec = _load_spec(args)
    base = _collect_input(args)
    variants = [_parse_variant(text) for text in args.variant or []]
    comparison = scenario.compare(spec, base, variants)
    if args.json:
        _print_json({
            "engine_version": ENGINE_VERSION,
            "baseline": {
                "values": comparison.baseline_input.values.tolist(),
                "acceptance": comparison.baseline_acceptance,
            },
            "variants": [
                {
                    "label": v.label,
                    "values": v.input.values.tolist(),
                    "acceptance": v.acceptance,
                    "delta": v.delta,
                    "clamped": v.clamped,
                }
                for v in comparison.variants
            ],
        })
        return EXIT_OK
    print(f"baseline acceptance: {comparison.baseline_acceptance!r}")
    for v in comparison.variants:
        clamp = " (clamped)" if v.clamped else ""
        print(f"  {v.label:<20} acceptance {v.acceptance!r}  delta {v.delta!r}{clamp}")
    return EXIT_OK


def cmd_serve(args):
    import uvicorn

    from .server import create_app

    spec = _load_spec(args)
    port = args.port
    if port is None:
        port = int(os.environ.get("ACCEPTANCE_ENGINE_PORT", "8000"))
    app = create_app(spec)
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="acceptance-engine",
        description="Scenario engine for the judicial-reform acceptance network.",
    )
    parser.add_argument("--version", action="version", version=ENGINE_VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="evaluate the network at one input")
    _add_model_args(p)
    _add_input_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify-paper",
                       help="audit the published model against its claimed output")
    _add_input_args(p)
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("train", help="train a fresh network on a CSV dataset")
    p.add_argument("dataset", help="7-column CSV dataset")
    p.add_argument("--out", required=True, metavar="PATH",
                   help="where to write the trained model-spec JSON")
    p.add_argument("--lr", type=float, default=0.001)
    p.add_argument("--beta1", type=float, default=0.9)
    p.add_argument("--beta2", type=float, default=0.999)
    p.add_argument("--epsilon", type=float, default=1e-8)
    p.add_argument("--epochs", type=int, default=5000)
    p.add_argument("--split-ratio", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hidden-size", type=int, default=10)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("sweep", help="1-d sweep over one variable")
    _add_model_args(p)
    _add_input_args(p)
    p.add_argument("--variable", required=True)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--end", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=11)
    p.add_argument("--csv", metavar="PATH", help="also write points as CSV")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("grid", help="2-d sweep over two variables")
    _add_model_args(p)
    _add_input_args(p)
    p.add_argument("--var-a", required=True)
    p.add_argument("--var-b", required=True)
    p.add_argument("--steps-a", type=int, default=5)
    p.add_argument("--steps-b", type=int, default=5)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("montecarlo", help="Monte Carlo over input distributions")
    _add_model_args(p)
    p.add_argument("--dist", action="append", metavar="NAME=KIND:P1,P2[,P3]",
                   help="per-variable distribution (uniform/triangular/point); "
                        "unlisted variables default to uniform:0,1")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("compare", help="named variants against a baseline")
    _add_model_args(p)
    _add_input_args(p)
    p.add_argument("--variant", action="append", metavar="LABEL:VAR=DELTA[,...]")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("serve", help="run the HTTP service")
    _add_model_args(p)
    p.add_argument("--port", type=int, default=None,
                   help="defaults to ACCEPTANCE_ENGINE_PORT or 8000")
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except DivergenceError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except DataError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA
    except (ShapeError, InvalidValueError, UnknownVariableError,
            InvalidRequestError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
