"""Command-line interface.

Subcommands: classify, verify-pair, deform, jacobi, sweep, examples.  Each
subcommand either builds a single task from its flags (typically against a
builtin --example) or executes the matching tasks of a --config file.
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, RunConfig, TaskSpec, _validate_task, load_config, parse_config
from .registry import list_examples
from .reporting import render_structured, render_text
from .runner import EXIT_INPUT, run

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contactpairs",
        description="Verify contact pairs, Reeb fields, and linear deformations "
        "of pairs of codimension-one foliations on concrete manifold models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_example=True):
        p.add_argument("--config", help="JSON configuration file")
        if needs_example:
            p.add_argument("--example", help="builtin example name (see 'examples')")
        p.add_argument("--seed", type=int, help="random seed for sampling")
        p.add_argument("--tol", type=float, help="tolerance override")
        p.add_argument("--t-grid", help="comma-separated deformation parameters")
        p.add_argument("--out", help="output file (report, or CSV for sweep)")
        p.add_argument(
            "--format", choices=("text", "structured"), default="text",
            help="report format (default text; structured = JSON)",
        )

    p = sub.add_parser("classify", help="Cartan class of a 1-form")
    common(p)
    p.add_argument("--form", help="form name from the config")

    p = sub.add_parser("verify-pair", help="certify a contact pair of type (k,l)")
    common(p)

    p = sub.add_parser("deform", help="verify a linear deformation family")
    common(p)
    p.add_argument(
        "--mode", choices=("forward", "converse", "single"), default="forward",
        help="theorem direction; 'single' checks one form against one closed form",
    )
    p.add_argument("--alpha0", help="(single mode) comma-separated coefficient expressions")

    p = sub.add_parser("jacobi", help="property-test the induced Jacobi structure")
    common(p)
    p.add_argument("--resolution", type=int, help="grid resolution per axis")
    p.add_argument("--side", choices=("alpha", "beta"), default="alpha")

    p = sub.add_parser("sweep", help="CSV sweep of a family over the t grid")
    common(p)

    p = sub.add_parser("examples", help="list builtin examples")
    p.add_argument(
        "--format", choices=("text", "structured"), default="text", help="listing format"
    )
    return parser


def _task_for(args) -> TaskSpec | None:
    kind = {
        "classify": "classify",
        "verify-pair": "verify-pair",
        "jacobi": "jacobi",
        "sweep": "sweep",
    }.get(args.command)
    if args.command == "deform":
        kind = {"forward": "deform-forward", "converse": "deform-converse", "single": "single-deform"}[
            args.mode
        ]
    params: dict = {"task": kind}
    if getattr(args, "example", None):
        params["example"] = args.example
    if getattr(args, "form", None):
        params["form"] = args.form
    if getattr(args, "resolution", None):
        params["resolution"] = args.resolution
    if getattr(args, "side", None):
        params["side"] = args.side
    if getattr(args, "alpha0", None):
        params["alpha0_coefficients"] = [s.strip() for s in args.alpha0.split(",")]
    return TaskSpec(kind, params)


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    if args.seed is not None:
        cfg.seed = args.seed
    if args.tol is not None:
        cfg.tolerance = args.tol
    if args.t_grid:
        cfg.t_grid = [float(s) for s in args.t_grid.split(",")]
    return cfg


def _examples_listing(fmt: str) -> str:
    rows = [
        {
            "name": e.name,
            "dimension": e.dimension,
            "kind": e.kind,
            "type": e.type_label,
            "summary": e.summary,
        }
        for e in list_examples()
    ]
    if fmt == "structured":
        return render_structured({"examples": rows})
    width = max(len(r["name"]) for r in rows)
    lines = [
        f"{r['name']:<{width}}  dim {r['dimension']}  {r['kind']:<12} {r['type']:<12} {r['summary']}"
        for r in rows
    ]
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "examples":
        sys.stdout.write(_examples_listing(args.format))
        return 0

    try:
        if args.config:
            cfg = load_config(args.config)
            matching = _task_for(args)
            same_kind = [t for t in cfg.tasks if t.task == matching.task]
            if getattr(args, "example", None) or not same_kind:
                errors: list = []
                _validate_task(0, matching.params, cfg, errors)
                if errors:
                    raise ConfigError(errors)
                cfg.tasks = [matching]
            else:
                cfg.tasks = same_kind
        else:
            cfg = parse_config({})
            task = _task_for(args)
            if "example" not in task.params:
                parser.error(f"{args.command}: provide --example or --config")
            cfg.tasks = [task]
        cfg = _apply_overrides(cfg, args)
    except ConfigError as err:
        sys.stderr.write(str(err) + "\n")
        return EXIT_INPUT

    out_path = args.out
    report, code = run(cfg, out_path=out_path if args.command == "sweep" else None)

    if args.command == "sweep":
        rendered = render_text(report) if args.format == "text" else render_structured(report)
        sys.stdout.write(rendered)
        return code

    rendered = render_text(report) if args.format == "text" else render_structured(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return code


if __name__ == "__main__":
    sys.exit(main())
