"""Command-line interface.

Exit codes: 0 success, 1 usage or input errors, 2 failed consistency
checks (``check`` subcommand), 3 internal invariant violations.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import (
    ConeMembershipError,
    InternalConsistencyError,
    TorusFiberError,
)
from .laurent import LaurentPolynomial, parse_laurent
from .lattice import normalized_volume
from .polytope import newton_polytope
from .report import (
    AnalyzeConfig,
    analyze,
    check,
    classification_block,
    ehrhart_block,
    hypergeom_vector_block,
    input_block,
    mellin_vector_block,
    polytope_block,
    to_json,
    to_text,
    _closure_polytope,
    _selected_sigmas,
    _validate_vectors,
)
from .simplicial import build_data
from .mellin import mellin_skeleton, pole_prediction


class _Parser(argparse.ArgumentParser):
    """argparse flavour whose usage failures exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="torus-fiber",
        description=(
            "Exact combinatorial and differential analysis of Laurent "
            "polynomials with unit coefficients"
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, vectors: bool = True):
        p.add_argument(
            "input",
            help="path to the input file, or '-' to read standard input",
        )
        p.add_argument(
            "--format",
            choices=("json", "text"),
            default="json",
            help="output format (default: json)",
        )
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument(
            "--sigma",
            default="all",
            help="restrict to one choice by ordinal (default: all)",
        )
        if vectors:
            p.add_argument(
                "--J",
                action="append",
                default=[],
                metavar="V",
                help="comma-separated integer vector; may be repeated",
            )

    p = sub.add_parser("analyze", help="full report")
    common(p)
    p.add_argument(
        "--k-max",
        type=int,
        default=3,
        dest="k_max",
        help="largest degree swept (default: 3)",
    )

    p = sub.add_parser("polytope", help="Newton polytope geometry")
    common(p, vectors=False)

    p = sub.add_parser("hodge", help="lattice counts and vector classification")
    common(p)

    p = sub.add_parser("sigma", help="simplicializing choices and their data")
    common(p, vectors=False)

    p = sub.add_parser("mellin", help="pole skeleton for the given vectors")
    common(p)

    p = sub.add_parser("monodromy", help="local systems for the given vectors")
    common(p)

    p = sub.add_parser("check", help="run consistency sweeps")
    common(p, vectors=False)
    p.add_argument(
        "--k-max",
        type=int,
        default=3,
        dest="k_max",
        help="largest degree swept (default: 3)",
    )

    return parser


def _load_input(source: str) -> LaurentPolynomial:
    if source == "-":
        text = sys.stdin.read()
    else:
        path = Path(source)
        if not path.is_file():
            raise ValueError(f"no such input file: {source}")
        text = path.read_text()
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty input")
    if stripped.startswith("{"):
        try:
            payload = json.loads(stripped)
        except json.JSONDecodeError as err:
            raise ValueError(f"invalid JSON input: {err}") from None
        if not isinstance(payload, dict):
            raise ValueError("JSON input must be an object")
        try:
            variables = tuple(payload["variables"])
            monomials = tuple(tuple(int(e) for e in m) for m in payload["monomials"])
        except (KeyError, TypeError) as err:
            raise ValueError(
                "JSON input needs 'variables' and 'monomials' fields"
            ) from None
        return LaurentPolynomial.from_support(variables, monomials)
    return parse_laurent(stripped)


def _parse_sigma(text: str) -> int | None:
    if text == "all":
        return None
    try:
        ordinal = int(text)
    except ValueError:
        raise ValueError(f"--sigma expects an ordinal or 'all', got {text!r}")
    if ordinal < 1:
        raise ValueError("--sigma ordinals start at 1")
    return ordinal


def _parse_vectors(items) -> tuple[tuple[int, ...], ...]:
    vectors = []
    for item in items:
        parts = [p.strip() for p in item.split(",")]
        try:
            vectors.append(tuple(int(p) for p in parts))
        except ValueError:
            raise ValueError(f"--J expects comma-separated integers, got {item!r}")
    return tuple(vectors)


def _config(args, require_vectors: bool = False) -> AnalyzeConfig:
    vectors = _parse_vectors(getattr(args, "J", []))
    if require_vectors and not vectors:
        raise ValueError("this subcommand needs at least one --J vector")
    return AnalyzeConfig(
        sigma=_parse_sigma(args.sigma),
        k_max=getattr(args, "k_max", 3),
        vectors=vectors,
    )


def _cone_exit(entries: list[dict]) -> int:
    """Exit 1 when any requested vector fell outside a choice's cone."""
    for entry in entries:
        for v in entry.get("vectors", ()):
            if "outside_cone" in v:
                return 1
    return 0


def _per_sigma_vector_reports(f, config, builder) -> list[dict]:
    _validate_vectors(f, config)
    chosen, _ = _selected_sigmas(f, config)
    entries = []
    for choice in chosen:
        data = build_data(f, choice)
        entries.append(builder(choice, data))
    return entries


def _run(args) -> tuple[dict, int]:
    f = _load_input(args.input)
    command = args.command

    if command == "analyze":
        return analyze(f, _config(args)), 0

    if command == "polytope":
        poly = newton_polytope(f.support)
        report = {
            "version": __version__,
            "input": input_block(f),
            "polytope": polytope_block(poly),
        }
        if poly.full_dimensional:
            report["ehrhart"] = ehrhart_block(poly)
            report["normalized_volume"] = normalized_volume(poly)
        return report, 0

    if command == "hodge":
        config = _config(args)
        poly = newton_polytope(f.support)
        report = {
            "version": __version__,
            "input": input_block(f),
            "polytope": polytope_block(poly),
        }
        if poly.full_dimensional:
            report["ehrhart"] = ehrhart_block(poly)
        if config.vectors:

            def build(choice, data):
                closure = _closure_polytope(data)
                return {
                    "sigma": choice.ordinal,
                    "classifications": [
                        classification_block(closure, v) for v in config.vectors
                    ],
                }

            report["sigmas"] = _per_sigma_vector_reports(f, config, build)
        return report, 0

    if command == "sigma":
        config = _config(args)
        report = analyze(
            f,
            AnalyzeConfig(sigma=config.sigma, vectors=()),
        )
        return {
            "version": report["version"],
            "input": report["input"],
            "sigmas": report["sigmas"],
        }, 0

    if command == "mellin":
        config = _config(args, require_vectors=True)

        def build(choice, data):
            closure = _closure_polytope(data)
            return {
                "sigma": choice.ordinal,
                "vectors": [
                    mellin_vector_block(data, closure, v) for v in config.vectors
                ],
            }

        entries = _per_sigma_vector_reports(f, config, build)
        report = {
            "version": __version__,
            "input": input_block(f),
            "mellin": entries,
        }
        return report, _cone_exit(entries)

    if command == "monodromy":
        config = _config(args, require_vectors=True)

        def build(choice, data):
            entries = []
            for v in config.vectors:
                try:
                    pole_prediction(data, v)
                except ConeMembershipError as err:
                    entries.append({"vector": list(v), "outside_cone": str(err)})
                    continue
                if mellin_skeleton(data, v).degenerate:
                    entries.append(
                        {"vector": list(v), "skipped": "degenerate skeleton"}
                    )
                else:
                    entries.append(hypergeom_vector_block(data, v, 25, full=True))
            return {"sigma": choice.ordinal, "vectors": entries}

        entries = _per_sigma_vector_reports(f, config, build)
        report = {
            "version": __version__,
            "input": input_block(f),
            "monodromy": entries,
        }
        return report, _cone_exit(entries)

    if command == "check":
        config = _config(args)
        report, clean = check(f, config)
        return report, 0 if clean else 2

    raise InternalConsistencyError(f"unhandled subcommand {command!r}")


def _emit(report: dict, args) -> None:
    rendered = to_json(report) if args.format == "json" else to_text(report)
    if args.out:
        Path(args.out).write_text(rendered)
    else:
        sys.stdout.write(rendered)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = _run(args)
    except InternalConsistencyError as err:
        print(f"internal error: {err}", file=sys.stderr)
        return 3
    except (TorusFiberError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    _emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
