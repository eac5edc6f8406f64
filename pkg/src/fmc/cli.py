"""Command-line driver: parse, compile, analyze, validate, scaffold.

Exit codes: 0 success; 1 input/parse errors (missing file, DSL syntax,
unknown feature in a configuration); 2 compile, write, or cap errors;
3 void model from `check`; 4 invalid configuration from `validate`.
Reports go to stdout (JSON with --json), logs and errors to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analysis, scaffold
from .compiler import CompileError, compile_model
from .dsl import ParseError, parse, parse_configuration
from .model import FeatureModel, ModelError, UnknownFeatureError
from .owl import serialize_functional
from .propositional import is_valid_configuration

TRIGGERS_ENV = "FMC_TRIGGERS"


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Failure(1, f"{path}: {exc.strerror or exc}") from exc


def _load_model(path: str) -> FeatureModel:
    source = _read(path)
    try:
        return parse(source)
    except (ParseError, ModelError) as exc:
        raise _Failure(1, f"{path}: {exc}") from exc


def _compile(args) -> object:
    model = _load_model(args.input)
    try:
        return compile_model(model, args.iri)
    except CompileError as exc:
        raise _Failure(2, f"{args.input}: {exc}") from exc


def cmd_compile(args) -> int:
    ontology = _compile(args)
    text = serialize_functional(ontology)
    try:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Failure(2, f"{args.output}: {exc.strerror or exc}") from exc
    print(f"wrote {args.output}", file=sys.stderr)
    return 0


def cmd_check(args) -> int:
    model = _load_model(args.input)
    report = analysis.analyze(model)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("consistent: " + ("yes" if report["consistent"] else "no (void model)"))
        dead = report["dead_features"]
        print("dead features: " + (", ".join(dead) if dead else "none"))
        count = report["configuration_count"]
        print("configurations: " + (str(count) if count is not None
                                    else f"not counted (over {analysis.ENUMERATION_CAP} features)"))
    return 0 if report["consistent"] else 3


def cmd_validate(args) -> int:
    model = _load_model(args.input)
    selected = parse_configuration(_read(args.config))
    try:
        valid, violations = is_valid_configuration(model, selected)
    except UnknownFeatureError as exc:
        raise _Failure(1, f"{args.config}: {exc}") from exc
    if args.json:
        print(json.dumps({
            "valid": valid,
            "violations": [
                {"rule": v.rule, "features": list(v.features), "message": v.message}
                for v in violations],
        }, indent=2))
    else:
        if valid:
            print("configuration is valid")
        else:
            for v in violations:
                print(v.message)
    return 0 if valid else 4


def cmd_count(args) -> int:
    model = _load_model(args.input)
    try:
        count = analysis.count_configurations(model)
    except analysis.EnumerationCapError as exc:
        raise _Failure(2, f"{args.input}: {exc}") from exc
    if args.json:
        print(json.dumps({"configuration_count": count}))
    else:
        print(count)
    return 0


def cmd_scaffold(args) -> int:
    ontology = _compile(args)
    registry = None
    triggers_path = os.environ.get(TRIGGERS_ENV)
    if triggers_path:
        try:
            registry = scaffold.load_triggers(triggers_path)
        except (OSError, scaffold.ScaffoldError) as exc:
            raise _Failure(2, f"{triggers_path}: {exc}") from exc
    zotonic_notes = args.flavor == "zotonic-notes"
    try:
        site = scaffold.generate(ontology, registry,
                                 include_rule_classes=not args.skip_rule_classes)
        written = scaffold.write_phase1(site, args.outdir, args.overwrite, zotonic_notes)
        written += scaffold.write_phase2(site, args.outdir, args.overwrite, zotonic_notes)
    except (OSError, scaffold.ScaffoldError) as exc:
        raise _Failure(2, str(exc)) from exc
    for path in written:
        print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmc",
        description="Feature-model compiler: OWL 2 ontologies, consistency "
                    "analysis, and web-app scaffolds from textual feature models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a feature model to an OWL ontology")
    p.add_argument("input", help="feature model (.fm)")
    p.add_argument("output", help="ontology output path (.ofn)")
    p.add_argument("--iri", help="ontology IRI (default http://example.org/spl/<root>#)")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("check", help="consistency, dead features, configuration count")
    p.add_argument("input", help="feature model (.fm)")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("validate", help="validate a configuration against a model")
    p.add_argument("input", help="feature model (.fm)")
    p.add_argument("config", help="configuration file, one feature name per line")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("count", help="count valid configurations")
    p.add_argument("input", help="feature model (.fm)")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("scaffold", help="generate a web-app scaffold from a model")
    p.add_argument("input", help="feature model (.fm)")
    p.add_argument("outdir", help="output directory")
    p.add_argument("--iri", help="ontology IRI (default http://example.org/spl/<root>#)")
    p.add_argument("--skip-rule-classes", action="store_true",
                   help="omit rule classes from the generated categories")
    p.add_argument("--flavor", choices=["zotonic-notes"],
                   help="annotate outputs with framework-mapping notes")
    p.add_argument("--overwrite", action="store_true",
                   help="replace existing output files")
    p.set_defaults(func=cmd_scaffold)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Failure as failure:
        print(f"error: {failure.message}", file=sys.stderr)
        return failure.code


if __name__ == "__main__":
    sys.exit(main())
