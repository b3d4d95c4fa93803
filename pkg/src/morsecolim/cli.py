"""Command-line surface for diagram and scenario files.

Inputs are JSON files of two kinds, told apart by their top-level keys:
scenario files carry "dim_w", diagram files carry "stages"/"maps".  Exit
codes: 0 success or agreement, 1 validation failure or obstruction, 2 I/O
or parse problems.  JSON output is byte-stable (sorted keys).
"""

from __future__ import annotations

import argparse
import json
import sys

from .colimit import (build_colimit, build_telescope, compare_homologies,
                      direct_limit, homology_system, verify_telescope_lemma)
from .complexes import InvalidComplex, NotAChainMap, ShapeMismatch, homology
from .diagrams import (CoherentDiagram, Obstruction, PartialDiagram,
                       StageMismatch, complete, product_extension)
from .scenarios import (ExhaustionScenario, ParseError, ValidationError,
                        load_scenario, scenario_diagram, strict_diagram)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_IO = 2


def _read_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _load_input(path):
    """Returns ('scenario', ExhaustionScenario) or ('diagram', CoherentDiagram)."""
    doc = _read_json(path)
    if "dim_w" in doc:
        return "scenario", ExhaustionScenario.from_json(doc)
    try:
        return "diagram", CoherentDiagram.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (ShapeMismatch, InvalidComplex)):
            raise
        raise ParseError(f"malformed diagram file {path}: {exc}") from exc


def _as_diagram(kind, obj, completed: bool) -> CoherentDiagram:
    if kind == "diagram":
        return obj
    return scenario_diagram(obj) if completed else strict_diagram(obj)


def _emit(doc: dict, args) -> None:
    if args.json:
        text = json.dumps(doc, sort_keys=True, indent=2)
    else:
        text = _tabulate(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _tabulate(doc, indent: str = "") -> str:
    lines = []
    for key in sorted(doc) if isinstance(doc, dict) else []:
        val = doc[key]
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_tabulate(val, indent + "  "))
        elif isinstance(val, list):
            lines.append(f"{indent}{key}: " + " ".join(str(v) for v in val))
        else:
            lines.append(f"{indent}{key}: {val}")
    return "\n".join(line for line in lines if line)


def _betti_doc(betti: dict[int, int]) -> dict:
    return {str(n): v for n, v in sorted(betti.items())}


def _cmd_validate(args) -> int:
    kind, obj = _load_input(args.path)
    d = _as_diagram(kind, obj, completed=False)
    if kind == "scenario":
        maps = dict(d.maps)
        maps.update(obj.higher)
        d = CoherentDiagram(d.stages, maps)
    report = d.validate(max_length=args.max_length)
    doc = {"checked": report.checked, "ok": report.ok,
           "failures": [list(s.vertices) for s in report.failing_simplices()]}
    _emit(doc, args)
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_homology(args) -> int:
    kind, obj = _load_input(args.path)
    stages = obj.stages
    doc = {"stages": {str(a): _betti_doc(homology(c).betti)
                      for a, c in sorted(stages.items())}}
    _emit(doc, args)
    return EXIT_OK


def _cmd_colimit(args) -> int:
    kind, obj = _load_input(args.path)
    d = _as_diagram(kind, obj, completed=True)
    col = build_colimit(d, max_stage=args.max_stage, max_length=args.max_length)
    doc = {"total_dims": _betti_doc(col.complex.dims),
           "betti": _betti_doc(homology(col.complex).betti)}
    _emit(doc, args)
    return EXIT_OK


def _cmd_telescope(args) -> int:
    kind, obj = _load_input(args.path)
    d = _as_diagram(kind, obj, completed=True)
    tele = build_telescope(d, max_stage=args.max_stage)
    lemma = verify_telescope_lemma(tele)
    doc = {"total_dims": _betti_doc(tele.complex.dims),
           "betti": _betti_doc(homology(tele.complex).betti),
           "lemma": {
               "ok": lemma.ok,
               "kernel_check": {str(m): list(v)
                                for m, v in sorted(lemma.kernel_check.items())},
               "quotient_check": {str(m): list(v)
                                  for m, v in sorted(lemma.quotient_check.items())},
           }}
    _emit(doc, args)
    return EXIT_OK if lemma.ok else EXIT_FAIL


def _cmd_limit(args) -> int:
    kind, obj = _load_input(args.path)
    d = _as_diagram(kind, obj, completed=False)
    lim = direct_limit(homology_system(d, stabilize=args.stabilize))
    _emit({"direct_limit": _betti_doc(lim)}, args)
    return EXIT_OK


def _cmd_complete(args) -> int:
    kind, obj = _load_input(args.path)
    if kind == "scenario":
        d = scenario_diagram(obj)
    else:
        d = complete(PartialDiagram(obj.stages, obj.maps),
                     up_to_length=args.max_length)
    doc = d.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, sort_keys=True, indent=2)
            fh.write("\n")
    else:
        print(json.dumps(doc, sort_keys=True, indent=2))
    return EXIT_OK


def _cmd_compare(args) -> int:
    kind, obj = _load_input(args.path)
    d = _as_diagram(kind, obj, completed=True)
    report = compare_homologies(d, max_length=args.max_length,
                                stabilize=args.stabilize)
    _emit(report.to_json(), args)
    return EXIT_OK if report.agree else EXIT_FAIL


def _cmd_extend(args) -> int:
    kind1, d1 = _load_input(args.path)
    kind2, d2 = _load_input(args.second)
    d1 = _as_diagram(kind1, d1, completed=False)
    d2 = _as_diagram(kind2, d2, completed=False)
    ext = product_extension(d1, d2)
    length = args.max_length if args.max_length is not None else 3
    report = ext.validate(max_length=length)
    doc = {"checked": report.checked, "ok": report.ok,
           "failures": [[list(v) for v in s.vertices]
                        for s, _ in report.failures]}
    _emit(doc, args)
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morsecolim",
        description="Coherent diagrams of GF(2) complexes, colimits, "
                    "telescopes, and direct limits for exhaustion data.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, two_inputs=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help="diagram or scenario JSON file")
        if two_inputs:
            p.add_argument("second", help="second diagram JSON file")
        p.add_argument("--max-stage", type=int, default=None)
        p.add_argument("--max-length", type=int, default=None)
        p.add_argument("--stabilize", type=int, default=None)
        p.add_argument("--json", action="store_true",
                       help="emit machine-readable JSON")
        p.add_argument("--out", default=None, help="write output to a file")
        p.set_defaults(func=func)
        return p

    add("validate", _cmd_validate, "coherence / scenario invariant report")
    add("homology", _cmd_homology, "stagewise betti numbers")
    add("colimit", _cmd_colimit, "build the colimit complex and its betti")
    add("telescope", _cmd_telescope,
        "build the telescope, its betti, and the subspace-rank checks")
    add("limit", _cmd_limit, "direct limit of the stage homologies")
    add("complete", _cmd_complete, "solve for missing higher maps")
    add("compare", _cmd_compare, "three-way colimit/telescope/limit report")
    add("extend", _cmd_extend, "extension over the doubled stage poset",
        two_inputs=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("max_stage", "max_length", "stabilize"):
        val = getattr(args, name, None)
        if val is not None and val < 0:
            print(f"error: --{name.replace('_', '-')} must be >= 0",
                  file=sys.stderr)
            return EXIT_IO
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Obstruction as exc:
        print(f"obstruction: {exc.simplex}; residual blocks at degrees "
              f"{sorted(exc.residual.blocks)}", file=sys.stderr)
        return EXIT_FAIL
    except (ValidationError, NotAChainMap, InvalidComplex, ShapeMismatch,
            StageMismatch) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
