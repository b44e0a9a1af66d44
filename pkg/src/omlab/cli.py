"""Command-line workbench.

Commands: validate, contexts, daseinise, epsilon, check-theorem,
breakfast, battery, export. Each takes one lattice source: either
`--builtin <name> [params]` (boolean K, mo K, or a corpus name such as
mo2xl2) or `--spec <path>` pointing at a lattice spec file (text or JSON).

Exit codes: 0 when every requested check is consistent, 1 for usage or
input errors, 2 when a meta-invariant is violated (the eight conditions
disagree, or a battery proposition fails).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import report
from .contexts import DEFAULT_MAX_CONTEXTS, ContextGraph
from .corpus import CORPUS_NAMES, corpus_lattice
from .errors import OmlabError
from .lattice import DEFAULT_MAX_ELEMENTS, OmlLattice, axiom_report, make_boolean, make_mo
from .presheaf import DEFAULT_ORACLE_BOUND
from .specfile import parse_structure, to_spec_json, to_spec_text
from .theorem import DEFAULT_FRONTIER_BUDGET, TheoremLab


class UsageError(OmlabError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse from sys.exit(2) on usage errors
        raise UsageError(message)


@dataclass
class RunConfig:
    builtin: str | None
    spec_path: str | None
    max_elements: int
    max_contexts: int
    oracle_bound: int
    frontier_budget: int
    include_trivial: bool
    audit: bool
    fmt: str
    out: str | None

    def __post_init__(self):
        if (self.builtin is None) == (self.spec_path is None):
            raise UsageError("exactly one lattice source is required "
                             "(--builtin or --spec)")
        for cap in (self.max_elements, self.max_contexts,
                    self.oracle_bound, self.frontier_budget):
            if cap <= 0:
                raise UsageError("size caps and bounds must be positive")


_BUILTIN_ARITY = {"boolean": 1, "mo": 1}


def _fold_builtin(argv: list[str]) -> list[str]:
    """Turn `--builtin mo 2` into `--builtin=mo:2` so argparse stays simple."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--builtin":
            if i + 1 >= len(argv):
                raise UsageError("--builtin needs a constructor name")
            kind = argv[i + 1]
            arity = _BUILTIN_ARITY.get(kind.lower(), 0)
            params = argv[i + 2:i + 2 + arity]
            if len(params) < arity:
                raise UsageError(f"--builtin {kind} needs {arity} parameter(s)")
            out.append("--builtin=" + ":".join([kind] + params))
            i += 2 + arity
        else:
            out.append(argv[i])
            i += 1
    return out


def _config_from(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        builtin=ns.builtin,
        spec_path=ns.spec,
        max_elements=ns.max_elements,
        max_contexts=ns.max_contexts,
        oracle_bound=ns.oracle_bound,
        frontier_budget=ns.frontier_budget,
        include_trivial=ns.include_trivial_context,
        audit=ns.audit_conegation,
        fmt=ns.format,
        out=ns.out,
    )


def _resolve_lattice(config: RunConfig) -> tuple[OmlLattice, str]:
    if config.builtin is not None:
        tokens = config.builtin.split(":")
        kind = tokens[0].lower()
        if kind in _BUILTIN_ARITY:
            try:
                k = int(tokens[1])
            except (IndexError, ValueError):
                raise UsageError(f"--builtin {kind} needs an integer parameter") from None
            maker = make_boolean if kind == "boolean" else make_mo
            return maker(k, max_elements=config.max_elements), f"{kind}{k}"
        if kind in CORPUS_NAMES:
            lat = corpus_lattice(kind)
            if lat.n > config.max_elements:
                raise UsageError(f"{kind} has {lat.n} elements, above --max-elements")
            return lat, kind
        raise UsageError(f"unknown builtin {tokens[0]!r}; use boolean K, mo K, "
                         f"or one of {', '.join(CORPUS_NAMES)}")
    path = Path(config.spec_path)
    text = path.read_text(encoding="utf-8")
    structure = parse_structure(text)
    lat = OmlLattice(structure.element_names, structure.up, structure.ortho,
                     max_elements=config.max_elements)
    return lat, structure.name


def _make_lab(config: RunConfig, lat: OmlLattice, name: str) -> TheoremLab:
    return TheoremLab(lat, name,
                      include_trivial=config.include_trivial,
                      max_contexts=config.max_contexts,
                      oracle_bound=config.oracle_bound,
                      frontier_budget=config.frontier_budget)


def _out_dir(config: RunConfig) -> Path | None:
    if config.out is None:
        return None
    path = Path(config.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


# -- command handlers ----------------------------------------------------------

def _cmd_validate(ns) -> int:
    config = _config_from(ns)
    if config.builtin is not None:
        lat, name = _resolve_lattice(config)
        checks = axiom_report(lat.names, lat.up, lat.ortho,
                              max_elements=config.max_elements)
    else:
        text = Path(config.spec_path).read_text(encoding="utf-8")
        structure = parse_structure(text)
        name = structure.name
        checks = axiom_report(structure.element_names, structure.up,
                              structure.ortho, max_elements=config.max_elements)
    print(f"axiom report for {name}")
    print(report.axiom_report_text(checks), end="")
    return 0 if all(c.ok for c in checks) else 1


def _cmd_contexts(ns) -> int:
    config = _config_from(ns)
    lat, name = _resolve_lattice(config)
    graph = ContextGraph(lat, include_trivial=config.include_trivial,
                         max_contexts=config.max_contexts)
    text = f"context graph for {name}\n" + report.contexts_text(graph)
    doc = report.contexts_json_doc(graph)
    dot = report.context_dot(graph)
    if config.fmt == "text":
        print(text, end="")
    elif config.fmt == "data":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(dot, end="")
    out = _out_dir(config)
    if out is not None:
        report.write_text(out / "contexts.txt", text)
        report.write_json(out / "contexts.json", doc)
        report.write_text(out / "contexts.dot", dot)
    return 0


def _cmd_daseinise(ns) -> int:
    config = _config_from(ns)
    lat, name = _resolve_lattice(config)
    lab = _make_lab(config, lat, name)
    try:
        x = lat.id_of(ns.element)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    sub = lab.dmap.daseinise(x)
    title = f"daseinisation of {ns.element} in {name}"
    text = report.daseinise_text(lab.dmap, x, title)
    doc = report.daseinise_json_doc(lab.dmap, x)
    dot = report.context_dot(lab.graph, overlay=sub)
    if config.fmt == "text":
        print(text, end="")
    elif config.fmt == "data":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(dot, end="")
    out = _out_dir(config)
    if out is not None:
        report.write_text(out / "subobject.txt", text)
        report.write_json(out / "subobject.json", doc)
        report.write_text(out / "subobject.dot", dot)
    return 0


def _cmd_epsilon(ns) -> int:
    config = _config_from(ns)
    lat, name = _resolve_lattice(config)
    lab = _make_lab(config, lat, name)
    if (ns.element is None) == (ns.from_json is None):
        raise UsageError("give exactly one of ELEMENT or --from-json FILE")
    if ns.element is not None:
        try:
            sub = lab.dmap.daseinise(lat.id_of(ns.element))
        except KeyError as exc:
            raise UsageError(str(exc)) from None
        origin = f"daseinised {ns.element}"
    else:
        try:
            doc = json.loads(Path(ns.from_json).read_text(encoding="utf-8"))
            sub = report.subobject_from_json_doc(doc, lab.graph)
        except (ValueError, KeyError) as exc:
            raise UsageError(f"bad subobject file: {exc}") from None
        origin = ns.from_json
    u = lab.dmap.upper_adjoint(sub)
    member = lab.dmap.preimage_element(sub)
    print(f"adjoint of {origin}: {lat.names[u]}")
    print(f"in the image of daseinisation: "
          f"{'yes' if member is not None else 'no'}")
    return 0


def _cmd_check_theorem(ns) -> int:
    config = _config_from(ns)
    lat, name = _resolve_lattice(config)
    lab = _make_lab(config, lat, name)
    rep = lab.equivalence_report()
    audit = lab.conegation_audit() if config.audit else None
    text = report.theorem_text(rep, audit)
    doc = report.theorem_json_doc(rep, audit)
    if config.fmt == "data":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text, end="")
    out = _out_dir(config)
    if out is not None:
        report.write_text(out / "theorem.txt", text)
        report.write_json(out / "theorem.json", doc)
        report.write_csv(out / "theorem.csv",
                         ["condition", "label", "holds", "partial", "witness"],
                         report.theorem_csv_rows(rep))
        report.save_condition_figure(rep, out / "theorem.png")
    return 0 if rep.all_agree else 2


def _cmd_breakfast(ns) -> int:
    config = _config_from(ns)
    lat, name = _resolve_lattice(config)
    lab = _make_lab(config, lat, name)
    try:
        e, b, s = (lat.id_of(t) for t in (ns.e, ns.b, ns.s))
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    record = lab.breakfast(e, b, s)
    if config.fmt == "data":
        print(json.dumps(report.breakfast_json_doc(record), indent=2, sort_keys=True))
    else:
        print(report.breakfast_text(record), end="")
    return 0


def _cmd_battery(ns) -> int:
    config = _config_from(ns)
    lat, name = _resolve_lattice(config)
    lab = _make_lab(config, lat, name)
    entries = lab.battery()
    text = f"proposition battery for {name}\n" + report.battery_text(entries)
    doc = report.battery_json_doc(entries)
    if config.audit:
        audit = lab.conegation_audit()
        text += report.conegation_audit_text(audit)
        doc["conegation_audit"] = [
            {"element": row.element, "context": row.context,
             "adjoint": list(row.adjoint_atoms),
             "pointwise": list(row.pointwise_atoms)}
            for row in audit
        ]
    if config.fmt == "data":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text, end="")
    out = _out_dir(config)
    if out is not None:
        report.write_text(out / "battery.txt", text)
        report.write_json(out / "battery.json", doc)
        report.write_csv(out / "battery.csv", ["proposition", "status", "detail"],
                         report.battery_csv_rows(entries))
        report.save_battery_figure(entries, name, out / "battery.png")
    return 0 if all(e.status != "fail" for e in entries) else 2


def _cmd_export(ns) -> int:
    config = _config_from(ns)
    lat, name = _resolve_lattice(config)
    text = to_spec_text(lat, name)
    data = to_spec_json(lat, name)
    dot = report.lattice_dot(lat, name)
    if config.fmt == "text":
        print(text, end="")
    elif config.fmt == "data":
        print(data, end="")
    else:
        print(dot, end="")
    out = _out_dir(config)
    if out is not None:
        report.write_text(out / "lattice.spec", text)
        report.write_text(out / "lattice.json", data)
        report.write_text(out / "lattice.dot", dot)
    return 0


# -- parser ---------------------------------------------------------------------

def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--builtin", metavar="NAME[:PARAMS]",
                        help="builtin lattice: boolean K, mo K, or a corpus name"
                             f" ({', '.join(CORPUS_NAMES)})")
    common.add_argument("--spec", metavar="PATH", help="lattice spec file (text or JSON)")
    common.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    common.add_argument("--max-contexts", type=int, default=DEFAULT_MAX_CONTEXTS)
    common.add_argument("--oracle-bound", type=int, default=DEFAULT_ORACLE_BOUND)
    common.add_argument("--frontier-budget", type=int, default=DEFAULT_FRONTIER_BUDGET)
    common.add_argument("--include-trivial-context", action="store_true")
    common.add_argument("--audit-conegation", action="store_true")
    common.add_argument("--format", choices=("text", "data", "dot"), default="text")
    common.add_argument("--out", metavar="DIR", help="directory for report files")

    parser = _Parser(prog="omlab",
                     description="finite orthomodular lattice workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="run the axiom report", )
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("contexts", parents=[common],
                       help="enumerate Boolean contexts and inclusions")
    p.set_defaults(handler=_cmd_contexts)

    p = sub.add_parser("daseinise", parents=[common],
                       help="daseinise an element into a subobject")
    p.add_argument("element", help="element name")
    p.set_defaults(handler=_cmd_daseinise)

    p = sub.add_parser("epsilon", parents=[common],
                       help="apply the upper adjoint to a subobject")
    p.add_argument("element", nargs="?", help="element name (uses its daseinisation)")
    p.add_argument("--from-json", metavar="FILE",
                   help="subobject JSON as written by 'daseinise --format data'")
    p.set_defaults(handler=_cmd_epsilon)

    p = sub.add_parser("check-theorem", parents=[common],
                       help="evaluate the eight equivalence conditions")
    p.set_defaults(handler=_cmd_check_theorem)

    p = sub.add_parser("breakfast", parents=[common],
                       help="compare distributivity in the lattice and for subobjects")
    p.add_argument("e")
    p.add_argument("b")
    p.add_argument("s")
    p.set_defaults(handler=_cmd_breakfast)

    p = sub.add_parser("battery", parents=[common],
                       help="run the full proposition battery")
    p.set_defaults(handler=_cmd_battery)

    p = sub.add_parser("export", parents=[common],
                       help="export the lattice as spec text, JSON, or DOT")
    p.set_defaults(handler=_cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    raw = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        ns = build_parser().parse_args(_fold_builtin(raw))
        return ns.handler(ns)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except OmlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
