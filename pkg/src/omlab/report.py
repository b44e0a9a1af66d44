"""Deterministic renderings: text tables, JSON, CSV, DOT, and PNG figures.

Every renderer is a pure function of its input, so identical runs produce
byte-identical text output. Figures are rendered headless through the Agg
backend and written to files only.
"""

from __future__ import annotations

import csv
import json
from typing import Iterable, Sequence

from .contexts import ContextGraph
from .lattice import AxiomCheck, OmlLattice
from .presheaf import Subobject
from .specfile import cover_pairs
from .theorem import AuditRow, BatteryEntry, BreakfastRecord, TheoremReport

_STATUS_MARK = {"pass": "PASS", "fail": "FAIL", "skip": "SKIP"}


def _plt():
    import matplotlib
    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt
    return plt


# -- validation ---------------------------------------------------------------

def axiom_report_text(checks: Sequence[AxiomCheck]) -> str:
    lines = []
    for check in checks:
        if check.ok is None:
            status = "SKIP"
        else:
            status = "PASS" if check.ok else "FAIL"
        line = f"{status:4}  {check.name}"
        if check.witness and check.ok is not True:
            line += f"  ({check.witness})"
        lines.append(line)
    return "\n".join(lines) + "\n"


# -- lattices ------------------------------------------------------------------

def lattice_dot(lat: OmlLattice, name: str = "L") -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for i, label in enumerate(lat.names):
        lines.append(f'  n{i} [label="{label}"];')
    for a, b in cover_pairs(lat):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- context graphs --------------------------------------------------------------

def contexts_text(graph: ContextGraph) -> str:
    lat = graph.lattice
    lines = [f"contexts: {len(graph.contexts)}"]
    for ctx in graph.contexts:
        atoms = ", ".join(lat.names[a] for a in ctx.atoms)
        lines.append(f"  B{ctx.index} size={ctx.size} elems={lat.set_names(ctx.mask)} "
                     f"atoms=[{atoms}]")
    proper = graph.proper_inclusions()
    lines.append(f"inclusion edges (proper): {len(proper)}")
    for small, big in proper:
        lines.append(f"  B{small} < B{big}")
    return "\n".join(lines) + "\n"


def contexts_json_doc(graph: ContextGraph) -> dict:
    lat = graph.lattice
    doc = {
        "contexts": [
            {
                "id": ctx.index,
                "elements": [lat.names[x] for x in ctx.elems],
                "atoms": [lat.names[a] for a in ctx.atoms],
            }
            for ctx in graph.contexts
        ],
        "inclusions": [
            {"small": small, "big": big}
            for small, big in graph.proper_inclusions()
        ],
        "restrictions": [
            {
                "big": big,
                "small": small,
                "atom_map": {
                    lat.names[graph.contexts[big].atoms[p]]:
                        lat.names[graph.contexts[small].atoms[q]]
                    for p, q in enumerate(table)
                },
            }
            for (big, small), table in sorted(graph.restr.items())
            if big != small
        ],
    }
    return doc


def context_dot(graph: ContextGraph, overlay: Subobject | None = None) -> str:
    """Inclusion diagram (cover edges); an overlay marks selected atoms with *."""
    lat = graph.lattice
    lines = ["digraph contexts {", "  rankdir=BT;"]
    for ctx in graph.contexts:
        atom_labels = []
        selected = overlay.masks[ctx.index] if overlay is not None else 0
        for p, a in enumerate(ctx.atoms):
            mark = "*" if selected >> p & 1 else ""
            atom_labels.append(lat.names[a] + mark)
        label = f"B{ctx.index} {lat.set_names(ctx.mask)}\\natoms: {', '.join(atom_labels)}"
        attrs = f'label="{label}"'
        if overlay is not None and selected:
            attrs += ', style=filled, fillcolor="lightblue"'
        lines.append(f"  B{ctx.index} [{attrs}];")
    for small, big in graph.cover_inclusions():
        lines.append(f"  B{small} -> B{big};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- subobjects ---------------------------------------------------------------------

def subobject_text(sub: Subobject, title: str) -> str:
    lat = sub.graph.lattice
    lines = [title]
    for ci, names in sub.atom_names():
        ctx = sub.graph.contexts[ci]
        lines.append(f"  B{ci} {lat.set_names(ctx.mask)}: "
                     f"{{{', '.join(names)}}}")
    return "\n".join(lines) + "\n"


def daseinise_text(dmap, x: int, title: str) -> str:
    """Per-context rows (element, context, approximation) plus the atom sets."""
    lat = dmap.lattice
    sub = dmap.daseinise(x)
    lines = [title]
    for ci, names in sub.atom_names():
        ctx = dmap.graph.contexts[ci]
        approx = lat.names[dmap.dasein_to(x, ci)]
        lines.append(f"  B{ci} {lat.set_names(ctx.mask)}: approximation {approx}, "
                     f"atoms {{{', '.join(names)}}}")
    return "\n".join(lines) + "\n"


def daseinise_json_doc(dmap, x: int) -> dict:
    lat = dmap.lattice
    doc = subobject_json_doc(dmap.daseinise(x))
    doc["element"] = lat.names[x]
    doc["approximations"] = [
        {"context": ci, "member": lat.names[dmap.dasein_to(x, ci)]}
        for ci in range(len(dmap.graph.contexts))
    ]
    return doc


def subobject_json_doc(sub: Subobject) -> dict:
    return {
        "selections": [
            {"context": ci, "atoms": list(names)}
            for ci, names in sub.atom_names()
        ]
    }


def subobject_from_json_doc(doc: dict, graph: ContextGraph) -> Subobject:
    """Inverse of subobject_json_doc against an existing graph."""
    if not isinstance(doc, dict) or "selections" not in doc:
        raise ValueError("subobject document needs a 'selections' list")
    masks = [0] * len(graph.contexts)
    for entry in doc["selections"]:
        ci = entry["context"]
        if not 0 <= ci < len(graph.contexts):
            raise ValueError(f"no context with id {ci}")
        for name in entry["atoms"]:
            elem = graph.lattice.id_of(name)
            masks[ci] |= 1 << graph.atom_position(ci, elem)
    from . import presheaf
    if not presheaf.is_closed(graph, masks):
        raise ValueError("selection family is not closed under restriction")
    return Subobject(graph, masks)


# -- theorem reports -------------------------------------------------------------------

def theorem_text(report: TheoremReport, audit: tuple[AuditRow, ...] | None = None) -> str:
    lines = [f"equivalence report for {report.lattice_name} "
             f"({report.size} elements)"]
    for cond in report.conditions:
        status = "TRUE " if cond.holds else "FALSE"
        line = f"  condition {cond.index}: {status} {cond.label}"
        if cond.partial:
            line += " [frontier only]"
        lines.append(line)
        if cond.witness is not None:
            lines.append(f"      witness: {cond.witness.description}")
    lines.append(f"all conditions agree: {'yes' if report.all_agree else 'NO'}")
    if report.subobject_count is not None:
        lines.append(f"subobjects: {report.subobject_count} "
                     f"(phantom propositions: {report.phantom_count})")
    else:
        lines.append("subobjects: not enumerated (oracle bound exceeded)")
    if audit is not None:
        lines.append(conegation_audit_text(audit).rstrip("\n"))
    return "\n".join(lines) + "\n"


def conegation_audit_text(audit: tuple[AuditRow, ...]) -> str:
    if not audit:
        return "conegation audit: adjoint and pointwise readings agree everywhere\n"
    lines = [f"conegation audit: {len(audit)} divergence(s) between the adjoint "
             "and pointwise readings"]
    for row in audit:
        lines.append(f"  element {row.element} at B{row.context}: adjoint "
                     f"{{{','.join(row.adjoint_atoms)}}} vs pointwise "
                     f"{{{','.join(row.pointwise_atoms)}}}")
    return "\n".join(lines) + "\n"


def theorem_json_doc(report: TheoremReport,
                     audit: tuple[AuditRow, ...] | None = None) -> dict:
    doc = {
        "lattice": report.lattice_name,
        "size": report.size,
        "conditions": [
            {
                "index": c.index,
                "label": c.label,
                "holds": c.holds,
                "partial": c.partial,
                "witness": None if c.witness is None else c.witness.description,
            }
            for c in report.conditions
        ],
        "all_agree": report.all_agree,
        "subobject_count": report.subobject_count,
        "phantom_count": report.phantom_count,
    }
    if audit is not None:
        doc["conegation_audit"] = [
            {
                "element": row.element,
                "context": row.context,
                "adjoint": list(row.adjoint_atoms),
                "pointwise": list(row.pointwise_atoms),
            }
            for row in audit
        ]
    return doc


def theorem_csv_rows(report: TheoremReport) -> list[list[str]]:
    rows = []
    for c in report.conditions:
        rows.append([
            str(c.index), c.label, str(c.holds).lower(),
            str(c.partial).lower(),
            "" if c.witness is None else c.witness.description,
        ])
    return rows


# -- battery -------------------------------------------------------------------------

def battery_text(entries: Sequence[BatteryEntry]) -> str:
    lines = []
    width = max(len(e.name) for e in entries)
    for e in entries:
        line = f"{_STATUS_MARK[e.status]:4}  {e.name:<{width}}"
        if e.detail:
            line += f"  ({e.detail})"
        lines.append(line.rstrip())
    failed = sum(e.status == "fail" for e in entries)
    lines.append(f"propositions: {len(entries)}, failed: {failed}")
    return "\n".join(lines) + "\n"


def battery_json_doc(entries: Sequence[BatteryEntry]) -> dict:
    return {
        "propositions": [
            {"name": e.name, "status": e.status, "detail": e.detail}
            for e in entries
        ]
    }


def battery_csv_rows(entries: Sequence[BatteryEntry]) -> list[list[str]]:
    return [[e.name, e.status, e.detail] for e in entries]


# -- breakfast --------------------------------------------------------------------------

def breakfast_text(record: BreakfastRecord) -> str:
    e, b, s = record.elements
    lines = [
        f"distributivity comparison for ({e}, {b}, {s})",
        f"  lattice:    {e} ^ ({b} v {s}) = {record.lattice_lhs}   "
        f"({e} ^ {b}) v ({e} ^ {s}) = {record.lattice_rhs}   "
        f"-> {'equal' if record.lattice_distributes else 'DIFFER'}",
        f"  subobjects: both sides "
        f"{'equal' if record.subobject_sides_equal else 'DIFFER'} "
        "(componentwise sets always distribute)",
    ]
    return "\n".join(lines) + "\n"


def breakfast_json_doc(record: BreakfastRecord) -> dict:
    return {
        "elements": list(record.elements),
        "lattice_lhs": record.lattice_lhs,
        "lattice_rhs": record.lattice_rhs,
        "lattice_distributes": record.lattice_distributes,
        "subobject_sides_equal": record.subobject_sides_equal,
    }


# -- files ---------------------------------------------------------------------------------

def write_text(path, content: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(content)


def write_json(path, doc) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def save_condition_figure(report: TheoremReport, path) -> None:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7.5, 3.2))
    labels = [f"{c.index}. {c.label}" for c in report.conditions]
    colors = ["#2a9d4e" if c.holds else "#c23b22" for c in report.conditions]
    ax.barh(range(len(labels)), [1] * len(labels), color=colors, edgecolor="black")
    ax.set_yticks(range(len(labels)))
    ax.set_yticklabels(labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xticks([])
    agree = "agree" if report.all_agree else "DISAGREE"
    ax.set_title(f"{report.lattice_name}: equivalence conditions ({agree})", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_battery_figure(entries: Sequence[BatteryEntry], name: str, path) -> None:
    plt = _plt()
    color_of = {"pass": "#2a9d4e", "fail": "#c23b22", "skip": "#999999"}
    fig, ax = plt.subplots(figsize=(8, 0.28 * len(entries) + 1.2))
    ax.barh(range(len(entries)), [1] * len(entries),
            color=[color_of[e.status] for e in entries], edgecolor="black")
    ax.set_yticks(range(len(entries)))
    ax.set_yticklabels([e.name for e in entries], fontsize=7)
    ax.invert_yaxis()
    ax.set_xticks([])
    ax.set_title(f"{name}: proposition battery", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
