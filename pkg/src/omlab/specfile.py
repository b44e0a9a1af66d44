"""Lattice spec files: a small cover-relation grammar plus a JSON twin.

Text form::

    lattice M
    elements: 0, a, a', b, b', 1
    covers: 0 < a; 0 < a'; a < 1; a' < 1; b < 1; b' < 1; 0 < b; 0 < b'
    covers: ...            # sections may repeat and span lines
    ortho: 0 ~ 1; a ~ a'; b ~ b'

'#' starts a comment. The names 0 and 1 are reserved for the bounds. Only
covers are written; the order is their reflexive-transitive closure. The
JSON twin is an object with keys "elements", "covers", "ortho" and an
optional "name". Exports are deterministic, so a parse/export round trip
is the identity on canonical ids.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import SpecSemanticError, SpecSyntaxError
from .lattice import DEFAULT_MAX_ELEMENTS, OmlLattice, iter_bits

_DIRECTIVE_RE = re.compile(r"^\s*(lattice\b|elements\s*:|covers\s*:|ortho\s*:)")
_NAME_RE = re.compile(r"[^\s,;<~:#]+")
_COVERS_PER_LINE = 8


@dataclass(frozen=True)
class SpecStructure:
    """Parsed but not yet axiom-checked lattice data."""

    name: str
    element_names: tuple[str, ...]
    up: tuple[int, ...]
    ortho: tuple[int, ...]


@dataclass
class _Segment:
    line: int
    column: int  # 1-based column of the first character of `text`
    text: str


def parse_lattice_spec(text: str, *, max_elements: int = DEFAULT_MAX_ELEMENTS) -> OmlLattice:
    """Parse text (grammar above) or JSON into a validated lattice."""
    structure = parse_structure(text)
    return OmlLattice(structure.element_names, structure.up, structure.ortho,
                      max_elements=max_elements)


def parse_structure(text: str) -> SpecStructure:
    """Parse and resolve names/covers/ortho without running the axiom checks."""
    if text.lstrip().startswith("{"):
        return _structure_from_json(text)

    name = ""
    saw_header = False
    sections: dict[str, list[_Segment]] = {"elements": [], "covers": [], "ortho": []}
    current: str | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _DIRECTIVE_RE.match(line)
        if m:
            directive = m.group(1).rstrip(": \t")
            rest_col = m.end() + 1
            rest = line[m.end():]
            if directive == "lattice":
                if saw_header:
                    raise SpecSyntaxError("duplicate 'lattice' header", lineno, 1)
                saw_header = True
                name = rest.strip()
                if not name:
                    raise SpecSyntaxError("missing lattice name", lineno, rest_col)
                if not _NAME_RE.fullmatch(name):
                    raise SpecSyntaxError(f"bad lattice name {name!r}", lineno, rest_col)
                current = None
            else:
                current = directive
                sections[current].append(_Segment(lineno, rest_col, rest))
        else:
            if current is None:
                col = len(line) - len(line.lstrip()) + 1
                raise SpecSyntaxError("expected 'lattice', 'elements:', 'covers:' or 'ortho:'",
                                      lineno, col)
            col = len(line) - len(line.lstrip()) + 1
            sections[current].append(_Segment(lineno, col, line.strip()))

    if not saw_header:
        raise SpecSyntaxError("missing 'lattice <name>' header", 1, 1)
    if not sections["elements"]:
        raise SpecSyntaxError("missing 'elements:' section", 1, 1)

    element_names = _parse_name_list(sections["elements"])
    covers = _parse_pair_list(sections["covers"], "<")
    ortho_pairs = _parse_pair_list(sections["ortho"], "~")
    return _resolve(name or "L", element_names, covers, ortho_pairs)


def _parse_name_list(segments: list[_Segment]) -> list[tuple[str, int, int]]:
    out = []
    for seg in segments:
        col = seg.column
        for chunk in seg.text.split(","):
            stripped = chunk.strip()
            offset = col + (len(chunk) - len(chunk.lstrip()))
            if stripped:
                if not _NAME_RE.fullmatch(stripped):
                    raise SpecSyntaxError(f"bad element name {stripped!r}", seg.line, offset)
                out.append((stripped, seg.line, offset))
            elif chunk != "":
                raise SpecSyntaxError("empty element name", seg.line, offset)
            col += len(chunk) + 1
    return out


def _parse_pair_list(segments: list[_Segment], sep: str) -> list[tuple[str, str, int, int]]:
    out = []
    for seg in segments:
        col = seg.column
        for entry in seg.text.split(";"):
            stripped = entry.strip()
            offset = col + (len(entry) - len(entry.lstrip()))
            if stripped:
                parts = stripped.split(sep)
                if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
                    raise SpecSyntaxError(f"expected '<name> {sep} <name>', got {stripped!r}",
                                          seg.line, offset)
                left, right = parts[0].strip(), parts[1].strip()
                for token in (left, right):
                    if not _NAME_RE.fullmatch(token):
                        raise SpecSyntaxError(f"bad element name {token!r}", seg.line, offset)
                out.append((left, right, seg.line, offset))
            col += len(entry) + 1
    return out


def _structure_from_json(text: str) -> SpecStructure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(f"bad JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SpecSemanticError("JSON spec must be an object")
    for key in ("elements", "covers", "ortho"):
        if key not in doc:
            raise SpecSemanticError(f"JSON spec missing key {key!r}")
    try:
        names = [(str(x), 0, 0) for x in doc["elements"]]
        covers = [(str(a), str(b), 0, 0) for a, b in doc["covers"]]
        ortho = [(str(a), str(b), 0, 0) for a, b in doc["ortho"]]
    except (TypeError, ValueError):
        raise SpecSemanticError("'covers' and 'ortho' must be lists of name pairs") from None
    return _resolve(str(doc.get("name", "L")), names, covers, ortho)


def _resolve(name: str,
             element_names: list[tuple[str, int, int]],
             covers: list[tuple[str, str, int, int]],
             ortho_pairs: list[tuple[str, str, int, int]]) -> SpecStructure:
    names = [e[0] for e in element_names]
    seen: dict[str, int] = {}
    for label, line, col in element_names:
        if label in seen:
            raise SpecSemanticError(f"duplicate element name {label!r} (line {line})")
        seen[label] = len(seen)
    n = len(names)

    def resolve(label: str, line: int, col: int) -> int:
        if label not in seen:
            raise SpecSemanticError(f"unknown element name {label!r} (line {line})")
        return seen[label]

    cover_edges = []
    for a, b, line, col in covers:
        ia, ib = resolve(a, line, col), resolve(b, line, col)
        if ia == ib:
            raise SpecSemanticError(f"self-cover {a!r} < {b!r} (line {line})")
        cover_edges.append((ia, ib))

    # reflexive-transitive closure of the cover relation
    up = [1 << i for i in range(n)]
    changed = True
    while changed:
        changed = False
        for a, b in cover_edges:
            merged = up[a] | up[b]
            if merged != up[a]:
                up[a] = merged
                changed = True
    for a in range(n):
        for b in iter_bits(up[a]):
            if b != a and up[b] >> a & 1:
                raise SpecSemanticError(
                    f"cover relation is cyclic through {names[a]!r} and {names[b]!r}")

    ortho = [-1] * n
    for a, b, line, col in ortho_pairs:
        ia, ib = resolve(a, line, col), resolve(b, line, col)
        for x, y in ((ia, ib), (ib, ia)):
            if ortho[x] not in (-1, y):
                raise SpecSemanticError(
                    f"orthocomplement pairing not involutive at {names[x]!r} (line {line})")
            ortho[x] = y
    missing = [names[i] for i in range(n) if ortho[i] == -1]
    if missing:
        raise SpecSemanticError(f"orthocomplement pairing misses {missing[0]!r}")

    full = (1 << n) - 1
    if "0" in seen and up[seen["0"]] != full:
        raise SpecSemanticError("the name '0' is reserved for the least element")
    if "1" in seen:
        idx = seen["1"]
        if any(not up[x] >> idx & 1 for x in range(n)):
            raise SpecSemanticError("the name '1' is reserved for the greatest element")

    return SpecStructure(name, tuple(names), tuple(up), tuple(ortho))


# -- export -------------------------------------------------------------------

def cover_pairs(lat: OmlLattice) -> list[tuple[int, int]]:
    """All (a, b) with b covering a, sorted by ids."""
    out = []
    for a in range(lat.n):
        for b in iter_bits(lat.up[a] & ~(1 << a)):
            if lat.up[a] & lat.down[b] == (1 << a) | (1 << b):
                out.append((a, b))
    return sorted(out)


def ortho_pairs(lat: OmlLattice) -> list[tuple[int, int]]:
    """Each orthocomplement pair once, ordered and sorted by ids."""
    return sorted({(min(x, lat.ortho[x]), max(x, lat.ortho[x])) for x in range(lat.n)})


def to_spec_text(lat: OmlLattice, name: str = "L") -> str:
    lines = [f"lattice {name}"]
    lines.append("elements: " + ", ".join(lat.names))
    pairs = cover_pairs(lat)
    for i in range(0, len(pairs), _COVERS_PER_LINE):
        chunk = pairs[i:i + _COVERS_PER_LINE]
        lines.append("covers: " + "; ".join(
            f"{lat.names[a]} < {lat.names[b]}" for a, b in chunk))
    lines.append("ortho: " + "; ".join(
        f"{lat.names[a]} ~ {lat.names[b]}" for a, b in ortho_pairs(lat)))
    return "\n".join(lines) + "\n"


def to_spec_json(lat: OmlLattice, name: str = "L") -> str:
    doc = {
        "name": name,
        "elements": list(lat.names),
        "covers": [[lat.names[a], lat.names[b]] for a, b in cover_pairs(lat)],
        "ortho": [[lat.names[a], lat.names[b]] for a, b in ortho_pairs(lat)],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
