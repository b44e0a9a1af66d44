"""Subobjects of the context presheaf and their bi-Heyting algebra.

A subobject selects, per context, a subset of that context's atoms, closed
under the restriction maps: an atom selected in a big context has its
restriction selected in every smaller one. Meets and joins are
componentwise, which makes the whole lattice distributive; implication is
the usual presheaf one, and co-implication is the left adjoint of join,
computed here as the restriction closure of the componentwise difference.

The raw componentwise complement of a subobject need not be closed; it is
kept available as a plain per-context family because the preservation
conditions of the equivalence report are stated against that pointwise
reading (see `pointwise_complement` and the conegation audit).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import OracleBoundExceeded
from .contexts import ContextGraph
from .lattice import iter_bits, popcount

DEFAULT_ORACLE_BOUND = 1 << 20


class Subobject:
    """An immutable closed family of atom selections, one bitmask per context."""

    __slots__ = ("graph", "masks")

    def __init__(self, graph: ContextGraph, masks: Sequence[int]):
        if len(masks) != len(graph.contexts):
            raise ValueError("one atom mask per context is required")
        self.graph = graph
        self.masks = tuple(masks)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Subobject)
                and self.graph is other.graph
                and self.masks == other.masks)

    def __hash__(self) -> int:
        return hash(self.masks)

    def atoms_at(self, ci: int) -> tuple[int, ...]:
        ctx = self.graph.contexts[ci]
        return tuple(ctx.atoms[p] for p in iter_bits(self.masks[ci]))

    def atom_names(self) -> tuple[tuple[int, tuple[str, ...]], ...]:
        names = self.graph.lattice.names
        return tuple((ci, tuple(names[a] for a in self.atoms_at(ci)))
                     for ci in range(len(self.graph.contexts)))

    def __repr__(self) -> str:
        parts = ", ".join(
            f"B{ci}:{{{','.join(names)}}}" for ci, names in self.atom_names())
        return f"Subobject({parts})"


def _check_same_graph(s: Subobject, t: Subobject) -> ContextGraph:
    if s.graph is not t.graph:
        raise ValueError("subobjects belong to different context graphs")
    return s.graph


def full_masks(graph: ContextGraph) -> tuple[int, ...]:
    return tuple((1 << len(c.atoms)) - 1 for c in graph.contexts)


def bottom(graph: ContextGraph) -> Subobject:
    return Subobject(graph, (0,) * len(graph.contexts))


def top(graph: ContextGraph) -> Subobject:
    return Subobject(graph, full_masks(graph))


def leq(s: Subobject, t: Subobject) -> bool:
    _check_same_graph(s, t)
    return all(sm & ~tm == 0 for sm, tm in zip(s.masks, t.masks))


def meet(s: Subobject, t: Subobject) -> Subobject:
    graph = _check_same_graph(s, t)
    return Subobject(graph, tuple(a & b for a, b in zip(s.masks, t.masks)))


def join(s: Subobject, t: Subobject) -> Subobject:
    graph = _check_same_graph(s, t)
    return Subobject(graph, tuple(a | b for a, b in zip(s.masks, t.masks)))


def meet_all(graph: ContextGraph, items: Iterable[Subobject]) -> Subobject:
    out = top(graph)
    for s in items:
        out = meet(out, s)
    return out


def join_all(graph: ContextGraph, items: Iterable[Subobject]) -> Subobject:
    out = bottom(graph)
    for s in items:
        out = join(out, s)
    return out


def is_closed(graph: ContextGraph, masks: Sequence[int]) -> bool:
    """Whether a raw family satisfies the restriction-closure requirement."""
    for (big, small), table in graph.restr.items():
        if big == small:
            continue
        for p in iter_bits(masks[big]):
            if not masks[small] >> table[p] & 1:
                return False
    return True


def restriction_closure(graph: ContextGraph, masks: Sequence[int]) -> Subobject:
    """Least subobject containing the family: push selections down inclusions.

    Proper inclusions strictly decrease context size, so one sweep over
    source contexts in decreasing size order reaches the fixpoint.
    """
    out = list(masks)
    for big in reversed(range(len(graph.contexts))):
        bm = out[big]
        if not bm:
            continue
        for small in graph.below[big]:
            if small == big:
                continue
            table = graph.restr[(big, small)]
            add = 0
            for p in iter_bits(bm):
                add |= 1 << table[p]
            out[small] |= add
    return Subobject(graph, out)


def heyting_implies(s: Subobject, t: Subobject) -> Subobject:
    """Largest subobject R with R ^ S <= T.

    At a context B this keeps the atoms whose restriction to every context
    inside B (including B itself) avoids S-without-T there.
    """
    graph = _check_same_graph(s, t)
    full = full_masks(graph)
    out = []
    for big in range(len(graph.contexts)):
        bad = 0
        for small in graph.below[big]:
            table = graph.restr[(big, small)]
            sm, tm = s.masks[small], t.masks[small]
            for p, q in enumerate(table):
                if sm >> q & 1 and not tm >> q & 1:
                    bad |= 1 << p
        out.append(full[big] & ~bad)
    return Subobject(graph, out)


def heyting_not(s: Subobject) -> Subobject:
    return heyting_implies(s, bottom(s.graph))


def coheyting_implies(s: Subobject, t: Subobject) -> Subobject:
    """Least subobject R with S <= T v R (left adjoint of joining with T)."""
    graph = _check_same_graph(s, t)
    return restriction_closure(
        graph, tuple(a & ~b for a, b in zip(s.masks, t.masks)))


def coheyting_not(t: Subobject) -> Subobject:
    """Least subobject R with T v R = top (the closure of the complement)."""
    return coheyting_implies(top(t.graph), t)


def pointwise_complement(t: Subobject) -> tuple[int, ...]:
    """Raw componentwise complement, as a family of atom masks.

    Not closed in general: a complement atom in a big context may restrict
    into the selected part of a smaller one. Kept for the conegation audit
    and for the pointwise reading of the preservation conditions.
    """
    return tuple(f & ~m for f, m in zip(full_masks(t.graph), t.masks))


def enumerate_all_subobjects(graph: ContextGraph,
                             *, bound: int = DEFAULT_ORACLE_BOUND) -> tuple[Subobject, ...]:
    """Every subobject, by assigning contexts in decreasing size order.

    Each context may select any superset of what the already-assigned
    larger contexts force on it, so exactly the closed families appear.
    Refuses to run when the product of per-context powerset sizes exceeds
    `bound`.
    """
    candidates = 1
    for c in graph.contexts:
        candidates <<= len(c.atoms)
        if candidates > bound:
            raise OracleBoundExceeded(
                f"candidate subobject families exceed the bound of {bound}")
    order = tuple(reversed(range(len(graph.contexts))))
    full = full_masks(graph)
    masks = [0] * len(graph.contexts)
    results: list[Subobject] = []

    def assign(k: int) -> None:
        if k == len(order):
            results.append(Subobject(graph, tuple(masks)))
            return
        ci = order[k]
        forced = 0
        for big in graph.above[ci]:
            if big == ci:
                continue
            table = graph.restr[(big, ci)]
            for p in iter_bits(masks[big]):
                forced |= 1 << table[p]
        free = tuple(iter_bits(full[ci] & ~forced))
        for choice in range(1 << len(free)):
            extra = 0
            for t, p in enumerate(free):
                if choice >> t & 1:
                    extra |= 1 << p
            masks[ci] = forced | extra
            assign(k + 1)
        masks[ci] = 0

    assign(0)
    results.sort(key=lambda s: s.masks)
    return tuple(results)


def subobject_size(s: Subobject) -> int:
    """Total number of selected atoms across contexts (reporting aid)."""
    return sum(popcount(m) for m in s.masks)
