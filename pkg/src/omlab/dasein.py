"""Daseinisation of lattice elements and its upper adjoint.

Daseinisation approximates an element from above inside every context: the
value at a context is the least member of that context above the element,
and the associated subobject selects the context atoms under that value.
The upper adjoint goes back down: it is the meet, over all contexts, of
the member determined by the selected atoms, and it recovers every element
(the round trip on the lattice side is the identity, while on the
subobject side it only ever shrinks).

All approximation tables are precomputed at construction; higher layers
do table lookups only.
"""

from __future__ import annotations

from .contexts import ContextGraph, least_member_above
from .errors import NoContextsError
from .lattice import OmlLattice
from .presheaf import Subobject


class DaseinMap:
    """Cached daseinisation tables for one lattice and its context graph."""

    __slots__ = ("lattice", "graph", "_approx", "_masks")

    def __init__(self, lattice: OmlLattice, graph: ContextGraph):
        if not graph.contexts:
            raise NoContextsError(
                "the lattice has no Boolean context, so daseinisation is undefined")
        self.lattice = lattice
        self.graph = graph
        self._approx = tuple(
            tuple(least_member_above(lattice, ctx.mask, x) for ctx in graph.contexts)
            for x in range(lattice.n))
        self._masks = tuple(
            tuple(graph.atom_mask_below(ci, self._approx[x][ci])
                  for ci in range(len(graph.contexts)))
            for x in range(lattice.n))

    def dasein_to(self, x: int, ci: int) -> int:
        """Least member of context `ci` above x."""
        return self._approx[x][ci]

    def daseinise(self, x: int) -> Subobject:
        """The subobject selecting, per context, the atoms under dasein_to(x, .)."""
        return Subobject(self.graph, self._masks[x])

    def upper_adjoint(self, s: Subobject) -> int:
        """Largest element whose daseinisation lies below s.

        Computed as the meet over contexts of the member named by the
        selected atoms; an empty selection contributes 0.
        """
        if s.graph is not self.graph:
            raise ValueError("subobject belongs to a different context graph")
        lat = self.lattice
        out = lat.one
        for ci in range(len(self.graph.contexts)):
            out = lat.meet_table[out][self.graph.member_of_atom_mask(ci, s.masks[ci])]
        return out

    def preimage_element(self, s: Subobject) -> int | None:
        """The element daseinising to s, if s is in the image.

        Injectivity plus the round-trip identity make the adjoint the only
        possible preimage, so one comparison decides membership.
        """
        u = self.upper_adjoint(s)
        return u if self.daseinise(u) == s else None
