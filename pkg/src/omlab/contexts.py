"""Boolean contexts of a lattice and the restriction maps between them.

A context is a Boolean subalgebra with at least four elements; the trivial
subalgebra {0, 1} is excluded by default and available behind a flag for
experiments. Context atoms stand in for the two-valued homomorphisms of
the subalgebra, so the restriction map along an inclusion sends an atom of
the larger context to the least member of the smaller one above it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeCapExceeded, SubalgebraRejected
from .lattice import OmlLattice, commutes, iter_bits, popcount

DEFAULT_MAX_CONTEXTS = 4096


@dataclass(frozen=True)
class Context:
    """A Boolean subalgebra: element mask, sorted ids, and its own atoms.

    `index` is the position in the owning graph, or None for a standalone
    context produced by `generated_subalgebra`.
    """

    index: int | None
    mask: int
    elems: tuple[int, ...]
    atoms: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.elems)


def closure_mask(lat: OmlLattice, mask: int) -> int:
    """Smallest subset containing mask and {0, 1}, closed under meet/join/ortho."""
    s = mask | (1 << lat.zero) | (1 << lat.one)
    while True:
        new = s
        elems = tuple(iter_bits(s))
        for i, x in enumerate(elems):
            new |= 1 << lat.ortho[x]
            for y in elems[i:]:
                new |= 1 << lat.meet_table[x][y]
                new |= 1 << lat.join_table[x][y]
        if new == s:
            return s
        s = new


def minimal_nonzero(lat: OmlLattice, mask: int) -> tuple[int, ...]:
    """Minimal nonzero members of a subset containing 0, ascending."""
    zero_bit = 1 << lat.zero
    return tuple(x for x in iter_bits(mask)
                 if x != lat.zero and lat.down[x] & mask == (1 << x) | zero_bit)


def least_member_above(lat: OmlLattice, mask: int, x: int) -> int:
    """The least element of the subset above x (the subset must be a context)."""
    return lat.meet_all(iter_bits(lat.up[x] & mask))


def _context_from_mask(lat: OmlLattice, mask: int, index: int | None) -> Context:
    return Context(index=index, mask=mask, elems=tuple(iter_bits(mask)),
                   atoms=minimal_nonzero(lat, mask))


def generated_subalgebra(lat: OmlLattice, seed: tuple[int, ...] | list[int] | set[int],
                         *, allow_trivial: bool = False) -> Context:
    """Close a pairwise-commuting seed to a context.

    Rejects seeds with a non-commuting pair (naming it) and closures that
    stay at the trivial subalgebra {0, 1}.
    """
    ids = sorted(set(seed))
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            if not commutes(lat, a, b):
                raise SubalgebraRejected(
                    f"seed elements {lat.names[a]} and {lat.names[b]} do not commute")
    mask = 0
    for x in ids:
        mask |= 1 << x
    closed = closure_mask(lat, mask)
    if popcount(closed) < 4 and not allow_trivial:
        raise SubalgebraRejected("seed generates only the trivial subalgebra {0, 1}")
    return _context_from_mask(lat, closed, None)


class ContextGraph:
    """All contexts of a lattice, their inclusion order, and restriction maps.

    Contexts are sorted by (size, element ids); ids index that order.
    `restr[(big, small)]` maps atom positions of the big context to atom
    positions of the small one; identity pairs are included. Immutable
    after construction.
    """

    __slots__ = ("lattice", "contexts", "include_trivial", "below", "above",
                 "restr", "_atom_pos", "_by_mask")

    def __init__(self, lat: OmlLattice, *, include_trivial: bool = False,
                 max_contexts: int = DEFAULT_MAX_CONTEXTS):
        self.lattice = lat
        self.include_trivial = include_trivial
        n = lat.n

        comm = [0] * n
        for x in range(n):
            for y in range(x, n):
                if commutes(lat, x, y):
                    comm[x] |= 1 << y
                    comm[y] |= 1 << x

        trivial = closure_mask(lat, 0)
        seen = {trivial}
        queue = [trivial]
        while queue:
            mask = queue.pop()
            for x in range(n):
                if mask >> x & 1 or mask & ~comm[x]:
                    continue
                new = closure_mask(lat, mask | (1 << x))
                if new not in seen:
                    seen.add(new)
                    if len(seen) > max_contexts:
                        raise SizeCapExceeded(
                            f"more than {max_contexts} contexts; raise the bound to proceed")
                    queue.append(new)

        masks = sorted((m for m in seen
                        if popcount(m) >= 4 or (include_trivial and m == trivial)),
                       key=lambda m: (popcount(m), tuple(iter_bits(m))))
        self.contexts = tuple(_context_from_mask(lat, m, i) for i, m in enumerate(masks))
        self._by_mask = {c.mask: c.index for c in self.contexts}
        self._atom_pos = tuple({a: p for p, a in enumerate(c.atoms)} for c in self.contexts)

        below: list[list[int]] = [[] for _ in self.contexts]
        above: list[list[int]] = [[] for _ in self.contexts]
        restr: dict[tuple[int, int], tuple[int, ...]] = {}
        for small in self.contexts:
            for big in self.contexts:
                if small.mask & ~big.mask:
                    continue
                below[big.index].append(small.index)
                above[small.index].append(big.index)
                restr[(big.index, small.index)] = tuple(
                    self._restricted_pos(big, small))
        self.below = tuple(tuple(ids) for ids in below)
        self.above = tuple(tuple(ids) for ids in above)
        self.restr = restr

    def _restricted_pos(self, big: Context, small: Context) -> list[int]:
        lat = self.lattice
        out = []
        for a in big.atoms:
            target = least_member_above(lat, small.mask, a)
            pos = self._atom_pos[small.index].get(target)
            if pos is None:
                raise SubalgebraRejected(
                    f"restriction of atom {lat.names[a]} is not an atom of the smaller context")
            out.append(pos)
        return out

    # -- lookups -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.contexts)

    def context_index(self, mask: int) -> int | None:
        return self._by_mask.get(mask)

    def atom_position(self, ci: int, element: int) -> int:
        pos = self._atom_pos[ci].get(element)
        if pos is None:
            raise ValueError(
                f"{self.lattice.names[element]} is not an atom of context B{ci}")
        return pos

    def proper_inclusions(self) -> tuple[tuple[int, int], ...]:
        """(small, big) pairs with small strictly included in big."""
        return tuple((s, b) for (b, s) in sorted(self.restr) if s != b)

    def cover_inclusions(self) -> tuple[tuple[int, int], ...]:
        """Proper inclusions with no context strictly between."""
        proper = set(self.proper_inclusions())
        return tuple((s, b) for (s, b) in sorted(proper)
                     if not any((s, m) in proper and (m, b) in proper
                                for m in range(len(self.contexts))))

    # -- the atom/member correspondence ---------------------------------------

    def atoms_below(self, ci: int, member: int) -> tuple[int, ...]:
        """Context atoms below a member of the context (an atom subset)."""
        ctx = self.contexts[ci]
        if not ctx.mask >> member & 1:
            raise ValueError(
                f"{self.lattice.names[member]} is not a member of context B{ci}")
        down = self.lattice.down[member]
        return tuple(a for a in ctx.atoms if down >> a & 1)

    def atom_mask_below(self, ci: int, member: int) -> int:
        """Same as atoms_below but as an atom-position bitmask."""
        ctx = self.contexts[ci]
        if not ctx.mask >> member & 1:
            raise ValueError(
                f"{self.lattice.names[member]} is not a member of context B{ci}")
        down = self.lattice.down[member]
        mask = 0
        for p, a in enumerate(ctx.atoms):
            if down >> a & 1:
                mask |= 1 << p
        return mask

    def join_of_atoms(self, ci: int, atom_ids) -> int:
        """Inverse of atoms_below: the join of an atom subset inside the lattice."""
        ctx = self.contexts[ci]
        ids = tuple(atom_ids)
        for a in ids:
            if a not in self._atom_pos[ci]:
                raise ValueError(
                    f"{self.lattice.names[a]} is not an atom of context B{ci}")
        return self.lattice.join_all(ids)

    def member_of_atom_mask(self, ci: int, mask: int) -> int:
        ctx = self.contexts[ci]
        return self.lattice.join_all(ctx.atoms[p] for p in iter_bits(mask))

    def restrict_atom(self, big: int, small: int, atom: int) -> int:
        """Restriction of an atom of the big context along an inclusion."""
        if (big, small) not in self.restr:
            raise ValueError(f"context B{small} is not included in B{big}")
        pos = self.atom_position(big, atom)
        return self.contexts[small].atoms[self.restr[(big, small)][pos]]

    def label(self, ci: int) -> str:
        ctx = self.contexts[ci]
        return f"B{ci}{self.lattice.set_names(ctx.mask)}"


def enumerate_contexts(lat: OmlLattice, *, include_trivial: bool = False,
                       max_contexts: int = DEFAULT_MAX_CONTEXTS) -> ContextGraph:
    """Every Boolean subalgebra of size >= 4 (each once), with restriction maps."""
    return ContextGraph(lat, include_trivial=include_trivial, max_contexts=max_contexts)
