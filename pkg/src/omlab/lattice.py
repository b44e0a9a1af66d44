"""Finite orthomodular lattices with exhaustively checked axioms.

Elements are dense integer ids; element subsets are Python int bitmasks.
The order is stored as per-element up/down masks, and meet/join tables are
materialized at construction time and verified against the order, so every
later operation is a table lookup. Instances are immutable after
construction and safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import AxiomViolation, SizeCapExceeded

DEFAULT_MAX_ELEMENTS = 64

# Exhaustive subset scans (two-valued homomorphisms, ultrafilters) walk all
# 2^n candidate subsets bit-parallel; beyond this width the scan is refused.
SUBSET_SCAN_LIMIT = 20

BOOLEAN = "boolean"
IRREDUCIBLE = "irreducible"
NEITHER = "neither"

_ATOM_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of `mask` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class AxiomCheck:
    """One row of a validation report. `ok` is None when a prerequisite failed."""

    name: str
    ok: bool | None
    witness: str = ""


@dataclass(frozen=True)
class Filter:
    """A lattice filter given by its member set (element ids)."""

    members: frozenset[int]


class CommuteEquivalents(NamedTuple):
    """The four equivalent formulations of commutation, each evaluated directly."""

    ab: bool            # a == (a ∧ b) ∨ (a ∧ b')
    ba: bool            # b == (b ∧ a) ∨ (b ∧ a')
    meet_identity: bool  # a ∧ (a' ∨ b) == a ∧ b
    partition_is_one: bool  # the four meets of {a,a'} x {b,b'} join to 1


class Classification(NamedTuple):
    kind: str      # BOOLEAN, IRREDUCIBLE, or NEITHER
    atomic: bool


class OmlLattice:
    """A validated finite orthomodular lattice.

    Fields:
      names       per-element labels, index = canonical id
      up[i]       bitmask of {j | i <= j} (includes i)
      down[i]     bitmask of {j | j <= i}
      meet_table, join_table   n x n id tables
      ortho       orthocomplement permutation
      zero, one   ids of the bounds
      atom_ids    ids covering zero, ascending
    """

    __slots__ = ("names", "up", "down", "meet_table", "join_table", "ortho",
                 "zero", "one", "atom_ids", "_name_to_id")

    def __init__(self, names: Sequence[str], up: Sequence[int], ortho: Sequence[int],
                 *, max_elements: int = DEFAULT_MAX_ELEMENTS):
        if len(set(names)) != len(names):
            raise ValueError("element names must be unique")
        report = axiom_report(names, up, ortho, max_elements=max_elements)
        for check in report:
            if check.ok is False:
                raise AxiomViolation(check.name, check.witness)
        n = len(names)
        full = (1 << n) - 1
        self.names = tuple(names)
        self.up = tuple(up)
        self.down = tuple(_invert_masks(up))
        self.ortho = tuple(ortho)
        self.zero = self.up.index(full)
        self.one = self.down.index(full)
        down_index = {m: i for i, m in enumerate(self.down)}
        up_index = {m: i for i, m in enumerate(self.up)}
        self.meet_table = tuple(
            tuple(down_index[self.down[a] & self.down[b]] for b in range(n))
            for a in range(n))
        self.join_table = tuple(
            tuple(up_index[self.up[a] & self.up[b]] for b in range(n))
            for a in range(n))
        self.atom_ids = tuple(a for a in range(n)
                              if a != self.zero
                              and self.down[a] == (1 << a) | (1 << self.zero))
        self._name_to_id = {name: i for i, name in enumerate(self.names)}

    # -- basic accessors ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.names)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def meet_all(self, ids: Iterable[int]) -> int:
        out = self.one
        for x in ids:
            out = self.meet_table[out][x]
        return out

    def join_all(self, ids: Iterable[int]) -> int:
        out = self.zero
        for x in ids:
            out = self.join_table[out][x]
        return out

    def id_of(self, name: str) -> int:
        try:
            return self._name_to_id[name]
        except KeyError:
            raise KeyError(f"no element named {name!r}") from None

    def name_of(self, x: int) -> str:
        return self.names[x]

    def set_names(self, mask: int) -> str:
        return "{" + ",".join(self.names[i] for i in iter_bits(mask)) + "}"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, OmlLattice)
                and self.names == other.names
                and self.up == other.up
                and self.ortho == other.ortho)

    def __hash__(self) -> int:
        return hash((self.names, self.up, self.ortho))

    def __repr__(self) -> str:
        return f"OmlLattice(n={self.n}, names={list(self.names)!r})"


def _invert_masks(up: Sequence[int]) -> list[int]:
    n = len(up)
    down = [0] * n
    for i in range(n):
        m = up[i]
        for j in iter_bits(m):
            down[j] |= 1 << i
    return down


def axiom_report(names: Sequence[str], up: Sequence[int], ortho: Sequence[int],
                 *, max_elements: int = DEFAULT_MAX_ELEMENTS) -> list[AxiomCheck]:
    """Check every lattice/orthocomplement axiom, reporting witnesses.

    Checks run in dependency order; a check whose prerequisite failed is
    reported with ok=None (skipped) rather than a cascading failure.
    """
    checks: list[AxiomCheck] = []
    n = len(names)

    if n > max_elements:
        raise SizeCapExceeded(f"{n} elements exceeds the cap of {max_elements}")
    if n < 2:
        checks.append(AxiomCheck("bounds", False,
                                 "a degenerate lattice with 0 = 1 is rejected"))
        return checks

    full = (1 << n) - 1
    ok_order = True
    witness = ""
    for a in range(n):
        if not up[a] >> a & 1:
            ok_order, witness = False, f"{names[a]} not <= itself"
            break
        for b in iter_bits(up[a]):
            if b != a and up[b] >> a & 1:
                ok_order, witness = False, f"{names[a]} <= {names[b]} <= {names[a]}"
                break
            if up[b] & ~up[a]:
                c = next(iter_bits(up[b] & ~up[a]))
                ok_order, witness = False, (
                    f"{names[a]} <= {names[b]} <= {names[c]} but not {names[a]} <= {names[c]}")
                break
        if not ok_order:
            break
    checks.append(AxiomCheck("partial-order", ok_order, witness))
    if not ok_order:
        checks.extend(AxiomCheck(name, None, "skipped") for name in (
            "bounds", "lattice-totality", "meet-join-consistency",
            "ortho-involution", "ortho-order-reversing",
            "complement-laws", "orthomodular-law"))
        return checks

    down = _invert_masks(up)
    zero = up.index(full) if full in up else None
    one = down.index(full) if full in down else None
    ok_bounds = zero is not None and one is not None
    checks.append(AxiomCheck(
        "bounds", ok_bounds,
        "" if ok_bounds else "no global least/greatest element"))
    if not ok_bounds:
        checks.extend(AxiomCheck(name, None, "skipped") for name in (
            "lattice-totality", "meet-join-consistency", "ortho-involution",
            "ortho-order-reversing", "complement-laws", "orthomodular-law"))
        return checks

    down_index = {m: i for i, m in enumerate(down)}
    up_index = {m: i for i, m in enumerate(up)}
    meet: list[list[int | None]] = [[None] * n for _ in range(n)]
    join: list[list[int | None]] = [[None] * n for _ in range(n)]
    ok_total = True
    witness = ""
    for a in range(n):
        for b in range(a, n):
            m = down_index.get(down[a] & down[b])
            j = up_index.get(up[a] & up[b])
            if m is None or j is None:
                kind = "meet" if m is None else "join"
                ok_total, witness = False, f"pair ({names[a]}, {names[b]}) has no {kind}"
                break
            meet[a][b] = meet[b][a] = m
            join[a][b] = join[b][a] = j
        if not ok_total:
            break
    checks.append(AxiomCheck("lattice-totality", ok_total, witness))
    if not ok_total:
        checks.extend(AxiomCheck(name, None, "skipped") for name in (
            "meet-join-consistency", "ortho-involution", "ortho-order-reversing",
            "complement-laws", "orthomodular-law"))
        return checks

    # glb/lub property spelled out against the raw order, not just table lookup
    ok_tables = True
    witness = ""
    for a in range(n):
        for b in range(a, n):
            m, j = meet[a][b], join[a][b]
            if down[m] != down[a] & down[b] or up[j] != up[a] & up[b]:
                ok_tables, witness = False, f"tables disagree with order at ({names[a]}, {names[b]})"
                break
        if not ok_tables:
            break
    checks.append(AxiomCheck("meet-join-consistency", ok_tables, witness))

    ok_inv = True
    witness = ""
    for a in range(n):
        if not 0 <= ortho[a] < n or ortho[ortho[a]] != a:
            ok_inv, witness = False, f"orthocomplement not involutive at {names[a]}"
            break
    checks.append(AxiomCheck("ortho-involution", ok_inv, witness))

    ok_rev: bool | None = None
    ok_comp: bool | None = None
    ok_oml: bool | None = None
    w_rev = w_comp = w_oml = "skipped"
    if ok_inv:
        ok_rev, w_rev = True, ""
        for a in range(n):
            for b in iter_bits(up[a]):
                if not up[ortho[b]] >> ortho[a] & 1:
                    ok_rev, w_rev = False, (
                        f"{names[a]} <= {names[b]} but not "
                        f"{names[ortho[b]]} <= {names[ortho[a]]}")
                    break
            if not ok_rev:
                break

        ok_comp, w_comp = True, ""
        for a in range(n):
            if join[a][ortho[a]] != one or meet[a][ortho[a]] != zero:
                ok_comp, w_comp = False, (
                    f"{names[a]} and {names[ortho[a]]} are not complements")
                break

        ok_oml, w_oml = True, ""
        for a in range(n):
            for b in iter_bits(up[a]):
                if join[a][meet[b][ortho[a]]] != b:
                    ok_oml, w_oml = False, (
                        f"{names[a]} <= {names[b]} but "
                        f"{names[b]} != {names[a]} v ({names[b]} ^ {names[ortho[a]]})")
                    break
            if not ok_oml:
                break
    checks.append(AxiomCheck("ortho-order-reversing", ok_rev, w_rev))
    checks.append(AxiomCheck("complement-laws", ok_comp, w_comp))
    checks.append(AxiomCheck("orthomodular-law", ok_oml, w_oml))
    return checks


# -- constructors -----------------------------------------------------------

def make_boolean(k: int, *, max_elements: int = DEFAULT_MAX_ELEMENTS) -> OmlLattice:
    """The powerset lattice on k atoms. Ids follow subset-bitmask order.

    Atoms are named a, b, c, ...; other elements concatenate their atom
    letters; the bounds are named 0 and 1.
    """
    if k < 1:
        raise ValueError("atom count must be at least 1")
    if k > len(_ATOM_LETTERS):
        raise SizeCapExceeded(f"no naming scheme beyond {len(_ATOM_LETTERS)} atoms")
    n = 1 << k
    if n > max_elements:
        raise SizeCapExceeded(f"2^{k} = {n} elements exceeds the cap of {max_elements}")
    names = []
    for s in range(n):
        if s == 0:
            names.append("0")
        elif s == n - 1:
            names.append("1")
        else:
            names.append("".join(_ATOM_LETTERS[i] for i in iter_bits(s)))
    up = [0] * n
    for s in range(n):
        for t in range(n):
            if s & t == s:
                up[s] |= 1 << t
    ortho = [s ^ (n - 1) for s in range(n)]
    return OmlLattice(names, up, ortho, max_elements=max_elements)


def make_mo(k: int, *, max_elements: int = DEFAULT_MAX_ELEMENTS) -> OmlLattice:
    """MO(k): bounds plus k incomparable orthocomplementary pairs.

    Ids in order 0, a, a', b, b', ..., 1. MO(1) coincides with the 4-element
    Boolean algebra; k >= 2 gives the standard non-Boolean witnesses.
    """
    if k < 1:
        raise ValueError("pair count must be at least 1")
    if k > len(_ATOM_LETTERS):
        raise SizeCapExceeded(f"no naming scheme beyond {len(_ATOM_LETTERS)} pairs")
    n = 2 * k + 2
    if n > max_elements:
        raise SizeCapExceeded(f"2*{k}+2 = {n} elements exceeds the cap of {max_elements}")
    names = ["0"]
    for i in range(k):
        names.extend((_ATOM_LETTERS[i], _ATOM_LETTERS[i] + "'"))
    names.append("1")
    one = n - 1
    full = (1 << n) - 1
    up = [full] + [(1 << x) | (1 << one) for x in range(1, n - 1)] + [1 << one]
    ortho = [one] + [x + 1 if x % 2 else x - 1 for x in range(1, n - 1)] + [0]
    return OmlLattice(names, up, ortho, max_elements=max_elements)


def direct_product(l1: OmlLattice, l2: OmlLattice,
                   *, max_elements: int = DEFAULT_MAX_ELEMENTS) -> OmlLattice:
    """Componentwise product. Element (i, j) gets id i*l2.n + j.

    Pairs are named "<left>.<right>" except the bounds, renamed 0 and 1.
    """
    n1, n2 = l1.n, l2.n
    n = n1 * n2
    if n > max_elements:
        raise SizeCapExceeded(f"{n1}*{n2} = {n} elements exceeds the cap of {max_elements}")
    names = []
    for i in range(n1):
        for j in range(n2):
            if (i, j) == (l1.zero, l2.zero):
                names.append("0")
            elif (i, j) == (l1.one, l2.one):
                names.append("1")
            else:
                names.append(f"{l1.names[i]}.{l2.names[j]}")
    up = [0] * n
    for i in range(n1):
        for j in range(n2):
            mask = 0
            for i2 in iter_bits(l1.up[i]):
                base = i2 * n2
                for j2 in iter_bits(l2.up[j]):
                    mask |= 1 << (base + j2)
            up[i * n2 + j] = mask
    ortho = [l1.ortho[i] * n2 + l2.ortho[j] for i in range(n1) for j in range(n2)]
    return OmlLattice(names, up, ortho, max_elements=max_elements)


# -- commutation, distributivity, center ------------------------------------

def commutes(lat: OmlLattice, a: int, b: int) -> bool:
    """True iff a = (a ^ b) v (a ^ b')."""
    m, j, o = lat.meet_table, lat.join_table, lat.ortho
    return j[m[a][b]][m[a][o[b]]] == a


def commute_equivalents(lat: OmlLattice, a: int, b: int) -> CommuteEquivalents:
    m, j, o = lat.meet_table, lat.join_table, lat.ortho
    four = j[j[m[a][b]][m[a][o[b]]]][j[m[o[a]][b]][m[o[a]][o[b]]]]
    return CommuteEquivalents(
        ab=commutes(lat, a, b),
        ba=commutes(lat, b, a),
        meet_identity=m[a][j[o[a]][b]] == m[a][b],
        partition_is_one=four == lat.one,
    )


def is_distributive_triple(lat: OmlLattice, a: int, b: int, c: int) -> bool:
    """Both distributive identities with c in the outer position."""
    m, j = lat.meet_table, lat.join_table
    return (m[j[a][b]][c] == j[m[a][c]][m[b][c]]
            and j[m[a][b]][c] == m[j[a][c]][j[b][c]])


def central_elements(lat: OmlLattice) -> tuple[int, ...]:
    """Elements forming a distributive triple with every pair.

    Computed as the set of elements commuting with everything, which agrees
    with the triple-scan definition (checked by the proposition battery).
    """
    return tuple(x for x in range(lat.n)
                 if all(commutes(lat, x, y) for y in range(lat.n)))


def center_by_triple_scan(lat: OmlLattice) -> tuple[int, ...]:
    """Direct triple-scan form of the center; cross-check for central_elements."""
    n = lat.n
    out = []
    for x in range(n):
        good = True
        for a in range(n):
            for b in range(n):
                if not (is_distributive_triple(lat, x, a, b)
                        and is_distributive_triple(lat, a, x, b)
                        and is_distributive_triple(lat, a, b, x)):
                    good = False
                    break
            if not good:
                break
        if good:
            out.append(x)
    return tuple(out)


def is_atomic(lat: OmlLattice) -> bool:
    """Every nonzero element has an atom below it (always true when finite)."""
    atom_mask = 0
    for a in lat.atom_ids:
        atom_mask |= 1 << a
    return all(lat.down[x] & atom_mask for x in range(lat.n) if x != lat.zero)


def classify(lat: OmlLattice) -> Classification:
    cen = central_elements(lat)
    if len(cen) == lat.n:
        kind = BOOLEAN
    elif set(cen) == {lat.zero, lat.one}:
        kind = IRREDUCIBLE
    else:
        kind = NEITHER
    return Classification(kind, is_atomic(lat))


def atoms(lat: OmlLattice) -> tuple[int, ...]:
    if not is_atomic(lat):  # impossible for finite lattices; defensive
        raise AxiomViolation("atomicity", "nonzero element with no atom below")
    return lat.atom_ids


# -- sublattices ------------------------------------------------------------

def sublattice(lat: OmlLattice, mask: int) -> tuple[OmlLattice, tuple[int, ...]]:
    """Extract the closed subset `mask` as a standalone lattice.

    The subset must contain the bounds and be closed under meet, join and
    orthocomplement. Returns the new lattice and the original ids in the
    new id order (ascending original id).
    """
    ids = tuple(iter_bits(mask))
    pos = {x: i for i, x in enumerate(ids)}
    if lat.zero not in pos or lat.one not in pos:
        raise ValueError("subset does not contain the bounds")
    for x in ids:
        if lat.ortho[x] not in pos:
            raise ValueError(f"subset not closed under orthocomplement at {lat.names[x]}")
        for y in ids:
            if lat.meet_table[x][y] not in pos or lat.join_table[x][y] not in pos:
                raise ValueError("subset not closed under meet/join")
    names = tuple(lat.names[x] for x in ids)
    up = [0] * len(ids)
    for i, x in enumerate(ids):
        for y in iter_bits(lat.up[x] & mask):
            up[i] |= 1 << pos[y]
    ortho = [pos[lat.ortho[x]] for x in ids]
    return OmlLattice(names, up, ortho, max_elements=max(DEFAULT_MAX_ELEMENTS, len(ids))), ids


# -- two-valued homomorphisms and ultrafilters ------------------------------

def _counting_pattern(e: int, n: int) -> int:
    """Bit i of the result is bit e of i, over all i < 2^n."""
    h = 1 << e
    period = h << 1
    reps = (1 << n) // period
    unit = ((1 << h) - 1) << h
    factor = ((1 << (period * reps)) - 1) // ((1 << period) - 1)
    return unit * factor


def two_valued_homs(lat: OmlLattice) -> tuple[int, ...]:
    """All two-valued homomorphisms, each as the bitmask of its 1-kernel.

    Scans every subset of the carrier bit-parallel, requiring only that the
    subset's indicator preserve meet, join and the bounds; no structure
    theory is assumed. Finiteness makes every such map completely additive.
    """
    n = lat.n
    if n > SUBSET_SCAN_LIMIT:
        raise SizeCapExceeded(
            f"exhaustive homomorphism scan limited to {SUBSET_SCAN_LIMIT} elements, got {n}")
    total = 1 << n
    full = (1 << total) - 1
    col = [_counting_pattern(e, n) for e in range(n)]
    valid = full & ~col[lat.zero] & col[lat.one]
    for a in range(n):
        for b in range(a, n):
            valid &= full & ~(col[lat.meet_table[a][b]] ^ (col[a] & col[b]))
            valid &= full & ~(col[lat.join_table[a][b]] ^ (col[a] | col[b]))
            if not valid:
                return ()
    return tuple(iter_bits(valid))


def enumerate_ultrafilters(lat: OmlLattice) -> tuple[Filter, ...]:
    """All proper filters containing x or x' for every x, by subset scan.

    Rejects non-Boolean input; the scan checks the filter axioms directly
    on every subset of the carrier rather than assuming principality.
    """
    if classify(lat).kind != BOOLEAN:
        raise ValueError("ultrafilter enumeration requires a Boolean algebra")
    n = lat.n
    if n > SUBSET_SCAN_LIMIT:
        raise SizeCapExceeded(
            f"exhaustive ultrafilter scan limited to {SUBSET_SCAN_LIMIT} elements, got {n}")
    total = 1 << n
    full = (1 << total) - 1
    col = [_counting_pattern(e, n) for e in range(n)]
    nonempty = 0
    for e in range(n):
        nonempty |= col[e]
    valid = nonempty & ~col[lat.zero]            # nonempty proper subsets
    for x in range(n):
        valid &= col[x] | col[lat.ortho[x]]      # ultrafilter dichotomy
        for y in iter_bits(lat.up[x]):
            valid &= full & ~(col[x] & ~col[y])  # upward closed
    for a in range(n):
        for b in range(a, n):
            valid &= full & ~(col[a] & col[b] & ~col[lat.meet_table[a][b]])
    return tuple(Filter(frozenset(iter_bits(sub))) for sub in iter_bits(valid))


def verify_redei(lat: OmlLattice) -> bool:
    """True iff the ultrafilters are exactly the 1-kernels of two-valued homs."""
    ultra = {frozenset(f.members) for f in enumerate_ultrafilters(lat)}
    homs = {frozenset(iter_bits(kernel)) for kernel in two_valued_homs(lat)}
    return ultra == homs
