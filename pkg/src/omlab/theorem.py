"""Equivalence-theorem evaluation, witnesses, and the proposition battery.

The core result under test: for a finite orthomodular lattice with an
element strictly between the bounds, eight conditions rise and fall
together, and they all hold exactly when the lattice is the four-element
{0, z, z', 1}. Six conditions concern whether daseinisation preserves or
at least represents negations, conegations and binary meets; the seventh
says the subobject-side round trip is the identity; the eighth is the
shape test.

Conegation note. The subobject algebra's conegation is the adjoint one
(closure of the complement). The preservation conditions 2 and 5 are
evaluated against the raw pointwise complement family instead, because
that is the reading under which the eight conditions are equivalent; with
the adjoint reading, conegation of daseinised elements is preserved on
every Boolean algebra (the top context forces the complement closure up to
the daseinised orthocomplement), which would break the equivalence. The
`conegation_audit` reports every divergence between the two readings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import presheaf
from .contexts import ContextGraph, DEFAULT_MAX_CONTEXTS, closure_mask
from .dasein import DaseinMap
from .errors import OmlabError, OracleBoundExceeded, SizeCapExceeded
from .lattice import (OmlLattice, axiom_report, BOOLEAN, IRREDUCIBLE,
                      center_by_triple_scan, central_elements, classify, commutes,
                      commute_equivalents, is_distributive_triple, iter_bits, popcount,
                      enumerate_ultrafilters, sublattice, two_valued_homs)
from .presheaf import DEFAULT_ORACLE_BOUND, Subobject

DEFAULT_FRONTIER_BUDGET = 512
DEFAULT_RNG_SEED = 20240809
_TRIPLE_SCAN_LIMIT = 32

CONDITION_LABELS = (
    "heyting negation preserved",
    "conegation preserved (pointwise)",
    "binary meets preserved",
    "heyting negations representable",
    "conegations representable (pointwise)",
    "binary meets representable",
    "round trip is identity on subobjects",
    "four-element shape {0, z, z', 1}",
)


@dataclass(frozen=True)
class Witness:
    description: str
    x: str | None = None
    y: str | None = None
    context: int | None = None


@dataclass(frozen=True)
class ConditionResult:
    index: int
    label: str
    holds: bool
    witness: Witness | None = None
    partial: bool = False  # a frontier, not the full oracle, backed the verdict


@dataclass(frozen=True)
class TheoremReport:
    lattice_name: str
    size: int
    conditions: tuple[ConditionResult, ...]
    all_agree: bool
    subobject_count: int | None
    phantom_count: int | None


@dataclass(frozen=True)
class NegationGapWitness:
    """An element and context where both negations of its daseinisation
    vanish even though the negations themselves are not bottom."""

    case: str  # "below" (comparable pair) or "incomparable"
    x: int
    context: int


@dataclass(frozen=True)
class BreakfastRecord:
    elements: tuple[str, str, str]
    lattice_lhs: str
    lattice_rhs: str
    lattice_distributes: bool
    subobject_sides_equal: bool


@dataclass(frozen=True)
class BatteryEntry:
    name: str
    status: str  # "pass", "fail", or "skip"
    detail: str = ""


@dataclass(frozen=True)
class AuditRow:
    element: str
    context: int
    adjoint_atoms: tuple[str, ...]
    pointwise_atoms: tuple[str, ...]


class TheoremLab:
    """One lattice with its context graph, daseinisation tables, and caches."""

    def __init__(self, lattice: OmlLattice, name: str = "L", *,
                 include_trivial: bool = False,
                 max_contexts: int = DEFAULT_MAX_CONTEXTS,
                 oracle_bound: int = DEFAULT_ORACLE_BOUND,
                 frontier_budget: int = DEFAULT_FRONTIER_BUDGET,
                 rng_seed: int = DEFAULT_RNG_SEED):
        self.lattice = lattice
        self.name = name
        self.graph = ContextGraph(lattice, include_trivial=include_trivial,
                                  max_contexts=max_contexts)
        self.dmap = DaseinMap(lattice, self.graph)
        self.oracle_bound = oracle_bound
        self.frontier_budget = frontier_budget
        self.rng_seed = rng_seed
        self._oracle: tuple[Subobject, ...] | None = None
        self._oracle_failed = False
        self._frontier: tuple[Subobject, ...] | None = None

    # -- subobject pools ------------------------------------------------------

    def oracle(self) -> tuple[Subobject, ...] | None:
        """All subobjects, or None when the enumeration bound is exceeded."""
        if self._oracle is None and not self._oracle_failed:
            try:
                self._oracle = presheaf.enumerate_all_subobjects(
                    self.graph, bound=self.oracle_bound)
            except OracleBoundExceeded:
                self._oracle_failed = True
        return self._oracle

    def frontier(self) -> tuple[Subobject, ...]:
        """Daseinised elements closed under negations, meets and joins
        up to the configured budget; deterministic generation order."""
        if self._frontier is None:
            items: list[Subobject] = []
            seen: set[tuple[int, ...]] = set()

            def add(s: Subobject) -> None:
                if s.masks not in seen and len(items) < self.frontier_budget:
                    seen.add(s.masks)
                    items.append(s)

            for x in range(self.lattice.n):
                add(self.dmap.daseinise(x))
            i = 0
            while i < len(items) and len(items) < self.frontier_budget:
                s = items[i]
                add(presheaf.heyting_not(s))
                add(presheaf.coheyting_not(s))
                for j in range(i):
                    add(presheaf.meet(items[j], s))
                    add(presheaf.join(items[j], s))
                i += 1
            self._frontier = tuple(items)
        return self._frontier

    def condition_pool(self) -> tuple[tuple[Subobject, ...], bool]:
        """(subobject pool, partial?) for quantifying over all subobjects."""
        oracle = self.oracle()
        if oracle is not None:
            return oracle, False
        return self.frontier(), True

    # -- the eight conditions --------------------------------------------------

    def check_condition(self, k: int) -> ConditionResult:
        if not 1 <= k <= 8:
            raise ValueError("condition index must be 1..8")
        lat = self.lattice
        names = lat.names
        label = CONDITION_LABELS[k - 1]

        def first_diff(a: tuple[int, ...], b: tuple[int, ...]) -> int:
            return next(ci for ci, (x, y) in enumerate(zip(a, b)) if x != y)

        if k == 1:
            for x in range(lat.n):
                neg = presheaf.heyting_not(self.dmap.daseinise(x))
                target = self.dmap.daseinise(lat.ortho[x])
                if neg != target:
                    ci = first_diff(neg.masks, target.masks)
                    return ConditionResult(k, label, False, Witness(
                        f"heyting negation of daseinised {names[x]} differs from "
                        f"daseinised {names[lat.ortho[x]]} at context B{ci}",
                        x=names[x], context=ci))
            return ConditionResult(k, label, True)

        if k == 2:
            for x in range(lat.n):
                pw = presheaf.pointwise_complement(self.dmap.daseinise(x))
                target = self.dmap.daseinise(lat.ortho[x])
                if pw != target.masks:
                    ci = first_diff(pw, target.masks)
                    return ConditionResult(k, label, False, Witness(
                        f"pointwise conegation of daseinised {names[x]} differs from "
                        f"daseinised {names[lat.ortho[x]]} at context B{ci}",
                        x=names[x], context=ci))
            return ConditionResult(k, label, True)

        if k == 3:
            for x in range(lat.n):
                dx = self.dmap.daseinise(x)
                for y in range(lat.n):
                    lhs = presheaf.meet(dx, self.dmap.daseinise(y))
                    rhs = self.dmap.daseinise(lat.meet_table[x][y])
                    if lhs != rhs:
                        ci = first_diff(lhs.masks, rhs.masks)
                        return ConditionResult(k, label, False, Witness(
                            f"daseinised {names[x]} ^ daseinised {names[y]} differs "
                            f"from daseinised {names[lat.meet_table[x][y]]} at context B{ci}",
                            x=names[x], y=names[y], context=ci))
            return ConditionResult(k, label, True)

        if k == 4 or k == 5:
            for x in range(lat.n):
                dx = self.dmap.daseinise(x)
                if k == 4:
                    neg = presheaf.heyting_not(dx)
                    found = self.dmap.preimage_element(neg) is not None
                    what = "heyting negation"
                else:
                    pw = presheaf.pointwise_complement(dx)
                    found = any(self.dmap.daseinise(u).masks == pw
                                for u in range(lat.n))
                    what = "pointwise conegation"
                if not found:
                    return ConditionResult(k, label, False, Witness(
                        f"no element daseinises to the {what} of daseinised {names[x]}",
                        x=names[x]))
            return ConditionResult(k, label, True)

        if k == 6:
            for x in range(lat.n):
                dx = self.dmap.daseinise(x)
                for y in range(x, lat.n):
                    m = presheaf.meet(dx, self.dmap.daseinise(y))
                    if self.dmap.preimage_element(m) is None:
                        return ConditionResult(k, label, False, Witness(
                            f"no element daseinises to daseinised {names[x]} ^ "
                            f"daseinised {names[y]}", x=names[x], y=names[y]))
            return ConditionResult(k, label, True)

        if k == 7:
            pool, partial = self.condition_pool()
            for s in pool:
                u = self.dmap.upper_adjoint(s)
                if self.dmap.daseinise(u) != s:
                    return ConditionResult(k, label, False, Witness(
                        "a subobject is not recovered by daseinising its adjoint "
                        f"element {names[u]}: {s!r}", x=names[u]))
            return ConditionResult(k, label, True, partial=partial)

        # k == 8
        if lat.n == 4:
            z = next(x for x in range(4) if x not in (lat.zero, lat.one))
            expected = {lat.zero, lat.one, z, lat.ortho[z]}
            if len(expected) == 4:
                return ConditionResult(k, label, True)
        return ConditionResult(k, label, False, Witness(
            f"lattice has {lat.n} elements, not the four-element shape"))

    def equivalence_report(self) -> TheoremReport:
        lat = self.lattice
        if all(x in (lat.zero, lat.one) for x in range(lat.n)):
            raise OmlabError("the report needs an element strictly between the bounds")
        conditions = tuple(self.check_condition(k) for k in range(1, 9))
        flags = {c.holds for c in conditions}
        oracle = self.oracle()
        count = len(oracle) if oracle is not None else None
        return TheoremReport(
            lattice_name=self.name,
            size=lat.n,
            conditions=conditions,
            all_agree=len(flags) == 1,
            subobject_count=count,
            phantom_count=None if count is None else count - lat.n,
        )

    # -- negation-gap witnesses -------------------------------------------------

    def negation_gap_witness(self, z: int, y: int) -> NegationGapWitness:
        """Construct and check an (x, context) pair where both negations of a
        daseinised element vanish at the context without being bottom.

        Requires 0 < z < 1 and y outside {0, z, z', 1}. When some element of
        {y, y'} lies strictly below some v in {z, z'}, the witness is the
        orthocomplement of that element at the context generated by v;
        otherwise y itself at the context generated by z.
        """
        lat = self.lattice
        if z in (lat.zero, lat.one):
            raise ValueError("z must satisfy 0 < z < 1")
        if y in (lat.zero, lat.one, z, lat.ortho[z]):
            raise ValueError("y must avoid {0, z, z', 1}")

        case, x, anchor = "incomparable", y, z
        for u in (y, lat.ortho[y]):
            for v in (z, lat.ortho[z]):
                if u != v and lat.leq(u, v):
                    case, x, anchor = "below", lat.ortho[u], v
                    break
            if case == "below":
                break

        mask = closure_mask(lat, 1 << anchor)
        ci = self.graph.context_index(mask)
        if ci is None or popcount(mask) != 4:
            raise OmlabError(
                f"no four-element context generated by {lat.names[anchor]}")

        dx = self.dmap.daseinise(x)
        neg = presheaf.heyting_not(dx)
        pw = presheaf.pointwise_complement(dx)
        ok = (neg.masks[ci] == 0 and any(neg.masks)
              and pw[ci] == 0 and any(pw))
        if not ok:
            raise OmlabError(
                f"negation-gap invariants failed for x={lat.names[x]} at B{ci}")
        return NegationGapWitness(case=case, x=x, context=ci)

    def eligible_gap_pairs(self) -> tuple[tuple[int, int], ...]:
        lat = self.lattice
        out = []
        for z in range(lat.n):
            if z in (lat.zero, lat.one):
                continue
            for y in range(lat.n):
                if y not in (lat.zero, lat.one, z, lat.ortho[z]):
                    out.append((z, y))
        return tuple(out)

    # -- breakfast and audit ------------------------------------------------------

    def breakfast(self, e: int, b: int, s: int) -> BreakfastRecord:
        """Compare e ^ (b v s) with (e ^ b) v (e ^ s), in the lattice and
        for the daseinised subobjects (where distributivity always holds)."""
        lat = self.lattice
        lhs = lat.meet_table[e][lat.join_table[b][s]]
        rhs = lat.join_table[lat.meet_table[e][b]][lat.meet_table[e][s]]
        de, db, ds = (self.dmap.daseinise(v) for v in (e, b, s))
        sub_lhs = presheaf.meet(de, presheaf.join(db, ds))
        sub_rhs = presheaf.join(presheaf.meet(de, db), presheaf.meet(de, ds))
        return BreakfastRecord(
            elements=(lat.names[e], lat.names[b], lat.names[s]),
            lattice_lhs=lat.names[lhs],
            lattice_rhs=lat.names[rhs],
            lattice_distributes=lhs == rhs,
            subobject_sides_equal=sub_lhs == sub_rhs,
        )

    def conegation_audit(self) -> tuple[AuditRow, ...]:
        """Contexts where adjoint and pointwise conegation of a daseinised
        element disagree. Informational: divergence is expected whenever
        restriction maps force complement atoms downward."""
        lat = self.lattice
        rows = []
        for x in range(lat.n):
            dx = self.dmap.daseinise(x)
            adjoint = presheaf.coheyting_not(dx)
            pw = presheaf.pointwise_complement(dx)
            for ci in range(len(self.graph.contexts)):
                if adjoint.masks[ci] != pw[ci]:
                    ctx = self.graph.contexts[ci]
                    rows.append(AuditRow(
                        element=lat.names[x],
                        context=ci,
                        adjoint_atoms=tuple(
                            lat.names[ctx.atoms[p]] for p in iter_bits(adjoint.masks[ci])),
                        pointwise_atoms=tuple(
                            lat.names[ctx.atoms[p]] for p in iter_bits(pw[ci])),
                    ))
        return tuple(rows)

    # -- the proposition battery ----------------------------------------------------

    def battery(self) -> tuple[BatteryEntry, ...]:
        """Run every structural proposition; failures are data, not errors."""
        entries: list[BatteryEntry] = []

        def run(name: str, fn) -> None:
            try:
                detail = fn()
            except SizeCapExceeded as exc:
                entries.append(BatteryEntry(name, "skip", str(exc)))
                return
            if detail is None:
                entries.append(BatteryEntry(name, "pass"))
            elif detail.startswith("skip:"):
                entries.append(BatteryEntry(name, "skip", detail[5:].strip()))
            else:
                entries.append(BatteryEntry(name, "fail", detail))

        run("lattice axioms", self._check_axioms)
        run("commutation equivalents agree", self._check_commute_equivalents)
        run("pairwise commutation gives distributive triples", self._check_commuting_distributive)
        run("center matches the commutant", self._check_center)
        run("classification consistent", self._check_classification)
        run("context enumeration exhaustive", self._check_context_exhaustive)
        run("context ultrafilters match homomorphisms", self._check_ultrafilters)
        run("atom correspondence is an isomorphism", self._check_atom_correspondence)
        run("restriction maps compose", self._check_restriction_functorial)
        run("restriction surjective on daseinised elements", self._check_restriction_surjective)
        run("daseinisation monotone in element and context", self._check_dasein_monotone)
        run("daseinisation preserves joins", self._check_join_preservation)
        run("atom decomposition identity", self._check_atom_decomposition)
        run("daseinisation injective", self._check_injective)
        run("adjoint inverts daseinisation", self._check_adjoint_inverse)
        run("adjunction inequality and meet law", self._check_adjunction)
        run("subobject operations stay closed", self._check_ops_closed)
        run("subobject lattice distributive", self._check_distributive)
        run("heyting residuation", self._check_heyting_residuation)
        run("coheyting residuation", self._check_coheyting_residuation)
        run("negation identities", self._check_negation_identities)
        run("conegation minimal", self._check_conegation_minimal)
        run("negation sandwich", self._check_sandwich)
        run("negation-gap witnesses validate", self._check_gap_witnesses)
        return tuple(entries)

    # individual battery checks; each returns None (pass), "skip: ..." or a
    # counterexample description

    def _check_axioms(self):
        lat = self.lattice
        for check in axiom_report(lat.names, lat.up, lat.ortho,
                                  max_elements=max(64, lat.n)):
            if check.ok is False:
                return f"{check.name}: {check.witness}"
        return None

    def _check_commute_equivalents(self):
        lat = self.lattice
        for a in range(lat.n):
            for b in range(lat.n):
                ce = commute_equivalents(lat, a, b)
                if len(set(ce)) != 1:
                    return f"({lat.names[a]}, {lat.names[b]}): {ce}"
        return None

    def _check_commuting_distributive(self):
        lat = self.lattice
        for a in range(lat.n):
            for b in range(lat.n):
                if not commutes(lat, b, a):
                    continue
                for c in range(lat.n):
                    if not commutes(lat, c, a):
                        continue
                    if not (is_distributive_triple(lat, a, b, c)
                            and is_distributive_triple(lat, b, c, a)
                            and is_distributive_triple(lat, c, a, b)):
                        return f"({lat.names[a]}, {lat.names[b]}, {lat.names[c]})"
        return None

    def _check_center(self):
        lat = self.lattice
        if lat.n > _TRIPLE_SCAN_LIMIT:
            return f"skip: triple scan limited to {_TRIPLE_SCAN_LIMIT} elements"
        fast = central_elements(lat)
        slow = center_by_triple_scan(lat)
        if fast != slow:
            return f"commutant {fast} vs triple scan {slow}"
        return None

    def _check_classification(self):
        lat = self.lattice
        kind, atomic = classify(lat)
        all_commute = all(commutes(lat, a, b)
                          for a in range(lat.n) for b in range(lat.n))
        if (kind == BOOLEAN) != all_commute:
            return "boolean classification disagrees with pairwise commutation"
        cen = set(central_elements(lat))
        if (kind == IRREDUCIBLE) != (cen == {lat.zero, lat.one}):
            return "irreducible classification disagrees with the center"
        if not atomic:
            return "finite lattice reported non-atomic"
        return None

    def _check_context_exhaustive(self):
        lat = self.lattice
        known = {c.mask for c in self.graph.contexts}

        def probe(subset_mask: int) -> str | None:
            ids = tuple(iter_bits(subset_mask))
            for i, a in enumerate(ids):
                for b in ids[i + 1:]:
                    if not commutes(lat, a, b):
                        return None
            closed = closure_mask(lat, subset_mask)
            if popcount(closed) >= 4 and closed not in known:
                return f"closure of {lat.set_names(subset_mask)} missing from the graph"
            return None

        if lat.n <= 12:
            for subset in range(1 << lat.n):
                bad = probe(subset)
                if bad:
                    return bad
        else:
            rng = random.Random(self.rng_seed)
            for _ in range(2000):
                bad = probe(rng.getrandbits(lat.n))
                if bad:
                    return bad
        return None

    def _check_ultrafilters(self):
        lat = self.lattice
        for ctx in self.graph.contexts:
            sub, ids = sublattice(lat, ctx.mask)
            ultra = enumerate_ultrafilters(sub)
            homs = two_valued_homs(sub)
            if not (len(ultra) == len(homs) == len(ctx.atoms)):
                return (f"B{ctx.index}: {len(ultra)} ultrafilters, {len(homs)} "
                        f"homomorphisms, {len(ctx.atoms)} atoms")
            principal = {frozenset(iter_bits(sub.up[a])) for a in sub.atom_ids}
            if {f.members for f in ultra} != principal:
                return f"B{ctx.index}: ultrafilters are not the principal filters of atoms"
            if {frozenset(iter_bits(k)) for k in homs} != principal:
                return f"B{ctx.index}: homomorphism kernels differ from ultrafilters"
        return None

    def _check_atom_correspondence(self):
        graph = self.graph
        for ctx in graph.contexts:
            ci = ctx.index
            full = (1 << len(ctx.atoms)) - 1
            seen = {}
            for x in ctx.elems:
                m = graph.atom_mask_below(ci, x)
                if m in seen:
                    return f"B{ci}: atoms below collide for {seen[m]} and {x}"
                seen[m] = x
                if graph.member_of_atom_mask(ci, m) != x:
                    return f"B{ci}: join of atoms below does not recover {x}"
            if len(seen) != full + 1:
                return f"B{ci}: atom subsets not exhausted"
            lat = self.lattice
            for x in ctx.elems:
                mx = graph.atom_mask_below(ci, x)
                if graph.atom_mask_below(ci, lat.ortho[x]) != full & ~mx:
                    return f"B{ci}: complement law fails at {lat.names[x]}"
                for y in ctx.elems:
                    if graph.atom_mask_below(ci, lat.join_table[x][y]) != mx | graph.atom_mask_below(ci, y):
                        return f"B{ci}: join-to-union fails at ({lat.names[x]}, {lat.names[y]})"
                    if graph.atom_mask_below(ci, lat.meet_table[x][y]) != mx & graph.atom_mask_below(ci, y):
                        return f"B{ci}: meet-to-intersection fails at ({lat.names[x]}, {lat.names[y]})"
        return None

    def _check_restriction_functorial(self):
        graph = self.graph
        for (big, small), table in graph.restr.items():
            for mid in graph.below[big]:
                if (mid, small) not in graph.restr or mid in (big, small):
                    continue
                upper = graph.restr[(big, mid)]
                lower = graph.restr[(mid, small)]
                for p in range(len(table)):
                    if lower[upper[p]] != table[p]:
                        return f"composition B{big} -> B{mid} -> B{small} differs at position {p}"
        return None

    def _check_restriction_surjective(self):
        graph = self.graph
        for x in range(self.lattice.n):
            masks = self.dmap.daseinise(x).masks
            for (big, small), table in graph.restr.items():
                if big == small:
                    continue
                image = 0
                for p in iter_bits(masks[big]):
                    image |= 1 << table[p]
                if image != masks[small]:
                    return (f"restriction image of daseinised {self.lattice.names[x]} "
                            f"from B{big} misses B{small}")
        return None

    def _check_dasein_monotone(self):
        lat = self.lattice
        for x in range(lat.n):
            dx = self.dmap.daseinise(x)
            for y in iter_bits(lat.up[x]):
                if not presheaf.leq(dx, self.dmap.daseinise(y)):
                    return f"monotonicity fails for {lat.names[x]} <= {lat.names[y]}"
        for (big, small) in self.graph.restr:
            if big == small:
                continue
            for x in range(lat.n):
                if not lat.leq(self.dmap.dasein_to(x, big), self.dmap.dasein_to(x, small)):
                    return (f"approximation of {lat.names[x]} shrinks from "
                            f"B{big} to the coarser B{small}")
        return None

    def _check_join_preservation(self):
        lat = self.lattice
        for x in range(lat.n):
            dx = self.dmap.daseinise(x)
            for y in range(x, lat.n):
                joined = self.dmap.daseinise(lat.join_table[x][y])
                if presheaf.join(dx, self.dmap.daseinise(y)) != joined:
                    return f"pair ({lat.names[x]}, {lat.names[y]})"
        rng = random.Random(self.rng_seed + 1)
        for _ in range(200):
            subset = rng.getrandbits(lat.n)
            ids = tuple(iter_bits(subset))
            lhs = presheaf.join_all(self.graph,
                                    (self.dmap.daseinise(x) for x in ids))
            if lhs != self.dmap.daseinise(lat.join_all(ids)):
                return f"subset {lat.set_names(subset)}"
        return None

    def _check_atom_decomposition(self):
        lat = self.lattice
        graph = self.graph
        for (big, small) in graph.restr:
            big_ctx = graph.contexts[big]
            for x in range(lat.n):
                top_approx = self.dmap.dasein_to(x, big)
                expected = lat.join_all(
                    self.dmap.dasein_to(a, small)
                    for a in big_ctx.atoms if lat.leq(a, top_approx))
                if expected != self.dmap.dasein_to(x, small):
                    return f"x={lat.names[x]}, B{big} -> B{small}"
        return None

    def _check_injective(self):
        seen = {}
        for x in range(self.lattice.n):
            masks = self.dmap.daseinise(x).masks
            if masks in seen:
                return f"{self.lattice.names[seen[masks]]} and {self.lattice.names[x]} collide"
            seen[masks] = x
        return None

    def _check_adjoint_inverse(self):
        lat = self.lattice
        for x in range(lat.n):
            u = self.dmap.upper_adjoint(self.dmap.daseinise(x))
            if u != x:
                return f"adjoint of daseinised {lat.names[x]} is {lat.names[u]}"
        return None

    def _sample_pool(self, count: int, salt: int) -> tuple[Subobject, ...]:
        pool, _ = self.condition_pool()
        if len(pool) <= count:
            return pool
        rng = random.Random(self.rng_seed + salt)
        return tuple(pool[rng.randrange(len(pool))] for _ in range(count))

    def _check_adjunction(self):
        lat = self.lattice
        pool, _ = self.condition_pool()
        for s in pool:
            u = self.dmap.upper_adjoint(s)
            if not presheaf.leq(self.dmap.daseinise(u), s):
                return f"daseinised adjoint escapes {s!r}"
            best = lat.join_all(x for x in range(lat.n)
                                if presheaf.leq(self.dmap.daseinise(x), s))
            if best != u:
                return f"adjoint differs from the join form at {s!r}"
        pairs = self._sample_pool(40, 2), self._sample_pool(40, 3)
        for s in pairs[0]:
            for t in pairs[1]:
                lhs = self.dmap.upper_adjoint(presheaf.meet(s, t))
                rhs = lat.meet_table[self.dmap.upper_adjoint(s)][self.dmap.upper_adjoint(t)]
                if lhs != rhs:
                    return "adjoint does not distribute over a meet"
        return None

    def _check_ops_closed(self):
        graph = self.graph
        sample = self._sample_pool(25, 4)
        for s in sample:
            if not presheaf.is_closed(graph, s.masks):
                return f"pool member not closed: {s!r}"
            for t in sample:
                for out in (presheaf.meet(s, t), presheaf.join(s, t),
                            presheaf.heyting_implies(s, t),
                            presheaf.coheyting_implies(s, t)):
                    if not presheaf.is_closed(graph, out.masks):
                        return "an operation produced a non-closed family"
        return None

    def _check_distributive(self):
        sample = self._sample_pool(12, 5)
        for s in sample:
            for t in sample:
                for r in sample:
                    if presheaf.meet(s, presheaf.join(t, r)) != presheaf.join(
                            presheaf.meet(s, t), presheaf.meet(s, r)):
                        return "meet fails to distribute over join"
                    if presheaf.join(s, presheaf.meet(t, r)) != presheaf.meet(
                            presheaf.join(s, t), presheaf.join(s, r)):
                        return "join fails to distribute over meet"
        return None

    def _check_heyting_residuation(self):
        sample = self._sample_pool(12, 6)
        for s in sample:
            for t in sample:
                imp = presheaf.heyting_implies(s, t)
                for r in sample:
                    if presheaf.leq(r, imp) != presheaf.leq(presheaf.meet(r, s), t):
                        return f"residuation fails for {s!r} => {t!r}"
        return None

    def _check_coheyting_residuation(self):
        sample = self._sample_pool(12, 7)
        for s in sample:
            for t in sample:
                coimp = presheaf.coheyting_implies(s, t)
                for r in sample:
                    if presheaf.leq(coimp, r) != presheaf.leq(s, presheaf.join(t, r)):
                        return f"co-residuation fails for {s!r} <= {t!r}"
        return None

    def _check_negation_identities(self):
        graph = self.graph
        bot, topo = presheaf.bottom(graph), presheaf.top(graph)
        for s in self._sample_pool(40, 8):
            if presheaf.heyting_not(s) != presheaf.heyting_implies(s, bot):
                return "heyting negation differs from implication into bottom"
            if presheaf.coheyting_not(s) != presheaf.coheyting_implies(topo, s):
                return "conegation differs from co-implication from top"
            if presheaf.meet(s, presheaf.heyting_not(s)) != bot:
                return f"{s!r} meets its heyting negation above bottom"
            if presheaf.join(s, presheaf.coheyting_not(s)) != topo:
                return f"{s!r} joins its conegation below top"
        return None

    def _check_conegation_minimal(self):
        oracle = self.oracle()
        if oracle is None:
            return "skip: oracle bound exceeded, minimality needs full enumeration"
        if len(oracle) > 256:
            rng = random.Random(self.rng_seed + 9)
            targets = tuple(oracle[rng.randrange(len(oracle))] for _ in range(32))
        else:
            targets = oracle
        topo = presheaf.top(self.graph)
        for t in targets:
            cot = presheaf.coheyting_not(t)
            for r in oracle:
                if presheaf.join(t, r) == topo and not presheaf.leq(cot, r):
                    return f"conegation of {t!r} not below {r!r}"
        return None

    def _check_sandwich(self):
        lat = self.lattice
        for x in range(lat.n):
            dx = self.dmap.daseinise(x)
            neg = presheaf.heyting_not(dx)
            pw = presheaf.pointwise_complement(dx)
            adjoint = presheaf.coheyting_not(dx)
            target = self.dmap.daseinise(lat.ortho[x])
            if not presheaf.leq(neg, adjoint) or not presheaf.leq(adjoint, target):
                return f"adjoint sandwich fails at {lat.names[x]}"
            if any(n & ~p for n, p in zip(neg.masks, pw)):
                return f"heyting negation escapes the pointwise complement at {lat.names[x]}"
            if any(p & ~a for p, a in zip(pw, adjoint.masks)):
                return f"pointwise complement escapes the adjoint conegation at {lat.names[x]}"
        return None

    def _check_gap_witnesses(self):
        pairs = self.eligible_gap_pairs()
        if not pairs:
            return "skip: no eligible (z, y) pair in a four-element lattice"
        for z, y in pairs:
            self.negation_gap_witness(z, y)  # raises on violation
        return None
