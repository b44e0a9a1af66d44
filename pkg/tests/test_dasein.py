import itertools

import pytest
from hypothesis import given, settings, strategies as st

from omlab import presheaf
from omlab.contexts import ContextGraph
from omlab.dasein import DaseinMap
from omlab.errors import NoContextsError
from omlab.lattice import iter_bits
from omlab.corpus import corpus_lattice
from conftest import FULL_CORPUS, ORACLE_CORPUS


def test_dasein_to_members_fix(labs):
    for name in FULL_CORPUS:
        lab = labs(name)
        for ctx in lab.graph.contexts:
            for x in ctx.elems:
                assert lab.dmap.dasein_to(x, ctx.index) == x


def test_dasein_to_examples(labs):
    mo2 = labs("mo2")
    lat = mo2.lattice
    b_ctx = next(c.index for c in mo2.graph.contexts
                 if lat.id_of("b") in c.elems)
    assert mo2.dmap.dasein_to(lat.id_of("a"), b_ctx) == lat.one

    b8 = labs("b8")
    lat8 = b8.lattice
    ctx_b = next(c.index for c in b8.graph.contexts
                 if set(c.elems) == {lat8.zero, lat8.id_of("b"), lat8.id_of("ac"), lat8.one})
    assert lat8.names[b8.dmap.dasein_to(lat8.id_of("a"), ctx_b)] == "ac"


def test_dasein_to_is_least_upper_member(labs):
    """Independent witness scan for the minimality of the approximation."""
    for name in ("mo2", "b8", "mo2xl2"):
        lab = labs(name)
        lat = lab.lattice
        for ctx in lab.graph.contexts:
            for x in range(lat.n):
                approx = lab.dmap.dasein_to(x, ctx.index)
                assert approx in ctx.elems and lat.leq(x, approx)
                for y in ctx.elems:
                    if lat.leq(x, y):
                        assert lat.leq(approx, y)


def test_daseinise_bounds(labs):
    for name in FULL_CORPUS:
        lab = labs(name)
        assert lab.dmap.daseinise(lab.lattice.zero) == presheaf.bottom(lab.graph)
        assert lab.dmap.daseinise(lab.lattice.one) == presheaf.top(lab.graph)


def test_daseinise_examples(labs):
    mo2 = labs("mo2")
    lat = mo2.lattice
    assert mo2.dmap.daseinise(lat.id_of("a")).atom_names() == (
        (0, ("a",)), (1, ("b", "b'")))
    l4 = labs("l4")
    assert l4.dmap.daseinise(l4.lattice.id_of("a")).atom_names() == ((0, ("a",)),)


def test_daseinised_subobjects_are_closed(labs):
    for name in FULL_CORPUS:
        lab = labs(name)
        for x in range(lab.lattice.n):
            assert presheaf.is_closed(lab.graph, lab.dmap.daseinise(x).masks)


def test_restriction_surjective_on_daseinised(labs):
    for name in FULL_CORPUS:
        lab = labs(name)
        for x in range(lab.lattice.n):
            masks = lab.dmap.daseinise(x).masks
            for (big, small), table in lab.graph.restr.items():
                image = 0
                for p in iter_bits(masks[big]):
                    image |= 1 << table[p]
                assert image == masks[small]


def test_upper_adjoint_inverts_daseinisation(labs):
    for name in FULL_CORPUS:
        lab = labs(name)
        for x in range(lab.lattice.n):
            assert lab.dmap.upper_adjoint(lab.dmap.daseinise(x)) == x


def test_upper_adjoint_examples(labs):
    mo2 = labs("mo2")
    lat = mo2.lattice
    assert mo2.dmap.upper_adjoint(presheaf.top(mo2.graph)) == lat.one
    da = mo2.dmap.daseinise(lat.id_of("a"))
    db = mo2.dmap.daseinise(lat.id_of("b"))
    assert mo2.dmap.upper_adjoint(presheaf.meet(da, db)) == lat.zero


def test_upper_adjoint_matches_supremum_form(labs):
    for name in ORACLE_CORPUS:
        lab = labs(name)
        lat = lab.lattice
        for s in lab.oracle():
            best = lat.join_all(x for x in range(lat.n)
                                if presheaf.leq(lab.dmap.daseinise(x), s))
            assert lab.dmap.upper_adjoint(s) == best


def test_adjunction_inequality_and_meet_law(labs):
    for name in ("l4", "mo2"):
        lab = labs(name)
        lat = lab.lattice
        oracle = lab.oracle()
        for s in oracle:
            assert presheaf.leq(lab.dmap.daseinise(lab.dmap.upper_adjoint(s)), s)
        for s, t in itertools.product(oracle, repeat=2):
            assert lab.dmap.upper_adjoint(presheaf.meet(s, t)) == lat.meet(
                lab.dmap.upper_adjoint(s), lab.dmap.upper_adjoint(t))


def test_preimage_element(labs):
    mo2 = labs("mo2")
    lat = mo2.lattice
    for x in range(lat.n):
        assert mo2.dmap.preimage_element(mo2.dmap.daseinise(x)) == x
    phantom = presheaf.heyting_not(mo2.dmap.daseinise(lat.id_of("a")))
    assert mo2.dmap.preimage_element(phantom) is None


def test_l4_every_subobject_is_in_the_image(labs):
    l4 = labs("l4")
    for s in l4.oracle():
        assert l4.dmap.preimage_element(s) is not None


def test_join_preservation_pairs(labs):
    for name in FULL_CORPUS:
        lab = labs(name)
        lat = lab.lattice
        for x, y in itertools.combinations_with_replacement(range(lat.n), 2):
            assert presheaf.join(lab.dmap.daseinise(x), lab.dmap.daseinise(y)) \
                == lab.dmap.daseinise(lat.join(x, y))


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(("mo2", "b8", "mo2xl2")), st.integers(0, (1 << 24) - 1))
def test_join_preservation_random_subsets(name, bits):
    lat = corpus_lattice(name)
    graph = ContextGraph(lat)
    dmap = DaseinMap(lat, graph)
    ids = [x for x in range(lat.n) if bits >> x & 1]
    lhs = presheaf.join_all(graph, (dmap.daseinise(x) for x in ids))
    assert lhs == dmap.daseinise(lat.join_all(ids))


def test_monotonicity(labs):
    for name in FULL_CORPUS:
        lab = labs(name)
        lat = lab.lattice
        for x in range(lat.n):
            for y in iter_bits(lat.up[x]):
                assert presheaf.leq(lab.dmap.daseinise(x), lab.dmap.daseinise(y))


def test_coarser_contexts_approximate_from_above(labs):
    for name in FULL_CORPUS:
        lab = labs(name)
        lat = lab.lattice
        for (big, small) in lab.graph.restr:
            for x in range(lat.n):
                assert lat.leq(lab.dmap.dasein_to(x, big), lab.dmap.dasein_to(x, small))


def test_atom_decomposition_identity(labs):
    for name in FULL_CORPUS:
        lab = labs(name)
        lat = lab.lattice
        for (big, small) in lab.graph.restr:
            atoms_big = lab.graph.contexts[big].atoms
            for x in range(lat.n):
                reach = lab.dmap.dasein_to(x, big)
                expected = lat.join_all(lab.dmap.dasein_to(a, small)
                                        for a in atoms_big if lat.leq(a, reach))
                assert lab.dmap.dasein_to(x, small) == expected


def test_injectivity(labs):
    for name in FULL_CORPUS:
        lab = labs(name)
        images = {lab.dmap.daseinise(x).masks for x in range(lab.lattice.n)}
        assert len(images) == lab.lattice.n


def test_negation_sandwich(labs):
    for name in FULL_CORPUS:
        lab = labs(name)
        lat = lab.lattice
        for x in range(lat.n):
            dx = lab.dmap.daseinise(x)
            neg = presheaf.heyting_not(dx)
            pw = presheaf.pointwise_complement(dx)
            cot = presheaf.coheyting_not(dx)
            target = lab.dmap.daseinise(lat.ortho[x])
            assert presheaf.leq(neg, cot)
            assert presheaf.leq(cot, target)
            assert all(n & ~p == 0 for n, p in zip(neg.masks, pw))
            assert all(p & ~c == 0 for p, c in zip(pw, cot.masks))


def test_no_contexts_error():
    lat = corpus_lattice("l2")
    graph = ContextGraph(lat)
    with pytest.raises(NoContextsError):
        DaseinMap(lat, graph)
