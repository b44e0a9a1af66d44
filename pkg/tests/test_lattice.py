import itertools

import pytest
from hypothesis import given, strategies as st

from omlab.errors import AxiomViolation, SizeCapExceeded, SpecSemanticError
from omlab.lattice import (BOOLEAN, IRREDUCIBLE, NEITHER, atoms, central_elements,
                           center_by_triple_scan, classify, commute_equivalents,
                           commutes, direct_product, enumerate_ultrafilters,
                           is_distributive_triple, make_boolean, make_mo, sublattice,
                           two_valued_homs, verify_redei)
from omlab.specfile import parse_lattice_spec
from omlab.corpus import corpus_lattice, full_corpus

MO2_SPEC = """
lattice mo2
elements: 0, a, a', b, b', 1
covers: 0 < a; 0 < a'; 0 < b; 0 < b'
covers: a < 1; a' < 1; b < 1; b' < 1
ortho: 0 ~ 1; a ~ a'; b ~ b'
"""


def brute_force_axioms(lat):
    """Re-derive every axiom from leq/meet/join directly (independent oracle)."""
    n = lat.n
    for a in range(n):
        assert lat.leq(lat.zero, a) and lat.leq(a, lat.one)
        assert lat.ortho[lat.ortho[a]] == a
        assert lat.join(a, lat.ortho[a]) == lat.one
        assert lat.meet(a, lat.ortho[a]) == lat.zero
    for a, b in itertools.product(range(n), repeat=2):
        m, j = lat.meet(a, b), lat.join(a, b)
        assert lat.leq(m, a) and lat.leq(m, b)
        assert lat.leq(a, j) and lat.leq(b, j)
        for c in range(n):
            if lat.leq(c, a) and lat.leq(c, b):
                assert lat.leq(c, m)
            if lat.leq(a, c) and lat.leq(b, c):
                assert lat.leq(j, c)
        if lat.leq(a, b):
            assert lat.leq(lat.ortho[b], lat.ortho[a])
            assert lat.join(a, lat.meet(b, lat.ortho[a])) == b


def test_parse_two_element_lattice():
    lat = parse_lattice_spec("lattice l2\nelements: 0, 1\ncovers: 0 < 1\northo: 0 ~ 1\n")
    assert lat.n == 2 and lat.names == ("0", "1")
    assert lat.zero == 0 and lat.one == 1


def test_parse_four_element_lattice():
    lat = parse_lattice_spec(
        "lattice l4\nelements: 0, z, z', 1\n"
        "covers: 0 < z; 0 < z'; z < 1; z' < 1\northo: 0 ~ 1; z ~ z'\n")
    z, zp = lat.id_of("z"), lat.id_of("z'")
    assert lat.meet(z, zp) == lat.zero and lat.join(z, zp) == lat.one


def test_parse_mo2_passes_all_axioms():
    lat = parse_lattice_spec(MO2_SPEC)
    assert lat.n == 6
    brute_force_axioms(lat)
    # canonical ids follow document order
    assert lat.names == ("0", "a", "a'", "b", "b'", "1")


@pytest.mark.parametrize("k,size,atom_count", [(1, 2, 1), (2, 4, 2), (3, 8, 3)])
def test_make_boolean(k, size, atom_count):
    lat = make_boolean(k)
    assert lat.n == size
    assert len(lat.atom_ids) == atom_count
    brute_force_axioms(lat)


def test_boolean_center_is_everything():
    lat = make_boolean(3)
    assert center_by_triple_scan(lat) == tuple(range(8))
    assert classify(lat) == (BOOLEAN, True)


def test_make_mo2_properties():
    lat = make_mo(2)
    assert lat.n == 6
    brute_force_axioms(lat)
    assert center_by_triple_scan(lat) == (lat.zero, lat.one)
    assert classify(lat) == (IRREDUCIBLE, True)


def test_make_mo3_not_distributive():
    lat = make_mo(3)
    assert lat.n == 8
    failing = [
        (a, b, c)
        for a, b, c in itertools.product(range(8), repeat=3)
        if not is_distributive_triple(lat, a, b, c)
    ]
    assert failing


def _find_isomorphism(l1, l2):
    """Brute-force order+ortho isomorphism search (test oracle only)."""
    if l1.n != l2.n:
        return None
    for perm in itertools.permutations(range(l2.n)):
        if all(l1.leq(a, b) == l2.leq(perm[a], perm[b])
               for a in range(l1.n) for b in range(l1.n)) \
                and all(perm[l1.ortho[a]] == l2.ortho[perm[a]] for a in range(l1.n)):
            return perm
    return None


def test_product_l2_l2_is_l4():
    prod = direct_product(make_boolean(1), make_boolean(1))
    assert _find_isomorphism(prod, make_boolean(2)) is not None


def test_product_l4_l2_is_b8():
    prod = direct_product(make_boolean(2), make_boolean(1))
    brute_force_axioms(prod)
    assert _find_isomorphism(prod, make_boolean(3)) is not None


def test_product_mo2_l2_classifies_neither():
    prod = direct_product(make_mo(2), make_boolean(1))
    assert prod.n == 12
    brute_force_axioms(prod)
    kind, atomic = classify(prod)
    assert kind == NEITHER and atomic
    # the center is the image of {0,1} x L2: four elements
    assert len(central_elements(prod)) == 4


def test_commutes_examples():
    mo2 = make_mo(2)
    a, ap, b = mo2.id_of("a"), mo2.id_of("a'"), mo2.id_of("b")
    assert commutes(mo2, a, ap)
    assert not commutes(mo2, a, b)
    b8 = make_boolean(3)
    assert all(commutes(b8, x, y) for x in range(8) for y in range(8))


def test_commute_equivalents_examples():
    mo2 = make_mo(2)
    assert commute_equivalents(mo2, mo2.id_of("a"), mo2.id_of("b")) == (False,) * 4
    l4 = make_boolean(2)
    z = l4.id_of("a")
    assert commute_equivalents(l4, z, l4.ortho[z]) == (True,) * 4
    b8 = make_boolean(3)
    p, q = b8.id_of("a"), b8.id_of("b")
    assert commute_equivalents(b8, p, b8.join(p, q)) == (True,) * 4


@pytest.mark.parametrize("name", ["l4", "mo2", "mo3", "b8", "mo2xl2"])
def test_commute_equivalents_agree_everywhere(name):
    lat = corpus_lattice(name)
    for a, b in itertools.product(range(lat.n), repeat=2):
        assert len(set(commute_equivalents(lat, a, b))) == 1


def test_distributive_triple_examples():
    mo2 = make_mo(2)
    a, b, bp = mo2.id_of("a"), mo2.id_of("b"), mo2.id_of("b'")
    assert not is_distributive_triple(mo2, a, b, bp)
    assert is_distributive_triple(mo2, a, mo2.zero, mo2.one)
    b8 = make_boolean(3)
    for t in itertools.product(range(8), repeat=3):
        assert is_distributive_triple(b8, *t)


@pytest.mark.parametrize("name", ["l4", "mo2", "mo3", "b8", "mo2xl2"])
def test_commuting_pairs_make_distributive_triples(name):
    lat = corpus_lattice(name)
    for a, b, c in itertools.product(range(lat.n), repeat=3):
        if commutes(lat, b, a) and commutes(lat, c, a):
            assert is_distributive_triple(lat, a, b, c)


@pytest.mark.parametrize("name", ["l4", "mo2", "mo3", "b8", "mo2xl2"])
def test_center_definitions_agree(name):
    lat = corpus_lattice(name)
    assert central_elements(lat) == center_by_triple_scan(lat)


def test_atoms_examples():
    assert [make_boolean(3).names[a] for a in atoms(make_boolean(3))] == ["a", "b", "c"]
    assert [make_mo(2).names[a] for a in atoms(make_mo(2))] == ["a", "a'", "b", "b'"]
    assert [make_boolean(1).names[a] for a in atoms(make_boolean(1))] == ["1"]


def test_ultrafilters_l4():
    l4 = make_boolean(2)
    ultra = enumerate_ultrafilters(l4)
    members = {frozenset(l4.names[x] for x in f.members) for f in ultra}
    assert members == {frozenset({"a", "1"}), frozenset({"b", "1"})}


def test_ultrafilters_b8_one_per_atom():
    b8 = make_boolean(3)
    ultra = enumerate_ultrafilters(b8)
    assert len(ultra) == 3
    for f in ultra:
        # each ultrafilter is the up-set of an atom
        m = b8.meet_all(f.members)
        assert m in b8.atom_ids
        assert f.members == frozenset(y for y in range(8) if b8.leq(m, y))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_redei_on_boolean(k):
    lat = make_boolean(k)
    assert verify_redei(lat)
    assert len(two_valued_homs(lat)) == k


def test_ultrafilters_reject_non_boolean():
    with pytest.raises(ValueError):
        enumerate_ultrafilters(make_mo(2))


def test_sublattice_extraction():
    b8 = make_boolean(3)
    a = b8.id_of("a")
    mask = (1 << b8.zero) | (1 << b8.one) | (1 << a) | (1 << b8.ortho[a])
    sub, ids = sublattice(b8, mask)
    assert sub.n == 4 and classify(sub).kind == BOOLEAN
    assert [b8.names[i] for i in ids] == ["0", "a", "bc", "1"]


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        make_boolean(7)
    with pytest.raises(SizeCapExceeded):
        make_mo(40)
    with pytest.raises(SizeCapExceeded):
        direct_product(make_boolean(3), make_boolean(4))


def test_degenerate_lattice_rejected():
    with pytest.raises((AxiomViolation, SpecSemanticError)):
        parse_lattice_spec("lattice one\nelements: 0\ncovers:\northo: 0 ~ 0\n")


def test_bad_ortho_rejected():
    text = ("lattice bad\nelements: 0, x, y, 1\n"
            "covers: 0 < x; 0 < y; x < 1; y < 1\n"
            "ortho: 0 ~ 1; x ~ x; y ~ y\n")
    with pytest.raises(AxiomViolation) as exc:
        parse_lattice_spec(text)
    assert exc.value.axiom == "complement-laws"
    assert "x" in exc.value.witness


@pytest.mark.parametrize("name", sorted(full_corpus()))
def test_corpus_passes_brute_force_axioms(name):
    brute_force_axioms(corpus_lattice(name))


@given(st.sampled_from(["l4", "mo2", "mo3", "b8", "mo2xl2"]), st.data())
def test_de_morgan_laws(name, data):
    lat = corpus_lattice(name)
    a = data.draw(st.integers(0, lat.n - 1))
    b = data.draw(st.integers(0, lat.n - 1))
    assert lat.meet(a, b) == lat.ortho[lat.join(lat.ortho[a], lat.ortho[b])]
    assert lat.join(a, b) == lat.ortho[lat.meet(lat.ortho[a], lat.ortho[b])]
