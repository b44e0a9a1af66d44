import pytest

from omlab import presheaf
from omlab.errors import NoContextsError, OmlabError
from omlab.theorem import TheoremLab
from omlab.corpus import corpus_lattice
from conftest import FULL_CORPUS

NEGATIVE_CORPUS = ("mo2", "mo3", "b8", "b16", "mo2xl2", "mo2xl4")


def test_l4_all_conditions_hold(labs):
    rep = labs("l4").equivalence_report()
    assert [c.holds for c in rep.conditions] == [True] * 8
    assert rep.all_agree
    assert rep.subobject_count == 4 and rep.phantom_count == 0
    assert all(c.witness is None for c in rep.conditions)
    assert not any(c.partial for c in rep.conditions)


@pytest.mark.parametrize("name", NEGATIVE_CORPUS)
def test_negative_corpus_all_conditions_fail(name, labs):
    rep = labs(name).equivalence_report()
    assert [c.holds for c in rep.conditions] == [False] * 8
    assert rep.all_agree
    for cond in rep.conditions:
        assert cond.witness is not None
        assert cond.witness.description
    # a found counterexample is conclusive even when the oracle was skipped
    assert not any(c.partial for c in rep.conditions)


def test_mo2_phantom_count(labs):
    rep = labs("mo2").equivalence_report()
    assert rep.subobject_count == 16
    assert rep.phantom_count == 10


def test_large_lattices_skip_oracle(labs):
    for name in ("b16", "mo2xl4"):
        rep = labs(name).equivalence_report()
        assert rep.subobject_count is None and rep.phantom_count is None


def test_b8_condition_witnesses_are_deterministic(labs):
    rep = labs("b8").equivalence_report()
    by_index = {c.index: c for c in rep.conditions}
    assert by_index[1].witness.x == "a"
    assert by_index[3].witness.x == "a"
    assert by_index[8].witness.description.startswith("lattice has 8 elements")


def test_condition_index_validated(labs):
    with pytest.raises(ValueError):
        labs("l4").check_condition(0)
    with pytest.raises(ValueError):
        labs("l4").check_condition(9)


def test_gap_witness_mo2_incomparable_case(labs):
    lab = labs("mo2")
    lat = lab.lattice
    w = lab.negation_gap_witness(lat.id_of("a"), lat.id_of("b"))
    assert w.case == "incomparable"
    assert lat.names[w.x] == "b"
    assert set(lab.graph.contexts[w.context].elems) == {
        lat.zero, lat.id_of("a"), lat.id_of("a'"), lat.one}


def test_gap_witness_b8_below_case(labs):
    lab = labs("b8")
    lat = lab.lattice
    # z = a and y = ab: y' = c sits below z' = bc
    w = lab.negation_gap_witness(lat.id_of("a"), lat.id_of("ab"))
    assert w.case == "below"
    assert lat.names[w.x] == "ab"
    assert set(lab.graph.contexts[w.context].elems) == {
        lat.zero, lat.id_of("a"), lat.id_of("bc"), lat.one}


def test_gap_witness_invariants_hold(labs):
    """The constructed (x, B0) empties both negations at B0 without making
    them bottom, under the heyting and the pointwise conegation readings."""
    for name in ("mo2", "b8"):
        lab = labs(name)
        lat = lab.lattice
        for z, y in lab.eligible_gap_pairs():
            w = lab.negation_gap_witness(z, y)
            dx = lab.dmap.daseinise(w.x)
            neg = presheaf.heyting_not(dx)
            pw = presheaf.pointwise_complement(dx)
            assert neg.masks[w.context] == 0 and any(neg.masks)
            assert pw[w.context] == 0 and any(pw)


def test_gap_witness_preconditions(labs):
    lab = labs("mo2")
    lat = lab.lattice
    with pytest.raises(ValueError):
        lab.negation_gap_witness(lat.zero, lat.id_of("b"))
    with pytest.raises(ValueError):
        lab.negation_gap_witness(lat.id_of("a"), lat.id_of("a'"))
    with pytest.raises(ValueError):
        lab.negation_gap_witness(lat.id_of("a"), lat.id_of("a"))


def test_breakfast_mo2(labs):
    lab = labs("mo2")
    lat = lab.lattice
    rec = lab.breakfast(lat.id_of("a"), lat.id_of("b"), lat.id_of("b'"))
    assert rec.lattice_lhs == "a" and rec.lattice_rhs == "0"
    assert not rec.lattice_distributes
    assert rec.subobject_sides_equal


def test_breakfast_b8_and_bounds(labs):
    b8 = labs("b8")
    lat = b8.lattice
    rec = b8.breakfast(lat.id_of("a"), lat.id_of("b"), lat.id_of("c"))
    assert rec.lattice_distributes and rec.subobject_sides_equal
    mo2 = labs("mo2")
    rec = mo2.breakfast(mo2.lattice.id_of("a"), mo2.lattice.zero, mo2.lattice.one)
    assert rec.lattice_distributes and rec.subobject_sides_equal


@pytest.mark.parametrize("name", FULL_CORPUS)
def test_battery_all_pass(name, labs):
    entries = labs(name).battery()
    assert len(entries) == 24
    failures = [e for e in entries if e.status == "fail"]
    assert failures == []


def test_battery_is_deterministic(labs):
    assert labs("b8").battery() == labs("b8").battery()


def test_conegation_audit(labs):
    assert labs("l4").conegation_audit() == ()
    assert labs("mo2").conegation_audit() == ()
    rows = labs("b8").conegation_audit()
    assert rows, "restriction maps must force divergences on b8"
    first = rows[0]
    assert first.element == "a" and first.context == 1
    assert first.adjoint_atoms == ("b", "ac")
    assert first.pointwise_atoms == ("b",)


def test_frontier_is_deterministic_and_bounded():
    lat = corpus_lattice("b16")
    lab1 = TheoremLab(lat, "b16", frontier_budget=100)
    lab2 = TheoremLab(lat, "b16", frontier_budget=100)
    f1, f2 = lab1.frontier(), lab2.frontier()
    assert [s.masks for s in f1] == [s.masks for s in f2]
    assert len(f1) == 100


def test_b8_frontier_closes_to_all_subobjects(labs):
    """On b8 the generated frontier reaches the entire subobject lattice."""
    lab = labs("b8")
    assert set(lab.frontier()) == set(lab.oracle())


def test_theorem_lab_rejects_l2():
    with pytest.raises(NoContextsError):
        TheoremLab(corpus_lattice("l2"), "l2")


def test_trivial_context_breaks_the_equivalence():
    """Including the two-element context collapses heyting negation to bottom
    on every nonempty subobject, so the shape condition no longer travels
    with the preservation conditions; this is what the flag is for."""
    lab = TheoremLab(corpus_lattice("l4"), "l4", include_trivial=True)
    rep = lab.equivalence_report()
    by_index = {c.index: c for c in rep.conditions}
    assert by_index[8].holds
    assert not by_index[1].holds
    assert not rep.all_agree


def test_phantom_count_zero_iff_round_trip_condition(labs):
    for name in ("l4", "mo2", "mo3", "b8", "mo2xl2"):
        rep = labs(name).equivalence_report()
        cond7 = next(c for c in rep.conditions if c.index == 7)
        assert (rep.phantom_count == 0) == cond7.holds
