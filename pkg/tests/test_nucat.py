import itertools

import pytest

from semimark import marked as mk
from semimark import nucat as nc
from semimark import sset as ss


@pytest.fixture(scope="module")
def poset01():
    return nc.poset_nucat([0, 1], lambda a, b: a <= b)


@pytest.fixture(scope="module")
def c2():
    return nc.group_nucat(["e", "s"], lambda a, b: "e" if a == b else "s")


@pytest.fixture(scope="module")
def walking_iso():
    homs = {
        ("u", "u"): ("iu",),
        ("v", "v"): ("iv",),
        ("u", "v"): ("f",),
        ("v", "u"): ("g",),
    }
    comp = {
        ("iu", "iu"): "iu", ("iv", "iv"): "iv",
        ("f", "iu"): "f", ("iv", "f"): "f",
        ("g", "iv"): "g", ("iu", "g"): "g",
        ("g", "f"): "iu", ("f", "g"): "iv",
        ("iu", "iu") : "iu",
    }
    cat = nc.NuCat(("u", "v"), homs, comp)
    assert not nc.validate(cat)
    return cat


class TestValidate:
    def test_poset_valid(self, poset01):
        assert not nc.validate(poset01)

    def test_non_associative_named(self):
        homs = {("*", "*"): ("a", "b")}
        comp = {("a", "a"): "b", ("a", "b"): "b", ("b", "a"): "a", ("b", "b"): "a"}
        report = nc.validate(nc.NuCat(("*",), homs, comp))
        assert report and "associativity" in report[0]

    def test_missing_composite(self):
        homs = {("*", "*"): ("a",)}
        report = nc.validate(nc.NuCat(("*",), homs, {}))
        assert any("missing composite" in r for r in report)

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            nc.NuCat(("x", "y"), {("x", "x"): ("m",), ("y", "y"): ("m",)}, {})


class TestNerve:
    def test_empty_category(self):
        cat = nc.NuCat((), {}, {})
        x = nc.nerve(cat, 3)
        assert [len(l) for l in x.levels] == [0, 0, 0, 0]

    def test_one_idempotent(self):
        cat = nc.NuCat(("*",), {("*", "*"): ("e",)}, {("e", "e"): "e"})
        x = nc.nerve(cat, 3)
        assert [len(l) for l in x.levels] == [1, 1, 1, 1]

    def test_poset_counts(self, poset01):
        # weakly increasing (n+1)-tuples in a 2-chain: n+2 strings at level n
        x = nc.nerve(poset01, 5)
        assert [len(l) for l in x.levels] == [2, 3, 4, 5, 6, 7]
        assert not ss.validate(x)

    def test_nerve_validates_on_corpus_sample(self):
        for cat in itertools.islice(nc.enumerate_nucats(2, 2), 0, 400, 13):
            assert not ss.validate(nc.nerve(cat, 3))

    def test_marked_nerve_custom(self, poset01):
        w = nc.marked_nerve(poset01, 2, ["le_0_0"])
        assert w.marking == {("le_0_0",)}
        with pytest.raises(ValueError):
            nc.marked_nerve(poset01, 2, ["nope"])


class TestInvertiblesQuasiUnits:
    def test_group_all_invertible(self, c2):
        assert nc.invertibles(c2) == {"e", "s"}
        assert nc.quasi_units(c2) == {"e"}

    def test_null_semigroup_nothing(self):
        cat = nc.null_semigroup_two()
        assert nc.invertibles(cat) == frozenset()
        assert nc.quasi_units(cat) == frozenset()
        assert not nc.check_l_qu_inv(cat)
        assert not nc.is_quasi_unital(cat)

    def test_poset_identities(self, poset01):
        assert nc.invertibles(poset01) == {"le_0_0", "le_1_1"}
        assert nc.quasi_units(poset01) == {"le_0_0", "le_1_1"}
        assert nc.is_quasi_unital(poset01)

    def test_qu_inv_equivalence_on_corpus(self):
        for cat in nc.enumerate_nucats(2, 2):
            assert not nc.check_l_qu_inv(cat)

    def test_quasi_unit_uniqueness_on_corpus(self):
        # two quasi-units at one object collapse to each other
        for cat in nc.enumerate_nucats(2, 2):
            for x in cat.objects:
                assert len(nc.quasi_units_at(cat, x)) <= 1

    def test_invertibles_2of3_closed_in_nerve(self):
        for cat in itertools.islice(nc.enumerate_nucats(2, 2), 0, 3060, 101):
            w = nc.marked_nerve(cat, 2, "invertibles")
            assert mk.closure_2of3(w).marking == w.marking


class TestFunctors:
    def test_identity_functor(self, poset01):
        f = nc.NuFunctor(
            poset01,
            poset01,
            {x: x for x in poset01.objects},
            {m: m for m in poset01.morphisms()},
        )
        assert not f.validate()
        assert nc.functor_preservation(f) == (True, True)

    def test_constant_functor(self, poset01, c2):
        f = nc.NuFunctor(
            poset01,
            c2,
            {x: "*" for x in poset01.objects},
            {m: "e" for m in poset01.morphisms()},
        )
        assert not f.validate()
        assert nc.functor_preservation(f) == (True, True)

    def test_preservation_needs_quasi_unital(self, poset01):
        null = nc.null_semigroup_two()
        f = nc.NuFunctor(null, null, {"*": "*"}, {"a": "a", "b": "b"})
        with pytest.raises(ValueError):
            nc.functor_preservation(f)

    def test_flags_agree_on_enumerated_functors(self, poset01, c2, walking_iso):
        cats = [poset01, c2, walking_iso]
        for src in cats:
            for tgt in cats:
                for fun in nc.enumerate_functors(src, tgt):
                    pq, pi = nc.functor_preservation(fun)
                    assert pq == pi


class TestSegal:
    def test_nerve_has_no_defect(self, poset01):
        assert nc.segal_defect(nc.nerve(poset01, 4)) == []

    def test_coskeleton_has_no_defect(self):
        assert nc.segal_defect(ss.coskeleton0("ab", 3)) == []

    def test_boundary_2_has_defect(self):
        # no triangle exists to witness the composite of the two spine edges
        assert (1, 1) in nc.segal_defect(ss.boundary(2), 2)

    def test_category_from_sset_roundtrip(self, poset01):
        x = nc.nerve(poset01, 3)
        cat = nc.category_from_sset(x)
        assert not nc.validate(cat)
        assert len(cat.morphisms()) == 3
        assert nc.is_quasi_unital(cat)

    def test_category_from_sset_rejects_defect(self):
        with pytest.raises(ValueError):
            nc.category_from_sset(ss.boundary(3))

    def test_extraction_from_corpus_nerves(self):
        for cat in itertools.islice(nc.enumerate_nucats(2, 1), 0, 200, 7):
            x = nc.nerve(cat, 3)
            back = nc.category_from_sset(x)
            # same morphism counts per hom-set
            assert sorted(len(ms) for ms in back.homs.values()) == sorted(
                len(ms) for ms in cat.homs.values() if ms
            )


class TestEquivalences:
    def test_eq_classes_generated_by_marking(self, walking_iso):
        w = nc.marked_nerve(walking_iso, 1, "invertibles")
        classes = nc.eq_classes(w)
        assert len(classes) == 1
        flat = nc.eq_classes(mk.flat(w.space))
        assert len(flat) == 2

    def test_identity_is_dk(self, poset01):
        w = nc.marked_nerve(poset01, 3, "invertibles")
        f = mk.MarkedMap(w, w, {s: s for level in w.space.levels for s in level})
        assert nc.is_dk_equivalence(f)

    def test_full_subcategory_meeting_classes_is_dk(self, walking_iso):
        # the one-object full subcategory on u includes DK-equivalently
        sub = nc.NuCat(("u",), {("u", "u"): ("iu",)}, {("iu", "iu"): "iu"})
        fun = nc.NuFunctor(sub, walking_iso, {"u": "u"}, {"iu": "iu"})
        assert not fun.validate()
        f = nc.nerve_map(fun, 3, "invertibles")
        assert nc.is_dk_equivalence(f)

    def test_non_full_inclusion_not_dk(self):
        # target has two parallel arrows, source keeps one: not fully faithful
        tgt = nc.NuCat(
            ("x", "y"),
            {("x", "x"): ("ix",), ("y", "y"): ("iy",), ("x", "y"): ("m1", "m2")},
            {
                ("ix", "ix"): "ix", ("iy", "iy"): "iy",
                ("m1", "ix"): "m1", ("iy", "m1"): "m1",
                ("m2", "ix"): "m2", ("iy", "m2"): "m2",
            },
        )
        assert not nc.validate(tgt)
        src = nc.NuCat(
            ("x", "y"),
            {("x", "x"): ("ix",), ("y", "y"): ("iy",), ("x", "y"): ("m1",)},
            {
                ("ix", "ix"): "ix", ("iy", "iy"): "iy",
                ("m1", "ix"): "m1", ("iy", "m1"): "m1",
            },
        )
        fun = nc.NuFunctor(src, tgt, {"x": "x", "y": "y"}, {"ix": "ix", "iy": "iy", "m1": "m1"})
        assert not fun.validate()
        f = nc.nerve_map(fun, 3, "invertibles")
        assert not nc.is_dk_equivalence(f)
        report = nc.fully_faithful_report(f)
        assert report and "not surjective" in report[0]


class TestCompleteness:
    def test_poset_nerve_complete(self, poset01):
        w = nc.marked_nerve(poset01, 3, "invertibles")
        ok, report = nc.complete_check(w)
        assert ok, report

    def test_group_nerve_not_complete(self, c2):
        w = nc.marked_nerve(c2, 3, "invertibles")
        ok, report = nc.complete_check(w)
        assert not ok
        assert any("bijection" in r for r in report)

    def test_sharp_marking_fails_precondition(self, poset01):
        w = mk.sharp(nc.nerve(poset01, 3))
        ok, report = nc.complete_check(w)
        assert not ok
        assert any("invertible" in r for r in report)

    def test_gaunt_iff_complete_on_corpus_sample(self):
        for cat in itertools.islice(nc.enumerate_nucats(2, 1), 0, 200, 11):
            if not nc.is_quasi_unital(cat):
                continue
            w = nc.marked_nerve(cat, 3, "invertibles")
            assert nc.is_complete_discrete(w) == nc.is_gaunt(cat)


class TestCorpus:
    def test_exhaustive_count_is_stable(self):
        assert sum(1 for _ in nc.enumerate_nucats(1, 2)) == 11
        # empty category + two one-object tables + the 13 transitive shapes
        assert sum(1 for _ in nc.enumerate_nucats(2, 1)) == 16

    def test_every_enumerated_table_is_associative(self):
        for cat in nc.enumerate_nucats(2, 2):
            assert not nc.validate(cat)

    def test_enumeration_deterministic(self):
        a = [nc.to_json(c) for c in itertools.islice(nc.enumerate_nucats(2, 1), 20)]
        b = [nc.to_json(c) for c in itertools.islice(nc.enumerate_nucats(2, 1), 20)]
        assert a == b

    def test_sampler_deterministic_and_valid(self):
        xs = nc.sample_nucats(3, 2, 25, seed=5)
        ys = nc.sample_nucats(3, 2, 25, seed=5)
        assert [nc.to_json(c) for c in xs] == [nc.to_json(c) for c in ys]
        zs = nc.sample_nucats(3, 2, 25, seed=6)
        assert [nc.to_json(c) for c in xs] != [nc.to_json(c) for c in zs]
        for c in xs:
            assert not nc.validate(c)


class TestJson:
    def test_roundtrip(self, poset01):
        back = nc.from_json(nc.to_json(poset01))
        assert back == poset01
