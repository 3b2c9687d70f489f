import pytest

from semimark import kanext as kx
from semimark import marked as mk
from semimark import nucat as nc
from semimark import sset as ss
from semimark.errors import BudgetError
from semimark.ordinal import OrdinalMap, enumerate_maps, identity, sections_of


@pytest.fixture(scope="module")
def poset01():
    return nc.poset_nucat([0, 1], lambda a, b: a <= b)


@pytest.fixture(scope="module")
def chain3():
    return nc.poset_nucat([0, 1, 2], lambda a, b: a <= b)


class TestSimpSet:
    def test_nerve_simplicial_identities(self, poset01, chain3):
        for cat, depth in ((poset01, 4), (chain3, 3)):
            x = kx.simplicial_nerve(cat, depth)
            assert kx.validate_simplicial(x) == []

    def test_nerve_needs_identities(self):
        with pytest.raises(ValueError):
            kx.simplicial_nerve(nc.null_semigroup_two(), 2)

    def test_broken_degeneracy_reported(self, poset01):
        x = kx.simplicial_nerve(poset01, 2)
        degs = dict(x.degeneracies)
        degs["0"] = (("le_1_1",),)  # wrong identity for vertex 0
        broken = kx.SimpSet(x.truncation, x.levels, x.faces, degs)
        assert kx.validate_simplicial(broken)


class TestForgetPlus:
    def test_one_object_trivial_category(self):
        cat = nc.poset_nucat([0], lambda a, b: True)
        w = kx.forget_plus(kx.simplicial_nerve(cat, 2))
        assert len(w.marking) == 1
        assert len(w.space.level(1)) == 1

    def test_poset_marks_constant_edges(self, poset01):
        w = kx.forget_plus(kx.simplicial_nerve(poset01, 3))
        # oracle: constant monotone pairs vs all monotone pairs in a 2-chain
        assert len(w.space.level(1)) == 3
        assert len(w.marking) == 2
        for e in w.marking:
            assert w.space.face(e, 0) == w.space.face(e, 1)

    def test_underlying_forgets_structurally(self, poset01):
        x = kx.simplicial_nerve(poset01, 3)
        assert kx.forget_plus(x).space == x.underlying()

    def test_degenerate_marking_within_natural_marking(self, chain3):
        x = kx.simplicial_nerve(chain3, 3)
        assert kx.forget_plus(x).marking <= kx.f_natural(x).marking


class TestFNatural:
    def test_group_nerve_all_marked(self):
        c2 = nc.group_nucat(["e", "s"], lambda a, b: "e" if a == b else "s")
        w = kx.f_natural(nc.nerve(c2, 3))
        assert w.marking == frozenset(w.space.level(1))

    def test_poset_nerve_identities_marked(self, poset01):
        w = kx.f_natural(nc.nerve(poset01, 3))
        assert w.marking == {("le_0_0",), ("le_1_1",)}

    def test_rejects_segal_defect(self):
        with pytest.raises(ValueError):
            kx.f_natural(ss.boundary(3))


class TestDegenerateEdges:
    def test_pairs(self):
        f = OrdinalMap(1, (0, 0, 1, 1))
        assert kx.degenerate_edge_pairs(f) == ((0, 1), (2, 3))

    def test_constant_block(self):
        f = OrdinalMap(0, (0, 0, 0))
        assert kx.degenerate_edge_pairs(f) == ((0, 1), (0, 2), (1, 2))

    def test_marked_simplex(self):
        f = OrdinalMap(1, (0, 0, 1))
        w = kx.degenerate_marked_simplex(f)
        assert w.marking == {(0, 1)}
        assert w.space == ss.standard(2)


class TestRelativeSimplices:
    def test_identity_gives_whole_level(self, poset01):
        lazy = kx.LazyNerve(poset01)
        for n in range(3):
            got = kx.x_f_m(lazy, identity(n))
            assert set(got) == set(lazy.marked(n).space.level(n))

    def test_poset_strings_with_identity_edge(self, poset01):
        f = OrdinalMap(1, (0, 0, 1))
        got = kx.x_f_m(kx.LazyNerve(poset01), f)
        # oracle: strings (g1, g2) whose first edge is an identity
        nerve2 = nc.nerve(poset01, 2)
        identities = {"le_0_0", "le_1_1"}
        expected = [s for s in nerve2.level(2) if s[0] in identities]
        assert sorted(got) == sorted(expected)
        assert len(got) == 3

    def test_empty_marking_blocks_everything(self):
        w = mk.flat(ss.coskeleton0("ab", 3))
        f = OrdinalMap(1, (0, 0, 1))
        assert kx.x_f_m(w, f) == ()

    def test_injective_surjection_unaffected_by_empty_marking(self):
        w = mk.flat(ss.coskeleton0("ab", 2))
        assert len(kx.x_f_m(w, identity(1))) == 4

    def test_depth_error_names_requirement(self, poset01):
        w = nc.marked_nerve(poset01, 1, "invertibles")
        with pytest.raises(BudgetError):
            kx.x_f_m(w, OrdinalMap(1, (0, 0, 1)))

    def test_non_surjective_rejected(self, poset01):
        with pytest.raises(ValueError):
            kx.x_f_m(kx.LazyNerve(poset01), OrdinalMap(2, (0, 1)))


class TestRkLevel:
    def test_gaunt_families_biject_with_nerve_level(self, poset01, chain3):
        for cat in (poset01, chain3):
            lazy = kx.LazyNerve(cat)
            for n in range(3):
                level = kx.rk_plus_level(lazy, n, n + 2)
                assert level.stabilized
                ids = level.values_at_identity(n)
                assert sorted(map(ss.idkey, ids)) == sorted(
                    map(ss.idkey, lazy.marked(n).space.level(n))
                )

    def test_level_zero_constant_diagram(self, poset01):
        lazy = kx.LazyNerve(poset01)
        level = kx.rk_plus_level(lazy, 0, 3)
        assert len(level.families) == 2
        assert level.stabilized

    def test_empty_factor_kills_limit(self):
        space = ss.SSet(1, (((0,),), ()), {})
        w = mk.MarkedSSet(space, frozenset())
        with pytest.raises(BudgetError):
            kx.rk_plus_level(w, 0, 2)  # depth 2 unavailable

    def test_empty_top_level_diagnosed(self):
        levels = (((0,), (1,)), ((0, 1),), ())
        faces = {(0, 1): ((1,), (0,))}
        space = ss.SSet(2, levels, faces)
        w = mk.MarkedSSet(space, frozenset({(0, 1)}))
        level = kx.rk_plus_level(w, 0, 2)
        assert level.families == ()
        assert level.stabilized  # the depth-1 limit is already empty
        assert level.diagnostics

    def test_parameters_validated(self, poset01):
        with pytest.raises(ValueError):
            kx.rk_plus_level(kx.LazyNerve(poset01), 2, 1)


class TestCounit:
    def test_poset_chain(self, poset01):
        assert kx.verify_counit_gaunt(poset01, 1, 4) == []

    def test_level_zero_any_poset(self, chain3):
        assert kx.verify_counit_gaunt(chain3, 0, 3) == []

    def test_group_rejected_not_gaunt(self):
        c2 = nc.group_nucat(["e", "s"], lambda a, b: "e" if a == b else "s")
        with pytest.raises(ValueError):
            kx.verify_counit_gaunt(c2, 1, 3)

    def test_non_unital_rejected(self):
        with pytest.raises(ValueError):
            kx.verify_counit_gaunt(nc.null_semigroup_two(), 1, 3)

    def test_section_independence(self, chain3):
        # restriction along every section gives the same bijection target
        lazy = kx.LazyNerve(chain3)
        f = OrdinalMap(1, (0, 0, 1, 1))
        xf = kx.x_f_m(lazy, f)
        images = []
        for h in sections_of(f):
            images.append(sorted(ss.idkey(kx.restrict_along(lazy, h, s)) for s in xf))
        assert all(img == images[0] for img in images)
