import json

import pytest

from semimark import sset as ss
from semimark.errors import BudgetError


class TestConstructors:
    def test_standard_levels(self):
        d2 = ss.standard(2)
        assert [len(l) for l in d2.levels] == [3, 3, 1]
        assert not ss.validate(d2)

    def test_horn_levels(self):
        h = ss.horn(2, 1)
        assert [len(l) for l in h.levels] == [3, 2, 0]
        assert set(h.levels[1]) == {(0, 1), (1, 2)}

    def test_horn_equals_spine_in_dim2(self):
        assert ss.isomorphic(ss.horn(2, 1), ss.spine(2))

    def test_boundary_levels(self):
        b = ss.boundary(3)
        assert [len(l) for l in b.levels] == [4, 6, 4]

    def test_boundary_counts_subsets(self):
        # oracle: subsets of size <= n of [n]
        import math

        for n in range(1, 5):
            b = ss.boundary(n)
            for k in range(n):
                assert len(b.levels[k]) == math.comb(n + 1, k + 1)

    def test_spine(self):
        sp = ss.spine(3)
        assert len(sp.levels[0]) == 4
        assert len(sp.levels[1]) == 3

    def test_sub_simplex_full_is_standard(self):
        assert ss.sub_simplex(3, range(4)) == ss.standard(3)

    def test_subcomplex_chain(self):
        # spine <= horn needs n >= 3 (or the inner horn): a 2-horn at an
        # outer vertex drops one spine edge
        for n in (2, 3, 4):
            for i in range(n + 1):
                spine_ids = set(ss.spine(n)._level_of)
                horn_ids = set(ss.horn(n, i)._level_of)
                bdry_ids = set(ss.boundary(n)._level_of)
                std_ids = set(ss.standard(n)._level_of)
                assert horn_ids <= bdry_ids <= std_ids
                if n >= 3 or i == 1:
                    assert spine_ids <= horn_ids

    def test_horn_bad_vertex_rejected(self):
        with pytest.raises(ValueError):
            ss.horn(2, 3)

    def test_coskeleton0(self):
        c = ss.coskeleton0(["p", "q"], 2)
        assert [len(l) for l in c.levels] == [2, 4, 8]
        assert not ss.validate(c)

    def test_coskeleton0_point(self):
        c = ss.coskeleton0(["p"], 3)
        assert [len(l) for l in c.levels] == [1, 1, 1, 1]


class TestValidate:
    def test_broken_face_pointer_named(self):
        d2 = ss.standard(2)
        faces = dict(d2.faces)
        faces[(0, 1, 2)] = ((1, 2), (0, 1), (0, 2))  # swapped two faces
        broken = ss.SSet(2, d2.levels, faces)
        report = ss.validate(broken)
        assert report
        assert any("(0, 1, 2)" in line for line in report)

    def test_wrong_level_reference(self):
        levels = (((0,), (1,)), ((0, 1),))
        faces = {(0, 1): ((1,), (0, 1))}
        broken = ss.SSet(1, levels, faces)
        assert ss.validate(broken)

    def test_level_access_beyond_truncation_fails(self):
        with pytest.raises(ValueError):
            ss.standard(1).level(2)


class TestSimplexNavigation:
    def test_vertices_of_top_cell(self):
        d3 = ss.standard(3)
        assert d3.vertices((0, 1, 2, 3)) == ((0,), (1,), (2,), (3,))

    def test_edges_of_triangle(self):
        d2 = ss.standard(2)
        assert dict(d2.edges((0, 1, 2))) == {
            (0, 1): (0, 1),
            (0, 2): (0, 2),
            (1, 2): (1, 2),
        }

    def test_maximal_simplices(self):
        assert ss.standard(2).maximal_simplices() == [(0, 1, 2)]
        assert sorted(ss.spine(2).maximal_simplices()) == [(0, 1), (1, 2)]


def count_maps_oracle(x: ss.SSet, y: ss.SSet) -> int:
    # independent oracle: exhaustive assignment of every simplex, then filter
    import itertools

    ids = [s for level in x.levels for s in level]
    pools = []
    for s in ids:
        k = x.dim(s)
        pools.append(list(y.levels[k]) if k <= y.truncation else [])
    count = 0
    for values in itertools.product(*pools):
        assignment = dict(zip(ids, values))
        ok = True
        for s in ids:
            if x.dim(s) >= 1:
                for i in range(x.dim(s) + 1):
                    if assignment[x.face(s, i)] != y.face(assignment[s], i):
                        ok = False
                        break
            if not ok:
                break
        if ok:
            count += 1
    return count


class TestEnumerateMaps:
    def test_maps_from_point(self):
        d2 = ss.standard(2)
        assert len(ss.enumerate_maps(ss.standard(0), d2)) == 3

    def test_interval_self_maps(self):
        got = ss.enumerate_maps(ss.standard(1), ss.standard(1))
        assert len(got) == 1  # no degeneracies, so no collapses

    def test_spine_into_triangle(self):
        got = ss.enumerate_maps(ss.spine(2), ss.standard(2))
        assert len(got) == count_maps_oracle(ss.spine(2), ss.standard(2))
        assert len(got) == 1

    def test_against_oracle_various(self):
        cases = [
            (ss.spine(2), ss.spine(3)),
            (ss.standard(1), ss.boundary(2)),
            (ss.boundary(2), ss.standard(2)),
            (ss.standard(0), ss.horn(2, 0)),
        ]
        for x, y in cases:
            assert len(ss.enumerate_maps(x, y)) == count_maps_oracle(x, y)

    def test_all_results_validate(self):
        for f in ss.enumerate_maps(ss.spine(2), ss.standard(3)):
            assert not f.validate()

    def test_budget_error(self):
        with pytest.raises(BudgetError):
            ss.enumerate_maps(ss.spine(3), ss.coskeleton0(range(3), 3), budget=5)

    def test_composition_closure(self):
        xs, ys, zs = ss.spine(2), ss.standard(2), ss.standard(2)
        xy = ss.enumerate_maps(xs, ys)
        yz = ss.enumerate_maps(ys, zs)
        xz = {tuple(sorted(m.mapping.items())) for m in ss.enumerate_maps(xs, zs)}
        for f in xy:
            for g in yz:
                comp = ss.compose_maps(f, g)
                assert tuple(sorted(comp.mapping.items())) in xz

    def test_deterministic_order(self):
        a = ss.enumerate_maps(ss.spine(2), ss.standard(2))
        b = ss.enumerate_maps(ss.spine(2), ss.standard(2))
        assert [m.mapping for m in a] == [m.mapping for m in b]


class TestPushout:
    def test_pushout_along_identity(self):
        x = ss.standard(2)
        ident = ss.identity_map(x)
        p, into_b, into_x = ss.pushout(ident, ident)
        assert ss.isomorphic(p, x)
        assert not ss.validate(p)

    def test_glue_two_intervals_at_a_vertex(self):
        pt = ss.standard(0)
        i1 = ss.standard(1)
        f = ss.SSetMap(pt, i1, {(0,): (1,)})  # the point goes to vertex 1
        g = ss.SSetMap(pt, i1, {(0,): (0,)})  # and to vertex 0 in the other copy
        p, _, _ = ss.pushout(f, g)
        assert ss.isomorphic(p, ss.spine(2))

    def test_fill_a_horn(self):
        horn = ss.horn(2, 1)
        d2 = ss.standard(2)
        incl = ss.SSetMap(horn, d2, {s: s for level in horn.levels for s in level})
        spn = ss.spine(2)
        iso = ss.SSetMap(horn, spn, {s: s for level in spn.levels for s in level})
        p, _, _ = ss.pushout(incl, iso)
        assert ss.isomorphic(p, ss.standard(2))
        assert not ss.validate(p)

    def test_non_injective_rejected(self):
        pt = ss.standard(0)
        two = ss.coskeleton0(["a", "b"], 0)
        fold = ss.SSetMap(two, pt, {("a",): (0,), ("b",): (0,)})
        g = ss.identity_map(two)
        with pytest.raises(ValueError):
            ss.pushout(fold, g)


class TestCanonicalForm:
    def test_relabelled_object_has_same_form(self):
        d2 = ss.standard(2)
        relabel = {s: ("z", s) for level in d2.levels for s in level}
        levels = tuple(tuple(relabel[s] for s in level) for level in d2.levels)
        faces = {
            relabel[s]: tuple(relabel[f] for f in fs) for s, fs in d2.faces.items()
        }
        other = ss.SSet(2, levels, faces)
        assert ss.canonical_form(d2) == ss.canonical_form(other)

    def test_distinguishes_marking(self):
        d1 = ss.standard(1)
        assert ss.canonical_form(d1, marking=[(0, 1)]) != ss.canonical_form(d1)

    def test_distinguishes_double_edge_from_spine(self):
        # two parallel edges vs two consecutive edges: same level counts
        levels = (((0,), (1,), (2,)), ("e", "f"))
        faces = {"e": ((1,), (0,)), "f": ((1,), (0,))}
        double = ss.SSet(1, levels, faces)
        assert ss.canonical_form(double) != ss.canonical_form(ss.spine(2))

    def test_spheres_not_points(self):
        assert not ss.isomorphic(ss.boundary(2), ss.spine(2))


class TestSerialization:
    def test_roundtrip_preserves_structure(self):
        for x in (ss.standard(2), ss.horn(3, 2), ss.coskeleton0("ab", 2)):
            data = json.loads(json.dumps(ss.to_json(x)))
            back = ss.from_json(data)
            assert ss.isomorphic(back, x)
            assert not ss.validate(back)

    def test_dot_output_mentions_edges(self):
        dot = ss.to_dot(ss.spine(2))
        assert "digraph" in dot
        assert dot.count("->") == 2
