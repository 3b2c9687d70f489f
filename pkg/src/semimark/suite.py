"""Batch verification driver.

Runs the same checks as the acceptance tests, at reduced parameters by
default (``quick``) or at full scale (``full``).  Yields one JSON-able dict
per criterion; every dict has an ``ok`` flag and enough detail to replay the
failure.  Output is deterministic for a fixed (parameters, seed) pair.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from . import decompose as dc
from . import homology as hm
from . import kanext as kx
from . import lifting as lf
from . import marked as mk
from . import nucat as nc
from . import ordinal as od
from . import sset as ss


def _grid_chain_count(n: int, m: int, size: int) -> int:
    pts = [(a, b) for a in range(n + 1) for b in range(m + 1)]
    count = 0
    for combo in itertools.combinations(pts, size):
        ok = all(
            p[0] <= q[0] and p[1] <= q[1]
            for p, q in zip(combo, combo[1:])
        )
        if ok:
            count += 1
    return count


def check_tensor_levels(top: int) -> dict:
    bad = []
    for n in range(top + 1):
        for m in range(top + 1):
            t = mk.tensor(mk.flat(ss.standard(n)), mk.flat(ss.standard(m)))
            for k in range(t.truncation + 1):
                expected = _grid_chain_count(n, m, k + 1)
                if len(t.space.level(k)) != expected:
                    bad.append({"n": n, "m": m, "k": k, "got": len(t.space.level(k)), "want": expected})
            if ss.validate(t.space):
                bad.append({"n": n, "m": m, "invalid": True})
    return {"criterion": "tensor-levels", "ok": not bad, "detail": bad}


def check_spread(top: int) -> dict:
    bad = []
    for n in range(2, top + 1):
        for i in range(n + 1):
            for j in range(n + 1):
                a, b = dc._spread_sets(n, i, j)
                full = tuple(range(n + 1))
                if a == full or b == full:
                    try:
                        dc.spread_decomposition(n, i, j)
                        bad.append({"n": n, "i": i, "j": j, "expected": "rejection"})
                    except ValueError:
                        pass
                    continue
                cert = dc.spread_decomposition(n, i, j)
                report = dc.verify(cert)
                if report:
                    bad.append({"n": n, "i": i, "j": j, "report": report})
                    continue
                want_space = ss.horn(n, i)
                if set(cert.target.space._level_of) != set(want_space._level_of):
                    bad.append({"n": n, "i": i, "j": j, "target": "not the horn"})
                if cert.target.marking != dc.spread_marking(n, i, j):
                    bad.append({"n": n, "i": i, "j": j, "target": "wrong marking"})
    return {"criterion": "spread-decomposition", "ok": not bad, "detail": bad}


def check_filtration(top: int) -> dict:
    bad = []
    for m in range(1, top + 1):
        for n in range(2, top + 1):
            for l in range(1, n + 1):
                cert = dc.shuffle_filtration(m, n, l)
                report = dc.verify(cert)
                if report:
                    bad.append({"m": m, "n": n, "l": l, "report": report})
                    continue
                census = dc.special_census(m, n, l)
                from collections import Counter

                steps = Counter()
                for step in cert.steps:
                    k = cert.target.space.dim(step.simplex)
                    tag = dc.classify(mk.tensor_id_to_chain(step.simplex), m, n, l)
                    steps[(k, tag.index)] += 1
                if dict(steps) != census:
                    bad.append({"m": m, "n": n, "l": l, "census": "mismatch"})
    return {"criterion": "shuffle-filtration", "ok": not bad, "detail": bad}


def check_homology(top: int, horn_top: int) -> dict:
    bad = []
    for m in range(top + 1):
        for n in range(top + 1):
            t = mk.tensor(mk.flat(ss.standard(m)), mk.flat(ss.standard(n)))
            if not hm.homology(t.space).is_point():
                bad.append({"tensor": (m, n)})
    for n in range(1, horn_top + 1):
        if not hm.homology(ss.boundary(n)).is_sphere(n - 1):
            bad.append({"boundary": n})
        if n >= 2:
            for i in range(n + 1):
                if not hm.homology(ss.horn(n, i)).is_point():
                    bad.append({"horn": (n, i)})
    return {"criterion": "homology-oracle", "ok": not bad, "detail": bad}


def check_quasi_units(max_obj: int, max_hom: int, samples: int, seed: int) -> dict:
    bad = []
    count = 0
    for cat in nc.enumerate_nucats(max_obj, max_hom):
        count += 1
        if nc.check_l_qu_inv(cat):
            bad.append({"table": nc.to_json(cat), "violation": "qu-inv"})
        for x in cat.objects:
            if len(nc.quasi_units_at(cat, x)) > 1:
                bad.append({"table": nc.to_json(cat), "violation": "qu-uniqueness"})
    sampled = nc.sample_nucats(3, max_hom, samples, seed) if samples else []
    for cat in sampled:
        count += 1
        if nc.check_l_qu_inv(cat):
            bad.append({"table": nc.to_json(cat), "violation": "qu-inv (sampled)"})
        for x in cat.objects:
            if len(nc.quasi_units_at(cat, x)) > 1:
                bad.append({"table": nc.to_json(cat), "violation": "qu-uniqueness (sampled)"})
    return {
        "criterion": "quasi-unit-theory",
        "ok": not bad,
        "instances": count,
        "detail": bad[:5],
    }


def check_rlp_agreement(max_obj: int, max_hom: int, samples: int, seed: int) -> dict:
    bad = []
    count = 0
    cats = list(nc.enumerate_nucats(max_obj, max_hom))
    cats.extend(nc.sample_nucats(3, max_hom, samples, seed) if samples else [])
    for cat in cats:
        w = nc.marked_nerve(cat, 3, "invertibles")
        count += 1
        via_rlp = lf.is_quasi_unital_via_rlp(w)
        direct = lf.is_quasi_unital_direct(w)
        if via_rlp != direct:
            bad.append({"table": nc.to_json(cat), "rlp": via_rlp, "direct": direct})
    return {
        "criterion": "rlp-generators",
        "ok": not bad,
        "instances": count,
        "detail": bad[:5],
    }


def _all_posets(size: int) -> Iterator[nc.NuCat]:
    """All partial orders on {0..size-1}, as categories with identities."""
    elems = list(range(size))
    pairs = [(a, b) for a in elems for b in elems if a != b]
    for bits in itertools.product([False, True], repeat=len(pairs)):
        rel = {(a, a) for a in elems}
        rel |= {p for p, keep in zip(pairs, bits) if keep}
        if any((b, a) in rel for (a, b) in rel if a != b):
            continue
        transitive = all(
            ((a, c) in rel)
            for (a, b) in rel
            for (b2, c) in rel
            if b == b2
        )
        if not transitive:
            continue
        yield nc.poset_nucat(elems, lambda x, y, r=rel: (x, y) in r)


def check_counit(max_poset: int, n_top: int, m_max: int) -> dict:
    bad = []
    count = 0
    for size in range(1, max_poset + 1):
        for cat in _all_posets(size):
            count += 1
            lazy = kx.LazyNerve(cat, "invertibles")
            for n in range(n_top + 1):
                report = kx.verify_counit_gaunt(cat, n, m_max)
                if report:
                    bad.append({"poset": nc.to_json(cat), "n": n, "report": report[:2]})
                    continue
                level = kx.rk_plus_level(lazy, n, m_max)
                nerve_n = lazy.marked(n).space.level(n)
                ids = level.values_at_identity(n)
                if not level.stabilized or sorted(map(ss.idkey, ids)) != sorted(
                    map(ss.idkey, nerve_n)
                ):
                    bad.append({"poset": nc.to_json(cat), "n": n, "rk": "mismatch"})
    return {
        "criterion": "counit-gaunt",
        "ok": not bad,
        "instances": count,
        "detail": bad[:5],
    }


def check_section_graph(m_top: int) -> dict:
    bad = []
    for m in range(1, m_top + 1):
        for n in range(m + 1):
            for f in od.enumerate_maps(m, n, "surjective"):
                graph = dc.section_pair_graph(f)
                if not graph.connected:
                    bad.append({"f": list(f.values), "graph": "disconnected"})
                sections = od.sections_of(f)
                h_max = od.OrdinalMap(m, tuple(max(f.fiber(i)) for i in range(n + 1)))
                h_min = od.OrdinalMap(m, tuple(min(f.fiber(i)) for i in range(n + 1)))
                t = dc.build_T(h_max, h_min, f, spine_marking=())
                want = dc.induced_spine_marking(f, ())
                if not ss.isomorphic(
                    t.space, want.space, t.marking, want.marking
                ):
                    bad.append({"f": list(f.values), "T": "not the spine"})
                if len(graph.nodes) != len(sections) ** 2:
                    bad.append({"f": list(f.values), "nodes": "wrong count"})
    return {"criterion": "section-pair-graph", "ok": not bad, "detail": bad}


def run(quick: bool = True, seed: int = 0, budget: int = 1_000_000) -> Iterator[dict]:
    if quick:
        yield check_tensor_levels(2)
        yield check_spread(4)
        yield check_filtration(2)
        yield check_homology(2, 3)
        yield check_quasi_units(2, 1, 25, seed)
        yield check_rlp_agreement(2, 1, 10, seed)
        yield check_counit(2, 1, 3)
        yield check_section_graph(4)
    else:
        yield check_tensor_levels(3)
        yield check_spread(5)
        yield check_filtration(3)
        yield check_homology(3, 4)
        yield check_quasi_units(2, 2, 1000, seed)
        yield check_rlp_agreement(2, 2, 1000, seed)
        yield check_counit(4, 3, 5)
        yield check_section_graph(5)
