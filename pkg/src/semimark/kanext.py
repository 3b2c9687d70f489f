"""Degenerate-edge markings and the truncated right Kan extension.

``forget_plus`` strips a (truncated) simplicial set down to its underlying
semi-simplicial set and marks the degenerate edges; ``f_natural`` marks the
invertible edges instead.  For a monotone surjection f, an edge is
f-degenerate when f merges its endpoints, and the f-relative simplices of a
marked object are those whose f-degenerate edges are all marked.

``rk_plus_level`` computes level n of the right Kan extension as the limit
of those simplex sets over all surjections onto [n] with domain up to a
depth cap, with restrictions along sections and injections as transition
maps.  The index category is equivalent to a product of copies of the
ordinal category (one per fiber), so surjections are a cofinal slice; the
truncation is graceful and stabilization is reported, never assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from . import marked as mk
from . import nucat as nc
from . import sset as ss
from .errors import BudgetError
from .marked import MarkedSSet
from .nucat import NuCat
from .ordinal import OrdinalMap, compose as compose_ordinal, enumerate_maps, identity, sections_of
from .sset import SSet, SimplexId


@dataclass(frozen=True)
class SimpSet:
    """A truncated simplicial set: faces plus degeneracies.

    ``degeneracies[s]`` lists s_0 .. s_k for a k-simplex s with k below the
    truncation; all simplicial identities are testable via ``validate``.
    """

    truncation: int
    levels: tuple[tuple[SimplexId, ...], ...]
    faces: Mapping[SimplexId, tuple[SimplexId, ...]]
    degeneracies: Mapping[SimplexId, tuple[SimplexId, ...]]

    def underlying(self) -> SSet:
        return SSet(self.truncation, self.levels, self.faces)

    def face(self, s: SimplexId, i: int) -> SimplexId:
        return self.faces[s][i]

    def degeneracy(self, s: SimplexId, i: int) -> SimplexId:
        return self.degeneracies[s][i]


def validate_simplicial(x: SimpSet) -> list[str]:
    """All violated simplicial identities among faces and degeneracies."""
    report = ss.validate(x.underlying())
    if report:
        return report
    dims = {s: k for k, level in enumerate(x.levels) for s in level}
    for k in range(x.truncation):
        for s in x.levels[k]:
            degs = x.degeneracies.get(s)
            if degs is None or len(degs) != k + 1:
                report.append(f"{k}-simplex {s!r} has a malformed degeneracy list")
                continue
            for i, t in enumerate(degs):
                if dims.get(t) != k + 1:
                    report.append(f"s_{i} of {s!r} lies in the wrong level")
    if report:
        return report
    for k in range(x.truncation):
        for s in x.levels[k]:
            for i in range(k + 1):
                si = x.degeneracy(s, i)
                for j in range(k + 2):
                    # d_j s_i identities
                    left = x.face(si, j)
                    if j == i or j == i + 1:
                        expected = s
                    elif j < i:
                        expected = x.degeneracy(x.face(s, j), i - 1)
                    else:
                        expected = x.degeneracy(x.face(s, j - 1), i)
                    if left != expected:
                        report.append(f"identity d_{j} s_{i} fails at {s!r}")
            if k + 1 < x.truncation:
                for i in range(k + 1):
                    for j in range(i, k + 1):
                        if x.degeneracy(x.degeneracy(s, j), i) != x.degeneracy(
                            x.degeneracy(s, i), j + 1
                        ):
                            report.append(f"identity s_i s_j fails at {s!r} ({i},{j})")
    return report


def simplicial_nerve(d: NuCat, depth: int) -> SimpSet:
    """The nerve of a category-with-identities (a quasi-unital table), with
    degeneracies inserting the identity at a vertex."""
    if not nc.is_quasi_unital(d):
        raise ValueError("simplicial nerves need a quasi-unital table (strict identities)")
    qs = nc.quasi_units(d)
    ident = {}
    for x in d.objects:
        here = [q for q in d.hom(x, x) if q in qs]
        ident[x] = here[0]
    base = nc.nerve(d, depth)

    def objects_of(s, k):
        if k == 0:
            return (s,)
        objs = [d.src(s[0])]
        for m in s:
            objs.append(d.tgt(m))
        return tuple(objs)

    degeneracies = {}
    for k in range(depth):
        for s in base.levels[k]:
            objs = objects_of(s, k)
            degs = []
            for i in range(k + 1):
                q = ident[objs[i]]
                if k == 0:
                    degs.append((q,))
                else:
                    degs.append(s[:i] + (q,) + s[i:])
            degeneracies[s] = tuple(degs)
    return SimpSet(depth, base.levels, base.faces, degeneracies)


def forget_plus(x: SimpSet) -> MarkedSSet:
    """Drop the degeneracies; mark the image of the 0th degeneracy in level 1."""
    marking = frozenset(x.degeneracy(v, 0) for v in x.levels[0]) if x.truncation >= 1 else frozenset()
    return MarkedSSet(x.underlying(), marking)


def f_natural(x: Union[SimpSet, SSet]) -> MarkedSSet:
    """Mark the invertible edges of a strict-Segal object."""
    space = x.underlying() if isinstance(x, SimpSet) else x
    return MarkedSSet(space, nc.invertible_edges(space))


# -- f-degenerate edges and relative simplices -----------------------------------


def degenerate_edge_pairs(f: OrdinalMap) -> tuple[tuple[int, int], ...]:
    """Vertex pairs of the domain simplex merged by f."""
    m = f.domain_size
    return tuple(
        (i, j)
        for i in range(m + 1)
        for j in range(i + 1, m + 1)
        if f.values[i] == f.values[j]
    )


def degenerate_marked_simplex(f: OrdinalMap) -> MarkedSSet:
    """The domain simplex of f with exactly the f-degenerate edges marked."""
    return MarkedSSet(ss.standard(f.domain_size), frozenset(degenerate_edge_pairs(f)))


class LazyNerve:
    """Nerve levels of a finite table, computed on demand.

    Gives marked objects of any requested depth without committing to a
    truncation up front; the cache is filled once per depth and safe to read
    concurrently afterwards.
    """

    def __init__(self, d: NuCat, rule="invertibles"):
        self.category = d
        self.rule = rule
        self._cache: dict[int, MarkedSSet] = {}

    def marked(self, depth: int) -> MarkedSSet:
        if depth not in self._cache:
            self._cache[depth] = nc.marked_nerve(self.category, depth, self.rule)
        return self._cache[depth]


def _as_marked(x: Union[MarkedSSet, LazyNerve], depth: int, stage: str) -> MarkedSSet:
    if isinstance(x, LazyNerve):
        return x.marked(depth)
    if x.truncation < depth:
        raise BudgetError(stage, f"level {depth} unavailable: object truncated at {x.truncation}")
    return x


def x_f_m(x: Union[MarkedSSet, LazyNerve], f: OrdinalMap) -> tuple[SimplexId, ...]:
    """The m-simplices all of whose f-degenerate edges are marked.

    Equivalently, marked maps from the f-degenerate marked simplex.
    """
    if not f.is_surjective():
        raise ValueError("relative simplices are indexed by surjections")
    m = f.domain_size
    w = _as_marked(x, m, "x_f_m")
    pairs = degenerate_edge_pairs(f)
    out = []
    for s in w.space.level(m):
        if all(w.space.edge(s, i, j) in w.marking for (i, j) in pairs):
            out.append(s)
    return tuple(out)


def restrict_along(x: Union[MarkedSSet, LazyNerve], h: OrdinalMap, s: SimplexId) -> SimplexId:
    """h^* s for an injective h: apply the face operators missing from the image."""
    if not h.is_injective():
        raise ValueError("transition maps are restrictions along injections")
    w = _as_marked(x, h.codomain_size, "restrict_along")
    return w.space.restrict_to(s, h.values)


# -- the truncated limit -----------------------------------------------------------


@dataclass(frozen=True)
class RkLevel:
    """Level n of the truncated right Kan extension.

    ``families`` maps each surjection (by value tuple) to the chosen simplex,
    one tuple per compatible family; ``stabilized`` compares against the
    next-smaller depth cap; ``diagnostics`` names empty factors.
    """

    families: tuple[tuple[tuple[tuple[int, ...], SimplexId], ...], ...]
    stabilized: bool
    diagnostics: tuple[str, ...]

    def values_at_identity(self, n: int) -> tuple[SimplexId, ...]:
        idv = tuple(range(n + 1))
        out = []
        for fam in self.families:
            for key, val in fam:
                if key == idv:
                    out.append(val)
        return tuple(out)


def _surjections_onto(n: int, max_m: int) -> list[OrdinalMap]:
    out = []
    for m in range(n, max_m + 1):
        out.extend(enumerate_maps(m, n, "surjective"))
    return out


def _limit_families(
    x: Union[MarkedSSet, LazyNerve], n: int, max_m: int
) -> tuple[list[tuple], list[str]]:
    surjections = _surjections_onto(n, max_m)
    candidates: dict[tuple, tuple] = {}
    diagnostics = []
    for f in surjections:
        cs = x_f_m(x, f)
        candidates[f.values] = cs
        if not cs:
            diagnostics.append(
                f"empty factor at surjection {list(f.values)}: the limit is empty"
            )
    # transitions: for surjections f (domain m), g (domain k), every injective
    # h: [k] -> [m] with f o h = g restricts a choice at f to a choice at g
    transitions = []
    for f in surjections:
        for g in surjections:
            for h in enumerate_maps(g.domain_size, f.domain_size, "injective"):
                if compose_ordinal(h, f).values == g.values:
                    transitions.append((f.values, g.values, h))
    order = sorted(candidates, key=lambda v: (len(v), v))
    by_source: dict[tuple, list] = {}
    for fv, gv, h in transitions:
        by_source.setdefault(fv, []).append((gv, h))

    families: list[tuple] = []
    assignment: dict[tuple, SimplexId] = {}

    def consistent(fv) -> bool:
        for gv, h in by_source.get(fv, ()):
            if gv in assignment:
                if restrict_along(x, h, assignment[fv]) != assignment[gv]:
                    return False
        for fv2, gv, h in transitions:
            if gv == fv and fv2 in assignment:
                if restrict_along(x, h, assignment[fv2]) != assignment[fv]:
                    return False
        return True

    def search(idx: int):
        if idx == len(order):
            families.append(tuple(sorted(assignment.items())))
            return
        fv = order[idx]
        for choice in candidates[fv]:
            assignment[fv] = choice
            if consistent(fv):
                search(idx + 1)
            del assignment[fv]

    if all(candidates[v] for v in order):
        search(0)
    return families, diagnostics


def rk_plus_level(
    x: Union[MarkedSSet, LazyNerve], n: int, max_m: int
) -> RkLevel:
    """Compatible families over all surjections onto [n] with domain <= max_m.

    ``stabilized`` holds when restricting families to the max_m - 1 index set
    is a bijection onto the families computed there.
    """
    if n < 0 or max_m < n:
        raise ValueError("need max_m >= n >= 0")
    families, diagnostics = _limit_families(x, n, max_m)
    if max_m == n:
        stabilized = False
    else:
        smaller, _ = _limit_families(x, n, max_m - 1)
        keep = {v for v in (f.values for f in _surjections_onto(n, max_m - 1))}
        restricted = [
            tuple((k, val) for k, val in fam if k in keep) for fam in families
        ]
        stabilized = sorted(restricted) == sorted(smaller) and len(
            set(restricted)
        ) == len(restricted)
    return RkLevel(tuple(families), stabilized, tuple(diagnostics))


# -- counit verification --------------------------------------------------------------


def verify_counit_gaunt(c: NuCat, n: int, max_m: int) -> list[str]:
    """For a gaunt category: every section of every surjection onto [n] with
    domain <= max_m restricts the relative simplices bijectively onto level n
    of the invertibles-marked nerve.  Empty report <=> verified."""
    if not nc.is_quasi_unital(c):
        raise ValueError("counit verification needs a unital (quasi-unital) table")
    if not nc.is_gaunt(c):
        raise ValueError("counit verification is stated for gaunt tables only")
    lazy = LazyNerve(c, "invertibles")
    level_n = set(lazy.marked(n).space.level(n))
    report = []
    for f in _surjections_onto(n, max_m):
        xf = x_f_m(lazy, f)
        for h in sections_of(f):
            images = [restrict_along(lazy, h, s) for s in xf]
            if len(set(images)) != len(images):
                report.append(
                    f"section {list(h.values)} of {list(f.values)}: restriction not injective"
                )
            elif set(images) != level_n:
                report.append(
                    f"section {list(h.values)} of {list(f.values)}: restriction not onto level {n}"
                )
    return report
