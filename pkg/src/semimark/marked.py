"""Markings on edges and the marked tensor product.

A marking is a distinguished set of 1-simplices.  ``flat``/``sharp`` mark
nothing/everything, ``tilde`` carves out the maximal subobject all of whose
edges are marked, and the two closure operators saturate a marking under the
triangle (2-out-of-3) and tetrahedron (2-out-of-6) rules.

The tensor product realizes level k as the disjoint union of
shuffle x simplex x simplex triples; a face deletes one shuffle point and,
whenever a projection of the smaller shuffle misses a value, pushes the
corresponding face operator into that factor and reindexes.  This is the
unique normalization making the levelwise formula functorial (the chain-poset
oracle in the tests pins it down).  An edge of the product is marked when its
moving factors are marked: A x Y0, X0 x B and A x B.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from . import sset as ss
from .errors import BudgetError
from .ordinal import Shuffle, enumerate_shuffles
from .sset import SSet, SSetMap, SimplexId

DEFAULT_TENSOR_BUDGET = 500_000


@dataclass(frozen=True)
class MarkedSSet:
    """A semi-simplicial set with a set of marked edges."""

    space: SSet
    marking: frozenset

    def __post_init__(self):
        if self.space.truncation >= 1:
            level1 = set(self.space.levels[1])
        else:
            level1 = set()
        for e in self.marking:
            if e not in level1:
                raise ValueError(f"marked id {e!r} is not a 1-simplex")

    @property
    def truncation(self) -> int:
        return self.space.truncation

    def is_marked(self, e: SimplexId) -> bool:
        return e in self.marking

    def with_marking(self, marking: Iterable[SimplexId]) -> "MarkedSSet":
        return MarkedSSet(self.space, frozenset(marking))


def flat(x: SSet) -> MarkedSSet:
    return MarkedSSet(x, frozenset())


def sharp(x: SSet) -> MarkedSSet:
    edges = x.levels[1] if x.truncation >= 1 else ()
    return MarkedSSet(x, frozenset(edges))


def validate_marked(w: MarkedSSet) -> list[str]:
    return ss.validate(w.space)


def tilde(w: MarkedSSet) -> MarkedSSet:
    """The maximal subobject all of whose simplices have every edge marked.

    Vertices impose no condition; an n-simplex survives iff each of its
    (i,j)-edges is marked.  The result carries the sharp marking.
    """
    x = w.space
    keep = list(x.levels[0])
    for k in range(1, x.truncation + 1):
        for s in x.levels[k]:
            if all(e in w.marking for _, e in x.edges(s)):
                keep.append(s)
    sub = ss.restrict(x, keep)
    return sharp(sub)


def _triangle_edges(x: SSet, s: SimplexId) -> tuple[SimplexId, SimplexId, SimplexId]:
    return x.face(s, 0), x.face(s, 1), x.face(s, 2)


def closure_2of3(w: MarkedSSet) -> MarkedSSet:
    """Least marking containing the input closed under the triangle rule:
    a 2-simplex with two marked edges has its third edge marked."""
    x = w.space
    marked = set(w.marking)
    if x.truncation < 2:
        return w.with_marking(marked)
    changed = True
    while changed:
        changed = False
        for s in x.levels[2]:
            es = _triangle_edges(x, s)
            hits = sum(1 for e in es if e in marked)
            if hits == 2:
                for e in es:
                    if e not in marked:
                        marked.add(e)
                        changed = True
    return w.with_marking(marked)


def closure_2of6(w: MarkedSSet) -> MarkedSSet:
    """Least marking closed under both the triangle rule and the tetrahedron
    rule: a 3-simplex with its (0,2)- and (1,3)-edges marked has all six
    edges marked.  The tetrahedron rule alone does not subsume the triangle
    rule on objects without enough 3-simplices, so both run to a joint fixed
    point; this keeps the operator above closure_2of3 on every input."""
    x = w.space
    marked = set(w.marking)
    changed = True
    while changed:
        changed = False
        if x.truncation >= 2:
            for s in x.levels[2]:
                es = _triangle_edges(x, s)
                if sum(1 for e in es if e in marked) == 2:
                    for e in es:
                        if e not in marked:
                            marked.add(e)
                            changed = True
        if x.truncation >= 3:
            for s in x.levels[3]:
                if x.edge(s, 0, 2) in marked and x.edge(s, 1, 3) in marked:
                    for _, e in x.edges(s):
                        if e not in marked:
                            marked.add(e)
                            changed = True
    return w.with_marking(marked)


# -- marked horns ----------------------------------------------------------


@dataclass(frozen=True)
class MarkedHornSpec:
    """Data of a marked horn inclusion: the horn of the n-simplex at vertex i
    together with a marking given as vertex pairs of the ambient simplex."""

    n: int
    i: int
    marking: frozenset

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("marked horns are considered for n >= 2")
        if not 0 <= self.i <= self.n:
            raise ValueError(f"horn vertex {self.i} outside [{self.n}]")
        for pair in self.marking:
            a, b = pair
            if not (0 <= a < b <= self.n):
                raise ValueError(f"{pair} is not an edge of the {self.n}-simplex")


def is_admissible(spec: MarkedHornSpec) -> bool:
    """Inner horns with no marking, or outer horns with exactly the end edge
    adjacent to the horn vertex marked."""
    if 0 < spec.i < spec.n:
        return spec.marking == frozenset()
    if spec.i == 0:
        return spec.marking == frozenset({(0, 1)})
    return spec.marking == frozenset({(spec.n - 1, spec.n)})


def admissible_marking(n: int, i: int) -> frozenset:
    """The unique marking making the horn (n, i) admissible."""
    if 0 < i < n:
        return frozenset()
    if i == 0:
        return frozenset({(0, 1)})
    return frozenset({(n - 1, n)})


# -- marked maps -----------------------------------------------------------


@dataclass(frozen=True)
class MarkedMap:
    """A map of marked objects: face-commuting and carrying marking into marking."""

    source: MarkedSSet
    target: MarkedSSet
    mapping: Mapping[SimplexId, SimplexId]

    def __call__(self, s: SimplexId) -> SimplexId:
        return self.mapping[s]

    def underlying(self) -> SSetMap:
        return SSetMap(self.source.space, self.target.space, self.mapping)

    def validate(self) -> list[str]:
        report = self.underlying().validate()
        for e in self.source.marking:
            if self.mapping.get(e) not in self.target.marking:
                report.append(f"marked edge {e!r} maps to an unmarked edge")
        return report


def enumerate_marked_maps(
    x: MarkedSSet,
    y: MarkedSSet,
    budget: int = ss.DEFAULT_MAP_BUDGET,
    pins: Optional[Mapping[SimplexId, SimplexId]] = None,
) -> list[MarkedMap]:
    """The maps of underlying objects that send marking into marking."""
    out = []
    for f in ss.enumerate_maps(x.space, y.space, budget=budget, pins=pins):
        if all(f.mapping[e] in y.marking for e in x.marking):
            out.append(MarkedMap(x, y, f.mapping))
    return out


# -- tensor product ---------------------------------------------------------


def tensor_id(points: tuple[tuple[int, int], ...], x_id: SimplexId, y_id: SimplexId) -> SimplexId:
    return (points, x_id, y_id)


def _delete_point(
    xs: SSet, ys: SSet, points: tuple[tuple[int, int], ...], x_id: SimplexId, y_id: SimplexId, i: int
) -> SimplexId:
    """Face i of a tensor simplex: drop point i, then normalize each factor."""
    a, b = points[i]
    rest = points[:i] + points[i + 1 :]
    new_x, new_y = x_id, y_id
    if all(p[0] != a for p in rest):
        new_x = xs.face(x_id, a)
        rest = tuple((p - 1 if p > a else p, q) for p, q in rest)
    if all(q[1] != b for q in rest):
        new_y = ys.face(y_id, b)
        rest = tuple((p, q - 1 if q > b else q) for p, q in rest)
    return tensor_id(rest, new_x, new_y)


def tensor(
    x: MarkedSSet,
    y: MarkedSSet,
    truncation: Optional[int] = None,
    budget: int = DEFAULT_TENSOR_BUDGET,
) -> MarkedSSet:
    """The marked tensor product.

    Level k is the union over n, m <= k of shuffle x n-simplex x m-simplex
    triples.  The default truncation is the sum of the factor truncations
    (all higher levels are empty); pass a smaller one to cap the result.
    """
    xs, ys = x.space, y.space
    full = xs.truncation + ys.truncation
    trunc = full if truncation is None else truncation
    if trunc > full:
        trunc = full
    levels = []
    faces: dict[SimplexId, tuple[SimplexId, ...]] = {}
    total = 0
    for k in range(trunc + 1):
        level: list[SimplexId] = []
        for n in range(0, min(k, xs.truncation) + 1):
            for m in range(0, min(k, ys.truncation) + 1):
                if n + m < k:
                    continue
                for sh in enumerate_shuffles(n, m, k):
                    for xi in xs.levels[n]:
                        for yi in ys.levels[m]:
                            sid = tensor_id(sh.points, xi, yi)
                            level.append(sid)
                            if k >= 1:
                                faces[sid] = tuple(
                                    _delete_point(xs, ys, sh.points, xi, yi, i)
                                    for i in range(k + 1)
                                )
        total += len(level)
        if total > budget:
            raise BudgetError("tensor", f"more than {budget} simplices at level {k}")
        levels.append(tuple(level))
    space = SSet(trunc, tuple(levels), faces)

    marking = set()
    if trunc >= 1:
        for sid in space.levels[1]:
            points, xi, yi = sid
            (a0, b0), (a1, b1) = points
            if a0 != a1 and b0 == b1:
                if xi in x.marking:
                    marking.add(sid)
            elif a0 == a1 and b0 != b1:
                if yi in y.marking:
                    marking.add(sid)
            else:
                if xi in x.marking and yi in y.marking:
                    marking.add(sid)
    return MarkedSSet(space, frozenset(marking))


def chain_to_tensor_id(
    x: MarkedSSet, y: MarkedSSet, chain: tuple[tuple[int, int], ...]
) -> SimplexId:
    """Identify an injective order-preserving chain in [n] x [m] with a
    simplex of standard(n) (x) standard(m): split off the vertex supports."""
    xs_support = tuple(sorted({p for p, _ in chain}))
    ys_support = tuple(sorted({q for _, q in chain}))
    points = tuple(
        (xs_support.index(p), ys_support.index(q)) for p, q in chain
    )
    return tensor_id(points, xs_support, ys_support)


def tensor_id_to_chain(sid: SimplexId) -> tuple[tuple[int, int], ...]:
    """Inverse of chain_to_tensor_id on tensors of standard simplices."""
    points, xi, yi = sid
    return tuple((xi[p], yi[q]) for p, q in points)


# -- serialization -----------------------------------------------------------


def to_json(w: MarkedSSet) -> dict:
    data = ss.to_json(w.space)
    data["marking"] = sorted(ss.idkey(e) for e in w.marking)
    return data


def from_json(data: dict) -> MarkedSSet:
    space = ss.from_json(data)
    return MarkedSSet(space, frozenset(data.get("marking", ())))
