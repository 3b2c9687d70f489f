"""Levelwise-finite, dimension-truncated semi-simplicial sets.

An ``SSet`` carries an explicit truncation; asking for a level above it fails
loudly rather than pretending the level is empty, because silent truncation
corrupts limits.  Simplex ids are opaque and local to an object: constructors
here use vertex tuples, nerves use morphism strings, tensors use
(shuffle, x, y) triples.  Sameness across objects is decided by canonical
form (iterated face/coface signature refinement), never by id equality.

All values are immutable after construction and all operations are pure;
objects may be freely shared between threads.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Optional

from .errors import BudgetError

SimplexId = Any

DEFAULT_MAP_BUDGET = 1_000_000


@dataclass(frozen=True)
class SSet:
    """A semi-simplicial set, truncated at dimension ``truncation``.

    ``levels[k]`` lists the k-simplices in a fixed order; ``faces[s]`` gives
    the k+1 facets of a k-simplex (k >= 1), index i being the face opposite
    vertex i.
    """

    truncation: int
    levels: tuple[tuple[SimplexId, ...], ...]
    faces: Mapping[SimplexId, tuple[SimplexId, ...]]
    _level_of: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if self.truncation < 0:
            raise ValueError("truncation must be >= 0")
        if len(self.levels) != self.truncation + 1:
            raise ValueError(
                f"expected {self.truncation + 1} levels, got {len(self.levels)}"
            )
        index: dict[SimplexId, int] = {}
        for k, level in enumerate(self.levels):
            for s in level:
                if s in index:
                    raise ValueError(f"duplicate simplex id {s!r}")
                index[s] = k
        object.__setattr__(self, "_level_of", index)

    # -- basic access ----------------------------------------------------

    def level(self, k: int) -> tuple[SimplexId, ...]:
        if not 0 <= k <= self.truncation:
            raise ValueError(
                f"level {k} unavailable: object is truncated at {self.truncation}"
            )
        return self.levels[k]

    def dim(self, s: SimplexId) -> int:
        try:
            return self._level_of[s]
        except KeyError:
            raise ValueError(f"unknown simplex id {s!r}") from None

    def __contains__(self, s: SimplexId) -> bool:
        return s in self._level_of

    def face(self, s: SimplexId, i: int) -> SimplexId:
        k = self.dim(s)
        if k == 0:
            raise ValueError("vertices have no faces")
        if not 0 <= i <= k:
            raise ValueError(f"face index {i} outside [0,{k}]")
        return self.faces[s][i]

    def size(self) -> int:
        return sum(len(level) for level in self.levels)

    def restrict_to(self, s: SimplexId, keep: tuple[int, ...]) -> SimplexId:
        """The face of s spanned by the vertex positions ``keep`` (sorted).

        Positions are dropped from the top down, so a dropped position is
        still the face index at the moment it is dropped.
        """
        k = self.dim(s)
        cur = s
        for pos in range(k, -1, -1):
            if pos not in keep:
                cur = self.face(cur, pos)
        return cur

    def vertex(self, s: SimplexId, i: int) -> SimplexId:
        return self.restrict_to(s, (i,))

    def vertices(self, s: SimplexId) -> tuple[SimplexId, ...]:
        k = self.dim(s)
        return tuple(self.vertex(s, i) for i in range(k + 1))

    def edge(self, s: SimplexId, i: int, j: int) -> SimplexId:
        """The (i,j)-edge of s, i < j."""
        if not i < j:
            raise ValueError("edge positions must satisfy i < j")
        return self.restrict_to(s, (i, j))

    def edges(self, s: SimplexId) -> list[tuple[tuple[int, int], SimplexId]]:
        k = self.dim(s)
        return [((i, j), self.edge(s, i, j)) for i in range(k + 1) for j in range(i + 1, k + 1)]

    def maximal_simplices(self) -> list[SimplexId]:
        is_face: set[SimplexId] = set()
        for s, fs in self.faces.items():
            is_face.update(fs)
        return [s for level in reversed(self.levels) for s in level if s not in is_face]


# -- validation ----------------------------------------------------------


def validate(x: SSet) -> list[str]:
    """Every violated semi-simplicial identity, as human-readable strings.

    Empty report <=> valid.  Checks face arity, level placement and
    d_i d_j = d_{j-1} d_i for i < j.
    """
    report = []
    for k in range(1, x.truncation + 1):
        for s in x.levels[k]:
            fs = x.faces.get(s)
            if fs is None:
                report.append(f"{k}-simplex {s!r} has no face list")
                continue
            if len(fs) != k + 1:
                report.append(f"{k}-simplex {s!r} has {len(fs)} faces, expected {k + 1}")
                continue
            for i, f in enumerate(fs):
                if f not in x._level_of:
                    report.append(f"face {i} of {s!r} is an unknown id {f!r}")
                elif x.dim(f) != k - 1:
                    report.append(
                        f"face {i} of {s!r} lies in level {x.dim(f)}, expected {k - 1}"
                    )
    if report:
        return report
    for k in range(2, x.truncation + 1):
        for s in x.levels[k]:
            for j in range(k + 1):
                for i in range(j):
                    left = x.face(x.face(s, j), i)
                    right = x.face(x.face(s, i), j - 1)
                    if left != right:
                        report.append(
                            f"identity failure at {s!r}: d_{i} d_{j} = {left!r} "
                            f"but d_{j - 1} d_{i} = {right!r}"
                        )
    return report


# -- standard complexes ---------------------------------------------------


def _subset_complex(n: int, subsets: Iterable[tuple[int, ...]], truncation: int) -> SSet:
    by_dim: list[list[tuple[int, ...]]] = [[] for _ in range(truncation + 1)]
    have = set()
    for s in subsets:
        by_dim[len(s) - 1].append(s)
        have.add(s)
    faces = {}
    for k in range(1, truncation + 1):
        for s in by_dim[k]:
            fs = tuple(s[:i] + s[i + 1 :] for i in range(k + 1))
            for f in fs:
                if f not in have:
                    raise ValueError(f"subset family not face-closed at {s}")
            faces[s] = fs
    levels = tuple(tuple(sorted(level)) for level in by_dim)
    return SSet(truncation, levels, faces)


def sub_simplex(n: int, vertices: Iterable[int]) -> SSet:
    """The full sub-simplex of the standard n-simplex spanned by ``vertices``."""
    vs = tuple(sorted(set(vertices)))
    if not vs:
        raise ValueError("vertex set must be nonempty")
    if not all(0 <= v <= n for v in vs):
        raise ValueError(f"vertices {vs} outside [{n}]")
    subsets = [
        tuple(c) for r in range(1, len(vs) + 1) for c in itertools.combinations(vs, r)
    ]
    return _subset_complex(n, subsets, len(vs) - 1)


def standard(n: int) -> SSet:
    """The standard n-simplex; k-simplices are the (k+1)-subsets of [n]."""
    return sub_simplex(n, range(n + 1))


def boundary(n: int) -> SSet:
    if n < 1:
        raise ValueError("the boundary of a vertex is empty; need n >= 1")
    subsets = [
        tuple(c)
        for r in range(1, n + 1)
        for c in itertools.combinations(range(n + 1), r)
    ]
    return _subset_complex(n, subsets, n - 1)


def horn(n: int, i: int) -> SSet:
    """All facets of the n-simplex except the one opposite vertex i.

    Carries truncation n with an empty top level: the horn is the boundary
    shape a filler of dimension n would attach to.
    """
    if n < 1:
        raise ValueError("horns need n >= 1")
    if not 0 <= i <= n:
        raise ValueError(f"horn vertex {i} outside [{n}]")
    missing = tuple(v for v in range(n + 1) if v != i)
    subsets = [
        tuple(c)
        for r in range(1, n + 1)
        for c in itertools.combinations(range(n + 1), r)
        if tuple(c) != missing
    ]
    return _subset_complex(n, subsets, n)


def spine(n: int) -> SSet:
    """All vertices and the consecutive edges of the standard n-simplex."""
    if n == 0:
        return standard(0)
    subsets = [(v,) for v in range(n + 1)] + [(v, v + 1) for v in range(n)]
    return _subset_complex(n, subsets, 1)


def coskeleton0(points: Iterable[Any], truncation: int) -> SSet:
    """Level k is the (k+1)-fold product of the point set; faces delete coordinates."""
    pts = tuple(sorted(points, key=repr))
    levels = []
    faces: dict[SimplexId, tuple[SimplexId, ...]] = {}
    for k in range(truncation + 1):
        level = tuple(itertools.product(pts, repeat=k + 1))
        levels.append(level)
        if k >= 1:
            for s in level:
                faces[s] = tuple(s[:i] + s[i + 1 :] for i in range(k + 1))
    return SSet(truncation, tuple(levels), faces)


def restrict(x: SSet, ids: Iterable[SimplexId], truncation: Optional[int] = None) -> SSet:
    """The subcomplex on ``ids`` (must be face-closed), keeping ambient ids."""
    keep = set(ids)
    for s in keep:
        if s not in x._level_of:
            raise ValueError(f"{s!r} is not a simplex of the ambient object")
    for s in keep:
        if x.dim(s) >= 1:
            for f in x.faces[s]:
                if f not in keep:
                    raise ValueError(f"id set not face-closed: {s!r} has face {f!r} outside")
    trunc = x.truncation if truncation is None else truncation
    levels = tuple(
        tuple(s for s in x.levels[k] if s in keep) if k <= x.truncation else ()
        for k in range(trunc + 1)
    )
    faces = {s: x.faces[s] for s in keep if x.dim(s) >= 1}
    return SSet(trunc, levels, faces)


# -- maps -----------------------------------------------------------------


@dataclass(frozen=True)
class SSetMap:
    """A levelwise function commuting with all face operators."""

    source: SSet
    target: SSet
    mapping: Mapping[SimplexId, SimplexId]

    def __call__(self, s: SimplexId) -> SimplexId:
        return self.mapping[s]

    def validate(self) -> list[str]:
        report = []
        for k in range(self.source.truncation + 1):
            for s in self.source.levels[k]:
                if s not in self.mapping:
                    report.append(f"no image for {s!r}")
                    continue
                img = self.mapping[s]
                if img not in self.target._level_of:
                    report.append(f"image {img!r} of {s!r} not in target")
                elif self.target.dim(img) != k:
                    report.append(f"image of {s!r} has wrong dimension")
        if report:
            return report
        for k in range(1, self.source.truncation + 1):
            for s in self.source.levels[k]:
                for i in range(k + 1):
                    if self.mapping[self.source.face(s, i)] != self.target.face(self.mapping[s], i):
                        report.append(f"face commutation fails at ({s!r}, d_{i})")
        return report


def identity_map(x: SSet) -> SSetMap:
    return SSetMap(x, x, {s: s for level in x.levels for s in level})


def compose_maps(f: SSetMap, g: SSetMap) -> SSetMap:
    """g o f; sources/targets must match up."""
    if f.target is not g.source and f.target != g.source:
        raise ValueError("cannot compose: middle objects differ")
    return SSetMap(f.source, g.target, {s: g.mapping[v] for s, v in f.mapping.items()})


def inclusion_map(sub: SSet, ambient: SSet) -> SSetMap:
    return SSetMap(sub, ambient, {s: s for level in sub.levels for s in level})


def enumerate_maps(
    x: SSet,
    y: SSet,
    budget: int = DEFAULT_MAP_BUDGET,
    pins: Optional[Mapping[SimplexId, SimplexId]] = None,
) -> list[SSetMap]:
    """All maps x -> y, in a deterministic order.

    The search assigns images to the maximal simplices of x (everything else
    is forced by faces) and prunes on face conflicts.  ``pins`` fixes the
    images of selected simplices in advance.  Exceeding ``budget`` explored
    candidates raises BudgetError rather than returning a partial answer.
    """
    if x.truncation > y.truncation:
        for k in range(y.truncation + 1, x.truncation + 1):
            if x.levels[k]:
                return []
    pins = dict(pins or {})
    maximal = sorted(x.maximal_simplices(), key=lambda s: (-x.dim(s), idkey(s)))
    results: list[SSetMap] = []
    explored = 0

    def closure(assign: dict, s: SimplexId, img: SimplexId) -> Optional[dict]:
        # propagate the assignment s -> img to all faces; None on conflict
        new = {}
        stack = [(s, img)]
        while stack:
            a, b = stack.pop()
            known = assign.get(a, new.get(a))
            if known is not None:
                if known != b:
                    return None
                continue
            if a in pins and pins[a] != b:
                return None
            new[a] = b
            if x.dim(a) >= 1:
                for i in range(x.dim(a) + 1):
                    stack.append((x.face(a, i), y.face(b, i)))
        return new

    def search(idx: int, assign: dict):
        nonlocal explored
        if idx == len(maximal):
            full = dict(assign)
            for level in x.levels:
                for s in level:
                    if s not in full:
                        # isolated non-maximal simplices cannot occur, but vertices
                        # outside every maximal simplex are themselves maximal
                        raise AssertionError("incomplete assignment")
            results.append(SSetMap(x, y, full))
            return
        s = maximal[idx]
        k = x.dim(s)
        candidates = [pins[s]] if s in pins else list(y.levels[k]) if k <= y.truncation else []
        for img in candidates:
            explored += 1
            if explored > budget:
                raise BudgetError("enumerate_maps", f"budget {budget} exceeded")
            add = closure(assign, s, img)
            if add is None:
                continue
            assign.update(add)
            search(idx + 1, assign)
            for key in add:
                del assign[key]

    search(0, {})
    results.sort(key=lambda m: tuple(idkey(m.mapping[s]) for level in x.levels for s in level))
    return results


# -- pushouts -------------------------------------------------------------


def pushout(f: SSetMap, g: SSetMap) -> tuple[SSet, SSetMap, SSetMap]:
    """Pushout of B <-f- A -g-> X along a levelwise-injective f.

    Returns (P, B -> P, X -> P).  Only cofibration pushouts are supported:
    a non-injective f is rejected.
    """
    a, b, x = f.source, f.target, g.target
    images = set(f.mapping.values())
    if len(images) != sum(len(level) for level in a.levels):
        raise ValueError("pushout requires the first map to be levelwise injective")
    f_inv = {v: k for k, v in f.mapping.items()}
    trunc = max(b.truncation, x.truncation)

    def b_id(s: SimplexId) -> SimplexId:
        if s in f_inv:
            return ("x", g.mapping[f_inv[s]])
        return ("b", s)

    levels = []
    faces: dict[SimplexId, tuple[SimplexId, ...]] = {}
    for k in range(trunc + 1):
        level: list[SimplexId] = []
        if k <= x.truncation:
            for s in x.levels[k]:
                level.append(("x", s))
                if k >= 1:
                    faces[("x", s)] = tuple(("x", t) for t in x.faces[s])
        if k <= b.truncation:
            for s in b.levels[k]:
                if s in f_inv:
                    continue
                level.append(("b", s))
                if k >= 1:
                    faces[("b", s)] = tuple(b_id(t) for t in b.faces[s])
        levels.append(tuple(level))
    p = SSet(trunc, tuple(levels), faces)
    into_b = SSetMap(b, p, {s: b_id(s) for level in b.levels for s in level})
    into_x = SSetMap(x, p, {s: ("x", s) for level in x.levels for s in level})
    return p, into_b, into_x


# -- canonical forms ------------------------------------------------------


def idkey(s: SimplexId) -> str:
    """A deterministic sort key usable across heterogeneous id types."""
    return _encode_id(s)


def _encode_id(s: SimplexId) -> str:
    if isinstance(s, str):
        return s
    if isinstance(s, (int, bool)):
        return str(s)
    if isinstance(s, tuple):
        return "(" + ",".join(_encode_id(t) for t in s) + ")"
    if isinstance(s, frozenset):
        return "{" + ",".join(sorted(_encode_id(t) for t in s)) + "}"
    raise TypeError(f"unsupported simplex id type {type(s)}")


def canonical_form(
    x: SSet, marking: Iterable[SimplexId] = ()
) -> tuple[tuple[str, ...], ...]:
    """Isomorphism-invariant form: per-level sorted stable signatures.

    Signatures refine (level, markedness) through face and coface structure
    until the induced partition stabilises; two objects related by an
    isomorphism (marking-preserving, when given) have equal forms.
    """
    marked = set(marking)
    all_simplices = [s for level in x.levels for s in level]
    cofaces: dict[SimplexId, list[tuple[int, SimplexId]]] = {s: [] for s in all_simplices}
    for s in all_simplices:
        if x.dim(s) >= 1:
            for i, fct in enumerate(x.faces[s]):
                cofaces[fct].append((i, s))

    def digest(payload: str) -> str:
        return hashlib.sha256(payload.encode()).hexdigest()[:24]

    color = {s: digest(f"init|{x.dim(s)}|{1 if s in marked else 0}") for s in all_simplices}
    prev_partition: Optional[tuple] = None
    for _ in range(len(all_simplices) + 2):
        new = {}
        for s in all_simplices:
            fs = x.faces.get(s, ())
            payload = json.dumps(
                [
                    color[s],
                    [color[f] for f in fs],
                    sorted(f"{i}:{color[c]}" for i, c in cofaces[s]),
                ]
            )
            new[s] = digest(payload)
        color = new
        partition = tuple(sorted(color.values()))
        if partition == prev_partition:
            break
        prev_partition = partition
    return tuple(tuple(sorted(color[s] for s in level)) for level in x.levels)


def isomorphic(
    x: SSet, y: SSet, x_marking: Iterable[SimplexId] = (), y_marking: Iterable[SimplexId] = ()
) -> bool:
    tx, ty = x.truncation, y.truncation
    fx, fy = canonical_form(x, x_marking), canonical_form(y, y_marking)
    # allow differing truncations when the extra levels are empty
    fx = fx + ((),) * (max(tx, ty) - tx)
    fy = fy + ((),) * (max(tx, ty) - ty)
    return fx == fy


# -- serialization --------------------------------------------------------


def to_json(x: SSet) -> dict:
    return {
        "truncation": x.truncation,
        "levels": [[_encode_id(s) for s in level] for level in x.levels],
        "faces": {
            _encode_id(s): [_encode_id(f) for f in fs] for s, fs in sorted(
                x.faces.items(), key=lambda kv: idkey(kv[0])
            )
        },
    }


def from_json(data: dict) -> SSet:
    levels = tuple(tuple(level) for level in data["levels"])
    faces = {s: tuple(fs) for s, fs in data["faces"].items()}
    return SSet(int(data["truncation"]), levels, faces)


def to_dot(x: SSet) -> str:
    """The 1-skeleton as a DOT digraph (edges directed d_1 -> d_0)."""
    lines = ["digraph sset {"]
    for v in x.levels[0]:
        lines.append(f'  "{_encode_id(v)}";')
    if x.truncation >= 1:
        for e in x.levels[1]:
            tgt, src = x.faces[e]
            lines.append(f'  "{_encode_id(src)}" -> "{_encode_id(tgt)}" [label="{_encode_id(e)}"];')
    lines.append("}")
    return "\n".join(lines)
