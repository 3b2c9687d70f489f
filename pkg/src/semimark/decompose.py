"""Constructive horn decompositions with replayable certificates.

A ``PushoutCertificate`` is an ordered schedule of admissible-horn pushouts
and triangle remarkings leading from a start subobject to a target.  The
verifier replays the schedule inside the target's face structure and checks,
at each step, that the attaching boundary is exactly the horn of the added
simplex, that the declared horn is admissible, and that its required marked
edges are marked at replay time.  Builders fix a deterministic step order
(certificates are byte-for-byte reproducible), and the tests additionally
check that steps inside one (dimension, index) block may be permuted freely.

Two builders are provided: the spread decomposition assembling a horn from
two faces glued at a vertex, and the shuffle filtration assembling a tensor
of simplices from its pushout corner by adding special simplices in order of
dimension, then index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from . import marked as mk
from . import sset as ss
from .marked import MarkedSSet, admissible_marking, is_admissible, MarkedHornSpec
from .ordinal import OrdinalMap, Shuffle, compose as compose_ordinal, sections_of
from .sset import SSet, SimplexId


@dataclass(frozen=True)
class HornStep:
    """Attach ``simplex`` (a target id) along its horn at ``vertex``.

    ``marking`` is the admissible horn marking, as vertex-position pairs of
    the simplex being attached; the mapped edges must already be marked.
    """

    simplex: SimplexId
    vertex: int
    marking: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class RemarkStep:
    """Mark the third edge of a triangle that has exactly two marked edges."""

    triangle: SimplexId


Step = Union[HornStep, RemarkStep]


@dataclass(frozen=True)
class PushoutCertificate:
    start: MarkedSSet
    target: MarkedSSet
    steps: tuple[Step, ...]


def verify(cert: PushoutCertificate) -> list[str]:
    """Replay the certificate; empty report <=> every invariant holds.

    The report names the first failing step and the violated clause.
    """
    target = cert.target
    report = mk.validate_marked(target)
    if report:
        return [f"target: {r}" for r in report[:3]]
    ambient = target.space
    # the start must be a subobject of the target with the same face structure
    state: set[SimplexId] = set()
    for k in range(cert.start.truncation + 1):
        for s in cert.start.space.levels[k]:
            if s not in ambient or ambient.dim(s) != k:
                return [f"start: simplex {s!r} is not a target simplex of dimension {k}"]
            state.add(s)
    for s in state:
        if cert.start.space.dim(s) >= 1:
            if cert.start.space.faces[s] != ambient.faces[s]:
                return [f"start: faces of {s!r} disagree with the target"]
    marking = set(cert.start.marking)
    if not marking <= set(ambient.levels[1] if ambient.truncation >= 1 else ()):
        return ["start: marking contains non-edges of the target"]

    for idx, step in enumerate(cert.steps):
        where = f"step {idx}"
        if isinstance(step, RemarkStep):
            t = step.triangle
            if t not in state or ambient.dim(t) != 2:
                return [f"{where}: remark names a triangle outside the current object"]
            edges = [ambient.face(t, i) for i in range(3)]
            n_marked = sum(1 for e in edges if e in marking)
            if n_marked != 2:
                return [
                    f"{where}: triangle remarking needs exactly two marked edges, found {n_marked}"
                ]
            for e in edges:
                marking.add(e)
            continue
        sgm = step.simplex
        if sgm not in ambient:
            return [f"{where}: unknown simplex {sgm!r}"]
        k = ambient.dim(sgm)
        if sgm in state:
            return [f"{where}: simplex {sgm!r} already present"]
        if k < 2:
            return [f"{where}: horn pushouts need dimension >= 2, got {k}"]
        if not 0 <= step.vertex <= k:
            return [f"{where}: horn vertex {step.vertex} outside [0,{k}]"]
        spec = MarkedHornSpec(k, step.vertex, frozenset(step.marking))
        if not is_admissible(spec):
            return [f"{where}: the declared marked horn ({k},{step.vertex}) is not admissible"]
        missing = ambient.face(sgm, step.vertex)
        if missing in state:
            return [
                f"{where}: attaching boundary is not the horn "
                f"(face opposite {step.vertex} already present)"
            ]
        for i in range(k + 1):
            if i != step.vertex and ambient.face(sgm, i) not in state:
                return [
                    f"{where}: attaching boundary is not the horn (face {i} absent)"
                ]
        for (a, b) in step.marking:
            e = ambient.edge(sgm, a, b)
            if e not in marking:
                return [
                    f"{where}: required marked edge ({a},{b}) maps to an unmarked edge"
                ]
        state.add(sgm)
        state.add(missing)

    expected = {s for level in ambient.levels for s in level}
    if state != expected:
        extra = sorted(map(ss.idkey, state - expected))[:2]
        absent = sorted(map(ss.idkey, expected - state))[:2]
        return [f"final object differs from the target (missing {absent}, extra {extra})"]
    if marking != set(target.marking):
        return ["final marking differs from the target marking"]
    return []


def replay(cert: PushoutCertificate) -> MarkedSSet:
    """The final object of a verified certificate (the target, reconstructed)."""
    bad = verify(cert)
    if bad:
        raise ValueError(f"certificate does not verify: {bad[0]}")
    return cert.target


# -- spread decomposition ------------------------------------------------------


def _spread_sets(n: int, i: int, j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = tuple(sorted(set(range(0, j)) | {i}))
    b = tuple(sorted(set(range(j, n + 1)) | {i}))
    return a, b


def spread_marking(n: int, i: int, j: int) -> frozenset:
    """Marked edges of the glued start object: the edges out of i inside the
    lower face and the edges into i inside the upper face."""
    a, b = _spread_sets(n, i, j)
    marked = set()
    for x in a:
        if x > i:
            marked.add((i, x))
    for x in b:
        if x < i:
            marked.add((x, i))
    return frozenset(marked)


def spread_decomposition(n: int, i: int, j: int) -> PushoutCertificate:
    """Assemble the horn at vertex i from two faces glued at i.

    The start is the union of the faces on {0..j-1, i} and {j..n, i} with the
    marking of :func:`spread_marking`; each step attaches a spread simplex
    (one containing i and meeting both sides) along its horn at i, by
    increasing dimension.  The target is the horn with the same marking.
    """
    if n < 2:
        raise ValueError("spread decompositions need n >= 2")
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError(f"(i, j) = ({i}, {j}) outside [0,{n}]^2")
    a, b = _spread_sets(n, i, j)
    full = tuple(range(n + 1))
    if a == full or b == full:
        raise ValueError(
            "degenerate cut: one glued face is the whole simplex, "
            "so the start already exceeds the horn"
        )
    ambient = ss.horn(n, i)
    marking = spread_marking(n, i, j)

    start_ids = set()
    for side in (a, b):
        for r in range(1, len(side) + 1):
            for c in itertools.combinations(side, r):
                start_ids.add(tuple(c))
    start_space = ss.restrict(ambient, start_ids, truncation=ambient.truncation)
    start = MarkedSSet(start_space, marking)

    a_side = set(a) - {i}
    b_side = set(b) - {i}
    steps = []
    for size in range(3, n + 1):  # dimensions 2 .. n-1
        for subset in itertools.combinations(range(n + 1), size):
            sub = set(subset)
            if i in sub and sub & a_side and sub & b_side:
                v = subset.index(i)
                steps.append(
                    HornStep(
                        tuple(subset),
                        v,
                        tuple(sorted(admissible_marking(size - 1, v))),
                    )
                )

    target = MarkedSSet(ambient, marking)
    return PushoutCertificate(start, target, tuple(steps))


# -- shuffle filtration ----------------------------------------------------------


@dataclass(frozen=True)
class FiltrationTag:
    """Classification of a tensor simplex relative to the filtration at l."""

    full: bool
    special: bool
    index: int


def _as_pair(sigma, m: int, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if isinstance(sigma, Shuffle):
        f, g = sigma.projections()
        return f.values, g.values
    if isinstance(sigma, tuple) and sigma and isinstance(sigma[0], tuple):
        return tuple(p for p, _ in sigma), tuple(q for _, q in sigma)
    if isinstance(sigma, tuple) and len(sigma) == 2 and isinstance(sigma[0], OrdinalMap):
        return sigma[0].values, sigma[1].values
    raise ValueError("sigma must be a Shuffle, a point chain, or a pair of OrdinalMaps")


def classify(sigma, m: int, n: int, l: int) -> FiltrationTag:
    """full / special / index of a simplex of the m x n tensor at level l.

    Full: the first projection is surjective and the second hits everything
    except possibly l.  Special: full, hits l, and the first projection takes
    the same value at the first preimage of l and the last preimage of l-1.
    Index: k + 1 - n - |preimages of l|.
    """
    if not 0 < l <= n:
        raise ValueError(f"level l={l} outside (0, {n}]")
    f, g = _as_pair(sigma, m, n)
    k = len(f) - 1
    full = set(f) == set(range(m + 1)) and set(range(n + 1)) - set(g) <= {l}
    g_l = [t for t, v in enumerate(g) if v == l]
    g_lm1 = [t for t, v in enumerate(g) if v == l - 1]
    special = bool(full and g_l and g_lm1 and f[min(g_l)] == f[max(g_lm1)])
    index = k + 1 - n - len(g_l)
    return FiltrationTag(full, special, index)


def shuffle_filtration(m: int, n: int, l: int) -> PushoutCertificate:
    """Assemble the tensor of the flat m-simplex with the marked n-simplex
    from its pushout corner over the admissible horn at l.

    The corner contains every non-full simplex.  Steps add the special
    simplices, ordered by dimension then index (lexicographic on the point
    chain inside a block), each attached at the first preimage of l; an outer
    attachment only happens at l = n, where the last edge sits over the
    marked edge (n-1, n).
    """
    if m < 1:
        raise ValueError("the filtration needs m >= 1 (the m = 0 corner is the horn itself)")
    if n < 2:
        raise ValueError("admissible horns need n >= 2")
    if not 0 < l <= n:
        raise ValueError(
            f"l={l} outside (0, {n}]: the mirrored range is covered by reversal symmetry"
        )
    x = mk.flat(ss.standard(m))
    y = MarkedSSet(ss.standard(n), admissible_marking(n, l))
    ambient = mk.tensor(x, y)

    def chain_of(sid: SimplexId) -> tuple[tuple[int, int], ...]:
        return mk.tensor_id_to_chain(sid)

    start_ids = []
    specials = []
    for level in ambient.space.levels:
        for sid in level:
            tag = classify(chain_of(sid), m, n, l)
            if not tag.full:
                start_ids.append(sid)
            elif tag.special:
                specials.append((ambient.space.dim(sid), tag.index, chain_of(sid), sid))

    start_space = ss.restrict(ambient.space, start_ids, truncation=ambient.truncation)
    start = MarkedSSet(start_space, ambient.marking)

    steps = []
    for _, _, chain, sid in sorted(specials):
        g = [q for _, q in chain]
        v = min(t for t, val in enumerate(g) if val == l)
        k = len(chain) - 1
        steps.append(HornStep(sid, v, tuple(sorted(admissible_marking(k, v)))))
    return PushoutCertificate(start, ambient, tuple(steps))


def special_census(m: int, n: int, l: int) -> dict[tuple[int, int], int]:
    """Count of special simplices by (dimension, index), recomputed from the
    defining clauses over every simplex of the tensor; used to cross-check
    the filtration's steps."""
    x = mk.flat(ss.standard(m))
    y = mk.flat(ss.standard(n))
    ambient = mk.tensor(x, y)
    census: dict[tuple[int, int], int] = {}
    for level in ambient.space.levels:
        for sid in level:
            tag = classify(mk.tensor_id_to_chain(sid), m, n, l)
            if tag.special:
                key = (ambient.space.dim(sid), tag.index)
                census[key] = census.get(key, 0) + 1
    return census


# -- section pairs and the spine object -------------------------------------------


@dataclass(frozen=True)
class SectionPairGraph:
    nodes: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    edges: tuple[tuple[int, int], ...]
    connected: bool


def section_pair_graph(f: OrdinalMap) -> SectionPairGraph:
    """Pairs of sections of f, adjacent when they differ by one unit in one
    coordinate; reports connectivity of the resulting graph."""
    sections = sections_of(f)
    nodes = [
        (h1.values, h2.values) for h1 in sections for h2 in sections
    ]
    index = {node: t for t, node in enumerate(nodes)}
    edges = []
    for t, (v1, v2) in enumerate(nodes):
        for u, (w1, w2) in enumerate(nodes):
            if u <= t:
                continue
            dist = sum(abs(a - b) for a, b in zip(v1 + v2, w1 + w2))
            if dist == 1:
                edges.append((t, u))
    seen = set()
    if nodes:
        stack = [0]
        seen.add(0)
        adj: dict[int, list[int]] = {t: [] for t in range(len(nodes))}
        for t, u in edges:
            adj[t].append(u)
            adj[u].append(t)
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    connected = len(seen) == len(nodes)
    return SectionPairGraph(tuple(nodes), tuple(edges), connected)


def fiber_spine(f: OrdinalMap) -> list[tuple[int, int]]:
    """Edges (j, j+1) inside the fibers of f."""
    return [
        (j, j + 1)
        for j in range(f.domain_size)
        if f.values[j] == f.values[j + 1]
    ]


def build_T(
    h1: OrdinalMap,
    h2: OrdinalMap,
    f: OrdinalMap,
    spine_marking: Iterable[tuple[int, int]] = (),
) -> MarkedSSet:
    """The one-dimensional subobject of the domain simplex spanned by the
    fiber spines (all marked) and the crossing edges (h1(t), h2(t+1)).

    ``spine_marking`` marks the crossing edge over (t, t+1) when (t, t+1) is
    in it.  For h1 = fiberwise maxima and h2 = fiberwise minima this is the
    whole spine with the induced marking.
    """
    for h in (h1, h2):
        if h.domain_size != f.codomain_size or h.codomain_size != f.domain_size:
            raise ValueError("sections must go back from the codomain of f")
        if compose_ordinal(h, f).values != tuple(range(f.codomain_size + 1)):
            raise ValueError(f"{h.values} is not a section of {f.values}")
    m = f.domain_size
    n = f.codomain_size
    spine_marks = set(tuple(e) for e in spine_marking)
    for (a, b) in spine_marks:
        if not (0 <= a < b <= n and b == a + 1):
            raise ValueError(f"({a},{b}) is not a spine edge of the codomain")

    edges: set[tuple[int, int]] = set(fiber_spine(f))
    marked: set[tuple[int, int]] = set(edges)
    for t in range(n):
        e = (h1.values[t], h2.values[t + 1])
        if not e[0] < e[1]:
            raise ValueError("crossing edge degenerate; sections are inconsistent")
        edges.add(e)
        if (t, t + 1) in spine_marks:
            marked.add(e)
    ids = [(v,) for v in range(m + 1)] + sorted(edges)
    ambient = ss.standard(m)
    space = ss.restrict(ambient, ids, truncation=1)
    return MarkedSSet(space, frozenset(marked))


def induced_spine_marking(f: OrdinalMap, spine_marking: Iterable[tuple[int, int]]) -> MarkedSSet:
    """The spine of the domain simplex with edge (j, j+1) marked when f
    collapses it or maps it into a marked codomain spine edge."""
    spine_marks = set(tuple(e) for e in spine_marking)
    m = f.domain_size
    marked = set()
    for j in range(m):
        a, b = f.values[j], f.values[j + 1]
        if a == b or (a, b) in spine_marks:
            marked.add((j, j + 1))
    return MarkedSSet(ss.spine(m), frozenset(marked))


# -- serialization ------------------------------------------------------------------


def certificate_to_json(cert: PushoutCertificate) -> dict:
    steps = []
    for step in cert.steps:
        if isinstance(step, HornStep):
            steps.append(
                {
                    "kind": "horn",
                    "simplex": ss.idkey(step.simplex),
                    "v": step.vertex,
                    "marking": [list(e) for e in step.marking],
                }
            )
        else:
            steps.append({"kind": "remark", "triangle": ss.idkey(step.triangle)})
    return {
        "start": mk.to_json(cert.start),
        "target": mk.to_json(cert.target),
        "steps": steps,
    }


def certificate_from_json(data: dict) -> PushoutCertificate:
    steps: list[Step] = []
    for s in data["steps"]:
        if s["kind"] == "horn":
            steps.append(
                HornStep(
                    s["simplex"],
                    int(s["v"]),
                    tuple(tuple(int(v) for v in e) for e in s.get("marking", ())),
                )
            )
        elif s["kind"] == "remark":
            steps.append(RemarkStep(s["triangle"]))
        else:
            raise ValueError(f"unknown step kind {s['kind']!r}")
    return PushoutCertificate(
        mk.from_json(data["start"]), mk.from_json(data["target"]), tuple(steps)
    )
