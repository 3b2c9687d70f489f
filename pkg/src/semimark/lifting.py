"""Brute-force right-lifting-property decisions for marked maps.

``has_rlp`` enumerates every commuting square over a (left, right) pair of
marked maps and searches the lifts exhaustively; the verdict carries the
per-square lift counts (a witness count of exactly one per square is the
discrete shadow of a contractible lifting property) or the first
counterexample square in canonical order.

The three quasi-unitality generators are the vertex inclusions into the
marked interval and the doubly-marked tetrahedron inclusion; a discrete
marked semiSegal object is quasi-unital exactly when its terminal map lifts
against all three.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import marked as mk
from . import nucat as nc
from . import sset as ss
from .errors import BudgetError
from .marked import MarkedMap, MarkedSSet
from .sset import SSet, SimplexId


@dataclass(frozen=True)
class LiftingProblem:
    """A commuting square: left g: A -> B, right p: W -> Z, with corners
    a: A -> W and b: B -> Z satisfying p o a = b o g."""

    left: MarkedMap
    right: MarkedMap
    top: MarkedMap
    bottom: MarkedMap

    def validate(self) -> list[str]:
        report = []
        for name, f in (("left", self.left), ("right", self.right), ("top", self.top), ("bottom", self.bottom)):
            bad = f.validate()
            if bad:
                report.append(f"{name} map invalid: {bad[0]}")
        if report:
            return report
        for level in self.left.source.space.levels:
            for s in level:
                if self.right.mapping[self.top.mapping[s]] != self.bottom.mapping[self.left.mapping[s]]:
                    report.append(f"square does not commute at {s!r}")
                    return report
        return report


@dataclass(frozen=True)
class RlpResult:
    ok: bool
    squares: int
    lift_counts: tuple[int, ...]
    counterexample: Optional[LiftingProblem]

    @property
    def min_lifts(self) -> int:
        return min(self.lift_counts) if self.lift_counts else 0


def has_rlp(p: MarkedMap, g: MarkedMap, budget: int = ss.DEFAULT_MAP_BUDGET) -> RlpResult:
    """Does p have the right lifting property against g?

    Exhaustive and deterministic: squares are enumerated in canonical order
    (tops first, compatible bottoms within), lifts are counted per square,
    and the first liftless square is returned as the counterexample.
    """
    a_maps = mk.enumerate_marked_maps(g.source, p.source, budget=budget)
    counts = []
    squares = 0
    for a in a_maps:
        pins = {}
        consistent = True
        for s, img in a.mapping.items():
            key = g.mapping[s]
            val = p.mapping[img]
            if pins.get(key, val) != val:
                consistent = False
                break
            pins[key] = val
        if not consistent:
            continue
        lift_pins: dict = {}
        feasible = True
        for s, img in a.mapping.items():
            key = g.mapping[s]
            if lift_pins.get(key, img) != img:
                feasible = False
                break
            lift_pins[key] = img
        for b in mk.enumerate_marked_maps(g.target, p.target, budget=budget, pins=pins):
            squares += 1
            lifts = []
            if feasible:
                lifts = [
                    ell
                    for ell in mk.enumerate_marked_maps(
                        g.target, p.source, budget=budget, pins=lift_pins
                    )
                    if all(
                        p.mapping[ell.mapping[t]] == b.mapping[t]
                        for level in g.target.space.levels
                        for t in level
                    )
                ]
            if not lifts:
                problem = LiftingProblem(g, p, a, b)
                return RlpResult(False, squares, tuple(counts), problem)
            counts.append(len(lifts))
    return RlpResult(True, squares, tuple(counts), None)


def terminal_marked(truncation: int) -> MarkedSSet:
    """One simplex per level, the edge marked."""
    levels = tuple((("pt", k),) for k in range(truncation + 1))
    faces = {("pt", k): tuple(("pt", k - 1) for _ in range(k + 1)) for k in range(1, truncation + 1)}
    space = SSet(truncation, levels, faces)
    marking = frozenset({("pt", 1)}) if truncation >= 1 else frozenset()
    return MarkedSSet(space, marking)


def terminal_map(w: MarkedSSet) -> MarkedMap:
    t = terminal_marked(w.truncation)
    mapping = {
        s: ("pt", k)
        for k in range(w.truncation + 1)
        for s in w.space.levels[k]
    }
    return MarkedMap(w, t, mapping)


def q_generators() -> tuple[MarkedMap, MarkedMap, MarkedMap]:
    """The three quasi-unitality generators.

    Vertex 0 and vertex 1 into the sharp interval, and the tetrahedron with
    the (0,2)- and (1,3)-edges marked into the sharp tetrahedron.
    """
    interval = mk.sharp(ss.standard(1))
    point = mk.flat(ss.standard(0))
    c0 = MarkedMap(point, interval, {(0,): (0,)})
    c1 = MarkedMap(point, interval, {(0,): (1,)})
    tetra = ss.standard(3)
    c2 = MarkedMap(
        MarkedSSet(tetra, frozenset({(0, 2), (1, 3)})),
        mk.sharp(tetra),
        {s: s for level in tetra.levels for s in level},
    )
    return c0, c1, c2


def marked_semisegal_report(w: MarkedSSet) -> list[str]:
    """The discrete marked-semiSegal hypothesis, clause by clause: strict
    Segal, marking within the invertible edges, marking 2-out-of-3 closed."""
    report = []
    if w.truncation < 3:
        report.append("levels through dimension 3 required")
        return report
    defect = nc.segal_defect(w.space, min(3, w.truncation))
    if defect:
        report.append(f"Segal defect at {defect}")
        return report
    inv = nc.invertible_edges(w.space)
    if not w.marking <= inv:
        report.append("marking not contained in the invertible edges")
    if mk.closure_2of3(w).marking != w.marking:
        report.append("marking not closed under 2-out-of-3")
    return report


def is_quasi_unital_via_rlp(w: MarkedSSet, budget: int = ss.DEFAULT_MAP_BUDGET) -> bool:
    """Quasi-unitality as a lifting property of the terminal map against the
    three generators.  Rejects inputs failing the marked-semiSegal hypothesis."""
    bad = marked_semisegal_report(w)
    if bad:
        raise ValueError(f"not a discrete marked semiSegal object: {bad[0]}")
    p = terminal_map(w)
    return all(has_rlp(p, g, budget=budget).ok for g in q_generators())


def is_quasi_unital_direct(w: MarkedSSet) -> bool:
    """The definition checked directly: every vertex has a marked edge out of
    it, and every invertible edge is marked."""
    bad = marked_semisegal_report(w)
    if bad:
        raise ValueError(f"not a discrete marked semiSegal object: {bad[0]}")
    sources = {w.space.face(e, 1) for e in w.marking}
    if set(w.space.level(0)) - sources:
        return False
    return nc.invertible_edges(w.space) <= w.marking
