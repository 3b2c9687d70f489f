"""Finite non-unital categories and their nerves.

A ``NuCat`` is objects, hom-sets and an associativity-validated composition
table; no identities are assumed.  Invertible morphisms are those whose pre-
and post-composition actions are bijections on every hom-set, and a
quasi-unit is an endomorphism that is literally neutral on both sides (on
discrete hom-sets the homotopy-class identities collapse to equalities).

The nerve has composable strings as simplices: faces compose at inner
vertices and drop at the ends.  The marked nerve distinguishes invertibles,
quasi-units, or any custom edge set.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from . import marked as mk
from . import sset as ss
from .errors import BudgetError
from .sset import SSet, SimplexId

Obj = str
Mor = str


@dataclass(frozen=True)
class NuCat:
    """A finite non-unital category with globally unique morphism names."""

    objects: tuple[Obj, ...]
    homs: Mapping[tuple[Obj, Obj], tuple[Mor, ...]]
    comp: Mapping[tuple[Mor, Mor], Mor]  # (g, f) -> g after f

    def __post_init__(self):
        seen: dict[Mor, tuple[Obj, Obj]] = {}
        for (x, y), ms in self.homs.items():
            if x not in self.objects or y not in self.objects:
                raise ValueError(f"hom ({x},{y}) over unknown objects")
            for m in ms:
                if m in seen:
                    raise ValueError(f"morphism name {m!r} is not globally unique")
                seen[m] = (x, y)
        object.__setattr__(self, "_ends", seen)

    # structure access ------------------------------------------------------

    def morphisms(self) -> list[Mor]:
        return [m for (x, y) in self.hom_pairs() for m in self.homs[(x, y)]]

    def hom_pairs(self) -> list[tuple[Obj, Obj]]:
        return [(x, y) for x in self.objects for y in self.objects if self.homs.get((x, y))]

    def hom(self, x: Obj, y: Obj) -> tuple[Mor, ...]:
        return self.homs.get((x, y), ())

    def src(self, m: Mor) -> Obj:
        return self._ends[m][0]

    def tgt(self, m: Mor) -> Obj:
        return self._ends[m][1]

    def compose(self, g: Mor, f: Mor) -> Mor:
        """g after f; raises on non-composable arguments."""
        if self.tgt(f) != self.src(g):
            raise ValueError(f"{g!r} after {f!r} is not composable")
        return self.comp[(g, f)]

    def composable_pairs(self) -> Iterator[tuple[Mor, Mor]]:
        for x, y in self.hom_pairs():
            for f in self.homs[(x, y)]:
                for y2, z in self.hom_pairs():
                    if y2 != y:
                        continue
                    for g in self.homs[(y, z)]:
                        yield g, f


def validate(d: NuCat) -> list[str]:
    """Shape and associativity, exhaustively; empty report <=> valid."""
    report = []
    for (g, f), h in d.comp.items():
        if f not in d._ends or g not in d._ends:
            report.append(f"composite ({g},{f}) involves unknown morphisms")
            continue
        if d.tgt(f) != d.src(g):
            report.append(f"composite ({g},{f}) declared but pair not composable")
            continue
        if h not in d.hom(d.src(f), d.tgt(g)):
            report.append(f"composite {h} of ({g},{f}) lies in the wrong hom-set")
    for g, f in d.composable_pairs():
        if (g, f) not in d.comp:
            report.append(f"missing composite for ({g},{f})")
    if report:
        return report
    mors = d.morphisms()
    for f in mors:
        for g in mors:
            if d.src(g) != d.tgt(f):
                continue
            gf = d.comp[(g, f)]
            for h in mors:
                if d.src(h) != d.tgt(g):
                    continue
                hg = d.comp[(h, g)]
                if d.comp[(h, gf)] != d.comp[(hg, f)]:
                    report.append(f"associativity fails on ({h},{g},{f})")
    return report


# -- invertibles and quasi-units ---------------------------------------------


def invertibles(d: NuCat) -> frozenset:
    """Morphisms whose pre/post-composition actions are bijections on every hom-set."""
    out = set()
    for f in d.morphisms():
        x, y = d.src(f), d.tgt(f)
        ok = True
        for z in d.objects:
            post = [d.comp[(f, g)] for g in d.hom(z, x)]  # f after g
            if len(set(post)) != len(d.hom(z, x)) or len(post) != len(d.hom(z, y)):
                ok = False
                break
            pre = [d.comp[(h, f)] for h in d.hom(y, z)]  # h after f
            if len(set(pre)) != len(d.hom(y, z)) or len(pre) != len(d.hom(x, z)):
                ok = False
                break
        if ok:
            out.add(f)
    return frozenset(out)


def quasi_units(d: NuCat) -> frozenset:
    """Endomorphisms q with q o g = g and h o q = h for all composable g, h."""
    out = set()
    for x in d.objects:
        for q in d.hom(x, x):
            neutral = True
            for z in d.objects:
                if any(d.comp[(q, g)] != g for g in d.hom(z, x)):
                    neutral = False
                    break
                if any(d.comp[(h, q)] != h for h in d.hom(x, z)):
                    neutral = False
                    break
            if neutral:
                out.add(q)
    return frozenset(out)


def quasi_units_at(d: NuCat, x: Obj) -> tuple[Mor, ...]:
    qs = quasi_units(d)
    return tuple(q for q in d.hom(x, x) if q in qs)


def is_quasi_unital(d: NuCat) -> bool:
    qs = quasi_units(d)
    return all(any(q in qs for q in d.hom(x, x)) for x in d.objects)


def check_l_qu_inv(d: NuCat) -> list[str]:
    """Per object: (has a quasi-unit) <=> (has an invertible edge out).

    Both directions hold in every associative table; a nonempty report is a
    counterexample to that equivalence.
    """
    inv = invertibles(d)
    qs = quasi_units(d)
    report = []
    for x in d.objects:
        has_qu = any(q in qs for q in d.hom(x, x))
        has_inv_out = any(
            f in inv for y in d.objects for f in d.hom(x, y)
        )
        if has_qu != has_inv_out:
            report.append(
                f"object {x}: quasi-unit {'present' if has_qu else 'absent'} but "
                f"invertible-out {'present' if has_inv_out else 'absent'}"
            )
    return report


# -- functors -----------------------------------------------------------------


@dataclass(frozen=True)
class NuFunctor:
    source: NuCat
    target: NuCat
    obj_map: Mapping[Obj, Obj]
    mor_map: Mapping[Mor, Mor]

    def validate(self) -> list[str]:
        report = []
        for x in self.source.objects:
            if self.obj_map.get(x) not in self.target.objects:
                report.append(f"object {x} has no valid image")
        for f in self.source.morphisms():
            img = self.mor_map.get(f)
            if img is None:
                report.append(f"morphism {f} has no image")
                continue
            if img not in self.target.hom(
                self.obj_map[self.source.src(f)], self.obj_map[self.source.tgt(f)]
            ):
                report.append(f"image of {f} lies in the wrong hom-set")
        if report:
            return report
        for g, f in self.source.composable_pairs():
            lhs = self.mor_map[self.source.comp[(g, f)]]
            rhs = self.target.comp[(self.mor_map[g], self.mor_map[f])]
            if lhs != rhs:
                report.append(f"composition not preserved on ({g},{f})")
        return report


def functor_preservation(fun: NuFunctor) -> tuple[bool, bool]:
    """(preserves quasi-units, preserves invertibles), computed exhaustively.

    Requires quasi-unital source and target; the two flags coincide there.
    """
    if not is_quasi_unital(fun.source) or not is_quasi_unital(fun.target):
        raise ValueError("functor preservation is assessed between quasi-unital categories")
    qs_s, qs_t = quasi_units(fun.source), quasi_units(fun.target)
    inv_s, inv_t = invertibles(fun.source), invertibles(fun.target)
    preserves_qu = all(fun.mor_map[q] in qs_t for q in qs_s)
    preserves_inv = all(fun.mor_map[f] in inv_t for f in inv_s)
    return preserves_qu, preserves_inv


def enumerate_functors(c: NuCat, d: NuCat, budget: int = 200_000) -> list[NuFunctor]:
    """All functors c -> d, by backtracking over hom-set assignments."""
    results = []
    mors = c.morphisms()
    explored = 0

    def assign_mors(obj_map: dict, idx: int, mor_map: dict):
        nonlocal explored
        if idx == len(mors):
            fun = NuFunctor(c, d, dict(obj_map), dict(mor_map))
            if not fun.validate():
                results.append(fun)
            return
        f = mors[idx]
        x, y = obj_map[c.src(f)], obj_map[c.tgt(f)]
        for img in d.hom(x, y):
            explored += 1
            if explored > budget:
                raise BudgetError("enumerate_functors", f"budget {budget} exceeded")
            mor_map[f] = img
            ok = True
            for g in mors[: idx + 1]:
                pair_gf = (g, f) if c.src(g) == c.tgt(f) else None
                pair_fg = (f, g) if c.src(f) == c.tgt(g) else None
                for pair in (pair_gf, pair_fg):
                    if pair is None:
                        continue
                    comp = c.comp[pair]
                    if comp in mor_map:
                        if d.comp[(mor_map[pair[0]], mor_map[pair[1]])] != mor_map[comp]:
                            ok = False
                            break
                if not ok:
                    break
            if ok:
                assign_mors(obj_map, idx + 1, mor_map)
            del mor_map[f]

    for objs in itertools.product(d.objects, repeat=len(c.objects)):
        obj_map = dict(zip(c.objects, objs))
        if any(
            len(d.hom(obj_map[x], obj_map[y])) == 0
            for (x, y) in c.hom_pairs()
        ):
            continue
        assign_mors(obj_map, 0, {})
    return results


# -- nerves -------------------------------------------------------------------


def nerve(d: NuCat, depth: int) -> SSet:
    """Levels are composable strings; inner faces compose, outer faces drop."""
    levels: list[tuple[SimplexId, ...]] = [tuple(d.objects)]
    faces: dict[SimplexId, tuple[SimplexId, ...]] = {}
    strings: list[tuple[Mor, ...]] = [(m,) for m in d.morphisms()]
    if depth >= 1:
        levels.append(tuple(strings))
        for (m,) in strings:
            faces[(m,)] = (d.tgt(m), d.src(m))
    prev = strings
    for n in range(2, depth + 1):
        cur = []
        for s in prev:
            last_tgt = d.tgt(s[-1])
            for m in d.morphisms():
                if d.src(m) == last_tgt:
                    cur.append(s + (m,))
        levels.append(tuple(cur))
        for s in cur:
            fs = [s[1:]]
            for i in range(1, n):
                fs.append(s[: i - 1] + (d.comp[(s[i], s[i - 1])],) + s[i + 1 :])
            fs.append(s[:-1])
            faces[s] = tuple(fs)
        prev = cur
    return SSet(depth, tuple(levels), faces)


def marked_nerve(d: NuCat, depth: int, rule="invertibles") -> mk.MarkedSSet:
    x = nerve(d, depth)
    if rule == "invertibles":
        chosen = invertibles(d)
    elif rule == "quasi_units":
        chosen = quasi_units(d)
    else:
        chosen = frozenset(rule)
        unknown = [m for m in chosen if m not in set(d.morphisms())]
        if unknown:
            raise ValueError(f"custom marking names unknown morphisms {unknown}")
    if depth < 1:
        return mk.flat(x)
    return mk.MarkedSSet(x, frozenset((m,) for m in chosen))


def nerve_map(fun: NuFunctor, depth: int, rule="invertibles") -> mk.MarkedMap:
    """The induced map of marked nerves: strings map componentwise."""
    w = marked_nerve(fun.source, depth, rule)
    z = marked_nerve(fun.target, depth, rule)
    mapping: dict = {}
    for k in range(depth + 1):
        for s in w.space.levels[k]:
            if k == 0:
                mapping[s] = fun.obj_map[s]
            else:
                mapping[s] = tuple(fun.mor_map[m] for m in s)
    out = mk.MarkedMap(w, z, mapping)
    bad = out.validate()
    if bad:
        raise ValueError(f"functor does not induce a marked nerve map: {bad[0]}")
    return out


# -- Segal analysis of a semi-simplicial set ----------------------------------


def segal_defect(x: SSet, max_dim: Optional[int] = None) -> list[tuple[int, int]]:
    """All (n, m) with n+m <= max_dim where the comparison of level n+m with
    the vertex-matched pairs (level n, level m) fails to be a bijection.

    Probing above the truncation treats the absent levels as empty: a
    truncated object cannot satisfy the condition there unless no pair
    exists to be matched.
    """
    top = x.truncation if max_dim is None else max_dim
    bad = []
    for n in range(1, top):
        for m in range(1, top - n + 1):
            if n > x.truncation or m > x.truncation:
                continue
            pairs = set()
            for a in x.level(n):
                for b in x.level(m):
                    if x.vertex(a, n) == x.vertex(b, 0):
                        pairs.add((a, b))
            images = {}
            ok = True
            level_nm = x.level(n + m) if n + m <= x.truncation else ()
            for s in level_nm:
                front = x.restrict_to(s, tuple(range(n + 1)))
                back = x.restrict_to(s, tuple(range(n, n + m + 1)))
                key = (front, back)
                if key in images:
                    ok = False
                    break
                images[key] = s
            if ok and set(images) != pairs:
                ok = False
            if not ok:
                bad.append((n, m))
    return bad


def category_from_sset(x: SSet) -> NuCat:
    """Read a composition table off a strict-Segal semi-simplicial set.

    Needs levels through dimension 3: level 2 provides composites, level 3
    certifies associativity.  Rejects on any Segal defect.
    """
    if x.truncation < 3:
        raise ValueError("category extraction needs levels through dimension 3")
    defect = segal_defect(x, 3)
    if defect:
        raise ValueError(f"not strict Segal: defect at {defect}")
    objects = tuple(str(v) for v in x.level(0))
    names = {v: str(v) for v in x.level(0)}
    if len(set(objects)) != len(objects):
        raise ValueError("vertex ids do not stringify uniquely")
    mor_name = {e: f"e{idx}" for idx, e in enumerate(x.level(1))}
    homs: dict[tuple[str, str], list[str]] = {}
    ends: dict[str, tuple] = {}
    for e in x.level(1):
        sx, tx = x.face(e, 1), x.face(e, 0)
        homs.setdefault((names[sx], names[tx]), []).append(mor_name[e])
        ends[mor_name[e]] = (e, sx, tx)
    by_outer: dict[tuple, SimplexId] = {}
    for s in x.level(2):
        by_outer[(x.face(s, 2), x.face(s, 0))] = s
    comp = {}
    for f in x.level(1):
        for g in x.level(1):
            if x.face(g, 1) != x.face(f, 0):
                continue
            s = by_outer[(f, g)]
            comp[(mor_name[g], mor_name[f])] = mor_name[x.face(s, 1)]
    cat = NuCat(
        objects,
        {k: tuple(v) for k, v in homs.items()},
        comp,
    )
    bad = validate(cat)
    if bad:
        raise ValueError(f"extracted table fails validation: {bad[:3]}")
    return cat


def edge_name_map(x: SSet) -> dict:
    """The level-1 id -> extracted-morphism-name correspondence used by
    category_from_sset (stable across calls)."""
    return {e: f"e{idx}" for idx, e in enumerate(x.level(1))}


def invertible_edges(x: SSet) -> frozenset:
    """Invertible 1-simplices of a strict-Segal semi-simplicial set."""
    cat = category_from_sset(x)
    inv = invertibles(cat)
    name = edge_name_map(x)
    return frozenset(e for e in x.level(1) if name[e] in inv)


# -- equivalence classes and DK equivalences ----------------------------------


def eq_classes(w: mk.MarkedSSet) -> tuple[frozenset, ...]:
    """Partition of the vertices generated by the marked edges."""
    parent = {v: v for v in w.space.level(0)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in sorted(w.marking, key=ss.idkey):
        a, b = w.space.face(e, 0), w.space.face(e, 1)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict = {}
    for v in w.space.level(0):
        groups.setdefault(find(v), []).append(v)
    return tuple(
        frozenset(g) for g in sorted(groups.values(), key=lambda g: min(map(ss.idkey, g)))
    )


def fully_faithful_report(f: mk.MarkedMap) -> list[str]:
    """Bijectivity of every hom-set and marked-hom-set comparison.

    For each n >= 1 the n-simplices of the source must biject with pairs
    (target n-simplex, source vertex tuple) agreeing under the map, and the
    same with markings at n = 1.
    """
    w, z = f.source, f.target
    report = []
    top = min(w.truncation, z.truncation)

    def compare(level_w, level_z, n, tag):
        seen = {}
        for s in level_w:
            key = (f.mapping[s], w.space.vertices(s))
            if key in seen:
                report.append(f"{tag}: two {n}-simplices with equal image and vertices")
                return
            seen[key] = s
        want = set()
        vert_images = {v: f.mapping[v] for v in w.space.level(0)}
        for t in level_z:
            tv = z.space.vertices(t)
            for vs in itertools.product(w.space.level(0), repeat=n + 1):
                if tuple(vert_images[v] for v in vs) == tv:
                    want.add((t, vs))
        if set(seen) != want:
            missing = sorted(want - set(seen), key=lambda kv: ss.idkey(kv[0]))[:1]
            report.append(f"{tag}: comparison not surjective, e.g. {missing}")

    for n in range(1, top + 1):
        compare(w.space.level(n), z.space.level(n), n, f"level {n}")
    compare(
        sorted(w.marking, key=ss.idkey),
        sorted(z.marking, key=ss.idkey),
        1,
        "marked edges",
    )
    return report


def is_dk_equivalence(f: mk.MarkedMap) -> bool:
    """Fully faithful and surjective on marked-edge equivalence classes."""
    if fully_faithful_report(f):
        return False
    classes = eq_classes(f.target)
    hit = {f.mapping[v] for v in f.source.space.level(0)}
    return all(any(v in hit for v in cls) for cls in classes)


# -- discrete completeness -----------------------------------------------------


def complete_check(w: mk.MarkedSSet) -> tuple[bool, list[str]]:
    """Discrete completeness: marking equals the invertible edges and both
    restricted vertex maps on the marking are bijections.

    Precondition failures (Segal defect, marking not within invertibles,
    marking not 2-out-of-3 closed) are reported by clause.
    """
    report = []
    defect = segal_defect(w.space, min(3, w.truncation))
    if w.truncation < 3:
        report.append("precondition: levels through dimension 3 required")
        return False, report
    if defect:
        report.append(f"precondition: Segal defect at {defect}")
        return False, report
    inv = invertible_edges(w.space)
    if not w.marking <= inv:
        report.append("precondition: marking not contained in the invertible edges")
    if mk.closure_2of3(w).marking != w.marking:
        report.append("precondition: marking not closed under 2-out-of-3")
    if report:
        return False, report
    if w.marking != inv:
        report.append("marking differs from the invertible-edge set")
    verts = w.space.level(0)
    for idx, clause in ((0, "target"), (1, "source")):
        vals = [w.space.face(e, idx) for e in sorted(w.marking, key=ss.idkey)]
        if len(set(vals)) != len(vals) or set(vals) != set(verts):
            report.append(f"restricted {clause} map on the marking is not a bijection")
    return not report, report


def is_complete_discrete(w: mk.MarkedSSet) -> bool:
    ok, _ = complete_check(w)
    return ok


def is_gaunt(d: NuCat) -> bool:
    """Only invertibles are the (necessarily unique) quasi-units."""
    return invertibles(d) == quasi_units(d)


# -- corpus generation ----------------------------------------------------------


def _object_names(k: int) -> tuple[str, ...]:
    return tuple("abcdefgh"[:k])


def _table_shapes(n_obj: int, max_hom: int) -> Iterator[dict]:
    objs = _object_names(n_obj)
    pairs = [(x, y) for x in objs for y in objs]
    for sizes in itertools.product(range(max_hom + 1), repeat=len(pairs)):
        homs = {
            p: tuple(f"m_{p[0]}{p[1]}_{i}" for i in range(s))
            for p, s in zip(pairs, sizes)
        }
        # composition needs a target hom-set wherever a composable pair exists
        ok = all(
            homs[(x, z)]
            for x in objs
            for y in objs
            for z in objs
            if homs[(x, y)] and homs[(y, z)]
        )
        if ok:
            yield {p: h for p, h in homs.items() if h}


def _complete_tables(
    objs: Sequence[Obj],
    homs: Mapping[tuple[Obj, Obj], tuple[Mor, ...]],
    order: Optional[Callable] = None,
) -> Iterator[dict]:
    """All associative completions of a hom shape, by pruned backtracking."""
    ends = {m: p for p, ms in homs.items() for m in ms}
    mors = [m for p in sorted(homs) for m in homs[p]]
    slots = []
    for f in mors:
        for g in mors:
            if ends[g][0] == ends[f][1]:
                slots.append((g, f))
    targets = {
        (g, f): homs[(ends[f][0], ends[g][1])] for (g, f) in slots
    }
    comp: dict = {}
    by_value: dict = {}  # assigned value -> slots carrying it, LIFO per bucket

    def triple_ok(h, g, f) -> Optional[bool]:
        # True/False when all four lookups exist, None when still undetermined
        gf = comp.get((g, f))
        hg = comp.get((h, g))
        if gf is None or hg is None:
            return None
        left = comp.get((h, gf))
        right = comp.get((hg, f))
        if left is None or right is None:
            return None
        return left == right

    def consistent(g, f, val) -> bool:
        # a triple becomes checkable exactly when the last of its four
        # lookups is assigned; cover the four roles the new slot can play
        for h in mors:
            if ends[h][0] == ends[g][1] and triple_ok(h, g, f) is False:
                return False
            if ends[f][0] == ends[h][1] and triple_ok(g, f, h) is False:
                return False
        for (g2, f2) in by_value.get(f, ()):
            # new slot is the outer lookup (g, c(g2,f2)) of (g, g2, f2)
            if ends[g][0] == ends[g2][1] and triple_ok(g, g2, f2) is False:
                return False
        for (h2, g2) in by_value.get(g, ()):
            # new slot is the outer lookup (c(h2,g2), f) of (h2, g2, f)
            if ends[f][1] == ends[g2][0] and triple_ok(h2, g2, f) is False:
                return False
        return True

    def fill(i: int) -> Iterator[dict]:
        if i == len(slots):
            yield dict(comp)
            return
        g, f = slots[i]
        candidates = targets[(g, f)]
        if order is not None:
            candidates = order((g, f), candidates)
        for val in candidates:
            comp[(g, f)] = val
            by_value.setdefault(val, []).append((g, f))
            if consistent(g, f, val):
                yield from fill(i + 1)
            del comp[(g, f)]
            by_value[val].pop()

    yield from fill(0)


def enumerate_nucats(max_objects: int, max_hom: int) -> Iterator[NuCat]:
    """Every associative composition table with at most the given object
    count and hom-set sizes, in a deterministic order."""
    for n_obj in range(0, max_objects + 1):
        objs = _object_names(n_obj)
        for homs in _table_shapes(n_obj, max_hom):
            for table in _complete_tables(objs, homs):
                yield NuCat(objs, dict(homs), table)


def sample_nucats(n_objects: int, max_hom: int, count: int, seed: int) -> list[NuCat]:
    """Deterministic seeded sample of associative tables on n_objects objects.

    Hom shapes are drawn at random (closed under composability), then a
    randomized backtracking order picks the first associative completion.
    """
    rng = random.Random(seed)
    objs = _object_names(n_objects)
    pairs = [(x, y) for x in objs for y in objs]
    out: list[NuCat] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 50 * count:
            raise BudgetError("sample_nucats", "rejection sampling is not terminating")
        sizes = {p: rng.randint(0, max_hom) for p in pairs}
        for _ in range(8):  # close the shape under composability
            grown = False
            for x in objs:
                for y in objs:
                    for z in objs:
                        if sizes[(x, y)] and sizes[(y, z)] and not sizes[(x, z)]:
                            sizes[(x, z)] = 1
                            grown = True
            if not grown:
                break
        homs = {
            p: tuple(f"m_{p[0]}{p[1]}_{i}" for i in range(sizes[p]))
            for p in pairs
            if sizes[p]
        }
        if not homs:
            continue

        def order(_slot, candidates, _rng=rng):
            cs = list(candidates)
            _rng.shuffle(cs)
            return cs

        table = next(iter(_complete_tables(objs, homs, order=order)), None)
        if table is not None:
            out.append(NuCat(objs, homs, table))
    return out


# -- helpers for common categories ---------------------------------------------


def poset_nucat(elements: Sequence, leq: Callable) -> NuCat:
    """The poset as a category with identities: one morphism x -> y when x <= y."""
    objs = tuple(str(e) for e in elements)
    if len(set(objs)) != len(objs):
        raise ValueError("poset elements must stringify uniquely")
    keys = {str(e): e for e in elements}
    homs = {}
    for x in objs:
        for y in objs:
            if leq(keys[x], keys[y]):
                homs[(x, y)] = (f"le_{x}_{y}",)
    comp = {}
    for (x, y), (f,) in homs.items():
        for (y2, z), (g,) in homs.items():
            if y2 == y:
                comp[(g, f)] = homs[(x, z)][0]
    return NuCat(objs, homs, comp)


def group_nucat(elements: Sequence[str], op: Callable) -> NuCat:
    """A finite group as a one-object category."""
    homs = {("*", "*"): tuple(elements)}
    comp = {(g, f): op(g, f) for f in elements for g in elements}
    return NuCat(("*",), homs, comp)


def null_semigroup_two() -> NuCat:
    """Two endomorphisms a, b on one object where every composite equals b.
    No invertibles, no quasi-units."""
    homs = {("*", "*"): ("a", "b")}
    comp = {(g, f): "b" for f in ("a", "b") for g in ("a", "b")}
    return NuCat(("*",), homs, comp)


# -- serialization ---------------------------------------------------------------


def to_json(d: NuCat) -> dict:
    return {
        "objects": list(d.objects),
        "homs": {f"{x},{y}": list(ms) for (x, y), ms in sorted(d.homs.items())},
        "comp": {f"{g},{f}": h for (g, f), h in sorted(d.comp.items())},
    }


def from_json(data: dict) -> NuCat:
    homs = {}
    for key, ms in data["homs"].items():
        x, y = key.split(",")
        homs[(x, y)] = tuple(ms)
    comp = {}
    for key, h in data["comp"].items():
        g, f = key.split(",")
        comp[(g, f)] = h
    return NuCat(tuple(data["objects"]), homs, comp)
