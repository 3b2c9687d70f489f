"""Exact combinatorics of finite ordinals.

Monotone maps between the ordered sets [n] = {0, ..., n}, the injective /
surjective subclasses, sections of surjections, and shuffles (injective
order-preserving maps into a product [n] x [m] with surjective projections).
Everything is stored as an explicit value sequence; domains are tiny and
transparency beats compression.

Enumeration order is lexicographic and part of the contract: downstream
certificates replay byte-for-byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

MapClass = Literal["all", "injective", "surjective"]


@dataclass(frozen=True)
class OrdinalMap:
    """A monotone map [m] -> [n], stored as its value sequence.

    ``values[i]`` is the image of i; ``codomain_size`` is the n of [n].
    """

    codomain_size: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.codomain_size < 0:
            raise ValueError("codomain_size must be >= 0")
        if len(self.values) == 0:
            raise ValueError("domain [m] is never empty; values must have length m+1 >= 1")
        prev = 0
        for v in self.values:
            if not 0 <= v <= self.codomain_size:
                raise ValueError(f"value {v} outside codomain [{self.codomain_size}]")
            if v < prev:
                raise ValueError(f"values {self.values} are not weakly increasing")
            prev = v

    @property
    def domain_size(self) -> int:
        return len(self.values) - 1

    def __call__(self, i: int) -> int:
        return self.values[i]

    def is_injective(self) -> bool:
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.codomain_size + 1))

    def fiber(self, j: int) -> tuple[int, ...]:
        """Preimage of j, as a (possibly empty) run of consecutive indices."""
        return tuple(i for i, v in enumerate(self.values) if v == j)

    def to_json(self) -> dict:
        return {"n": self.codomain_size, "values": list(self.values)}

    @staticmethod
    def from_json(data: dict) -> "OrdinalMap":
        return OrdinalMap(int(data["n"]), tuple(int(v) for v in data["values"]))


def identity(n: int) -> OrdinalMap:
    return OrdinalMap(n, tuple(range(n + 1)))


def coface(n: int, i: int) -> OrdinalMap:
    """The injection d_i : [n-1] -> [n] skipping i."""
    if not 0 <= i <= n:
        raise ValueError(f"coface index {i} outside [{n}]")
    if n < 1:
        raise ValueError("coface needs n >= 1")
    return OrdinalMap(n, tuple(v if v < i else v + 1 for v in range(n)))


def codegeneracy(n: int, r: int) -> OrdinalMap:
    """The surjection s_r : [n+1] -> [n] hitting r twice."""
    if not 0 <= r <= n:
        raise ValueError(f"codegeneracy index {r} outside [{n}]")
    return OrdinalMap(n, tuple(v if v <= r else v - 1 for v in range(n + 2)))


def compose(f: OrdinalMap, g: OrdinalMap) -> OrdinalMap:
    """The composite g o f (first f, then g)."""
    if f.codomain_size != g.domain_size:
        raise ValueError(
            f"cannot compose: first map lands in [{f.codomain_size}], "
            f"second starts at [{g.domain_size}]"
        )
    return OrdinalMap(g.codomain_size, tuple(g.values[v] for v in f.values))


def enumerate_maps(m: int, n: int, kind: MapClass = "all") -> list[OrdinalMap]:
    """All monotone maps [m] -> [n] of the given class, lexicographically."""
    if m < 0 or n < 0:
        raise ValueError("ordinal sizes must be >= 0")
    rng = range(n + 1)
    if kind == "all":
        seqs: Iterator[tuple[int, ...]] = itertools.combinations_with_replacement(rng, m + 1)
    elif kind == "injective":
        seqs = itertools.combinations(rng, m + 1)
    elif kind == "surjective":
        full = set(rng)
        seqs = (
            s
            for s in itertools.combinations_with_replacement(rng, m + 1)
            if set(s) == full
        )
    else:
        raise ValueError(f"unknown map class {kind!r}")
    return [OrdinalMap(n, s) for s in seqs]


def sections_of(f: OrdinalMap) -> list[OrdinalMap]:
    """All monotone h with f o h = id.

    The fibers of a surjective monotone map are consecutive runs, so any
    choice of one preimage per fiber is automatically monotone; the count is
    the product of the fiber sizes.
    """
    if not f.is_surjective():
        raise ValueError("sections exist only for surjective maps")
    fibers = [f.fiber(j) for j in range(f.codomain_size + 1)]
    return [
        OrdinalMap(f.domain_size, choice)
        for choice in itertools.product(*fibers)
    ]


@dataclass(frozen=True)
class Shuffle:
    """An injective order-preserving map [k] -> [n] x [m], both projections surjective.

    ``points`` is the graph, strictly increasing in the product order; these
    index the nondegenerate simplices of a tensor product of simplices.
    """

    n: int
    m: int
    points: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("a shuffle has at least one point")
        for (a, b) in self.points:
            if not (0 <= a <= self.n and 0 <= b <= self.m):
                raise ValueError(f"point ({a},{b}) outside [{self.n}]x[{self.m}]")
        for (a, b), (c, d) in zip(self.points, self.points[1:]):
            if not (a <= c and b <= d and (a, b) != (c, d)):
                raise ValueError(f"points {self.points} not strictly increasing in product order")
        if {p[0] for p in self.points} != set(range(self.n + 1)):
            raise ValueError("first projection not surjective")
        if {p[1] for p in self.points} != set(range(self.m + 1)):
            raise ValueError("second projection not surjective")

    @property
    def k(self) -> int:
        return len(self.points) - 1

    def projections(self) -> tuple[OrdinalMap, OrdinalMap]:
        return (
            OrdinalMap(self.n, tuple(p[0] for p in self.points)),
            OrdinalMap(self.m, tuple(p[1] for p in self.points)),
        )


def _chains(points: Sequence[tuple[int, int]], size: int) -> Iterator[tuple[tuple[int, int], ...]]:
    # strictly increasing chains in the product order, lexicographic
    def extend(chain: tuple[tuple[int, int], ...], start: int) -> Iterator[tuple[tuple[int, int], ...]]:
        if len(chain) == size:
            yield chain
            return
        last = chain[-1] if chain else None
        for idx in range(start, len(points)):
            p = points[idx]
            if last is None or (last[0] <= p[0] and last[1] <= p[1] and p != last):
                yield from extend(chain + (p,), idx + 1)

    yield from extend((), 0)


def enumerate_shuffles(n: int, m: int, k: int) -> list[Shuffle]:
    """All shuffles [k] -> [n] x [m], in lexicographic order on the point sequence."""
    if n < 0 or m < 0 or k < 0:
        raise ValueError("shuffle parameters must be >= 0")
    if k < max(n, m) or k > n + m:
        return []
    grid = [(a, b) for a in range(n + 1) for b in range(m + 1)]
    out = []
    firsts = set(range(n + 1))
    seconds = set(range(m + 1))
    for chain in _chains(grid, k + 1):
        if {p[0] for p in chain} == firsts and {p[1] for p in chain} == seconds:
            out.append(Shuffle(n, m, chain))
    return out
