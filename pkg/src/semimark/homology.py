"""Exact integral homology of finite semi-simplicial sets.

Chain complex with the alternating face sum as boundary, Smith normal form
over the integers with unimodular transforms, betti numbers and torsion
coefficients.  No floating point anywhere: torsion must be exact, and Python
integers grow as needed.

The sign convention (boundary = sum of (-1)^i d_i) is fixed here once; the
reported profiles are convention-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .sset import SSet


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @staticmethod
    def from_rows(rows: list[list[int]]) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        return IntMatrix(r, c, tuple(tuple(row) for row in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        ot = list(zip(*other.entries)) if other.entries else []
        rows = []
        for r in self.entries:
            rows.append(tuple(sum(a * b for a, b in zip(r, col)) for col in ot) if ot else tuple([0] * other.cols))
        return IntMatrix(self.rows, other.cols, tuple(rows))

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


def boundary_matrix(x: SSet, k: int) -> IntMatrix:
    """The boundary from k-chains to (k-1)-chains in the level basis order."""
    if not 1 <= k <= x.truncation:
        raise ValueError(f"boundary degree {k} outside 1..{x.truncation}")
    rows = {s: i for i, s in enumerate(x.levels[k - 1])}
    cols = x.levels[k]
    m = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i, f in enumerate(x.faces[s]):
            m[rows[f]][j] += (-1) ** i
    return IntMatrix(len(rows), len(cols), tuple(tuple(r) for r in m))


def smith_normal_form(mat: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (d, u, v) with u * mat * v = d, d diagonal with a divisibility
    chain of nonnegative entries, u and v unimodular."""
    rows, cols = mat.rows, mat.cols
    m = [list(r) for r in mat.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(a, b):
        m[a], m[b] = m[b], m[a]
        u[a], u[b] = u[b], u[a]

    def swap_cols(a, b):
        for row in m:
            row[a], row[b] = row[b], row[a]
        for row in v:
            row[a], row[b] = row[b], row[a]

    def add_row(dst, src, q):
        # row dst += q * row src
        mr, ur = m[dst], m[src]
        for j in range(cols):
            mr[j] += q * m[src][j]
        for j in range(rows):
            u[dst][j] += q * u[src][j]

    def add_col(dst, src, q):
        for row in m:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    def eliminate(t):
        while True:
            piv = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    val = abs(m[i][j])
                    if val and (best is None or val < best):
                        best, piv = val, (i, j)
                        if best == 1:
                            break
                if best == 1:
                    break
            if piv is None:
                return False
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    add_row(i, t, -q)
                    if m[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    add_col(j, t, -q)
                    if m[t][j]:
                        dirty = True
            if not dirty:
                return True

    rank = 0
    for t in range(min(rows, cols)):
        if not eliminate(t):
            break
        rank += 1

    for i in range(rank):
        if m[i][i] < 0:
            negate_row(i)

    # enforce the divisibility chain pairwise
    for i in range(rank):
        for j in range(i + 1, rank):
            a, b = m[i][i], m[j][j]
            if b % a == 0:
                continue
            # fold column j into column i, then re-diagonalize the 2x2 block
            add_col(i, j, 1)
            while m[j][i] != 0:
                q = m[i][i] // m[j][i]
                add_row(i, j, -q)
                swap_rows(i, j)
            # clear the off-diagonal remnant in row i
            q = m[i][j] // m[i][i]
            add_col(j, i, -q)
            if m[i][i] < 0:
                negate_row(i)
            if m[j][j] < 0:
                negate_row(j)
            g = math.gcd(a, b)
            assert m[i][i] == g and m[j][j] == abs(a * b) // g

    d = IntMatrix(rows, cols, tuple(tuple(row) for row in m))
    return d, IntMatrix(rows, rows, tuple(tuple(r) for r in u)), IntMatrix(
        cols, cols, tuple(tuple(r) for r in v)
    )


def elementary_divisors(mat: IntMatrix) -> list[int]:
    d, _, _ = smith_normal_form(mat)
    out = []
    for t in range(min(d.rows, d.cols)):
        if d.entries[t][t] != 0:
            out.append(d.entries[t][t])
    return out


@dataclass(frozen=True)
class HomologyProfile:
    """Per degree: betti number and torsion coefficients (each > 1)."""

    entries: tuple[tuple[int, int, tuple[int, ...]], ...]

    def betti(self, k: int) -> int:
        for deg, b, _ in self.entries:
            if deg == k:
                return b
        raise ValueError(f"degree {k} outside profile")

    def torsion(self, k: int) -> tuple[int, ...]:
        for deg, _, t in self.entries:
            if deg == k:
                return t
        raise ValueError(f"degree {k} outside profile")

    def is_point(self) -> bool:
        return all(
            (b, t) == ((1, ()) if k == 0 else (0, ()))
            for k, b, t in self.entries
        )

    def is_sphere(self, n: int) -> bool:
        if n == 0:
            expected = {0: 2}
        else:
            expected = {0: 1, n: 1}
        return all(
            b == expected.get(k, 0) and t == () for k, b, t in self.entries
        )

    def to_json(self) -> list:
        return [
            {"k": k, "betti": b, "torsion": list(t)} for k, b, t in self.entries
        ]


def homology(x: SSet) -> HomologyProfile:
    """Integral homology of the chain complex of x, degrees 0..truncation."""
    sizes = [len(level) for level in x.levels]
    mats = {k: boundary_matrix(x, k) for k in range(1, x.truncation + 1) if sizes[k]}
    for k in range(2, x.truncation + 1):
        if k in mats and (k - 1) in mats:
            if not mats[k - 1].mul(mats[k]).is_zero():
                raise ValueError(f"boundary composite at degree {k} is nonzero; input is not valid")
    divisors = {k: elementary_divisors(m) for k, m in mats.items()}
    ranks = {k: len(d) for k, d in divisors.items()}
    entries = []
    for k in range(x.truncation + 1):
        betti = sizes[k] - ranks.get(k, 0) - ranks.get(k + 1, 0)
        torsion = tuple(d for d in divisors.get(k + 1, []) if d > 1)
        entries.append((k, betti, torsion))
    return HomologyProfile(tuple(entries))


# package-level alias avoiding a clash with this module's own name
homology_profile = homology
