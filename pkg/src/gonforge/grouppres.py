"""
Fundamental group presentation of the polyhedron and its abelianization.

Generators are the letters, relators the face boundary words. Smith
normal form runs on Python ints and returns its unimodular certificates
so the result can be checked by multiplying back.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .presentation import PolygonalPresentation, orbit_representatives, SCHEMA_VERSION

Matrix = list[list[int]]


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[tuple[tuple[int, int], ...], ...]  # (generator index 1.., exponent)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def relator_letters(self, i: int) -> list[int]:
        out = []
        for g, e in self.relators[i]:
            out += [g if e > 0 else -g] * abs(e)
        return out

    def to_gap(self) -> str:
        def word(rel):
            parts = []
            for g, e in rel:
                parts.append(f"F.{g}" if e == 1 else f"F.{g}^{e}")
            return "*".join(parts) if parts else "One(F)"

        rels = ",\n  ".join(word(r) for r in self.relators)
        return (f"F := FreeGroup({self.rank});\n"
                f"rels := [ {rels} ];\n"
                f"G := F / rels;\n")

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "generators": list(self.generators),
                "relators": [self.relator_letters(i) for i in range(len(self.relators))]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def to_group_presentation(p: PolygonalPresentation) -> GroupPresentation:
    gens = tuple(f"g{a}" for a in p.letters())
    rels = tuple(tuple((a, 1) for a in w) for w in orbit_representatives(p))
    return GroupPresentation(gens, rels)


def relation_matrix(gp: GroupPresentation) -> Matrix:
    """Exponent sums: rows are relators, columns generators."""
    m = [[0] * gp.rank for _ in gp.relators]
    for i, rel in enumerate(gp.relators):
        for g, e in rel:
            m[i][g - 1] += e
    return m


# -- integer linear algebra ------------------------------------------------------------


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def determinant(a: Matrix) -> int:
    """Bareiss fraction-free elimination; exact for integer input."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """``left @ matrix @ right == diagonal``; ``factors`` are the nonzero diagonal entries."""

    diagonal: Matrix
    left: Matrix
    right: Matrix
    factors: tuple[int, ...]

    def verify(self, matrix: Matrix) -> bool:
        if matmul(matmul(self.left, matrix), self.right) != self.diagonal:
            return False
        if abs(determinant(self.left)) != 1 or abs(determinant(self.right)) != 1:
            return False
        d = self.factors
        return all(x > 0 for x in d) and all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))


def smith_normal_form(matrix: Matrix) -> SmithForm:
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [list(map(int, r)) for r in matrix]
    left, right = identity(rows), identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):  # row dst += c * row src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + c * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, c):
        for r in a:
            r[dst] += c * r[src]
        for r in right:
            r[dst] += c * r[src]

    def neg_row(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: fold in any entry the pivot does not divide
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            neg_row(t)
        t += 1
    factors = tuple(a[i][i] for i in range(min(rows, cols)) if a[i][i])
    return SmithForm(a, left, right, factors)


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple[int, ...]

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "name": str(self)}


def abelianization(p: PolygonalPresentation | GroupPresentation) -> AbelianGroup:
    gp = p if isinstance(p, GroupPresentation) else to_group_presentation(p)
    snf = smith_normal_form(relation_matrix(gp))
    return AbelianGroup(gp.rank - len(snf.factors), tuple(d for d in snf.factors if d > 1))
