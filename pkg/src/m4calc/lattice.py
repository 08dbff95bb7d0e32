"""Integer lattices with symmetric bilinear forms, over exact rationals.

Everything here is pure and immutable: a lattice is a labelled symmetric
integer Gram matrix, vectors are rational coordinate tuples over its basis.
No floating point enters any computation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DegenerateComplement,
    DegenerateForm,
    DependentVectors,
    NonIntegralVector,
)

Rational = Fraction
_JSON_INT_LIMIT = 2**53


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


@dataclass(frozen=True)
class IntersectionLattice:
    """Free Z-module of finite rank with a symmetric integer pairing."""

    gram: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        labels = tuple(self.labels)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "labels", labels)
        n = len(gram)
        if len(labels) != n:
            raise ValueError("label count does not match rank")
        if len(set(labels)) != n:
            raise ValueError("labels must be unique")
        for i, row in enumerate(gram):
            if len(row) != n:
                raise ValueError("gram matrix must be square")
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def basis_vector(self, i: int) -> "LatticeVector":
        coords = [Fraction(0)] * self.rank
        coords[i] = Fraction(1)
        return LatticeVector(tuple(coords))

    def vector(self, coords: Iterable) -> "LatticeVector":
        return LatticeVector(tuple(_frac(c) for c in coords))

    def vector_by_labels(self, assignment: dict[str, int]) -> "LatticeVector":
        coords = [Fraction(0)] * self.rank
        for name, value in assignment.items():
            coords[self.labels.index(name)] = _frac(value)
        return LatticeVector(tuple(coords))

    def pairing(self, u: "LatticeVector", v: "LatticeVector") -> Fraction:
        if len(u.coords) != self.rank or len(v.coords) != self.rank:
            raise ValueError("vector length does not match lattice rank")
        total = Fraction(0)
        for i, ui in enumerate(u.coords):
            if ui == 0:
                continue
            row = self.gram[i]
            for j, vj in enumerate(v.coords):
                if vj != 0 and row[j] != 0:
                    total += ui * vj * row[j]
        return total

    def square(self, v: "LatticeVector") -> Fraction:
        return self.pairing(v, v)

    def determinant(self) -> int:
        det = _det_rational([[Fraction(x) for x in row] for row in self.gram])
        assert det.denominator == 1
        return det.numerator

    def direct_sum(self, other: "IntersectionLattice") -> "IntersectionLattice":
        n, m = self.rank, other.rank
        gram = [[0] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                gram[i][j] = self.gram[i][j]
        for i in range(m):
            for j in range(m):
                gram[n + i][n + j] = other.gram[i][j]
        return IntersectionLattice(
            tuple(tuple(row) for row in gram), self.labels + other.labels
        )

    def to_json(self) -> dict:
        def enc(x: int):
            return x if abs(x) <= _JSON_INT_LIMIT else str(x)

        return {
            "labels": list(self.labels),
            "gram": [[enc(x) for x in row] for row in self.gram],
        }

    @staticmethod
    def from_json(data: dict) -> "IntersectionLattice":
        gram = tuple(tuple(int(x) for x in row) for row in data["gram"])
        return IntersectionLattice(gram, tuple(data["labels"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class LatticeVector:
    """Rational coordinate vector over the ambient basis."""

    coords: tuple[Fraction, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_frac(c) for c in self.coords))

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.coords))

    def scale(self, s) -> "LatticeVector":
        s = _frac(s)
        return LatticeVector(tuple(s * a for a in self.coords))

    def int_coords(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise NonIntegralVector(f"vector {self.coords} is not integral")
        return tuple(c.numerator for c in self.coords)


# ---------------------------------------------------------------------------
# exact rational linear algebra


def _det_rational(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def signature(lattice: IntersectionLattice) -> tuple[int, int]:
    """(b_plus, b_minus) by recursive symmetric diagonalization over Q."""
    n = lattice.rank
    m = [[Fraction(x) for x in row] for row in lattice.gram]
    b_plus = b_minus = 0
    live = list(range(n))
    while live:
        pivot = next((i for i in live if m[i][i] != 0), None)
        if pivot is None:
            # all remaining diagonal entries vanish; create one via e_i += e_j
            pair = None
            for i in live:
                for j in live:
                    if i != j and m[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                raise DegenerateForm("form is degenerate (zero block)")
            i, j = pair
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            pivot = i
        d = m[pivot][pivot]
        if d > 0:
            b_plus += 1
        else:
            b_minus += 1
        live.remove(pivot)
        inv = 1 / d
        others = [j for j in live if m[pivot][j] != 0]
        for j in others:
            f = m[pivot][j] * inv
            for k in range(n):
                m[j][k] -= f * m[pivot][k]
            for k in range(n):
                m[k][j] -= f * m[k][pivot]
    return b_plus, b_minus


def parity(lattice: IntersectionLattice) -> int:
    """0 if the form is even (all x.x even), else 1."""
    return 0 if all(lattice.gram[i][i] % 2 == 0 for i in range(lattice.rank)) else 1


def is_characteristic(lattice: IntersectionLattice, k: LatticeVector) -> bool:
    """k.x == x.x mod 2 for every basis vector x."""
    ints = k.int_coords()
    for i in range(lattice.rank):
        dot = sum(ints[j] * lattice.gram[i][j] for j in range(lattice.rank))
        if (dot - lattice.gram[i][i]) % 2 != 0:
            return False
    return True


def formal_dimension(lattice: IntersectionLattice, k: LatticeVector, c: int) -> Fraction:
    """(k.k - c)/4, the expected moduli dimension for the class k."""
    return (lattice.square(k) - c) / Fraction(4)


def _smith_kernel(a: list[list[int]], ncols: int) -> list[list[int]]:
    """Saturated integral kernel basis of the integer matrix a (rows x ncols).

    Runs Smith reduction by row/column operations, accumulating the column
    transform V; kernel = columns of V matching zero columns of the reduced
    matrix. V unimodular keeps the basis primitive.
    """
    rows = len(a)
    m = [row[:] for row in a]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_cols(i, j):
        for r in range(rows):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        for r in range(ncols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def addmul_col(dst, src, f):
        for r in range(rows):
            m[r][dst] += f * m[r][src]
        for r in range(ncols):
            v[r][dst] += f * v[r][src]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]

    def addmul_row(dst, src, f):
        for c in range(ncols):
            m[dst][c] += f * m[src][c]

    t = 0
    for t in range(min(rows, ncols)):
        # find pivot of least absolute value in the remaining block
        best = None
        for r in range(t, rows):
            for c in range(t, ncols):
                if m[r][c] != 0 and (best is None or abs(m[r][c]) < abs(m[best[0]][best[1]])):
                    best = (r, c)
        if best is None:
            break
        while True:
            r, c = best
            if r != t:
                swap_rows(t, r)
            if c != t:
                swap_cols(t, c)
            done = True
            for r in range(t + 1, rows):
                q = m[r][t] // m[t][t]
                if q:
                    addmul_row(r, t, -q)
                if m[r][t] != 0:
                    done = False
            for c in range(t + 1, ncols):
                q = m[t][c] // m[t][t]
                if q:
                    addmul_col(c, t, -q)
                if m[t][c] != 0:
                    done = False
            if done:
                break
            best = (t, t)
            for r in range(t, rows):
                for c in range(t, ncols):
                    if m[r][c] != 0 and abs(m[r][c]) < abs(m[best[0]][best[1]]):
                        best = (r, c)
    zero_cols = [c for c in range(ncols) if all(m[r][c] == 0 for r in range(rows))]
    return [[v[r][c] for r in range(ncols)] for c in zero_cols]


def _rational_rank(vectors: Sequence[LatticeVector]) -> int:
    if not vectors:
        return 0
    m = [list(v.coords) for v in vectors]
    rank = 0
    cols = len(m[0])
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = 1 / m[row][col]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                f = m[r][col] * inv
                for c in range(cols):
                    m[r][c] -= f * m[row][c]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def orthogonal_complement(
    lattice: IntersectionLattice, vs: Sequence[LatticeVector]
) -> tuple[IntersectionLattice, tuple[LatticeVector, ...]]:
    """Saturated integral basis of {x : x.v = 0 for all v in vs}.

    Returns the complement with its induced Gram matrix together with the
    basis vectors expressed in ambient coordinates (the embedding).
    """
    n = lattice.rank
    for v in vs:
        if not v.is_integral:
            raise NonIntegralVector("complement input vectors must be integral")
    if _rational_rank(vs) != len(vs):
        raise DependentVectors("input vectors are linearly dependent")
    rows = []
    for v in vs:
        ints = v.int_coords()
        rows.append([sum(ints[i] * lattice.gram[i][j] for i in range(n)) for j in range(n)])
    if not rows:
        basis_cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    else:
        basis_cols = _smith_kernel(rows, n)
    basis = tuple(LatticeVector(tuple(Fraction(x) for x in col)) for col in basis_cols)
    k = len(basis)
    gram = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            val = lattice.pairing(basis[i], basis[j])
            assert val.denominator == 1
            gram[i][j] = val.numerator
    labels = tuple(f"c{i}" for i in range(k))
    return IntersectionLattice(tuple(tuple(r) for r in gram), labels), basis


def solve_in_basis(
    lattice: IntersectionLattice, basis: Sequence[LatticeVector], target: LatticeVector
) -> tuple[Fraction, ...] | None:
    """Rational coordinates of target over the given vectors, or None."""
    n = lattice.rank
    k = len(basis)
    # gaussian elimination on the n x (k+1) augmented system
    aug = [[basis[j].coords[i] for j in range(k)] + [target.coords[i]] for i in range(n)]
    pivots = []
    row = 0
    for col in range(k):
        p = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if p is None:
            continue
        aug[row], aug[p] = aug[p], aug[row]
        inv = 1 / aug[row][col]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col] * inv
                for c in range(col, k + 1):
                    aug[r][c] -= f * aug[row][c]
        pivots.append((row, col))
        row += 1
    sol = [Fraction(0)] * k
    for r, c in pivots:
        sol[c] = aug[r][k] / aug[r][c]
    # consistency
    for r in range(n):
        if all(aug[r][c] == 0 for c in range(k)) and aug[r][k] != 0:
            return None
    return tuple(sol)


def hyperbolic_gram() -> tuple[tuple[int, ...], ...]:
    return ((0, 1), (1, 0))


def e8_gram(negative: bool = True) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of E8, negated by default (the definite form of E(n))."""
    m = [[0] * 8 for _ in range(8)]
    for i in range(8):
        m[i][i] = 2
    # A7 chain on nodes 0..6, node 7 attached to node 4
    for i in range(6):
        m[i][i + 1] = m[i + 1][i] = -1
    m[4][7] = m[7][4] = -1
    if negative:
        m = [[-x for x in row] for row in m]
    return tuple(tuple(row) for row in m)


def diagonal_lattice(entries: Sequence[int], labels: Sequence[str] | None = None) -> IntersectionLattice:
    n = len(entries)
    gram = tuple(
        tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)
    )
    if labels is None:
        labels = tuple(f"d{i}" for i in range(n))
    return IntersectionLattice(gram, tuple(labels))
