"""Exact linear algebra over a cyclotomic field.

Dense helpers work on lists of rows of CyclotomicNumber.  ``SparseEchelon``
keeps a reduced row echelon form of sparse vectors (dicts keyed by sortable
labels) and remembers how every stored row combines the inputs, which is what
the graded-basis code needs to express dependent vectors.
"""

from __future__ import annotations

from typing import Dict, Hashable, List, Optional, Sequence

from .scalars import CyclotomicNumber

Vector = Dict[Hashable, CyclotomicNumber]
Matrix = List[List[CyclotomicNumber]]


def rref(rows: Sequence[Sequence[CyclotomicNumber]], n: int):
    """Return (reduced rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[CyclotomicNumber]], n: int) -> int:
    return len(rref(rows, n)[1])


def identity(size: int, n: int) -> Matrix:
    one, zero = CyclotomicNumber.one(n), CyclotomicNumber.zero(n)
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def inverse(mat: Sequence[Sequence[CyclotomicNumber]], n: int) -> Matrix:
    size = len(mat)
    aug = [list(row) + idrow for row, idrow in zip(mat, identity(size, n))]
    red, piv = rref(aug, n)
    if piv[:size] != list(range(size)):
        raise ZeroDivisionError("singular matrix")
    return [row[size:] for row in red]


def nullspace(rows: Sequence[Sequence[CyclotomicNumber]], ncols: int, n: int) -> Matrix:
    """Basis of {x : rows * x = 0}."""
    if not rows:
        return identity(ncols, n)
    red, piv = rref(rows, n)
    free = [c for c in range(ncols) if c not in piv]
    one, zero = CyclotomicNumber.one(n), CyclotomicNumber.zero(n)
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(piv):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def matmul(a: Matrix, b: Matrix, n: int) -> Matrix:
    zero = CyclotomicNumber.zero(n)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = zero
            for k, x in enumerate(row):
                if not x.is_zero() and not b[k][j].is_zero():
                    acc = acc + x * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def determinant_int(mat: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination (Bareiss)."""
    m = [list(r) for r in mat]
    size = len(m)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def add_scaled(target: Vector, src: Vector, c: CyclotomicNumber) -> None:
    """target += c * src, pruning zeros."""
    for k, v in src.items():
        cur = target.get(k)
        new = v * c if cur is None else cur + v * c
        if new.is_zero():
            target.pop(k, None)
        else:
            target[k] = new


class SparseEchelon:
    """Incremental reduced echelon form with combination tracking.

    ``insert(label, vec)`` either stores ``vec`` as a new independent row and
    returns None, or returns coefficients c with vec = sum c[l] * input(l)
    over previously stored labels.
    """

    def __init__(self, n: int, track: bool = True):
        self.n = n
        self.track = track
        self.rows: Dict[Hashable, Vector] = {}  # pivot -> row (pivot coeff 1)
        self.combos: Dict[Hashable, Vector] = {}  # pivot -> combination of labels
        self.labels: List[Hashable] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vector):
        v = {k: x for k, x in vec.items() if not x.is_zero()}
        combo: Vector = {}
        for key in [k for k in v if k in self.rows]:
            c = v.get(key)
            if c is None:
                continue
            add_scaled(v, self.rows[key], -c)
            if self.track:
                add_scaled(combo, self.combos[key], c)
        return v, combo

    def insert(self, label: Hashable, vec: Vector) -> Optional[Vector]:
        v, combo = self.reduce(vec)
        if not v:
            return combo
        pivot = min(v)
        inv = v[pivot].inverse()
        row = {k: x * inv for k, x in v.items()}
        own: Vector = {}
        if self.track:
            own = {label: inv}
            add_scaled(own, combo, -inv)
        for p, other in self.rows.items():
            c = other.get(pivot)
            if c is not None:
                add_scaled(other, row, -c)
                if self.track:
                    add_scaled(self.combos[p], own, -c)
        self.rows[pivot] = row
        self.combos[pivot] = own
        self.labels.append(label)
        return None

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)[0]
