"""Exact linear algebra over Z, Z/m and Q.

Everything runs on Python's arbitrary-precision integers, with
``fractions.Fraction`` for the one rational routine (``exact_signature``).
There is no floating point anywhere in this package.

The Smith normal form here is the engine behind every quotient group the
other modules compute.  Pivoting picks the smallest nonzero entry in
absolute value, which keeps entry growth manageable at the matrix sizes
this package deals with (a few dozen rows at most).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable integer matrix, stored row-major as nested tuples.

    Instances are hashable so they can serve as group elements in the
    bar-complex chains of :mod:`hdmcg.cocycles`.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        self.data = tuple(tuple(int(x) for x in row) for row in data)
        self.rows = len(self.data)
        if self.rows:
            widths = {len(r) for r in self.data}
            if len(widths) != 1:
                raise ValueError("rows of unequal length")
            self.cols = widths.pop()
            if cols is not None and cols != self.cols:
                raise ValueError("explicit column count contradicts row data")
        else:
            self.cols = 0 if cols is None else int(cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> "IntMatrix":
        entries = list(entries)
        r = len(entries) if rows is None else rows
        c = len(entries) if cols is None else cols
        data = [[0] * c for _ in range(r)]
        for i, d in enumerate(entries):
            data[i][i] = d
        return cls(data, cols=c)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]],
                     rows: int | None = None) -> "IntMatrix":
        if not columns:
            if rows is None:
                raise ValueError("row count needed for an empty column list")
            return cls.zeros(rows, 0)
        r = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(r)], cols=len(columns))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, IntMatrix) and self.cols == other.cols
                and self.data == other.data)

    def __hash__(self) -> int:
        return hash((self.cols, self.data))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.data]!r})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by "
                             f"{other.rows}x{other.cols}")
        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        ot = tuple(zip(*other.data))
        out = []
        for row in self.data:
            out.append([sum(a * b for a, b in zip(row, col)) for col in ot])
        return IntMatrix(out, cols=other.cols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix([[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.data, other.data)], cols=self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix([[a - b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.data, other.data)], cols=self.cols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.data], cols=self.cols)

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def scaled(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * a for a in r] for r in self.data], cols=self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.data)) if self.data else [], cols=self.rows)

    def mod(self, m: int) -> "IntMatrix":
        return IntMatrix([[a % m for a in r] for r in self.data], cols=self.cols)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def mult_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.data)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.data]


def hstack(*mats: IntMatrix) -> IntMatrix:
    mats = [m for m in mats if m.cols or m.rows]
    if not mats:
        return IntMatrix.zeros(0, 0)
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("row count mismatch in hstack")
    data = [sum((list(m.data[i]) for m in mats), []) for i in range(rows)]
    return IntMatrix(data, cols=sum(m.cols for m in mats))


def vstack(*mats: IntMatrix) -> IntMatrix:
    mats = list(mats)
    if not mats:
        return IntMatrix.zeros(0, 0)
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("column count mismatch in vstack")
    data = [list(r) for m in mats for r in m.data]
    return IntMatrix(data, cols=cols)


@dataclass(frozen=True)
class SNFResult:
    """Smith normal form ``U @ M @ V == D`` with U, V unimodular and the
    diagonal of D a nonnegative divisibility chain d1 | d2 | ..."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> list[int]:
        return [self.D.data[i][i] for i in range(min(self.D.rows, self.D.cols))]


def _snf_core(m: IntMatrix):
    """Row/column reduction returning (u, d, v, uinv) as nested lists.

    uinv tracks the inverse of u alongside, so callers can read off an
    integral basis of the column span without a second inversion pass.
    """
    nr, nc = m.rows, m.cols
    a = [list(r) for r in m.data]
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    uinv = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_sub(i, k, q):
        # a[i] -= q*a[k]; left-multiplying by E means uinv gains E^{-1} on the right
        ai, ak = a[i], a[k]
        for t in range(nc):
            ai[t] -= q * ak[t]
        ui, uk = u[i], u[k]
        for t in range(nr):
            ui[t] -= q * uk[t]
        for t in range(nr):
            uinv[t][k] += q * uinv[t][i]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]
        for t in range(nr):
            uinv[t][i], uinv[t][k] = uinv[t][k], uinv[t][i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for t in range(nr):
            uinv[t][i] = -uinv[t][i]

    def col_sub(j, k, q):
        # column j -= q * column k; right-multiplication, recorded in v
        for t in range(nr):
            a[t][j] -= q * a[t][k]
        for t in range(nc):
            v[t][j] -= q * v[t][k]

    def col_swap(j, k):
        for t in range(nr):
            a[t][j], a[t][k] = a[t][k], a[t][j]
        for t in range(nc):
            v[t][j], v[t][k] = v[t][k], v[t][j]

    k = 0
    limit = min(nr, nc)
    while k < limit:
        # smallest |nonzero| pivot in the trailing block
        piv = None
        best = None
        for i in range(k, nr):
            row = a[i]
            for j in range(k, nc):
                x = row[j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        if piv[0] != k:
            row_swap(k, piv[0])
        if piv[1] != k:
            col_swap(k, piv[1])
        p = a[k][k]
        dirty = False
        for i in range(k + 1, nr):
            if a[i][k]:
                q = a[i][k] // p
                if q:
                    row_sub(i, k, q)
                if a[i][k]:
                    dirty = True
        for j in range(k + 1, nc):
            if a[k][j]:
                q = a[k][j] // p
                if q:
                    col_sub(j, k, q)
                if a[k][j]:
                    dirty = True
        if dirty:
            continue
        p = a[k][k]
        # enforce d_k | (everything that is left)
        culprit = None
        for i in range(k + 1, nr):
            row = a[i]
            for j in range(k + 1, nc):
                if row[j] % p:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            row_sub(k, culprit, -1)  # a[k] += a[culprit]
            continue
        k += 1
    for i in range(limit):
        if a[i][i] < 0:
            row_neg(i)
    return a, u, v, uinv


def snf(m: IntMatrix) -> SNFResult:
    """Smith normal form with unimodular transforms, U @ M @ V == D."""
    a, u, v, _ = _snf_core(m)
    return SNFResult(U=IntMatrix(u, cols=m.rows), D=IntMatrix(a, cols=m.cols),
                     V=IntMatrix(v, cols=m.cols))


def kernel_basis(m: IntMatrix, modulus: int | None = None) -> IntMatrix:
    """Basis of ker(M) over Z, or a spanning set of ker(M mod m) over Z/m.

    Over Z the returned columns are a lattice basis of {x : Mx = 0} and the
    lattice is saturated (any integral vector in the rational kernel is an
    integral combination of the columns).  Over Z/m the columns span the
    solution set of Mx = 0 mod m, with entries reduced into [0, m).
    """
    if modulus is None:
        res = snf(m)
        r = sum(1 for d in res.diagonal() if d)
        cols = [res.V.column(j) for j in range(r, m.cols)]
        return IntMatrix.from_columns(cols, rows=m.cols)
    if modulus <= 0:
        raise ValueError("modulus must be a positive integer")
    aug = hstack(m, IntMatrix.identity(m.rows).scaled(modulus))
    full = kernel_basis(aug)
    cols = []
    for j in range(full.cols):
        col = tuple(full.data[i][j] % modulus for i in range(m.cols))
        if any(col):
            cols.append(col)
    return IntMatrix.from_columns(cols, rows=m.cols)


def column_basis(m: IntMatrix) -> IntMatrix:
    """Basis of the column-span lattice of M (columns of the result)."""
    a, _, _, uinv = _snf_core(m)
    cols = []
    for i in range(min(m.rows, m.cols)):
        d = a[i][i]
        if d:
            cols.append(tuple(uinv[t][i] * d for t in range(m.rows)))
    return IntMatrix.from_columns(cols, rows=m.rows)


def solve_exact(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """One integral solution X of A @ X == B; raises if none exists."""
    res = snf(a)
    diag = res.diagonal()
    r = sum(1 for d in diag if d)
    ub = res.U @ b
    y = [[0] * b.cols for _ in range(a.cols)]
    for i in range(ub.rows):
        for j in range(b.cols):
            val = ub.data[i][j]
            if i < r:
                d = diag[i]
                if val % d:
                    raise ValueError("no integral solution")
                y[i][j] = val // d
            elif val:
                raise ValueError("inconsistent system")
    return res.V @ IntMatrix(y, cols=b.cols)


def inverse_mod(a: IntMatrix, modulus: int = 0) -> IntMatrix:
    """Inverse of a square matrix over Z (modulus 0) or Z/m.

    Over Z the matrix must be unimodular; over Z/m its elementary divisors
    must be units mod m.
    """
    if not a.is_square:
        raise ValueError("only square matrices can be inverted")
    res = snf(a)
    diag = res.diagonal()
    if modulus == 0:
        if any(d != 1 for d in diag):
            raise ValueError("matrix is not invertible over the integers")
        return res.V @ res.U
    inv_diag = []
    for d in diag:
        inv_diag.append(pow(d % modulus, -1, modulus))
    middle = IntMatrix.diagonal(inv_diag)
    return (res.V @ middle @ res.U).mod(modulus)


def cokernel_presentation(m: IntMatrix):
    """Canonical form of Z^rows / column-span(M) plus the projection.

    Returns ``(FinAbGroup, IntMatrix)``.  The projection sends a standard
    basis vector of the ambient Z^rows to its coordinates in the canonical
    form, free coordinates first, then one coordinate per torsion factor
    (in divisibility order).
    """
    from .abgroups import FinAbGroup

    res = snf(m)
    diag = res.diagonal()
    r = sum(1 for d in diag if d)
    free_rows = list(range(r, m.rows))
    torsion_rows = [i for i in range(r) if diag[i] > 1]
    factors = tuple(diag[i] for i in torsion_rows)
    group = FinAbGroup(rank=len(free_rows), torsion=factors)
    proj = IntMatrix([res.U.data[i] for i in free_rows + torsion_rows],
                     cols=m.rows)
    return group, proj


def exact_signature(s) -> int:
    """Signature of a symmetric rational matrix by congruence diagonalization.

    Accepts an IntMatrix or a nested sequence of ints/Fractions.  A zero
    diagonal with a nonzero off-diagonal entry is split off as a hyperbolic
    pair, contributing +1 and -1 (so nothing) to the count.
    """
    if isinstance(s, IntMatrix):
        rows = s.to_lists()
    else:
        rows = [list(r) for r in s]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("signature needs a square matrix")
    a = [[Fraction(x) for x in row] for row in rows]
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise ValueError("signature needs a symmetric matrix")
    active = list(range(n))
    pos = neg = 0
    while active:
        p = next((i for i in active if a[i][i] != 0), None)
        if p is None:
            pair = None
            for ii, i in enumerate(active):
                for j in active[ii + 1:]:
                    if a[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            for t in active:
                a[i][t] += a[j][t]
            for t in active:
                a[t][i] += a[t][j]
            continue
        d = a[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(p)
        row_p = {j: a[p][j] for j in active}
        col_p = {i: a[i][p] for i in active}
        for i in active:
            ci = col_p[i]
            if ci:
                f = ci / d
                ai = a[i]
                for j in active:
                    ai[j] -= f * row_p[j]
    return pos - neg
