"""Exact integer linear algebra: Smith and Hermite normal forms, solvers.

Everything runs on arbitrary-precision Python ints, so intermediate entries
can grow without any risk of silent overflow.  These routines favour small
pivots over asymptotic cleverness; the rest of the package only ever feeds
them desk-scale matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """An immutable integer matrix with an explicit shape.

    Zero-row and zero-column matrices are allowed; they appear naturally as
    presentations of free and trivial groups.

    >>> IntMatrix.identity(2) @ IntMatrix.from_rows([[3], [4]])
    IntMatrix(rows=2, cols=1, entries=((3,), (4,)))
    """

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix shape must be non-negative")
        if len(self.entries) != self.rows:
            raise ValueError("entry rows do not match declared row count")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix rows")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ValueError("entries must be exact integers")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        return IntMatrix(len(rows), cols, tuple(rows))

    @staticmethod
    def from_cols(cols: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        n = len(cols)
        body = tuple(tuple(int(c[i]) for c in cols) for i in range(rows))
        return IntMatrix(rows, n, body)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("matrix shapes do not compose")
        body = tuple(
            tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                  for j in range(other.cols))
            for i in range(self.rows)
        )
        return IntMatrix(self.rows, other.cols, body)

    def mul_vec(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(row[k] * vec[k] for k in range(self.cols)) for row in self.entries)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(c * x for x in row) for row in self.entries))

    def add(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shapes differ")
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(a + b for a, b in zip(r1, r2))
                               for r1, r2 in zip(self.entries, other.entries)))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def column_slice(self, start: int, stop: int) -> "IntMatrix":
        return IntMatrix(self.rows, stop - start,
                         tuple(row[start:stop] for row in self.entries))

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, row in enumerate(self.entries)
                   for j, x in enumerate(row) if i != j)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[k][k] for k in range(min(self.rows, self.cols)))

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


def _identity_lists(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def smith_normal_form_full(M: IntMatrix):
    """Smith normal form with both transforms and their inverses.

    Returns (U, D, V, Uinv, Vinv) with D = U @ M @ V, U and V unimodular,
    D diagonal with non-negative entries in a divisibility chain
    d1 | d2 | ... (trailing zeros last).

    Pivots are eliminated with 2x2 unimodular gcd combinations, which keeps
    intermediate entries far smaller than remainder chasing would.
    """
    m, n = M.rows, M.cols
    a = [list(row) for row in M.entries]
    u = _identity_lists(m)
    uinv = _identity_lists(m)
    v = _identity_lists(n)
    vinv = _identity_lists(n)

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]
        for r in uinv:
            r[i], r[k] = r[k], r[i]

    def row_add(i, k, q):
        # row i += q * row k; inverse transform: column k of Uinv -= q * column i
        ai, ak = a[i], a[k]
        for j in range(n):
            ai[j] += q * ak[j]
        ui, uk = u[i], u[k]
        for j in range(m):
            ui[j] += q * uk[j]
        for r in uinv:
            r[k] -= q * r[i]

    def row_combine(i, k, x, y, s, t_):
        # rows (i, k) <- (x*row_i + y*row_k, s*row_i + t_*row_k), det = 1;
        # inverse transform on Uinv columns uses [[t_, -y], [-s, x]]
        for mat, width in ((a, n), (u, m)):
            ri, rk = mat[i], mat[k]
            for j in range(width):
                ri[j], rk[j] = x * ri[j] + y * rk[j], s * ri[j] + t_ * rk[j]
        for r in uinv:
            r[i], r[k] = t_ * r[i] - s * r[k], -y * r[i] + x * r[k]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    def col_swap(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]
        vinv[j], vinv[k] = vinv[k], vinv[j]

    def col_add(j, k, q):
        # col j += q * col k; inverse transform: row k of Vinv -= q * row j
        for r in a:
            r[j] += q * r[k]
        for r in v:
            r[j] += q * r[k]
        vk, vj = vinv[k], vinv[j]
        for t_ in range(n):
            vk[t_] -= q * vj[t_]

    def col_combine(j, k, x, y, s, t_):
        # cols (j, k) <- (x*col_j + y*col_k, s*col_j + t_*col_k), det = 1
        for mat in (a, v):
            for r in mat:
                r[j], r[k] = x * r[j] + y * r[k], s * r[j] + t_ * r[k]
        rj, rk = vinv[j], vinv[k]
        for p in range(n):
            rj[p], rk[p] = t_ * rj[p] - s * rk[p], -y * rj[p] + x * rk[p]

    limit = min(m, n)
    t = 0
    while t < limit:
        best = 0
        pi = pj = -1
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x != 0 and (best == 0 or abs(x) < best):
                    best = abs(x)
                    pi, pj = i, j
        if best == 0:
            break
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            for i in range(t + 1, m):
                b = a[i][t]
                if b == 0:
                    continue
                p = a[t][t]
                if b % p == 0:
                    row_add(i, t, -(b // p))
                else:
                    g, x, y = _xgcd(p, b)
                    row_combine(t, i, x, y, -(b // g), p // g)
            col_dirty = False
            for j in range(t + 1, n):
                b = a[t][j]
                if b == 0:
                    continue
                p = a[t][t]
                if b % p == 0:
                    col_add(j, t, -(b // p))
                else:
                    g, x, y = _xgcd(p, b)
                    col_combine(t, j, x, y, -(b // g), p // g)
                    col_dirty = True    # the combine refills column t below the pivot
            if col_dirty:
                continue
            pivot = a[t][t]
            bad = -1
            for i in range(t + 1, m):
                if any(x % pivot for x in a[i][t + 1:]):
                    bad = i
                    break
            if bad < 0:
                break
            # fold a non-divisible row into row t so the pivot shrinks to the gcd
            row_add(t, bad, 1)
        t += 1

    for i in range(limit):
        if a[i][i] < 0:
            row_neg(i)

    U = IntMatrix.from_rows(u, m)
    D = IntMatrix.from_rows(a, n)
    V = IntMatrix.from_rows(v, n)
    Uinv = IntMatrix.from_rows(uinv, m)
    Vinv = IntMatrix.from_rows(vinv, n)
    return U, D, V, Uinv, Vinv


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with D = U @ M @ V in Smith normal form."""
    U, D, V, _, _ = smith_normal_form_full(M)
    return U, D, V


def integer_kernel_basis(M: IntMatrix) -> list[tuple[int, ...]]:
    """A basis of { x in Z^cols : M x = 0 }, read off the SNF transform."""
    _, D, V, _, _ = smith_normal_form_full(M)
    basis = []
    for k in range(M.cols):
        dk = D.entries[k][k] if k < min(M.rows, M.cols) else 0
        if dk == 0:
            basis.append(V.col(k))
    return basis


class IntegerSolver:
    """Repeated exact solves of M x = b for a fixed M.

    Factors M once through its Smith normal form; each solve is then a pair
    of matrix-vector products plus divisibility checks.
    """

    def __init__(self, M: IntMatrix):
        self.M = M
        self.U, self.D, self.V, _, _ = smith_normal_form_full(M)

    def solve(self, b: Sequence[int]) -> tuple[int, ...] | None:
        M = self.M
        if len(b) != M.rows:
            raise ValueError("right-hand side length does not match row count")
        c = self.U.mul_vec(b)
        xp = [0] * M.cols
        for k in range(M.rows):
            dk = self.D.entries[k][k] if k < M.cols else 0
            if dk == 0:
                if c[k] != 0:
                    return None
            else:
                if c[k] % dk:
                    return None
                xp[k] = c[k] // dk
        return self.V.mul_vec(xp)


def solve_integer(M: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One integer solution x of M x = b, or None if none exists."""
    return IntegerSolver(M).solve(b)


def hermite_row_basis(vectors: Iterable[Sequence[int]], width: int) -> tuple[tuple[int, ...], ...]:
    """Canonical basis (row Hermite normal form) of the lattice the rows span.

    Pivots are positive and entries above each pivot are reduced into
    [0, pivot), so two spanning sets give identical output iff they span the
    same sublattice of Z^width.
    """
    work = [list(v) for v in vectors if any(v)]
    for row in work:
        if len(row) != width:
            raise ValueError("vector length does not match lattice width")
    result: list[list[int]] = []
    for j in range(width):
        pivot_row = None
        for r in work:
            if r[j] == 0:
                continue
            if pivot_row is None:
                pivot_row = r
                continue
            p, b = pivot_row[j], r[j]
            if b % p == 0:
                q = b // p
                for t in range(j, width):
                    r[t] -= q * pivot_row[t]
            else:
                g, x, y = _xgcd(p, b)
                s, t_ = -(b // g), p // g
                for tt in range(j, width):
                    pivot_row[tt], r[tt] = (x * pivot_row[tt] + y * r[tt],
                                            s * pivot_row[tt] + t_ * r[tt])
        if pivot_row is None:
            continue
        work.remove(pivot_row)
        if pivot_row[j] < 0:
            pivot_row = [-x for x in pivot_row]
        for r in result:
            q = r[j] // pivot_row[j]
            if q:
                for t in range(j, width):
                    r[t] -= q * pivot_row[t]
        result.append(pivot_row)
    return tuple(tuple(r) for r in result)
