"""Exact integer linear algebra: Smith normal form and abelian-group invariants.

All computations are over arbitrary-precision Python integers; there are no
modular or floating-point shortcuts anywhere.  Two elimination engines are
provided:

* :func:`smith_normal_form` -- dense textbook reduction that also returns the
  unimodular transforms ``U``, ``V`` with ``U * A * V = S``.  Intended for
  small matrices and for cross-checking.
* :func:`snf_diagonal` -- sparse reduction returning only the nonzero
  diagonal (canonicalized into a divisibility chain).  This is what the
  homology pipeline uses; boundary matrices are very sparse and almost all
  pivots are units.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from heapq import heappush, heappop
from math import gcd, prod


# --------------------------------------------------------------------------
# finitely generated abelian groups in invariant-factor form


@dataclass(frozen=True)
class AbelianGroup:
    """Invariant-factor form ``Z^rank + Z/d1 + ... + Z/dm`` with d1 | d2 | ...

    ``torsion`` is the ascending divisibility chain; no entry equals 1.
    """

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("negative rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")

    @classmethod
    def from_diagonal(cls, diagonal: list[int], rank: int = 0) -> "AbelianGroup":
        """Build from any diagonalization (entries need not divide in order)."""
        return cls(rank, tuple(d for d in canonical_chain(diagonal) if d != 1))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite (rank > 0)."""
        return None if self.rank else prod(self.torsion)

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_diagonal(
            list(self.torsion) + list(other.torsion), self.rank + other.rank
        )

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"C{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"


def canonical_chain(diagonal: list[int]) -> list[int]:
    """Turn any nonzero diagonal multiset into the canonical divisibility chain.

    Uses diag(a, b) ~ diag(gcd, lcm) repeatedly; no factorization needed.
    Zero entries are dropped; unit entries are kept (the length is the rank).
    """
    ds = sorted(abs(d) for d in diagonal if d != 0)
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            if ds[i] == 1:
                continue
            for j in range(i + 1, len(ds)):
                if ds[j] % ds[i] != 0:
                    g = gcd(ds[i], ds[j])
                    ds[i], ds[j] = g, ds[i] * ds[j] // g
                    changed = True
        if changed:
            ds.sort()
    return ds


# --------------------------------------------------------------------------
# sparse integer matrices


@dataclass
class IntegerMatrix:
    """Sparse integer matrix: ``entries[(r, c)] = v`` with no stored zeros."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r},{c}) out of bounds")
            if v == 0:
                raise ValueError("stored zero entry")

    @classmethod
    def from_dense(cls, dense: list[list[int]]) -> "IntegerMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = {
            (r, c): v
            for r, row in enumerate(dense)
            for c, v in enumerate(row)
            if v != 0
        }
        return cls(rows, cols, entries)

    @classmethod
    def from_rows(cls, sparse_rows: list[dict[int, int]], cols: int) -> "IntegerMatrix":
        entries = {
            (r, c): v
            for r, row in enumerate(sparse_rows)
            for c, v in row.items()
            if v != 0
        }
        return cls(len(sparse_rows), cols, entries)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            dense[r][c] = v
        return dense

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        by_row: dict[int, dict[int, int]] = {}
        for (r, k), v in self.entries.items():
            by_row.setdefault(r, {})[k] = v
        other_rows: dict[int, dict[int, int]] = {}
        for (k, c), v in other.entries.items():
            other_rows.setdefault(k, {})[c] = v
        entries: dict[tuple[int, int], int] = {}
        for r, row in by_row.items():
            acc: dict[int, int] = {}
            for k, v in row.items():
                for c, w in other_rows.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + v * w
            for c, v in acc.items():
                if v:
                    entries[(r, c)] = v
        return IntegerMatrix(self.rows, other.cols, entries)

    def is_zero(self) -> bool:
        return not self.entries

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def diagonal(self) -> list[int]:
        return [self.entries.get((i, i), 0) for i in range(min(self.rows, self.cols))]


def determinant(matrix: IntegerMatrix) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    if matrix.rows != matrix.cols:
        raise ValueError("determinant of non-square matrix")
    n = matrix.rows
    if n == 0:
        return 1
    a = matrix.to_dense()
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


# --------------------------------------------------------------------------
# dense Smith normal form with transforms


def smith_normal_form(
    matrix: IntegerMatrix,
) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Full Smith normal form: returns (S, U, V) with U*A*V = S.

    S is diagonal with d1 | d2 | ..., and U, V are unimodular.  Pivot choice
    is the minimal nonzero absolute value, ties broken by lowest (row, col),
    which keeps coefficient swell down and the output deterministic.
    """
    a = matrix.to_dense()
    m, n = matrix.rows, matrix.cols
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst -= q * row src
        arow, adst = a[src], a[dst]
        for j in range(n):
            adst[j] -= q * arow[j]
        urow, udst = u[src], u[dst]
        for j in range(m):
            udst[j] -= q * urow[j]

    def add_col(src, dst, q):
        # col dst -= q * col src
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                val = abs(a[i][j])
                if val and (best is None or val < best[0]):
                    best = (val, i, j)
                    if val == 1:
                        return best
        return best

    t = 0
    while True:
        piv = find_pivot(t)
        if piv is None:
            break
        _, pi, pj = piv
        swap_rows(t, pi)
        swap_cols(t, pj)
        # clear column t, then row t; a smaller remainder restarts the pivot hunt
        dirty = False
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                add_row(t, i, q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                add_col(t, j, q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility: pivot must divide every remaining entry
        offender = None
        p = a[t][t]
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, -1)  # fold offending row into row t
            continue
        if a[t][t] < 0:
            for j in range(n):
                a[t][j] = -a[t][j]
            for j in range(m):
                u[t][j] = -u[t][j]
        t += 1
        if t >= min(m, n):
            break

    s = IntegerMatrix(
        m, n, {(i, i): a[i][i] for i in range(min(m, n)) if a[i][i] != 0}
    )
    return s, IntegerMatrix.from_dense(u) if m else IntegerMatrix(0, 0), (
        IntegerMatrix.from_dense(v) if n else IntegerMatrix(0, 0)
    )


def _dense_diagonal(dense_rows: list[dict[int, int]], cols: list[int]) -> list[int]:
    """Diagonalize a small dense core; returns the nonzero diagonal entries.

    Same textbook loop as smith_normal_form but without transforms and
    without the divisibility pass (canonical_chain fixes the chain later).
    """
    col_index = {c: j for j, c in enumerate(cols)}
    a = [[0] * len(cols) for _ in range(len(dense_rows))]
    for i, row in enumerate(dense_rows):
        for c, val in row.items():
            a[i][col_index[c]] = val
    m, n = len(a), len(cols)
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                val = abs(a[i][j])
                if val and (best is None or val < best[0]):
                    best = (val, i, j)
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        clean = True
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                if q:
                    arow = a[t]
                    a[i] = [x - q * y for x, y in zip(a[i], arow)]
                if a[i][t]:
                    clean = False
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    clean = False
        if clean:
            diag.append(abs(a[t][t]))
            t += 1
    return diag


def snf_diagonal(matrix: IntegerMatrix) -> list[int]:
    """Nonzero Smith diagonal of ``matrix``, as a canonical divisibility chain.

    Sparse unit-pivot elimination (Markowitz-style pivoting from the
    sparsest columns) followed by a dense sweep of whatever small core has
    no +-1 entries left.  The length of the result is the rank.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, dict[int, int]] = {}
    for (r, c), v in matrix.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, {})[r] = v

    units = 0
    # lazy heap of (column fill, column); stale entries are skipped
    heap: list[tuple[int, int]] = []
    for c, col in cols.items():
        heappush(heap, (len(col), c))

    while heap:
        clen, c = heappop(heap)
        col = cols.get(c)
        if col is None:
            continue
        if len(col) != clen:
            heappush(heap, (len(col), c))
            continue
        # choose a unit entry in this column, preferring the sparsest row
        pr = None
        best_len = None
        for r, v in col.items():
            if v in (1, -1):
                rlen = len(rows[r])
                if best_len is None or rlen < best_len or (rlen == best_len and r < pr):
                    pr, best_len = r, rlen
        if pr is None:
            continue  # no unit here; the dense sweep will handle it
        pv = col[pr]
        prow = rows.pop(pr)
        del prow[c]
        for c2 in prow:
            del cols[c2][pr]
        del cols[c]
        touched: set[int] = set()
        for r2, a in col.items():
            if r2 == pr:
                continue
            row2 = rows[r2]
            del row2[c]
            m = a * pv  # pv is +-1, so this is a / pv
            if prow:
                for c2, w in prow.items():
                    new = row2.get(c2, 0) - m * w
                    if new:
                        row2[c2] = new
                        cols[c2][r2] = new
                    elif c2 in row2:
                        del row2[c2]
                        del cols[c2][r2]
                touched.update(prow)
            if not row2:
                del rows[r2]
        for c2 in list(touched) + list(prow):
            col2 = cols.get(c2)
            if col2 is not None and not col2:
                del cols[c2]
            elif col2 is not None:
                heappush(heap, (len(col2), c2))
        units += 1

    diag = [1] * units
    live_rows = [row for row in rows.values() if row]
    if live_rows:
        live_cols = sorted({c for row in live_rows for c in row})
        diag.extend(_dense_diagonal(live_rows, live_cols))
    return canonical_chain(diag)


def matrix_rank(matrix: IntegerMatrix) -> int:
    return len(snf_diagonal(matrix))


def cokernel_invariants(matrix: IntegerMatrix) -> AbelianGroup:
    """The group ``Z^cols / rowspace(matrix)`` in canonical form.

    Rows are relations on ``cols`` unknowns, matching the relation-matrix
    convention used throughout the homology code.
    """
    diag = snf_diagonal(matrix)
    free_rank = matrix.cols - len(diag)
    return AbelianGroup(free_rank, tuple(d for d in diag if d != 1))
