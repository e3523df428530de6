"""Exact integer and prime-field linear algebra.

Matrices are stored sparsely as a dict of rows (``{i: {j: value}}``) holding
arbitrary-precision Python ints. ``modulus == 0`` means the integers; a prime
``modulus`` means every entry is kept reduced into ``range(modulus)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

__all__ = [
    "Matrix",
    "SnfDecomposition",
    "smith_normal_form",
    "kernel_basis",
    "solve_in_span",
    "rank",
    "is_prime",
    "NotPrimeError",
]


class NotPrimeError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


def _check_modulus(modulus: int) -> int:
    modulus = int(modulus)
    if modulus != 0 and not is_prime(modulus):
        raise NotPrimeError(f"modulus {modulus} is not prime")
    return modulus


class Matrix:
    """Sparse exact matrix over Z (``modulus=0``) or Z/p."""

    __slots__ = ("nrows", "ncols", "modulus", "_rows")

    def __init__(self, nrows: int, ncols: int, rows=None, modulus: int = 0):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        self.modulus = int(modulus)
        self._rows: dict[int, dict[int, int]] = {}
        if rows:
            p = self.modulus
            for i, row in rows.items():
                clean = {}
                for j, v in row.items():
                    if p:
                        v %= p
                    if v:
                        clean[j] = v
                if clean:
                    self._rows[i] = clean

    # construction ------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int, modulus: int = 0) -> "Matrix":
        return cls(nrows, ncols, modulus=modulus)

    @classmethod
    def identity(cls, n: int, modulus: int = 0) -> "Matrix":
        m = cls(n, n, modulus=modulus)
        m._rows = {i: {i: 1} for i in range(n)}
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], modulus: int = 0,
                   ncols: Optional[int] = None) -> "Matrix":
        data = [list(map(int, r)) for r in data]
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        rows = {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(data)}
        return cls(nrows, ncols, rows, modulus)

    @classmethod
    def from_columns(cls, columns: Sequence[dict], nrows: int, modulus: int = 0) -> "Matrix":
        rows: dict[int, dict[int, int]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
        return cls(nrows, len(columns), rows, modulus)

    @classmethod
    def _raw(cls, nrows, ncols, rows, modulus):
        # rows must already be reduced and free of zeros
        m = cls(nrows, ncols, modulus=modulus)
        m._rows = rows
        return m

    # access --------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def __getitem__(self, key):
        i, j = key
        return self._rows.get(i, {}).get(j, 0)

    def row(self, i: int) -> dict[int, int]:
        return self._rows.get(i, {})

    def items(self):
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def columns(self) -> list[dict[int, int]]:
        cols: list[dict[int, int]] = [dict() for _ in range(self.ncols)]
        for i, row in self._rows.items():
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def column(self, j: int) -> dict[int, int]:
        return {i: row[j] for i, row in self._rows.items() if j in row}

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in self._rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    tolist = to_dense

    def copy(self) -> "Matrix":
        return Matrix._raw(self.nrows, self.ncols,
                           {i: dict(r) for i, r in self._rows.items()}, self.modulus)

    # algebra --------------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        rows: dict[int, dict[int, int]] = {}
        for i, row in self._rows.items():
            for j, v in row.items():
                rows.setdefault(j, {})[i] = v
        return Matrix._raw(self.ncols, self.nrows, rows, self.modulus)

    def _check_same(self, other: "Matrix"):
        if self.modulus != other.modulus:
            raise ValueError(f"ring mismatch: {self.modulus} vs {other.modulus}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.modulus
        orows = other._rows
        out: dict[int, dict[int, int]] = {}
        for i, row in self._rows.items():
            acc: dict[int, int] = {}
            for k, a in row.items():
                orow = orows.get(k)
                if not orow:
                    continue
                for j, b in orow.items():
                    acc[j] = acc.get(j, 0) + a * b
            if p:
                acc = {j: v % p for j, v in acc.items() if v % p}
            else:
                acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return Matrix._raw(self.nrows, other.ncols, out, p)

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        p = self.modulus
        out = {i: dict(r) for i, r in self._rows.items()}
        for i, row in other._rows.items():
            tgt = out.setdefault(i, {})
            for j, v in row.items():
                w = tgt.get(j, 0) + sign * v
                if p:
                    w %= p
                if w:
                    tgt[j] = w
                else:
                    tgt.pop(j, None)
            if not tgt:
                del out[i]
        return Matrix._raw(self.nrows, self.ncols, out, p)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k: int) -> "Matrix":
        return Matrix(self.nrows, self.ncols,
                      {i: {j: k * v for j, v in r.items()} for i, r in self._rows.items()},
                      self.modulus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape == other.shape and self.modulus == other.modulus
                and self._rows == other._rows)

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self._rows

    def is_identity(self) -> bool:
        return (self.nrows == self.ncols
                and len(self._rows) == self.nrows
                and all(r == {i: 1} for i, r in self._rows.items()))

    def reduce(self, p: int) -> "Matrix":
        """Reduce an integer matrix modulo the prime ``p``."""
        return Matrix(self.nrows, self.ncols, self._rows, _check_modulus(p))

    def lift(self) -> "Matrix":
        """Forget the modulus: entries become the integers in ``range(p)``."""
        return Matrix._raw(self.nrows, self.ncols,
                           {i: dict(r) for i, r in self._rows.items()}, 0)

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        rows = {}
        for new, old in enumerate(idx):
            r = self._rows.get(old)
            if r:
                rows[new] = dict(r)
        return Matrix._raw(len(idx), self.ncols, rows, self.modulus)

    def select_cols(self, idx: Sequence[int]) -> "Matrix":
        pos = {old: new for new, old in enumerate(idx)}
        rows = {}
        for i, r in self._rows.items():
            nr = {pos[j]: v for j, v in r.items() if j in pos}
            if nr:
                rows[i] = nr
        return Matrix._raw(self.nrows, len(idx), rows, self.modulus)

    def dot(self, vec: Sequence[int]) -> list[int]:
        """Matrix times a dense column vector."""
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} for {self.shape} matrix")
        p = self.modulus
        out = [0] * self.nrows
        for i, row in self._rows.items():
            s = sum(v * vec[j] for j, v in row.items())
            out[i] = s % p if p else s
        return out

    def __repr__(self):
        ring = f"Z/{self.modulus}" if self.modulus else "Z"
        return f"Matrix({self.nrows}x{self.ncols} over {ring}, nnz={self.nnz})"


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ A @ V == D`` with unimodular ``U``, ``V``.

    ``rank`` nonzero diagonal entries come first and each divides the next.
    """

    D: Matrix
    U: Matrix
    U_inv: Matrix
    V: Matrix
    V_inv: Matrix
    rank: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[k, k] for k in range(self.rank)]

    @property
    def n_units(self) -> int:
        return sum(1 for d in self.diagonal if d == 1)


class _Recorder:
    """Sparse line storage: a dict of lines (rows or columns) of a square matrix."""

    __slots__ = ("lines", "p")

    def __init__(self, n: int, p: int):
        self.lines = {k: {k: 1} for k in range(n)}
        self.p = p

    def axpy(self, dst: int, k: int, src: int):
        # line[dst] += k * line[src]
        p = self.p
        s = self.lines.get(src)
        if not s or not k:
            return
        d = self.lines.setdefault(dst, {})
        for j, v in s.items():
            w = d.get(j, 0) + k * v
            if p:
                w %= p
            if w:
                d[j] = w
            else:
                d.pop(j, None)
        if not d:
            del self.lines[dst]

    def scale(self, idx: int, k: int):
        line = self.lines.get(idx)
        if line:
            p = self.p
            for j in line:
                line[j] = (line[j] * k) % p if p else line[j] * k

    def swap(self, a: int, b: int):
        la = self.lines.pop(a, None)
        lb = self.lines.pop(b, None)
        if la is not None:
            self.lines[b] = la
        if lb is not None:
            self.lines[a] = lb

    def as_rows(self, n_rows, n_cols, order=None) -> Matrix:
        if order is None:
            return Matrix._raw(n_rows, n_cols, self.lines, self.p)
        return Matrix._raw(n_rows, n_cols,
                           {new: self.lines[old] for new, old in enumerate(order)
                            if old in self.lines}, self.p)

    def as_cols(self, n_rows, n_cols, order=None) -> Matrix:
        rows: dict[int, dict[int, int]] = {}
        items = self.lines.items() if order is None else (
            (new, self.lines[old]) for new, old in enumerate(order) if old in self.lines)
        for j, line in items:
            for i, v in line.items():
                rows.setdefault(i, {})[j] = v
        return Matrix._raw(n_rows, n_cols, rows, self.p)


class _SnfWorker:
    """In-place elimination on a sparse copy of A, recording U, U^-1, V, V^-1.

    Row operations act on A's rows, U's rows and U^-1's columns; column
    operations act on A's columns, V's columns and V^-1's rows.
    """

    def __init__(self, A: Matrix):
        p = self.p = A.modulus
        self.m, self.n = A.shape
        self.rows: dict[int, dict[int, int]] = {i: dict(r) for i, r in A._rows.items()}
        self.cols: dict[int, set[int]] = {}
        for i, r in self.rows.items():
            for j in r:
                self.cols.setdefault(j, set()).add(i)
        self.U = _Recorder(self.m, p)       # rows
        self.U_inv = _Recorder(self.m, p)   # columns
        self.V = _Recorder(self.n, p)       # columns
        self.V_inv = _Recorder(self.n, p)   # rows
        self.pivots: list[tuple[int, int]] = []

    # elementary operations ------------------------------------------------
    def row_axpy(self, dst: int, k: int, src: int):
        """row[dst] += k * row[src]"""
        if not k:
            return
        p = self.p
        src_row = self.rows.get(src, {})
        d = self.rows.setdefault(dst, {})
        for j, v in src_row.items():
            w = d.get(j, 0) + k * v
            if p:
                w %= p
            if w:
                if j not in d:
                    self.cols.setdefault(j, set()).add(dst)
                d[j] = w
            elif j in d:
                del d[j]
                self.cols[j].discard(dst)
        if not d:
            del self.rows[dst]
        self.U.axpy(dst, k, src)
        self.U_inv.axpy(src, -k, dst)

    def col_axpy(self, dst: int, k: int, src: int):
        """col[dst] += k * col[src]"""
        if not k:
            return
        p = self.p
        for i in list(self.cols.get(src, ())):
            r = self.rows[i]
            w = r.get(dst, 0) + k * r[src]
            if p:
                w %= p
            if w:
                if dst not in r:
                    self.cols.setdefault(dst, set()).add(i)
                r[dst] = w
            elif dst in r:
                del r[dst]
                self.cols[dst].discard(i)
        self.V.axpy(dst, k, src)
        self.V_inv.axpy(src, -k, dst)

    def row_negate(self, i: int):
        r = self.rows.get(i)
        if r:
            for j in r:
                r[j] = -r[j]
        self.U.scale(i, -1)
        self.U_inv.scale(i, -1)

    def row_scale_unit(self, i: int, u: int):
        # only over Z/p; u is invertible
        p = self.p
        r = self.rows.get(i)
        if r:
            for j in r:
                r[j] = (r[j] * u) % p
        self.U.scale(i, u)
        self.U_inv.scale(i, pow(u, -1, p))

    # pivot search ---------------------------------------------------------
    def _find_pivot(self, active_cols: list[int]):
        """Return (r, c): a unit entry if one exists, else an entry of minimal |value|."""
        p = self.p
        rows, cols = self.rows, self.cols
        best = None
        best_abs = None
        for c in active_cols:
            col = cols.get(c)
            if not col:
                continue
            if p:
                return min(col), c
            unit_rows = [i for i in col if abs(rows[i][c]) == 1]
            if unit_rows:
                return min(unit_rows, key=lambda i: (len(rows[i]), i)), c
            for i in col:
                a = abs(rows[i][c])
                if best is None or a < best_abs or (a == best_abs and (c, i) < (best[1], best[0])):
                    best, best_abs = (i, c), a
        return best


    def clear(self, r: int, c: int) -> tuple[int, int]:
        """Reduce until the pivot is alone in its row and column.

        Over Z the pivot can wander to a smaller remainder; the final
        position is returned. A non-unit pivot is only accepted once it
        divides every remaining entry.
        """
        p = self.p
        rows, cols = self.rows, self.cols
        while True:
            piv = rows[r][c]
            if p:
                if piv != 1:
                    self.row_scale_unit(r, pow(piv, -1, p))
                    piv = 1
            elif piv < 0:
                self.row_negate(r)
                piv = -piv
            for i in sorted(cols[c] - {r}):
                q = rows[i][c] if p else rows[i][c] // piv
                self.row_axpy(i, -q, r)
            for j in sorted(set(rows[r]) - {c}):
                q = rows[r][j] if p else rows[r][j] // piv
                self.col_axpy(j, -q, c)
            rest_col = cols[c] - {r}
            rest_row = set(rows[r]) - {c}
            if not rest_col and not rest_row:
                if p or piv == 1:
                    return r, c
                bad = self._nondivisible(piv, r)
                if bad is None:
                    return r, c
                self.row_axpy(r, 1, bad)
                continue
            cand = [(abs(rows[i][c]), i, c) for i in rest_col]
            cand += [(abs(rows[r][j]), r, j) for j in rest_row]
            _, r, c = min(cand)

    def _nondivisible(self, piv: int, r: int):
        for i in sorted(self.rows):
            if i != r and any(v % piv for v in self.rows[i].values()):
                return i
        return None

    def run(self) -> "_SnfWorker":
        values = []
        active = sorted(self.cols)
        while True:
            active = [c for c in active if self.cols.get(c)]
            found = self._find_pivot(active)
            if found is None:
                break
            r, c = self.clear(*found)
            values.append(self.rows[r][c])
            self.pivots.append((r, c))
            del self.rows[r]
            del self.cols[c]
        self.values = values
        return self


def smith_normal_form(A: Matrix) -> SnfDecomposition:
    """Smith normal form ``U @ A @ V == D`` with recorded changes of basis.

    Only row/column swaps, negations (scaling by a unit over Z/p) and
    "add an integer multiple of one line to another" are used. Over Z/p the
    diagonal is a run of ones followed by zeros.
    """
    w = _SnfWorker(A).run()
    m, n = w.m, w.n
    piv_rows = [r for r, _ in w.pivots]
    piv_cols = [c for _, c in w.pivots]
    used_r, used_c = set(piv_rows), set(piv_cols)
    row_order = piv_rows + [i for i in range(m) if i not in used_r]
    col_order = piv_cols + [j for j in range(n) if j not in used_c]
    D = Matrix._raw(m, n, {k: {k: v} for k, v in enumerate(w.values)}, w.p)
    return SnfDecomposition(
        D=D,
        U=w.U.as_rows(m, m, row_order),
        U_inv=w.U_inv.as_cols(m, m, row_order),
        V=w.V.as_cols(n, n, col_order),
        V_inv=w.V_inv.as_rows(n, n, col_order),
        rank=len(w.pivots),
    )


# --------------------------------------------------------------------------
# Dense prime-field helpers (cohomology-sized matrices)


def _as_field_rows(M, p):
    if isinstance(M, Matrix):
        p = M.modulus if p is None else p
        rows = M.to_dense()
        ncols = M.ncols
    else:
        rows = [list(r) for r in M]
        ncols = len(rows[0]) if rows else 0
    if p is None or p == 0:
        raise NotPrimeError("a prime modulus is required")
    _check_modulus(p)
    return [[v % p for v in r] for r in rows], ncols, p


def _rref(rows: list[list[int]], ncols: int, p: int):
    rows = [list(r) for r in rows]
    pivots = []
    lead = 0
    for c in range(ncols):
        k = next((i for i in range(lead, len(rows)) if rows[i][c]), None)
        if k is None:
            continue
        rows[lead], rows[k] = rows[k], rows[lead]
        inv = pow(rows[lead][c], -1, p)
        rows[lead] = [(v * inv) % p for v in rows[lead]]
        for i in range(len(rows)):
            if i != lead and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[lead])]
        pivots.append(c)
        lead += 1
        if lead == len(rows):
            break
    return rows[:lead], pivots


def kernel_basis(M, p: Optional[int] = None) -> list[list[int]]:
    """Basis of ``{x : M x = 0}`` over Z/p, one vector per free column.

    Vectors come out in increasing order of their free column and each has a
    1 there, zeros on the other free columns.
    """
    rows, ncols, p = _as_field_rows(M, p)
    R, pivots = _rref(rows, ncols, p)
    piv_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in piv_set:
            continue
        x = [0] * ncols
        x[free] = 1
        for r, c in zip(R, pivots):
            x[c] = (-r[free]) % p
        basis.append(x)
    return basis


def solve_in_span(M, b: Sequence[int], p: Optional[int] = None) -> Optional[list[int]]:
    """Some ``x`` with ``M x == b`` over Z/p, or ``None`` when b is not in the column span."""
    rows, ncols, p = _as_field_rows(M, p)
    if len(b) != len(rows):
        raise ValueError(f"right-hand side of length {len(b)} for {len(rows)} rows")
    aug = [r + [v % p] for r, v in zip(rows, b)]
    R, pivots = _rref(aug, ncols + 1, p)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, c in zip(R, pivots):
        x[c] = r[ncols]
    return x


def rank(M, p: Optional[int] = None) -> int:
    """Rank over Z/p, or over Q for an integer matrix with no modulus given."""
    if isinstance(M, Matrix) and p is None and M.modulus == 0:
        return smith_normal_form(M).rank
    if isinstance(M, Matrix) and p is not None and M.modulus == 0:
        M = M.reduce(p)
    if isinstance(M, Matrix):
        return smith_normal_form(M).rank
    rows, ncols, p = _as_field_rows(M, p)
    return len(_rref(rows, ncols, p)[1])
