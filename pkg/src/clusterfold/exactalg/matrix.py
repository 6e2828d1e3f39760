"""Dense matrices over an exact field with echelon-form linear algebra."""
from __future__ import annotations

from typing import Iterable, Sequence

from .field import QQ, format_scalar


class ShapeError(ValueError):
    pass


class FieldMismatch(TypeError):
    pass


class Mat:
    """Immutable dense matrix, entries stored row-major.

    ``Mat(rows, cols, entries, field)``; zero-sized shapes are allowed and
    behave as the zero map between the corresponding spaces.
    """

    __slots__ = ("rows", "cols", "entries", "field", "_hash")

    def __init__(self, rows: int, cols: int, entries: Sequence, field=QQ):
        if len(entries) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        ents = tuple(field(e) for e in entries)
        self.rows = rows
        self.cols = cols
        self.entries = ents
        self.field = field
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def _raw(cls, rows, cols, entries, field):
        m = object.__new__(cls)
        m.rows, m.cols, m.entries, m.field, m._hash = rows, cols, tuple(entries), field, None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field=QQ, cols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r], field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field=QQ, rows: int | None = None) -> "Mat":
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(c) != rows for c in columns):
            raise ShapeError("ragged columns")
        return cls(rows, len(columns), [columns[j][i] for i in range(rows) for j in range(len(columns))], field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field=QQ) -> "Mat":
        return cls._raw(rows, cols, [field.zero] * (rows * cols), field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> "Mat":
        z, o = field.zero, field.one
        return cls._raw(n, n, [o if i == j else z for i in range(n) for j in range(n)], field)

    @classmethod
    def column(cls, values: Sequence, field=QQ) -> "Mat":
        return cls(len(values), 1, list(values), field)

    # -- access ---------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self) -> list[list]:
        return [self.col(j) for j in range(self.cols)]

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries, self.field))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.to_rows())
        return f"Mat[{self.rows}x{self.cols} {self.field}]({body})"

    # -- arithmetic -----------------------------------------------------
    def _check_field(self, other: "Mat"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Mat._raw(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)], self.field)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return Mat._raw(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)], self.field)

    def __neg__(self) -> "Mat":
        return Mat._raw(self.rows, self.cols, [-a for a in self.entries], self.field)

    def scale(self, c) -> "Mat":
        c = self.field(c)
        return Mat._raw(self.rows, self.cols, [c * a for a in self.entries], self.field)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, k = self.rows, other.cols, self.cols
        a, b = self.entries, other.entries
        zero = self.field.zero
        out = []
        for i in range(n):
            arow = a[i * k:(i + 1) * k]
            for j in range(m):
                s = zero
                for t in range(k):
                    x = arow[t]
                    if x:
                        s = s + x * b[t * m + j]
                out.append(s)
        return Mat._raw(n, m, out, self.field)

    def transpose(self) -> "Mat":
        return Mat._raw(self.cols, self.rows, [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)], self.field)

    T = property(transpose)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def power(self, e: int) -> "Mat":
        if self.rows != self.cols:
            raise ShapeError("power of a non-square matrix")
        out = Mat.identity(self.rows, self.field)
        for _ in range(e):
            out = out @ self
        return out

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Mat":
        rows, cols = list(rows), list(cols)
        return Mat._raw(len(rows), len(cols), [self[i, j] for i in rows for j in cols], self.field)

    def reduce(self, field) -> "Mat":
        """Re-express the entries in another field (e.g. reduce Q -> F_p)."""
        return Mat(self.rows, self.cols, list(self.entries), field)

    # -- stacking -------------------------------------------------------
    @staticmethod
    def hstack(mats: Sequence["Mat"], rows: int | None = None, field=None) -> "Mat":
        if not mats:
            return Mat.zeros(rows or 0, 0, field or QQ)
        field = mats[0].field
        r = mats[0].rows
        for m in mats:
            if m.field != field:
                raise FieldMismatch("hstack over mixed fields")
            if m.rows != r:
                raise ShapeError("hstack row mismatch")
        out = []
        for i in range(r):
            for m in mats:
                out.extend(m.entries[i * m.cols:(i + 1) * m.cols])
        return Mat._raw(r, sum(m.cols for m in mats), out, field)

    @staticmethod
    def vstack(mats: Sequence["Mat"], cols: int | None = None, field=None) -> "Mat":
        if not mats:
            return Mat.zeros(0, cols or 0, field or QQ)
        field = mats[0].field
        c = mats[0].cols
        for m in mats:
            if m.field != field:
                raise FieldMismatch("vstack over mixed fields")
            if m.cols != c:
                raise ShapeError("vstack column mismatch")
        return Mat._raw(sum(m.rows for m in mats), c, [x for m in mats for x in m.entries], field)

    @staticmethod
    def block_diag(mats: Sequence["Mat"], field=QQ) -> "Mat":
        if mats:
            field = mats[0].field
        R = sum(m.rows for m in mats)
        C = sum(m.cols for m in mats)
        out = [field.zero] * (R * C)
        r0 = c0 = 0
        for m in mats:
            if m.field != field:
                raise FieldMismatch("block_diag over mixed fields")
            for i in range(m.rows):
                for j in range(m.cols):
                    out[(r0 + i) * C + c0 + j] = m[i, j]
            r0 += m.rows
            c0 += m.cols
        return Mat._raw(R, C, out, field)

    # -- echelon forms --------------------------------------------------
    def rref(self) -> tuple["Mat", list[int]]:
        """Reduced row echelon form and pivot columns.

        Pivot = first nonzero entry in the column among remaining rows.
        """
        rows = [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            p = next((i for i in range(r, self.rows) if rows[i][c]), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            inv = self.field.one / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            pr = rows[r]
            for i in range(self.rows):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
            pivots.append(c)
            r += 1
        return Mat._raw(self.rows, self.cols, [x for row in rows for x in row], self.field), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Mat":
        """Columns form a basis of the null space, one per free column.

        Basis vector for free column f has a 1 in position f and zeros in the
        other free positions (reduced echelon form of the kernel).
        """
        R, piv = self.rref()
        free = [c for c in range(self.cols) if c not in piv]
        zero, one = self.field.zero, self.field.one
        cols = []
        for f in free:
            v = [zero] * self.cols
            v[f] = one
            for i, pc in enumerate(piv):
                v[pc] = -R[i, f]
            cols.append(v)
        return Mat._raw(self.cols, len(cols), [cols[j][i] for i in range(self.cols) for j in range(len(cols))], self.field)

    def column_space(self) -> "Mat":
        """Columns of ``self`` at the pivot positions: a basis of the image."""
        _, piv = self.rref()
        return self.submatrix(range(self.rows), piv)

    def left_annihilator(self) -> "Mat":
        """Rows spanning the vectors y with y @ self == 0."""
        return self.transpose().kernel().transpose()

    def solve(self, b: "Mat") -> "Mat | None":
        """Some x with self @ x == b, or None when the system is inconsistent."""
        self._check_field(b)
        if b.rows != self.rows:
            raise ShapeError(f"cannot solve {self.shape} against {b.shape}")
        aug = Mat.hstack([self, b]) if self.cols else Mat.hstack([Mat.zeros(self.rows, 0, self.field), b])
        R, piv = aug.rref()
        if any(p >= self.cols for p in piv):
            return None
        zero = self.field.zero
        x = [[zero] * b.cols for _ in range(self.cols)]
        for i, pc in enumerate(piv):
            for j in range(b.cols):
                x[pc][j] = R[i, self.cols + j]
        return Mat._raw(self.cols, b.cols, [v for row in x for v in row], self.field)

    def inverse(self) -> "Mat | None":
        if self.rows != self.cols:
            raise ShapeError("inverse of a non-square matrix")
        if self.rank() < self.rows:
            return None
        return self.solve(Mat.identity(self.rows, self.field))

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def det(self):
        if self.rows != self.cols:
            raise ShapeError("determinant of a non-square matrix")
        n = self.rows
        rows = self.to_rows()
        d = self.field.one
        for c in range(n):
            p = next((i for i in range(c, n) if rows[i][c]), None)
            if p is None:
                return self.field.zero
            if p != c:
                rows[c], rows[p] = rows[p], rows[c]
                d = -d
            d = d * rows[c][c]
            inv = self.field.one / rows[c][c]
            for i in range(c + 1, n):
                if rows[i][c]:
                    f = rows[i][c] * inv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return d

    def trace(self):
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), self.field.zero)

    def charpoly(self) -> list:
        """Coefficients c_0..c_n of det(x I - self) (Faddeev-LeVerrier, char 0 only)."""
        if self.field.characteristic:
            raise ValueError("charpoly needs characteristic 0")
        n = self.rows
        coeffs = [self.field.zero] * (n + 1)
        coeffs[n] = self.field.one
        M = Mat.zeros(n, n, self.field)
        ident = Mat.identity(n, self.field)
        for k in range(1, n + 1):
            M = self @ M + ident.scale(coeffs[n - k + 1])
            coeffs[n - k] = -(self @ M).trace() / k
        return coeffs


def mat_rank(m: Mat) -> int:
    return m.rank()


def mat_kernel(m: Mat) -> Mat:
    return m.kernel()


def mat_solve(a: Mat, b: Mat) -> Mat | None:
    return a.solve(b)


def rational_roots(coeffs: Sequence) -> list:
    """Distinct rational roots of sum(coeffs[i] x^i), coefficients in Q."""
    from fractions import Fraction
    from math import lcm

    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return []
    roots = []
    while cs[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        cs = cs[1:]
        if len(cs) <= 1:
            return roots
    den = lcm(*(c.denominator for c in cs))
    ints = [int(c * den) for c in cs]
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        return [d for d in range(1, n + 1) if n % d == 0]

    for p in divisors(a0):
        for q in divisors(an):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if r in roots:
                    continue
                val = Fraction(0)
                for c in reversed(ints):
                    val = val * r + c
                if val == 0:
                    roots.append(r)
    return sorted(roots)
