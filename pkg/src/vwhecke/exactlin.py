"""Exact arithmetic over the Gaussian rationals Q(i).

GaussRat is an immutable scalar a + b*i with a, b rational (stored as gmpy2.mpq).
ExactMatrix is an immutable sparse matrix keyed by row, with zero entries never
stored, so structural equality is matrix equality.

The linear algebra here (row reduction, kernels, solving, congruence
diagonalization of Hermitian matrices) always pivots on the leftmost column
and, within it, the topmost available row. Results are therefore reproducible.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from gmpy2 import mpq


class NoSolution(ValueError):
    """Raised by solve_linear when the right-hand side is not in the column space."""


class NotHermitian(ValueError):
    pass


_ZERO = mpq(0)
_ONE = mpq(1)


def _to_mpq(x) -> mpq:
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class GaussRat:
    """Exact element re + im*i of Q(i)."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussRat):
            if im:
                raise TypeError("cannot combine a GaussRat real part with an imaginary part")
            self.re, self.im = re.re, re.im
        else:
            self.re = re if type(re) is type(_ZERO) else _to_mpq(re)
            self.im = im if type(im) is type(_ZERO) else _to_mpq(im)
        self._hash = None

    # construction helpers
    @staticmethod
    def coerce(x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            return GaussRat(Fraction(x.real).limit_denominator(), Fraction(x.imag).limit_denominator())
        if isinstance(x, str):
            return GaussRat.parse(x)
        return GaussRat(x)

    _TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?i)?")

    @staticmethod
    def parse(text: str) -> "GaussRat":
        """Parse the text form "a/b+c/d*i" (either part may be omitted)."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        re_part = _ZERO
        im_part = _ZERO
        pos = 0
        seen = 0
        while pos < len(s):
            m = GaussRat._TERM.match(s, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"malformed scalar {text!r}")
            sign, num, imag = m.groups()
            if num is None and imag is None:
                raise ValueError(f"malformed scalar {text!r}")
            if seen and not sign:
                raise ValueError(f"malformed scalar {text!r}")
            val = mpq(num) if num is not None else _ONE
            if sign == "-":
                val = -val
            if imag:
                if imag == "*i" and num is None:
                    raise ValueError(f"malformed scalar {text!r}")
                im_part += val
            else:
                re_part += val
            pos = m.end()
            seen += 1
        if seen > 2:
            raise ValueError(f"malformed scalar {text!r}")
        return GaussRat(re_part, im_part)

    def __str__(self) -> str:
        if not self.im:
            return _fmt_q(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        else:
            im = _fmt_q(self.im) + "*i"
        if not self.re:
            return im
        if im.startswith("-"):
            return _fmt_q(self.re) + im
        return _fmt_q(self.re) + "+" + im

    def __repr__(self) -> str:
        return f"GaussRat({str(self)!r})"

    # arithmetic
    def __add__(self, other):
        o = other if isinstance(other, GaussRat) else _coerce_num(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = other if isinstance(other, GaussRat) else _coerce_num(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_num(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = other if isinstance(other, GaussRat) else _coerce_num(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussRat(a * c, _ZERO)
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm2(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def inv(self) -> "GaussRat":
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = other if isinstance(other, GaussRat) else _coerce_num(other)
        if o is NotImplemented:
            return o
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero")
            return GaussRat(self.re / o.re, self.im / o.re)
        return self * o.inv()

    def __rtruediv__(self, other):
        o = _coerce_num(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        o = _coerce_num(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.re, self.im))
        return self._hash

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


def _coerce_num(x):
    if isinstance(x, (int, Fraction)) or type(x) is type(_ZERO):
        return GaussRat(x)
    if isinstance(x, GaussRat):
        return x
    return NotImplemented


def _fmt_q(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def gr(x) -> GaussRat:
    """Shorthand coercion used across the package."""
    return GaussRat.coerce(x)


Vector = Tuple[GaussRat, ...]


def vec(values: Iterable) -> Vector:
    return tuple(gr(v) for v in values)


def vec_is_zero(v: Sequence[GaussRat]) -> bool:
    return all(x.is_zero() for x in v)


class ExactMatrix:
    """Immutable sparse matrix over Q(i).

    Rows are stored as {col: value} dicts inside {row: rowdict}; empty rows and
    zero entries are never stored.
    """

    __slots__ = ("rows", "cols", "_rows", "_hash")

    def __init__(self, rows: int, cols: int, data: Dict[int, Dict[int, GaussRat]] | None = None, _trusted=False):
        self.rows = rows
        self.cols = cols
        self._hash = None
        if _trusted:
            self._rows = data if data is not None else {}
            return
        clean: Dict[int, Dict[int, GaussRat]] = {}
        for r, rd in (data or {}).items():
            if not 0 <= r < rows:
                raise IndexError(f"row {r} out of range")
            row = {}
            for c, v in rd.items():
                if not 0 <= c < cols:
                    raise IndexError(f"column {c} out of range")
                v = gr(v)
                if v:
                    row[c] = v
            if row:
                clean[r] = row
        self._rows = clean

    # constructors
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        return cls(rows, rows if cols is None else cols, {}, _trusted=True)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, {i: {i: ONE} for i in range(n)}, _trusted=True)

    @classmethod
    def scalar(cls, n: int, s) -> "ExactMatrix":
        s = gr(s)
        if not s:
            return cls.zeros(n)
        return cls(n, n, {i: {i: s} for i in range(n)}, _trusted=True)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        data = {}
        for r, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged rows")
            data[r] = {c: v for c, v in enumerate(row)}
        return cls(nr, nc, data)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Dict[Tuple[int, int], object]) -> "ExactMatrix":
        data: Dict[int, Dict[int, GaussRat]] = {}
        for (r, c), v in entries.items():
            data.setdefault(r, {})[c] = v
        return cls(rows, cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "ExactMatrix":
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        data: Dict[int, Dict[int, GaussRat]] = {}
        for c, col in enumerate(columns):
            for r, v in enumerate(col):
                v = gr(v)
                if v:
                    data.setdefault(r, {})[c] = v
        return cls(nrows, len(columns), data, _trusted=True)

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        return cls(n, n, {i: {i: v} for i, v in enumerate(values)})

    @classmethod
    def unit(cls, n: int, r: int, c: int) -> "ExactMatrix":
        """Matrix unit E_{r,c} (0-based indices)."""
        return cls(n, n, {r: {c: ONE}}, _trusted=True)

    # access
    @property
    def entries(self) -> Dict[Tuple[int, int], GaussRat]:
        return {(r, c): v for r, rd in self._rows.items() for c, v in rd.items()}

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, rc: Tuple[int, int]) -> GaussRat:
        r, c = rc
        return self._rows.get(r, {}).get(c, ZERO)

    def row_dict(self, r: int) -> Dict[int, GaussRat]:
        return self._rows.get(r, {})

    def nnz(self) -> int:
        return sum(len(rd) for rd in self._rows.values())

    def to_rows(self) -> List[List[GaussRat]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for r, rd in self._rows.items():
            for c, v in rd.items():
                out[r][c] = v
        return out

    def column(self, c: int) -> Vector:
        return tuple(self._rows.get(r, {}).get(c, ZERO) for r in range(self.rows))

    def columns(self) -> List[Vector]:
        cols = [[ZERO] * self.rows for _ in range(self.cols)]
        for r, rd in self._rows.items():
            for c, v in rd.items():
                cols[c][r] = v
        return [tuple(c) for c in cols]

    def is_zero(self) -> bool:
        return not self._rows

    def is_square(self) -> bool:
        return self.rows == self.cols

    # algebra
    def _check_same(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        data = {r: dict(rd) for r, rd in self._rows.items()}
        for r, rd in other._rows.items():
            row = data.setdefault(r, {})
            for c, v in rd.items():
                s = row.get(c)
                s = v if s is None else s + v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)
            if not row:
                del data[r]
        return ExactMatrix(self.rows, self.cols, data, _trusted=True)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, {r: {c: -v for c, v in rd.items()} for r, rd in self._rows.items()}, _trusted=True)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, s) -> "ExactMatrix":
        s = gr(s)
        if not s:
            return ExactMatrix.zeros(self.rows, self.cols)
        if s == ONE:
            return self
        return ExactMatrix(self.rows, self.cols, {r: {c: v * s for c, v in rd.items()} for r, rd in self._rows.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self.matmul(other)

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._rows
        data = {}
        for r, rd in self._rows.items():
            acc: Dict[int, GaussRat] = {}
            for k, a in rd.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for c, b in brow.items():
                    p = a * b
                    s = acc.get(c)
                    acc[c] = p if s is None else s + p
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                data[r] = acc
        return ExactMatrix(self.rows, other.cols, data, _trusted=True)

    def apply(self, v: Sequence[GaussRat]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = [ZERO] * self.rows
        for r, rd in self._rows.items():
            s = ZERO
            for c, a in rd.items():
                x = v[c]
                if x:
                    s = s + a * x
            out[r] = s
        return tuple(out)

    def transpose(self) -> "ExactMatrix":
        data: Dict[int, Dict[int, GaussRat]] = {}
        for r, rd in self._rows.items():
            for c, v in rd.items():
                data.setdefault(c, {})[r] = v
        return ExactMatrix(self.cols, self.rows, data, _trusted=True)

    def conj(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, {r: {c: v.conj() for c, v in rd.items()} for r, rd in self._rows.items()}, _trusted=True)

    def H(self) -> "ExactMatrix":
        """Conjugate transpose."""
        data: Dict[int, Dict[int, GaussRat]] = {}
        for r, rd in self._rows.items():
            for c, v in rd.items():
                data.setdefault(c, {})[r] = v.conj()
        return ExactMatrix(self.cols, self.rows, data, _trusted=True)

    def trace(self) -> GaussRat:
        s = ZERO
        for r, rd in self._rows.items():
            v = rd.get(r)
            if v is not None:
                s = s + v
        return s

    def commutator(self, other: "ExactMatrix") -> "ExactMatrix":
        return self @ other - other @ self

    def __pow__(self, e: int) -> "ExactMatrix":
        if e < 0:
            raise ValueError("negative matrix power")
        out = ExactMatrix.identity(self.rows)
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, tuple(sorted((r, c, v) for r, rd in self._rows.items() for c, v in rd.items()))))
        return self._hash

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        cpos = {c: j for j, c in enumerate(cols)}
        data = {}
        for i, r in enumerate(rows):
            rd = self._rows.get(r)
            if not rd:
                continue
            row = {cpos[c]: v for c, v in rd.items() if c in cpos}
            if row:
                data[i] = row
        return ExactMatrix(len(rows), len(cols), data, _trusted=True)

    # text format
    def __str__(self) -> str:
        return ";".join(",".join(str(v) for v in row) for row in self.to_rows())

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    @classmethod
    def parse(cls, text: str) -> "ExactMatrix":
        text = text.strip()
        if not text:
            raise ValueError("empty matrix text")
        rows = [[GaussRat.parse(x) for x in row.split(",")] for row in text.split(";")]
        return cls.from_rows(rows)


def hstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    rows = mats[0].rows
    data: Dict[int, Dict[int, GaussRat]] = {}
    off = 0
    for m in mats:
        if m.rows != rows:
            raise ValueError("row count mismatch")
        for r, rd in m._rows.items():
            row = data.setdefault(r, {})
            for c, v in rd.items():
                row[c + off] = v
        off += m.cols
    return ExactMatrix(rows, off, data, _trusted=True)


def vstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    cols = mats[0].cols
    data: Dict[int, Dict[int, GaussRat]] = {}
    off = 0
    for m in mats:
        if m.cols != cols:
            raise ValueError("column count mismatch")
        for r, rd in m._rows.items():
            data[r + off] = dict(rd)
        off += m.rows
    return ExactMatrix(off, cols, data, _trusted=True)


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product with a's index as the slow one."""
    data: Dict[int, Dict[int, GaussRat]] = {}
    br, bc = b.rows, b.cols
    for ra, rda in a._rows.items():
        for rb, rdb in b._rows.items():
            row = {}
            for ca, va in rda.items():
                for cb, vb in rdb.items():
                    row[ca * bc + cb] = va * vb
            data[ra * br + rb] = row
    return ExactMatrix(a.rows * br, a.cols * bc, data, _trusted=True)


def vectorize(m: ExactMatrix) -> Vector:
    """Row-major flattening; used to solve linear systems in matrix unknowns."""
    out = [ZERO] * (m.rows * m.cols)
    for r, rd in m._rows.items():
        for c, v in rd.items():
            out[r * m.cols + c] = v
    return tuple(out)


# Row reduction ----------------------------------------------------------

def _rref_rows(rows: List[Dict[int, GaussRat]], ncols: int, stop_col: int | None = None):
    """In-place reduced row echelon form over sparse row dicts.

    Pivots are chosen column by column from the left, taking the topmost
    remaining row with a nonzero entry. Only columns < stop_col are pivoted.
    Returns (reduced rows, pivot columns); pivot row i has pivot pivots[i].
    """
    limit = ncols if stop_col is None else stop_col
    rows = [r for r in rows if r]
    # column -> set of row indices holding a nonzero there, for fast pivot search
    pivots: List[int] = []
    done: List[Dict[int, GaussRat]] = []
    remaining = rows
    for col in range(limit):
        idx = None
        for i, r in enumerate(remaining):
            if col in r:
                idx = i
                break
        if idx is None:
            continue
        prow = remaining.pop(idx)
        inv = prow[col].inv()
        if inv != ONE:
            prow = {c: v * inv for c, v in prow.items()}
        nxt = []
        for r in remaining:
            f = r.get(col)
            if f is not None:
                r = _axpy(r, prow, -f)
            if r:
                nxt.append(r)
        remaining = nxt
        for j, r in enumerate(done):
            f = r.get(col)
            if f is not None:
                done[j] = _axpy(r, prow, -f)
        done.append(prow)
        pivots.append(col)
    return done + remaining, pivots


def _axpy(r: Dict[int, GaussRat], p: Dict[int, GaussRat], f: GaussRat) -> Dict[int, GaussRat]:
    out = dict(r)
    for c, v in p.items():
        s = out.get(c)
        t = v * f
        s = t if s is None else s + t
        if s:
            out[c] = s
        else:
            out.pop(c, None)
    return out


def rref(m: ExactMatrix) -> Tuple[ExactMatrix, List[int]]:
    rows, piv = _rref_rows([dict(m.row_dict(r)) for r in range(m.rows)], m.cols)
    data = {i: r for i, r in enumerate(rows) if r}
    return ExactMatrix(m.rows, m.cols, data, _trusted=True), piv


def rank(m: ExactMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: ExactMatrix) -> List[Vector]:
    """Basis of the null space, one vector per free column (1 in that slot)."""
    rows, piv = _rref_rows([dict(m.row_dict(r)) for r in range(m.rows)], m.cols)
    pivset = set(piv)
    out = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for prow, pc in zip(rows, piv):
            f = prow.get(free)
            if f is not None:
                v[pc] = -f
        out.append(tuple(v))
    return out


def solve_linear(a: ExactMatrix, b: Sequence) -> Vector:
    """Some x with a x = b; free variables are set to zero. Raises NoSolution."""
    b = vec(b)
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    n = a.cols
    rows = []
    for r in range(a.rows):
        rd = dict(a.row_dict(r))
        if b[r]:
            rd[n] = b[r]
        rows.append(rd)
    red, piv = _rref_rows(rows, n + 1, stop_col=n)
    x = [ZERO] * n
    pivrows = red[: len(piv)]
    for r in red[len(piv):]:
        if r.get(n):
            raise NoSolution("right-hand side is not in the column space")
    for prow, pc in zip(pivrows, piv):
        x[pc] = prow.get(n, ZERO)
    return tuple(x)


def solve_many(a: ExactMatrix, rhs: Sequence[Sequence]) -> List[Vector]:
    """Solve a x = b for several right-hand sides with a single elimination."""
    n = a.cols
    m = len(rhs)
    rows = []
    for r in range(a.rows):
        rd = dict(a.row_dict(r))
        for j, b in enumerate(rhs):
            v = gr(b[r])
            if v:
                rd[n + j] = v
        rows.append(rd)
    red, piv = _rref_rows(rows, n + m, stop_col=n)
    for r in red[len(piv):]:
        if r:
            raise NoSolution("right-hand side is not in the column space")
    out = []
    for j in range(m):
        x = [ZERO] * n
        for prow, pc in zip(red, piv):
            x[pc] = prow.get(n + j, ZERO)
        out.append(tuple(x))
    return out


def span_basis(vectors: Sequence[Sequence]) -> List[Vector]:
    """Canonical (reduced echelon) basis of the span of the given vectors."""
    if not vectors:
        return []
    n = len(vectors[0])
    rows = [{i: gr(x) for i, x in enumerate(v) if gr(x)} for v in vectors]
    red, piv = _rref_rows(rows, n)
    out = []
    for r in red[: len(piv)]:
        v = [ZERO] * n
        for c, x in r.items():
            v[c] = x
        out.append(tuple(v))
    return out


def inverse(m: ExactMatrix) -> ExactMatrix:
    if not m.is_square():
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    cols = solve_many(m, [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)])
    res = ExactMatrix.from_columns(cols, n)
    if not (m @ res == ExactMatrix.identity(n)):
        raise ZeroDivisionError("matrix is singular")
    return res


# Hermitian congruence -----------------------------------------------------

def is_hermitian(g: ExactMatrix) -> bool:
    return g.is_square() and g.H() == g


def congruence_diagonalize(g: ExactMatrix) -> Tuple[ExactMatrix, List[GaussRat]]:
    """Return (P, d) with P^H g P = diag(d), P invertible, d real.

    Symmetric Gaussian elimination: pivot on the first nonzero diagonal entry;
    when the remaining diagonal vanishes but some off-diagonal entry g_ij does
    not, column i is replaced by e_i + t e_j with t in {1, i} chosen so the
    new diagonal entry 2 Re(g_ij t) is nonzero.
    """
    if not is_hermitian(g):
        raise NotHermitian("matrix is not equal to its conjugate transpose")
    n = g.rows
    a = g.to_rows()
    p = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]

    def add_col(dst, src, t):
        # column op on a (A <- A E) with row op conj (A <- E^H A), and P <- P E
        for r in range(n):
            if a[r][src]:
                a[r][dst] = a[r][dst] + a[r][src] * t
        tc = t.conj()
        for c in range(n):
            if a[src][c]:
                a[dst][c] = a[dst][c] + tc * a[src][c]
        for r in range(n):
            if p[r][src]:
                p[r][dst] = p[r][dst] + p[r][src] * t

    def swap(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(n):
            p[r][i], p[r][j] = p[r][j], p[r][i]

    for k in range(n):
        piv = next((j for j in range(k, n) if a[j][j]), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(k, n) if i != j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            t = ONE if a[i][j].re else I
            add_col(i, j, t)
            piv = i
        swap(k, piv)
        d = a[k][k]
        for j in range(k + 1, n):
            if a[k][j]:
                add_col(j, k, -(a[k][j] / d))
    diag = [a[i][i] for i in range(n)]
    return ExactMatrix.from_rows(p), diag


def hermitian_signature(g: ExactMatrix) -> Tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a Hermitian matrix, exactly."""
    _, d = congruence_diagonalize(g)
    plus = sum(1 for x in d if x.re > 0)
    minus = sum(1 for x in d if x.re < 0)
    return plus, minus, len(d) - plus - minus
