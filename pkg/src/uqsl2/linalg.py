"""Dense exact matrices over Q and the few algorithms built on them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, DuplicateNodeError, NotNilpotentError, SingularMatrixError
from .scalars import format_rational, parse_rational

try:  # gmpy2 rationals are an order of magnitude faster than Fraction
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _Q = Fraction


def as_entry(v):
    """Any rational-like value as the internal entry type."""
    if isinstance(v, Fraction):
        return _Q(int(v.numerator), int(v.denominator))
    return _Q(v)


_ZERO = as_entry(0)
_ONE = as_entry(1)


class Matrix:
    """Immutable rows x cols matrix of exact rationals.

    Entries are stored row-major as a tuple of row tuples.  Equality is
    exact entrywise equality; there is no tolerance anywhere.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable]):
        rows = tuple(tuple(as_entry(v) for v in row) for row in data)
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        self.rows = len(rows)
        self.cols = width
        self._data = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple) -> Matrix:
        # rows is already a tuple of tuples of Fractions
        m = object.__new__(cls)
        m.rows = len(rows)
        m.cols = len(rows[0])
        m._data = rows
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> Matrix:
        return _zeros(rows, rows if cols is None else cols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return _identity(n)

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        n = len(values)
        vals = [as_entry(v) for v in values]
        return cls._raw(tuple(tuple(vals[i] if i == j else _ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def from_entries(cls, n: int, entries: dict, cols: int | None = None) -> Matrix:
        """Build an n x cols matrix from a sparse {(i, j): value} mapping."""
        cols = n if cols is None else cols
        grid = [[_ZERO] * cols for _ in range(n)]
        for (i, j), v in entries.items():
            grid[i][j] = as_entry(v)
        return cls._raw(tuple(tuple(r) for r in grid))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._data)
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in r) for r in self._data)
        return f"Matrix([{body}])"

    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __sub__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __neg__(self) -> Matrix:
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._data))

    def scale(self, c) -> Matrix:
        c = as_entry(c)
        if c == 0:
            return Matrix.zeros(self.rows, self.cols)
        if c == 1:
            return self
        return Matrix._raw(tuple(tuple(c * a if a else _ZERO for a in r) for r in self._data))

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> Matrix:
        return self.scale(1 / as_entry(c))

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def __pow__(self, n: int) -> Matrix:
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        if n < 0:
            return mat_inverse(self) ** (-n)
        result = Matrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def diagonal(self) -> tuple:
        return tuple(self._data[i][i] for i in range(min(self.rows, self.cols)))

    def is_diagonal(self) -> bool:
        return all(v == 0 for i, r in enumerate(self._data) for j, v in enumerate(r) if i != j)

    def apply(self, vec: Sequence[Fraction]) -> list[Fraction]:
        """Matrix-vector product, skipping zero entries of ``vec``."""
        nz = [(j, v) for j, v in enumerate(vec) if v]
        return [sum((r[j] * v for j, v in nz if r[j]), _ZERO) for r in self._data]

    def first_difference(self, other: Matrix) -> tuple[int, int] | None:
        """Coordinates of the first entry where two same-shape matrices differ."""
        self._check_same_shape(other)
        for i, (r, s) in enumerate(zip(self._data, other._data)):
            for j, (a, b) in enumerate(zip(r, s)):
                if a != b:
                    return i, j
        return None

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_rational(v) for v in r] for r in self._data],
        }

    @classmethod
    def from_json(cls, data: dict) -> Matrix:
        m = cls([[parse_rational(v) for v in r] for r in data["entries"]])
        if m.shape != (data["rows"], data["cols"]):
            raise DimensionError(f"declared shape {(data['rows'], data['cols'])} != actual {m.shape}")
        return m


# matrices are immutable, so the constant ones can be shared
@lru_cache(maxsize=None)
def _zeros(rows: int, cols: int) -> Matrix:
    return Matrix._raw(tuple((_ZERO,) * cols for _ in range(rows)))


@lru_cache(maxsize=None)
def _identity(n: int) -> Matrix:
    return Matrix.diag([_ONE] * n)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    bd = b._data
    cols = b.cols
    out = []
    for r in a._data:
        acc = [_ZERO] * cols
        for k, av in enumerate(r):
            if not av:
                continue
            for j, bv in enumerate(bd[k]):
                if bv:
                    acc[j] += av * bv
        out.append(tuple(acc))
    return Matrix._raw(tuple(out))


def mat_prod(*factors: Matrix) -> Matrix:
    result = factors[0]
    for f in factors[1:]:
        result = mat_mul(result, f)
    return result


def mat_inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse; pivots on the first nonzero entry of each column."""
    if not m.is_square:
        raise DimensionError(f"cannot invert non-square {m.shape} matrix")
    n = m.rows
    aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(m._data)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        prow = [v / p for v in aug[col]]
        aug[col] = prow
        for r in range(n):
            if r != col and aug[r][col] != 0:
                c = aug[r][col]
                aug[r] = [a - c * b for a, b in zip(aug[r], prow)]
    return Matrix._raw(tuple(tuple(r[n:]) for r in aug))


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.rows for b in blocks)
    grid = [[_ZERO] * n for _ in range(n)]
    off = 0
    for b in blocks:
        if not b.is_square:
            raise DimensionError("block_diag needs square blocks")
        for i, r in enumerate(b):
            grid[off + i][off : off + b.cols] = r
        off += b.rows
    return Matrix._raw(tuple(tuple(r) for r in grid))


def nilpotency_index(m: Matrix) -> int:
    """Least r >= 1 with m^r = 0."""
    if not m.is_square:
        raise DimensionError("nilpotency of a non-square matrix")
    return _nilpotency_index(m)


@lru_cache(maxsize=4096)
def _nilpotency_index(m: Matrix) -> int:
    power = m
    for r in range(1, m.rows + 1):
        if power.is_zero():
            return r
        power = power @ m
    raise NotNilpotentError(f"m^{m.rows} != 0")


def scalar_detect(m: Matrix) -> Fraction | None:
    """Return c when m == c*I exactly, else None."""
    if not m.is_square:
        raise DimensionError("scalar_detect needs a square matrix")
    c = m[0, 0]
    for i, r in enumerate(m):
        for j, v in enumerate(r):
            if v != (c if i == j else 0):
                return None
    return c


def powers(m: Matrix, count: int) -> list[Matrix]:
    """[I, m, m^2, ..., m^(count-1)]."""
    out = [Matrix.identity(m.rows)]
    for _ in range(1, count):
        out.append(out[-1] @ m)
    return out


@dataclass(frozen=True)
class Poly:
    """Polynomial in one variable; coeffs[i] multiplies x^i.  Trailing zeros are trimmed."""

    coeffs: tuple

    def __post_init__(self):
        cs = [as_entry(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __call__(self, x):
        acc = as_entry(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (_ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (_ZERO,) * (n - len(other.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return Poly(tuple(as_entry(other) * c for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Poly(())
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"coefficients": [format_rational(c) for c in self.coeffs]}


def poly_eval(p: Poly, m: Matrix) -> Matrix:
    """Sum of p_i m^i (Horner), with m^0 = I."""
    if not m.is_square:
        raise DimensionError("poly_eval needs a square matrix")
    n = m.rows
    acc = Matrix.zeros(n)
    for c in reversed(p.coeffs):
        acc = acc @ m + Matrix.identity(n).scale(c)
    return acc


def lagrange_interpolate(nodes: Sequence, values: Sequence) -> Poly:
    """The unique polynomial of degree < len(nodes) through (nodes[i], values[i])."""
    if len(nodes) != len(values):
        raise DimensionError("nodes and values differ in length")
    xs = [as_entry(x) for x in nodes]
    if len(set(xs)) != len(xs):
        raise DuplicateNodeError("interpolation nodes must be pairwise distinct")
    result = Poly(())
    for i, (xi, yi) in enumerate(zip(xs, values)):
        if yi == 0:
            continue
        basis = Poly((1,))
        denom = as_entry(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly((-xj, 1))
                denom *= xi - xj
        result = result + basis * (as_entry(yi) / denom)
    return result
