"""Exact rational matrices.

:class:`QMatrix` stores an integer numerator matrix and one positive common
denominator, kept in lowest terms.  Entries come back as
:class:`fractions.Fraction`.  Products, echelon forms and determinants go
through :mod:`heckext.kernels`, so they run on integers only.

The scalar type is ``Fraction`` throughout; :func:`to_scalar` is the single
place where inputs are coerced.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import kernels

__all__ = ["QMatrix", "to_scalar", "format_scalar", "parse_scalar",
           "vec_lcm_scale", "SingularMatrixError"]

Scalar = Fraction


class SingularMatrixError(ArithmeticError):
    pass


def to_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def parse_scalar(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty scalar")
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def format_scalar(x) -> str:
    x = to_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec_lcm_scale(vec: Sequence[Fraction]) -> list[int]:
    """Integer vector proportional to ``vec`` (positive factor)."""
    d = 1
    for x in vec:
        d = lcm(d, x.denominator)
    return [int(x * d) for x in vec]


class QMatrix:
    """Immutable exact rational matrix."""

    __slots__ = ("_num", "_den", "_m", "_n", "_hash")

    def __init__(self, rows: Iterable[Iterable] = (), shape: tuple[int, int] | None = None):
        rows = [list(r) for r in rows]
        if all(type(x) is int for r in rows for x in r):
            m = len(rows) if shape is None else shape[0]
            n = (len(rows[0]) if rows else 0) if shape is None else shape[1]
            if len(rows) != m or any(len(r) != n for r in rows):
                raise ValueError("ragged rows or shape mismatch")
            self._set(rows, 1, m, n)
            return
        rows = [[to_scalar(x) for x in r] for r in rows]
        if shape is None:
            m = len(rows)
            n = len(rows[0]) if rows else 0
        else:
            m, n = shape
        if len(rows) != m or any(len(r) != n for r in rows):
            raise ValueError("ragged rows or shape mismatch")
        d = 1
        for r in rows:
            for x in r:
                d = lcm(d, x.denominator)
        num = [[x.numerator * (d // x.denominator) for x in r] for r in rows]
        self._set(num, d, m, n)

    def _set(self, num, den, m, n):
        g = den
        for r in num:
            for x in r:
                if x:
                    g = gcd(g, x)
                    if g == 1:
                        break
            if g == 1:
                break
        if g > 1:
            num = [[x // g for x in r] for r in num]
            den //= g
        self._num = tuple(tuple(r) for r in num)
        self._den = den
        self._m = m
        self._n = n
        self._hash = None

    @classmethod
    def _raw(cls, num, den: int, m: int, n: int) -> "QMatrix":
        if den < 0:
            num = [[-x for x in r] for r in num]
            den = -den
        obj = cls.__new__(cls)
        obj._set(num, den, m, n)
        return obj

    # ------------------------------------------------------------ builders
    @classmethod
    def from_numerators(cls, num, den: int, m: int, n: int) -> "QMatrix":
        """Matrix with entries ``num[i][j] / den`` (integers, ``den != 0``)."""
        return cls._raw(num, den, m, n)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls._raw([[int(i == j) for j in range(n)] for i in range(n)], 1, n, n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "QMatrix":
        return cls._raw([[0] * n for _ in range(m)], 1, m, n)

    @classmethod
    def scalar(cls, n: int, value) -> "QMatrix":
        value = to_scalar(value)
        return cls._raw([[value.numerator if i == j else 0 for j in range(n)] for i in range(n)],
                        value.denominator, n, n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "QMatrix":
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls([[c[i] for c in cols] for i in range(nrows)], shape=(nrows, len(cols)))

    @classmethod
    def hstack(cls, mats: Sequence["QMatrix"], nrows: int | None = None) -> "QMatrix":
        if not mats:
            return cls.zeros(nrows or 0, 0)
        m = mats[0]._m
        if any(a._m != m for a in mats):
            raise ValueError("hstack row mismatch")
        d = 1
        for a in mats:
            d = lcm(d, a._den)
        num = [[] for _ in range(m)]
        for a in mats:
            f = d // a._den
            for i in range(m):
                num[i].extend(x * f for x in a._num[i])
        return cls._raw(num, d, m, sum(a._n for a in mats))

    @classmethod
    def vstack(cls, mats: Sequence["QMatrix"], ncols: int | None = None) -> "QMatrix":
        if not mats:
            return cls.zeros(0, ncols or 0)
        n = mats[0]._n
        if any(a._n != n for a in mats):
            raise ValueError("vstack column mismatch")
        d = 1
        for a in mats:
            d = lcm(d, a._den)
        num = []
        for a in mats:
            f = d // a._den
            num.extend([x * f for x in r] for r in a._num)
        return cls._raw(num, d, sum(a._m for a in mats), n)

    # ------------------------------------------------------------- access
    @property
    def shape(self) -> tuple[int, int]:
        return (self._m, self._n)

    @property
    def nrows(self) -> int:
        return self._m

    @property
    def ncols(self) -> int:
        return self._n

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def numerators(self) -> tuple[tuple[int, ...], ...]:
        return self._num

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(self._num[i][j], self._den)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num[i])

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(r[j], self._den) for r in self._num)

    def tolist(self) -> list[list[Fraction]]:
        return [[Fraction(x, self._den) for x in r] for r in self._num]

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for r in self._num for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        return QMatrix._raw([[self._num[i][j] for j in cols] for i in rows], self._den,
                            len(rows), len(cols))

    def columns(self, cols: Sequence[int]) -> "QMatrix":
        return self.submatrix(range(self._m), cols)

    # --------------------------------------------------------- arithmetic
    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self._m, self._n, self._den, self._num) == (other._m, other._n, other._den, other._num)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._m, self._n, self._den, self._num))
        return self._hash

    def __repr__(self) -> str:
        return f"QMatrix({[[format_scalar(x) for x in r] for r in self.tolist()]})"

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same(other)
        d = lcm(self._den, other._den)
        f, g = d // self._den, d // other._den
        num = [[x * f + y * g for x, y in zip(r, s)] for r, s in zip(self._num, other._num)]
        return QMatrix._raw(num, d, self._m, self._n)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._check_same(other)
        d = lcm(self._den, other._den)
        f, g = d // self._den, d // other._den
        num = [[x * f - y * g for x, y in zip(r, s)] for r, s in zip(self._num, other._num)]
        return QMatrix._raw(num, d, self._m, self._n)

    def __neg__(self) -> "QMatrix":
        return QMatrix._raw([[-x for x in r] for r in self._num], self._den, self._m, self._n)

    def __mul__(self, c) -> "QMatrix":
        if isinstance(c, QMatrix):
            raise TypeError("use @ for matrix products")
        c = to_scalar(c)
        return QMatrix._raw([[x * c.numerator for x in r] for r in self._num],
                            self._den * c.denominator, self._m, self._n)

    __rmul__ = __mul__

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self._n != other._m:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        num = kernels.int_matmul(self._num, other._num, self._m, self._n, other._n)
        return QMatrix._raw(num, self._den * other._den, self._m, other._n)

    @property
    def T(self) -> "QMatrix":
        return QMatrix._raw([list(c) for c in zip(*self._num)] if self._m else [[] for _ in range(self._n)],
                            self._den, self._n, self._m) if self._m else QMatrix.zeros(self._n, 0)

    def kron(self, other: "QMatrix") -> "QMatrix":
        m, n = self._m * other._m, self._n * other._n
        num = []
        for r in self._num:
            for s in other._num:
                num.append([x * y for x in r for y in s])
        return QMatrix._raw(num, self._den * other._den, m, n)

    def trace(self) -> Fraction:
        return Fraction(sum(self._num[i][i] for i in range(min(self._m, self._n))), self._den)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._num for x in r)

    def is_square(self) -> bool:
        return self._m == self._n

    def __pow__(self, k: int) -> "QMatrix":
        if not self.is_square() or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        out = QMatrix.identity(self._m)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    # ---------------------------------------------------- linear algebra
    def rref(self) -> tuple["QMatrix", list[int]]:
        """Reduced row echelon form (zero rows dropped) and pivot columns."""
        rows, piv = kernels.int_rref(self._num, self._n)
        out = [[Fraction(x, r[p]) for x in r] for r, p in zip(rows, piv)]
        return QMatrix(out, shape=(len(out), self._n)), list(piv)

    def rank(self) -> int:
        if self._m == 0 or self._n == 0:
            return 0
        return len(kernels.int_rref(self._num, self._n)[1])

    def row_basis(self) -> tuple[list[tuple[int, ...]], list[int]]:
        """Primitive integer basis of the row space plus pivots."""
        rows, piv = kernels.int_rref(self._num, self._n)
        return [tuple(r) for r in rows], list(piv)

    def nullspace(self) -> "QMatrix":
        """Columns form a basis of the right kernel (RREF basis, free vars = 1)."""
        n = self._n
        rows, piv = kernels.int_rref(self._num, n)
        pivset = set(piv)
        free = [j for j in range(n) if j not in pivset]
        cols = []
        for f in free:
            v = [Fraction(0)] * n
            v[f] = Fraction(1)
            for r, p in zip(rows, piv):
                if r[f]:
                    v[p] = Fraction(-r[f], r[p])
            cols.append(v)
        return QMatrix.from_columns(cols, nrows=n)

    def column_basis(self) -> tuple["QMatrix", list[int]]:
        """Independent columns chosen greedily left to right, and their indices."""
        _, piv = kernels.int_rref(self._num, self._n)
        return self.columns(piv), list(piv)

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("det of a non-square matrix")
        d = kernels.int_det(self._num, self._n)
        return Fraction(d, self._den ** self._n)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self._n

    def inverse(self) -> "QMatrix":
        n = self._n
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self._num)]
        rows, piv = kernels.int_rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise SingularMatrixError("matrix is singular")
        inv = [[Fraction(x * self._den, r[i]) for x in r[n:]] for i, r in enumerate(rows[:n])]
        return QMatrix(inv, shape=(n, n))

    def solve_left_inverse(self) -> "QMatrix":
        """A left inverse ``L`` (``L @ self == I``) for a full column rank matrix."""
        m, n = self.shape
        _, piv = kernels.int_rref([list(c) for c in zip(*self._num)] if m else [], m)
        if len(piv) != n:
            raise SingularMatrixError("matrix does not have full column rank")
        sq = self.submatrix(piv, range(n)).inverse()
        num = [[0] * m for _ in range(n)]
        d = sq._den
        for i in range(n):
            for t, p in enumerate(piv):
                num[i][p] = sq._num[i][t]
        return QMatrix._raw(num, d, n, m)

    def to_text(self) -> str:
        return "; ".join(" ".join(format_scalar(x) for x in r) for r in self.tolist())

    @classmethod
    def from_text(cls, text: str, shape: tuple[int, int] | None = None) -> "QMatrix":
        text = text.strip()
        if not text:
            rows = []
        else:
            rows = [[parse_scalar(t) for t in chunk.split()] for chunk in text.split(";")]
        if shape is not None and shape[0] == 0:
            rows = []
        return cls(rows, shape=shape)
