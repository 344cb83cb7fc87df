"""
Dense matrices and univariate polynomials over a finite field.

Matrices wrap an int64 numpy array of canonical elements plus the field
that owns them; all arithmetic is exact.  Elimination uses the first
nonzero entry as pivot, so results are deterministic.

Polynomials are plain Python lists of coefficients, lowest degree first.
The zero polynomial is the empty list (or all zeros); its degree is -1.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .field import Field, FieldError


class SingularMatrixError(ValueError):
    """Raised when inverting a singular (or non-square) matrix."""


class BudgetExceededError(ValueError):
    """Raised when an exhaustive enumeration would exceed its budget."""


class Matrix:
    __slots__ = ("field", "data")

    def __init__(self, field: Field, data, check: bool = True):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if check and arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise FieldError("matrix entries must be canonical field elements")
        self.field = field
        self.data = arr

    # -- constructors ------------------------------------------------------
    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols), dtype=np.int64), check=False)

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int64), check=False)

    # -- basics ------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __getitem__(self, key):
        return self.data[key]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.data.shape == other.data.shape
                and bool((self.data == other.data).all()))

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.data.copy(), check=False)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.data.T.copy(), check=False)

    def is_zero(self) -> bool:
        return not self.data.any()

    def __repr__(self):
        return f"Matrix({self.field}, {self.data.tolist()})"

    # -- arithmetic ----------------------------------------------------------
    def matmul(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise FieldError("matrix product across different fields")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.data.shape} @ {other.data.shape}")
        f = self.field
        if f.kind == "prime":
            # chunk the inner dimension so int64 accumulation cannot overflow
            p = f.q
            chunk = max(1, (1 << 62) // (p * p))
            acc = np.zeros((self.rows, other.cols), dtype=np.int64)
            for lo in range(0, self.cols, chunk):
                hi = min(lo + chunk, self.cols)
                acc = (acc + self.data[:, lo:hi] @ other.data[lo:hi, :]) % p
            return Matrix(f, acc, check=False)
        acc = np.zeros((self.rows, other.cols), dtype=np.int64)
        for t in range(self.cols):
            acc ^= f.vec_mul(self.data[:, t:t + 1], other.data[t:t + 1, :])
        return Matrix(f, acc, check=False)

    def __matmul__(self, other):
        return self.matmul(other)

    def scale_cols(self, factors: Sequence[int]) -> "Matrix":
        """Right-multiplication by diag(factors)."""
        row = np.asarray(factors, dtype=np.int64).reshape(1, -1)
        return Matrix(self.field, self.field.vec_mul(self.data, row), check=False)

    # -- elimination ----------------------------------------------------------
    def _eliminate(self, aug: int = 0):
        """Row-reduce in place on a copy; returns (array, pivot columns).

        Only the first (cols - aug) columns are searched for pivots; the
        trailing aug columns ride along (used for inversion).
        """
        f = self.field
        a = self.data.copy()
        rows, cols = a.shape
        pivot_cols = []
        r = 0
        for c in range(cols - aug):
            rows_nz = np.nonzero(a[r:, c])[0]
            if rows_nz.size == 0:
                continue
            pr = r + int(rows_nz[0])
            if pr != r:
                a[[r, pr]] = a[[pr, r]]
            inv_p = f.inv(int(a[r, c]))
            a[r] = f.vec_mul(a[r], np.int64(inv_p))
            factors = a[:, c].copy()
            factors[r] = 0
            a[:] = f.vec_sub(a, f.vec_mul(factors.reshape(-1, 1), a[r].reshape(1, -1)))
            pivot_cols.append(c)
            r += 1
            if r == rows:
                break
        return a, pivot_cols

    def rank(self) -> int:
        return len(self._eliminate()[1])

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise SingularMatrixError("only square matrices can be inverted")
        n = self.rows
        aug = np.concatenate([self.data, np.eye(n, dtype=np.int64)], axis=1)
        reduced, pivots = Matrix(self.field, aug, check=False)._eliminate(aug=n)
        if len(pivots) != n:
            raise SingularMatrixError("matrix is singular")
        return Matrix(self.field, reduced[:, n:], check=False)


def vandermonde(field: Field, r: int, points: Sequence[int]) -> Matrix:
    """(r x n) matrix with entry (u, v) = points[v]**u.

    Points must be distinct and nonzero so that any r columns stay
    independent and the points can serve as code locators.
    """
    pts = [field.check_element(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("vandermonde points must be distinct")
    if any(p == 0 for p in pts):
        raise ValueError("vandermonde points must be nonzero")
    m = Matrix.zeros(field, r, len(pts))
    row = [1] * len(pts)
    for u in range(r):
        m.data[u] = row
        row = [field.mul(x, p) for x, p in zip(row, pts)]
    return m


def diag(field: Field, values: Sequence[int]) -> Matrix:
    m = Matrix.zeros(field, len(values), len(values))
    for i, v in enumerate(values):
        m.data[i, i] = field.check_element(v)
    return m


# ---------------------------------------------------------------------------
# polynomials: coefficient lists, lowest degree first


def poly_degree(coeffs: Sequence[int]) -> int:
    d = len(coeffs) - 1
    while d >= 0 and coeffs[d] == 0:
        d -= 1
    return d


def poly_eval_one(field: Field, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc


def poly_eval(field: Field, coeffs: Sequence[int], xs: Iterable[int]) -> list[int]:
    """Evaluate at every point of an ordered set (Horner per point)."""
    return [poly_eval_one(field, coeffs, x) for x in xs]


def _poly_mul_linear(field, coeffs, x):
    # multiply by (X - x)
    nx = field.neg(x)
    out = [0] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] = field.add(out[i], field.mul(c, nx))
        out[i + 1] = field.add(out[i + 1], c)
    return out


def interpolate(field: Field, points: Sequence[tuple[int, int]]) -> list[int]:
    """Unique polynomial of degree < len(points) through the given (x, y).

    Lagrange via the master root polynomial: build Z = prod(X - x_i), peel
    off each factor by synthetic division, rescale and accumulate.  O(n^2).
    """
    if not points:
        raise ValueError("interpolation needs at least one point")
    xs = [field.check_element(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation points must have distinct x values")
    z = [1]
    for x in xs:
        z = _poly_mul_linear(field, z, x)
    n = len(points)
    out = [0] * n
    for x, y in points:
        # numerator N = Z / (X - x) by synthetic division
        num = [0] * n
        num[n - 1] = z[n]
        for j in range(n - 1, 0, -1):
            num[j - 1] = field.add(z[j], field.mul(num[j], x))
        denom = poly_eval_one(field, num, x)
        scale = field.mul(y, field.inv(denom))
        for j in range(n):
            out[j] = field.add(out[j], field.mul(scale, num[j]))
    return out


# ---------------------------------------------------------------------------


def min_row_space_weight(gen: Matrix, budget: int = 1 << 20,
                         chunk: int = 1 << 15) -> int:
    """Minimum Hamming weight over all nonzero combinations of gen's rows.

    Brute force over all q^k messages, vectorized in chunks.  This is the
    oracle the distance theorems are checked against, so it deliberately
    enumerates rather than exploiting any code structure.
    """
    f = gen.field
    k, n = gen.rows, gen.cols
    total = f.q ** k
    if total > budget:
        raise BudgetExceededError(
            f"q^k = {total} exceeds the enumeration budget {budget}")
    best = n + 1
    q = f.q
    for lo in range(0, total, chunk):
        hi = min(lo + chunk, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        acc = np.zeros((hi - lo, n), dtype=np.int64)
        for i in range(k):
            digit = (idx // (q ** i)) % q
            term = f.vec_mul(digit.reshape(-1, 1), gen.data[i:i + 1, :])
            acc = f.vec_add(acc, term)
        weights = np.count_nonzero(acc, axis=1)
        if lo == 0:
            weights[0] = n + 1  # skip the all-zero message
        best = min(best, int(weights.min()))
    return best
