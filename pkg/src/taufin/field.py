"""Exact arithmetic over prime fields and the rationals.

Matrices are plain numpy arrays: ``int64`` holding residues in ``[0, p)`` for a
prime field, ``object`` arrays of :class:`fractions.Fraction` for the rationals.
Every routine returns reduced arrays, so callers may compare with ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

import numpy as np

DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@lru_cache(maxsize=8)
def _inverse_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        table[a] = pow(a, p - 2, p)
    return table


@dataclass(frozen=True)
class Field:
    """A prime field ``F_p`` (``p`` set) or the rationals (``p is None``)."""

    p: int | None = DEFAULT_PRIME
    _inv: np.ndarray | None = dc_field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.p is not None:
            if not is_prime(self.p):
                raise ValueError(f"field order {self.p} is not prime")
            if self.p > 3037000493:
                # products of two residues must fit in int64
                raise ValueError("prime too large for int64 arithmetic")
            object.__setattr__(self, "_inv", _inverse_table(self.p) if self.p < 10**6 else None)

    # -- naming ---------------------------------------------------------
    @classmethod
    def parse(cls, spec: str) -> "Field":
        spec = spec.strip().lower()
        if spec in ("q", "qq", "rational", "rationals"):
            return cls(None)
        if spec.startswith("fp:"):
            return cls(int(spec[3:]))
        raise ValueError(f"unknown field spec {spec!r}")

    def spec(self) -> str:
        return "qq" if self.p is None else f"fp:{self.p}"

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    # -- scalars --------------------------------------------------------
    def scalar(self, value) -> int | Fraction:
        """Coerce an int / Fraction / 'a/b' string into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p is None:
            return Fraction(value)
        value = Fraction(value)
        num = value.numerator % self.p
        den = value.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes modulo {self.p}")
        return (num * self.inv(den)) % self.p

    def inv(self, a):
        if self.p is None:
            return 1 / Fraction(a)
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._inv is not None:
            return int(self._inv[a])
        return pow(a, self.p - 2, self.p)

    def to_int(self, a) -> int:
        """Symmetric integer lift, used for human readable output."""
        a = int(a) % self.p
        return a - self.p if a > self.p // 2 else a

    # -- arrays ---------------------------------------------------------
    @property
    def dtype(self):
        return np.int64 if self.p is not None else object

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.p is None:
            out = np.empty((rows, cols), dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = 1 if self.p is not None else Fraction(1)
        return out

    def array(self, data, shape=None) -> np.ndarray:
        if self.p is None:
            arr = np.array(data, dtype=object)
            if shape is not None:
                arr = arr.reshape(shape)
            flat = arr.reshape(-1)
            for k in range(flat.size):
                flat[k] = Fraction(flat[k])
            return arr
        arr = np.array(data, dtype=object if _has_fraction(data) else None)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.dtype == object:
            out = np.empty(arr.shape, dtype=np.int64)
            flat_in, flat_out = arr.reshape(-1), out.reshape(-1)
            for k in range(flat_in.size):
                flat_out[k] = self.scalar(flat_in[k])
            return out
        return np.asarray(arr, dtype=np.int64) % self.p

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a % self.p if self.p is not None else a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return self.reduce(a @ b)

    def mat_chain(self, mats, dim: int) -> np.ndarray:
        """Product ``mats[-1] @ ... @ mats[0]`` (apply ``mats[0]`` first)."""
        out = self.eye(dim)
        for m in mats:
            out = self.matmul(m, out)
        return out

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        if self.p is None:
            return self.array(rng.integers(-9, 10, size=shape))
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a != 0)

    # -- elimination ----------------------------------------------------
    def rref(self, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
        a = a.copy()
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
            a[r] = self.reduce(a[r] * self.inv(a[r, c]))
            colv = a[:, c].copy()
            colv[r] = 0
            hit = np.nonzero(colv)[0]
            if hit.size:
                a[hit] = self.reduce(a[hit] - np.outer(colv[hit], a[r]))
            pivots.append(c)
            r += 1
        return a[:r], pivots

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def nullspace(self, a: np.ndarray) -> np.ndarray:
        """Columns spanning ``{x : a x = 0}``; shape ``(a.shape[1], k)``."""
        cols = a.shape[1]
        if a.shape[0] == 0:
            return self.eye(cols)
        r, pivots = self.rref(a)
        pset = set(pivots)
        free = [c for c in range(cols) if c not in pset]
        out = self.zeros(cols, len(free))
        if free:
            out[free, range(len(free))] = 1
            if pivots:
                out[np.ix_(pivots, range(len(free)))] = self.reduce(-r[:, free])
        return out

    def colspace(self, a: np.ndarray) -> np.ndarray:
        """A column basis (in reduced form) of the span of the columns of ``a``."""
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], 0)
        r, _ = self.rref(a.T)
        return r.T.copy()

    def complement_coords(self, basis: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """For a column-spanned subspace ``S`` of ``F^d``, return ``(q, free)``.

        ``free`` lists coordinates whose unit vectors span a complement of S and
        ``q`` (shape ``len(free) x d``) is the projection ``F^d -> F^d / S``
        expressed in those coordinates.
        """
        d = basis.shape[0]
        if basis.shape[1] == 0:
            return self.eye(d), list(range(d))
        r, pivots = self.rref(basis.T)
        pset = set(pivots)
        free = [c for c in range(d) if c not in pset]
        q = self.zeros(len(free), d)
        if free:
            q[range(len(free)), free] = 1
            if pivots:
                q[np.ix_(range(len(free)), pivots)] = self.reduce(-r[:, free].T)
        return q, free

    def solve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Some ``x`` with ``a x = b`` (columns of b solved simultaneously)."""
        rows, cols = a.shape
        aug = np.concatenate([a, b], axis=1) if b.shape[1] else a
        r, pivots = self.rref(aug)
        if any(pc >= cols for pc in pivots):
            raise ValueError("linear system is inconsistent")
        x = self.zeros(cols, b.shape[1])
        for i, pc in enumerate(pivots):
            x[pc] = r[i, cols:]
        return x

    def inverse(self, a: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        r, pivots = self.rref(np.concatenate([a, self.eye(n)], axis=1))
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return r[:, n:].copy()

    def is_invertible(self, a: np.ndarray) -> bool:
        n = a.shape[0]
        return a.shape == (n, n) and self.rank(a) == n


def _has_fraction(data) -> bool:
    if isinstance(data, (Fraction, str)):
        return True
    if isinstance(data, (list, tuple)):
        return any(_has_fraction(x) for x in data)
    if isinstance(data, np.ndarray):
        return data.dtype == object
    return False


def int_det(rows: list[list[int]]) -> int:
    """Exact integer determinant (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(map(int, r)) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
