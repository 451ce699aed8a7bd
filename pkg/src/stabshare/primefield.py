"""Exact arithmetic and linear algebra over Z_p for prime p.

Everything is plain Gauss-Jordan elimination on small integer arrays; at the
sizes this package targets (tens of rows) that is exact and instant.  The
array-level helpers (``mod_rref`` etc.) are what the rest of the package
uses; ``FieldElement``/``FieldMatrix`` wrap them with modulus bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "FieldElement",
    "FieldMatrix",
    "is_prime",
    "check_prime",
    "row_reduce",
    "solve",
    "nullspace",
    "mod_rref",
    "mod_rank",
    "mod_solve",
    "mod_nullspace",
    "row_space_basis",
    "row_span_contains",
]


def is_prime(n: int) -> bool:
    """Trial-division primality test; deterministic and fine at desk scale."""
    if n < 2:
        return False
    if n in (2, 3):
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(modulus: int) -> int:
    if not isinstance(modulus, (int, np.integer)) or not is_prime(int(modulus)):
        raise ValueError(f"modulus must be a prime integer, got {modulus!r}")
    return int(modulus)


@dataclass(frozen=True)
class FieldElement:
    """A value in Z_p that carries its modulus.

    Arithmetic between elements of different moduli is a hard error, never a
    coercion.  Plain Python ints are lifted into the element's own field.
    """

    value: int
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _lift(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"mixed moduli: {self.modulus} vs {other.modulus}")
            return other
        if isinstance(other, (int, np.integer)):
            return FieldElement(int(other), self.modulus)
        raise TypeError(f"cannot combine FieldElement with {type(other)!r}")

    def __add__(self, other):
        o = self._lift(other)
        return FieldElement(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return FieldElement(self.value - o.value, self.modulus)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return FieldElement(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FieldElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


class FieldMatrix:
    """Rectangular matrix over Z_p; entries stored reduced mod p, read-only."""

    def __init__(self, entries, modulus: int):
        self.modulus = check_prime(modulus)
        a = np.asarray(entries, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError(f"matrix entries must be 2-D, got shape {a.shape}")
        a = np.mod(a, self.modulus)
        a.setflags(write=False)
        self.entries = a

    @classmethod
    def identity(cls, n: int, modulus: int) -> "FieldMatrix":
        return cls(np.eye(n, dtype=np.int64), modulus)

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int) -> "FieldMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), modulus)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def element(self, i: int, j: int) -> FieldElement:
        return FieldElement(int(self.entries[i, j]), self.modulus)

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (self.modulus == other.modulus
                and self.entries.shape == other.entries.shape
                and np.array_equal(self.entries, other.entries))

    def __repr__(self):
        return f"FieldMatrix(mod {self.modulus})\n{self.entries}"


# ---------------------------------------------------------------------------
# Array-level workers.  Deterministic: pivots are the first nonzero entry in
# scan order, free variables are always set to zero.
# ---------------------------------------------------------------------------

def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {m.shape}")
    return m


def mod_rref(a, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row-echelon form mod p: returns (rref, rank, pivot columns)."""
    m = _as_matrix(a) % p
    m = m.copy()
    n_rows, n_cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, n_rows):
            if m[i, c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[[r, pivot_row]] = m[[pivot_row, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = m[r] * inv % p
        for i in range(n_rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, r, pivots


def mod_rank(a, p: int) -> int:
    return mod_rref(a, p)[1]


def mod_solve(a, b, p: int) -> np.ndarray | None:
    """One solution of a x = b mod p, or None if inconsistent.

    Free variables are set to zero, so the answer is canonical.
    """
    m = _as_matrix(a)
    rhs = np.asarray(b, dtype=np.int64) % p
    if rhs.ndim != 1 or rhs.shape[0] != m.shape[0]:
        raise ValueError(
            f"rhs length {rhs.shape} does not match {m.shape[0]} rows")
    aug = np.hstack([m % p, rhs.reshape(-1, 1)])
    red, _, pivots = mod_rref(aug, p)
    n_cols = m.shape[1]
    if n_cols in pivots:
        return None  # pivot in the augmented column: inconsistent
    x = np.zeros(n_cols, dtype=np.int64)
    for row, col in enumerate(pivots):
        x[col] = red[row, n_cols]
    return x


def mod_nullspace(a, p: int) -> list[np.ndarray]:
    """Basis of {x : a x = 0 mod p}; size is cols - rank."""
    m = _as_matrix(a)
    n_cols = m.shape[1]
    red, _, pivots = mod_rref(m, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v = np.zeros(n_cols, dtype=np.int64)
        v[free] = 1
        for row, col in enumerate(pivots):
            v[col] = (-red[row, free]) % p
        basis.append(v)
    return basis


def row_space_basis(a, p: int) -> np.ndarray:
    """Canonical (echelon) basis of the row space; shape (rank, cols)."""
    red, rank, _ = mod_rref(a, p)
    return red[:rank]


def row_span_contains(rows, v, p: int) -> bool:
    """True iff v lies in the row span of `rows` over Z_p."""
    base = _as_matrix(rows)
    vec = np.asarray(v, dtype=np.int64).reshape(1, -1)
    if base.shape[0] == 0:
        return bool(np.all(vec % p == 0))
    if vec.shape[1] != base.shape[1]:
        raise ValueError("vector length does not match row length")
    return mod_rank(base, p) == mod_rank(np.vstack([base, vec]), p)


# ---------------------------------------------------------------------------
# FieldMatrix wrappers matching the operation contracts.
# ---------------------------------------------------------------------------

def row_reduce(m: FieldMatrix) -> tuple[FieldMatrix, int, list[int]]:
    """Reduced row-echelon form of m; row space is preserved."""
    red, rank, pivots = mod_rref(m.entries, m.modulus)
    return FieldMatrix(red, m.modulus), rank, pivots


def solve(m: FieldMatrix, b) -> np.ndarray | None:
    """Solve m x = b; None when inconsistent, free variables zeroed."""
    return mod_solve(m.entries, b, m.modulus)


def nullspace(m: FieldMatrix) -> list[np.ndarray]:
    return mod_nullspace(m.entries, m.modulus)
