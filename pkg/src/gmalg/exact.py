"""Exact scalars and dense exact linear algebra over Q and F_p (p >= 5).

Scalars are plain python objects: ``fractions.Fraction`` over the rationals,
``int`` residues in [0, p) over a prime field.  Matrices and tensors are
numpy arrays (``object`` dtype holding Fractions, or ``int64`` mod p), so
all the structure-constant plumbing elsewhere can use plain numpy indexing
and tensordot.  There is no floating point anywhere in this module and no
epsilon anywhere in this package: every comparison is exact equality.

RREF is canonical (unique reduced row echelon form); ``solve`` returns the
canonical solution with every free variable set to zero, or None when the
system is inconsistent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import backend


class ExactError(ValueError):
    """Raised for malformed rings, scalars, or shape mismatches."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingDescriptor:
    """Which exact coefficient ring is in play: Q, or F_p with p an odd prime >= 5.

    p >= 5 keeps 2, 3 and 6 invertible (the decompositions divide by them) and
    keeps degree-3 coefficient extraction faithful (individual degrees stay
    below the characteristic).
    """

    kind: str  # "rational" | "prime_field"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise ExactError("rational ring takes no modulus")
        elif self.kind == "prime_field":
            if self.p is None or not _is_prime(self.p) or self.p < 5:
                raise ExactError(f"prime_field needs a prime p >= 5, got {self.p!r}")
            if self.p >= 1 << 20:
                raise ExactError("p too large for the int64 kernels")
        else:
            raise ExactError(f"unknown ring kind {self.kind!r}")

    # -- scalar helpers -------------------------------------------------

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime_field"

    @property
    def zero(self):
        return 0 if self.is_prime_field else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_prime_field else Fraction(1)

    def coerce(self, v):
        """Coerce ints / Fractions / 'a/b' strings into a canonical scalar."""
        if self.is_prime_field:
            if isinstance(v, str):
                v = int(v, 10)
            if isinstance(v, (int, np.integer)):
                return int(v) % self.p
            raise ExactError(f"cannot coerce {v!r} into F_{self.p}")
        if isinstance(v, Fraction):
            return v
        if isinstance(v, (int, np.integer)):
            return Fraction(int(v))
        if isinstance(v, str):
            return Fraction(v)
        raise ExactError(f"cannot coerce {v!r} into Q")

    def inv(self, v):
        v = self.coerce(v)
        if v == self.zero:
            raise ZeroDivisionError("inverting zero")
        if self.is_prime_field:
            return pow(v, self.p - 2, self.p)
        return Fraction(1) / v

    def neg(self, v):
        v = self.coerce(v)
        return (-v) % self.p if self.is_prime_field else -v

    @property
    def half(self):
        """1/2 — always defined (char is 0 or an odd prime)."""
        return self.inv(self.coerce(2))

    def scalar_to_json(self, v):
        v = self.coerce(v)
        return int(v) if self.is_prime_field else str(v)

    def scalar_from_json(self, v):
        return self.coerce(v)

    def random_scalar(self, stream):
        """Seeded draw: uniform residue over F_p, small integer over Q."""
        if self.is_prime_field:
            return stream.below(self.p)
        return Fraction(stream.below(7) - 3)

    def random_nonzero_scalar(self, stream):
        while True:
            v = self.random_scalar(stream)
            if v != self.zero:
                return v

    # -- array helpers --------------------------------------------------

    @property
    def dtype(self):
        return np.int64 if self.is_prime_field else object

    def zeros(self, shape) -> np.ndarray:
        if self.is_prime_field:
            return np.zeros(shape, dtype=np.int64)
        a = np.empty(shape, dtype=object)
        a[...] = Fraction(0)
        return a

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = self.one
        return a

    def array(self, nested) -> np.ndarray:
        """Build a canonical array from nested python data."""
        raw = np.array(nested, dtype=object)
        out = self.zeros(raw.shape)
        for idx in np.ndindex(raw.shape):
            out[idx] = self.coerce(raw[idx])
        return out

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        if self.is_prime_field:
            return np.asarray(arr, dtype=np.int64) % self.p
        return arr

    def tensordot(self, a: np.ndarray, b: np.ndarray, axes) -> np.ndarray:
        """Exact tensordot; guards empty contractions (numpy would emit float zeros)."""
        a = np.asarray(a)
        b = np.asarray(b)
        if a.size == 0 or b.size == 0:
            shape = np.tensordot(np.zeros(a.shape), np.zeros(b.shape), axes=axes).shape
            return self.zeros(shape)
        return self.normalize(np.tensordot(a, b, axes=axes))

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        a = self.normalize(a)
        b = self.normalize(b)
        return a.shape == b.shape and bool(np.all(a == b))

    def is_zero(self, arr: np.ndarray) -> bool:
        return bool(np.all(self.normalize(arr) == self.zero))


RATIONAL = RingDescriptor("rational")


def prime_field(p: int) -> RingDescriptor:
    return RingDescriptor("prime_field", p)


def ring_to_json(ring: RingDescriptor) -> dict:
    if ring.is_prime_field:
        return {"kind": "prime_field", "p": ring.p}
    return {"kind": "rational"}


def ring_from_json(d: dict) -> RingDescriptor:
    if not isinstance(d, dict) or "kind" not in d:
        raise ExactError(f"bad ring descriptor {d!r}")
    if d["kind"] == "rational":
        return RATIONAL
    if d["kind"] == "prime_field":
        return prime_field(int(d.get("p", 0)))
    raise ExactError(f"unknown ring kind {d['kind']!r}")


# ---------------------------------------------------------------------------
# dense exact elimination
# ---------------------------------------------------------------------------


def _rref_object(a: np.ndarray):
    """Gauss-Jordan over Q (object/Fraction arrays); mirrors the mod-p kernel."""
    a = a.copy()
    rows, cols = a.shape
    pivcols = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * (Fraction(1) / a[r, c])
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivcols.append(c)
        r += 1
    return a, np.array(pivcols, dtype=np.int64), r


def rref_array(ring: RingDescriptor, mat: np.ndarray):
    """Reduced row echelon form: (rref, pivot column tuple, rank)."""
    mat = ring.normalize(mat)
    if mat.ndim != 2:
        raise ExactError("rref expects a 2-D matrix")
    if mat.size == 0:
        return mat.copy(), (), 0
    if ring.is_prime_field:
        red, piv, rank = backend.rref_mod_p(mat, ring.p)
    else:
        red, piv, rank = _rref_object(mat)
    return red, tuple(int(c) for c in piv), rank


def rank_array(ring: RingDescriptor, mat: np.ndarray) -> int:
    return rref_array(ring, mat)[2]


def nullspace_array(ring: RingDescriptor, mat: np.ndarray) -> np.ndarray:
    """Canonical nullspace basis, one vector per row (free columns ascending)."""
    mat = ring.normalize(mat)
    rows, cols = mat.shape
    red, piv, rank = rref_array(ring, mat)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = ring.zeros((len(free), cols))
    for bi, fc in enumerate(free):
        basis[bi, fc] = ring.one
        for ri, pc in enumerate(piv):
            basis[bi, pc] = ring.neg(red[ri, fc]) if ring.is_prime_field else -red[ri, fc]
    return ring.normalize(basis)


def solve_array(ring: RingDescriptor, mat: np.ndarray, rhs: np.ndarray):
    """Canonical solution of mat @ x = rhs (free variables zeroed), or None."""
    mat = ring.normalize(mat)
    rhs = ring.normalize(np.asarray(rhs))
    if rhs.ndim != 1 or rhs.shape[0] != mat.shape[0]:
        raise ExactError("rhs shape mismatch")
    rows, cols = mat.shape
    aug = ring.zeros((rows, cols + 1))
    aug[:, :cols] = mat
    aug[:, cols] = rhs
    red, piv, rank = rref_array(ring, aug)
    if any(c == cols for c in piv):
        return None
    x = ring.zeros(cols)
    for ri, pc in enumerate(piv):
        x[pc] = red[ri, cols]
    return x


def inverse_array(ring: RingDescriptor, mat: np.ndarray):
    """Exact inverse, or None when the matrix is singular."""
    mat = ring.normalize(mat)
    n, m = mat.shape
    if n != m:
        raise ExactError("inverse expects a square matrix")
    aug = ring.zeros((n, 2 * n))
    aug[:, :n] = mat
    aug[:, n:] = ring.eye(n)
    red, piv, rank = rref_array(ring, aug)
    if rank < n or any(c >= n for c in piv[:n]) or len(piv) < n:
        return None
    return red[:, n:].copy()


def row_span_coords(ring: RingDescriptor, basis_rows: np.ndarray, v: np.ndarray):
    """Coordinates of v in a *canonical RREF* row basis, or None if outside.

    For an RREF basis the coordinate vector is just v sampled at the pivot
    columns; membership is then verified by exact reconstruction.
    """
    basis_rows = ring.normalize(basis_rows)
    v = ring.normalize(np.asarray(v))
    if basis_rows.shape[0] == 0:
        return None if not ring.is_zero(v) else ring.zeros(0)
    pivots = []
    for row in basis_rows:
        nz = [j for j in range(len(row)) if row[j] != ring.zero]
        if not nz:
            raise ExactError("zero row in supposed basis")
        pivots.append(nz[0])
    coords = ring.zeros(basis_rows.shape[0])
    for i, pc in enumerate(pivots):
        coords[i] = v[pc]
    recon = ring.tensordot(coords, basis_rows, axes=([0], [0]))
    if not ring.equal(recon, v):
        return None
    return coords


def row_space_equal(ring: RingDescriptor, rows_a: np.ndarray, rows_b: np.ndarray) -> bool:
    """Do two row collections span the same subspace?  (unique RREF compare)"""
    ra = rref_array(ring, rows_a) if rows_a.size else (rows_a, (), 0)
    rb = rref_array(ring, rows_b) if rows_b.size else (rows_b, (), 0)
    if ra[2] != rb[2]:
        return False
    return bool(np.all(ra[0][: ra[2]] == rb[0][: rb[2]]))


def row_space_contains(ring: RingDescriptor, span_rows: np.ndarray, cand_rows: np.ndarray) -> bool:
    """Is every candidate row inside the row span?  rank test, exact."""
    if cand_rows.size == 0:
        return True
    if span_rows.size == 0:
        return ring.is_zero(cand_rows)
    stacked = np.concatenate([span_rows, cand_rows], axis=0)
    return rank_array(ring, span_rows) == rank_array(ring, stacked)


# ---------------------------------------------------------------------------
# ExactMatrix: thin wrapper used at API/file boundaries
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """A ring-tagged dense matrix with exact elimination methods."""

    ring: RingDescriptor
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", self.ring.normalize(self.data))
        if self.data.ndim != 2:
            raise ExactError("ExactMatrix is 2-D")

    @classmethod
    def from_rows(cls, ring: RingDescriptor, rows) -> "ExactMatrix":
        return cls(ring, ring.array(rows))

    @property
    def shape(self):
        return self.data.shape

    def rref(self):
        red, piv, rank = rref_array(self.ring, self.data)
        return ExactMatrix(self.ring, red), piv, rank

    def rank(self) -> int:
        return rank_array(self.ring, self.data)

    def nullspace(self) -> "ExactMatrix":
        return ExactMatrix(self.ring, nullspace_array(self.ring, self.data))

    def solve(self, rhs):
        return solve_array(self.ring, self.data, rhs)

    def inverse(self):
        inv = inverse_array(self.ring, self.data)
        return None if inv is None else ExactMatrix(self.ring, inv)

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.ring == other.ring
            and self.ring.equal(self.data, other.data)
        )
