"""Linear and bilinear map carriers plus the commuting / centralizing predicates.

Every predicate that can fail returns a verified witness: the offending input
is re-evaluated directly through the product tensor, never inferred from the
coefficient system alone.  Witness search is deterministic — basis sums first,
then a small scalar grid (three values per slot bound the degree, so the grid
is exhaustive for these polynomial degrees), so a failing predicate always
produces the same witness for the same input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import ExactError, RingDescriptor, nullspace_array, rank_array


class MapError(ExactError):
    pass


@dataclass(eq=False)
class LinearMapRep:
    """A linear map as a (dim_out, dim_in) matrix acting on coordinate columns."""

    ring: RingDescriptor
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = self.ring.normalize(np.asarray(self.matrix))
        if self.matrix.ndim != 2:
            raise MapError("linear map wants a 2-D matrix")

    @property
    def dim_in(self) -> int:
        return self.matrix.shape[1]

    @property
    def dim_out(self) -> int:
        return self.matrix.shape[0]

    def apply(self, x):
        return self.ring.tensordot(self.matrix, np.asarray(x), axes=([1], [0]))

    def compose(self, other: "LinearMapRep") -> "LinearMapRep":
        if self.dim_in != other.dim_out:
            raise MapError("composition shape mismatch")
        return LinearMapRep(
            self.ring, self.ring.tensordot(self.matrix, other.matrix, axes=([1], [0]))
        )

    def __add__(self, other):
        return LinearMapRep(self.ring, self.ring.normalize(self.matrix + other.matrix))

    def __sub__(self, other):
        return LinearMapRep(self.ring, self.ring.normalize(self.matrix - other.matrix))

    def scale(self, c) -> "LinearMapRep":
        c = self.ring.coerce(c)
        return LinearMapRep(self.ring, self.ring.normalize(self.matrix * c))

    def equal(self, other) -> bool:
        return self.matrix.shape == other.matrix.shape and self.ring.equal(
            self.matrix, other.matrix
        )

    def is_injective(self) -> bool:
        return rank_array(self.ring, self.matrix) == self.dim_in

    def is_surjective(self) -> bool:
        return rank_array(self.ring, self.matrix) == self.dim_out

    @classmethod
    def identity(cls, ring, dim):
        return cls(ring, ring.eye(dim))

    @classmethod
    def zero(cls, ring, dim_out, dim_in):
        return cls(ring, ring.zeros((dim_out, dim_in)))


@dataclass(eq=False)
class BilinearMapRep:
    """A bilinear map as a (dim_in1, dim_in2, dim_out) coefficient tensor."""

    ring: RingDescriptor
    tensor: np.ndarray

    def __post_init__(self):
        self.tensor = self.ring.normalize(np.asarray(self.tensor))
        if self.tensor.ndim != 3:
            raise MapError("bilinear map wants a 3-D tensor")

    @property
    def shape(self):
        return self.tensor.shape

    def apply(self, x, y):
        t = self.ring.tensordot(np.asarray(x), self.tensor, axes=([0], [0]))
        return self.ring.tensordot(np.asarray(y), t, axes=([0], [0]))

    def trace_eval(self, x):
        """The associated quadratic (trace) map x -> B(x, x)."""
        return self.apply(x, x)

    def symmetrize(self) -> "BilinearMapRep":
        sym = self.ring.normalize(
            (self.tensor + np.transpose(self.tensor, (1, 0, 2))) * self.ring.half
        )
        return BilinearMapRep(self.ring, sym)

    def equal(self, other) -> bool:
        return self.tensor.shape == other.tensor.shape and self.ring.equal(
            self.tensor, other.tensor
        )

    def __add__(self, other):
        return BilinearMapRep(self.ring, self.ring.normalize(self.tensor + other.tensor))

    def __sub__(self, other):
        return BilinearMapRep(self.ring, self.ring.normalize(self.tensor - other.tensor))

    @classmethod
    def zero(cls, ring, d1, d2, dout):
        return cls(ring, ring.zeros((d1, d2, dout)))


def _grid_values(ring):
    # four points per slot: the defect polynomials have per-variable degree
    # at most three, so a nonzero restriction stays nonzero somewhere here
    # (all four values are distinct and nonzero in every supported ring)
    return [ring.coerce(1), ring.coerce(2), ring.coerce(3), ring.coerce(4)]


def _arrangements3(a, b, c):
    return sorted(set(
        ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a))
    ))


# ---------------------------------------------------------------------------
# linear predicates
# ---------------------------------------------------------------------------


def _linear_defect_coefficients(carrier, F: LinearMapRep):
    """Quadratic coefficients of x -> [F(x), x] over pairs i <= j."""
    ring, d = carrier.ring, carrier.dim
    out = {}
    img = [F.apply(carrier.basis_vector(i)) for i in range(d)]
    for i in range(d):
        for j in range(i, d):
            if i == j:
                c = carrier.commutator(img[i], carrier.basis_vector(i))
            else:
                c = ring.normalize(
                    carrier.commutator(img[i], carrier.basis_vector(j))
                    + carrier.commutator(img[j], carrier.basis_vector(i))
                )
            out[(i, j)] = c
    return out


def _linear_witness(carrier, F, bad_pair, offending):
    """Deterministic witness x with [F(x), x] violating `offending`."""
    ring = carrier.ring
    i, j = bad_pair

    def defect(x):
        return carrier.commutator(F.apply(x), x)

    if i == j:
        x = carrier.basis_vector(i)
        if offending(defect(x)):
            return x
    for t in _grid_values(ring):
        for u in _grid_values(ring):
            x = ring.normalize(
                carrier.basis_vector(i) * t + carrier.basis_vector(j) * u
            )
            if offending(defect(x)):
                return x
    raise MapError("nonzero defect coefficient but witness grid found nothing")


def is_commuting_linear(carrier, F: LinearMapRep):
    """Does [F(x), x] = 0 hold identically?  (ok, witness)."""
    ring = carrier.ring
    coeffs = _linear_defect_coefficients(carrier, F)
    for pair, c in coeffs.items():
        if not ring.is_zero(c):
            w = _linear_witness(carrier, F, pair, lambda v: not ring.is_zero(v))
            return False, w
    return True, None


def is_centralizing_linear(gma, F: LinearMapRep):
    """Does [F(x), x] land in Z(G) for every x?  (ok, witness)."""
    ring = gma.ring
    C = gma.center
    coeffs = _linear_defect_coefficients(gma, F)
    for pair, c in coeffs.items():
        if not ring.is_zero(C.quotient(c)):
            w = _linear_witness(
                gma, F, pair, lambda v: not ring.is_zero(C.quotient(v))
            )
            return False, w
    return True, None


# ---------------------------------------------------------------------------
# trace (quadratic) predicates
# ---------------------------------------------------------------------------


def cubic_trace_coefficients(carrier, bil: BilinearMapRep):
    """Coefficients of x -> [B(x, x), x] on monomials x_a x_b x_c (a<=b<=c)."""
    ring, d = carrier.ring, carrier.dim
    B = bil.tensor
    out = {}
    for a in range(d):
        for b in range(a, d):
            for c in range(b, d):
                acc = ring.zeros(d)
                for (u, v, w) in _arrangements3(a, b, c):
                    acc = acc + carrier.commutator(B[u, v], carrier.basis_vector(w))
                out[(a, b, c)] = ring.normalize(acc)
    return out


def _trace_witness(carrier, bil, bad_triple, offending):
    ring = carrier.ring
    a, b, c = bad_triple

    def defect(x):
        return carrier.commutator(bil.apply(x, x), x)

    x = ring.normalize(
        carrier.basis_vector(a) + carrier.basis_vector(b) + carrier.basis_vector(c)
    )
    if offending(defect(x)):
        return x
    for t in _grid_values(ring):
        for u in _grid_values(ring):
            for v in _grid_values(ring):
                x = ring.normalize(
                    carrier.basis_vector(a) * t
                    + carrier.basis_vector(b) * u
                    + carrier.basis_vector(c) * v
                )
                if offending(defect(x)):
                    return x
    raise MapError("nonzero cubic coefficient but witness grid found nothing")


def is_commuting_trace(carrier, bil: BilinearMapRep):
    ring = carrier.ring
    for triple, coef in cubic_trace_coefficients(carrier, bil).items():
        if not ring.is_zero(coef):
            w = _trace_witness(carrier, bil, triple, lambda v: not ring.is_zero(v))
            return False, w
    return True, None


def is_centralizing_trace(gma, bil: BilinearMapRep):
    ring = gma.ring
    C = gma.center
    for triple, coef in cubic_trace_coefficients(gma, bil).items():
        if not ring.is_zero(C.quotient(coef)):
            w = _trace_witness(
                gma, bil, triple, lambda v: not ring.is_zero(C.quotient(v))
            )
            return False, w
    return True, None


# ---------------------------------------------------------------------------
# homomorphism-flavoured predicates
# ---------------------------------------------------------------------------


def is_jordan_hom(src, dst, F: LinearMapRep):
    """F(x*y + y*x) = F(x)F(y) + F(y)F(x) on all basis pairs.  (ok, witness)."""
    ring = dst.ring
    img = [F.apply(src.basis_vector(i)) for i in range(src.dim)]
    for i in range(src.dim):
        for j in range(i, src.dim):
            lhs = F.apply(src.jordan(src.basis_vector(i), src.basis_vector(j)))
            rhs = dst.jordan(img[i], img[j])
            if not ring.equal(lhs, rhs):
                return False, (src.basis_vector(i), src.basis_vector(j))
    return True, None


def is_lie_triple_hom(src, dst, F: LinearMapRep):
    """F([[x, y], z]) = [[F(x), F(y)], F(z)] on all basis triples.  (ok, witness)."""
    ring = dst.ring
    img = [F.apply(src.basis_vector(i)) for i in range(src.dim)]
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            inner = src.commutator(src.basis_vector(i), src.basis_vector(j))
            inner_img = dst.commutator(img[i], img[j])
            for k in range(src.dim):
                lhs = F.apply(src.commutator(inner, src.basis_vector(k)))
                rhs = dst.commutator(inner_img, img[k])
                if not ring.equal(lhs, rhs):
                    return False, (
                        src.basis_vector(i),
                        src.basis_vector(j),
                        src.basis_vector(k),
                    )
    return True, None


def vanishes_on_second_commutators(src, F: LinearMapRep):
    """F([[x, y], z]) = 0 on all basis triples.  (ok, witness)."""
    ring = F.ring
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            inner = src.commutator(src.basis_vector(i), src.basis_vector(j))
            for k in range(src.dim):
                val = F.apply(src.commutator(inner, src.basis_vector(k)))
                if not ring.is_zero(val):
                    return False, (
                        src.basis_vector(i),
                        src.basis_vector(j),
                        src.basis_vector(k),
                    )
    return True, None


# ---------------------------------------------------------------------------
# the space of all symmetric bilinear maps with commuting / centralizing trace
# ---------------------------------------------------------------------------


def pair_index_order(d: int):
    return [(i, j) for i in range(d) for j in range(i, d)]


@dataclass
class TraceSpaceResult:
    mode: str
    n_rows: int  # constraint rows  (triples x target dim)
    n_cols: int  # unknowns         (pairs x algebra dim)
    basis: list  # BilinearMapRep, symmetric
    raw_rows: np.ndarray  # canonical nullspace rows, pair-coefficient layout

    @property
    def dim(self) -> int:
        return len(self.basis)


def trace_space(gma, mode: str = "centralizing", max_dim: int = 12) -> TraceSpaceResult:
    """All symmetric bilinear B: G x G -> G whose trace x -> B(x, x) has
    [B(x,x), x] central ("centralizing") or zero ("commuting").

    Unknowns are the pair coefficients v_ij = coefficient of x_i x_j (i <= j)
    as vectors in G; the recovered symmetric tensor halves the off-diagonal.
    Exhaustive-solve scale, so guarded to prime fields and dim <= max_dim.
    """
    ring, d = gma.ring, gma.dim
    if mode not in ("centralizing", "commuting"):
        raise MapError(f"unknown mode {mode!r}")
    if not ring.is_prime_field:
        raise MapError("trace_space enumeration is supported over prime fields only")
    if d > max_dim:
        raise MapError(f"dim {d} exceeds the trace_space guard {max_dim}")

    Bk = ring.normalize(gma.mul - np.transpose(gma.mul, (1, 0, 2)))  # [t, k, r]
    if mode == "centralizing":
        Q = gma.center.to_coords[gma.center.zdim :]
        target = ring.tensordot(Bk, Q, axes=([2], [1]))  # [t, k, q]
    else:
        target = Bk
    tdim = target.shape[2]

    pairs = pair_index_order(d)
    pair_pos = {pq: n for n, pq in enumerate(pairs)}
    triples = [(a, b, c) for a in range(d) for b in range(a, d) for c in range(b, d)]
    K = ring.zeros((len(triples) * tdim, len(pairs) * d))
    for row, (a, b, c) in enumerate(triples):
        base = row * tdim
        # realizations (i <= j | k) of the monomial x_a x_b x_c
        if a < b < c:
            reals = [((a, b), c), ((a, c), b), ((b, c), a)]
        elif a == b < c:
            reals = [((a, a), c), ((a, c), a)]
        elif a < b == c:
            reals = [((a, b), b), ((b, b), a)]
        else:
            reals = [((a, a), a)]
        for (pq, k) in reals:
            col = pair_pos[pq] * d
            K[base : base + tdim, col : col + d] += target[:, k, :].T
    K = ring.normalize(K)
    rows = nullspace_array(ring, K)

    basis = []
    for w in rows:
        S = ring.zeros((d, d, d))
        for n, (i, j) in enumerate(pairs):
            v = w[n * d : (n + 1) * d]
            if i == j:
                S[i, i] = v
            else:
                S[i, j] = v * ring.half
                S[j, i] = S[i, j]
        basis.append(BilinearMapRep(ring, ring.normalize(S)))
    return TraceSpaceResult(mode, K.shape[0], K.shape[1], basis, rows)
