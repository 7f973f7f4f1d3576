"""Algebras, bimodules, Morita contexts, and assembled generalized matrix algebras.

Everything is finite dimensional with explicit structure-constant tensors:

* an algebra is ``mul[i, j, r]`` with ``e_i e_j = sum_r mul[i,j,r] e_r``;
* a bimodule carries ``left[a, m, r]`` (algebra element acting from the left)
  and ``right[m, b, r]``;
* a Morita context is two algebras, two bimodules and the two pairings
  ``pairing_MN[m, n, r]`` (valued in A) and ``pairing_NM[n, m, r]`` (valued in B).

``assemble_gma`` glues the four blocks into one algebra on the coordinate
order (A-block, M-block, N-block, B-block) with the 2x2 block-matrix product,
verifying associativity and unit laws on all basis triples at build time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import (
    ExactError,
    RingDescriptor,
    inverse_array,
    row_span_coords,
    rref_array,
    solve_array,
)


class AxiomError(ValueError):
    """A structural axiom failed; carries the failing identity and indices."""

    def __init__(self, identity: str, indices=None, detail: str = ""):
        self.identity = identity
        self.indices = indices
        msg = f"axiom failed: {identity}"
        if indices is not None:
            msg += f" at indices {tuple(int(i) for i in indices)}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


# ---------------------------------------------------------------------------
# multiplication helpers shared by algebras and assembled GMAs
# ---------------------------------------------------------------------------


class _MulCarrier:
    """Mixin for anything with .ring, .dim, .mul, .unit."""

    def _check_vec(self, x):
        x = np.asarray(x)
        if x.shape != (self.dim,):
            raise ExactError(
                f"element has {x.shape} coordinates, algebra dimension is {self.dim}"
            )
        return self.ring.normalize(x)

    def multiply(self, x, y):
        x = self._check_vec(x)
        y = self._check_vec(y)
        xy = self.ring.tensordot(x, self.mul, axes=([0], [0]))  # (j, r)
        return self.ring.tensordot(y, xy, axes=([0], [0]))

    def square(self, x):
        return self.multiply(x, x)

    def commutator(self, x, y):
        return self.ring.normalize(self.multiply(x, y) - self.multiply(y, x))

    def jordan(self, x, y):
        """x o y = xy + yx (no 1/2; characteristic-free convention)."""
        return self.ring.normalize(self.multiply(x, y) + self.multiply(y, x))

    def second_commutator(self, x, y, z):
        return self.commutator(self.commutator(x, y), z)

    def left_mult_matrix(self, x):
        """Matrix L with L @ y = x*y."""
        x = self._check_vec(x)
        return self.ring.tensordot(x, self.mul, axes=([0], [0])).T.copy()

    def right_mult_matrix(self, x):
        """Matrix R with R @ y = y*x."""
        x = self._check_vec(x)
        return self.ring.tensordot(x, self.mul, axes=([0], [1])).T.copy()

    def element_inverse(self, x):
        """Two-sided inverse of x, or None (finite-dim unital algebra)."""
        sol = solve_array(self.ring, self.left_mult_matrix(x), self.unit)
        if sol is None:
            return None
        if not self.ring.equal(self.multiply(sol, x), self.unit):
            return None
        return sol

    def _assoc_witness(self):
        ring = self.ring
        lhs = ring.tensordot(self.mul, self.mul, axes=([2], [0]))  # (i,j,k,r)
        rhs = ring.tensordot(self.mul, self.mul, axes=([2], [1]))  # (j,k,i,r)
        rhs = ring.normalize(np.transpose(rhs, (2, 0, 1, 3)))
        bad = np.argwhere(ring.normalize(lhs - rhs) != ring.zero)
        return None if bad.size == 0 else tuple(int(v) for v in bad[0][:3])

    def _unit_witness(self):
        ring = self.ring
        eye = ring.eye(self.dim)
        left = ring.tensordot(self.unit, self.mul, axes=([0], [0]))  # (j, r): 1*e_j
        if not ring.equal(left, eye):
            return "left-unit"
        right = ring.tensordot(self.unit, self.mul, axes=([0], [1]))  # (i, r): e_i*1
        if not ring.equal(right, eye):
            return "right-unit"
        return None


@dataclass(eq=False)
class AlgebraSpec(_MulCarrier):
    """A finite-dimensional unital associative algebra given by structure constants."""

    ring: RingDescriptor
    dim: int
    mul: np.ndarray  # (dim, dim, dim)
    unit: np.ndarray  # (dim,)
    labels: tuple | None = None

    def __post_init__(self):
        self.mul = _freeze(self.ring.normalize(np.asarray(self.mul)))
        self.unit = _freeze(self.ring.normalize(np.asarray(self.unit)))
        if self.mul.shape != (self.dim, self.dim, self.dim):
            raise ExactError("mul tensor shape mismatch")
        if self.unit.shape != (self.dim,):
            raise ExactError("unit shape mismatch")
        if self.labels is not None:
            self.labels = tuple(self.labels)

    def validate(self):
        if self.dim == 0:
            raise AxiomError("algebra.nonzero-dim")
        w = self._assoc_witness()
        if w is not None:
            raise AxiomError("algebra.associativity", w)
        u = self._unit_witness()
        if u is not None:
            raise AxiomError(f"algebra.{u}")

    def basis_vector(self, i: int):
        v = self.ring.zeros(self.dim)
        v[i] = self.ring.one
        return v


@dataclass(eq=False)
class BimoduleSpec:
    """Left action of one algebra, right action of another, on one space."""

    ring: RingDescriptor
    dim: int
    left: np.ndarray  # (dim_left_algebra, dim, dim)
    right: np.ndarray  # (dim, dim_right_algebra, dim)

    def __post_init__(self):
        self.left = _freeze(self.ring.normalize(np.asarray(self.left)))
        self.right = _freeze(self.ring.normalize(np.asarray(self.right)))
        if self.left.ndim != 3 or self.left.shape[1:] != (self.dim, self.dim):
            raise ExactError("left action shape mismatch")
        if self.right.ndim != 3 or self.right.shape[::2] != (self.dim, self.dim):
            raise ExactError("right action shape mismatch")

    def act_left(self, a, m):
        am = self.ring.tensordot(a, self.left, axes=([0], [0]))  # (m, r)
        return self.ring.tensordot(m, am, axes=([0], [0]))

    def act_right(self, m, b):
        mb = self.ring.tensordot(m, self.right, axes=([0], [0]))  # (b, r)
        return self.ring.tensordot(b, mb, axes=([0], [0]))


@dataclass(eq=False)
class MoritaContext:
    """(A, B, M, N, pairing M(x)N -> A, pairing N(x)M -> B)."""

    A: AlgebraSpec
    B: AlgebraSpec
    M: BimoduleSpec  # A acts left, B acts right
    N: BimoduleSpec  # B acts left, A acts right
    pairing_MN: np.ndarray  # (dim M, dim N, dim A)
    pairing_NM: np.ndarray  # (dim N, dim M, dim B)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        ring = self.ring
        self.pairing_MN = _freeze(ring.normalize(np.asarray(self.pairing_MN)))
        self.pairing_NM = _freeze(ring.normalize(np.asarray(self.pairing_NM)))
        if self.pairing_MN.shape != (self.M.dim, self.N.dim, self.A.dim):
            raise ExactError("pairing_MN shape mismatch")
        if self.pairing_NM.shape != (self.N.dim, self.M.dim, self.B.dim):
            raise ExactError("pairing_NM shape mismatch")

    @property
    def ring(self) -> RingDescriptor:
        return self.A.ring

    def pair_mn(self, m, n):
        t = self.ring.tensordot(m, self.pairing_MN, axes=([0], [0]))
        return self.ring.tensordot(n, t, axes=([0], [0]))

    def pair_nm(self, n, m):
        t = self.ring.tensordot(n, self.pairing_NM, axes=([0], [0]))
        return self.ring.tensordot(m, t, axes=([0], [0]))


@dataclass
class MoritaReport:
    ok: bool
    failure: str | None = None
    indices: tuple | None = None

    def __str__(self):
        if self.ok:
            return "morita axioms: pass"
        where = "" if self.indices is None else f" at indices {self.indices}"
        return f"morita axioms: FAIL [{self.failure}]{where}"


def _first_mismatch(ring, lhs, rhs):
    diff = ring.normalize(lhs - rhs)
    bad = np.argwhere(diff != ring.zero)
    if bad.size == 0:
        return None
    return tuple(int(v) for v in bad[0])


def check_morita_axioms(ctx: MoritaContext) -> MoritaReport:
    """Verify every bimodule / pairing / associativity-diagram identity on basis tuples.

    Returns a report carrying the first violated identity (by name) and the
    basis indices witnessing it.
    """
    ring = ctx.ring
    A, B, M, N = ctx.A, ctx.B, ctx.M, ctx.N
    if M.dim == 0 and N.dim == 0:
        return MoritaReport(False, "context.degenerate-both-modules-zero")
    td = ring.tensordot

    checks = []

    def add(name, lhs, rhs):
        checks.append((name, lhs, rhs))

    for alg, tag in ((A, "A"), (B, "B")):
        lhs = td(alg.mul, alg.mul, axes=([2], [0]))
        rhs = np.transpose(td(alg.mul, alg.mul, axes=([2], [1])), (2, 0, 1, 3))
        add(f"{tag}.associativity", lhs, ring.normalize(rhs))
        add(f"{tag}.left-unit", td(alg.unit, alg.mul, axes=([0], [0])), ring.eye(alg.dim))
        add(f"{tag}.right-unit", td(alg.unit, alg.mul, axes=([0], [1])), ring.eye(alg.dim))

    def module_checks(mod: BimoduleSpec, left_alg: AlgebraSpec, right_alg: AlgebraSpec, tag: str):
        if mod.dim == 0:
            return
        # (aa')m = a(a'm):  [a, a', m, r]
        lhs = td(left_alg.mul, mod.left, axes=([2], [0]))
        rhs = np.transpose(td(mod.left, mod.left, axes=([2], [1])), (2, 0, 1, 3))
        add(f"{tag}.left-associative", lhs, ring.normalize(rhs))
        # 1m = m
        add(f"{tag}.left-unit", td(left_alg.unit, mod.left, axes=([0], [0])), ring.eye(mod.dim))
        # m(bb') = (mb)b':  [m, b, b', r]
        lhs = np.transpose(td(right_alg.mul, mod.right, axes=([2], [1])), (2, 0, 1, 3))
        rhs = td(mod.right, mod.right, axes=([2], [0]))
        add(f"{tag}.right-associative", ring.normalize(lhs), rhs)
        # m1 = m
        add(f"{tag}.right-unit", td(right_alg.unit, mod.right, axes=([0], [1])), ring.eye(mod.dim))
        # (am)b = a(mb):  [a, m, b, r]
        lhs = td(mod.left, mod.right, axes=([2], [0]))
        rhs = np.transpose(td(mod.right, mod.left, axes=([2], [1])), (2, 0, 1, 3))
        add(f"{tag}.actions-commute", lhs, ring.normalize(rhs))

    module_checks(M, A, B, "M")
    module_checks(N, B, A, "N")

    if M.dim and N.dim:
        # pairing_MN is an (A, A)-bimodule map, B-balanced
        # (am, n) = a(m, n):  [a, m, n, r]
        lhs = td(M.left, ctx.pairing_MN, axes=([2], [0]))
        rhs = np.transpose(td(ctx.pairing_MN, A.mul, axes=([2], [1])), (2, 0, 1, 3))
        add("pairing_MN.left-A-linear", lhs, ring.normalize(rhs))
        # (m, na) = (m, n)a:  [m, n, a, r]
        lhs = np.transpose(td(N.right, ctx.pairing_MN, axes=([2], [1])), (2, 0, 1, 3))
        rhs = td(ctx.pairing_MN, A.mul, axes=([2], [0]))
        add("pairing_MN.right-A-linear", ring.normalize(lhs), rhs)
        # (mb, n) = (m, bn):  [m, b, n, r]
        lhs = td(M.right, ctx.pairing_MN, axes=([2], [0]))
        rhs = np.transpose(td(N.left, ctx.pairing_MN, axes=([2], [1])), (2, 0, 1, 3))
        add("pairing_MN.B-balanced", ring.normalize(lhs), ring.normalize(rhs))
        # pairing_NM is a (B, B)-bimodule map, A-balanced
        lhs = td(N.left, ctx.pairing_NM, axes=([2], [0]))
        rhs = np.transpose(td(ctx.pairing_NM, B.mul, axes=([2], [1])), (2, 0, 1, 3))
        add("pairing_NM.left-B-linear", lhs, ring.normalize(rhs))
        lhs = np.transpose(td(M.right, ctx.pairing_NM, axes=([2], [1])), (2, 0, 1, 3))
        rhs = td(ctx.pairing_NM, B.mul, axes=([2], [0]))
        add("pairing_NM.right-B-linear", ring.normalize(lhs), rhs)
        lhs = td(N.right, ctx.pairing_NM, axes=([2], [0]))
        rhs = np.transpose(td(M.left, ctx.pairing_NM, axes=([2], [1])), (2, 0, 1, 3))
        add("pairing_NM.A-balanced", lhs, ring.normalize(rhs))
        # associativity diagrams: (m,n)m' = m(n,m')  and  (n,m)n' = n(m,n')
        lhs = td(ctx.pairing_MN, M.left, axes=([2], [0]))  # [m, n, m', r]
        rhs = np.transpose(td(ctx.pairing_NM, M.right, axes=([2], [1])), (2, 0, 1, 3))
        add("diagram.MN-M", lhs, ring.normalize(rhs))
        lhs = td(ctx.pairing_NM, N.left, axes=([2], [0]))  # [n, m, n', r]
        rhs = np.transpose(td(ctx.pairing_MN, N.right, axes=([2], [1])), (2, 0, 1, 3))
        add("diagram.NM-N", lhs, ring.normalize(rhs))

    for name, lhs, rhs in checks:
        w = _first_mismatch(ring, lhs, rhs)
        if w is not None:
            return MoritaReport(False, name, w)
    return MoritaReport(True)


# ---------------------------------------------------------------------------
# the assembled generalized matrix algebra
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class GMA(_MulCarrier):
    """The block algebra [[A, M], [N, B]] on coordinates (A | M | N | B)."""

    ctx: MoritaContext
    ring: RingDescriptor
    dim: int
    mul: np.ndarray
    unit: np.ndarray
    offsets: tuple  # (start_A, start_M, start_N, start_B)
    labels: tuple | None = None

    def __post_init__(self):
        self.mul = _freeze(self.ring.normalize(np.asarray(self.mul)))
        self.unit = _freeze(self.ring.normalize(np.asarray(self.unit)))

    # block slicing --------------------------------------------------------

    @property
    def dims(self):
        c = self.ctx
        return (c.A.dim, c.M.dim, c.N.dim, c.B.dim)

    def block_slice(self, which: int) -> slice:
        """0=A, 1=M, 2=N, 3=B."""
        start = self.offsets[which]
        end = self.offsets[which + 1] if which < 3 else self.dim
        return slice(start, end)

    def blocks(self, x):
        x = self._check_vec(x)
        return tuple(x[self.block_slice(i)].copy() for i in range(4))

    def embed(self, which: int, v):
        v = np.asarray(v)
        out = self.ring.zeros(self.dim)
        sl = self.block_slice(which)
        if v.shape != (sl.stop - sl.start,):
            raise ExactError("block coordinate length mismatch")
        out[sl] = self.ring.normalize(v)
        return out

    def embed_diag(self, a, b):
        return self.ring.normalize(self.embed(0, a) + self.embed(3, b))

    def basis_vector(self, i: int):
        v = self.ring.zeros(self.dim)
        v[i] = self.ring.one
        return v

    @property
    def center(self):
        """CenterData for this GMA (computed once, cached)."""
        cached = getattr(self, "_center_cache", None)
        if cached is None:
            from .center import compute_center_gma

            cached = compute_center_gma(self)
            self._center_cache = cached
        return cached


def assemble_gma(ctx: MoritaContext, check: bool = True) -> GMA:
    """Glue a Morita context into its generalized matrix algebra.

    Rejects contexts failing the axiom battery (witness attached); always
    re-verifies associativity and the unit laws of the assembled product.
    """
    if check:
        rep = check_morita_axioms(ctx)
        if not rep.ok:
            raise AxiomError(rep.failure, rep.indices)
    ring = ctx.ring
    dA, dM, dN, dB = ctx.A.dim, ctx.M.dim, ctx.N.dim, ctx.B.dim
    d = dA + dM + dN + dB
    oA, oM, oN, oB = 0, dA, dA + dM, dA + dM + dN
    mul = ring.zeros((d, d, d))

    def put(tensor, rows: slice, cols: slice, out: slice):
        if tensor.size:
            mul[rows, cols, out] = tensor

    sA, sM, sN, sB = (
        slice(oA, oA + dA),
        slice(oM, oM + dM),
        slice(oN, oN + dN),
        slice(oB, oB + dB),
    )
    put(ctx.A.mul, sA, sA, sA)  # a a'
    put(ctx.M.left, sA, sM, sM)  # a m'
    put(ctx.M.right, sM, sB, sM)  # m b'
    put(ctx.pairing_MN, sM, sN, sA)  # m n' lands in A
    put(ctx.pairing_NM, sN, sM, sB)  # n m' lands in B
    put(ctx.N.right, sN, sA, sN)  # n a'
    put(ctx.N.left, sB, sN, sN)  # b n'
    put(ctx.B.mul, sB, sB, sB)  # b b'

    unit = ring.zeros(d)
    unit[sA] = ctx.A.unit
    unit[sB] = ctx.B.unit

    labels = None
    if ctx.A.labels and ctx.B.labels:
        mid_m = tuple(f"m{i}" for i in range(dM))
        mid_n = tuple(f"n{i}" for i in range(dN))
        labels = tuple(ctx.A.labels) + mid_m + mid_n + tuple(ctx.B.labels)

    g = GMA(ctx, ring, d, mul, unit, (oA, oM, oN, oB), labels)
    w = g._assoc_witness()
    if w is not None:
        raise AxiomError("gma.associativity", w, "assembled product not associative")
    u = g._unit_witness()
    if u is not None:
        raise AxiomError(f"gma.{u}")
    return g


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def make_matrix_algebra(n: int, ring: RingDescriptor) -> AlgebraSpec:
    """Full n x n matrix algebra on the unit basis E_rc, row-major."""
    if n < 1:
        raise ExactError("matrix algebra needs n >= 1")
    d = n * n
    idx = {(r, c): r * n + c for r in range(n) for c in range(n)}
    mul = ring.zeros((d, d, d))
    one = ring.one
    for (r, c), i in idx.items():
        for (s, t), j in idx.items():
            if c == s:
                mul[i, j, idx[(r, t)]] = one
    unit = ring.zeros(d)
    for r in range(n):
        unit[idx[(r, r)]] = one
    labels = tuple(f"E{r + 1}{c + 1}" for r in range(n) for c in range(n))
    return AlgebraSpec(ring, d, mul, unit, labels)


def make_triangular_algebra(n: int, ring: RingDescriptor) -> AlgebraSpec:
    """Upper-triangular n x n matrices on E_rc with r <= c, row-major."""
    if n < 1:
        raise ExactError("triangular algebra needs n >= 1")
    pairs = [(r, c) for r in range(n) for c in range(r, n)]
    idx = {rc: i for i, rc in enumerate(pairs)}
    d = len(pairs)
    mul = ring.zeros((d, d, d))
    one = ring.one
    for (r, c), i in idx.items():
        for (s, t), j in idx.items():
            if c == s:
                mul[i, j, idx[(r, t)]] = one
    unit = ring.zeros(d)
    for r in range(n):
        unit[idx[(r, r)]] = one
    labels = tuple(f"E{r + 1}{c + 1}" for (r, c) in pairs)
    return AlgebraSpec(ring, d, mul, unit, labels)


def build_full_matrix(n: int, k: int, ring: RingDescriptor) -> MoritaContext:
    """Split M_n along the idempotent diag(1^k, 0): A = M_k, B = M_{n-k},
    M and N the off-diagonal rectangles, pairings = matrix multiplication.

    The context is flagged prime (it is the corner split of a full matrix
    algebra over a field), which certifies bimodule loyalty over Q.
    """
    if not (1 <= k <= n - 1):
        raise ExactError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    A = make_matrix_algebra(k, ring)
    B = make_matrix_algebra(n - k, ring)
    km, kn = k, n - k
    one = ring.one

    def rect_index(rows, cols):
        return {(r, c): r * cols + c for r in range(rows) for c in range(cols)}

    mi = rect_index(km, kn)  # M: k x (n-k)
    ni = rect_index(kn, km)  # N: (n-k) x k
    ai = rect_index(km, km)
    bi = rect_index(kn, kn)

    left_m = ring.zeros((A.dim, len(mi), len(mi)))
    for (r, c), a in ai.items():
        for (s, t), m in mi.items():
            if c == s:
                left_m[a, m, mi[(r, t)]] = one
    right_m = ring.zeros((len(mi), B.dim, len(mi)))
    for (r, c), m in mi.items():
        for (s, t), b in bi.items():
            if c == s:
                right_m[m, b, mi[(r, t)]] = one
    left_n = ring.zeros((B.dim, len(ni), len(ni)))
    for (r, c), b in bi.items():
        for (s, t), nn in ni.items():
            if c == s:
                left_n[b, nn, ni[(r, t)]] = one
    right_n = ring.zeros((len(ni), A.dim, len(ni)))
    for (r, c), nn in ni.items():
        for (s, t), a in ai.items():
            if c == s:
                right_n[nn, a, ni[(r, t)]] = one
    pair_mn = ring.zeros((len(mi), len(ni), A.dim))
    for (r, c), m in mi.items():
        for (s, t), nn in ni.items():
            if c == s:
                pair_mn[m, nn, ai[(r, t)]] = one
    pair_nm = ring.zeros((len(ni), len(mi), B.dim))
    for (r, c), nn in ni.items():
        for (s, t), m in mi.items():
            if c == s:
                pair_nm[nn, m, bi[(r, t)]] = one

    M = BimoduleSpec(ring, len(mi), left_m, right_m)
    N = BimoduleSpec(ring, len(ni), left_n, right_n)
    meta = {"builder": "full_matrix", "n": n, "k": k, "prime_certified": True}
    return MoritaContext(A, B, M, N, pair_mn, pair_nm, meta)


def full_matrix_positions(n: int, k: int):
    """Global (row, col) of each GMA coordinate for a full-matrix build."""
    pos = []
    pos += [(r, c) for r in range(k) for c in range(k)]
    pos += [(r, k + c) for r in range(k) for c in range(n - k)]
    pos += [(k + r, c) for r in range(n - k) for c in range(k)]
    pos += [(k + r, k + c) for r in range(n - k) for c in range(n - k)]
    return pos


def build_upper_triangular(n: int, k: int, ring: RingDescriptor) -> MoritaContext:
    """Split T_n into A = T_k, B = T_{n-k}, M = full k x (n-k), N = 0."""
    if not (1 <= k <= n - 1):
        raise ExactError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    A = make_triangular_algebra(k, ring)
    B = make_triangular_algebra(n - k, ring)
    km, kn = k, n - k
    one = ring.one
    mi = {(r, c): r * kn + c for r in range(km) for c in range(kn)}
    a_pairs = [(r, c) for r in range(km) for c in range(r, km)]
    b_pairs = [(r, c) for r in range(kn) for c in range(r, kn)]
    ai = {rc: i for i, rc in enumerate(a_pairs)}
    bi = {rc: i for i, rc in enumerate(b_pairs)}

    left_m = ring.zeros((A.dim, len(mi), len(mi)))
    for (r, c), a in ai.items():
        for (s, t), m in mi.items():
            if c == s:
                left_m[a, m, mi[(r, t)]] = one
    right_m = ring.zeros((len(mi), B.dim, len(mi)))
    for (r, c), m in mi.items():
        for (s, t), b in bi.items():
            if c == s:
                right_m[m, b, mi[(r, t)]] = one
    M = BimoduleSpec(ring, len(mi), left_m, right_m)
    N = BimoduleSpec(ring, 0, ring.zeros((B.dim, 0, 0)), ring.zeros((0, A.dim, 0)))
    pair_mn = ring.zeros((len(mi), 0, A.dim))
    pair_nm = ring.zeros((0, len(mi), B.dim))
    meta = {"builder": "upper_triangular", "n": n, "k": k}
    return MoritaContext(A, B, M, N, pair_mn, pair_nm, meta)


def triangular_positions(n: int, k: int):
    """Global (row, col) of each GMA coordinate for a triangular build."""
    pos = [(r, c) for r in range(k) for c in range(r, k)]
    pos += [(r, k + c) for r in range(k) for c in range(n - k)]
    pos += [(k + r, k + c) for r in range(n - k) for c in range(r, n - k)]
    return pos


def build_inflated(ring: RingDescriptor, dim_v: int, gamma) -> MoritaContext:
    """One-dimensional corners R, a space V on both off-diagonals, and a
    symmetric bilinear form gamma giving both pairings.

    Nothing here guarantees the associativity diagrams for arbitrary gamma
    (rank >= 2 forms generally break gamma(m,n)m' = gamma(n,m')m); callers
    go through check_morita_axioms / assemble_gma which reject the bad ones
    with a witness.
    """
    if dim_v < 1:
        raise ExactError("inflated build needs dim V >= 1")
    gamma = ring.normalize(ring.array(gamma) if not isinstance(gamma, np.ndarray) else gamma)
    if gamma.shape != (dim_v, dim_v):
        raise ExactError("gamma must be dim_v x dim_v")
    if not ring.equal(gamma, gamma.T):
        raise ExactError("gamma must be symmetric")
    scal = AlgebraSpec(ring, 1, ring.array([[[1]]]), ring.array([1]), ("1",))
    eye3 = ring.zeros((1, dim_v, dim_v))
    eye3[0] = ring.eye(dim_v)
    eye3_r = ring.zeros((dim_v, 1, dim_v))
    for i in range(dim_v):
        eye3_r[i, 0, i] = ring.one
    V_as_M = BimoduleSpec(ring, dim_v, eye3, eye3_r)
    V_as_N = BimoduleSpec(ring, dim_v, eye3.copy(), eye3_r.copy())
    pair_mn = ring.zeros((dim_v, dim_v, 1))
    pair_nm = ring.zeros((dim_v, dim_v, 1))
    pair_mn[:, :, 0] = gamma
    pair_nm[:, :, 0] = gamma.T  # = gamma; kept explicit for the swapped slots
    meta = {"builder": "inflated", "dim_v": dim_v}
    return MoritaContext(scal, scal, V_as_M, V_as_N, pair_mn, pair_nm, meta)


def build_diagonal_pair(ring: RingDescriptor, k: int = 2) -> MoritaContext:
    """A = B = R^k (componentwise product), M = N = R^k acting coordinatewise.

    The standard non-loyal control: for k = 2, a = (1,0) and b = (0,1)
    satisfy a M b = 0 with both nonzero, while M stays faithful on each side.
    """
    if k < 2:
        raise ExactError("diagonal pair needs k >= 2")
    mul = ring.zeros((k, k, k))
    for i in range(k):
        mul[i, i, i] = ring.one
    unit = ring.zeros(k)
    unit[:] = ring.one
    alg = AlgebraSpec(ring, k, mul, unit, tuple(f"d{i}" for i in range(k)))
    left = ring.zeros((k, k, k))
    right = ring.zeros((k, k, k))
    for i in range(k):
        left[i, i, i] = ring.one
        right[i, i, i] = ring.one
    M = BimoduleSpec(ring, k, left, right)
    N = BimoduleSpec(ring, k, left.copy(), right.copy())
    pair = ring.zeros((k, k, k))
    for i in range(k):
        pair[i, i, i] = ring.one
    meta = {"builder": "diagonal_pair", "k": k}
    return MoritaContext(alg, alg, M, N, pair, pair.copy(), meta)


def build_peirce(alg: AlgebraSpec, e, assume_prime: bool = False):
    """Peirce split of an algebra along an idempotent e (e != 0, 1).

    Returns (context, certificate) where certificate is the invertible
    change-of-basis matrix whose column j is the j-th GMA coordinate vector
    expressed in the source algebra's coordinates; conjugating the source
    product by it reproduces the assembled GMA product exactly.
    """
    ring = alg.ring
    e = ring.normalize(np.asarray(e))
    if e.shape != (alg.dim,):
        raise ExactError("idempotent has wrong length")
    if not ring.equal(alg.multiply(e, e), e):
        raise AxiomError("peirce.idempotent", detail="e*e != e")
    f = ring.normalize(alg.unit - e)
    if ring.is_zero(e) or ring.is_zero(f):
        raise AxiomError("peirce.degenerate", detail="e is 0 or 1")

    Le, Re = alg.left_mult_matrix(e), alg.right_mult_matrix(e)
    Lf, Rf = alg.left_mult_matrix(f), alg.right_mult_matrix(f)

    def corner_basis(lmat, rmat):
        proj = ring.tensordot(rmat, lmat, axes=([1], [0]))  # x -> l * x * r
        red, piv, rank = rref_array(ring, proj.T)
        return red[:rank].copy()

    UA = corner_basis(Le, Re)  # e x e
    UM = corner_basis(Le, Rf)  # e x f
    UN = corner_basis(Lf, Re)  # f x e
    UB = corner_basis(Lf, Rf)  # f x f
    if UA.shape[0] + UM.shape[0] + UN.shape[0] + UB.shape[0] != alg.dim:
        raise AxiomError("peirce.split", detail="corners do not sum to the algebra")

    def coords_in(basis, v, what):
        c = row_span_coords(ring, basis, v)
        if c is None:
            raise AxiomError("peirce.block-product", detail=f"{what} left its corner")
        return c

    def block_mul(U, V, W, what):
        t = ring.zeros((U.shape[0], V.shape[0], W.shape[0]))
        for i in range(U.shape[0]):
            for j in range(V.shape[0]):
                t[i, j] = coords_in(W, alg.multiply(U[i], V[j]), what)
        return t

    A = AlgebraSpec(ring, UA.shape[0], block_mul(UA, UA, UA, "A*A"), coords_in(UA, e, "e"))
    B = AlgebraSpec(ring, UB.shape[0], block_mul(UB, UB, UB, "B*B"), coords_in(UB, f, "f"))
    M = BimoduleSpec(
        ring, UM.shape[0], block_mul(UA, UM, UM, "A*M"), block_mul(UM, UB, UM, "M*B")
    )
    N = BimoduleSpec(
        ring, UN.shape[0], block_mul(UB, UN, UN, "B*N"), block_mul(UN, UA, UN, "N*A")
    )
    pair_mn = block_mul(UM, UN, UA, "M*N")
    pair_nm = block_mul(UN, UM, UB, "N*M")
    meta = {"builder": "peirce", "prime_certified": bool(assume_prime)}
    ctx = MoritaContext(A, B, M, N, pair_mn, pair_nm, meta)

    cert = ring.zeros((alg.dim, alg.dim))
    col = 0
    for U in (UA, UM, UN, UB):
        for row in U:
            cert[:, col] = row
            col += 1
    if inverse_array(ring, cert) is None:
        raise AxiomError("peirce.certificate", detail="change of basis not invertible")
    return ctx, cert
