"""Centers, the cross-corner center isomorphism, and structural hypothesis checks.

The center of the assembled block algebra is computed from the intertwining
system { a*m = m*b, n*a = b*n } over pairs (a, b); with a faithful connecting
bimodule this is exactly the center, and the result is re-verified against
raw centrality ([z, e_i] = 0) so a discrepancy can never pass silently.

``phi`` is the isomorphism between the two corner projections of the center
(a |-> the unique b with a*m = m*b and n*a = b*n for all m, n); it exists on
the projection by construction and is unique iff the bimodule is faithful on
the right, which is checked first and reported rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import (
    RingDescriptor,
    inverse_array,
    nullspace_array,
    rank_array,
    row_space_contains,
    row_span_coords,
    rref_array,
    solve_array,
)
from .rng import XorShift64Star
from .structure import GMA, MoritaContext, check_morita_axioms


class CenterError(ValueError):
    pass


def _rref_rows(ring, rows):
    if rows.shape[0] == 0:
        return rows
    red, piv, rank = rref_array(ring, rows)
    return red[:rank].copy()


def _basis_reduce(ring, basis_rows, v):
    """Residual of v against a canonical RREF row basis (zero iff v in span)."""
    if basis_rows.shape[0] == 0:
        return ring.normalize(np.asarray(v)).copy()
    coords = ring.zeros(basis_rows.shape[0])
    for i, row in enumerate(basis_rows):
        nz = np.argwhere(row != ring.zero)
        coords[i] = v[int(nz[0][0])]
    return ring.normalize(v - ring.tensordot(coords, basis_rows, axes=([0], [0])))


def compute_center_algebra(alg) -> np.ndarray:
    """Canonical basis (rows) of the center of an algebra-like carrier."""
    ring, d, mul = alg.ring, alg.dim, alg.mul
    if d == 0:
        return ring.zeros((0, 0))
    lhs = np.transpose(mul, (1, 2, 0))  # [i, r, j] = (e_j e_i)_r
    rhs = np.transpose(mul, (0, 2, 1))  # [i, r, j] = (e_i e_j)_r
    K = ring.normalize(lhs - rhs).reshape(d * d, d)
    return _rref_rows(ring, nullspace_array(ring, K))


@dataclass(eq=False)
class CenterData:
    """Everything downstream code needs about Z(G) and its corner projections."""

    ring: RingDescriptor
    dim: int
    z_g: np.ndarray  # (zdim, dim) canonical rows
    z_a: np.ndarray  # center of the A corner, in A coordinates
    z_b: np.ndarray
    pia_image: np.ndarray  # A-projection of Z(G), canonical rows
    pib_image: np.ndarray
    phi: np.ndarray  # (dim B, #pia rows): piA coefficient -> B coords
    phi_inv: np.ndarray  # (dim A, #pib rows)
    complement: np.ndarray  # ((dim - zdim), dim): coordinate vectors extending z_g
    to_coords: np.ndarray  # (dim, dim): v -> coefficients over [z_g; complement]

    @property
    def zdim(self) -> int:
        return self.z_g.shape[0]

    def center_coords(self, v):
        """Coefficients of v over the z_g basis, or None if v is not central."""
        c = self.ring.tensordot(self.to_coords, np.asarray(v), axes=([1], [0]))
        if not self.ring.is_zero(c[self.zdim:]):
            return None
        return c[: self.zdim].copy()

    def in_center(self, v) -> bool:
        return self.center_coords(v) is not None

    def expand(self, zc):
        """Center coefficients -> G coordinates."""
        return self.ring.tensordot(np.asarray(zc), self.z_g, axes=([0], [0]))

    def quotient(self, v):
        """Coordinates of v in the complement (zero iff central)."""
        c = self.ring.tensordot(self.to_coords, np.asarray(v), axes=([1], [0]))
        return c[self.zdim:].copy()

    def phi_apply(self, a_vec):
        """Apply the corner isomorphism to an A-corner vector; None off the span."""
        coeff = row_span_coords(self.ring, self.pia_image, np.asarray(a_vec))
        if coeff is None:
            return None
        return self.ring.tensordot(self.phi, coeff, axes=([1], [0]))

    def phi_inv_apply(self, b_vec):
        coeff = row_span_coords(self.ring, self.pib_image, np.asarray(b_vec))
        if coeff is None:
            return None
        return self.ring.tensordot(self.phi_inv, coeff, axes=([1], [0]))


def check_faithful(ctx: MoritaContext):
    """(left_ok, right_ok, witness) for the connecting bimodule M.

    left: a*M = 0 forces a = 0;  right: M*b = 0 forces b = 0.
    The witness is the offending nonzero annihilator, if any.
    """
    ring = ctx.ring
    dA, dB, dM = ctx.A.dim, ctx.B.dim, ctx.M.dim
    KL = np.transpose(ctx.M.left, (1, 2, 0)).reshape(dM * dM, dA) if dM else ring.zeros((0, dA))
    KR = np.transpose(ctx.M.right, (0, 2, 1)).reshape(dM * dM, dB) if dM else ring.zeros((0, dB))
    left_null = nullspace_array(ring, KL)
    right_null = nullspace_array(ring, KR)
    left_ok = left_null.shape[0] == 0
    right_ok = right_null.shape[0] == 0
    witness = None
    if not left_ok:
        witness = ("left", left_null[0].copy())
    elif not right_ok:
        witness = ("right", right_null[0].copy())
    return left_ok, right_ok, witness


def compute_center_gma(gma: GMA) -> CenterData:
    ring = gma.ring
    ctx = gma.ctx
    dA, dM, dN, dB = gma.dims
    d = gma.dim

    # intertwining system over pairs (a, b)
    rows = []
    blocks = []
    if dM:
        # a*m_j - m_j*b = 0 : [(j, r), (a | b)]
        ca = np.transpose(ctx.M.left, (1, 2, 0)).reshape(dM * dM, dA)
        cb = -np.transpose(ctx.M.right, (0, 2, 1)).reshape(dM * dM, dB)
        blocks.append((ca, cb))
    if dN:
        # n_j*a - b*n_j = 0
        ca = np.transpose(ctx.N.right, (0, 2, 1)).reshape(dN * dN, dA)
        cb = -np.transpose(ctx.N.left, (1, 2, 0)).reshape(dN * dN, dB)
        blocks.append((ca, cb))
    K = ring.zeros((sum(b[0].shape[0] for b in blocks), dA + dB))
    at = 0
    for ca, cb in blocks:
        K[at : at + ca.shape[0], :dA] = ring.normalize(ca)
        K[at : at + ca.shape[0], dA:] = ring.normalize(cb)
        at += ca.shape[0]
    pairs = nullspace_array(ring, K)

    z_rows = ring.zeros((pairs.shape[0], d))
    z_rows[:, gma.block_slice(0)] = pairs[:, :dA]
    z_rows[:, gma.block_slice(3)] = pairs[:, dA:]
    z_g = _rref_rows(ring, z_rows)

    # raw centrality cross-check: [z, e_i] = 0 for every surviving basis vector
    for z in z_g:
        for i in range(d):
            if not ring.is_zero(gma.commutator(z, gma.basis_vector(i))):
                raise CenterError(
                    "intertwining solution is not raw-central; "
                    "the connecting bimodule is too degenerate for this construction"
                )

    z_a = compute_center_algebra(ctx.A)
    z_b = compute_center_algebra(ctx.B)
    pia = _rref_rows(ring, z_g[:, gma.block_slice(0)].copy())
    pib = _rref_rows(ring, z_g[:, gma.block_slice(3)].copy())

    left_ok, right_ok, _w = check_faithful(ctx)

    def solve_partner(alpha, forward: bool):
        """forward: alpha in A, find b; else alpha in B, find a."""
        sub_rows = []
        rhs_parts = []
        if forward:
            if dM:
                # m_j * b = alpha * m_j
                coeff = np.transpose(ctx.M.right, (0, 2, 1)).reshape(dM * dM, dB)
                rhs = ring.tensordot(alpha, ctx.M.left, axes=([0], [0])).reshape(dM * dM)
                sub_rows.append(coeff)
                rhs_parts.append(rhs)
            if dN:
                # b * n_j = n_j * alpha
                coeff = np.transpose(ctx.N.left, (1, 2, 0)).reshape(dN * dN, dB)
                rhs = ring.tensordot(alpha, ctx.N.right, axes=([0], [1])).reshape(dN * dN)
                sub_rows.append(coeff)
                rhs_parts.append(rhs)
            width = dB
        else:
            if dM:
                # a * m_j = m_j * alpha
                coeff = np.transpose(ctx.M.left, (1, 2, 0)).reshape(dM * dM, dA)
                rhs = ring.tensordot(alpha, ctx.M.right, axes=([0], [1])).reshape(dM * dM)
                sub_rows.append(coeff)
                rhs_parts.append(rhs)
            if dN:
                # n_j * a = alpha * n_j
                coeff = np.transpose(ctx.N.right, (0, 2, 1)).reshape(dN * dN, dA)
                rhs = ring.tensordot(alpha, ctx.N.left, axes=([0], [0])).reshape(dN * dN)
                sub_rows.append(coeff)
                rhs_parts.append(rhs)
            width = dA
        mat = ring.zeros((sum(r.shape[0] for r in sub_rows), width))
        vec = ring.zeros(mat.shape[0])
        at = 0
        for coeff, rhs in zip(sub_rows, rhs_parts):
            mat[at : at + coeff.shape[0]] = ring.normalize(coeff)
            vec[at : at + coeff.shape[0]] = ring.normalize(rhs)
            at += coeff.shape[0]
        return solve_array(ring, mat, vec)

    if pia.shape[0] and not right_ok:
        raise CenterError(
            "corner isomorphism needs the bimodule faithful on the right; it is not"
        )
    if pib.shape[0] and not left_ok:
        raise CenterError(
            "corner isomorphism inverse needs the bimodule faithful on the left; it is not"
        )

    phi = ring.zeros((dB, pia.shape[0]))
    for idx, alpha in enumerate(pia):
        b = solve_partner(alpha, True)
        if b is None:
            raise CenterError("no B-partner for a projected center element")
        phi[:, idx] = b
    phi_inv = ring.zeros((dA, pib.shape[0]))
    for idx, beta in enumerate(pib):
        a = solve_partner(beta, False)
        if a is None:
            raise CenterError("no A-partner for a projected center element")
        phi_inv[:, idx] = a

    # deterministic complement: extend z_g by coordinate vectors, ascending index
    chosen = []
    cur = z_g
    cur_rank = cur.shape[0]
    for i in range(d):
        if cur_rank == d:
            break
        cand = ring.zeros((1, d))
        cand[0, i] = ring.one
        trial = np.concatenate([cur, cand], axis=0)
        r = rank_array(ring, trial)
        if r > cur_rank:
            chosen.append(i)
            cur = trial
            cur_rank = r
    complement = ring.zeros((len(chosen), d))
    for row, i in enumerate(chosen):
        complement[row, i] = ring.one
    full = np.concatenate([z_g, complement], axis=0) if z_g.size or complement.size else z_g
    to_coords = inverse_array(ring, full.T)
    if to_coords is None:
        raise CenterError("center + complement failed to span (internal)")

    return CenterData(
        ring, d, z_g, z_a, z_b, pia, pib, phi, phi_inv, complement, to_coords
    )


# ---------------------------------------------------------------------------
# loyalty (a M b = 0 forces a = 0 or b = 0)
# ---------------------------------------------------------------------------


@dataclass
class LoyaltyResult:
    status: str  # "true" | "false" | "unknown"
    witness: tuple | None = None  # (a_coords, b_coords) when status == "false"
    detail: str = ""

    def __bool__(self):
        raise TypeError("three-valued result; compare .status explicitly")


def _digits_le(n: int, base: int, width: int):
    out = []
    for _ in range(width):
        out.append(n % base)
        n //= base
    return out


def check_loyal(ctx: MoritaContext, bound: int = 5**8) -> LoyaltyResult:
    """Exhaustive enumeration over F_p (bounded), structural certificates over Q."""
    ring = ctx.ring
    dA, dB, dM = ctx.A.dim, ctx.B.dim, ctx.M.dim
    if dM == 0:
        return LoyaltyResult(
            "false", (ctx.A.unit.copy(), ctx.B.unit.copy()),
            "M = 0: the unit pair already annihilates it",
        )
    left_ok, right_ok, _ = check_faithful(ctx)

    if not ring.is_prime_field:
        if dA == 1 and right_ok:
            return LoyaltyResult("true", None, "dim A = 1 and M right-faithful")
        if dB == 1 and left_ok:
            return LoyaltyResult("true", None, "dim B = 1 and M left-faithful")
        if ctx.meta.get("prime_certified"):
            return LoyaltyResult("true", None, "corner context of an algebra flagged prime")
        return LoyaltyResult("unknown", None, "no structural certificate over Q")

    p = ring.p
    # enumerate the smaller corner; orientation is reported in the witness order
    side_a = dA <= dB
    width = dA if side_a else dB
    total = p**width - 1
    if total > bound:
        return LoyaltyResult("unknown", None, f"{total} candidates exceed bound {bound}")
    for nidx in range(1, total + 1):
        vec = ring.array(_digits_le(nidx, p, width))
        if side_a:
            # kernel in b of b |-> a*M*b
            U = ring.tensordot(vec, ctx.M.left, axes=([0], [0]))  # (j, x) = (a*m_j)_x
            K = ring.tensordot(U, ctx.M.right, axes=([1], [0]))  # (j, b, r)
            K = np.transpose(K, (0, 2, 1)).reshape(dM * dM, dB)
        else:
            U = ring.tensordot(vec, ctx.M.right, axes=([0], [1]))  # (j, x) = (m_j*b)_x
            K = ring.tensordot(U, ctx.M.left, axes=([1], [1]))  # (j, a, r)
            K = np.transpose(K, (0, 2, 1)).reshape(dM * dM, dA)
        ker = nullspace_array(ring, K)
        if ker.shape[0]:
            partner = ker[0].copy()
            ab = (vec, partner) if side_a else (partner, vec)
            return LoyaltyResult("false", ab, "annihilating pair found by enumeration")
    return LoyaltyResult("true", None, f"enumeration over {total} candidates")


# ---------------------------------------------------------------------------
# commuting linear maps and properness
# ---------------------------------------------------------------------------


def commuting_linear_space(alg) -> list:
    """Canonical basis (as matrices) of {f linear : [f(x), x] = 0 for all x}."""
    ring, d, mul = alg.ring, alg.dim, alg.mul
    Bk = ring.normalize(mul - np.transpose(mul, (1, 0, 2)))  # [k, j, r] = [e_k, e_j]_r
    pairs = [(i, j) for i in range(d) for j in range(i, d)]
    K = ring.zeros((len(pairs) * d, d * d))  # unknown w[i*d + k] = f(e_i)_k
    for row, (i, j) in enumerate(pairs):
        base = row * d
        for k in range(d):
            K[base : base + d, i * d + k] += Bk[k, j]
            if i != j:
                K[base : base + d, j * d + k] += Bk[k, i]
    K = ring.normalize(K)
    sols = nullspace_array(ring, K)
    return [w.reshape(d, d).T.copy() for w in sols]


def proper_linear_generators(alg, z_rows: np.ndarray) -> list:
    """Matrices spanning {x -> z*x + eta(x) : z central, eta linear into the center}."""
    ring, d = alg.ring, alg.dim
    gens = []
    for z in z_rows:
        gens.append(alg.left_mult_matrix(z))
    for z in z_rows:
        for i in range(d):
            F = ring.zeros((d, d))
            F[:, i] = z
            gens.append(F)
    return gens


@dataclass
class ProperSpanReport:
    ok: bool
    dim_commuting: int
    dim_proper: int


def check_all_commuting_proper(alg) -> ProperSpanReport:
    """Is every commuting linear map of the form x -> z*x + eta(x)?  (span test)"""
    ring, d = alg.ring, alg.dim
    comm = commuting_linear_space(alg)
    z_rows = compute_center_algebra(alg)
    gens = proper_linear_generators(alg, z_rows)
    if not gens:
        span = ring.zeros((0, d * d))
    else:
        span = ring.zeros((len(gens), d * d))
        for i, F in enumerate(gens):
            span[i] = F.reshape(d * d)
    cand = ring.zeros((len(comm), d * d))
    for i, F in enumerate(comm):
        cand[i] = F.reshape(d * d)
    ok = row_space_contains(ring, span, cand)
    return ProperSpanReport(ok, len(comm), rank_array(ring, span) if gens else 0)


# ---------------------------------------------------------------------------
# bracket-square identity [[x^2, y], [x, y]] == 0  (holds iff both corners commute)
# ---------------------------------------------------------------------------


def _integer_mul_tensor(gma):
    """Integer lift of the product tensor (denominators cleared over Q)."""
    ring = gma.ring
    if ring.is_prime_field:
        return np.asarray(gma.mul, dtype=np.int64), ring.p
    from math import lcm

    denoms = [int(v.denominator) for v in gma.mul.flat]
    scale = lcm(*denoms) if denoms else 1
    lifted = np.empty(gma.mul.shape, dtype=np.int64)
    for idx in np.ndindex(gma.mul.shape):
        q = gma.mul[idx] * scale
        assert q.denominator == 1
        lifted[idx] = int(q)
    if np.abs(lifted).max(initial=0) > 1000:
        raise CenterError("structure constants too large for the int64 identity scan")
    return lifted, None


def check_identity_42(gma, seed: int = 1729):
    """Decide whether [[x^2, y], [x, y]] vanishes identically; witness if not.

    Exact monomial-coefficient extraction (degree 3 in x, 2 in y; both below
    every supported characteristic).  The returned witness pair is re-verified
    by direct evaluation.
    """
    ring, d = gma.ring, gma.dim
    mul, p = _integer_mul_tensor(gma)
    Bk = mul - np.transpose(mul, (1, 0, 2))
    if p is not None:
        Bk %= p
    W = np.tensordot(mul, Bk, axes=([2], [0]))  # [u, v, s, r] = [e_u e_v, f_s]_r
    if p is not None:
        W %= p

    def reduce(arr):
        return arr % p if p is not None else arr

    bad = None
    for a in range(d):
        for b in range(a, d):
            for c in range(b, d):
                perms = sorted(set(
                    ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a))
                ))
                contrib = np.zeros((d, d, d), dtype=np.int64)
                for (u, v, w) in perms:
                    Z1 = np.tensordot(W[u, v], Bk, axes=([1], [0]))  # (s, l, r)
                    T = np.tensordot(Bk[w], Z1, axes=([1], [1]))  # (t, s, r)
                    contrib += np.transpose(T, (1, 0, 2))
                contrib = reduce(contrib)
                for s in range(d):
                    for t in range(s, d):
                        coef = contrib[s, t] if s == t else reduce(contrib[s, t] + contrib[t, s])
                        if np.any(coef != 0):
                            bad = (a, b, c, s, t)
                            break
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break

    if bad is None:
        return True, None

    def defect(x, y):
        return gma.commutator(gma.commutator(gma.square(x), y), gma.commutator(x, y))

    a, b, c, s, t = bad
    x = ring.normalize(gma.basis_vector(a) + gma.basis_vector(b) + gma.basis_vector(c))
    y = ring.normalize(gma.basis_vector(s) + gma.basis_vector(t))
    if not ring.is_zero(defect(x, y)):
        return False, (x, y)
    stream = XorShift64Star(seed)
    for _ in range(2000):
        x = ring.array([ring.random_scalar(stream) for _ in range(d)])
        y = ring.array([ring.random_scalar(stream) for _ in range(d)])
        if not ring.is_zero(defect(x, y)):
            return False, (x, y)
    raise CenterError("nonzero defect coefficient but no evaluable witness found")


# ---------------------------------------------------------------------------
# central Jordan radical: largest S <= Z(G) with S o G <= S
# ---------------------------------------------------------------------------


def central_jordan_radical(gma) -> np.ndarray:
    ring, d = gma.ring, gma.dim
    S = gma.center.z_g.copy()
    sym = ring.normalize(gma.mul + np.transpose(gma.mul, (1, 0, 2)))
    while S.shape[0]:
        T = ring.tensordot(S, sym, axes=([1], [1]))  # [s, i, r] = (S_s o e_i)_r
        resid = ring.zeros(T.shape)
        for s in range(S.shape[0]):
            for i in range(d):
                resid[s, i] = _basis_reduce(ring, S, T[s, i])
        K = resid.reshape(S.shape[0], d * d).T.copy()  # rows (i,r), cols s
        C = nullspace_array(ring, ring.normalize(K))
        newS = _rref_rows(ring, ring.tensordot(C, S, axes=([1], [0]))) if C.shape[0] else ring.zeros((0, d))
        if newS.shape[0] == S.shape[0]:
            return newS
        S = newS
    return S


# ---------------------------------------------------------------------------
# smaller structural scans used by the suite
# ---------------------------------------------------------------------------


def balanced_pair_space_dim(gma) -> int | None:
    """dim of {(f, g) linear M -> A : f(m)*m' + g(m')*m = 0 on all pairs}.

    With a loyal bimodule and noncommutative B this must be 0.  None when
    there is no M to test.
    """
    ring = gma.ring
    ctx = gma.ctx
    dA, dM = ctx.A.dim, ctx.M.dim
    if dM == 0:
        return None
    K = ring.zeros((dM * dM * dM, 2 * dA * dM))  # unknowns [f columns | g columns]
    for i in range(dM):
        for j in range(dM):
            base = (i * dM + j) * dM
            for a in range(dA):
                K[base : base + dM, a * dM + i] += ctx.M.left[a, j]
                K[base : base + dM, dA * dM + a * dM + j] += ctx.M.left[a, i]
    return nullspace_array(ring, ring.normalize(K)).shape[0]


def center_multiplier_annihilator_ok(gma, bound: int = 5**8):
    """No nonzero projected-center multiplier kills a nonzero A basis element.

    F_p only (coordinate grid scan); returns None when not applicable.
    """
    ring = gma.ring
    if not ring.is_prime_field:
        return None
    C = gma.center
    ka = C.pia_image.shape[0]
    p = ring.p
    if p**ka - 1 > bound:
        return None
    A = gma.ctx.A
    for nidx in range(1, p**ka):
        coeff = ring.array(_digits_le(nidx, p, ka))
        alpha = ring.tensordot(coeff, C.pia_image, axes=([0], [0]))
        for i in range(A.dim):
            if ring.is_zero(A.multiply(alpha, A.basis_vector(i))):
                return False
    return True


def center_zero_divisor_free(gma, bound: int = 5**8):
    """Z(G) has no zero divisors (exhaustive product grid; F_p only)."""
    ring = gma.ring
    if not ring.is_prime_field:
        return None
    C = gma.center
    z = C.zdim
    p = ring.p
    if z == 0:
        return True
    if p ** (2 * z) > bound:
        return None
    elems = []
    for nidx in range(1, p**z):
        coeff = ring.array(_digits_le(nidx, p, z))
        elems.append(C.expand(coeff))
    for z1 in elems:
        for z2 in elems:
            if ring.is_zero(gma.multiply(z1, z2)):
                return False
    return True


def cube_annihilating_forms_contained(gma) -> bool:
    """Bilinear K: B x B -> N with x*K(x,x) = 0 coefficientwise satisfy
    K(x,x) = 0 coefficientwise (nullspace containment, exact)."""
    ring = gma.ring
    ctx = gma.ctx
    dB, dN = ctx.B.dim, ctx.N.dim
    if dN == 0 or dB == 0:
        return True
    nunk = dB * dB * dN  # K[v, w, n]
    triples = [(a, b, c) for a in range(dB) for b in range(a, dB) for c in range(b, dB)]
    K1 = ring.zeros((len(triples) * dN, nunk))
    for row, (a, b, c) in enumerate(triples):
        base = row * dN
        perms = sorted(set(
            ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a))
        ))
        for (u, v, w) in perms:
            for n in range(dN):
                K1[base : base + dN, (v * dB + w) * dN + n] += ctx.N.left[u, n]
    null_cubic = nullspace_array(ring, ring.normalize(K1))
    pairs = [(a, b) for a in range(dB) for b in range(a, dB)]
    K2 = ring.zeros((len(pairs) * dN, nunk))
    for row, (a, b) in enumerate(pairs):
        base = row * dN
        for n in range(dN):
            K2[base + n, (a * dB + b) * dN + n] += ring.one
            if a != b:
                K2[base + n, (b * dB + a) * dN + n] += ring.one
    return row_space_contains(ring, nullspace_array(ring, ring.normalize(K2)), null_cubic)


# ---------------------------------------------------------------------------
# the aggregated hypothesis report
# ---------------------------------------------------------------------------


@dataclass
class HypothesisReport:
    morita_ok: bool
    M_faithful_left: bool
    M_faithful_right: bool
    M_loyal: LoyaltyResult
    zA_eq_piA: bool
    zA_ne_A: bool
    zB_eq_piB: bool
    zB_ne_B: bool
    commuting_proper_on_A: ProperSpanReport
    commuting_proper_on_B: ProperSpanReport
    central_over_R: bool
    b_central_over_R: bool
    prop322_m0b0: tuple | None
    two_torsionfree: bool

    @property
    def main_route_ok(self) -> bool:
        """Route 1: proper commuting maps on a corner, both corner centers match
        the projected center properly, loyal bimodule."""
        return (
            self.morita_ok
            and (self.commuting_proper_on_A.ok or self.commuting_proper_on_B.ok)
            and self.zA_eq_piA
            and self.zA_ne_A
            and self.zB_eq_piB
            and self.zB_ne_B
            and self.M_loyal.status == "true"
        )

    @property
    def alt_route_ok(self) -> bool:
        """Route 2: noncommutative central B over a field, proper commuting maps
        on B, and a pair (m0, b0) with {m0*b0, m0} independent."""
        return (
            self.morita_ok
            and self.zB_ne_B
            and self.central_over_R
            and self.b_central_over_R
            and self.commuting_proper_on_B.ok
            and self.prop322_m0b0 is not None
        )

    @property
    def route(self) -> str:
        if self.main_route_ok:
            return "main"
        if self.alt_route_ok:
            return "corner"
        return "none"

    def lines(self):
        ci = self.commuting_proper_on_A
        cb = self.commuting_proper_on_B
        out = [
            f"morita-axioms: {'ok' if self.morita_ok else 'FAIL'}",
            f"bimodule-faithful: left={self.M_faithful_left} right={self.M_faithful_right}",
            f"bimodule-loyal: {self.M_loyal.status} ({self.M_loyal.detail})",
            f"corner-A-center-matches-projection: {self.zA_eq_piA}; A-noncommutative: {self.zA_ne_A}",
            f"corner-B-center-matches-projection: {self.zB_eq_piB}; B-noncommutative: {self.zB_ne_B}",
            f"commuting-maps-proper-on-A: {ci.ok} (commuting dim {ci.dim_commuting}, proper dim {ci.dim_proper})",
            f"commuting-maps-proper-on-B: {cb.ok} (commuting dim {cb.dim_commuting}, proper dim {cb.dim_proper})",
            f"central-over-scalars: G={self.central_over_R} B={self.b_central_over_R}",
            f"independent-pair-m0b0: {'found' if self.prop322_m0b0 is not None else 'none'}",
            f"two-torsion-free: {self.two_torsionfree}",
            f"decomposition-route: {self.route}",
        ]
        if self.M_loyal.status == "false" and self.M_loyal.witness is not None:
            a, b = self.M_loyal.witness
            fa = "[" + ", ".join(str(v) for v in a) + "]"
            fb = "[" + ", ".join(str(v) for v in b) + "]"
            out.insert(3, f"  non-loyal witness: a={fa} b={fb}")
        return out


def _search_independent_pair(gma, seed: int):
    ring = gma.ring
    ctx = gma.ctx
    dM, dB = ctx.M.dim, ctx.B.dim
    if dM == 0:
        return None

    def independent(m0, b0):
        mb = ctx.M.act_right(m0, b0)
        stack = ring.zeros((2, dM))
        stack[0] = mb
        stack[1] = m0
        return rank_array(ring, stack) == 2

    for i in range(dM):
        for j in range(dB):
            m0 = ring.zeros(dM)
            m0[i] = ring.one
            b0 = ring.zeros(dB)
            b0[j] = ring.one
            if independent(m0, b0):
                return (m0, b0)
    stream = XorShift64Star(seed)
    for _ in range(1000):
        m0 = ring.array([ring.random_scalar(stream) for _ in range(dM)])
        b0 = ring.array([ring.random_scalar(stream) for _ in range(dB)])
        if independent(m0, b0):
            return (m0, b0)
    return None


def hypothesis_report(gma: GMA, loyalty_bound: int = 5**8, seed: int = 0) -> HypothesisReport:
    ring = gma.ring
    ctx = gma.ctx
    C = gma.center
    left_ok, right_ok, _ = check_faithful(ctx)
    zA, zB = C.z_a, C.z_b

    def spans_equal(rows_a, rows_b):
        if rows_a.shape[0] != rows_b.shape[0]:
            return False
        return bool(np.all(rows_a == rows_b)) if rows_a.size else True

    unit_central = C.center_coords(gma.unit) is not None
    central = C.zdim == 1 and unit_central
    b_unit_central = False
    if zB.shape[0] == 1:
        coeff = row_span_coords(ring, zB, ctx.B.unit)
        b_unit_central = coeff is not None
    return HypothesisReport(
        morita_ok=check_morita_axioms(ctx).ok,
        M_faithful_left=left_ok,
        M_faithful_right=right_ok,
        M_loyal=check_loyal(ctx, loyalty_bound),
        zA_eq_piA=spans_equal(zA, C.pia_image),
        zA_ne_A=zA.shape[0] < ctx.A.dim,
        zB_eq_piB=spans_equal(zB, C.pib_image),
        zB_ne_B=zB.shape[0] < ctx.B.dim,
        commuting_proper_on_A=check_all_commuting_proper(ctx.A),
        commuting_proper_on_B=check_all_commuting_proper(ctx.B),
        central_over_R=central,
        b_central_over_R=b_unit_central,
        prop322_m0b0=_search_independent_pair(gma, seed),
        two_torsionfree=(not ring.is_prime_field) or ring.p % 2 == 1,
    )
