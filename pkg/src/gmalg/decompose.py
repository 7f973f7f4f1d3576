"""Proper-form extraction for centralizing traces and the splitting of
Lie triple isomorphisms into (+/- Jordan) + central parts.

Two independent routes produce proper forms T(x) = z x^2 + mu(x) x + nu(x):

* the generic route solves one exact linear system in (z, mu, nu) over the
  center and verifies reconstruction;
* the constructive route follows the block-component chain (kappa, theta,
  alpha, tau, gamma, gamma', delta, epsilon, epsilon') and assembles the
  same data piecewise, asserting every centrality claim along the way.

The two are deliberately never collapsed: their agreement (as reconstructed
maps — the triple itself is not unique) is itself one of the checked
properties.  Anything that should hold by theory but fails on a concrete
instance comes back as a first-class "violation candidate" result carrying
the offending data, never as a crash.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .center import CenterData, hypothesis_report
from .exact import ExactError, inverse_array, rank_array, row_span_coords, solve_array
from .maps import (
    BilinearMapRep,
    LinearMapRep,
    MapError,
    is_centralizing_trace,
    is_commuting_trace,
    is_jordan_hom,
    is_lie_triple_hom,
    pair_index_order,
    vanishes_on_second_commutators,
)
from .rng import XorShift64Star
from .structure import GMA


class PredicateNotSatisfied(MapError):
    """A decomposition was asked for a map that fails its entry predicate."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class WitnessExtractionError(ExactError):
    """The constructive chain hit an inconsistent solve or a membership
    failure; carries the hypothesis report of the instance."""

    def __init__(self, stage, message, report=None):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.report = report


class ComponentPatternError(ExactError):
    def __init__(self, kind, i, j):
        super().__init__(
            f"component {kind}{i + 1}{j + 1} should vanish for a centralizing "
            f"trace but does not"
        )
        self.component = (kind, i, j)


# ---------------------------------------------------------------------------
# block components of a trace
# ---------------------------------------------------------------------------

# output-block patterns forced by centralizing-ness: the M-valued part uses
# only pairs touching the M slot, the N-valued part only pairs touching N
_G_ALLOWED = {(0, 1), (1, 1), (1, 2), (1, 3)}
_H_ALLOWED = {(0, 2), (1, 2), (2, 2), (2, 3)}


@dataclass(eq=False)
class ComponentGrid:
    """Symmetrized block components C_ij of a trace, 0-indexed blocks
    (0=A, 1=M, 2=N, 3=B); C_ij collects q(x_i, x_j) + q(x_j, x_i) for i < j
    and the plain diagonal restriction for i = j, so that
    T_q(x) = sum over i <= j of C_ij(x_i, x_j)."""

    gma: GMA
    tensors: dict  # (i, j) -> (dim_i, dim_j, dim G)
    centralizing: bool
    pattern_violation: tuple | None = None

    def component(self, kind: str, i: int, j: int) -> np.ndarray:
        """kind in 'f'(A-part), 'g'(M), 'h'(N), 'k'(B); blocks i <= j 0-based."""
        out_block = "fghk".index(kind)
        return self.tensors[(i, j)][:, :, self.gma.block_slice(out_block)]

    def evaluate(self, kind: str, i: int, j: int, x, y):
        ring = self.gma.ring
        t = self.component(kind, i, j)
        v = ring.tensordot(np.asarray(x), t, axes=([0], [0]))
        return ring.tensordot(np.asarray(y), v, axes=([0], [0]))

    def reassemble_eval(self, x):
        """Direct reassembly of T_q(x) from the stored components."""
        ring = self.gma.ring
        parts = self.gma.blocks(x)
        acc = ring.zeros(self.gma.dim)
        for (i, j), t in self.tensors.items():
            v = ring.tensordot(parts[i], t, axes=([0], [0]))
            acc = acc + ring.tensordot(parts[j], v, axes=([0], [0]))
        return ring.normalize(acc)


def extract_components(q: BilinearMapRep, gma: GMA, centralizing: bool | None = None) -> ComponentGrid:
    """Split the trace of q into its block components.

    When the trace is centralizing the forced vanishing patterns are
    asserted; a violation is an implementation (or theorem) problem and is
    raised with the offending component named.
    """
    ring = gma.ring
    if q.tensor.shape != (gma.dim, gma.dim, gma.dim):
        raise MapError("bilinear map shape does not match the algebra")
    if centralizing is None:
        centralizing = is_centralizing_trace(gma, q)[0]
    P = ring.normalize(q.tensor + np.transpose(q.tensor, (1, 0, 2)))
    tensors = {}
    for i in range(4):
        si = gma.block_slice(i)
        for j in range(i, 4):
            sj = gma.block_slice(j)
            block = P[si, sj, :]
            if i == j:
                block = ring.normalize(block * ring.half)
            tensors[(i, j)] = block.copy()
    violation = None
    for (i, j) in tensors:
        for kind, allowed in (("g", _G_ALLOWED), ("h", _H_ALLOWED)):
            out_block = "fghk".index(kind)
            sl = gma.block_slice(out_block)
            if sl.stop == sl.start:
                continue
            if (i, j) not in allowed and not ring.is_zero(tensors[(i, j)][:, :, sl]):
                violation = (kind, i, j)
                break
        if violation:
            break
    grid = ComponentGrid(gma, tensors, centralizing, violation)
    if centralizing and violation is not None:
        raise ComponentPatternError(*violation)
    return grid


# ---------------------------------------------------------------------------
# proper forms and the generic solver
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class ProperTraceForm:
    """z in center coordinates; mu as (zdim, dim) matrix of center coords;
    nu as a symmetric (dim, dim, zdim) tensor of center coords."""

    z: np.ndarray
    mu: np.ndarray
    nu: np.ndarray

    def z_vec(self, gma: GMA):
        return gma.center.expand(self.z)

    def mu_vec(self, gma: GMA, x):
        coords = gma.ring.tensordot(self.mu, np.asarray(x), axes=([1], [0]))
        return gma.center.expand(coords)

    def nu_vec(self, gma: GMA, x, y):
        ring = gma.ring
        t = ring.tensordot(np.asarray(x), self.nu, axes=([0], [0]))
        coords = ring.tensordot(np.asarray(y), t, axes=([0], [0]))
        return gma.center.expand(coords)

    def evaluate(self, gma: GMA, x):
        zx2 = gma.multiply(self.z_vec(gma), gma.square(x))
        mux = gma.multiply(self.mu_vec(gma, x), x)
        return gma.ring.normalize(zx2 + mux + self.nu_vec(gma, x, x))

    def sym_tensor(self, gma: GMA) -> np.ndarray:
        """Symmetric coefficient tensor of the reconstructed trace."""
        ring, d = gma.ring, gma.dim
        S = ring.zeros((d, d, d))
        z = self.z_vec(gma)
        half = ring.half
        for i in range(d):
            ei = gma.basis_vector(i)
            mi = self.mu_vec(gma, ei)
            for j in range(i, d):
                ej = gma.basis_vector(j)
                mj = self.mu_vec(gma, ej)
                sym_prod = gma.multiply(ei, ej) + gma.multiply(ej, ei)
                core = (
                    gma.multiply(z, sym_prod)
                    + gma.multiply(mi, ej)
                    + gma.multiply(mj, ei)
                )
                # nu_vec is already the symmetric coefficient; core carries
                # the polarized (doubled) z- and mu-terms
                S[i, j] = ring.normalize(core * half + self.nu_vec(gma, ei, ej))
                S[j, i] = S[i, j]
        return S

    def matches(self, gma: GMA, q: BilinearMapRep) -> bool:
        return gma.ring.equal(self.sym_tensor(gma), q.symmetrize().tensor)


def _pair_values(gma: GMA, q: BilinearMapRep):
    """Pair coefficients v_ij of the trace of q: v_ij = coefficient of
    x_i x_j in T_q(x); a (npairs, dim) array in pair_index_order."""
    ring, d = gma.ring, gma.dim
    P = ring.normalize(q.tensor + np.transpose(q.tensor, (1, 0, 2)))
    pairs = pair_index_order(d)
    out = ring.zeros((len(pairs), d))
    for n, (i, j) in enumerate(pairs):
        out[n] = P[i, j] if i != j else ring.normalize(P[i, i] * ring.half)
    return out


@dataclass(eq=False)
class _GenericSystem:
    """The (pairs*dim) x (zdim*(1 + dim + npairs)) coefficient matrix of
    v_ij = z*(e_i e_j + e_j e_i) + mu(e_i)e_j + mu(e_j)e_i + nu_ij, built
    once per algebra and reused for every decomposition on it."""

    gma: GMA
    matrix: np.ndarray
    sym_products: np.ndarray  # (npairs, dim): e_i e_j + e_j e_i (diag: e_i^2)

    @property
    def zdim(self):
        return self.gma.center.zdim


def build_generic_system(gma: GMA) -> _GenericSystem:
    ring, d = gma.ring, gma.dim
    C = gma.center
    zdim = C.zdim
    pairs = pair_index_order(d)
    npairs = len(pairs)
    zg = C.z_g
    # ZB[t, j] = zeta_t * e_j  (center times basis, as vectors)
    ZB = ring.tensordot(zg, gma.mul, axes=([1], [0]))  # (t, j, r)
    sym = ring.zeros((npairs, d))
    K = ring.zeros((npairs * d, zdim * (1 + d + npairs)))
    for n, (i, j) in enumerate(pairs):
        ei, ej = gma.basis_vector(i), gma.basis_vector(j)
        if i == j:
            w = gma.square(ei)
        else:
            w = ring.normalize(gma.multiply(ei, ej) + gma.multiply(ej, ei))
        sym[n] = w
        base = n * d
        for t in range(zdim):
            # z-term
            K[base : base + d, t] = gma.multiply(zg[t], w)
            # mu-terms: coefficient of mu(e_i) coord t is zeta_t * e_j
            K[base : base + d, zdim * (1 + i) + t] += ZB[t, j]
            if i != j:
                K[base : base + d, zdim * (1 + j) + t] += ZB[t, i]
            # nu-term
            K[base : base + d, zdim * (1 + d + n) + t] = zg[t]
    return _GenericSystem(gma, ring.normalize(K), sym)


def _solution_to_form(gma: GMA, sol: np.ndarray) -> ProperTraceForm:
    ring, d = gma.ring, gma.dim
    zdim = gma.center.zdim
    pairs = pair_index_order(d)
    z = sol[:zdim].copy()
    mu = ring.zeros((zdim, d))
    for i in range(d):
        mu[:, i] = sol[zdim * (1 + i) : zdim * (2 + i)]
    nu = ring.zeros((d, d, zdim))
    half = ring.half
    for n, (i, j) in enumerate(pairs):
        v = sol[zdim * (1 + d + n) : zdim * (2 + d + n)]
        if i == j:
            nu[i, i] = v
        else:
            nu[i, j] = ring.normalize(v * half)
            nu[j, i] = nu[i, j]
    return ProperTraceForm(z, mu, nu)


@dataclass(eq=False)
class GenericDecomposition:
    status: str  # "ok" | "not-proper"
    form: ProperTraceForm | None
    mode: str
    route: str
    report: object  # HypothesisReport


def decompose_trace_generic(
    q: BilinearMapRep,
    gma: GMA,
    mode: str = "centralizing",
    system: _GenericSystem | None = None,
    report=None,
) -> GenericDecomposition:
    """Solve the exact linear system for (z, mu, nu) and verify reconstruction.

    The entry predicate for `mode` must hold (raised otherwise, witness
    attached).  A `not-proper` outcome is legitimate only off-hypothesis;
    the attached hypothesis report says which route, if any, applied.
    """
    ring = gma.ring
    if mode == "centralizing":
        ok, w = is_centralizing_trace(gma, q)
    elif mode == "commuting":
        ok, w = is_commuting_trace(gma, q)
    else:
        raise MapError(f"unknown mode {mode!r}")
    if not ok:
        raise PredicateNotSatisfied(f"trace is not {mode}", witness=w)
    if report is None:
        report = hypothesis_report(gma)
    if system is None:
        system = build_generic_system(gma)
    rhs = _pair_values(gma, q).reshape(system.matrix.shape[0])
    sol = solve_array(ring, system.matrix, rhs)
    if sol is None:
        return GenericDecomposition("not-proper", None, mode, report.route, report)
    form = _solution_to_form(gma, sol)
    if not form.matches(gma, q):
        raise ExactError("generic solution failed reconstruction (internal)")
    return GenericDecomposition("ok", form, mode, report.route, report)


# ---------------------------------------------------------------------------
# the constructive witness chain
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class ConstructiveWitness:
    """The extraction data of the component chain.

    kappa lives in B, theta in A; alpha, tau, gamma are matrices whose
    columns are values on basis vectors of M, N, B (all valued in Z(A));
    gamma_prime likewise A -> Z(B); delta and eta are bilinear tensors
    valued in Z(A); epsilon + epsilon' assemble the z of the proper form.
    side records which corner drove the gamma / gamma' solve.
    """

    kappa: np.ndarray
    theta: np.ndarray
    alpha: np.ndarray  # (dimA, dimM)
    tau: np.ndarray  # (dimA, dimN)
    gamma: np.ndarray  # (dimA, dimB)
    gamma_prime: np.ndarray  # (dimB, dimA)
    delta: np.ndarray  # (dimA, dimB, dimA)
    xi: np.ndarray  # (dimA, dimM), equals alpha
    eta: np.ndarray  # (dimA, dimM, dimA)
    epsilon: np.ndarray  # in A
    epsilon_prime: np.ndarray  # in B
    side: str  # "A" | "B" | "fallback"


def _algebra_quotient(ring, dim, z_rows):
    """Projection-to-complement coords modulo span(z_rows): (qdim, dim) rows
    Q with Qv = 0 iff v in the span.  Deterministic greedy complement."""
    chosen = []
    cur = z_rows
    cur_rank = cur.shape[0]
    for i in range(dim):
        if cur_rank == dim:
            break
        cand = ring.zeros((1, dim))
        cand[0, i] = ring.one
        trial = np.concatenate([cur, cand], axis=0)
        r = rank_array(ring, trial)
        if r > cur_rank:
            chosen.append(i)
            cur = trial
            cur_rank = r
    comp = ring.zeros((len(chosen), dim))
    for row, i in enumerate(chosen):
        comp[row, i] = ring.one
    full = np.concatenate([z_rows, comp], axis=0)
    inv = inverse_array(ring, full.T)
    if inv is None:
        raise ExactError("center complement failed to span (internal)")
    return inv[z_rows.shape[0] :]


def extract_constructive_witness(
    q: BilinearMapRep,
    gma: GMA,
    C: CenterData | None = None,
    grid: ComponentGrid | None = None,
    report=None,
) -> ConstructiveWitness:
    """Run the component chain and return its data, verifying every
    centrality membership on the way.

    The gamma / gamma' solves are keyed on which corner is noncommutative:
    a noncommutative A pins gamma uniquely on the A side; otherwise a
    noncommutative B pins gamma' on the B side and gamma follows by the
    dual formula.  (With both corners commutative every choice is central;
    the canonical zero solution is used and the final nu-centrality check
    downstream has the last word.)
    """
    ring = gma.ring
    if C is None:
        C = gma.center
    if grid is None:
        grid = extract_components(q, gma)
    ctx = gma.ctx
    dA, dM, dN, dB = gma.dims
    unitA, unitB = ctx.A.unit, ctx.B.unit
    if report is None:
        report = hypothesis_report(gma)

    def need(vec, where, stage):
        coords = row_span_coords(ring, where, vec)
        if coords is None:
            raise WitnessExtractionError(stage, "value escapes the projected center", report)
        return coords

    def phi(a_vec, stage):
        out = C.phi_apply(a_vec)
        if out is None:
            raise WitnessExtractionError(stage, "phi argument outside pi_A(Z)", report)
        return out

    def phi_inv(b_vec, stage):
        out = C.phi_inv_apply(b_vec)
        if out is None:
            raise WitnessExtractionError(stage, "phi^-1 argument outside pi_B(Z)", report)
        return out

    f11_11 = grid.evaluate("f", 0, 0, unitA, unitA)
    k11_11 = grid.evaluate("k", 0, 0, unitA, unitA)
    kappa = ring.normalize(phi(f11_11, "kappa") - k11_11)
    k44_11 = grid.evaluate("k", 3, 3, unitB, unitB)
    f44_11 = grid.evaluate("f", 3, 3, unitB, unitB)
    theta = ring.normalize(phi_inv(k44_11, "theta") - f44_11)

    alpha = ring.zeros((dA, dM))
    for j in range(dM):
        em = ring.zeros(dM)
        em[j] = ring.one
        val = grid.evaluate("f", 0, 1, unitA, em) - phi_inv(
            grid.evaluate("k", 0, 1, unitA, em), "alpha"
        )
        alpha[:, j] = ring.normalize(val)
        need(alpha[:, j], C.z_a, "alpha-centrality")
    tau = ring.zeros((dA, dN))
    for j in range(dN):
        en = ring.zeros(dN)
        en[j] = ring.one
        val = grid.evaluate("f", 0, 2, unitA, en) - phi_inv(
            grid.evaluate("k", 0, 2, unitA, en), "tau"
        )
        tau[:, j] = ring.normalize(val)
        need(tau[:, j], C.z_a, "tau-centrality")

    a_noncomm = C.z_a.shape[0] < dA
    b_noncomm = C.z_b.shape[0] < dB
    f14 = grid.component("f", 0, 3)  # (dA, dB, dA)
    k14 = grid.component("k", 0, 3)  # (dA, dB, dB)

    gamma = ring.zeros((dA, dB))
    gamma_prime = ring.zeros((dB, dA))
    delta = ring.zeros((dA, dB, dA))

    if a_noncomm or not b_noncomm:
        side = "A" if a_noncomm else "fallback"
        QA = _algebra_quotient(ring, dA, C.z_a)
        qdim, za_dim = QA.shape[0], C.z_a.shape[0]
        # columns: Q_A(zeta_u * e_i) stacked over i
        coeff = ring.zeros((dA * qdim, za_dim))
        for u in range(za_dim):
            for i in range(dA):
                prod = ctx.A.multiply(C.z_a[u], ctx.A.basis_vector(i))
                coeff[i * qdim : (i + 1) * qdim, u] = ring.tensordot(
                    QA, prod, axes=([1], [0])
                )
        for t in range(dB):
            rhs = ring.zeros(dA * qdim)
            for i in range(dA):
                rhs[i * qdim : (i + 1) * qdim] = ring.tensordot(
                    QA, f14[i, t], axes=([1], [0])
                )
            c = solve_array(ring, coeff, rhs)
            if c is None:
                raise WitnessExtractionError("gamma-solve", "inconsistent system", report)
            gamma[:, t] = ring.tensordot(c, C.z_a, axes=([0], [0])) if za_dim else ring.zeros(dA)
            for i in range(dA):
                delta[i, t] = ring.normalize(
                    f14[i, t] - ctx.A.multiply(gamma[:, t], ctx.A.basis_vector(i))
                )
        for i in range(dA):
            dval = ring.tensordot(unitB, delta[i], axes=([0], [0]))
            gamma_prime[:, i] = ring.normalize(
                ring.tensordot(unitB, k14[i], axes=([0], [0])) - phi(dval, "gamma-prime")
            )
            need(gamma_prime[:, i], C.z_b, "gamma-prime-centrality")
    else:
        side = "B"
        QB = _algebra_quotient(ring, dB, C.z_b)
        qdim, zb_dim = QB.shape[0], C.z_b.shape[0]
        coeff = ring.zeros((dB * qdim, zb_dim))
        for u in range(zb_dim):
            for t in range(dB):
                prod = ctx.B.multiply(C.z_b[u], ctx.B.basis_vector(t))
                coeff[t * qdim : (t + 1) * qdim, u] = ring.tensordot(
                    QB, prod, axes=([1], [0])
                )
        for i in range(dA):
            rhs = ring.zeros(dB * qdim)
            for t in range(dB):
                rhs[t * qdim : (t + 1) * qdim] = ring.tensordot(
                    QB, k14[i, t], axes=([1], [0])
                )
            c = solve_array(ring, coeff, rhs)
            if c is None:
                raise WitnessExtractionError("gamma-prime-solve", "inconsistent system", report)
            gamma_prime[:, i] = (
                ring.tensordot(c, C.z_b, axes=([0], [0])) if zb_dim else ring.zeros(dB)
            )
            for t in range(dB):
                rem = ring.normalize(
                    k14[i, t] - ctx.B.multiply(gamma_prime[:, i], ctx.B.basis_vector(t))
                )
                delta[i, t] = phi_inv(rem, "delta")
        for t in range(dB):
            dval = ring.tensordot(unitA, delta[:, t], axes=([0], [0]))
            gamma[:, t] = ring.normalize(
                ring.tensordot(unitA, f14[:, t], axes=([0], [0])) - dval
            )
            need(gamma[:, t], C.z_a, "gamma-centrality")

    # the side not fixed by construction still must satisfy its relation
    for i in range(dA):
        for t in range(dB):
            resid_a = ring.normalize(
                f14[i, t] - ctx.A.multiply(gamma[:, t], ctx.A.basis_vector(i))
            )
            if row_span_coords(ring, C.z_a, resid_a) is None:
                raise WitnessExtractionError(
                    "f14-shape", "f14 - gamma(a4)a1 escapes Z(A)", report
                )
            resid_b = ring.normalize(
                k14[i, t] - ctx.B.multiply(gamma_prime[:, i], ctx.B.basis_vector(t))
            )
            if row_span_coords(ring, C.z_b, resid_b) is None:
                raise WitnessExtractionError(
                    "k14-shape", "k14 - gamma'(a1)a4 escapes Z(B)", report
                )

    epsilon = ring.normalize(theta - ring.tensordot(gamma, unitB, axes=([1], [0])))
    epsilon_prime = ring.normalize(
        kappa - ring.tensordot(gamma_prime, unitA, axes=([1], [0]))
    )
    if C.center_coords(gma.embed_diag(epsilon, epsilon_prime)) is None:
        raise WitnessExtractionError(
            "epsilon-pair", "epsilon + epsilon' is not central in G", report
        )

    xi = alpha.copy()
    eta = ring.zeros((dA, dM, dA))
    f12 = grid.component("f", 0, 1)
    for i in range(dA):
        for j in range(dM):
            eta[i, j] = ring.normalize(
                f12[i, j] - ctx.A.multiply(alpha[:, j], ctx.A.basis_vector(i))
            )
            need(eta[i, j], C.z_a, "eta-centrality")

    return ConstructiveWitness(
        kappa, theta, alpha, tau, gamma, gamma_prime, delta, xi, eta,
        epsilon, epsilon_prime, side,
    )


def witness_shape_report(grid: ComponentGrid, w: ConstructiveWitness, C: CenterData) -> dict:
    """The component shape laws, each checked exactly on all basis pairs."""
    gma = grid.gma
    ring = gma.ring
    ctx = gma.ctx
    dA, dM, dN, dB = gma.dims
    out = {}

    def basis(n, j):
        v = ring.zeros(n)
        v[j] = ring.one
        return v

    # phi applications can fall outside the projected center on degenerate
    # inputs; that simply fails the law being checked
    gp_back = [C.phi_inv_apply(w.gamma_prime[:, i]) for i in range(dA)]
    g_fwd = [C.phi_apply(w.gamma[:, t]) for t in range(dB)]

    ok = True
    for j in range(dM):  # g12(a1,a2) = (eps a1 + phi^-1(gamma'(a1))) a2
        for i in range(dA):
            if gp_back[i] is None:
                ok = False
                continue
            a1 = basis(dA, i)
            lhs = grid.evaluate("g", 0, 1, a1, basis(dM, j))
            coef = ring.normalize(ctx.A.multiply(w.epsilon, a1) + gp_back[i])
            rhs = ctx.M.act_left(coef, basis(dM, j))
            ok = ok and ring.equal(lhs, rhs)
    out["g12-shape"] = ok
    ok = True
    for j in range(dM):  # g24(a2,a4) = a2 (eps' a4 + phi(gamma(a4)))
        for t in range(dB):
            if g_fwd[t] is None:
                ok = False
                continue
            a4 = basis(dB, t)
            lhs = grid.evaluate("g", 1, 3, basis(dM, j), a4)
            coef = ring.normalize(ctx.B.multiply(w.epsilon_prime, a4) + g_fwd[t])
            rhs = ctx.M.act_right(basis(dM, j), coef)
            ok = ok and ring.equal(lhs, rhs)
    out["g24-shape"] = ok
    if dN:
        ok = True
        for i in range(dA):  # h13(a1,a3) = a3 eps a1 + gamma'(a1) a3
            a1 = basis(dA, i)
            for j in range(dN):
                a3 = basis(dN, j)
                lhs = grid.evaluate("h", 0, 2, a1, a3)
                rhs = ring.normalize(
                    ctx.N.act_right(a3, ctx.A.multiply(w.epsilon, a1))
                    + ctx.N.act_left(w.gamma_prime[:, i], a3)
                )
                ok = ok and ring.equal(lhs, rhs)
        out["h13-shape"] = ok
        ok = True
        for j in range(dN):  # h34(a3,a4) = (eps' a4 + phi(gamma(a4))) a3
            a3 = basis(dN, j)
            for t in range(dB):
                if g_fwd[t] is None:
                    ok = False
                    continue
                a4 = basis(dB, t)
                coef = ring.normalize(ctx.B.multiply(w.epsilon_prime, a4) + g_fwd[t])
                lhs = grid.evaluate("h", 2, 3, a3, a4)
                ok = ok and ring.equal(lhs, ctx.N.act_left(coef, a3))
        out["h34-shape"] = ok
        ok = True
        for j in range(dM):  # k23(a2,a3) - eps' a3 a2 central in B
            a2 = basis(dM, j)
            for t in range(dN):
                a3 = basis(dN, t)
                val = grid.evaluate("k", 1, 2, a2, a3)
                prod = ctx.pair_nm(a3, a2)
                resid = ring.normalize(val - ctx.B.multiply(w.epsilon_prime, prod))
                ok = ok and row_span_coords(ring, C.z_b, resid) is not None
        out["k23-centrality"] = ok
        ok = True
        for j in range(dM):  # f23(a2,a3) - eps a2 a3 central in A
            a2 = basis(dM, j)
            for t in range(dN):
                a3 = basis(dN, t)
                val = grid.evaluate("f", 1, 2, a2, a3)
                prod = ctx.pair_mn(a2, a3)
                resid = ring.normalize(val - ctx.A.multiply(w.epsilon, prod))
                ok = ok and row_span_coords(ring, C.z_a, resid) is not None
        out["f23-centrality"] = ok
    # f22 + k22 and f33 + k33 land in Z(G)  (checked as polarized pairs)
    for (kind_pair, name, n) in ((1, "f22k22-central", dM), (2, "f33k33-central", dN)):
        ok = True
        for i in range(n):
            for j in range(i, n):
                ea, eb = basis(n, i), basis(n, j)
                fa = grid.evaluate("f", kind_pair, kind_pair, ea, eb)
                fb = grid.evaluate("f", kind_pair, kind_pair, eb, ea)
                ka = grid.evaluate("k", kind_pair, kind_pair, ea, eb)
                kb = grid.evaluate("k", kind_pair, kind_pair, eb, ea)
                pair = gma.embed_diag(ring.normalize(fa + fb), ring.normalize(ka + kb))
                ok = ok and C.center_coords(pair) is not None
        out[name] = ok
    out["g-pattern"] = grid.pattern_violation is None or grid.pattern_violation[0] != "g"
    out["h-pattern"] = grid.pattern_violation is None or grid.pattern_violation[0] != "h"
    return out


@dataclass(eq=False)
class ConstructiveDecomposition:
    status: str  # "ok" | "violation-candidate"
    form: ProperTraceForm | None
    witness: ConstructiveWitness | None
    shape_report: dict | None
    violation: dict | None  # stage/details when status != ok
    route: str
    report: object


def decompose_trace_constructive(
    q: BilinearMapRep, gma: GMA, C: CenterData | None = None, report=None
) -> ConstructiveDecomposition:
    """Assemble (z, mu, nu) from the constructive witness.

    nu is defined as the remainder T_q - z x^2 - mu(x) x and must come out
    central-valued coefficientwise; if it does not, the instance (which
    passed every earlier check) is handed back as a violation candidate
    with the offending pair attached — never silently accepted.
    """
    ring = gma.ring
    if C is None:
        C = gma.center
    ok, wit = is_centralizing_trace(gma, q)
    if not ok:
        raise PredicateNotSatisfied("trace is not centralizing", witness=wit)
    if report is None:
        report = hypothesis_report(gma)
    grid = extract_components(q, gma, centralizing=True)
    w = extract_constructive_witness(q, gma, C, grid, report)
    ctx = gma.ctx
    dA, dM, dN, dB = gma.dims
    d = gma.dim

    z_vec = gma.embed_diag(w.epsilon, w.epsilon_prime)
    z_coords = C.center_coords(z_vec)

    mu_mat = ring.zeros((C.zdim, d))
    for col in range(d):
        a1, a2, a3, a4 = gma.blocks(gma.basis_vector(col))
        ga = ring.tensordot(w.gamma, a4, axes=([1], [0]))
        al = ring.tensordot(w.alpha, a2, axes=([1], [0]))
        ta = ring.tensordot(w.tau, a3, axes=([1], [0])) if dN else ring.zeros(dA)
        gp = ring.tensordot(w.gamma_prime, a1, axes=([1], [0]))
        gp_back = C.phi_inv_apply(gp)
        fwd = C.phi_apply(ring.normalize(ga + al + ta))
        if gp_back is None or fwd is None:
            raise WitnessExtractionError(
                "mu-assembly", "witness value outside the projected center", report
            )
        a_part = ring.normalize(gp_back + ga + al + ta)
        b_part = ring.normalize(gp + fwd)
        coords = C.center_coords(gma.embed_diag(a_part, b_part))
        if coords is None:
            raise WitnessExtractionError("mu-assembly", "mu value not central", report)
        mu_mat[:, col] = coords

    # nu := T_q - z x^2 - mu(x) x, coefficientwise
    pairs = pair_index_order(d)
    vals = _pair_values(gma, q)
    nu = ring.zeros((d, d, C.zdim))
    half = ring.half
    shape_report = witness_shape_report(grid, w, C)
    for n, (i, j) in enumerate(pairs):
        ei, ej = gma.basis_vector(i), gma.basis_vector(j)
        if i == j:
            w_prod = gma.square(ei)
        else:
            w_prod = ring.normalize(gma.multiply(ei, ej) + gma.multiply(ej, ei))
        mui = C.expand(mu_mat[:, i])
        resid = vals[n] - gma.multiply(z_vec, w_prod) - gma.multiply(mui, ej)
        if i != j:
            resid = resid - gma.multiply(C.expand(mu_mat[:, j]), ei)
        resid = ring.normalize(resid)
        coords = C.center_coords(resid)
        if coords is None:
            return ConstructiveDecomposition(
                "violation-candidate",
                None,
                w,
                shape_report,
                {
                    "stage": "nu-centrality",
                    "pair": (i, j),
                    "residual": resid.tolist(),
                    "q": q.tensor.tolist(),
                },
                report.route,
                report,
            )
        if i == j:
            nu[i, i] = coords
        else:
            nu[i, j] = ring.normalize(coords * half)
            nu[j, i] = nu[i, j]
    form = ProperTraceForm(z_coords, mu_mat, nu)
    if not form.matches(gma, q):
        raise ExactError("constructive form failed reconstruction (internal)")
    return ConstructiveDecomposition(
        "ok", form, w, shape_report, None, report.route, report
    )


# ---------------------------------------------------------------------------
# Lie triple isomorphism splitting
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class LieTripleDecomposition:
    status: str  # "ok" | "failed" | "ambiguous"
    lam: int | None
    m: LinearMapRep | None
    n: LinearMapRep | None
    mu1: np.ndarray | None  # (zdim', dim') center coords of mu_1
    nu1: np.ndarray | None  # (dim', dim', zdim')
    checks: dict
    report: object
    detail: str = ""


def decompose_lie_triple_iso(l: LinearMapRep, src: GMA, dst: GMA) -> LieTripleDecomposition:
    """Split an invertible second-commutator-preserving map as l = lam*m + n.

    Pipeline: pull the product of src through l to the bilinear map
    q(y, z) = l(l^-1(y) l^-1(z)) on dst; its trace must be centralizing;
    for each sign solve T_q(y) = lam*y^2 + mu1(y)y + nu1(y) with mu1, nu1
    valued in Z(dst); exactly one consistent sign is expected (two is an
    ambiguity worth reporting, zero a failure), and m = lam*l + mu/2 must
    then be a Jordan homomorphism with the usual side conditions.
    """
    ring = dst.ring
    if l.matrix.shape != (dst.dim, src.dim):
        raise MapError("map shape does not match the algebras")
    linv = inverse_array(ring, l.matrix)
    if linv is None:
        raise MapError("the map is not invertible")
    ok, wit = is_lie_triple_hom(src, dst, l)
    if not ok:
        raise PredicateNotSatisfied("map does not preserve second commutators", witness=wit)

    report = hypothesis_report(dst)
    C = dst.center
    d = dst.dim
    # q[i, j, :] = l(l^-1(e_i) l^-1(e_j))
    t = ring.tensordot(linv, dst.mul, axes=([0], [0]))
    t = ring.tensordot(linv, t, axes=([0], [1]))
    t = np.transpose(t, (1, 0, 2))
    qt = ring.tensordot(t, l.matrix, axes=([2], [1]))
    q = BilinearMapRep(ring, qt)
    checks = {}
    cent_ok, cent_wit = is_centralizing_trace(dst, q)
    checks["trace-centralizing"] = cent_ok
    if not cent_ok:
        return LieTripleDecomposition(
            "failed", None, None, None, None, None, checks, report,
            "pulled-back square map is not centralizing",
        )

    system = build_generic_system(dst)
    zdim = C.zdim
    fixed_cols = system.matrix[:, zdim:]
    z_cols = system.matrix[:, :zdim]
    vals = _pair_values(dst, q).reshape(system.matrix.shape[0])
    unit_coords = C.center_coords(dst.unit)
    solutions = {}
    for lam in (1, -1):
        if unit_coords is None:
            break
        rhs = ring.normalize(
            vals - ring.tensordot(z_cols, unit_coords * ring.coerce(lam), axes=([1], [0]))
        )
        sol = solve_array(ring, fixed_cols, rhs)
        if sol is not None:
            solutions[lam] = sol
    checks["plus-consistent"] = 1 in solutions
    checks["minus-consistent"] = -1 in solutions
    if not solutions:
        return LieTripleDecomposition(
            "failed", None, None, None, None, None, checks, report,
            "no sign admits central (mu1, nu1)",
        )
    if len(solutions) == 2:
        return LieTripleDecomposition(
            "ambiguous", None, None, None, None, None, checks, report,
            "both signs admit central (mu1, nu1); "
            "uniqueness of the sign fails on this instance",
        )
    lam = next(iter(solutions))
    sol = solutions[lam]
    # unpack mu1 (center coords per basis vector of dst) and nu1
    mu1 = ring.zeros((zdim, d))
    for i in range(d):
        mu1[:, i] = sol[zdim * i : zdim * (i + 1)]
    pairs = pair_index_order(d)
    nu1 = ring.zeros((d, d, zdim))
    half = ring.half
    for n_idx, (i, j) in enumerate(pairs):
        v = sol[zdim * (d + n_idx) : zdim * (d + n_idx + 1)]
        if i == j:
            nu1[i, i] = v
        else:
            nu1[i, j] = ring.normalize(v * half)
            nu1[j, i] = nu1[i, j]

    # mu = mu1 . l   (as a map into dst coordinates), m = lam*l + mu/2
    mu_center = ring.tensordot(mu1, l.matrix, axes=([1], [0]))  # (zdim, dim src)
    mu_mat = ring.tensordot(C.z_g.T, mu_center, axes=([1], [0]))  # (dim', dim src)
    lam_c = ring.coerce(lam)
    m_mat = ring.normalize(l.matrix * lam_c + mu_mat * half)
    n_mat = ring.normalize(l.matrix - m_mat * lam_c)
    m = LinearMapRep(ring, m_mat)
    n = LinearMapRep(ring, n_mat)

    jordan_ok, _ = is_jordan_hom(src, dst, m)
    checks["m-jordan"] = jordan_ok
    checks["m-injective"] = m.is_injective()
    n_central = all(
        C.center_coords(n_mat[:, i]) is not None for i in range(src.dim)
    )
    checks["n-central"] = n_central
    nvan, _ = vanishes_on_second_commutators(src, n)
    checks["n-kills-second-commutators"] = nvan
    checks["splitting-identity"] = ring.equal(
        ring.normalize(m_mat * lam_c + n_mat), l.matrix
    )
    if report.central_over_R:
        checks["m-unit-to-unit"] = ring.equal(m.apply(src.unit), dst.unit)
        checks["m-surjective"] = m.is_surjective()
    # the two sign-consistency entries are bookkeeping, not pass conditions
    required = [k for k in checks if k not in ("plus-consistent", "minus-consistent")]
    status = "ok" if all(checks[k] for k in required) else "failed"
    return LieTripleDecomposition(
        status, lam, m, n, mu1, nu1, checks, report,
        "" if status == "ok" else "a side condition failed",
    )


# ---------------------------------------------------------------------------
# seeded generators
# ---------------------------------------------------------------------------


def random_proper_trace(gma: GMA, C: CenterData | None, seed: int) -> BilinearMapRep:
    """q(x,y) = z(xy+yx)/2 + (mu(x)y + mu(y)x)/2 + nu_b(x,y) with z central
    and mu, nu_b center-valued, drawn from the seeded stream.  Its trace is
    z x^2 + mu(x) x + nu_b(x,x) — proper by construction, hence commuting."""
    ring, d = gma.ring, gma.dim
    if C is None:
        C = gma.center
    stream = XorShift64Star(seed)
    zdim = C.zdim
    z = ring.array([ring.random_scalar(stream) for _ in range(zdim)])
    z_vec = C.expand(z)
    MU = ring.zeros((d, d))  # rows: mu(e_i) in G coords
    for i in range(d):
        MU[i] = C.expand(ring.array([ring.random_scalar(stream) for _ in range(zdim)]))
    half = ring.half
    sym = ring.normalize(gma.mul + np.transpose(gma.mul, (1, 0, 2)))
    Lz = gma.left_mult_matrix(z_vec)
    q1 = ring.normalize(ring.tensordot(sym, Lz, axes=([2], [1])) * half)
    P = ring.tensordot(MU, gma.mul, axes=([1], [0]))  # [i, j, r] = (mu(e_i) e_j)_r
    q2 = ring.normalize((P + np.transpose(P, (1, 0, 2))) * half)
    q3 = ring.zeros((d, d, d))
    for i in range(d):
        for j in range(i, d):
            v = C.expand(ring.array([ring.random_scalar(stream) for _ in range(zdim)]))
            q3[i, j] = v
            q3[j, i] = v
    return BilinearMapRep(ring, ring.normalize(q1 + q2 + q3))


def _matrix_meta(gma: GMA):
    meta = gma.ctx.meta
    if meta.get("builder") != "full_matrix":
        raise MapError("this generator needs a full-matrix split instance")
    return meta["n"]


def random_lie_triple_iso(gma: GMA, seed: int, shape: str = "conjugation") -> LinearMapRep:
    """Seeded Lie triple isomorphisms on full-matrix split instances.

    shapes: "conjugation" (x -> uxu^-1), "neg-antiauto" (x -> -x^T),
    "central-shift" (x -> uxu^-1 + trace(x)I; bijective since 1 + n != 0).
    The emitted map is verified invertible and second-commutator-preserving.
    """
    from .structure import full_matrix_positions

    ring, d = gma.ring, gma.dim
    n = _matrix_meta(gma)
    positions = full_matrix_positions(n, gma.ctx.meta["k"])
    stream = XorShift64Star(seed)

    def to_matrix(v):
        X = ring.zeros((n, n))
        for idx, (r, c) in enumerate(positions):
            X[r, c] = v[idx]
        return X

    def to_coords(X):
        v = ring.zeros(d)
        for idx, (r, c) in enumerate(positions):
            v[idx] = X[r, c]
        return v

    if shape == "neg-antiauto":
        cols = [to_coords(ring.normalize(-to_matrix(gma.basis_vector(i)).T)) for i in range(d)]
        mat = np.stack(cols, axis=1) if ring.is_prime_field else _object_stack(ring, cols)
    elif shape in ("conjugation", "central-shift"):
        U = None
        for _ in range(64):
            cand = ring.array(
                [[ring.random_scalar(stream) for _ in range(n)] for _ in range(n)]
            )
            if inverse_array(ring, cand) is not None:
                U = cand
                break
        if U is None:
            raise ExactError("no invertible conjugator found in 64 draws")
        Uinv = inverse_array(ring, U)
        if shape == "central-shift" and ring.is_zero(
            ring.normalize(ring.coerce(1) + ring.coerce(n) * ring.one)
        ):
            raise ExactError("1 + n vanishes; the shifted map would be singular")
        cols = []
        for i in range(d):
            X = to_matrix(gma.basis_vector(i))
            Y = ring.tensordot(ring.tensordot(U, X, axes=([1], [0])), Uinv, axes=([1], [0]))
            if shape == "central-shift":
                tr = sum(X[r, r] for r in range(n))
                Y = ring.normalize(Y + ring.eye(n) * tr)
            cols.append(to_coords(ring.normalize(Y)))
        mat = np.stack(cols, axis=1) if ring.is_prime_field else _object_stack(ring, cols)
    else:
        raise MapError(f"unknown shape {shape!r}")
    l = LinearMapRep(ring, mat)
    if inverse_array(ring, l.matrix) is None:
        raise ExactError("generated map is singular (internal)")
    ok, wit = is_lie_triple_hom(gma, gma, l)
    if not ok:
        raise ExactError("generated map fails the second-commutator predicate (internal)")
    return l


def _object_stack(ring, cols):
    out = ring.zeros((cols[0].shape[0], len(cols)))
    for i, c in enumerate(cols):
        out[:, i] = c
    return out
