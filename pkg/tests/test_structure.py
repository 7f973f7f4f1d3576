"""Morita contexts, their axiom battery, the block assembly, and every
builder.  The block-product conventions here are load-bearing for all
later modules, so most checks are structural identities rather than
frozen numbers."""

import numpy as np
import pytest

from gmalg.exact import RATIONAL, inverse_array, prime_field, rank_array
from gmalg.rng import XorShift64Star
from gmalg.structure import (
    AxiomError,
    MoritaContext,
    assemble_gma,
    build_diagonal_pair,
    build_full_matrix,
    build_inflated,
    build_peirce,
    build_upper_triangular,
    check_morita_axioms,
    full_matrix_positions,
    make_matrix_algebra,
    make_triangular_algebra,
)

F5 = prime_field(5)


def random_vec(ring, d, stream):
    return ring.array([ring.random_scalar(stream) for _ in range(d)])


# ---------------------------------------------------------------------------
# algebra specs
# ---------------------------------------------------------------------------


def test_matrix_algebra_units():
    alg = make_matrix_algebra(2, F5)
    assert alg.dim == 4
    alg.validate()
    # E_rc basis is row-major: E00 E01 E10 E11; E01 * E10 = E00
    e01 = alg.basis_vector(1)
    e10 = alg.basis_vector(2)
    assert F5.equal(alg.multiply(e01, e10), alg.basis_vector(0))
    assert F5.is_zero(alg.multiply(e01, e01))


def test_triangular_algebra_is_closed():
    alg = make_triangular_algebra(3, F5)
    assert alg.dim == 6
    alg.validate()


def test_validate_catches_broken_mul():
    alg = make_matrix_algebra(2, F5)
    bad = alg.mul.copy()
    bad[1, 2, 0] = 3  # E01*E10 now wrong
    broken = type(alg)(alg.ring, alg.dim, bad, alg.unit, alg.labels)
    with pytest.raises(AxiomError):
        broken.validate()


# ---------------------------------------------------------------------------
# builders and the axiom battery
# ---------------------------------------------------------------------------


def test_full_matrix_split_dimensions():
    ctx = build_full_matrix(3, 1, F5)
    assert (ctx.A.dim, ctx.M.dim, ctx.N.dim, ctx.B.dim) == (1, 2, 2, 4)
    rep = check_morita_axioms(ctx)
    assert rep.ok
    assert str(rep) == "morita axioms: pass"
    assert ctx.meta["builder"] == "full_matrix"
    assert ctx.meta["prime_certified"]


def test_full_matrix_positions_give_matrix_units():
    ctx = build_full_matrix(3, 1, F5)
    gma = assemble_gma(ctx)
    pos = full_matrix_positions(3, 1)
    assert len(pos) == 9
    coord_of = {rc: i for i, rc in enumerate(pos)}
    # E_uv E_wz = [v == w] E_uz, through the coordinate embedding
    for (u, v) in pos:
        for (w, z) in pos:
            prod = gma.multiply(
                gma.basis_vector(coord_of[(u, v)]), gma.basis_vector(coord_of[(w, z)])
            )
            if v == w:
                assert F5.equal(prod, gma.basis_vector(coord_of[(u, z)]))
            else:
                assert F5.is_zero(prod)


def test_upper_triangular_has_zero_lower_block():
    ctx = build_upper_triangular(3, 1, F5)
    assert ctx.N.dim == 0
    assert check_morita_axioms(ctx).ok
    gma = assemble_gma(ctx)
    assert gma.dim == 6


def test_diagonal_pair_componentwise_structure():
    ctx = build_diagonal_pair(F5)
    assert (ctx.A.dim, ctx.B.dim) == (2, 2)
    # everything is coordinatewise: pair(e_i, e_j) = delta_ij e_i
    assert F5.equal(ctx.pair_mn(F5.array([1, 0]), F5.array([1, 0])), F5.array([1, 0]))
    assert F5.is_zero(ctx.pair_mn(F5.array([1, 0]), F5.array([0, 1])))
    assert check_morita_axioms(ctx).ok
    # the canonical annihilating sandwich: (1,0) * m * (0,1) = 0 for every m
    a, b = F5.array([1, 0]), F5.array([0, 1])
    for j in range(2):
        m = F5.zeros(2)
        m[j] = F5.one
        assert F5.is_zero(ctx.M.act_right(ctx.M.act_left(a, m), b))


def test_inflated_gamma_identity_only_works_in_dim_one():
    ok1 = check_morita_axioms(build_inflated(F5, 1, F5.eye(1)))
    assert ok1.ok
    # gamma(v, w) u must equal gamma(w, u) v; the identity form breaks this
    # as soon as there are two independent vectors
    bad = check_morita_axioms(build_inflated(F5, 2, F5.eye(2)))
    assert not bad.ok
    assert bad.failure.startswith("diagram")
    # the zero form always satisfies the compatibility (trivially)
    ok2 = check_morita_axioms(build_inflated(F5, 2, F5.zeros((2, 2))))
    assert ok2.ok


def test_doubled_pairing_fails_with_pinned_witness():
    ctx = build_full_matrix(2, 1, F5)
    broken = MoritaContext(
        ctx.A,
        ctx.B,
        ctx.M,
        ctx.N,
        F5.normalize(ctx.pairing_MN * F5.coerce(2)),
        ctx.pairing_NM,
        dict(ctx.meta),
    )
    rep = check_morita_axioms(broken)
    assert not rep.ok
    assert rep.failure == "diagram.MN-M"
    assert rep.indices == (0, 0, 0, 0)
    assert str(rep) == "morita axioms: FAIL [diagram.MN-M] at indices (0, 0, 0, 0)"
    with pytest.raises(AxiomError):
        assemble_gma(broken)


def test_peirce_splitting_of_m2():
    alg = make_matrix_algebra(2, F5)
    # e = E00 + E01 is a non-diagonal idempotent
    e = F5.array([1, 1, 0, 0])
    assert F5.equal(alg.multiply(e, e), e)
    ctx, cert = build_peirce(alg, e)
    assert check_morita_axioms(ctx).ok
    gma = assemble_gma(ctx)
    assert gma.dim == alg.dim
    # cert column j holds GMA coordinate j in algebra coordinates, and the
    # identification must be multiplicative
    assert inverse_array(F5, cert) is not None

    def to_alg(v):
        return F5.tensordot(cert, v, axes=([1], [0]))

    stream = XorShift64Star(11)
    for _ in range(10):
        x = random_vec(F5, gma.dim, stream)
        y = random_vec(F5, gma.dim, stream)
        assert F5.equal(to_alg(gma.multiply(x, y)), alg.multiply(to_alg(x), to_alg(y)))


def test_peirce_rejects_non_idempotent():
    alg = make_matrix_algebra(2, F5)
    with pytest.raises(AxiomError):
        build_peirce(alg, F5.array([1, 1, 1, 1]))


# ---------------------------------------------------------------------------
# the assembled algebra
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def gma_t3():
    return assemble_gma(build_upper_triangular(3, 1, F5))


def test_unit_laws(gma_t3):
    g = gma_t3
    for i in range(g.dim):
        e = g.basis_vector(i)
        assert F5.equal(g.multiply(g.unit, e), e)
        assert F5.equal(g.multiply(e, g.unit), e)


def test_associativity_on_random_triples(gma_t3):
    g = gma_t3
    stream = XorShift64Star(5)
    for _ in range(20):
        x, y, z = (random_vec(F5, g.dim, stream) for _ in range(3))
        assert F5.equal(g.multiply(g.multiply(x, y), z), g.multiply(x, g.multiply(y, z)))


def test_block_product_formula(m4):
    """(a|m|n|b)(a'|m'|n'|b') expands blockwise through the context."""
    g = m4
    c = g.ctx
    stream = XorShift64Star(17)
    for _ in range(10):
        x = random_vec(F5, g.dim, stream)
        y = random_vec(F5, g.dim, stream)
        a, m, n, b = g.blocks(x)
        a2, m2, n2, b2 = g.blocks(y)
        pa, pm, pn, pb = g.blocks(g.multiply(x, y))
        assert F5.equal(pa, c.A.multiply(a, a2) + c.pair_mn(m, n2))
        assert F5.equal(pm, c.M.act_left(a, m2) + c.M.act_right(m, b2))
        assert F5.equal(pn, c.N.act_right(n, a2) + c.N.act_left(b, n2))
        assert F5.equal(pb, c.B.multiply(b, b2) + c.pair_nm(n, m2))


def test_embed_blocks_roundtrip(gma_t3):
    g = gma_t3
    stream = XorShift64Star(23)
    x = random_vec(F5, g.dim, stream)
    a, m, n, b = g.blocks(x)
    rebuilt = g.embed(0, a) + g.embed(1, m) + g.embed(2, n) + g.embed(3, b)
    assert F5.equal(F5.normalize(rebuilt), x)
    duo = g.embed_diag(a, b)
    assert F5.equal(g.blocks(duo)[0], a)
    assert F5.equal(g.blocks(duo)[3], b)


def test_cross_diagonal_products_vanish(m4):
    # a*b = 0 inside G for pure corner elements
    g = m4
    a = g.embed(0, g.ctx.A.unit)
    b = g.embed(3, g.ctx.B.unit)
    assert F5.is_zero(g.multiply(a, b))
    assert F5.is_zero(g.multiply(b, a))


def test_commutator_and_jordan_helpers(m3):
    g = m3
    stream = XorShift64Star(29)
    x = random_vec(F5, g.dim, stream)
    y = random_vec(F5, g.dim, stream)
    assert F5.equal(g.commutator(x, y), g.multiply(x, y) - g.multiply(y, x))
    assert F5.equal(g.jordan(x, y), g.multiply(x, y) + g.multiply(y, x))
    assert F5.equal(g.square(x), g.multiply(x, x))


def test_rational_lane_builders():
    for ctx in (
        build_full_matrix(2, 1, RATIONAL),
        build_upper_triangular(2, 1, RATIONAL),
        build_inflated(RATIONAL, 1, RATIONAL.eye(1)),
    ):
        assert check_morita_axioms(ctx).ok
        g = assemble_gma(ctx)
        assert RATIONAL.equal(g.multiply(g.unit, g.unit), g.unit)
