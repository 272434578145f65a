import random

import pytest
from hypothesis import given, settings, strategies as st

from fernlab import exactlinalg as xl, hodgeflag, parabolic as P, weyl
from fernlab.errors import BadSubset, NoWitness, Singular, SizeGuard, ValidationError
from fernlab.exactlinalg import Matrix
from fernlab.weyl import BlockShape


def w0(n):
    return Matrix.permutation(weyl.longest(n))


def test_standard_dims():
    assert P.standard_subalgebra(3, "borel").dim == 6
    assert P.standard_subalgebra(4, "nilradical", (1, 1, 2)).dim == 5
    assert P.standard_subalgebra(4, "tau", (1, 1, 2)).dim == 8
    p = P.standard_subalgebra(3, "parabolic", (1, 2))
    nbar = P.ad_conj(w0(3), P.standard_subalgebra(3, "nilradical", (2, 1)))
    assert p.dim == 7 == 9 - nbar.dim


def test_subset_and_composition_agree():
    for kind in P.KINDS:
        assert P.standard_subalgebra(4, kind, frozenset({3})).space == \
            P.standard_subalgebra(4, kind, (1, 1, 2)).space


def test_decompositions():
    n, r = 5, (2, 1, 2)
    sub = lambda kind: P.standard_subalgebra(n, kind, r).space
    assert xl.subspace_sum(sub("levi_center"), sub("parabolic_traceless")) == sub("parabolic")
    assert xl.intersect(sub("levi_center"), sub("parabolic_traceless")).dim == 0
    assert xl.subspace_sum(sub("levi_center"), sub("levi_traceless")) == sub("levi")
    assert sub("levi_center").dim == 3
    assert P.standard_subalgebra(3, "tau", (1, 1, 1)).space == P.standard_subalgebra(3, "borel").space


def test_bad_subset():
    with pytest.raises(BadSubset):
        P.standard_subalgebra(3, "parabolic", frozenset({3}))
    with pytest.raises(ValidationError):
        P.standard_subalgebra(3, "weird")


def test_ad_conj_examples(rng):
    b = P.standard_subalgebra(4, "borel")
    assert P.ad_conj(Matrix.identity(4), b).space == b.space
    assert P.ad_conj(w0(4), b).space == P.standard_subalgebra(4, "opposite_borel").space
    g = hodgeflag.random_unit_upper(4, rng) @ w0(4)
    V = P.standard_subalgebra(4, "tau", (2, 2))
    assert P.ad_conj(g, V).dim == V.dim
    with pytest.raises(Singular):
        P.ad_conj(Matrix.zeros(4, 4), b)


def test_envelope_all_singletons_is_borel_image(rng):
    for n in (2, 3, 4):
        shape = BlockShape((1,) * n)
        for _ in range(3):
            g = Matrix.from_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
            if not g.is_invertible():
                continue
            env = P.envelope(g, shape, "circ")
            assert env.space == P.borel_image(g).space and env.dim == n * (n + 1) // 2


def test_envelope_22_range(rng):
    shape = BlockShape((2, 2))
    for _ in range(5):
        g, _ = hodgeflag.sample_generic_g(shape, rng)
        assert 2 <= P.envelope_dim(g, shape, "circ") <= 10


def test_envelope_guard_and_kind():
    with pytest.raises(SizeGuard):
        P.envelope(Matrix.identity(9), BlockShape((1,) * 9))
    with pytest.raises(ValidationError):
        P.envelope(Matrix.identity(2), BlockShape((1, 1)), "other")


def _brute_envelope(g, shape, kind):
    target = P.borel_image(g).space
    acc = xl.zero_space(shape.n ** 2)
    for u in weyl.enumerate_weyl(shape.s):
        acc = xl.subspace_sum(acc, xl.intersect(P.refinement_subalgebra(shape, u, kind).space, target))
    return acc


@pytest.mark.parametrize("r", [(1, 2), (2, 2), (1, 1, 2), (2, 1, 1)])
def test_envelope_matches_direct_intersection(r, rng):
    shape = BlockShape(r)
    g = Matrix.from_rows([[rng.randint(-3, 3) for _ in range(shape.n)] for _ in range(shape.n)])
    while not g.is_invertible():
        g = Matrix.from_rows([[rng.randint(-3, 3) for _ in range(shape.n)] for _ in range(shape.n)])
    assert P.envelope(g, shape, "circ").space == _brute_envelope(g, shape, "tau")
    assert P.envelope(g, shape, "full").space == _brute_envelope(g, shape, "parabolic")


@settings(max_examples=15)
@given(st.sampled_from([(1, 1), (1, 2), (2, 1), (2, 2), (1, 1, 2), (1, 2, 1)]),
       st.lists(st.integers(-3, 3), min_size=16, max_size=16),
       st.lists(st.integers(-3, 3), min_size=16, max_size=16))
def test_envelope_chain_and_borel_invariance(r, entries, upper):
    shape = BlockShape(r)
    n = shape.n
    g = Matrix.from_rows([entries[a * n:(a + 1) * n] for a in range(n)])
    if not g.is_invertible():
        return
    circ, full = P.envelope(g, shape, "circ"), P.envelope(g, shape, "full")
    target = P.borel_image(g)
    assert xl.compare(circ.space, full.space) in (xl.EQUAL, xl.A_IN_B)
    assert xl.compare(full.space, target.space) in (xl.EQUAL, xl.A_IN_B)
    bp = Matrix.from_rows([[(1 if a == c else upper[a * n + c] if c > a else 0) for c in range(n)]
                           for a in range(n)])
    gb = g @ bp
    assert P.borel_image(gb).space == target.space
    assert P.envelope(gb, shape, "circ").dim == circ.dim


def test_summand_dims_examples(rng):
    shape = BlockShape((1, 1, 1))
    g, _ = hodgeflag.sample_generic_g(shape, rng)
    assert all(rep.tau_dim == 3 for rep in P.summand_dims(g, shape))
    shape = BlockShape((2, 2))
    g, _ = hodgeflag.sample_generic_g(shape, rng)
    assert all((rep.tau_dim, rep.p_dim) == (2, 6) for rep in P.summand_dims(g, shape))
    # standard-position g = w_0: the u = 1 summand is z ∩ lower Borel = z
    first = P.summand_dims(w0(4), BlockShape((1, 1, 2)))[0]
    assert first.u == (1, 2, 3) and first.tau_dim == 3
    # g = 1: Ad_g(b) = b already contains tau, so the summand is all of tau
    ident = P.summand_dims(Matrix.identity(4), BlockShape((1, 1, 2)))[0]
    assert ident.tau_dim == P.standard_subalgebra(4, "tau", (1, 1, 2)).dim == 8


def test_fern_witness_trivial():
    wit = P.fern_witness(2, 1, Matrix.identity(2), BlockShape((1, 1)))
    assert wit.u == (2, 1) and wit.coefficients == (0,)
    assert wit.matrix == Matrix.elementary(2, 2, 1)


def test_fern_witness_membership(rng):
    shape = BlockShape((1, 1, 1))
    b = hodgeflag.random_unit_upper(3, rng)
    wit = P.fern_witness(3, 1, b, shape)
    target = P.ad_conj(b.inverse() @ P.refinement_matrix(shape, wit.u),
                       P.standard_subalgebra(3, "parabolic", weyl.block_data(shape, wit.u)[1]))
    assert target.contains(wit.matrix)
    row = wit.matrix.row(2)
    assert row[0] == 1
    assert all(wit.matrix[a, c] == 0 for a in range(3) for c in range(3) if a != 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_fern_witnesses_span_lower_part(n, rng):
    shape = BlockShape((1,) * n)
    b = hodgeflag.random_unit_upper(n, rng)
    rep = P.fern_check(b, shape)
    assert not rep.missing and rep.holds and rep.witnesses_in_envelope
    diag = xl.coordinate_span([a * n + a for a in range(n)], n * n)
    lower = P.standard_subalgebra(n, "opposite_borel").space
    wspan = xl.span([w.matrix.flatten() for w in rep.witnesses], n * n)
    assert xl.subspace_sum(wspan, diag) == lower


def test_fern_witness_gap_is_structural(rng):
    shape = BlockShape((2, 2))
    for _ in range(3):
        with pytest.raises(NoWitness):
            P.fern_witness(3, 2, hodgeflag.random_unit_upper(4, rng), shape)


def test_fern_witness_rejects_non_triangular():
    with pytest.raises(NoWitness):
        P.fern_witness(2, 1, Matrix.from_rows([[1, 0], [1, 1]]), BlockShape((1, 1)))
