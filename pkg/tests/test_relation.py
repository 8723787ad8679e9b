import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import E, exact_matrices, to_sympy
from linrel import numkernel as nk
from linrel import relation as rel
from linrel.genrel import GenConfig, random_positive, random_relation
from linrel.numkernel import EXACT, FLOAT
from linrel.relation import Coset, DimensionMismatch, from_pairs, graph_of, multivalued_rel
from linrel.subspace import Subspace, span_of

NIL = [[0, 1], [0, 0]]
seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 4)


def both(T):
    return [T, T.to_backend(FLOAT)]


def e(*v):
    return E(list(v))


# frozen examples


def test_graph_carrier_example():
    T = graph_of(E(NIL))
    expected = span_of(E([[1, 0], [0, 1], [0, 1], [0, 0]]))
    assert T.carrier == expected


def test_from_pairs_example():
    T = from_pairs([(e(1, 0), e(1, 0))], 2)
    assert T.dim == 1 and rel.dom(T) == span_of(E([[1], [0]]))


@pytest.mark.parametrize("backend", [EXACT, FLOAT])
def test_nilpotent_ker_ran(backend):
    T = graph_of(E(NIL), backend=backend)
    e1 = span_of(nk.to_backend(E([[1], [0]]), backend))
    assert rel.ker(T) == e1 and rel.ran(T) == e1


def test_image_at_example():
    T = from_pairs([(e(1, 0), e(1, 0)), (e(0, 0), e(0, 1))], 2)
    c = rel.image_at(T, e(1, 0))
    assert c == Coset(e(1, 0), span_of(E([[0], [1]])))
    assert c.contains(e(1, 5)) and not c.contains(e(0, 1))
    assert rel.image_at(T, e(0, 1)) is None
    cf = rel.image_at(T.to_backend(FLOAT), np.array([1, 0], dtype=complex))
    assert np.allclose(cf.representative, [1, 0])


@pytest.mark.parametrize("backend", [EXACT, FLOAT])
def test_adjoint_examples(backend):
    D = graph_of(E([[1, 0], [0, 2]]), backend=backend)
    assert rel.adjoint(D) == D
    mv = multivalued_rel(Subspace.full(2, backend))
    assert rel.adjoint(mv) == mv


def test_rel_sum_examples():
    T = graph_of(E(NIL))
    Z = rel.zero_rel(2)
    assert rel.rel_sum(T, Z) == multivalued_rel(rel.mul(T))
    mv = multivalued_rel(Subspace.full(2))
    assert rel.rel_sum(rel.identity_rel(2), mv) == mv
    assert rel.plus_identity(mv) == mv and rel.ran(rel.plus_identity(mv)).is_full


def test_compose_with_zero_relation():
    T = graph_of(E(NIL))
    assert rel.compose(T, rel.zero_rel(2)) == rel.zero_rel(2)
    mv = multivalued_rel(Subspace.full(2))
    assert rel.compose(mv, rel.zero_rel(2)) == mv


def test_inverse_examples():
    assert rel.inverse(graph_of(E([[2, 0], [0, 4]]))) == graph_of(E([["1/2", 0], [0, "1/4"]]))
    inv = rel.inverse(graph_of(E(NIL)))
    e1 = span_of(E([[1], [0]]))
    assert rel.dom(inv) == e1 and rel.mul(inv) == e1


@pytest.mark.parametrize("backend", [EXACT, FLOAT])
def test_nilpotent_meets_adjoint_trivially(backend):
    T = graph_of(E(NIL), backend=backend)
    assert rel.intersect_rel(T, rel.adjoint(T)).dim == 0


@pytest.mark.parametrize("backend", [EXACT, FLOAT])
def test_classify_examples(backend):
    mv = multivalued_rel(Subspace.full(2, backend))
    c = rel.classify(mv)
    assert (c["self_adjoint"], c["positive"], c["single_valued"], c["densely_defined"]) == (True, True, False, False)
    c = rel.classify(graph_of(E(NIL), backend=backend))
    assert not (c["symmetric"] or c["self_adjoint"] or c["positive"])
    assert c["single_valued"] and c["densely_defined"]


def test_pair_inner_example():
    p = (e(1, 0), e(0, 1))
    assert rel.pair_inner(p, p) == 2
    i = nk.as_exact(np.array([1j, 0]))
    # conjugate-linear in the second slot
    assert rel.pair_inner((i, e(0, 0)), (e(1, 0), e(0, 0))) == nk.as_exact(np.array([1j]))[0]
    assert rel.pair_inner((e(1, 0), e(0, 0)), (i, e(0, 0))) == nk.as_exact(np.array([-1j]))[0]


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        rel.rel_sum(rel.identity_rel(2), rel.identity_rel(3))
    with pytest.raises(DimensionMismatch):
        from_pairs([(e(1, 0), e(1))], 2)


def test_real_field_positive_not_symmetric():
    S = graph_of(E([[1, 1], [0, 1]]), field="real")
    assert rel.is_positive(S) and not rel.is_symmetric(S)
    assert not rel.is_positive(S.with_field("complex"))


# properties


@given(dims, seeds)
def test_involution_and_duality(n, seed):
    T = random_relation(GenConfig(n, seed))
    for X in both(T):
        adj = rel.adjoint(X)
        assert rel.adjoint(adj) == X
        assert adj.dim == 2 * n - X.dim


@given(dims, seeds)
def test_adjoint_against_definition(n, seed):
    T = random_relation(GenConfig(n, seed))
    adj = rel.adjoint(T)
    A, B = T.blocks()
    Aa, Ba = adj.blocks()
    # every pair of T* is orthogonal to J-twisted pairs of T: <f', h> = <f, h'>
    assert nk.is_zero(nk.conj_t(A) @ Ba - nk.conj_t(B) @ Aa)
    # and T* is maximal: its dimension is the nullity of the defining system
    system = np.concatenate([-nk.conj_t(B), nk.conj_t(A)], axis=1) if T.dim else np.zeros((0, 2 * n), dtype=object)
    nullity = 2 * n - (to_sympy(system).rank() if T.dim else 0)
    assert adj.dim == nullity
    assert rel.adjoint_by_definition(T) == adj == rel.adjoint_via_complement(T)


@given(dims, seeds)
def test_orthogonality_identities(n, seed):
    T = random_relation(GenConfig(n, seed))
    for X in both(T):
        adj = rel.adjoint(X)
        assert rel.mul(adj) == rel.dom(X).complement()
        assert rel.ker(adj) == rel.ran(X).complement()
        assert rel.adjoint(rel.inverse(X)) == rel.inverse(adj)


@given(dims, seeds, seeds)
def test_adjoint_reverses_inclusion(n, s1, s2):
    T = random_relation(GenConfig(n, s1))
    S = rel.intersect_rel(T, random_relation(GenConfig(n, s2)))
    assert S <= T
    assert rel.adjoint(T) <= rel.adjoint(S)


@given(st.integers(1, 4), seeds)
def test_positive_implies_symmetric_complex(n, seed):
    T = random_positive(GenConfig(n, seed))
    assert rel.is_positive(T)
    assert rel.is_symmetric(T) and rel.is_symmetric_gram(T)


@given(exact_matrices(min_rows=3, max_rows=3, min_cols=3, max_cols=3),
       exact_matrices(min_rows=3, max_rows=3, min_cols=3, max_cols=3))
def test_graph_compatibility(A, B):
    GA, GB = graph_of(A), graph_of(B)
    assert rel.compose(GA, GB) == graph_of(A @ B)
    assert rel.rel_sum(GA, GB) == graph_of(A + B)
    assert rel.adjoint(GA) == graph_of(nk.conj_t(A))
    assert np.array_equal(rel.operator_matrix(GA), A)
    if nk.rank(A) == 3:
        assert rel.inverse(GA) == graph_of(nk.inverse(A))


@given(dims, seeds, st.data())
def test_linearity_fuzz(n, seed, data):
    cfg = GenConfig(n, seed)
    T = random_relation(cfg)
    rng = cfg.rng()
    A, _ = T.blocks()
    # inputs drawn from the domain half the time so images are nonempty
    def point():
        if T.dim and rng.random() < 0.5:
            return A @ nk.as_exact(rng.integers(-2, 3, T.dim))
        return nk.as_exact(rng.integers(-2, 3, n))
    a, b = data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3))
    x1, x2 = point(), point()
    for X in both(T):
        assert rel.linearity_containment_check(X, x1, x2, a, b)


@given(dims, seeds)
def test_compose_associative_and_sum_commutative(n, seed):
    cfg = GenConfig(n, seed)
    rng = cfg.rng()
    R, S, T = (random_relation(GenConfig(n, int(s))) for s in rng.integers(0, 2**31, 3))
    assert rel.compose(R, rel.compose(S, T)) == rel.compose(rel.compose(R, S), T)
    assert rel.rel_sum(S, T) == rel.rel_sum(T, S)
    assert rel.inverse(rel.inverse(T)) == T
    assert rel.inverse(rel.compose(S, T)) == rel.compose(rel.inverse(T), rel.inverse(S))


def test_coset_arithmetic():
    d = span_of(E([[0], [1]]))
    c = Coset(e(1, 0), d)
    assert c.scale(0) == Coset(e(0, 0), Subspace.zero(2))
    assert (c + c) == Coset(e(2, 7), d)
    assert Coset(e(1, 3), Subspace.zero(2)) <= c
