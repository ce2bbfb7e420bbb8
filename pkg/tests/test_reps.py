import random

import pytest

from ratquiver.linalg import Matrix
from ratquiver.quiver import Quiver
from ratquiver.reps import (CyclicQuiver, NotASink, NotASource, SplitRepresentation, conjugate, decompose,
                            direct_sum, enumerate_indecomposables, euler_form, hom, hom_dim, projective,
                            reflect_sink, reflect_source, simple)
from ratquiver.roots import positive_roots, simple_reflection

from conftest import D4_OUT, chain_quiver, random_invertible, random_matrix
from test_roots import tits_oracle

A2 = chain_quiver(2)
A3 = chain_quiver(3)
SMALL = [A2, A3, D4_OUT]


def rep(q, dims, maps):
    return SplitRepresentation(q, dict(zip(q.vertices, dims)),
                               {k: Matrix.from_rows(v, dims[q.vertex_index()[q.edge(k).src]]) if v else
                                Matrix.zeros(dims[q.vertex_index()[q.edge(k).tgt]],
                                             dims[q.vertex_index()[q.edge(k).src]])
                                for k, v in maps.items()})


def test_hom_of_simple_is_scalars():
    s = simple(D4_OUT, "v2")
    h = hom(s, s)
    assert h.dimension == 1
    assert h.basis[0]["v2"] == Matrix.identity(1)


def test_hom_basis_intertwines():
    x = projective(D4_OUT, "v0")
    y = enumerate_indecomposables(D4_OUT)[(2, 1, 1, 1)]
    h = hom(x, y)
    for fam in h.basis:
        for e in D4_OUT.edges:
            assert fam[e.tgt] @ x.maps[e.id] == y.maps[e.id] @ fam[e.src]
    assert h.dimension == hom_dim(x, y)


def test_brick_at_1111():
    x = enumerate_indecomposables(D4_OUT)[(1, 1, 1, 1)]
    assert hom(x, x).dimension == 1


def test_reflect_sink_a2():
    m = rep(A2, (1, 1), {"e1": [[1]]})
    r = reflect_sink(m, "v2")
    assert r.dim_vector == (1, 0)
    assert r.quiver.edge("e1").src == "v2"
    with pytest.raises(NotASink):
        reflect_sink(m, "v1")


def test_reflect_source_a2():
    m = rep(A2, (1, 1), {"e1": [[1]]})
    assert reflect_source(m, "v1").dim_vector == (0, 1)
    assert reflect_source(simple(A2, "v1"), "v1").dim_vector == (0, 0)
    with pytest.raises(NotASource):
        reflect_source(m, "v2")


def test_reflect_simple_at_sink_dies():
    assert reflect_sink(simple(A2, "v2"), "v2").dim_vector == (0, 0)


def test_projectives():
    assert projective(D4_OUT, "v0").dim_vector == (1, 1, 1, 1)
    assert projective(D4_OUT, "v3").dim_vector == (0, 0, 0, 1)
    assert projective(A3, "v1").dim_vector == (1, 1, 1)
    cyc = Quiver.from_arrows(["a", "b"], [("x", "a", "b"), ("y", "b", "a")])
    with pytest.raises(CyclicQuiver):
        projective(cyc, "a")


def test_enumeration_small():
    assert set(enumerate_indecomposables(A2)) == {(1, 0), (0, 1), (1, 1)}
    d4 = enumerate_indecomposables(D4_OUT)
    assert len(d4) == 12 and set(d4) == tits_oracle(D4_OUT)
    for x in d4.values():
        assert hom_dim(x, x) == 1


def _sinks(q):
    return [v for v in q.vertices if q.is_sink(v) and any(e.tgt == v for e in q.edges)]


def _sources(q):
    return [v for v in q.vertices if q.is_source(v) and any(e.src == v for e in q.edges)]


@pytest.mark.parametrize("q", SMALL, ids=["A2", "A3", "D4"])
def test_reflection_dimension_law(q):
    idx = q.vertex_index()
    for d, x in enumerate_indecomposables(q).items():
        for v in _sinks(q):
            if d == positive_roots(q).simples[idx[v]]:
                continue
            r = reflect_sink(x, v)
            assert r.dim_vector == simple_reflection(q, d, idx[v])
            assert hom_dim(r, r) == 1
            back = reflect_source(r, v)
            assert back.quiver == q and back.dim_vector == d and hom_dim(back, back) == 1
        for v in _sources(q):
            if d == positive_roots(q).simples[idx[v]]:
                continue
            assert reflect_source(x, v).dim_vector == simple_reflection(q, d, idx[v])


def test_reflection_on_sink_leaf_of_d4():
    x = enumerate_indecomposables(D4_OUT)[(1, 1, 1, 1)]
    assert reflect_sink(x, "v1").dim_vector == simple_reflection(D4_OUT, (1, 1, 1, 1), 1) == (1, 0, 1, 1)


def _random_rep(rng, q, max_dim=3):
    dims = {v: rng.randint(0, max_dim) for v in q.vertices}
    maps = {e.id: random_matrix(rng, dims[e.tgt], dims[e.src], 3) for e in q.edges}
    return SplitRepresentation(q, dims, maps)


@pytest.mark.parametrize("q", SMALL, ids=["A2", "A3", "D4"])
def test_hom_additivity_and_euler_bound(q, rng):
    for _ in range(15):
        m, m2, n = (_random_rep(rng, q) for _ in range(3))
        assert hom_dim(direct_sum([m, m2]), n) == hom_dim(m, n) + hom_dim(m2, n)
        assert hom_dim(n, direct_sum([m, m2])) == hom_dim(n, m) + hom_dim(n, m2)
        assert hom_dim(m, n) >= euler_form(q, m.dim_vector, n.dim_vector)


@pytest.mark.parametrize("q", SMALL, ids=["A2", "A3", "D4"])
def test_hom_conjugation_invariance(q, rng):
    for _ in range(10):
        m, n = _random_rep(rng, q), _random_rep(rng, q)
        mc = conjugate(m, {v: random_invertible(rng, m.dims[v]) for v in q.vertices})
        nc = conjugate(n, {v: random_invertible(rng, n.dims[v]) for v in q.vertices})
        assert hom_dim(mc, nc) == hom_dim(m, n)


def test_decompose_examples():
    for d, x in enumerate_indecomposables(D4_OUT).items():
        assert decompose(x) == {d: 1}
        assert decompose(direct_sum([x, x])) == {d: 2}


def test_decompose_random_conjugated_sums(rng):
    indecs = enumerate_indecomposables(D4_OUT)
    for _ in range(10):
        mult = {r: rng.randint(0, 3) for r in indecs}
        parts = [indecs[r] for r, k in mult.items() for _ in range(k)]
        if not parts:
            continue
        m = direct_sum(parts)
        m = conjugate(m, {v: random_invertible(rng, m.dims[v]) for v in D4_OUT.vertices})
        assert decompose(m) == {r: k for r, k in mult.items() if k}


def test_decompose_a3_other_orientation():
    q = Quiver.from_arrows(["v1", "v2", "v3"], [("e1", "v2", "v1"), ("e2", "v2", "v3")])
    indecs = enumerate_indecomposables(q)
    assert set(indecs) == tits_oracle(q)
    m = direct_sum([indecs[(1, 1, 1)], indecs[(0, 1, 0)], indecs[(1, 1, 0)]])
    assert decompose(m) == {(0, 1, 0): 1, (1, 1, 0): 1, (1, 1, 1): 1}


def test_shape_checks():
    with pytest.raises(ValueError):
        SplitRepresentation(A2, {"v1": 1, "v2": 1}, {"e1": Matrix.zeros(2, 1)})
