import pytest

from ratquiver.quiver import (ClosureBound, CompatibilityViolation, MalformedQuiver, Quiver, UnknownItem, edge_orbits,
                              stabilizer_order, underlying_graph, validate, vertex_orbits)
import ratquiver.quiver as quiver_mod

from conftest import D4_OUT, chain_quiver


def test_d4_s3_valid(d4_s3):
    assert d4_s3.group_order == 6
    assert vertex_orbits(d4_s3) == [["v0"], ["v1", "v2", "v3"]]
    assert edge_orbits(d4_s3) == [["e1", "e2", "e3"]]


def test_kronecker_swap_valid(kronecker_swap):
    assert kronecker_swap.group_order == 2
    assert edge_orbits(kronecker_swap) == [["a", "b"]]
    assert vertex_orbits(kronecker_swap) == [["v1"], ["v2"]]


def test_swapping_ends_of_an_arrow_is_rejected():
    q = chain_quiver(2)
    with pytest.raises(CompatibilityViolation) as err:
        validate(q, [{"name": "flip", "vperm": {"v1": "v2", "v2": "v1"}}])
    assert err.value.element == "flip" and err.value.edge == "e1"


def test_malformed_inputs():
    with pytest.raises(MalformedQuiver):
        Quiver.from_arrows(["a"], [("e", "a", "b")])
    with pytest.raises(MalformedQuiver):
        Quiver.from_arrows(["a", "a"], [])
    with pytest.raises(MalformedQuiver):
        validate(chain_quiver(2), [{"vperm": {"v1": "v1", "v2": "v1"}}])


def test_closure_bound(monkeypatch):
    monkeypatch.setattr(quiver_mod, "MAX_GROUP_ORDER", 5)
    q = Quiver.from_arrows([f"v{i}" for i in range(4)], [])
    with pytest.raises(ClosureBound):
        validate(q, [{"vperm": {"v0": "v1", "v1": "v0"}}, {"vperm": {"v0": "v1", "v1": "v2", "v2": "v3", "v3": "v0"}}])


def test_trivial_group_orbits_are_singletons():
    rq = validate(D4_OUT, [])
    assert vertex_orbits(rq) == [[v] for v in D4_OUT.vertices]
    assert all(stabilizer_order(rq, v) == 1 for v in D4_OUT.vertices)
    assert stabilizer_order(rq, "e2") == 1


def test_stabilizers(d4_s3):
    assert stabilizer_order(d4_s3, "v0") == 6
    assert stabilizer_order(d4_s3, "v1") == 2
    assert stabilizer_order(d4_s3, "e3") == 2
    with pytest.raises(UnknownItem):
        stabilizer_order(d4_s3, "nope")


@pytest.mark.parametrize("name", ["d4_s3", "kronecker_swap", "two_loop"])
def test_orbit_stabilizer_and_partition(name, request):
    rq = request.getfixturevalue(name)
    q = rq.quiver
    for orbits, ids, kind in ((vertex_orbits(rq), list(q.vertices), "vertex"),
                              (edge_orbits(rq), [e.id for e in q.edges], "edge")):
        flat = [x for o in orbits for x in o]
        assert sorted(flat) == sorted(ids) and len(flat) == len(set(flat))
        for o in orbits:
            assert o and o[0] == min(o)
            for x in o:
                assert len(o) * stabilizer_order(rq, x, kind) == rq.group_order


def test_every_element_is_compatible(d4_s3):
    q = d4_s3.quiver
    for g in d4_s3.elements:
        for e in q.edges:
            ge = q.edge(d4_s3.act_edge(g, e.id))
            assert ge.src == d4_s3.act_vertex(g, e.src)
            assert ge.tgt == d4_s3.act_vertex(g, e.tgt)


def test_group_is_closed_with_inverses(d4_s3):
    keys = {g.key() for g in d4_s3.elements}
    for g in d4_s3.elements:
        for h in d4_s3.elements:
            comp = (tuple(g.vperm[i] for i in h.vperm), tuple(g.eperm[i] for i in h.eperm))
            assert comp in keys
        inv_v = tuple(sorted(range(len(g.vperm)), key=lambda i: g.vperm[i]))
        assert any(x.vperm == inv_v for x in d4_s3.elements)


def test_underlying_graph(two_loop, kronecker_swap):
    g = underlying_graph(D4_OUT)
    assert g.simple and g.is_tree() and g.degree_sequence() == [3, 1, 1, 1]
    assert underlying_graph(two_loop.quiver).loops
    k = underlying_graph(kronecker_swap.quiver)
    assert k.multi_edges and not k.simple


def test_topological_order_and_reversal():
    q = chain_quiver(3)
    assert q.topological_order() == ["v1", "v2", "v3"]
    cyc = Quiver.from_arrows(["a", "b"], [("x", "a", "b"), ("y", "b", "a")])
    assert cyc.topological_order() is None
    r = q.reverse_at("v2")
    assert [(e.src, e.tgt) for e in r.edges] == [("v2", "v1"), ("v3", "v2")]
