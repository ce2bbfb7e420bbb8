import random
from itertools import combinations

import pytest

from ratquiver.linalg import Matrix
from ratquiver.quiver import Quiver, RationalQuiver, underlying_graph, validate
from ratquiver.species import (DiagonalBimodule, ValuedEdge, ValuedGraph, build_species, classify,
                               classify_rational_quiver, dynkin_name, is_positive_semidefinite,
                               principal_minors_nonnegative, valued_graph)

from conftest import D4_OUT, chain_quiver, d_quiver, e_quiver


def test_d4_s3_species(d4_s3):
    sk = build_species(d4_s3)
    assert [n.field_degree for n in sk.nodes] == [1, 3]
    assert len(sk.arrows) == 1
    (arrow,) = sk.arrows
    assert (arrow.source, arrow.target) == (0, 1)
    assert [s.degree for s in arrow.summands] == [3]
    vg = valued_graph(sk)
    assert vg.symmetrizers == (1, 3)
    assert [e.label for e in vg.edges] == [(3, 1)]
    assert str(classify_rational_quiver(d4_s3)) == "FiniteDynkin(G2)"


def test_kronecker_swap_species(kronecker_swap):
    sk = build_species(kronecker_swap)
    assert [n.field_degree for n in sk.nodes] == [1, 1]
    assert [s.degree for s in sk.arrows[0].summands] == [2]
    vg = valued_graph(sk)
    assert vg.symmetrizers == (1, 1) and vg.edges[0].label == (2, 2)
    b = vg.symmetrized_matrix()
    assert b == Matrix.from_rows([[2, -2], [-2, 2]]) and b.det() == 0
    v = classify_rational_quiver(kronecker_swap)
    assert v.kind == "AffineTame"
    assert v.notices and "(2,2)" in v.notices[0] and "B2" in v.notices[0]


def test_trivial_action_species_is_the_quiver():
    sk = build_species(RationalQuiver.trivial(D4_OUT))
    assert [n.field_degree for n in sk.nodes] == [1, 1, 1, 1]
    assert all(s.degree == 1 for a in sk.arrows for s in a.summands)
    vg = valued_graph(build_species(RationalQuiver.trivial(chain_quiver(3))))
    assert [e.label for e in vg.edges] == [(1, 1), (1, 1)]


def test_two_loop_is_wild(two_loop):
    assert classify_rational_quiver(two_loop).kind == "Wild"


def test_jordan_quiver_is_tame():
    q = Quiver.from_arrows(["v"], [("x", "v", "v")])
    assert classify_rational_quiver(RationalQuiver.trivial(q)).kind == "AffineTame"


def test_diagonal_bimodule_is_unsupported():
    q = Quiver.from_arrows(["a", "b"], [("x", "a", "b"), ("y", "b", "a")])
    rq = validate(q, [{"name": "s", "vperm": {"a": "b", "b": "a"}, "eperm": {"x": "y", "y": "x"}}])
    with pytest.raises(DiagonalBimodule):
        valued_graph(build_species(rq))
    assert classify_rational_quiver(rq).kind == "Unsupported"


ADE = ([(f"A{n}", chain_quiver(n)) for n in range(1, 9)]
       + [(f"D{n}", d_quiver(n)) for n in range(4, 9)]
       + [(f"E{n}", e_quiver(n)) for n in (6, 7, 8)])


@pytest.mark.parametrize("name,q", ADE, ids=[n for n, _ in ADE])
def test_trivial_action_on_ade_is_named(name, q):
    assert str(classify_rational_quiver(RationalQuiver.trivial(q))) == f"FiniteDynkin({name})"


def _swap(pairs_v, pairs_e):
    vp, ep = {}, {}
    for a, b in pairs_v:
        vp[a], vp[b] = b, a
    for a, b in pairs_e:
        ep[a], ep[b] = b, a
    return {"name": "s", "vperm": vp, "eperm": ep}


def test_foldings():
    # A3 folded at the middle: B2
    a3 = Quiver.from_arrows(["v1", "v2", "v3"], [("e1", "v1", "v2"), ("e2", "v3", "v2")])
    assert str(classify_rational_quiver(validate(a3, [_swap([("v1", "v3")], [("e1", "e2")])]))) == "FiniteDynkin(B2)"
    # D5 with its two leaves swapped: B4
    d5 = d_quiver(5)
    rq = validate(d5, [_swap([("v4", "v5")], [("e3", "e4")])])
    assert str(classify_rational_quiver(rq)) == "FiniteDynkin(B4)"
    # A5 folded: C3
    a5 = Quiver.from_arrows([f"v{i}" for i in range(1, 6)],
                            [("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v4", "v3"), ("e4", "v5", "v4")])
    rq = validate(a5, [_swap([("v1", "v5"), ("v2", "v4")], [("e1", "e4"), ("e2", "e3")])])
    assert str(classify_rational_quiver(rq)) == "FiniteDynkin(C3)"
    # E6 folded: F4
    e6 = Quiver.from_arrows([f"v{i}" for i in range(1, 7)],
                            [("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v4", "v3"), ("e4", "v5", "v4"),
                             ("e5", "v3", "v6")])
    rq = validate(e6, [_swap([("v1", "v5"), ("v2", "v4")], [("e1", "e4"), ("e2", "e3")])])
    assert str(classify_rational_quiver(rq)) == "FiniteDynkin(F4)"


def test_affine_and_wild_examples():
    # extended D4: centre with four leaves
    q = Quiver.from_arrows(["c", "a", "b", "d", "e"], [(f"x{k}", "c", v) for k, v in enumerate("abde")])
    assert classify_rational_quiver(RationalQuiver.trivial(q)).kind == "AffineTame"
    # star with five leaves
    q = Quiver.from_arrows(["c"] + list("abdef"), [(f"x{k}", "c", v) for k, v in enumerate("abdef")])
    assert classify_rational_quiver(RationalQuiver.trivial(q)).kind == "Wild"
    # a (1,4) valued edge is affine, (1,5) is wild
    for label, kind in (((4, 1), "AffineTame"), ((5, 1), "Wild")):
        vg = ValuedGraph((1, label[0]), (ValuedEdge(0, 1, *label),))
        assert classify(vg).kind == kind


def test_dynkin_table_names_distinct_shapes():
    g2 = ValuedGraph((3, 1), (ValuedEdge(0, 1, 1, 3),))
    assert dynkin_name(g2) == "G2"
    assert dynkin_name(ValuedGraph((1, 1), (ValuedEdge(0, 1, 2, 2),))) is None


def _random_symmetric(rng, n):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(-3, 3)
    return Matrix.from_rows(rows)


def test_psd_agrees_with_principal_minors():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(1, 4)
        if rng.random() < 0.5:
            g = Matrix(n, n, [rng.randint(-2, 2) for _ in range(n * n)])
            b = g.transpose() @ g
        else:
            b = _random_symmetric(rng, n)
        assert is_positive_semidefinite(b) == principal_minors_nonnegative(b)


def random_equivariant_quiver(rng):
    """Vertices are G-orbits on subsets of a small set; edges are orbits of pairs."""
    groups = {
        "S3": (3, [(1, 0, 2), (1, 2, 0)]),
        "C4": (4, [(1, 2, 3, 0)]),
        "V4": (4, [(1, 0, 3, 2), (2, 3, 0, 1)]),
        "C2": (2, [(1, 0)]),
        "D4": (4, [(1, 2, 3, 0), (3, 2, 1, 0)]),
    }
    n, gens = groups[rng.choice(sorted(groups))]
    subsets = [frozenset(c) for k in range(n + 1) for c in combinations(range(n), k)]

    def act(p, s):
        return frozenset(p[x] for x in s)

    def orbit(s):
        out, todo = {s}, [s]
        while todo:
            x = todo.pop()
            for p in gens:
                y = act(p, x)
                if y not in out:
                    out.add(y)
                    todo.append(y)
        return out

    orbit_reps = []
    seen = set()
    for s in subsets:
        if s not in seen:
            o = orbit(s)
            seen |= o
            orbit_reps.append(sorted(o, key=sorted))
    chosen = rng.sample(orbit_reps, rng.randint(2, min(4, len(orbit_reps))))
    name = lambda s: "s" + "".join(map(str, sorted(s)))
    vertices = [v for o in chosen for v in o]
    edges = []
    for _ in range(rng.randint(1, 4)):
        i, j = rng.sample(range(len(chosen)), 2)
        a, b = rng.choice(chosen[i]), rng.choice(chosen[j])
        todo, pair_orbit = [(a, b)], {(a, b)}
        while todo:
            x, y = todo.pop()
            for p in gens:
                nxt = (act(p, x), act(p, y))
                if nxt not in pair_orbit:
                    pair_orbit.add(nxt)
                    todo.append(nxt)
        tag = len(edges)
        for x, y in pair_orbit:
            edges.append((f"{name(x)}>{name(y)}#{tag}", x, y))
    q = Quiver.from_arrows([name(v) for v in vertices], [(eid, name(x), name(y)) for eid, x, y in edges])
    index = {(eid.split("#")[1], name(x), name(y)): eid for eid, x, y in edges}
    generators = []
    for k, p in enumerate(gens):
        vperm = {name(v): name(act(p, v)) for v in vertices}
        eperm = {eid: index[(eid.split("#")[1], name(act(p, x)), name(act(p, y)))] for eid, x, y in edges}
        generators.append({"name": f"g{k}", "vperm": vperm, "eperm": eperm})
    return validate(q, generators)


def test_valuation_invariants_on_random_quivers():
    rng = random.Random(11)
    for _ in range(100):
        rq = random_equivariant_quiver(rng)
        sk = build_species(rq)
        for node in sk.nodes:
            assert node.field_degree * node.stabilizer_order == rq.group_order
        covered = sorted(e for a in sk.arrows for s in a.summands for e in s.edges)
        assert covered == sorted(e.id for e in rq.quiver.edges)
        vg = valued_graph(sk)
        f = vg.symmetrizers
        for e in vg.edges:
            assert f[e.i] * e.d_ij == f[e.j] * e.d_ji
            total = sum(a.total_degree for a in sk.arrows if {a.source, a.target} == {e.i, e.j})
            assert total == e.d_ij * f[e.i] == e.d_ji * f[e.j]
        # verdict is always one of the four kinds
        assert classify(vg, underlying_graph(rq.quiver)).kind in {"FiniteDynkin", "AffineTame", "Wild"}
