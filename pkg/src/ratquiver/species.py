"""Species skeletons, valued graphs and representation type.

A species skeleton only keeps degrees: each vertex orbit becomes a node whose
field has degree [G : G_v] over the base, and each edge orbit becomes a
bimodule summand of degree [G : G_e].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .linalg import Matrix
from .quiver import GraphSummary, RationalQuiver, edge_orbits, stabilizer_order, underlying_graph, vertex_orbits


class SpeciesError(ValueError):
    pass


class DiagonalBimodule(SpeciesError):
    pass


class NonIntegralValuation(AssertionError):
    pass


@dataclass(frozen=True)
class SpeciesNode:
    index: int
    representative: str
    members: tuple[str, ...]
    stabilizer_order: int
    field_degree: int


@dataclass(frozen=True)
class Summand:
    edges: tuple[str, ...]
    representative: str
    degree: int


@dataclass(frozen=True)
class SpeciesArrow:
    source: int
    target: int
    summands: tuple[Summand, ...]

    @property
    def total_degree(self) -> int:
        return sum(s.degree for s in self.summands)


@dataclass(frozen=True)
class SpeciesSkeleton:
    rq: RationalQuiver = field(repr=False)
    nodes: tuple[SpeciesNode, ...]
    arrows: tuple[SpeciesArrow, ...]

    @property
    def group_order(self) -> int:
        return self.rq.group_order

    def node_of(self, v: str) -> int:
        for n in self.nodes:
            if v in n.members:
                return n.index
        raise KeyError(v)


def build_species(rq: RationalQuiver) -> SpeciesSkeleton:
    q = rq.quiver
    nodes = []
    for i, orbit in enumerate(vertex_orbits(rq)):
        st = stabilizer_order(rq, orbit[0], "vertex")
        nodes.append(SpeciesNode(i, orbit[0], tuple(orbit), st, rq.group_order // st))
    where = {v: n.index for n in nodes for v in n.members}
    grouped: dict[tuple[int, int], list[Summand]] = {}
    for orbit in edge_orbits(rq):
        e = q.edge(orbit[0])
        deg = rq.group_order // stabilizer_order(rq, e.id, "edge")
        assert deg == len(orbit)
        key = (where[e.src], where[e.tgt])
        grouped.setdefault(key, []).append(Summand(tuple(orbit), orbit[0], deg))
    arrows = tuple(SpeciesArrow(i, j, tuple(s)) for (i, j), s in sorted(grouped.items()))
    return SpeciesSkeleton(rq, tuple(nodes), arrows)


@dataclass(frozen=True)
class ValuedEdge:
    i: int
    j: int
    d_ij: int
    d_ji: int

    @property
    def label(self) -> tuple[int, int]:
        return (self.d_ij, self.d_ji)


@dataclass(frozen=True)
class ValuedGraph:
    """Nodes carry symmetrizers f; edges satisfy f_i * d_ij == f_j * d_ji."""
    symmetrizers: tuple[int, ...]
    edges: tuple[ValuedEdge, ...]
    names: tuple[str, ...] = ()

    def neighbours(self, i: int) -> list[int]:
        return [e.j if e.i == i else e.i for e in self.edges if i in (e.i, e.j)]

    def symmetrized_matrix(self) -> Matrix:
        n = len(self.symmetrizers)
        b = [[0] * n for _ in range(n)]
        for i, f in enumerate(self.symmetrizers):
            b[i][i] = 2 * f
        for e in self.edges:
            b[e.i][e.j] -= self.symmetrizers[e.i] * e.d_ij
            b[e.j][e.i] -= self.symmetrizers[e.j] * e.d_ji
        return Matrix.from_rows(b, n)

    def components(self) -> list[list[int]]:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.symmetrizers)))
        g.add_edges_from((e.i, e.j) for e in self.edges)
        return sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0])

    def restrict(self, nodes) -> "ValuedGraph":
        nodes = list(nodes)
        pos = {v: k for k, v in enumerate(nodes)}
        edges = tuple(ValuedEdge(pos[e.i], pos[e.j], e.d_ij, e.d_ji)
                      for e in self.edges if e.i in pos and e.j in pos)
        names = tuple(self.names[v] for v in nodes) if self.names else ()
        return ValuedGraph(tuple(self.symmetrizers[v] for v in nodes), edges, names)


def _count_at(rq: RationalQuiver, summand: Summand, vertex: str, end: str) -> int:
    q = rq.quiver
    return sum(1 for eid in summand.edges if getattr(q.edge(eid), end) == vertex)


def valued_graph(sk: SpeciesSkeleton) -> ValuedGraph:
    """Dlab-Ringel valuation of the species skeleton.

    d_ij is the dimension of the bimodule between i and j over the field at i:
    it counts, per edge orbit, the edges meeting the representative of i.
    Both arrow directions between i and j feed the same valued edge.
    """
    f = [n.field_degree for n in sk.nodes]
    totals: dict[tuple[int, int], list[int]] = {}
    for a in sk.arrows:
        if a.source == a.target:
            raise DiagonalBimodule(
                f"edge orbit(s) {[s.representative for s in a.summands]} stay inside vertex orbit {a.source}")
        i, j = sorted((a.source, a.target))
        acc = totals.setdefault((i, j), [0, 0, 0])
        vi, vj = sk.nodes[i].representative, sk.nodes[j].representative
        end_i, end_j = ("src", "tgt") if a.source == i else ("tgt", "src")
        for s in a.summands:
            acc[0] += _count_at(sk.rq, s, vi, end_i)
            acc[1] += _count_at(sk.rq, s, vj, end_j)
            acc[2] += s.degree
    edges = []
    for (i, j), (dij, dji, total) in sorted(totals.items()):
        if f[i] * dij != total or f[j] * dji != total:
            raise NonIntegralValuation(f"valuation mismatch on edge {i}-{j}: f=({f[i]},{f[j]}), "
                                       f"d=({dij},{dji}), total degree {total}")
        edges.append(ValuedEdge(i, j, dij, dji))
    return ValuedGraph(tuple(f), tuple(edges), tuple(n.representative for n in sk.nodes))


@dataclass(frozen=True)
class TypeVerdict:
    kind: str
    name: str | None = None
    reason: str | None = None
    notices: tuple[str, ...] = ()

    def __str__(self):
        if self.kind == "FiniteDynkin":
            return f"FiniteDynkin({self.name})"
        if self.kind == "Unsupported":
            return f"Unsupported({self.reason})"
        return self.kind


def is_positive_definite(b: Matrix) -> bool:
    """All leading principal minors positive."""
    return all(b.submatrix(range(k), range(k)).det() > 0 for k in range(1, b.rows + 1))


def is_positive_semidefinite(b: Matrix) -> bool:
    """Exact PSD test for a symmetric matrix by symmetric elimination."""
    a = [list(r) for r in b.to_rows()]
    n = len(a)
    alive = list(range(n))
    while alive:
        k = alive.pop(0)
        piv = a[k][k]
        if piv < 0:
            return False
        if piv == 0:
            if any(a[k][j] != 0 for j in alive):
                return False
            continue
        for i in alive:
            if a[i][k]:
                f = Fraction(a[i][k]) / piv
                for j in alive:
                    a[i][j] -= f * a[k][j]
    return True


def principal_minors_nonnegative(b: Matrix) -> bool:
    n = b.rows
    return all(b.submatrix(s, s).det() >= 0
               for k in range(1, n + 1) for s in combinations(range(n), k))


def _chain(n: int, last: tuple[int, int] | None = None, middle: tuple[int, int] | None = None):
    edges = [(k, k + 1, 1, 1) for k in range(n - 1)]
    if last is not None:
        edges[-1] = (n - 2, n - 1) + last
    if middle is not None:
        edges[1] = (1, 2) + middle
    return edges


def dynkin_table(n: int) -> list[tuple[str, list[tuple[int, int, int, int]]]]:
    """Connected Dynkin valued graphs of rank n as (name, edges).

    Edges are (i, j, d_ij, d_ji) with f_i d_ij = f_j d_ji.  The node with
    the larger symmetrizer is the short root, so folding D_{n+1} gives B_n
    and folding A_{2n-1} gives C_n.
    """
    table = [(f"A{n}", _chain(n))]
    if n >= 2:
        table.append((f"B{n}", _chain(n, last=(2, 1))))
    if n >= 3:
        table.append((f"C{n}", _chain(n, last=(1, 2))))
    if n >= 4:
        table.append((f"D{n}", _chain(n - 1) + [(n - 3, n - 1, 1, 1)]))
    if n in (6, 7, 8):
        table.append((f"E{n}", _chain(n - 1) + [(2, n - 1, 1, 1)]))
    if n == 4:
        table.append(("F4", _chain(4, middle=(2, 1))))
    if n == 2:
        table.append(("G2", [(0, 1, 3, 1)]))
    return table


def _as_digraph(n: int, edges) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    for i, j, dij, dji in edges:
        g.add_edge(i, j, d=dij)
        g.add_edge(j, i, d=dji)
    return g


def dynkin_name(vg: ValuedGraph) -> str | None:
    """Name of a connected valued graph in the Dynkin table, or None."""
    n = len(vg.symmetrizers)
    g = _as_digraph(n, [(e.i, e.j, e.d_ij, e.d_ji) for e in vg.edges])
    for name, edges in dynkin_table(n):
        h = _as_digraph(n, edges)
        if h.number_of_edges() != g.number_of_edges():
            continue
        if DiGraphMatcher(g, h, edge_match=lambda a, b: a["d"] == b["d"]).is_isomorphic():
            return name
    return None


def classify(vg: ValuedGraph | None, summary: GraphSummary | None = None,
             quiver=None) -> TypeVerdict:
    """Representation type of a valued graph.

    ``vg`` is None when a bimodule sits inside a single vertex orbit.  If the
    underlying quiver has loops the verdict is Wild, except for the quiver
    with one vertex and one loop, which is tame.
    """
    if summary is not None and summary.loops:
        if quiver is not None and len(quiver.vertices) == 1 and len(quiver.edges) == 1:
            return TypeVerdict("AffineTame", reason="single loop")
        return TypeVerdict("Wild", reason="loop")
    if vg is None:
        return TypeVerdict("Unsupported", reason="diagonal bimodule")
    names, notices = [], []
    affine = False
    for comp in vg.components():
        sub = vg.restrict(comp)
        b = sub.symmetrized_matrix()
        if is_positive_definite(b):
            name = dynkin_name(sub)
            if name is None:
                raise AssertionError(f"positive definite valued graph not in the Dynkin table: {sub}")
            names.append(name)
        elif is_positive_semidefinite(b):
            affine = True
        else:
            return TypeVerdict("Wild", notices=tuple(notices))
        for e in sub.edges:
            if e.d_ij * e.d_ji == 4 and len(comp) == 2:
                a, c = (sub.names[e.i], sub.names[e.j]) if sub.names else (e.i, e.j)
                notices.append(
                    f"valued edge {a}-{c} carries ({e.d_ij},{e.d_ji}); d_ij*d_ji = 4 makes the "
                    f"symmetrized form singular (det 0), so this graph is Euclidean, not B2, "
                    f"and the species has infinite (tame) representation type")
    if affine:
        return TypeVerdict("AffineTame", notices=tuple(notices))
    return TypeVerdict("FiniteDynkin", name="+".join(names), notices=tuple(notices))


def classify_rational_quiver(rq: RationalQuiver) -> TypeVerdict:
    summary = underlying_graph(rq.quiver)
    if summary.loops:
        return classify(None, summary, rq.quiver)
    try:
        vg = valued_graph(build_species(rq))
    except DiagonalBimodule:
        vg = None
    return classify(vg, summary, rq.quiver)
