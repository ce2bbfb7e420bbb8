"""Quivers, finite group actions on them, orbits and stabilizers."""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

MAX_GROUP_ORDER = 10**6


class QuiverError(ValueError):
    pass


class MalformedQuiver(QuiverError):
    pass


class CompatibilityViolation(QuiverError):
    def __init__(self, element: str, edge: str, detail: str):
        self.element = element
        self.edge = edge
        super().__init__(f"element {element} breaks compatibility at edge {edge}: {detail}")


class ClosureBound(QuiverError):
    pass


class UnknownItem(QuiverError, KeyError):
    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(
            e if isinstance(e, Edge) else Edge(*e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise MalformedQuiver("duplicate vertex id")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise MalformedQuiver("duplicate edge id")
        vs = set(self.vertices)
        for e in self.edges:
            if e.src not in vs or e.tgt not in vs:
                raise MalformedQuiver(f"edge {e.id} names an unknown vertex")

    @classmethod
    def from_arrows(cls, vertices, arrows) -> "Quiver":
        """Build from ``(id, src, tgt)`` triples."""
        return cls(tuple(vertices), tuple(Edge(*a) for a in arrows))

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise UnknownItem(f"unknown edge {eid!r}")

    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def incoming(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.tgt == v]

    def outgoing(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.src == v]

    def is_sink(self, v: str) -> bool:
        return not any(e.src == v for e in self.edges)

    def is_source(self, v: str) -> bool:
        return not any(e.tgt == v for e in self.edges)

    def reverse_at(self, v: str) -> "Quiver":
        """The quiver with every arrow incident to v reversed (ids kept)."""
        edges = []
        for e in self.edges:
            if (e.src == v) != (e.tgt == v):
                edges.append(Edge(e.id, e.tgt, e.src))
            else:
                edges.append(e)
        return Quiver(self.vertices, tuple(edges))

    def topological_order(self) -> list[str] | None:
        """Vertices with every arrow pointing forward, or None if cyclic."""
        indeg = Counter(e.tgt for e in self.edges)
        order = []
        ready = [v for v in self.vertices if indeg[v] == 0]
        while ready:
            v = ready.pop(0)
            order.append(v)
            for e in self.edges:
                if e.src == v:
                    indeg[e.tgt] -= 1
                    if indeg[e.tgt] == 0:
                        ready.append(e.tgt)
        return order if len(order) == len(self.vertices) else None

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def components(self) -> list[list[str]]:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            a, b = find(e.src), find(e.tgt)
            if a != b:
                parent[a] = b
        groups: dict[str, list[str]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


@dataclass(frozen=True)
class GraphSummary:
    simple: bool
    loops: bool
    multi_edges: bool
    adjacency: dict
    degrees: dict
    connected: bool

    def degree_sequence(self) -> list[int]:
        return sorted(self.degrees.values(), reverse=True)

    def is_tree(self) -> bool:
        n_edges = sum(self.adjacency.values())
        return self.simple and self.connected and n_edges == len(self.degrees) - 1


def underlying_graph(q: Quiver) -> GraphSummary:
    """Forget orientation: adjacency counts keyed by unordered vertex pairs."""
    adjacency: Counter = Counter()
    degrees = {v: 0 for v in q.vertices}
    loops = False
    for e in q.edges:
        if e.src == e.tgt:
            loops = True
            degrees[e.src] += 2
        else:
            degrees[e.src] += 1
            degrees[e.tgt] += 1
        adjacency[frozenset((e.src, e.tgt))] += 1
    multi = any(c > 1 for c in adjacency.values())
    return GraphSummary(
        simple=not loops and not multi,
        loops=loops,
        multi_edges=multi,
        adjacency=dict(adjacency),
        degrees=degrees,
        connected=q.is_connected(),
    )


@dataclass(frozen=True)
class GroupElement:
    """A pair of permutations stored as index tuples into the quiver's lists."""
    name: str
    vperm: tuple[int, ...]
    eperm: tuple[int, ...]

    def key(self):
        return (self.vperm, self.eperm)


def _compose(f: tuple, g: tuple) -> tuple:
    # f after g
    return tuple(f[i] for i in g)


@dataclass(frozen=True)
class RationalQuiver:
    quiver: Quiver
    generators: tuple[GroupElement, ...]
    elements: tuple[GroupElement, ...] = field(repr=False)

    @property
    def group_order(self) -> int:
        return len(self.elements)

    @classmethod
    def trivial(cls, q: Quiver) -> "RationalQuiver":
        return validate(q, [])

    def act_vertex(self, g: GroupElement, v: str) -> str:
        return self.quiver.vertices[g.vperm[self.quiver.vertex_index()[v]]]

    def act_edge(self, g: GroupElement, eid: str) -> str:
        idx = [e.id for e in self.quiver.edges].index(eid)
        return self.quiver.edges[g.eperm[idx]].id

    def vertex_orbits(self) -> list[list[str]]:
        return vertex_orbits(self)

    def edge_orbits(self) -> list[list[str]]:
        return edge_orbits(self)


def _parse_perm(mapping, ids: tuple[str, ...], what: str, name: str) -> tuple[int, ...]:
    mapping = dict(mapping or {})
    index = {x: i for i, x in enumerate(ids)}
    for k, v in mapping.items():
        if k not in index or v not in index:
            raise MalformedQuiver(f"generator {name}: {what} map names unknown id ({k!r} -> {v!r})")
    images = tuple(index[mapping.get(x, x)] for x in ids)
    if len(set(images)) != len(images):
        raise MalformedQuiver(f"generator {name}: {what} map is not a bijection")
    return images


def _check_compatible(q: Quiver, g: GroupElement):
    for i, e in enumerate(q.edges):
        ge = q.edges[g.eperm[i]]
        sv = q.vertices[g.vperm[q.vertex_index()[e.src]]]
        tv = q.vertices[g.vperm[q.vertex_index()[e.tgt]]]
        if ge.src != sv:
            raise CompatibilityViolation(g.name, e.id, f"s({ge.id}) = {ge.src} but sigma(s({e.id})) = {sv}")
        if ge.tgt != tv:
            raise CompatibilityViolation(g.name, e.id, f"t({ge.id}) = {ge.tgt} but sigma(t({e.id})) = {tv}")


def validate(q: Quiver, generators) -> RationalQuiver:
    """Check a group action on ``q`` and enumerate the generated group.

    ``generators`` is a list of mappings with keys ``name``, ``vperm`` and
    ``eperm``; ids absent from a permutation map are fixed.
    """
    if not isinstance(q, Quiver):
        raise MalformedQuiver("expected a Quiver")
    eids = tuple(e.id for e in q.edges)
    gens = []
    for k, g in enumerate(generators):
        name = g.get("name") or f"g{k}"
        gens.append(GroupElement(name, _parse_perm(g.get("vperm"), q.vertices, "vertex", name),
                                 _parse_perm(g.get("eperm"), eids, "edge", name)))
    for g in gens:
        _check_compatible(q, g)

    ident = GroupElement("1", tuple(range(len(q.vertices))), tuple(range(len(eids))))
    seen = {ident.key(): ident}
    queue = deque([ident])
    while queue:
        h = queue.popleft()
        for g in gens:
            prod = GroupElement(g.name if h.name == "1" else f"{g.name}*{h.name}",
                                _compose(g.vperm, h.vperm), _compose(g.eperm, h.eperm))
            if prod.key() not in seen:
                seen[prod.key()] = prod
                if len(seen) > MAX_GROUP_ORDER:
                    raise ClosureBound(f"generated group exceeds {MAX_GROUP_ORDER} elements")
                queue.append(prod)
    elements = tuple(seen.values())
    # finite permutation groups are closed under inverses once closed under products
    for g in elements:
        _check_compatible(q, g)
    return RationalQuiver(q, tuple(gens), elements)


def _orbits(ids: tuple[str, ...], perms) -> list[list[str]]:
    seen = set()
    out = []
    for i, x in enumerate(ids):
        if i in seen:
            continue
        orbit = {p[i] for p in perms}
        seen |= orbit
        out.append(sorted(ids[j] for j in orbit))
    out.sort(key=lambda o: o[0])
    return out


def vertex_orbits(rq: RationalQuiver) -> list[list[str]]:
    """Vertex orbits, each sorted (least id first), ordered by least id."""
    return _orbits(rq.quiver.vertices, [g.vperm for g in rq.elements])


def edge_orbits(rq: RationalQuiver) -> list[list[str]]:
    return _orbits(tuple(e.id for e in rq.quiver.edges), [g.eperm for g in rq.elements])


def stabilizer_order(rq: RationalQuiver, item: str, kind: str | None = None) -> int:
    """Order of the stabilizer of a vertex or edge id."""
    q = rq.quiver
    eids = [e.id for e in q.edges]
    if kind is None:
        kind = "vertex" if item in q.vertices else "edge" if item in eids else None
    if kind == "vertex" and item in q.vertices:
        i = q.vertex_index()[item]
        return sum(1 for g in rq.elements if g.vperm[i] == i)
    if kind == "edge" and item in eids:
        i = eids.index(item)
        return sum(1 for g in rq.elements if g.eperm[i] == i)
    raise UnknownItem(f"unknown {kind or 'item'} {item!r}")
