"""Positive roots of simply-laced quivers and Galois orbits on them."""
from __future__ import annotations

from dataclasses import dataclass

from .quiver import Quiver, RationalQuiver, underlying_graph
from .species import classify_rational_quiver

Root = tuple[int, ...]


class NotADE(ValueError):
    pass


class ActionDoesNotPreserveRoots(AssertionError):
    pass


def graded_key(d: Root):
    """Coordinate sum first, then lexicographically descending."""
    return (sum(d), tuple(-x for x in d))


def simple_reflection(q: Quiver, d: Root, i: int) -> Root:
    """s_i(d): coordinate i becomes -d_i + sum of neighbouring coordinates."""
    idx = q.vertex_index()
    v = q.vertices[i]
    s = 0
    for e in q.edges:
        if e.src == v and e.tgt != v:
            s += d[idx[e.tgt]]
        elif e.tgt == v and e.src != v:
            s += d[idx[e.src]]
    out = list(d)
    out[i] = s - d[i]
    return tuple(out)


def tits_form(q: Quiver, d) -> int:
    idx = q.vertex_index()
    return sum(x * x for x in d) - sum(d[idx[e.src]] * d[idx[e.tgt]] for e in q.edges)


def ade_type(q: Quiver) -> str:
    """Name of the simply-laced Dynkin diagram underlying q, or raise NotADE."""
    g = underlying_graph(q)
    if not q.vertices or not g.simple or not g.connected:
        raise NotADE("underlying graph must be simple and connected")
    verdict = classify_rational_quiver(RationalQuiver.trivial(q))
    if verdict.kind != "FiniteDynkin" or verdict.name[0] not in "ADE":
        raise NotADE(f"underlying graph is not of type A, D or E ({verdict})")
    return verdict.name


@dataclass(frozen=True)
class RootSystem:
    quiver: Quiver
    type_name: str
    simples: tuple[Root, ...]
    positives: tuple[Root, ...]

    def as_dict(self, d: Root) -> dict[str, int]:
        return dict(zip(self.quiver.vertices, d))

    def index(self, d: Root) -> int:
        return self.positives.index(tuple(d))


def positive_roots(q: Quiver) -> RootSystem:
    """Close the simple roots under simple reflections, keeping d >= 0."""
    name = ade_type(q)
    n = len(q.vertices)
    simples = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    found = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for d in frontier:
            for i in range(n):
                r = simple_reflection(q, d, i)
                if min(r) >= 0 and any(r) and r not in found:
                    found.add(r)
                    nxt.append(r)
        frontier = nxt
    return RootSystem(q, name, simples, tuple(sorted(found, key=graded_key)))


def act_on_root(rq: RationalQuiver, g, d: Root) -> Root:
    """(g.d)(g v) = d(v)."""
    out = [0] * len(d)
    for i, x in enumerate(d):
        out[g.vperm[i]] = x
    return tuple(out)


def galois_root_action(rq: RationalQuiver, rs: RootSystem) -> dict[str, tuple[int, ...]]:
    """For each group element name, the induced permutation of rs.positives."""
    if rq.quiver.vertices != rs.quiver.vertices:
        raise ValueError("rational quiver and root system live on different quivers")
    pos = {d: k for k, d in enumerate(rs.positives)}
    action = {}
    for g in rq.elements:
        images = []
        for d in rs.positives:
            gd = act_on_root(rq, g, d)
            if gd not in pos:
                raise ActionDoesNotPreserveRoots(f"{g.name} sends {d} to {gd}")
            images.append(pos[gd])
        if len(set(images)) != len(images):
            raise ActionDoesNotPreserveRoots(f"{g.name} is not injective on roots")
        action[g.name] = tuple(images)
    return action


@dataclass(frozen=True)
class RootOrbit:
    representative: Root
    members: tuple[Root, ...]
    stabilizer_order: int
    field_degree: int

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class OrbitClassification:
    root_system: RootSystem
    group_order: int
    orbits: tuple[RootOrbit, ...]

    def orbit_of(self, d: Root) -> RootOrbit:
        d = tuple(d)
        for o in self.orbits:
            if d in o.members:
                return o
        raise KeyError(d)


def classify_indecomposables(rq: RationalQuiver) -> OrbitClassification:
    """Galois orbits on the positive roots; one per indecomposable over the base.

    Orbits come in the graded order of their first member; the representative
    is the lexicographically least member.
    """
    rs = positive_roots(rq.quiver)
    action = galois_root_action(rq, rs)
    seen: set[int] = set()
    orbits = []
    for k, d in enumerate(rs.positives):
        if k in seen:
            continue
        member_idx = {perm[k] for perm in action.values()}
        seen |= member_idx
        members = tuple(rs.positives[m] for m in sorted(member_idx))
        stab = sum(1 for perm in action.values() if perm[k] == k)
        orbits.append(RootOrbit(min(members), members, stab, rq.group_order // stab))
    return OrbitClassification(rs, rq.group_order, tuple(orbits))
