"""Representations of acyclic quivers over Q.

Hom spaces, BGP reflection functors, projectives, enumeration of the
indecomposables of an ADE quiver and Krull-Schmidt decomposition by counting
hom dimensions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import Matrix, block_diag, hstack, kernel_basis, rank, solve, vstack
from .quiver import Quiver
from .roots import NotADE, Root, positive_roots, simple_reflection


class RepresentationError(ValueError):
    pass


class ShapeMismatch(RepresentationError):
    pass


class NotASink(RepresentationError):
    pass


class NotASource(RepresentationError):
    pass


class CyclicQuiver(RepresentationError):
    pass


class NonIntegralSolution(AssertionError):
    pass


class NegativeMultiplicity(AssertionError):
    pass


@dataclass(frozen=True)
class SplitRepresentation:
    quiver: Quiver
    dims: dict
    maps: dict

    def __post_init__(self):
        q = self.quiver
        if set(self.dims) != set(q.vertices):
            raise ShapeMismatch("dims must name every vertex exactly once")
        if any(int(d) != d or d < 0 for d in self.dims.values()):
            raise ShapeMismatch("dims must be nonnegative integers")
        if set(self.maps) != {e.id for e in q.edges}:
            raise ShapeMismatch("maps must name every edge exactly once")
        for e in q.edges:
            m = self.maps[e.id]
            if m.shape != (self.dims[e.tgt], self.dims[e.src]):
                raise ShapeMismatch(f"map {e.id} has shape {m.shape}, expected "
                                    f"{(self.dims[e.tgt], self.dims[e.src])}")

    @property
    def dim_vector(self) -> Root:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    def is_zero(self) -> bool:
        return not any(self.dims.values())

    def __eq__(self, other):
        if not isinstance(other, SplitRepresentation):
            return NotImplemented
        return self.quiver == other.quiver and self.dims == other.dims and self.maps == other.maps

    def __hash__(self):
        return hash((self.quiver, self.dim_vector))


def zero_rep(q: Quiver) -> SplitRepresentation:
    return SplitRepresentation(q, {v: 0 for v in q.vertices}, {e.id: Matrix.zeros(0, 0) for e in q.edges})


def simple(q: Quiver, v: str) -> SplitRepresentation:
    dims = {u: int(u == v) for u in q.vertices}
    return SplitRepresentation(q, dims, {e.id: Matrix.zeros(dims[e.tgt], dims[e.src]) for e in q.edges})


def direct_sum(reps) -> SplitRepresentation:
    reps = list(reps)
    q = reps[0].quiver
    dims = {v: sum(r.dims[v] for r in reps) for v in q.vertices}
    maps = {e.id: block_diag([r.maps[e.id] for r in reps]) for e in q.edges}
    return SplitRepresentation(q, dims, maps)


def conjugate(m: SplitRepresentation, change: dict) -> SplitRepresentation:
    """Base change by invertible matrices g_v: phi_e -> g_t phi_e g_s^-1."""
    inv = {v: g.inverse() for v, g in change.items()}
    maps = {e.id: change[e.tgt] @ m.maps[e.id] @ inv[e.src] for e in m.quiver.edges}
    return SplitRepresentation(m.quiver, dict(m.dims), maps)


@dataclass(frozen=True)
class HomSpace:
    dimension: int
    basis: tuple


def _intertwiner_system(m: SplitRepresentation, n: SplitRepresentation):
    """Rows of the linear system X_t phi^M_e = phi^N_e X_s in the entries of (X_v)."""
    if m.quiver != n.quiver:
        raise ShapeMismatch("representations of different quivers")
    q = m.quiver
    offset, col = {}, 0
    for v in q.vertices:
        offset[v] = col
        col += n.dims[v] * m.dims[v]
    rows = []
    for e in q.edges:
        s, t = e.src, e.tgt
        pm, pn = m.maps[e.id], n.maps[e.id]
        ms, mt = m.dims[s], m.dims[t]
        ns = n.dims[s]
        for p in range(n.dims[t]):
            for c in range(ms):
                row = [0] * col
                # (X_t phi^M)[p, c]
                for k in range(mt):
                    x = pm[k, c]
                    if x:
                        row[offset[t] + p * mt + k] += x
                # -(phi^N X_s)[p, c]
                for k in range(ns):
                    x = pn[p, k]
                    if x:
                        row[offset[s] + k * ms + c] -= x
                rows.append(row)
    return Matrix.from_rows(rows, col), offset


def hom(m: SplitRepresentation, n: SplitRepresentation) -> HomSpace:
    """Basis of the space of morphisms m -> n, as vertex-indexed matrix families."""
    system, offset = _intertwiner_system(m, n)
    basis = []
    for vec in kernel_basis(system):
        fam = {}
        for v in m.quiver.vertices:
            r, c = n.dims[v], m.dims[v]
            fam[v] = Matrix(r, c, vec[offset[v]:offset[v] + r * c])
        basis.append(fam)
    return HomSpace(len(basis), tuple(basis))


def hom_dim(m: SplitRepresentation, n: SplitRepresentation) -> int:
    system, _ = _intertwiner_system(m, n)
    return system.cols - rank(system)


def euler_form(q: Quiver, a: Root, b: Root) -> int:
    idx = q.vertex_index()
    return (sum(x * y for x, y in zip(a, b))
            - sum(a[idx[e.src]] * b[idx[e.tgt]] for e in q.edges))


def reflect_sink(m: SplitRepresentation, v: str) -> SplitRepresentation:
    """Reflection at a sink v; the result lives on the quiver reversed at v."""
    q = m.quiver
    if not q.is_sink(v) or any(e.src == e.tgt == v for e in q.edges):
        raise NotASink(f"{v} is not a sink")
    incoming = q.incoming(v)
    width = sum(m.dims[e.src] for e in incoming)
    if incoming:
        total = hstack([m.maps[e.id] for e in incoming]) if m.dims[v] else Matrix.zeros(0, width)
    else:
        total = Matrix.zeros(m.dims[v], 0)
    ker = kernel_basis(total)
    dims = dict(m.dims)
    dims[v] = len(ker)
    maps = dict(m.maps)
    start = 0
    for e in incoming:
        d = m.dims[e.src]
        maps[e.id] = Matrix(d, len(ker), [ker[c][start + r] for r in range(d) for c in range(len(ker))])
        start += d
    return SplitRepresentation(q.reverse_at(v), dims, maps)


def reflect_source(m: SplitRepresentation, v: str) -> SplitRepresentation:
    """Reflection at a source v: the new space is the cokernel of M(v) -> sum M(t(e))."""
    q = m.quiver
    if not q.is_source(v) or any(e.src == e.tgt == v for e in q.edges):
        raise NotASource(f"{v} is not a source")
    outgoing = q.outgoing(v)
    height = sum(m.dims[e.tgt] for e in outgoing)
    if outgoing and m.dims[v]:
        total = vstack([m.maps[e.id] for e in outgoing])
    else:
        total = Matrix.zeros(height, m.dims[v])
    # rows of the quotient map: a basis of the left kernel
    quotient = kernel_basis(total.transpose())
    dims = dict(m.dims)
    dims[v] = len(quotient)
    maps = dict(m.maps)
    start = 0
    for e in outgoing:
        d = m.dims[e.tgt]
        maps[e.id] = Matrix(len(quotient), d, [row[start + c] for row in quotient for c in range(d)])
        start += d
    return SplitRepresentation(q.reverse_at(v), dims, maps)


def projective(q: Quiver, v: str) -> SplitRepresentation:
    """Path model of the indecomposable projective at v."""
    if not q.is_acyclic():
        raise CyclicQuiver("projectives need an acyclic quiver")
    paths: dict[str, list[tuple[str, ...]]] = {u: [] for u in q.vertices}
    frontier = [((), v)]
    while frontier:
        nxt = []
        for p, end in frontier:
            paths[end].append(p)
            for e in q.outgoing(end):
                nxt.append((p + (e.id,), e.tgt))
        frontier = nxt
    for u in paths:
        paths[u].sort(key=lambda p: (len(p), p))
    pos = {u: {p: k for k, p in enumerate(ps)} for u, ps in paths.items()}
    dims = {u: len(ps) for u, ps in paths.items()}
    maps = {}
    for e in q.edges:
        rows = [[0] * dims[e.src] for _ in range(dims[e.tgt])]
        for p, k in pos[e.src].items():
            rows[pos[e.tgt][p + (e.id,)]][k] = 1
        maps[e.id] = Matrix.from_rows(rows, dims[e.src]) if rows else Matrix.zeros(0, dims[e.src])
    return SplitRepresentation(q, dims, maps)


def coxeter_minus(m: SplitRepresentation, order: list[str]) -> SplitRepresentation | None:
    """Reflect at every vertex in topological order; None once the rep dies."""
    for v in order:
        m = reflect_source(m, v)
        if m.is_zero():
            return None
    return m


@lru_cache(maxsize=None)
def enumerate_indecomposables(q: Quiver) -> dict[Root, SplitRepresentation]:
    """One indecomposable per positive root, from Coxeter orbits of projectives."""
    order = q.topological_order()
    if order is None:
        raise CyclicQuiver("enumeration needs an acyclic quiver")
    rs = positive_roots(q)
    found: dict[Root, SplitRepresentation] = {}
    for v in q.vertices:
        x = projective(q, v)
        while x is not None:
            if min(x.dim_vector) < 0 or x.dim_vector in found:
                break
            found[x.dim_vector] = x
            x = coxeter_minus(x, order)
            if x is not None:
                assert x.quiver == q, "Coxeter functor must restore the orientation"
    if set(found) != set(rs.positives):
        missing = sorted(set(rs.positives) - set(found))
        extra = sorted(set(found) - set(rs.positives))
        raise AssertionError(f"Coxeter enumeration mismatch: missing {missing}, extra {extra}")
    for d, x in found.items():
        if hom_dim(x, x) != 1:
            raise AssertionError(f"indecomposable {d} is not a brick")
    return {d: found[d] for d in rs.positives}


@lru_cache(maxsize=None)
def _hom_matrix(q: Quiver):
    indecs = enumerate_indecomposables(q)
    roots = list(indecs)
    h = Matrix.from_rows([[hom_dim(indecs[a], indecs[b]) for b in roots] for a in roots])
    return roots, h


def decompose(m: SplitRepresentation) -> dict[Root, int]:
    """Multiplicity of each indecomposable summand of m (nonzero entries only)."""
    q = m.quiver
    if not q.is_acyclic():
        raise CyclicQuiver("decompose needs an acyclic quiver")
    roots, h = _hom_matrix(q)
    indecs = enumerate_indecomposables(q)
    rhs = [hom_dim(indecs[a], m) for a in roots]
    # rows of h indexed by the source X_a: hom(X_a, M) = sum_b m_b hom(X_a, X_b)
    if rank(h) != len(roots):
        raise AssertionError("hom-dimension matrix is singular")
    sol = solve(h, rhs)
    out = {}
    for r, x in zip(roots, sol):
        if x.denominator != 1:
            raise NonIntegralSolution(f"multiplicity {x} for {r}")
        if x < 0:
            raise NegativeMultiplicity(f"multiplicity {x} for {r}")
        if x:
            out[r] = int(x)
    total = tuple(sum(k * r[i] for r, k in out.items()) for i in range(len(q.vertices)))
    if total != m.dim_vector:
        raise AssertionError(f"summands add up to {total}, not {m.dim_vector}")
    return out


__all__ = [
    "SplitRepresentation", "HomSpace", "hom", "hom_dim", "reflect_sink", "reflect_source",
    "projective", "enumerate_indecomposables", "decompose", "direct_sum", "conjugate",
    "simple", "zero_rep", "euler_form", "simple_reflection", "NotADE",
]
