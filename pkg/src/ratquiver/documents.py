"""JSON documents for quivers with group actions and for representations."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .linalg import Matrix, as_fraction
from .quiver import Edge, Quiver, QuiverError
from .reps import RepresentationError, SplitRepresentation


class MalformedDocument(ValueError):
    pass


def _require(doc, key, kind):
    if not isinstance(doc, dict) or key not in doc or not isinstance(doc[key], kind):
        raise MalformedDocument(f"missing or invalid field {key!r}")
    return doc[key]


def parse_quiver_document(doc: dict) -> tuple[Quiver, list[dict]]:
    vertices = _require(doc, "vertices", list)
    edges = _require(doc, "edges", list)
    try:
        q = Quiver(tuple(str(v) for v in vertices),
                   tuple(Edge(str(e["id"]), str(e["src"]), str(e["tgt"])) for e in edges))
    except (KeyError, TypeError) as exc:
        raise MalformedDocument(f"bad edge record: {exc}") from exc
    except QuiverError as exc:
        raise MalformedDocument(str(exc)) from exc
    gens = []
    group = doc.get("group", {"generators": []})
    for g in _require(group, "generators", list):
        if not isinstance(g, dict):
            raise MalformedDocument("generator must be an object")
        gens.append({"name": str(g.get("name", f"g{len(gens)}")),
                     "vperm": dict(g.get("vperm", {})),
                     "eperm": dict(g.get("eperm", {}))})
    return q, gens


def render_quiver_document(q: Quiver, generators) -> dict:
    return {
        "vertices": list(q.vertices),
        "edges": [{"id": e.id, "src": e.src, "tgt": e.tgt} for e in q.edges],
        "group": {"generators": [{"name": g["name"], "vperm": dict(g.get("vperm", {})),
                                  "eperm": dict(g.get("eperm", {}))} for g in generators]},
    }


def format_rational(x) -> str:
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise MalformedDocument(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise MalformedDocument(f"rationals must be strings 'p/q', got {s!r}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedDocument(f"not a rational: {s!r}") from exc


def parse_representation_document(doc: dict, q: Quiver) -> SplitRepresentation:
    dims = _require(doc, "dims", dict)
    maps = _require(doc, "maps", dict)
    try:
        dims = {str(v): int(d) for v, d in dims.items()}
        matrices = {}
        for e in q.edges:
            rows = maps.get(e.id)
            if not isinstance(rows, list):
                raise MalformedDocument(f"missing map for edge {e.id}")
            r, c = dims[e.tgt], dims[e.src]
            if len(rows) != r or any(not isinstance(row, list) or len(row) != c for row in rows):
                raise MalformedDocument(f"map {e.id} must be a {r}x{c} array")
            matrices[e.id] = Matrix(r, c, [parse_rational(x) for row in rows for x in row])
        if set(maps) - set(matrices):
            raise MalformedDocument(f"maps for unknown edges {sorted(set(maps) - set(matrices))}")
        return SplitRepresentation(q, dims, matrices)
    except KeyError as exc:
        raise MalformedDocument(f"dims missing vertex {exc}") from exc
    except RepresentationError as exc:
        raise MalformedDocument(str(exc)) from exc


def render_matrix(m: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in m.row(i)] for i in range(m.rows)]


def render_representation_document(m: SplitRepresentation) -> dict:
    return {
        "dims": {v: m.dims[v] for v in m.quiver.vertices},
        "maps": {e.id: render_matrix(m.maps[e.id]) for e in m.quiver.edges},
    }


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise MalformedDocument(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"{path} is not valid JSON: {exc}") from exc


def fixture_path(name: str) -> Path:
    return Path(__file__).parent / "fixtures" / name
