"""Command line entry point: ``ratquiver <command> [args] [--format text|json]``."""
from __future__ import annotations

import argparse
import json
import sys

from . import reps as _reps
from .documents import (MalformedDocument, format_rational, load_json, parse_quiver_document, parse_rational,
                        parse_representation_document, render_matrix)
from .linalg import LinalgError
from .quiver import MalformedQuiver, QuiverError, edge_orbits, stabilizer_order, validate, vertex_orbits
from .roots import NotADE, classify_indecomposables, positive_roots
from .species import SpeciesError, build_species, classify_rational_quiver, valued_graph, DiagonalBimodule
from .wild import (INF, QuaternionInput, WildLabError, centralizer, descent_certificate, division_verdict,
                   generated_algebra_dim_L, identify_opposite, split_embed)

COMMANDS = ("validate", "species", "classify", "roots", "orbits", "indecs", "decompose", "wildlab")


class DomainError(Exception):
    pass


def _vec(d) -> str:
    return "(" + ",".join(str(x) for x in d) + ")"


def _load_rq(path):
    q, gens = parse_quiver_document(load_json(path))
    return validate(q, gens)


def cmd_validate(args):
    rq = _load_rq(args.quiver)
    q = rq.quiver
    data = {
        "vertices": list(q.vertices),
        "edges": len(q.edges),
        "group_order": rq.group_order,
        "vertex_orbits": vertex_orbits(rq),
        "edge_orbits": edge_orbits(rq),
        "stabilizers": {v: stabilizer_order(rq, v, "vertex") for v in q.vertices},
    }
    text = [f"valid rational quiver: {len(q.vertices)} vertices, {len(q.edges)} edges, group order {rq.group_order}",
            "vertex orbits: " + " ".join("{" + ",".join(o) + "}" for o in data["vertex_orbits"]),
            "edge orbits: " + " ".join("{" + ",".join(o) + "}" for o in data["edge_orbits"])]
    return data, text


def cmd_species(args):
    rq = _load_rq(args.quiver)
    sk = build_species(rq)
    data = {
        "group_order": rq.group_order,
        "nodes": [{"orbit": n.index, "representative": n.representative, "members": list(n.members),
                   "field_degree": n.field_degree, "stabilizer_order": n.stabilizer_order} for n in sk.nodes],
        "arrows": [{"source": a.source, "target": a.target,
                    "summands": [{"edges": list(s.edges), "degree": s.degree} for s in a.summands]}
                   for a in sk.arrows],
    }
    text = [f"node {n.index} [{','.join(n.members)}]: field degree {n.field_degree}" for n in sk.nodes]
    text += [f"arrow {a.source} -> {a.target}: summand degrees {[s.degree for s in a.summands]}" for a in sk.arrows]
    try:
        vg = valued_graph(sk)
        data["valued_graph"] = {"symmetrizers": list(vg.symmetrizers),
                                "edges": [{"i": e.i, "j": e.j, "valuation": [e.d_ij, e.d_ji]} for e in vg.edges]}
        text.append(f"symmetrizers: {list(vg.symmetrizers)}")
        text += [f"valued edge {e.i} - {e.j}: ({e.d_ij},{e.d_ji})" for e in vg.edges]
    except DiagonalBimodule as exc:
        data["valued_graph"] = None
        text.append(f"no valued graph: {exc}")
    return data, text


def cmd_classify(args):
    rq = _load_rq(args.quiver)
    v = classify_rational_quiver(rq)
    data = {"verdict": str(v), "kind": v.kind, "name": v.name, "reason": v.reason, "notices": list(v.notices)}
    text = [str(v)] + [f"notice: {n}" for n in v.notices]
    return data, text


def cmd_roots(args):
    rq = _load_rq(args.quiver)
    rs = positive_roots(rq.quiver)
    data = {"type": rs.type_name, "vertices": list(rq.quiver.vertices),
            "positive_roots": [list(d) for d in rs.positives]}
    text = [f"type {rs.type_name}: {len(rs.positives)} positive roots"] + [_vec(d) for d in rs.positives]
    return data, text


def cmd_orbits(args):
    rq = _load_rq(args.quiver)
    oc = classify_indecomposables(rq)
    data = {"group_order": oc.group_order, "positive_roots": len(oc.root_system.positives),
            "orbits": [{"representative": list(o.representative), "members": [list(m) for m in o.members],
                        "size": o.size, "stabilizer_order": o.stabilizer_order, "field_degree": o.field_degree}
                       for o in oc.orbits]}
    text = [f"{len(oc.orbits)} orbits on {len(oc.root_system.positives)} positive roots"]
    for k, o in enumerate(oc.orbits, 1):
        text.append(f"orbit {k}: size {o.size}, stabilizer {o.stabilizer_order}, field degree {o.field_degree}, "
                    f"representative {_vec(o.representative)}, members "
                    + " ".join(_vec(m) for m in o.members))
    return data, text


def cmd_indecs(args):
    rq = _load_rq(args.quiver)
    try:
        indecs = _reps.enumerate_indecomposables(rq.quiver)
    except _reps.CyclicQuiver as exc:
        raise DomainError(str(exc)) from exc
    data = {"count": len(indecs), "representations": []}
    text = [f"{len(indecs)} indecomposable representations"]
    for d, x in indecs.items():
        end = _reps.hom_dim(x, x)
        data["representations"].append({"dims": list(d), "endomorphism_dim": end,
                                         "maps": {e.id: render_matrix(x.maps[e.id]) for e in rq.quiver.edges}})
        text.append(f"{_vec(d)}  End dim {end}")
    return data, text


def cmd_decompose(args):
    rq = _load_rq(args.quiver)
    m = parse_representation_document(load_json(args.representation), rq.quiver)
    mult = _reps.decompose(m)
    data = {"dims": list(m.dim_vector),
            "summands": [{"root": list(r), "multiplicity": k} for r, k in mult.items()]}
    text = [f"{_vec(m.dim_vector)} = " + " + ".join(f"{k}*{_vec(r)}" if k > 1 else _vec(r)
                                                      for r, k in mult.items())]
    return data, text


def _place(p) -> str:
    return "inf" if p == INF else str(p)


def cmd_wildlab(args):
    if args.a is None or args.b is None:
        raise MalformedDocument("wildlab needs --a and --b")
    inp = QuaternionInput(parse_rational(args.a), parse_rational(args.b))
    rep = split_embed(inp)
    dim_l = generated_algebra_dim_L(rep)
    report = centralizer(rep)
    match = identify_opposite(rep, report) if report.dimension == 4 else None
    verdict = division_verdict(inp)
    descent = descent_certificate(rep)
    witness = report.nilpotent_witness
    data = {
        "a": format_rational(inp.a), "b": format_rational(inp.b), "field": f"Q(sqrt({rep.d}))",
        "generated_algebra_dim_L": dim_l,
        "absolutely_irreducible": dim_l == 4,
        "centralizer": {"dimension": report.dimension, "commutative": report.commutative,
                        "associative": report.associative, "unital": report.unital,
                        "basis": [render_matrix(b) for b in report.basis]},
        "opposite_match": None if match is None else {"matched": match.matched,
                                                      "cyclic_vector": match.cyclic_vector,
                                                      "relations": match.relations},
        "division": verdict.is_division,
        "obstruction": verdict.obstruction,
        "certificates": [{"place": _place(p), "symbol": s} for p, s in verdict.certificates],
        "zero_divisor_witness": None if witness is None else {"coefficients": list(witness[0]),
                                                             "element": render_matrix(witness[1])},
        "descent": {"space_dim": descent.space_dim,
                    "lambda_values": [format_rational(x) for x in descent.lambda_values],
                    "obstructed": descent.obstructed},
    }
    certs = ", ".join(f"{'∞' if p == INF else p}:{s}" for p, s in verdict.certificates)
    obstruction = "nontrivial (order 2)" if verdict.is_division else "trivial"
    text = [
        f"quaternion algebra ({data['a']},{data['b']}) split by {data['field']}",
        f"generated L-algebra dimension: {dim_l}; absolutely irreducible: {str(dim_l == 4).lower()}",
        f"centralizer dimension: {report.dimension}; commutative: {str(report.commutative).lower()}",
    ]
    if match is not None:
        text.append(f"opposite algebra match: {str(match.matched).lower()}")
    text.append(f"division: {str(verdict.is_division).lower()}; obstruction: {obstruction}; certificates: {certs}")
    if witness is not None:
        text.append(f"zero-divisor witness coefficients: {list(witness[0])}")
    text.append(f"descent: intertwiner space dim {descent.space_dim}; lambda "
                f"{[format_rational(x) for x in descent.lambda_values]}; "
                f"obstructed: {str(descent.obstructed).lower()}")
    return data, text


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratquiver", description="Representations of rational quivers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, *positional):
        p = sub.add_parser(name, help=help)
        for arg in positional:
            p.add_argument(arg)
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    add("validate", "check a quiver document and its group action", "quiver")
    add("species", "species skeleton and valued graph", "quiver")
    add("classify", "representation type", "quiver")
    add("roots", "positive roots of an ADE quiver", "quiver")
    add("orbits", "Galois orbits on positive roots", "quiver")
    add("indecs", "all indecomposables of an ADE quiver", "quiver")
    add("decompose", "decompose a representation", "quiver", "representation")
    w = add("wildlab", "quaternion two-loop construction")
    w.add_argument("--a")
    w.add_argument("--b")
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        data, text = HANDLERS[args.command](args)
    except (MalformedDocument, MalformedQuiver) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, QuiverError, SpeciesError, NotADE, WildLabError, LinalgError,
            _reps.RepresentationError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        out.write(json.dumps({"command": args.command, **data}, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(text) + "\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
