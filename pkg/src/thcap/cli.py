"""Command-line interface.

Subcommands: construct, homology, verify, pipeline, reproduce-examples.
All file formats are the JSON schemas defined by the library (complexes,
graphs, profiles, pairs, actions).  With --outdir, report-producing
commands additionally write a CSV summary and PNG figures next to the JSON
report.

Exit codes: 0 all checks pass, 1 a verification failed, 2 cap or usage
error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .complexes import Graph, SimplicialComplex, connected_components, simplex
from .clusters import ClusterError, cluster_report, verify_cluster, wedge_circle_count
from .constructions import (
    GolombRuler,
    choose_modulus,
    cyclic_extension,
    gamma_d_pair_defaults,
    golomb_violation,
    greedy_golomb,
    group_extension_graph,
    identity_component,
    k_family_complex,
    power_cycle,
)
from .complexes import barycentric_1skeleton
from .groups import gamma_d_pair, pair_from_json, satisfies_G, verify_transposition_identities
from .homology import HomologyProfile, homology
from .pipelines import (
    DEFAULT_ELEMENT_CAP,
    CapExceeded,
    PipelineReport,
    default_face_cap,
    pipeline_cayley,
    pipeline_cyclic,
    reproduce_examples,
)
from .transitivity import lefschetz_obstruction

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _dump(data: dict, out: str | None = None) -> None:
    text = json.dumps(data, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_complex(path: str) -> SimplicialComplex:
    return SimplicialComplex.from_json(_load_json(path))


def _load_graph(path: str) -> Graph:
    return Graph.from_json(_load_json(path))


def _parse_ruler(spec: str, K: SimplicialComplex) -> GolombRuler:
    if spec == "greedy":
        return greedy_golomb(len(K.vertices))
    return GolombRuler(tuple(int(x) for x in spec.split(",")))


def _parse_marks(spec: str) -> tuple[int, ...]:
    return tuple(int(x) for x in spec.split(","))


def _write_pipeline_artifacts(report: PipelineReport, outdir: str) -> None:
    from .plotting import save_profile_figure, save_shape_figure

    os.makedirs(outdir, exist_ok=True)
    _dump(report.to_json(), os.path.join(outdir, "report.json"))
    with open(os.path.join(outdir, "summary.csv"), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["record", "name", "value"])
        for k, v in report.parameters.items():
            writer.writerow(["parameter", k, v])
        writer.writerow(["result", "n", report.n])
        writer.writerow(["result", "l", report.l])
        writer.writerow(["result", "cluster_girth", report.cluster_girth])
        if report.predicted is not None:
            writer.writerow(["profile", "predicted", report.predicted.paper_tuple()])
        for name, prof in report.computed.items():
            writer.writerow(["profile", name, prof.paper_tuple()])
        for k, v in report.verdicts.items():
            writer.writerow(["verdict", k, "pass" if v else "FAIL"])
        writer.writerow(["result", "pass", report.passed])
    save_profile_figure(
        report.computed, report.predicted,
        os.path.join(outdir, "profile.png"),
        f"{report.pipeline} pipeline: computed vs predicted homology")
    if report.decomp is not None:
        save_shape_figure(
            report.decomp, os.path.join(outdir, "shape.png"),
            f"cluster shape: {report.decomp.k} parts")


def _finish_pipeline(report: PipelineReport, outdir: str | None) -> int:
    if outdir:
        _write_pipeline_artifacts(report, outdir)
        print(f"report written to {outdir}/report.json (+ summary.csv, figures)")
    else:
        _dump(report.to_json())
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_construct(args) -> int:
    if args.kind == "cyclic":
        K = _load_complex(args.complex)
        ruler = _parse_ruler(args.ruler, K)
        n = choose_modulus(ruler) if args.n == "auto" else int(args.n)
        ext = cyclic_extension(K, ruler, n)
        data = ext.complex.to_json()
        data["provenance"] = {
            "construction": "cyclic-extension",
            "ruler": list(ruler.marks),
            "modulus": n,
            "parts": [list(p) for p in ext.parts],
        }
        _dump(data, args.output)
        return EXIT_PASS

    if args.kind == "cayley":
        K = _load_complex(args.complex)
        H = barycentric_1skeleton(K)
        d_prime = len(H.vertices)
        a_def, m_def = gamma_d_pair_defaults(d_prime)
        a = a_def if args.a == "auto" else _parse_marks(args.a)
        m = m_def if args.m == "auto" else int(args.m)
        import math

        order = math.factorial(d_prime + 1) * m
        if order > args.element_cap:
            print(f"group order {order} exceeds element cap {args.element_cap}",
                  file=sys.stderr)
            return EXIT_USAGE
        pair = gamma_d_pair(d_prime, a, m)
        ext = group_extension_graph(H, pair)
        sub, G, parts = identity_component(ext)
        data = G.to_json()
        data["provenance"] = {
            "construction": "cayley-identity-component",
            "group": pair.group.name,
            "D": [pair.group.canonical_label(g) for g in pair.distinguished],
            "a": list(a),
            "m": m,
            "subgroup_order": sub.order(),
            "parts": [list(p) for p in parts],
        }
        _dump(data, args.output)
        return EXIT_PASS

    if args.kind == "example":
        params = dict(kv.split("=") for kv in args.params.split(",")) if args.params else {}
        if args.family == "power-cycle":
            G = power_cycle(int(params.get("n", 13)), int(params.get("r", 3)))
            data = G.to_json()
            data["provenance"] = {"construction": "power-cycle", **params}
        elif args.family == "k-family":
            K = k_family_complex(int(params.get("k", 2)))
            data = K.to_json()
            data["provenance"] = {"construction": "k-family", **params}
        else:
            print(f"unknown family {args.family!r}", file=sys.stderr)
            return EXIT_USAGE
        _dump(data, args.output)
        return EXIT_PASS

    return EXIT_USAGE


def cmd_homology(args) -> int:
    K = _load_complex(args.complex)
    prof = homology(K)
    _dump(prof.to_json())
    print(prof.paper_tuple())
    return EXIT_PASS


def cmd_verify_golomb(args) -> int:
    marks = _parse_marks(args.marks)
    violation = golomb_violation(marks)
    report = {"marks": list(marks), "golomb": violation is None}
    if violation is not None:
        report["violation"] = [list(violation[0]), list(violation[1])]
    elif args.modulus:
        report["modulus"] = choose_modulus(GolombRuler(marks))
    _dump(report)
    return EXIT_PASS if violation is None else EXIT_FAIL


def cmd_verify_rp(args) -> int:
    pair = pair_from_json(_load_json(args.pair))
    witness = satisfies_G(pair, args.p)
    report = {
        "group": pair.group.name,
        "d": pair.d,
        "condition": f"G({args.p})",
        "holds": witness is None,
    }
    if witness is not None:
        report["witness"] = {"p": witness.p, "indices": list(witness.indices)}
    _dump(report)
    return EXIT_PASS if witness is None else EXIT_FAIL


def cmd_verify_identities(args) -> int:
    report = verify_transposition_identities(args.m, args.length)
    _dump({
        "m": report.m,
        "word_length": report.word_length,
        "total_words": report.total_words,
        "identity_words": report.identity_words,
        "adjacent_equal": report.adjacent_equal,
        "pattern_counts": report.pattern_counts,
        "exceptional": [list(w) for w in report.exceptional],
        "clean": report.clean,
    })
    return EXIT_PASS if report.clean else EXIT_FAIL


def _load_host(path: str):
    data = _load_json(path)
    if "facets" in data:
        return SimplicialComplex.from_json(data)
    return Graph.from_json(data)


def cmd_verify_cluster(args) -> int:
    host = _load_host(args.host)
    parts_data = _load_json(args.parts)
    parts = parts_data["parts"] if isinstance(parts_data, dict) else parts_data
    try:
        decomp = verify_cluster(host, parts)
        report = cluster_report(decomp)
    except ClusterError as err:
        report = cluster_report(err)
    if args.outdir:
        os.makedirs(args.outdir, exist_ok=True)
        _dump(report, os.path.join(args.outdir, "report.json"))
        with open(os.path.join(args.outdir, "summary.csv"), "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["name", "value"])
            for k, v in report.items():
                writer.writerow([k, v])
        if report["valid"]:
            from .plotting import save_shape_figure

            save_shape_figure(decomp, os.path.join(args.outdir, "shape.png"),
                              f"cluster shape: {decomp.k} parts")
        print(f"report written to {args.outdir}/report.json")
    else:
        _dump(report)
    return EXIT_PASS if report["valid"] else EXIT_FAIL


def _close_permutations(generators: dict, cap: int) -> list[dict]:
    """Close vertex permutations under composition (permutations as dicts)."""

    def key(p: dict) -> tuple:
        return tuple(sorted((str(k), str(v)) for k, v in p.items()))

    frontier = list(generators.values())
    seen = {key(p): p for p in frontier}
    identity = {v: v for v in next(iter(generators.values()))}
    seen.setdefault(key(identity), identity)
    while frontier:
        nxt = []
        for p in frontier:
            for q in generators.values():
                comp = {v: p[q[v]] for v in q}
                k = key(comp)
                if k not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(
                            f"generated permutation group exceeds {cap} elements")
                    seen[k] = comp
                    nxt.append(comp)
        frontier = nxt
    return list(seen.values())


def cmd_verify_transitivity(args) -> int:
    K = _load_complex(args.complex)
    data = _load_json(args.action)
    gens_raw = data["generators"] if isinstance(data, dict) and "generators" in data else data
    generators = {}
    vset = set(K.vertices)
    for name, pairs in gens_raw.items():
        perm = {u: w for u, w in pairs}
        if set(perm) != vset or set(perm.values()) != vset:
            print(f"generator {name!r} is not a permutation of the vertex set",
                  file=sys.stderr)
            return EXIT_USAGE
        generators[name] = perm
    try:
        group = _close_permutations(generators, args.element_cap)
    except CapExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE

    faces = set(K.faces())
    simplicial = True
    for p in group:
        for F in K.facets:
            image = [p[v] for v in F]
            if len(set(image)) != len(image) or simplex(image) not in faces:
                simplicial = False
                break
        if not simplicial:
            break
    v0 = K.vertices[0]
    vertex_orbit = {p[v0] for p in group}
    F0 = set(K.facets[0])
    facet_orbit = {simplex(p[v] for v in F0) for p in group}
    report = {
        "group_size": len(group),
        "action_simplicial": simplicial,
        "vertex_transitive": simplicial and vertex_orbit == vset,
        "facet_transitive": simplicial and facet_orbit == set(K.facets),
    }
    _dump(report)
    return EXIT_PASS if report["action_simplicial"] and report["vertex_transitive"] else EXIT_FAIL


def cmd_verify_lefschetz(args) -> int:
    prof = HomologyProfile.from_json(_load_json(args.profile))
    verdict = lefschetz_obstruction(prof)
    _dump({"profile": prof.paper_tuple(), "verdict": verdict})
    return EXIT_PASS


def cmd_pipeline(args) -> int:
    K = _load_complex(args.complex)
    try:
        if args.kind == "cyclic":
            ruler = _parse_ruler(args.ruler, K) if args.ruler != "greedy" else None
            n = None if args.n == "auto" else int(args.n)
            report = pipeline_cyclic(K, ruler=ruler, modulus=n, face_cap=args.face_cap)
        else:
            a = None if args.a == "auto" else _parse_marks(args.a)
            m = None if args.m == "auto" else int(args.m)
            report = pipeline_cayley(K, mode=args.mode, a=a, m=m,
                                     face_cap=args.face_cap,
                                     element_cap=args.element_cap)
    except CapExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    return _finish_pipeline(report, args.outdir)


def cmd_reproduce(args) -> int:
    report = reproduce_examples()
    if args.outdir:
        os.makedirs(args.outdir, exist_ok=True)
        _dump(report, os.path.join(args.outdir, "report.json"))
        with open(os.path.join(args.outdir, "summary.csv"), "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["name", "expected", "computed", "homology_matches",
                             "vertex_transitive", "facet_transitive", "asserted", "pass"])
            for e in report["instances"]:
                writer.writerow([e["name"], e["expected"], e["computed"],
                                 e["homology_matches"], e["vertex_transitive"],
                                 e["facet_transitive"], e["asserted"], e["pass"]])
        from .plotting import save_examples_figure

        save_examples_figure(report["instances"],
                             os.path.join(args.outdir, "examples.png"),
                             "reproduced torsion examples")
        print(f"report written to {args.outdir}/report.json")
    else:
        _dump(report)
    return EXIT_PASS if report["pass"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thcap",
        description="Constructions and exact homological verification of "
                    "vertex-transitive simplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_construct = sub.add_parser("construct", help="build a complex or graph")
    construct_sub = p_construct.add_subparsers(dest="kind", required=True)

    p_cyc = construct_sub.add_parser("cyclic", help="cyclic Golomb-ruler extension")
    p_cyc.add_argument("--complex", required=True, help="base complex JSON")
    p_cyc.add_argument("--ruler", default="greedy", help="'greedy' or a1,a2,...")
    p_cyc.add_argument("--n", default="auto", help="'auto' (least valid) or an integer")
    p_cyc.add_argument("-o", "--output", help="write JSON here instead of stdout")
    p_cyc.set_defaults(func=cmd_construct)

    p_cay = construct_sub.add_parser("cayley", help="Cayley graph of the identity component")
    p_cay.add_argument("--complex", required=True, help="base complex JSON")
    p_cay.add_argument("--a", default="auto", help="'auto' or a progression-free a1,a2,...")
    p_cay.add_argument("--m", default="auto", help="'auto' (4*a_d + 1) or an integer")
    p_cay.add_argument("--element-cap", type=int, default=DEFAULT_ELEMENT_CAP)
    p_cay.add_argument("-o", "--output")
    p_cay.set_defaults(func=cmd_construct)

    p_ex = construct_sub.add_parser("example", help="the torsion example families")
    p_ex.add_argument("--family", required=True, choices=["power-cycle", "k-family"])
    p_ex.add_argument("--params", default="", help="e.g. n=13,r=3 or k=2")
    p_ex.add_argument("-o", "--output")
    p_ex.set_defaults(func=cmd_construct)

    p_hom = sub.add_parser("homology", help="exact integral homology of a complex")
    p_hom.add_argument("complex", help="complex JSON")
    p_hom.set_defaults(func=cmd_homology)

    p_verify = sub.add_parser("verify", help="verification tools")
    verify_sub = p_verify.add_subparsers(dest="check", required=True)

    p_gol = verify_sub.add_parser("golomb", help="Golomb property of a mark list")
    p_gol.add_argument("--marks", required=True, help="a1,a2,...")
    p_gol.add_argument("--modulus", action="store_true",
                       help="also report the least valid modulus")
    p_gol.set_defaults(func=cmd_verify_golomb)

    p_rp = verify_sub.add_parser("rp", help="conditions R(1)..R(p) for a pair (Gamma, D)")
    p_rp.add_argument("pair", help="pair JSON: {group: spec, D: [...]}")
    p_rp.add_argument("--p", type=int, required=True)
    p_rp.set_defaults(func=cmd_verify_rp)

    p_id = verify_sub.add_parser("identities", help="star-transposition identity words")
    p_id.add_argument("--m", type=int, default=6)
    p_id.add_argument("--length", type=int, choices=[4, 6, 8], required=True)
    p_id.set_defaults(func=cmd_verify_identities)

    p_cl = verify_sub.add_parser("cluster", help="cluster decomposition of a host")
    p_cl.add_argument("host", help="complex or graph JSON")
    p_cl.add_argument("parts", help="JSON {parts: [[labels...], ...]}")
    p_cl.add_argument("--outdir")
    p_cl.set_defaults(func=cmd_verify_cluster)

    p_tr = verify_sub.add_parser("transitivity", help="supplied action on a complex")
    p_tr.add_argument("complex")
    p_tr.add_argument("action", help="JSON {generators: {name: [[v,w],...]}}")
    p_tr.add_argument("--element-cap", type=int, default=DEFAULT_ELEMENT_CAP)
    p_tr.set_defaults(func=cmd_verify_transitivity)

    p_lef = verify_sub.add_parser("lefschetz", help="fixed-point obstruction on a profile")
    p_lef.add_argument("profile", help="profile JSON")
    p_lef.set_defaults(func=cmd_verify_lefschetz)

    p_pipe = sub.add_parser("pipeline", help="full construction + verification runs")
    pipe_sub = p_pipe.add_subparsers(dest="kind", required=True)

    p_pc = pipe_sub.add_parser("cyclic")
    p_pc.add_argument("complex")
    p_pc.add_argument("--ruler", default="greedy")
    p_pc.add_argument("--n", default="auto")
    p_pc.add_argument("--face-cap", type=int, default=None)
    p_pc.add_argument("--outdir")
    p_pc.set_defaults(func=cmd_pipeline)

    p_pk = pipe_sub.add_parser("cayley")
    p_pk.add_argument("complex")
    p_pk.add_argument("--mode", default="both",
                      choices=["clique", "closed-neighbourhood", "both"])
    p_pk.add_argument("--a", default="auto")
    p_pk.add_argument("--m", default="auto")
    p_pk.add_argument("--face-cap", type=int, default=None)
    p_pk.add_argument("--element-cap", type=int, default=DEFAULT_ELEMENT_CAP)
    p_pk.add_argument("--outdir")
    p_pk.set_defaults(func=cmd_pipeline)

    p_rep = sub.add_parser("reproduce-examples",
                           help="rebuild the torsion examples and verify them")
    p_rep.add_argument("--outdir")
    p_rep.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
