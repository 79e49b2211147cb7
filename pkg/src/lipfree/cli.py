"""Command line front end.  Every subcommand prints JSON on stdout.

Exit codes: 0 success, 1 domain error (payload on stderr), 2 I/O or format error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import gallery
from ._parallel import default_jobs
from .errors import FormatError, LipFreeError
from .gallery import Bijection, configuration_space, distortion
from .ltp import all_pairs_profile, ltp_ratio, ramsey_extract
from .metric import format_scalar, space_from_json, space_to_json, to_scalar
from .octa import chain_check, combination_from_measure, frechet_check, oct_index
from .replicate import replicate_all
from .transport import kr_norm, ltp_extend, measure_from_json


class _Stdin:
    used = False


def _load_json(path):
    if path == "-":
        if _Stdin.used:
            raise FormatError("stdin ('-') can only be read once")
        _Stdin.used = True
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: malformed JSON ({exc})") from exc


def _space(path):
    return space_from_json(_load_json(path))


def _subset(M, text):
    if text is None:
        return tuple(range(M.n))
    return M.subset(s.strip() for s in text.split(",") if s.strip())


def cmd_validate(args):
    M = _space(args.space)
    return {"valid": True, "n": M.n, "base": M.base, "mode": M.mode}


def cmd_norm(args):
    M = _space(args.space)
    mu = measure_from_json(M, _load_json(args.measure))
    cert = kr_norm(M, mu)
    if args.certificate:
        return cert.to_json()
    return {"value": format_scalar(cert.value)}


def cmd_ltp(args):
    M = _space(args.space)
    return ltp_ratio(M, _subset(M, args.subset), args.jobs).to_json(M)


def cmd_profile(args):
    M = _space(args.space)
    rows = all_pairs_profile(M, args.jobs)
    return {"pairs": [{"subset": [a, b], "modulus": format_scalar(m)} for (a, b), m in rows]}


def cmd_oct(args):
    M = _space(args.space)
    family = [measure_from_json(M, _load_json(p)) for p in args.measures]
    return oct_index(M, family, args.jobs).to_json()


def cmd_chain(args):
    M = _space(args.space)
    return chain_check(M, _subset(M, args.subset), args.jobs).to_json()


def cmd_frechet(args):
    M = _space(args.space)
    mu = measure_from_json(M, _load_json(args.measure))
    return frechet_check(M, combination_from_measure(M, mu)).to_json()


def cmd_ramsey(args):
    M = _space(args.space)
    return ramsey_extract(M, _subset(M, args.subset), args.eps).to_json()


def cmd_extend(args):
    M = _space(args.space)
    obj = _load_json(args.values)
    if not isinstance(obj, dict) or not isinstance(obj.get("values"), dict):
        raise FormatError("values JSON must be {'values': {point: scalar}}")
    w = ltp_extend(M, _subset(M, args.subset), obj["values"], M.index(args.u), M.index(args.v), args.eps)
    return w.to_json()


def cmd_gen(args):
    name = args.name
    if name == "ejenega":
        return space_to_json(gallery.gen_ejenega(args.k))
    if name == "graph-m":
        return space_to_json(gallery.gen_graph_m(args.k))
    if name == "4branch":
        return space_to_json(gallery.gen_4branch(args.k))
    if name == "equilateral":
        return space_to_json(gallery.gen_equilateral(args.n, to_scalar(args.c)))
    if name == "geometric-line":
        return space_to_json(gallery.gen_geometric_line(args.k))
    if name == "dyadic-cluster":
        return space_to_json(gallery.gen_dyadic_cluster(args.k))
    if name == "tree-cluster":
        return space_to_json(gallery.gen_tree_cluster(to_scalar(args.eps), args.m))
    if name == "tree":
        if not args.tree:
            raise FormatError("gen tree needs --tree FILE")
        obj = _load_json(args.tree)
        try:
            edges, marked = obj["edges"], obj["marked"]
        except (KeyError, TypeError) as exc:
            raise FormatError("tree JSON needs 'edges' and 'marked'") from exc
        return space_to_json(gallery.gen_tree_metric([tuple(e) for e in edges], marked, obj.get("base")))
    if name == "ellp":
        conf, _ = gallery.gen_ellp_embed(float(to_scalar(args.p, "float")), args.k)
        return conf.to_json()
    if name == "points":
        obj = _load_json(args.points) if args.points else None
        if not isinstance(obj, dict) or not isinstance(obj.get("coordinates"), list):
            raise FormatError("gen points needs --points FILE with a 'coordinates' list")
        conf = configuration_space(obj["coordinates"], obj.get("p", 2), obj.get("points"), obj.get("base", 0))
        return conf.to_json()
    raise FormatError(f"unknown generator {name!r}")


def cmd_distortion(args):
    A, B = _space(args.a), _space(args.b)
    if args.map:
        obj = _load_json(args.map)
        mapping = obj.get("map") if isinstance(obj, dict) else obj
        if not isinstance(mapping, list):
            raise FormatError("map JSON must be a list or {'map': [...]}")
        mapping = tuple(B.index(x) for x in mapping)
    else:
        mapping = tuple(range(A.n))
    return distortion(Bijection(A, B, mapping)).to_json()


def cmd_replicate(args):
    if args.what != "all":
        raise FormatError("only 'replicate all' is supported")
    rows = replicate_all(args.jobs)
    return {"results": rows, "passed": sum(r["pass"] for r in rows), "failed": sum(not r["pass"] for r in rows)}


def build_parser():
    ap = argparse.ArgumentParser(prog="lipfree", description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=None, help="worker processes (default $FSL_JOBS or 1)")
    ap.add_argument("-o", "--output", help="write JSON here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the metric axioms")
    p.add_argument("space")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("norm", help="free-space norm of a measure")
    p.add_argument("space")
    p.add_argument("--measure", required=True)
    p.add_argument("--certificate", action="store_true", help="include transport plan and dual witness")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("ltp", help="LTP ratio and modulus of a subset")
    p.add_argument("space")
    p.add_argument("--subset", help="comma-separated indices or names (default: all points)")
    p.set_defaults(func=cmd_ltp)

    p = sub.add_parser("profile", help="modulus of every 2-point subset")
    p.add_argument("space")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("oct", help="octahedrality index of a measure family")
    p.add_argument("space")
    p.add_argument("--measures", nargs="+", required=True)
    p.set_defaults(func=cmd_oct)

    p = sub.add_parser("chain", help="compare LTP ratio and molecule octahedrality")
    p.add_argument("space")
    p.add_argument("--subset", required=True)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("frechet", help="differentiability of the norm at a positive measure")
    p.add_argument("space")
    p.add_argument("--measure", required=True)
    p.set_defaults(func=cmd_frechet)

    p = sub.add_parser("ramsey", help="extract a 2-point LTP failure")
    p.add_argument("space")
    p.add_argument("--subset", required=True)
    p.add_argument("--eps", required=True)
    p.set_defaults(func=cmd_ramsey)

    p = sub.add_parser("extend", help="Lipschitz extension with a long trapezoid")
    p.add_argument("space")
    p.add_argument("--subset", required=True)
    p.add_argument("--values", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--eps", required=True)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("gen", help="generate an example space")
    p.add_argument(
        "name",
        choices=[
            "ejenega", "graph-m", "4branch", "equilateral", "geometric-line",
            "dyadic-cluster", "tree", "tree-cluster", "ellp", "points",
        ],
    )
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--c", default="1")
    p.add_argument("--p", default="2")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--eps", default="1/4")
    p.add_argument("--tree", help="JSON {'edges': [[a, b, w], ...], 'marked': [...], 'base': a}")
    p.add_argument("--points", help="JSON {'coordinates': [[...], ...], 'p': 2}")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("distortion", help="distortion of a bijection between two spaces")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--map", help="JSON list: image of each point of A (default identity)")
    p.set_defaults(func=cmd_distortion)

    p = sub.add_parser("replicate", help="rerun the worked examples")
    p.add_argument("what", choices=["all"])
    p.set_defaults(func=cmd_replicate)
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs is None:
        args.jobs = default_jobs()
    _Stdin.used = False
    try:
        out = args.func(args)
    except LipFreeError as exc:
        print(json.dumps(exc.to_json()), file=sys.stderr)
        return 1
    except (FormatError, OSError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    text = json.dumps(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.command == "replicate" and out["failed"]:
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
