"""Command-line interface.

Every command prints one JSON document on standard output.  Exit status is
0 on success, 1 on a domain error (the JSON is then an error record) and 2
on a usage error.  Randomized commands take ``--seed`` and are
reproducible; vertex ids in all files are 0-based.
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .coloring import Certificate, Coloring, random_proper, verify_certificate
from .errors import KempeError
from .fourcolor import classify
from .reconfig import certify_equivalence, kempe_classes, normalize
from .topology import edge_width
from .torus_graph import GraphParams, canonical_forms, enumerate_graphs, sample_uniform
from .wsk import run_chain


def _dump(obj):
    return json.dumps(obj, sort_keys=True)


def _read_json(path):
    return json.loads(Path(path).read_text())


def _write(path, obj):
    Path(path).write_text(_dump(obj) + "\n")


def load_graph(path):
    return GraphParams.from_json(_read_json(path)).build()


def load_coloring(path):
    return Coloring.from_json(_read_json(path))


def _graph_summary(g):
    return {"graph": g.params.to_json(), "name": str(g.params), "n": g.n, "fingerprint": g.fingerprint}


def cmd_gen(args):
    if args.family == "shifted_grid":
        if None in (args.a, args.b, args.c):
            raise _Usage("shifted_grid needs --a, --b and --c")
        params = GraphParams.grid(args.a, args.b, args.c)
    else:
        if None in (args.n, args.r):
            raise _Usage("circulant needs --n and --r")
        params = GraphParams.circulant(args.n, args.r)
    g = params.build()
    if args.output:
        _write(args.output, params.to_json())
    if args.dimacs:
        Path(args.dimacs).write_text(g.to_dimacs())
    if args.rotation:
        _write(args.rotation, {"fingerprint": g.fingerprint, "rotation": g.rotation.tolist()})
    return _graph_summary(g)


def cmd_edgewidth(args):
    path = args.graph or args.graph_file
    if path is None:
        raise _Usage("edgewidth needs a graph file")
    g = load_graph(path)
    length, witness = edge_width(g)
    return {"edge_width": length, "witness": witness}


def cmd_classify4(args):
    params = GraphParams.from_json(_read_json(args.graph))
    out = classify(params).to_json()
    out["graph"] = str(params)
    return out


def cmd_classes(args):
    g = load_graph(args.graph)
    report = kempe_classes(g, args.k, quotient=args.quotient, state_cap=args.state_cap)
    out = report.to_json()
    out["graph"] = _graph_summary(g)
    if args.output:
        _write(args.output, out)
    return out


def cmd_normalize(args):
    g = load_graph(args.graph)
    phi = load_coloring(args.coloring)
    cert, template = normalize(g, phi, seed=args.seed)
    if args.output:
        _write(args.output, cert.to_json())
    return {"certificate": cert.to_json(), "template": template.to_json(), "length": len(cert)}


def cmd_certify(args):
    g = load_graph(args.graph)
    phi1 = load_coloring(args.source)
    phi2 = load_coloring(args.target)
    cert = certify_equivalence(g, phi1, phi2, seed=args.seed)
    if args.output:
        _write(args.output, cert.to_json())
    return {"certificate": cert.to_json(), "length": len(cert)}


def cmd_verify(args):
    g = load_graph(args.graph)
    phi = load_coloring(args.source)
    obj = _read_json(args.cert)
    cert = Certificate.from_json(obj.get("certificate", obj))
    verdict = verify_certificate(g, phi, cert)
    out = verdict.to_json()
    if not verdict:
        raise _Domain({"error": "certificate_rejected", **out})
    return out


def cmd_wsk(args):
    g = load_graph(args.graph)
    report = None
    if args.classes:
        saved = _read_json(args.classes)
        report = kempe_classes(g, saved["k"], quotient=saved["quotient"])
        if report.k != args.k:
            raise _Usage("--classes report was computed for a different k")
    initial = load_coloring(args.initial) if args.initial else None
    stats = run_chain(g, args.k, args.steps, args.seed, class_report=report, initial=initial)
    return stats.to_json()


def cmd_enumerate(args):
    graphs = enumerate_graphs(args.n)
    return {
        "n": args.n,
        "classes": len(graphs),
        "graphs": [{"name": str(g.params), "canonical_forms": [list(f) for f in canonical_forms(g)]} for g in graphs],
    }


def cmd_sample(args):
    g = sample_uniform(args.n, args.seed, per_triple=args.per_triple)
    if args.output:
        _write(args.output, g.params.to_json())
    return _graph_summary(g)


def cmd_coloring(args):
    g = load_graph(args.graph)
    phi = random_proper(g, args.k, args.seed)
    if args.output:
        _write(args.output, phi.to_json())
    return phi.to_json()


class _Usage(Exception):
    pass


class _Domain(Exception):
    def __init__(self, record):
        super().__init__(record.get("error"))
        self.record = record


def build_parser():
    p = argparse.ArgumentParser(prog="kempetorus", description="Kempe equivalence on 6-regular toroidal graphs.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--manifest", help="also write an experiment manifest JSON here")
    p.add_argument("--jobs", type=int, default=1, help="worker count (results do not depend on it)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="write a graph spec")
    s.add_argument("--family", choices=("shifted_grid", "circulant"), required=True)
    for name in ("a", "b", "c", "n", "r"):
        s.add_argument(f"--{name}", type=int)
    s.add_argument("-o", "--output")
    s.add_argument("--dimacs", help="also export DIMACS edges")
    s.add_argument("--rotation", help="also export the rotation system")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("edgewidth", help="shortest non-contractible cycle")
    s.add_argument("graph_file", nargs="?")
    s.add_argument("--graph")
    s.set_defaults(func=cmd_edgewidth)

    s = sub.add_parser("classify4", help="four-colorability verdict")
    s.add_argument("--graph", required=True)
    s.set_defaults(func=cmd_classify4)

    s = sub.add_parser("classes", help="exact Kempe classes")
    s.add_argument("--graph", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--quotient", action="store_true")
    s.add_argument("--state-cap", type=int, default=5_000_000)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_classes)

    s = sub.add_parser("normalize", help="reach a good monochromatic template")
    s.add_argument("--graph", required=True)
    s.add_argument("--coloring", required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("certify", help="certificate between two 5-colorings")
    s.add_argument("--graph", required=True)
    s.add_argument("--from", dest="source", required=True)
    s.add_argument("--to", dest="target", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("verify", help="replay a certificate")
    s.add_argument("--graph", required=True)
    s.add_argument("--from", dest="source", required=True)
    s.add_argument("--cert", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("wsk", help="run WSK dynamics")
    s.add_argument("--graph", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--classes", help="class report from `classes -o`")
    s.add_argument("--initial", help="start coloring (default: random from the seed)")
    s.set_defaults(func=cmd_wsk)

    s = sub.add_parser("enumerate", help="isomorphism classes on n vertices")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("sample", help="random graph on n vertices")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--per-triple", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("coloring", help="random proper coloring")
    s.add_argument("--graph", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_coloring)
    return p


def _manifest(args, argv, result):
    inputs = {
        key: getattr(args, key)
        for key in ("graph", "graph_file", "coloring", "source", "target", "cert", "classes", "initial")
        if getattr(args, key, None)
    }
    fingerprint = None
    path = getattr(args, "graph", None) or getattr(args, "graph_file", None)
    if path:
        fingerprint = load_graph(path).fingerprint
    elif isinstance(result, dict):
        fingerprint = result.get("fingerprint")
    return {
        "command": args.command,
        "argv": list(argv),
        "inputs": inputs,
        "seed": getattr(args, "seed", None),
        "output": getattr(args, "output", None),
        "version": __version__,
        "fingerprint": fingerprint,
    }


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except _Domain as exc:
        print(_dump(exc.record))
        return 1
    except (KempeError,) as exc:
        print(_dump(exc.to_json()))
        return 1
    except (ValueError, KeyError) as exc:
        print(_dump({"error": "invalid_input", "message": str(exc)}))
        return 1
    except OSError as exc:
        print(f"kempetorus: {exc}", file=sys.stderr)
        return 2
    print(_dump(result))
    if args.manifest:
        _write(args.manifest, _manifest(args, argv, result))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
