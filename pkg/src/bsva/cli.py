"""Command-line front end; every command prints one JSON document.

Exit codes: 0 success, 2 invalid arguments, 3 budget exhausted (partial
output still printed with ``"partial": true``).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from bsva import _kernels
from bsva.angles import RationalAngle, format_rational
from bsva.engine import classify_components
from bsva.errors import BsvaError, BudgetExhausted, InvalidParams
from bsva.maharam import SkewNode, level_return_subgroup, skew_orbit
from bsva.relation import (
    DEFAULT_DEPTH,
    DEFAULT_KERNEL_DEPTH,
    DEFAULT_SAMPLES,
    DEFAULT_WITNESS_BOUND,
    StepDirection,
    are_equivalent_def,
    classify_type,
    distinguish,
    fiber_count_check,
    image_evidence,
    lambda_rotation_check,
    orbit,
    param_warnings,
    step_neighbors,
)
from bsva.words import (
    BsParams,
    britton_reduce,
    conjugate_count,
    normal_form,
    parse_word,
)

SCHEMA = "bsva/1"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _pos(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _angle(text):
    try:
        return RationalAngle.of(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pair(text):
    try:
        n, m = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n,m, got {text!r}") from None
    return n, m


def _params(args):
    return BsParams(args.n, args.m)


def _nf_json(nf):
    return {
        "normal_form": str(nf),
        "z": nf.z,
        "syllables": [[s, r] for s, r in nf.syllables],
        "identity": nf.is_identity,
    }


def _graph_json(graph):
    cls = classify_components(graph)
    return {
        "root": str(graph.root),
        "nodes": [str(x) for x in sorted(graph.nodes)],
        "edges": [[str(s), str(t), label, w] for s, t, label, w in sorted(graph.edges)],
        "image_units": image_evidence(graph),
        "anomalous": [str(x) for x in sorted(cls.anomalous_nodes)],
    }


# ---- word ----------------------------------------------------------------

def cmd_word_reduce(args):
    params = _params(args)
    w = parse_word(args.word)
    reduced = britton_reduce(params, w, args.strategy)
    return {"input": str(w), "reduced": str(reduced), "strategy": args.strategy,
            "identity": len(reduced) == 0}


def cmd_word_nf(args):
    return _nf_json(normal_form(_params(args), parse_word(args.word)))


def cmd_word_eq(args):
    params = _params(args)
    nf1 = normal_form(params, parse_word(args.word1))
    nf2 = normal_form(params, parse_word(args.word2))
    return {"equal": nf1 == nf2, "nf1": str(nf1), "nf2": str(nf2)}


def cmd_word_conj_count(args):
    params = _params(args)
    gamma = parse_word(args.gamma)
    counts = [conjugate_count(params, gamma, L) for L in range(args.length + 1)]
    return {"gamma": str(gamma), "length": args.length, "count": counts[-1], "by_length": counts}


# ---- rel -----------------------------------------------------------------

def cmd_rel_neighbors(args):
    params = _params(args).require_admissible()
    out = {"y": str(args.y)}
    if args.dir in ("forward", "both"):
        out["forward"] = [str(z) for z in step_neighbors(params, args.y, StepDirection.FORWARD)]
    if args.dir in ("backward", "both"):
        out["backward"] = [str(z) for z in step_neighbors(params, args.y, StepDirection.BACKWARD)]
    return out


def cmd_rel_orbit(args):
    params = _params(args)
    graph = orbit(params, args.y, args.depth)
    if args.format == "text":
        return graph.to_text()
    return {"depth": args.depth, **_graph_json(graph)}


def cmd_rel_equiv(args):
    w = are_equivalent_def(_params(args), args.y, args.z, args.bound)
    return {
        "y": str(args.y),
        "z": str(args.z),
        "bound": args.bound,
        "witness": None if w is None else {"a": w.a, "b": w.b},
        "note": "no witness within the bound does not prove inequivalence",
    }


def cmd_rel_rotation_check(args):
    res = lambda_rotation_check(_params(args), args.k, args.y, args.depth, s=args.s)
    return {
        "y": str(args.y),
        "target": str(res.target),
        "found": res.found,
        "depth_used": res.depth_used,
        "path": [[str(a), str(b), label, w] for a, b, label, w in res.path],
        "net_weight": sum(w for *_, w in res.path),
    }


def cmd_rel_fibers(args):
    params = _params(args).require_admissible()
    fwd, bwd, pairs = fiber_count_check(params, args.x)
    return {"x": str(args.x), "forward_count": fwd, "backward_count": bwd, "pair_count": pairs}


# ---- type / distinguish --------------------------------------------------

def cmd_type(args):
    return classify_type(_params(args), args.samples, args.depth, seed=args.seed, jobs=args.jobs).to_json()


def cmd_distinguish(args):
    p1, p2 = BsParams(args.n, args.m), BsParams(args.n2, args.m2)
    out = distinguish(p1, p2).to_json()
    out["warnings"] = param_warnings(p1) + param_warnings(p2)
    return out


# ---- maharam -------------------------------------------------------------

def cmd_maharam_orbit(args):
    graph = skew_orbit(_params(args), SkewNode(args.y, args.level), args.depth)
    if args.format == "text":
        return graph.to_text()
    return {
        "root": str(graph.root),
        "depth": args.depth,
        "nodes": [str(x) for x in sorted(graph.nodes)],
        "edges": [[str(s), str(t), label, w] for s, t, label, w in sorted(graph.edges)],
    }


def cmd_maharam_levels(args):
    d = level_return_subgroup(_params(args), args.y, args.depth)
    return {"y": str(args.y), "depth": args.depth, "d": d}


# ---- report --------------------------------------------------------------

def cmd_report(args):
    from bsva.report import build_report, render_markdown

    rep = build_report([BsParams(n, m) for n, m in args.params], samples=args.samples,
                       depth=args.depth, seed=args.seed, jobs=args.jobs)
    if args.format == "markdown":
        return render_markdown(rep)
    return rep


def build_parser():
    parser = _Parser(prog="bsva", description="Baumslag-Solitar words, circle relations and types.")
    parser.add_argument("--version", action="version", version=f"bsva ({SCHEMA}, kernels: {_kernels.BACKEND})")
    sub = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def with_params(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        return p

    word = sub.add_parser("word", help="word problem in BS(n,m)").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = with_params(word.add_parser("reduce"))
    p.add_argument("word")
    p.add_argument("--strategy", choices=["leftmost", "rightmost"], default="leftmost")
    p.set_defaults(func=cmd_word_reduce)
    p = with_params(word.add_parser("nf"))
    p.add_argument("word")
    p.set_defaults(func=cmd_word_nf)
    p = with_params(word.add_parser("eq"))
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_word_eq)
    p = with_params(word.add_parser("conj-count"))
    p.add_argument("--gamma", required=True)
    p.add_argument("--length", type=_nonneg, default=3)
    p.set_defaults(func=cmd_word_conj_count)

    rel = sub.add_parser("rel", help="the circle relation").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = with_params(rel.add_parser("neighbors"))
    p.add_argument("--y", type=_angle, required=True)
    p.add_argument("--dir", choices=["forward", "backward", "both"], default="both")
    p.set_defaults(func=cmd_rel_neighbors)
    p = with_params(rel.add_parser("orbit"))
    p.add_argument("--y", type=_angle, required=True)
    p.add_argument("--depth", type=_nonneg, default=DEFAULT_DEPTH)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_rel_orbit)
    p = with_params(rel.add_parser("equiv"))
    p.add_argument("--y", type=_angle, required=True)
    p.add_argument("--z", type=_angle, required=True)
    p.add_argument("--bound", type=_nonneg, default=DEFAULT_WITNESS_BOUND)
    p.set_defaults(func=cmd_rel_equiv)
    p = with_params(rel.add_parser("rotation-check"))
    p.add_argument("--k", type=_pos, default=1)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--y", type=_angle, required=True)
    p.add_argument("--depth", type=_nonneg, default=DEFAULT_KERNEL_DEPTH)
    p.set_defaults(func=cmd_rel_rotation_check)
    p = with_params(rel.add_parser("fibers"))
    p.add_argument("--x", type=_angle, required=True)
    p.set_defaults(func=cmd_rel_fibers)

    p = with_params(sub.add_parser("type", help="type verdict for the circle relation"))
    p.add_argument("--samples", type=_pos, default=DEFAULT_SAMPLES)
    p.add_argument("--depth", type=_nonneg, default=DEFAULT_KERNEL_DEPTH)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=_pos, default=1)
    p.set_defaults(func=cmd_type)

    p = with_params(sub.add_parser("distinguish", help="compare the n/|m| invariants"))
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.set_defaults(func=cmd_distinguish)

    mah = sub.add_parser("maharam", help="level-lifted relation").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = with_params(mah.add_parser("orbit"))
    p.add_argument("--y", type=_angle, required=True)
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--depth", type=_nonneg, default=DEFAULT_DEPTH)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_maharam_orbit)
    p = with_params(mah.add_parser("levels"))
    p.add_argument("--y", type=_angle, required=True)
    p.add_argument("--depth", type=_nonneg, default=DEFAULT_DEPTH)
    p.set_defaults(func=cmd_maharam_levels)

    p = sub.add_parser("report", help="tables for a list of parameter pairs")
    p.add_argument("--params", type=_pair, nargs="+", default=[(2, 3), (2, 5), (3, 5)])
    p.add_argument("--samples", type=_pos, default=DEFAULT_SAMPLES)
    p.add_argument("--depth", type=_nonneg, default=DEFAULT_KERNEL_DEPTH)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=_pos, default=1)
    p.add_argument("--format", choices=["json", "markdown"], default="json")
    p.set_defaults(func=cmd_report)
    return parser


def _command_name(args):
    return args.group if getattr(args, "cmd", None) is None else f"{args.group} {args.cmd}"


def _emit(out, args, partial=False):
    if isinstance(out, str):
        sys.stdout.write(out if out.endswith("\n") else out + "\n")
        return
    doc = {"schema": SCHEMA, "command": _command_name(args)}
    if hasattr(args, "n") and args.group != "report":
        doc.update(n=args.n, m=args.m)
    doc.update(out)
    if partial:
        doc["partial"] = True
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except BudgetExhausted as exc:
        print(f"bsva: {exc}", file=sys.stderr)
        partial = {"error": str(exc)}
        graph = exc.partial
        if graph is not None and hasattr(graph, "nodes"):
            partial["nodes"] = [str(x) for x in sorted(graph.nodes)]
        _emit(partial, args, partial=True)
        return 3
    except (InvalidParams, BsvaError, ValueError) as exc:
        print(f"bsva: error: {exc}", file=sys.stderr)
        return 2
    _emit(out, args)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
