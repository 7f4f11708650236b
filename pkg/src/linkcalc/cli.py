"""
Command-line interface.

A definite answer exits with status 0 and Inconclusive exits with 2;
errors exit with 1.
Components are numbered from 1 in flags and text output and from 0 in
JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .classify import classify_htb, is_trivial_link, verdict_tree
from .corpus import CORPUS, corpus_load
from .diagram import (
    DiagramError,
    canonical_key,
    faces,
    from_json,
    linking_matrix,
    parse_pd,
    to_json,
    to_pd,
    writhe,
)
from .moves import MoveSpec, SiteMismatch, apply_move, enumerate_moves
from .search import (
    ComponentBundled,
    ComponentSelfCrossingFree,
    Crossingless,
    SearchBudget,
    is_unknot,
    search_reduce,
)
from .surgery import (
    SlopeFailure,
    apply_slopes,
    detect_bundle,
    format_slopes,
    parse_slopes,
    predicted_linking_after_twist,
    twist,
)

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class CLIError(Exception):
    pass


def read_diagram(source: str):
    """Load a diagram from a path, ``-`` (standard input) or ``corpus:<name>``."""
    if source.startswith("corpus:"):
        try:
            return corpus_load(source[len("corpus:"):])
        except KeyError as exc:
            raise CLIError(exc.args[0]) from None
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise CLIError(f"cannot read {source}: {exc.strerror}") from None
    if text.lstrip().startswith("{"):
        return from_json(text)
    return parse_pd(text)


# --------------------------------------------------------------------------
# output helpers


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _matrix_text(lk) -> str:
    return "\n".join("  " + " ".join(f"{v:3d}" for v in row) for row in lk.tolist())


def _budget(args, d=None) -> SearchBudget:
    return SearchBudget(
        max_crossings=args.max_crossings,
        max_nodes=args.max_nodes,
        max_depth=args.max_depth,
    )


def _workers(args) -> int:
    return 1 if args.deterministic else args.workers


def _tracer(args):
    if not args.trace:
        return None, None
    fh = open(args.trace, "w")

    def write(event):
        fh.write(json.dumps(event) + "\n")

    return write, fh


def _component(args, d) -> int:
    if args.component is None:
        raise CLIError("--component is required")
    if not 1 <= args.component <= d.n_components:
        raise CLIError(f"--component must be in 1..{d.n_components}")
    return args.component - 1


def _verdict_text(v) -> str:
    if v.kind == "Trivial":
        return f"Trivial (certificate of {len(v.certificate)} moves)"
    if v.kind == "Nontrivial":
        w = v.witness
        steps = " then ".join(
            f"delete {s[1] + 1}" if s[0] == "delete" else f"twist {s[1] + 1} by {s[2]:+d}"
            for s in w.path
        )
        where = f" after {steps}" if steps else ""
        return f"Nontrivial: linking number of components {w.i + 1},{w.j + 1} is {w.value}{where}"
    return f"Inconclusive: {json.dumps(v.report)}"


def _verdict_exit(v) -> int:
    return EXIT_INCONCLUSIVE if v.kind == "Inconclusive" else EXIT_OK


# --------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    d = read_diagram(args.input)
    payload = {
        "valid": True,
        "components": d.n_components,
        "crossings": d.n_crossings,
        "pd": to_pd(d),
    }
    _emit(args, payload, f"valid: {d.n_components} components, {d.n_crossings} crossings")
    return EXIT_OK


def cmd_invariants(args) -> int:
    d = read_diagram(args.input)
    lk = linking_matrix(d)
    fs = faces(d)
    payload = {
        "components": d.n_components,
        "crossings": d.n_crossings,
        "linking_matrix": lk.tolist(),
        "writhe": writhe(d),
        "faces": len(fs),
        "homologically_trivial": not lk.any(),
        "canonical_key": canonical_key(d),
    }
    text = (
        f"components: {d.n_components}\ncrossings: {d.n_crossings}\n"
        f"writhe: {writhe(d)}\nfaces: {len(fs)}\nlinking matrix:\n{_matrix_text(lk)}"
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_moves(args) -> int:
    d = read_diagram(args.input)
    cap = args.max_crossings if args.max_crossings is not None else d.n_crossings + 2
    moves = enumerate_moves(d, cap)
    if args.apply is None:
        payload = {"moves": [m.to_json() for m in moves]}
        text = "\n".join(f"{i:4d}  {m.kind} {m.site} {dict(m.options)}" for i, m in enumerate(moves))
        _emit(args, payload, text or "no moves")
        return EXIT_OK
    raw = args.apply
    if raw.lstrip().startswith("{"):
        m = MoveSpec.from_json(json.loads(raw))
    else:
        try:
            m = moves[int(raw)]
        except (ValueError, IndexError):
            raise CLIError(f"--apply expects a move index below {len(moves)} or a move in JSON") from None
    out = apply_move(d, m)
    _emit(args, {"move": m.to_json(), "diagram": to_json(out), "pd": to_pd(out)}, to_pd(out))
    return EXIT_OK


def cmd_reduce(args) -> int:
    d = read_diagram(args.input)
    if args.target == "crossingless":
        target = Crossingless()
    elif args.target == "bundled":
        target = ComponentBundled(_component(args, d))
    else:
        target = ComponentSelfCrossingFree(_component(args, d))
    trace, fh = _tracer(args)
    try:
        res = search_reduce(d, target, _budget(args), workers=_workers(args), trace=trace)
    finally:
        if fh:
            fh.close()
    if res.found:
        cert = [m.to_json() for m in res.certificate]
        payload = {"found": True, "pd": to_pd(res.diagram), "certificate": cert, "nodes": res.nodes}
        text = f"reached {target} in {len(cert)} moves ({res.nodes} nodes)\n{to_pd(res.diagram)}"
        _emit(args, payload, text)
        return EXIT_OK
    payload = {"found": False, "report": res.report.to_json()}
    _emit(args, payload, f"not found: {json.dumps(res.report.to_json())}")
    return EXIT_INCONCLUSIVE


def cmd_unknot(args) -> int:
    d = read_diagram(args.input)
    if d.n_components != 1:
        raise CLIError(f"unknot needs a knot, got {d.n_components} components")
    v = is_unknot(d, _budget(args), workers=_workers(args))
    _emit(args, v.to_json(), _verdict_text(v))
    return _verdict_exit(v)


def cmd_trivial(args) -> int:
    d = read_diagram(args.input)
    trace, fh = _tracer(args)
    try:
        v = is_trivial_link(
            d, _budget(args), workers=_workers(args), q=args.q or 1, policy=args.policy, trace=trace
        )
    finally:
        if fh:
            fh.close()
    payload = v.to_json()
    payload["trace"] = verdict_tree(v)
    _emit(args, payload, _verdict_text(v))
    return _verdict_exit(v)


def cmd_classify(args) -> int:
    d = read_diagram(args.input)
    trace, fh = _tracer(args)
    try:
        r = classify_htb(
            d, _budget(args), workers=_workers(args), q=args.q or 1, policy=args.policy, trace=trace
        )
    finally:
        if fh:
            fh.close()
    text = (
        f"homologically trivial: {r.homologically_trivial}\n"
        f"linking matrix:\n{_matrix_text(r.linking)}\n"
        f"brunnian: {r.brunnian}\nhtb: {r.htb}\ntrivial: {_verdict_text(r.trivial)}"
    )
    _emit(args, r.to_json(), text)
    return EXIT_INCONCLUSIVE if r.htb == "inconclusive" else EXIT_OK


def cmd_twist(args) -> int:
    d = read_diagram(args.input)
    k = _component(args, d)
    q = 1 if args.q is None else args.q
    site = detect_bundle(d, k)
    cert = []
    if site is None:
        res = search_reduce(d, ComponentBundled(k), _budget(args), workers=_workers(args))
        if not res.found:
            payload = {"bundled": False, "report": res.report.to_json()}
            _emit(args, payload, f"component {k + 1} not bundled within budget")
            return EXIT_INCONCLUSIVE
        d, cert = res.diagram, [m.to_json() for m in res.certificate]
        site = detect_bundle(d, k)
    out = twist(d, site, q, keep=args.keep)
    lk = linking_matrix(out)
    payload = {
        "site": site.to_json(),
        "q": q,
        "keep": args.keep,
        "certificate": cert,
        "pd": to_pd(out),
        "linking_matrix": lk.tolist(),
    }
    text = f"twisted component {k + 1} ({site.m} strands) by {q:+d}\n{to_pd(out)}\nlinking matrix:\n{_matrix_text(lk)}"
    if not args.keep:
        pred = predicted_linking_after_twist(linking_matrix(d), k, q)
        payload["predicted_linking_matrix"] = pred.tolist()
        text += f"\npredicted by the linking law:\n{_matrix_text(pred)}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_slopes(args) -> int:
    d = read_diagram(args.input)
    if not args.slopes:
        raise CLIError("--slopes is required")
    slopes = parse_slopes(args.slopes)
    try:
        out, steps = apply_slopes(d, slopes, _budget(args), workers=_workers(args))
    except SlopeFailure as exc:
        payload = {"failed_component": exc.component, "report": exc.report.to_json()}
        _emit(args, payload, f"{exc} ({json.dumps(exc.report.to_json())})")
        return EXIT_INCONCLUSIVE
    for s in steps:
        if "certificate" in s:
            s["certificate"] = [m.to_json() for m in s["certificate"]]
    payload = {
        "slopes": format_slopes(slopes),
        "steps": steps,
        "pd": to_pd(out),
        "linking_matrix": linking_matrix(out).tolist(),
    }
    _emit(args, payload, f"L({format_slopes(slopes)}) = {to_pd(out)}")
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.action == "list":
        payload = {"entries": [{"name": e.name, "description": e.description} for e in CORPUS.values()]}
        text = "\n".join(f"{e.name:20s} {e.description}" for e in CORPUS.values())
        _emit(args, payload, text)
        return EXIT_OK
    if not args.name:
        raise CLIError("corpus show needs a name")
    try:
        e = CORPUS[args.name]
    except KeyError:
        raise CLIError(f"unknown corpus entry {args.name!r}") from None
    payload = {"name": e.name, "pd": e.pd, "description": e.description, "expected": e.expected}
    _emit(args, payload, f"{e.name}: {e.description}\n{e.pd}")
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-crossings", type=int, default=None)
    common.add_argument("--max-nodes", type=int, default=100_000)
    common.add_argument("--max-depth", type=int, default=64)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument(
        "--deterministic", action="store_true", help="run searches in one process"
    )
    common.add_argument("--trace", metavar="FILE", help="write visited search nodes as JSON lines")

    parser = argparse.ArgumentParser(prog="linkcalc", description="Link diagram calculus")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, needs_input=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if needs_input:
            p.add_argument("input", help="a file or corpus:<name>; - reads standard input")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "parse and check a diagram")
    add("invariants", cmd_invariants, "linking numbers and other invariants")
    p = add("moves", cmd_moves, "enumerate or apply Reidemeister moves")
    p.add_argument("--apply", metavar="INDEX|JSON")
    p = add("reduce", cmd_reduce, "search for a simpler diagram")
    p.add_argument(
        "--target", choices=("crossingless", "bundled", "self-crossing-free"), default="crossingless"
    )
    p.add_argument("--component", type=int)
    add("unknot", cmd_unknot, "bounded unknot recognition")
    for name, fn, help_text in (
        ("trivial", cmd_trivial, "decide whether a link is trivial"),
        ("classify", cmd_classify, "homological triviality, Brunnian and HTB status"),
    ):
        p = add(name, fn, help_text)
        p.add_argument("--q", type=int, choices=(1, -1))
        p.add_argument("--policy", choices=("shared", "first"), default="shared")
    p = add("twist", cmd_twist, "twist along the disk bounded by a component")
    p.add_argument("--component", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--keep", action="store_true", help="keep the twisted component")
    p = add("slopes", cmd_slopes, "apply a slope vector such as '1/2,*,inf'")
    p.add_argument("--slopes")
    p = add("corpus", cmd_corpus, "list or show corpus entries", needs_input=False)
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (CLIError, DiagramError, SiteMismatch, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
