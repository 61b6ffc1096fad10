"""Command line front end.

Every run prints one report with the same keys in the same order. Exit
codes: 0 true or plain success, 1 false, 2 unknown or budget exhausted,
3 bad usage or bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bs_family, oracle, stephen
from .errors import AdianError, PresentationError
from .presentation import (Presentation, build_bisided, bisided_cycle, check_star, classify,
                           is_adian, is_positive, parse_presentation, parse_word)
from .stephen import Budget, ClosureOutcome
from .wordgraph import munn_tree, to_dot

EXIT_TRUE, EXIT_FALSE, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3

KEYS = ("command", "presentation", "words", "class", "adian", "star", "forest", "engine",
        "answer", "closures", "star_witness", "cycle_witness", "derivation", "dot")

STAT_KEYS = ("status", "rounds", "vertices", "edges", "faces", "fold_merges")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-vertices", type=int, default=100_000)
    common.add_argument("--max-rounds", type=int, default=10_000)
    common.add_argument("--depth", type=int, default=6, help="oracle search depth")
    common.add_argument("--dot", metavar="PATH", help="write DOT here instead of the report")
    common.add_argument("--complex", action="store_true", help="list faces in DOT output")
    common.add_argument("--json", action="store_true", help="emit one JSON document")

    parser = _Parser(prog="adianwp", description="Word problems for Adian inverse monoids.")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "check": ([], "classify a presentation"),
        "eq": (["u", "v"], "is u = v?"),
        "leq": (["u", "v"], "is v in the closure of u, i.e. u <= v?"),
        "idem": (["w"], "is w idempotent?"),
        "group-id": (["w"], "is w trivial in the group?"),
        "graph": (["w"], "close the complex of w and emit DOT"),
        "munn": (["w"], "Munn tree of w"),
        "oracle-eq": (["u", "v"], "search for a rewrite derivation from u to v"),
    }
    for name, (words, help_text) in commands.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("presentation", help="path to a .pres file")
        for w in words:
            p.add_argument(w)
    return parser


def _load(path: str) -> Presentation:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return parse_presentation(text, path)
    except PresentationError as exc:
        where = f"{path}:{exc.line}" if exc.line is not None else path
        raise UsageError(f"{where}: {exc.message}") from None


def _word(p: Presentation, label: str, text: str):
    try:
        return parse_word(p, text)
    except PresentationError as exc:
        raise UsageError(f"word {label} {text!r}: {exc.message}") from None


def _closure_stats(label: str, outcome: ClosureOutcome) -> dict:
    stats = outcome.stats()
    return {"word": label, **{k: stats[k] for k in STAT_KEYS}}


def _answer_code(answer) -> int:
    if answer == True:  # noqa: E712  (TriBool compares by value)
        return EXIT_TRUE
    if answer == False:  # noqa: E712
        return EXIT_FALSE
    return EXIT_UNKNOWN


def _bs_outcome(params, w) -> ClosureOutcome:
    c, waves = bs_family.sc_positive_word_waves(params, w)
    return ClosureOutcome(stephen.CLOSED, c, waves)


def _close_pair(p, u, v, budget, cls):
    """Closures of u and v, routed through the block construction when the
    presentation is in the BS family and both words are positive."""
    params = bs_family.detect_bs(p) if cls.kind == "AdianBsFamily" else None
    if params is not None and params.m != params.n and is_positive(u) and is_positive(v):
        return "bs_family", _bs_outcome(params, u), _bs_outcome(params, v)
    return ("stephen", stephen.schutzenberger(p, u, budget),
            stephen.schutzenberger(p, v, budget))


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        report, dot_text, code = _dispatch(args)
    except (UsageError, AdianError, ValueError) as exc:
        print(f"adianwp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if dot_text is not None:
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(dot_text)
            report["dot"] = args.dot
        elif args.json:
            report["dot"] = dot_text
        else:
            report["dot"] = "(below)"
    out.write(render(report, args.json))
    if dot_text is not None and not args.dot and not args.json:
        out.write(dot_text)
    return code


def _dispatch(args):
    if args.max_vertices < 1 or args.max_rounds < 1 or args.depth < 0:
        raise UsageError("budgets must be positive and --depth non-negative")
    p = _load(args.presentation)
    budget = Budget(args.max_vertices, args.max_rounds)
    cls = classify(p)
    star, star_witness = check_star(p)
    cycle = bisided_cycle(build_bisided(p))
    report = dict.fromkeys(KEYS)
    report.update({
        "command": args.command,
        "presentation": args.presentation,
        "words": [],
        "class": str(cls),
        "adian": is_adian(p),
        "star": star,
        "forest": cycle is None,
        "engine": "none",
        "answer": "ok",
        "closures": [],
        "star_witness": star_witness.describe(p) if star_witness else None,
        "cycle_witness": " - ".join(p.compact(w) for w in cycle) if cycle else None,
    })
    code, dot_text = EXIT_TRUE, None
    cmd = args.command

    if cmd in ("eq", "leq", "oracle-eq"):
        u, v = _word(p, "u", args.u), _word(p, "v", args.v)
        report["words"] = [p.format_word(u), p.format_word(v)]
    elif cmd != "check":
        w = _word(p, "w", args.w)
        report["words"] = [p.format_word(w)]

    if cmd == "eq":
        engine, ou, ov = _close_pair(p, u, v, budget, cls)
        answer = stephen.decide_equal(ou, ov, u, v)
        report["engine"] = engine
        report["closures"] = [_closure_stats("u", ou), _closure_stats("v", ov)]
        report["answer"] = str(answer)
        code = _answer_code(answer)
    elif cmd == "leq":
        ou = stephen.schutzenberger(p, u, budget)
        answer = stephen.leq_verdict(ou, v)
        report.update(engine="stephen", closures=[_closure_stats("u", ou)], answer=str(answer))
        code = _answer_code(answer)
    elif cmd in ("idem", "group-id"):
        if cmd == "group-id" and not is_adian(p):
            raise UsageError(f"{args.presentation}: group-id needs an Adian presentation")
        ow = stephen.schutzenberger(p, w, budget)
        oww = stephen.schutzenberger(p, w + w, budget)
        answer = stephen.decide_equal(ow, oww, w, w + w)
        report.update(engine="stephen", answer=str(answer),
                      closures=[_closure_stats("w", ow), _closure_stats("ww", oww)])
        code = _answer_code(answer)
    elif cmd == "graph":
        ow = stephen.schutzenberger(p, w, budget)
        report.update(engine="stephen", answer=ow.status, closures=[_closure_stats("w", ow)])
        c = ow.complex
        if args.complex:
            dot_text = c.to_dot("SC")
        else:
            dot_text = to_dot(c.skeleton, p.names, None, "SC")
        code = EXIT_TRUE if ow.closed else EXIT_UNKNOWN
    elif cmd == "munn":
        t = munn_tree(w)
        report.update(engine="munn", answer="ok", closures=[{
            "word": "w", "status": "Closed", "rounds": 0, "vertices": t.num_vertices(),
            "edges": t.num_edges(), "faces": 0, "fold_merges": t.fold_count}])
        dot_text = to_dot(t, p.names, None, "MT")
    elif cmd == "oracle-eq":
        answer = oracle.oracle_equal_positive(p, u, v, args.depth)
        r = oracle.derivation_bfs(p, u, v, args.depth)
        report.update(engine="oracle", answer=str(answer))
        report["derivation"] = {
            "found": r.found,
            "length": r.length,
            "path": [f"relation {step.relation_index} {step.direction} at {step.position}: "
                     f"{p.format_word(word)}" for word, step in r.path],
        }
        code = _answer_code(answer)
    return report, dot_text, code


def _text_value(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def render(report: dict, as_json: bool = False) -> str:
    if as_json:
        return json.dumps({k: report.get(k) for k in KEYS}, indent=2) + "\n"
    lines = []
    for key in KEYS:
        value = report.get(key)
        if key == "words":
            lines.append(f"words: {' | '.join(value) if value else '-'}")
        elif key == "closures":
            if not value:
                lines.append("closures: -")
            for st in value or []:
                body = " ".join(f"{k}={_text_value(st[k])}" for k in STAT_KEYS)
                lines.append(f"closure[{st['word']}]: {body}")
        elif key == "derivation":
            if value is None:
                lines.append("derivation: -")
            else:
                lines.append(f"derivation: found={_text_value(value['found'])} "
                             f"length={_text_value(value['length'])}")
                lines.extend(f"  step {i}: {s}" for i, s in enumerate(value["path"], 1))
        else:
            lines.append(f"{key}: {_text_value(value)}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
