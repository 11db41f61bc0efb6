"""Command-line frontend.

Subcommands: check, potential, extend, nonchalant, search, construct,
table.  Runs are deterministic: the same invocation always produces the
same bytes, worker count included.  Data goes to stdout or --out;
progress chatter goes to stderr.  Exit codes: 0 done, 1 a required
property failed, 2 bad usage, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import constructions, core, nonchalant, properties, search

DEFAULT_HISTOGRAM_INITS = (
    "1", "2", "3", "13", "23", "32", "3213", "2313", "32132",
    "2313213", "231323", "32132313", "321323132", "32132313213",
)


def _write(text: str, path: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _status(message: str) -> None:
    print(message, file=sys.stderr)


def _dump(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _read_word_text(args) -> str:
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="ascii") as fh:
            text = fh.read().strip()
        if not text:
            raise ValueError("empty word file: %s" % args.file)
        return text
    if getattr(args, "word", None):
        return args.word
    raise ValueError("no word given (positional argument or --file)")


def _report_dict(report: constructions.VerificationReport) -> dict:
    return report.to_dict()


def _shortest_violation(data: bytes, prop) -> tuple:
    """Earliest shortest factor that already breaks the property."""
    size = len(data)
    for length in range(1, size + 1):
        for start in range(size - length + 1):
            seg = data[start:start + length]
            if not prop.clean(seg):
                return start, seg
    raise AssertionError("no violating factor in a violating word")


# ---------------------------------------------------------------------------
# check / potential / extend


def cmd_check(args) -> int:
    prop = properties.parse_property(args.prop)
    word = core.parse_word(_read_word_text(args), args.n)
    data = bytes(word.letters)
    if prop.clean(data):
        if args.format == "json":
            _write(_dump({"verdict": "avoids", "property": prop.name}), args.out)
        else:
            _write("avoids", args.out)
        return 0
    start, seg = _shortest_violation(data, prop)
    witness = core.word_from_bytes(seg, word.alphabet_size).text()
    if args.format == "json":
        _write(_dump({"verdict": "violates", "property": prop.name,
                      "witness": witness, "offset": start}), args.out)
    else:
        _write("violates\t%s\t%d" % (witness, start), args.out)
    return 1


def _potential_report(args):
    prop = properties.parse_property(args.prop)
    word = core.parse_word(_read_word_text(args), args.n)
    if isinstance(prop, properties.SquareFree):
        return prop, word, core.potential(word)
    return prop, word, properties.property_extensions(word, prop)


def _backstep_pairs(word, rep) -> List[tuple]:
    size = len(word)
    return sorted((size - e.position, e.letter) for e in rep.extensions)


def cmd_potential(args) -> int:
    prop, word, rep = _potential_report(args)
    pairs = _backstep_pairs(word, rep)
    if args.format == "tsv":
        lines = [
            "word\t%s" % word.text(),
            "length\t%d" % len(word),
            "alphabet\t%d" % word.alphabet_size,
            "property\t%s" % prop.name,
            "AE\t%d" % rep.AE_value,
            "ae\t%d" % rep.ae_value,
            "extremal\t%s" % str(rep.is_extremal).lower(),
            "almost_extremal\t%s" % str(rep.is_almost_extremal).lower(),
            "maximal\t%s" % str(rep.is_maximal).lower(),
        ]
        lines.extend("extension\t%d\t%d" % pair for pair in pairs)
        _write("\n".join(lines), args.out)
    else:
        _write(_dump({
            "word": word.text(),
            "length": len(word),
            "alphabet": word.alphabet_size,
            "property": prop.name,
            "AE": rep.AE_value,
            "ae": rep.ae_value,
            "extremal": rep.is_extremal,
            "almost_extremal": rep.is_almost_extremal,
            "maximal": rep.is_maximal,
            "extensions": [{"back_step": s, "letter": c} for s, c in pairs],
        }), args.out)
    return 0


def cmd_extend(args) -> int:
    _, word, rep = _potential_report(args)
    pairs = _backstep_pairs(word, rep)
    if args.format == "json":
        _write(_dump([{"back_step": s, "letter": c} for s, c in pairs]), args.out)
    else:
        lines = ["back_step\tletter"]
        lines.extend("%d\t%d" % pair for pair in pairs)
        _write("\n".join(lines), args.out)
    return 0


# ---------------------------------------------------------------------------
# nonchalant


def _run_nonchalant(args) -> nonchalant.NonchalantTrace:
    prop = properties.parse_property(args.prop)
    word = core.parse_word(args.init, args.n)
    record = args.record_ae or args.emit == "newmax"
    return nonchalant.nonchalant_run(word, args.iters, prop=prop,
                                     mode=args.mode, record_ae=record)


def cmd_nonchalant(args) -> int:
    trace = _run_nonchalant(args)
    if args.emit == "trace":
        _write(nonchalant.format_trace(trace), args.out)
    elif args.emit == "final":
        _write(trace.final.text(), args.out)
    elif args.emit == "histogram":
        hist = nonchalant.backstep_histogram(trace)
        lines = ["back_step\tcount"]
        lines.extend("%d\t%d" % (s, hist[s]) for s in sorted(hist))
        _write("\n".join(lines), args.out)
    elif args.emit == "events":
        lines = ["iteration\tback_step"]
        lines.extend("%d\t%d" % ev for ev in nonchalant.nonzero_backstep_events(trace))
        _write("\n".join(lines), args.out)
    elif args.emit == "gaps":
        gaps = nonchalant.gap_table(trace, args.gap_d)
        lines = ["gap\tcount"]
        lines.extend("%d\t%d" % (g, gaps[g]) for g in sorted(gaps))
        _write("\n".join(lines), args.out)
    else:  # newmax
        maxima = nonchalant.new_max_indexes(nonchalant.potential_trace(trace))
        lines = ["iteration\tae"]
        lines.extend("%d\t%d" % row for row in maxima)
        _write("\n".join(lines), args.out)
    return 0


# ---------------------------------------------------------------------------
# search


def cmd_search(args) -> int:
    goal = args.goal
    prop = properties.parse_property(args.prop)
    if goal == "enumerate":
        words = [w.text() for w in
                 search.enumerate_avoiding(args.n, args.k, prop, budget=args.budget)]
        _write("\n".join(words) if words else "", args.out)
        return 0
    if goal == "count":
        spec = search.SearchSpec(args.n, args.k, prop.name, goal, args.budget)
        value = search.count_avoiding(args.n, args.k, prop, budget=args.budget)
        _write(_dump({"spec": spec.to_dict(), "count": value}), args.out)
        return 0
    if goal == "max-potential":
        spec = search.SearchSpec(args.n, args.k, prop.name, goal, args.budget)
        if not isinstance(prop, properties.SquareFree):
            raise ValueError("max-potential is defined for the square property")
        row = search.max_potentials(args.n, args.k, workers=args.workers,
                                    budget=args.budget)
        _write(_dump({"spec": spec.to_dict(), "row": {
            "k": row.k, "ae": row.ae_max, "AE": row.AE_max,
            "ae_witness": row.ae_witness.text(),
            "AE_witness": row.AE_witness.text(),
        }}), args.out)
        return 0
    if goal == "extremal":
        spec = search.SearchSpec(args.n, args.k, prop.name, goal, args.budget)
        hits = search.find_extremal(args.n, args.k, prop, budget=args.budget,
                                    workers=args.workers)
        _write(_dump({"spec": spec.to_dict(), "count": len(hits),
                      "witnesses": [w.text() for w in hits]}), args.out)
        return 0
    if goal == "shortest-extremal":
        spec = search.SearchSpec(args.n, args.k_max, prop.name, goal, args.budget)
        res = search.shortest_extremal(args.n, prop, k_max=args.k_max,
                                       budget=args.budget, workers=args.workers)
        payload = {"spec": spec.to_dict(), "found": res is not None}
        if res is not None:
            payload["k"] = res[0]
            payload["witnesses"] = [w.text() for w in res[1]]
        _write(_dump(payload), args.out)
        return 0
    # abelian-halt
    length, final = search.abelian_nonchalant_halt(args.n, initial=(1,),
                                                   safety_cap=args.budget or 20000)
    _write(_dump({"alphabet": args.n, "goal": goal, "halt_length": length,
                  "final": final.text()}), args.out)
    return 0


# ---------------------------------------------------------------------------
# construct


def cmd_construct(args) -> int:
    name = args.name
    if name == "zimin":
        _write(constructions.zimin(args.m).text(), args.out)
        return 0
    if name == "m-word":
        word, slots = constructions.m_word()
        if args.format == "json":
            rep = core.potential(word)
            _write(_dump({"word": word.text(), "ae": rep.ae_value,
                          "slots": list(slots)}), args.out)
        else:
            _write("%s\nslots\t%s" % (word.text(),
                                      ",".join(map(str, slots))), args.out)
        return 0
    if name == "prop-s":
        built, displayed = constructions.proposition_s_words()
        if not args.verify:
            _write("constructed\t%s\ndisplayed\t%s" % (built.text(), displayed.text()),
                   args.out)
            return 0
        reports = {
            "constructed": constructions.verify_proposition_s(built),
            "displayed": constructions.verify_proposition_s(displayed),
        }
        passing = [label for label, rep in sorted(reports.items()) if rep.ok]
        canonical = passing[0] if len(passing) == 1 else None
        _write(_dump({
            "constructed": {"word": built.text(),
                            "report": _report_dict(reports["constructed"])},
            "displayed": {"word": displayed.text(),
                          "report": _report_dict(reports["displayed"])},
            "identities": _report_dict(constructions.proposition_s_identities()),
            "canonical": canonical,
        }), args.out)
        return 0 if canonical is not None else 1
    if name == "theorem5":
        images, word = constructions.theorem5_word(args.n)
        if not args.verify:
            _write(word.text(), args.out)
            return 0
        t = args.t if args.t is not None else args.n - 1
        report = constructions.verify_theorem5(images, word, t)
        _write(_dump({
            "n": args.n,
            "images": [im.text() for im in images],
            "word": word.text(),
            "report": _report_dict(report),
        }), args.out)
        return 0 if report.ok else 1
    # prop6
    base = core.parse_word(args.base, 3) if args.base \
        else constructions.SHORTEST_EXTREMAL_TERNARY
    comp = constructions.prop6_components(base, verify_budget=args.verify_budget,
                                          suffix_square_budget=args.square_budget)
    _write(_dump({
        "base": comp.base.text(),
        "suffix": comp.suffix.text(),
        "block_length": len(comp.blocks[0]),
        "blocks": [b.text() for b in comp.blocks],
        "total_length": comp.full.total_length,
        "report": _report_dict(comp.report),
    }), args.out)
    return 0 if comp.report.ok else 1


# ---------------------------------------------------------------------------
# table


def _histogram_lines(inits, iters: int) -> List[str]:
    lines = []
    for init in inits:
        word = core.parse_word(init, 3)
        trace = nonchalant.nonchalant_run(word, iters)
        hist = nonchalant.backstep_histogram(trace)
        for s in sorted(hist):
            lines.append("%s\t%d\t%d" % (init, s, hist[s]))
        _status("histogram done for initial word %s" % init)
    return lines


def cmd_table(args) -> int:
    name = args.name
    out: List[str] = []
    if name == "table1":
        inits = args.inits.split(",") if args.inits else list(DEFAULT_HISTOGRAM_INITS)
        out.append("# table1: back-step counts, %d iterations per initial word" % args.iters)
        out.append("init\tback_step\tcount")
        out.extend(_histogram_lines(inits, args.iters))
    elif name == "table2":
        out.append("# table2: largest internal/total potentials per length, 3 letters")
        out.append("k\tae\tAE")
        for row in search.max_potential_table(3, args.max_k, workers=args.workers):
            if row.k >= 3:
                out.append("%d\t%d\t%d" % (row.k, row.ae_max, row.AE_max))
    elif name == "table3":
        trace = nonchalant.nonchalant_run(core.parse_word("1", 3),
                                          args.max_i - 1, record_ae=True)
        out.append("# table3: internal potential along the greedy run from 1")
        out.append("i\tae")
        for i, ae in nonchalant.potential_trace(trace):
            out.append("%d\t%d" % (i, ae))
    elif name == "table4":
        trace = nonchalant.nonchalant_run(core.parse_word("1", 3),
                                          args.limit - 1, record_ae=True)
        maxima = nonchalant.new_max_indexes(nonchalant.potential_trace(trace))
        out.append("# table4: indexes where the internal potential reaches a new maximum")
        out.append("i\tae")
        for i, ae in maxima:
            out.append("%d\t%d" % (i, ae))
    elif name == "table5-6":
        trace = nonchalant.nonchalant_run(core.parse_word(args.init, 3), args.iters)
        out.append("# table5-6: all steps with a positive back-step, initial word %s"
                   % args.init)
        out.append("iteration\tback_step")
        for i, s in nonchalant.nonzero_backstep_events(trace):
            out.append("%d\t%d" % (i, s))
    elif name == "table7":
        inits = args.inits.split(",") if args.inits else list(DEFAULT_HISTOGRAM_INITS)
        out.append("# table7: gaps between back-step-%d events, %d iterations"
                   % (args.d, args.iters))
        out.append("init\tgap\tcount")
        for init in inits:
            trace = nonchalant.nonchalant_run(core.parse_word(init, 3), args.iters)
            gaps = nonchalant.gap_table(trace, args.d)
            for g in sorted(gaps):
                out.append("%s\t%d\t%d" % (init, g, gaps[g]))
            _status("gap table done for initial word %s" % init)
    else:  # zimin-seq
        out.append("# zimin-seq: closed-form potential of the depth-m Zimin word")
        out.append("m\tAE")
        for m in range(1, args.max + 1):
            out.append("%d\t%d" % (m, constructions.zimin_potential_closed(m)))
    _write("\n".join(out), args.out)
    return 0


# ---------------------------------------------------------------------------
# wiring


def _add_out(sp, default_format: Optional[str] = None) -> None:
    if default_format is not None:
        sp.add_argument("--format", choices=("tsv", "json"), default=default_format)
    sp.add_argument("--out", metavar="PATH", default=None,
                    help="write output here instead of stdout")


def _add_word_input(sp) -> None:
    sp.add_argument("word", nargs="?", help="word text (digits, or dot-separated)")
    sp.add_argument("--file", help="read the word from a file instead")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqext",
        description="Square-free words: checks, potentials, greedy runs, "
                    "searches, constructions, tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="test a word against a property")
    _add_word_input(sp)
    sp.add_argument("--n", type=int, required=True, help="alphabet size")
    sp.add_argument("--prop", default="square")
    _add_out(sp, "tsv")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("potential", help="extension counts of a word")
    _add_word_input(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--prop", default="square")
    _add_out(sp, "json")
    sp.set_defaults(func=cmd_potential)

    sp = sub.add_parser("extend", help="list the clean extensions of a word")
    _add_word_input(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--prop", default="square")
    _add_out(sp, "tsv")
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("nonchalant", help="greedy rightmost-insertion run")
    sp.add_argument("--init", required=True, help="starting word")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--prop", default="square")
    sp.add_argument("--mode", choices=(nonchalant.FULL, nonchalant.INTERNAL),
                    default=nonchalant.FULL)
    sp.add_argument("--iters", type=int, required=True)
    sp.add_argument("--record-ae", action="store_true",
                    help="recompute the internal potential after every step")
    sp.add_argument("--emit",
                    choices=("trace", "final", "histogram", "events", "gaps", "newmax"),
                    default="trace")
    sp.add_argument("--gap-d", type=int, default=4,
                    help="back-step value for --emit gaps")
    _add_out(sp)
    sp.set_defaults(func=cmd_nonchalant)

    sp = sub.add_parser("search", help="exhaustive searches")
    sp.add_argument("goal", choices=("enumerate", "count", "max-potential",
                                     "extremal", "shortest-extremal", "abelian-halt"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, default=0, help="word length")
    sp.add_argument("--k-max", type=int, default=30,
                    help="length cap for shortest-extremal")
    sp.add_argument("--prop", default="square")
    sp.add_argument("--budget", type=int, default=None,
                    help="node allowance; exceeding it exits with code 3")
    sp.add_argument("--workers", type=int, default=1)
    _add_out(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("construct", help="named witness words")
    sp.add_argument("name", choices=("zimin", "prop-s", "theorem5", "prop6", "m-word"))
    sp.add_argument("--m", type=int, default=4, help="Zimin depth")
    sp.add_argument("--n", type=int, default=4, help="alphabet for theorem5")
    sp.add_argument("--t", type=int, default=None,
                    help="how many leading slots to verify (theorem5)")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--base", default=None,
                    help="ternary extremal core for prop6 (default: the 25-letter one)")
    sp.add_argument("--verify-budget", type=int, default=12)
    sp.add_argument("--square-budget", type=int, default=15)
    _add_out(sp, "json")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("table", help="reproduce one of the reference tables")
    sp.add_argument("name", choices=("table1", "table2", "table3", "table4",
                                     "table5-6", "table7", "zimin-seq"))
    sp.add_argument("--inits", default=None, help="comma-separated initial words")
    sp.add_argument("--init", default="1")
    sp.add_argument("--iters", type=int, default=10000)
    sp.add_argument("--max-k", type=int, default=35)
    sp.add_argument("--max-i", type=int, default=39)
    sp.add_argument("--limit", type=int, default=1000)
    sp.add_argument("--d", type=int, default=4)
    sp.add_argument("--max", type=int, default=8)
    sp.add_argument("--workers", type=int, default=1)
    _add_out(sp)
    sp.set_defaults(func=cmd_table)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        _status("error: %s" % exc)
        return 2
    except search.BudgetExhausted as exc:
        _status("budget exhausted: %s" % exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
