"""Command-line front end: solve, synth, gen, verify, serve.

Words on the command line are comma separated with EPS for the empty word
(an empty CLI token is not portable).  Exit codes for `solve`: 0 when S
wins, 1 when D wins, 2 on a resource limit, 3 and up for usage errors.
Every command is deterministic for fixed flags; reports never include
timings or machine state.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance, fo, langs
from .exprs import Alphabet, Dialect, ExprSyntaxError, render_expr
from .game import Position
from .oracle import EnumSpec, min_separating
from .solver import Solver, SolverLimits, SolverLimitError
from .wire import position_from_json

EXIT_S, EXIT_D, EXIT_LIMIT, EXIT_ERROR = 0, 1, 2, 3


class CliError(Exception):
    pass


def parse_words(text: str | None) -> tuple[str, ...]:
    if not text:
        return ()
    out = []
    for token in text.split(","):
        if token == "EPS":
            out.append("")
        elif token:
            out.append(token)
        else:
            raise CliError("empty word token; use EPS for the empty word")
    return tuple(out)


def _alphabet_for(args, *word_sets) -> Alphabet:
    if getattr(args, "alphabet", None):
        return Alphabet(args.alphabet)
    chars = sorted({c for ws in word_sets for w in ws for c in w})
    if not chars:
        raise CliError("no alphabet given and none derivable from the words; "
                       "pass --alphabet")
    return Alphabet(chars)


def _write_report(args, body: dict) -> None:
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(body, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _position_from_args(args) -> Position:
    if args.position_file:
        with open(args.position_file, encoding="utf-8") as fh:
            return position_from_json(json.load(fh))
    a_words = parse_words(args.a_words)
    b_words = parse_words(args.b_words)
    alphabet = _alphabet_for(args, a_words, b_words)
    dialect = Dialect(args.dialect)
    s = args.stars
    if dialect is not Dialect.RE and s is None:
        raise CliError(f"the {dialect.value} game needs a star budget: pass -s")
    if dialect is Dialect.RE:
        s = None
    if args.size_budget is None:
        raise CliError("pass the size budget -k")
    return Position(dialect, args.size_budget, s, a_words, b_words, alphabet)


def cmd_solve(args) -> int:
    position = _position_from_args(args)
    limits = SolverLimits(max_positions=args.max_positions,
                          chain_prune=args.chain_prune)
    solver = Solver(limits)
    try:
        result = solver.solve(position)
    except SolverLimitError as exc:
        print(f"resource limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    witness_text = render_expr(result.witness) if result.witness is not None else None
    if result.winner == "S":
        print(f"S wins; witness: {witness_text}")
    else:
        print("D wins")
    print(f"stats: visited={result.stats['visited']} "
          f"memo_hits={result.stats['memo_hits']} max_depth={result.stats['max_depth']}")
    _write_report(args, {
        "command": "solve",
        "position": {"dialect": position.dialect.value, "k": position.k,
                     "s": position.s, "A": list(position.a_words),
                     "B": list(position.b_words),
                     "alphabet": "".join(position.alphabet.symbols)},
        "winner": result.winner,
        "witness": witness_text,
        "stats": result.stats,
        "config": {"chain_prune": args.chain_prune,
                   "max_positions": args.max_positions},
    })
    return EXIT_S if result.winner == "S" else EXIT_D


def cmd_synth(args) -> int:
    a_words = parse_words(args.a_words)
    b_words = parse_words(args.b_words)
    overlap = sorted(set(a_words) & set(b_words))
    if overlap:
        shown = ", ".join(w if w else "EPS" for w in overlap)
        raise CliError(f"A and B overlap ({shown}); no separator can exist")
    alphabet = _alphabet_for(args, a_words, b_words)
    spec = EnumSpec(alphabet, Dialect(args.dialect), args.max_size, args.max_stars)
    found = min_separating(a_words, b_words, spec)
    body = {
        "command": "synth",
        "dialect": spec.dialect.value,
        "max_size": spec.max_size,
        "max_stars": spec.max_stars,
        "alphabet": "".join(alphabet.symbols),
        "A": list(a_words),
        "B": list(b_words),
    }
    if found is None:
        print(f"none within bounds (size <= {args.max_size}"
              + (f", stars <= {args.max_stars}" if args.max_stars is not None else "")
              + ")")
        body["separator"] = None
        _write_report(args, body)
        return EXIT_D
    print(f"minimal separator: {render_expr(found.expr)} "
          f"(size {found.size}, {found.stars} stars)")
    body["separator"] = {"expr": render_expr(found.expr),
                         "size": found.size, "stars": found.stars}
    _write_report(args, body)
    return EXIT_S


def _emit(args, lines) -> None:
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    if args.what == "enc":
        words = langs.enc_language(args.level)
        header = f"# alphabet: {'()'}"
        _emit(args, [header] + [w if w else langs.EPS_TOKEN for w in words])
    elif args.what == "lnk":
        if args.chain_half is None:
            raise CliError("gen lnk needs -k (half chain length)")
        words = langs.make_lnk(args.level, args.chain_half)
        alphabet = langs.chain_alphabet(args.level)
        _emit(args, [f"# alphabet: {''.join(alphabet.symbols)}"] + list(words))
    elif args.what == "phi":
        phi = fo.build_phi(args.level)
        _emit(args, [f"# level {args.level}, size {fo.fo_size(phi)}",
                     fo.render_fo(phi)])
    else:
        raise CliError(f"unknown generator {args.what!r}")
    return 0


_SUITES = {
    "theorems": (1, 2),
    "lemmas": (3,),
    "sizes": (4,),
    "constructions": (5,),
    "stars": (6,),
    "all": (1, 2, 3, 4, 5, 6, 7),
}


def cmd_verify(args) -> int:
    wanted = _SUITES[args.suite]
    if 7 in wanted:
        results, report = acceptance.run_all(include_determinism=True)
    else:
        ctx = acceptance.AcceptanceContext()
        by_number = {1: acceptance.criterion_1, 2: acceptance.criterion_2,
                     3: acceptance.criterion_3, 4: acceptance.criterion_4,
                     5: acceptance.criterion_5, 6: acceptance.criterion_6}
        results = [by_number[n](ctx) for n in wanted]
        report = acceptance.render_report(results)
    sys.stdout.write(report)
    _write_report(args, {
        "command": "verify",
        "suite": args.suite,
        "criteria": [{"number": r.number, "title": r.title, "passed": r.passed,
                      "lines": list(r.lines)} for r in results],
    })
    return 0 if all(r.passed for r in results) else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(log_dir=args.log_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regames",
        description="Size games on regular expressions: solve, synthesize, "
                    "generate example languages, verify, serve.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="decide who wins a game position")
    p_solve.add_argument("--dialect", choices=[d.value for d in Dialect], default="re")
    p_solve.add_argument("-k", dest="size_budget", type=int)
    p_solve.add_argument("-s", dest="stars", type=int, default=None)
    p_solve.add_argument("-A", dest="a_words", default="",
                         help="comma-separated words; EPS for the empty word")
    p_solve.add_argument("-B", dest="b_words", default="")
    p_solve.add_argument("--alphabet", default=None)
    p_solve.add_argument("--position-file", default=None,
                         help="JSON position (overrides the inline flags)")
    p_solve.add_argument("--chain-prune", action="store_true")
    p_solve.add_argument("--max-positions", type=int, default=5_000_000)
    p_solve.add_argument("--report", default=None, help="write a JSON report here")
    p_solve.set_defaults(fn=cmd_solve)

    p_synth = sub.add_parser("synth", help="minimal separating expression")
    p_synth.add_argument("--dialect", choices=[d.value for d in Dialect], default="re")
    p_synth.add_argument("-A", dest="a_words", default="")
    p_synth.add_argument("-B", dest="b_words", default="")
    p_synth.add_argument("--max-size", type=int, required=True)
    p_synth.add_argument("--max-stars", type=int, default=None)
    p_synth.add_argument("--alphabet", default=None)
    p_synth.add_argument("--report", default=None)
    p_synth.set_defaults(fn=cmd_synth)

    p_gen = sub.add_parser("gen", help="emit example languages and formulas")
    p_gen.add_argument("what", choices=["enc", "lnk", "phi"])
    p_gen.add_argument("-n", dest="level", type=int, required=True)
    p_gen.add_argument("-k", dest="chain_half", type=int, default=None)
    p_gen.add_argument("-o", dest="output", default=None)
    p_gen.set_defaults(fn=cmd_gen)

    p_verify = sub.add_parser("verify", help="run the acceptance criteria")
    p_verify.add_argument("--suite", choices=sorted(_SUITES), default="all")
    p_verify.add_argument("--report", default=None)
    p_verify.set_defaults(fn=cmd_verify)

    p_serve = sub.add_parser("serve", help="start the interactive game service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--log-dir", default=None,
                         help="append per-session event logs here")
    p_serve.set_defaults(fn=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, ExprSyntaxError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
