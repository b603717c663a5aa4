"""Command-line front end.

Boolean verbs exit 0 when their predicate holds (``empty``: the language is
empty, ``disjoint``, ``ambiguous``, ``member``, ``comp-check``, ``verify``:
no mismatches), 1 when it fails, and 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import analysis, boolean, construct, core, games, textio, verify

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class Report:
    """Collects ``KEY value`` facts and prints them in text or lines format."""

    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout

    def fact(self, key: str, value, text: str | None = None) -> None:
        if self.fmt == "lines":
            print(f"{key} {value}", file=self.out)
        else:
            print(text if text is not None else f"{key.lower().replace('_', ' ')}: {value}",
                  file=self.out)

    def block(self, text: str) -> None:
        print(text, end="" if text.endswith("\n") else "\n", file=self.out)


def _load_automaton(path):
    with open(path) as fh:
        text = fh.read()
    first = next((tok for _, tok in textio._records(text)), [""])[0]
    if first == "ata":
        return textio.parse_ata(text, path)
    return textio.parse_nta(text, path)


def _emit(args, rep: Report, text: str) -> None:
    if args.output:
        textio.write_text(args.output, text)
        rep.fact("WROTE", args.output, f"wrote {args.output}")
    else:
        rep.block(text)


def _fmt_set(items) -> str:
    return " ".join(sorted(str(x) for x in items)) or "-"


def cmd_solve_game(args, rep):
    g = textio.read_game(args.game)
    sol = games.solve_game(g)
    for p in g.positions:
        move = sol.strategy(sol.winner[p]).get(p, "-")
        rep.fact("WIN", f"{p} {sol.winner[p]} {move}",
                 f"{p}: {sol.winner[p]} wins" + (f", plays to {move}" if move != "-" else ""))
    if g.initial is None:
        return EXIT_TRUE
    return EXIT_TRUE if sol.winner[g.initial] == games.EVE else EXIT_FALSE


def cmd_empty(args, rep):
    a = textio.read_nta(args.nta)
    live = analysis.live_states(a)
    empty = a.initial not in live
    rep.fact("LIVE", _fmt_set(live), f"live states: {_fmt_set(live)}")
    rep.fact("EMPTY", int(empty), "language is empty" if empty else "language is non-empty")
    return EXIT_TRUE if empty else EXIT_FALSE


def cmd_productive(args, rep):
    a = textio.read_nta(args.nta)
    report = analysis.productive_pairs(a)
    for q, letter in sorted(report.productive_pairs, key=str):
        rep.fact("PAIR", f"{q} {letter}", f"productive: ({q}, {letter})")
    rep.fact("COUNT", len(report.productive_pairs))
    return EXIT_TRUE


def cmd_prune(args, rep):
    a = textio.read_nta(args.nta)
    pruned = analysis.prune(a)
    empty = analysis.is_empty_after_prune(pruned)
    rep.fact("EMPTY_AFTER_PRUNE", int(empty))
    _emit(args, rep, textio.format_nta(pruned))
    return EXIT_TRUE


def cmd_disjoint(args, rep):
    a1, a2 = textio.read_nta(args.nta1), textio.read_nta(args.nta2)
    disjoint, witness = analysis.is_disjoint(a1, a2)
    rep.fact("DISJOINT", int(disjoint),
             "languages are disjoint" if disjoint else "languages intersect")
    if witness is not None:
        _emit(args, rep, textio.format_tree(witness))
    return EXIT_TRUE if disjoint else EXIT_FALSE


def cmd_ambiguous(args, rep):
    a = textio.read_nta(args.nta)
    verdict = analysis.is_unambiguous(a)
    rep.fact("AMBIGUOUS", int(not verdict.unambiguous),
             f"{a.name} is {'un' if verdict.unambiguous else ''}ambiguous")
    if verdict.witness is not None:
        _emit(args, rep, textio.format_tree(verdict.witness))
    return EXIT_FALSE if verdict.unambiguous else EXIT_TRUE


def cmd_delta_rooted(args, rep):
    a = textio.read_nta(args.nta)
    _emit(args, rep, textio.format_nta(analysis.delta_rooted(a, args.transition)))
    return EXIT_TRUE


def cmd_complement(args, rep):
    _emit(args, rep, textio.format_ata(boolean.complement(textio.read_ata(args.ata))))
    return EXIT_TRUE


def cmd_binary(op):
    def run(args, rep):
        c1, c2 = textio.read_ata(args.ata1), textio.read_ata(args.ata2)
        _emit(args, rep, textio.format_ata(op(c1, c2)))
        return EXIT_TRUE
    return run


def cmd_family(args, rep):
    a = textio.read_nta(args.nta)
    fam = boolean.partition_family(a, textio.read_separators(args.pairs, a))
    if not args.output:
        raise UsageError("family needs -o DIRECTORY")
    path = textio.write_family(args.output, fam, f"{a.name}_family")
    rep.fact("FAMILY", path, f"wrote family {path}")
    return EXIT_TRUE


def _band(args, default=None):
    if args.band is None:
        return default
    return core.IndexPair(*args.band)


def cmd_build_r(args, rep):
    a = textio.read_nta(args.nta)
    fam = textio.read_family(args.family, a)
    r = construct.build_r(a, fam, _band(args))
    _emit(args, rep, textio.format_ata(r))
    rep.fact("STATES", len(r.states))
    if args.check_band:
        idx = _band(args, a.index())
        verdict = core.scc_comp_check(r, core.IndexPair(idx.lo + 1, idx.hi)).verdict
        rep.fact("COMP", int(verdict), f"Comp({idx.lo + 1},{idx.hi}): {verdict}")
        return EXIT_TRUE if verdict else EXIT_FALSE
    return EXIT_TRUE


def cmd_comp_check(args, rep):
    c = textio.read_ata(args.ata)
    report = core.scc_comp_check(c, _band(args))
    for info in report.sccs:
        shift = "NONE" if info.shift is None else info.shift
        rep.fact("SCC", f"{_fmt_set(info.states)} | {_fmt_set(info.priorities)} | {shift}")
    rep.fact("VERDICT", int(report.verdict))
    return EXIT_TRUE if report.verdict else EXIT_FALSE


def cmd_normalize(args, rep):
    c = textio.read_ata(args.ata)
    _emit(args, rep, textio.format_ata(core.normalize_shift(c, _band(args))))
    return EXIT_TRUE


def cmd_member(args, rep):
    t = textio.read_tree(args.tree)
    aut = _load_automaton(args.automaton)
    if isinstance(aut, core.Ata):
        ok = verify.member_ata(t, aut)
    else:
        ok = verify.member_nta(t, aut)
    rep.fact("MEMBER", int(ok), f"{t.name} {'∈' if ok else '∉'} L({aut.name})")
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_count_runs(args, rep):
    t, a = textio.read_tree(args.tree), textio.read_nta(args.nta)
    rep.fact("RUNS", verify.count_runs(t, a).name)
    return EXIT_TRUE


def cmd_gen_corpus(args, rep):
    if not args.output:
        raise UsageError("gen-corpus needs -o DIRECTORY")
    corpus = verify.random_corpus(args.alphabet, args.count, args.seed, args.size)
    os.makedirs(args.output, exist_ok=True)
    for k, t in enumerate(corpus):
        textio.write_text(os.path.join(args.output, f"t{k:04d}.tree"), textio.format_tree(t))
    rep.fact("TREES", len(corpus), f"wrote {len(corpus)} trees to {args.output}")
    return EXIT_TRUE


def read_corpus(directory) -> verify.Corpus:
    names = sorted(f for f in os.listdir(directory) if f.endswith(".tree"))
    return verify.Corpus([textio.read_tree(os.path.join(directory, f)) for f in names],
                         tuple(os.path.join(directory, f) for f in names))


def cmd_verify(args, rep):
    a = textio.read_nta(args.nta)
    r = textio.read_ata(args.ata)
    fam = textio.read_family(args.family, a) if args.family else None
    corpus = read_corpus(args.corpus)
    report = verify.verify_equivalence(a, r, corpus, fam)
    for m in report.mismatches:
        rep.fact("MISMATCH", f"{m.tree} inA={int(m.in_a)} inR={int(m.in_r)} {m.tag}")
    for tree, pair, what in report.family_blame:
        rep.fact("BLAME", f"{tree} {pair[0]} {pair[1]} {what}")
    if report.vacuous:
        rep.fact("VACUOUS", 1, "corpus is empty")
    print(report.summary(), file=rep.out)
    return EXIT_TRUE if not report.mismatches else EXIT_FALSE


def cmd_play(args, rep):
    t, c = textio.read_tree(args.tree), textio.read_ata(args.ata)
    user = games.EVE if args.side == "eve" else games.ADAM
    play(t, c, user, out=rep.out)
    return EXIT_TRUE


def play(t, c, user: str, read=input, out=None, max_steps: int = 1000) -> list:
    """Step through the membership game; the machine plays the other side.

    The play stops when a position repeats; the loop is then scored as if
    both players kept repeating it.
    """
    out = out or sys.stdout
    transcript = []

    def say(line):
        transcript.append(line)
        print(line, file=out, flush=True)

    g = verify.ata_game(t, c)
    sol = games.solve_game(g)
    succ = g.successors()
    machine = games.opponent(user)
    say(f"PREDICTION {sol.winner[g.initial]}")
    pos, history = g.initial, []
    while pos not in history and len(history) < max_steps:
        history.append(pos)
        say(f"AT node={pos[0]} state={pos[1]} owner={g.owner[pos]} priority={g.priority[pos]}")
        moves = succ[pos]
        if g.owner[pos] == machine:
            pos = sol.strategy(machine).get(pos, moves[0])
            say(f"MACHINE -> {pos}")
            continue
        for k, m in enumerate(moves):
            say(f"  [{k}] {m}")
        while True:
            try:
                answer = read("move> ").strip()
            except EOFError:
                answer = "quit"
            if answer == "quit":
                say("QUIT")
                return transcript
            if answer.isdigit() and int(answer) < len(moves):
                pos = moves[int(answer)]
                break
            say("illegal move")
    loop = history[history.index(pos):] if pos in history else history
    top = max(g.priority[p] for p in loop)
    say(f"OUTCOME {games.EVE if top % 2 == 0 else games.ADAM} (loop max priority {top})")
    return transcript


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "lines"], default="text")
    common.add_argument("-o", "--output", metavar="PATH")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="treeauto", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, *positional, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    verb("solve-game", cmd_solve_game, "game")
    verb("empty", cmd_empty, "nta")
    verb("productive", cmd_productive, "nta")
    verb("prune", cmd_prune, "nta")
    verb("disjoint", cmd_disjoint, "nta1", "nta2")
    verb("ambiguous", cmd_ambiguous, "nta")
    verb("delta-rooted", cmd_delta_rooted, "nta").add_argument("transition", type=int)
    verb("complement", cmd_complement, "ata")
    verb("union", cmd_binary(boolean.union), "ata1", "ata2")
    verb("intersect", cmd_binary(boolean.intersect), "ata1", "ata2")
    verb("family", cmd_family, "nta", "pairs")
    p = verb("build-r", cmd_build_r, "nta", "family")
    p.add_argument("--check-band", action="store_true")
    p.add_argument("--band", nargs=2, type=int, metavar=("LO", "HI"))
    verb("comp-check", cmd_comp_check, "ata").add_argument(
        "--band", nargs=2, type=int, metavar=("LO", "HI"), required=True)
    verb("normalize", cmd_normalize, "ata").add_argument(
        "--band", nargs=2, type=int, metavar=("LO", "HI"), required=True)
    verb("member", cmd_member, "tree", "automaton")
    verb("count-runs", cmd_count_runs, "tree", "nta")
    p = verb("gen-corpus", cmd_gen_corpus)
    p.add_argument("--alphabet", nargs="+", required=True)
    p.add_argument("--size", type=int, default=8, help="trees get sizes 1..SIZE in turn")
    p.add_argument("--count", type=int, default=200)
    p = verb("verify", cmd_verify)
    p.add_argument("--nta", required=True)
    p.add_argument("--ata", required=True)
    p.add_argument("--family")
    p.add_argument("--corpus", required=True)
    verb("play", cmd_play, "tree", "ata").add_argument(
        "--side", choices=["eve", "adam"], default="adam", help="the side you play")
    return parser


def main(argv=None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_TRUE
    rep = Report(args.format, out)
    try:
        return args.func(args, rep)
    except (textio.ParseError, core.AutomatonError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
