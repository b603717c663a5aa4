"""Line-oriented text formats for automata, trees, games and separator families.

One record per line, ``#`` starts a comment, tokens are whitespace-separated.
List-valued records (``alphabet``, ``states``, ``nodes``, ...) may be split
over several lines; they are concatenated in file order.
"""
from __future__ import annotations

import os
from typing import Iterator

from .core import Ata, AutomatonError, Nta, RegularTree
from .games import ADAM, EVE, ParityGame


class ParseError(ValueError):
    def __init__(self, path, line: int, token: str, message: str):
        self.path, self.line, self.token = path, line, token
        super().__init__(f"{path}:{line}: {message} (at {token!r})")


def _records(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield no, tokens


def _name(x) -> str:
    s = str(x)
    if not s or any(c.isspace() for c in s) or "#" in s:
        raise AutomatonError(f"name {s!r} cannot be written to a text file")
    return s


def _split_prio(tok: str, path, no):
    name, sep, prio = tok.rpartition(":")
    if not sep or not name or not prio.isdigit():
        raise ParseError(path, no, tok, "expected NAME:PRIORITY")
    return name, int(prio)


def _expect(tokens, n, path, no, usage):
    if len(tokens) != n:
        raise ParseError(path, no, tokens[0], f"expected '{usage}'")


def _header(records, kind, path):
    try:
        no, tokens = next(records)
    except StopIteration:
        raise ParseError(path, 0, "", f"empty file, expected '{kind} NAME'") from None
    if tokens[0] != kind or len(tokens) < 2:
        raise ParseError(path, no, tokens[0], f"expected '{kind} NAME'")
    return tokens


def _build(path, factory, *args):
    try:
        return factory(*args)
    except AutomatonError as exc:
        raise ParseError(path, 0, "", str(exc)) from None


def parse_nta(text: str, path="<string>") -> Nta:
    recs = _records(text)
    name = _header(recs, "nta", path)[1]
    alphabet, states, prio, init, trans = [], [], {}, None, []
    for no, tok in recs:
        head, rest = tok[0], tok[1:]
        if head == "alphabet":
            alphabet += rest
        elif head == "states":
            for t in rest:
                q, p = _split_prio(t, path, no)
                states.append(q)
                prio[q] = p
        elif head == "init":
            _expect(tok, 2, path, no, "init STATE")
            init = rest[0]
        elif head == "trans":
            _expect(tok, 5, path, no, "trans SRC LETTER LEFT RIGHT")
            src, letter, left, right = rest
            trans.append((src, left, letter, right))
        else:
            raise ParseError(path, no, head, "unknown NTA record")
    if init is None:
        raise ParseError(path, 0, "init", "missing init record")
    return _build(path, Nta, name, alphabet, states, prio, init, trans)


def format_nta(a: Nta) -> str:
    lines = [f"nta {_name(a.name)}", "alphabet " + " ".join(a.alphabet),
             "states " + " ".join(f"{_name(q)}:{a.priority[q]}" for q in a.states),
             f"init {_name(a.initial)}"]
    lines += [f"trans {t.src} {t.letter} {t.left} {t.right}" for t in a.transitions]
    return "\n".join(lines) + "\n"


def parse_ata(text: str, path="<string>") -> Ata:
    recs = _records(text)
    name = _header(recs, "ata", path)[1]
    alphabet, states, eve, prio, init, trans = [], [], set(), {}, None, []
    for no, tok in recs:
        head, rest = tok[0], tok[1:]
        if head == "alphabet":
            alphabet += rest
        elif head in ("estates", "astates"):
            for t in rest:
                q, p = _split_prio(t, path, no)
                states.append(q)
                prio[q] = p
                if head == "estates":
                    eve.add(q)
        elif head == "init":
            _expect(tok, 2, path, no, "init STATE")
            init = rest[0]
        elif head == "trans":
            _expect(tok, 5, path, no, "trans SRC LETTER DIR DST")
            trans.append(tuple(rest))
        else:
            raise ParseError(path, no, head, "unknown ATA record")
    if init is None:
        raise ParseError(path, 0, "init", "missing init record")
    return _build(path, Ata, name, alphabet, states, eve, init, prio, trans)


def format_ata(c: Ata) -> str:
    lines = [f"ata {_name(c.name)}", "alphabet " + " ".join(c.alphabet)]
    # consecutive runs keep the declared state order across the two records
    run_kind, run = None, []
    for q in c.states:
        kind = "estates" if q in c.eve else "astates"
        if kind != run_kind and run:
            lines.append(f"{run_kind} " + " ".join(run))
            run = []
        run_kind = kind
        run.append(f"{_name(q)}:{c.priority[q]}")
    if run:
        lines.append(f"{run_kind} " + " ".join(run))
    lines.append(f"init {_name(c.initial)}")
    lines += [f"trans {t.src} {t.letter} {t.dir} {t.dst}" for t in c.transitions]
    return "\n".join(lines) + "\n"


def parse_tree(text: str, path="<string>") -> RegularTree:
    recs = _records(text)
    name = _header(recs, "tree", path)[1]
    alphabet, nodes, label, root, left, right = [], [], {}, None, {}, {}
    for no, tok in recs:
        head, rest = tok[0], tok[1:]
        if head == "alphabet":
            alphabet += rest
        elif head == "nodes":
            for t in rest:
                n, sep, a = t.rpartition(":")
                if not sep or not n or not a:
                    raise ParseError(path, no, t, "expected NODE:LABEL")
                nodes.append(n)
                label[n] = a
        elif head == "root":
            _expect(tok, 2, path, no, "root NODE")
            root = rest[0]
        elif head == "edge":
            _expect(tok, 4, path, no, "edge NODE L|R DST")
            n, d, dst = rest
            if d not in ("L", "R"):
                raise ParseError(path, no, d, "direction must be L or R")
            (left if d == "L" else right)[n] = dst
        else:
            raise ParseError(path, no, head, "unknown tree record")
    if root is None:
        raise ParseError(path, 0, "root", "missing root record")
    return _build(path, RegularTree, name, alphabet, nodes, root, label, left, right)


def format_tree(t: RegularTree) -> str:
    lines = [f"tree {_name(t.name)}", "alphabet " + " ".join(t.alphabet),
             "nodes " + " ".join(f"{_name(n)}:{t.label[n]}" for n in t.nodes),
             f"root {_name(t.root)}"]
    for n in t.nodes:
        lines.append(f"edge {n} L {t.left[n]}")
        lines.append(f"edge {n} R {t.right[n]}")
    return "\n".join(lines) + "\n"


def parse_game(text: str, path="<string>") -> ParityGame:
    recs = _records(text)
    name = _header(recs, "game", path)[1]
    positions, owner, prio, init, edges = [], {}, {}, None, []
    for no, tok in recs:
        head, rest = tok[0], tok[1:]
        if head == "pos":
            _expect(tok, 4, path, no, "pos ID OWNER PRIORITY")
            p, who, k = rest
            if who not in (EVE, ADAM):
                raise ParseError(path, no, who, "owner must be EVE or ADAM")
            if not k.isdigit():
                raise ParseError(path, no, k, "priority must be a natural number")
            positions.append(p)
            owner[p], prio[p] = who, int(k)
        elif head == "init":
            _expect(tok, 2, path, no, "init ID")
            init = rest[0]
        elif head == "edge":
            _expect(tok, 3, path, no, "edge SRC DST")
            edges.append(tuple(rest))
        else:
            raise ParseError(path, no, head, "unknown game record")
    return _build(path, ParityGame, positions, owner, prio, edges, init, name)


def format_game(g: ParityGame) -> str:
    lines = [f"game {_name(g.name)}"]
    lines += [f"pos {_name(p)} {g.owner[p]} {g.priority[p]}" for p in g.positions]
    if g.initial is not None:
        lines.append(f"init {g.initial}")
    lines += [f"edge {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_family_file(text: str, path="<string>"):
    """Parse a family file into ``(name, nta_name, records)``.

    Each record is ``(q, a, transition_index, ata_path or None)``; ``-`` in
    the file stands for "no separator" and relative paths are resolved
    against the family file's directory.
    """
    recs = _records(text)
    head = _header(recs, "family", path)
    if len(head) != 4 or head[2] != "for":
        raise ParseError(path, 1, head[0], "expected 'family NAME for NTANAME'")
    base = os.path.dirname(os.path.abspath(path)) if path != "<string>" else os.getcwd()
    records = []
    for no, tok in recs:
        if tok[0] != "sep":
            raise ParseError(path, no, tok[0], "unknown family record")
        _expect(tok, 5, path, no, "sep STATE LETTER TRANSINDEX ATAFILE")
        q, a, idx, ata = tok[1:]
        if not idx.isdigit():
            raise ParseError(path, no, idx, "transition index must be a natural number")
        target = None if ata == "-" else os.path.join(base, ata)
        records.append((q, a, int(idx), target))
    return head[1], head[3], records


def format_family_file(name: str, nta_name: str, records) -> str:
    lines = [f"family {_name(name)} for {_name(nta_name)}"]
    lines += [f"sep {q} {a} {k} {f if f is not None else '-'}" for q, a, k, f in records]
    return "\n".join(lines) + "\n"


def _reader(parse):
    def read(path):
        with open(path) as fh:
            return parse(fh.read(), path)
    read.__name__ = parse.__name__.replace("parse", "read")
    return read


read_nta = _reader(parse_nta)
read_ata = _reader(parse_ata)
read_tree = _reader(parse_tree)
read_game = _reader(parse_game)


def write_text(path, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def read_separators(path, nta: Nta) -> dict:
    """Family file -> ``{(q, a): [(k, Ata or None), ...]}`` in file order."""
    with open(path) as fh:
        _, owner, records = parse_family_file(fh.read(), path)
    if owner != nta.name:
        raise ParseError(path, 1, owner, f"family is for {owner}, not {nta.name}")
    entries, cache = {}, {}
    for q, a, k, target in records:
        if k >= len(nta.transitions):
            raise ParseError(path, 0, str(k), "transition index out of range")
        t = nta.transitions[k]
        if (t.src, t.letter) != (q, a):
            raise ParseError(path, 0, str(k), f"transition {k} does not start from ({q}, {a})")
        if target is not None and target not in cache:
            cache[target] = read_ata(target)
        entries.setdefault((q, a), []).append((k, cache.get(target)))
    return entries


def read_family(path, nta: Nta):
    from .boolean import SeparatorFamily

    entries = read_separators(path, nta)
    for members in entries.values():
        if any(c is None for _, c in members):
            raise ParseError(path, 0, "-", "an assembled family needs an automaton per transition")
    return SeparatorFamily(nta.name, entries)


def write_family(directory, family, name: str) -> str:
    """Write each member automaton plus a family file; returns the family file path."""
    os.makedirs(directory, exist_ok=True)
    records = []
    for (q, a), members in family.entries.items():
        for k, c in members:
            fname = f"{name}_{k}.ata"
            write_text(os.path.join(directory, fname), format_ata(c))
            records.append((q, a, k, fname))
    path = os.path.join(directory, f"{name}.family")
    write_text(path, format_family_file(name, family.owner, records))
    return path
