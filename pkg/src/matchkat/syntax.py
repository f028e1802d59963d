"""Concrete syntax: parsers and pretty-printers for every value the CLI reads.

Match expressions::

    1x0           literal run (concatenation of literals)
    a @ b         concatenation        a + b   union
    a & b         intersection         ~a      complement
    eps  bot  bot(3)  T(4)  ( ... )

    precedence: ~  >  @  >  &  >  +

MatchKAT terms (at a given packet size)::

    drop  skip  test(EXPR)  3 <- 1  2 == 0  p ; q  p + q  p*  !a  ( ... )

    precedence: *  >  !  >  ;  >  +

NetKAT terms, optionally preceded by a ``fields f:3, g:1`` header::

    0  1  dup  f = 6  f <- 6  p ; q  p + q  p*  !a  ( ... )

Tables and LBAs are JSON documents. ``#`` starts a comment that runs to the
end of the line. ``pretty_*`` output always parses back to an equal value.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Callable

from . import match as mx
from . import netkat as nk
from . import terms as mk
from .encoders import Rule, Table
from .errors import ParseError, WidthError
from .lba import Lba, Transition
from .match import Cube
from .packets import Packet, PacketSet


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int


_EXPR_TOKENS = [
    ("WORD", r"[0-9x]+"),
    ("NAME", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"[()@+&~]"),
]
_TERM_TOKENS = [
    ("INT", r"[0-9]+"),
    ("NAME", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"<-|==|[();+*!]"),
]
_NETKAT_TOKENS = [
    ("INT", r"[0-9]+"),
    ("NAME", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"<-|[();+*!=:,]"),
]


def _tokenize(text: str, table, offset: int = 0, raw_groups: dict | None = None):
    parts = [f"(?P<{k}>{p})" for k, p in table]
    regex = re.compile("|".join(parts))
    tokens, i = [], 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        m = regex.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {c!r}", (offset + i, offset + i + 1), text=text)
        kind = m.lastgroup
        tok = Token(kind, m.group(), offset + i, offset + m.end())
        i = m.end()
        if raw_groups and kind == "NAME" and tok.text in raw_groups:
            # ``test( ... )``: capture the balanced parenthesised body verbatim
            j = i
            while j < len(text) and text[j].isspace():
                j += 1
            if j >= len(text) or text[j] != "(":
                raise ParseError("expected '('", (offset + j, offset + j + 1), ["'('"], text)
            depth, k = 0, j
            while k < len(text):
                if text[k] == "(":
                    depth += 1
                elif text[k] == ")":
                    depth -= 1
                    if depth == 0:
                        break
                k += 1
            if depth:
                raise ParseError("unbalanced parentheses", (offset + j, offset + len(text)), ["')'"], text)
            tokens.append(Token(raw_groups[tok.text], text[j + 1:k], offset + j + 1, offset + k))
            i = k + 1
            continue
        tokens.append(tok)
    tokens.append(Token("EOF", "", offset + len(text), offset + len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, tokens: list[Token]):
        self.text = text
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("OP", "NAME") and self.tok.text == text

    def take(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}", [repr(text)])
        return self.take()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            self.fail(f"expected {what}", [what])
        return self.take()

    def fail(self, message: str, expected=()):
        t = self.tok
        if t.kind == "EOF":
            found, span = "end of input", (t.start, t.start)
        else:
            found, span = repr(t.text), (t.start, max(t.end, t.start + 1))
        raise ParseError(f"{message}, found {found}", span, expected, self.text)

    def done(self):
        if self.tok.kind != "EOF":
            self.fail("unexpected trailing input", ["end of input"])


# -- match expressions -------------------------------------------------------
# The parser first builds a raw tree so that bare ``bot`` can take its width
# from context.


@dataclass
class _Raw:
    kind: str
    span: tuple[int, int]
    args: tuple = ()
    value: Any = None


def _parse_raw_expr(p: _Parser) -> _Raw:
    def union():
        left = inter()
        while p.at("+"):
            p.take()
            right = inter()
            left = _Raw("union", (left.span[0], right.span[1]), (left, right))
        return left

    def inter():
        left = concat()
        while p.at("&"):
            p.take()
            right = concat()
            left = _Raw("inter", (left.span[0], right.span[1]), (left, right))
        return left

    def concat():
        left = unary()
        while p.at("@"):
            p.take()
            right = unary()
            left = _Raw("cat", (left.span[0], right.span[1]), (left, right))
        return left

    def unary():
        if p.at("~"):
            start = p.take().start
            child = unary()
            return _Raw("compl", (start, child.span[1]), (child,))
        return atom()

    def number_arg(start):
        p.expect("(")
        tok = p.tok
        if tok.kind != "WORD" or not tok.text.isdigit():
            p.fail("expected a width", ["integer"])
        p.take()
        end = p.expect(")").end
        return int(tok.text), end

    def atom():
        tok = p.tok
        if tok.kind == "WORD":
            if any(c not in "01x" for c in tok.text):
                p.fail("literal runs use only 0, 1 and x", ["0", "1", "x"])
            p.take()
            return _Raw("lit", (tok.start, tok.end), value=tok.text)
        if p.at("eps"):
            p.take()
            return _Raw("lit", (tok.start, tok.end), value="")
        if p.at("bot"):
            p.take()
            if p.at("("):
                w, end = number_arg(tok.start)
                return _Raw("bot", (tok.start, end), value=w)
            return _Raw("bot", (tok.start, tok.end), value=None)
        if p.at("T"):
            p.take()
            w, end = number_arg(tok.start)
            return _Raw("lit", (tok.start, end), value="x" * w)
        if p.at("("):
            p.take()
            inner = union()
            p.expect(")")
            return inner
        p.fail("expected a match expression", ["0", "1", "x", "eps", "bot", "T(n)", "'('", "'~'"])

    return union()


def _infer(r: _Raw) -> int | None:
    if r.kind == "lit":
        return len(r.value)
    if r.kind == "bot":
        return r.value
    if r.kind == "cat":
        a, b = (_infer(c) for c in r.args)
        return None if a is None or b is None else a + b
    if r.kind == "compl":
        return _infer(r.args[0])
    a, b = (_infer(c) for c in r.args)
    if a is not None and b is not None and a != b:
        raise ParseError(f"operands have widths {a} and {b}", r.span)
    return a if a is not None else b


def _build(r: _Raw, width: int | None) -> mx.MatchExpr:
    if r.kind == "lit":
        return mx.lit(r.value)
    if r.kind == "bot":
        w = r.value if r.value is not None else width
        if w is None:
            raise ParseError("cannot infer the width of bot; write bot(n)", r.span)
        return mx.Bot(w)
    if r.kind == "compl":
        return mx.Compl(_build(r.args[0], width))
    if r.kind == "cat":
        left, right = r.args
        wl, wr = _infer(left), _infer(right)
        if width is not None:
            if wl is None and wr is not None:
                wl = width - wr
            elif wr is None and wl is not None:
                wr = width - wl
        if (wl is not None and wl < 0) or (wr is not None and wr < 0):
            raise ParseError("concatenation wider than its context", r.span)
        return mx.Concat(_build(left, wl), _build(right, wr))
    w = _infer(r)
    if w is None:
        w = width
    left, right = (_build(c, w) for c in r.args)
    return (mx.Union if r.kind == "union" else mx.Inter)(left, right)


def parse_match_expr(text: str, width: int | None = None, *, offset: int = 0) -> mx.MatchExpr:
    """Parse a match expression; ``width`` (when given) is checked and used to
    size bare ``bot``."""
    p = _Parser(text, _tokenize(text, _EXPR_TOKENS, offset))
    raw = _parse_raw_expr(p)
    p.done()
    try:
        w = _infer(raw)
        if width is not None and w is not None and w != width:
            raise ParseError(f"expression has width {w}, expected {width}", raw.span)
        return _build(raw, width if w is None else w)
    except WidthError as exc:
        raise ParseError(str(exc), raw.span, text=text) from None


def _lit_run(e: mx.MatchExpr) -> str | None:
    out = []
    while isinstance(e, mx.Concat) and isinstance(e.right, mx.Lit):
        out.append(e.right.symbol)
        e = e.left
    if isinstance(e, mx.Lit):
        out.append(e.symbol)
        return "".join(reversed(out))
    return None


def pretty_match_expr(e: mx.MatchExpr, prec: int = 0) -> str:
    run = _lit_run(e)
    if run is not None:
        return run
    if isinstance(e, mx.Empty):
        return "eps"
    if isinstance(e, mx.Bot):
        return f"bot({e.width})"
    if isinstance(e, mx.Compl):
        return "~" + pretty_match_expr(e.child, 4)
    ops = {mx.Union: (" + ", 1), mx.Inter: (" & ", 2), mx.Concat: (" @ ", 3)}
    sym, level = ops[type(e)]
    out = pretty_match_expr(e.left, level) + sym + pretty_match_expr(e.right, level + 1)
    return f"({out})" if prec > level else out


# -- MatchKAT terms ----------------------------------------------------------


def _bit(p: _Parser) -> int:
    tok = p.tok
    if tok.kind != "INT" or tok.text not in ("0", "1"):
        p.fail("expected a bit value", ["0", "1"])
    p.take()
    return int(tok.text)


def parse_term(text: str, width: int) -> mk.Term:
    """Parse a MatchKAT term at packet size ``width``."""
    p = _Parser(text, _tokenize(text, _TERM_TOKENS, raw_groups={"test": "EXPR"}))

    def plus():
        left = seq()
        while p.at("+"):
            p.take()
            left = mk.Plus(left, seq())
        return left

    def seq():
        left = unary()
        while p.at(";"):
            p.take()
            left = mk.Seq(left, unary())
        return left

    def unary():
        if p.at("!"):
            tok = p.take()
            child = unary()
            if not mk.is_test(child):
                raise ParseError("negation of a non-test", (tok.start, p.tok.start),
                                 ["test"], text)
            return mk.Not(child)
        return postfix()

    def postfix():
        t = atom()
        while p.at("*"):
            p.take()
            t = mk.Star(t)
        return t

    def atom():
        tok = p.tok
        if p.at("drop"):
            p.take()
            return mk.DROP
        if p.at("skip"):
            p.take()
            return mk.SKIP
        if tok.kind == "EXPR":
            p.take()
            return mk.Test(parse_match_expr(tok.text, width, offset=tok.start))
        if tok.kind == "INT":
            p.take()
            i = int(tok.text)
            if not 1 <= i <= width:
                raise ParseError(f"bit index {i} outside 1..{width}", (tok.start, tok.end), text=text)
            if p.at("<-"):
                p.take()
                return mk.Assign(i, _bit(p))
            if p.at("=="):
                p.take()
                return mk.bit_test(i, _bit(p), width)
            p.fail("expected '<-' or '=='", ["'<-'", "'=='"])
        if p.at("("):
            p.take()
            inner = plus()
            p.expect(")")
            return inner
        p.fail("expected a term", ["drop", "skip", "test(...)", "i <- k", "i == k", "'('"])

    term = plus()
    p.done()
    return term


def _point_test(e: mx.MatchExpr) -> tuple[int, int] | None:
    run = _lit_run(e)
    if run is None:
        return None
    fixed = [(i, c) for i, c in enumerate(run, start=1) if c != "x"]
    if len(fixed) != 1:
        return None
    return fixed[0][0], int(fixed[0][1])


def pretty_term(t: mk.Term, prec: int = 0) -> str:
    if isinstance(t, mk.Drop):
        return "drop"
    if isinstance(t, mk.Skip):
        return "skip"
    if isinstance(t, mk.Test):
        pt = _point_test(t.expr)
        out = f"{pt[0]} == {pt[1]}" if pt else f"test({pretty_match_expr(t.expr)})"
        return f"({out})" if pt and prec >= 4 else out
    if isinstance(t, mk.Assign):
        out = f"{t.index} <- {t.value}"
        return f"({out})" if prec >= 4 else out
    if isinstance(t, mk.Star):
        return pretty_term(t.child, 4) + "*"
    if isinstance(t, mk.Not):
        out = "!" + pretty_term(t.child, 3)
        return f"({out})" if prec > 3 else out
    sym, level = {mk.Plus: (" + ", 1), mk.Seq: (" ; ", 2)}[type(t)]
    out = pretty_term(t.left, level) + sym + pretty_term(t.right, level + 1)
    return f"({out})" if prec > level else out


# -- NetKAT ------------------------------------------------------------------


def _parse_fields(p: _Parser) -> nk.FieldSpec:
    fields = []
    while True:
        name = p.expect_kind("NAME", "field name")
        p.expect(":")
        w = p.expect_kind("INT", "field width")
        fields.append((name.text, int(w.text)))
        if not p.at(","):
            break
        p.take()
    try:
        return nk.FieldSpec(tuple(fields))
    except ValueError as exc:
        raise ParseError(str(exc), (0, p.tok.start), text=p.text) from None


def parse_field_spec(text: str) -> nk.FieldSpec:
    """Parse ``f1:3, f2:1`` (an optional leading ``fields`` is accepted)."""
    p = _Parser(text, _tokenize(text, _NETKAT_TOKENS))
    if p.at("fields"):
        p.take()
    spec = _parse_fields(p)
    p.done()
    return spec


def parse_netkat(text: str, fields: nk.FieldSpec | None = None) -> tuple[nk.FieldSpec, nk.NkTerm]:
    """Parse a NetKAT program; a ``fields`` header overrides ``fields``."""
    p = _Parser(text, _tokenize(text, _NETKAT_TOKENS))
    if p.at("fields"):
        p.take()
        fields = _parse_fields(p)
    if fields is None:
        p.fail("missing field declaration", ["fields"])
    spec = fields

    def field_value(name_tok, value_tok):
        if name_tok.text not in spec.names:
            raise ParseError(f"unknown field {name_tok.text!r}", (name_tok.start, name_tok.end),
                             spec.names, text)
        value = int(value_tok.text)
        try:
            spec.check_value(name_tok.text, value)
        except ValueError as exc:
            raise ParseError(str(exc), (value_tok.start, value_tok.end), text=text) from None
        return value

    def plus():
        left = seq()
        while p.at("+"):
            p.take()
            left = nk.NkPlus(left, seq())
        return left

    def seq():
        left = unary()
        while p.at(";"):
            p.take()
            left = nk.NkSeq(left, unary())
        return left

    def unary():
        if p.at("!"):
            tok = p.take()
            child = unary()
            if not nk.nk_is_test(child):
                raise ParseError("negation of a non-test", (tok.start, p.tok.start),
                                 ["test"], text)
            return nk.NkNot(child)
        t = atom()
        while p.at("*"):
            p.take()
            t = nk.NkStar(t)
        return t

    def atom():
        tok = p.tok
        if tok.kind == "INT" and tok.text in ("0", "1"):
            p.take()
            return nk.ZERO if tok.text == "0" else nk.ONE
        if p.at("dup"):
            p.take()
            return nk.DUP
        if tok.kind == "NAME":
            p.take()
            if p.at("="):
                p.take()
                value = p.expect_kind("INT", "value")
                return nk.FieldTest(tok.text, field_value(tok, value))
            if p.at("<-"):
                p.take()
                value = p.expect_kind("INT", "value")
                return nk.FieldAssign(tok.text, field_value(tok, value))
            p.fail("expected '=' or '<-'", ["'='", "'<-'"])
        if p.at("("):
            p.take()
            inner = plus()
            p.expect(")")
            return inner
        p.fail("expected a NetKAT term", ["0", "1", "dup", "f = k", "f <- k", "'('"])

    term = plus()
    p.done()
    return spec, term


def pretty_field_spec(spec: nk.FieldSpec) -> str:
    return "fields " + ", ".join(f"{f}:{w}" for f, w in spec.fields)


def pretty_netkat(t: nk.NkTerm, prec: int = 0) -> str:
    if isinstance(t, nk.Zero):
        return "0"
    if isinstance(t, nk.One):
        return "1"
    if isinstance(t, nk.Dup):
        return "dup"
    if isinstance(t, (nk.FieldTest, nk.FieldAssign)):
        op = "=" if isinstance(t, nk.FieldTest) else "<-"
        out = f"{t.field} {op} {t.value}"
        return f"({out})" if prec >= 4 else out
    if isinstance(t, nk.NkStar):
        return pretty_netkat(t.child, 4) + "*"
    if isinstance(t, nk.NkNot):
        out = "!" + pretty_netkat(t.child, 3)
        return f"({out})" if prec > 3 else out
    sym, level = {nk.NkPlus: (" + ", 1), nk.NkSeq: (" ; ", 2)}[type(t)]
    out = pretty_netkat(t.left, level) + sym + pretty_netkat(t.right, level + 1)
    return f"({out})" if prec > level else out


def pretty_netkat_program(spec: nk.FieldSpec, t: nk.NkTerm) -> str:
    return pretty_field_spec(spec) + "\n" + pretty_netkat(t)


# -- JSON documents ----------------------------------------------------------


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, (exc.pos, exc.pos + 1), text=text) from None


def _structural(text: str, build: Callable[[], Any]):
    try:
        return build()
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        msg = f"missing key {exc}" if isinstance(exc, KeyError) else str(exc)
        raise ParseError(msg, (0, len(text)), text=text) from None


def parse_table(text: str) -> Table:
    doc = _load_json(text)

    def build():
        width = doc["width"]
        if not isinstance(width, int):
            raise TypeError("width must be an integer")
        rules = []
        for r in doc["rules"]:
            pattern = r["pattern"]
            if not isinstance(pattern, str):
                raise TypeError("pattern must be a string")
            actions = tuple((a["bit"], a["value"]) for a in r.get("actions", []))
            for b, v in actions:
                if not isinstance(b, int) or not isinstance(v, int):
                    raise TypeError("action bit and value must be integers")
            rules.append(Rule(Cube(pattern), actions))
        return Table(width, tuple(rules))

    return _structural(text, build)


def table_to_dict(tbl: Table) -> dict:
    return {
        "width": tbl.width,
        "rules": [
            {"pattern": r.pattern.trits,
             "actions": [{"bit": b, "value": v} for b, v in r.actions]}
            for r in tbl.rules
        ],
    }


def pretty_table(tbl: Table) -> str:
    return json.dumps(table_to_dict(tbl), indent=2)


def parse_lba(text: str) -> Lba:
    doc = _load_json(text)

    def build():
        moves = []
        for t in doc["transitions"]:
            moves.append(Transition(str(t["from_state"]), str(t["read"]), str(t["to_state"]),
                                    str(t["write"]), str(t["move"])))
        return Lba(tuple(str(s) for s in doc["states"]), str(doc["start"]), str(doc["accept"]),
                   str(doc["reject"]), int(doc["tape_length"]), tuple(moves))

    return _structural(text, build)


def lba_to_dict(m: Lba) -> dict:
    return {
        "states": list(m.states),
        "start": m.start,
        "accept": m.accept,
        "reject": m.reject,
        "tape_length": m.tape_length,
        "transitions": [
            {"from_state": t.from_state, "read": t.read, "to_state": t.to_state,
             "write": t.write, "move": t.move}
            for t in m.transitions
        ],
    }


def pretty_lba(m: Lba) -> str:
    return json.dumps(lba_to_dict(m), indent=2)


# -- packets -----------------------------------------------------------------


def parse_packets(text: str, width: int) -> PacketSet:
    """Comma- or whitespace-separated binary strings of the given width."""
    items = [s for s in re.split(r"[,\s]+", text.strip()) if s]
    packets = []
    pos = 0
    for s in items:
        pos = text.find(s, pos)
        if any(c not in "01" for c in s) or len(s) != width:
            raise ParseError(f"expected a {width}-bit binary string, found {s!r}",
                             (pos, pos + len(s)), text=text)
        packets.append(Packet.from_string(s))
    return PacketSet.of(width, packets)


def pretty_packets(ps: PacketSet) -> str:
    return ",".join(str(p) for p in ps)

