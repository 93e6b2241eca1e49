"""Recursive-descent parser for the surface language.

    program := def* main
    def     := NAME ":" type "=" expr ["@nocost"]
    main    := "main" ("(" NAME ":" type ")")* "=" expr   |   expr
    expr    := "fun" binder+ "->" expr
             | "let" NAME "=" expr "in" expr
             | head atom*
    head    := "cons" atom atom
             | "foldr" atom "(" "fun" NAME NAME "->" expr ")" atom
             | "natcase" atom atom "(" "fun" NAME "->" expr ")"
             | atom
    atom    := NAME | NAT | "nil" | "unit" | "(" expr [":" type] ")"
    type    := atype ["->" type]
    atype   := "unit" | "nat" | "list" atype | "(" type ")"

``--`` starts a comment.  A file holding only an expression is a program
with no definitions and no inputs.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    NAT_T, UNIT_T, Ann, App, Arrow, ConsE, Def, DefRef, FoldrE, Lam, Let, List, NatCase,
    NatLit, NilE, SurfaceProgram, Term, Ty, UnitE, Var,
)

KEYWORDS = {"fun", "let", "in", "nil", "cons", "foldr", "natcase", "unit", "main"}

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>--[^\n]*)"
    r"|(?P<nocost>@nocost\b)|(?P<arrow>->)|(?P<nat>\d+)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9_']*)|(?P<sym>[():=])"
)


class ParseError(Exception):
    def __init__(self, msg: str, line: int, col: int) -> None:
        super().__init__(f"{line}:{col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # name, kw, nat, sym, eof
    text: str
    line: int
    col: int

    @property
    def pos(self) -> tuple[int, int]:
        return (self.line, self.col)


def tokenize(text: str) -> list[Token]:
    toks = []
    line, col, i = 1, 1, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind == "name" and s in KEYWORDS:
                toks.append(Token("kw", s, line, col))
            elif kind in ("name", "nat"):
                toks.append(Token(kind, s, line, col))
            elif kind in ("arrow", "sym", "nocost"):
                toks.append(Token("sym", s, line, col))
            col += len(s)
        i = m.end()
    toks.append(Token("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = tokenize(text)
        self.i = 0
        self.depth = 0  # parenthesis nesting

    # -- token helpers --

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "kw") and self.tok.text == text

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def name(self) -> Token:
        if self.tok.kind != "name":
            self.error("expected a name")
        return self.advance()

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{msg}, found {found}", tok.line, tok.col)

    # -- types --

    def type(self) -> Ty:
        dom = self.atype()
        if self.at("->"):
            self.advance()
            return Arrow(dom, self.type())
        return dom

    def atype(self) -> Ty:
        t = self.tok
        if self.at("unit"):
            self.advance()
            return UNIT_T
        if t.kind == "name" and t.text == "nat":
            self.advance()
            return NAT_T
        if t.kind == "name" and t.text == "list":
            self.advance()
            return List(self.atype())
        if self.at("("):
            self.advance()
            ty = self.type()
            self.expect(")")
            return ty
        self.error("expected a type")

    # -- program --

    def program(self) -> SurfaceProgram:
        if self.tok.kind == "eof":
            self.error("empty program")
        defs: list[Def] = []
        seen: dict[str, Token] = {}
        while self.tok.kind == "name" and self.peek().kind == "sym" and self.peek().text == ":":
            start = self.name()
            if start.text in seen:
                prev = seen[start.text]
                raise ParseError(
                    f"duplicate definition {start.text!r} (first defined at {prev.line}:{prev.col})",
                    start.line, start.col)
            seen[start.text] = start
            self.expect(":")
            ty = self.type()
            self.expect("=")
            body = self.expr()
            nocost = False
            if self.at("@nocost"):
                self.advance()
                nocost = True
            defs.append(Def(start.text, ty, body, nocost, start.pos))
        inputs: list[tuple[str, Ty]] = []
        if self.at("main"):
            self.advance()
            while self.at("("):
                self.advance()
                n = self.name()
                if n.text in {x for x, _ in inputs}:
                    raise ParseError(f"duplicate input {n.text!r}", n.line, n.col)
                self.expect(":")
                inputs.append((n.text, self.type()))
                self.expect(")")
            self.expect("=")
        elif defs:
            self.error("expected a definition or 'main'")
        main = self.expr()
        if self.tok.kind != "eof":
            self.error("unexpected input after the main expression")
        prog = SurfaceProgram(tuple(defs), main, tuple(inputs))
        return _resolve_program(prog)

    # -- expressions --

    def expr(self) -> Term:
        t = self.tok
        if self.at("fun"):
            self.advance()
            params = [self.binder()]
            while not self.at("->"):
                params.append(self.binder())
            self.expect("->")
            body = self.expr()
            for (p, ann, pos) in reversed(params):
                body = Lam(p, body, ann, pos)
            return body
        if self.at("let"):
            self.advance()
            n = self.name()
            self.expect("=")
            bound = self.expr()
            self.expect("in")
            return Let(n.text, bound, self.expr(), t.pos)
        return self.app()

    def binder(self):
        t = self.tok
        if self.at("("):
            self.advance()
            n = self.name()
            self.expect(":")
            ty = self.type()
            self.expect(")")
            return n.text, ty, t.pos
        return self.name().text, None, t.pos

    def starts_atom(self) -> bool:
        t = self.tok
        if t.kind == "name":
            # ``f : ty = ...`` begins the next definition
            nxt = self.peek()
            return not (self.depth == 0 and nxt.kind == "sym" and nxt.text == ":")
        if t.kind == "nat":
            return True
        return t.kind in ("sym", "kw") and t.text in ("(", "nil", "unit")

    def app(self) -> Term:
        head = self.head()
        while self.starts_atom():
            arg = self.atom()
            head = App(head, arg, _pos_of(head))
        return head

    def head(self) -> Term:
        t = self.tok
        if self.at("cons"):
            self.advance()
            h = self.atom()
            return ConsE(h, self.atom(), t.pos)
        if self.at("foldr"):
            self.advance()
            nil_case = self.atom()
            (x, r), body = self.paren_fun(2)
            scrut = self.atom()
            return FoldrE(nil_case, x, r, body, scrut, t.pos)
        if self.at("natcase"):
            self.advance()
            scrut = self.atom()
            zero = self.atom()
            (p,), succ = self.paren_fun(1)
            return NatCase(scrut, zero, p, succ, t.pos)
        return self.atom()

    def paren_fun(self, arity: int):
        self.expect("(")
        self.depth += 1
        self.expect("fun")
        names = [self.name().text for _ in range(arity)]
        if not self.at("->"):
            self.error(f"expected '->' after {arity} parameter(s)")
        self.advance()
        body = self.expr()
        self.expect(")")
        self.depth -= 1
        return tuple(names), body

    def atom(self) -> Term:
        t = self.tok
        if t.kind == "name":
            self.advance()
            return Var(t.text, t.pos)
        if t.kind == "nat":
            self.advance()
            return NatLit(int(t.text), t.pos)
        if self.at("nil"):
            self.advance()
            return NilE(t.pos)
        if self.at("unit"):
            self.advance()
            return UnitE(t.pos)
        if self.at("("):
            self.advance()
            self.depth += 1
            e = self.expr()
            if self.at(":"):
                self.advance()
                e = Ann(e, self.type(), t.pos)
            self.expect(")")
            self.depth -= 1
            return e
        self.error("expected an expression")


def _pos_of(t: Term):
    return getattr(t, "pos", None)


# -- name resolution --------------------------------------------------------

def _resolve_program(p: SurfaceProgram) -> SurfaceProgram:
    names = [d.name for d in p.defs]
    defs = []
    for i, d in enumerate(p.defs):
        earlier = set(names[:i])
        later = set(names[i:])
        defs.append(Def(d.name, d.ty, _resolve(d.body, frozenset(), earlier, later, d.name),
                        d.nocost, d.pos))
    scope = frozenset(n for n, _ in p.inputs)
    main = _resolve(p.main, scope, set(names), set(), "main")
    return SurfaceProgram(tuple(defs), main, p.inputs, p.name)


def _resolve(t: Term, scope: frozenset, earlier: set, later: set, owner: str) -> Term:
    def go(t: Term, scope: frozenset) -> Term:
        if isinstance(t, Var):
            if t.name in scope:
                return t
            if t.name in earlier:
                return DefRef(t.name, t.pos)
            if t.name in later:
                line, col = t.pos or (0, 0)
                what = "recursive" if t.name == owner else "forward"
                raise ParseError(
                    f"{what} reference to {t.name!r} in {owner!r}; recursion is only "
                    "available through foldr", line, col)
            return t  # left for the type checker to report
        if isinstance(t, Lam):
            return Lam(t.param, go(t.body, scope | {t.param}), t.ann, t.pos)
        if isinstance(t, App):
            return App(go(t.fn, scope), go(t.arg, scope), t.pos)
        if isinstance(t, Let):
            return Let(t.name, go(t.bound, scope), go(t.body, scope | {t.name}), t.pos)
        if isinstance(t, ConsE):
            return ConsE(go(t.head, scope), go(t.tail, scope), t.pos)
        if isinstance(t, FoldrE):
            return FoldrE(go(t.nil_case, scope), t.head_param, t.acc_param,
                          go(t.cons_case, scope | {t.head_param, t.acc_param}),
                          go(t.scrutinee, scope), t.pos)
        if isinstance(t, NatCase):
            return NatCase(go(t.scrutinee, scope), go(t.zero_case, scope), t.pred_name,
                           go(t.succ_case, scope | {t.pred_name}), t.pos)
        if isinstance(t, Ann):
            return Ann(go(t.expr, scope), t.ty, t.pos)
        return t

    return go(t, scope)


def parse(text: str, name: str = "main") -> SurfaceProgram:
    p = _Parser(text).program()
    return SurfaceProgram(p.defs, p.main, p.inputs, name)


def parse_expr(text: str) -> Term:
    """Parse a lone expression (no definitions, no resolution of names)."""
    ps = _Parser(text)
    if ps.tok.kind == "eof":
        ps.error("empty program")
    e = ps.expr()
    if ps.tok.kind != "eof":
        ps.error("unexpected input after the expression")
    return e


def parse_type(text: str) -> Ty:
    ps = _Parser(text)
    ty = ps.type()
    if ps.tok.kind != "eof":
        ps.error("unexpected input after the type")
    return ty
