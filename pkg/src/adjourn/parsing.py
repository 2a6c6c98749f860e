"""Tokenizer and recursive-descent parser for lambda and marked terms.

Grammar::

    term  ::= '\\' ident+ '.' term
            | 'let' ident '=' term 'in*' term        (marked only)
            | atom+ [ '\\' ... | 'let' ... ]
    atom  ::= ident | '(' term ')'

``λ`` is accepted for ``\\``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from adjourn.syntax import Node, Var, abstract


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class Token:
    kind: str  # 'ident', 'num', 'sym', 'eof'
    text: str
    line: int
    column: int


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<num>\d+)"
    r"|(?P<sym>:=|->|λ|\\|[.()=\[\];<>,*])"
)


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            sym = m.group()
            out.append(Token(kind, "\\" if sym == "λ" else sym, line, pos - line_start + 1))
        else:
            for i, ch in enumerate(m.group()):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class TokenStream:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.toks[self.i]

    def peek_at(self, k: int) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek
        return tok.kind in ("sym", "ident", "num") and tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.next()

    def ident(self) -> str:
        tok = self.peek
        if tok.kind != "ident" or tok.text in KEYWORDS:
            self.fail("expected an identifier")
        self.i += 1
        return tok.text

    def fail(self, message: str):
        tok = self.peek
        found = tok.text or "end of input"
        raise ParseError(f"{message}, found {found!r}", tok.line, tok.column)

    def end(self):
        if self.peek.kind != "eof":
            self.fail("unexpected trailing input")


KEYWORDS = {"let", "in"}


def parse_lambda(text: str) -> Node:
    """Parse a pure lambda term."""
    s = TokenStream(text)
    t = _term(s, marked=False)
    s.end()
    return t


def parse_marked(text: str) -> Node:
    """Parse a marked term; ``let x = N in* M`` denotes the marked redex."""
    s = TokenStream(text)
    t = _term(s, marked=True)
    s.end()
    return t


def _starts_atom(s: TokenStream) -> bool:
    tok = s.peek
    return (tok.kind == "ident" and tok.text not in KEYWORDS) or s.at("(")


def _term(s: TokenStream, marked: bool) -> Node:
    from adjourn.lam import App, Lam

    if s.accept("\\"):
        names = [s.ident()]
        while s.peek.kind == "ident" and s.peek.text not in KEYWORDS:
            names.append(s.ident())
        s.expect(".")
        body = _term(s, marked)
        for name in reversed(names):
            body = Lam(abstract(body, name), name)
        return body
    if s.at("let"):
        if not marked:
            s.fail("'let' is only available in marked terms")
        return _let(s)
    if not _starts_atom(s):
        s.fail("expected a term")
    t = _atom(s, marked)
    while True:
        if _starts_atom(s):
            t = App(t, _atom(s, marked))
        elif s.at("\\") or (marked and s.at("let")):
            t = App(t, _term(s, marked))
        else:
            return t


def _let(s: TokenStream) -> Node:
    from adjourn.marked import Ml

    s.expect("let")
    name = s.ident()
    s.expect("=")
    arg = _term(s, True)
    s.expect("in")
    s.expect("*")
    body = _term(s, True)
    return Ml(abstract(body, name), arg, name)


def _atom(s: TokenStream, marked: bool) -> Node:
    if s.accept("("):
        t = _term(s, marked)
        s.expect(")")
        return t
    return Var(s.ident())
