"""Concrete syntax for terms.

::

    term   := lambda | mu | named | app
    lambda := ("\\" | "λ") ident "." term
    mu     := ("mu" | "μ") ident "." term
    named  := "[" ident "]" term
    app    := atom atom*            (left-associative)
    atom   := ident | "(" term ")"

Binders and ``[a]`` extend as far right as possible.  An identifier is a
mu-name when it is bound by ``mu`` or written inside brackets; every other
identifier is a lambda-name.
"""
from __future__ import annotations

import re

from .terms import App, Lam, Mu, Named, Term, Var


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


_TOKEN = re.compile(
    r"\s*(?:(?P<lam>\\|λ)|(?P<mu>μ|mu(?![a-zA-Z0-9_']))|(?P<ident>[a-zA-Z][a-zA-Z0-9_']*)"
    r"|(?P<punct>[.()\[\]]))"
)
KEYWORDS = frozenset({"mu"})


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        assert kind is not None
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, kind: str, value: str | None = None) -> str:
        k, v, off = self.toks[self.i]
        if k != kind or (value is not None and v != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {v or 'end of input'!r}", off)
        self.i += 1
        return v

    def term(self) -> Term:
        k, v, _ = self.peek()
        if k == "lam":
            self.i += 1
            x = self.take("ident")
            self.take("punct", ".")
            return Lam(x, self.term())
        if k == "mu":
            self.i += 1
            a = self.take("ident")
            self.take("punct", ".")
            return Mu(a, self.term())
        if k == "punct" and v == "[":
            self.i += 1
            a = self.take("ident")
            self.take("punct", "]")
            return Named(a, self.term())
        head = self.atom()
        while True:
            k, v, _ = self.peek()
            if k == "ident" or (k == "punct" and v == "("):
                head = App(head, self.atom())
            elif k in ("lam", "mu") or (k == "punct" and v == "["):
                # a trailing binder is the last argument: f \x. x
                head = App(head, self.term())
                return head
            else:
                return head

    def atom(self) -> Term:
        k, v, off = self.peek()
        if k == "ident":
            self.i += 1
            return Var(v)
        if k == "punct" and v == "(":
            self.i += 1
            t = self.term()
            self.take("punct", ")")
            return t
        raise ParseError(f"expected a term, found {v or 'end of input'!r}", off)


def parse(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    k, v, off = p.peek()
    if k != "eof":
        raise ParseError(f"trailing input {v!r}", off)
    return t


def show(m: Term, unicode: bool = False) -> str:
    """Canonical printing; ``parse(show(m)) == m`` for names that are identifiers."""
    lam, mu = ("λ", "μ") if unicode else ("\\", "mu ")
    out: list[str] = []
    # explicit stack of strings and terms: long spines must not hit the recursion limit
    stack: list[object] = [m]
    while stack:
        t = stack.pop()
        if isinstance(t, str):
            out.append(t)
        elif isinstance(t, Var):
            out.append(t.name)
        elif isinstance(t, Lam):
            out.append(f"{lam}{t.binder}. ")
            stack.append(t.body)
        elif isinstance(t, Mu):
            out.append(f"{mu}{t.binder}. ")
            stack.append(t.body)
        elif isinstance(t, Named):
            out.append(f"[{t.muvar}] ")
            stack.append(t.body)
        elif isinstance(t, App):
            f, a = t.fun, t.arg
            stack.append(")" if not isinstance(a, Var) else "")
            stack.append(a)
            stack.append(" (" if not isinstance(a, Var) else " ")
            if isinstance(f, (Lam, Mu, Named)):
                stack.append(")")
                stack.append(f)
                stack.append("(")
            else:
                stack.append(f)
    return "".join(out)
