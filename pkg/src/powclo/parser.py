"""Recursive-descent parser for identities.

    identity := term "=" term
    term     := var | sym "(" term ("," term)* ")"
    var      := [a-z][a-z0-9]*            (not followed by "(")
    sym      := identifier or "+"         (always followed by "(")

Whitespace between tokens is ignored. Variables are numbered by first
occurrence, left to right.
"""

from __future__ import annotations

import re

from .errors import ArityMismatch, IdentitySyntaxError, UnknownSymbol
from .terms import App, Identity, Var

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[()=,+])|(?P<bad>\S))")
_VAR = re.compile(r"[a-z][a-z0-9]*\Z")


def _signature_map(sig):
    if sig is None:
        return None
    if hasattr(sig, "signature"):
        sig = sig.signature
    return dict(sig)


class _Parser:
    def __init__(self, src, sig):
        self.src = src
        self.sig = sig
        self.tokens = self._tokenize(src)
        self.pos = 0
        self.names = []

    def _where(self, offset):
        line = self.src.count("\n", 0, offset) + 1
        col = offset - (self.src.rfind("\n", 0, offset) + 1) + 1
        return line, col

    def error(self, message, offset):
        raise IdentitySyntaxError(message, *self._where(offset))

    def _tokenize(self, src):
        tokens = []
        i = 0
        while True:
            m = _TOKEN.match(src, i)
            if m is None:
                break
            start = m.start(m.lastgroup)
            if m.lastgroup == "bad":
                self.error(f"unexpected character {m.group('bad')!r}", start)
            tokens.append((m.group(m.lastgroup), start))
            i = m.end()
        tokens.append(("", len(src.rstrip()) if src.strip() else len(src)))
        return tokens

    def peek(self, k=0):
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def expect(self, text):
        tok, off = self.peek()
        if tok != text:
            found = repr(tok) if tok else "end of input"
            self.error(f"expected {text!r}, found {found}", off)
        self.pos += 1

    def identity(self):
        lhs = self.term()
        self.expect("=")
        rhs = self.term()
        tok, off = self.peek()
        if tok:
            self.error(f"unexpected {tok!r} after identity", off)
        return Identity(lhs, rhs, tuple(self.names))

    def term(self):
        tok, off = self.peek()
        if not tok:
            self.error("expected a term, found end of input", off)
        if self.peek(1)[0] == "(":
            if not (tok == "+" or tok[0].isalpha() or tok[0] == "_"):
                self.error(f"expected an operation symbol, found {tok!r}", off)
            return self.application(tok, off)
        if _VAR.match(tok):
            self.pos += 1
            if tok not in self.names:
                self.names.append(tok)
            return Var(self.names.index(tok))
        self.error(f"expected a variable or operation, found {tok!r}", off)

    def application(self, sym, off):
        self.pos += 2
        args = [self.term()]
        while self.peek()[0] == ",":
            self.pos += 1
            args.append(self.term())
        self.expect(")")
        if self.sig is not None:
            if sym not in self.sig:
                raise UnknownSymbol(f"unknown operation symbol {sym!r}")
            if self.sig[sym] != len(args):
                raise ArityMismatch(
                    f"{sym} has arity {self.sig[sym]}, applied to {len(args)} arguments"
                )
        return App(sym, tuple(args))


def parse_identity(src, signature=None):
    """Parse ``lhs = rhs``; `signature` (an algebra or (symbol, arity) pairs)
    enables symbol and arity checks."""
    return _Parser(src, _signature_map(signature)).identity()


def parse_term(src, signature=None, names=()):
    p = _Parser(src, _signature_map(signature))
    p.names = list(names)
    t = p.term()
    tok, off = p.peek()
    if tok:
        p.error(f"unexpected {tok!r} after term", off)
    return t
