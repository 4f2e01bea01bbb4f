"""Recursive-descent parser for the ASCII formula and sequent grammar.

Grammar:  atoms `p`, `q(x, f(a))`; `true`, `false`; `~F` (sugar for
`F => false`); `/\\`, `\\/`, `=>` (right-associative, loosest); quantifiers
`forall x. F`, `exists x. F` with scope extending maximally right.
Identifiers are lowercase alphanumerics; a name is a variable exactly when
a quantifier binds it, otherwise a constant/function/predicate by position.
Sequents: `D1; D2; ...; Dn |- G` (empty antecedent allowed).

Names starting with `_` are reserved for generated symbols (_h*, _w*) and
rejected unless allow_reserved is set (used when re-reading emitted
artifacts such as proof documents and transformed problems).
"""

from __future__ import annotations

import re

from .syntax import (
    BOT, TOP, And, Atom, Const, Exists, Forall, Implies, Or, Var,
    App, Formula, Term,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        super().__init__(f"{message} (at position {pos})" + (f" in {text!r}" if text else ""))


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[_a-z][a-z0-9_]*)|(?P<op>/\\|\\/|=>|\|-|[~().,;]))"
)

_KEYWORDS = {"true", "false", "forall", "exists"}


def tokenize(text: str, allow_reserved: bool = False):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                             pos, text)
        if m.group("ident"):
            name = m.group("ident")
            if name.startswith("_") and not allow_reserved:
                raise ParseError(f"reserved identifier {name!r}", m.start("ident"), text)
            tokens.append(("ident", name, m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_reserved: bool = False):
        self.text = text
        self.tokens = tokenize(text, allow_reserved)
        self.i = 0
        self.bound: list = []          # stack of quantifier-bound names
        self.fn_arity: dict = {}       # term symbol -> arity (constants are 0)
        self.pred_arity: dict = {}     # predicate symbol -> arity

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}",
                             pos, self.text)

    def fail(self, message: str):
        raise ParseError(message, self.peek()[2], self.text)

    # formula := implies
    # implies := or ('=>' implies)?
    # or      := and ('\/' and)*   folded right-associatively
    # and     := unary ('/\' unary)*  folded right-associatively
    # unary   := '~' unary | quant | atomish
    def formula(self) -> Formula:
        left = self.or_()
        if self.peek()[1] == "=>":
            self.next()
            return Implies(left, self.formula())
        return left

    def or_(self) -> Formula:
        parts = [self.and_()]
        while self.peek()[1] == "\\/":
            self.next()
            parts.append(self.and_())
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = Or(p, out)
        return out

    def and_(self) -> Formula:
        parts = [self.unary()]
        while self.peek()[1] == "/\\":
            self.next()
            parts.append(self.unary())
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = And(p, out)
        return out

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if val == "~":
            self.next()
            return Implies(self.unary(), BOT)
        if val in ("forall", "exists"):
            self.next()
            k2, name, p2 = self.next()
            if k2 != "ident" or name in _KEYWORDS:
                raise ParseError("expected a variable name after quantifier", p2, self.text)
            self.expect(".")
            self.bound.append(name)
            body = self.formula()
            self.bound.pop()
            return Exists(name, body) if val == "exists" else Forall(name, body)
        if val == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if val == "true":
            self.next()
            return TOP
        if val == "false":
            self.next()
            return BOT
        if kind == "ident":
            return self.atom()
        self.fail(f"expected a formula, found {val or 'end of input'!r}")

    def atom(self) -> Formula:
        _, name, pos = self.next()
        if name in self.bound:
            raise ParseError(f"variable {name!r} cannot head an atom", pos, self.text)
        args: tuple = ()
        if self.peek()[1] == "(":
            self.next()
            arglist = [self.term()]
            while self.peek()[1] == ",":
                self.next()
                arglist.append(self.term())
            self.expect(")")
            args = tuple(arglist)
        self._check_arity(self.pred_arity, name, len(args), pos, "predicate")
        return Atom(name, args)

    def term(self) -> Term:
        kind, name, pos = self.next()
        if kind != "ident" or name in _KEYWORDS:
            raise ParseError("expected a term", pos, self.text)
        if self.peek()[1] == "(":
            self.next()
            arglist = [self.term()]
            while self.peek()[1] == ",":
                self.next()
                arglist.append(self.term())
            self.expect(")")
            if name in self.bound:
                raise ParseError(f"variable {name!r} used as a function", pos, self.text)
            self._check_arity(self.fn_arity, name, len(arglist), pos, "function")
            return App(name, tuple(arglist))
        if name in self.bound:
            return Var(name)
        self._check_arity(self.fn_arity, name, 0, pos, "constant")
        return Const(name)

    def _check_arity(self, table: dict, name: str, n: int, pos: int, what: str):
        seen = table.setdefault(name, n)
        if seen != n:
            raise ParseError(
                f"arity mismatch: {what} {name!r} used with {n} argument(s), "
                f"earlier with {seen}", pos, self.text)


def parse(text: str, allow_reserved: bool = False) -> Formula:
    """Parse one formula; raises ParseError with a position on bad input."""
    p = _Parser(text, allow_reserved)
    f = p.formula()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", pos, text)
    return f


def parse_sequent(text: str, allow_reserved: bool = False):
    """Parse `D1; ...; Dn |- G` into (antecedent list, succedent formula)."""
    p = _Parser(text, allow_reserved)
    antecedent = []
    if p.peek()[1] != "|-":
        antecedent.append(p.formula())
        while p.peek()[1] == ";":
            p.next()
            antecedent.append(p.formula())
    p.expect("|-")
    succedent = p.formula()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", pos, text)
    return antecedent, succedent
