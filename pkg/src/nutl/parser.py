"""Recursive-descent parser for the ASCII formula grammar.

Precedence from tightest to loosest: ``!``, ``()``, ``/\\``, ``\\/``, ``->``,
``<->``, ``^``.  Binary operators associate to the right.  A binder
``mu V. body`` extends as far right as possible, except that a body
starting with a parenthesis is exactly that parenthesized group, so
``mu X.(p \/ ()X) \/ q`` reads as a disjunction.  Identifiers bound by an
enclosing binder are variables; all others are propositions.
"""

from __future__ import annotations

import re

from .errors import ParseError, UnboundVariableError
from .formula import FALSE, TRUE, And, Lit, Mu, Next, Nu, Or, Var, free_vars
from .transforms import negate, rename_apart

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op><->|->|/\\|\\/|\(\)|[!^().])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)

_KEYWORDS = {"true", "false", "mu", "nu"}


def _tokenize(text):
    pos, line, col = 0, 1, 1
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        s = m.group()
        if m.lastgroup != "ws":
            kind = "kw" if m.lastgroup == "ident" and s in _KEYWORDS else m.lastgroup
            toks.append((kind, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    toks.append(("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text, free):
        self.toks = _tokenize(text)
        self.i = 0
        self.scope = list(free)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, s):
        t = self.take()
        if t[0] != "op" or t[1] != s:
            found = t[1] or "end of input"
            raise ParseError(f"expected {s!r}, found {found!r}", t[2], t[3])
        return t

    def error(self, msg):
        t = self.peek()
        raise ParseError(msg, t[2], t[3])

    def parse(self):
        f = self.xor()
        if self.peek()[0] != "eof":
            self.error(f"unexpected {self.peek()[1]!r}")
        return f

    def _binary(self, sym, sub, build):
        left = sub()
        t = self.peek()
        if t[0] == "op" and t[1] == sym:
            self.take()
            right = self._binary(sym, sub, build)
            return build(left, right, t)
        return left

    def xor(self):
        return self._binary("^", self.iff, lambda a, b, t: self._neg(_iff(a, b, self._neg_at(t)), t))

    def iff(self):
        return self._binary("<->", self.imp, lambda a, b, t: _iff(a, b, self._neg_at(t)))

    def imp(self):
        return self._binary("->", self.disj, lambda a, b, t: Or(self._neg(a, t), b))

    def disj(self):
        return self._binary("\\/", self.conj, lambda a, b, t: Or(a, b))

    def conj(self):
        return self._binary("/\\", self.unary, lambda a, b, t: And(a, b))

    def _neg_at(self, t):
        return lambda f: self._neg(f, t)

    def _neg(self, f, t):
        if free_vars(f):
            raise ParseError("negation of a formula with free fixpoint variables", t[2], t[3])
        return negate(f)

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] == "!":
            self.take()
            return self._neg(self.unary(), t)
        if t[0] == "op" and t[1] == "()":
            self.take()
            return Next(self.unary())
        if t[0] == "kw" and t[1] in ("mu", "nu"):
            self.take()
            v = self.take()
            if v[0] != "ident":
                raise ParseError("expected a variable name after binder", v[2], v[3])
            self.expect(".")
            self.scope.append(v[1])
            if self.peek()[:2] == ("op", "("):
                # `mu X.(...)`: the parenthesized group is the whole body
                body = self.atom()
            else:
                body = self.xor()
            self.scope.pop()
            return (Mu if t[1] == "mu" else Nu)(v[1], body)
        return self.atom()

    def atom(self):
        t = self.take()
        if t[0] == "kw" and t[1] == "true":
            return TRUE
        if t[0] == "kw" and t[1] == "false":
            return FALSE
        if t[0] == "ident":
            return Var(t[1]) if t[1] in self.scope else Lit(t[1], True)
        if t[0] == "op" and t[1] == "(":
            f = self.xor()
            self.expect(")")
            return f
        found = t[1] or "end of input"
        raise ParseError(f"unexpected {found!r}", t[2], t[3])


def _iff(a, b, neg):
    return And(Or(neg(a), b), Or(neg(b), a))


def parse(text: str, free=(), strict: bool = True):
    """Parse a formula.

    ``free`` lists identifiers to read as free fixpoint variables (for
    writing open bodies).  With ``strict`` the result must be closed.
    Binders are renamed apart so that each name is bound once.
    """
    f = _Parser(text, free).parse()
    if strict and free_vars(f):
        names = ", ".join(sorted(free_vars(f)))
        raise UnboundVariableError(f"unbound variable(s): {names}", 1, 1)
    return rename_apart(f)
