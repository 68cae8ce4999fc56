"""Abstract syntax for the linear-time mu-calculus.

Formulas are hash-consed: structurally equal terms are the same Python
object, so equality and hashing are identity based and cheap.  Every
constructor call goes through the intern table.
"""

from __future__ import annotations

import itertools

__all__ = [
    "Formula", "TrueF", "FalseF", "Lit", "Var", "And", "Or", "Next", "Mu", "Nu",
    "TRUE", "FALSE", "conj", "disj", "is_fixpoint", "size", "subterms",
    "free_vars", "bound_vars", "props", "sort_key",
]

_TABLE: dict = {}


class Formula:
    __slots__ = ("_key", "_hash", "__weakref__")
    tag = 0

    def __new__(cls, *args):
        key = (cls,) + args
        obj = _TABLE.get(key)
        if obj is None:
            obj = object.__new__(cls)
            obj._key = args
            obj._hash = hash(key)
            _TABLE[key] = obj
        return obj

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other

    def __ne__(self, other):
        return self is not other

    def __reduce__(self):
        return (type(self), self._key)

    def __repr__(self):
        from .printer import to_text
        return f"<{to_text(self)}>"

    def __str__(self):
        from .printer import to_text
        return to_text(self)

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)

    def children(self):
        return ()


class TrueF(Formula):
    __slots__ = ()
    tag = 0


class FalseF(Formula):
    __slots__ = ()
    tag = 1


class Lit(Formula):
    __slots__ = ()
    tag = 2
    __match_args__ = ("prop", "positive")

    def __new__(cls, prop: str, positive: bool = True):
        return Formula.__new__(cls, prop, bool(positive))

    @property
    def prop(self):
        return self._key[0]

    @property
    def positive(self):
        return self._key[1]


class Var(Formula):
    __slots__ = ()
    tag = 3
    __match_args__ = ("name",)

    def __new__(cls, name: str):
        return Formula.__new__(cls, name)

    @property
    def name(self):
        return self._key[0]


class _Binary(Formula):
    __slots__ = ()
    __match_args__ = ("left", "right")

    def __new__(cls, left: Formula, right: Formula):
        return Formula.__new__(cls, left, right)

    @property
    def left(self):
        return self._key[0]

    @property
    def right(self):
        return self._key[1]

    def children(self):
        return self._key


class And(_Binary):
    __slots__ = ()
    tag = 4


class Or(_Binary):
    __slots__ = ()
    tag = 5


class Next(Formula):
    __slots__ = ()
    tag = 6
    __match_args__ = ("body",)

    def __new__(cls, body: Formula):
        return Formula.__new__(cls, body)

    @property
    def body(self):
        return self._key[0]

    def children(self):
        return self._key


class _Fix(Formula):
    __slots__ = ()
    __match_args__ = ("var", "body")

    def __new__(cls, var: str, body: Formula):
        return Formula.__new__(cls, var, body)

    @property
    def var(self):
        return self._key[0]

    @property
    def body(self):
        return self._key[1]

    def children(self):
        return (self._key[1],)


class Mu(_Fix):
    __slots__ = ()
    tag = 7


class Nu(_Fix):
    __slots__ = ()
    tag = 8


TRUE = TrueF()
FALSE = FalseF()


def is_fixpoint(f) -> bool:
    return isinstance(f, _Fix)


def conj(items) -> Formula:
    """Right-nested conjunction; the empty conjunction is TRUE."""
    items = list(items)
    if not items:
        return TRUE
    out = items[-1]
    for f in reversed(items[:-1]):
        out = And(f, out)
    return out


def disj(items) -> Formula:
    items = list(items)
    if not items:
        return FALSE
    out = items[-1]
    for f in reversed(items[:-1]):
        out = Or(f, out)
    return out


_KEYS: dict = {}


def sort_key(f: Formula):
    """Total order: constructor tag first, then recursive comparison."""
    k = _KEYS.get(f)
    if k is None:
        if isinstance(f, Lit):
            k = (f.tag, f.prop, not f.positive)
        elif isinstance(f, Var):
            k = (f.tag, f.name)
        elif isinstance(f, _Fix):
            k = (f.tag, f.var, sort_key(f.body))
        else:
            k = (f.tag,) + tuple(sort_key(c) for c in f.children())
        _KEYS[f] = k
    return k


def subterms(f: Formula):
    """All syntactic subterms, each once, in preorder."""
    seen = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        yield g
        stack.extend(reversed(g.children()))


def size(f: Formula) -> int:
    """Number of nodes of the syntax tree (shared subterms counted per occurrence)."""
    memo = {}

    def go(g):
        n = memo.get(g)
        if n is None:
            n = 1 + sum(go(c) for c in g.children())
            memo[g] = n
        return n

    return go(f)


_FREE: dict = {}


def free_vars(f: Formula) -> frozenset:
    r = _FREE.get(f)
    if r is None:
        if isinstance(f, Var):
            r = frozenset((f.name,))
        elif isinstance(f, _Fix):
            r = free_vars(f.body) - {f.var}
        else:
            r = frozenset().union(*(free_vars(c) for c in f.children()))
        _FREE[f] = r
    return r


def bound_vars(f: Formula) -> list:
    """Binder names in preorder."""
    return [g.var for g in _preorder(f) if isinstance(g, _Fix)]


def _preorder(f):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children()))


def props(f: Formula) -> list:
    """Sorted proposition names occurring in f."""
    return sorted({g.prop for g in subterms(f) if isinstance(g, Lit)})


def fresh_names(taken, prefix="X"):
    for i in itertools.count():
        name = f"{prefix}{i}"
        if name not in taken:
            yield name
