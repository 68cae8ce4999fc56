"""Ultimately periodic words and a direct fixpoint evaluator over them.

The evaluator is deliberately naive: position sets are Python ints used as
bitmasks, and nested fixpoints are recomputed from scratch for every
iteration of the enclosing one.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import ParseError
from .formula import And, FalseF, Lit, Mu, Next, Nu, Or, TrueF, Var


@dataclass(frozen=True)
class LassoWord:
    prefix: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        object.__setattr__(self, "prefix", tuple(frozenset(s) for s in self.prefix))
        object.__setattr__(self, "period", tuple(frozenset(s) for s in self.period))

    @property
    def letters(self):
        return self.prefix + self.period

    def __len__(self):
        return len(self.prefix) + len(self.period)

    def successor(self, i):
        return i + 1 if i + 1 < len(self) else len(self.prefix)

    def at(self, i):
        """Letter at position i of the infinite word."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def __str__(self):
        return format_lasso(self)


def _fmt_set(s):
    return "{" + " ".join(sorted(s)) + "}"


def format_lasso(w: LassoWord) -> str:
    period = " ".join(_fmt_set(s) for s in w.period)
    if not w.prefix:
        return f"period: {period}"
    return "prefix: " + " ".join(_fmt_set(s) for s in w.prefix) + f" ; period: {period}"


_SET = re.compile(r"\{([^{}]*)\}")


def _parse_sets(text, what):
    text = text.strip()
    out = []
    pos = 0
    for m in _SET.finditer(text):
        if text[pos:m.start()].strip():
            raise ParseError(f"malformed {what}: {text[pos:m.start()].strip()!r}")
        out.append(frozenset(m.group(1).split()))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"malformed {what}: {text[pos:].strip()!r}")
    return out


def parse_lasso(text: str) -> LassoWord:
    """Read ``prefix: {p q} {} ; period: {r}``; the prefix part is optional."""
    prefix_txt, period_txt = "", None
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, sep, rest = part.partition(":")
        key = key.strip()
        if not sep or key not in ("prefix", "period"):
            raise ParseError(f"expected 'prefix:' or 'period:', found {part!r}")
        if key == "prefix":
            prefix_txt = rest
        else:
            period_txt = rest
    if period_txt is None:
        raise ParseError("missing 'period:'")
    period = _parse_sets(period_txt, "period")
    if not period:
        raise ParseError("period must contain at least one letter")
    return LassoWord(tuple(_parse_sets(prefix_txt, "prefix")), tuple(period))


class _Evaluator:
    def __init__(self, w: LassoWord):
        self.w = w
        self.n = len(w)
        self.full = (1 << self.n) - 1
        self.loop = len(w.prefix)
        self.iterations = []  # (kind, steps) for each fixpoint computation
        self._lit = {}

    def lit(self, prop, positive):
        key = (prop, positive)
        r = self._lit.get(key)
        if r is None:
            r = 0
            for i, s in enumerate(self.w.letters):
                if (prop in s) == positive:
                    r |= 1 << i
            self._lit[key] = r
        return r

    def nxt(self, s):
        # bit i of the result is bit succ(i) of s
        n = self.n
        r = (s >> 1) & ((1 << (n - 1)) - 1)
        if (s >> self.loop) & 1:
            r |= 1 << (n - 1)
        return r

    def ev(self, f, env):
        if isinstance(f, TrueF):
            return self.full
        if isinstance(f, FalseF):
            return 0
        if isinstance(f, Lit):
            return self.lit(f.prop, f.positive)
        if isinstance(f, Var):
            return env[f.name]
        if isinstance(f, And):
            return self.ev(f.left, env) & self.ev(f.right, env)
        if isinstance(f, Or):
            return self.ev(f.left, env) | self.ev(f.right, env)
        if isinstance(f, Next):
            return self.nxt(self.ev(f.body, env))
        if isinstance(f, (Mu, Nu)):
            cur = 0 if isinstance(f, Mu) else self.full
            steps = 0
            while True:
                steps += 1
                new = self.ev(f.body, {**env, f.var: cur})
                if new == cur:
                    break
                cur = new
            self.iterations.append(("mu" if isinstance(f, Mu) else "nu", steps))
            return cur
        raise TypeError(f"not a formula: {f!r}")


def eval_positions(phi, w: LassoWord, env=None) -> int:
    """Bitmask of the positions of w satisfying phi."""
    return _Evaluator(w).ev(phi, dict(env or {}))


def eval_lasso(phi, w: LassoWord) -> bool:
    """Truth of the closed formula phi at position 0 of w."""
    return bool(eval_positions(phi, w) & 1)


def fixpoint_steps(phi, w: LassoWord):
    """Iteration counts of every fixpoint computation (for testing convergence)."""
    e = _Evaluator(w)
    e.ev(phi, {})
    return e.iterations


def enumerate_lassos(props, max_prefix: int, max_period: int):
    """All (prefix, period) pairs with |prefix| <= max_prefix and
    1 <= |period| <= max_period, shortest first."""
    props = sorted(props)
    alphabet = [frozenset(c) for k in range(len(props) + 1)
                for c in itertools.combinations(props, k)]
    for plen in range(max_prefix + 1):
        for qlen in range(1, max_period + 1):
            for pre in itertools.product(alphabet, repeat=plen):
                for per in itertools.product(alphabet, repeat=qlen):
                    yield LassoWord(pre, per)
