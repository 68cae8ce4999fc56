"""Finite Kripke structures and their line-oriented text format.

    # comment
    states: s0 s1 s2
    init: s0
    label s0: p q
    label s2:
    trans: s0 -> s1, s1 -> s2, s2 -> s2

``trans:`` may be repeated; states without a ``label`` line carry no
propositions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import KripkeError
from .lasso import LassoWord

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True, eq=False)
class KripkeStructure:
    states: tuple
    init: str
    trans: frozenset              # of (state, state)
    labels: dict                  # state -> frozenset of propositions

    def __post_init__(self):
        known = set(self.states)
        if len(known) != len(self.states):
            raise KripkeError("duplicate state")
        if self.init not in known:
            raise KripkeError(f"initial state {self.init!r} is not declared")
        for a, b in self.trans:
            for s in (a, b):
                if s not in known:
                    raise KripkeError(f"unknown state {s!r} in transition")
        for s in self.labels:
            if s not in known:
                raise KripkeError(f"unknown state {s!r} in label")
        labels = {s: frozenset(self.labels.get(s, ())) for s in self.states}
        object.__setattr__(self, "labels", labels)
        stuck = [s for s in self.states if not any(a == s for a, _ in self.trans)]
        if stuck:
            raise KripkeError(f"transition relation is not total: {stuck[0]} has no successor")

    def successors(self, s):
        return sorted((b for a, b in self.trans if a == s), key=self.states.index)

    def label(self, s) -> frozenset:
        return self.labels[s]

    def is_path(self, states) -> bool:
        return all((a, b) in self.trans for a, b in zip(states, states[1:]))


@dataclass(frozen=True)
class StateLasso:
    prefix: tuple
    period: tuple

    def __str__(self):
        per = " ".join(self.period)
        if not self.prefix:
            return f"period: {per}"
        return f"prefix: {' '.join(self.prefix)} ; period: {per}"

    def word(self, m: KripkeStructure) -> LassoWord:
        return LassoWord(tuple(m.label(s) for s in self.prefix),
                         tuple(m.label(s) for s in self.period))

    def is_run_of(self, m: KripkeStructure) -> bool:
        seq = self.prefix + self.period + self.period[:1]
        return bool(self.period) and seq[0] == m.init and m.is_path(seq)


def _names(text, lineno):
    out = text.split()
    for n in out:
        if not _NAME.match(n):
            raise KripkeError(f"line {lineno}: bad name {n!r}")
    return out


def parse_kripke(text: str) -> KripkeStructure:
    states = None
    init = None
    labels = {}
    trans = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise KripkeError(f"line {lineno}: expected 'key: value'")
        key = key.strip()
        if key == "states":
            if states is not None:
                raise KripkeError(f"line {lineno}: states declared twice")
            states = _names(rest, lineno)
            if not states:
                raise KripkeError(f"line {lineno}: no states")
        elif key == "init":
            names = _names(rest, lineno)
            if len(names) != 1 or init is not None:
                raise KripkeError(f"line {lineno}: exactly one initial state expected")
            init = names[0]
        elif key.split()[:1] == ["label"]:
            who = key.split()[1:]
            if len(who) != 1:
                raise KripkeError(f"line {lineno}: expected 'label <state>: props'")
            if who[0] in labels:
                raise KripkeError(f"line {lineno}: second label line for {who[0]}")
            labels[who[0]] = frozenset(_names(rest, lineno))
        elif key == "trans":
            for item in rest.split(","):
                if not item.strip():
                    continue
                parts = item.split("->")
                if len(parts) != 2:
                    raise KripkeError(f"line {lineno}: bad transition {item.strip()!r}")
                a, b = (_names(p, lineno) for p in parts)
                if len(a) != 1 or len(b) != 1:
                    raise KripkeError(f"line {lineno}: bad transition {item.strip()!r}")
                trans.add((a[0], b[0]))
        else:
            raise KripkeError(f"line {lineno}: unknown key {key!r}")
    if states is None:
        raise KripkeError("missing 'states:' line")
    if init is None:
        raise KripkeError("missing 'init:' line")
    return KripkeStructure(tuple(states), init, frozenset(trans), labels)


def format_kripke(m: KripkeStructure) -> str:
    lines = [f"states: {' '.join(m.states)}", f"init: {m.init}"]
    for s in m.states:
        lines.append(f"label {s}: {' '.join(sorted(m.label(s)))}".rstrip())
    order = {s: i for i, s in enumerate(m.states)}
    pairs = sorted(m.trans, key=lambda t: (order[t[0]], order[t[1]]))
    lines.append("trans: " + ", ".join(f"{a} -> {b}" for a, b in pairs))
    return "\n".join(lines) + "\n"


def lasso_structure(prefix, period, names=None) -> KripkeStructure:
    """A single-path structure whose only run spells prefix.period^omega."""
    letters = list(prefix) + list(period)
    if not period:
        raise KripkeError("period must be nonempty")
    names = names or [f"s{i}" for i in range(len(letters))]
    trans = {(names[i], names[i + 1]) for i in range(len(letters) - 1)}
    trans.add((names[-1], names[len(prefix)]))
    return KripkeStructure(tuple(names), names[0], frozenset(trans),
                           {n: frozenset(l) for n, l in zip(names, letters)})
