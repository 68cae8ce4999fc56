"""Present-future decomposition with thread provenance and marks.

Terms inside the machinery are subterms of the root formula: a ``Var(X)``
stands for the fixpoint formula bound by ``X`` and unfolds to that
binder's body, so closure members need no copying.  A binder reached from
above (``Mu``/``Nu`` node) and a back reference ``Var`` denote the same
closed formula; the difference records whether the thread entered the
binder afresh, which the marks need.  Bare greatest-fixpoint binders are
identified with their variable since the distinction never matters for
them.

Every future conjunct is produced by a *segment*: the thread that started
at one conjunct of the source node, unfolded a set of binders and stopped
under a next.  A segment continues the regeneration chain of a binder V
when its thread is inside V's scope before and after the step and it did
not unfold anything strictly above V.  It marks the innermost such V.
A variable X together with its dependents then appears in the mark of
every edge exactly when some thread keeps the X chain going there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotNormalizedError, UnguardedError
from .formula import (
    And, FalseF, Formula, Lit, Mu, Next, Nu, Or, TrueF, Var, _Fix, free_vars,
    sort_key,
)
from .printer import to_text
from .transforms import binder_table, dependencies, is_guarded, push_next


@dataclass(frozen=True)
class PresentPart:
    literals: frozenset          # of (prop, positive)
    contradictory: bool = False

    def __str__(self):
        if self.contradictory:
            return "false"
        if not self.literals:
            return "true"
        return " /\\ ".join(p if pos else "!" + p for p, pos in sorted(self.literals))

    def holds_in(self, letter) -> bool:
        return not self.contradictory and all((p in letter) == pos for p, pos in self.literals)


def normalize_present(lits) -> PresentPart:
    """Deduplicate a literal multiset and flag contradictions."""
    s = frozenset(lits)
    bad = any((p, not pos) in s for p, pos in s)
    return PresentPart(s, bad)


@dataclass(frozen=True)
class FutureConjunct:
    formula: Formula
    marks: frozenset = frozenset()   # variables marked by segments ending here

    @property
    def suppress_mark(self) -> bool:
        return not self.marks


@dataclass(frozen=True)
class Disjunct:
    present: PresentPart
    future: tuple                    # of FutureConjunct, canonical order
    # alternative thread-step sets, each of (source, target, unfolded)
    threads: tuple = field(default=(), compare=False, repr=False)

    @property
    def targets(self) -> frozenset:
        return frozenset(fc.formula for fc in self.future)


@dataclass
class PFForm:
    disjuncts: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.disjuncts)

    def __len__(self):
        return len(self.disjuncts)


def mark_of(d: Disjunct) -> frozenset:
    out = set()
    for fc in d.future:
        out |= fc.marks
    return frozenset(out)


class Compiled:
    """A closed guarded formula prepared for decomposition."""

    def __init__(self, phi: Formula):
        if free_vars(phi):
            raise ValueError("formula must be closed")
        phi = push_next(phi)
        if not is_guarded(phi):
            raise UnguardedError("formula is not guarded; apply guard_transform first")
        self.root = phi
        self.binders = binder_table(phi)
        self.deps = dependencies(phi)
        self.kind = self.deps.kinds
        self.mu_vars = frozenset(v for v, k in self.kind.items() if k == "mu")
        self.below = {v: frozenset(b for a, b in self.deps.higher if a == v) for v in self.binders}
        self.depth = {v: sum(1 for a, b in self.deps.higher if b == v) for v in self.binders}
        self._reach = {}
        self._expand = {}
        self._busy = set()
        self._cut = {}
        self._closed = {}
        self._present = {}
        self._expand_in = {}
        self._future = {}

    # static information -------------------------------------------------

    def reach(self, t) -> frozenset:
        """Enclosing binders that a thread at t can still unfold."""
        r = self._reach.get(t)
        if r is None:
            todo = list(free_vars(t))
            r = set()
            while todo:
                v = todo.pop()
                if v not in r:
                    r.add(v)
                    todo.extend(free_vars(self.binders[v]))
            r = frozenset(r)
            self._reach[t] = r
        return r

    def cut(self, unf: frozenset) -> frozenset:
        c = self._cut.get(unf)
        if c is None:
            c = frozenset().union(*(self.below[v] for v in unf)) if unf else frozenset()
            self._cut[unf] = c
        return c

    def normalize_target(self, t):
        if isinstance(t, Nu):
            return Var(t.var)
        return t

    def closed(self, t) -> Formula:
        """The closed formula denoted by the term t."""
        r = self._closed.get(t)
        if r is None:
            fv = free_vars(t)
            if not fv:
                r = t
            elif isinstance(t, Var):
                r = self.closed(self.binders[t.name])
            else:
                from .transforms import _map

                def go(h):
                    if isinstance(h, Var) and h.name in fv:
                        return self.closed(self.binders[h.name])
                    if not (free_vars(h) & fv):
                        return h
                    return _map(h, go)
                r = go(t)
            self._closed[t] = r
        return r

    def term_text(self, t, unicode=False) -> str:
        return to_text(t, unicode)

    # decomposition ------------------------------------------------------

    def expand(self, t):
        """Disjuncts of t as (literals, ((target, unfolded-set), ...)).

        Targets are the arguments of the nexts where threads stop; the
        unfolded set lists the binders unfolded on the way.
        """
        r = self._expand.get(t)
        if r is not None:
            return r
        if t in self._busy:
            raise UnguardedError(f"unguarded recursion through {self.term_text(t)}")
        self._busy.add(t)
        try:
            r = self._expand_uncached(t)
        finally:
            self._busy.discard(t)
        self._expand[t] = r
        return r

    def _expand_uncached(self, t):
        if isinstance(t, TrueF):
            return [(frozenset(), ())]
        if isinstance(t, FalseF):
            return []
        if isinstance(t, Lit):
            return [(frozenset(((t.prop, t.positive),)), ())]
        if isinstance(t, Next):
            b = t.body
            if isinstance(b, Or):
                raise NotNormalizedError("disjunction directly under next")
            return [(frozenset(), tuple((c, frozenset()) for c in _conjuncts(b)))]
        if isinstance(t, Or):
            return self.expand(t.left) + self.expand(t.right)
        if isinstance(t, And):
            out = []
            for l1, f1 in self.expand(t.left):
                for l2, f2 in self.expand(t.right):
                    lits = l1 | l2
                    if _contradicts(lits) or _next_clash(f1, f2):
                        continue
                    out.append((lits, f1 + f2))
            return _dedupe(out)
        if isinstance(t, (Var, _Fix)):
            v = t.name if isinstance(t, Var) else t.var
            body = self.binders[v].body
            return [(lits, tuple((c, u | {v}) for c, u in futs))
                    for lits, futs in self.expand(body)]
        raise TypeError(f"not a formula: {t!r}")

    def present_props(self, t) -> frozenset:
        """Propositions that t constrains at the current position."""
        r = self._present.get(t)
        if r is None:
            self._present[t] = frozenset()      # cut unguarded cycles short
            if isinstance(t, Lit):
                r = frozenset((t.prop,))
            elif isinstance(t, (And, Or)):
                r = self.present_props(t.left) | self.present_props(t.right)
            elif isinstance(t, (Var, _Fix)):
                r = self.present_props(self.binders[t.name if isinstance(t, Var) else t.var].body)
            else:
                r = frozenset()
            self._present[t] = r
        return r

    def expand_in(self, t, ctx):
        """Like expand(t), restricted to disjuncts consistent with the
        literal set ctx (which is not included in the result)."""
        pp = self.present_props(t)
        key = (t, frozenset(l for l in ctx if l[0] in pp))
        r = self._expand_in.get(key)
        if r is None:
            if not key[1]:
                r = self.expand(t)
            else:
                r = self._expand_in_uncached(t, key[1])
            self._expand_in[key] = r
        return r

    def _expand_in_uncached(self, t, ctx):
        if isinstance(t, Lit):
            return [] if (t.prop, not t.positive) in ctx else self.expand(t)
        if isinstance(t, Or):
            return self.expand_in(t.left, ctx) + self.expand_in(t.right, ctx)
        if isinstance(t, And):
            out = []
            for l1, f1 in self.expand_in(t.left, ctx):
                c1 = ctx | l1
                for l2, f2 in self.expand_in(t.right, c1):
                    if not _next_clash(f1, f2):
                        out.append((l1 | l2, f1 + f2))
            return _dedupe(out)
        if isinstance(t, (Var, _Fix)):
            # unguarded recursion is caught by expand() on the empty context
            self.expand(t)
            v = t.name if isinstance(t, Var) else t.var
            return [(lits, tuple((c, u | {v}) for c, u in futs))
                    for lits, futs in self.expand_in(self.binders[v].body, ctx)]
        return self.expand(t)

    def segment_mark(self, s, unf, t, first_unfold=False):
        """Innermost binder whose chain the segment s -> t continues."""
        rs = self.reach(s)
        if first_unfold:
            rs = rs | unf
        cand = (rs & self.reach(t)) - self.cut(unf)
        if not cand:
            return None
        return max(cand, key=lambda v: (self.depth[v], v))

    def _future_part(self, s, futs, first_unfold):
        key = (s, futs, first_unfold)
        r = self._future.get(key)
        if r is None:
            fut = {}
            segs = set()
            for c, unf in futs:
                if isinstance(c, TrueF):
                    continue
                c = self.normalize_target(c)
                m = self.segment_mark(s, unf, c, first_unfold)
                prev = fut.get(c, frozenset())
                fut[c] = prev | {m} if m is not None else prev
                segs.add((s, c, unf))
            r = (fut, frozenset(segs))
            self._future[key] = r
        return r

    def decompose(self, conjuncts, first_unfold=False) -> PFForm:
        """PF form of the conjunction of node conjuncts.

        Literal conjuncts sort first in a node, so the literals collected
        so far prune the expansion of the later, compound conjuncts.
        """
        acc = [(frozenset(), {}, frozenset())]
        for s in conjuncts:
            nxt = []
            for entry in acc:
                parts = [(lits,) + self._future_part(s, futs, first_unfold)
                         for lits, futs in self.expand_in(s, entry[0])]
                nxt.extend(_and([entry], parts))
            acc = nxt
            if not acc:
                break
        return _finish(acc)


def _conjuncts(f):
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return (f,)


def _contradicts(lits):
    return any((p, not pos) in lits for p, pos in lits)


def _next_clash(f1, f2):
    """True when the two future parts require p and !p at the next step."""
    if not f1 or not f2:
        return False
    lits = {(c.prop, c.positive) for c, _ in f1 if isinstance(c, Lit)}
    if not lits:
        return False
    return any(isinstance(c, Lit) and (c.prop, not c.positive) in lits for c, _ in f2)


def _dedupe(items):
    seen = set()
    out = []
    for it in items:
        if it not in seen:
            seen.add(it)
            out.append(it)
    return out


def _and(a, b):
    out = []
    for l1, f1, s1 in a:
        for l2, f2, s2 in b:
            lits = l1 | l2
            if _contradicts(lits) or _lit_clash(f1, f2):
                continue
            big, small = (f1, f2) if len(f1) >= len(f2) else (f2, f1)
            fut = dict(big)
            for c, m in small.items():
                fut[c] = fut.get(c, frozenset()) | m
            out.append((lits, fut, s1 | s2))
    return out


def _lit_clash(f1, f2):
    if not f1 or not f2:
        return False
    return any(isinstance(c, Lit) and Lit(c.prop, not c.positive) in f2 for c in f1)


def _finish(acc) -> PFForm:
    seen = {}
    out = []
    for lits, fut, segs in acc:
        terms = set(fut)
        # a fresh least-fixpoint binder next to its own back reference
        # denotes the same formula; keep the continuing copy.
        for c in list(terms):
            if isinstance(c, Mu) and Var(c.var) in terms:
                m = fut[c]
                terms.discard(c)
                fut = dict(fut)
                fut[Var(c.var)] = fut[Var(c.var)] | m
                segs = frozenset((a, Var(c.var) if b is c else b, u) for a, b, u in segs)
        future = tuple(FutureConjunct(c, frozenset(fut[c]))
                       for c in sorted(terms, key=sort_key))
        d = Disjunct(PresentPart(lits), future, (segs,))
        i = seen.get(d)
        if i is None:
            seen[d] = len(out)
            out.append(d)
        else:
            # the same choice reached along different threads
            out[i] = Disjunct(d.present, d.future, minimal_threads(out[i].threads + (segs,)))
    return PFForm(out)


def _segment_key(seg):
    s, t, unf = seg
    return (sort_key(s), sort_key(t), tuple(sorted(unf)))


def minimal_threads(alts) -> tuple:
    """Drop alternatives that contain another one; canonical order."""
    cands = sorted(set(alts), key=lambda a: (len(a), sorted(map(_segment_key, a))))
    out = []
    for a in cands:
        if not any(b <= a for b in out):
            out.append(a)
    return tuple(out)


def pf_and(a: PFForm, b: PFForm) -> PFForm:
    """Cross product of two PF forms."""
    def raw(pf):
        return [(d.present.literals, {fc.formula: fc.marks for fc in d.future}, t)
                for d in pf for t in d.threads]
    return _finish(_and(raw(a), raw(b)))


def root_conjuncts(c: Compiled):
    return node_key(c, _conjuncts(c.root))


def node_key(c: Compiled, terms) -> tuple:
    """Canonical node identity: sorted set without `true`."""
    s = {c.normalize_target(t) for t in terms if not isinstance(t, TrueF)}
    for t in list(s):
        if isinstance(t, Mu) and Var(t.var) in s:
            s.discard(t)
    return tuple(sorted(s, key=sort_key))


def pf_tran(phi: Formula) -> PFForm:
    """PF form of a closed guarded formula (marks as on edges leaving it)."""
    c = Compiled(phi)
    return c.decompose(root_conjuncts(c), first_unfold=True)
