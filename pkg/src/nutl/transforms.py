"""Syntactic transformations and static analyses of formulas."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded
from .formula import (
    FALSE, TRUE, And, FalseF, Formula, Lit, Mu, Next, Nu, Or, TrueF, Var, _Fix,
    bound_vars, conj, disj, free_vars, props, size,
)


def _map(f, fn):
    """Rebuild f with fn applied to each child."""
    if isinstance(f, And):
        return And(fn(f.left), fn(f.right))
    if isinstance(f, Or):
        return Or(fn(f.left), fn(f.right))
    if isinstance(f, Next):
        return Next(fn(f.body))
    if isinstance(f, Mu):
        return Mu(f.var, fn(f.body))
    if isinstance(f, Nu):
        return Nu(f.var, fn(f.body))
    return f


def negate(f: Formula) -> Formula:
    """Dual of f in positive normal form; variables stay positive."""
    memo = {}

    def go(g):
        r = memo.get(g)
        if r is not None:
            return r
        if isinstance(g, TrueF):
            r = FALSE
        elif isinstance(g, FalseF):
            r = TRUE
        elif isinstance(g, Lit):
            r = Lit(g.prop, not g.positive)
        elif isinstance(g, Var):
            r = g
        elif isinstance(g, And):
            r = Or(go(g.left), go(g.right))
        elif isinstance(g, Or):
            r = And(go(g.left), go(g.right))
        elif isinstance(g, Next):
            r = Next(go(g.body))
        elif isinstance(g, Mu):
            r = Nu(g.var, go(g.body))
        else:
            r = Mu(g.var, go(g.body))
        memo[g] = r
        return r

    return go(f)


def rename_apart(f: Formula, avoid=()) -> Formula:
    """Rename binders so that no name is bound twice or clashes with a
    proposition or a free variable.  The first binder keeps its name."""
    taken = set(props(f)) | set(free_vars(f)) | set(avoid)
    used = set()

    def pick(name):
        if name not in used and name not in taken:
            used.add(name)
            return name
        base = name.rstrip("0123456789'") or "X"
        i = 1
        while f"{base}{i}" in used or f"{base}{i}" in taken:
            i += 1
        new = f"{base}{i}"
        used.add(new)
        return new

    def go(g, env):
        if isinstance(g, Var):
            return Var(env.get(g.name, g.name))
        if isinstance(g, _Fix):
            new = pick(g.var)
            body = go(g.body, {**env, g.var: new})
            return type(g)(new, body)
        if isinstance(g, (And, Or)):
            return type(g)(go(g.left, env), go(g.right, env))
        if isinstance(g, Next):
            return Next(go(g.body, env))
        return g

    return go(f, {})


def canonical_names(f: Formula) -> Formula:
    """Rename binders to X0, X1, ... in preorder (for comparisons)."""
    counter = iter(range(10 ** 9))

    def go(g, env):
        if isinstance(g, Var):
            return Var(env.get(g.name, g.name))
        if isinstance(g, _Fix):
            new = f"X{next(counter)}"
            return type(g)(new, go(g.body, {**env, g.var: new}))
        if isinstance(g, (And, Or)):
            return type(g)(go(g.left, env), go(g.right, env))
        if isinstance(g, Next):
            return Next(go(g.body, env))
        return g

    return go(f, {})


def substitute(phi: Formula, x: str, psi: Formula) -> Formula:
    """Replace free occurrences of variable x in phi by copies of psi.

    Copies of psi get their binders renamed so that the result still
    binds every name at most once.
    """
    taken = set(bound_vars(phi)) | set(props(phi)) | set(free_vars(phi))
    copies = [0]

    def copy():
        copies[0] += 1
        if copies[0] == 1 and not (set(bound_vars(psi)) & (set(bound_vars(phi)) - {x})):
            taken.update(bound_vars(psi))
            return psi
        c = rename_apart(psi, avoid=taken)
        taken.update(bound_vars(c))
        return c

    def go(g):
        if x not in free_vars(g):
            return g
        if isinstance(g, Var):
            return copy()
        return _map(g, go)

    return go(phi)


def unfold(f: _Fix) -> Formula:
    """One-step unfolding sigma X.b -> b[sigma X.b / X]."""
    return substitute(f.body, f.var, f)


def push_next(f: Formula) -> Formula:
    """Distribute next over disjunction until no Or sits directly under Next."""
    memo = {}

    def nxt(b):
        if isinstance(b, Or):
            return Or(nxt(b.left), nxt(b.right))
        return Next(b)

    def go(g):
        r = memo.get(g)
        if r is None:
            r = nxt(go(g.body)) if isinstance(g, Next) else _map(g, go)
            memo[g] = r
        return r

    return go(f)


def is_guarded(f: Formula) -> bool:
    """Every bound occurrence lies under a next inside its binder's body."""

    def go(g, unguarded):
        # unguarded: binder names whose occurrences here would be unguarded
        if isinstance(g, Var):
            return g.name not in unguarded
        if isinstance(g, Next):
            return go(g.body, frozenset())
        if isinstance(g, _Fix):
            return go(g.body, unguarded | {g.var})
        return all(go(c, unguarded) for c in g.children())

    return go(f, frozenset())


def _unguarded_free(g, x):
    """True if x occurs free in g outside every next."""
    if isinstance(g, Var):
        return g.name == x
    if isinstance(g, Next):
        return False
    if isinstance(g, _Fix) and g.var == x:
        return False
    return any(_unguarded_free(c, x) for c in g.children())


def guard_transform(f: Formula, budget: int = 100_000) -> Formula:
    """Equivalent guarded formula.

    Binders are processed innermost first.  For sigma X.b with unguarded
    occurrences of X, every inner binder hiding such an occurrence is
    unfolded once (its own variable is already guarded, so the copies
    land under a next), the unguarded part of the body is put in
    disjunctive normal form, and the unguarded occurrences of X are
    removed: a conjunct X is dropped under nu, a disjunct containing X
    is dropped under mu.
    """
    if is_guarded(f):
        return f

    def check(g):
        if size(g) > budget:
            raise BudgetExceeded(f"guarded transformation exceeded {budget} nodes")
        return g

    def unfold_inline(g: _Fix):
        # Copies keep their binder names for now; the result is renamed
        # apart once at the end.
        def go(h):
            if isinstance(h, Var) and h.name == g.var:
                return g
            if g.var not in free_vars(h):
                return h
            return _map(h, go)
        return go(g.body)

    def expose(g, x):
        # Unfold inner binders that hide unguarded occurrences of x.
        if isinstance(g, Next) or not _unguarded_free(g, x):
            return g
        if isinstance(g, _Fix):
            return expose(unfold_inline(g), x)
        return _map(g, lambda c: expose(c, x))

    def dnf(g, x):
        # DNF over the unguarded boolean skeleton; leaves are kept whole.
        if isinstance(g, Or):
            return dnf(g.left, x) + dnf(g.right, x)
        if isinstance(g, And):
            return [a + b for a in dnf(g.left, x) for b in dnf(g.right, x)]
        return [[g]]

    def fix_binder(g: _Fix):
        x = g.var
        if not _unguarded_free(g.body, x):
            return g
        body = check(expose(g.body, x))
        terms = []
        for clause in dnf(body, x):
            has_x = any(isinstance(c, Var) and c.name == x for c in clause)
            if has_x and isinstance(g, Mu):
                continue
            rest = [c for c in clause if not (isinstance(c, Var) and c.name == x)]
            if any(isinstance(c, FalseF) for c in rest):
                continue
            rest = [c for c in rest if not isinstance(c, TrueF)]
            terms.append(conj(_dedupe(rest)))
        if any(isinstance(t, TrueF) for t in terms):
            new_body = TRUE
        else:
            new_body = disj(_dedupe(terms))
        return check(type(g)(x, new_body))

    def go(g):
        if isinstance(g, _Fix):
            return fix_binder(type(g)(g.var, go(g.body)))
        return _map(g, go)

    return rename_apart(go(f))


def _dedupe(items):
    seen = set()
    out = []
    for i in items:
        if i not in seen:
            seen.add(i)
            out.append(i)
    return out


# Static structure of binders ------------------------------------------------

@dataclass(frozen=True)
class DependencyRelation:
    """X < Y pairs (Y depends on X), transitively closed, plus the binder
    nesting order."""
    pairs: frozenset
    higher: frozenset        # (X, Y): Y's binder lies strictly inside X's body
    kinds: dict              # name -> "mu" | "nu"

    def dependents(self, x):
        return frozenset(b for a, b in self.pairs if a == x)

    def is_higher(self, x, y):
        return (x, y) in self.higher

    def __contains__(self, pair):
        return pair in self.pairs


def binder_table(f: Formula) -> dict:
    """Map binder name -> binder subterm."""
    return {g.var: g for g in _walk(f) if isinstance(g, _Fix)}


def _walk(f):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(g.children())


def dependencies(f: Formula) -> DependencyRelation:
    table = binder_table(f)
    higher = set()
    direct = set()
    for x, bx in table.items():
        for g in _walk(bx.body):
            if isinstance(g, _Fix):
                higher.add((x, g.var))
                if x in free_vars(g.body):
                    direct.add((x, g.var))
    pairs = set(direct)
    changed = True
    while changed:
        changed = False
        for a, b in list(pairs):
            for c, d in list(pairs):
                if b == c and (a, d) not in pairs:
                    pairs.add((a, d))
                    changed = True
    kinds = {x: ("mu" if isinstance(b, Mu) else "nu") for x, b in table.items()}
    return DependencyRelation(frozenset(pairs), frozenset(higher), kinds)


def closure(f: Formula) -> list:
    """Closure set as closed formulas in canonical order.

    Unfolding reuses the binder's own name for the inserted copy; since
    closure members are compared up to that copy, this keeps the set
    finite and linear in the size of f.
    """
    table = binder_table(f)
    closed = {}

    def close(g):
        # Replace free variables by their closed fixpoint formulas.
        r = closed.get(g)
        if r is None:
            fv = free_vars(g)
            r = g
            if fv:
                def go(h):
                    if isinstance(h, Var) and h.name in fv:
                        return close(table[h.name])
                    if not (free_vars(h) & fv):
                        return h
                    if isinstance(h, _Fix):
                        return type(h)(h.var, go(h.body))
                    return _map(h, go)
                r = go(g)
            closed[g] = r
        return r

    members = {TRUE}
    for g in _walk(f):
        if isinstance(g, Var):
            continue
        members.add(close(g))
        if isinstance(g, _Fix):
            members.add(close(g.body))
    return sorted(members)
