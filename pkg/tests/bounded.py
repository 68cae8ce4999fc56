"""Bounded lasso search used as an independent satisfiability oracle.

Candidates are enumerated depth-first as letter sequences u (prefix then
period).  A sequence is abandoned when a top-level conjunct that only looks
a bounded distance ahead is already false on u; such a conjunct is either
fixpoint-free (checked at position 0) or an "always" of the shape
nu X.(()X /\ psi) with psi fixpoint-free (checked at every position whose
lookahead lies inside u).  Pruning never discards a prefix of a model, so
within the bounds the search is exhaustive.
"""

import itertools

from nutl.formula import And, FalseF, Lit, Next, Nu, Or, TrueF, Var, free_vars, subterms
from nutl.lasso import LassoWord, eval_lasso


def _conjuncts(f):
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def _fixpoint_free(f):
    return not any(isinstance(g, (Nu, Var)) or type(g).__name__ == "Mu" for g in subterms(f))


def _finite(f, u, i):
    """Three-valued truth of a fixpoint-free f at position i of the finite word u."""
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, Lit):
        return (f.prop in u[i]) == f.positive
    if isinstance(f, Next):
        return _finite(f.body, u, i + 1) if i + 1 < len(u) else None
    a = _finite(f.left, u, i)
    if isinstance(f, And):
        if a is False:
            return False
        b = _finite(f.right, u, i)
        return False if b is False else (True if a and b else None)
    if isinstance(f, Or):
        if a is True:
            return True
        b = _finite(f.right, u, i)
        return True if b is True else (False if a is False and b is False else None)
    raise TypeError(f)


def _depth(f):
    if isinstance(f, Next):
        return 1 + _depth(f.body)
    return max((_depth(c) for c in f.children()), default=0)


def _checks(phi):
    local, always = [], []
    for c in _conjuncts(phi):
        if _fixpoint_free(c):
            local.append(c)
        elif isinstance(c, Nu):
            parts = _conjuncts(c.body)
            step = Next(Var(c.var))
            rest = [p for p in parts if p is not step]
            if len(rest) < len(parts) and all(_fixpoint_free(p) and not free_vars(p) for p in rest):
                always.extend(rest)
    return local, always


def bounded_model(phi, props, max_prefix, max_period):
    """A lasso satisfying phi within the bounds, or None."""
    alphabet = [frozenset(c) for k in range(len(props) + 1)
                for c in itertools.combinations(sorted(props), k)]
    local, always = _checks(phi)
    reach = max((_depth(c) for c in always), default=0)
    limit = max_prefix + max_period

    def dead(u):
        if any(_finite(c, u, 0) is False for c in local):
            return True
        i = len(u) - 1
        # only the positions whose value may have just become known
        return any(_finite(c, u, j) is False
                   for c in always for j in range(max(0, i - reach), i + 1))

    def search(u):
        for k in range(0, min(max_prefix, len(u) - 1) + 1):
            if 1 <= len(u) - k <= max_period:
                w = LassoWord(tuple(u[:k]), tuple(u[k:]))
                if eval_lasso(phi, w):
                    return w
        if len(u) == limit:
            return None
        for a in alphabet:
            u.append(a)
            if not dead(u):
                found = search(u)
                if found is not None:
                    return found
            u.pop()
        return None

    return search([])
