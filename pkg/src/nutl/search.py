"""Strongly connected components and nu-loop search over marked graphs."""

from __future__ import annotations

from collections import deque

from . import kernels


def tarjan_scc(n, edges, active=None):
    """SCCs of the graph restricted to `active` edge indices, as sorted
    node lists in the order Tarjan's algorithm completes them."""
    if active is None:
        active = range(len(edges))
    src = [edges[i].src for i in active]
    dst = [edges[i].dst for i in active]
    comp = kernels.scc(n, src, dst)
    groups = {}
    order = []
    for v in range(n):
        c = comp[v]
        if c not in groups:
            groups[c] = []
        groups[c].append(v)
    for c in sorted(groups):
        order.append(groups[c])
    return order


def is_nu_path(loop_edges, deps, mu_vars) -> bool:
    """Each least-fixpoint variable in the loop marks must be avoided,
    together with all its dependents, by some loop edge."""
    marks = frozenset().union(*(e.mark for e in loop_edges)) if loop_edges else frozenset()
    for v in sorted(marks & mu_vars):
        dep = deps.dependents(v) | {v}
        if not any(not (e.mark & dep) for e in loop_edges):
            return False
    return True


def scc_nu_search(edges, scc_nodes, deps, mu_vars):
    """Depth-first loop search inside one SCC: every edge is explored once;
    on the first revisit of a node on the current path the loop suffix is
    tested.  Returns a list of edges or None."""
    nodes = set(scc_nodes)
    succ = {v: [] for v in scc_nodes}
    for e in edges:
        if e.src in nodes and e.dst in nodes:
            succ[e.src].append(e)
    start = min(scc_nodes)
    visited = set()
    ns = [start]
    pos = {start: 0}
    es = []
    it = [iter(succ[start])]
    while it:
        e = next(it[-1], None)
        if e is None:
            it.pop()
            if es:
                es.pop()
                del pos[ns.pop()]
            continue
        key = id(e)
        if key in visited:
            continue
        visited.add(key)
        if e.dst in pos:
            loop = es[pos[e.dst]:] + [e]
            if is_nu_path(loop, deps, mu_vars):
                return loop
            continue
        pos[e.dst] = len(ns)
        ns.append(e.dst)
        es.append(e)
        it.append(iter(succ[e.dst]))
    return None


def _dep_masks(deps, mu_vars, names):
    bit = {v: 1 << i for i, v in enumerate(names)}
    cover = []
    for v in sorted(mu_vars):
        m = bit[v]
        for w in deps.dependents(v):
            m |= bit.get(w, 0)
        cover.append((bit[v], m))
    return bit, cover


def nu_subgraph(n, edges, deps, mu_vars, active=None):
    """Complete search: an edge set E' inside one SCC such that loop-style
    acceptance holds for E' as a whole, or None.  Works by repeatedly
    removing edges that carry a variable which no edge of the current
    component avoids, and splitting into SCCs again."""
    names = sorted(deps.kinds)
    bit, cover = _dep_masks(deps, mu_vars, names)
    masks = [sum(bit[v] for v in e.mark) for e in edges]
    idx = list(range(len(edges))) if active is None else list(active)
    src = [e.src for e in edges]
    dst = [e.dst for e in edges]
    found = kernels.nu_decompose(n, src, dst, masks, cover, idx)
    if found is None:
        return None
    return found


def _trace_bad(edges, alts, deps, mu_vars):
    """Indices into `alts` of thread alternatives that perform the
    least-fixpoint unfolding of some bad trace cycle.

    `alts` lists (edge index, thread-step set) pairs.  A trace vertex is
    (node, term) and each thread step is a trace edge.  For a least-fixpoint
    variable V, steps unfolding a binder enclosing V are dropped; a remaining
    V-unfolding step inside a strongly connected component closes a cycle on
    which V is the outermost binder unfolded forever.
    """
    bad = set()
    for v in sorted(mu_vars):
        above = frozenset(a for a, b in deps.higher if b == v)
        vid = {}
        src, dst, owner, hit = [], [], [], []
        for a, (k, steps) in enumerate(alts):
            e = edges[k]
            for s, t, unf in steps:
                if unf & above:
                    continue
                src.append(vid.setdefault((e.src, s), len(vid)))
                dst.append(vid.setdefault((e.dst, t), len(vid)))
                owner.append(a)
                hit.append(v in unf)
        if not any(hit):
            continue
        comp = kernels.scc(len(vid), src, dst)
        for i, h in enumerate(hit):
            if h and comp[src[i]] == comp[dst[i]]:
                bad.add(owner[i])
    return bad


def trace_subgraph(n, edges, deps, mu_vars, ids):
    """Strongly connected edge set without any bad trace cycle, or None.

    Each edge contributes its thread alternatives as parallel candidates.
    Any closed walk covering an accepted set (using, per edge, the chosen
    alternative) is a model, since each of its traces projects onto the
    set's trace graph.  Candidates performing bad unfoldings are removed
    until the set is clean or empty.
    """
    work = [[(k, t) for k in ids for t in (edges[k].threads or (frozenset(),))]]
    while work:
        cur = work.pop()
        bad = _trace_bad(edges, cur, deps, mu_vars)
        if not bad:
            return sorted({k for k, _ in cur})
        rest = [c for i, c in enumerate(cur) if i not in bad]
        comp = kernels.scc(n, [edges[k].src for k, _ in rest], [edges[k].dst for k, _ in rest])
        groups = {}
        for c in rest:
            e = edges[c[0]]
            if comp[e.src] == comp[e.dst]:
                groups.setdefault(comp[e.src], []).append(c)
        work.extend(reversed(list(groups.values())))
    return None


def closed_walk(edges, edge_ids, start=None):
    """A closed walk that uses every edge in edge_ids (which must be
    strongly connected) and no other edge."""
    sub = [edges[i] for i in sorted(edge_ids)]
    succ = {}
    for e in sub:
        succ.setdefault(e.src, []).append(e)
    if start is None:
        start = min(e.src for e in sub)

    def path(a, b):
        if a == b:
            return []
        prev = {a: None}
        q = deque([a])
        while q:
            v = q.popleft()
            for e in succ.get(v, ()):
                if e.dst not in prev:
                    prev[e.dst] = e
                    if e.dst == b:
                        out = []
                        while e is not None:
                            out.append(e)
                            e = prev[e.src]
                        return out[::-1]
                    q.append(e.dst)
        raise ValueError("edge set is not strongly connected")

    walk = []
    cur = start
    used = set()
    for e in sub:
        if id(e) in used:
            continue
        step = path(cur, e.src) + [e]
        for x in step:
            used.add(id(x))
        walk.extend(step)
        cur = e.dst
    walk.extend(path(cur, start))
    return walk


def bfs_prefix(n, edges, root, target):
    """Shortest edge path from root to target; ties broken by lowest ids."""
    if root == target:
        return []
    succ = [[] for _ in range(n)]
    for e in edges:
        succ[e.src].append(e)
    prev = {root: None}
    q = deque([root])
    while q:
        v = q.popleft()
        for e in sorted(succ[v], key=lambda e: e.dst):
            if e.dst not in prev:
                prev[e.dst] = e
                if e.dst == target:
                    out = []
                    while e is not None:
                        out.append(e)
                        e = prev[e.src]
                    return out[::-1]
                q.append(e.dst)
    return None


def find_nu_loop(g, simple_only=False):
    """Search every nontrivial SCC for an accepted loop.

    The depth-first simple-loop search runs first on each SCC.  Unless
    `simple_only`, the mark-based edge-set decomposition follows and then
    the trace-based one, which tracks threads individually instead of
    through the union of marks.  Returns (loop edges, how) or (None, None).
    """
    if g.n == 0:
        return None, None
    comps = tarjan_scc(g.n, g.edges)
    comps.sort(key=min)
    comp_of = {}
    for ci, c in enumerate(comps):
        for v in c:
            comp_of[v] = ci
    inner = {}
    for i, e in enumerate(g.edges):
        if comp_of[e.src] == comp_of[e.dst]:
            inner.setdefault(comp_of[e.src], []).append(i)
    for ci, c in enumerate(comps):
        if ci in inner:
            loop = scc_nu_search(g.edges, c, g.deps, g.mu_vars)
            if loop is not None:
                return loop, "dfs"
    if simple_only:
        return None, None
    for ci, c in enumerate(comps):
        if ci in inner:
            ids = nu_subgraph(g.n, g.edges, g.deps, g.mu_vars, inner[ci])
            if ids:
                return closed_walk(g.edges, ids), "decomposition"
    for ci, c in enumerate(comps):
        if ci in inner:
            ids = trace_subgraph(g.n, g.edges, g.deps, g.mu_vars, inner[ci])
            if ids:
                return closed_walk(g.edges, ids), "traces"
    return None, None
