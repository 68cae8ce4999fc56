"""Pure-Python graph kernels (reference implementation and fallback)."""


def scc(n, src, dst):
    """Tarjan's algorithm, iterative.  Returns the component index of every
    node; components are numbered in completion order."""
    succ = [[] for _ in range(n)]
    for a, b in zip(src, dst):
        succ[a].append(b)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack = []
    counter = 0
    ncomp = 0
    for s in range(n):
        if index[s] != -1:
            continue
        work = [(s, 0)]
        index[s] = low[s] = counter
        counter += 1
        stack.append(s)
        on_stack[s] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def nu_decompose(n, src, dst, masks, cover, idx):
    """Find an edge set inside one SCC in which every least-fixpoint
    variable present in the marks is avoided (with its dependents) by
    some edge.  `cover` lists (variable bit, variable-or-dependent bits).
    Returns sorted edge indices or None."""
    todo = [sorted(idx)]
    while todo:
        es = todo.pop()
        comp = scc(n, [src[i] for i in es], [dst[i] for i in es])
        groups = {}
        for i in es:
            c = comp[src[i]]
            if c == comp[dst[i]]:
                groups.setdefault(c, []).append(i)
        pending = []
        for c in sorted(groups, key=lambda c: min(src[i] for i in groups[c])):
            ec = groups[c]
            union = 0
            for i in ec:
                union |= masks[i]
            bad = 0
            for b, cov in cover:
                if union & b and all(masks[i] & cov for i in ec):
                    bad |= b
            if not bad:
                return ec
            rest = [i for i in ec if not masks[i] & bad]
            if rest:
                pending.append(rest)
        todo.extend(reversed(pending))
    return None
