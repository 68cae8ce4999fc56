# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels; same contracts as the pure-Python module."""

from libc.stdlib cimport free, malloc

from . import _pure


cdef int _tarjan(int n, int m, int *src, int *dst, int *comp) except -1:
    cdef int *start = <int *> malloc((n + 1) * sizeof(int))
    cdef int *adj = <int *> malloc((m if m > 0 else 1) * sizeof(int))
    cdef int *index = <int *> malloc((n if n > 0 else 1) * sizeof(int))
    cdef int *low = <int *> malloc((n if n > 0 else 1) * sizeof(int))
    cdef char *on = <char *> malloc((n if n > 0 else 1) * sizeof(char))
    cdef int *stack = <int *> malloc((n if n > 0 else 1) * sizeof(int))
    cdef int *wv = <int *> malloc((n if n > 0 else 1) * sizeof(int))
    cdef int *wi = <int *> malloc((n if n > 0 else 1) * sizeof(int))
    cdef int i, v, w, u, s, sp = 0, wp = 0, counter = 0, ncomp = 0
    if not (start and adj and index and low and on and stack and wv and wi):
        free(start); free(adj); free(index); free(low)
        free(on); free(stack); free(wv); free(wi)
        raise MemoryError()
    try:
        # counting sort of edges by source keeps successor order stable
        for i in range(n + 1):
            start[i] = 0
        for i in range(m):
            start[src[i] + 1] += 1
        for i in range(n):
            start[i + 1] += start[i]
        for i in range(n):
            index[i] = start[i]
        for i in range(m):
            adj[index[src[i]]] = dst[i]
            index[src[i]] += 1
        for i in range(n):
            index[i] = -1
            on[i] = 0
            comp[i] = -1
        for s in range(n):
            if index[s] != -1:
                continue
            index[s] = counter
            low[s] = counter
            counter += 1
            stack[sp] = s
            sp += 1
            on[s] = 1
            wv[0] = s
            wi[0] = start[s]
            wp = 1
            while wp > 0:
                v = wv[wp - 1]
                if wi[wp - 1] < start[v + 1]:
                    w = adj[wi[wp - 1]]
                    wi[wp - 1] += 1
                    if index[w] == -1:
                        index[w] = counter
                        low[w] = counter
                        counter += 1
                        stack[sp] = w
                        sp += 1
                        on[w] = 1
                        wv[wp] = w
                        wi[wp] = start[w]
                        wp += 1
                    elif on[w] and index[w] < low[v]:
                        low[v] = index[w]
                    continue
                wp -= 1
                if wp > 0:
                    u = wv[wp - 1]
                    if low[v] < low[u]:
                        low[u] = low[v]
                if low[v] == index[v]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        on[w] = 0
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    finally:
        free(start); free(adj); free(index); free(low)
        free(on); free(stack); free(wv); free(wi)
    return ncomp


def scc(n, src, dst):
    """Tarjan's algorithm.  Returns the component index of every node;
    components are numbered in completion order."""
    cdef int nn = n
    cdef int m = len(src)
    cdef int i
    cdef int *s = <int *> malloc((m if m > 0 else 1) * sizeof(int))
    cdef int *d = <int *> malloc((m if m > 0 else 1) * sizeof(int))
    cdef int *c = <int *> malloc((nn if nn > 0 else 1) * sizeof(int))
    if not (s and d and c):
        free(s); free(d); free(c)
        raise MemoryError()
    try:
        for i in range(m):
            s[i] = src[i]
            d[i] = dst[i]
            if s[i] < 0 or s[i] >= nn or d[i] < 0 or d[i] >= nn:
                raise IndexError("edge endpoint out of range")
        _tarjan(nn, m, s, d, c)
        return [c[i] for i in range(nn)]
    finally:
        free(s); free(d); free(c)


def nu_decompose(n, src, dst, masks, cover, idx):
    """Edge set inside one SCC in which every least-fixpoint variable
    present in the marks is avoided (with its dependents) by some edge.
    Returns sorted edge indices or None.  Marks wider than 64 variables
    go to the pure-Python version."""
    if any(m >> 64 for m in masks) or any(b >> 64 or cv >> 64 for b, cv in cover):
        return _pure.nu_decompose(n, src, dst, masks, cover, idx)
    cdef int nn = n
    cdef int ne = len(src)
    cdef int k = len(cover)
    cdef int i, j, t, cnt
    cdef unsigned long long union_, bad, b, cv
    cdef unsigned long long *mk = <unsigned long long *> malloc((ne if ne > 0 else 1) * sizeof(unsigned long long))
    cdef unsigned long long *cb = <unsigned long long *> malloc((k if k > 0 else 1) * sizeof(unsigned long long))
    cdef unsigned long long *cc = <unsigned long long *> malloc((k if k > 0 else 1) * sizeof(unsigned long long))
    cdef int *s = <int *> malloc((ne if ne > 0 else 1) * sizeof(int))
    cdef int *d = <int *> malloc((ne if ne > 0 else 1) * sizeof(int))
    cdef int *comp = <int *> malloc((nn if nn > 0 else 1) * sizeof(int))
    if not (mk and cb and cc and s and d and comp):
        free(mk); free(cb); free(cc); free(s); free(d); free(comp)
        raise MemoryError()
    try:
        for i in range(ne):
            mk[i] = masks[i]
        for j in range(k):
            cb[j] = cover[j][0]
            cc[j] = cover[j][1]
        todo = [sorted(idx)]
        while todo:
            es = todo.pop()
            cnt = len(es)
            for t in range(cnt):
                i = es[t]
                s[t] = src[i]
                d[t] = dst[i]
            _tarjan(nn, cnt, s, d, comp)
            groups = {}
            for t in range(cnt):
                i = es[t]
                if comp[s[t]] == comp[d[t]]:
                    groups.setdefault(comp[s[t]], []).append(i)
            pending = []
            for c in sorted(groups, key=lambda c: min(src[i] for i in groups[c])):
                ec = groups[c]
                union_ = 0
                for i in ec:
                    union_ |= mk[i]
                bad = 0
                for j in range(k):
                    b = cb[j]
                    cv = cc[j]
                    if union_ & b:
                        for i in ec:
                            if not (mk[i] & cv):
                                break
                        else:
                            bad |= b
                if not bad:
                    return ec
                rest = [i for i in ec if not (mk[i] & bad)]
                if rest:
                    pending.append(rest)
            todo.extend(reversed(pending))
        return None
    finally:
        free(mk); free(cb); free(cc); free(s); free(d); free(comp)
