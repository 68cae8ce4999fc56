"""Construction of the present-future graph, pruning and export."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace

from .errors import BudgetExceeded
from .formula import FalseF, Formula
from .pf import Compiled, PresentPart, minimal_threads, node_key, root_conjuncts


@dataclass(frozen=True)
class Edge:
    src: int
    label: PresentPart
    mark: frozenset
    dst: int
    # alternative sets of thread steps (source term, target term, unfolded)
    threads: tuple = field(default=(), compare=False, repr=False)

    def __str__(self):
        return f"{self.src} -> {self.dst} : {self.label} : {{{' '.join(sorted(self.mark))}}}"


class MarkedGraph:
    """Nodes 0..n-1 with labelled, marked edges; the common currency of the
    satisfiability and model-checking searches."""

    def __init__(self, n, edges, root, deps, mu_vars):
        self.n = n
        self.edges = list(edges)
        self.root = root
        self.deps = deps
        self.mu_vars = frozenset(mu_vars)

    def out_edges(self):
        out = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            out[e.src].append(i)
        return out

    @property
    def empty(self):
        return self.n == 0


class PFG(MarkedGraph):
    def __init__(self, compiled: Compiled, nodes, edges, root):
        super().__init__(len(nodes), edges, root, compiled.deps, compiled.mu_vars)
        self.compiled = compiled
        self.nodes = list(nodes)       # node id -> tuple of terms

    def node_text(self, i, unicode=False):
        terms = self.nodes[i]
        if not terms:
            return "true"
        return " ; ".join(self.compiled.term_text(t, unicode) for t in terms)

    def restrict(self, kept, edges, root):
        return PFG(self.compiled, [self.nodes[v] for v in kept], edges, root)

    def node_formula(self, i) -> Formula:
        from .formula import conj
        return conj(self.compiled.closed(t) for t in self.nodes[i])

    def dump(self) -> str:
        from .printer import to_text
        lines = []
        for v in sorted(self.compiled.binders):
            lines.append(f"binder {v} = {to_text(self.compiled.binders[v])}")
        for i in range(self.n):
            lines.append(f"node {i} = <{self.node_text(i)}>" + (" root" if i == self.root else ""))
        lines.extend(str(e) for e in self.edges)
        return "\n".join(lines) + "\n"


def build_pfg(phi, budget: int = 200_000, single_pass: bool = False, prune: bool = True) -> PFG:
    """Worklist construction from the root node, then dead-node pruning."""
    c = phi if isinstance(phi, Compiled) else Compiled(phi)
    index = {}
    nodes = []
    edges = []

    def node_id(key):
        i = index.get(key)
        if i is None:
            if len(nodes) >= budget:
                raise BudgetExceeded(f"node budget of {budget} exceeded")
            i = len(nodes)
            index[key] = i
            nodes.append(key)
            queue.append(i)
        return i

    queue = deque()
    root = node_id(root_conjuncts(c))
    while queue:
        i = queue.popleft()
        key = nodes[i]
        if any(isinstance(t, FalseF) for t in key):
            continue
        _add_edges(edges, i, c.decompose(key, first_unfold=(i == root)), c, node_id)

    if any(e.dst == root for e in edges):
        # The root recurs, so its edges may lie on loops: use the
        # ordinary marks there as well.
        edges = [e for e in edges if e.src != root]
        _add_edges(edges, root, c.decompose(nodes[root]), c, lambda k: index[k])
        edges.sort(key=lambda e: e.src)

    g = PFG(c, nodes, edges, root)
    if prune:
        g = prune_graph(g, single_pass=single_pass)
    return g


def _add_edges(edges, i, pf, c, node_id):
    seen = {}
    for d in pf:
        j = node_id(node_key(c, d.targets))
        mark = frozenset().union(*(fc.marks for fc in d.future)) if d.future else frozenset()
        e = Edge(i, d.present, mark, j, d.threads)
        k = seen.get(e)
        if k is None:
            seen[e] = len(edges)
            edges.append(e)
        else:
            edges[k] = replace(edges[k], threads=minimal_threads(edges[k].threads + d.threads))


def live_nodes(n, edges, root, single_pass=False):
    """Nodes kept by pruning: all nodes lying on an infinite path from the
    root, or (single-pass mode) those with an outgoing edge before the pass."""
    out_deg = [0] * n
    preds = [[] for _ in range(n)]
    for e in edges:
        out_deg[e.src] += 1
        preds[e.dst].append(e.src)
    alive = [True] * n
    if single_pass:
        return [d > 0 for d in out_deg]
    stack = [v for v in range(n) if out_deg[v] == 0]
    for v in stack:
        alive[v] = False
    while stack:
        v = stack.pop()
        for u in preds[v]:
            if alive[u]:
                out_deg[u] -= 1
                if out_deg[u] == 0:
                    alive[u] = False
                    stack.append(u)
    # reachability from the root through live nodes
    reach = [False] * n
    if alive[root]:
        succ = [[] for _ in range(n)]
        for e in edges:
            if alive[e.src] and alive[e.dst]:
                succ[e.src].append(e.dst)
        reach[root] = True
        todo = [root]
        while todo:
            v = todo.pop()
            for w in succ[v]:
                if not reach[w]:
                    reach[w] = True
                    todo.append(w)
    return reach


def prune_graph(g, single_pass=False):
    """Drop dead nodes (and, unless single_pass, iterate and drop unreachable
    ones); ids are renumbered densely in their original order."""
    keep = live_nodes(g.n, g.edges, g.root, single_pass)
    if single_pass and not keep[g.root]:
        keep = [False] * g.n
    remap = {}
    for v in range(g.n):
        if keep[v]:
            remap[v] = len(remap)
    edges = [Edge(remap[e.src], e.label, e.mark, remap[e.dst], e.threads)
             for e in g.edges if e.src in remap and e.dst in remap]
    return g.restrict([v for v in range(g.n) if keep[v]], edges, remap.get(g.root, 0) if remap else 0)


def dot_export(g, highlight=(), title="G", caption=None) -> str:
    """Graphviz text; the root is double-circled, highlighted edges red."""
    hl = {(e.src, e.label, e.mark, e.dst) for e in highlight}
    lines = [f"digraph {title} {{", "  rankdir=LR;"]
    for i in range(g.n):
        text = caption(i) if caption else f"n{i}: {g.node_text(i)}"
        shape = "doublecircle" if i == g.root else "circle"
        lines.append(f'  n{i} [shape={shape}, label="{_esc(text)}"];')
    for e in g.edges:
        mark = "{" + ",".join(sorted(e.mark)) + "}"
        attrs = f'label="{_esc(str(e.label))} / {mark}"'
        if (e.src, e.label, e.mark, e.dst) in hl:
            attrs += ", color=red, fontcolor=red"
        lines.append(f"  n{e.src} -> n{e.dst} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _esc(s):
    return s.replace("\\", "\\\\").replace('"', '\\"')
