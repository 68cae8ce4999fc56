"""Model checking by searching the product of a structure with the
present-future graph of the negated property."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import BudgetExceeded, SoundnessError
from .kripke import KripkeStructure, StateLasso
from .lasso import eval_lasso
from .pf import PresentPart
from .pfg import PFG, Edge, MarkedGraph, build_pfg, dot_export, prune_graph
from .sat import LoopWitness
from .search import bfs_prefix, find_nu_loop
from .transforms import negate


class ProductGraph(MarkedGraph):
    """Nodes are (state, PFG node) pairs; a node whose PFG part is None
    stands for the product with an empty graph."""

    def __init__(self, kripke: KripkeStructure, pfg: PFG, nodes, edges, root):
        super().__init__(len(nodes), edges, root, pfg.deps, pfg.mu_vars)
        self.kripke = kripke
        self.pfg = pfg
        self.nodes = list(nodes)

    def node_text(self, i, unicode=False):
        s, n = self.nodes[i]
        return f"({s}, {'-' if n is None else n})"

    def restrict(self, kept, edges, root):
        return ProductGraph(self.kripke, self.pfg, [self.nodes[v] for v in kept], edges, root)

    def dump(self) -> str:
        lines = [f"node {i} = {self.node_text(i)}" + (" root" if i == self.root else "")
                 for i in range(self.n)]
        lines.extend(str(e) for e in self.edges)
        return "\n".join(lines) + "\n"


def label_check(state, label: PresentPart, m: KripkeStructure) -> bool:
    return label.holds_in(m.label(state))


def build_product(m: KripkeStructure, g: PFG, budget: int = 1_000_000) -> ProductGraph:
    """Worklist expansion from (init, root) keeping the PFG edge marks."""
    if g.n == 0:
        return ProductGraph(m, g, [(m.init, None)], [], 0)
    out = [[] for _ in range(g.n)]
    for e in g.edges:
        out[e.src].append(e)
    succ = {s: m.successors(s) for s in m.states}
    index = {}
    nodes = []
    edges = []
    queue = deque()

    def node_id(key):
        i = index.get(key)
        if i is None:
            if len(nodes) >= budget:
                raise BudgetExceeded(f"product budget of {budget} nodes exceeded")
            i = index[key] = len(nodes)
            nodes.append(key)
            queue.append(i)
        return i

    root = node_id((m.init, g.root))
    while queue:
        i = queue.popleft()
        s, n = nodes[i]
        for e in out[n]:
            if not label_check(s, e.label, m):
                continue
            for t in succ[s]:
                j = node_id((t, e.dst))
                edges.append(Edge(i, e.label, e.mark, j, e.threads))
    return ProductGraph(m, g, nodes, edges, root)


def pg_reduction(pg: ProductGraph, single_pass: bool = False) -> ProductGraph:
    """Remove dead nodes (iterated, plus unreachable ones) or, with
    single_pass, a single pass of out-degree-zero nodes."""
    return prune_graph(pg, single_pass=single_pass)


@dataclass
class MCVerdict:
    holds: bool
    counterexample: StateLasso | None = None
    witness: LoopWitness | None = None
    product: ProductGraph | None = None
    search: str | None = None

    def __bool__(self):
        return self.holds


def model_check(m: KripkeStructure, phi, budget: int = 200_000, single_pass: bool = False,
                simple_loops: bool = False, validate: bool = True) -> MCVerdict:
    neg = negate(phi)
    g = build_pfg(neg, budget=budget, single_pass=single_pass)
    pg = pg_reduction(build_product(m, g, budget=budget * max(1, len(m.states))),
                      single_pass=single_pass)
    if pg.n == 0:
        return MCVerdict(True, product=pg)
    search_graph = prune_graph(pg) if single_pass else pg
    if search_graph.n == 0:
        return MCVerdict(True, product=pg)
    loop, how = find_nu_loop(search_graph, simple_only=simple_loops)
    if loop is None:
        return MCVerdict(True, product=search_graph)
    prefix = bfs_prefix(search_graph.n, search_graph.edges, search_graph.root, loop[0].src)
    w = LoopWitness(tuple(prefix), tuple(loop))
    state = [s for s, _ in search_graph.nodes]
    cex = StateLasso(tuple(state[e.src] for e in prefix), tuple(state[e.src] for e in loop))
    if validate:
        if not cex.is_run_of(m):
            raise SoundnessError(f"counterexample {cex} is not a run of the structure")
        if not eval_lasso(neg, cex.word(m)):
            raise SoundnessError(f"counterexample {cex} satisfies the property")
    return MCVerdict(False, cex, w, search_graph, how)


def product_dot(pg: ProductGraph, highlight=()) -> str:
    return dot_export(pg, highlight=highlight, title="P", caption=pg.node_text)
