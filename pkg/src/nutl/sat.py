"""Satisfiability by nu-loop search over the present-future graph."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SoundnessError
from .lasso import LassoWord, eval_lasso
from .pfg import PFG, build_pfg
from .search import bfs_prefix, find_nu_loop


@dataclass(frozen=True)
class LoopWitness:
    prefix_edges: tuple
    loop_edges: tuple

    def __post_init__(self):
        loop = self.loop_edges
        if not loop:
            raise ValueError("loop must be nonempty")
        for a, b in zip(loop, loop[1:] + loop[:1]):
            if a.dst != b.src:
                raise ValueError("loop edges do not form a cycle")


@dataclass
class Verdict:
    satisfiable: bool
    witness: LoopWitness | None = None
    lasso: LassoWord | None = None
    graph: PFG | None = None
    search: str | None = None       # "dfs", "decomposition" or "traces"

    def __bool__(self):
        return self.satisfiable


def _atom(label):
    return frozenset(p for p, pos in label.literals if pos)


def extract_lasso(w: LoopWitness) -> LassoWord:
    """Read the word off the edge labels; unconstrained propositions are false."""
    return LassoWord(tuple(_atom(e.label) for e in w.prefix_edges),
                     tuple(_atom(e.label) for e in w.loop_edges))


def check_sat(phi, budget: int = 200_000, single_pass: bool = False,
              simple_loops: bool = False, validate: bool = True) -> Verdict:
    g = build_pfg(phi, budget=budget, single_pass=single_pass)
    if g.n == 0:
        return Verdict(False, graph=g)
    if single_pass:
        # single-pass pruning can leave dead ends; search needs none of them
        from .pfg import prune_graph
        search_graph = prune_graph(g)
    else:
        search_graph = g
    loop, how = find_nu_loop(search_graph, simple_only=simple_loops)
    if loop is None:
        return Verdict(False, graph=g)
    prefix = bfs_prefix(search_graph.n, search_graph.edges, search_graph.root, loop[0].src)
    w = LoopWitness(tuple(prefix), tuple(loop))
    lasso = extract_lasso(w)
    if validate and not eval_lasso(g.compiled.root, lasso):
        raise SoundnessError(f"witness {lasso} does not satisfy the formula")
    return Verdict(True, w, lasso, search_graph, how)
