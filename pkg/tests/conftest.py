import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from graphclus.graphs import LabelTable, LabeledGraph


def random_graph(rng: random.Random, table, n_min, n_max, p_edge,
                 vlabels=("a", "b", "c"), elabels=("x", "y")) -> LabeledGraph:
    n = rng.randint(n_min, n_max)
    vl = [rng.choice(vlabels) for _ in range(n)]
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p_edge:
                edges.append((u, v, rng.choice(elabels)))
    return LabeledGraph.from_strings(table, vl, edges)


def random_connected_graph(rng, table, n_min, n_max, p_edge, **kw) -> LabeledGraph:
    g = random_graph(rng, table, n_min, n_max, p_edge, **kw)
    elabels = kw.get("elabels", ("x", "y"))
    edges = list(g.edges)
    # stitch components together with random extra edges
    while True:
        comp = _components(g.n, edges)
        if len(comp) <= 1:
            break
        a = rng.choice(sorted(comp[0]))
        b = rng.choice(sorted(comp[1]))
        u, v = min(a, b), max(a, b)
        edges.append((u, v, g.label_table.intern(rng.choice(elabels))))
    return LabeledGraph(list(g.vlabels), edges, g.label_table)


def _components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups = {}
    for v in range(n):
        groups.setdefault(find(v), set()).add(v)
    return sorted(groups.values(), key=lambda s: min(s))


def random_connected_subgraph(rng, g: LabeledGraph, max_edges=None) -> LabeledGraph:
    """A random connected subgraph of g, as its own graph (shared table)."""
    if g.n == 0:
        return LabeledGraph([], [], g.label_table)
    start = rng.randrange(g.n)
    verts = [start]
    vset = {start}
    edges = []
    eset = set()
    budget = rng.randint(0, g.m if max_edges is None else min(max_edges, g.m))
    while len(edges) < budget:
        frontier = []
        for u in verts:
            for v, el in g.adj[u].items():
                key = (min(u, v), max(u, v))
                if key not in eset:
                    frontier.append((key[0], key[1], el))
        if not frontier:
            break
        u, v, el = rng.choice(sorted(frontier))
        eset.add((u, v))
        edges.append((u, v, el))
        for w in (u, v):
            if w not in vset:
                vset.add(w)
                verts.append(w)
    index = {v: i for i, v in enumerate(sorted(vset))}
    vl = [g.vlabels[v] for v in sorted(vset)]
    el = [(index[u], index[v], lab) for u, v, lab in edges]
    return LabeledGraph(vl, el, g.label_table)


def fresh_table() -> LabelTable:
    return LabelTable()
