"""Labeled graphs and the search kernels built on them.

A LabeledGraph is an immutable, undirected, simple graph whose vertices and
edges both carry labels interned in a shared LabelTable.  Graph "size" is
|V| + |E| throughout.

Two kernels live here because everything else is built on top of them:

* label-preserving subgraph isomorphism (non-induced: the target may have
  extra edges among the mapped vertices), and
* the size of a maximum common connected subgraph of two graphs.

Both are exponential in the worst case but fast for the small graphs this
package targets (molecule-sized, up to a few hundred vertices).
"""

from __future__ import annotations


class LabelTable:
    """Dense interning of label strings to integer ids.

    One table is shared by every graph of a dataset (and every pattern mined
    from it).  After the dataset is loaded the table is frozen; trying to
    intern a new label afterwards is an error, which catches accidental
    mixing of unrelated datasets.
    """

    __slots__ = ("_ids", "_names", "_frozen")

    def __init__(self):
        self._ids = {}
        self._names = []
        self._frozen = False

    def intern(self, name: str) -> int:
        lid = self._ids.get(name)
        if lid is None:
            if self._frozen:
                raise KeyError(f"unknown label {name!r} (label table is frozen)")
            lid = len(self._names)
            self._ids[name] = lid
            self._names.append(name)
        return lid

    def lookup(self, name: str) -> int:
        return self._ids[name]

    def name(self, lid: int) -> str:
        return self._names[lid]

    def freeze(self):
        self._frozen = True

    def __len__(self):
        return len(self._names)


class LabeledGraph:
    """Undirected vertex- and edge-labeled simple graph, immutable once built.

    vlabels[i] is the label id of vertex i; edges are (u, v, elabel) triples
    with u < v.  Self loops and duplicate edges are rejected.  Derived lookup
    structures (adjacency, label counts) are precomputed because graphs are
    matched against far more often than they are created.
    """

    __slots__ = (
        "vlabels",
        "edges",
        "label_table",
        "n",
        "m",
        "size",
        "adj",
        "degrees",
        "vlabel_counts",
        "elabel_counts",
        "label_to_vertices",
        "_vlabel_set",
        "_path_triples",
    )

    def __init__(self, vlabels, edges, label_table):
        n = len(vlabels)
        adj = [dict() for _ in range(n)]
        norm_edges = []
        for u, v, el in edges:
            if u == v:
                raise ValueError(f"self loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) references a missing vertex")
            if u > v:
                u, v = v, u
            if v in adj[u]:
                raise ValueError(f"duplicate edge ({u},{v})")
            adj[u][v] = el
            adj[v][u] = el
            norm_edges.append((u, v, el))

        self.vlabels = tuple(vlabels)
        self.edges = tuple(norm_edges)
        self.label_table = label_table
        self.n = n
        self.m = len(norm_edges)
        self.size = n + self.m
        self.adj = adj
        self.degrees = [len(a) for a in adj]

        vcounts = {}
        by_label = {}
        for i, l in enumerate(self.vlabels):
            vcounts[l] = vcounts.get(l, 0) + 1
            by_label.setdefault(l, []).append(i)
        ecounts = {}
        for _, _, el in norm_edges:
            ecounts[el] = ecounts.get(el, 0) + 1
        self.vlabel_counts = vcounts
        self.elabel_counts = ecounts
        self.label_to_vertices = {l: tuple(vs) for l, vs in by_label.items()}
        self._vlabel_set = None
        self._path_triples = None

    @classmethod
    def from_strings(cls, label_table, vlabels, edges=()):
        """Build a graph from label strings, interning them on the fly."""
        vl = [label_table.intern(s) for s in vlabels]
        el = [(u, v, label_table.intern(s)) for u, v, s in edges]
        return cls(vl, el, label_table)

    @property
    def vlabel_set(self):
        s = self._vlabel_set
        if s is None:
            s = frozenset(self.vlabels)
            self._vlabel_set = s
        return s

    @property
    def path_triples(self):
        """Set of one-edge patterns (la, el, lb) with la <= lb present here."""
        s = self._path_triples
        if s is None:
            vl = self.vlabels
            s = set()
            for u, v, el in self.edges:
                a, b = vl[u], vl[v]
                s.add((a, el, b) if a <= b else (b, el, a))
            s = frozenset(s)
            self._path_triples = s
        return s

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = bytearray(self.n)
        stack = [0]
        seen[0] = 1
        reached = 1
        adj = self.adj
        while stack:
            for w in adj[stack.pop()]:
                if not seen[w]:
                    seen[w] = 1
                    reached += 1
                    stack.append(w)
        return reached == self.n

    def __repr__(self):
        return f"LabeledGraph(n={self.n}, m={self.m})"


def _check_same_table(a: LabeledGraph, b: LabeledGraph):
    if a.label_table is not b.label_table:
        raise ValueError("graphs do not share a label table")


class SubgraphMatcher:
    """Backtracking monomorphism test, preprocessed once per pattern.

    The pattern's vertices are ordered so that each one (after a component
    root) attaches to an already-placed neighbour; the per-step constraints
    (anchor edge plus any extra edges into the placed prefix) are frozen into
    tuples so that matching against many targets does no per-target pattern
    analysis.  Candidate order is deterministic, so results never depend on
    scheduling.
    """

    __slots__ = ("pattern", "steps")

    def __init__(self, pattern: LabeledGraph):
        self.pattern = pattern
        n = pattern.n
        adj = pattern.adj
        degs = pattern.degrees
        placed = [-1] * n  # vertex -> position, -1 if not placed
        order = []
        steps = []
        while len(order) < n:
            # most-constrained next vertex: most placed neighbours, then degree
            best = -1
            best_key = None
            for v in range(n):
                if placed[v] >= 0:
                    continue
                k = sum(1 for w in adj[v] if placed[w] >= 0)
                key = (k, degs[v], -v)
                if best_key is None or key > best_key:
                    best, best_key = v, key
            cons = sorted((placed[w], el) for w, el in adj[best].items() if placed[w] >= 0)
            if cons:
                anchor_pos, anchor_el = cons[0]
                others = tuple(cons[1:])
            else:
                anchor_pos, anchor_el = -1, -1
                others = ()
            steps.append((pattern.vlabels[best], degs[best], anchor_pos, anchor_el, others))
            placed[best] = len(order)
            order.append(best)
        self.steps = tuple(steps)

    def embeds_into(self, target: LabeledGraph) -> bool:
        p = self.pattern
        if p.n > target.n or p.m > target.m:
            return False
        tvc = target.vlabel_counts
        for l, c in p.vlabel_counts.items():
            if tvc.get(l, 0) < c:
                return False
        tec = target.elabel_counts
        for l, c in p.elabel_counts.items():
            if tec.get(l, 0) < c:
                return False
        if p.n == 0:
            return True

        steps = self.steps
        k = len(steps)
        tadj = target.adj
        tdeg = target.degrees
        tlab = target.vlabels
        used = bytearray(target.n)
        assign = [0] * k

        def place(i):
            vlabel, mindeg, anchor_pos, anchor_el, others = steps[i]
            if anchor_pos < 0:
                cands = target.label_to_vertices.get(vlabel, ())
                for u in cands:
                    if used[u] or tdeg[u] < mindeg:
                        continue
                    au = tadj[u]
                    ok = True
                    for j, el in others:
                        if au.get(assign[j]) != el:
                            ok = False
                            break
                    if not ok:
                        continue
                    if i + 1 == k:
                        return True
                    assign[i] = u
                    used[u] = 1
                    if place(i + 1):
                        return True
                    used[u] = 0
            else:
                for u, el in tadj[assign[anchor_pos]].items():
                    if el != anchor_el or used[u] or tlab[u] != vlabel or tdeg[u] < mindeg:
                        continue
                    au = tadj[u]
                    ok = True
                    for j, oel in others:
                        if au.get(assign[j]) != oel:
                            ok = False
                            break
                    if not ok:
                        continue
                    if i + 1 == k:
                        return True
                    assign[i] = u
                    used[u] = 1
                    if place(i + 1):
                        return True
                    used[u] = 0
            return False

        return place(0)


def is_subgraph_iso(pattern: LabeledGraph, target: LabeledGraph) -> bool:
    """True iff a label-preserving injection of pattern into target exists.

    Non-induced: the target may carry extra edges among the mapped vertices.
    The empty pattern embeds into everything.  When one pattern is tested
    against many targets, build a SubgraphMatcher once instead.
    """
    _check_same_table(pattern, target)
    return SubgraphMatcher(pattern).embeds_into(target)


def are_isomorphic(a: LabeledGraph, b: LabeledGraph) -> bool:
    """Exact isomorphism; for equal vertex/edge counts one embedding suffices."""
    if a.n != b.n or a.m != b.m:
        return False
    if a.vlabel_counts != b.vlabel_counts or a.elabel_counts != b.elabel_counts:
        return False
    return SubgraphMatcher(a).embeds_into(b)


def mcs_size(g: LabeledGraph, h: LabeledGraph, lower_bound: int | None = None) -> int:
    """Size (|V|+|E|) of a maximum common connected subgraph of g and h.

    With lower_bound set, the search may stop and return the current score as
    soon as it proves a common subgraph of at least that size; callers must
    then only compare the result against the bound.  Graphs with no common
    vertex label give 0.

    Branch and bound over attachment pairs: a state is a partial injective
    mapping whose common edges keep it connected, extended one compatible
    (g-vertex, h-vertex) pair at a time; tried pairs are forbidden in the
    remainder of a node so no state is visited twice.
    """
    _check_same_table(g, h)
    gvc, hvc = g.vlabel_counts, h.vlabel_counts
    vbound = sum(min(c, hvc.get(l, 0)) for l, c in gvc.items())
    if vbound == 0:
        return 0
    ebound = min(
        g.m,
        h.m,
        sum(min(c, h.elabel_counts.get(l, 0)) for l, c in g.elabel_counts.items()),
    )
    if lower_bound is not None and vbound + ebound < lower_bound:
        return 0

    gadj, hadj = g.adj, h.adj
    glab, hlab = g.vlabels, h.vlabels
    edge_cap = min(g.m, h.m)

    # remaining unmapped/unused vertices per label, for the optimistic bound
    g_rem = dict(gvc)
    h_rem = dict(hvc)

    gmap = [-1] * g.n
    hused = bytearray(h.n)
    mapped = []  # g vertices in mapping order
    forbidden = set()
    best = 0
    needed = lower_bound  # None means exhaustive

    def vertex_bound():
        return sum(min(c, h_rem.get(l, 0)) for l, c in g_rem.items() if c)

    def attachable():
        pairs = []
        seen = set()
        for gw in mapped:
            hw = gmap[gw]
            ha = hadj[hw]
            for gu, el in gadj[gw].items():
                if gmap[gu] >= 0:
                    continue
                lu = glab[gu]
                for hv, hel in ha.items():
                    if hel == el and not hused[hv] and hlab[hv] == lu:
                        pr = (gu, hv)
                        if pr not in seen and pr not in forbidden:
                            seen.add(pr)
                            pairs.append(pr)
        pairs.sort()
        return pairs

    def gain(gu, hv):
        cnt = 1
        ha = hadj[hv]
        for gw, el in gadj[gu].items():
            t = gmap[gw]
            if t >= 0 and ha.get(t) == el:
                cnt += 1
        return cnt

    def search(score):
        nonlocal best
        if score > best:
            best = score
        if needed is not None and best >= needed:
            return True
        limit = best if needed is None else max(best, needed - 1)
        if score + vertex_bound() + (edge_cap - (score - len(mapped))) <= limit:
            return False
        if mapped:
            pairs = attachable()
        else:
            pairs = [
                (gu, hv)
                for gu in range(g.n)
                for hv in h.label_to_vertices.get(glab[gu], ())
            ]
        if not pairs:
            return False
        added = []
        done = False
        for gu, hv in pairs:
            gl = glab[gu]
            gmap[gu] = hv
            hused[hv] = 1
            mapped.append(gu)
            g_rem[gl] -= 1
            h_rem[gl] -= 1
            if search(score + gain(gu, hv)):
                done = True
            g_rem[gl] += 1
            h_rem[gl] += 1
            mapped.pop()
            hused[hv] = 0
            gmap[gu] = -1
            if done:
                break
            forbidden.add((gu, hv))
            added.append((gu, hv))
        for pr in added:
            forbidden.discard(pr)
        return done

    search(0)
    return best
