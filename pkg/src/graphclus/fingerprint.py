"""Hashed substructure fingerprints used to prefilter subgraph search.

A graph's fingerprint has one bit set for every canonical tree (up to a
configurable edge count) and every canonical simple cycle (up to a
configurable length) occurring in it, hashed to a fixed-length bitstring.
Because every tree/cycle of a subgraph is also one of its supergraphs, the
feature set is monotone under the subgraph relation; a pattern bit missing
from the target therefore soundly rules out an embedding.  Collisions only
ever make the filter pass, never fail, so the filter has no false negatives.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .graphs import LabeledGraph


@dataclass(frozen=True)
class FingerprintConfig:
    bits: int = 1024
    max_tree_edges: int = 4
    max_cycle_len: int = 8


class Fingerprint:
    """Fixed-length bitstring; `bits` is an int bit mask, `length` its width."""

    __slots__ = ("bits", "length")

    def __init__(self, bits: int, length: int):
        self.bits = bits
        self.length = length

    def __eq__(self, other):
        return (
            isinstance(other, Fingerprint)
            and self.bits == other.bits
            and self.length == other.length
        )

    def __repr__(self):
        return f"Fingerprint({self.length} bits, {bin(self.bits).count('1')} set)"

    def __getstate__(self):
        return (self.bits, self.length)

    def __setstate__(self, state):
        self.bits, self.length = state


def filter_pass(pattern_fp: Fingerprint, target_fp: Fingerprint) -> bool:
    """False only when the pattern has a bit the target lacks.

    A False result proves no subgraph isomorphism exists; True is
    inconclusive and must be followed by an exact test.
    """
    if pattern_fp.length != target_fp.length:
        raise ValueError(
            f"fingerprint length mismatch: {pattern_fp.length} vs {target_fp.length}"
        )
    return pattern_fp.bits & ~target_fp.bits == 0


class FingerprintBuilder:
    """Enumerates canonical tree/cycle features and hashes them to bits.

    Feature-to-bit positions are a pure function of the feature and the
    configured width, so fingerprints are reproducible across runs and
    processes.  A memo table avoids rehashing features that repeat across
    graphs of a dataset.
    """

    def __init__(self, cfg: FingerprintConfig | None = None):
        self.cfg = cfg or FingerprintConfig()
        self._bit_memo: dict = {}

    def build(self, g: LabeledGraph) -> Fingerprint:
        mask = 0
        memo = self._bit_memo
        width = self.cfg.bits
        for feat in self.features(g):
            bit = memo.get(feat)
            if bit is None:
                digest = hashlib.blake2b(repr(feat).encode(), digest_size=8).digest()
                bit = int.from_bytes(digest, "big") % width
                memo[feat] = bit
            mask |= 1 << bit
        return Fingerprint(mask, width)

    def features(self, g: LabeledGraph) -> set:
        """The canonical feature set before hashing (monotone in g)."""
        feats = set()
        for l in g.vlabel_counts:
            feats.add(("v", l))
        if self.cfg.max_tree_edges >= 1:
            for tree_edges in _tree_edge_subsets(g, self.cfg.max_tree_edges):
                feats.add(("t", _canonical_tree(g, tree_edges)))
        if self.cfg.max_cycle_len >= 3:
            for cyc in _cycles(g, self.cfg.max_cycle_len):
                feats.add(("c", _canonical_cycle(cyc)))
        return feats


def _tree_edge_subsets(g: LabeledGraph, max_edges: int):
    """Yield every connected acyclic edge subset of g (≤ max_edges) once.

    Each subset is generated exactly once: its minimal edge index is the
    start, and at every node candidates are either included or banned for
    the rest of that node's subtree.
    """
    edges = g.edges
    m = g.m
    incident = [[] for _ in range(g.n)]
    for idx, (u, v, _) in enumerate(edges):
        incident[u].append(idx)
        incident[v].append(idx)

    out = []
    for start in range(m):
        u0, v0, _ = edges[start]
        current = [start]
        in_current = {start}
        vset = {u0, v0}
        banned = set()

        def rec():
            out.append(tuple(current))
            if len(current) >= max_edges:
                return
            cands = set()
            for w in vset:
                for e in incident[w]:
                    if e > start and e not in banned and e not in in_current:
                        a, b = edges[e][0], edges[e][1]
                        if (a in vset) != (b in vset):  # cycle edges never join a tree
                            cands.add(e)
            newly_banned = []
            for e in sorted(cands):
                a, b = edges[e][0], edges[e][1]
                if (a in vset) == (b in vset):
                    continue  # may have been absorbed by a deeper inclusion
                new_v = b if a in vset else a
                current.append(e)
                in_current.add(e)
                vset.add(new_v)
                rec()
                vset.discard(new_v)
                in_current.discard(e)
                current.pop()
                banned.add(e)
                newly_banned.append(e)
            for e in newly_banned:
                banned.discard(e)

        rec()
    return out


def _canonical_tree(g: LabeledGraph, tree_edges) -> tuple:
    """Canonical form of a labeled tree: minimal rooted code over its centers."""
    adj = {}
    for e in tree_edges:
        u, v, el = g.edges[e]
        adj.setdefault(u, []).append((v, el))
        adj.setdefault(v, []).append((u, el))
    verts = sorted(adj)
    # find centers by leaf stripping
    deg = {v: len(adj[v]) for v in verts}
    remaining = set(verts)
    layer = [v for v in verts if deg[v] <= 1]
    while len(remaining) > 2:
        nxt = []
        for v in layer:
            remaining.discard(v)
        for v in layer:
            for w, _ in adj[v]:
                if w in remaining:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    centers = sorted(remaining)

    vl = g.vlabels

    def code(root, parent):
        subconfigs = sorted(
            (el, code(w, root)) for w, el in adj[root] if w != parent
        )
        return (vl[root], tuple(subconfigs))

    return min(code(c, -1) for c in centers)


def _cycles(g: LabeledGraph, max_len: int):
    """Simple cycles of length 3..max_len, once each (anchored, one direction)."""
    adj = g.adj
    cycles = []
    for a in range(g.n):
        path = [a]
        on_path = {a}

        def dfs(v):
            av = adj[v]
            if len(path) >= 3:
                el = av.get(a)
                if el is not None and path[1] < path[-1]:
                    cycles.append((tuple(path), el))
            if len(path) >= max_len:
                return
            for w in sorted(av):
                if w > a and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    dfs(w)
                    on_path.discard(w)
                    path.pop()

        dfs(a)
    # resolve to label sequences
    out = []
    for verts, close_el in cycles:
        seq = []
        for i, v in enumerate(verts):
            seq.append(g.vlabels[v])
            if i + 1 < len(verts):
                seq.append(g.adj[v][verts[i + 1]])
            else:
                seq.append(close_el)
        out.append(tuple(seq))
    return out


def _canonical_cycle(seq: tuple) -> tuple:
    """Lexicographically minimal rotation/reflection of (vlabel, elabel, ...)."""
    k = len(seq)
    best = None
    for rot in range(0, k, 2):
        cand = seq[rot:] + seq[:rot]
        if best is None or cand < best:
            best = cand
        # reflected: reverse vertex order; edge i sits between v_i and v_{i+1}
        verts = cand[0::2]
        edges = cand[1::2]
        rverts = (verts[0],) + tuple(reversed(verts[1:]))
        redges = tuple(reversed(edges))
        refl = tuple(x for pair in zip(rverts, redges) for x in pair)
        if refl < best:
            best = refl
    return best
