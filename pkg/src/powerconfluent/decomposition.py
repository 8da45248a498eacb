"""Greedy power-graph decomposition.

Every vertex starts as a leaf module whose neighbour set is its adjacency.
Top-level module pairs are merged greedily by the score

    kappa(m, n) = w_cap * |N(m) & N(n)| - w_tri * |N(m) ^ N(n)|

until no pair shares a neighbour. In directed mode each module carries an
outgoing and an incoming neighbour set, and both terms sum over the two.

Neighbour sets are stored per "channel": one channel for undirected graphs,
two (out, in) for directed ones. ``MIRROR[c]`` is the channel holding the
reverse link, so ``x in N_c(m)`` iff ``m in N_{MIRROR[c]}(x)``.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .graph import Graph

OUT, IN = 0, 1
_MIRROR = {1: (0,), 2: (IN, OUT)}


class InvariantError(RuntimeError):
    """A hierarchy failed one of its structural invariants."""


@dataclass(frozen=True)
class ScoreWeights:
    w_cap: float = 10.0
    w_tri: float = 1.0

    def __post_init__(self):
        if not self.w_cap > 0:
            raise ValueError("w_cap must be positive")
        if self.w_tri < 0:
            raise ValueError("w_tri must be non-negative")


@dataclass
class PowerModule:
    id: int
    children: set = field(default_factory=set)
    nbrs: tuple = (set(),)
    is_leaf: bool = False

    @property
    def neighbours(self) -> set:
        """Undirected neighbour set (or the union of both channels when directed)."""
        if len(self.nbrs) == 1:
            return self.nbrs[0]
        return self.nbrs[OUT] | self.nbrs[IN]

    @property
    def out(self) -> set:
        return self.nbrs[OUT]

    @property
    def inc(self) -> set:
        return self.nbrs[IN]


def kappa_intersection(m: PowerModule, n: PowerModule) -> int:
    """Number of edges a merge of ``m`` and ``n`` eliminates."""
    return sum(len(a & b) for a, b in zip(m.nbrs, n.nbrs))


def kappa_symdiff(m: PowerModule, n: PowerModule) -> int:
    """Number of neighbour links the pair does not share."""
    return sum(len(a ^ b) for a, b in zip(m.nbrs, n.nbrs))


def combine_score(cap: int, tri: int, w: ScoreWeights) -> float:
    penalty = 0.0 if tri == 0 else w.w_tri * tri
    return w.w_cap * cap - penalty


def kappa_score(m: PowerModule, n: PowerModule, w: ScoreWeights) -> float:
    return combine_score(kappa_intersection(m, n), kappa_symdiff(m, n), w)


class Hierarchy:
    """The module tree produced by `decompose`.

    Modules ``0..n_vertices-1`` are the leaves and share ids with the graph's
    vertices. ``root`` is a bookkeeping super-module whose children are the
    current top-level modules; it never has neighbours.
    """

    def __init__(self, n_vertices: int, directed: bool = False, labels=()):
        self.directed = directed
        self.channels = 2 if directed else 1
        self.n_vertices = n_vertices
        self.labels = tuple(labels) if labels else tuple(str(i) for i in range(n_vertices))
        self.modules: dict = {}
        self.parent: dict = {}
        for v in range(n_vertices):
            self.modules[v] = PowerModule(v, set(), self._empty(), True)
        self.root = n_vertices
        self.modules[self.root] = PowerModule(self.root, set(range(n_vertices)), self._empty())
        for v in range(n_vertices):
            self.parent[v] = self.root
        self._next_id = n_vertices + 1

    def _empty(self) -> tuple:
        return tuple(set() for _ in range(self.channels))

    @classmethod
    def from_graph(cls, g: Graph) -> "Hierarchy":
        h = cls(g.n, g.directed, g.labels)
        for u, v in g.edges:
            h.link(u, v)
        return h

    # -- structure ---------------------------------------------------------

    def new_module(self) -> PowerModule:
        mod = PowerModule(self._next_id, set(), self._empty())
        self.modules[mod.id] = mod
        self._next_id += 1
        return mod

    def link(self, a: int, b: int) -> None:
        """Add a power edge a-b (a -> b when directed)."""
        ma, mb = self.modules[a], self.modules[b]
        ma.nbrs[0 if self.channels == 1 else OUT].add(b)
        mb.nbrs[0 if self.channels == 1 else IN].add(a)

    def adopt(self, parent: int, child: int) -> None:
        old = self.parent.get(child)
        if old is not None:
            self.modules[old].children.discard(child)
        self.modules[parent].children.add(child)
        self.parent[child] = parent

    @property
    def top_level(self) -> set:
        return self.modules[self.root].children

    def is_top(self, mid: int) -> bool:
        return self.parent.get(mid) == self.root

    def leaves(self, mid: int) -> list:
        out, stack = [], [mid]
        while stack:
            cur = stack.pop()
            mod = self.modules[cur]
            if mod.is_leaf:
                out.append(cur)
            stack.extend(mod.children)
        return out

    def groups(self) -> list:
        return sorted(m for m, mod in self.modules.items() if not mod.is_leaf and m != self.root)

    def power_edges(self) -> Iterator[tuple]:
        """Yield each power edge once: ``(m, n)`` with ``m < n``, or ``(src, dst)`` when directed."""
        for mid in sorted(self.modules):
            mod = self.modules[mid]
            if self.directed:
                for n in sorted(mod.out):
                    yield mid, n
            else:
                for n in sorted(mod.nbrs[0]):
                    if mid < n:
                        yield mid, n

    def expand(self) -> list:
        """Expand every power edge into its biclique of leaf edges (duplicates kept)."""
        edges = []
        for a, b in self.power_edges():
            la, lb = self.leaves(a), self.leaves(b)
            for u in la:
                for v in lb:
                    edges.append((u, v) if self.directed else (min(u, v), max(u, v)))
        return edges

    def stats(self) -> tuple:
        return stats(self)

    def check(self, g: Optional[Graph] = None) -> None:
        """Raise InvariantError if the tree, symmetry or edge-cover invariants fail."""
        mirror = _MIRROR[self.channels]
        for mid, mod in self.modules.items():
            if mod.is_leaf and mod.children:
                raise InvariantError(f"leaf {mid} has children")
            for c in range(self.channels):
                if mid in mod.nbrs[c]:
                    raise InvariantError(f"module {mid} neighbours itself")
                for x in mod.nbrs[c]:
                    if mid not in self.modules[x].nbrs[mirror[c]]:
                        raise InvariantError(f"asymmetric link {mid}-{x}")
            for ch in mod.children:
                if self.parent.get(ch) != mid:
                    raise InvariantError(f"parent link of {ch} disagrees with children of {mid}")
        if any(self.modules[self.root].nbrs):
            raise InvariantError("root must not have neighbours")
        seen = self.leaves(self.root)
        if sorted(seen) != list(range(self.n_vertices)):
            raise InvariantError("leaf sets of sibling modules overlap or miss vertices")
        if g is not None:
            expanded = self.expand()
            if len(expanded) != len(set(expanded)) or set(expanded) != set(g.edges):
                raise InvariantError("power edges do not cover the input edges exactly once")

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        mods = []
        for mid in sorted(self.modules):
            mod = self.modules[mid]
            entry = {"id": mid, "leaf": mod.is_leaf, "children": sorted(mod.children)}
            if self.directed:
                entry["out"] = sorted(mod.out)
                entry["in"] = sorted(mod.inc)
            else:
                entry["neighbours"] = sorted(mod.nbrs[0])
            if mod.is_leaf:
                entry["label"] = self.labels[mid]
            mods.append(entry)
        return {"directed": self.directed, "n_vertices": self.n_vertices, "root": self.root, "modules": mods}

    @classmethod
    def from_dict(cls, data: dict) -> "Hierarchy":
        n = data["n_vertices"]
        labels = [None] * n
        for entry in data["modules"]:
            if entry.get("leaf"):
                labels[entry["id"]] = entry.get("label", str(entry["id"]))
        h = cls(n, data.get("directed", False), labels)
        h.modules.clear()
        h.parent.clear()
        h.root = data["root"]
        for entry in data["modules"]:
            mod = PowerModule(entry["id"], set(entry["children"]), h._empty(), entry.get("leaf", False))
            if h.directed:
                mod.nbrs[OUT].update(entry.get("out", ()))
                mod.nbrs[IN].update(entry.get("in", ()))
            else:
                mod.nbrs[0].update(entry.get("neighbours", ()))
            h.modules[mod.id] = mod
        for mid, mod in h.modules.items():
            for ch in mod.children:
                h.parent[ch] = mid
        h._next_id = max(h.modules) + 1
        return h


def stats(h: Hierarchy) -> tuple:
    """``(power edge count |P|, power group count |G|)``."""
    n_edges = sum(1 for _ in h.power_edges())
    return n_edges, len(h.groups())


def _absorbable(h: Hierarchy, m: PowerModule, n: PowerModule) -> bool:
    return not m.is_leaf and all(a <= b for a, b in zip(m.nbrs, n.nbrs))


def merge(h: Hierarchy, m: int, n: int) -> int:
    """Merge top-level modules ``m`` and ``n``; return the resulting top-level module id.

    Shared neighbours move to a common parent. A module whose neighbours are
    all shared, and which is not a leaf, is absorbed instead of being nested.
    """
    if m == n:
        raise ValueError("cannot merge a module with itself")
    if not (h.is_top(m) and h.is_top(n)):
        raise ValueError("only top-level modules can be merged")
    mirror = _MIRROR[h.channels]
    mm, mn = h.modules[m], h.modules[n]
    shared = [a & b for a, b in zip(mm.nbrs, mn.nbrs)]
    absorb_m = _absorbable(h, mm, mn)
    absorb_n = _absorbable(h, mn, mm)

    if not absorb_m and not absorb_n:
        p = h.new_module()
        h.adopt(h.root, p.id)
        h.adopt(p.id, m)
        h.adopt(p.id, n)
        for c, common in enumerate(shared):
            p.nbrs[c].update(common)
            mm.nbrs[c].difference_update(common)
            mn.nbrs[c].difference_update(common)
            for x in common:
                back = h.modules[x].nbrs[mirror[c]]
                back.discard(m)
                back.discard(n)
                back.add(p.id)
        for child in (m, n):
            _dissolve_if_empty(h, child)
        return p.id

    if absorb_m and absorb_n:
        keep, gone = m, n
        for ch in list(h.modules[gone].children):
            h.adopt(keep, ch)
        for c, common in enumerate(shared):
            for x in common:
                h.modules[x].nbrs[mirror[c]].discard(gone)
        h.modules[h.root].children.discard(gone)
        del h.parent[gone]
        del h.modules[gone]
        return keep

    # exactly one side can be absorbed: it adopts the other
    host, guest = (m, n) if absorb_m else (n, m)
    h.adopt(host, guest)
    mg = h.modules[guest]
    for c, common in enumerate(shared):
        mg.nbrs[c].difference_update(common)
        for x in common:
            h.modules[x].nbrs[mirror[c]].discard(guest)
    return host


def _dissolve_if_empty(h: Hierarchy, mid: int) -> None:
    """Fold a non-leaf module with no neighbours into its parent."""
    mod = h.modules[mid]
    if mod.is_leaf or any(mod.nbrs):
        return
    parent = h.parent[mid]
    for ch in list(mod.children):
        h.adopt(parent, ch)
    h.modules[parent].children.discard(mid)
    del h.parent[mid]
    del h.modules[mid]


class _Scorer:
    """Tracks scores of top-level pairs that share at least one neighbour."""

    def __init__(self, h: Hierarchy, w: ScoreWeights, rng: random.Random):
        self.h = h
        self.w = w
        self.rng = rng
        self.rank: dict = {}
        self.scores: dict = {}
        self.partners: dict = {}
        self.heap: list = []
        self.mirror = _MIRROR[h.channels]

    def assign_rank(self, mid: int) -> None:
        self.rank[mid] = self.rng.random()

    def order(self, a: int, b: int) -> tuple:
        ra, rb = self.rank[a], self.rank[b]
        return (ra, rb, a, b) if (ra, a) < (rb, b) else (rb, ra, b, a)

    def candidates(self, a: int) -> set:
        h = self.h
        mod = h.modules[a]
        found = set()
        for c in range(h.channels):
            back = self.mirror[c]
            for x in mod.nbrs[c]:
                found.update(h.modules[x].nbrs[back])
        found.discard(a)
        top = h.top_level
        return {b for b in found if b in top}

    def score(self, a: int, b: int):
        ma, mb = self.h.modules[a], self.h.modules[b]
        cap = kappa_intersection(ma, mb)
        if cap == 0:
            return None
        value = combine_score(cap, kappa_symdiff(ma, mb), self.w)
        if value == -math.inf:
            return None
        return value

    def drop(self, a: int) -> None:
        for b in self.partners.pop(a, ()):
            self.partners[b].discard(a)
            self.scores.pop((min(a, b), max(a, b)), None)

    def refresh(self, a: int) -> None:
        self.drop(a)
        if not self.h.is_top(a):
            return
        mine = self.partners.setdefault(a, set())
        for b in self.candidates(a):
            value = self.score(a, b)
            if value is None:
                continue
            key = (min(a, b), max(a, b))
            self.scores[key] = value
            mine.add(b)
            self.partners.setdefault(b, set()).add(a)
            heapq.heappush(self.heap, (-value, self.order(a, b), key))

    def pop_best(self):
        while self.heap:
            neg, _, key = heapq.heappop(self.heap)
            if self.scores.get(key) == -neg:
                return key
        return None

    def best_full_scan(self):
        """Reference selection: score every top-level pair from scratch."""
        best = None
        for a in self.h.top_level:
            for b in self.candidates(a):
                if a < b:
                    value = self.score(a, b)
                    if value is None:
                        continue
                    entry = (-value, self.order(a, b), (a, b))
                    if best is None or entry < best:
                        best = entry
        return None if best is None else best[2]


def decompose(g: Graph, w: ScoreWeights = ScoreWeights(), seed: int = 0,
              incremental: bool = True) -> Hierarchy:
    """Greedily compress ``g`` into a power-graph hierarchy.

    Each step merges the top-level pair with the highest score among pairs
    that share a neighbour; ties go to the pair that comes first in a
    seeded pseudorandom order. ``incremental=False`` rescans every pair at
    each step, which selects the same merges.
    """
    h = Hierarchy.from_graph(g)
    rng = random.Random(seed)
    scorer = _Scorer(h, w, rng)
    for v in range(g.n):
        scorer.assign_rank(v)
    if incremental:
        for v in range(g.n):
            scorer.refresh(v)

    while True:
        best = scorer.pop_best() if incremental else scorer.best_full_scan()
        if best is None:
            break
        m, n = best
        touched = {m, n}
        for c in range(h.channels):
            touched |= h.modules[m].nbrs[c] & h.modules[n].nbrs[c]
        before = set(h.modules)
        result = merge(h, m, n)
        for mid in set(h.modules) - before:
            scorer.assign_rank(mid)
        touched.add(result)
        if incremental:
            for mid in touched:
                if mid in h.modules:
                    scorer.refresh(mid)
                else:
                    scorer.drop(mid)
    return h
