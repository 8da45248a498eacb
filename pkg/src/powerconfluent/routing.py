"""Routing graphs: the power-group tree with directed edges plus power edges.

Tree edges point from a group's junction towards its members. Power edges
are kept in a separate set and are never followed by the tree traversals,
which is what keeps every spline path on exactly one power edge.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

import networkx as nx

from .decomposition import IN, OUT, Hierarchy
from .graph import Graph

LEAF = "leaf"
JUNCTION = "junction"


@dataclass
class RoutingGraph:
    """Leaf and junction nodes with directed tree edges and power edges.

    In undirected mode tree edges run parent -> child and a power edge
    ``(i, j)`` (``i < j``) is entered from both ends. In directed mode every
    edge points along the flow: leaves feed "up" junctions, "down" junctions
    feed leaves, and a power edge runs from an up side to a down side.
    """

    nodes: dict = field(default_factory=dict)
    tree_edges: set = field(default_factory=set)
    power_edges: set = field(default_factory=set)
    split_map: dict = field(default_factory=dict)
    double_map: dict = field(default_factory=dict)
    origin: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)
    directed: bool = False

    def leaves(self) -> list:
        return sorted(v for v, kind in self.nodes.items() if kind == LEAF)

    def junctions(self) -> list:
        return sorted(v for v, kind in self.nodes.items() if kind == JUNCTION)

    def successors(self) -> dict:
        succ = {v: [] for v in self.nodes}
        for a, b in sorted(self.tree_edges):
            succ[a].append(b)
        return succ

    def predecessors(self) -> dict:
        pred = {v: [] for v in self.nodes}
        for a, b in sorted(self.tree_edges):
            pred[b].append(a)
        return pred

    def edge_lengths(self, default: float = 1.0, split: float = 0.25) -> dict:
        """Target layout length per edge; in/out halves of a split junction get ``split``."""
        short = {(a, b) for a, b in self.split_map.values()}
        lengths = {}
        for e in sorted(self.tree_edges):
            lengths[e] = split if e in short else default
        for e in sorted(self.power_edges):
            lengths[e] = default
        return lengths

    def _new_id(self) -> int:
        return max(self.nodes) + 1 if self.nodes else 0

    def to_dict(self) -> dict:
        return {
            "directed": self.directed,
            "nodes": [{"id": v, "kind": self.nodes[v], "module": self.origin.get(v, v),
                       **({"label": self.labels[v]} if v in self.labels else {})}
                      for v in sorted(self.nodes)],
            "tree_edges": [list(e) for e in sorted(self.tree_edges)],
            "power_edges": [list(e) for e in sorted(self.power_edges)],
            "split_map": {str(k): list(v) for k, v in sorted(self.split_map.items())},
            "double_map": {str(k): list(v) for k, v in sorted(self.double_map.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RoutingGraph":
        r = cls(directed=data.get("directed", False))
        for node in data["nodes"]:
            r.nodes[node["id"]] = node["kind"]
            r.origin[node["id"]] = node.get("module", node["id"])
            if "label" in node:
                r.labels[node["id"]] = node["label"]
        r.tree_edges = {tuple(e) for e in data["tree_edges"]}
        r.power_edges = {tuple(e) for e in data["power_edges"]}
        r.split_map = {int(k): tuple(v) for k, v in data.get("split_map", {}).items()}
        r.double_map = {int(k): tuple(v) for k, v in data.get("double_map", {}).items()}
        return r


@dataclass(frozen=True)
class SplinePath:
    control_ids: tuple
    power_edge: tuple

    @property
    def endpoints(self) -> tuple:
        return self.control_ids[0], self.control_ids[-1]


def build_routing_graph(h: Hierarchy) -> RoutingGraph:
    """One node per module (root dropped); tree edges parent -> child; power edges as is."""
    if h.directed:
        return directed_routing(h)
    r = RoutingGraph()
    for mid, mod in h.modules.items():
        if mid == h.root:
            continue
        r.nodes[mid] = LEAF if mod.is_leaf else JUNCTION
        r.origin[mid] = mid
        if mod.is_leaf:
            r.labels[mid] = h.labels[mid]
        for ch in mod.children:
            r.tree_edges.add((mid, ch))
    r.power_edges = set(h.power_edges())
    return r


def directed_routing(h: Hierarchy) -> RoutingGraph:
    """Routing graph whose every edge is used in a single flow direction.

    A group gets an "up" junction when it or an ancestor has an outgoing
    power edge (its members' edges leave through it) and a "down" junction
    when it or an ancestor has an incoming one. Groups needing both are
    doubled; ``double_map[module] = (down_id, up_id)``.
    """
    if not h.directed:
        raise ValueError("directed_routing needs a hierarchy built from a directed graph")
    r = RoutingGraph(directed=True)
    has_up, has_down = {}, {}

    def visit(mid: int, up: bool, down: bool) -> None:
        mod = h.modules[mid]
        if mid != h.root:
            up = up or bool(mod.nbrs[OUT])
            down = down or bool(mod.nbrs[IN])
            has_up[mid], has_down[mid] = up, down
        for ch in mod.children:
            visit(ch, up, down)

    visit(h.root, False, False)

    up_id, down_id = {}, {}
    next_id = max(h.modules) + 1
    for mid in sorted(has_up):
        mod = h.modules[mid]
        r.origin[mid] = mid
        if mod.is_leaf:
            r.nodes[mid] = LEAF
            r.labels[mid] = h.labels[mid]
            up_id[mid] = down_id[mid] = mid
            continue
        if has_down[mid]:
            down_id[mid] = mid
            r.nodes[mid] = JUNCTION
        if has_up[mid]:
            if has_down[mid]:
                up_id[mid] = next_id
                r.double_map[mid] = (mid, next_id)
                next_id += 1
            else:
                up_id[mid] = mid
            r.nodes[up_id[mid]] = JUNCTION
            r.origin[up_id[mid]] = mid

    for mid in sorted(has_up):
        for ch in h.modules[mid].children:
            if mid in up_id:
                r.tree_edges.add((up_id[ch], up_id[mid]))
            if mid in down_id:
                r.tree_edges.add((down_id[mid], down_id[ch]))
    for a, b in h.power_edges():
        r.power_edges.add((up_id[a], down_id[b]))
    return r


def split_junctions(r: RoutingGraph) -> RoutingGraph:
    """Split junctions that bundle at least two connections on each side.

    The in-side holds incoming tree edges and power edges entering the node
    (every incident power edge when undirected); the out-side holds outgoing
    tree edges (and outgoing power edges when directed). A split junction
    keeps its id for the in-node, gains a fresh out-node, and a tree edge
    in -> out joins them.
    """
    out = copy.deepcopy(r)
    pred, succ = r.predecessors(), r.successors()
    power_in = {v: 0 for v in r.nodes}
    power_out = {v: [] for v in r.nodes}
    for i, j in sorted(r.power_edges):
        if r.directed:
            power_out[i].append((i, j))
            power_in[j] += 1
        else:
            power_in[i] += 1
            power_in[j] += 1

    next_id = r._new_id()
    for v in r.junctions():
        n_in = len(pred[v]) + power_in[v]
        n_out = len(succ[v]) + len(power_out[v])
        if n_in < 2 or n_out < 2:
            continue
        v_out = next_id
        next_id += 1
        out.nodes[v_out] = JUNCTION
        out.origin[v_out] = r.origin.get(v, v)
        for c in succ[v]:
            out.tree_edges.discard((v, c))
            out.tree_edges.add((v_out, c))
        for _, j in power_out[v]:
            out.power_edges.discard((v, j))
            out.power_edges.add((v_out, j))
        out.tree_edges.add((v, v_out))
        out.split_map[v] = (v, v_out)

    return out


def _paths_to_leaves(start, step: dict, nodes: dict) -> list:
    if nodes[start] == LEAF:
        return [(start,)]
    paths = []
    stack = [(start,)]
    while stack:
        path = stack.pop()
        for nxt in reversed(step[path[-1]]):
            if nodes[nxt] == LEAF:
                paths.append(path + (nxt,))
            else:
                stack.append(path + (nxt,))
    return paths


def enumerate_spline_paths(r: RoutingGraph) -> list:
    """Control-point sequences, one per adjacency, each crossing a single power edge.

    For a power edge ``(i, j)`` every leaf-to-``i`` tree path is joined to
    every ``j``-to-leaf tree path.
    """
    succ = r.successors()
    upward = r.predecessors() if r.directed else succ
    result = []
    for i, j in sorted(r.power_edges):
        heads = [tuple(reversed(p)) for p in _paths_to_leaves(i, upward, r.nodes)]
        tails = _paths_to_leaves(j, succ, r.nodes)
        for a in heads:
            for b in tails:
                result.append(SplinePath(a + b, (i, j)))
    return result


def recover_graph(r: RoutingGraph, paths=None) -> Graph:
    """Rebuild the input graph from the endpoints of all spline paths."""
    if paths is None:
        paths = enumerate_spline_paths(r)
    leaves = r.leaves()
    if leaves != list(range(len(leaves))):
        raise ValueError("leaf ids must be the dense vertex ids 0..n-1")
    labels = [r.labels.get(v, str(v)) for v in leaves]
    edges = [p.endpoints for p in paths]
    return Graph.from_edges(len(leaves), edges, labels, r.directed)


def contracted_graph(r: RoutingGraph) -> nx.Graph:
    """Undirected union of tree and power edges with split halves merged."""
    merge_to = {v_out: v for v, (_, v_out) in r.split_map.items()}
    g = nx.Graph()
    g.add_nodes_from(merge_to.get(v, v) for v in r.nodes)
    for a, b in list(r.tree_edges) + list(r.power_edges):
        a, b = merge_to.get(a, a), merge_to.get(b, b)
        if a != b:
            g.add_edge(a, b)
    return g


def is_planar(r: RoutingGraph) -> bool:
    """Planarity of the routing graph; a planar one admits a power-confluent drawing."""
    planar, _ = nx.check_planarity(contracted_graph(r))
    return planar


def route(h: Hierarchy, split: bool = True) -> RoutingGraph:
    r = build_routing_graph(h)
    return split_junctions(r) if split else r
