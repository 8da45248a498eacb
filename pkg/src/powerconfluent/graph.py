"""Input graphs: the `Graph` type, edge-list and GML ingestion, fixtures."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Optional


class GraphParseError(ValueError):
    """Raised when input text cannot be tokenized into a graph."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphValidationError(ValueError):
    """Raised when parsed input violates the simple-graph invariants."""


@dataclass(frozen=True)
class Graph:
    """A simple graph over dense integer vertex ids ``0..n-1``.

    Undirected edges are stored as ``(u, v)`` with ``u < v``; directed edges
    keep their orientation. ``labels[i]`` is the display string of vertex i.
    """

    n: int
    edges: frozenset
    labels: tuple = field(default=())
    directed: bool = False

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.n)))
        if len(self.labels) != self.n:
            raise GraphValidationError("one label per vertex required")
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphValidationError(f"edge ({u}, {v}) has an undeclared endpoint")
            if u == v:
                raise GraphValidationError(f"self-loop on vertex {self.labels[u]!r}")
            if not self.directed and u > v:
                raise GraphValidationError("undirected edges must be stored as (min, max)")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, labels=(), directed: bool = False) -> "Graph":
        """Build a graph, rejecting self-loops and duplicate edges."""
        seen = set()
        for u, v in edges:
            if u == v:
                name = labels[u] if labels else u
                raise GraphValidationError(f"self-loop on vertex {name!r}")
            e = (u, v) if directed else (min(u, v), max(u, v))
            if e in seen:
                raise GraphValidationError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen), tuple(labels), directed)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def adjacency(self) -> list:
        """Per-vertex neighbour sets (undirected) or (out, in) set pairs (directed)."""
        if self.directed:
            adj = [(set(), set()) for _ in range(self.n)]
            for u, v in self.edges:
                adj[u][0].add(v)
                adj[v][1].add(u)
            return adj
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def labelled_edges(self) -> set:
        """Edge set expressed through vertex labels, for id-independent comparison."""
        if self.directed:
            return {(self.labels[u], self.labels[v]) for u, v in self.edges}
        return {frozenset((self.labels[u], self.labels[v])) for u, v in self.edges}


class _Interner:
    def __init__(self):
        self.ids = {}
        self.labels = []

    def __call__(self, token: str) -> int:
        if token not in self.ids:
            self.ids[token] = len(self.labels)
            self.labels.append(token)
        return self.ids[token]


def parse_edge_list(text: str, directed: bool = False) -> Graph:
    """Parse whitespace-separated vertex pairs, one per line; ``#`` starts a comment."""
    intern = _Interner()
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(f"expected two vertex tokens, got {len(tokens)}", lineno)
        a, b = tokens
        if a == b:
            raise GraphValidationError(f"line {lineno}: self-loop on vertex {a!r}")
        u, v = intern(a), intern(b)
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise GraphValidationError(f"line {lineno}: duplicate edge {a} {b}")
        seen.add(key)
        edges.append(key)
    return Graph(len(intern.labels), frozenset(edges), tuple(intern.labels), directed)


_GML_TOKEN = re.compile(r'(\[)|(\])|"([^"]*)"|(")|([^\s\[\]"]+)')


def _gml_tokens(text: str):
    line, last = 1, 0
    for m in _GML_TOKEN.finditer(text):
        line += text.count("\n", last, m.start())
        last = m.start()
        open_, close, quoted, stray, bare = m.groups()
        if stray:
            raise GraphParseError("unterminated string", line)
        if open_:
            yield "[", None, line
        elif close:
            yield "]", None, line
        elif quoted is not None:
            yield "str", quoted, line
        else:
            yield "atom", bare, line


def _gml_parse_list(tokens, depth: int):
    """Parse ``key value`` pairs until a closing bracket (or end of input at depth 0)."""
    items = []
    for kind, value, line in tokens:
        if kind == "]":
            if depth == 0:
                raise GraphParseError("unbalanced ']'", line)
            return items
        if kind != "atom":
            raise GraphParseError("expected a key", line)
        key = value
        try:
            vkind, vvalue, vline = next(tokens)
        except StopIteration:
            raise GraphParseError(f"key {key!r} has no value", line) from None
        if vkind == "[":
            items.append((key, _gml_parse_list(tokens, depth + 1), vline))
        elif vkind == "]":
            raise GraphParseError(f"key {key!r} has no value", vline)
        else:
            items.append((key, vvalue, vline))
    if depth != 0:
        raise GraphParseError("unbalanced '['")
    return items


def parse_gml(text: str) -> Graph:
    """Parse the node/edge subset of GML (``id``, ``label``, ``source``, ``target``, ``directed``)."""
    top = _gml_parse_list(_gml_tokens(text), 0)
    graphs = [(v, line) for k, v, line in top if k == "graph"]
    if len(graphs) != 1 or not isinstance(graphs[0][0], list):
        raise GraphParseError("expected exactly one 'graph [ ... ]' block")
    body, _ = graphs[0]

    directed = False
    node_ids = {}
    labels = []
    raw_edges = []
    for key, value, line in body:
        if key == "directed":
            directed = str(value).strip() == "1"
        elif key == "node":
            if not isinstance(value, list):
                raise GraphParseError("node must be a list", line)
            attrs = {k: v for k, v, _ in value}
            if "id" not in attrs:
                raise GraphParseError("node without id", line)
            nid = attrs["id"]
            if nid in node_ids:
                raise GraphValidationError(f"line {line}: duplicate node id {nid}")
            node_ids[nid] = len(labels)
            labels.append(str(attrs.get("label", nid)))
        elif key == "edge":
            if not isinstance(value, list):
                raise GraphParseError("edge must be a list", line)
            attrs = {k: v for k, v, _ in value}
            for needed in ("source", "target"):
                if needed not in attrs:
                    raise GraphParseError(f"edge without {needed}", line)
            raw_edges.append((attrs["source"], attrs["target"], line))

    if len(set(labels)) != len(labels):
        # keep labels unique so they can serve as identities
        labels = [f"{lab}#{i}" if labels.count(lab) > 1 else lab for i, lab in enumerate(labels)]

    edges = []
    seen = set()
    for s, t, line in raw_edges:
        if s not in node_ids or t not in node_ids:
            raise GraphValidationError(f"line {line}: edge endpoint not declared as a node")
        u, v = node_ids[s], node_ids[t]
        if u == v:
            raise GraphValidationError(f"line {line}: self-loop on node {s}")
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise GraphValidationError(f"line {line}: duplicate edge {s} {t}")
        seen.add(key)
        edges.append(key)
    return Graph(len(labels), frozenset(edges), tuple(labels), directed)


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.labels[u]} {g.labels[v]}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + ("\n" if lines else "")


def to_gml(g: Graph) -> str:
    out = ["graph", "[", f"  directed {int(g.directed)}"]
    for i, label in enumerate(g.labels):
        out.append(f'  node [ id {i} label "{label}" ]')
    for u, v in sorted(g.edges):
        out.append(f"  edge [ source {u} target {v} ]")
    out.append("]")
    return "\n".join(out) + "\n"


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n}; left side labelled ``L0..``, right side ``R0..``."""
    if m < 1 or n < 1:
        raise ValueError("both sides of a complete bipartite graph need at least one vertex")
    labels = [f"L{i}" for i in range(m)] + [f"R{j}" for j in range(n)]
    edges = [(i, m + j) for i in range(m) for j in range(n)]
    return Graph.from_edges(m + n, edges, labels)


def random_graph(n: int, p: float, seed: int, directed: bool = False) -> Graph:
    """Erdos-Renyi G(n, p) with a seeded stdlib RNG."""
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(n) if directed else range(u + 1, n):
            if u != v and rng.random() < p:
                edges.append((u, v))
    return Graph.from_edges(n, edges, directed=directed)


# Fixture networks benchmarked in the power-graph results table.
FIXTURES = {
    "florentine": "florentine.txt",
    "karate": "karate.gml",
    "southern": "southern.txt",
    "dolphins": "dolphins.gml",
    "lesmis": "lesmis.gml",
    "football": "football.gml",
    "netsci": "netscience.gml",
}


def read_graph(path, fmt: Optional[str] = None, directed: bool = False) -> Graph:
    """Read a graph file; format is inferred from the suffix unless given."""
    path = str(path)
    if fmt is None:
        fmt = "gml" if path.endswith(".gml") else "edgelist"
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "gml":
        return parse_gml(text)
    if fmt == "edgelist":
        return parse_edge_list(text, directed=directed)
    raise ValueError(f"unknown graph format {fmt!r}")


def fixture_path(name: str):
    if name not in FIXTURES and not name.endswith((".txt", ".gml")):
        raise KeyError(f"unknown fixture {name!r}")
    return resources.files("powerconfluent") / "data" / FIXTURES.get(name, name)


def load_fixture(name: str) -> Graph:
    """Load a bundled fixture network by name (see `FIXTURES`).

    The dolphins and netscience networks are not redistributed with the
    package; dropping ``dolphins.gml`` / ``netscience.gml`` into the data
    directory enables them. A missing file raises FileNotFoundError.
    """
    path = fixture_path(name)
    if not path.is_file():
        raise FileNotFoundError(f"fixture {name!r} is not bundled (expected {path})")
    g = read_graph(path)
    if name == "netsci":
        g = largest_component(g)
    return g


def largest_component(g: Graph) -> Graph:
    """Induced subgraph on the largest connected component, ids re-densified."""
    adj = g.adjacency() if not g.directed else [a | b for a, b in g.adjacency()]
    seen = [False] * g.n
    best = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        if len(comp) > len(best):
            best = comp
    keep = sorted(best)
    remap = {old: new for new, old in enumerate(keep)}
    edges = [(remap[u], remap[v]) for u, v in g.edges if u in remap and v in remap]
    return Graph.from_edges(len(keep), edges, [g.labels[i] for i in keep], g.directed)
