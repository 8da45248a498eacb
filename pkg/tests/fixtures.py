"""Hand-built hierarchies and routing graphs for the regression tests."""

from __future__ import annotations

from powerconfluent.decomposition import Hierarchy
from powerconfluent.graph import Graph
from powerconfluent.routing import JUNCTION, LEAF, RoutingGraph

SC_LABELS = ("a", "b", "c", "d", "e", "f", "g")
SC_EDGES = [("a", "e"), ("a", "b"), ("a", "d"), ("e", "b"), ("e", "d"),
            ("b", "f"), ("b", "g"), ("f", "c"), ("f", "a"), ("g", "c"), ("g", "a")]


def short_circuit():
    """A nested power graph on which shortest-path routing picks a wrong route.

    Groups: F = {f, g} with power edges to b and to C = {c, a};
    B = {b, d} with a power edge to e; E = {e, B} with a power edge to a.
    The edge a-b must leave a through E's power edge and descend E -> B -> b.
    Legacy routing (shortest paths in the plain union of tree and power
    edges) also finds a -> C -> F -> b of the same length, which crosses two
    power edges and shares the C-F link with the c-f curve, implying a
    false c-b adjacency.

    Returns (hierarchy, graph, ids) where ids maps names to module ids.
    """
    idx = {lab: i for i, lab in enumerate(SC_LABELS)}
    g = Graph.from_edges(len(SC_LABELS), [(idx[u], idx[v]) for u, v in SC_EDGES], SC_LABELS)
    h = Hierarchy(len(SC_LABELS), labels=SC_LABELS)
    F, B, E, C = (h.new_module().id for _ in range(4))
    for child, parent in [("f", F), ("g", F), ("b", B), ("d", B), ("e", E), ("c", C), ("a", C)]:
        h.adopt(parent, idx[child])
    h.adopt(E, B)
    for top in (F, E, C):
        h.adopt(h.root, top)
    h.link(F, idx["b"])
    h.link(F, C)
    h.link(B, idx["e"])
    h.link(E, idx["a"])
    ids = dict(idx, F=F, B=B, E=E, C=C)
    return h, g, ids


def star_junction(split_sides=None):
    """One junction J bundling a, c (entering over power edges) towards b, d.

    This is the single-junction routing of K2,2 with sides {a, c} and
    {b, d}. With ``split_sides=None`` the graph is returned unsplit, ready
    for `split_junctions`. Otherwise ``split_sides = (in_leaves, out_leaves)``
    hand-splits J into J_in (keeping J's id) and J_out, attaching the given
    leaves to each half; ``(("a", "b"), ("c", "d"))`` is the wrong split.
    """
    names = ("a", "b", "c", "d")
    r = RoutingGraph()
    for i, lab in enumerate(names):
        r.nodes[i] = LEAF
        r.labels[i] = lab
        r.origin[i] = i
    J = 4
    r.nodes[J] = JUNCTION
    r.origin[J] = J
    a, b, c, d = range(4)
    if split_sides is None:
        r.power_edges = {(a, J), (c, J)}
        r.tree_edges = {(J, b), (J, d)}
        return r
    J_out = 5
    r.nodes[J_out] = JUNCTION
    r.origin[J_out] = J
    r.split_map[J] = (J, J_out)
    r.tree_edges.add((J, J_out))
    ins, outs = split_sides
    for lab in ins:
        v = names.index(lab)
        # leaves on the in-side arrive over power edges, whatever their role
        r.power_edges.add((v, J))
    for lab in outs:
        r.tree_edges.add((J_out, names.index(lab)))
    return r


def k22_with_extra():
    """K2,2 hierarchy plus a fifth vertex e joined to group A = {a, c}.

    Group A then carries two power edges and two children, so its junction
    must split.
    """
    labels = ("a", "b", "c", "d", "e")
    h = Hierarchy(5, labels=labels)
    A, B = h.new_module().id, h.new_module().id
    for child, parent in [(0, A), (2, A), (1, B), (3, B)]:
        h.adopt(parent, child)
    h.adopt(h.root, A)
    h.adopt(h.root, B)
    h.link(A, B)
    h.link(A, 4)
    edges = [(0, 1), (0, 3), (2, 1), (2, 3), (0, 4), (2, 4)]
    return h, Graph.from_edges(5, edges, labels), A
