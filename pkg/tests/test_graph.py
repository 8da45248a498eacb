import pytest
from hypothesis import given, settings, strategies as st

from powerconfluent.graph import (FIXTURES, Graph, GraphParseError, GraphValidationError, complete_bipartite,
                                  largest_component, load_fixture, parse_edge_list, parse_gml, random_graph,
                                  to_edge_list, to_gml)


def test_edge_list_basic():
    g = parse_edge_list("a b\nb c")
    assert g.n == 3 and len(g.edges) == 2
    assert g.labels == ("a", "b", "c")
    assert g.edges == {(0, 1), (1, 2)}


def test_edge_list_comments_and_blank_lines():
    g = parse_edge_list("# header\n\n  x y  \n# more\ny z\n")
    assert g.n == 3 and len(g.edges) == 2


def test_edge_list_errors():
    with pytest.raises(GraphValidationError, match="self-loop"):
        parse_edge_list("a a")
    with pytest.raises(GraphValidationError, match="duplicate"):
        parse_edge_list("a b\nb a")
    with pytest.raises(GraphParseError) as err:
        parse_edge_list("a b\nc d e\n")
    assert err.value.line == 2


def test_directed_edge_list_keeps_orientation():
    g = parse_edge_list("a b\nb a", directed=True)
    assert g.edges == {(0, 1), (1, 0)}


def test_gml_basic_with_labels():
    text = 'graph [\n directed 0\n node [ id 10 label "x" ]\n node [ id 20 label "y" ]\n' \
           ' edge [ source 10 target 20 ]\n]\n'
    g = parse_gml(text)
    assert g.labels == ("x", "y") and g.edges == {(0, 1)}


@pytest.mark.parametrize("text, err", [
    ("graph [ node [ label \"x\" ] ]", GraphParseError),                      # node without id
    ("graph [ node [ id 1 ] edge [ target 1 ] ]", GraphParseError),          # edge without source
    ("graph [ edge [ source 1 target 2 ] ]", GraphValidationError),          # dangling endpoints
    ("graph [ node [ id 1 ] node [ id 2 ] ", GraphParseError),               # unbalanced bracket
    ("graph [ node [ id 1 label \"x ] ]", GraphParseError),                  # unterminated string
    ("graph [ node [ id 1 ] edge [ source 1 target 1 ] ]", GraphValidationError),
])
def test_gml_errors(text, err):
    with pytest.raises(err):
        parse_gml(text)


def test_complete_bipartite():
    assert len(complete_bipartite(2, 2).edges) == 4 and complete_bipartite(2, 2).n == 4
    assert len(complete_bipartite(1, 1).edges) == 1
    assert len(complete_bipartite(3, 4).edges) == 12
    g = complete_bipartite(2, 3)
    left = {i for i, lab in enumerate(g.labels) if lab.startswith("L")}
    assert all((u in left) != (v in left) for u, v in g.edges)
    with pytest.raises(ValueError):
        complete_bipartite(0, 3)


# edge counts of the benchmark networks
KNOWN_SIZES = {"florentine": 20, "karate": 78, "southern": 89, "dolphins": 159,
               "lesmis": 254, "football": 613, "netsci": 914}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_edge_counts(name):
    try:
        g = load_fixture(name)
    except FileNotFoundError:
        pytest.skip(f"{name} is not bundled")
    assert len(g.edges) == KNOWN_SIZES[name]


def test_k22_fixture():
    g = load_fixture("k22.txt")
    assert g.labelled_edges() == {frozenset(p) for p in [("a", "b"), ("a", "d"), ("c", "b"), ("c", "d")]}


def test_largest_component():
    g = parse_edge_list("a b\nb c\nx y\n")
    lc = largest_component(g)
    assert lc.labels == ("a", "b", "c") and len(lc.edges) == 2


graphs = st.builds(random_graph, st.integers(1, 10), st.floats(0.0, 1.0), st.integers(0, 10 ** 6), st.booleans())


def _same(a: Graph, b: Graph) -> bool:
    return a.labelled_edges() == b.labelled_edges() and a.directed == b.directed


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_round_trip_edge_list(g):
    back = parse_edge_list(to_edge_list(g), directed=g.directed)
    assert _same(g, back)


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_round_trip_gml(g):
    back = parse_gml(to_gml(g))
    assert _same(g, back) and back.n == g.n
