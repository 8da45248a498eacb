import json
import math
import random
import time

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from powerconfluent.decomposition import (Hierarchy, PowerModule, ScoreWeights, decompose, kappa_intersection,
                                          kappa_score, kappa_symdiff, merge, stats)
from powerconfluent.graph import Graph, complete_bipartite, load_fixture, random_graph


def mod(nbrs, out=None, inc=None, leaf=False):
    if out is not None:
        return PowerModule(0, set(), (set(out), set(inc)), leaf)
    return PowerModule(0, set(), (set(nbrs),), leaf)


def test_kappa_examples():
    m, n = mod("xyz"), mod("yzw")
    assert kappa_intersection(m, n) == 2 and kappa_symdiff(m, n) == 2
    assert kappa_intersection(mod("abc"), mod("abc")) == 3 and kappa_symdiff(mod("abc"), mod("abc")) == 0
    assert kappa_intersection(mod("ab"), mod("cde")) == 0 and kappa_symdiff(mod("ab"), mod("cde")) == 5


def test_kappa_directed_sums_both_directions():
    m = mod(None, out="xy", inc="p")
    n = mod(None, out="y", inc="pq")
    assert kappa_intersection(m, n) == 2   # y outgoing, p incoming
    assert kappa_symdiff(m, n) == 2        # x outgoing, q incoming


def test_kappa_score():
    # kappa_cap = 2, kappa_tri = 1
    m, n = mod("xyz"), mod("yz")
    assert kappa_score(m, n, ScoreWeights(10, 1)) == 19
    assert kappa_score(m, n, ScoreWeights(10, math.inf)) == -math.inf
    assert kappa_score(mod("yz"), mod("yz"), ScoreWeights(10, math.inf)) == 20
    assert kappa_score(mod("a"), mod("b"), ScoreWeights(10, 1)) <= 0


def test_score_weights_validation():
    with pytest.raises(ValueError):
        ScoreWeights(0, 1)
    with pytest.raises(ValueError):
        ScoreWeights(1, -1)


def test_merge_two_leaves_makes_new_group():
    g = complete_bipartite(2, 2)     # L0, L1 | R0, R1
    h = Hierarchy.from_graph(g)
    p = merge(h, 0, 1)
    assert h.modules[p].children == {0, 1}
    assert h.modules[p].neighbours == {2, 3}
    assert h.modules[0].neighbours == set() and h.modules[1].neighbours == set()
    assert stats(h)[0] == 2
    h.check(g)


def test_merge_errors():
    g = complete_bipartite(2, 2)
    h = Hierarchy.from_graph(g)
    with pytest.raises(ValueError):
        merge(h, 0, 0)
    p = merge(h, 0, 1)
    with pytest.raises(ValueError):
        merge(h, 0, 2)  # 0 is no longer top level
    assert p in h.top_level


def test_small_decompositions():
    h = decompose(Graph.from_edges(2, [(0, 1)]))
    assert stats(h) == (1, 0)
    h = decompose(complete_bipartite(2, 2))
    assert stats(h) == (1, 2)
    (a, b), = h.power_edges()
    assert {frozenset(h.leaves(a)), frozenset(h.leaves(b))} == {frozenset({0, 1}), frozenset({2, 3})}


def test_disconnected_components_stay_separate():
    g = Graph.from_edges(8, [(0, 2), (0, 3), (1, 2), (1, 3), (4, 6), (4, 7), (5, 6), (5, 7)])
    h = decompose(g)
    h.check(g)
    comp = {0: 0, 1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 1, 7: 1}
    for grp in h.groups():
        assert len({comp[v] for v in h.leaves(grp)}) == 1
    assert stats(h) == (2, 4)


def random_merges(g: Graph, seed: int):
    """Merge random top-level pairs that share a neighbour, checking invariants after each."""
    rng = random.Random(seed)
    h = Hierarchy.from_graph(g)
    merges = 0
    while True:
        top = sorted(h.top_level)
        pairs = [(m, n) for i, m in enumerate(top) for n in top[i + 1:]
                 if kappa_intersection(h.modules[m], h.modules[n]) > 0]
        if not pairs:
            return h, merges
        m, n = rng.choice(pairs)
        before = stats(h)[0]
        cap = kappa_intersection(h.modules[m], h.modules[n])
        merge(h, m, n)
        merges += 1
        assert stats(h)[0] == before - cap
        # edge conservation: leaf-count products over power edges add up to |E|
        assert sum(len(h.leaves(a)) * len(h.leaves(b)) for a, b in h.power_edges()) == len(g.edges)
        h.check(g)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 11), st.sampled_from([0.2, 0.5, 0.8]), st.integers(0, 10 ** 6), st.booleans())
def test_merge_invariants_under_random_merges(n, p, seed, directed):
    g = random_graph(n, p, seed, directed)
    h, merges = random_merges(g, seed)
    assert merges <= n - 1


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.sampled_from([0.2, 0.5, 0.8]), st.integers(0, 10 ** 6), st.booleans())
def test_decompose_invariants(n, p, seed, directed):
    g = random_graph(n, p, seed, directed)
    h = decompose(g, ScoreWeights(10, 1), seed=seed)
    h.check(g)
    assert sum(len(h.leaves(a)) * len(h.leaves(b)) for a, b in h.power_edges()) == len(g.edges)
    assert stats(h)[0] <= len(g.edges)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.sampled_from([0.2, 0.5, 0.8]), st.integers(0, 10 ** 6), st.booleans(),
       st.sampled_from([(10, 1), (1, 0), (10, math.inf)]))
def test_incremental_matches_full_rescan(n, p, seed, directed, w):
    g = random_graph(n, p, seed, directed)
    w = ScoreWeights(*w)
    fast = decompose(g, w, seed=seed, incremental=True)
    slow = decompose(g, w, seed=seed, incremental=False)
    assert fast.to_dict() == slow.to_dict()


def test_determinism():
    g = load_fixture("karate")
    assert decompose(g, seed=3).to_dict() == decompose(g, seed=3).to_dict()


def test_seed_changes_tie_breaking():
    g = load_fixture("karate")
    results = {stats(decompose(g, seed=s)) for s in range(10)}
    assert len(results) > 1


def test_all_small_graphs_expand_exactly():
    """Every graph on at most 6 vertices (up to isomorphism), a few seeds each."""
    count = 0
    for atlas in nx.graph_atlas_g():
        if atlas.number_of_nodes() > 6:
            break
        if atlas.number_of_nodes() == 0:
            continue
        g = Graph.from_edges(atlas.number_of_nodes(), list(atlas.edges()))
        for seed in range(3):
            for w in (ScoreWeights(10, 1), ScoreWeights(1, 0), ScoreWeights(1, math.inf)):
                h = decompose(g, w, seed=seed)
                expanded = h.expand()
                assert sorted(expanded) == sorted(g.edges)
        count += 1
    assert count == 208


def test_modular_mode_only_merges_identical_neighbourhoods():
    g = load_fixture("karate")
    h = decompose(g, ScoreWeights(10, math.inf))
    h.check(g)
    assert stats(h)[0] <= len(g.edges)


def test_florentine_best_of_25():
    g = load_fixture("florentine")
    best = min(stats(decompose(g, ScoreWeights(10, 1), seed=s)) for s in range(25))
    assert best == (11, 4)


def test_json_round_trip():
    for directed in (False, True):
        g = random_graph(10, 0.4, 7, directed)
        h = decompose(g, seed=1)
        data = json.loads(json.dumps(h.to_dict()))
        back = Hierarchy.from_dict(data)
        back.check(g)
        assert back.to_dict() == h.to_dict()


def test_runtime_grows_polynomially():
    """Log-log slope of runtime against |V| stays under the cubic-times-edges envelope."""
    sizes = [30, 60, 120]
    times = []
    for n in sizes:
        g = random_graph(n, 0.1, 0, False)
        t0 = time.perf_counter()
        decompose(g, seed=0)
        times.append(time.perf_counter() - t0)
    slope = np.polyfit(np.log(sizes), np.log(times), 1)[0]
    # |V|^3 |E| with |E| ~ |V|^2 at fixed density gives exponent 5
    assert slope < 5.0
