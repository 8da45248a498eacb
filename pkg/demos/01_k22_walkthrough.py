# %% [markdown]
# # From a graph to a power-confluent drawing, one step at a time
#
# K2,2 is the smallest graph where bundling pays off: four edges collapse
# into a single power edge between two groups.

# %%
from powerconfluent import graph, decomposition, routing, spline
from powerconfluent.layout import layout
from powerconfluent.pipeline import DrawConfig, draw_graph
from powerconfluent.render import render_svg

g = graph.load_fixture("k22.txt")
print("vertices", g.labels, "edges", sorted(g.edges))

# %% [markdown]
# Greedy merging: score = 10 * shared neighbours - 1 * non-shared neighbours.

# %%
h = decomposition.decompose(g, decomposition.ScoreWeights(10, 1), seed=0)
print("power edges, groups:", h.stats())
for m in h.groups():
    print("group", m, "->", sorted(g.labels[v] for v in h.leaves(m)))

# %% [markdown]
# The routing graph adds one junction per group; spline control points are
# paths through it that cross exactly one power edge.

# %%
r = routing.route(h)
paths = routing.enumerate_spline_paths(r)
for p in paths:
    print(p.control_ids, "via power edge", p.power_edge)
assert routing.recover_graph(r, paths).edges == g.edges

# %% [markdown]
# Lay out the routing graph (junctions included), then fit a quadratic
# B-spline through each path's node positions.

# %%
pos = layout(r)
for p in paths:
    s = spline.spline_for_path([pos[v] for v in p.control_ids], 2)
    print(p.endpoints, "knots", s.knots.tolist())

# %%
d, _ = draw_graph(g, DrawConfig(seed=0))
print(d.stats.to_dict())
with open("k22.svg", "w") as fh:
    fh.write(render_svg(d, debug_overlay=True))
print("wrote k22.svg")
