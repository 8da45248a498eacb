# %% [markdown]
# # How many crossings does bundling remove?
#
# Same stress layout engine for both drawings: the power-confluent one
# lays out the routing graph (leaves + junctions), the baseline lays out
# the raw graph and draws straight segments.

# %%
from pathlib import Path
from powerconfluent.decomposition import ScoreWeights
from powerconfluent.graph import load_fixture
from powerconfluent.pipeline import DrawConfig, draw_graph, straight_line_drawing
from powerconfluent.render import count_crossings, render_svg

out = Path("drawings")
out.mkdir(exist_ok=True)
cfg = DrawConfig(weights=ScoreWeights(10, 1), seed=0)

# %%
print(f"{'network':<12}{'|E|':>6}{'bundled':>9}{'straight':>10}{'ratio':>8}")
for name in ["florentine", "karate", "southern", "lesmis", "football"]:
    g = load_fixture(name)
    d, h = draw_graph(g, cfg)
    s = straight_line_drawing(g, cfg)
    pc, sl = count_crossings(d), count_crossings(s)
    ratio = f"{pc / sl:.2f}" if sl else "-"
    print(f"{name:<12}{len(g.edges):>6}{pc:>9}{sl:>10}{ratio:>8}")
    (out / f"{name}.svg").write_text(render_svg(d))
    (out / f"{name}_straight.svg").write_text(render_svg(s))

# %% [markdown]
# florentine is the odd one out: its straight-line layout happens to be
# planar, while two bundles leaving a split junction on opposite sides
# make a curve bend back across a bundle.
