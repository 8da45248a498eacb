# %% [markdown]
# # Best / worst decomposition size over 25 tie-breaking seeds
#
# Ties between equally scored merges are broken by a seeded random order,
# so the result varies a little from seed to seed. Compare pure
# shared-neighbour scoring w=(1,0) with the penalised w=(10,1).

# %%
import time
from powerconfluent.decomposition import ScoreWeights
from powerconfluent.graph import FIXTURES, load_fixture
from powerconfluent.pipeline import best_worst, format_table, run_seeds

# %%
for w in (ScoreWeights(1, 0), ScoreWeights(10, 1)):
    rows = []
    t0 = time.perf_counter()
    for name in FIXTURES:
        try:
            g = load_fixture(name)
        except FileNotFoundError:
            print(f"({name} not bundled, skipped)")
            continue
        best, worst = best_worst(run_seeds(g, w, range(25)))
        rows.append((name, len(g.edges), best, worst))
    print(f"\nw = ({w.w_cap:g}, {w.w_tri:g})  [{time.perf_counter() - t0:.1f}s]")
    print(format_table(rows))
