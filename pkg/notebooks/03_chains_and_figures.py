# %% [markdown]
# # Building trees from triangle chains
#
# Instead of relaxing, a tree can be assembled by hand. Put triangles on the diagonals, pick link points where the
# stems of neighbouring triangles line up, and glue the stems together. The link positions come from bisection.

# %%
from pathlib import Path

from soapsteiner import build_configuration, solve_partition, validate_chain
from soapsteiner.render import document, dumps, emit_svg
from soapsteiner.triangulation import REGISTRY, configuration_names

for name in ("cfg_a", "cfg_b", "cfg_c"):
    cfg = REGISTRY[name]
    link = next(lp.name for lp in cfg.chain.link_points if lp.free)
    print(name, link, solve_partition(cfg.chain, link), cfg.expression)

# %% [markdown]
# Each chain is checked for overlapping triangles, link placement, handedness and the 120 degree meeting condition.

# %%
for name in configuration_names():
    tree = build_configuration(name)
    print(f"{name:7} {tree.total_length:.12f}  ok={validate_chain(REGISTRY[name].chain).ok}")

# %% [markdown]
# Trees serialise to JSON and draw as SVG. The output is byte-stable, so figures can be diffed.

# %%
out = Path("figures")
out.mkdir(exist_ok=True)
for name in ("fig2b", "cfg_a", "octa_a"):
    doc = document(build_configuration(name), name)
    (out / f"{name}.json").write_text(dumps(doc))
    (out / f"{name}.svg").write_text(emit_svg(doc))
print(sorted(p.name for p in out.iterdir()))
