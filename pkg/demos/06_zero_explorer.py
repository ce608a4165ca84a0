"""Counting and locating zeros in rectangles.

Zeros are counted with the argument principle on a grid of tiles, then
refined with Newton's method and labelled trivial or nontrivial.
"""

# %%
from riemann_aux.zeros import Rectangle, records_to_csv, refine_zero, scan_region_detailed, winding_count

# %%
print("zeros around -2:", winding_count(Rectangle(-2.5, -1.5, -0.5, 0.5)))
print(refine_zero(-4.05))

# %%
rep = scan_region_detailed(Rectangle(-9, -1, -1, 1), 0.5)
print(rep.counts)
print(records_to_csv(rep.records))

# %% [markdown]
# Far left, inside the zero-free region G, only the trivial zeros appear.
# Zeta is evaluated there through the saddle expansion.

# %%
rep = scan_region_detailed(Rectangle(-17009, -17001, -1, 1), 1.0, evaluator="expansion")
print([r.location for r in rep.records])

# %%
rect = Rectangle(-11100, -11095.5, 0.5, 3)
print("zeros in a wedge rectangle:", scan_region_detailed(rect, 1.0, evaluator="expansion").counts)
