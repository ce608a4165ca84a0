"""Recompute every published numerical constant.

Each item records the published value, the recomputed one, the relation
being checked and the margin.
"""

# %%
from riemann_aux.audit import report_text, run_audit

# %%
items = run_audit()
print(report_text(items))
print(f"{sum(it.passed for it in items)}/{len(items)} items pass")

# %% [markdown]
# Items may be selected by name or wildcard.

# %%
for it in run_audit("*summand*"):
    print(it.name, it.computed_value, it.passed)
