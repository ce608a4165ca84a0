"""Region membership, bounds and verdicts.

Labels the zero-free regions, evaluates the certified bounds for |R|
and |U|, and emits a CSV grid for plotting elsewhere.
"""

# %%
from riemann_aux.expansion import eta_frame
from riemann_aux.regions import bound_remainder, bound_U, classify, zero_free_verdict

# %%
for s in (-20000 + 100j, -11098 + 2j, 0.4 + 1000j, -4 + 0j):
    v = zero_free_verdict(s)
    print(f"{s}: labels={sorted(classify(s))} verdict={v.verdict}")

# %% [markdown]
# Bounds on |R| and |U| (computed in log space).

# %%
frame = eta_frame(-20000 + 100j)
print("remainder bound:", bound_remainder(frame))
cert = bound_U(frame)
print("U bound:", cert.u_bound, "min branch:", cert.min_branch)

# %% [markdown]
# A label grid as CSV text.

# %%
import subprocess, sys

out = subprocess.run(
    [sys.executable, "-m", "riemann_aux.cli", "region", "--grid", "sigma=-30000:0:10000", "t=0:3000:1000"],
    capture_output=True, text=True,
).stdout
print(out)
