"""Special functions on the whole complex plane.

log Gamma, the reflection factor chi and zeta, with values that overflow
binary64 carried as log-modulus plus phase.
"""

# %%
import math

from riemann_aux.special import chi, log_chi, log_gamma, zeta_reference

# %% [markdown]
# log Gamma continues across the negative axis without branch jumps.

# %%
for z in (0.5, 10 + 5j, -3.5 + 0.1j, 1e4 + 1e4j):
    print(f"log_gamma({z}) = {log_gamma(z):.12f}")

# %% [markdown]
# chi(s) grows like |t|^(1/2 - sigma); far to the left it is only
# representable in log form.

# %%
for s in (0.5 + 14j, -30 + 2j, -20000 + 100j):
    c = chi(s)
    print(f"s={s}: log|chi|={c.log_modulus:.6f}, arg={c.phase:.6f}")
print("log chi(-20000+100i) =", log_chi(-20000 + 100j))

# %% [markdown]
# Reference zeta, checked against a known value.

# %%
z = zeta_reference(0.5)
print(f"zeta(1/2) = {z.real:.15f}")
print("zeta(2) - pi^2/6 =", abs(zeta_reference(2.0) - math.pi**2 / 6))
