"""The saddle-point expansion of R(s) far in the left half-plane.

R is written as main term times (1 + U); every piece is returned so the
size of the correction can be inspected.
"""

# %%
from riemann_aux.contour import r_defining
from riemann_aux.expansion import assemble, eta_frame, leading_term

# %%
s = -40 + 60j
b = assemble(s)
print("eta =", b.frame.eta, " m =", b.frame.m)
print("|U| =", abs(b.u_value))
print("expansion:", b.r_complex)
print("integral :", r_defining(s).value)

# %% [markdown]
# The cut index may be raised without changing the total.

# %%
for k in range(b.k, b.k + 4):
    print(k, assemble(s, k).r_complex)

# %% [markdown]
# Far away the value overflows binary64 and lives in log form.

# %%
far = assemble(-20000 + 100j)
print("log|R| =", far.r_value.log_modulus, " arg R =", far.r_value.phase)
ratio = (far.r_value / leading_term(-20000 + 100j)).to_complex()
print("R / leading term =", ratio)
