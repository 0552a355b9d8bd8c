# %% [markdown]
# # Absolute zeta functions of cyclotomic forms
# When the zeta function is a product of factors (x^k - 1)^{+-1} and a power
# of x, it is an absolute automorphic form and its absolute zeta function is
# a product of multiple gamma functions.

# %%
from fractions import Fraction

from qips import absolute_zeta, check_functional_equation, epsilon_factor, mellin_Z, theorem5_expand
from qips.multiple_zeta import multiple_hurwitz_zeta
from qips.pipeline import combined_reciprocal, dk_chains, quiet_quantize, recognise

for p, q in [(Fraction(1, 2), 0), (0, Fraction(1, 2)), (Fraction(3, 10), Fraction(7, 10))]:
    coins = [quiet_quantize(c) for c in dk_chains(2, p, q, mode="exact").values()]
    out = recognise(combined_reciprocal(coins))
    print(f"(p, q) = ({p}, {q}): C={out.C} D={out.D} form={out.form} failure={out.failure}")

# %% [markdown]
# The symbolic expansion and its numerical value at the centre of the
# functional equation.

# %%
coins = [quiet_quantize(c) for c in dk_chains(2, 0, Fraction(1, 2), mode="exact").values()]
form = recognise(combined_reciprocal(coins)).form
rep = theorem5_expand(form)
s = rep.critical_s
print("zeta_f(%s) =" % s, " ".join(str(g) for g in rep.symbolic_zeta(s)))
print("value", absolute_zeta(rep, float(s)), "epsilon", epsilon_factor(rep, float(s)))
for s in (-3, -5):
    print("functional equation residual at", s, check_functional_equation(rep, s))

# %% [markdown]
# The Mellin integral of f(e^t)^-1 agrees with the multiple Hurwitz zeta
# expression.

# %%
w, s = 4, 3
direct = multiple_hurwitz_zeta(w, 11, (1, 4, 6)) - multiple_hurwitz_zeta(w, 14, (1, 4, 6))
print("Mellin", mellin_Z(form, w, s), "Hurwitz", direct)
