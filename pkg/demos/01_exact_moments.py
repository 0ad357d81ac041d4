"""
Exact perimeter moments
=======================

The perimeter of an n-letter word decomposes as P = Q + x0 + x_m + 2n, so
its moments follow from the letter model alone.  Everything below is exact
rational arithmetic; decimals are printed only for readability.
"""

from fractions import Fraction

import wordperim as wp

# ---------------------------------------------------------------------------
# Uniform letters on [1, 6], words of 500 letters
# ---------------------------------------------------------------------------
model = wp.Model.uniform(6)
report = wp.moment_report(model, n=500)

print(f"model: {model.describe()}, n = {report.n} (m = {report.m} gaps)")
print(f"  E(P)        = {report.mean_P}  =  {float(report.mean_P):.6f}")
print(f"  E(R)        = {report.mean_R}  (vertical part, P - 2n)")
print(f"  E(Q)        = {report.mean_Q}  (gap sum, m*M)")
print(f"  Var(P)      = {report.var_P}  =  {float(report.var_P):.6f}")
print(f"  mu3 (dom.)  = {report.mu3_dominant}  =  {float(report.mu3_dominant):.6f}")
print(f"  V*          = {report.vstar}, sigma = {report.sigma:.12f}")

# The mean and variance are each computed twice internally (closed form and
# cross-moment assembly) and must agree exactly; a disagreement raises.

# ---------------------------------------------------------------------------
# Geometric letters, p = 1/2
# ---------------------------------------------------------------------------
geo = wp.Model.geometric(Fraction(1, 2))
rep = wp.moment_report(geo, n=10)
print(f"\nmodel: {geo.describe()}, n = {rep.n}")
print(f"  E(P)        = {rep.mean_P}  =  {float(rep.mean_P):.6f}")
print(f"  Var(P)      = {rep.var_P}  =  {float(rep.var_P):.6f}")
print(f"  V*          = {rep.vstar}  =  {float(rep.vstar):.6f}")

# Degenerate sanity check: k = 1 words are constant, so P = 2n + 2 always.
one = wp.moment_report(wp.Model.uniform(1), n=10)
assert one.mean_P == 22 and one.var_P == 0
print("\nuniform[1,1], n=10: P is deterministic,", one.mean_P)
