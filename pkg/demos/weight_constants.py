"""The closed-form weight functions against their own moments.

If w represents Li(1/z) = int_0^1 w(x) / (z - x) dx, then expanding 1/(z - x)
forces int_0^1 x^m w(x) dx to equal the (m+1)-th Taylor coefficient. The F2
weight at k = 1 misses a constant zeta(2); the Stieltjes identity built from
these weights therefore holds for r = 0 and breaks once r >= 1.

    python demos/weight_constants.py      (about a minute)
"""
import math

from mzvpade.numerics import WeightFamily, stieltjes_check, weight_moment_defect
from mzvpade.pade import solve_p

z2 = math.pi ** 2 / 6
for fam in (WeightFamily("F1", 1), WeightFamily("F2", 0), WeightFamily("F2", 1)):
    d = weight_moment_defect(fam, moments=3)
    print(f"{fam.family} k={fam.k}: moment defects {[f'{x:+.6f}' for x in d]}")
print(f"zeta(2) * (1, 1/2, 1/3) = {[f'{z2 / m:+.6f}' for m in (1, 2, 3)]}\n")

for case in ((0, 0), (0, 1), (1, 1)):
    rep = stieltjes_check(solve_p(*case), 3)
    print(f"Stieltjes {case} at z = 3: |lhs - rhs| = {rep.difference:.2e}")
