"""The nested Pochhammer series at z = 3 in its printed and matched forms,
next to c(r, n) times the Pade combination S_{r,n}(3).

    python demos/nested_series.py
"""
from mzvpade.calculus import expr_eval, s_expression
from mzvpade.coeffs import SERIES_MATCHED, SERIES_PRINTED
from mzvpade.numerics import eval_S_series
from mzvpade.pade import laurent_scalar, solve_p

for case in ((0, 0), (0, 1), (1, 1)):
    sol = solve_p(*case)
    c, _ = laurent_scalar(sol)
    pade = float(expr_eval(s_expression(sol), 3).mid) * float(c)
    printed = float(eval_S_series(*case, 3, variant=SERIES_PRINTED).mid)
    matched = float(eval_S_series(*case, 3, variant=SERIES_MATCHED).mid)
    print(f"{case}: printed {printed:+.15f}  matched {matched:+.15f}  c * Pade {pade:+.15f}")
