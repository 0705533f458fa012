"""Chen-word duality on the family behind the zeta(2k+1) identities, then the
identities themselves with rigorous balls.

    python demos/duality_and_identities.py
"""
from mzvpade.exact_core import BallReal
from mzvpade.numerics import eval_polylog, eval_zeta
from mzvpade.words import ArgFrame, dual_index, format_index, dual_pair_ones, dual_pair_twos

for k in range(1, 5):
    left = dual_pair_ones(k)
    print(f"k={k}: dual of [{format_index(left)}] = [{format_index(dual_index(left))}]"
          f"  expected [{format_index(dual_pair_twos(k))}]")

print()
for k, idx in ((1, dual_pair_ones(1)), (2, dual_pair_ones(2)), (2, dual_pair_twos(2))):
    ball = eval_polylog(idx, ArgFrame.DIRECT, 1, K=10**6)
    target = BallReal.exact(2) * eval_zeta(2 * k + 1)
    print(f"Li[{format_index(idx)}](1) = {ball}   2 zeta({2 * k + 1}) = {float(target.mid):.12f}")
