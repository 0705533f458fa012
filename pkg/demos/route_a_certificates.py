"""Exact zeta-value certificates for J_{2r+3,n}, checked against the
very-well-poised series and a seeded QMC estimate of the cube integral.

    python demos/route_a_certificates.py
"""
from mzvpade.vasilyev import compute_J

print(f"{'(r,n)':>6}  {'certificate':<48} {'route A':>14} {'A/B':>8} {'law':>5}  QMC")
for r in range(2):
    for n in range(3):
        rep = compute_J(r, n, mc=True, seed=11, points=2**18)
        qmc = f"{rep.mc_value.mean:.6g} +- {rep.mc_value.stderr:.1g}"
        print(f"({r},{n}):  {str(rep.combination):<48} {float(rep.pade_value.mid):>14.8g} "
              f"{float(rep.ratio.mid):>8.4g} {str(rep.expected_ratio):>5}  {qmc}")

print("\nA/B is not constant in n; it follows 2 (n!)^(2r+4) / (n!)^2.")
