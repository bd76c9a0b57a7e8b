"""Mesh refinement: raw generator norms blow up, surrogate norms do not.

Doubling the grid of a periodic diffusion stencil quadruples its 1-norm,
which is how a finite program emulates an unbounded generator.  The shifted
logarithm a_n = Log(U_n + kappa I) stays inside a fixed band across the
whole family, and the shifted product identity keeps a flat residual, while
the plain order-2 combination of the raw generators degrades with n.
"""

from shiftlog import DiscretizedFamily, refinement_sweep
from shiftlog.unbounded import semigroup_residual

family = DiscretizedFamily("diffusion", (8, 16, 32, 64), viscosity=0.01)
report = refinement_sweep(family, t=0.1, s=0.0)

print("diffusion family, viscosity 0.01, interval [0, 0.1]\n")
header = f"{'n':>4} {'||A_n||':>10} {'ratio':>7} {'||a_n||':>9} {'kappa':>7} " \
         f"{'naive BCH':>11} {'shifted':>10} {'recovery':>10}"
print(header)
for r in report.rows:
    print(f"{r.n:4d} {r.norm_A:10.2f} {r.norm_A_ratio:7.1f} {r.norm_a:9.4f} "
          f"{r.kappa:7.3f} {r.residual_naive:11.3e} "
          f"{r.residual_shifted_bch:10.3e} {r.residual_recovery:10.3e}")

print(f"\nlog-log slope of ||A_n|| vs n: {report.norm_slope():.3f}  "
      f"(2 = second-difference stencil)")
print(f"band ratio max/min of ||a_n||: {report.band_ratio():.4f}")
print("semigroup residuals at the calibrated step counts:")
for n in family.dims:
    print(f"  n = {n:3d}: {semigroup_residual(family, n, 0.1, 0.0):.3e}")

print("""
reading the table: the raw norms grow like n^2 and the order-2 combination
of the raw generators (naive BCH column) drifts upward with n, while the
surrogate norms and the shifted-identity residual are flat.  the recovery
column degrades for large n because I - kappa e^{-a} approaches singularity
as the smallest eigenvalue of U_n decays; that conditioning loss is the
price of inverting the regularization, and it is reported, not hidden.""")
