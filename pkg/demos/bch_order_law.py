"""Order law of the product series and both flavors of the shifted identity.

For bounded X, Y the truncation of Log(e^{tX} e^{tY}) after the order-k
terms leaves an O(t^{k+1}) remainder; the table below measures the slopes.
The second half shows the shifted variant at kappa = 2: on pairs whose sum
squares to zero the truncation error is third order in the amplitude, while
generic pairs pick up second-order terms from the omitted (a1 + a2)^2 piece.
"""

import numpy as np

from shiftlog import (
    adjoint_series,
    bch_terms,
    bch_truncated,
    expm,
    kappa_shifted_bch,
    log_product,
    norm_1,
)
from shiftlog.sampling import nilpotent_sum_pair, noncommuting_pair, rand_complex

rng = np.random.default_rng(3)

print("=== product-series order law ===")
x, y = noncommuting_pair(rng, 3)
ts = [2.0 ** (-j) for j in range(3, 8)]
print("terms per order:",
      {k: [w for _, w in bch_terms(k).terms] for k in (1, 2, 3, 4)})
print(f"{'t':>10} " + " ".join(f"{'order ' + str(k):>12}" for k in (1, 2, 3, 4)))
table = []
for t in ts:
    row = [norm_1(log_product(t * x, t * y) - bch_truncated(t * x, t * y, k))
           for k in (1, 2, 3, 4)]
    table.append(row)
    print(f"{t:10.5f} " + " ".join(f"{v:12.3e}" for v in row))
slopes = np.polyfit(np.log(ts), np.log(np.array(table)), 1)[0]
print("measured slopes: " +
      ", ".join(f"order {k}: {s:.2f}" for k, s in zip((1, 2, 3, 4), slopes)))

print("\n=== conjugation series e^a1 a2 e^-a1 ===")
a1 = rand_complex(rng, 3, 0.5)
a2 = rand_complex(rng, 3, 1.0)
exact = expm(a1) @ a2 @ expm(-a1)
for n in (2, 4, 8, 12):
    print(f"  N = {n:2d}: residual {norm_1(exact - adjoint_series(a1, a2, n)):.3e}")

print("\n=== shifted identity at kappa = 2 ===")
eps = [0.2, 0.1, 0.05]


def slope_for(pair):
    res = [kappa_shifted_bch(e * pair[0], e * pair[1], 2.0).residual for e in eps]
    return res, np.polyfit(np.log(eps), np.log(res), 1)[0]


nil_pair = nilpotent_sum_pair(rng, 2)
res, s = slope_for(nil_pair)
print(f"nilpotent-sum pair  ((a1+a2)^2 = 0): residuals {[f'{r:.2e}' for r in res]}"
      f" -> slope {s:.2f}")
gen_pair = (rand_complex(rng, 2, 1.0), rand_complex(rng, 2, 1.0))
res, s = slope_for(gen_pair)
print(f"generic pair        ((a1+a2)^2 != 0): residuals {[f'{r:.2e}' for r in res]}"
      f" -> slope {s:.2f}")
print("the cubic law needs the square of the operand sum to vanish; otherwise")
print("the truncation omits genuine second-order terms")
