"""Why knowing the multiplicities pays off.

Plain Newton limps linearly at a multiple root (each step removes a
constant error fraction 1 - 1/alpha).  The multiplicity-aware
simultaneous step keeps the full fourth order.  Both methods run on the
same triple-root problem from the same start.
"""

from multiroots import (
    MonicPolynomial,
    RootSystem,
    eval_with_derivative,
    poly_from_roots,
    solve,
)

system = RootSystem(roots=(0.0, 3.0), multiplicities=(1, 3))
poly = poly_from_roots(system)
print("polynomial: x (x-3)^3, coefficients", [c.real for c in poly.low_coefficients])

# plain Newton on the triple root, ignoring its multiplicity
x = 4.0 + 0j
print("\nplain Newton from 4.0 toward the triple root at 3:")
for k in range(1, 26):
    value, deriv = eval_with_derivative(poly, x)
    x = x - value / deriv
    if k <= 6 or k % 5 == 0:
        print(f"  k={k:>2}  error {abs(x - 3):.3e}")
print("  linear crawl: each sweep only cuts the error by about 1/3")

# the multiplicity-aware simultaneous iteration
report = solve(poly, system.multiplicities, initial=(0.5, 4.0))
print(f"\nsimultaneous multiplicity-aware run: {report.status.value} "
      f"in {report.iterations_used} sweeps")
for rec in report.trace:
    errs = [abs(rec.values[i] - system.roots[i]) for i in range(2)]
    print(f"  k={rec.k}  errors {errs[0]:.3e}  {errs[1]:.3e}")
