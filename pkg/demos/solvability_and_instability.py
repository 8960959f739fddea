"""The convergence criterion at work, and why the full problem is unstable.

Strong solvability comes down to one series: sum_k |f_k1 / lambda_k1|^2.
Because lambda_k1 ~ 4 k^2 e^{-k}, perfectly smooth-looking data can fail
it.  This script runs the automatic verdict on three data families and
then prints the textbook instability: data of vanishing size whose
solutions do not vanish at all.
"""

import math

from cylcauchy import (
    ModeCoefficients,
    criterion,
    dirichlet_spectrum_1d,
    hadamard_amplification,
    modes_up_to,
)

K = 40
spectrum = dirichlet_spectrum_1d(K)
lam1 = {k: modes_up_to(float(k * k), 1)[0].lam for k in range(1, K + 1)}

print("Verdicts for three data families (d_k is the k-th series term):")
for label, d in [
    ("d_k = 1/k^2   (data decays a touch faster than the spectrum)", lambda k: 1.0 / k**2),
    ("d_k = 1       (data tracks the spectrum exactly)", lambda k: 1.0),
    ("d_k = e^{-k}  (data decays exponentially faster)", lambda k: math.exp(-k)),
]:
    values = {(k, 1): lam1[k] * math.sqrt(d(k)) for k in range(1, K + 1)}
    co = ModeCoefficients.from_dict(spectrum, K, 1, values)
    report = criterion(co, lam1)
    print(f"  {label}")
    print(f"      verdict = {report.verdict:12s} S_40 = {report.partial_sums[-1]:.6g} "
          f"tail ratio = {report.tail_ratio:.6g}")
print()

print("Hadamard instability: put data eps * u_k on the lid and watch the")
print("solution norm stay order eps/lambda_k1 while the data norm is eps.")
eps = 1e-3
print(f"\n  eps = {eps}")
print(f"{'k':>4} {'lambda_k1':>16} {'||u|| / ||f||':>16} {'||u||':>12}")
for row in hadamard_amplification(dirichlet_spectrum_1d(12), range(2, 13), eps):
    print(f"{row.k:4d} {row.lambda1:16.6e} {row.amplification:16.6f} "
          f"{row.solution_norm:12.6f}")
print()
print("Amplification is unbounded in k: no estimate ||u|| <= C ||f|| can")
print("hold on all of L^2, which is Hadamard's instability for this problem.")
