"""Walk the characteristic function whose zeros are the axis eigenvalues.

The initial-value problem v'' - mu v = lambda (1 - t) v, v(0) = v'(0) = 0
has nontrivial solutions exactly where char_fn(mu, lambda) vanishes.  This
script shows the function's shape, how the eigenvalues interlace in sign,
and how the single positive root collapses exponentially as mu grows.
"""

import numpy as np

from cylcauchy import char_fn, eigenvalues, smallest_eigenvalue

mu = 25.0
print(f"char_fn(mu, lambda) along the real axis, mu = {mu}")
print(f"{'lambda':>10}  {'char_fn':>14}")
for lam in np.linspace(-150.0, 100.0, 11):
    print(f"{lam:10.1f}  {char_fn(mu, lam):14.6g}")
print()

print("All roots with |lambda| <= 250 (m is the index by increasing |lambda|):")
for mode in eigenvalues(mu, 250.0):
    print(f"  m={mode.m}:  lambda = {mode.lam:+.12g}   "
          f"residual = {char_fn(mu, mode.lam):.2e}")
print()
print("Signs alternate: one small positive root, then negative, positive, ...")
print()

print("The positive root shrinks like e^{-sqrt(mu)}:")
print(f"{'mu':>8}  {'lambda_1':>24}  {'lambda_1 * e^sqrt(mu)':>22}")
for mu in (25.0, 100.0, 400.0, 2500.0, 10000.0):
    lam1 = smallest_eigenvalue(mu).lam
    print(f"{mu:8.0f}  {lam1:24.16e}  {lam1 * np.exp(np.sqrt(mu)):22.6f}")
print()
print("The last column tends to 4 mu: the ground eigenvalue is ~ 4 mu e^{-sqrt(mu)}.")
