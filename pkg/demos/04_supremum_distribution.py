"""Supremum of a path over an exponential horizon, analytically.

The ladder-exponent ratio kappa(sigma, 0)/kappa(tau + sigma, xi) is the
joint Laplace transform of the running supremum and its argmax time; the
tail of the supremum follows by Stieltjes inversion of the spatial
transform and is completely monotone.
"""

import math

import numpy as np

from levycm import LevyAtomic
from levycm.fluctuation import (
    CmCheckConfig,
    cm_cbf_check,
    kappa_circ,
    pr_laplace,
    sup_tail,
)

bm = LevyAtomic(a=0.5)  # standard diffusion: the supremum law is exponential
print("standard diffusion over an Exp(1/2) horizon:")
print(f"  E exp(-sup)            = {pr_laplace(bm, 0.5, 0.0, 1.0):.10f}  (exact 0.5)")
print(f"  E exp(-1.5 argmax)     = {pr_laplace(bm, 0.5, 1.5, 0.0):.10f}  (exact 0.5)")
print(f"  E exp(-sup-1.5 argmax) = {pr_laplace(bm, 0.5, 1.5, 1.0):.10f}  (exact 1/3)")
print("  tail P(sup > x) against exp(-x):")
for x in (0.1, 0.5, 1.0, 2.0, 5.0):
    t = sup_tail(bm, 0.5, x)
    print(f"    x={x:4.1f}: {t:.8f}  (exp {math.exp(-x):.8f})")

print("\ncomplete monotonicity of the tail (alternating differences):")
grid = tuple(np.arange(0.5, 5.01, 0.45))
rep = cm_cbf_check(lambda x: sup_tail(bm, 0.5, float(x)),
                   CmCheckConfig("cm_differences", grid, order=8))
print(f"  {rep.summary()}")

print("\na two-sided jump spec with drift:")
jumpy = LevyAtomic(a=0.0, b=0.8, c=0.0, atoms=((2.0, 3.0), (-1.5, 2.0)))
for x in (0.25, 0.5, 1.0, 2.0, 4.0):
    print(f"  P(sup > {x:4.2f}) = {sup_tail(jumpy, 0.7, x):.6f}")

print("\ncompound Poisson needs a temporal correction factor:")
cp = LevyAtomic(a=0.0, b=0.5, c=0.0, atoms=((1.0, math.pi),))  # unit activity
for tau in (0.5, 1.0, 2.0, 10.0):
    print(f"  kappa-circle({tau:5.2f}) = {kappa_circ(cp, tau):.6f}   ((tau+1)/2 = {(tau+1)/2:.6f})")
