"""Gallery of characteristic exponents with completely monotone jumps.

Evaluates each bundled spec on the right half-plane, checks the defining
wedge condition re(f(xi)/xi) >= 0 by sampled validation, and prints the
one-sided limits f(0+) and f(inf-).
"""

import numpy as np

from levycm import check_function_bounds, eval_f, f_limits, validate_spec
from levycm.specio import SHOWCASE

rng = np.random.default_rng(0)
r = np.exp(rng.uniform(np.log(0.1), np.log(10.0), 200))
ang = rng.uniform(-np.pi / 2 + 0.05, np.pi / 2 - 0.05, 200)
samples = r * np.exp(1j * ang)

for name, spec in SHOWCASE.items():
    spec = validate_spec(spec)  # structural checks + sampled wedge condition
    lim = f_limits(spec)
    f1 = eval_f(spec, 1.0 + 0.0j)
    rep = check_function_bounds(spec, samples[:40])
    print(f"{name:28s} f(1) = {f1:.6f}")
    print(f"{'':28s} f(0+) = {lim.f_at_zero:<12.6g} f(inf-) = {lim.f_at_infinity:<12.6g}")
    print(f"{'':28s} bound checks: {rep.summary()}")

# the wedge condition itself, visualized as worst sampled margin per spec
print("\nworst sampled re(f(xi)/xi), must be >= 0:")
for name, spec in SHOWCASE.items():
    vals = eval_f(spec, samples) / samples
    print(f"  {name:28s} {vals.real.min():+.3e}")
