"""
Mittag-Leffler functions on the negative axis
=============================================

E_alpha(-x) interpolates between exp(-x) at alpha = 1 and an algebraic
tail x^-1 / Gamma(1 - alpha) for alpha < 1. This script tabulates a few
values, compares against known closed forms and prints the tail ratio.
"""

import math

import numpy as np
from scipy.special import erfcx

from fraclindblad.mlf import ml_one, ml_two

# E_1 is the exponential and E_{1/2}(-x) = exp(x^2) erfc(x)
x = np.array([0.0, 0.5, 1.0, 5.0, 20.0])
print("x       E_1(-x)          exp(-x)          E_1/2(-x)        erfcx(x)")
for xi in x:
    print(f"{xi:5.1f}  {ml_one(1.0, -xi):.12e}  {math.exp(-xi):.12e}  "
          f"{ml_one(0.5, -xi):.12e}  {erfcx(xi):.12e}")

# two-parameter family: E_{1,2}(z) = (e^z - 1)/z
print("\nE_{1,2}(-3) =", ml_two(1.0, 2.0, -3.0), " expected", (math.exp(-3) - 1) / -3)

# algebraic tail: E_a(-x) x Gamma(1-a) -> 1
print("\nalpha   x        E_a(-x) x Gamma(1-a)")
for a in (0.3, 0.5, 0.8):
    for xx in (1e2, 1e4, 1e6):
        print(f"{a:4.1f}  {xx:8.0e}  {ml_one(a, -xx) * xx * math.gamma(1 - a):.8f}")
