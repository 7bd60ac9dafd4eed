#!/usr/bin/env python3
"""Independent 100-digit evaluation of the simplified height bound for
p = 11 over Q with S = {infinity}:

    9 * s^2 * p^4 * ln p + p^2 * (31 s ln 2 + 9 s ln d + 2 s ln s
                                  + d ln ell + ln|D| + d ln ln(|D|+1))

with d = s = |D| = ell = 1, so only 31 ln 2 + ln ln 2 survives the
second factor.
"""
import mpmath

mpmath.mp.dps = 120

p = 11
value = 9 * p**4 * mpmath.ln(p) + p**2 * (31 * mpmath.ln(2) + mpmath.ln(mpmath.ln(2)))
print(mpmath.nstr(value, 100))
