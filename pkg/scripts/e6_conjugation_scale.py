"""Ratio between the two sides of the E6/P1 conjugation identity.

For each of the 24 nonzero eigenvalues z of M_H at q=1 prints
z^12 (11 z^12 - 2967) / (234 z zbar). A constant ratio of 12^(1/4) means
conj(H) = 12^(-1/4) sigma''_11 in the function model.
"""

import mpmath

from qschub.duality import e6_conj_identity

mpmath.mp.dps = 40
rep = e6_conj_identity()
print("12^(1/4)           =", mpmath.nstr(mpmath.mpf(12) ** 0.25, 20))
print("max |ratio - 12^(1/4)| =", rep["nominal_ratio_minus_12_quarter"])
print("unscaled max deviation =", rep["nominal_identity_max_dev"])
print("scaled max deviation   =", rep["scaled_identity_max_dev"])
print("branch values          =", rep["branch_values"])

for sign in (1, -1):
    w = mpmath.mpf(135) + sign * 78 * mpmath.sqrt(3)
    r = abs(w) ** (mpmath.mpf(1) / 12)
    z = r * (mpmath.expjpi(mpmath.mpf(1) / 12) if w < 0 else 1)
    ratio = z**12 * (11 * z**12 - 2967) / (234 * z * mpmath.conj(z))
    print(f"branch {sign:+d}: ratio = {mpmath.nstr(ratio, 20)}")
