"""Power-sum invariants I_k of the 27 E6 weights at the special point, and a scan.

At points (x1, -x1, x3, -x3, x5, -x5, y) the weights give
I_8 = 140 p2(s)^2 - 240 p4(s) once p1(s) = 0, with s = (x1^2, x3^2, x5^2, y^2).
The scan varies the phases of x5 and y on a grid and reports the smallest
max_k |I_k| over k in {2, 5, 6, 8, 9}.
"""

import cmath
import itertools

from qschub.rootsys import e6_invariant, e6_special_point

pt = e6_special_point()
for k in (2, 5, 6, 8, 9, 12):
    print(f"I_{k:<2d} = {complex(e6_invariant(k, pt)):.6g}")
sq = [pt[0] ** 2, pt[2] ** 2, pt[4] ** 2, pt[6] ** 2]
p2, p4 = sum(v**2 for v in sq), sum(v**4 for v in sq)
print("p1(s) =", sum(sq), " p2(s) =", p2, " p4(s) =", p4)
print("140 p2^2 - 240 p4 =", 140 * p2**2 - 240 * p4)

N = 32
best = None
for a, b in itertools.product(range(N), repeat=2):
    x5 = cmath.exp(2j * cmath.pi * a / N)
    y = cmath.exp(2j * cmath.pi * b / N)
    p = (-1, 1, -1j, 1j, -x5, x5, y)
    worst = max(abs(e6_invariant(k, p)) for k in (2, 5, 6, 8, 9))
    if best is None or worst < best[0]:
        best = (worst, a, b)
print(f"grid {N}x{N}: smallest max |I_k| = {best[0]:.4g} at phases ({best[1]}/{N}, {best[2]}/{N})")
