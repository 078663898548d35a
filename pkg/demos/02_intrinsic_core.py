"""The intrinsic core (relative interior) by four independent tests.

Run:  python3 demos/02_intrinsic_core.py
"""
from fractions import Fraction as F

from convexfaces import icore
from convexfaces import polyset as ps
from convexfaces.icore import IcrMethod, Law

H = F(1, 2)


def show(v):
    return "(" + ", ".join(str(c) for c in v) + ")"

square = ps.cube(2)

print("Verdicts of the four tests on the unit square:")
for x in [(H, H), (H, 0), (0, 0)]:
    v = icore.icr_verdicts(square, x)
    print(f"  {show(x):>10}: " + ", ".join(f"{m}={ok}" for m, ok in v.items()))

# A flat segment in the plane: its core is the open segment, not empty.
flat = ps.hset(2, [((-1, 0), 0), ((1, 0), 1)], eqs=[((0, 1), 0)])
print("\nA segment lying in the plane y = 0")
print("  (1/2, 0) in the core:", icore.icr_contains(flat, (H, 0)))
print("  (0, 0)   in the core:", icore.icr_contains(flat, (0, 0)))

# The half-open square keeps its bottom edge out, so the edge is no face of it.
half_open = ps.HSet(2, (ps.Row((-1, 0), 0), ps.Row((1, 0), 1), ps.Row((0, 1), 1),
                        ps.Row((0, -1), 0, True)))
print("\nHalf-open square 0 <= x <= 1, 0 < y <= 1")
print("  (1/2, 1/2) in the core:", icore.icr_contains(half_open, (H, H)))
print("  (1/2, 1)   in the core:", icore.icr_contains(half_open, (H, 1)))

ri = icore.relative_interior(square)
print("\nCore of the square as a set of strict rows:")
for r in ri.ineqs:
    print("  ", show(r.a), "<" if r.strict else "<=", r.b)

print("\nEvery point of the square sits in the core of exactly one face:")
for x in [(H, H), (1, H), (1, 1)]:
    print(f"  {show(x):>10} -> {icore.locate(square, x).label()}")

# Sum of an open segment and a closed segment: the core is the open square,
# but the sum also holds the bottom edge (1/2, 0).
C = ps.hset(2, [((0, 1), 0), ((0, -1), 0)], strict=[((-1, 0), 0), ((1, 0), 1)])
D = ps.hset(2, [((0, -1), 0), ((0, 1), 1)], eqs=[((1, 0), 0)])
S = ps.sum_by_projection(C, D)
print("\nC = open segment on the x-axis, D = closed segment on the y-axis")
print("  (1/2, 0) in C + D:", ps.contains(S, (H, 0)),
      "| in its core:", icore.icr_contains(S, (H, 0)))
verdict = icore.check_calculus(Law.SUM, (C, D), count=200, seed=0)
print(f"  core(C + D) = core C + core D on {verdict.checked} samples:", verdict.holds)

print("\nOther laws on the square, 200 samples each:")
for law, ops in [(Law.SCALE, (square, -2)), (Law.TRANSLATE, (square, (1, -1))),
                 (Law.LINEAR_IMAGE, (square, ps.LinearMap(((1, 1),)))),
                 (Law.PRODUCT, (square, ps.cube(1)))]:
    print(f"  {law.value:>13}:", icore.check_calculus(law, ops).holds)
print("  forced method:", icore.icr_contains(square, (H, H), IcrMethod.MIN_FACE))
