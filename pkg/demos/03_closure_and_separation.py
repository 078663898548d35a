"""Linear closure, linear boundary, supporting and separating hyperplanes.

Run:  python3 demos/03_closure_and_separation.py
"""
from fractions import Fraction as F

from convexfaces import closure as cl
from convexfaces import polyset as ps
from convexfaces.errors import OverlappingInteriors

H = F(1, 2)


def show(v):
    return "(" + ", ".join(str(c) for c in v) + ")"


# Open segment (0,1) x {0}: the endpoints are reachable along segments.
seg = ps.hset(2, [((0, 1), 0), ((0, -1), 0)], strict=[((-1, 0), 0), ((1, 0), 1)])
print("Open segment on the x-axis")
for x in [(0, 0), (H, 0), (2, 0)]:
    print(f"  {show(x):>10}: member={ps.contains(seg, x)}, in lin={cl.lin_contains(seg, x)},"
          f" linear boundary={cl.lbd_contains(seg, x)}")

square = ps.cube(2)
sup = cl.support_functional(square, (H, 0))
print("\nSupport at (1/2, 0) on the unit square: phi =", show(sup.phi), "alpha =", sup.alpha)
print("  a point of the square strictly below the hyperplane:", show(sup.strict_witness[0]))

# Touching sets: the bottom edge of the square against the square itself.
edge = ps.hset(2, [((-1, 0), 0), ((1, 0), 1)], eqs=[((0, 1), 0)])
cert = cl.properly_separate(edge, square)
print("\nBottom edge vs. the square")
print("  phi =", show(cert.phi), "alpha =", cert.alpha, "verified:", cert.verify(edge, square))
print("  witness pair (a in A, b in B) with phi(a) < phi(b):",
      " and ".join(show(p) for p in cert.strict_witness))

right = ps.box([2, 0], [3, 1])
far = cl.properly_separate(square, right)
print("\nSquare vs. the box [2,3] x [0,1]: phi =", show(far.phi), "alpha =", far.alpha)
print("  certificate as JSON:", far.to_json())

try:
    cl.properly_separate(square, ps.translate(square, (H, H)))
except OverlappingInteriors as exc:
    print("\nOverlapping squares cannot be properly separated:", exc)
