"""Faces of a square and a pyramid: minimal faces, the lattice, maximal chains.

Run:  python3 demos/01_faces_of_a_polytope.py
"""
from fractions import Fraction as F

from convexfaces import faces as fc
from convexfaces import polyset as ps


def show(v):
    return "(" + ", ".join(str(c) for c in v) + ")"


square = ps.cube(2)  # rows: -x <= 0, x <= 1, -y <= 0, y <= 1
print("Unit square as inequalities; row i is the i-th bound.")

# A point's minimal face is cut out by the rows tight at it.
for x in [(F(1, 2), F(1, 2)), (F(1, 2), 0), (0, 0)]:
    face = fc.minimal_face(square, x)
    print(f"  minimal face of {show(x)}: dim {face.dim}, {face.label()}")

# The same square given by its corners reports faces by generator indices.
corners = ps.hull([(0, 0), (1, 0), (0, 1), (1, 1)])
print("Same point against the vertex description:",
      fc.minimal_face(corners, (F(1, 2), 0)).label())

L = fc.face_lattice(square)
print(f"\nThe square has {len(L.nodes)} faces, from the empty face to the square itself:")
for node in L.nodes:
    print(f"  dim {node.dim:>2}: {node.label()}")

chains = fc.maximal_chains(L)
print(f"{len(chains)} maximal chains, each of length {len(chains[0])} = dim + 2")

pyramid = ps.hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (F(1, 2), F(1, 2), 1)])
P = fc.face_lattice(pyramid)
by_dim = {}
for node in P.nodes:
    by_dim[node.dim] = by_dim.get(node.dim, 0) + 1
print("\nSquare pyramid faces by dimension:", dict(sorted(by_dim.items())))

# Removing a face keeps the set convex; the result needs one strict row.
edge = fc.minimal_face(square, (F(1, 2), 0))
rest = fc.set_minus_face(square, edge)
print("\nSquare minus its bottom edge contains (1/2, 0)?", ps.contains(rest, (F(1, 2), 0)),
      "| contains (0, 1)?", ps.contains(rest, (0, 1)))

print("\nHasse diagram in DOT form (first lines):")
print("\n".join(fc.lattice_to_dot(L).splitlines()[:6]))
