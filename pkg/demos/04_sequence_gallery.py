"""Convex sets of finitely supported sequences and their exact witnesses.

Run:  python3 demos/04_sequence_gallery.py
"""
from fractions import Fraction as F

from convexfaces import seqgallery as sg
from convexfaces.seqgallery import FinSeq

x = FinSeq.parse("1:1,2:1/2")
print("Box {0 <= x_i <= 1}: point", x)
face = sg.box_minimal_face(x)
print("  minimal face: coordinates pinned at 1:", sorted(face.ones), "| free:", sorted(face.free),
      "| all others pinned at 0")
w = sg.box_empty_icr_witness(x)
print("  no point is in the core; witness index", w.index, "->", w.algebra())
print("  verified:", w.verify())

print("\nHilbert cube {0 <= x_n <= 1/n}: faces cut from the first 16 rationals")
print("by the thresholds 1/2 < 3/2, each free on the listed indices and 0 elsewhere")
chain = sg.cube_chain_from_cuts([F(1, 2), F(3, 2)], 16)
for link in chain:
    print("  ", sorted(link.full_indices))
print("  coincident links:", sg.coincident_links(chain))

y = FinSeq.parse("1:-5,3:2")
print("\nUbiquitous set (last nonzero coordinate positive): y =", y)
print("  member:", sg.ubiq_contains(y))
print("  not in the core:", sg.ubiq_not_icr_witness(y).algebra())
z = FinSeq.parse("2:-1")
print("  ", z, "is outside but in the linear closure:", sg.ubiq_lin_witness(z).algebra())

print("\nNonnegative orthant: minimal face of 2:2,7:1 is",
      sorted(sg.orthant_minimal_face(FinSeq.parse("2:2,7:1"))))
gap = sg.orthant_chain_gap([[1], [1, 2], [1, 2, 3]])
print("  a nested chain of faces misses e_%d: %s" % (gap.index, gap.algebra()))
