"""Walk through the planar pipeline on a small point set.

Prints the convex layers, the keypoints, the blocks of one spiral
labeling, the level-numbered blocks with their knob annotations, and
finally the canonical string and automorphism group.

    python demos/planar_walkthrough.py
"""

from ordercanon import tokens as T
from ordercanon.canon2d import build_kgb, build_ussr, canonical_form_2d, spiral_labeling, ussr_to_ddr
from ordercanon.layers2d import convex_layers
from ordercanon.predicates import PointOracle, PointSet

points = [(0, 0), (4, 0), (4, 4), (0, 4), (2, 2), (2, 0)]
o = PointOracle(PointSet(tuple(points)))

L = convex_layers(o)
print("layers:", [list(c) for c in L.layers])
print("keypoints:", L.keypoints)

rho = spiral_labeling(L, L.keypoints[0])
print("spiral order from", rho.origin, ":", rho.order, "knobs", rho.knobs)

u = build_ussr(o, L, rho)
d = ussr_to_ddr(u, L)
g = build_kgb(u, rho, L)
for i, (ub, db) in enumerate(zip(u.blocks, d.blocks), 1):
    print(f"  block {i}: {T.render(ub):30s} levels: {T.render(db)}")
print("knob entries:", T.render(g.tokens()))

f = canonical_form_2d(o)
print()
print(f.canonical_string)
print("canonical labelings:", len(f.psi))
for a in f.automorphisms:
    print("  automorphism", a)
