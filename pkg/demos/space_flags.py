"""Canonical forms in three dimensions.

A tetrahedron with its centroid has the 12 rotations of the tetrahedron
as automorphisms of its order type.  A random general-position set and a
mirrored copy are compared with and without reflections.

    python demos/space_flags.py
"""

from ordercanon.canonnd import canonical_form_nd, face_flags_d, isomorphic_nd
from ordercanon.io import generate_points
from ordercanon.predicates import PointOracle, PointSet

tet = PointOracle(PointSet(((3, 3, 3), (3, -3, -3), (-3, 3, -3), (-3, -3, 3), (0, 0, 0))))
hull = face_flags_d(tet)
f = canonical_form_nd(tet)
print("facets:", len(hull.facets), "flags:", len(hull.flags))
print(f.canonical_string)
print("automorphism group order:", f.group_order)

P = generate_points(7, 3, seed=11, R=20)
mirror = PointSet(tuple((-x, y, z) for x, y, z in P.points))
a, b = PointOracle(P), PointOracle(mirror)
print()
print("same without reflection:", isomorphic_nd(a, b).same)
r = isomorphic_nd(a, b, allow_reflection=True)
print("same with reflection:", r.same, "witness", r.witness)
