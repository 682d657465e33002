import itertools
import math
import random

import pytest

from ordercanon.brute import brute_automorphisms, brute_isomorphic
from ordercanon.canon2d import canonical_form_2d
from ordercanon.canonnd import (
    canonical_form_nd,
    convex_layers_nd,
    decode_nd,
    extreme_points_d,
    face_flags_d,
    flag_labeling,
    isomorphic_nd,
    otr_nd,
)
from ordercanon.predicates import DegenerateError, OrderTypeError, make_view

from conftest import OCTAHEDRON, TETRA_CENTROID, TRIANGLE, pts, random_general, shuffled

CUBE_CENTER = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)] + [(0, 0, 0)]
SIMPLEX = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_extreme_points():
    assert extreme_points_d(pts(TETRA_CENTROID), range(5)) == [0, 1, 2, 3]
    assert extreme_points_d(pts(SIMPLEX), range(4)) == [0, 1, 2, 3]
    assert extreme_points_d(pts(CUBE_CENTER), range(9)) == list(range(8))


def test_layers_nd():
    assert convex_layers_nd(pts(TETRA_CENTROID)).layers == [[0, 1, 2, 3], [4]]
    assert convex_layers_nd(pts(OCTAHEDRON)).layers == [[0, 1, 2, 3, 4, 5]]
    assert convex_layers_nd(pts(SIMPLEX)).layers == [[0, 1, 2, 3]]


def test_face_flags():
    h = face_flags_d(pts(SIMPLEX))
    assert len(h.facets) == 4 and len(h.flags) == 24
    assert len(face_flags_d(pts(TETRA_CENTROID)).flags) == 24


def test_octahedron_facets():
    o = pts(OCTAHEDRON)
    h = face_flags_d(o)
    assert len(h.facets) == 8 and len(h.flags) == 48
    # four equatorial vertices are coplanar, so canonicalization refuses it
    with pytest.raises(DegenerateError):
        canonical_form_nd(o)


def test_flag_labeling_2d_matches_angular_sort():
    o = pts([(0, 0), (4, 0), (3, 3), (1, 2), (2, 1), (0, 4)])
    pi = flag_labeling(o, (0, 1))
    # brute angular sort about vertex 0 starting from edge 0->1, counterclockwise
    rest = sorted([2, 3, 4, 5], key=lambda i: math.atan2(o.points.points[i][1], o.points.points[i][0]))
    assert pi == (0, 1, *rest)


def test_flag_reversal_reverses_sweep():
    o = pts(TETRA_CENTROID)
    a = flag_labeling(o, (0, 1, 2))
    b = flag_labeling(o, (1, 0, 3))
    # both flags share the ridge {0, 1}; they sweep the other points in opposite orders
    common = [x for x in a[3:] if x in b[3:]]
    assert [x for x in b if x in common] == list(reversed(common))


def test_flag_labeling_equivariance():
    rng = random.Random(4)
    o = random_general(rng, 7, 3)
    perm = shuffled(rng, 7)
    inv = {p: i for i, p in enumerate(perm)}
    v = make_view(o, perm)
    for flag in face_flags_d(o).flags[:12]:
        mapped = tuple(inv[x] for x in flag)
        assert flag_labeling(v, mapped) == tuple(inv[x] for x in flag_labeling(o, flag))


def test_tetra_centroid_group():
    o = pts(TETRA_CENTROID)
    f = canonical_form_nd(o)
    assert len(f.psi) == f.group_order == 12
    assert f.automorphisms == sorted(brute_automorphisms(o))
    key, entries = otr_nd(o, f.labeling)
    assert len(entries) == 5
    assert all(len(p) == 4 for p, _ in entries[:4]) and entries[4][0] == ()


def test_simplex_letters_equal():
    o = pts(SIMPLEX)
    f = canonical_form_nd(o)
    _, entries = otr_nd(o, f.labeling)
    assert len({s for _, s in entries}) == 1
    assert f.automorphisms == sorted(brute_automorphisms(o))


def test_delegates_to_2d():
    o = pts(TRIANGLE)
    assert canonical_form_nd(o).canonical_string == canonical_form_2d(o).canonical_string
    with pytest.raises(OrderTypeError):
        canonical_form_nd(o, 3)


def test_point_reflection_in_3d():
    rng = random.Random(8)
    o = random_general(rng, 6, 3)
    refl = pts([tuple(-c for c in p) for p in o.points.points])
    assert isomorphic_nd(o, refl, allow_reflection=True).same
    assert isomorphic_nd(o, refl).same == brute_isomorphic(o, refl).same
    assert not isomorphic_nd(pts(TETRA_CENTROID), random_general(rng, 6, 3)).same


def test_unimodular_map_preserves_string():
    rng = random.Random(9)
    o = random_general(rng, 7, 3)
    # det = +1 shear composition
    M = [[1, 2, 0], [0, 1, -1], [1, 2, 1]]
    assert M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) \
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]) == 1
    img = pts([tuple(sum(M[i][k] * p[k] for k in range(3)) + 5 for i in range(3)) for p in o.points.points])
    assert canonical_form_nd(img).canonical_string == canonical_form_nd(o).canonical_string


@pytest.mark.parametrize("seed", range(12))
def test_relabel_decode_and_brute(seed):
    rng = random.Random(seed)
    n = rng.randint(5, 8)
    o = random_general(rng, n, 3)
    f = canonical_form_nd(o)
    assert canonical_form_nd(make_view(o, shuffled(rng, n))).canonical_string == f.canonical_string
    lab = f.labeling
    for t in itertools.combinations(range(1, n + 1), 4):
        t = tuple(rng.sample(t, 4))
        assert decode_nd(f.canonical_string, t) == o(*[lab[x - 1] for x in t])
    if n <= 6:
        assert f.group_order == len(brute_automorphisms(o))
        other = random_general(rng, n, 3)
        same = canonical_form_nd(other).canonical_string == f.canonical_string
        assert same == brute_isomorphic(o, other).same


def test_four_dimensions():
    rng = random.Random(21)
    o = random_general(rng, 6, 4, R=9)
    f = canonical_form_nd(o)
    assert canonical_form_nd(make_view(o, shuffled(rng, 6))).canonical_string == f.canonical_string
    lab = f.labeling
    for t in itertools.permutations(range(1, 7), 5):
        assert decode_nd(f.canonical_string, t) == o(*[lab[x - 1] for x in t])
    assert f.group_order == len(brute_automorphisms(o))
