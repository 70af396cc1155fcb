import random
from fractions import Fraction

import pytest

from bluefive.field import ONE, SQRT3, fe
from bluefive.geometry import (CANONICAL_FRAME, chord_rotation, collinear, dist2,
                               hex_indices, lattice_coords, lattice_norm2,
                               lattice_points, lattice_vectors_of_norm2, node,
                               point, reflection, rotation, rotation60,
                               translation)


def test_dist2_examples():
    assert dist2(point(0, 0), point(1, 0)) == ONE
    # centre and its unit neighbour from the first construction diagram
    assert dist2(node(-1, 2), node(-1, 1)) == ONE
    assert dist2(point(0, 0), point(Fraction(-1, 2), fe(0, Fraction(1, 2)))) == ONE


def test_collinear_examples():
    assert collinear(point(0, 0), point(1, 0), point(2, 0))
    assert not collinear(point(0, 0), point(1, 0),
                         point(Fraction(1, 2), fe(0, Fraction(1, 2))))
    assert collinear(node(1, -1), node(0, 0), node(-1, 1))


def test_rotation_60_unit():
    r = rotation60(point(0, 0), 1)
    assert r(point(1, 0)) == point(Fraction(1, 2), fe(0, Fraction(1, 2)))


def test_reflection_example():
    mirror = reflection(point(0, 0), point(SQRT3, 0))
    f = point(fe(0, Fraction(1, 2)), Fraction(-3, 2))
    assert mirror(f) == point(fe(0, Fraction(1, 2)), Fraction(3, 2))


def test_rotation_invariant_checked():
    with pytest.raises(ValueError):
        rotation(point(0, 0), fe(Fraction(1, 2)), fe(Fraction(1, 2)))
    with pytest.raises(ValueError):
        reflection(point(0, 0), point(0, 0))


def test_chord_rotation_properties():
    rot = chord_rotation(point(0, 0), -1)
    assert rot.cos * rot.cos + rot.sin * rot.sin == ONE
    assert rot(point(0, 0)) == point(0, 0)
    for a, b in ((1, 1), (2, -1), (-1, -1)):
        p = node(a, b)
        assert dist2(point(0, 0), p) == fe(3)
        assert dist2(p, rot(p)) == ONE


def test_chord_rotation_inverse_composition():
    rng = random.Random(7)
    fwd = chord_rotation(node(1, 1), 1)
    back = chord_rotation(node(1, 1), -1)
    for _ in range(100):
        p = node(rng.randint(-6, 6), rng.randint(-6, 6))
        assert back(fwd(p)) == p


def _random_isometry(rng):
    kind = rng.randrange(4)
    centre = node(rng.randint(-4, 4), rng.randint(-4, 4))
    if kind == 0:
        shift = node(rng.randint(-4, 4), rng.randint(-4, 4))
        return translation(shift.x, shift.y)
    if kind == 1:
        return rotation60(centre, rng.randrange(6))
    if kind == 2:
        return chord_rotation(centre, rng.choice((1, -1)))
    other = node(rng.randint(-4, 4), rng.randint(-4, 4))
    if other == centre:
        other = node(5, 5)
    return reflection(centre, other)


def test_isometries_preserve_dist2_sample():
    rng = random.Random(20240831)
    for _ in range(500):
        iso = _random_isometry(rng)
        p = node(rng.randint(-5, 5), rng.randint(-5, 5))
        q = node(rng.randint(-5, 5), rng.randint(-5, 5))
        assert dist2(iso(p), iso(q)) == dist2(p, q)


def test_collinear_invariant_under_isometry():
    rng = random.Random(11)
    for _ in range(200):
        iso = _random_isometry(rng)
        a = node(rng.randint(-4, 4), rng.randint(-4, 4))
        b = node(rng.randint(-4, 4), rng.randint(-4, 4))
        c = node(rng.randint(-4, 4), rng.randint(-4, 4))
        assert collinear(a, b, c) == collinear(iso(a), iso(b), iso(c))


def test_lattice_point_counts():
    for r in range(11):
        assert len(lattice_points(CANONICAL_FRAME, r)) == 1 + 3 * r * (r + 1)


def test_lattice_norm_formula():
    for a, b in hex_indices(4):
        p = node(a, b)
        assert dist2(point(0, 0), p) == fe(lattice_norm2(a, b))


def test_lattice_coords_inverse():
    for a, b in hex_indices(3):
        assert lattice_coords(node(a, b)) == (a, b)
    assert lattice_coords(point(0, 0) + point(Fraction(1, 3), 0)) is None


def test_lattice_vectors_of_norm2():
    assert len(lattice_vectors_of_norm2(1)) == 6
    assert lattice_vectors_of_norm2(2) == []
    assert sorted(lattice_vectors_of_norm2(25)) == sorted(
        [(5, 0), (-5, 0), (0, 5), (0, -5), (5, -5), (-5, 5)])
