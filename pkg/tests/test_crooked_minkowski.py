import numpy as np
import pytest

from core.crooked_minkowski import (
    CLOSURE_TAGS,
    CrookedPlaneE3,
    StratumTag,
    classify_standard,
    closure_ideal_points,
    crooked_plane_e3,
    hinge_dirs,
    membership,
    spine_point,
    standard_frame_matrix,
    standardizing_rotation,
)
from core.errors import NotSpacelikeError, NotUnitSpacelikeError
from core.pseudo_riemannian import P1, P2, PINF, same_point
from core.sl2_algebra import mink_det3, mink_dot


@pytest.mark.parametrize("q, expected", [
    ((0.0, 1.0, 2.0), StratumTag.STEM_INTERIOR),
    ((0.0, 1.0, -2.0), StratumTag.STEM_INTERIOR),
    ((3.0, 2.0, 2.0), StratumTag.WING1),
    ((-3.0, 2.0, -2.0), StratumTag.WING2),
    ((0.0, 1.0, 1.0), StratumTag.HINGE1),
    ((0.0, -1.0, -1.0), StratumTag.HINGE1),
    ((0.0, -1.0, 1.0), StratumTag.HINGE2),
    ((5.0, 0.0, 0.0), StratumTag.SPINE),
    ((-5.0, 0.0, 0.0), StratumTag.SPINE),
    ((0.0, 0.0, 0.0), StratumTag.VERTEX),
    ((1.0, 2.0, 3.0), StratumTag.OUTSIDE),
    ((-3.0, 2.0, 2.0), StratumTag.OUTSIDE),
    ((0.0, 2.0, 1.0), StratumTag.OUTSIDE),
])
def test_standard_strata(standard_e3_plane, q, expected):
    assert membership(standard_e3_plane, q) is expected
    assert classify_standard(q) is expected


def test_hinge_directions():
    # n1 is the future null direction with det3(s, n1, n2) > 0, so s = (0, 1, 0)
    # gives n1 = (-1, 0, 1) and n2 = (1, 0, 1)
    n1, n2 = hinge_dirs([0.0, 1.0, 0.0])
    assert np.allclose(n1, [-1.0, 0.0, 1.0])
    assert np.allclose(n2, [1.0, 0.0, 1.0])
    s = np.array([0.6, -0.2, 0.5])
    s = s / np.sqrt(mink_dot(s, s))
    n1, n2 = hinge_dirs(s)
    for n in (n1, n2):
        assert mink_dot(n, n) == pytest.approx(0.0, abs=1e-12)
        assert mink_dot(n, s) == pytest.approx(0.0, abs=1e-12)
        assert n[2] > 0
    assert mink_det3(s, n1, n2) > 0


def test_frame_is_an_orientation_preserving_isometry():
    s = np.array([1.2, 0.7, 0.9])
    frame = standard_frame_matrix(s)
    eta = np.diag([1.0, 1.0, -1.0])
    assert np.allclose(frame.T @ eta @ frame, eta)
    assert np.linalg.det(frame) == pytest.approx(1.0)
    assert frame[2, 2] > 0
    unit = s / np.sqrt(mink_dot(s, s))
    assert np.allclose(standardizing_rotation(s) @ unit, [1.0, 0.0, 0.0])
    with pytest.raises(NotSpacelikeError):
        standard_frame_matrix([0.0, 0.0, 1.0])


def test_membership_is_equivariant(rng):
    s = np.array([0.3, 0.8, 0.4])
    s = s / np.sqrt(mink_dot(s, s))
    vertex = rng.normal(size=3)
    cp = crooked_plane_e3(vertex, s)
    frame = standard_frame_matrix(s)
    for w in ([0.0, 1.0, 2.0], [3.0, 2.0, 2.0], [-3.0, 2.0, -2.0], [0.0, 1.0, 1.0], [2.0, 0.0, 0.0], [1.0, 2.0, 3.0]):
        assert membership(cp, vertex + frame @ np.array(w)) is classify_standard(w)
    assert membership(cp, spine_point(cp, 2.5)) is StratumTag.SPINE


def test_opposite_spine_relabels_wings_and_hinges(standard_e3_plane):
    flipped = CrookedPlaneE3(vertex=np.zeros(3), s=np.array([-1.0, 0.0, 0.0]))
    swap = {StratumTag.WING1: StratumTag.WING2, StratumTag.WING2: StratumTag.WING1,
            StratumTag.HINGE1: StratumTag.HINGE2, StratumTag.HINGE2: StratumTag.HINGE1}
    for q in ([3.0, 2.0, 2.0], [-3.0, 2.0, -2.0], [0.0, 1.0, 1.0], [0.0, 1.0, 2.0], [1.0, 2.0, 3.0]):
        tag = membership(standard_e3_plane, q)
        assert membership(flipped, q) is swap.get(tag, tag)


def test_unit_spine_required():
    with pytest.raises(NotUnitSpacelikeError):
        crooked_plane_e3(np.zeros(3), [2.0, 0.0, 0.0])
    with pytest.raises(NotUnitSpacelikeError):
        crooked_plane_e3(np.zeros(3), [0.0, 0.0, 1.0])


def test_closure_ideal_points_of_standard_plane(standard_e3_plane):
    improper, (h1, h2) = closure_ideal_points(standard_e3_plane)
    assert improper is PINF
    assert same_point(h1, P1)
    assert same_point(h2, P2)


def test_closure_tags_share_the_vertex():
    assert all(StratumTag.VERTEX in tags for tags in CLOSURE_TAGS.values())
    assert StratumTag.SPINE not in CLOSURE_TAGS["stem"]
