import math

import numpy as np
import pytest

from core.crooked_ads import STANDARD_ADS_PLANE, construct
from core.einstein_embedding import (
    STANDARD_CONFIGURATION,
    EinStratumTag,
    GeodesicKind,
    InvarianceKind,
    StemConfiguration,
    TotallyGeodesicKind,
    ads_from_adapted,
    classify_standard_surface,
    closure_of_lift,
    crooked_surface,
    cs_membership,
    cs_spine,
    cs_stem_hypersphere,
    dilation,
    dual_plane_image,
    embed_mink,
    fixed_set_contains,
    geodesic_image,
    geodesic_image_check,
    invariance_kind,
    inversion,
    is_adapted,
    mink_from_ein,
    psi,
    psi_equivariant_map,
    psi_inverse,
    psi_linear,
    ruling_ideal_endpoint,
    ruling_point,
    sample_totally_geodesic,
    spine_boost,
    totally_geodesic_image_check,
)
from core.errors import (
    InvalidConfigurationError,
    NotAdaptedError,
    NotInMinkowskiPatchError,
    NotInPatchError,
    OnEinstein2Error,
)
from core.pseudo_riemannian import (
    P0,
    P1,
    P2,
    PINF,
    canonical_rep,
    circle_contains,
    is_identity_component,
    point,
    q_form,
    same_point,
)
from core.sl2_algebra import E_X, E_Y, K, exp_sl2
from utils.sampling import random_sl2

INVARIANT_ONLY = StemConfiguration(P1, P2, point([1.0, 0.0, 0.0, 2.0, 0.5]), point([1.0, 0.0, 0.0, 0.5, 2.0]))


def test_psi_of_identity_and_minus_identity():
    assert np.allclose(psi_linear(np.eye(2)), [0.0, 0.0, 0.0, 0.0, 4.0])
    assert same_point(psi(np.eye(2)), P0)
    assert same_point(psi(-np.eye(2)), PINF)


def test_psi_lands_on_the_null_cone(rng):
    for _ in range(20):
        m = rng.normal(size=(2, 2))
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        assert q_form(psi_linear(m)) == pytest.approx(4.0 * (1.0 - det))


def test_psi_inverse_and_inversion(rng):
    for _ in range(20):
        x = random_sl2(rng)
        assert np.allclose(psi_inverse(psi(x)), x)
        assert same_point(inversion(psi(x)), psi(-x))
    with pytest.raises(OnEinstein2Error):
        psi_inverse(P1)


def test_psi_is_equivariant(rng):
    g1, g2, x = random_sl2(rng), random_sl2(rng), random_sl2(rng)
    m = psi_equivariant_map(g1, g2)
    assert same_point(m.apply(psi(x)), psi(g1 @ x @ np.linalg.inv(g2)))
    assert m.orthogonality_residual() < 1e-8


def test_minkowski_patch():
    v = np.array([0.3, -1.2, 2.5])
    assert np.allclose(mink_from_ein(embed_mink(v)), v)
    with pytest.raises(NotInMinkowskiPatchError):
        mink_from_ein(PINF)
    assert fixed_set_contains(P1)
    assert not fixed_set_contains(P0)


@pytest.mark.parametrize("kind", list(GeodesicKind))
def test_geodesic_images(kind):
    for t in (-1.1, 0.4, 2.0):
        geodesic_image_check(kind, t)


def test_elliptic_geodesic_leaves_the_patch_at_half_turn():
    with pytest.raises(NotInPatchError):
        geodesic_image(GeodesicKind.ELLIPTIC, math.pi)


@pytest.mark.parametrize("kind", list(TotallyGeodesicKind))
def test_totally_geodesic_images(kind, rng):
    contains = totally_geodesic_image_check(kind)
    for x in sample_totally_geodesic(kind, rng, 50):
        assert contains(psi(x))


def test_dual_plane_image_is_hyperboloid():
    for t in (-0.8, 0.0, 1.3):
        assert np.allclose(dual_plane_image(t), [0.0, -math.sinh(t), -math.cosh(t)])


def test_rulings_reach_the_ideal_circle():
    for sign in (1, -1):
        x, y, z = ruling_point(0.7, sign, 3.0)
        assert x * x + y * y - z * z == pytest.approx(1.0)
        far = canonical_rep(embed_mink(ruling_point(0.7, sign, 1e5)).rep)
        assert np.allclose(far, canonical_rep(ruling_ideal_endpoint(0.7, sign).rep), atol=1e-4)


@pytest.mark.parametrize("p, expected", [
    (P0, EinStratumTag.VERTEX),
    (PINF, EinStratumTag.COVERTEX),
    (P1, EinStratumTag.HINGEPOINT1),
    (P2, EinStratumTag.HINGEPOINT2),
    (embed_mink([0.0, 1.0, 2.0]), EinStratumTag.STEM_T1),
    (embed_mink([0.0, 1.0, -2.0]), EinStratumTag.STEM_T2),
    (embed_mink([3.0, 2.0, 2.0]), EinStratumTag.WING1),
    (embed_mink([-3.0, 2.0, -2.0]), EinStratumTag.WING2),
    (embed_mink([0.0, 1.0, 1.0]), EinStratumTag.HINGE),
    (embed_mink([5.0, 0.0, 0.0]), EinStratumTag.SPINE_CIRCLE),
    (embed_mink([1.0, 2.0, 3.0]), EinStratumTag.OUTSIDE),
    (point([0.0, 1.0, 1.0, 1.0, 0.0]), EinStratumTag.COHINGE),
])
def test_standard_surface_strata(standard_surface, p, expected):
    assert classify_standard_surface(p) is expected
    assert cs_membership(standard_surface, p) is expected


SURFACE_SAMPLES = [
    (P0, EinStratumTag.VERTEX),
    (PINF, EinStratumTag.COVERTEX),
    (P1, EinStratumTag.HINGEPOINT1),
    (P2, EinStratumTag.HINGEPOINT2),
    (embed_mink([0.0, 1.0, 2.0]), EinStratumTag.STEM_T1),
    (embed_mink([0.0, -0.5, -1.5]), EinStratumTag.STEM_T2),
    (embed_mink([3.0, 2.0, 2.0]), EinStratumTag.WING1),
    (inversion(embed_mink([3.0, 2.0, 2.0])), EinStratumTag.WING1),
    (embed_mink([-3.0, 2.0, -2.0]), EinStratumTag.WING2),
    (embed_mink([0.0, -1.0, 1.0]), EinStratumTag.HINGE),
    (embed_mink([-0.7, 0.0, 0.0]), EinStratumTag.SPINE_CIRCLE),
    (embed_mink([-3.0, 2.0, 2.0]), EinStratumTag.OUTSIDE),
    (embed_mink([1.0, 2.0, 3.0]), EinStratumTag.OUTSIDE),
]


def test_surfaces_moved_by_isometries_keep_their_strata(rng):
    for _ in range(10):
        g1 = exp_sl2(0.3 * rng.normal() * E_X) @ exp_sl2(0.3 * rng.normal() * E_Y) @ exp_sl2(rng.normal() * K)
        g2 = exp_sl2(0.3 * rng.normal() * E_Y) @ exp_sl2(rng.normal() * K)
        m = psi_equivariant_map(g1, g2)
        cs = crooked_surface(StemConfiguration(*(m.apply(p) for p in STANDARD_CONFIGURATION.points())))
        assert is_identity_component(cs.T.matrix)
        for p, expected in SURFACE_SAMPLES:
            assert cs_membership(cs, m.apply(p)) is expected


def test_stem_halves_are_exchanged_by_inversion():
    p = embed_mink([0.0, 0.5, 0.9])
    assert classify_standard_surface(p) is EinStratumTag.STEM_T1
    assert classify_standard_surface(inversion(p)) is EinStratumTag.STEM_T2


def test_spine_and_stem_hypersphere(standard_surface):
    assert circle_contains(cs_spine(standard_surface), P0)
    assert circle_contains(cs_spine(standard_surface), PINF)
    sphere = cs_stem_hypersphere(standard_surface)
    assert sphere.contains(embed_mink([0.0, 1.0, 2.0]))
    assert not sphere.contains(embed_mink([3.0, 2.0, 2.0]))


def test_invariance_kinds():
    assert is_adapted(STANDARD_CONFIGURATION)
    assert invariance_kind(STANDARD_CONFIGURATION) is InvarianceKind.ADAPTED
    assert invariance_kind(INVARIANT_ONLY) is InvarianceKind.INVARIANT_ONLY
    shifted = StemConfiguration(embed_mink([0.5, 0.0, 0.0]), PINF, P1, P2)
    assert invariance_kind(shifted) is InvarianceKind.NEITHER


def test_invalid_configuration():
    with pytest.raises(InvalidConfigurationError):
        crooked_surface(StemConfiguration(P0, P1, P1, P2))


def test_closure_of_standard_lift_is_standard_surface():
    cfg = closure_of_lift(STANDARD_ADS_PLANE).cfg
    for a, b in zip(cfg.points(), STANDARD_CONFIGURATION.points()):
        assert same_point(a, b)
    other = closure_of_lift(STANDARD_ADS_PLANE, vertex_choice=-1).cfg
    assert same_point(other.q0, PINF)
    assert same_point(other.qinf, P0)


def _assert_same_plane(a, b):
    assert np.allclose(a.to_dict()["g"], b.to_dict()["g"])
    assert np.allclose(a.to_dict()["s"], b.to_dict()["s"])


def test_adapted_roundtrip(skew_ads_plane):
    g = exp_sl2(0.4 * E_Y) @ exp_sl2(1.1 * K)
    s = exp_sl2(0.3 * K) @ E_X @ exp_sl2(-0.3 * K)
    for cp in (STANDARD_ADS_PLANE, skew_ads_plane, construct(g, s)):
        _assert_same_plane(ads_from_adapted(closure_of_lift(cp)), cp)


def test_not_adapted():
    with pytest.raises(NotAdaptedError):
        ads_from_adapted(crooked_surface(INVARIANT_ONLY))


def test_stabilizer_fixes_standard_configuration():
    for m in (dilation(3.0), spine_boost(-0.7), dilation(0.2).compose(spine_boost(1.4))):
        for p in STANDARD_CONFIGURATION.points():
            assert same_point(m.apply(p), p)
