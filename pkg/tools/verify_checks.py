import math
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from configs.core_config import TRIPLE_PRODUCT_SIGN
from configs.utils_config import EXP_BRANCH_WIDTH, EXP_ORACLE_MAX_NORM
from core.ads_geometry import (
    IsometryG0,
    act,
    dual_plane_radius_check,
    exp_at,
    fixed_by_symmetry,
    null_frame,
    null_plane,
    symmetry,
    time_orientation_sign,
    transvection,
    wing_select,
)
from core.crooked_ads import (
    CO_LABEL,
    LABEL,
    STANDARD_ADS_PLANE,
    AdSStratumTag,
    act_on_plane,
    algebraic_stratum,
    connecting_tangent,
    dual_description,
    from_dual,
    from_tangent_tag,
    lift,
    membership_ads,
    membership_hat,
    project_tag,
    standard_frame,
    tangent_cone,
)
from core.crooked_minkowski import (
    CrookedPlaneE3,
    StratumTag,
    classify_standard,
    membership,
    standard_frame_matrix,
)
from core.einstein_embedding import (
    STANDARD_CONFIGURATION,
    EinStratumTag,
    GeodesicKind,
    TotallyGeodesicKind,
    ads_from_adapted,
    classify_standard_surface,
    closure_of_lift,
    cs_membership,
    dual_plane_image,
    ein_tag_of_lifted,
    embed_mink,
    expected_geodesic_image,
    geodesic_image,
    inversion,
    is_adapted,
    psi,
    psi_equivariant_map,
    psi_inverse,
    psi_linear,
    ruling_ideal_endpoint,
    ruling_point,
    sample_totally_geodesic,
    stabilizer_samples,
    totally_geodesic_residual,
)
from core.pseudo_riemannian import (
    P1,
    P2,
    ProjectivePoint5,
    b_form,
    canonical_rep,
    circle_sample,
    hypersphere_through,
    normalize_to_standard,
    photon_meets_fixed_set,
    photon_through,
    point,
    q_form,
    spacelike_circle_dual,
)
from core.sl2_algebra import (
    IDENTITY,
    K,
    UPPER_NILPOTENT_MATRIX,
    adjoint,
    cross,
    det3,
    exp_series_oracle,
    exp_sl2,
    geodesic_connect_dbl,
    h2_embed,
    hyperbolic_geodesic,
    inverse_sl2,
    lie_triple_check,
    lorentz_dot,
    mink_to_sl2,
    rank1_kernel_image,
    sl2_to_mink,
)
from utils.sampling import (
    random_crooked_plane,
    random_ein_point,
    random_future_timelike,
    random_isometry,
    random_sl2,
    random_tangent,
    random_unit_spacelike,
    sample_standard_ads,
    sample_standard_tangent,
    stem_sample_in_future,
    tangent_to_plane_frame,
    to_plane_frame,
)

TANGENT_TAGS = [tag for tag in StratumTag if tag is not StratumTag.OUTSIDE]
ADS_TAGS = [from_tangent_tag(tag) for tag in TANGENT_TAGS]


@dataclass
class Tally:
    samples: int = 0
    failures: int = 0
    max_residual: float = 0.0

    def record(self, residual: float, tol: float) -> bool:
        self.samples += 1
        ok = residual <= tol
        if not ok:
            self.failures += 1
        self.max_residual = math.inf if math.isnan(residual) else max(self.max_residual, residual)
        return ok

    def record_match(self, ok: bool) -> bool:
        # mismatches count as residual 1
        return self.record(0.0 if ok else 1.0, 0.5)

    def merge(self, other: "Tally") -> None:
        self.samples += other.samples
        self.failures += other.failures
        self.max_residual = max(self.max_residual, other.max_residual)


@dataclass(frozen=True)
class CheckContext:
    tolerances: Dict[str, float]
    per_stratum: int
    random_points: int

    def tol(self, name: str) -> float:
        return self.tolerances[name]


CheckFn = Callable[[np.random.Generator, int, CheckContext], Tally]


@dataclass(frozen=True)
class CheckSpec:
    suite: str
    name: str
    fn: CheckFn
    # "samples": count is RunConfig.samples; "instances": Main Theorem instances; "fixed": a grid run once
    scale: str


CHECKS: List[CheckSpec] = []


def check(suite: str, name: str, scale: str = "samples"):
    def register(fn: CheckFn) -> CheckFn:
        CHECKS.append(CheckSpec(suite=suite, name=name, fn=fn, scale=scale))
        return fn

    return register


def checks_for(suite: str) -> List[CheckSpec]:
    if suite == "all":
        return list(CHECKS)
    return [spec for spec in CHECKS if spec.suite == suite]


def _relative(a, b) -> float:
    scale = max(1.0, float(np.max(np.abs(b))))
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) / scale


def _psl2_residual(a, b) -> float:
    return min(_relative(a, b), _relative(-np.asarray(a), b))


def _projective_residual(p: ProjectivePoint5, q: ProjectivePoint5) -> float:
    a = canonical_rep(p.rep)
    b = canonical_rep(q.rep)
    return float(min(np.max(np.abs(a - b)), np.max(np.abs(a + b))))


def _deck_swap(tag: AdSStratumTag) -> AdSStratumTag:
    return CO_LABEL[tag] if tag in CO_LABEL else LABEL[tag]


def _random_conformal(rng: np.random.Generator):
    return psi_equivariant_map(random_sl2(rng, 1.0), random_sl2(rng, 1.0))


# core

@check("core", "polarization")
def _polarization(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        v, w = rng.normal(size=5), rng.normal(size=5)
        a, b = rng.normal(size=2)
        expansion = a * a * q_form(v) + 2.0 * a * b * b_form(v, w) + b * b * q_form(w)
        scale = max(1.0, (abs(a) * np.max(np.abs(v)) + abs(b) * np.max(np.abs(w))) ** 2)
        tally.record(abs(q_form(a * v + b * w) - expansion) / scale, ctx.tol("polarization"))
    return tally


@check("core", "projective_point")
def _projective_point(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        v = random_ein_point(rng)
        scale = rng.choice([-1.0, 1.0]) * math.exp(rng.uniform(-3.0, 3.0))
        tally.record(_projective_residual(point(v), point(scale * v)), ctx.tol("projective"))
    return tally


@check("core", "photon")
def _photon(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        m = _random_conformal(rng)
        photon = photon_through(m.apply(STANDARD_CONFIGURATION.q0), m.apply(STANDARD_CONFIGURATION.q1))
        sample = photon.sample(*rng.normal(size=2))
        null = abs(q_form(sample)) / max(1.0, float(np.max(np.abs(sample)))) ** 2
        meet = canonical_rep(photon_meets_fixed_set(photon).rep)
        tally.record(max(null, abs(meet[3] - meet[4])), ctx.tol("conformal"))
    return tally


@check("core", "spacelike_circle")
def _spacelike_circle(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        m = _random_conformal(rng)
        p, q = m.apply(P1), m.apply(P2)
        c = spacelike_circle_dual(p, q)
        sample = canonical_rep(circle_sample(c, rng.uniform(0.0, 2.0 * math.pi)).rep)
        tally.record(max(abs(b_form(sample, p.rep)), abs(b_form(sample, q.rep))), ctx.tol("conformal"))
    return tally


@check("core", "stem_hypersphere")
def _stem_hypersphere(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        m = _random_conformal(rng)
        sphere = hypersphere_through(*(m.apply(p) for p in STANDARD_CONFIGURATION.points()))
        # X = 0 holds the standard stem hypersphere
        y, z, u = rng.normal(size=3)
        on_sphere = point([0.0, y, z, u, (y * y - z * z) / u])
        tally.record_match(sphere.contains(m.apply(on_sphere)))
    return tally


@check("core", "normalize_to_standard")
def _normalize(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        m = _random_conformal(rng)
        images = [m.apply(p) for p in STANDARD_CONFIGURATION.points()]
        t = normalize_to_standard(*images)
        residual = max(_projective_residual(t.apply(q), p)
                       for q, p in zip(images, STANDARD_CONFIGURATION.points()))
        scale = max(1.0, float(np.max(np.abs(t.matrix)))) ** 2
        tally.record(max(residual, t.orthogonality_residual() / scale), ctx.tol("conformal"))
    return tally


# sl2

@check("sl2", "exp_oracle")
def _exp_oracle(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        xi = random_tangent(rng, EXP_ORACLE_MAX_NORM)
        tally.record(_relative(exp_sl2(xi), exp_series_oracle(xi)), ctx.tol("exp_oracle"))
    return tally


@check("sl2", "exp_branch")
def _exp_branch(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        x, y = rng.uniform(-1.0, 1.0, size=2)
        q = rng.uniform(-EXP_BRANCH_WIDTH, EXP_BRANCH_WIDTH)
        z = rng.choice([-1.0, 1.0]) * math.sqrt(max(0.0, x * x + y * y - q))
        xi = mink_to_sl2([x, y, z])
        tally.record(_relative(exp_sl2(xi), exp_series_oracle(xi)), ctx.tol("exp_branch"))
    return tally


@check("sl2", "log_roundtrip")
def _log_roundtrip(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        g = random_sl2(rng)
        # the sign with nonnegative trace keeps the logarithm away from its -I branch
        if g[0, 0] + g[1, 1] < 0:
            g = -g
        xi = geodesic_connect_dbl(g)
        if xi is None:
            tally.record_match(False)
            continue
        tally.record(_relative(exp_sl2(xi), g), ctx.tol("log_roundtrip"))
    return tally


@check("sl2", "period", scale="fixed")
def _period(rng, count, ctx):
    tally = Tally()
    tol = ctx.tol("period")
    tally.record(_relative(exp_sl2(math.pi * K), -IDENTITY), tol)
    tally.record(_relative(exp_sl2(2.0 * math.pi * K), IDENTITY), tol)
    tally.record(_relative(exp_series_oracle(math.pi * K), -IDENTITY), tol)
    return tally


@check("sl2", "lie_triple")
def _lie_triple(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        tally.record_match(lie_triple_check(random_tangent(rng, 1.0), random_tangent(rng, 1.0),
                                            ctx.tol("lie_triple")))
    return tally


@check("sl2", "killing_form")
def _killing_form(rng, count, ctx):
    tally = Tally()
    basis = [mink_to_sl2(e) for e in np.eye(3)]
    for _ in range(count):
        h = random_tangent(rng, 1.0)
        ad = np.column_stack([sl2_to_mink(h @ e - e @ h) for e in basis])
        expected = 8.0 * lorentz_dot(h, h)
        tally.record(abs(float(np.trace(ad @ ad)) - expected) / max(1.0, abs(expected)), ctx.tol("lie_triple"))
    return tally


@check("sl2", "triple_product")
def _triple_product(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        a, b, c = (random_tangent(rng, 1.0) for _ in range(3))
        residual = abs(lorentz_dot(cross(a, b), c) - TRIPLE_PRODUCT_SIGN * det3(a, b, c))
        tally.record(residual, ctx.tol("lie_triple"))
    return tally


@check("sl2", "dual_plane_geodesic", scale="fixed")
def _dual_plane_geodesic(rng, count, ctx):
    tally = Tally()
    for t in np.linspace(-2.0, 2.0, 9):
        tally.record(_psl2_residual(h2_embed(0.0, math.exp(t)), hyperbolic_geodesic(t)), ctx.tol("projective"))
    return tally


@check("sl2", "rank1_boundary")
def _rank1_boundary(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        u, v = rng.normal(size=2), rng.normal(size=2)
        m = np.outer(u, v)
        kernel, image = rank1_kernel_image(m)
        annihilated = float(np.max(np.abs(m @ kernel))) / float(np.max(np.abs(m)))
        parallel = abs(image[0] * u[1] - image[1] * u[0]) / float(np.max(np.abs(u)))
        tally.record(max(annihilated, parallel), ctx.tol("lie_triple"))
    return tally


# ads

@check("ads", "action_composition")
def _action_composition(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        phi, chi = random_isometry(rng), random_isometry(rng)
        x = random_sl2(rng, 1.0)
        composed = IsometryG0(phi.g1 @ chi.g1, phi.g2 @ chi.g2)
        tally.record(_relative(act(composed, x), act(phi, act(chi, x))), ctx.tol("isometry"))
    return tally


@check("ads", "symmetry")
def _symmetry(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        phi = random_isometry(rng)
        g, x = random_sl2(rng, 1.0), random_sl2(rng, 1.0)
        # the symmetry about the identity conjugates (g1, g2) to (g2, g1)
        switched = _relative(symmetry(IDENTITY, act(phi, x)),
                             act(IsometryG0(phi.g2, phi.g1), symmetry(IDENTITY, x)))
        involution = _relative(symmetry(g, symmetry(g, x)), x)
        residual = max(switched, involution) if fixed_by_symmetry(g, g) else math.inf
        tally.record(residual, ctx.tol("isometry"))
    return tally


@check("ads", "transvection_flow")
def _transvection_flow(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        xi = random_tangent(rng, 1.0)
        s, t = rng.uniform(-1.0, 1.0, size=2)
        tally.record(_relative(transvection(xi, t, exp_sl2(s * xi)), exp_sl2((s + t) * xi)), ctx.tol("isometry"))
    return tally


@check("ads", "dual_plane_radius")
def _dual_plane_radius(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        v = 0.5 * math.pi * adjoint(random_sl2(rng, 1.0), K)
        tally.record_match(dual_plane_radius_check(random_sl2(rng), v))
    return tally


@check("ads", "particles_close")
def _particles_close(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        g = random_sl2(rng)
        h = exp_sl2(random_tangent(rng, 1.0))
        xi = adjoint(h, K)
        # round-off after conjugating by h grows like |h|^4
        scale = max(1.0, float(np.max(np.abs(h)))) ** 4
        half = _relative(exp_at(g, math.pi * xi), -g)
        full = _relative(exp_at(g, 2.0 * math.pi * xi), g)
        tally.record(max(half, full) / scale, ctx.tol("isometry"))
    return tally


def _null_plane_sample(rng, frame) -> np.ndarray:
    a = rng.choice([-1.0, 1.0]) * math.exp(rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 2.0))
    y = np.array([[a, rng.normal(0.0, 2.0)], [0.0, 1.0 / a]])
    return inverse_sl2(frame.h) @ y @ frame.h


@check("ads", "null_plane_transvection")
def _null_plane_transvection(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        n = adjoint(random_sl2(rng, 1.0), UPPER_NILPOTENT_MATRIX)
        contains = null_plane(IDENTITY, n)
        x = _null_plane_sample(rng, null_frame(IDENTITY, n))
        tally.record_match(contains(x) and contains(transvection(n, rng.uniform(-2.0, 2.0), x)))
    return tally


@check("ads", "wing_orientation")
def _wing_orientation(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        n = adjoint(random_sl2(rng, 1.0), UPPER_NILPOTENT_MATRIX)
        u = mink_to_sl2(random_future_timelike(rng))
        x = _null_plane_sample(rng, null_frame(IDENTITY, n))
        tally.record_match(time_orientation_sign(u) == 1
                           and wing_select(IDENTITY, n, u)(x) == wing_select(IDENTITY, n)(x))
    return tally


# crooked

@check("crooked", "e3_equivariance")
def _e3_equivariance(rng, count, ctx):
    tally = Tally()
    tol = ctx.tol("membership")
    for i in range(count):
        tag = TANGENT_TAGS[i % len(TANGENT_TAGS)]
        cp = CrookedPlaneE3(vertex=rng.normal(size=3), s=sl2_to_mink(random_unit_spacelike(rng)))
        q = cp.vertex + standard_frame_matrix(cp.s) @ sample_standard_tangent(rng, tag)
        a = standard_frame_matrix(sl2_to_mink(random_unit_spacelike(rng)))
        shift = rng.normal(size=3)
        moved = CrookedPlaneE3(vertex=a @ cp.vertex + shift, s=a @ cp.s)
        tally.record_match(membership(cp, q, tol) is tag and membership(moved, a @ q + shift, tol) is tag)
    return tally


@check("crooked", "e3_cone")
def _e3_cone(rng, count, ctx):
    tally = Tally()
    tol = ctx.tol("membership")
    for i in range(count):
        w = sample_standard_tangent(rng, TANGENT_TAGS[i % len(TANGENT_TAGS)])
        scale = math.exp(rng.uniform(-3.0, 3.0))
        tally.record_match(classify_standard(scale * w, tol) is classify_standard(w, tol))
    return tally


@check("crooked", "ads_equivariance")
def _ads_equivariance(rng, count, ctx):
    tally = Tally()
    tol = ctx.tol("membership")
    for i in range(count):
        tag = ADS_TAGS[i % len(ADS_TAGS)]
        cp = random_crooked_plane(rng)
        x = to_plane_frame(cp, sample_standard_ads(rng, tag))
        phi = random_isometry(rng)
        tally.record_match(membership_ads(cp, x, tol) is tag
                           and membership_ads(act_on_plane(phi, cp), act(phi, x), tol) is tag)
    return tally


@check("crooked", "dual_roundtrip")
def _dual_roundtrip(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        cp = random_crooked_plane(rng)
        back = from_dual(dual_description(cp))
        spine = min(_relative(back.s, cp.s), _relative(-back.s, cp.s))
        tally.record(max(_psl2_residual(back.g, cp.g), spine), ctx.tol("roundtrip"))
    return tally


@check("crooked", "lift_deck")
def _lift_deck(rng, count, ctx):
    tally = Tally()
    tol = ctx.tol("membership")
    for i in range(count):
        cp = random_crooked_plane(rng)
        hcp = lift(cp, 1 if rng.random() < 0.5 else -1)
        x = to_plane_frame(cp, sample_standard_ads(rng, ADS_TAGS[i % len(ADS_TAGS)]))
        label = membership_hat(hcp, x, tol)
        tally.record_match(membership_hat(hcp, -x, tol) is _deck_swap(label))
    return tally


# einstein

@check("einstein", "golden_coordinates", scale="fixed")
def _golden_coordinates(rng, count, ctx):
    tally = Tally()
    tol = ctx.tol("projective")
    golden = [
        (IDENTITY, [0.0, 0.0, 0.0, 0.0, 1.0]),
        (-IDENTITY, [0.0, 0.0, 0.0, 1.0, 0.0]),
    ]
    golden += [(np.array([[1.0, t], [0.0, 1.0]]), [0.0, t, t, 0.0, 4.0]) for t in (-3.0, 1.0, 7.0)]
    for m, expected in golden:
        tally.record(_projective_residual(psi(m), point(expected)), tol)
    cfg = closure_of_lift(STANDARD_ADS_PLANE).cfg
    tally.record(_projective_residual(cfg.q1, point([0.0, 1.0, 1.0, 0.0, 0.0])), tol)
    tally.record(_projective_residual(cfg.q2, point([0.0, 1.0, -1.0, 0.0, 0.0])), tol)
    return tally


@check("einstein", "psi_null")
def _psi_null(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        v = psi_linear(random_sl2(rng))
        tally.record(abs(q_form(v)) / float(np.max(np.abs(v))) ** 2, ctx.tol("psi_null"))
    return tally


@check("einstein", "psi_inversion")
def _psi_inversion(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        m = random_sl2(rng)
        tally.record(_projective_residual(psi(-m), inversion(psi(m))), ctx.tol("psi_inversion"))
    return tally


@check("einstein", "psi_roundtrip")
def _psi_roundtrip(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        m = random_sl2(rng)
        tally.record(_relative(psi_inverse(psi(m)), m), ctx.tol("roundtrip"))
    return tally


@check("einstein", "psi_equivariance")
def _psi_equivariance(rng, count, ctx):
    tally = Tally()
    for _ in range(count):
        g1, g2, x = random_sl2(rng, 1.0), random_sl2(rng, 1.0), random_sl2(rng)
        m = psi_equivariant_map(g1, g2)
        image = _projective_residual(psi(g1 @ x @ inverse_sl2(g2)), m.apply(psi(x)))
        orthogonality = m.orthogonality_residual() / max(1.0, float(np.max(np.abs(m.matrix)))) ** 2
        tally.record(max(image, orthogonality), ctx.tol("conformal"))
    return tally


@check("einstein", "geodesic_images", scale="fixed")
def _geodesic_images(rng, count, ctx):
    tally = Tally()
    grid = {
        GeodesicKind.HYPERBOLIC: np.linspace(-5.0, 5.0, 100),
        GeodesicKind.ANTI_HYPERBOLIC: np.linspace(-5.0, 5.0, 100),
        GeodesicKind.ELLIPTIC: np.linspace(-3.0, 3.0, 100),
        GeodesicKind.UNIPOTENT: np.linspace(-5.0, 5.0, 100),
    }
    for kind, ts in grid.items():
        for t in ts:
            tally.record(_relative(geodesic_image(kind, t), expected_geodesic_image(kind, t)),
                         ctx.tol("geodesic_image"))
    # the dual plane of the identity lands on the z < 0 sheet of the hyperboloid
    for t in np.linspace(-3.0, 3.0, 13):
        tally.record(_relative(dual_plane_image(t), np.array([0.0, -math.sinh(t), -math.cosh(t)])),
                     ctx.tol("geodesic_image"))
    return tally


@check("einstein", "cartan_images", scale="fixed")
def _cartan_images(rng, count, ctx):
    tally = Tally()
    for t in np.linspace(-5.0, 5.0, 20):
        spine = geodesic_image(GeodesicKind.HYPERBOLIC, t)
        cospine = geodesic_image(GeodesicKind.ANTI_HYPERBOLIC, t)
        tally.record_match(abs(spine[0]) < 1.0 < abs(cospine[0]))
    return tally


@check("einstein", "totally_geodesic")
def _totally_geodesic(rng, count, ctx):
    tally = Tally()
    kinds = list(TotallyGeodesicKind)
    for i in range(count):
        kind = kinds[i % len(kinds)]
        m = sample_totally_geodesic(kind, rng, 1)[0]
        tally.record(totally_geodesic_residual(kind, psi(m)), ctx.tol("totally_geodesic"))
    return tally


@check("einstein", "rulings", scale="fixed")
def _rulings(rng, count, ctx):
    tally = Tally()
    for theta in np.linspace(0.0, 2.0 * math.pi, 24, endpoint=False):
        for sign in (1, -1):
            for eta in np.linspace(-2.0, 2.0, 5):
                x, y, z = ruling_point(theta, sign, eta)
                tally.record(abs(x * x + y * y - z * z - 1.0), ctx.tol("projective"))
            endpoint = ruling_ideal_endpoint(theta, sign)
            limit = embed_mink(ruling_point(theta, sign, 1e6))
            tally.record(_projective_residual(limit, endpoint), ctx.tol("ruling_limit"))
    # the rulings bounding the Borel image end at p1
    for theta, sign in ((0.0, 1), (math.pi, -1)):
        tally.record(_projective_residual(ruling_ideal_endpoint(theta, sign), P1), ctx.tol("projective"))
        x, y, z = ruling_point(theta, sign, 3.0)
        tally.record(abs(y - z), ctx.tol("projective"))
    for theta, sign in ((0.0, -1), (math.pi, 1)):
        tally.record(_projective_residual(ruling_ideal_endpoint(theta, sign), P2), ctx.tol("projective"))
    return tally


@check("einstein", "stabilizer")
def _stabilizer(rng, count, ctx):
    tally = Tally()
    for i in range(count):
        p = psi(sample_standard_ads(rng, ADS_TAGS[i % len(ADS_TAGS)]))
        m = stabilizer_samples(rng, 1)[0]
        tag = classify_standard_surface(p)
        tally.record_match(classify_standard_surface(m.apply(p)) is tag)
    return tally


# main-theorem

@check("main-theorem", "tangent_cone_correspondence", scale="instances")
def _tangent_cone_correspondence(rng, count, ctx):
    """Strata of an AdS crooked plane are the exponentials of the strata of its tangent cone, both ways."""
    tally = Tally()
    tol = ctx.tol("membership")
    for _ in range(count):
        cp = random_crooked_plane(rng)
        cone = tangent_cone(cp)
        for tag in TANGENT_TAGS:
            expected = from_tangent_tag(tag)
            for _ in range(ctx.per_stratum):
                x = exp_at(cp.g, tangent_to_plane_frame(cp, sample_standard_tangent(rng, tag)))
                tally.record_match(membership_ads(cp, x, tol) is expected)

                x = to_plane_frame(cp, sample_standard_ads(rng, expected))
                xi = connecting_tangent(cp, x, tol)
                tally.record_match(algebraic_stratum(standard_frame(cp, x), tol) is expected
                                   and membership_ads(cp, x, tol) is expected
                                   and xi is not None
                                   and membership(cone, sl2_to_mink(xi), tol) is tag)
        for _ in range(ctx.random_points):
            x = random_sl2(rng)
            tally.record_match(membership_ads(cp, x, tol) is algebraic_stratum(standard_frame(cp, x), tol))
    return tally


@check("main-theorem", "closure_of_lift", scale="instances")
def _closure_of_lift(rng, count, ctx):
    """Closures of lifted planes are adapted and psi carries lifted strata onto crooked-surface strata."""
    tally = Tally()
    tol = ctx.tol("membership")
    for _ in range(count):
        cp = random_crooked_plane(rng)
        choice = 1 if rng.random() < 0.5 else -1
        hcp = lift(cp, choice)
        cs = closure_of_lift(cp, choice)
        tally.record_match(is_adapted(cs.cfg))
        for tag in TANGENT_TAGS:
            for _ in range(ctx.per_stratum):
                w = sample_standard_tangent(rng, tag)
                future = stem_sample_in_future(w)
                x = exp_at(hcp.vertex, tangent_to_plane_frame(cp, w))
                label = membership_hat(hcp, x, tol)
                co_label = membership_hat(hcp, -x, tol)
                tally.record_match(label is from_tangent_tag(tag)
                                   and cs_membership(cs, psi(x), tol) is ein_tag_of_lifted(label, future))
                tally.record_match(co_label is _deck_swap(label)
                                   and cs_membership(cs, psi(-x), tol) is ein_tag_of_lifted(co_label, not future))
        # points off the lift stay off the surface
        for _ in range(ctx.random_points):
            x = random_sl2(rng)
            projected = project_tag(membership_hat(hcp, x, tol))
            tally.record_match(projected is membership_ads(cp, x, tol))
            if algebraic_stratum(standard_frame(cp, x), tol) is AdSStratumTag.OUTSIDE:
                tally.record_match(projected is AdSStratumTag.OUTSIDE
                                   and cs_membership(cs, psi(x), tol) is EinStratumTag.OUTSIDE
                                   and cs_membership(cs, psi(-x), tol) is EinStratumTag.OUTSIDE)
    return tally


@check("main-theorem", "adapted_roundtrip", scale="instances")
def _adapted_roundtrip(rng, count, ctx):
    """Adapted surfaces give back the plane they close up, and their strata are the psi-images of its lift."""
    tally = Tally()
    tol = ctx.tol("membership")
    for _ in range(count):
        cp = random_crooked_plane(rng)
        cs = closure_of_lift(cp)
        back = ads_from_adapted(cs)
        spine = min(_relative(back.s, cp.s), _relative(-back.s, cp.s))
        tally.record(max(_psl2_residual(back.g, cp.g), spine), ctx.tol("roundtrip"))

        # strata are read off the recovered plane, never off cs
        hcp = lift(back)
        for tag in TANGENT_TAGS:
            for _ in range(ctx.per_stratum):
                w = sample_standard_tangent(rng, tag)
                future = stem_sample_in_future(w)
                x = exp_at(hcp.vertex, tangent_to_plane_frame(back, w))
                tally.record_match(cs_membership(cs, psi(x), tol)
                                   is ein_tag_of_lifted(membership_hat(hcp, x, tol), future))
                tally.record_match(cs_membership(cs, psi(-x), tol)
                                   is ein_tag_of_lifted(membership_hat(hcp, -x, tol), not future))
        for _ in range(ctx.random_points):
            x = random_sl2(rng)
            label = membership_hat(hcp, x, tol)
            found = cs_membership(cs, psi(x), tol)
            if label is AdSStratumTag.STEM_INTERIOR:
                tally.record_match(found in (EinStratumTag.STEM_T1, EinStratumTag.STEM_T2))
            else:
                tally.record_match(found is ein_tag_of_lifted(label))
    return tally
