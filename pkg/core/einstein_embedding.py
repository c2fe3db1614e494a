import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Tuple

import numpy as np

from configs.core_config import ELLIPTIC_Z_SIGN, TAU_PATCH, TAU_PROJ
from configs.logger_config import get_logger
from core.crooked_ads import AdSCrookedPlane, AdSStratumTag, construct, lift
from core.crooked_minkowski import (
    STANDARD_CROOKED_PLANE,
    StratumTag,
    hinge_dirs,
    membership,
)
from core.errors import (
    ImageMismatchError,
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
    ConformalMap5,
    EinsteinHypersphere,
    PhotonLine,
    ProjectivePoint5,
    SpacelikeCircle,
    canonical_rep,
    conformal_map,
    hypersphere_through,
    normalize_to_standard,
    photon_meets_fixed_set,
    point,
    same_point,
    spacelike_circle_dual,
)
from core.sl2_algebra import (
    IDENTITY,
    K,
    as_mat2,
    exp_sl2,
    hyperbolic_geodesic,
    inverse_sl2,
    mink_det3,
    mink_dot,
    mink_to_sl2,
    sl2_to_mink,
)

logger = get_logger("core.einstein_embedding")

ETA = np.diag([1.0, 1.0, -1.0])

# (a, b, c, d, lambda) -> homogeneous coordinates of the SL2 embedding
_PSI_FRAME = np.array([
    [1.0, 0.0, 0.0, -1.0, 0.0],
    [0.0, 1.0, 1.0, 0.0, 0.0],
    [0.0, 1.0, -1.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 1.0, -2.0],
    [1.0, 0.0, 0.0, 1.0, 2.0],
])
_PSI_FRAME_INV = np.linalg.inv(_PSI_FRAME)


# Minkowski patch

def embed_mink(v) -> ProjectivePoint5:
    x, y, z = np.asarray(v, dtype=float)
    return point([x, y, z, x * x + y * y - z * z, 1.0])


def mink_from_ein(p: ProjectivePoint5) -> np.ndarray:
    r = canonical_rep(p.rep)
    if abs(r[4]) <= TAU_PATCH:
        logger.error(f"mink_from_ein: {p} lies on the lightcone of the improper point")
        raise NotInMinkowskiPatchError("V = 0 outside the Minkowski patch")
    return r[:3] / r[4]


def inversion(p: ProjectivePoint5) -> ProjectivePoint5:
    r = p.rep
    return ProjectivePoint5(canonical_rep(np.array([r[0], r[1], r[2], r[4], r[3]])))


def fixed_set_contains(p: ProjectivePoint5) -> bool:
    r = canonical_rep(p.rep)
    return abs(r[3] - r[4]) <= TAU_PROJ


# SL2 embedding

def psi_linear(m) -> np.ndarray:
    """Homogeneous coordinates [a-d : b+c : b-c : a+d-2 : a+d+2], unnormalized."""
    (a, b), (c, d) = np.asarray(m, dtype=float)
    return np.array([a - d, b + c, b - c, a + d - 2.0, a + d + 2.0])


def psi_direction(m) -> np.ndarray:
    """The linear part of psi_linear: psi(x + t m) = psi_linear(x) + t psi_direction(m)."""
    (a, b), (c, d) = np.asarray(m, dtype=float)
    return np.array([a - d, b + c, b - c, a + d, a + d])


def psi(m) -> ProjectivePoint5:
    return point(psi_linear(m))


def psi_inverse(p: ProjectivePoint5) -> np.ndarray:
    x, y, z, u, v = canonical_rep(p.rep)
    denominator = v - u
    if abs(denominator) <= TAU_PATCH:
        logger.error(f"psi_inverse: {p} is fixed by the inversion")
        raise OnEinstein2Error("U = V on the fixed set of the inversion")
    return np.array([
        [(2.0 * x + u + v) / denominator, 2.0 * (y + z) / denominator],
        [2.0 * (y - z) / denominator, (-2.0 * x + u + v) / denominator],
    ])


def psi_equivariant_map(g1, g2) -> ConformalMap5:
    """M with psi(g1 x g2^-1) = M psi(x) projectively."""
    g1 = as_mat2(g1)
    g2 = as_mat2(g2)
    # row-major vec(g1 x g2^-1) = kron(g1, g2^-T) vec(x)
    action = np.eye(5)
    action[:4, :4] = np.kron(g1, inverse_sl2(g2).T)
    return conformal_map(_PSI_FRAME @ action @ _PSI_FRAME_INV)


# rulings of the unit sphere

def ruling_point(theta: float, sign: int, eta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    if sign >= 0:
        return np.array([c - eta * s, s + eta * c, eta])
    return np.array([c + eta * s, s - eta * c, eta])


def ruling_ideal_endpoint(theta: float, sign: int) -> ProjectivePoint5:
    """Limit of the embedded ruling as eta -> +-infinity; lies on the ideal circle."""
    c, s = math.cos(theta), math.sin(theta)
    if sign >= 0:
        return point([-s, c, 1.0, 0.0, 0.0])
    return point([s, -c, 1.0, 0.0, 0.0])


# images of geodesics

class GeodesicKind(Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    UNIPOTENT = "unipotent"
    ANTI_HYPERBOLIC = "anti-hyperbolic"


def geodesic_element(kind: GeodesicKind, t: float) -> np.ndarray:
    if kind is GeodesicKind.ELLIPTIC:
        return exp_sl2(t * K)
    if kind is GeodesicKind.HYPERBOLIC:
        return np.diag([math.exp(t), math.exp(-t)])
    if kind is GeodesicKind.ANTI_HYPERBOLIC:
        return -np.diag([math.exp(t), math.exp(-t)])
    return np.array([[1.0, t], [0.0, 1.0]])


def expected_geodesic_image(kind: GeodesicKind, t: float) -> np.ndarray:
    if kind is GeodesicKind.ELLIPTIC:
        return np.array([0.0, 0.0, ELLIPTIC_Z_SIGN * math.tan(t / 2.0)])
    if kind is GeodesicKind.HYPERBOLIC:
        return np.array([math.tanh(t / 2.0), 0.0, 0.0])
    if kind is GeodesicKind.ANTI_HYPERBOLIC:
        return np.array([1.0 / math.tanh(t / 2.0), 0.0, 0.0])
    return np.array([0.0, t / 4.0, t / 4.0])


def geodesic_image(kind: GeodesicKind, t: float) -> np.ndarray:
    """Minkowski coordinates of psi of the one-parameter subgroup (or coset) point."""
    try:
        return mink_from_ein(psi(geodesic_element(kind, t)))
    except NotInMinkowskiPatchError:
        logger.error(f"geodesic_image: {kind.value} at t = {t} leaves the Minkowski patch")
        raise NotInPatchError(f"{kind.value} image at t = {t} is not in the Minkowski patch")


def geodesic_image_check(kind: GeodesicKind, t: float, tol: float = 1e-12) -> np.ndarray:
    image = geodesic_image(kind, t)
    expected = expected_geodesic_image(kind, t)
    scale = max(1.0, float(np.max(np.abs(expected))))
    if float(np.max(np.abs(image - expected))) > tol * scale:
        logger.error(f"geodesic_image_check: {kind.value} at t = {t} gave {image.tolist()}, "
                     f"expected {expected.tolist()}")
        raise ImageMismatchError(f"{kind.value} image mismatch at t = {t}")
    return image


# images of totally geodesic surfaces

class TotallyGeodesicKind(Enum):
    BOREL_UPPER = "borel_upper"
    BOREL_LOWER = "borel_lower"
    INDEFINITE = "indefinite"
    DUAL_PLANE = "dual_plane"


def _linear_equation(kind: TotallyGeodesicKind) -> np.ndarray:
    equations = {
        TotallyGeodesicKind.BOREL_UPPER: [0.0, 1.0, -1.0, 0.0, 0.0],
        TotallyGeodesicKind.BOREL_LOWER: [0.0, 1.0, 1.0, 0.0, 0.0],
        TotallyGeodesicKind.INDEFINITE: [1.0, 0.0, 0.0, 0.0, 0.0],
        TotallyGeodesicKind.DUAL_PLANE: [0.0, 0.0, 0.0, 1.0, 1.0],
    }
    return np.array(equations[kind])


def totally_geodesic_residual(kind: TotallyGeodesicKind, p: ProjectivePoint5) -> float:
    return abs(float(_linear_equation(kind) @ canonical_rep(p.rep)))


def totally_geodesic_image_check(kind: TotallyGeodesicKind,
                                 tol: float = TAU_PROJ) -> Callable[[ProjectivePoint5], bool]:
    """Predicate for the hyperplane section holding the psi-image of the surface.

    Upper triangulars: Y = Z. Lower triangulars: Y = -Z. Equal diagonals: X = 0.
    Trace zero: U + V = 0, the hyperboloid x^2 + y^2 - z^2 = -1 in the patch.
    """
    def contains(p: ProjectivePoint5) -> bool:
        return totally_geodesic_residual(kind, p) <= tol

    return contains


def sample_totally_geodesic(kind: TotallyGeodesicKind, rng: np.random.Generator, n: int) -> List[np.ndarray]:
    samples = []
    for _ in range(n):
        if kind is TotallyGeodesicKind.BOREL_UPPER:
            a = rng.choice([-1.0, 1.0]) * math.exp(rng.uniform(-2.0, 2.0))
            samples.append(np.array([[a, rng.normal(0.0, 3.0)], [0.0, 1.0 / a]]))
        elif kind is TotallyGeodesicKind.BOREL_LOWER:
            a = rng.choice([-1.0, 1.0]) * math.exp(rng.uniform(-2.0, 2.0))
            samples.append(np.array([[a, 0.0], [rng.normal(0.0, 3.0), 1.0 / a]]))
        elif kind is TotallyGeodesicKind.INDEFINITE:
            a = rng.uniform(-2.0, 2.0)
            b = rng.choice([-1.0, 1.0]) * math.exp(rng.uniform(-2.0, 2.0))
            samples.append(np.array([[a, b], [(a * a - 1.0) / b, a]]))
        else:
            a = rng.normal(0.0, 1.0)
            b = rng.choice([-1.0, 1.0]) * math.exp(rng.uniform(-2.0, 2.0))
            samples.append(np.array([[a, b], [(-1.0 - a * a) / b, -a]]))
    return samples


def dual_plane_image(t: float) -> np.ndarray:
    """Minkowski coordinates of psi(J(t)): (0, -sinh t, -cosh t)."""
    return mink_from_ein(psi(hyperbolic_geodesic(t)))


# crooked surfaces

class EinStratumTag(Enum):
    VERTEX = "Vertex"
    COVERTEX = "Covertex"
    HINGEPOINT1 = "Hingepoint1"
    HINGEPOINT2 = "Hingepoint2"
    HINGE = "Hinge"
    COHINGE = "Cohinge"
    STEM_T1 = "StemT1"
    STEM_T2 = "StemT2"
    WING1 = "Wing1"
    WING2 = "Wing2"
    SPINE_CIRCLE = "SpineCircle"
    OUTSIDE = "Outside"


_PATCH_TAGS: Dict[StratumTag, EinStratumTag] = {
    StratumTag.VERTEX: EinStratumTag.VERTEX,
    StratumTag.HINGE1: EinStratumTag.HINGE,
    StratumTag.HINGE2: EinStratumTag.HINGE,
    StratumTag.WING1: EinStratumTag.WING1,
    StratumTag.WING2: EinStratumTag.WING2,
    StratumTag.SPINE: EinStratumTag.SPINE_CIRCLE,
    StratumTag.OUTSIDE: EinStratumTag.OUTSIDE,
}

# the inversion exchanges vertex and covertex, hinges and cohinges, and the stem squares
_INVERTED_TAGS: Dict[EinStratumTag, EinStratumTag] = {
    EinStratumTag.VERTEX: EinStratumTag.COVERTEX,
    EinStratumTag.COVERTEX: EinStratumTag.VERTEX,
    EinStratumTag.HINGE: EinStratumTag.COHINGE,
    EinStratumTag.COHINGE: EinStratumTag.HINGE,
    EinStratumTag.STEM_T1: EinStratumTag.STEM_T2,
    EinStratumTag.STEM_T2: EinStratumTag.STEM_T1,
}

_LIFTED_TAGS: Dict[AdSStratumTag, EinStratumTag] = {
    AdSStratumTag.VERTEX: EinStratumTag.VERTEX,
    AdSStratumTag.COVERTEX: EinStratumTag.COVERTEX,
    AdSStratumTag.HINGE1: EinStratumTag.HINGE,
    AdSStratumTag.HINGE2: EinStratumTag.HINGE,
    AdSStratumTag.COHINGE1: EinStratumTag.COHINGE,
    AdSStratumTag.COHINGE2: EinStratumTag.COHINGE,
    AdSStratumTag.WING1: EinStratumTag.WING1,
    AdSStratumTag.COWING1: EinStratumTag.WING1,
    AdSStratumTag.WING2: EinStratumTag.WING2,
    AdSStratumTag.COWING2: EinStratumTag.WING2,
    AdSStratumTag.SPINE: EinStratumTag.SPINE_CIRCLE,
    AdSStratumTag.COSPINE: EinStratumTag.SPINE_CIRCLE,
    AdSStratumTag.OUTSIDE: EinStratumTag.OUTSIDE,
}


def ein_tag_of_lifted(tag: AdSStratumTag, stem_future: bool = True) -> EinStratumTag:
    """Crooked-surface stratum of the psi-image of a lifted-plane stratum.

    Stem points are split by stem_future: whether the particle from the vertex
    reaches them in future time less than pi.
    """
    if tag is AdSStratumTag.STEM_INTERIOR:
        return EinStratumTag.STEM_T1 if stem_future else EinStratumTag.STEM_T2
    return _LIFTED_TAGS[tag]


@dataclass(frozen=True, eq=False)
class StemConfiguration:
    q0: ProjectivePoint5
    qinf: ProjectivePoint5
    q1: ProjectivePoint5
    q2: ProjectivePoint5

    def points(self) -> Tuple[ProjectivePoint5, ProjectivePoint5, ProjectivePoint5, ProjectivePoint5]:
        return self.q0, self.qinf, self.q1, self.q2

    def to_dict(self) -> dict:
        return {"q0": self.q0.to_list(), "qinf": self.qinf.to_list(),
                "q1": self.q1.to_list(), "q2": self.q2.to_list()}


STANDARD_CONFIGURATION = StemConfiguration(P0, PINF, P1, P2)


@dataclass(frozen=True, eq=False)
class CrookedSurface:
    cfg: StemConfiguration
    T: ConformalMap5


def crooked_surface(cfg: StemConfiguration) -> CrookedSurface:
    return CrookedSurface(cfg=cfg, T=normalize_to_standard(*cfg.points()))


def _classify_patch(p: ProjectivePoint5, tol: float) -> EinStratumTag:
    v = mink_from_ein(p)
    tag = membership(STANDARD_CROOKED_PLANE, v, tol)
    if tag is StratumTag.STEM_INTERIOR:
        return EinStratumTag.STEM_T1 if v[2] > 0 else EinStratumTag.STEM_T2
    return _PATCH_TAGS[tag]


def classify_standard_surface(p: ProjectivePoint5, tol: float = 1e-9) -> EinStratumTag:
    """Stratum of p on the standard crooked surface, the closure of the standard crooked plane."""
    for special, tag in ((P0, EinStratumTag.VERTEX), (PINF, EinStratumTag.COVERTEX),
                         (P1, EinStratumTag.HINGEPOINT1), (P2, EinStratumTag.HINGEPOINT2)):
        if same_point(p, special):
            return tag
    r = canonical_rep(p.rep)
    # points within tol of the lightcone of the covertex are read through the inversion
    if abs(r[4]) > tol:
        return _classify_patch(p, tol)
    if abs(r[3]) > tol:
        tag = _classify_patch(inversion(p), tol)
        return _INVERTED_TAGS.get(tag, tag)
    return EinStratumTag.OUTSIDE


def cs_membership(cs: CrookedSurface, p: ProjectivePoint5, tol: float = 1e-9) -> EinStratumTag:
    return classify_standard_surface(cs.T.apply(p), tol)


def cs_spine(cs: CrookedSurface) -> SpacelikeCircle:
    return spacelike_circle_dual(cs.cfg.q1, cs.cfg.q2)


def cs_stem_hypersphere(cs: CrookedSurface) -> EinsteinHypersphere:
    return hypersphere_through(*cs.cfg.points())


# adaptedness

class InvarianceKind(Enum):
    ADAPTED = "adapted"
    INVARIANT_ONLY = "invariant-only"
    NEITHER = "neither"


def is_adapted(cfg: StemConfiguration) -> bool:
    return (same_point(inversion(cfg.q0), cfg.qinf)
            and same_point(inversion(cfg.q1), cfg.q1)
            and same_point(inversion(cfg.q2), cfg.q2))


def _preserves_pair(p: ProjectivePoint5, q: ProjectivePoint5) -> bool:
    ip, iq = inversion(p), inversion(q)
    return ((same_point(ip, p) and same_point(iq, q))
            or (same_point(ip, q) and same_point(iq, p)))


def invariance_kind(cfg: StemConfiguration) -> InvarianceKind:
    if is_adapted(cfg):
        return InvarianceKind.ADAPTED
    if _preserves_pair(cfg.q0, cfg.qinf) and _preserves_pair(cfg.q1, cfg.q2):
        return InvarianceKind.INVARIANT_ONLY
    return InvarianceKind.NEITHER


def closure_of_lift(cp: AdSCrookedPlane, vertex_choice: int = 1) -> CrookedSurface:
    """The crooked surface closing up the lift of cp; its hingepoints are hinge photons met with U = V."""
    hcp = lift(cp, vertex_choice)
    v = hcp.vertex
    hingepoints = []
    for n in hinge_dirs(sl2_to_mink(cp.s)):
        photon = PhotonLine((psi_linear(v), psi_direction(v @ mink_to_sl2(n))))
        hingepoints.append(photon_meets_fixed_set(photon))
    cfg = StemConfiguration(psi(v), psi(-v), hingepoints[0], hingepoints[1])
    if not is_adapted(cfg):
        logger.error(f"closure_of_lift: configuration {cfg.to_dict()} is not adapted")
        raise NotAdaptedError("closure of a lifted crooked plane must be adapted")
    return crooked_surface(cfg)


def _future_null_rep(p: ProjectivePoint5) -> np.ndarray:
    n = canonical_rep(p.rep)[:3]
    return n if n[2] > 0 else -n


def ads_from_adapted(cs: CrookedSurface) -> AdSCrookedPlane:
    """The AdS crooked plane whose lift closes up to cs, with vertex psi^-1(q0)."""
    if not is_adapted(cs.cfg):
        logger.error(f"ads_from_adapted: configuration {cs.cfg.to_dict()} is not adapted")
        raise NotAdaptedError("only adapted crooked surfaces come from AdS crooked planes")
    v = psi_inverse(cs.cfg.q0)
    v = v / math.sqrt(v[0, 0] * v[1, 1] - v[0, 1] * v[1, 0])
    to_identity = psi_equivariant_map(inverse_sl2(v), IDENTITY)
    f1 = _future_null_rep(to_identity.apply(cs.cfg.q1))
    f2 = _future_null_rep(to_identity.apply(cs.cfg.q2))
    s = ETA @ np.cross(f1, f2)
    s = s / math.sqrt(mink_dot(s, s))
    if mink_det3(s, f1, f2) < 0:
        s = -s
    cp = construct(v, mink_to_sl2(s))

    rebuilt = closure_of_lift(cp).cfg
    if not all(same_point(a, b) for a, b in zip(rebuilt.points(), cs.cfg.points())):
        logger.error(f"ads_from_adapted: rebuilt configuration {rebuilt.to_dict()} differs from {cs.cfg.to_dict()}")
        raise ImageMismatchError("reconstructed crooked plane does not close up to the given surface")
    return cp


# conformal maps fixing the standard configuration

def dilation(kappa: float) -> ConformalMap5:
    return conformal_map(np.diag([1.0, 1.0, 1.0, kappa, 1.0 / kappa]))


def spine_boost(t: float) -> ConformalMap5:
    """Boost of the (y, z) plane, psi-image of conjugation by diag(e^(t/2), e^(-t/2))."""
    m = np.eye(5)
    m[1:3, 1:3] = [[math.cosh(t), math.sinh(t)], [math.sinh(t), math.cosh(t)]]
    return conformal_map(m)


def stabilizer_samples(rng: np.random.Generator, n: int) -> List[ConformalMap5]:
    maps = []
    for _ in range(n):
        maps.append(dilation(math.exp(rng.uniform(-2.0, 2.0))).compose(spine_boost(rng.uniform(-2.0, 2.0))))
    return maps
