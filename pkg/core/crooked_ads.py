import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Optional, Tuple

import numpy as np

from configs.core_config import TAU_ADS_MEMBERSHIP, TAU_UNIT
from configs.logger_config import get_logger
from core.ads_geometry import IsometryG0, dual_plane_contains, exp_at
from core.crooked_minkowski import (
    TAG_PRIORITY,
    CrookedPlaneE3,
    StratumTag,
    membership,
)
from core.errors import GeodesicNotInPlaneError, NotUnitSpacelikeError
from core.sl2_algebra import (
    K,
    adjoint,
    as_sl2,
    as_tangent,
    classify,
    cross,
    geodesic_connect_dbl,
    inverse_sl2,
    lorentz_dot,
    psl2_canonical,
    sl2_to_mink,
    standardizing_element,
    VectorType,
)

logger = get_logger("core.crooked_ads")


class AdSStratumTag(Enum):
    STEM_INTERIOR = "StemInterior"
    HINGE1 = "Hinge1"
    HINGE2 = "Hinge2"
    WING1 = "Wing1"
    WING2 = "Wing2"
    SPINE = "Spine"
    VERTEX = "Vertex"
    COHINGE1 = "Cohinge1"
    COHINGE2 = "Cohinge2"
    COWING1 = "Cowing1"
    COWING2 = "Cowing2"
    COSPINE = "Cospine"
    COVERTEX = "Covertex"
    OUTSIDE = "Outside"


CO_LABEL: Dict[AdSStratumTag, AdSStratumTag] = {
    AdSStratumTag.HINGE1: AdSStratumTag.COHINGE1,
    AdSStratumTag.HINGE2: AdSStratumTag.COHINGE2,
    AdSStratumTag.WING1: AdSStratumTag.COWING1,
    AdSStratumTag.WING2: AdSStratumTag.COWING2,
    AdSStratumTag.SPINE: AdSStratumTag.COSPINE,
    AdSStratumTag.VERTEX: AdSStratumTag.COVERTEX,
    # particles close up in the double cover, so the stem is its own deck image
    AdSStratumTag.STEM_INTERIOR: AdSStratumTag.STEM_INTERIOR,
    AdSStratumTag.OUTSIDE: AdSStratumTag.OUTSIDE,
}
LABEL: Dict[AdSStratumTag, AdSStratumTag] = {label: label for label in CO_LABEL}
LABEL.update({co: label for label, co in CO_LABEL.items()})

CLOSURE_TAGS: Dict[str, FrozenSet[AdSStratumTag]] = {
    "stem": frozenset({AdSStratumTag.STEM_INTERIOR, AdSStratumTag.HINGE1, AdSStratumTag.HINGE2,
                       AdSStratumTag.VERTEX}),
    "wing1": frozenset({AdSStratumTag.WING1, AdSStratumTag.HINGE1, AdSStratumTag.SPINE, AdSStratumTag.VERTEX}),
    "wing2": frozenset({AdSStratumTag.WING2, AdSStratumTag.HINGE2, AdSStratumTag.SPINE, AdSStratumTag.VERTEX}),
}


def from_tangent_tag(tag: StratumTag) -> AdSStratumTag:
    return AdSStratumTag(tag.value)


def _priority(tag: AdSStratumTag) -> int:
    return TAG_PRIORITY[StratumTag(LABEL[tag].value)]


@dataclass(frozen=True, eq=False)
class AdSCrookedPlane:
    g: np.ndarray
    s: np.ndarray

    def to_dict(self) -> dict:
        return {"g": psl2_canonical(self.g).tolist(), "s": canonical_spine_sign(self.s).tolist()}


@dataclass(frozen=True, eq=False)
class HatAdSCrookedPlane:
    vertex: np.ndarray
    s: np.ndarray

    @property
    def covertex(self) -> np.ndarray:
        return -self.vertex


def _check_unit_spacelike(s: np.ndarray):
    if classify(s) is not VectorType.SPACELIKE or abs(lorentz_dot(s, s) - 1.0) > TAU_UNIT:
        logger.error(f"spine direction {s.tolist()} has s.s = {lorentz_dot(s, s)}")
        raise NotUnitSpacelikeError("spine direction must be unit spacelike")


def construct(g, s) -> AdSCrookedPlane:
    g = as_sl2(g)
    s = as_tangent(s)
    _check_unit_spacelike(s)
    return AdSCrookedPlane(g=g, s=s)


STANDARD_ADS_PLANE = AdSCrookedPlane(g=np.eye(2), s=np.array([[1.0, 0.0], [0.0, -1.0]]))


def tangent_cone(cp: AdSCrookedPlane) -> CrookedPlaneE3:
    return CrookedPlaneE3(vertex=np.zeros(3), s=sl2_to_mink(cp.s))


def _tangent_tag(cone: CrookedPlaneE3, r, tol: float) -> Tuple[StratumTag, Optional[np.ndarray]]:
    xi = geodesic_connect_dbl(r)
    if xi is None:
        return StratumTag.OUTSIDE, None
    return membership(cone, sl2_to_mink(xi), tol), xi


def membership_ads(cp: AdSCrookedPlane, x, tol: float = TAU_ADS_MEMBERSHIP) -> AdSStratumTag:
    """Stratum of x, read off the tangent cone through every geodesic from the vertex to x."""
    cone = tangent_cone(cp)
    r = inverse_sl2(cp.g) @ np.asarray(x, dtype=float)
    best = StratumTag.OUTSIDE
    for candidate in (r, -r):
        tag, _ = _tangent_tag(cone, candidate, tol)
        if TAG_PRIORITY[tag] > TAG_PRIORITY[best]:
            best = tag
    return from_tangent_tag(best)


def connecting_tangent(cp: AdSCrookedPlane, x, tol: float = TAU_ADS_MEMBERSHIP) -> Optional[np.ndarray]:
    """A tangent vector at the vertex in the stratum membership_ads reports, or None when Outside."""
    cone = tangent_cone(cp)
    r = inverse_sl2(cp.g) @ np.asarray(x, dtype=float)
    best, best_xi = StratumTag.OUTSIDE, None
    for candidate in (r, -r):
        tag, xi = _tangent_tag(cone, candidate, tol)
        if TAG_PRIORITY[tag] > TAG_PRIORITY[best]:
            best, best_xi = tag, xi
    return best_xi


def standard_frame(cp: AdSCrookedPlane, x) -> np.ndarray:
    """x moved by the isometry that carries cp to the standard plane (e, diag(1, -1))."""
    h = standardizing_element(cp.s)
    return psl2_canonical(h @ inverse_sl2(cp.g) @ np.asarray(x, dtype=float) @ inverse_sl2(h))


def algebraic_stratum(y, tol: float = TAU_ADS_MEMBERSHIP) -> AdSStratumTag:
    """Stratum of y for the standard plane, from matrix entries alone.

    Stem: equal diagonals with |a| < 1. Hinges: unipotents. Wings: triangular
    with diagonal a > 1 (upper) or a < 1 (lower). Spine: diagonal.
    """
    y = psl2_canonical(y)
    scale = max(1.0, float(np.max(np.abs(y))))
    a, b, c, d = y[0, 0], y[0, 1], y[1, 0], y[1, 1]
    if a < 0:
        a, b, c, d = -a, -b, -c, -d
    upper = abs(c) <= tol * scale
    lower = abs(b) <= tol * scale
    if upper and lower:
        if abs(a - 1.0) <= tol * scale:
            return AdSStratumTag.VERTEX
        return AdSStratumTag.SPINE
    if upper and abs(a - 1.0) <= tol * scale:
        return AdSStratumTag.HINGE1
    if lower and abs(a - 1.0) <= tol * scale:
        return AdSStratumTag.HINGE2
    if upper and a > 1.0:
        return AdSStratumTag.WING1
    if lower and a < 1.0:
        return AdSStratumTag.WING2
    if abs(a - d) <= tol * scale and abs(a) < 1.0:
        return AdSStratumTag.STEM_INTERIOR
    return AdSStratumTag.OUTSIDE


def act_on_plane(phi: IsometryG0, cp: AdSCrookedPlane) -> AdSCrookedPlane:
    return AdSCrookedPlane(g=phi.g1 @ cp.g @ inverse_sl2(phi.g2), s=adjoint(phi.g2, cp.s))


def canonical_spine_sign(s) -> np.ndarray:
    """s or -s, whichever has its first nonzero Minkowski coordinate positive."""
    s = np.asarray(s, dtype=float)
    for coordinate in sl2_to_mink(s):
        if abs(coordinate) > TAU_UNIT:
            return s if coordinate > 0 else -s
    return s


@dataclass(frozen=True, eq=False)
class DualDescription:
    """The hyperbolic plane H = g* (held by its dual point g) and the geodesic l(t) = p exp(t u) in it."""
    dual_point: np.ndarray
    line_point: np.ndarray
    line_dir: np.ndarray

    def line(self, t: float) -> np.ndarray:
        return exp_at(self.line_point, t * self.line_dir)


def dual_description(cp: AdSCrookedPlane) -> DualDescription:
    h = standardizing_element(cp.s)
    line_point = cp.g @ inverse_sl2(h) @ K @ h
    return DualDescription(dual_point=cp.g.copy(), line_point=line_point, line_dir=cp.s.copy())


def from_dual(dual: DualDescription, samples: Tuple[float, ...] = (-1.0, 0.0, 1.0)) -> AdSCrookedPlane:
    g = dual.dual_point
    for t in samples:
        if not dual_plane_contains(g, dual.line(t)):
            logger.error(f"from_dual: l({t}) is not in the dual plane of the vertex")
            raise GeodesicNotInPlaneError("the geodesic does not lie in the dual plane")
    logs = []
    for t in (0.0, 1.0):
        xi = geodesic_connect_dbl(inverse_sl2(g) @ dual.line(t))
        if xi is None:
            raise GeodesicNotInPlaneError(f"no geodesic from the vertex to l({t})")
        logs.append(xi)
    normal = cross(logs[0], logs[1])
    norm_sq = lorentz_dot(normal, normal)
    if norm_sq <= 0:
        logger.error(f"from_dual: stem plane is degenerate (normal has square {norm_sq})")
        raise GeodesicNotInPlaneError("vertex and geodesic do not span a timelike plane")
    s = canonical_spine_sign(normal / math.sqrt(norm_sq))
    return AdSCrookedPlane(g=g.copy(), s=s)


def lift(cp: AdSCrookedPlane, vertex_choice: int = 1) -> HatAdSCrookedPlane:
    sign = 1.0 if vertex_choice >= 0 else -1.0
    return HatAdSCrookedPlane(vertex=sign * cp.g, s=cp.s.copy())


def membership_hat(hcp: HatAdSCrookedPlane, x, tol: float = TAU_ADS_MEMBERSHIP) -> AdSStratumTag:
    """Stratum of x in the lift: geodesics from the vertex give labels, from the covertex co-labels."""
    cone = CrookedPlaneE3(vertex=np.zeros(3), s=sl2_to_mink(hcp.s))
    r = inverse_sl2(hcp.vertex) @ np.asarray(x, dtype=float)
    from_vertex, _ = _tangent_tag(cone, r, tol)
    from_covertex, _ = _tangent_tag(cone, -r, tol)
    label = from_tangent_tag(from_vertex)
    co_label = CO_LABEL[from_tangent_tag(from_covertex)]
    return label if _priority(label) >= _priority(co_label) else co_label


def project_tag(tag: AdSStratumTag) -> AdSStratumTag:
    """Merge a lifted stratum with its deck image."""
    return LABEL[tag]
