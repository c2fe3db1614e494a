import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Tuple

import numpy as np

from configs.core_config import TAU_MEMBERSHIP, TAU_UNIT
from configs.logger_config import get_logger
from core.errors import NotSpacelikeError, NotUnitSpacelikeError
from core.pseudo_riemannian import PINF, ProjectivePoint5, point
from core.sl2_algebra import mink_dot

logger = get_logger("core.crooked_minkowski")

ETA = np.diag([1.0, 1.0, -1.0])
STANDARD_HINGES = (np.array([0.0, 1.0, 1.0]), np.array([0.0, -1.0, 1.0]))


class StratumTag(Enum):
    STEM_INTERIOR = "StemInterior"
    HINGE1 = "Hinge1"
    HINGE2 = "Hinge2"
    WING1 = "Wing1"
    WING2 = "Wing2"
    SPINE = "Spine"
    VERTEX = "Vertex"
    OUTSIDE = "Outside"


# higher wins where strata overlap
TAG_PRIORITY: Dict[StratumTag, int] = {
    StratumTag.VERTEX: 6,
    StratumTag.HINGE1: 5,
    StratumTag.HINGE2: 5,
    StratumTag.SPINE: 4,
    StratumTag.WING1: 3,
    StratumTag.WING2: 3,
    StratumTag.STEM_INTERIOR: 2,
    StratumTag.OUTSIDE: 0,
}

CLOSURE_TAGS: Dict[str, FrozenSet[StratumTag]] = {
    "stem": frozenset({StratumTag.STEM_INTERIOR, StratumTag.HINGE1, StratumTag.HINGE2, StratumTag.VERTEX}),
    "wing1": frozenset({StratumTag.WING1, StratumTag.HINGE1, StratumTag.SPINE, StratumTag.VERTEX}),
    "wing2": frozenset({StratumTag.WING2, StratumTag.HINGE2, StratumTag.SPINE, StratumTag.VERTEX}),
}


@dataclass(frozen=True, eq=False)
class CrookedPlaneE3:
    vertex: np.ndarray
    s: np.ndarray

    def to_dict(self) -> dict:
        return {"vertex": self.vertex.tolist(), "spine_dir": self.s.tolist()}


def crooked_plane_e3(vertex, s) -> CrookedPlaneE3:
    vertex = np.asarray(vertex, dtype=float)
    s = np.asarray(s, dtype=float)
    if abs(mink_dot(s, s) - 1.0) > TAU_UNIT:
        logger.error(f"crooked_plane_e3: spine direction {s.tolist()} has s.s = {mink_dot(s, s)}")
        raise NotUnitSpacelikeError("spine direction must be unit spacelike")
    return CrookedPlaneE3(vertex=vertex, s=s)


STANDARD_CROOKED_PLANE = CrookedPlaneE3(vertex=np.zeros(3), s=np.array([1.0, 0.0, 0.0]))


def _check_spacelike(s: np.ndarray):
    if mink_dot(s, s) <= TAU_UNIT:
        logger.error(f"{s.tolist()} is not spacelike")
        raise NotSpacelikeError(f"spine direction {s.tolist()} is not spacelike")


def standard_frame_matrix(s) -> np.ndarray:
    """The SO(2,1)^0 matrix with columns (s, e2, e3) carrying e_x to s."""
    s = np.asarray(s, dtype=float)
    _check_spacelike(s)
    e1 = s / math.sqrt(mink_dot(s, s))
    timelike = np.array([0.0, 0.0, 1.0]) + e1[2] * e1
    e3 = timelike / math.sqrt(-mink_dot(timelike, timelike))
    e2 = ETA @ np.cross(e1, e3)
    e2 = e2 / math.sqrt(mink_dot(e2, e2))
    frame = np.column_stack([e1, e2, e3])
    if np.linalg.det(frame) < 0:
        frame[:, 1] = -frame[:, 1]
    return frame


def standardizing_rotation(s) -> np.ndarray:
    """R in SO(2,1)^0 with R s = (1, 0, 0)."""
    frame = standard_frame_matrix(s)
    return ETA @ frame.T @ ETA


def hinge_dirs(s) -> Tuple[np.ndarray, np.ndarray]:
    """Future null directions spanning s-perp, ordered so det3(s, n1, n2) > 0."""
    frame = standard_frame_matrix(s)
    n1, n2 = (frame @ n for n in STANDARD_HINGES)
    return n1, n2


def classify_standard(q, tol: float = TAU_MEMBERSHIP) -> StratumTag:
    """Stratum of q for the crooked plane with vertex 0 and spine direction e_x."""
    q = np.asarray(q, dtype=float)
    scale = float(np.max(np.abs(q)))
    if scale <= tol:
        return StratumTag.VERTEX
    x, y, z = q / scale
    if abs(x) <= tol and abs(y - z) <= tol:
        return StratumTag.HINGE1
    if abs(x) <= tol and abs(y + z) <= tol:
        return StratumTag.HINGE2
    if abs(y) <= tol and abs(z) <= tol:
        return StratumTag.SPINE
    if abs(y - z) <= tol and x > 0:
        return StratumTag.WING1
    if abs(y + z) <= tol and x < 0:
        return StratumTag.WING2
    if abs(x) <= tol and y * y - z * z < -tol:
        return StratumTag.STEM_INTERIOR
    return StratumTag.OUTSIDE


def to_standard(cp: CrookedPlaneE3, q) -> np.ndarray:
    return standardizing_rotation(cp.s) @ (np.asarray(q, dtype=float) - cp.vertex)


def membership(cp: CrookedPlaneE3, q, tol: float = TAU_MEMBERSHIP) -> StratumTag:
    return classify_standard(to_standard(cp, q), tol)


def spine_point(cp: CrookedPlaneE3, t: float) -> np.ndarray:
    return cp.vertex + t * cp.s


def closure_ideal_points(cp: CrookedPlaneE3) -> Tuple[ProjectivePoint5, Tuple[ProjectivePoint5, ProjectivePoint5]]:
    """The improper point and the two hingepoints on the ideal circle.

    Along vertex + t n the embedded point is [v + t n : Q(v) + 2t v.n : 1], so
    the limit is [n : 2 v.n : 0].
    """
    hingepoints = tuple(
        point(np.concatenate([n, [2.0 * mink_dot(cp.vertex, n), 0.0]]))
        for n in hinge_dirs(cp.s)
    )
    return PINF, hingepoints
