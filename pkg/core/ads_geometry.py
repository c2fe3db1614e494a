import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from configs.core_config import DUAL_PLANE_RADIUS_SQ, EPS_Q, TAU_ADS_MEMBERSHIP, TAU_TRACE
from configs.logger_config import get_logger
from core.errors import NotNullError, NotTimelikeError
from core.sl2_algebra import (
    UPPER_NILPOTENT_MATRIX,
    VectorType,
    classify,
    exp_sl2,
    inverse_sl2,
    lorentz_dot,
    mink_det3,
    null_standardizing_element,
    sl2_to_mink,
)

logger = get_logger("core.ads_geometry")

FUTURE_MINK = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True, eq=False)
class IsometryG0:
    """x -> g1 x g2^-1."""
    g1: np.ndarray
    g2: np.ndarray

    def inverse(self) -> "IsometryG0":
        return IsometryG0(inverse_sl2(self.g1), inverse_sl2(self.g2))


def act(phi: IsometryG0, x) -> np.ndarray:
    return phi.g1 @ x @ inverse_sl2(phi.g2)


def exp_at(p, xi) -> np.ndarray:
    return p @ exp_sl2(xi)


def symmetry(g, x) -> np.ndarray:
    """The geodesic symmetry about g: x -> g x^-1 g."""
    return g @ inverse_sl2(x) @ g


def transvection(xi, t: float, x) -> np.ndarray:
    half = exp_sl2(0.5 * t * np.asarray(xi, dtype=float))
    return half @ x @ half


def dual_plane_contains(g, h, tol: float = TAU_TRACE) -> bool:
    m = inverse_sl2(g) @ h
    return abs(m[0, 0] + m[1, 1]) <= tol


def dual_plane_radius_check(g, v) -> bool:
    """Whether the timelike geodesic from g with initial velocity v ends on g*."""
    if classify(v) is not VectorType.TIMELIKE:
        logger.error(f"dual_plane_radius_check: {np.asarray(v).tolist()} is not timelike")
        raise NotTimelikeError("initial velocity must be timelike")
    on_sphere = abs(lorentz_dot(v, v) - DUAL_PLANE_RADIUS_SQ) <= 1e-9
    lands = dual_plane_contains(g, exp_at(g, v))
    if on_sphere and not lands:
        logger.warning("dual_plane_radius_check: radius pi/2 geodesic missed the dual plane")
    return lands


def fixed_by_symmetry(g, h, tol: float = 1e-9) -> bool:
    image = symmetry(g, h)
    return min(np.max(np.abs(image - h)), np.max(np.abs(image + h))) <= tol


def _upper_triangular_part(y, tol: float) -> Optional[np.ndarray]:
    """y as +-[[a, b], [0, 1/a]] with a > 0, or None when y is not upper triangular."""
    scale = max(1.0, float(np.max(np.abs(y))))
    if abs(y[1, 0]) > tol * scale:
        return None
    return y if y[0, 0] > 0 else -y


@dataclass(frozen=True, eq=False)
class NullFrame:
    """A null geodesic p exp(t n), moved to the identity with direction [[0, 1], [0, 0]]."""
    p: np.ndarray
    n: np.ndarray
    h: np.ndarray
    mu: float

    def to_standard(self, x) -> np.ndarray:
        return self.h @ inverse_sl2(self.p) @ x @ inverse_sl2(self.h)


def null_frame(p, n) -> NullFrame:
    if np.max(np.abs(n)) == 0.0 or classify(n) is not VectorType.NULL:
        logger.error(f"null_frame: {np.asarray(n).tolist()} is not a nonzero null vector")
        raise NotNullError("geodesic direction must be null")
    h, mu = null_standardizing_element(n)
    return NullFrame(p=np.asarray(p, dtype=float), n=np.asarray(n, dtype=float), h=h, mu=mu)


def null_plane(p, n, tol: float = TAU_ADS_MEMBERSHIP) -> Callable[[np.ndarray], bool]:
    """Membership in Exp_p of the null plane orthogonal to n.

    In the standard frame this plane is the Borel subgroup of upper
    triangular matrices.
    """
    frame = null_frame(p, n)

    def contains(x) -> bool:
        return _upper_triangular_part(frame.to_standard(x), tol) is not None

    return contains


def wing_side(frame: NullFrame, x, u=None, tol: float = TAU_ADS_MEMBERSHIP) -> Optional[float]:
    """det3(v, u, w) for w = log of x in the null plane, None off the plane.

    v is the future tangent of the null geodesic and u a future vector off the
    plane, both expressed in the standard frame; u defaults to (0, 0, 1).
    """
    y = _upper_triangular_part(frame.to_standard(x), tol)
    if y is None:
        return None
    a, b = y[0, 0], y[0, 1]
    alpha = math.log(a)
    beta = b if abs(alpha) <= EPS_Q else b * alpha / math.sinh(alpha)
    w = np.array([alpha, 0.5 * beta, 0.5 * beta])
    v = sl2_to_mink(UPPER_NILPOTENT_MATRIX)
    if u is None:
        u = FUTURE_MINK
    else:
        u = sl2_to_mink(frame.h @ u @ inverse_sl2(frame.h))
    return mink_det3(v, u, w)


def wing_select(p, n, u=None, tol: float = TAU_ADS_MEMBERSHIP) -> Callable[[np.ndarray], bool]:
    """Membership in the wing attached to the null geodesic p exp(t n).

    u, when given, is a future-pointing tangent vector at p off the null plane;
    the wing does not depend on it.
    """
    frame = null_frame(p, n)

    def contains(x) -> bool:
        side = wing_side(frame, x, u, tol)
        return side is not None and side > tol

    return contains


def time_orientation_sign(xi) -> int:
    """+1 for future-pointing, -1 for past-pointing, 0 for spacelike or zero."""
    if classify(xi) is VectorType.SPACELIKE:
        return 0
    z = sl2_to_mink(xi)[2]
    if z > 0:
        return 1
    if z < 0:
        return -1
    return 0
