import math
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from configs.core_config import (
    EPS_Q,
    EXP_SERIES_MAX_NORM,
    EXP_SERIES_TAYLOR_DEGREE,
    ROTATION_GENERATOR,
    TAU_DET,
    TAU_PATCH,
    TAU_PROJ,
    TAU_SUB,
    TAU_TRACE,
    UPPER_NILPOTENT,
)
from configs.logger_config import get_logger
from core.errors import (
    DependentPairError,
    NormTooLargeError,
    NotRankOneError,
    NotSpacelikeError,
    NotNullError,
    NotUpperHalfplaneError,
    ZeroVectorError,
)

logger = get_logger("core.sl2_algebra")

IDENTITY = np.eye(2)
K = np.array(ROTATION_GENERATOR)
E_X = np.array([[1.0, 0.0], [0.0, -1.0]])
E_Y = np.array([[0.0, 1.0], [1.0, 0.0]])
E_Z = np.array([[0.0, 1.0], [-1.0, 0.0]])
UPPER_NILPOTENT_MATRIX = np.array(UPPER_NILPOTENT)


class VectorType(Enum):
    SPACELIKE = "Spacelike"
    TIMELIKE = "Timelike"
    NULL = "Null"


def as_mat2(m) -> np.ndarray:
    arr = np.asarray(m, dtype=float)
    if arr.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"non-finite matrix entries: {arr.tolist()}")
    return arr


def det2(m) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def as_sl2(m, tol: float = TAU_DET) -> np.ndarray:
    arr = as_mat2(m)
    if abs(det2(arr) - 1.0) > tol:
        raise ValueError(f"determinant {det2(arr)} is not 1")
    return arr


def as_tangent(m, tol: float = 1e-12) -> np.ndarray:
    arr = as_mat2(m)
    scale = max(1.0, float(np.max(np.abs(arr))))
    if abs(arr[0, 0] + arr[1, 1]) > tol * scale:
        raise ValueError(f"tangent vector must be traceless, trace = {arr[0, 0] + arr[1, 1]}")
    return arr


def inverse_sl2(g) -> np.ndarray:
    return np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]])


def psl2_canonical(m) -> np.ndarray:
    arr = as_mat2(m)
    for x in arr.reshape(-1):
        if abs(x) > TAU_PATCH:
            return arr if x > 0 else -arr
    return arr


def psl2_equal(a, b, tol: float = TAU_PROJ) -> bool:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return min(np.max(np.abs(a - b)), np.max(np.abs(a + b))) <= tol


# sl(2,R) as Minkowski space

def sl2_to_mink(xi) -> np.ndarray:
    a, b, c = xi[0, 0], xi[0, 1], xi[1, 0]
    return np.array([a, 0.5 * (b + c), 0.5 * (b - c)])


def mink_to_sl2(v) -> np.ndarray:
    x, y, z = np.asarray(v, dtype=float)
    return np.array([[x, y + z], [y - z, -x]])


def mink_dot(v, w) -> float:
    return float(v[0] * w[0] + v[1] * w[1] - v[2] * w[2])


def lorentz_dot(A, B) -> float:
    # (1/2) tr(AB)
    return float(0.5 * (A[0, 0] * B[0, 0] + A[0, 1] * B[1, 0] + A[1, 0] * B[0, 1] + A[1, 1] * B[1, 1]))


def cross(A, B) -> np.ndarray:
    return 0.5 * (A @ B - B @ A)


def det3(A, B, C) -> float:
    return float(np.linalg.det(np.column_stack([sl2_to_mink(A), sl2_to_mink(B), sl2_to_mink(C)])))


def mink_det3(u, v, w) -> float:
    return float(np.linalg.det(np.column_stack([u, v, w])))


def adjoint(g, xi) -> np.ndarray:
    return g @ xi @ inverse_sl2(g)


def classify(xi, eps: float = EPS_Q) -> VectorType:
    q = lorentz_dot(xi, xi)
    if q > eps:
        return VectorType.SPACELIKE
    if q < -eps:
        return VectorType.TIMELIKE
    return VectorType.NULL


# exponential

def _cosh_sinhc(q: float) -> Tuple[float, float]:
    """cosh(sqrt q) and sinh(sqrt q)/sqrt q, continued to q < 0."""
    if abs(q) <= EPS_Q:
        return 1.0 + q / 2.0 + q * q / 24.0 + q ** 3 / 720.0, 1.0 + q / 6.0 + q * q / 120.0 + q ** 3 / 5040.0
    if q > 0:
        r = math.sqrt(q)
        return math.cosh(r), math.sinh(r) / r
    r = math.sqrt(-q)
    return math.cos(r), math.sin(r) / r


def exp_sl2(xi) -> np.ndarray:
    c, s = _cosh_sinhc(lorentz_dot(xi, xi))
    return c * IDENTITY + s * np.asarray(xi, dtype=float)


def exp_series_oracle(xi, degree: int = EXP_SERIES_TAYLOR_DEGREE) -> np.ndarray:
    """Scaling-and-squaring Taylor series, independent of the closed form."""
    xi = as_mat2(xi)
    norm = float(np.max(np.abs(xi)))
    if norm > EXP_SERIES_MAX_NORM:
        logger.error(f"exp_series_oracle: sup-norm {norm} exceeds {EXP_SERIES_MAX_NORM}")
        raise NormTooLargeError(f"sup-norm {norm} exceeds {EXP_SERIES_MAX_NORM}")
    nsquare = 0
    while norm / 2.0 ** nsquare > 0.5:
        nsquare += 1
    scaled = xi / 2.0 ** nsquare

    coefficients = np.zeros(degree + 1)
    coefficients[0] = 1.0
    for i in range(degree):
        coefficients[i + 1] = coefficients[i] / (i + 1)

    result = IDENTITY * coefficients[degree]
    for i in range(degree - 1, -1, -1):
        result = scaled @ result + IDENTITY * coefficients[i]
    for _ in range(nsquare):
        result = result @ result
    return result


def geodesic_connect_dbl(g) -> Optional[np.ndarray]:
    """Logarithm of g in SL2, or None when no one-parameter subgroup reaches g."""
    g = np.asarray(g, dtype=float)
    half_trace = 0.5 * (g[0, 0] + g[1, 1])
    traceless = g - half_trace * IDENTITY

    near_minus_identity = np.max(np.abs(g + IDENTITY)) <= TAU_TRACE
    if half_trace <= -1.0 + TAU_TRACE and near_minus_identity:
        return math.pi * K
    # tr > -2 always has a logarithm, on the elliptic branch below
    if half_trace <= -1.0:
        return None

    if abs(half_trace - 1.0) <= EPS_Q:
        return traceless
    if half_trace > 1.0:
        theta = math.acosh(half_trace)
        return (theta / math.sinh(theta)) * traceless
    theta = math.acos(half_trace)
    return (theta / math.sin(theta)) * traceless


# hyperbolic plane dual to the identity

def h2_embed(x: float, y: float) -> np.ndarray:
    if y <= 0:
        logger.error(f"h2_embed: ({x}, {y}) is not in the upper halfplane")
        raise NotUpperHalfplaneError(f"y = {y} must be positive")
    return psl2_canonical(np.array([[x, -(x * x + y * y)], [1.0, -x]]) / y)


def hyperbolic_geodesic(t: float) -> np.ndarray:
    return np.array([[0.0, -math.exp(t)], [math.exp(-t), 0.0]])


# boundary of SL2

def _rp1(u: float, v: float) -> np.ndarray:
    vec = np.array([u, v], dtype=float)
    vec = vec / np.max(np.abs(vec))
    first = vec[0] if abs(vec[0]) > TAU_PATCH else vec[1]
    return vec if first > 0 else -vec


def rank1_kernel_image(m) -> Tuple[np.ndarray, np.ndarray]:
    """Kernel and image lines of a rank-one matrix, as canonical RP1 points."""
    m = as_mat2(m)
    norm = float(np.max(np.abs(m)))
    if norm == 0.0 or abs(det2(m)) > TAU_DET * norm * norm:
        logger.error(f"rank1_kernel_image: {m.tolist()} is not rank one")
        raise NotRankOneError(f"matrix {m.tolist()} does not have rank one")
    row = m[0] if np.max(np.abs(m[0])) >= np.max(np.abs(m[1])) else m[1]
    column = m[:, 0] if np.max(np.abs(m[:, 0])) >= np.max(np.abs(m[:, 1])) else m[:, 1]
    return _rp1(row[1], -row[0]), _rp1(column[0], column[1])


def lie_triple_check(A, B, tol: float = TAU_SUB) -> bool:
    a = sl2_to_mink(A)
    b = sl2_to_mink(B)
    a = a / np.linalg.norm(a) if np.linalg.norm(a) > 0 else a
    b = b / np.linalg.norm(b) if np.linalg.norm(b) > 0 else b
    if np.linalg.norm(np.cross(a, b)) <= tol:
        logger.error("lie_triple_check: dependent pair")
        raise DependentPairError("the two tangent vectors are linearly dependent")
    A = mink_to_sl2(a)
    B = mink_to_sl2(b)
    bracket = A @ B - B @ A
    span = np.column_stack([a, b])
    for C in (bracket @ A - A @ bracket, bracket @ B - B @ bracket):
        c = sl2_to_mink(C)
        coefficients, *_ = np.linalg.lstsq(span, c, rcond=None)
        if np.max(np.abs(span @ coefficients - c)) > tol:
            return False
    return True


# standard frames

def standardizing_element(s) -> np.ndarray:
    """h in SL2 with h s h^-1 = diag(1, -1), for unit spacelike s."""
    s = np.asarray(s, dtype=float)
    if classify(s) is not VectorType.SPACELIKE:
        logger.error(f"standardizing_element: {s.tolist()} is not spacelike")
        raise NotSpacelikeError("spine direction must be spacelike")
    s = s / math.sqrt(lorentz_dot(s, s))
    a, b, c = s[0, 0], s[0, 1], s[1, 0]
    plus = max([np.array([b, 1.0 - a]), np.array([1.0 + a, c])], key=np.linalg.norm)
    minus = max([np.array([b, -1.0 - a]), np.array([1.0 - a, -c])], key=np.linalg.norm)
    frame = np.column_stack([plus, minus])
    d = det2(frame)
    if d < 0:
        frame[:, 1] = -frame[:, 1]
        d = -d
    return inverse_sl2(frame / math.sqrt(d))


def null_standardizing_element(n) -> Tuple[np.ndarray, float]:
    """h in SL2 and mu with h n h^-1 = mu [[0, 1], [0, 0]]; mu > 0 iff n is future-pointing."""
    n = np.asarray(n, dtype=float)
    norm = float(np.max(np.abs(n)))
    if norm == 0.0:
        raise ZeroVectorError("null direction must be nonzero")
    if abs(lorentz_dot(n, n)) > TAU_SUB * norm * norm:
        logger.error(f"null_standardizing_element: {n.tolist()} is not null")
        raise NotNullError("direction is not null")
    v = n[:, 0] if np.linalg.norm(n[:, 0]) >= np.linalg.norm(n[:, 1]) else n[:, 1]
    # orthonormal frame, so h is a rotation
    v = v / np.linalg.norm(v)
    w = np.array([-v[1], v[0]])
    frame_inv = np.column_stack([v, w])
    h = inverse_sl2(frame_inv)
    mu = float((h @ n @ frame_inv)[0, 1])
    return h, mu
