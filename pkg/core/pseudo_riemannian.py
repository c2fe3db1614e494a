from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from configs.core_config import (
    TAU_INC,
    TAU_NULL,
    TAU_ORTH,
    TAU_PATCH,
    TAU_PROJ,
    TAU_SIGNATURE,
    TAU_SUB,
)
from configs.logger_config import get_logger
from core.errors import (
    DegenerateSpanError,
    IncidentPairError,
    InvalidConfigurationError,
    NotIncidentError,
    NotNullError,
    PhotonInsideHypersurfaceError,
    SamePointError,
    WrongSignatureError,
    ZeroVectorError,
)

logger = get_logger("core.pseudo_riemannian")

# Gram matrix of Q = X^2 + Y^2 - Z^2 - UV in coordinates (X, Y, Z, U, V)
GRAM = np.array([
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, -0.5],
    [0.0, 0.0, 0.0, -0.5, 0.0],
])

P0_REP = np.array([0.0, 0.0, 0.0, 0.0, 1.0])
PINF_REP = np.array([0.0, 0.0, 0.0, 1.0, 0.0])
P1_REP = np.array([0.0, 1.0, 1.0, 0.0, 0.0])
P2_REP = np.array([0.0, 1.0, -1.0, 0.0, 0.0])
X_AXIS = np.array([1.0, 0.0, 0.0, 0.0, 0.0])

# columns: X, Y, (U - V), Z, (U + V); Q is diag(1, 1, 1, -1, -1) in this frame
_SIGNATURE_FRAME = np.array([
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 1.0, 0.0, 1.0],
    [0.0, 0.0, -1.0, 0.0, 1.0],
])
_SIGNATURE_FRAME_INV = np.linalg.inv(_SIGNATURE_FRAME)

# standard frame (e_X, p1, p2, p_inf, p0) used by normalize_to_standard
_STANDARD_FRAME = np.column_stack([X_AXIS, P1_REP, P2_REP, PINF_REP, P0_REP])
_STANDARD_FRAME_INV = np.linalg.inv(_STANDARD_FRAME)
_STANDARD_FRAME_DET = float(np.linalg.det(_STANDARD_FRAME))


def as_vec5(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(-1)
    if arr.shape != (5,):
        raise ValueError(f"expected 5 coordinates, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"non-finite coordinates: {arr}")
    return arr


def q_form(v) -> float:
    X, Y, Z, U, V = as_vec5(v)
    return float(X * X + Y * Y - Z * Z - U * V)


def b_form(v, w) -> float:
    return float(as_vec5(v) @ GRAM @ as_vec5(w))


def canonical_rep(v) -> np.ndarray:
    """Scale to sup-norm 1 with the first nonzero coordinate positive."""
    arr = as_vec5(v)
    norm = np.max(np.abs(arr))
    if norm == 0.0:
        raise ZeroVectorError("zero vector has no projective class")
    arr = arr / norm
    for x in arr:
        if abs(x) > TAU_PATCH:
            if x < 0:
                arr = -arr
            break
    return arr


@dataclass(frozen=True, eq=False)
class ProjectivePoint5:
    rep: np.ndarray

    def to_list(self):
        return [float(x) for x in self.rep]

    def __repr__(self):
        coords = ":".join(f"{x:.6g}" for x in self.rep)
        return f"ProjectivePoint5([{coords}])"


def point(v, tol: float = TAU_NULL) -> ProjectivePoint5:
    arr = as_vec5(v)
    norm = np.max(np.abs(arr))
    if norm == 0.0:
        logger.error("point() called with the zero vector")
        raise ZeroVectorError("zero vector has no projective class")
    if abs(q_form(arr)) > tol * norm * norm:
        logger.error(f"point() rejected non-null vector {arr}, Q = {q_form(arr)}")
        raise NotNullError(f"Q({arr.tolist()}) = {q_form(arr)} is not zero")
    return ProjectivePoint5(canonical_rep(arr))


P0 = ProjectivePoint5(P0_REP.copy())
PINF = ProjectivePoint5(PINF_REP.copy())
P1 = ProjectivePoint5(P1_REP.copy())
P2 = ProjectivePoint5(P2_REP.copy())


def same_point(p: ProjectivePoint5, q: ProjectivePoint5, tol: float = TAU_PROJ) -> bool:
    a = canonical_rep(p.rep)
    b = canonical_rep(q.rep)
    return min(np.max(np.abs(a - b)), np.max(np.abs(a + b))) <= tol


def incident(p: ProjectivePoint5, q: ProjectivePoint5, tol: float = TAU_INC) -> bool:
    return abs(b_form(p.rep, q.rep)) <= tol


def signature(vectors, tol: float = TAU_SIGNATURE) -> Tuple[int, int]:
    """(positive, negative) inertia of Q restricted to the span of the rows."""
    basis = np.atleast_2d(np.asarray(vectors, dtype=float))
    gram = basis @ GRAM @ basis.T
    eigenvalues = np.linalg.eigvalsh(0.5 * (gram + gram.T))
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    pos = int(np.sum(eigenvalues > tol * scale))
    neg = int(np.sum(eigenvalues < -tol * scale))
    return pos, neg


def _null_space(rows: np.ndarray, dim: int) -> np.ndarray:
    _, _, vt = np.linalg.svd(rows)
    return vt[-dim:]


@dataclass(frozen=True, eq=False)
class PhotonLine:
    basis: Tuple[np.ndarray, np.ndarray]

    def contains(self, p: ProjectivePoint5, tol: float = TAU_SUB) -> bool:
        q, _ = np.linalg.qr(np.column_stack(self.basis))
        r = canonical_rep(p.rep)
        return float(np.max(np.abs(r - q @ (q.T @ r)))) <= tol

    def sample(self, a: float, b: float) -> np.ndarray:
        return a * self.basis[0] + b * self.basis[1]


def photon_through(p: ProjectivePoint5, q: ProjectivePoint5) -> PhotonLine:
    if same_point(p, q):
        logger.error(f"photon_through: {p} and {q} coincide")
        raise SamePointError("a photon needs two distinct points")
    if not incident(p, q):
        logger.error(f"photon_through: {p} and {q} are not incident (B = {b_form(p.rep, q.rep)})")
        raise NotIncidentError("points are not incident")
    return PhotonLine((p.rep.copy(), q.rep.copy()))


def photon_meets_fixed_set(photon: PhotonLine) -> ProjectivePoint5:
    """The point of the photon on the hyperplane U = V."""
    b1, b2 = photon.basis
    d1 = b1[3] - b1[4]
    d2 = b2[3] - b2[4]
    scale = max(np.max(np.abs(b1)), np.max(np.abs(b2)))
    if max(abs(d1), abs(d2)) <= TAU_SUB * scale:
        logger.error("photon_meets_fixed_set: photon lies inside U = V")
        raise PhotonInsideHypersurfaceError("photon is contained in the hyperplane U = V")
    return ProjectivePoint5(canonical_rep(d2 * b1 - d1 * b2))


@dataclass(frozen=True, eq=False)
class SpacelikeCircle:
    # rows: Euclidean-orthonormal basis of F
    basis: np.ndarray
    # rows: e1, e2 unit spacelike, e3 unit timelike (B-orthonormal)
    frame: np.ndarray


def _lorentz_frame(basis: np.ndarray) -> np.ndarray:
    gram = basis @ GRAM @ basis.T
    eigenvalues, eigenvectors = np.linalg.eigh(0.5 * (gram + gram.T))
    order = np.argsort(-eigenvalues)
    rows = []
    for k in order:
        rows.append((eigenvectors[:, k] @ basis) / np.sqrt(abs(eigenvalues[k])))
    return np.array(rows)


def spacelike_circle_dual(p: ProjectivePoint5, q: ProjectivePoint5) -> SpacelikeCircle:
    if incident(p, q):
        logger.error(f"spacelike_circle_dual: {p} and {q} are incident")
        raise IncidentPairError("a spacelike circle is dual to a non-incident pair")
    basis = _null_space(np.vstack([GRAM @ p.rep, GRAM @ q.rep]), 3)
    sig = signature(basis)
    if sig != (2, 1):
        logger.error(f"spacelike_circle_dual: orthogonal complement has signature {sig}")
        raise WrongSignatureError(f"expected signature (2, 1), got {sig}")
    return SpacelikeCircle(basis=basis, frame=_lorentz_frame(basis))


def circle_contains(c: SpacelikeCircle, p: ProjectivePoint5) -> bool:
    r = canonical_rep(p.rep)
    if abs(q_form(r)) > TAU_NULL:
        return False
    residual = r - c.basis.T @ (c.basis @ r)
    return float(np.max(np.abs(residual))) <= TAU_SUB


def circle_sample(c: SpacelikeCircle, theta: float) -> ProjectivePoint5:
    e1, e2, e3 = c.frame
    return point(np.cos(theta) * e1 + np.sin(theta) * e2 + e3)


@dataclass(frozen=True, eq=False)
class EinsteinHypersphere:
    basis: np.ndarray

    def contains(self, p: ProjectivePoint5, tol: float = TAU_SUB) -> bool:
        q, _ = np.linalg.qr(self.basis.T)
        r = canonical_rep(p.rep)
        return float(np.max(np.abs(r - q @ (q.T @ r)))) <= tol


def hypersphere_through(q0: ProjectivePoint5, qinf: ProjectivePoint5,
                        q1: ProjectivePoint5, q2: ProjectivePoint5) -> EinsteinHypersphere:
    reps = np.vstack([q0.rep, qinf.rep, q1.rep, q2.rep])
    singular_values = np.linalg.svd(reps, compute_uv=False)
    if singular_values[3] <= TAU_SUB * singular_values[0]:
        logger.error(f"hypersphere_through: degenerate span, singular values {singular_values}")
        raise DegenerateSpanError("the four points do not span a 4-dimensional subspace")
    sig = signature(reps)
    if sig != (2, 2):
        logger.error(f"hypersphere_through: span has signature {sig}")
        raise WrongSignatureError(f"expected signature (2, 2), got {sig}")
    return EinsteinHypersphere(basis=reps)


@dataclass(frozen=True, eq=False)
class ConformalMap5:
    matrix: np.ndarray
    det: float

    def apply(self, p: ProjectivePoint5) -> ProjectivePoint5:
        return ProjectivePoint5(canonical_rep(self.matrix @ p.rep))

    def compose(self, other: "ConformalMap5") -> "ConformalMap5":
        m = self.matrix @ other.matrix
        return ConformalMap5(m, float(np.linalg.det(m)))

    def inverse(self) -> "ConformalMap5":
        m = np.linalg.solve(GRAM, self.matrix.T @ GRAM)
        return ConformalMap5(m, float(np.linalg.det(m)))

    def orthogonality_residual(self) -> float:
        return float(np.max(np.abs(self.matrix.T @ GRAM @ self.matrix - GRAM)))


def conformal_map(matrix) -> ConformalMap5:
    m = np.asarray(matrix, dtype=float)
    return ConformalMap5(m, float(np.linalg.det(m)))


def is_identity_component(matrix) -> bool:
    m = np.asarray(matrix, dtype=float)
    adapted = _SIGNATURE_FRAME_INV @ m @ _SIGNATURE_FRAME
    return np.linalg.det(m) > 0 and np.linalg.det(adapted[3:, 3:]) > 0


def oriented_rep(p: ProjectivePoint5) -> np.ndarray:
    """Representative with V - U > 0 off Ein^2, else V > 0, else canonical.

    Off the fixed set of the inversion this sign is the one the SL2 embedding
    produces, so maps that keep it positive preserve the orientation of the
    double cover.
    """
    r = canonical_rep(p.rep)
    if abs(r[4] - r[3]) > TAU_PATCH:
        return r if r[4] - r[3] > 0 else -r
    if abs(r[4]) > TAU_PATCH:
        return r if r[4] > 0 else -r
    return r


def _check_configuration(q0, qinf, q1, q2):
    if incident(q0, qinf):
        raise InvalidConfigurationError("vertex and covertex must not be incident")
    if same_point(q1, q2):
        raise InvalidConfigurationError("hingepoints must be distinct")
    for q in (q1, q2):
        if not (incident(q, q0) and incident(q, qinf)):
            raise InvalidConfigurationError(f"hingepoint {q} is not incident to both vertex and covertex")


def normalize_to_standard(q0: ProjectivePoint5, qinf: ProjectivePoint5,
                          q1: ProjectivePoint5, q2: ProjectivePoint5) -> ConformalMap5:
    """Identity-component conformal map sending (q0, qinf, q1, q2) to (p0, pinf, p1, p2)."""
    try:
        _check_configuration(q0, qinf, q1, q2)
    except InvalidConfigurationError as e:
        logger.error(f"normalize_to_standard: {e}")
        raise

    r0 = oriented_rep(q0)
    rinf = canonical_rep(qinf.rep)
    r1 = canonical_rep(q1.rep)
    r2 = canonical_rep(q2.rep)
    rinf = rinf * (-0.5 / b_form(r0, rinf))
    r2 = r2 * (2.0 / b_form(r1, r2))

    normal = _null_space(np.vstack([GRAM @ r for r in (r0, rinf, r1, r2)]), 1)[0]
    norm_sq = q_form(normal)
    if norm_sq <= TAU_SIGNATURE:
        logger.error(f"normalize_to_standard: orthogonal line is not spacelike (Q = {norm_sq})")
        raise InvalidConfigurationError("configuration does not span a (2, 2) subspace")
    normal = normal / np.sqrt(norm_sq)

    images = np.column_stack([normal, r1, r2, rinf, r0])
    # det(s) = det(images) / det(_STANDARD_FRAME) must be positive
    if np.linalg.det(images) * _STANDARD_FRAME_DET < 0:
        images[:, 0] = -images[:, 0]
    s = images @ _STANDARD_FRAME_INV
    if not is_identity_component(s):
        # negating the hingepoint pair keeps det and switches component
        images[:, 1:3] = -images[:, 1:3]
        s = images @ _STANDARD_FRAME_INV
    if not is_identity_component(s):
        logger.error("normalize_to_standard: no identity-component map for this configuration")
        raise InvalidConfigurationError("normalizing map is outside the identity component")

    result = conformal_map(s).inverse()
    residual = result.orthogonality_residual()
    if residual > TAU_ORTH:
        logger.error(f"normalize_to_standard: orthogonality residual {residual:.3e}")
        raise InvalidConfigurationError(f"normalizing map is not conformal (residual {residual:.3e})")
    logger.debug(f"normalize_to_standard: residual {residual:.3e}, det {result.det:+.6f}")
    return result
