import math

import numpy as np

from configs.utils_config import (
    ISOMETRY_ENTRY_SCALE,
    SL2_ENTRY_SCALE,
    SL2_MIN_ABS_DET,
    STEM_RAPIDITY_RANGE,
    TANGENT_MAGNITUDE_RANGE,
)
from core.ads_geometry import IsometryG0
from core.crooked_ads import AdSCrookedPlane, AdSStratumTag
from core.crooked_minkowski import StratumTag
from core.sl2_algebra import inverse_sl2, mink_to_sl2, standardizing_element


def random_sl2(rng: np.random.Generator, scale: float = SL2_ENTRY_SCALE) -> np.ndarray:
    """Gaussian entries rescaled onto det = 1; a negative determinant flips the first row."""
    while True:
        m = rng.normal(0.0, scale, size=(2, 2))
        d = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(d) > SL2_MIN_ABS_DET * scale * scale:
            break
    if d < 0:
        m[0] = -m[0]
    return m / math.sqrt(abs(d))


def random_isometry(rng: np.random.Generator, scale: float = ISOMETRY_ENTRY_SCALE) -> IsometryG0:
    return IsometryG0(random_sl2(rng, scale), random_sl2(rng, scale))


def random_unit_spacelike(rng: np.random.Generator) -> np.ndarray:
    """A unit spacelike tangent vector, as a traceless matrix."""
    while True:
        v = rng.normal(size=3)
        q = v[0] ** 2 + v[1] ** 2 - v[2] ** 2
        if q > 0.05 * float(v @ v):
            return mink_to_sl2(v / math.sqrt(q))


def random_future_timelike(rng: np.random.Generator) -> np.ndarray:
    """A unit future-pointing timelike Minkowski vector."""
    rapidity = rng.uniform(*STEM_RAPIDITY_RANGE)
    angle = rng.uniform(0.0, 2.0 * math.pi)
    return np.array([math.sinh(rapidity) * math.cos(angle), math.sinh(rapidity) * math.sin(angle),
                     math.cosh(rapidity)])


def random_crooked_plane(rng: np.random.Generator) -> AdSCrookedPlane:
    return AdSCrookedPlane(g=random_sl2(rng), s=random_unit_spacelike(rng))


def _magnitude(rng: np.random.Generator, signed: bool = True) -> float:
    t = rng.uniform(*TANGENT_MAGNITUDE_RANGE)
    if signed and rng.random() < 0.5:
        return -t
    return t


def sample_standard_tangent(rng: np.random.Generator, tag: StratumTag) -> np.ndarray:
    """A Minkowski vector in the given stratum of the crooked plane with vertex 0 and spine e_x."""
    if tag is StratumTag.VERTEX:
        return np.zeros(3)
    if tag is StratumTag.STEM_INTERIOR:
        rapidity = rng.uniform(*STEM_RAPIDITY_RANGE)
        return _magnitude(rng) * np.array([0.0, math.sinh(rapidity), math.cosh(rapidity)])
    if tag is StratumTag.HINGE1:
        return _magnitude(rng) * np.array([0.0, 1.0, 1.0])
    if tag is StratumTag.HINGE2:
        return _magnitude(rng) * np.array([0.0, -1.0, 1.0])
    if tag is StratumTag.WING1:
        y = _magnitude(rng)
        return np.array([_magnitude(rng, signed=False), y, y])
    if tag is StratumTag.WING2:
        y = _magnitude(rng)
        return np.array([-_magnitude(rng, signed=False), y, -y])
    if tag is StratumTag.SPINE:
        return np.array([_magnitude(rng), 0.0, 0.0])
    raise ValueError(f"no sampler for stratum {tag.value}")


def sample_standard_ads(rng: np.random.Generator, tag: AdSStratumTag) -> np.ndarray:
    """An SL2 element in the given stratum of the standard AdS crooked plane, built from matrix entries."""
    sign = 1.0 if rng.random() < 0.5 else -1.0
    low, high = TANGENT_MAGNITUDE_RANGE
    if tag is AdSStratumTag.VERTEX:
        return sign * np.eye(2)
    if tag is AdSStratumTag.STEM_INTERIOR:
        a = rng.uniform(-0.95, 0.95)
        b = _magnitude(rng) * math.exp(rng.uniform(-1.0, 1.0))
        return sign * np.array([[a, b], [(a * a - 1.0) / b, a]])
    if tag is AdSStratumTag.HINGE1:
        return sign * np.array([[1.0, _magnitude(rng)], [0.0, 1.0]])
    if tag is AdSStratumTag.HINGE2:
        return sign * np.array([[1.0, 0.0], [_magnitude(rng), 1.0]])
    if tag is AdSStratumTag.WING1:
        a = math.exp(rng.uniform(low, high))
        return sign * np.array([[a, _magnitude(rng)], [0.0, 1.0 / a]])
    if tag is AdSStratumTag.WING2:
        a = math.exp(-rng.uniform(low, high))
        return sign * np.array([[a, 0.0], [_magnitude(rng), 1.0 / a]])
    if tag is AdSStratumTag.SPINE:
        t = _magnitude(rng)
        return sign * np.diag([math.exp(t), math.exp(-t)])
    raise ValueError(f"no sampler for stratum {tag.value}")


def to_plane_frame(cp: AdSCrookedPlane, y) -> np.ndarray:
    """Carry y from the standard plane to cp."""
    h = standardizing_element(cp.s)
    return cp.g @ inverse_sl2(h) @ y @ h


def tangent_to_plane_frame(cp: AdSCrookedPlane, w) -> np.ndarray:
    """Carry a standard-frame Minkowski tangent vector to the tangent space at the vertex of cp."""
    h = standardizing_element(cp.s)
    return inverse_sl2(h) @ mink_to_sl2(w) @ h


def stem_sample_in_future(w) -> bool:
    """Whether exp of the stem vector w is reached from the vertex in future time in (0, pi) mod 2 pi."""
    magnitude = math.sqrt(max(0.0, w[2] ** 2 - w[0] ** 2 - w[1] ** 2))
    angle = magnitude if w[2] > 0 else -magnitude
    return math.fmod(angle + 4.0 * math.pi, 2.0 * math.pi) < math.pi


def random_tangent(rng: np.random.Generator, max_norm: float) -> np.ndarray:
    a, b, c = rng.uniform(-max_norm, max_norm, size=3)
    return np.array([[a, b], [c, -a]])


def random_ein_point(rng: np.random.Generator) -> np.ndarray:
    """A uniformly oriented null vector of R^{3,2}."""
    spatial = rng.normal(size=3)
    spatial /= np.linalg.norm(spatial)
    temporal = rng.normal(size=2)
    temporal /= np.linalg.norm(temporal)
    # U = t - w, V = t + w gives Q = (x^2 + y^2 + w^2) - (z^2 + t^2) = 0
    x, y, w = spatial
    z, t = temporal
    return np.array([x, y, z, t - w, t + w])
