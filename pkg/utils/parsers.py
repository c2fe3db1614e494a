import json
from pathlib import Path
from typing import List, Union

import numpy as np
from pydantic import BaseModel, Field, TypeAdapter, field_validator

from configs.logger_config import get_logger
from configs.utils_config import POINT_DIMENSION
from core.crooked_ads import AdSCrookedPlane, construct
from core.crooked_minkowski import CrookedPlaneE3, crooked_plane_e3
from core.einstein_embedding import StemConfiguration
from core.pseudo_riemannian import ProjectivePoint5, point

logger = get_logger("utils.parsers")

Matrix2 = List[List[float]]


def _check_matrix2(m: Matrix2) -> Matrix2:
    if len(m) != 2 or any(len(row) != 2 for row in m):
        raise ValueError(f"expected a 2x2 matrix, got {m}")
    return m


class CrookedPlaneE3Input(BaseModel):
    vertex: List[float] = Field(description="Vertex of the crooked plane in Minkowski coordinates (x, y, z)")
    spine_dir: List[float] = Field(description="Unit spacelike spine direction (x, y, z), x^2 + y^2 - z^2 = 1")

    @field_validator("vertex", "spine_dir")
    @classmethod
    def _three_coordinates(cls, v: List[float]) -> List[float]:
        if len(v) != 3:
            raise ValueError(f"expected 3 coordinates, got {len(v)}")
        return v

    def build(self) -> CrookedPlaneE3:
        return crooked_plane_e3(self.vertex, self.spine_dir)


class AdSCrookedPlaneInput(BaseModel):
    g: Matrix2 = Field(description="Vertex as a 2x2 matrix of determinant 1")
    s: Matrix2 = Field(description="Unit spacelike traceless 2x2 matrix giving the spine direction")

    @field_validator("g", "s")
    @classmethod
    def _two_by_two(cls, m: Matrix2) -> Matrix2:
        return _check_matrix2(m)

    def build(self) -> AdSCrookedPlane:
        return construct(self.g, self.s)


class StemConfigurationInput(BaseModel):
    q0: List[float] = Field(description="Vertex, homogeneous coordinates [X:Y:Z:U:V]")
    qinf: List[float] = Field(description="Covertex, homogeneous coordinates [X:Y:Z:U:V]")
    q1: List[float] = Field(description="First hingepoint, homogeneous coordinates [X:Y:Z:U:V]")
    q2: List[float] = Field(description="Second hingepoint, homogeneous coordinates [X:Y:Z:U:V]")

    @field_validator("q0", "qinf", "q1", "q2")
    @classmethod
    def _five_coordinates(cls, v: List[float]) -> List[float]:
        if len(v) != POINT_DIMENSION:
            raise ValueError(f"expected {POINT_DIMENSION} homogeneous coordinates, got {len(v)}")
        return v

    def build(self) -> StemConfiguration:
        return StemConfiguration(point(self.q0), point(self.qinf), point(self.q1), point(self.q2))


GeometricObject = Union[CrookedPlaneE3, AdSCrookedPlane, StemConfiguration]


def load_json(path: Union[str, Path]):
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def parse_object(data: dict) -> GeometricObject:
    """Dispatch on the keys of a JSON object: E3 plane, AdS plane or stem configuration."""
    if not isinstance(data, dict):
        raise ValueError("object file must hold a JSON object")
    if "spine_dir" in data:
        return CrookedPlaneE3Input.model_validate(data).build()
    if "g" in data:
        return AdSCrookedPlaneInput.model_validate(data).build()
    if "q0" in data:
        return StemConfigurationInput.model_validate(data).build()
    logger.error(f"parse_object: unrecognized object keys {sorted(data)}")
    raise ValueError(f"unrecognized object keys: {sorted(data)}")


_POINT_LIST = TypeAdapter(List[Union[List[float], Matrix2]])


def parse_points(data) -> List[np.ndarray]:
    """A JSON list of points: Minkowski triples, 2x2 matrices or homogeneous 5-vectors."""
    if isinstance(data, dict) and "points" in data:
        data = data["points"]
    return [np.asarray(p, dtype=float) for p in _POINT_LIST.validate_python(data)]


def as_ein_point(p: np.ndarray) -> ProjectivePoint5:
    if p.shape != (POINT_DIMENSION,):
        raise ValueError(f"expected homogeneous coordinates of length {POINT_DIMENSION}, got shape {p.shape}")
    return point(p)
