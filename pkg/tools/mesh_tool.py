# Mesh export for crooked planes
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, FrozenSet, List, Tuple, Type, Union

import numpy as np
from pydantic import BaseModel, Field, model_validator

from configs.logger_config import get_logger
from configs.tool_config import ADS_MESH_RADIUS, MESH_MIN_RESOLUTION, MESH_MIN_TRIANGLE_AREA, MESH_RADIUS
from core import crooked_ads, crooked_minkowski
from core.ads_geometry import exp_at
from core.crooked_ads import AdSCrookedPlane, membership_ads
from core.crooked_minkowski import CrookedPlaneE3, membership, standard_frame_matrix
from core.einstein_embedding import mink_from_ein, psi
from core.errors import ImageMismatchError
from core.sl2_algebra import inverse_sl2
from utils.sampling import tangent_to_plane_frame

logger = get_logger("tools.mesh_tool")


class MeshOutput(BaseModel):
    vertices: List[Tuple[float, float, float]] = Field(description="Vertex coordinates (x, y, z)")
    triangles: List[Tuple[int, int, int]] = Field(description="Zero-based vertex indices of each face")
    labels: List[str] = Field(description="Stratum group of each face: stem, wing1 or wing2")

    @model_validator(mode="after")
    def _consistent(self) -> "MeshOutput":
        if len(self.labels) != len(self.triangles):
            raise ValueError(f"{len(self.labels)} labels for {len(self.triangles)} triangles")
        n = len(self.vertices)
        for triangle in self.triangles:
            if any(not 0 <= i < n for i in triangle):
                raise ValueError(f"triangle {triangle} indexes outside {n} vertices")
        return self

    def to_obj(self) -> str:
        lines = ["# crooked plane mesh"]
        lines += ["v %.10f %.10f %.10f" % v for v in self.vertices]
        current = None
        for label, (a, b, c) in zip(self.labels, self.triangles):
            if label != current:
                lines.append(f"g {label}")
                current = label
            lines.append(f"f {a + 1} {b + 1} {c + 1}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Piece:
    label: str
    # points in the frame where the plane is standard (vertex 0, spine e_x)
    points: np.ndarray
    triangles: List[Tuple[int, int, int]]


def _triangle_grid(a, b, c, n: int) -> Tuple[np.ndarray, List[Tuple[int, int, int]]]:
    a, b, c = (np.asarray(p, dtype=float) for p in (a, b, c))
    index = {}
    points = []
    for i in range(n + 1):
        for j in range(n + 1 - i):
            index[i, j] = len(points)
            points.append(a + (i / n) * (b - a) + (j / n) * (c - a))
    triangles = []
    for i in range(n):
        for j in range(n - i):
            triangles.append((index[i, j], index[i + 1, j], index[i, j + 1]))
            if i + j + 1 < n:
                triangles.append((index[i + 1, j], index[i + 1, j + 1], index[i, j + 1]))
    return np.array(points), triangles


def _square_grid(corner, du, dv, n: int) -> Tuple[np.ndarray, List[Tuple[int, int, int]]]:
    corner, du, dv = (np.asarray(p, dtype=float) for p in (corner, du, dv))
    points = [corner + (i / n) * du + (j / n) * dv for i in range(n + 1) for j in range(n + 1)]
    triangles = []
    for i in range(n):
        for j in range(n):
            k = i * (n + 1) + j
            triangles.append((k, k + n + 1, k + 1))
            triangles.append((k + 1, k + n + 1, k + n + 2))
    return np.array(points), triangles


def standard_pieces(radius: float, resolution: int) -> List[Piece]:
    """Stem (future and past triangles) and the two wings of the standard crooked plane, cut off at radius."""
    r = radius
    pieces = []
    for sign in (1.0, -1.0):
        points, triangles = _triangle_grid([0.0, 0.0, 0.0], [0.0, r, sign * r], [0.0, -r, sign * r], resolution)
        pieces.append(Piece("stem", points, triangles))
    points, triangles = _square_grid([0.0, -r, -r], [r, 0.0, 0.0], [0.0, 2.0 * r, 2.0 * r], resolution)
    pieces.append(Piece("wing1", points, triangles))
    points, triangles = _square_grid([0.0, -r, r], [-r, 0.0, 0.0], [0.0, 2.0 * r, -2.0 * r], resolution)
    pieces.append(Piece("wing2", points, triangles))
    return pieces


Placement = Callable[[np.ndarray], Tuple[np.ndarray, bool]]


def _e3_placement(cp: CrookedPlaneE3) -> Tuple[float, Callable[[str], Placement]]:
    frame = standard_frame_matrix(cp.s)

    def for_label(label: str) -> Placement:
        allowed = crooked_minkowski.CLOSURE_TAGS[label]

        def place(w: np.ndarray) -> Tuple[np.ndarray, bool]:
            q = cp.vertex + frame @ w
            return q, membership(cp, q) in allowed

        return place

    return MESH_RADIUS, for_label


def _ads_placement(cp: AdSCrookedPlane) -> Tuple[float, Callable[[str], Placement]]:
    g_inv = inverse_sl2(cp.g)

    def for_label(label: str) -> Placement:
        allowed: FrozenSet = crooked_ads.CLOSURE_TAGS[label]

        def place(w: np.ndarray) -> Tuple[np.ndarray, bool]:
            x = exp_at(cp.g, tangent_to_plane_frame(cp, w))
            # Minkowski chart of psi, centered at the vertex
            return mink_from_ein(psi(g_inv @ x)), membership_ads(cp, x) in allowed

        return place

    return ADS_MESH_RADIUS, for_label


def _triangle_area(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    return 0.5 * float(np.linalg.norm(np.cross(b - a, c - a)))


def build_mesh(obj: Union[CrookedPlaneE3, AdSCrookedPlane], resolution: int) -> MeshOutput:
    if resolution < MESH_MIN_RESOLUTION:
        logger.error(f"build_mesh: resolution {resolution} is below {MESH_MIN_RESOLUTION}")
        raise ValueError(f"resolution must be at least {MESH_MIN_RESOLUTION}, got {resolution}")
    if isinstance(obj, CrookedPlaneE3):
        radius, for_label = _e3_placement(obj)
    elif isinstance(obj, AdSCrookedPlane):
        radius, for_label = _ads_placement(obj)
    else:
        raise ValueError(f"mesh export supports crooked planes, got {type(obj).__name__}")

    vertices, triangles, labels = [], [], []
    misplaced = 0
    for piece in standard_pieces(radius, resolution):
        place = for_label(piece.label)
        offset = len(vertices)
        for w in piece.points:
            q, ok = place(w)
            vertices.append(q)
            misplaced += not ok
        for a, b, c in piece.triangles:
            if _triangle_area(vertices[offset + a], vertices[offset + b], vertices[offset + c]) <= MESH_MIN_TRIANGLE_AREA:
                continue
            triangles.append((offset + a, offset + b, offset + c))
            labels.append(piece.label)

    if misplaced:
        logger.error(f"build_mesh: {misplaced} vertices fall outside the closure of their stratum")
        raise ImageMismatchError(f"{misplaced} mesh vertices do not re-classify to their stratum")
    logger.info(f"Mesh built: {len(vertices)} vertices, {len(triangles)} triangles at resolution {resolution}")
    return MeshOutput(vertices=[tuple(float(x) for x in v) for v in vertices], triangles=triangles, labels=labels)


def write_obj(mesh: MeshOutput, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(mesh.to_obj())


class MeshToolInput(BaseModel):
    resolution: int = Field(ge=MESH_MIN_RESOLUTION, description="Grid subdivisions along each edge of every piece")
    out: str = Field(description="Path of the OBJ file to write")


class MeshTool:
    name: str = "crooked_export_mesh"
    description: str = (
        "Triangulates the stem and both wings of a crooked plane on parameter grids and writes an OBJ file "
        "with one group per stratum. AdS crooked planes are drawn through the Einstein embedding in the "
        "Minkowski chart centered at the vertex."
    )
    args_schema: Type[BaseModel] = MeshToolInput

    def run(self, obj: Union[CrookedPlaneE3, AdSCrookedPlane], resolution: int, out: str) -> MeshOutput:
        args = MeshToolInput(resolution=resolution, out=out)
        mesh = build_mesh(obj, args.resolution)
        write_obj(mesh, args.out)
        logger.info(f"OBJ written to {args.out}")
        return mesh
