import numpy as np
import pytest
from pydantic import ValidationError

from core.crooked_minkowski import StratumTag, crooked_plane_e3
from core.einstein_embedding import STANDARD_CONFIGURATION
from core.errors import ImageMismatchError
from tools import mesh_tool
from tools.mesh_tool import MeshOutput, MeshTool, build_mesh, standard_pieces


def test_standard_pieces():
    pieces = standard_pieces(2.0, 4)
    assert [p.label for p in pieces] == ["stem", "stem", "wing1", "wing2"]
    assert [len(p.points) for p in pieces] == [15, 15, 25, 25]
    assert [len(p.triangles) for p in pieces] == [16, 16, 32, 32]


def test_e3_mesh_counts(standard_e3_plane):
    mesh = build_mesh(standard_e3_plane, 4)
    assert len(mesh.vertices) == 80
    assert len(mesh.triangles) == 96
    assert mesh.labels.count("stem") == 32
    assert mesh.labels.count("wing1") == mesh.labels.count("wing2") == 32


def test_e3_mesh_follows_the_plane():
    s = np.array([0.6, -0.2, 0.5])
    s = s / np.sqrt(s[0] ** 2 + s[1] ** 2 - s[2] ** 2)
    cp = crooked_plane_e3([1.0, -2.0, 0.5], s)
    mesh = build_mesh(cp, 3)
    assert np.allclose(mesh.vertices[0], cp.vertex)
    assert len(mesh.triangles) == 2 * 9 + 2 * 18


def test_ads_mesh(standard_ads_plane, skew_ads_plane):
    for cp in (standard_ads_plane, skew_ads_plane):
        mesh = build_mesh(cp, 3)
        assert len(mesh.vertices) == 52
        assert len(mesh.triangles) == 54
        # the chart is centered at the vertex
        assert np.allclose(mesh.vertices[0], 0.0)


def test_obj_format(standard_e3_plane):
    text = build_mesh(standard_e3_plane, 2).to_obj()
    lines = text.splitlines()
    assert lines[0] == "# crooked plane mesh"
    assert sum(line.startswith("v ") for line in lines) == 2 * 6 + 2 * 9
    assert [line for line in lines if line.startswith("g ")] == ["g stem", "g wing1", "g wing2"]
    faces = [line for line in lines if line.startswith("f ")]
    assert len(faces) == 2 * 4 + 2 * 8
    assert min(int(i) for face in faces for i in face.split()[1:]) == 1


def test_resolution_and_object_checks(standard_e3_plane, tmp_path):
    with pytest.raises(ValueError):
        build_mesh(standard_e3_plane, 1)
    with pytest.raises(ValueError):
        build_mesh(STANDARD_CONFIGURATION, 3)
    with pytest.raises(ValidationError):
        MeshTool().run(standard_e3_plane, 1, str(tmp_path / "mesh.obj"))


def test_misplaced_vertices_are_reported(standard_e3_plane, monkeypatch):
    monkeypatch.setattr(mesh_tool, "membership", lambda cp, q: StratumTag.OUTSIDE)
    with pytest.raises(ImageMismatchError):
        build_mesh(standard_e3_plane, 2)


def test_mesh_output_validation():
    with pytest.raises(ValidationError):
        MeshOutput(vertices=[(0.0, 0.0, 0.0)], triangles=[(0, 0, 1)], labels=["stem"])
    with pytest.raises(ValidationError):
        MeshOutput(vertices=[(0.0, 0.0, 0.0)], triangles=[], labels=["stem"])


def test_mesh_tool_writes_file(standard_e3_plane, tmp_path):
    out = tmp_path / "plane.obj"
    mesh = MeshTool().run(standard_e3_plane, 3, str(out))
    assert out.read_text(encoding="utf-8") == mesh.to_obj()
