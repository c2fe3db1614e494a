import json

import numpy as np
import pytest
from pydantic import ValidationError

from core.crooked_ads import AdSCrookedPlane
from core.crooked_minkowski import CrookedPlaneE3
from core.einstein_embedding import StemConfiguration
from core.errors import NotUnitSpacelikeError
from core.pseudo_riemannian import P1, same_point
from utils.parsers import (
    StemConfigurationInput,
    as_ein_point,
    load_json,
    parse_object,
    parse_points,
)


def test_parse_e3_plane():
    cp = parse_object({"vertex": [1.0, 2.0, 3.0], "spine_dir": [1.0, 0.0, 0.0]})
    assert isinstance(cp, CrookedPlaneE3)
    assert np.allclose(cp.vertex, [1.0, 2.0, 3.0])
    assert cp.to_dict() == {"vertex": [1.0, 2.0, 3.0], "spine_dir": [1.0, 0.0, 0.0]}


def test_parse_ads_plane():
    cp = parse_object({"g": [[1.0, 0.0], [0.0, 1.0]], "s": [[0.0, 1.0], [1.0, 0.0]]})
    assert isinstance(cp, AdSCrookedPlane)


def test_parse_stem_configuration():
    data = {"q0": [0, 0, 0, 0, 1], "qinf": [0, 0, 0, 1, 0], "q1": [0, 1, 1, 0, 0], "q2": [0, 1, -1, 0, 0]}
    cfg = parse_object(data)
    assert isinstance(cfg, StemConfiguration)
    assert same_point(cfg.q1, P1)
    assert StemConfigurationInput.model_validate(cfg.to_dict()).build().to_dict() == cfg.to_dict()


def test_parse_object_errors():
    with pytest.raises(ValueError):
        parse_object({"apex": [0, 0, 0]})
    with pytest.raises(ValueError):
        parse_object([1, 2, 3])
    with pytest.raises(ValidationError):
        parse_object({"vertex": [0.0, 0.0], "spine_dir": [1.0, 0.0, 0.0]})
    with pytest.raises(ValidationError):
        parse_object({"g": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], "s": [[1.0, 0.0], [0.0, -1.0]]})
    with pytest.raises(ValidationError):
        parse_object({"q0": [0, 0, 0, 1], "qinf": [0, 0, 0, 1, 0], "q1": [0, 1, 1, 0, 0], "q2": [0, 1, -1, 0, 0]})
    with pytest.raises(NotUnitSpacelikeError):
        parse_object({"vertex": [0.0, 0.0, 0.0], "spine_dir": [0.0, 0.0, 1.0]})


def test_parse_points():
    points = parse_points([[0.0, 1.0, 2.0], [[1.0, 0.0], [0.0, 1.0]], [0, 0, 0, 0, 1]])
    assert [p.shape for p in points] == [(3,), (2, 2), (5,)]
    wrapped = parse_points({"points": [[1.0, 2.0, 3.0]]})
    assert np.allclose(wrapped[0], [1.0, 2.0, 3.0])
    with pytest.raises(ValidationError):
        parse_points(["not a point"])


def test_as_ein_point():
    assert same_point(as_ein_point(np.array([0.0, 2.0, 2.0, 0.0, 0.0])), P1)
    with pytest.raises(ValueError):
        as_ein_point(np.array([0.0, 1.0, 1.0]))


def test_load_json(tmp_path):
    path = tmp_path / "plane.json"
    path.write_text(json.dumps({"vertex": [0, 0, 0], "spine_dir": [1, 0, 0]}), encoding="utf-8")
    assert isinstance(parse_object(load_json(path)), CrookedPlaneE3)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(json.JSONDecodeError):
        load_json(bad)
