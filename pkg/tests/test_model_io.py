import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pdnf import (
    ModelFormatError,
    Pdnf,
    SoftmaxFamily,
    ThresholdFamily,
    WeightMatrix,
    load_model,
    save_model,
)
from pdnf import model_io

finite = st.floats(min_value=-1e9, max_value=1e9, allow_nan=False, width=64)


def sample_model():
    return Pdnf(WeightMatrix([[0.1, -2.5], [3.0, 0.0]]), SoftmaxFamily.default(2))


def test_document_layout():
    doc = model_io.to_dict(sample_model())
    assert doc["version"] == 1
    assert doc["n"] == 2 and doc["m"] == 2
    assert doc["weights"] == [[0.1, -2.5], [3.0, 0.0]]
    assert doc["family"]["kind"] == "softmax"
    assert doc["family"]["alpha"] == [[-1.0, 0.0, 1.0], [-1.0, 0.0, 1.0]]


def test_threshold_layout():
    p = Pdnf(WeightMatrix([[0.5]]), ThresholdFamily([0.0], [1.0]))
    doc = model_io.to_dict(p)
    assert doc["family"] == {"kind": "threshold", "low": [0.0], "high": [1.0]}


def test_file_round_trip(tmp_path):
    path = tmp_path / "model.json"
    p = sample_model()
    save_model(p, path)
    q = load_model(path)
    assert q.weights == p.weights
    assert q.family == p.family


def test_save_is_stable(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    save_model(sample_model(), a)
    save_model(load_model(a), b)
    assert a.read_text() == b.read_text()


@settings(max_examples=50)
@given(arrays(np.float64, (2, 2), elements=finite))
def test_weights_round_trip_bit_exact(w):
    p = Pdnf(WeightMatrix(w), SoftmaxFamily.default(2))
    q = model_io.loads(model_io.dumps(p))
    np.testing.assert_array_equal(q.weights.xi, w)


def test_rejects_wrong_version():
    doc = model_io.to_dict(sample_model())
    doc["version"] = 2
    with pytest.raises(ModelFormatError, match="version"):
        model_io.from_dict(doc)


def test_rejects_missing_fields():
    doc = model_io.to_dict(sample_model())
    del doc["weights"]
    with pytest.raises(ModelFormatError, match="weights"):
        model_io.from_dict(doc)


def test_rejects_shape_mismatch():
    doc = model_io.to_dict(sample_model())
    doc["n"] = 7
    with pytest.raises(ModelFormatError, match="shape"):
        model_io.from_dict(doc)


def test_rejects_unknown_family():
    doc = model_io.to_dict(sample_model())
    doc["family"] = {"kind": "mystery"}
    with pytest.raises(ModelFormatError, match="mystery"):
        model_io.from_dict(doc)


def test_rejects_family_width_mismatch():
    doc = model_io.to_dict(sample_model())
    doc["family"] = {"kind": "threshold", "low": [0.0], "high": [1.0]}
    with pytest.raises(ModelFormatError):
        model_io.from_dict(doc)


def test_rejects_bad_weights():
    doc = model_io.to_dict(sample_model())
    doc["weights"] = [[1.0], [2.0, 3.0]]
    with pytest.raises(ModelFormatError, match="weights"):
        model_io.from_dict(doc)


def test_loads_reports_json_position():
    with pytest.raises(ModelFormatError, match="line 1"):
        model_io.loads("{not json")
    with pytest.raises(ModelFormatError, match="object"):
        model_io.loads("[1, 2]")


def test_load_prefixes_path(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{}")
    with pytest.raises(ModelFormatError, match="broken.json"):
        load_model(path)


def test_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        load_model(tmp_path / "absent.json")


def test_json_is_plain(tmp_path):
    path = tmp_path / "model.json"
    save_model(sample_model(), path)
    doc = json.loads(path.read_text())
    assert set(doc) == {"version", "n", "m", "weights", "family"}
