import json

import numpy as np
import pytest

from doublephase.io import (
    ChannelSpec,
    Check,
    Report,
    SchemaError,
    StateSpec,
    decode_complex_array,
    encode_complex_array,
    load_channel,
    load_state,
    save_channel,
    save_state,
)
from doublephase.sampling import random_kraus, random_unitary


def test_complex_encoding_roundtrip(rng):
    A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    enc = encode_complex_array(A)
    assert enc[0][1] == [A[0, 1].real, A[0, 1].imag]
    assert np.array_equal(decode_complex_array(json.loads(json.dumps(enc)), 2), A)


def test_decode_rejects_bad_shapes():
    with pytest.raises(SchemaError):
        decode_complex_array([[1, 2, 3]], 1)
    with pytest.raises(SchemaError):
        decode_complex_array([[1, 0], [0, 1]], 2)
    with pytest.raises(SchemaError):
        decode_complex_array("abc", 1)


@pytest.mark.parametrize("kind", ["kraus", "unitary", "superop"])
def test_channel_roundtrip(kind, rng, tmp_path):
    d = 3
    if kind == "kraus":
        data = tuple(random_kraus(d, 2, rng))
    elif kind == "unitary":
        data = random_unitary(d, rng)
    else:
        data = rng.standard_normal((9, 9)) + 0j
    spec = ChannelSpec(d, kind, data)
    save_channel(spec, tmp_path / "c.json")
    back = load_channel(tmp_path / "c.json")
    assert back == spec
    assert back.superop().shape == (9, 9)


@pytest.mark.parametrize(
    "doc",
    [
        {"dim": 3, "unitary": []},
        {"schema": 2, "dim": 3, "unitary": []},
        {"schema": 1, "dim": 4, "unitary": [[[1, 0]] * 4] * 4},
        {"schema": 1, "unitary": [[[1, 0]]]},
        {"schema": 1, "dim": 3},
        {"schema": 1, "dim": 3, "kraus": [], "unitary": []},
        {"schema": 1, "dim": 3, "kraus": []},
        {"schema": 1, "dim": 3, "unitary": [[[1, 0]] * 5] * 5},
        {"schema": 1, "dim": 3, "kraus": [[[[1, 0]] * 5] * 5]},
        [1, 2],
    ],
)
def test_channel_schema_violations(doc):
    with pytest.raises(SchemaError):
        ChannelSpec.from_dict(doc)


def test_invalid_json(tmp_path):
    p = tmp_path / "c.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        load_channel(p)
    with pytest.raises(SchemaError):
        load_state(p)


def test_state_roundtrip(tmp_path):
    v = np.array([1, 1j, 0]) / np.sqrt(2)
    spec = StateSpec(3, "vector", v)
    save_state(spec, tmp_path / "s.json")
    back = load_state(tmp_path / "s.json")
    assert back == spec
    assert np.allclose(back.density(), np.outer(v, v.conj()))
    rho = StateSpec(3, "density", np.eye(3) / 3)
    assert StateSpec.from_dict(rho.to_dict()) == rho
    with pytest.raises(SchemaError):
        StateSpec.from_dict({"schema": 1, "dim": 3, "vector": [[1, 0]]})


def test_check_pass_iff_within_tolerance():
    assert Check.make("a", 1e-11, 1e-10).passed
    assert not Check.make("a", 2e-10, 1e-10).passed
    assert Check.make("a", 1e-10, 1e-10).passed


def test_report_roundtrip():
    r = Report("algebra", 3, 7, (Check.make("x", 0.0, 1e-10), Check.make("y", 1.0, 0.5)), 0.25, {"n": 3})
    assert not r.passed
    doc = json.loads(r.to_json())
    assert doc["schema"] == 1 and doc["passed"] is False
    assert doc["checks"][1] == {"name": "y", "residual": 1.0, "tolerance": 0.5, "pass": False}
    assert Report.from_dict(doc) == r
