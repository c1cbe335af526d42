import json

import numpy as np
import pytest

from uhlmann_flow.matrix_io import MatrixFormatError, load_matrix, matrix_from_dict, save_matrix


def test_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    M = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    p = tmp_path / "m.json"
    save_matrix(p, M)
    assert np.array_equal(load_matrix(p), M)


def test_imaginary_part_optional():
    assert np.array_equal(matrix_from_dict({"n": 1, "re": [[2.0]]}), np.array([[2.0 + 0j]]))


@pytest.mark.parametrize(
    "data",
    [
        [1, 2],
        {"re": [[1]]},
        {"n": 0, "re": []},
        {"n": True, "re": [[1]]},
        {"n": 2, "re": [[1, 0]]},
        {"n": 1, "re": [["a"]]},
        {"n": 1, "re": [[1]], "im": [[1, 2]]},
    ],
)
def test_rejects_malformed(data):
    with pytest.raises(MatrixFormatError):
        matrix_from_dict(data)


def test_rejects_non_finite(tmp_path):
    p = tmp_path / "m.json"
    p.write_text('{"n": 1, "re": [[NaN]]}')
    with pytest.raises(MatrixFormatError):
        load_matrix(p)


def test_bad_files(tmp_path):
    with pytest.raises(MatrixFormatError):
        load_matrix(tmp_path / "missing.json")
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(MatrixFormatError):
        load_matrix(p)
    p.write_text(json.dumps({"n": 1, "re": [[1.0]]}))
    assert load_matrix(p).shape == (1, 1)
