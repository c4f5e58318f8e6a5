import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from adfischer.reports import (RunReport, format_matrix, matrix_from_json,
                               matrix_to_json, parse_matrix, read_matrix,
                               to_jsonable, write_matrix)

finite = st.floats(allow_nan=False, allow_infinity=False)


@settings(max_examples=100, deadline=None)
@given(re=arrays(np.float64, st.tuples(st.integers(1, 5), st.integers(1, 5)), elements=finite),
       data=st.data())
def test_text_round_trip_is_bitwise(re, data):
    im = data.draw(arrays(np.float64, re.shape, elements=finite))
    A = re + 1j * im
    assert parse_matrix(format_matrix(A)).tobytes() == A.tobytes()


def test_negative_zero_survives():
    A = np.array([[complex(-0.0, -0.0), complex(0.0, 0.0)]])
    B = parse_matrix(format_matrix(A))
    assert np.signbit(B.real).tolist() == [[True, False]]
    assert np.signbit(B.imag).tolist() == [[True, False]]


def test_file_round_trip(tmp_path, rng):
    A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    path = tmp_path / "a.txt"
    write_matrix(path, A, header="example\nsecond line")
    text = path.read_text()
    assert text.startswith("# example\n# second line\n")
    assert read_matrix(path).tobytes() == A.tobytes()


def test_parse_plain_reals_and_comments():
    A = parse_matrix("# comment\n1 2.5\n\n3-1i 4+0.5i\n")
    np.testing.assert_array_equal(A, [[1, 2.5], [3 - 1j, 4 + 0.5j]])


@pytest.mark.parametrize("text", ["", "1 2\n3\n", "1 x\n", "nan 1\n1 1\n"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_matrix(text)


def test_matrix_json_round_trip(rng):
    A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    back = matrix_from_json(json.loads(json.dumps(matrix_to_json(A))))
    assert back.tobytes() == A.tobytes()


def test_report_round_trip(rng):
    A = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    r = RunReport("verify", {"k": 1, "matrix": matrix_to_json(A)},
                  [{"rho": 1.2345678901234567, "ok": True, "xs": [0.1, 1e-300]}],
                  {"total": 1}, {"adfischer": "0.1.0"})
    text = r.to_json()
    assert RunReport.from_json(text) == r
    assert RunReport.from_json(text).to_json() == text


def test_report_version_checked():
    with pytest.raises(ValueError):
        RunReport.from_json(json.dumps({"command": "x", "inputs": {}, "version": 99}))


def test_csv_keeps_full_precision():
    r = RunReport("example", {}, [{"epsilon": 0.1, "rho": 1 / 3, "nested": [1]}])
    lines = r.to_csv().splitlines()
    assert lines[0] == "epsilon,rho"
    assert float(lines[1].split(",")[1]) == 1 / 3


def test_to_jsonable_types():
    from adfischer.linalg_core import cholesky_pd
    out = to_jsonable({"cert": cholesky_pd(np.eye(2)), "arr": np.arange(3), "b": np.bool_(True),
                       "z": 1 + 2j, "t": (1, 2)})
    assert out == {"cert": {"is_pd": True, "min_pivot": 1.0, "scale": 1.0,
                            "tolerance_used": 1e-10},
                   "arr": [0, 1, 2], "b": True, "z": [1.0, 2.0], "t": [1, 2]}
