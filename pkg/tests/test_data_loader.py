import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from data_loader import load_density, load_json, load_model, load_query, parse_matrix, query_to_dict
from errors import DataFormatError, DimensionError, ModelError, TimeOrderError
from formatters import complex_pair, format_float, matrix_to_pairs
from model import sigma_minus
from settings import DATA_CONFIG

ZERO = [[0.0, 0.0], [0.0, 0.0]]

def test_bundled_files_load():
    model = load_model(DATA_CONFIG.MODEL_PATH)
    assert model.dim == 2
    assert_allclose(model.L, sigma_minus())
    rho = load_density(DATA_CONFIG.RHO_PATH, model.dim)
    assert_allclose(rho.rho, np.diag([0.0, 1.0]))
    q = load_query(DATA_CONFIG.QUERY_PATH, model.dim)
    assert q.times == (0.5, 1.0)
    assert_allclose(q.a_ops[0], sigma_minus())
    assert_allclose(q.b_ops[1], sigma_minus())

def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError, match="Arquivo não encontrado"):
        load_json(str(tmp_path / "nada.json"))

def test_invalid_json(tmp_path):
    path = tmp_path / "ruim.json"
    path.write_text("{ nope", encoding="utf-8")
    with pytest.raises(DataFormatError, match="JSON inválido"):
        load_json(str(path))

def test_parse_matrix_pairs_and_scalars():
    M = parse_matrix([[[1.0, 2.0], 3], [0, [0.0, -1.0]]], "H", "f.json")
    assert_allclose(M, np.array([[1 + 2j, 3], [0, -1j]]))

@pytest.mark.parametrize("raw, fragment", [
    ("x", "lista de linhas"),
    ([[[1.0, 2.0, 3.0]]], "'H'[0][0]"),
    ([[1.0, 2.0], [1.0]], "linha 1"),
    ([[True, 0.0], [0.0, 0.0]], "'H'[0][0]"),
])
def test_parse_matrix_diagnostics(raw, fragment):
    with pytest.raises(DataFormatError) as info:
        parse_matrix(raw, "H", "modelo.json")
    assert "modelo.json" in str(info.value)
    assert fragment in str(info.value)

def test_parse_matrix_dimension():
    with pytest.raises(DataFormatError, match="esperado 3×3"):
        parse_matrix([[1.0, 0.0], [0.0, 1.0]], "rho", "f.json", dim=3)

def test_non_hermitian_model_names_file_and_invariant(write_json):
    path = write_json("corrompido.json", {"dim": 2, "H": [[0.0, 1.0], [0.0, 0.0]], "L": ZERO})
    with pytest.raises(ModelError) as info:
        load_model(path)
    assert "corrompido.json" in str(info.value)
    assert "H deve ser Hermitiano" in str(info.value)

def test_model_missing_field(write_json):
    path = write_json("sem_l.json", {"dim": 2, "H": ZERO})
    with pytest.raises(DataFormatError, match="'L'"):
        load_model(path)

def test_model_declared_dim_mismatch(write_json):
    path = write_json("dim.json", {"dim": 3, "H": ZERO, "L": ZERO})
    with pytest.raises(DataFormatError):
        load_model(path)

def test_density_trace_checked(write_json):
    path = write_json("rho.json", {"rho": [[0.5, 0.0], [0.0, 0.6]]})
    with pytest.raises(ModelError, match="rho.json"):
        load_density(path, 2)

def test_query_defaults_and_order(write_json):
    path = write_json("q.json", {"times": [0.2, 0.4], "b_ops": [ZERO, ZERO]})
    q = load_query(path, 2)
    assert_allclose(q.a_ops[1], np.eye(2))

    path = write_json("q_bad.json", {"times": [0.4, 0.2], "b_ops": [ZERO, ZERO]})
    with pytest.raises(TimeOrderError):
        load_query(path, 2)

    path = write_json("q_dim.json", {"times": [0.4], "b_ops": [[[1.0]]]})
    with pytest.raises(DataFormatError):
        load_query(path, 2)

def test_query_echo_round_trip(write_json):
    q = load_query(DATA_CONFIG.QUERY_PATH, 2)
    path = write_json("eco.json", query_to_dict(q))
    again = load_query(path, 2)
    assert again.times == q.times
    for a, b in zip(again.b_ops, q.b_ops):
        assert_allclose(a, b)

def test_formatters():
    assert format_float(math.pi) == "3.1415926535897931e+00"
    assert complex_pair(1 - 2j) == [1.0, -2.0]
    assert matrix_to_pairs(np.array([[1j]])) == [[[0.0, 1.0]]]

def test_dimension_error_is_subclass_of_value_error():
    assert issubclass(DimensionError, ValueError)
