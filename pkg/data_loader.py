"""Carregamento e validação de modelos, estados e consultas em JSON"""
import json
import os
from typing import Any, Optional

import numpy as np

from errors import DataFormatError, ValidationError
from formatters import matrix_to_pairs
from model import DensityOperator, SystemModel, validate_density, validate_model
from regression import CorrelationQuery, make_query, validate_query

def load_json(path: str) -> dict:
    """
    Lê um arquivo JSON.

    Args:
        path: Caminho do arquivo

    Returns:
        Conteúdo decodificado

    Raises:
        FileNotFoundError: Se o arquivo não existir
        DataFormatError: Se o JSON for inválido
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"❌ Arquivo não encontrado: {path}")

    with open(path, encoding="utf-8") as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as e:
            raise DataFormatError(f"❌ {path}: JSON inválido ({e.msg}, linha {e.lineno})")

def parse_matrix(raw: Any, field: str, source: str, dim: Optional[int] = None) -> np.ndarray:
    """
    Converte uma matriz de pares [re, im] (ou escalares reais).

    Args:
        raw: Lista de linhas
        field: Nome do campo (diagnóstico)
        source: Arquivo de origem (diagnóstico)
        dim: Dimensão esperada (opcional)

    Returns:
        Matriz complexa

    Raises:
        DataFormatError: Formato inválido, com arquivo, campo e índice
    """
    if not isinstance(raw, list) or not raw or not all(isinstance(row, list) for row in raw):
        raise DataFormatError(f"❌ {source}: campo '{field}' deve ser uma lista de linhas")

    n_rows, n_cols = len(raw), len(raw[0])
    if dim is not None and (n_rows != dim or n_cols != dim):
        raise DataFormatError(
            f"❌ {source}: campo '{field}' tem {n_rows}×{n_cols}, esperado {dim}×{dim}"
        )

    matrix = np.zeros((n_rows, n_cols), dtype=complex)
    for i, row in enumerate(raw):
        if len(row) != n_cols:
            raise DataFormatError(f"❌ {source}: campo '{field}' linha {i} tem tamanho diferente")
        for j, entry in enumerate(row):
            if isinstance(entry, (int, float)) and not isinstance(entry, bool):
                matrix[i, j] = entry
            elif (
                isinstance(entry, list)
                and len(entry) == 2
                and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            ):
                matrix[i, j] = complex(entry[0], entry[1])
            else:
                raise DataFormatError(
                    f"❌ {source}: campo '{field}'[{i}][{j}] deve ser [re, im], recebido {entry!r}"
                )
    return matrix

def _require(data: dict, key: str, source: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise DataFormatError(f"❌ {source}: campo obrigatório '{key}' ausente")
    return data[key]

def load_model(path: str) -> SystemModel:
    """
    Carrega um modelo {"dim": d, "H": ..., "L": ...}.

    Raises:
        FileNotFoundError: Arquivo ausente
        ValidationError: Formato inválido ou invariante do modelo violado
    """
    data = load_json(path)
    dim = data.get("dim") if isinstance(data, dict) else None
    if dim is not None and (not isinstance(dim, int) or isinstance(dim, bool)):
        raise DataFormatError(f"❌ {path}: campo 'dim' deve ser inteiro")
    H = parse_matrix(_require(data, "H", path), "H", path, dim)
    L = parse_matrix(_require(data, "L", path), "L", path, dim)
    try:
        return validate_model({"dim": dim, "H": H, "L": L})
    except ValidationError as e:
        raise type(e)(f"{path}: {e}")

def load_density(path: str, dim: int) -> DensityOperator:
    """
    Carrega um estado {"rho": matriz}.

    Raises:
        FileNotFoundError: Arquivo ausente
        ValidationError: Formato inválido ou estado inválido
    """
    data = load_json(path)
    rho = parse_matrix(_require(data, "rho", path), "rho", path, dim)
    try:
        return validate_density(rho, dim)
    except ValidationError as e:
        raise type(e)(f"{path}: {e}")

def load_query(path: str, dim: int) -> CorrelationQuery:
    """
    Carrega {"times": [...], "a_ops": [...], "b_ops": [...]}.

    a_ops omitido vira a lista de identidades.

    Raises:
        FileNotFoundError: Arquivo ausente
        ValidationError: Formato inválido ou consulta inválida
    """
    data = load_json(path)
    times = _require(data, "times", path)
    if not isinstance(times, list) or not all(
        isinstance(t, (int, float)) and not isinstance(t, bool) for t in times
    ):
        raise DataFormatError(f"❌ {path}: campo 'times' deve ser uma lista de números")

    raw_b = _require(data, "b_ops", path)
    if not isinstance(raw_b, list):
        raise DataFormatError(f"❌ {path}: campo 'b_ops' deve ser uma lista de matrizes")
    b_ops = [parse_matrix(m, f"b_ops[{k}]", path, dim) for k, m in enumerate(raw_b)]

    a_ops = None
    if data.get("a_ops") is not None:
        if not isinstance(data["a_ops"], list):
            raise DataFormatError(f"❌ {path}: campo 'a_ops' deve ser uma lista de matrizes")
        a_ops = [parse_matrix(m, f"a_ops[{k}]", path, dim) for k, m in enumerate(data["a_ops"])]

    try:
        return validate_query(make_query(times, b_ops, a_ops), dim)
    except ValidationError as e:
        raise type(e)(f"{path}: {e}")

def query_to_dict(q: CorrelationQuery) -> dict:
    """Eco da consulta no mesmo formato do arquivo de entrada."""
    return {
        "times": [float(t) for t in q.times],
        "a_ops": [matrix_to_pairs(a) for a in q.a_ops],
        "b_ops": [matrix_to_pairs(b) for b in q.b_ops],
    }
