"""Funções de formatação de resultados numéricos"""
from typing import List

import numpy as np

from settings import OUTPUT_CONFIG

def format_float(valor: float) -> str:
    """
    Formata um real com OUTPUT_CONFIG.FLOAT_FORMAT (notação científica, 17 dígitos).

    Args:
        valor: Valor numérico

    Returns:
        String em notação científica
    """
    return OUTPUT_CONFIG.FLOAT_FORMAT % valor

def complex_pair(valor: complex) -> List[float]:
    """
    Converte um complexo no par [re, im] usado nos arquivos JSON.

    Args:
        valor: Número complexo

    Returns:
        Lista [re, im] de floats Python (repr exato no JSON)
    """
    z = complex(valor)
    return [float(z.real), float(z.imag)]

def matrix_to_pairs(M: np.ndarray) -> list:
    """Matriz complexa → linhas de pares [re, im]."""
    return [[complex_pair(entry) for entry in row] for row in np.asarray(M)]
