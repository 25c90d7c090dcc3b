"""
Álgebra linear complexa densa para matrizes pequenas.

Convenção de vetorização: empilhamento de colunas. O mapa X ↦ AXB tem
matriz kron(B.T, A), e todo o código de superoperadores segue isso.
"""
import logging
import math
from typing import Callable, Tuple

import numpy as np
from scipy.linalg import expm

from errors import DimensionError, ValidationError
from settings import NUMERICS_CONFIG

logger = logging.getLogger(__name__)

def as_matrix(M, name: str = "M") -> np.ndarray:
    """
    Converte para ndarray complexo 2D e checa finitude.

    Args:
        M: Matriz (qualquer array-like)
        name: Nome usado nas mensagens de erro

    Returns:
        ndarray complex128

    Raises:
        DimensionError: Se não for bidimensional
        ValidationError: Se houver NaN/Inf
    """
    arr = np.asarray(M, dtype=complex)
    if arr.ndim != 2:
        raise DimensionError(f"❌ {name} deve ser uma matriz 2D, recebido shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"❌ {name} contém entradas não finitas")
    return arr

def _as_square(M, name: str = "M") -> np.ndarray:
    arr = as_matrix(M, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"❌ {name} deve ser quadrada, recebido shape {arr.shape}")
    return arr

def dagger(M: np.ndarray) -> np.ndarray:
    """Adjunto (transposta conjugada)."""
    return np.conj(M).T

def frobenius_norm(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, "fro"))

def is_hermitian(M: np.ndarray, tol: float) -> bool:
    """
    Testa Hermiticidade com tolerância relativa.

    ‖M−M†‖_F ≤ tol·max(1, ‖M‖_F)
    """
    M = np.asarray(M, dtype=complex)
    return frobenius_norm(M - dagger(M)) <= tol * max(1.0, frobenius_norm(M))

def min_eigenvalue_hermitian(M: np.ndarray) -> float:
    """Menor autovalor da parte Hermitiana de M."""
    M = np.asarray(M, dtype=complex)
    return float(np.linalg.eigvalsh((M + dagger(M)) / 2).min())

def mat_exp(M) -> np.ndarray:
    """
    Exponencial de matriz via scaling-and-squaring com Padé (scipy).

    Args:
        M: Matriz quadrada com ‖M‖₁ ≤ MAT_EXP_NORM_LIMIT

    Returns:
        e^M

    Raises:
        DimensionError: Se M não for quadrada
        ValidationError: Se a norma exceder o limite de precisão
    """
    arr = _as_square(M)
    norm = float(np.linalg.norm(arr, 1))
    if norm > NUMERICS_CONFIG.MAT_EXP_NORM_LIMIT:
        raise ValidationError(
            f"❌ ‖M‖₁ = {norm:.3g} excede o limite {NUMERICS_CONFIG.MAT_EXP_NORM_LIMIT} "
            "para a precisão garantida de mat_exp"
        )
    result = expm(arr)
    if not np.all(np.isfinite(result)):
        raise ValidationError("❌ mat_exp produziu entradas não finitas")
    return result

def mat_exp_split(M) -> np.ndarray:
    """
    e^M para normas acima do limite de mat_exp.

    Divide M em k partes iguais com ‖M/k‖₁ ≤ MAT_EXP_NORM_LIMIT e eleva
    e^{M/k} à k-ésima potência.

    Returns:
        e^M
    """
    arr = _as_square(M)
    norm = float(np.linalg.norm(arr, 1))
    substeps = max(1, math.ceil(norm / NUMERICS_CONFIG.MAT_EXP_NORM_LIMIT))
    step = mat_exp(arr / substeps)
    if substeps == 1:
        return step
    logger.debug("Exponencial dividida em %d subpassos (‖M‖₁ = %.3g)", substeps, norm)
    return np.linalg.matrix_power(step, substeps)

def kron(A, B) -> np.ndarray:
    """(A⊗B)[i·rB+k, j·cB+l] = A[i,j]·B[k,l]"""
    return np.kron(as_matrix(A, "A"), as_matrix(B, "B"))

def partial_trace(M, dims: Tuple[int, int], which: str = "B") -> np.ndarray:
    """
    Traço parcial sobre um dos fatores de um espaço dA·dB.

    Args:
        M: Matriz quadrada de lado dA·dB
        dims: (dA, dB)
        which: "B" descarta o segundo fator, "A" descarta o primeiro

    Returns:
        Matriz reduzida (dA×dA ou dB×dB)

    Raises:
        DimensionError: Se o lado de M não for dA·dB
        ValueError: Se which não for "A" ou "B"
    """
    arr = _as_square(M)
    d_a, d_b = dims
    if arr.shape[0] != d_a * d_b:
        raise DimensionError(
            f"❌ Lado {arr.shape[0]} incompatível com dims {d_a}×{d_b}"
        )
    tensor = arr.reshape(d_a, d_b, d_a, d_b)
    if which == "B":
        return np.einsum("ikjk->ij", tensor)
    if which == "A":
        return np.einsum("kikj->ij", tensor)
    raise ValueError(f"❌ Fator desconhecido: {which!r} (use 'A' ou 'B')")

def vec(X) -> np.ndarray:
    """Empilha as colunas de X num vetor."""
    return np.asarray(X, dtype=complex).reshape(-1, order="F")

def unvec(v, d: int) -> np.ndarray:
    """Inverso de vec para uma matriz d×d."""
    v = np.asarray(v, dtype=complex)
    if v.size != d * d:
        raise DimensionError(f"❌ Vetor de tamanho {v.size} não corresponde a {d}×{d}")
    return v.reshape(d, d, order="F")

def matrix_unit(d: int, i: int, j: int) -> np.ndarray:
    E = np.zeros((d, d), dtype=complex)
    E[i, j] = 1.0
    return E

def superop_from_map(f: Callable[[np.ndarray], np.ndarray], d: int) -> np.ndarray:
    """
    Matriz d²×d² de um mapa linear, coluna a coluna sobre as unidades matriciais.

    Args:
        f: Mapa linear em matrizes d×d
        d: Dimensão

    Returns:
        Matriz do superoperador (empilhamento de colunas)
    """
    S = np.zeros((d * d, d * d), dtype=complex)
    for p in range(d * d):
        E = unvec(np.eye(d * d)[:, p], d)
        S[:, p] = vec(f(E))
    return S

def choi_matrix(S, d: int) -> np.ndarray:
    """
    Matriz de Choi Σ_ij E_ij ⊗ S(E_ij).

    S é completamente positivo se e só se a Choi é semidefinida positiva.

    Args:
        S: Superoperador (objeto com atributo .mat ou matriz d²×d²)
        d: Dimensão do sistema

    Returns:
        Matriz de Choi d²×d²
    """
    mat = _as_square(getattr(S, "mat", S), "S")
    if mat.shape[0] != d * d:
        raise DimensionError(f"❌ Superoperador {mat.shape} incompatível com d={d}")

    choi = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            E = matrix_unit(d, i, j)
            image = unvec(mat @ vec(E), d)
            choi += np.kron(E, image)
    return choi
