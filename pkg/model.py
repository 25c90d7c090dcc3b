"""
Modelo de Markov quântico (H, L, ρ) e geradores de Lindblad.

Convenção de base dos exemplos: índice 0 = |g⟩, índice 1 = |e⟩,
de modo que σ⁻ = |g⟩⟨e| tem entrada (0, 1) = 1.
"""
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from errors import DimensionError, ModelError
from linalg_core import as_matrix, dagger, frobenius_norm, is_hermitian
from settings import NUMERICS_CONFIG

# Operadores do sistema (elementos de B(𝔥)) são ndarrays d×d
SystemOperator = np.ndarray

@dataclass(frozen=True)
class SystemModel:
    """Modelo validado: dimensão, Hamiltoniano e operador de acoplamento"""
    dim: int
    H: np.ndarray
    L: np.ndarray

@dataclass(frozen=True)
class DensityOperator:
    """Estado inicial do sistema (positivo, traço unitário)"""
    dim: int
    rho: np.ndarray

def as_operator(X, dim: int, name: str = "X") -> SystemOperator:
    """
    Valida um operador do sistema contra a dimensão do modelo.

    Raises:
        DimensionError: Se X não for dim×dim
    """
    arr = as_matrix(X, name)
    if arr.shape != (dim, dim):
        raise DimensionError(f"❌ {name} tem shape {arr.shape}, esperado ({dim}, {dim})")
    return arr

def validate_model(raw: Mapping) -> SystemModel:
    """
    Valida os dados brutos de um modelo.

    Args:
        raw: Mapeamento com chaves "H", "L" e opcionalmente "dim"

    Returns:
        SystemModel validado

    Raises:
        ModelError: H não Hermitiano ou d < 2
        DimensionError: H e L com dimensões diferentes
    """
    H = as_matrix(raw["H"], "H")
    L = as_matrix(raw["L"], "L")

    if H.shape[0] != H.shape[1]:
        raise DimensionError(f"❌ H deve ser quadrada, recebido shape {H.shape}")
    if L.shape != H.shape:
        raise DimensionError(f"❌ Dimensões de H {H.shape} e L {L.shape} não coincidem")

    dim = H.shape[0]
    declared = raw.get("dim")
    if declared is not None and int(declared) != dim:
        raise DimensionError(f"❌ dim declarado {declared} difere do tamanho das matrizes {dim}")
    if dim < 2:
        raise ModelError(f"❌ Dimensão do sistema deve ser ≥ 2, recebido {dim}")

    if not is_hermitian(H, NUMERICS_CONFIG.HERMITIAN_TOL):
        raise ModelError(
            f"❌ Invariante violado: H deve ser Hermitiano "
            f"(‖H−H†‖_F = {frobenius_norm(H - dagger(H)):.3e})"
        )

    return SystemModel(dim=dim, H=H, L=L)

def make_model(H, L) -> SystemModel:
    """Atalho para validate_model a partir das duas matrizes."""
    return validate_model({"H": H, "L": L})

def validate_density(rho, dim: Optional[int] = None) -> DensityOperator:
    """
    Valida um operador densidade.

    Args:
        rho: Matriz d×d
        dim: Dimensão esperada (opcional)

    Returns:
        DensityOperator

    Raises:
        DimensionError: Shape incompatível
        ModelError: Não Hermitiano, autovalor negativo ou traço ≠ 1
    """
    arr = as_matrix(rho, "rho")
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"❌ rho deve ser quadrada, recebido shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionError(f"❌ rho tem dimensão {arr.shape[0]}, modelo tem {dim}")

    tol = NUMERICS_CONFIG.DENSITY_TOL
    if not is_hermitian(arr, tol):
        raise ModelError("❌ Invariante violado: rho deve ser Hermitiano")
    eigenvalues = np.linalg.eigvalsh((arr + dagger(arr)) / 2)
    if eigenvalues.min() < -tol:
        raise ModelError(f"❌ Invariante violado: rho tem autovalor {eigenvalues.min():.3e} < 0")
    trace = np.trace(arr)
    if abs(trace - 1.0) > tol:
        raise ModelError(f"❌ Invariante violado: Tr(rho) = {trace.real:.12g} ≠ 1")

    return DensityOperator(dim=arr.shape[0], rho=arr)

def pure_density(psi) -> DensityOperator:
    """|ψ⟩⟨ψ| a partir de um vetor (normalizado aqui)."""
    psi = np.asarray(psi, dtype=complex).ravel()
    psi = psi / np.linalg.norm(psi)
    return validate_density(np.outer(psi, np.conj(psi)))

def lindblad_heisenberg(model: SystemModel, X) -> SystemOperator:
    """
    Gerador de Lindblad no quadro de Heisenberg.

    ℒ(X) = ½L†[X,L] + ½[L†,X]L − i[X,H]

    Args:
        model: Modelo do sistema
        X: Operador do sistema

    Returns:
        ℒ(X)
    """
    X = as_operator(X, model.dim)
    L, H = model.L, model.H
    Ld = dagger(L)
    return (
        0.5 * Ld @ (X @ L - L @ X)
        + 0.5 * (Ld @ X - X @ Ld) @ L
        - 1j * (X @ H - H @ X)
    )

def lindblad_schrodinger(model: SystemModel, rho_like) -> SystemOperator:
    """
    Gerador de Lindblad no quadro de Schrödinger.

    ℒ*(ρ) = LρL† − ½(L†Lρ + ρL†L) + i[ρ,H]

    A entrada não precisa ser um operador densidade: o mapa é linear e é
    aplicado a intermediários não positivos na recursão de regressão.

    Args:
        model: Modelo do sistema
        rho_like: Operador d×d qualquer

    Returns:
        ℒ*(ρ)
    """
    rho = as_operator(rho_like, model.dim, "rho")
    L, H = model.L, model.H
    LdL = dagger(L) @ L
    return (
        L @ rho @ dagger(L)
        - 0.5 * (LdL @ rho + rho @ LdL)
        + 1j * (rho @ H - H @ rho)
    )

# ===========================
# OPERADORES DO ÁTOMO DE DOIS NÍVEIS
# ===========================

def basis_projector(dim: int, i: int) -> SystemOperator:
    P = np.zeros((dim, dim), dtype=complex)
    P[i, i] = 1.0
    return P

def ground_projector() -> SystemOperator:
    return basis_projector(2, 0)

def excited_projector() -> SystemOperator:
    """N = |e⟩⟨e|"""
    return basis_projector(2, 1)

def sigma_minus() -> SystemOperator:
    """σ⁻ = |g⟩⟨e|"""
    return np.array([[0, 1], [0, 0]], dtype=complex)

def sigma_plus() -> SystemOperator:
    """σ⁺ = |e⟩⟨g|"""
    return np.array([[0, 0], [1, 0]], dtype=complex)

def atom_decay_model(gamma: float = 1.0) -> SystemModel:
    """Átomo com decaimento espontâneo: H = 0, L = √γ σ⁻."""
    return make_model(np.zeros((2, 2)), np.sqrt(gamma) * sigma_minus())

# ===========================
# GERADORES ALEATÓRIOS (suítes com semente)
# ===========================

def _complex_gaussian(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))

def random_operator(
    rng: np.random.Generator,
    dim: int,
    hermitian: bool = False,
    scale: float = 1.0
) -> SystemOperator:
    """
    Operador aleatório com entradas gaussianas complexas.

    Args:
        rng: Gerador numpy
        dim: Dimensão
        hermitian: Se True, retorna a parte Hermitiana
        scale: Fator multiplicativo

    Returns:
        Matriz dim×dim
    """
    A = scale * _complex_gaussian(rng, dim)
    if hermitian:
        return (A + dagger(A)) / 2
    return A

def random_model(
    rng: np.random.Generator,
    dim: int,
    scale: float = 0.5
) -> SystemModel:
    """Modelo aleatório com H Hermitiano e L genérico."""
    H = random_operator(rng, dim, hermitian=True, scale=scale)
    L = random_operator(rng, dim, scale=scale)
    return make_model(H, L)

def random_density(rng: np.random.Generator, dim: int) -> DensityOperator:
    """Estado misto aleatório G G† / Tr(G G†)."""
    G = _complex_gaussian(rng, dim)
    rho = G @ dagger(G)
    rho = rho / np.trace(rho).real
    # simetriza o arredondamento antes de validar
    return validate_density((rho + dagger(rho)) / 2)
