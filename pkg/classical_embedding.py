"""
Verificação comutativa: cadeias de Markov clássicas de tempo contínuo
contra núcleos quânticos em observáveis diagonais.

Convenções do gerador:
- ClassicalChain.Q usa a convenção por linhas (Q[i, j] = taxa i→j,
  linhas somam zero, p(t) = p0 · e^{Qt});
- diagonal_invariance_check devolve a convenção por colunas lida de ℒ*
  (Q[j, i] = ℒ*(E_ii)[j, j]); chain_from_model transpõe.
"""
from dataclasses import dataclass
import itertools
import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from errors import DimensionError, TimeOrderError, ValidationError
from linalg_core import mat_exp_split
from model import (
    DensityOperator,
    SystemModel,
    basis_projector,
    lindblad_schrodinger,
    validate_density,
)
from regression import CorrelationQuery, kernel_schrodinger, validate_query
from settings import NUMERICS_CONFIG

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class ClassicalChain:
    """Cadeia de Markov com gerador Q (r×r) e distribuição inicial p0"""
    Q: np.ndarray
    p0: np.ndarray

    @property
    def states(self) -> int:
        return self.Q.shape[0]

def validate_chain(Q, p0) -> ClassicalChain:
    """
    Valida gerador e distribuição inicial.

    Raises:
        DimensionError: Shapes incompatíveis
        ValidationError: Taxa negativa, linha que não soma zero ou p0 inválida
    """
    Q = np.asarray(Q)
    p0 = np.asarray(p0)
    tol = NUMERICS_CONFIG.DIAGONAL_TOL

    if np.iscomplexobj(Q):
        if np.max(np.abs(Q.imag), initial=0.0) > tol:
            raise ValidationError("❌ Gerador Q deve ser real")
        Q = Q.real
    if np.iscomplexobj(p0):
        p0 = p0.real
    Q = Q.astype(float)
    p0 = p0.astype(float)

    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise DimensionError(f"❌ Q deve ser quadrada, recebido shape {Q.shape}")
    if p0.shape != (Q.shape[0],):
        raise DimensionError(f"❌ p0 tem shape {p0.shape}, esperado ({Q.shape[0]},)")

    scale = max(1.0, float(np.max(np.abs(Q), initial=0.0)))
    off_diagonal = Q - np.diag(np.diag(Q))
    if off_diagonal.min(initial=0.0) < -tol * scale:
        raise ValidationError("❌ Taxas fora da diagonal devem ser ≥ 0")
    if np.max(np.abs(Q.sum(axis=1)), initial=0.0) > tol * scale:
        raise ValidationError("❌ Linhas do gerador devem somar zero")
    if p0.min(initial=0.0) < -tol or abs(p0.sum() - 1.0) > tol:
        raise ValidationError("❌ p0 deve ser uma distribuição de probabilidade")

    return ClassicalChain(Q=Q, p0=p0)

def transition_matrix(chain: ClassicalChain, t: float) -> np.ndarray:
    """P(t) = e^{Qt} (estocástica por linhas)."""
    if t < 0:
        raise TimeOrderError(f"❌ Tempo negativo: {t}")
    return mat_exp_split(chain.Q * t).real

def _check_times(times: Sequence[float], f_list: Sequence) -> None:
    if len(times) == 0 or len(times) != len(f_list):
        raise ValidationError(
            f"❌ {len(times)} tempos e {len(f_list)} funções: devem coincidir e ser ≥ 1"
        )
    if times[0] < 0 or any(b < a for a, b in zip(times, times[1:])):
        raise TimeOrderError(f"❌ Tempos devem ser ordenados e ≥ 0: {list(times)}")

def classical_correlation(
    chain: ClassicalChain,
    times: Sequence[float],
    f_list: Sequence[Sequence[float]]
) -> float:
    """
    E[f_n(X_{t_n}) ··· f_1(X_{t_1})] pela regra da cadeia de Markov.

    Args:
        chain: Cadeia validada
        times: Tempos ordenados (repetidos permitidos)
        f_list: Uma função por tempo, como vetor por estado

    Returns:
        Valor esperado
    """
    _check_times(times, f_list)
    weights = chain.p0 @ transition_matrix(chain, times[0])
    weights = weights * np.asarray(f_list[0], dtype=float)
    for k in range(1, len(times)):
        weights = weights @ transition_matrix(chain, times[k] - times[k - 1])
        weights = weights * np.asarray(f_list[k], dtype=float)
    return float(weights.sum())

def path_sum_correlation(
    chain: ClassicalChain,
    times: Sequence[float],
    f_list: Sequence[Sequence[float]]
) -> float:
    """Mesma esperança por soma explícita sobre todos os caminhos de estados."""
    _check_times(times, f_list)
    transitions = [transition_matrix(chain, times[0])] + [
        transition_matrix(chain, times[k] - times[k - 1]) for k in range(1, len(times))
    ]
    r = chain.states
    total = 0.0
    for start in range(r):
        for path in itertools.product(range(r), repeat=len(times)):
            weight = chain.p0[start]
            previous = start
            for k, state in enumerate(path):
                weight *= transitions[k][previous, state] * f_list[k][state]
                previous = state
            total += weight
    return float(total)

def diagonal_invariance_check(model: SystemModel) -> Tuple[bool, Optional[np.ndarray]]:
    """
    Verifica se ℒ* leva matrizes diagonais em diagonais.

    Args:
        model: Modelo validado

    Returns:
        (True, Q) com Q[j, i] = ℒ*(E_ii)[j, j], ou (False, None)
    """
    d = model.dim
    Q = np.zeros((d, d))
    for i in range(d):
        image = lindblad_schrodinger(model, basis_projector(d, i))
        off_diagonal = image - np.diag(np.diag(image))
        if np.max(np.abs(off_diagonal)) > NUMERICS_CONFIG.DIAGONAL_TOL:
            logger.debug("ℒ*(E_%d%d) tem coerências; subálgebra diagonal não é invariante", i, i)
            return False, None
        Q[:, i] = np.diag(image).real
    return True, Q

def _is_diagonal(M: np.ndarray) -> bool:
    return np.max(np.abs(M - np.diag(np.diag(M)))) <= NUMERICS_CONFIG.DIAGONAL_TOL

def chain_from_model(
    model: SystemModel,
    rho: Union[DensityOperator, np.ndarray]
) -> ClassicalChain:
    """
    Cadeia clássica induzida por um modelo diagonal-invariante.

    Raises:
        ValidationError: Modelo não invariante ou ρ não diagonal
    """
    invariant, Q_columns = diagonal_invariance_check(model)
    if not invariant:
        raise ValidationError("❌ Pré-condição violada: ℒ* não preserva a subálgebra diagonal")
    rho_mat = rho.rho if isinstance(rho, DensityOperator) else validate_density(rho, model.dim).rho
    if not _is_diagonal(rho_mat):
        raise ValidationError("❌ Pré-condição violada: rho deve ser diagonal")
    return validate_chain(Q_columns.T, np.diag(rho_mat).real)

def compare_quantum_classical(
    model: SystemModel,
    rho: Union[DensityOperator, np.ndarray],
    q: CorrelationQuery
) -> dict:
    """
    Compara o núcleo quântico com a correlação clássica induzida.

    Pré-condições: modelo diagonal-invariante, ρ e b_k diagonais e
    Hermitianos, a_k = I.

    Args:
        model: Modelo validado
        rho: Estado diagonal
        q: Consulta com b_k diagonais

    Returns:
        Dicionário com 'quantum', 'classical' e 'diff'

    Raises:
        ValidationError: Qualquer pré-condição violada
    """
    q = validate_query(q, model.dim)
    chain = chain_from_model(model, rho)

    identity = np.eye(model.dim)
    f_list = []
    for k, (a, b) in enumerate(zip(q.a_ops, q.b_ops)):
        if np.max(np.abs(a - identity)) > NUMERICS_CONFIG.DIAGONAL_TOL:
            raise ValidationError(f"❌ Pré-condição violada: a_{k + 1} deve ser a identidade")
        if not _is_diagonal(b) or np.max(np.abs(np.diag(b).imag)) > NUMERICS_CONFIG.DIAGONAL_TOL:
            raise ValidationError(f"❌ Pré-condição violada: b_{k + 1} deve ser diagonal e Hermitiano")
        f_list.append(np.diag(b).real)

    quantum = kernel_schrodinger(model, rho, q)
    classical = classical_correlation(chain, q.times, f_list)
    return {
        "quantum": quantum,
        "classical": classical,
        "diff": float(abs(quantum - classical)),
    }
