"""
Núcleos de correlação multi-tempo ordenados no tempo pelo teorema de
regressão quântica, nas formas aninhadas de Heisenberg e de Schrödinger.
"""
from dataclasses import dataclass
import logging
import math
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from errors import DimensionError, TimeOrderError, ValidationError
from linalg_core import dagger
from model import (
    DensityOperator,
    SystemModel,
    SystemOperator,
    as_operator,
    validate_density,
)
from semigroup import Picture, PropagatorCache

logger = logging.getLogger(__name__)

KernelValue = complex

@dataclass(frozen=True)
class CorrelationQuery:
    """Tempos t_1 ≤ … ≤ t_n e as listas de operadores a_n, b_n"""
    times: Tuple[float, ...]
    a_ops: Tuple[np.ndarray, ...]
    b_ops: Tuple[np.ndarray, ...]

    @property
    def n(self) -> int:
        return len(self.times)

def make_query(
    times: Sequence[float],
    b_ops: Sequence,
    a_ops: Optional[Sequence] = None
) -> CorrelationQuery:
    """
    Monta uma consulta; a_ops omitido vira a lista de identidades.

    Args:
        times: Tempos da consulta
        b_ops: Operadores b_k
        a_ops: Operadores a_k (opcional)

    Returns:
        CorrelationQuery (ainda não validada contra um modelo)
    """
    b_list = tuple(np.asarray(b, dtype=complex) for b in b_ops)
    if a_ops is None:
        a_list = tuple(np.eye(b.shape[0], dtype=complex) for b in b_list)
    else:
        a_list = tuple(np.asarray(a, dtype=complex) for a in a_ops)
    return CorrelationQuery(tuple(float(t) for t in times), a_list, b_list)

def validate_query(q: CorrelationQuery, dim: int) -> CorrelationQuery:
    """
    Checa ordem dos tempos e dimensões dos operadores.

    Raises:
        ValidationError: n < 1, tempo não finito ou listas de tamanhos diferentes
        TimeOrderError: Tempos negativos ou fora de ordem (sem reordenar)
        DimensionError: Operador com dimensão diferente do modelo
    """
    if q.n < 1:
        raise ValidationError("❌ Consulta precisa de pelo menos um tempo")
    if len(q.a_ops) != q.n or len(q.b_ops) != q.n:
        raise ValidationError(
            f"❌ Consulta com {q.n} tempos, {len(q.a_ops)} a_ops e {len(q.b_ops)} b_ops"
        )
    for k, t in enumerate(q.times):
        if not math.isfinite(t):
            raise ValidationError(f"❌ Tempo t_{k + 1} não finito: {t}")
    if q.times[0] < 0:
        raise TimeOrderError(f"❌ Tempos devem ser ≥ 0, recebido {q.times[0]}")
    for k in range(q.n - 1):
        if q.times[k + 1] < q.times[k]:
            raise TimeOrderError(
                f"❌ Tempos fora de ordem: t_{k + 1} = {q.times[k]} > t_{k + 2} = {q.times[k + 1]}"
            )

    a_ops = tuple(as_operator(a, dim, f"a_{k + 1}") for k, a in enumerate(q.a_ops))
    b_ops = tuple(as_operator(b, dim, f"b_{k + 1}") for k, b in enumerate(q.b_ops))
    return CorrelationQuery(q.times, a_ops, b_ops)

def _density_matrix(rho: Union[DensityOperator, np.ndarray], dim: int) -> np.ndarray:
    if isinstance(rho, DensityOperator):
        if rho.dim != dim:
            raise DimensionError(f"❌ rho tem dimensão {rho.dim}, modelo tem {dim}")
        return rho.rho
    return validate_density(rho, dim).rho

def kernel_schrodinger(
    model: SystemModel,
    rho: Union[DensityOperator, np.ndarray],
    q: CorrelationQuery,
    cache: Optional[PropagatorCache] = None
) -> KernelValue:
    """
    Núcleo pela forma de Schrödinger (recursão aninhada com Z*).

    σ ← Z*_{0,t_1}(ρ); σ ← Z*_{t_k,t_{k+1}}(b_k σ a_k†); w = Tr(b_n σ a_n†)

    Args:
        model: Modelo validado
        rho: Estado inicial
        q: Consulta ordenada no tempo
        cache: Cache de propagadores de Schrödinger (opcional)

    Returns:
        w_t(a, b)
    """
    q = validate_query(q, model.dim)
    if cache is None:
        cache = PropagatorCache(model, Picture.SCHRODINGER)

    # intermediários b_k σ a_k† não são positivos em geral; só a linearidade importa
    sigma = cache.evolve(_density_matrix(rho, model.dim), 0.0, q.times[0])
    for k in range(q.n - 1):
        sigma = q.b_ops[k] @ sigma @ dagger(q.a_ops[k])
        sigma = cache.evolve(sigma, q.times[k], q.times[k + 1])
    return complex(np.trace(q.b_ops[-1] @ sigma @ dagger(q.a_ops[-1])))

def nested_expectation(
    model: SystemModel,
    q: CorrelationQuery,
    t0: float,
    cache: Optional[PropagatorCache] = None
) -> SystemOperator:
    """
    Forma condicional do teorema de expectativas aninhadas.

    Z_{t0,t1}(a_1† Z_{t1,t2}(a_2† … Z_{t_{n−1},t_n}(a_n† b_n) … b_2) b_1)

    Args:
        model: Modelo validado
        q: Consulta ordenada no tempo
        t0: Tempo de condicionamento, 0 ≤ t0 ≤ t_1
        cache: Cache de propagadores de Heisenberg (opcional)

    Returns:
        Operador do sistema

    Raises:
        TimeOrderError: Se t0 > t_1 ou t0 < 0
    """
    q = validate_query(q, model.dim)
    if t0 < 0 or t0 > q.times[0]:
        raise TimeOrderError(f"❌ t0 = {t0} deve satisfazer 0 ≤ t0 ≤ t_1 = {q.times[0]}")
    if cache is None:
        cache = PropagatorCache(model, Picture.HEISENBERG)

    G = dagger(q.a_ops[-1]) @ q.b_ops[-1]
    for k in range(q.n - 2, -1, -1):
        G = cache.evolve(G, q.times[k], q.times[k + 1])
        G = dagger(q.a_ops[k]) @ G @ q.b_ops[k]
    return cache.evolve(G, t0, q.times[0])

def kernel_heisenberg(
    model: SystemModel,
    rho: Union[DensityOperator, np.ndarray],
    q: CorrelationQuery,
    t0: Optional[float] = None
) -> KernelValue:
    """
    Núcleo pela forma de Heisenberg: Tr(Z*_{0,t0}(ρ) · G), com G a
    expressão aninhada de nested_expectation.

    Args:
        model: Modelo validado
        rho: Estado inicial
        q: Consulta ordenada no tempo
        t0: Corte entre os dois quadros (padrão t_1); o valor não depende dele

    Returns:
        w_t(a, b)
    """
    q = validate_query(q, model.dim)
    if t0 is None:
        t0 = q.times[0]
    G = nested_expectation(model, q, t0)
    state = PropagatorCache(model, Picture.SCHRODINGER).evolve(
        _density_matrix(rho, model.dim), 0.0, t0
    )
    return complex(np.trace(state @ G))

def two_time(
    model: SystemModel,
    rho: Union[DensityOperator, np.ndarray],
    A,
    B,
    t1: float,
    t2: float
) -> KernelValue:
    """
    Correlação de dois tempos μ(j_{t1}(A) j_{t2}(B)).

    Delegada a kernel_schrodinger com a = (A†, I), b = (I, B).

    Raises:
        TimeOrderError: Se t1 > t2
    """
    if t1 > t2:
        raise TimeOrderError(f"❌ two_time exige t1 ≤ t2, recebido t1={t1}, t2={t2}")
    A = as_operator(A, model.dim, "A")
    B = as_operator(B, model.dim, "B")
    identity = np.eye(model.dim, dtype=complex)
    q = CorrelationQuery((float(t1), float(t2)), (dagger(A), identity), (identity, B))
    return kernel_schrodinger(model, rho, q)

def gram_matrix(
    model: SystemModel,
    rho: Union[DensityOperator, np.ndarray],
    times: Sequence[float],
    b_families: Sequence[Sequence]
) -> np.ndarray:
    """
    Matriz G_ij = w_t(b^(i), b^(j)) para uma família de tuplas de operadores.

    É semidefinida positiva por construção (matriz de Gram dos vetores j_t(b^(i))|ψ⟩).

    Args:
        model: Modelo validado
        rho: Estado inicial
        times: Tempos ordenados
        b_families: Lista de tuplas de operadores, cada uma com len(times) itens

    Returns:
        Matriz Hermitiana m×m
    """
    cache = PropagatorCache(model, Picture.SCHRODINGER)
    m = len(b_families)
    G = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            q = make_query(times, b_families[j], a_ops=b_families[i])
            G[i, j] = kernel_schrodinger(model, rho, q, cache)
    return G
