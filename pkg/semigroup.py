"""Superoperadores ℒ, ℒ* e propagadores Z_{s,t} = e^{ℒ(t−s)}, Z*_{s,t} = e^{ℒ*(t−s)}"""
from dataclasses import dataclass
from enum import Enum
import logging
from typing import Dict

import numpy as np

from errors import DimensionError, TimeOrderError
from linalg_core import dagger, kron, mat_exp_split, unvec, vec
from model import SystemModel, SystemOperator, as_operator

logger = logging.getLogger(__name__)

class Picture(str, Enum):
    """Quadro em que o superoperador age"""
    HEISENBERG = "heisenberg"
    SCHRODINGER = "schrodinger"

@dataclass(frozen=True)
class SuperOperator:
    """Mapa linear em operadores d×d, matriz d²×d² (empilhamento de colunas)"""
    dim: int
    mat: np.ndarray
    picture: Picture

    def apply(self, X) -> SystemOperator:
        X = as_operator(X, self.dim)
        return unvec(self.mat @ vec(X), self.dim)

    def compose(self, other: "SuperOperator") -> "SuperOperator":
        """self ∘ other"""
        if other.dim != self.dim:
            raise DimensionError(f"❌ Composição de superoperadores com d={self.dim} e d={other.dim}")
        return SuperOperator(self.dim, self.mat @ other.mat, self.picture)

def generator_matrix(model: SystemModel, picture: Picture) -> SuperOperator:
    """
    Matriz do gerador de Lindblad no quadro pedido.

    Args:
        model: Modelo validado
        picture: Heisenberg (ℒ) ou Schrödinger (ℒ*)

    Returns:
        SuperOperator d²×d²
    """
    picture = Picture(picture)
    d = model.dim
    identity = np.eye(d, dtype=complex)
    L, H = model.L, model.H
    LdL = dagger(L) @ L

    # X ↦ AXB tem matriz kron(B.T, A)
    anticommutator = kron(identity, LdL) + kron(LdL.T, identity)
    if picture is Picture.SCHRODINGER:
        jump = kron(L.conj(), L)
        hamiltonian = 1j * (kron(H.T, identity) - kron(identity, H))
    else:
        jump = kron(L.T, dagger(L))
        hamiltonian = 1j * (kron(identity, H) - kron(H.T, identity))

    return SuperOperator(d, jump - 0.5 * anticommutator + hamiltonian, picture)

def propagator_matrix(
    model: SystemModel,
    duration: float,
    picture: Picture,
    generator: SuperOperator = None
) -> SuperOperator:
    """
    Propagador e^{ℒ·duration} (ou e^{ℒ*·duration}).

    Durações longas são divididas em k subpassos iguais para respeitar o
    limite de norma de mat_exp; o subpasso é elevado à k-ésima potência.

    Args:
        model: Modelo validado
        duration: t − s ≥ 0
        picture: Quadro
        generator: Gerador já montado (opcional, evita recálculo)

    Returns:
        SuperOperator

    Raises:
        TimeOrderError: Se duration < 0
    """
    if duration < 0:
        raise TimeOrderError(f"❌ Duração negativa: {duration} (exige t ≥ s)")
    if generator is None:
        generator = generator_matrix(model, picture)

    return SuperOperator(model.dim, mat_exp_split(generator.mat * duration), generator.picture)

class PropagatorCache:
    """
    Cache de propagadores por duração para um modelo e quadro fixos.

    Depois de preenchido, pode ser compartilhado só para leitura entre
    avaliações paralelas.
    """

    def __init__(self, model: SystemModel, picture: Picture):
        self.model = model
        self.picture = Picture(picture)
        self.generator = generator_matrix(model, self.picture)
        self._cache: Dict[float, SuperOperator] = {}

    def get(self, duration: float) -> SuperOperator:
        duration = float(duration)
        if duration not in self._cache:
            self._cache[duration] = propagator_matrix(
                self.model, duration, self.picture, self.generator
            )
        else:
            logger.debug("Cache de propagador reutilizado para duração %s", duration)
        return self._cache[duration]

    def evolve(self, X, s: float, t: float) -> SystemOperator:
        if t < s:
            raise TimeOrderError(f"❌ Tempo final {t} anterior ao inicial {s}")
        if t == s:
            return as_operator(X, self.model.dim).copy()
        return self.get(t - s).apply(X)

def propagate(model: SystemModel, sigma, s: float, t: float) -> SystemOperator:
    """
    Evolução no quadro de Schrödinger: Z*_{s,t}(σ) = e^{ℒ*(t−s)}(σ).

    Args:
        model: Modelo validado
        sigma: Operador d×d (estado ou intermediário)
        s: Tempo inicial
        t: Tempo final (t ≥ s)

    Returns:
        Operador evoluído

    Raises:
        TimeOrderError: Se t < s
    """
    return PropagatorCache(model, Picture.SCHRODINGER).evolve(sigma, s, t)

def heisenberg_evolve(model: SystemModel, X, s: float, t: float) -> SystemOperator:
    """
    Evolução no quadro de Heisenberg: Z_{s,t}(X) = e^{ℒ(t−s)}(X).

    Raises:
        TimeOrderError: Se t < s
    """
    return PropagatorCache(model, Picture.HEISENBERG).evolve(X, s, t)
