"""
Oráculo de colisões: caminho de verificação independente.

O campo no vácuo é discretizado em fatias de duração Δt, cada uma um
ancilla truncado em m níveis que interage uma única vez com o sistema.
Ordem dos fatores tensoriais: sistema ⊗ fatia_1 ⊗ … ⊗ fatia_N.
"""
from dataclasses import dataclass, field
import logging
import math
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from errors import (
    BudgetExceededError,
    DimensionError,
    GridAlignmentError,
    ValidationError,
)
from linalg_core import (
    as_matrix,
    dagger,
    frobenius_norm,
    kron,
    mat_exp,
    partial_trace,
    superop_from_map,
)
from model import DensityOperator, SystemModel, SystemOperator, validate_density
from regression import CorrelationQuery, KernelValue, validate_query
from semigroup import Picture, SuperOperator
from settings import NUMERICS_CONFIG, ORACLE_CONFIG, resolve_budget

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class CollisionConfig:
    """
    Discretização do campo.

    Attributes:
        dt: Duração Δt de cada fatia
        trunc: Truncamento m do ancilla (níveis 0..m−1)
        n_slots: Número de fatias N (None = o necessário para a consulta)
        budget: Máximo de entradas do vetor de trabalho no modo joint
        compress: Comprime o registrador de memória no modo joint
    """
    dt: float
    trunc: int = ORACLE_CONFIG.DEFAULT_TRUNC
    n_slots: Optional[int] = None
    budget: int = field(default_factory=resolve_budget)
    compress: bool = True

    def __post_init__(self):
        if not self.dt > 0:
            raise ValidationError(f"❌ dt deve ser positivo, recebido {self.dt}")
        if self.trunc < 2:
            raise ValidationError(f"❌ Truncamento deve ser ≥ 2, recebido {self.trunc}")
        if self.n_slots is not None and self.n_slots < 0:
            raise ValidationError(f"❌ n_slots deve ser ≥ 0, recebido {self.n_slots}")
        if self.budget <= 0:
            raise ValidationError(f"❌ Orçamento deve ser positivo, recebido {self.budget}")

def make_config(
    dt: float,
    trunc: Optional[int] = None,
    budget: Optional[int] = None,
    n_slots: Optional[int] = None,
    compress: bool = True
) -> CollisionConfig:
    """Monta a configuração resolvendo o orçamento (flag > ambiente > padrão)."""
    return CollisionConfig(
        dt=dt,
        trunc=ORACLE_CONFIG.DEFAULT_TRUNC if trunc is None else trunc,
        n_slots=n_slots,
        budget=resolve_budget(budget),
        compress=compress,
    )

# ===========================
# FATIA DO CAMPO E PASSO UNITÁRIO
# ===========================

def slot_annihilator(m: int) -> np.ndarray:
    """
    Aniquilador truncado: a[k−1, k] = √k.

    Raises:
        ValidationError: Se m < 2
    """
    if m < 2:
        raise ValidationError(f"❌ Truncamento deve ser ≥ 2, recebido {m}")
    return np.diag(np.sqrt(np.arange(1, m, dtype=float)), k=1).astype(complex)

def vacuum_vector(m: int) -> np.ndarray:
    v = np.zeros(m, dtype=complex)
    v[0] = 1.0
    return v

def slot_count(t: float, dt: float) -> int:
    """
    Número de fatias até o tempo t.

    Raises:
        GridAlignmentError: Se t não for múltiplo inteiro de dt
    """
    k = int(round(t / dt))
    if abs(t - k * dt) > NUMERICS_CONFIG.GRID_TOL:
        raise GridAlignmentError(f"❌ Tempo {t} não está na grade de passo {dt}")
    return k

def step_unitary(model: SystemModel, cfg: CollisionConfig) -> np.ndarray:
    """
    Unitário de uma colisão, sistema ⊗ fatia.

    U_Δ = exp(−i H⊗I Δt + √Δt (L⊗a† − L†⊗a))

    Args:
        model: Modelo validado
        cfg: Discretização

    Returns:
        Matriz (d·m)×(d·m)
    """
    a = slot_annihilator(cfg.trunc)
    identity = np.eye(cfg.trunc, dtype=complex)
    generator = (
        -1j * kron(model.H, identity) * cfg.dt
        + math.sqrt(cfg.dt) * (kron(model.L, dagger(a)) - kron(dagger(model.L), a))
    )
    return mat_exp(generator)

def collision_channel(model: SystemModel, cfg: CollisionConfig) -> SuperOperator:
    """
    Canal reduzido de uma colisão: E_Δ(σ) = Tr_fatia(U_Δ (σ⊗|0⟩⟨0|) U_Δ†).

    Returns:
        SuperOperator no quadro de Schrödinger
    """
    U = step_unitary(model, cfg)
    U_dag = dagger(U)
    vacuum = np.outer(vacuum_vector(cfg.trunc), vacuum_vector(cfg.trunc))
    dims = (model.dim, cfg.trunc)

    def channel(sigma: np.ndarray) -> np.ndarray:
        return partial_trace(U @ np.kron(sigma, vacuum) @ U_dag, dims, "B")

    return SuperOperator(model.dim, superop_from_map(channel, model.dim), Picture.SCHRODINGER)

def _segment_slots(q: CorrelationQuery, cfg: CollisionConfig) -> list:
    """Número de fatias em cada intervalo (t_{k−1}, t_k], com t_0 = 0."""
    counts = [slot_count(t, cfg.dt) for t in q.times]
    if cfg.n_slots is not None and counts[-1] > cfg.n_slots:
        raise GridAlignmentError(
            f"❌ t_n = {q.times[-1]} exige {counts[-1]} fatias, configuradas {cfg.n_slots}"
        )
    return [counts[0]] + [counts[k] - counts[k - 1] for k in range(1, len(counts))]

# ===========================
# MODO SEQUENCIAL (cadeia de canais)
# ===========================

def oracle_kernel_sequential(
    model: SystemModel,
    rho: Union[DensityOperator, np.ndarray],
    q: CorrelationQuery,
    cfg: CollisionConfig
) -> KernelValue:
    """
    Recursão de regressão com Z* trocado por potências do canal de colisão.

    Converge para kernel_schrodinger em primeira ordem em Δt.

    Raises:
        GridAlignmentError: Tempo fora da grade
    """
    q = validate_query(q, model.dim)
    rho_mat = rho.rho if isinstance(rho, DensityOperator) else validate_density(rho, model.dim).rho
    segments = _segment_slots(q, cfg)
    channel = collision_channel(model, cfg)
    d = model.dim

    sigma = rho_mat
    for k, n_steps in enumerate(segments):
        if k > 0:
            sigma = q.b_ops[k - 1] @ sigma @ dagger(q.a_ops[k - 1])
        if n_steps > 0:
            power = np.linalg.matrix_power(channel.mat, n_steps)
            sigma = SuperOperator(d, power, Picture.SCHRODINGER).apply(sigma)

    logger.debug("Oráculo sequencial: %d fatias com dt=%s", sum(segments), cfg.dt)
    return complex(np.trace(q.b_ops[-1] @ sigma @ dagger(q.a_ops[-1])))

# ===========================
# MODO JOINT (vetor de estado sistema ⊗ campo)
# ===========================

class JointPureState:
    """
    Vetor conjunto sistema ⊗ registrador de memória das fatias já usadas.

    As amplitudes ficam como matriz d×K (linha = índice do sistema,
    coluna = índice do registrador).
    """

    def __init__(self, amplitudes: np.ndarray):
        self.amplitudes = np.asarray(amplitudes, dtype=complex)

    @classmethod
    def from_system_vector(cls, psi: np.ndarray) -> "JointPureState":
        return cls(np.asarray(psi, dtype=complex).reshape(-1, 1))

    @property
    def system_dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def register_dim(self) -> int:
        return self.amplitudes.shape[1]

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def collide(self, U_vacuum: np.ndarray) -> "JointPureState":
        """
        Acopla uma fatia nova no vácuo e aplica o passo unitário.

        Args:
            U_vacuum: Colunas de U_Δ com fatia de entrada |0⟩, shape (d, m, d)
        """
        d, m = U_vacuum.shape[0], U_vacuum.shape[1]
        new = np.einsum("jsi,ik->jks", U_vacuum, self.amplitudes)
        return JointPureState(new.reshape(d, self.register_dim * m))

    def apply_system(self, X: np.ndarray) -> "JointPureState":
        return JointPureState(X @ self.amplitudes)

    def inner(self, other: "JointPureState") -> complex:
        """⟨self|other⟩"""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

def _compress_register(
    branch_a: JointPureState,
    branch_b: JointPureState
) -> Tuple[JointPureState, JointPureState]:
    """
    Troca o registrador por uma base ortonormal do espaço-linha conjunto.

    É uma isometria no registrador: preserva ⟨φ_a|φ_b⟩ e toda evolução
    futura, que só age no sistema e em fatias novas.
    """
    stacked = np.vstack([branch_a.amplitudes, branch_b.amplitudes])
    _, singular, vh = np.linalg.svd(stacked, full_matrices=False)
    scale = singular[0] if singular.size and singular[0] > 0 else 1.0
    rank = max(1, int(np.sum(singular > NUMERICS_CONFIG.RANK_TOL * scale)))
    basis = dagger(vh[:rank])
    return (
        JointPureState(branch_a.amplitudes @ basis),
        JointPureState(branch_b.amplitudes @ basis),
    )

def _check_budget(state: JointPureState, trunc: int, budget: int) -> None:
    working = state.dim * trunc
    if working > budget:
        raise BudgetExceededError(
            f"❌ Vetor de trabalho com {working} entradas excede o orçamento {budget}"
        )

def oracle_kernel_joint(
    model: SystemModel,
    psi0,
    q: CorrelationQuery,
    cfg: CollisionConfig
) -> KernelValue:
    """
    Núcleo direto da definição w = ⟨φ_a|φ_b⟩ no espaço conjunto.

    |φ_x⟩ = x_n V_n x_{n−1} … V_2 x_1 V_1 |ψ₀⟩⊗|vac⟩, com V_k o produto
    dos passos unitários das fatias em (t_{k−1}, t_k]. Não usa os módulos
    de semigrupo nem o canal de colisão.

    Args:
        model: Modelo validado
        psi0: Vetor de estado puro do sistema (norma 1)
        q: Consulta ordenada no tempo
        cfg: Discretização

    Returns:
        w_t(a, b)

    Raises:
        GridAlignmentError: Tempo fora da grade
        BudgetExceededError: Vetor de trabalho acima do orçamento
    """
    q = validate_query(q, model.dim)
    psi = np.asarray(psi0, dtype=complex).ravel()
    if psi.shape != (model.dim,):
        raise DimensionError(f"❌ psi0 tem tamanho {psi.size}, modelo tem d={model.dim}")
    if abs(np.linalg.norm(psi) - 1.0) > NUMERICS_CONFIG.DENSITY_TOL:
        raise ValidationError(f"❌ psi0 deve ter norma 1, recebido {np.linalg.norm(psi):.12g}")

    segments = _segment_slots(q, cfg)
    d, m = model.dim, cfg.trunc
    U = step_unitary(model, cfg)
    U_vacuum = U[:, ::m].reshape(d, m, d)

    branch_a = JointPureState.from_system_vector(psi)
    branch_b = JointPureState.from_system_vector(psi)
    max_register = 1

    for k, n_steps in enumerate(segments):
        if k > 0:
            branch_a = branch_a.apply_system(q.a_ops[k - 1])
            branch_b = branch_b.apply_system(q.b_ops[k - 1])
        for _ in range(n_steps):
            _check_budget(branch_b, m, cfg.budget)
            branch_a = branch_a.collide(U_vacuum)
            branch_b = branch_b.collide(U_vacuum)
            if cfg.compress:
                branch_a, branch_b = _compress_register(branch_a, branch_b)
            max_register = max(max_register, branch_b.register_dim)

    branch_a = branch_a.apply_system(q.a_ops[-1])
    branch_b = branch_b.apply_system(q.b_ops[-1])
    logger.debug(
        "Oráculo joint: %d fatias, registrador máximo %d (compress=%s)",
        sum(segments), max_register, cfg.compress,
    )
    return branch_a.inner(branch_b)

def oracle_kernel_joint_mixed(
    model: SystemModel,
    rho: Union[DensityOperator, np.ndarray],
    q: CorrelationQuery,
    cfg: CollisionConfig
) -> KernelValue:
    """
    Modo joint para estado misto: média sobre o ensemble de autovetores de ρ.

    Returns:
        Σ_i p_i w(ψ_i)
    """
    rho_mat = rho.rho if isinstance(rho, DensityOperator) else validate_density(rho, model.dim).rho
    weights, vectors = np.linalg.eigh((rho_mat + dagger(rho_mat)) / 2)
    total = 0j
    for p, psi in zip(weights, vectors.T):
        if p <= ORACLE_CONFIG.ENSEMBLE_WEIGHT_FLOOR:
            continue
        total += p * oracle_kernel_joint(model, psi / np.linalg.norm(psi), q, cfg)
    return complex(total)

# ===========================
# ESPERANÇA CONDICIONAL DO VÁCUO
# ===========================

def _slot_total(side: int, dim: int, trunc: int) -> int:
    """N tal que side = dim·trunc^N."""
    if side % dim != 0:
        raise DimensionError(f"❌ Lado {side} não é múltiplo de d={dim}")
    n, rest = 0, side // dim
    while rest % trunc == 0 and rest > 1:
        rest //= trunc
        n += 1
    if rest != 1:
        raise DimensionError(f"❌ Lado {side} não é d·m^N com d={dim}, m={trunc}")
    return n

def vacuum_conditional_expectation(X, cut: int, dim: int, trunc: int) -> np.ndarray:
    """
    Contrai as fatias depois do corte contra o vácuo dos dois lados.

    ⟨η′|E X|η⟩ = ⟨vac_futuro|⟨η′|X|η⟩|vac_futuro⟩

    Args:
        X: Operador em sistema ⊗ N fatias (lado dim·trunc^N)
        cut: Número k de fatias mantidas (0 ≤ k ≤ N)
        dim: Dimensão do sistema
        trunc: Truncamento das fatias

    Returns:
        Operador em sistema ⊗ k fatias

    Raises:
        DimensionError: Dimensões inconsistentes ou corte fora de [0, N]
    """
    X = as_matrix(X, "X")
    if X.shape[0] != X.shape[1]:
        raise DimensionError(f"❌ X deve ser quadrada, recebido shape {X.shape}")
    n_slots = _slot_total(X.shape[0], dim, trunc)
    if not 0 <= cut <= n_slots:
        raise DimensionError(f"❌ Corte {cut} fora de [0, {n_slots}]")

    past = dim * trunc ** cut
    future = trunc ** (n_slots - cut)
    return X.reshape(past, future, past, future)[:, 0, :, 0].copy()

def embed_window_operator(
    X,
    dim: int,
    trunc: int,
    n_slots: int,
    start: int
) -> np.ndarray:
    """
    Coloca um operador de sistema ⊗ janela de fatias (start, start+w] no
    espaço total, com identidade nas demais fatias.

    Args:
        X: Operador em sistema ⊗ w fatias
        dim: Dimensão do sistema
        trunc: Truncamento
        n_slots: Total N de fatias
        start: Fatias anteriores à janela

    Returns:
        Operador em sistema ⊗ N fatias
    """
    X = as_matrix(X, "X")
    window = _slot_total(X.shape[0], dim, trunc)
    if start < 0 or start + window > n_slots:
        raise DimensionError(f"❌ Janela de {window} fatias a partir de {start} excede N={n_slots}")

    m_win = trunc ** window
    m_past = trunc ** start
    m_fut = trunc ** (n_slots - start - window)
    full = np.kron(X, np.eye(m_past * m_fut, dtype=complex))
    tensor = full.reshape(dim, m_win, m_past, m_fut, dim, m_win, m_past, m_fut)
    tensor = tensor.transpose(0, 2, 1, 3, 4, 6, 5, 7)
    side = dim * trunc ** n_slots
    return tensor.reshape(side, side)

def markov_witness(
    X,
    dim: int,
    trunc: int,
    n_slots: int,
    cut: int
) -> Tuple[SystemOperator, float]:
    """
    Testemunha da propriedade de Markov no modelo discreto.

    E no corte leva um operador do sistema ⊗ fatias futuras a Y ⊗ I_passado,
    com Y só no sistema.

    Args:
        X: Operador em sistema ⊗ fatias (cut, cut+w]
        dim, trunc, n_slots: Geometria
        cut: Corte

    Returns:
        (Y, resíduo ‖E(X̃) − Y⊗I‖_F)
    """
    X = as_matrix(X, "X")
    window = _slot_total(X.shape[0], dim, trunc)
    embedded = embed_window_operator(X, dim, trunc, n_slots, cut)
    reduced = vacuum_conditional_expectation(embedded, cut, dim, trunc)

    m_win = trunc ** window
    Y = X.reshape(dim, m_win, dim, m_win)[:, 0, :, 0]
    expected = np.kron(Y, np.eye(trunc ** cut, dtype=complex))
    return Y, frobenius_norm(reduced - expected)

def state_compatibility_gap(X, rho, trunc: int, cut: int) -> float:
    """
    |μ(X) − μ(E(X))| para o estado ρ ⊗ vácuo.

    Args:
        X: Operador em sistema ⊗ N fatias
        rho: Estado do sistema
        trunc: Truncamento
        cut: Corte

    Returns:
        Diferença absoluta
    """
    rho_mat = rho.rho if isinstance(rho, DensityOperator) else as_matrix(rho, "rho")
    dim = rho_mat.shape[0]
    X = as_matrix(X, "X")
    n_slots = _slot_total(X.shape[0], dim, trunc)

    def joint_state(k: int) -> np.ndarray:
        vac = np.zeros((trunc ** k, trunc ** k), dtype=complex)
        vac[0, 0] = 1.0
        return np.kron(rho_mat, vac)

    full = np.trace(joint_state(n_slots) @ X)
    past = np.trace(joint_state(cut) @ vacuum_conditional_expectation(X, cut, dim, trunc))
    return float(abs(full - past))

# ===========================
# TABELA DE ITŌ
# ===========================

@dataclass(frozen=True)
class ItoReport:
    """Momentos no vácuo dos incrementos discretos B = √Δt·a"""
    dt: float
    trunc: int
    bb_dag: float
    b_dag_b: float
    bb: float
    b_dag_b_dag: float
    commutator: complex
    commutator_expected: complex

    @property
    def max_deviation(self) -> float:
        return max(
            abs(self.bb_dag - self.dt),
            abs(self.b_dag_b),
            abs(self.bb),
            abs(self.b_dag_b_dag),
            abs(self.commutator - self.commutator_expected),
        )

def _slot_operator(op: np.ndarray, j: int, n: int) -> np.ndarray:
    m = op.shape[0]
    return np.kron(np.kron(np.eye(m ** j), op), np.eye(m ** (n - j - 1)))

def commutator_expectation(
    f: Sequence[complex],
    g: Sequence[complex],
    cfg: CollisionConfig
) -> Tuple[complex, complex]:
    """
    ⟨vac|[B(f), B†(g)]|vac⟩ para funções degrau sobre len(f) fatias.

    Returns:
        (valor medido, Σ conj(f_j) g_j Δt)

    Raises:
        DimensionError: f e g vazios ou de tamanhos diferentes
        BudgetExceededError: m^n acima do orçamento
    """
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    if f.shape != g.shape or f.ndim != 1:
        raise DimensionError(f"❌ f e g devem ter o mesmo tamanho: {f.shape} vs {g.shape}")
    if f.size == 0:
        raise DimensionError("❌ f e g precisam de ao menos uma fatia")
    n, m = f.size, cfg.trunc
    if m ** n > cfg.budget:
        raise BudgetExceededError(f"❌ Espaço de {m ** n} entradas excede o orçamento {cfg.budget}")

    a = slot_annihilator(m)
    root = math.sqrt(cfg.dt)
    B_f = sum(np.conj(f[j]) * root * _slot_operator(a, j, n) for j in range(n))
    B_dag_g = sum(g[j] * root * _slot_operator(dagger(a), j, n) for j in range(n))
    commutator = B_f @ B_dag_g - B_dag_g @ B_f
    expected = complex(np.sum(np.conj(f) * g) * cfg.dt)
    return complex(commutator[0, 0]), expected

def ito_table_check(
    cfg: CollisionConfig,
    f: Optional[Sequence[complex]] = None,
    g: Optional[Sequence[complex]] = None
) -> ItoReport:
    """
    Momentos ⟨0|BB†|0⟩, ⟨0|B†B|0⟩, ⟨0|BB|0⟩, ⟨0|B†B†|0⟩ de uma fatia.

    Esperado (Δt, 0, 0, 0). Também mede o comutador canônico em funções
    degrau (padrão: f = g = indicadora da primeira fatia).
    """
    B = math.sqrt(cfg.dt) * slot_annihilator(cfg.trunc)
    B_dag = dagger(B)

    f = [1.0] if f is None else f
    g = [1.0] if g is None else g
    commutator, expected = commutator_expectation(f, g, cfg)

    return ItoReport(
        dt=cfg.dt,
        trunc=cfg.trunc,
        bb_dag=float((B @ B_dag)[0, 0].real),
        b_dag_b=float((B_dag @ B)[0, 0].real),
        bb=float((B @ B)[0, 0].real),
        b_dag_b_dag=float((B_dag @ B_dag)[0, 0].real),
        commutator=commutator,
        commutator_expected=expected,
    )
