"""Suíte de verificação: cada propriedade vira uma linha do relatório"""
import logging
import math
from typing import Callable, List, Optional

import numpy as np

from classical_embedding import (
    chain_from_model,
    classical_correlation,
    compare_quantum_classical,
    path_sum_correlation,
)
from collision_oracle import (
    CollisionConfig,
    ito_table_check,
    markov_witness,
    oracle_kernel_joint,
    oracle_kernel_sequential,
    state_compatibility_gap,
    vacuum_conditional_expectation,
)
from linalg_core import choi_matrix, frobenius_norm, min_eigenvalue_hermitian, vec
from model import (
    SystemModel,
    atom_decay_model,
    excited_projector,
    random_density,
    random_model,
    random_operator,
    sigma_minus,
    sigma_plus,
    validate_density,
)
from regression import CorrelationQuery, kernel_heisenberg, kernel_schrodinger, make_query
from semigroup import Picture, propagator_matrix
from settings import VERIFY_CONFIG

logger = logging.getLogger(__name__)

RATIO_BOUNDS = (1.7, 2.3)

def _row(name: str, measured: float, bound: float) -> dict:
    """Propriedade do tipo medido ≤ limite."""
    return {
        "property": name,
        "measured": float(measured),
        "bound": f"<= {bound:g}",
        "passed": bool(measured <= bound),
    }

def _interval_row(name: str, measured: float, low: float, high: float) -> dict:
    return {
        "property": name,
        "measured": float(measured),
        "bound": f"[{low:g}, {high:g}]",
        "passed": bool(low <= measured <= high),
    }

def _unit_operator(rng: np.random.Generator, dim: int, hermitian: bool = False) -> np.ndarray:
    X = random_operator(rng, dim, hermitian=hermitian)
    return X / np.linalg.norm(X, 2)

def _random_models(rng: np.random.Generator) -> List[SystemModel]:
    dims = VERIFY_CONFIG.DIMS
    return [random_model(rng, dims[k % len(dims)]) for k in range(VERIFY_CONFIG.N_RANDOM_MODELS)]

def random_query(rng: np.random.Generator, dim: int, n: int, t_max: float = 2.0) -> CorrelationQuery:
    """Consulta aleatória com operadores de norma 1 e tempos ordenados."""
    times = np.sort(rng.uniform(0.0, t_max, size=n))
    a_ops = [_unit_operator(rng, dim) for _ in range(n)]
    b_ops = [_unit_operator(rng, dim) for _ in range(n)]
    return make_query(times, b_ops, a_ops)

def atom_reference_queries() -> List[CorrelationQuery]:
    """Consultas do átomo com n = 1, 2, 3 usadas nos testes de convergência."""
    identity = np.eye(2)
    return [
        make_query([1.0], [excited_projector()]),
        make_query([0.5, 1.0], [identity, sigma_minus()], a_ops=[sigma_minus(), identity]),
        make_query(
            [0.25, 0.5, 1.0],
            [identity, identity, sigma_minus()],
            a_ops=[sigma_minus(), identity, identity],
        ),
    ]

# ===========================
# PROPRIEDADES
# ===========================

def check_cptp(models: List[SystemModel], times: List[float]) -> List[dict]:
    """Positividade completa (Choi) e preservação de traço de e^{ℒ*t}."""
    worst_cp, worst_tp = 0.0, 0.0
    for model in models:
        d = model.dim
        trace_row = vec(np.eye(d)).conj()
        for t in times:
            S = propagator_matrix(model, t, Picture.SCHRODINGER)
            worst_cp = max(worst_cp, -min_eigenvalue_hermitian(choi_matrix(S, d)))
            worst_tp = max(worst_tp, float(np.max(np.abs(trace_row @ S.mat - trace_row))))
    return [
        _row("CP: -min autovalor da Choi de e^{L*t}", max(worst_cp, 0.0), 1e-9),
        _row("TP: |Tr e^{L*t}(X) - Tr X|", worst_tp, 1e-10),
    ]

def check_semigroup_and_duality(models: List[SystemModel], rng: np.random.Generator) -> List[dict]:
    """Lei de semigrupo e dualidade Heisenberg/Schrödinger."""
    worst_law, worst_dual = 0.0, 0.0
    for model in models:
        a, b = rng.uniform(0.0, 2.0, size=2)
        exp_a = propagator_matrix(model, a, Picture.SCHRODINGER).mat
        exp_b = propagator_matrix(model, b, Picture.SCHRODINGER).mat
        exp_ab = propagator_matrix(model, a + b, Picture.SCHRODINGER).mat
        worst_law = max(worst_law, frobenius_norm(exp_ab - exp_a @ exp_b))

        X = random_operator(rng, model.dim)
        Y = random_operator(rng, model.dim)
        t = rng.uniform(0.0, 2.0)
        heis = propagator_matrix(model, t, Picture.HEISENBERG).apply(X)
        schr = propagator_matrix(model, t, Picture.SCHRODINGER).apply(Y)
        worst_dual = max(worst_dual, abs(np.trace(Y @ heis) - np.trace(schr @ X)))
    return [
        _row("Semigrupo: ||e^{L*(a+b)} - e^{L*a}e^{L*b}||_F", worst_law, 1e-9),
        _row("Dualidade: |Tr(Y Z(X)) - Tr(Z*(Y) X)|", worst_dual, 1e-10),
    ]

def check_form_equivalence(
    rng: np.random.Generator,
    n_queries: int,
    model: Optional[SystemModel] = None
) -> dict:
    """Formas de Schrödinger e de Heisenberg do QRT coincidem."""
    worst = 0.0
    for _ in range(n_queries):
        current = model if model is not None else random_model(rng, int(rng.choice(VERIFY_CONFIG.DIMS)))
        rho = random_density(rng, current.dim)
        n = int(rng.integers(1, VERIFY_CONFIG.MAX_N_POINTS + 1))
        q = random_query(rng, current.dim, n)
        worst = max(worst, abs(kernel_schrodinger(current, rho, q) - kernel_heisenberg(current, rho, q)))
    return _row("QRT: |w_schrodinger - w_heisenberg|", worst, 1e-10)

def check_atom_closed_forms() -> List[dict]:
    """Valores fechados do átomo com γ = 1."""
    model = atom_decay_model(1.0)
    excited = validate_density(excited_projector())
    queries = atom_reference_queries()
    population = kernel_schrodinger(model, excited, queries[0])
    dipole = kernel_schrodinger(model, excited, queries[1])
    return [
        _row("Átomo: |população(1) - e^-1|", abs(population - math.exp(-1.0)), 1e-10),
        _row("Átomo: |dipolo(0.5, 1) - e^-0.75|", abs(dipole - math.exp(-0.75)), 1e-10),
    ]

def _convergence_ratio(
    oracle: Callable[[float, CorrelationQuery], complex],
    reference: complex,
    q: CorrelationQuery,
    dt: float
) -> float:
    coarse = abs(oracle(2 * dt, q) - reference)
    fine = abs(oracle(dt, q) - reference)
    logger.info("Convergência n=%d: erro %.3e (dt=%g) → %.3e (dt=%g)", q.n, coarse, 2 * dt, fine, dt)
    return coarse / fine

def check_oracle_convergence() -> List[dict]:
    """Oráculo de colisões converge em primeira ordem para o QRT."""
    model = atom_decay_model(1.0)
    excited = validate_density(excited_projector())
    psi0 = np.array([0.0, 1.0])

    def sequential(dt: float, q: CorrelationQuery) -> complex:
        return oracle_kernel_sequential(model, excited, q, CollisionConfig(dt=dt))

    def joint(dt: float, q: CorrelationQuery) -> complex:
        return oracle_kernel_joint(model, psi0, q, CollisionConfig(dt=dt))

    rows = []
    for q in atom_reference_queries():
        reference = kernel_schrodinger(model, excited, q)
        rows.append(_interval_row(
            f"Oráculo sequencial n={q.n}: razão de erro 1/256 → 1/512",
            _convergence_ratio(sequential, reference, q, 1 / 512), *RATIO_BOUNDS,
        ))
        rows.append(_interval_row(
            f"Oráculo joint n={q.n}: razão de erro 1/32 → 1/64",
            _convergence_ratio(joint, reference, q, 1 / 64), *RATIO_BOUNDS,
        ))
    return rows

def check_ito_table() -> dict:
    """Momentos discretos (Δt, 0, 0, 0) da tabela de Itō."""
    worst = 0.0
    for dt in (0.5, 0.01):
        for trunc in (2, 3):
            worst = max(worst, ito_table_check(CollisionConfig(dt=dt, trunc=trunc)).max_deviation)
    return _row("Itō: desvio máximo dos momentos no vácuo", worst, VERIFY_CONFIG.ITO_TOL)

def check_conditional_expectation(rng: np.random.Generator) -> List[dict]:
    """Propriedades (E1), (E2), torre e testemunha de Markov."""
    dim, trunc = 2, 2
    worst_module, worst_tower, worst_state, worst_markov = 0.0, 0.0, 0.0, 0.0
    for n_slots in range(1, 5):
        side = dim * trunc ** n_slots
        for cut in range(n_slots + 1):
            A = random_operator(rng, side)
            B = random_operator(rng, dim * trunc ** cut)
            B_full = np.kron(B, np.eye(trunc ** (n_slots - cut)))
            lhs = vacuum_conditional_expectation(A @ B_full, cut, dim, trunc)
            rhs = vacuum_conditional_expectation(A, cut, dim, trunc) @ B
            worst_module = max(worst_module, frobenius_norm(lhs - rhs))

            for inner_cut in range(cut + 1):
                once = vacuum_conditional_expectation(A, inner_cut, dim, trunc)
                twice = vacuum_conditional_expectation(
                    vacuum_conditional_expectation(A, cut, dim, trunc), inner_cut, dim, trunc
                )
                worst_tower = max(worst_tower, frobenius_norm(once - twice))

            rho = random_density(rng, dim)
            worst_state = max(worst_state, state_compatibility_gap(A, rho, trunc, cut))

            window = n_slots - cut
            if window > 0:
                X = random_operator(rng, dim * trunc ** window)
                _, residual = markov_witness(X, dim, trunc, n_slots, cut)
                worst_markov = max(worst_markov, residual)

    return [
        _row("E1: ||E(AB) - E(A)B||_F", worst_module, 1e-12),
        _row("Torre: ||E_s E_t - E_s||_F", worst_tower, 1e-12),
        _row("E2: |mu(X) - mu(E(X))|", worst_state, 1e-12),
        _row("Markov: resíduo de E(I_passado ⊗ X)", worst_markov, 1e-12),
    ]

def check_classical_embedding(rng: np.random.Generator) -> List[dict]:
    """Núcleos diagonais do átomo contra a soma sobre caminhos clássicos."""
    model = atom_decay_model(1.0)
    worst = 0.0
    for n in range(1, VERIFY_CONFIG.MAX_N_POINTS + 1):
        p = rng.uniform(0.0, 1.0)
        rho = validate_density(np.diag([1.0 - p, p]))
        times = np.sort(rng.uniform(0.0, 2.0, size=n))
        b_ops = [np.diag(rng.uniform(-1.0, 1.0, size=2)) for _ in range(n)]
        result = compare_quantum_classical(model, rho, make_query(times, b_ops))
        chain = chain_from_model(model, rho)
        brute = path_sum_correlation(chain, times, [np.diag(b).real for b in b_ops])
        worst = max(worst, result["diff"], abs(result["classical"] - brute))

    excited = validate_density(excited_projector())
    chain = chain_from_model(model, excited)
    indicator = [0.0, 1.0]
    absorbing = classical_correlation(chain, [0.5, 1.0], [indicator, indicator])
    return [
        _row("Clássico: |quântico - caminhos|", worst, 1e-10),
        _row("Clássico: |absorvente(0.5, 1) - e^-1|", abs(absorbing - math.exp(-1.0)), 1e-10),
    ]

def check_order_dependence() -> dict:
    """Trocar a atribuição operador-tempo muda o valor (estrutura piramidal)."""
    model = atom_decay_model(1.0)
    excited = validate_density(excited_projector())
    first = kernel_schrodinger(model, excited, make_query([0.5, 1.0], [sigma_minus(), sigma_plus()]))
    second = kernel_schrodinger(model, excited, make_query([0.5, 1.0], [sigma_plus(), sigma_minus()]))
    gap = abs(first - second)
    return {
        "property": "Ordem: |w(σ⁻,σ⁺) - w(σ⁺,σ⁻)|",
        "measured": float(gap),
        "bound": "> 0.1",
        "passed": bool(gap > 0.1),
    }

def check_model(model: SystemModel, rng: np.random.Generator) -> List[dict]:
    """Propriedades universais no modelo carregado pelo usuário."""
    rows = [dict(r, property=f"Modelo: {r['property']}") for r in check_cptp([model], VERIFY_CONFIG.CP_TIMES)]
    rows += [dict(r, property=f"Modelo: {r['property']}") for r in check_semigroup_and_duality([model], rng)]
    form = check_form_equivalence(rng, 20, model)
    rows.append(dict(form, property=f"Modelo: {form['property']}"))
    return rows

def run_verification(seed: int, model: Optional[SystemModel] = None) -> List[dict]:
    """
    Executa todas as propriedades com a semente dada.

    Args:
        seed: Semente do gerador aleatório
        model: Modelo adicional do usuário (opcional)

    Returns:
        Lista de linhas do relatório
    """
    rng = np.random.default_rng(seed)
    models = _random_models(rng)

    rows = []
    rows += check_cptp(models, VERIFY_CONFIG.CP_TIMES)
    rows += check_semigroup_and_duality(models, rng)
    rows.append(check_form_equivalence(rng, VERIFY_CONFIG.N_RANDOM_QUERIES))
    rows += check_atom_closed_forms()
    rows += check_oracle_convergence()
    rows.append(check_ito_table())
    rows += check_conditional_expectation(rng)
    rows += check_classical_embedding(rng)
    rows.append(check_order_dependence())
    if model is not None:
        rows += check_model(model, rng)

    failed = [r["property"] for r in rows if not r["passed"]]
    if failed:
        logger.warning("Propriedades fora da tolerância: %s", ", ".join(failed))
    return rows
