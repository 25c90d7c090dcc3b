"""Comandos da CLI: cada um lê arquivos, chama a biblioteca e devolve o texto de saída"""
from dataclasses import dataclass, field
from enum import Enum
import json
import logging
from typing import List, Optional

import numpy as np

from classical_embedding import chain_from_model, compare_quantum_classical
from collision_oracle import (
    ito_table_check,
    make_config,
    oracle_kernel_joint_mixed,
    oracle_kernel_sequential,
)
from data_loader import load_density, load_model, load_query, query_to_dict
from data_processor import build_evolution_frame, build_report_frame, convergence_table
from errors import GridAlignmentError, ValidationError
from formatters import complex_pair, format_float
from model import DensityOperator, SystemModel
from regression import CorrelationQuery, kernel_heisenberg, kernel_schrodinger
from semigroup import Picture, PropagatorCache
from settings import DATA_CONFIG, ORACLE_CONFIG, OUTPUT_CONFIG, VERIFY_CONFIG
from verification import run_verification

logger = logging.getLogger(__name__)

class Mode(str, Enum):
    QRT_SCHRODINGER = "qrt-schrodinger"
    QRT_HEISENBERG = "qrt-heisenberg"
    ORACLE_SEQ = "oracle-seq"
    ORACLE_JOINT = "oracle-joint"

@dataclass
class RunConfig:
    """Parâmetros de uma execução da CLI"""
    command: str
    model_path: str = DATA_CONFIG.MODEL_PATH
    rho_path: str = DATA_CONFIG.RHO_PATH
    query_path: str = DATA_CONFIG.QUERY_PATH
    dt: float = ORACLE_CONFIG.DEFAULT_DT
    trunc: Optional[int] = None
    budget: Optional[int] = None
    t_end: float = 1.0
    steps: int = 10
    mode: Mode = Mode.QRT_SCHRODINGER
    out: Optional[str] = None
    seed: int = VERIFY_CONFIG.DEFAULT_SEED

@dataclass
class CommandOutput:
    """Texto a emitir e lista de propriedades violadas (vazia = sucesso)"""
    text: str
    violations: List[str] = field(default_factory=list)

def _to_json(payload: dict) -> str:
    return json.dumps(payload, indent=OUTPUT_CONFIG.JSON_INDENT, ensure_ascii=False) + "\n"

def _to_csv(df) -> str:
    return df.to_csv(
        index=False,
        sep=OUTPUT_CONFIG.CSV_SEPARATOR,
        float_format=format_float,
    )

def _load_inputs(cfg: RunConfig, with_query: bool = True):
    model = load_model(cfg.model_path)
    rho = load_density(cfg.rho_path, model.dim)
    q = load_query(cfg.query_path, model.dim) if with_query else None
    return model, rho, q

def _oracle_value(
    mode: Mode,
    model: SystemModel,
    rho: DensityOperator,
    q: CorrelationQuery,
    cfg: RunConfig,
    dt: float
) -> complex:
    collision = make_config(dt, cfg.trunc, cfg.budget)
    if mode == Mode.ORACLE_SEQ:
        return oracle_kernel_sequential(model, rho, q, collision)
    return oracle_kernel_joint_mixed(model, rho, q, collision)

def _coarse_value(mode, model, rho, q, cfg) -> Optional[complex]:
    """Valor com passo 2·dt, ou None se a consulta não cair nessa grade."""
    try:
        return _oracle_value(mode, model, rho, q, cfg, 2 * cfg.dt)
    except GridAlignmentError:
        logger.warning("Tempos fora da grade 2·dt=%g; razão de convergência omitida", 2 * cfg.dt)
        return None

# ===========================
# COMANDOS
# ===========================

def cmd_evolve(cfg: RunConfig) -> CommandOutput:
    """
    Série temporal de ρ(t) em grade uniforme de [0, t_end].

    Raises:
        ValidationError: t_end ≤ 0, steps < 1 ou entradas inválidas
    """
    if not cfg.t_end > 0:
        raise ValidationError(f"❌ --t-end deve ser positivo, recebido {cfg.t_end}")
    if cfg.steps < 1:
        raise ValidationError(f"❌ --steps deve ser ≥ 1, recebido {cfg.steps}")

    model, rho, _ = _load_inputs(cfg, with_query=False)
    cache = PropagatorCache(model, Picture.SCHRODINGER)
    times = np.linspace(0.0, cfg.t_end, cfg.steps + 1)
    states = [cache.evolve(rho.rho, 0.0, t) for t in times]
    logger.debug("Evolução: %d instantes até t=%g", len(times), cfg.t_end)
    return CommandOutput(_to_csv(build_evolution_frame(times, states)))

def cmd_correlate(cfg: RunConfig) -> CommandOutput:
    """
    Núcleo w_t(a, b) da consulta no modo escolhido.

    Nos modos do oráculo registra (WARNING) a tendência de primeira ordem
    comparando dt e 2·dt com o valor do QRT.
    """
    model, rho, q = _load_inputs(cfg)
    mode = Mode(cfg.mode)

    if mode == Mode.QRT_SCHRODINGER:
        value = kernel_schrodinger(model, rho, q)
    elif mode == Mode.QRT_HEISENBERG:
        value = kernel_heisenberg(model, rho, q)
    else:
        value = _oracle_value(mode, model, rho, q, cfg, cfg.dt)
        reference = kernel_schrodinger(model, rho, q)
        coarse = _coarse_value(mode, model, rho, q, cfg)
        if coarse is not None:
            fine_error = abs(value - reference)
            coarse_error = abs(coarse - reference)
            logger.warning(
                "Tendência %s: erro %.3e (dt=%g) → %.3e (dt=%g), razão %.3f",
                mode.value, coarse_error, 2 * cfg.dt, fine_error, cfg.dt,
                coarse_error / fine_error if fine_error > 0 else float("inf"),
            )

    payload = {"value": complex_pair(value), "mode": mode.value, "query": query_to_dict(q)}
    if mode in (Mode.ORACLE_SEQ, Mode.ORACLE_JOINT):
        payload["dt"] = cfg.dt
    return CommandOutput(_to_json(payload))

def cmd_oracle(cfg: RunConfig) -> CommandOutput:
    """Oráculos sequencial e joint em dt e 2·dt contra o valor do QRT."""
    model, rho, q = _load_inputs(cfg)
    reference = kernel_schrodinger(model, rho, q)

    payload = {"reference": complex_pair(reference), "query": query_to_dict(q), "oracles": {}}
    for mode in (Mode.ORACLE_SEQ, Mode.ORACLE_JOINT):
        fine = _oracle_value(mode, model, rho, q, cfg, cfg.dt)
        coarse = _coarse_value(mode, model, rho, q, cfg)
        entry = {"dt": cfg.dt, "value": complex_pair(fine), "error": abs(fine - reference)}
        if coarse is not None:
            table = convergence_table(
                [2 * cfg.dt, cfg.dt], [abs(coarse - reference), abs(fine - reference)]
            )
            entry["coarse_value"] = complex_pair(coarse)
            entry["coarse_error"] = float(table["error"].iloc[0])
            entry["ratio"] = float(table["ratio"].iloc[1])
        payload["oracles"][mode.value] = entry
    return CommandOutput(_to_json(payload))

def cmd_ito(cfg: RunConfig) -> CommandOutput:
    """Tabela de Itō discreta para (dt, trunc)."""
    report = ito_table_check(make_config(cfg.dt, cfg.trunc, cfg.budget))
    payload = {
        "dt": report.dt,
        "trunc": report.trunc,
        "dB_dB_dag": report.bb_dag,
        "dB_dag_dB": report.b_dag_b,
        "dB_dB": report.bb,
        "dB_dag_dB_dag": report.b_dag_b_dag,
        "commutator": complex_pair(report.commutator),
        "commutator_expected": complex_pair(report.commutator_expected),
        "max_deviation": report.max_deviation,
    }
    violations = []
    if report.max_deviation > VERIFY_CONFIG.ITO_TOL:
        violations.append(f"Itō: desvio {report.max_deviation:.3e} > {VERIFY_CONFIG.ITO_TOL:g}")
    return CommandOutput(_to_json(payload), violations)

def cmd_classical(cfg: RunConfig) -> CommandOutput:
    """Núcleo quântico contra a cadeia clássica induzida (observáveis diagonais)."""
    model, rho, q = _load_inputs(cfg)
    result = compare_quantum_classical(model, rho, q)
    chain = chain_from_model(model, rho)
    payload = {
        "quantum": complex_pair(result["quantum"]),
        "classical": result["classical"],
        "diff": result["diff"],
        "generator": chain.Q.tolist(),
        "p0": chain.p0.tolist(),
    }
    return CommandOutput(_to_json(payload))

def cmd_verify(cfg: RunConfig) -> CommandOutput:
    """
    Suíte de propriedades com a semente dada, mais as checagens do modelo.

    Returns:
        Relatório CSV (property, measured, bound, passed) e as violações
    """
    model = load_model(cfg.model_path)
    report = build_report_frame(run_verification(cfg.seed, model))
    violations = report.loc[~report["passed"], "property"].tolist()
    logger.info("Verificação: %d/%d propriedades ok", len(report) - len(violations), len(report))
    return CommandOutput(_to_csv(report), violations)

COMMANDS = {
    "evolve": cmd_evolve,
    "correlate": cmd_correlate,
    "oracle": cmd_oracle,
    "ito": cmd_ito,
    "classical": cmd_classical,
    "verify": cmd_verify,
}
