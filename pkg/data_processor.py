"""Montagem de tabelas de resultados (pandas)"""
from typing import Sequence

import numpy as np
import pandas as pd

def build_evolution_frame(
    times: Sequence[float],
    states: Sequence[np.ndarray]
) -> pd.DataFrame:
    """
    Série temporal de ρ(t) com partes real e imaginária separadas.

    Args:
        times: Instantes da grade
        states: ρ(t) em cada instante

    Returns:
        DataFrame com colunas t, rho_<i><j>_re, rho_<i><j>_im, trace_re, trace_im
    """
    dim = states[0].shape[0]
    rows = []
    for t, rho in zip(times, states):
        row = {"t": float(t)}
        for i in range(dim):
            for j in range(dim):
                row[f"rho_{i}{j}_re"] = float(rho[i, j].real)
                row[f"rho_{i}{j}_im"] = float(rho[i, j].imag)
        trace = np.trace(rho)
        row["trace_re"] = float(trace.real)
        row["trace_im"] = float(trace.imag)
        rows.append(row)
    return pd.DataFrame(rows)

def build_report_frame(results: Sequence[dict]) -> pd.DataFrame:
    """
    Relatório da suíte de verificação.

    Args:
        results: Dicionários com 'property', 'measured' e 'bound'

    Returns:
        DataFrame com coluna 'passed' adicionada
    """
    df = pd.DataFrame(results, columns=["property", "measured", "bound", "passed"])
    return df

def convergence_table(dts: Sequence[float], errors: Sequence[float]) -> pd.DataFrame:
    """
    Erro do oráculo por passo Δt e razão entre passos consecutivos.

    Args:
        dts: Passos em ordem decrescente (cada um metade do anterior)
        errors: |oráculo − QRT| em cada passo

    Returns:
        DataFrame com dt, error e ratio (erro anterior / erro atual)
    """
    df = pd.DataFrame({"dt": list(dts), "error": list(errors)})
    df["ratio"] = df["error"].shift(1) / df["error"]
    return df
