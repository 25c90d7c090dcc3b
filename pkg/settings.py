"""Configurações centralizadas da biblioteca e da CLI"""
from dataclasses import dataclass
import os
from typing import Optional

from errors import ValidationError

_ROOT = os.path.dirname(os.path.abspath(__file__))

@dataclass
class NumericsConfig:
    """Tolerâncias numéricas usadas em todos os módulos"""

    # Validação de entradas
    HERMITIAN_TOL: float = 1e-10
    DENSITY_TOL: float = 1e-10

    # Exponencial de matriz (norma-1)
    MAT_EXP_NORM_LIMIT: float = 50.0

    # Subálgebra diagonal
    DIAGONAL_TOL: float = 1e-12

    # Alinhamento de tempos à grade do oráculo
    GRID_TOL: float = 1e-12

    # Compressão do registrador de memória (modo joint)
    RANK_TOL: float = 1e-13

@dataclass
class OracleConfig:
    """Configurações do oráculo de colisões"""

    DEFAULT_TRUNC: int = 2
    DEFAULT_BUDGET: int = 200_000
    BUDGET_ENV_VAR: str = "QREGRESS_BUDGET"
    DEFAULT_DT: float = 1 / 64

    # Pesos do ensemble abaixo disso são ignorados
    ENSEMBLE_WEIGHT_FLOOR: float = 1e-15

@dataclass
class OutputConfig:
    """Formatação de saída e códigos de retorno"""

    FLOAT_FORMAT: str = "%.16e"
    CSV_SEPARATOR: str = ","

    EXIT_OK: int = 0
    EXIT_VALIDATION: int = 1
    EXIT_PROPERTY: int = 2
    EXIT_IO: int = 3

    JSON_INDENT: int = 2

@dataclass
class VerifyConfig:
    """Configurações da suíte de verificação"""

    DEFAULT_SEED: int = 42
    N_RANDOM_MODELS: int = 25
    N_RANDOM_QUERIES: int = 100
    MAX_N_POINTS: int = 4
    ITO_TOL: float = 1e-15
    DIMS: list = None
    CP_TIMES: list = None

    def __post_init__(self):
        self.DIMS = [2, 3, 4]
        self.CP_TIMES = [0.1, 1.0, 5.0]

@dataclass
class DataConfig:
    """Arquivos de exemplo incluídos no repositório (átomo de dois níveis)"""

    MODEL_PATH: str = os.path.join(_ROOT, "atom_decay_model.json")
    RHO_PATH: str = os.path.join(_ROOT, "atom_excited_rho.json")
    QUERY_PATH: str = os.path.join(_ROOT, "atom_two_time_query.json")

# Instâncias globais
DATA_CONFIG = DataConfig()
NUMERICS_CONFIG = NumericsConfig()
ORACLE_CONFIG = OracleConfig()
OUTPUT_CONFIG = OutputConfig()
VERIFY_CONFIG = VerifyConfig()

def resolve_budget(cli_value: Optional[int] = None) -> int:
    """
    Resolve o orçamento de entradas do vetor de estado conjunto.

    Precedência: flag da CLI > variável de ambiente > padrão.

    Args:
        cli_value: Valor passado por --budget (ou None)

    Returns:
        Orçamento positivo

    Raises:
        ValidationError: Se o valor não for um inteiro positivo
    """
    if cli_value is not None:
        budget = cli_value
    else:
        raw = os.environ.get(ORACLE_CONFIG.BUDGET_ENV_VAR)
        if raw is None or raw.strip() == "":
            return ORACLE_CONFIG.DEFAULT_BUDGET
        try:
            budget = int(raw)
        except ValueError:
            raise ValidationError(
                f"❌ {ORACLE_CONFIG.BUDGET_ENV_VAR} inválido: {raw!r} (esperado inteiro)"
            )

    if budget <= 0:
        raise ValidationError(f"❌ Orçamento deve ser positivo, recebido {budget}")
    return budget
