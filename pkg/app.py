"""
Regressão Quântica - CLI
Núcleos de correlação multi-tempo (QRT) e oráculo de colisões

Uso: python app.py <comando> [opções]
"""
import argparse
import logging
import sys
from typing import List, Optional

from commands import COMMANDS, Mode, RunConfig
from errors import PropertyViolation, ValidationError
from settings import DATA_CONFIG, ORACLE_CONFIG, OUTPUT_CONFIG, VERIFY_CONFIG

logger = logging.getLogger("qregress")

# ===========================
# ARGUMENTOS
# ===========================

class QRegressArgumentParser(argparse.ArgumentParser):
    """Erros de uso viram ValidationError (código de saída 1)"""

    def error(self, message: str):
        raise ValidationError(f"❌ Argumentos inválidos: {message}")

def build_parser() -> argparse.ArgumentParser:
    parser = QRegressArgumentParser(
        prog="app.py",
        description="Núcleos de correlação de processos quânticos de Markov e oráculo de colisões",
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="Comando a executar")
    parser.add_argument("--model", default=DATA_CONFIG.MODEL_PATH, help="Modelo JSON {dim, H, L}")
    parser.add_argument("--rho", default=DATA_CONFIG.RHO_PATH, help="Estado inicial JSON {rho}")
    parser.add_argument("--query", default=DATA_CONFIG.QUERY_PATH, help="Consulta JSON {times, a_ops, b_ops}")
    parser.add_argument("--dt", type=float, default=ORACLE_CONFIG.DEFAULT_DT, help="Passo Δt do oráculo")
    parser.add_argument("--trunc", type=int, default=None, help="Truncamento m do ancilla")
    parser.add_argument("--budget", type=int, default=None, help="Máximo de entradas do vetor joint")
    parser.add_argument("--t-end", type=float, default=1.0, help="Tempo final (evolve)")
    parser.add_argument("--steps", type=int, default=10, help="Número de intervalos (evolve)")
    parser.add_argument(
        "--mode",
        choices=[m.value for m in Mode],
        default=Mode.QRT_SCHRODINGER.value,
        help="Método de cálculo do núcleo (correlate); nos modos oracle-* a tendência sai em stderr",
    )
    parser.add_argument("--out", default=None, help="Arquivo de saída (padrão: stdout)")
    parser.add_argument("--seed", type=int, default=VERIFY_CONFIG.DEFAULT_SEED, help="Semente (verify)")
    parser.add_argument("--verbose", action="store_true", help="Log em nível DEBUG")
    return parser

def configure_logging(verbose: bool = False) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

def parse_run_config(argv: Optional[List[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    return RunConfig(
        command=args.command,
        model_path=args.model,
        rho_path=args.rho,
        query_path=args.query,
        dt=args.dt,
        trunc=args.trunc,
        budget=args.budget,
        t_end=args.t_end,
        steps=args.steps,
        mode=Mode(args.mode),
        out=args.out,
        seed=args.seed,
    )

def write_output(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)

# ===========================
# EXECUÇÃO
# ===========================

def main(argv: Optional[List[str]] = None) -> int:
    try:
        cfg = parse_run_config(argv)
        result = COMMANDS[cfg.command](cfg)
        write_output(result.text, cfg.out)
        if result.violations:
            raise PropertyViolation("; ".join(result.violations))
    except ValidationError as e:
        configure_logging()
        logger.error("%s", e)
        return OUTPUT_CONFIG.EXIT_VALIDATION
    except PropertyViolation as e:
        logger.error("❌ Propriedade violada: %s", e)
        return OUTPUT_CONFIG.EXIT_PROPERTY
    except OSError as e:
        logger.error("%s", e)
        return OUTPUT_CONFIG.EXIT_IO
    return OUTPUT_CONFIG.EXIT_OK

if __name__ == "__main__":
    sys.exit(main())
