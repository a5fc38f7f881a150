"""
Aplicación principal - PlethysmEngine
CLI para cálculo pletístico exacto y verificación cruzada con el modelo de conjuntos finitos
"""
import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from commands import COMMANDS, render_report
from config import get_settings
from core.codecs import dump_model
from core.errors import PlethysmError, PreconditionError
from core.file_utils import file_manager
from core.logging import logger
from core.suite_registry import get_supported_suites
from schemas import RunConfig, VerificationReport


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plethysm",
        description="Cálculo pletístico exacto: pletismo de series, coproducto de 𝒫 y modelo T𝐒",
    )
    parser.add_argument("--truncation", type=int, help="Truncación W (por defecto [Engine] truncation)")
    parser.add_argument("--size-bound", type=int, dest="size_bound", help="Cota de tamaño de enumeración")
    parser.add_argument("--seed", type=int, help="Semilla para las series aleatorias")
    parser.add_argument("--format", choices=["json", "text"], dest="output_format", help="Formato de salida")
    parser.add_argument("--output", help="Archivo de salida (por defecto la salida estándar)")

    sub = parser.add_subparsers(dest="command", required=True)

    plethysm = sub.add_parser("plethysm", help="G⊛F desde dos archivos de serie")
    plethysm.add_argument("outer", help="Archivo de G")
    plethysm.add_argument("inner", help="Archivo de F (sin término constante)")

    compose1 = sub.add_parser("compose1", help="Restricción univariante de G⊛F")
    compose1.add_argument("outer")
    compose1.add_argument("inner")

    delta = sub.add_parser("delta", help="Δ(A_σ)")
    delta.add_argument("sigma", help="Codificación de σ, ej. \"0,1\"")
    delta.add_argument("--cross-check", action="store_true", dest="cross_check",
                       help="Contrastar con la fórmula por multiconjuntos")

    bell = sub.add_parser("bell", help="P_{σ,λ}")
    bell.add_argument("sigma")
    bell.add_argument("lam", metavar="lambda")

    placements = sub.add_parser("placements", help="|T^𝛍_{σ,λ}|")
    placements.add_argument("sigma")
    placements.add_argument("lam", metavar="lambda")
    placements.add_argument("multiset", help="Multiconjunto, ej. \"{(1),(2)}\"")

    sub.add_parser("green", help="Δ(A) truncado a W")

    cell = sub.add_parser("cell", help="Clase y |aut| de una celda de T₁𝐒")
    cell.add_argument("diagram", help="Archivo de diagrama t00 ↞ t01 ↠ t11")

    partition = sub.add_parser("partition", help="Operaciones sobre particiones")
    partition.add_argument("operation", choices=["join", "meet", "commute", "independent", "transversal"])
    partition.add_argument("blocks", nargs="+", help="Listas de bloques, ej. \"[[1,2],[3]]\"")

    verify = sub.add_parser("verify", help="Ejecuta una suite de verificación")
    verify.add_argument("suite", choices=get_supported_suites())

    return parser


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """
    Defaults de config.cfg sobrescritos por los flags globales

    Raises:
        PreconditionError: si algún valor viola las restricciones de RunConfig
    """
    settings = get_settings()
    values = {
        "truncation": args.truncation if args.truncation is not None else settings.truncation,
        "size_bound": args.size_bound if args.size_bound is not None else settings.size_bound,
        "seed": args.seed if args.seed is not None else settings.seed,
        "output_format": args.output_format or settings.output_format,
        "output": args.output,
    }
    try:
        return RunConfig(**values)
    except ValidationError as e:
        raise PreconditionError(f"Configuración de ejecución inválida: {e.errors(include_url=False)}")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Punto de entrada. Devuelve el código de salida:
    0 éxito, 2 formato, 3 precondición, 4 invariante interno
    """
    args = build_parser().parse_args(argv)

    try:
        run_config = build_run_config(args)
        logger.info(f"[cli] {args.command} (W={run_config.truncation}, seed={run_config.seed})")
        result = COMMANDS[args.command](args, run_config)

        exit_code = 0
        if isinstance(result, VerificationReport):
            exit_code = 0 if result.passed else 4
            result = render_report(result) if run_config.output_format == "text" else dump_model(result)

        file_manager.emit(result, run_config.output)
        return exit_code

    except PlethysmError as e:
        logger.error(f"[cli] {type(e).__name__}: {e}")
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    except Exception as e:
        logger.error(f"[cli] Excepción no controlada: {e}", exc_info=True)
        sys.stderr.write(f"error interno: {e}\n")
        return 4


if __name__ == "__main__":
    sys.exit(main())
