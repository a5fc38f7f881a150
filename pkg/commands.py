"""
Handlers de los subcomandos de la CLI.

Cada handler recibe los argumentos parseados y la RunConfig, hace el cálculo y
devuelve el texto completo a emitir (JSON canónico o texto). La escritura la
hace main.py una sola vez.
"""
from argparse import Namespace
from typing import Callable, Dict

from config import get_settings
from core import bialgebra, objective, oracles, partitions, series, tconstruction
from core.codecs import (
    cell_from_model,
    cell_to_model,
    dump_model,
    element_to_model,
    fraction_to_str,
    load_model,
    parse_blocks,
    partition_blocks,
    render_element,
    render_series,
    render_tensor,
    series_from_model,
    series_to_model,
    tensor_to_model,
    univariate_to_model,
)
from core.errors import InvariantViolation, PreconditionError
from core.file_utils import file_manager
from core.lambda_core import decode_multiset, decode_vector
from core.logging import logger
from core.verification_suites import get_verification_suite
from schemas import (
    CellReport,
    DiagramFile,
    PartitionReport,
    PlacementCount,
    RunConfig,
    SeriesFile,
    VerificationReport,
)


def _is_text(run_config: RunConfig) -> bool:
    return run_config.output_format == "text"


def _read_series(path: str, constant_free: bool = False) -> series.TruncatedSeries:
    model = load_model(file_manager.read_text(path), SeriesFile)
    return series_from_model(model, constant_free=constant_free)


def _nonzero_vector(text: str):
    vector = decode_vector(text)
    if vector.is_zero:
        raise PreconditionError(f"σ debe ser no nulo (recibido {text!r})")
    return vector


# ============================================================================
# SERIES
# ============================================================================

def cmd_plethysm(args: Namespace, run_config: RunConfig) -> str:
    """G⊛F desde dos archivos de serie"""
    outer = _read_series(args.outer)
    inner = _read_series(args.inner, constant_free=True)
    result = series.plethysm(outer, inner)
    logger.info(f"[plethysm] W={result.truncation}: {len(result.terms)} términos")
    if _is_text(run_config):
        return render_series(result) + "\n"
    return dump_model(series_to_model(result))


def cmd_compose1(args: Namespace, run_config: RunConfig) -> str:
    """
    Restricción univariante de G⊛F, contrastada con la composición de sympy

    Raises:
        InvariantViolation: si el motor y sympy no coinciden
    """
    outer = _read_series(args.outer)
    inner = _read_series(args.inner, constant_free=True)
    truncation = outer.truncation
    engine = series.restrict_univariate(series.plethysm(outer, inner))
    reference = oracles.univariate_compose(
        series.restrict_univariate(outer), series.restrict_univariate(inner), truncation
    )
    if engine != reference:
        raise InvariantViolation(
            f"compose1: motor {[str(c) for c in engine]} frente a sympy {[str(c) for c in reference]}"
        )
    if _is_text(run_config):
        return "\n".join(f"f_({n}) = {fraction_to_str(c)}" for n, c in enumerate(engine, 1)) + "\n"
    return dump_model(univariate_to_model(truncation, engine))


# ============================================================================
# BIÁLGEBRA
# ============================================================================

def cmd_delta(args: Namespace, run_config: RunConfig) -> str:
    """Δ(A_σ)"""
    sigma = _nonzero_vector(args.sigma)
    tensor = bialgebra.delta_generator(sigma, cross_check=args.cross_check)
    logger.info(f"[delta] σ={sigma}: {len(tensor.terms)} términos")
    if _is_text(run_config):
        return render_tensor(tensor) + "\n"
    return dump_model(tensor_to_model(tensor))


def cmd_bell(args: Namespace, run_config: RunConfig) -> str:
    """P_{σ,λ}"""
    sigma = _nonzero_vector(args.sigma)
    element = bialgebra.bell(sigma, decode_vector(args.lam))
    if _is_text(run_config):
        return render_element(element) + "\n"
    return dump_model(element_to_model(element))


def cmd_placements(args: Namespace, run_config: RunConfig) -> str:
    """|T^𝛍_{σ,λ}|"""
    sigma = _nonzero_vector(args.sigma)
    lam = decode_vector(args.lam)
    multiset = decode_multiset(args.multiset)
    count = bialgebra.count_placements(sigma, lam, multiset)
    if _is_text(run_config):
        return f"{count}\n"
    return dump_model(PlacementCount(sigma=sigma.encode(), lambda_=lam.encode(), multiset=str(multiset), count=count))


def cmd_green(args: Namespace, run_config: RunConfig) -> str:
    """
    Δ(A) truncado a W

    Raises:
        InvariantViolation: si Σ_σ Δ(a_σ) y Σ_k A^k ⊗ a_k difieren
    """
    left, right = bialgebra.green_delta(run_config.truncation)
    if left != right:
        raise InvariantViolation(f"Δ(A) ≠ Σ_k A^k ⊗ a_k con W={run_config.truncation}")
    if _is_text(run_config):
        return render_tensor(left) + "\n"
    return dump_model(tensor_to_model(left))


# ============================================================================
# CELDAS DE T₁𝐒
# ============================================================================

def cmd_cell(args: Namespace, run_config: RunConfig) -> str:
    """Clase, |aut| y counidad objetiva de una celda leída de un archivo de diagrama"""
    cell = cell_from_model(load_model(file_manager.read_text(args.diagram), DiagramFile))
    multiset = tconstruction.t1_class(cell)
    automorphisms = tconstruction.aut_count(cell)
    counit = objective.objective_counit(cell)
    logger.info(f"[cell] clase {multiset}, |aut| = {automorphisms}")
    if _is_text(run_config):
        return f"{multiset} |aut|={automorphisms} ε={fraction_to_str(counit)}\n"
    return dump_model(CellReport(
        diagram=cell_to_model(cell),
        class_=str(multiset),
        aut_count=automorphisms,
        counit=fraction_to_str(counit),
    ))


# ============================================================================
# PARTICIONES
# ============================================================================

_PARTITION_ARITY = {"join": 2, "meet": 2, "commute": 2, "independent": 2, "transversal": 3}


def cmd_partition(args: Namespace, run_config: RunConfig) -> str:
    """join/meet/commute/independent sobre (π, τ); transversal sobre (σ, π, τ)"""
    operation = args.operation
    arity = _PARTITION_ARITY[operation]
    if len(args.blocks) != arity:
        raise PreconditionError(f"'{operation}' requiere {arity} particiones (recibidas {len(args.blocks)})")
    block_lists = [parse_blocks(text) for text in args.blocks]
    values = partitions.partitions_from_labels(*block_lists)

    result_blocks, value = None, None
    if operation == "join":
        result_blocks = partition_blocks(partitions.join(*values))
    elif operation == "meet":
        result_blocks = partition_blocks(partitions.meet(*values))
    elif operation == "commute":
        value = partitions.commute(*values)
    elif operation == "independent":
        value = partitions.independent(*values)
    else:
        value = partitions.is_transversal(*values)

    report = PartitionReport(
        operation=operation,
        ground_size=values[0].ground_size,
        inputs=[partition_blocks(p) for p in values],
        blocks=result_blocks,
        value=value,
    )
    if _is_text(run_config):
        if result_blocks is not None:
            return str(result_blocks).replace(" ", "") + "\n"
        return ("true" if value else "false") + "\n"
    return dump_model(report)


# ============================================================================
# VERIFICACIÓN
# ============================================================================

def render_report(report: VerificationReport) -> str:
    lines = [
        f"[{'PASS' if check.passed else 'FAIL'}] {check.name}" + (f": {check.detail}" if check.detail else "")
        for check in report.checks
    ]
    passed = sum(1 for check in report.checks if check.passed)
    lines.append(f"{report.suite}: {passed}/{len(report.checks)} chequeos OK")
    return "\n".join(lines) + "\n"


def cmd_verify(args: Namespace, run_config: RunConfig) -> VerificationReport:
    """Ejecuta la suite; el código de salida lo decide main.py según report.passed"""
    try:
        suite = get_verification_suite(args.suite, run_config, get_settings())
    except ValueError as e:
        raise PreconditionError(str(e))
    return suite.run()


COMMANDS: Dict[str, Callable] = {
    "plethysm": cmd_plethysm,
    "compose1": cmd_compose1,
    "delta": cmd_delta,
    "bell": cmd_bell,
    "placements": cmd_placements,
    "green": cmd_green,
    "cell": cmd_cell,
    "partition": cmd_partition,
    "verify": cmd_verify,
}
