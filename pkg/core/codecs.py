"""
Conversión entre valores del dominio y modelos de schemas.py, y su render
en texto. Toda la salida es canónica: mismo valor, mismos bytes.
"""
import json
from fractions import Fraction
from typing import List, Sequence, Type, TypeVar

from pydantic import BaseModel, ValidationError

from core.bialgebra import PElement, PMonomial, PTensor
from core.errors import FormatError, PreconditionError
from core.lambda_core import PartitionVector, VectorMultiset, canonical, decode_vector, encode_vector
from core.partitions import Partition
from core.series import TruncatedSeries, from_f_coefficients, from_raw_coefficients
from core.tconstruction import FinSurjection, T1Cell
from schemas import (
    DiagramFile,
    ElementFile,
    ElementTerm,
    SeriesFile,
    SeriesTerm,
    TensorFile,
    TensorTerm,
    UnivariateFile,
)


Model = TypeVar("Model", bound=BaseModel)


# ============================================================================
# FRACCIONES
# ============================================================================

def fraction_to_str(value) -> str:
    """'p/q' en forma reducida, o el entero cuando q = 1."""
    return str(Fraction(value))


def parse_fraction(text: str) -> Fraction:
    """
    Raises:
        FormatError: si el texto no es 'p/q' o un entero (los decimales se rechazan)
    """
    cleaned = text.strip()
    if "." in cleaned or "e" in cleaned.lower():
        raise FormatError(f"Coeficiente decimal no admitido: {text!r}")
    try:
        value = Fraction(cleaned)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"Fracción inválida: {text!r}")
    return value


# ============================================================================
# JSON
# ============================================================================

def dump_model(model: BaseModel) -> str:
    return model.model_dump_json(by_alias=True, indent=2) + "\n"


def load_model(text: str, model_class: Type[Model]) -> Model:
    """
    Raises:
        FormatError: JSON inválido o que no cumple el modelo
    """
    try:
        return model_class.model_validate_json(text)
    except ValidationError as e:
        raise FormatError(f"Archivo {model_class.__name__} inválido: {e.errors(include_url=False)}")


# ============================================================================
# SERIES
# ============================================================================

def _vector_from_list(values: Sequence[int]) -> PartitionVector:
    if any(v < 0 for v in values):
        raise FormatError(f"λ con entradas negativas: {list(values)}")
    return canonical(list(values))


def series_to_model(series: TruncatedSeries) -> SeriesFile:
    """Siempre se escribe en normalización f."""
    return SeriesFile(
        truncation=series.truncation,
        normalization="f",
        terms=[
            SeriesTerm(lambda_=list(vector.dense) or [0], coeff=fraction_to_str(value))
            for vector, value in series.f_terms()
        ],
    )


def series_from_model(model: SeriesFile, constant_free: bool = False) -> TruncatedSeries:
    pairs = [(_vector_from_list(term.lambda_), parse_fraction(term.coeff)) for term in model.terms]
    if model.normalization == "raw":
        series = from_raw_coefficients(pairs, model.truncation)
        if constant_free and series.constant_term != 0:
            raise PreconditionError("La serie interior no puede tener término constante")
        return series
    return from_f_coefficients(pairs, model.truncation, constant_free=constant_free)


def univariate_to_model(truncation: int, coefficients: Sequence[Fraction]) -> UnivariateFile:
    return UnivariateFile(truncation=truncation, coefficients=[fraction_to_str(c) for c in coefficients])


def render_series(series: TruncatedSeries) -> str:
    """Σ f_λ·x^λ/autiv(λ), en orden canónico."""
    if series.is_zero:
        return "0"
    parts = []
    for vector, value in series.f_terms():
        if vector.is_zero:
            parts.append(fraction_to_str(value))
        else:
            parts.append(f"{fraction_to_str(value)}*x^{vector}/autiv{vector}")
    return " + ".join(parts)


# ============================================================================
# BIÁLGEBRA
# ============================================================================

def _encode_monomial(monomial: PMonomial) -> List[str]:
    return [encode_vector(vector) for vector in monomial]


def _decode_monomial(codes: Sequence[str]) -> PMonomial:
    vectors = [decode_vector(code) for code in codes]
    if any(vector.is_zero for vector in vectors):
        raise FormatError(f"Un monomio no puede contener A_0: {list(codes)}")
    return VectorMultiset.of(vectors)


def element_to_model(element: PElement) -> ElementFile:
    return ElementFile(terms=[
        ElementTerm(monomial=_encode_monomial(m), coeff=fraction_to_str(c)) for m, c in element.terms
    ])


def element_from_model(model: ElementFile) -> PElement:
    mapping = {}
    for term in model.terms:
        monomial = _decode_monomial(term.monomial)
        mapping[monomial] = mapping.get(monomial, Fraction(0)) + parse_fraction(term.coeff)
    return PElement.from_mapping(mapping)


def tensor_to_model(tensor: PTensor) -> TensorFile:
    return TensorFile(terms=[
        TensorTerm(left=_encode_monomial(left), right=_encode_monomial(right), coeff=fraction_to_str(c))
        for (left, right), c in tensor.terms
    ])


def tensor_from_model(model: TensorFile) -> PTensor:
    mapping = {}
    for term in model.terms:
        key = (_decode_monomial(term.left), _decode_monomial(term.right))
        mapping[key] = mapping.get(key, Fraction(0)) + parse_fraction(term.coeff)
    return PTensor.from_mapping(mapping)


def render_monomial(monomial: PMonomial) -> str:
    if monomial.is_empty:
        return "1"
    return "*".join(f"A{vector}" for vector in monomial)


def _with_coefficient(value: Fraction, body: str) -> str:
    if body == "1":
        return fraction_to_str(value)
    if value == 1:
        return body
    if value == -1:
        return f"-{body}"
    return f"{fraction_to_str(value)}*{body}"


def render_element(element: PElement) -> str:
    """Ej. 3*A(1)*A(2)"""
    if element.is_zero:
        return "0"
    return " + ".join(_with_coefficient(c, render_monomial(m)) for m, c in element.terms)


def render_tensor(tensor: PTensor) -> str:
    """Ej. A(0,1) ⊗ A(1) + A(1) ⊗ A(0,1)"""
    if tensor.is_zero:
        return "0"
    return " + ".join(
        _with_coefficient(c, f"{render_monomial(left)} ⊗ {render_monomial(right)}")
        for (left, right), c in tensor.terms
    )


# ============================================================================
# DIAGRAMAS Y PARTICIONES
# ============================================================================

def cell_to_model(cell: T1Cell) -> DiagramFile:
    return DiagramFile(
        t01=cell.size(0, 1),
        t00=cell.size(0, 0),
        down=list(cell.down.assignment),
        t11=cell.size(1, 1),
        right=list(cell.across.assignment),
    )


def cell_from_model(model: DiagramFile) -> T1Cell:
    """
    Raises:
        FormatError: si los arrays no tienen longitud t01
        PreconditionError: si las aplicaciones no son sobreyectivas o no forman una celda
    """
    if len(model.down) != model.t01 or len(model.right) != model.t01:
        raise FormatError(f"down y right deben tener {model.t01} entradas")
    down = FinSurjection(model.t01, model.t00, tuple(model.down))
    right = FinSurjection(model.t01, model.t11, tuple(model.right))
    return T1Cell.from_maps(down, right)


def parse_blocks(text: str) -> List[List[int]]:
    """
    '[[1,2],[3]]' → [[1, 2], [3]]

    Raises:
        FormatError: si el texto no es una lista de listas de enteros
    """
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        raise FormatError(f"Lista de bloques inválida: {text!r}")
    if not isinstance(value, list) or not all(
        isinstance(block, list) and all(isinstance(e, int) and not isinstance(e, bool) for e in block)
        for block in value
    ):
        raise FormatError(f"Se esperaba una lista de listas de enteros: {text!r}")
    return value


def partition_blocks(partition: Partition) -> List[List[int]]:
    return [list(block) for block in partition.blocks]
