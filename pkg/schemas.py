"""
Modelos de archivo (DTOs de entrada y salida) del motor pletístico
"""
from typing import List, Literal, Optional

from pydantic import BaseModel, Field


FRACTION_PATTERN = r"^-?\d+(/\d+)?$"
MAX_SEED = 2 ** 64 - 1


# ============================================================================
# SERIES
# ============================================================================

class SeriesTerm(BaseModel):
    """Término de una serie: vector λ denso y coeficiente como fracción exacta"""
    lambda_: List[int] = Field(..., alias="lambda", description="Prefijo denso de λ ([] o [0] para el vector cero)")
    coeff: str = Field(..., pattern=FRACTION_PATTERN, description="Fracción 'p/q' o entero")

    class Config:
        populate_by_name = True


class SeriesFile(BaseModel):
    """
    Serie truncada. Con normalization 'f' los coeficientes son f_λ; con 'raw'
    son los coeficientes crudos c_λ.
    """
    truncation: int = Field(..., ge=1, description="Peso máximo W")
    normalization: Literal["f", "raw"] = "f"
    terms: List[SeriesTerm] = Field(default_factory=list)

    class Config:
        populate_by_name = True
        json_schema_extra = {
            "example": {
                "truncation": 4,
                "normalization": "f",
                "terms": [{"lambda": [1], "coeff": "1"}, {"lambda": [2], "coeff": "1"}]
            }
        }


class UnivariateFile(BaseModel):
    """Coeficientes exponenciales f_(1), ..., f_(W) de una serie en x₁"""
    truncation: int = Field(..., ge=1)
    coefficients: List[str] = Field(default_factory=list)


# ============================================================================
# BIÁLGEBRA
# ============================================================================

class ElementTerm(BaseModel):
    monomial: List[str] = Field(..., description="Codificaciones de λ, ordenadas canónicamente")
    coeff: str = Field(..., pattern=FRACTION_PATTERN)


class ElementFile(BaseModel):
    """Elemento de 𝒫"""
    terms: List[ElementTerm] = Field(default_factory=list)


class TensorTerm(BaseModel):
    left: List[str]
    right: List[str]
    coeff: str = Field(..., pattern=FRACTION_PATTERN)


class TensorFile(BaseModel):
    """Elemento de 𝒫 ⊗ 𝒫"""
    terms: List[TensorTerm] = Field(default_factory=list)


class PlacementCount(BaseModel):
    """|T^𝛍_{σ,λ}| para una terna concreta"""
    sigma: str
    lambda_: str = Field(..., alias="lambda")
    multiset: str
    count: int = Field(..., ge=0)

    class Config:
        populate_by_name = True


# ============================================================================
# CONJUNTOS FINITOS
# ============================================================================

class DiagramFile(BaseModel):
    """
    Celda de T₁𝐒: t00 ↞ t01 ↠ t11 con aplicaciones como arrays de asignación
    """
    t01: int = Field(..., ge=0)
    t00: int = Field(..., ge=0)
    down: List[int]
    t11: int = Field(..., ge=0)
    right: List[int]

    class Config:
        json_schema_extra = {
            "example": {"t01": 3, "t00": 2, "down": [0, 0, 1], "t11": 1, "right": [0, 0, 0]}
        }


class CellReport(BaseModel):
    """Clase de isomorfismo de una celda de T₁𝐒 y sus invariantes"""
    diagram: DiagramFile
    class_: str = Field(..., alias="class", description="Multiconjunto de perfiles de fibra, ej. \"{(1),(0,1)}\"")
    aut_count: int = Field(..., ge=1)
    counit: str = Field(..., pattern=FRACTION_PATTERN)

    class Config:
        populate_by_name = True


class PartitionReport(BaseModel):
    """Resultado de una operación sobre particiones"""
    operation: Literal["join", "meet", "commute", "independent", "transversal"]
    ground_size: int = Field(..., ge=0)
    inputs: List[List[List[int]]]
    blocks: Optional[List[List[int]]] = Field(None, description="Partición resultado (join/meet)")
    value: Optional[bool] = Field(None, description="Valor del predicado (commute/independent/transversal)")


# ============================================================================
# VERIFICACIÓN
# ============================================================================

class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    """Reporte de una suite: cada chequeo con su resultado y la discrepancia exacta si falla"""
    suite: str
    passed: bool
    checks: List[CheckResult] = Field(default_factory=list)


# ============================================================================
# CONFIGURACIÓN DE EJECUCIÓN
# ============================================================================

class RunConfig(BaseModel):
    """Parámetros de una ejecución: defaults de config.cfg sobrescritos por flags globales"""
    truncation: int = Field(..., ge=1, description="Truncación W")
    size_bound: int = Field(..., ge=1, description="Cota de tamaño de enumeración")
    seed: int = Field(..., ge=0, le=MAX_SEED, description="Semilla de 64 bits sin signo")
    output_format: Literal["json", "text"] = "json"
    output: Optional[str] = None
