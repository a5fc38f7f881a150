"""
Series formales truncadas en x₁, x₂, ... con coeficientes racionales exactos.

Internamente se guarda el coeficiente crudo c_λ del monomio 𝐱^λ; la
normalización f_λ = autiv(λ)·c_λ solo aparece en la frontera (constructores,
coefficient, serialización). La truncación es por peso wt(λ) ≤ W.
"""
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from core.errors import PreconditionError
from core.lambda_core import (
    ZERO,
    EnumerationMode,
    PartitionVector,
    VectorMultiset,
    autiv,
    canonical,
    enumerate_vectors,
    vec_add,
    verschiebung,
)
from core.logging import logger


Rational = Fraction
Coefficient = Union[Fraction, int]


# ============================================================================
# TIPO
# ============================================================================

@dataclass(frozen=True)
class TruncatedSeries:
    """
    Serie truncada a peso W.

    Attributes:
        truncation: peso máximo W de los monomios retenidos
        terms: pares (λ, c_λ) en orden canónico, sin coeficientes cero y con wt(λ) ≤ W
    """
    truncation: int
    terms: Tuple[Tuple[PartitionVector, Fraction], ...] = ()

    def __post_init__(self):
        if self.truncation < 0:
            raise PreconditionError(f"Truncación negativa: {self.truncation}")
        for vector, value in self.terms:
            if value == 0 or vector.weight > self.truncation:
                raise PreconditionError(f"Término inválido en serie truncada a {self.truncation}: {vector} -> {value}")

    @classmethod
    def from_raw(cls, raw: Mapping[PartitionVector, Coefficient], truncation: int) -> "TruncatedSeries":
        """Construye la serie desde coeficientes crudos, descartando ceros y pesos > W."""
        kept = [
            (vector, Fraction(value))
            for vector, value in raw.items()
            if value != 0 and vector.weight <= truncation
        ]
        kept.sort(key=lambda item: item[0].sort_key)
        return cls(truncation, tuple(kept))

    @cached_property
    def raw(self) -> Dict[PartitionVector, Fraction]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def constant_term(self) -> Fraction:
        return self.raw.get(ZERO, Fraction(0))

    def f_terms(self) -> Iterator[Tuple[PartitionVector, Fraction]]:
        """Itera (λ, f_λ) en orden canónico."""
        for vector, value in self.terms:
            yield vector, value * autiv(vector)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return add(self, other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return multiply(self, other)


# ============================================================================
# CONSTRUCTORES
# ============================================================================

def from_f_coefficients(
    pairs: Iterable[Tuple[PartitionVector, Coefficient]],
    truncation: int,
    constant_free: bool = False
) -> TruncatedSeries:
    """
    Construye una serie desde coeficientes normalizados f_λ.

    Args:
        pairs: pares (λ, f_λ); las entradas repetidas se suman
        truncation: W ≥ 1
        constant_free: si es True, un término constante no nulo es un error

    Returns:
        TruncatedSeries con c_λ = f_λ/autiv(λ); los términos de peso > W se descartan

    Raises:
        PreconditionError: si W < 1 o hay término constante con constant_free
    """
    if truncation < 1:
        raise PreconditionError(f"La truncación debe ser ≥ 1 (recibido {truncation})")
    raw: Dict[PartitionVector, Fraction] = defaultdict(Fraction)
    for vector, value in pairs:
        if constant_free and vector.is_zero and value != 0:
            raise PreconditionError("La serie interior no puede tener término constante")
        raw[vector] += Fraction(value) / autiv(vector)
    return TruncatedSeries.from_raw(raw, truncation)


def from_raw_coefficients(
    pairs: Iterable[Tuple[PartitionVector, Coefficient]],
    truncation: int
) -> TruncatedSeries:
    """Igual que from_f_coefficients pero con coeficientes crudos c_λ."""
    if truncation < 1:
        raise PreconditionError(f"La truncación debe ser ≥ 1 (recibido {truncation})")
    raw: Dict[PartitionVector, Fraction] = defaultdict(Fraction)
    for vector, value in pairs:
        raw[vector] += Fraction(value)
    return TruncatedSeries.from_raw(raw, truncation)


def zero_series(truncation: int) -> TruncatedSeries:
    return TruncatedSeries(truncation)


def one_series(truncation: int) -> TruncatedSeries:
    return TruncatedSeries(truncation, ((ZERO, Fraction(1)),))


def variable(k: int, truncation: int) -> TruncatedSeries:
    """La serie x_k (vacía si k > W)."""
    return TruncatedSeries.from_raw({canonical([0] * (k - 1) + [1]): 1}, truncation)


def random_series(rng: random.Random, truncation: int, constant_free: bool = True) -> TruncatedSeries:
    """
    Serie pseudoaleatoria con f_λ uniforme en {−3..3} sobre todo λ con 1 ≤ wt(λ) ≤ W,
    más un término constante cuando constant_free es False.
    """
    vectors = enumerate_vectors(truncation, EnumerationMode.UPTO)
    if not constant_free:
        vectors = [ZERO] + vectors
    return from_f_coefficients(((v, rng.randint(-3, 3)) for v in vectors), truncation)


# ============================================================================
# OPERACIONES
# ============================================================================

def _check_same_truncation(first: TruncatedSeries, second: TruncatedSeries) -> None:
    if first.truncation != second.truncation:
        raise PreconditionError(
            f"Truncaciones distintas: {first.truncation} y {second.truncation}"
        )


def coefficient(series: TruncatedSeries, vector: PartitionVector) -> Fraction:
    """
    f_λ = autiv(λ)·c_λ (cero si el término no está).

    Raises:
        PreconditionError: si wt(λ) supera la truncación (coeficiente indeterminado)
    """
    if vector.weight > series.truncation:
        raise PreconditionError(
            f"Coeficiente indeterminado: wt({vector})={vector.weight} > W={series.truncation}"
        )
    return series.raw.get(vector, Fraction(0)) * autiv(vector)


def add(first: TruncatedSeries, second: TruncatedSeries) -> TruncatedSeries:
    _check_same_truncation(first, second)
    raw: Dict[PartitionVector, Fraction] = defaultdict(Fraction, first.raw)
    for vector, value in second.terms:
        raw[vector] += value
    return TruncatedSeries.from_raw(raw, first.truncation)


def scale(factor: Coefficient, series: TruncatedSeries) -> TruncatedSeries:
    factor = Fraction(factor)
    return TruncatedSeries.from_raw({v: factor * c for v, c in series.terms}, series.truncation)


def multiply(first: TruncatedSeries, second: TruncatedSeries) -> TruncatedSeries:
    """Convolución de monomios: c^{FG}_σ = Σ_{λ+μ=σ} c^F_λ c^G_μ, truncada a W."""
    _check_same_truncation(first, second)
    bound = first.truncation
    raw: Dict[PartitionVector, Fraction] = defaultdict(Fraction)
    for left, a in first.terms:
        for right, b in second.terms:
            if left.weight + right.weight > bound:
                # los términos están ordenados por peso
                break
            raw[vec_add(left, right)] += a * b
    return TruncatedSeries.from_raw(raw, bound)


def verschiebung_substitute(series: TruncatedSeries, k: int) -> TruncatedSeries:
    """
    F_k(x₁, x₂, ...) = F(x_k, x_{2k}, ...): cada monomio 𝐱^μ pasa a 𝐱^{V^kμ} con el
    mismo coeficiente crudo. Los monomios que superan W se descartan.
    """
    if k < 1:
        raise PreconditionError(f"k debe ser ≥ 1 (recibido {k})")
    if k == 1:
        return series
    return TruncatedSeries.from_raw(
        {verschiebung(k, v): c for v, c in series.terms if k * v.weight <= series.truncation},
        series.truncation
    )


def plethysm(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """
    G⊛F = Σ_λ c^G_λ ∏_k (F_k)^{λ_k}, truncada a W.

    Args:
        outer: G (puede tener término constante)
        inner: F (sin término constante)

    Raises:
        PreconditionError: si las truncaciones difieren o F tiene término constante
    """
    _check_same_truncation(outer, inner)
    if inner.constant_term != 0:
        raise PreconditionError("La serie interior F tiene término constante no nulo")

    bound = outer.truncation
    substituted: Dict[int, TruncatedSeries] = {}
    powers: Dict[Tuple[int, int], TruncatedSeries] = {}

    def _power_of_substituted(k: int, m: int) -> TruncatedSeries:
        key = (k, m)
        if key not in powers:
            if k not in substituted:
                substituted[k] = verschiebung_substitute(inner, k)
            previous = one_series(bound) if m == 1 else _power_of_substituted(k, m - 1)
            powers[key] = multiply(previous, substituted[k])
        return powers[key]

    raw: Dict[PartitionVector, Fraction] = defaultdict(Fraction)
    for vector, value in outer.terms:
        product = one_series(bound)
        for k, m in vector.entries:
            product = multiply(product, _power_of_substituted(k, m))
            if product.is_zero:
                break
        for monomial, c in product.terms:
            raw[monomial] += value * c

    result = TruncatedSeries.from_raw(raw, bound)
    logger.debug(f"[plethysm] W={bound}: {len(outer.terms)} términos de G, {len(result.terms)} en G⊛F")
    return result


def restrict_univariate(series: TruncatedSeries) -> List[Fraction]:
    """Coeficientes f_(n) para 1 ≤ n ≤ W (haciendo x₂ = x₃ = ... = 0)."""
    raw = series.raw
    return [
        raw.get(PartitionVector(((1, n),)), Fraction(0)) * factorial(n)
        for n in range(1, series.truncation + 1)
    ]


def pair_monomial(multiset: VectorMultiset, series: TruncatedSeries) -> Fraction:
    """∏_{μ∈𝛍} f_μ(F); el multiconjunto vacío evalúa a 1."""
    result = Fraction(1)
    for vector in multiset:
        result *= coefficient(series, vector)
        if result == 0:
            break
    return result


def series_equal(first: TruncatedSeries, second: TruncatedSeries, bound: Optional[int] = None) -> bool:
    """Igualdad exacta, opcionalmente solo en los términos de peso ≤ bound."""
    if bound is None:
        return first == second
    return (
        {v: c for v, c in first.terms if v.weight <= bound}
        == {v: c for v, c in second.terms if v.weight <= bound}
    )
