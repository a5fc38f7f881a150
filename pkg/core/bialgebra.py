"""
Biálgebra pletística 𝒫 = ℚ[{A_λ}].

El coproducto de un generador se calcula enumerando descomposiciones
σ = Σ_i Σ_j V^i μ_{i,j} (tuplas ordenadas, base a_λ = A_λ/autiv(λ)) y se
convierte a la base A una sola vez a la salida. La fórmula por
multiconjuntos, autiv(σ)·|T^𝛍_{σ,λ}| / (autiv(λ)·autiv(𝛍)), se mantiene como
segunda ruta para el chequeo cruzado.
"""
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product
from math import prod
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from core.cache import coproduct_cache
from core.errors import InvariantViolation, PreconditionError
from core.lambda_core import (
    EMPTY_MULTISET,
    EnumerationMode,
    PartitionVector,
    VectorMultiset,
    autiv,
    canonical,
    enumerate_multisets,
    enumerate_vectors,
    multiset_autiv,
    vec_sum,
    verschiebung,
)
from core.logging import logger
from core.series import TruncatedSeries, pair_monomial


PMonomial = VectorMultiset
UNIT = EMPTY_MULTISET
GENERATOR_ONE = canonical([1])


# ============================================================================
# TIPOS
# ============================================================================

@dataclass(frozen=True)
class PElement:
    """Combinación lineal finita de monomios ∏A_μ, sin coeficientes cero y en orden canónico."""
    terms: Tuple[Tuple[PMonomial, Fraction], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Mapping[PMonomial, Fraction]) -> "PElement":
        kept = [(m, Fraction(c)) for m, c in mapping.items() if c != 0]
        kept.sort(key=lambda item: item[0].sort_key)
        return cls(tuple(kept))

    @cached_property
    def as_dict(self) -> Dict[PMonomial, Fraction]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, monomial: PMonomial) -> Fraction:
        return self.as_dict.get(monomial, Fraction(0))

    def __add__(self, other: "PElement") -> "PElement":
        return element_add(self, other)

    def __mul__(self, other: "PElement") -> "PElement":
        return element_multiply(self, other)


@dataclass(frozen=True)
class PTensor:
    """Combinación lineal finita de pares (monomio ⊗ monomio)."""
    terms: Tuple[Tuple[Tuple[PMonomial, PMonomial], Fraction], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Mapping[Tuple[PMonomial, PMonomial], Fraction]) -> "PTensor":
        kept = [(pair, Fraction(c)) for pair, c in mapping.items() if c != 0]
        kept.sort(key=lambda item: (item[0][0].sort_key, item[0][1].sort_key))
        return cls(tuple(kept))

    @cached_property
    def as_dict(self) -> Dict[Tuple[PMonomial, PMonomial], Fraction]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, left: PMonomial, right: PMonomial) -> Fraction:
        return self.as_dict.get((left, right), Fraction(0))

    def __add__(self, other: "PTensor") -> "PTensor":
        return tensor_add(self, other)

    def __mul__(self, other: "PTensor") -> "PTensor":
        return tensor_multiply(self, other)


@dataclass(frozen=True)
class DecompositionTuple:
    """
    Elemento de T_{σ,λ}: para cada columna i con λ_i > 0, la lista ordenada
    (μ_{i,1}, ..., μ_{i,λ_i}) de vectores no nulos.
    """
    columns: Tuple[Tuple[int, Tuple[PartitionVector, ...]], ...]

    @property
    def cells(self) -> List[Tuple[int, PartitionVector]]:
        return [(i, mu) for i, vectors in self.columns for mu in vectors]

    @cached_property
    def multiset(self) -> VectorMultiset:
        return VectorMultiset.of(mu for _, mu in self.cells)

    def target(self) -> PartitionVector:
        """Σ_i Σ_j V^i μ_{i,j}"""
        return vec_sum(verschiebung(i, mu) for i, mu in self.cells)


def generator(vector: PartitionVector) -> PElement:
    """El generador A_λ."""
    if vector.is_zero:
        raise PreconditionError("A_λ requiere λ no nulo")
    return PElement(((VectorMultiset((vector,)), Fraction(1)),))


def unit_element() -> PElement:
    return PElement(((UNIT, Fraction(1)),))


# ============================================================================
# ARITMÉTICA
# ============================================================================

def element_add(first: PElement, second: PElement) -> PElement:
    total: Dict[PMonomial, Fraction] = defaultdict(Fraction, first.as_dict)
    for monomial, c in second.terms:
        total[monomial] += c
    return PElement.from_mapping(total)


def element_multiply(first: PElement, second: PElement, weight_bound: Optional[int] = None) -> PElement:
    """Producto de polinomios; con weight_bound se descartan monomios de peso mayor."""
    total: Dict[PMonomial, Fraction] = defaultdict(Fraction)
    for left, a in first.terms:
        for right, b in second.terms:
            if weight_bound is not None and left.weight + right.weight > weight_bound:
                continue
            total[left.union(right)] += a * b
    return PElement.from_mapping(total)


def tensor_add(first: PTensor, second: PTensor) -> PTensor:
    total: Dict[Tuple[PMonomial, PMonomial], Fraction] = defaultdict(Fraction, first.as_dict)
    for pair, c in second.terms:
        total[pair] += c
    return PTensor.from_mapping(total)


def tensor_scale(factor, tensor: PTensor) -> PTensor:
    factor = Fraction(factor)
    return PTensor.from_mapping({pair: factor * c for pair, c in tensor.terms})


def tensor_multiply(first: PTensor, second: PTensor) -> PTensor:
    """(a⊗b)·(c⊗d) = ac⊗bd, extendido bilinealmente."""
    total: Dict[Tuple[PMonomial, PMonomial], Fraction] = defaultdict(Fraction)
    for (l1, r1), a in first.terms:
        for (l2, r2), b in second.terms:
            total[(l1.union(l2), r1.union(r2))] += a * b
    return PTensor.from_mapping(total)


def unit_tensor() -> PTensor:
    return PTensor((((UNIT, UNIT), Fraction(1)),))


# ============================================================================
# DESCOMPOSICIONES
# ============================================================================

def enumerate_decompositions(sigma: PartitionVector, lam: PartitionVector) -> List[DecompositionTuple]:
    """
    Enumera T_{σ,λ}: tuplas ordenadas {μ_{i,j}} de vectores no nulos con
    σ = Σ_i Σ_{j ≤ λ_i} V^i μ_{i,j}.

    Las celdas se rellenan en orden de columna; cada celda de la columna i
    aporta al menos i al peso, lo que poda las ramas sin solución. La última
    celda queda forzada por el resto.
    """
    if sigma.is_zero:
        raise PreconditionError("enumerate_decompositions requiere σ no nulo")
    if lam.is_zero or lam.weight > sigma.weight:
        return []

    cell_columns = [i for i, m in lam.entries for _ in range(m)]
    # peso mínimo que deben cubrir las celdas que quedan a partir de cada posición
    minimum_tail = [sum(cell_columns[p:]) for p in range(len(cell_columns) + 1)]
    results: List[DecompositionTuple] = []

    def _forced(column: int, remaining: Dict[int, int]) -> Optional[PartitionVector]:
        if any(index % column for index in remaining):
            return None
        return PartitionVector.from_mapping({index // column: m for index, m in remaining.items()})

    def _candidates(column: int, remaining: Dict[int, int]) -> Iterable[PartitionVector]:
        indices = sorted(index for index in remaining if index % column == 0)
        ranges = [range(remaining[index] + 1) for index in indices]
        for choice in product(*ranges):
            if any(choice):
                yield PartitionVector.from_mapping(
                    {index // column: m for index, m in zip(indices, choice)}
                )

    def _fill(position: int, remaining: Dict[int, int], remaining_weight: int, chosen: List[PartitionVector]):
        column = cell_columns[position]
        if position == len(cell_columns) - 1:
            mu = _forced(column, remaining) if remaining else None
            if mu is not None and not mu.is_zero:
                results.append(_assemble(lam, chosen + [mu]))
            return
        for mu in _candidates(column, remaining):
            used = column * mu.weight
            if remaining_weight - used < minimum_tail[position + 1]:
                continue
            rest = dict(remaining)
            for k, m in mu.entries:
                rest[column * k] -= m
                if rest[column * k] == 0:
                    del rest[column * k]
            chosen.append(mu)
            _fill(position + 1, rest, remaining_weight - used, chosen)
            chosen.pop()

    if sigma.weight >= minimum_tail[0]:
        _fill(0, sigma.as_dict(), sigma.weight, [])
    return results


def _assemble(lam: PartitionVector, flat: List[PartitionVector]) -> DecompositionTuple:
    columns = []
    position = 0
    for i, m in lam.entries:
        columns.append((i, tuple(flat[position:position + m])))
        position += m
    return DecompositionTuple(tuple(columns))


def count_placements(sigma: PartitionVector, lam: PartitionVector, multiset: VectorMultiset) -> int:
    """
    |T^𝛍_{σ,λ}|: biyecciones de las instancias etiquetadas de 𝛍 a las celdas de la
    rejilla de λ con Σ V^{columna}μ = σ. Cero si |𝛍| ≠ |λ|.
    """
    elements = multiset.elements
    if len(elements) != lam.length:
        return 0
    if not elements:
        return 1 if sigma.is_zero else 0
    cell_columns = [i for i, m in lam.entries for _ in range(m)]
    target = sigma.as_dict()
    count = 0
    for order in permutations(range(len(elements))):
        total: Dict[int, int] = defaultdict(int)
        for column, element_index in zip(cell_columns, order):
            for k, m in elements[element_index].entries:
                total[column * k] += m
        if total == target:
            count += 1
    return count


# ============================================================================
# COPRODUCTO
# ============================================================================

def term_grade(left: PMonomial, right: PMonomial) -> int:
    """Grado de truncación de ∏A_μ ⊗ ∏A_ρ: wt(𝛍) + Σ_ρ (wt(ρ) − |ρ|)."""
    return left.weight + sum(rho.weight - rho.length for rho in right)


def _a_basis_coproduct(sigma: PartitionVector, grade_bound: Optional[int] = None) -> Dict[Tuple[PMonomial, PMonomial], int]:
    """
    Δ(a_σ) en la base a: número de tuplas de T_{σ,λ} con multiconjunto 𝛍, por
    cada (𝛍, λ). Memoizado por (σ, cota de grado).
    """
    key = f"a:{sigma.encode()}:{grade_bound}"
    cached = coproduct_cache.get(key)
    if cached is not None:
        return cached

    counts: Dict[Tuple[PMonomial, PMonomial], int] = defaultdict(int)
    max_lambda_weight = sigma.weight if grade_bound is None else min(sigma.weight, grade_bound)
    for lam in enumerate_vectors(max_lambda_weight, EnumerationMode.UPTO):
        right = VectorMultiset((lam,))
        for decomposition in enumerate_decompositions(sigma, lam):
            left = decomposition.multiset
            if grade_bound is not None and term_grade(left, right) > grade_bound:
                continue
            counts[(left, right)] += 1

    result = dict(counts)
    logger.debug(f"[delta] σ={sigma}: {len(result)} términos (cota de grado {grade_bound})")
    coproduct_cache.set(key, result)
    return result


def _rebase(sigma: PartitionVector, counts: Mapping[Tuple[PMonomial, PMonomial], int]) -> PTensor:
    # a_μ = A_μ/autiv(μ) en cada pierna; A_σ = autiv(σ)·a_σ
    scale = autiv(sigma)
    return PTensor.from_mapping({
        (left, right): Fraction(scale * n, prod(autiv(mu) for mu in left) * autiv(right.elements[0]))
        for (left, right), n in counts.items()
    })


def delta_generator(sigma: PartitionVector, cross_check: bool = False, grade_bound: Optional[int] = None) -> PTensor:
    """
    Δ(A_σ) = Σ_λ Σ_𝛍 [autiv(σ)·|T^𝛍_{σ,λ}| / (autiv(λ)·autiv(𝛍))] ∏A_μ ⊗ A_λ.

    Args:
        sigma: σ no nulo
        cross_check: si es True, compara con la ruta por multiconjuntos
        grade_bound: si se indica, solo se calculan los términos con grado ≤ cota

    Raises:
        PreconditionError: si σ es el vector cero
        InvariantViolation: si las dos rutas no coinciden
    """
    if sigma.is_zero:
        raise PreconditionError("Δ(A_σ) requiere σ no nulo")
    result = _rebase(sigma, _a_basis_coproduct(sigma, grade_bound))
    if cross_check and grade_bound is None:
        if delta_generator_by_placements(sigma) != result:
            raise InvariantViolation(f"Las dos fórmulas de Δ(A_{sigma}) no coinciden")
    return result


def delta_generator_by_placements(sigma: PartitionVector) -> PTensor:
    """Ruta por multiconjuntos: autiv(σ)·|T^𝛍_{σ,λ}| / (autiv(λ)·autiv(𝛍))."""
    if sigma.is_zero:
        raise PreconditionError("Δ(A_σ) requiere σ no nulo")
    terms: Dict[Tuple[PMonomial, PMonomial], Fraction] = {}
    for lam in enumerate_vectors(sigma.weight, EnumerationMode.UPTO):
        for multiset in enumerate_multisets(lam.length, sigma.weight):
            placements = count_placements(sigma, lam, multiset)
            if placements:
                terms[(multiset, VectorMultiset((lam,)))] = Fraction(
                    autiv(sigma) * placements, autiv(lam) * multiset_autiv(multiset)
                )
    return PTensor.from_mapping(terms)


def delta(element: PElement) -> PTensor:
    """Extensión multiplicativa en monomios y lineal en términos; Δ(1) = 1⊗1."""
    total = PTensor()
    for monomial, c in element.terms:
        value = unit_tensor()
        for mu in monomial:
            value = tensor_multiply(value, delta_generator(mu))
        total = tensor_add(total, tensor_scale(c, value))
    return total


def monomial_counit(monomial: PMonomial) -> int:
    return 1 if all(mu == GENERATOR_ONE for mu in monomial) else 0


def counit(element: PElement) -> Fraction:
    """ε(A_λ) = 1 si λ = (1) y 0 en otro caso, extendido multiplicativamente."""
    return sum((c * monomial_counit(m) for m, c in element.terms), Fraction(0))


def counit_left(tensor: PTensor) -> PElement:
    """(ε⊗id)"""
    total: Dict[PMonomial, Fraction] = defaultdict(Fraction)
    for (left, right), c in tensor.terms:
        total[right] += c * monomial_counit(left)
    return PElement.from_mapping(total)


def counit_right(tensor: PTensor) -> PElement:
    """(id⊗ε)"""
    total: Dict[PMonomial, Fraction] = defaultdict(Fraction)
    for (left, right), c in tensor.terms:
        total[left] += c * monomial_counit(right)
    return PElement.from_mapping(total)


def coassociativity_sides(sigma: PartitionVector) -> Tuple[Dict, Dict]:
    """
    ((Δ⊗id)Δ(A_σ), (id⊗Δ)Δ(A_σ)) como diccionarios de tripletas de monomios.
    """
    first = delta_generator(sigma)
    left_side: Dict[Tuple[PMonomial, PMonomial, PMonomial], Fraction] = defaultdict(Fraction)
    right_side: Dict[Tuple[PMonomial, PMonomial, PMonomial], Fraction] = defaultdict(Fraction)
    for (left, right), c in first.terms:
        for (l1, l2), d in delta(PElement(((left, Fraction(1)),))).terms:
            left_side[(l1, l2, right)] += c * d
        for (r1, r2), d in delta(PElement(((right, Fraction(1)),))).terms:
            right_side[(left, r1, r2)] += c * d
    return (
        {k: v for k, v in left_side.items() if v != 0},
        {k: v for k, v in right_side.items() if v != 0},
    )


def bell(sigma: PartitionVector, lam: PartitionVector) -> PElement:
    """P_{σ,λ}: pierna izquierda de Δ(A_σ) con pierna derecha A_λ."""
    if sigma.is_zero:
        raise PreconditionError("P_{σ,λ} requiere σ no nulo")
    if lam.is_zero or lam.weight > sigma.weight:
        return PElement()
    right = VectorMultiset((lam,))
    return PElement.from_mapping({
        left: c for (left, r), c in delta_generator(sigma).terms if r == right
    })


# ============================================================================
# EMPAREJAMIENTOS
# ============================================================================

def pair_element(element: PElement, series: TruncatedSeries) -> Fraction:
    return sum((c * pair_monomial(m, series) for m, c in element.terms), Fraction(0))


def pair_tensor(tensor: PTensor, first: TruncatedSeries, second: TruncatedSeries) -> Fraction:
    """⟨Σ c·L⊗R, F⊗G⟩ = Σ c·L(F)·R(G)"""
    return sum(
        (c * pair_monomial(left, first) * pair_monomial(right, second) for (left, right), c in tensor.terms),
        Fraction(0)
    )


# ============================================================================
# FUNCIÓN DE GREEN
# ============================================================================

def green_sigma_bound(truncation: int) -> int:
    """Peso máximo de σ cuyo Δ(a_σ) puede tener términos de grado ≤ W."""
    return ((truncation + 1) // 2) * ((truncation + 2) // 2)


def green_element(weight_bound: int) -> PElement:
    """A truncada: Σ_{1 ≤ wt(λ) ≤ cota} a_λ."""
    total: Dict[PMonomial, Fraction] = {}
    for lam in enumerate_vectors(weight_bound, EnumerationMode.UPTO):
        total[VectorMultiset((lam,))] = Fraction(1, autiv(lam))
    return PElement.from_mapping(total)


def green_delta(truncation: int) -> Tuple[PTensor, PTensor]:
    """
    Ambos lados de Δ(A) = Σ_k A^k ⊗ a_k truncados a grado ≤ W.

    Izquierda: Σ_σ Δ(a_σ). Derecha: Σ_λ A^{|λ|} ⊗ a_λ. El grado de un término
    ∏A_μ ⊗ A_λ es wt(𝛍) + wt(λ) − |λ|.
    """
    if truncation < 0:
        raise PreconditionError(f"Truncación negativa: {truncation}")
    if truncation == 0:
        return PTensor(), PTensor()

    left = PTensor()
    for sigma in enumerate_vectors(green_sigma_bound(truncation), EnumerationMode.UPTO):
        piece = delta_generator(sigma, grade_bound=truncation)
        left = tensor_add(left, tensor_scale(Fraction(1, autiv(sigma)), piece))

    right_terms: Dict[Tuple[PMonomial, PMonomial], Fraction] = defaultdict(Fraction)
    power_cache: Dict[Tuple[int, int], PElement] = {}
    for lam in enumerate_vectors(truncation, EnumerationMode.UPTO):
        budget = truncation - lam.weight + lam.length
        key = (lam.length, budget)
        if key not in power_cache:
            base = green_element(budget)
            value = unit_element()
            for _ in range(lam.length):
                value = element_multiply(value, base, weight_bound=budget)
            power_cache[key] = value
        right = VectorMultiset((lam,))
        for monomial, c in power_cache[key].terms:
            right_terms[(monomial, right)] += c / autiv(lam)

    logger.debug(f"[green] W={truncation}: {len(left.terms)} términos a la izquierda")
    return left, PTensor.from_mapping(right_terms)


# ============================================================================
# ESPECIALIZACIÓN CLÁSICA
# ============================================================================

def classical_delta(n: int) -> PTensor:
    """
    Δ(A_n) para σ = (n, 0, 0, ...), contrastado con la fórmula multinomial de Faà di Bruno.

    Raises:
        PreconditionError: si n < 1
        InvariantViolation: si no coincide con la fórmula multinomial
    """
    if n < 1:
        raise PreconditionError(f"classical_delta requiere n ≥ 1 (recibido {n})")
    from core.oracles import multinomial_delta

    result = delta_generator(PartitionVector(((1, n),)))
    reference = multinomial_delta(n)
    if result != reference:
        raise InvariantViolation(f"Δ(A_{n}) no coincide con la fórmula multinomial")
    return result
