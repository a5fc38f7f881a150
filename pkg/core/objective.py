"""
Lado objetivo: la comultiplicación de T𝐒 calculada contando biyecciones
entre conjuntos finitos explícitos, y su cardinalidad homotópica.

Nada de este módulo usa las fórmulas de la biálgebra; los resultados se
comparan con ellas en las suites de verificación.
"""
from collections import defaultdict
from fractions import Fraction
from itertools import permutations
from typing import Dict, Hashable, Iterable, List, Tuple

from core.bialgebra import PElement, PTensor
from core.errors import InvariantViolation, PreconditionError
from core.lambda_core import (
    EnumerationMode,
    PartitionVector,
    VectorMultiset,
    enumerate_multisets,
    enumerate_vectors,
    vec_sum,
    verschiebung,
)
from core.logging import logger
from core.tconstruction import (
    FinSurjection,
    T1Cell,
    T2Cell,
    are_isomorphic,
    aut_count,
    cell_from_class,
    connected_cell,
    count_isomorphisms,
    degenerate_cell,
    fiber_profile,
    segal_completion,
    surjections,
    t1_class,
)


# ============================================================================
# CARDINALIDAD HOMOTÓPICA
# ============================================================================

def homotopy_cardinality(classes: Iterable[Tuple[Hashable, int]]) -> Fraction:
    """
    |X| = Σ_{x ∈ π₀X} 1/|aut(x)|

    Args:
        classes: pares (identificador de clase, |aut|)

    Raises:
        PreconditionError: si algún |aut| no es positivo
    """
    total = Fraction(0)
    for identifier, automorphisms in classes:
        if automorphisms <= 0:
            raise PreconditionError(f"Número de automorfismos no positivo para {identifier}: {automorphisms}")
        total += Fraction(1, automorphisms)
    return total


def map_homotopy_cardinality(objects: Iterable[Tuple[Hashable, int]]) -> Dict[Hashable, Fraction]:
    """
    Cardinalidad homotópica de una aplicación X → π₀Y: para cada clase de
    destino, la suma de 1/|aut| de las clases de X que caen en ella.
    """
    fibers: Dict[Hashable, List[Tuple[Hashable, int]]] = defaultdict(list)
    for image, automorphisms in objects:
        fibers[image].append((image, automorphisms))
    return {image: homotopy_cardinality(members) for image, members in fibers.items()}


# ============================================================================
# VERSCHIEBUNG OBJETIVA
# ============================================================================

def objective_verschiebung(cell: T2Cell) -> List[Tuple[PartitionVector, int]]:
    """
    Para cada r ∈ t11: μ_r = perfil de (t01)_r ↠ (t00)_r y k_r = |(t12)_r|.

    Comprueba que el perfil de la flecha izquierda de d₁(t) es Σ_r V^{k_r} μ_r.

    Raises:
        PreconditionError: si t22 no es un punto
        InvariantViolation: si la identidad no se cumple
    """
    if not cell.is_connected:
        raise PreconditionError("objective_verschiebung requiere una celda conexa (|t22| = 1)")
    down = cell.left[(0, 1)]
    across = cell.right[(0, 1)]
    upper = cell.left[(1, 2)]
    terms: List[Tuple[PartitionVector, int]] = []
    for r in range(cell.size(1, 1)):
        restricted = [down(x) for x in range(down.source_size) if across(x) == r]
        relabel = {y: index for index, y in enumerate(sorted(set(restricted)))}
        mu = fiber_profile(FinSurjection.from_assignment([relabel[y] for y in restricted]))
        k = sum(1 for y in range(upper.source_size) if upper(y) == r)
        terms.append((mu, k))

    expected = vec_sum(verschiebung(k, mu) for mu, k in terms)
    observed = fiber_profile(cell.face(1).left[(0, 1)])
    if observed != expected:
        raise InvariantViolation(f"Verschiebung objetiva: d₁ tiene perfil {observed}, se esperaba {expected}")
    return terms


# ============================================================================
# COMULTIPLICACIÓN OBJETIVA
# ============================================================================

def iso_fiber_count(tau: T1Cell, lam: T1Cell, sigma: T1Cell) -> int:
    """
    |iso(d₀τ, d₁λ)_σ|: pares (φ, ψ) con φ: t11(τ) → t00(λ) biyección y
    ψ: d₁(τ ∪_φ λ) ≅ σ, contados por búsqueda exhaustiva.
    """
    size = tau.size(1, 1)
    if size != lam.size(0, 0):
        return 0
    total = 0
    for gluing in permutations(range(size)):
        glued = segal_completion(tau, lam, gluing=gluing)
        total += count_isomorphisms(glued.face(1), sigma)
    return total


def objective_delta(sigma: T1Cell) -> PTensor:
    """
    Δ(δ_σ) = Σ_{λ,τ} |iso(d₀τ, d₁λ)_σ| / (|aut λ|·|aut τ|) δ_τ ⊗ δ_λ, leído en 𝒫
    mediante δ_τ ↦ ∏_{μ ∈ clase(τ)} A_μ y δ_λ ↦ A_λ.

    Raises:
        PreconditionError: si σ no es conexa
    """
    if not sigma.is_connected:
        raise PreconditionError("objective_delta requiere una celda conexa (|t11| = 1)")
    weight = sigma.size(0, 1)
    automorphisms: Dict[VectorMultiset, int] = {}

    def _aut(multiset: VectorMultiset, cell: T1Cell) -> int:
        if multiset not in automorphisms:
            automorphisms[multiset] = aut_count(cell)
        return automorphisms[multiset]

    terms: Dict[Tuple[VectorMultiset, VectorMultiset], Fraction] = {}
    for profile in enumerate_vectors(weight, EnumerationMode.UPTO):
        lam_class = VectorMultiset((profile,))
        lam_cell = connected_cell(profile)
        for multiset in enumerate_multisets(profile.length, weight):
            tau_cell = cell_from_class(multiset)
            count = iso_fiber_count(tau_cell, lam_cell, sigma)
            if count:
                terms[(multiset, lam_class)] = Fraction(
                    count, _aut(lam_class, lam_cell) * _aut(multiset, tau_cell)
                )
    logger.debug(f"[objective] σ de peso {weight}: {len(terms)} términos")
    return PTensor.from_mapping(terms)


def objective_counit(cell: T1Cell) -> Fraction:
    """1 si la celda es isomorfa a una degenerada s₀(X), 0 en otro caso."""
    return Fraction(1) if are_isomorphic(cell, degenerate_cell(cell.size(1, 1))) else Fraction(0)


# ============================================================================
# FUNCIÓN DE GREEN OBJETIVA
# ============================================================================

def green_inclusion(truncation: int) -> PElement:
    """
    Cardinalidad homotópica de la inclusión de las sobreyecciones a ↠ b
    (|a| ≤ W) en T₁𝐒 como celdas conexas b ↞ a ↠ 1. Debe coincidir con la
    función de Green A = Σ_λ a_λ truncada a W.
    """
    representatives: Dict[VectorMultiset, T1Cell] = {}
    for source in range(1, truncation + 1):
        for target in range(1, source + 1):
            for surjection in surjections(source, target):
                cell = T1Cell.from_maps(surjection, FinSurjection.to_point(source))
                representatives.setdefault(t1_class(cell), cell)

    cardinality = map_homotopy_cardinality(
        (multiset, aut_count(cell)) for multiset, cell in representatives.items()
    )
    return PElement.from_mapping(cardinality)
