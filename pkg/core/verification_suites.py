"""
Suites de verificación usando Strategy Pattern + Template Method.

Cada suite implementa `_run_checks()`, que produce chequeos con nombre; el
método `run()` (común, no sobrescribir) registra el progreso, convierte los
errores del motor en chequeos fallidos y arma el reporte.
"""
import random
import time
from abc import ABC, abstractmethod
from math import factorial
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from core import bialgebra, objective, oracles, partitions, series, tconstruction
from core.cache import coproduct_cache
from core.errors import PlethysmError
from core.lambda_core import (
    EnumerationMode,
    PartitionVector,
    autiv,
    enumerate_multisets,
    enumerate_vectors,
    multiset_autiv,
)
from core.logging import logger
from core.suite_registry import find_suite_by_name, get_supported_suites
from schemas import CheckResult, RunConfig, VerificationReport


def _pure(n: int) -> PartitionVector:
    return PartitionVector(((1, n),))


# ============================================================================
# SUITE BASE
# ============================================================================

class VerificationSuite(ABC):
    """
    Interfaz base de las suites.

    Las subclases solo definen `_run_checks()`; cada chequeo se expresa con
    `_check(nombre, función)` donde la función devuelve None si pasa o el
    texto de la discrepancia exacta si falla.
    """

    suite_key: str = ""

    def __init__(self, run_config: RunConfig, settings):
        self.run_config = run_config
        self.settings = settings
        self.suite_config = find_suite_by_name(self.suite_key) or {"display_name": self.suite_key}

    # ========================================================================
    # TEMPLATE METHOD
    # ========================================================================

    def run(self) -> VerificationReport:
        """
        Ejecuta la suite completa.

        Returns:
            VerificationReport: passed es True si y solo si todos los chequeos pasan
        """
        name = self.suite_config["display_name"]
        logger.info(f"[verify:{self.suite_key}] Iniciando suite: {name}")
        started = time.monotonic()
        checks: List[CheckResult] = list(self._run_checks())
        passed = all(check.passed for check in checks)
        failed = sum(1 for check in checks if not check.passed)
        elapsed = time.monotonic() - started
        if passed:
            logger.info(f"[verify:{self.suite_key}] {len(checks)} chequeos OK en {elapsed:.1f}s")
        else:
            logger.warning(f"[verify:{self.suite_key}] {failed} de {len(checks)} chequeos fallidos ({elapsed:.1f}s)")
        return VerificationReport(suite=self.suite_key, passed=passed, checks=checks)

    # ========================================================================
    # HOOK
    # ========================================================================

    @abstractmethod
    def _run_checks(self) -> Iterator[CheckResult]:
        """Genera los chequeos de la suite."""

    # ========================================================================
    # UTILIDADES COMUNES
    # ========================================================================

    def _check(self, name: str, verifier: Callable[[], Optional[str]]) -> CheckResult:
        try:
            detail = verifier()
        except PlethysmError as e:
            detail = f"{type(e).__name__}: {e}"
        if detail:
            logger.debug(f"[verify:{self.suite_key}] FALLO {name}: {detail}")
            return CheckResult(name=name, passed=False, detail=detail)
        return CheckResult(name=name, passed=True)

    @staticmethod
    def _mismatch(expected: Dict, observed: Dict) -> Optional[str]:
        """None si los diccionarios coinciden; si no, las claves discrepantes con ambos valores."""
        if expected == observed:
            return None
        keys = sorted(set(expected) | set(observed), key=str)
        differences = [
            f"{key}: esperado {expected.get(key, 0)}, obtenido {observed.get(key, 0)}"
            for key in keys
            if expected.get(key, 0) != observed.get(key, 0)
        ]
        return "; ".join(differences[:5]) + (f" (+{len(differences) - 5} más)" if len(differences) > 5 else "")


# ============================================================================
# SUITES DEL ÁLGEBRA
# ============================================================================

class DualitySuite(VerificationSuite):
    """⟨Δ(A_σ), F⊗G⟩ = A_σ(G⊛F) para todo σ ≠ 0 con wt(σ) ≤ W."""

    suite_key = "duality"

    def _run_checks(self):
        truncation = self.run_config.truncation
        rng = random.Random(self.run_config.seed)
        sigmas = enumerate_vectors(truncation, EnumerationMode.UPTO)
        deltas = {sigma: bialgebra.delta_generator(sigma) for sigma in sigmas}

        for index in range(self.settings.duality_pairs):
            inner = series.random_series(rng, truncation, constant_free=True)
            outer = series.random_series(rng, truncation, constant_free=False)

            def _verify(inner=inner, outer=outer):
                composed = series.plethysm(outer, inner)
                for sigma in sigmas:
                    paired = bialgebra.pair_tensor(deltas[sigma], inner, outer)
                    evaluated = series.coefficient(composed, sigma)
                    if paired != evaluated:
                        return f"σ={sigma}: ⟨Δ(A_σ),F⊗G⟩={paired}, A_σ(G⊛F)={evaluated}"
                return None

            yield self._check(f"par {index + 1} (W={truncation}, {len(sigmas)} σ)", _verify)


class GreenSuite(VerificationSuite):
    """Δ(A) = Σ_k A^k ⊗ a_k y la inclusión de sobreyecciones en T₁𝐒."""

    suite_key = "green"

    def _run_checks(self):
        for truncation in range(self.run_config.truncation + 1):
            def _verify(truncation=truncation):
                left, right = bialgebra.green_delta(truncation)
                return self._mismatch(right.as_dict, left.as_dict)

            yield self._check(f"Δ(A) = Σ A^k ⊗ a_k, W={truncation}", _verify)

        for truncation in range(1, min(self.run_config.truncation, self.run_config.size_bound) + 1):
            def _verify_inclusion(truncation=truncation):
                expected = bialgebra.green_element(truncation)
                observed = objective.green_inclusion(truncation)
                return self._mismatch(expected.as_dict, observed.as_dict)

            yield self._check(f"|inclusión de sobreyecciones| = A, W={truncation}", _verify_inclusion)


class ClassicalSuite(VerificationSuite):
    """Faà di Bruno multinomial, Bell B_{n,k} y composición univariante."""

    suite_key = "classical"

    def _run_checks(self):
        max_n = self.settings.classical_max_n
        for n in range(1, max_n + 1):
            def _verify_multinomial(n=n):
                bialgebra.classical_delta(n)
                return None

            yield self._check(f"Δ(A_({n})) multinomial", _verify_multinomial)

            def _verify_bell(n=n):
                for k in range(1, n + 1):
                    observed = bialgebra.bell(_pure(n), _pure(k)).as_dict
                    by_sympy = oracles.bell_polynomial(n, k)
                    by_composition = oracles.bell_by_composition(n, k)
                    for label, reference in (("sympy.bell", by_sympy), ("composición", by_composition)):
                        mismatch = self._mismatch(reference, observed)
                        if mismatch:
                            return f"P_(({n}),({k})) frente a {label}: {mismatch}"
                return None

            yield self._check(f"P_(({n}),(k)) = B_({n},k)", _verify_bell)

        rng = random.Random(self.run_config.seed)
        truncation = max_n

        def _verify_univariate():
            inner = series.random_series(rng, truncation, constant_free=True)
            outer = series.random_series(rng, truncation, constant_free=True)
            engine = series.restrict_univariate(series.plethysm(outer, inner))
            reference = oracles.univariate_compose(
                series.restrict_univariate(outer), series.restrict_univariate(inner), truncation
            )
            if engine != reference:
                return f"motor {[str(c) for c in engine]} frente a sympy {[str(c) for c in reference]}"
            return None

        yield self._check(f"restricción univariante de G⊛F = g∘f (W={truncation})", _verify_univariate)


class ConsistencySuite(VerificationSuite):
    """Dos rutas de Δ, counidad, coasociatividad y transparencia del cache."""

    suite_key = "consistency"

    def _run_checks(self):
        weight = self.settings.consistency_weight
        for sigma in enumerate_vectors(weight, EnumerationMode.UPTO):
            def _verify_routes(sigma=sigma):
                by_tuples = bialgebra.delta_generator(sigma, cross_check=True)
                by_placements = bialgebra.delta_generator_by_placements(sigma)
                return self._mismatch(by_placements.as_dict, by_tuples.as_dict)

            yield self._check(f"tuplas = multiconjuntos, σ={sigma}", _verify_routes)

            def _verify_counit(sigma=sigma):
                generator = bialgebra.generator(sigma)
                tensor = bialgebra.delta_generator(sigma)
                for label, side in (("ε⊗id", bialgebra.counit_left(tensor)), ("id⊗ε", bialgebra.counit_right(tensor))):
                    if side != generator:
                        return f"({label})Δ(A_σ) = {side.as_dict}, se esperaba A_σ"
                return None

            yield self._check(f"counidad, σ={sigma}", _verify_counit)

        for sigma in enumerate_vectors(min(weight, 3), EnumerationMode.UPTO):
            def _verify_coassociativity(sigma=sigma):
                first, second = bialgebra.coassociativity_sides(sigma)
                return self._mismatch(first, second)

            yield self._check(f"coasociatividad, σ={sigma}", _verify_coassociativity)

        def _verify_cache():
            sigmas = enumerate_vectors(min(weight, 4), EnumerationMode.UPTO)
            cached = {sigma: bialgebra.delta_generator(sigma) for sigma in sigmas}
            coproduct_cache.clear()
            for sigma in sigmas:
                if bialgebra.delta_generator(sigma) != cached[sigma]:
                    return f"σ={sigma}: resultado distinto tras limpiar el cache"
            return None

        yield self._check("resultados idénticos con y sin cache", _verify_cache)


# ============================================================================
# SUITES DEL MODELO DE CONJUNTOS
# ============================================================================

class ObjectiveSuite(VerificationSuite):
    """Conteo de biyecciones frente a delta_generator y counidad objetiva."""

    suite_key = "objective"

    def _run_checks(self):
        weight = self.settings.objective_weight
        for sigma in enumerate_vectors(weight, EnumerationMode.UPTO):
            def _verify(sigma=sigma):
                expected = bialgebra.delta_generator(sigma)
                observed = objective.objective_delta(tconstruction.connected_cell(sigma))
                return self._mismatch(expected.as_dict, observed.as_dict)

            yield self._check(f"Δ objetivo = Δ algebraico, σ={sigma}", _verify)

            def _verify_fibers(sigma=sigma):
                return self._iso_fibers(sigma, weight)

            yield self._check(f"|iso(d₀τ, d₁λ)_σ| = autiv(σ)·|T^𝛍_{{σ,λ}}|, σ={sigma}", _verify_fibers)

        def _verify_counit():
            for cell in tconstruction.iter_t1_cells(min(weight, 3)):
                expected = bialgebra.monomial_counit(tconstruction.t1_class(cell))
                observed = objective.objective_counit(cell)
                if observed != expected:
                    return f"{cell}: ε objetivo {observed}, ε algebraico {expected}"
            return None

        yield self._check("counidad objetiva = ε", _verify_counit)

    @staticmethod
    def _iso_fibers(sigma: PartitionVector, weight: int) -> Optional[str]:
        """Recorre los mismos pares (τ, λ) que objective_delta."""
        sigma_cell = tconstruction.connected_cell(sigma)
        for lam in enumerate_vectors(weight, EnumerationMode.UPTO):
            lam_cell = tconstruction.connected_cell(lam)
            for multiset in enumerate_multisets(lam.length, weight):
                observed = objective.iso_fiber_count(tconstruction.cell_from_class(multiset), lam_cell, sigma_cell)
                expected = autiv(sigma) * bialgebra.count_placements(sigma, lam, multiset)
                if observed != expected:
                    return f"λ={lam}, 𝛍={multiset}: {observed} biyecciones, autiv·colocaciones = {expected}"
        return None


class PartitionsSuite(VerificationSuite):
    """Evaluación por bloques frente a diagramas, exhaustiva por tamaño de conjunto base."""

    suite_key = "partitions"

    def _run_checks(self):
        for n in range(1, self.settings.partition_ground_size + 1):
            everything = list(partitions.set_partitions(n))
            yield self._check(f"join/meet, n={n}", lambda everything=everything: self._join_meet(everything))
            yield self._check(f"commute/independent, n={n}", lambda everything=everything: self._predicates(everything))
            yield self._check(f"transversales, n={n}", lambda everything=everything: self._transversals(everything))

    @staticmethod
    def _join_meet(everything) -> Optional[str]:
        for first in everything:
            for second in everything:
                joined = partitions.join(first, second)
                if joined != partitions.join_blockwise(first, second):
                    return f"join({first},{second}): pushout {joined}, bloques {partitions.join_blockwise(first, second)}"
                met = partitions.meet(first, second)
                if met != partitions.meet_by_phi(first, second):
                    return f"meet({first},{second}): bloques {met}, φ {partitions.meet_by_phi(first, second)}"
                discrete = met == partitions.Partition.discrete(first.ground_size)
                if discrete != partitions.phi_map(first, second).is_injective:
                    return f"meet({first},{second}) = 0̂ no equivale a φ inyectiva"
                if first.refines(second) != (joined == second):
                    return f"π ≤ σ no equivale a π ∨ σ = σ para ({first},{second})"
        return None

    @staticmethod
    def _predicates(everything) -> Optional[str]:
        for first in everything:
            for second in everything:
                # ambos predicados lanzan InvariantViolation si las dos evaluaciones difieren
                partitions.commute(first, second)
                partitions.independent(first, second)
        return None

    @staticmethod
    def _transversals(everything) -> Optional[str]:
        for first in everything:
            for second in everything:
                for sigma in partitions.coarsenings(first):
                    if not partitions.is_transversal(sigma, first, second):
                        continue
                    cell = partitions.transversal_cell(sigma, first, second)
                    if not cell.is_connected:
                        return f"la celda de ({sigma},{first},{second}) no es conexa"
                    if partitions.cell_transversal(cell) != (sigma, first, second):
                        return f"celda → transversal no recupera ({sigma},{first},{second})"
        return None


class SimplicialSuite(VerificationSuite):
    """
    Identidades simpliciales, axiomas de pullback, Segal y suma de cuadrados.

    Las celdas T₂ y T₃ se pegan a partir de cadenas de celdas T₁ cuya suma de
    |t01| no supera size_bound. Hasta |t01| = LABELLED_APEX se usan todas las
    celdas etiquetadas; por encima, un representante por clase.
    """

    suite_key = "simplicial"

    LABELLED_APEX = 4

    def _run_checks(self):
        bound = self.run_config.size_bound
        legs = self._legs(bound)
        logger.debug(f"[verify:simplicial] {len(legs)} celdas T₁ con |t01| ≤ {bound}")

        yield self._check(f"d_i s_j en T₁ (|t01| ≤ {bound})", lambda: self._degeneracy_identities(legs))

        glued = [tconstruction.segal_completion(left, right) for left, right in self._chains(legs, 2, bound)]
        yield self._check(f"d_i d_j y pullback en {len(glued)} celdas T₂", lambda: self._face_identities(glued))
        yield self._check("completación de Segal única", lambda: self._segal(glued))

        tetrahedra = [
            tconstruction.segal_glue(
                tconstruction.segal_completion(first, second),
                tconstruction.segal_completion(second, third),
            )
            for first, second, third in self._chains(legs, 3, bound)
        ]
        yield self._check(f"d_i d_j en {len(tetrahedra)} celdas T₃", lambda: self._face_identities(tetrahedra))

        size = self.settings.square_size
        squares = list(tconstruction.commuting_squares(size))
        yield self._check(f"cuadrados identidad (≤ {size})", lambda: self._identity_squares(squares))
        yield self._check(f"pegado de pullbacks (≤ {size})", lambda: self._pasting(squares))
        yield self._check(f"suma de cuadrados (≤ {size} con ≤ 2)", lambda: self._sum_splitting(squares))

    @classmethod
    def _legs(cls, bound: int) -> List[tconstruction.T1Cell]:
        legs = list(tconstruction.iter_t1_cells(min(bound, cls.LABELLED_APEX)))
        for count in range(1, bound + 1):
            for multiset in enumerate_multisets(count, bound):
                if multiset.weight > cls.LABELLED_APEX:
                    legs.append(tconstruction.cell_from_class(multiset))
        return legs

    @staticmethod
    def _chains(legs, length: int, bound: int) -> Iterator[Tuple[tconstruction.T1Cell, ...]]:
        """Cadenas (c₁, ..., c_length) con t11(c_i) = t00(c_{i+1}) y Σ|t01| ≤ bound."""
        by_base: Dict[int, List[tconstruction.T1Cell]] = {}
        for leg in legs:
            by_base.setdefault(leg.size(0, 0), []).append(leg)

        def _extend(chain, budget):
            if len(chain) == length:
                yield tuple(chain)
                return
            for leg in by_base.get(chain[-1].size(1, 1), []):
                if leg.size(0, 1) <= budget:
                    yield from _extend(chain + [leg], budget - leg.size(0, 1))

        for leg in legs:
            if leg.size(0, 1) <= bound:
                yield from _extend([leg], bound - leg.size(0, 1))

    @staticmethod
    def _degeneracy_identities(cells) -> Optional[str]:
        for cell in cells:
            s0, s1 = tconstruction.degeneracies(cell)
            expected = {
                "d0 s0": cell, "d1 s0": cell, "d1 s1": cell, "d2 s1": cell,
                "d0 s1": cell.face(0).degeneracy(0),
                "d2 s0": cell.face(1).degeneracy(0),
            }
            observed = {
                "d0 s0": s0.face(0), "d1 s0": s0.face(1), "d1 s1": s1.face(1), "d2 s1": s1.face(2),
                "d0 s1": s1.face(0), "d2 s0": s0.face(2),
            }
            for identity, value in expected.items():
                if observed[identity] != value:
                    return f"{identity} falla en {cell}: {observed[identity]} ≠ {value}"
        return None

    @staticmethod
    def _face_identities(pyramids) -> Optional[str]:
        for pyramid in pyramids:
            n = pyramid.dimension
            for i in range(n + 1):
                for j in range(i + 1, n + 1):
                    if pyramid.face(j).face(i) != pyramid.face(i).face(j - 1):
                        return f"d{i} d{j} ≠ d{j - 1} d{i} en {pyramid}"
            try:
                pyramid.validate()
            except PlethysmError as e:
                return f"{pyramid}: {e}"
        return None

    @staticmethod
    def _segal(glued) -> Optional[str]:
        # otra completación del mismo borde: el ápice rotado una posición
        for cell in glued:
            tconstruction.segal_decomposition(cell)
            apex = cell.size(0, 2)
            other = tconstruction.relabel_apex(cell, [(x + 1) % apex for x in range(apex)])
            if other.face(2) != cell.face(2) or other.face(0) != cell.face(0):
                return f"{cell}: reetiquetar el ápice cambió el borde"
            if tconstruction.boundary_fixing_isomorphisms(other, cell) != 1:
                return f"{cell}: la completación no es única salvo isomorfismo único"
        return None

    @staticmethod
    def _identity_squares(squares) -> Optional[str]:
        edges = {
            edge
            for square in squares
            for edge in (square.apex_to_left, square.apex_to_right, square.left_to_base, square.right_to_base)
        }
        for edge in edges:
            if not tconstruction.identity_square(edge).is_pullback():
                return f"el cuadrado identidad de {edge} no es pullback"
        for square in squares:
            edge = square.right_to_base
            unit = tconstruction.Square(
                edge,
                tconstruction.FinSurjection.identity(edge.source_size),
                tconstruction.FinSurjection.identity(edge.target_size),
                edge,
            )
            if not unit.is_pullback() or tconstruction.paste_squares(square, unit) != square:
                return f"pegar {square} con la identidad de {edge} no lo deja igual"
        return None

    @staticmethod
    def _pasting(squares) -> Optional[str]:
        """Con el cuadrado derecho pullback, el pegado es pullback sii el izquierdo lo es."""
        pullbacks_by_left_edge: Dict[tconstruction.FinSurjection, List[tconstruction.Square]] = {}
        for square in squares:
            if square.is_pullback():
                pullbacks_by_left_edge.setdefault(square.apex_to_left, []).append(square)
        for first in squares:
            for second in pullbacks_by_left_edge.get(first.right_to_base, []):
                pasted = tconstruction.paste_squares(first, second)
                if pasted.is_pullback() != first.is_pullback():
                    return f"pegado de {first} con {second}: pullback={pasted.is_pullback()}"
        return None

    @staticmethod
    def _sum_splitting(squares) -> Optional[str]:
        small = list(tconstruction.commuting_squares(2))
        for first in squares:
            for second in small:
                total = tconstruction.square_sum(first, second)
                if total.is_pullback() != (first.is_pullback() and second.is_pullback()):
                    return f"la suma de {first} y {second} no respeta pullbacks"
        return None


class AutomorphismsSuite(VerificationSuite):
    """|aut| por fuerza bruta frente a autiv de la clase."""

    suite_key = "automorphisms"

    def _run_checks(self):
        size = self.settings.automorphism_size

        def _verify_classes():
            for count in range(1, size + 1):
                for multiset in enumerate_multisets(count, size):
                    cell = tconstruction.cell_from_class(multiset)
                    observed = tconstruction.aut_count(cell)
                    if observed != multiset_autiv(multiset):
                        return f"𝛍={multiset}: |aut| = {observed}, autiv = {multiset_autiv(multiset)}"
            return None

        yield self._check(f"|aut| = autiv(𝛍) en un representante por clase, |t01| ≤ {size}", _verify_classes)

        def _verify_all_cells():
            for cell in tconstruction.iter_t1_cells(min(size, 3)):
                multiset = tconstruction.t1_class(cell)
                if tconstruction.aut_count(cell) != multiset_autiv(multiset):
                    return f"{cell}: |aut| = {tconstruction.aut_count(cell)}, autiv = {multiset_autiv(multiset)}"
            return None

        yield self._check(f"|aut| = autiv en todas las celdas etiquetadas, |t01| ≤ {min(size, 3)}", _verify_all_cells)

        def _verify_points():
            for k in range(1, size + 1):
                observed = tconstruction.aut_count(tconstruction.connected_cell(PartitionVector(((k, 1),))))
                if observed != factorial(k):
                    return f"|aut({k}↠1)| = {observed}, se esperaba {factorial(k)}"
            return None

        yield self._check(f"|aut(k↠1)| = k!, k ≤ {size}", _verify_points)


# ============================================================================
# REGISTRO DE ESTRATEGIAS
# ============================================================================

VERIFICATION_SUITES = {
    "duality": DualitySuite,
    "green": GreenSuite,
    "objective": ObjectiveSuite,
    "partitions": PartitionsSuite,
    "simplicial": SimplicialSuite,
    "classical": ClassicalSuite,
    "consistency": ConsistencySuite,
    "automorphisms": AutomorphismsSuite,
}


def get_verification_suite(suite_name: str, run_config: RunConfig, settings) -> VerificationSuite:
    """
    Obtiene la suite de verificación por nombre.

    Args:
        suite_name: Nombre de la suite (e.g., "duality", "objective")
        run_config: Parámetros de la ejecución
        settings: Settings con las cotas de [Verification]

    Returns:
        Instancia de la suite

    Raises:
        ValueError: Si la suite no existe
    """
    suite_class = VERIFICATION_SUITES.get((suite_name or "").strip().lower())
    if not suite_class:
        raise ValueError(
            f"Suite de verificación '{suite_name}' no encontrada. Disponibles: {', '.join(get_supported_suites())}"
        )
    return suite_class(run_config, settings)
