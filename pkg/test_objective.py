"""
Pruebas del lado objetivo: cardinalidad homotópica, conteo de fibras de
isomorfismos y comultiplicación de T𝐒 leída en 𝒫.
"""
import unittest
from fractions import Fraction

from core.bialgebra import count_placements, delta_generator, green_element, monomial_counit
from core.errors import PreconditionError
from core.lambda_core import EnumerationMode, VectorMultiset, autiv, canonical, enumerate_multisets, enumerate_vectors
from core.objective import (
    green_inclusion,
    homotopy_cardinality,
    iso_fiber_count,
    map_homotopy_cardinality,
    objective_counit,
    objective_delta,
    objective_verschiebung,
)
from core.tconstruction import (
    FinSurjection,
    T1Cell,
    cell_from_class,
    connected_cell,
    degenerate_cell,
    iter_t1_cells,
    segal_completion,
    t1_class,
)


def multiset(*vectors):
    return VectorMultiset.of(canonical(list(v)) for v in vectors)


# ============================================================================
# CARDINALIDAD HOMOTÓPICA
# ============================================================================

class HomotopyCardinalityTest(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(homotopy_cardinality([("x", 2)]), Fraction(1, 2))
        self.assertEqual(homotopy_cardinality([("a", 1), ("b", 2), ("c", 6)]), Fraction(5, 3))
        self.assertEqual(homotopy_cardinality([]), 0)

    def test_rejects_non_positive(self):
        with self.assertRaises(PreconditionError):
            homotopy_cardinality([("x", 0)])

    def test_map_groups_by_image(self):
        result = map_homotopy_cardinality([("p", 2), ("p", 2), ("q", 3)])
        self.assertEqual(result, {"p": Fraction(1), "q": Fraction(1, 3)})


# ============================================================================
# FIBRAS DE ISOMORFISMOS
# ============================================================================

class IsoFiberTest(unittest.TestCase):

    def test_verschiebung_sigma(self):
        count = iso_fiber_count(
            cell_from_class(multiset([0, 1])),
            connected_cell(canonical([1])),
            connected_cell(canonical([0, 1])),
        )
        self.assertEqual(count, 2)

    def test_two_singletons(self):
        count = iso_fiber_count(
            cell_from_class(multiset([1], [1])),
            connected_cell(canonical([2])),
            connected_cell(canonical([2])),
        )
        self.assertEqual(count, 4)

    def test_size_mismatch(self):
        count = iso_fiber_count(
            cell_from_class(multiset([1])),
            connected_cell(canonical([2])),
            connected_cell(canonical([2])),
        )
        self.assertEqual(count, 0)

    def test_matches_placements(self):
        # |iso(d₀τ, d₁λ)_σ| = autiv(σ)·|T^𝛍_{σ,λ}| para todo σ conexo de peso ≤ 3
        vectors = enumerate_vectors(3, EnumerationMode.UPTO)
        for sigma in vectors:
            for lam in vectors:
                for classes in enumerate_multisets(lam.length, 3):
                    with self.subTest(sigma=str(sigma), lam=str(lam), mu=str(classes)):
                        count = iso_fiber_count(cell_from_class(classes), connected_cell(lam), connected_cell(sigma))
                        self.assertEqual(count, autiv(sigma) * count_placements(sigma, lam, classes))


# ============================================================================
# COMULTIPLICACIÓN OBJETIVA
# ============================================================================

class ObjectiveDeltaTest(unittest.TestCase):

    def test_matches_formula(self):
        for raw in ([1], [0, 1], [2], [1, 1]):
            with self.subTest(sigma=raw):
                sigma = canonical(raw)
                self.assertEqual(objective_delta(connected_cell(sigma)), delta_generator(sigma))

    def test_requires_connected(self):
        with self.assertRaises(PreconditionError):
            objective_delta(degenerate_cell(2))


class ObjectiveVerschiebungTest(unittest.TestCase):

    def test_product_cell(self):
        left = T1Cell.from_maps(FinSurjection.identity(2), FinSurjection.to_point(2))
        right = T1Cell.from_maps(FinSurjection.to_point(3), FinSurjection.to_point(3))
        terms = objective_verschiebung(segal_completion(left, right))
        self.assertEqual(terms, [(canonical([2]), 3)])

    def test_requires_connected(self):
        cell = segal_completion(degenerate_cell(2), degenerate_cell(2))
        with self.assertRaises(PreconditionError):
            objective_verschiebung(cell)


class ObjectiveCounitTest(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(objective_counit(degenerate_cell(2)), 1)
        self.assertEqual(objective_counit(connected_cell(canonical([0, 1]))), 0)

    def test_matches_monomial_counit(self):
        for cell in iter_t1_cells(3):
            self.assertEqual(objective_counit(cell), monomial_counit(t1_class(cell)))


class GreenInclusionTest(unittest.TestCase):

    def test_matches_green_element(self):
        for truncation in range(1, 4):
            with self.subTest(truncation=truncation):
                self.assertEqual(green_inclusion(truncation), green_element(truncation))


if __name__ == "__main__":
    unittest.main()
