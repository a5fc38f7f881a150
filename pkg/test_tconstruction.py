"""
Pruebas del modelo explícito de T𝐒: sobreyecciones, cuadrados pullback,
caras y degeneraciones, pegado de Segal e isomorfismos.
"""
import unittest
from math import factorial

from core.errors import PreconditionError
from core.lambda_core import VectorMultiset, canonical, multiset_autiv
from core.tconstruction import (
    FinSurjection,
    Square,
    T1Cell,
    T2Cell,
    aut_count,
    are_isomorphic,
    boundary_fixing_isomorphisms,
    cell_from_class,
    commuting_squares,
    connected_cell,
    degeneracies,
    degenerate_cell,
    faces,
    fiber_profile,
    identity_square,
    is_pullback_square,
    iter_t1_cells,
    monoidal_sum,
    nerve_cell,
    paste_squares,
    relabel_apex,
    segal_completion,
    segal_decomposition,
    square_sum,
    surjection_from_profile,
    surjections,
    t1_class,
)


def surj(*assignment):
    return FinSurjection.from_assignment(assignment)


def product_cell() -> T2Cell:
    """2 ↞ 2 ↠ 1 pegada con 1 ↞ 3 ↠ 1: ápice 2×3."""
    left = T1Cell.from_maps(FinSurjection.identity(2), FinSurjection.to_point(2))
    right = T1Cell.from_maps(FinSurjection.to_point(3), FinSurjection.to_point(3))
    return segal_completion(left, right)


EMPTY_CELL = T1Cell.from_maps(FinSurjection(0, 0, ()), FinSurjection(0, 0, ()))


# ============================================================================
# SOBREYECCIONES
# ============================================================================

class SurjectionTest(unittest.TestCase):

    def test_rejects_non_surjective(self):
        with self.assertRaises(PreconditionError):
            FinSurjection(2, 3, (0, 1))

    def test_composition(self):
        self.assertEqual(surj(0, 1, 1).then(surj(0, 0)), FinSurjection.to_point(3))
        with self.assertRaises(PreconditionError):
            surj(0, 1).then(surj(0, 1, 1))

    def test_fiber_profile(self):
        self.assertEqual(fiber_profile(surj(0, 0, 1)), canonical([1, 1]))
        self.assertEqual(fiber_profile(FinSurjection.identity(4)), canonical([4]))
        self.assertEqual(fiber_profile(FinSurjection.to_point(2)), canonical([0, 1]))

    def test_profile_round_trip(self):
        profile = canonical([2, 0, 1])
        self.assertEqual(fiber_profile(surjection_from_profile(profile)), profile)

    def test_enumeration(self):
        self.assertEqual(len(list(surjections(3, 2))), 6)
        self.assertEqual(list(surjections(2, 3)), [])
        self.assertEqual(len(list(surjections(0, 0))), 1)


# ============================================================================
# CUADRADOS
# ============================================================================

class SquareTest(unittest.TestCase):

    def test_identity_square(self):
        square = identity_square(surj(0, 1, 1))
        self.assertTrue(square.commutes())
        self.assertTrue(square.is_pullback())

    def test_product_over_point(self):
        top = (surj(0, 0, 0, 1, 1, 1), surj(0, 1, 2, 0, 1, 2))
        bottom = (FinSurjection.to_point(2), FinSurjection.to_point(3))
        self.assertTrue(is_pullback_square(top, bottom))

    def test_diagonal_is_not_pullback(self):
        top = (FinSurjection.identity(2), FinSurjection.identity(2))
        bottom = (FinSurjection.to_point(2), FinSurjection.to_point(2))
        self.assertFalse(is_pullback_square(top, bottom))

    def test_non_commuting_square(self):
        top = (FinSurjection.identity(2), surj(1, 0))
        bottom = (FinSurjection.identity(2), FinSurjection.identity(2))
        with self.assertRaises(PreconditionError):
            is_pullback_square(top, bottom)

    def test_pasting_pullbacks(self):
        first = identity_square(surj(0, 0, 1))
        second = Square(FinSurjection.identity(2), FinSurjection.to_point(2),
                        FinSurjection.to_point(2), FinSurjection.identity(1))
        pasted = paste_squares(first, second)
        self.assertEqual(pasted.apex_to_right, FinSurjection.to_point(3))
        self.assertEqual(pasted.left_to_base, FinSurjection.to_point(3))
        self.assertTrue(pasted.commutes())
        self.assertTrue(pasted.is_pullback())

    def test_pasting_needs_shared_edge(self):
        first = identity_square(surj(0, 0, 1))
        with self.assertRaises(PreconditionError):
            paste_squares(first, first)

    def test_pasting_law(self):
        # con el cuadrado derecho pullback, el pegado es pullback sii el izquierdo lo es
        squares = list(commuting_squares(2))
        by_left_edge = {}
        for square in squares:
            by_left_edge.setdefault(square.apex_to_left, []).append(square)
        pastes = 0
        for first in squares:
            for second in by_left_edge.get(first.right_to_base, []):
                if not second.is_pullback():
                    continue
                pasted = paste_squares(first, second)
                self.assertTrue(pasted.commutes())
                self.assertEqual(pasted.is_pullback(), first.is_pullback())
                pastes += 1
        self.assertGreater(pastes, 0)

    def test_identity_squares_are_pullbacks(self):
        for n in range(4):
            for m in range(n + 1):
                for surjection in surjections(n, m):
                    self.assertTrue(identity_square(surjection).is_pullback())

    def test_sum_splitting(self):
        pullback = identity_square(surj(0, 1, 1))
        diagonal = Square(FinSurjection.identity(2), FinSurjection.identity(2),
                          FinSurjection.to_point(2), FinSurjection.to_point(2))
        self.assertTrue(square_sum(pullback, pullback).is_pullback())
        self.assertFalse(square_sum(pullback, diagonal).is_pullback())

    def test_commuting_squares_commute(self):
        for square in commuting_squares(2):
            self.assertTrue(square.commutes())


# ============================================================================
# CELDAS DE T₁ Y AUTOMORFISMOS
# ============================================================================

class T1ClassTest(unittest.TestCase):

    def test_classes(self):
        connected = T1Cell.from_maps(FinSurjection.to_point(2), FinSurjection.to_point(2))
        self.assertEqual(t1_class(connected), VectorMultiset.of([canonical([0, 1])]))
        identity = T1Cell.from_maps(FinSurjection.identity(2), FinSurjection.identity(2))
        self.assertEqual(t1_class(identity), VectorMultiset.of([canonical([1])] * 2))
        self.assertEqual(t1_class(EMPTY_CELL), VectorMultiset())

    def test_representative_has_its_class(self):
        multiset = VectorMultiset.of([canonical([1]), canonical([0, 1]), canonical([2, 1])])
        self.assertEqual(t1_class(cell_from_class(multiset)), multiset)

    def test_right_map_must_factor(self):
        with self.assertRaises(PreconditionError):
            T1Cell.from_maps(surj(0, 0), surj(0, 1))

    def test_connected_cell_of_zero(self):
        with self.assertRaises(PreconditionError):
            connected_cell(canonical([]))


class AutomorphismTest(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(aut_count(connected_cell(canonical([2, 1]))), 4)
        self.assertEqual(aut_count(T1Cell.from_maps(FinSurjection.identity(1), FinSurjection.identity(1))), 1)
        self.assertEqual(aut_count(T1Cell.from_maps(FinSurjection.identity(3), FinSurjection.identity(3))), 6)

    def test_point_fibers(self):
        for k in range(1, 6):
            with self.subTest(k=k):
                self.assertEqual(aut_count(nerve_cell(FinSurjection.to_point(k))), factorial(k))

    def test_autiv_on_all_small_cells(self):
        for cell in iter_t1_cells(3):
            self.assertEqual(aut_count(cell), multiset_autiv(t1_class(cell)))

    def test_isomorphic_iff_same_class(self):
        first = T1Cell.from_maps(surj(0, 0, 1), surj(0, 0, 0))
        second = T1Cell.from_maps(surj(1, 0, 0), surj(0, 0, 0))
        third = T1Cell.from_maps(surj(0, 1, 2), surj(0, 0, 0))
        self.assertTrue(are_isomorphic(first, second))
        self.assertFalse(are_isomorphic(first, third))


# ============================================================================
# ESTRUCTURA SIMPLICIAL
# ============================================================================

class SimplicialTest(unittest.TestCase):

    def test_faces_of_product_cell(self):
        cell = product_cell()
        self.assertEqual(cell.size(0, 2), 6)
        d2, d1, d0 = faces(cell)
        self.assertEqual(d2.size(0, 1), 2)
        self.assertEqual(d0.size(0, 1), 3)
        self.assertEqual(fiber_profile(d1.down), canonical([0, 0, 2]))

    def test_degenerate_squares_are_pullbacks(self):
        cell = T1Cell.from_maps(surj(0, 0, 1), surj(0, 0, 0))
        for degenerate in degeneracies(cell):
            degenerate.validate()
            self.assertTrue(degenerate.pullback_square().is_pullback())

    def test_simplicial_identities_on_t1(self):
        for cell in iter_t1_cells(2):
            s0, s1 = degeneracies(cell)
            self.assertEqual(s0.face(0), cell)
            self.assertEqual(s0.face(1), cell)
            self.assertEqual(s1.face(1), cell)
            self.assertEqual(s1.face(2), cell)
            self.assertEqual(s1.face(0), cell.face(0).degeneracy(0))
            self.assertEqual(s0.face(2), cell.face(1).degeneracy(0))

    def test_face_identities_on_t2(self):
        cell = product_cell()
        for i in range(3):
            for j in range(i + 1, 3):
                self.assertEqual(cell.face(j).face(i), cell.face(i).face(j - 1))

    def test_face_out_of_range(self):
        with self.assertRaises(PreconditionError):
            product_cell().face(3)


class SegalTest(unittest.TestCase):

    def test_apex_is_product(self):
        self.assertEqual(product_cell().size(0, 2), 6)

    def test_glue_with_degenerate_cell(self):
        cell = T1Cell.from_maps(surj(0, 0, 1), surj(0, 0, 0))
        glued = segal_completion(cell, degenerate_cell(cell.size(1, 1)))
        self.assertEqual(glued, cell.degeneracy(1))

    def test_size_mismatch(self):
        left = T1Cell.from_maps(FinSurjection.identity(2), FinSurjection.identity(2))
        right = connected_cell(canonical([1]))
        with self.assertRaises(PreconditionError):
            segal_completion(left, right)

    def test_decomposition(self):
        cell = product_cell()
        rebuilt = segal_decomposition(cell)
        self.assertTrue(are_isomorphic(rebuilt, cell))
        self.assertEqual(boundary_fixing_isomorphisms(rebuilt, cell), 1)

    def test_gluing_bijection(self):
        left = T1Cell.from_maps(FinSurjection.identity(2), FinSurjection.identity(2))
        right = T1Cell.from_maps(surj(0, 0, 1), surj(0, 0, 1))
        straight = segal_completion(left, right)
        swapped = segal_completion(left, right, gluing=(1, 0))
        self.assertTrue(are_isomorphic(straight, swapped))

    def test_relabelled_apex_is_the_same_completion(self):
        cell = product_cell()
        other = relabel_apex(cell, [5 - x for x in range(6)])
        self.assertNotEqual(other, cell)
        self.assertEqual(other.face(0), cell.face(0))
        self.assertEqual(other.face(2), cell.face(2))
        self.assertEqual(boundary_fixing_isomorphisms(other, cell), 1)

    def test_relabel_needs_bijection(self):
        with self.assertRaises(PreconditionError):
            relabel_apex(product_cell(), [0] * 6)


# ============================================================================
# SUMA MONOIDAL
# ============================================================================

class MonoidalSumTest(unittest.TestCase):

    def test_empty_is_neutral(self):
        cell = connected_cell(canonical([1, 1]))
        self.assertEqual(monoidal_sum(cell, EMPTY_CELL), cell)

    def test_classes_add(self):
        alpha, beta = canonical([0, 1]), canonical([2])
        total = monoidal_sum(connected_cell(alpha), connected_cell(beta))
        self.assertEqual(t1_class(total), VectorMultiset.of([alpha, beta]))


if __name__ == "__main__":
    unittest.main()
