"""
Pruebas del diccionario particiones ↔ sobreyecciones: join, meet, φ,
conmutación, independencia y transversales.
"""
import unittest

from core.errors import PreconditionError
from core.partitions import (
    Partition,
    cell_transversal,
    coarsenings,
    commute,
    independent,
    is_transversal,
    join,
    join_blockwise,
    meet,
    meet_by_phi,
    partition_to_surjection,
    partitions_from_labels,
    phi_map,
    set_partitions,
    transversal_cell,
)
from core.tconstruction import fiber_profile
from core.lambda_core import canonical


def P(*blocks, n=None):
    return Partition.from_blocks([list(b) for b in blocks], n)


# {{1,2},{3}} y {{1,3},{2}} reetiquetadas a {0,1,2}
CROSSED = (P([0, 1], [2]), P([0, 2], [1]))
# {{1,2},{3,4}} y {{1,3},{2,4}}
GRID = (P([0, 1], [2, 3]), P([0, 2], [1, 3]))


# ============================================================================
# CONSTRUCCIÓN
# ============================================================================

class PartitionTest(unittest.TestCase):

    def test_canonical_order(self):
        self.assertEqual(P([2], [1, 0]).blocks, ((0, 1), (2,)))
        self.assertEqual(str(P([2], [1, 0])), "[[0,1],[2]]")

    def test_invalid_blocks(self):
        with self.assertRaises(PreconditionError):
            Partition(3, ((0, 1),))
        with self.assertRaises(PreconditionError):
            Partition(2, ((0, 1), ()))

    def test_from_labels(self):
        first, second = partitions_from_labels([[1, 2], [3]], [[1, 3], [2]])
        self.assertEqual((first, second), CROSSED)

    def test_from_labels_errors(self):
        with self.assertRaises(PreconditionError):
            partitions_from_labels([[1, 2]], [[1], [3]])
        with self.assertRaises(PreconditionError):
            partitions_from_labels([[1, 2], [2]], [[1], [2]])

    def test_surjection(self):
        surjection = partition_to_surjection(P([0, 2], [1]))
        self.assertEqual(surjection.assignment, (0, 1, 0))
        self.assertEqual(fiber_profile(surjection), canonical([1, 1]))
        self.assertEqual(Partition.from_surjection(surjection), P([0, 2], [1]))

    def test_refines(self):
        self.assertTrue(Partition.discrete(3).refines(P([0, 1], [2])))
        self.assertTrue(P([0, 1], [2]).refines(Partition.indiscrete(3)))
        self.assertFalse(P([0, 1], [2]).refines(P([0], [1, 2])))

    def test_set_partitions_bell_numbers(self):
        casos = [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)]
        for n, esperado in casos:
            with self.subTest(n=n):
                self.assertEqual(len(set(set_partitions(n))), esperado)

    def test_coarsenings(self):
        self.assertEqual(len(list(coarsenings(Partition.discrete(3)))), 5)
        found = list(coarsenings(P([0, 1], [2])))
        self.assertEqual(set(found), {P([0, 1], [2]), Partition.indiscrete(3)})


# ============================================================================
# JOIN, MEET Y φ
# ============================================================================

class JoinMeetTest(unittest.TestCase):

    def test_crossed_example(self):
        first, second = CROSSED
        self.assertEqual(join(first, second), Partition.indiscrete(3))
        self.assertEqual(meet(first, second), Partition.discrete(3))
        self.assertTrue(phi_map(first, second).is_injective)

    def test_equal_partitions(self):
        pi = P([0, 1], [2])
        self.assertEqual(join(pi, pi), pi)
        self.assertEqual(meet(pi, pi), pi)
        self.assertEqual(phi_map(pi, pi).image, ((0, 0), (1, 1)))

    def test_discrete_meet(self):
        for tau in set_partitions(3):
            self.assertEqual(meet(Partition.discrete(3), tau), Partition.discrete(3))

    def test_routes_agree(self):
        for n in range(5):
            for first in set_partitions(n):
                for second in set_partitions(n):
                    self.assertEqual(join(first, second), join_blockwise(first, second))
                    self.assertEqual(meet(first, second), meet_by_phi(first, second))

    def test_ground_mismatch(self):
        with self.assertRaises(PreconditionError):
            join(Partition.discrete(2), Partition.discrete(3))
        with self.assertRaises(PreconditionError):
            phi_map(Partition.discrete(2), Partition.discrete(3))


# ============================================================================
# CONMUTACIÓN E INDEPENDENCIA
# ============================================================================

class PredicateTest(unittest.TestCase):

    def test_examples(self):
        self.assertFalse(commute(*CROSSED))
        self.assertTrue(independent(*GRID))
        self.assertTrue(commute(*GRID))
        self.assertTrue(independent(Partition.discrete(1), Partition.discrete(1)))

    def test_crossed_phi_not_surjective(self):
        phi = phi_map(*CROSSED)
        self.assertEqual(len(phi.codomain), 4)
        self.assertFalse(phi.is_surjective)

    def test_empty_ground(self):
        empty = Partition.discrete(0)
        self.assertTrue(independent(empty, empty))
        self.assertTrue(commute(empty, empty))
        self.assertEqual(phi_map(empty, empty).join_size, 0)

    def test_exhaustive_agreement(self):
        # commute e independent lanzan InvariantViolation si los dos criterios discrepan
        for n in range(5):
            for first in set_partitions(n):
                for second in set_partitions(n):
                    if independent(first, second):
                        self.assertTrue(commute(first, second))


# ============================================================================
# TRANSVERSALES
# ============================================================================

class TransversalTest(unittest.TestCase):

    def test_examples(self):
        self.assertTrue(is_transversal(Partition.indiscrete(4), *GRID))
        pi = P([0, 1], [2])
        self.assertTrue(is_transversal(pi, pi, Partition.discrete(3)))
        self.assertFalse(is_transversal(P([0], [1, 2]), pi, Partition.discrete(3)))

    def test_exhaustive_agreement(self):
        for n in range(1, 5):
            for first in set_partitions(n):
                for second in set_partitions(n):
                    for sigma in coarsenings(first):
                        is_transversal(sigma, first, second)

    def test_cell_round_trip(self):
        triples = [
            (Partition.indiscrete(4),) + GRID,
            (P([0, 1], [2]), P([0, 1], [2]), Partition.discrete(3)),
        ]
        for sigma, first, second in triples:
            with self.subTest(sigma=str(sigma)):
                cell = transversal_cell(sigma, first, second)
                self.assertTrue(cell.is_connected)
                self.assertEqual(cell_transversal(cell), (sigma, first, second))

    def test_cell_requires_transversal(self):
        with self.assertRaises(PreconditionError):
            transversal_cell(P([0], [1, 2]), P([0, 1], [2]), Partition.discrete(3))


if __name__ == "__main__":
    unittest.main()
