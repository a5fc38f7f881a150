"""
Pruebas de codecs (modelos ↔ valores, render de texto) y del cache de coproductos.
"""
import random
import unittest
from fractions import Fraction

from core.bialgebra import bell, delta_generator
from core.cache import CacheManager
from core.codecs import (
    cell_from_model,
    cell_to_model,
    dump_model,
    element_from_model,
    element_to_model,
    load_model,
    parse_blocks,
    parse_fraction,
    render_element,
    render_series,
    render_tensor,
    series_from_model,
    series_to_model,
    tensor_from_model,
    tensor_to_model,
)
from core.errors import FormatError, PreconditionError
from core.lambda_core import canonical
from core.series import from_f_coefficients, random_series, variable
from core.tconstruction import FinSurjection, T1Cell
from schemas import ElementFile, SeriesFile, SeriesTerm, TensorFile


# ============================================================================
# FRACCIONES Y BLOQUES
# ============================================================================

class FractionTest(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(parse_fraction("3/6"), Fraction(1, 2))
        self.assertEqual(parse_fraction(" -2 "), -2)

    def test_rejects(self):
        for texto in ["0.5", "1e3", "1/0", "abc", ""]:
            with self.subTest(texto=texto):
                with self.assertRaises(FormatError):
                    parse_fraction(texto)

    def test_blocks(self):
        self.assertEqual(parse_blocks("[[1,2],[3]]"), [[1, 2], [3]])
        for texto in ["[[1,2]", "[1,2]", '[["a"]]']:
            with self.subTest(texto=texto):
                with self.assertRaises(FormatError):
                    parse_blocks(texto)


# ============================================================================
# ARCHIVOS
# ============================================================================

class ParseBackTest(unittest.TestCase):
    """Lo que se emite se vuelve a leer como el mismo valor."""

    def test_series(self):
        series = random_series(random.Random(2), 4, constant_free=False)
        text = dump_model(series_to_model(series))
        self.assertEqual(series_from_model(load_model(text, SeriesFile)), series)

    def test_element(self):
        element = bell(canonical([4]), canonical([2]))
        text = dump_model(element_to_model(element))
        self.assertEqual(element_from_model(load_model(text, ElementFile)), element)

    def test_tensor(self):
        tensor = delta_generator(canonical([1, 1]))
        text = dump_model(tensor_to_model(tensor))
        self.assertEqual(tensor_from_model(load_model(text, TensorFile)), tensor)

    def test_cell(self):
        cell = T1Cell.from_maps(FinSurjection.from_assignment([0, 0, 1]), FinSurjection.to_point(3))
        self.assertEqual(cell_from_model(cell_to_model(cell)), cell)

    def test_output_is_deterministic(self):
        first = dump_model(tensor_to_model(delta_generator(canonical([2, 1]))))
        second = dump_model(tensor_to_model(delta_generator(canonical([2, 1]))))
        self.assertEqual(first, second)


class SeriesFileTest(unittest.TestCase):

    def test_raw_normalization(self):
        model = SeriesFile(truncation=4, normalization="raw", terms=[SeriesTerm(lambda_=[2], coeff="1/2")])
        self.assertEqual(series_from_model(model), from_f_coefficients([(canonical([2]), 1)], 4))

    def test_raw_constant_term_in_inner(self):
        model = SeriesFile(truncation=2, normalization="raw", terms=[SeriesTerm(lambda_=[0], coeff="1")])
        with self.assertRaises(PreconditionError):
            series_from_model(model, constant_free=True)

    def test_negative_entry(self):
        model = SeriesFile(truncation=2, terms=[SeriesTerm(lambda_=[1, -1], coeff="1")])
        with self.assertRaises(FormatError):
            series_from_model(model)

    def test_invalid_json(self):
        with self.assertRaises(FormatError):
            load_model("{", SeriesFile)
        with self.assertRaises(FormatError):
            load_model('{"truncation": 0}', SeriesFile)

    def test_zero_generator_in_monomial(self):
        model = ElementFile.model_validate({"terms": [{"monomial": ["0"], "coeff": "1"}]})
        with self.assertRaises(FormatError):
            element_from_model(model)


# ============================================================================
# TEXTO
# ============================================================================

class RenderTest(unittest.TestCase):

    def test_element(self):
        self.assertEqual(render_element(bell(canonical([3]), canonical([2]))), "3*A(1)*A(2)")
        self.assertEqual(render_element(bell(canonical([2]), canonical([3]))), "0")

    def test_tensor(self):
        rendered = render_tensor(delta_generator(canonical([0, 1])))
        self.assertEqual(set(rendered.split(" + ")), {"A(0,1) ⊗ A(1)", "A(1) ⊗ A(0,1)"})

    def test_series(self):
        self.assertEqual(render_series(variable(1, 3)), "1*x^(1)/autiv(1)")


# ============================================================================
# CACHE
# ============================================================================

class CacheTest(unittest.TestCase):

    def test_eviction_and_stats(self):
        cache = CacheManager(max_size=2, ttl_seconds=0)
        for key in ["a", "b", "c"]:
            cache.set(key, key.upper())
        self.assertIsNone(cache.get("a"))
        self.assertEqual(cache.get("c"), "C")
        stats = cache.get_stats()
        self.assertEqual(stats["total_keys"], 2)
        self.assertEqual((stats["hits"], stats["misses"]), (1, 1))

    def test_clear(self):
        cache = CacheManager(max_size=0, ttl_seconds=0)
        cache.set("a", 1)
        cache.clear("a")
        self.assertIsNone(cache.get("a"))
        cache.clear()
        self.assertEqual(cache.get_stats()["misses"], 0)


if __name__ == "__main__":
    unittest.main()
