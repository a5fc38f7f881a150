"""
Pruebas de extremo a extremo de la CLI: main() con archivos temporales,
salida en --output y códigos de salida.
"""
import json
import tempfile
import unittest
from pathlib import Path

from main import main


class CliTestCase(unittest.TestCase):

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.workdir = Path(self._tmp.name)
        self.output = self.workdir / "out.txt"

    def tearDown(self):
        self._tmp.cleanup()

    def write_series(self, name, terms, truncation=4, normalization="f"):
        path = self.workdir / name
        path.write_text(json.dumps({
            "truncation": truncation,
            "normalization": normalization,
            "terms": [{"lambda": lam, "coeff": coeff} for lam, coeff in terms],
        }), encoding="utf-8")
        return str(path)

    def run_cli(self, *argv):
        return main(["--output", str(self.output), *argv])

    def read_output(self):
        return self.output.read_text(encoding="utf-8")


# ============================================================================
# SERIES
# ============================================================================

class SeriesCommandsTest(CliTestCase):

    def test_plethysm(self):
        outer = self.write_series("g.json", [([2], "1")])
        inner = self.write_series("f.json", [([1], "1"), ([2], "1")])
        self.assertEqual(self.run_cli("plethysm", outer, inner), 0)
        result = json.loads(self.read_output())
        terms = {tuple(t["lambda"]): t["coeff"] for t in result["terms"]}
        self.assertEqual(terms, {(2,): "1", (3,): "3", (4,): "3"})
        self.assertEqual(result["normalization"], "f")

    def test_compose1_text(self):
        outer = self.write_series("g.json", [([2], "1")])
        inner = self.write_series("f.json", [([1], "1"), ([2], "1")])
        self.assertEqual(self.run_cli("--format", "text", "compose1", outer, inner), 0)
        self.assertEqual(
            self.read_output().splitlines(),
            ["f_(1) = 0", "f_(2) = 1", "f_(3) = 3", "f_(4) = 3"],
        )

    def test_constant_term_in_inner(self):
        outer = self.write_series("g.json", [([1], "1")])
        inner = self.write_series("f.json", [([0], "1"), ([1], "1")])
        self.assertEqual(self.run_cli("plethysm", outer, inner), 3)

    def test_decimal_coefficient(self):
        outer = self.write_series("g.json", [([1], "0.5")])
        inner = self.write_series("f.json", [([1], "1")])
        self.assertEqual(self.run_cli("plethysm", outer, inner), 2)

    def test_missing_file(self):
        inner = self.write_series("f.json", [([1], "1")])
        self.assertEqual(self.run_cli("plethysm", str(self.workdir / "nada.json"), inner), 2)


# ============================================================================
# BIÁLGEBRA
# ============================================================================

class BialgebraCommandsTest(CliTestCase):

    def test_delta_json(self):
        self.assertEqual(self.run_cli("delta", "1"), 0)
        result = json.loads(self.read_output())
        self.assertEqual(result["terms"], [{"left": ["1"], "right": ["1"], "coeff": "1"}])

    def test_delta_cross_check(self):
        self.assertEqual(self.run_cli("delta", "0,1", "--cross-check"), 0)
        self.assertEqual(len(json.loads(self.read_output())["terms"]), 2)

    def test_delta_zero_sigma(self):
        self.assertEqual(self.run_cli("delta", "0"), 3)

    def test_delta_bad_encoding(self):
        self.assertEqual(self.run_cli("delta", "1,x"), 2)

    def test_bell_text(self):
        self.assertEqual(self.run_cli("--format", "text", "bell", "3", "2"), 0)
        self.assertEqual(self.read_output().strip(), "3*A(1)*A(2)")

    def test_placements(self):
        self.assertEqual(self.run_cli("--format", "text", "placements", "3", "2", "{(1),(2)}"), 0)
        self.assertEqual(self.read_output().strip(), "2")

    def test_green(self):
        self.assertEqual(self.run_cli("--truncation", "3", "green"), 0)
        self.assertTrue(json.loads(self.read_output())["terms"])

    def test_invalid_truncation(self):
        self.assertEqual(self.run_cli("--truncation", "0", "green"), 3)


# ============================================================================
# CELDAS
# ============================================================================

class CellCommandTest(CliTestCase):

    def write_diagram(self, diagram):
        path = self.workdir / "celda.json"
        path.write_text(json.dumps(diagram), encoding="utf-8")
        return str(path)

    def test_cell_json(self):
        diagram = {"t01": 3, "t00": 2, "down": [0, 0, 1], "t11": 1, "right": [0, 0, 0]}
        self.assertEqual(self.run_cli("cell", self.write_diagram(diagram)), 0)
        report = json.loads(self.read_output())
        self.assertEqual(report["class"], "{(1,1)}")
        self.assertEqual(report["aut_count"], 2)
        self.assertEqual(report["counit"], "0")
        self.assertEqual(report["diagram"], diagram)

    def test_degenerate_cell_text(self):
        diagram = {"t01": 2, "t00": 2, "down": [0, 1], "t11": 2, "right": [0, 1]}
        self.assertEqual(self.run_cli("--format", "text", "cell", self.write_diagram(diagram)), 0)
        self.assertEqual(self.read_output().strip(), "{(1),(1)} |aut|=2 ε=1")

    def test_length_mismatch(self):
        diagram = {"t01": 3, "t00": 2, "down": [0, 1], "t11": 1, "right": [0, 0, 0]}
        self.assertEqual(self.run_cli("cell", self.write_diagram(diagram)), 2)

    def test_not_surjective(self):
        diagram = {"t01": 2, "t00": 3, "down": [0, 1], "t11": 1, "right": [0, 0]}
        self.assertEqual(self.run_cli("cell", self.write_diagram(diagram)), 3)


# ============================================================================
# PARTICIONES
# ============================================================================

class PartitionCommandTest(CliTestCase):

    def test_commute_text(self):
        code = self.run_cli("--format", "text", "partition", "commute", "[[1,2],[3]]", "[[1,3],[2]]")
        self.assertEqual(code, 0)
        self.assertEqual(self.read_output().strip(), "false")

    def test_join_json(self):
        self.assertEqual(self.run_cli("partition", "join", "[[1,2],[3]]", "[[1,3],[2]]"), 0)
        report = json.loads(self.read_output())
        self.assertEqual(report["blocks"], [[0, 1, 2]])
        self.assertEqual(report["ground_size"], 3)

    def test_transversal(self):
        code = self.run_cli(
            "--format", "text", "partition", "transversal",
            "[[1,2,3,4]]", "[[1,2],[3,4]]", "[[1,3],[2,4]]",
        )
        self.assertEqual(code, 0)
        self.assertEqual(self.read_output().strip(), "true")

    def test_independent_empty_ground(self):
        self.assertEqual(self.run_cli("--format", "text", "partition", "independent", "[]", "[]"), 0)
        self.assertEqual(self.read_output().strip(), "true")

    def test_wrong_arity(self):
        self.assertEqual(self.run_cli("partition", "transversal", "[[1],[2]]", "[[1,2]]"), 3)

    def test_malformed_blocks(self):
        self.assertEqual(self.run_cli("partition", "meet", "[[1,2]", "[[1],[2]]"), 2)


# ============================================================================
# VERIFICACIÓN
# ============================================================================

class VerifyCommandTest(CliTestCase):

    def test_green_suite_passes(self):
        self.assertEqual(self.run_cli("--truncation", "3", "--size-bound", "2", "verify", "green"), 0)
        report = json.loads(self.read_output())
        self.assertTrue(report["passed"])
        self.assertEqual(report["suite"], "green")

    def test_text_report(self):
        code = self.run_cli("--format", "text", "--size-bound", "3", "verify", "partitions")
        self.assertEqual(code, 0)
        self.assertIn("partitions:", self.read_output().splitlines()[-1])

    def test_unknown_suite(self):
        with self.assertRaises(SystemExit) as raised:
            self.run_cli("verify", "nada")
        self.assertEqual(raised.exception.code, 2)


if __name__ == "__main__":
    unittest.main()
