"""
Tests for the frobtwist CLI module.
"""

import json
import os
import tempfile
import unittest

from click.testing import CliRunner

from frobtwist.cli import EXIT_FALSE, EXIT_GUARD, EXIT_INPUT, EXIT_OK, cli
from frobtwist.diagram import parse_pd
from frobtwist.formats import dump_json, weight_to_json
from frobtwist.weights import TwistingWeight

TREFOIL = "X 1 5 2 4 / X 3 1 4 6 / X 5 3 6 2"

UNFORTUNATE_PINS = {
    "states": [
        {"bits": "000", "circles": [{"id": 1, "nu": 0}, {"id": 2, "nu": 0}]},
        {"bits": "100", "circles": [{"id": 1, "nu": 0}]},
        {"bits": "010", "circles": [{"id": 1, "nu": 0}]},
        {"bits": "001", "circles": [{"id": 1, "nu": 0}]},
        {"bits": "110", "circles": [{"id": 1, "nu": 1}, {"id": 2, "nu": 0}]},
        {"bits": "101", "circles": [{"id": 1, "nu": 0}, {"id": 2, "nu": 1}]},
        {"bits": "011", "circles": [{"id": 1, "nu": 0}, {"id": 3, "nu": 1}]},
    ]
}


class TestCLI(unittest.TestCase):
    """Test the frobtwist CLI commands."""

    def setUp(self):
        """Set up for each test."""
        self.runner = CliRunner()
        self.temp_dir = tempfile.TemporaryDirectory()
        self.temp_path = self.temp_dir.name

    def tearDown(self):
        """Clean up after each test."""
        self.temp_dir.cleanup()

    def write(self, name, text):
        path = os.path.join(self.temp_path, name)
        with open(path, "w") as f:
            f.write(text)
        return path

    def read_json(self, path):
        with open(path, "r") as f:
            return json.load(f)

    def test_cli_help(self):
        """Test that the CLI help command works."""
        result = self.runner.invoke(cli, ["--help"])
        self.assertEqual(result.exit_code, 0)
        self.assertIn("Twisting weights and twisted Frobenius-algebra link complexes", result.output)
        for command in ("weight", "check", "oracle", "iso", "homology"):
            self.assertIn(command, result.output)

    def test_iso_command_help(self):
        result = self.runner.invoke(cli, ["iso", "--help"])
        self.assertEqual(result.exit_code, 0)
        self.assertIn("--algebra", result.output)
        self.assertIn("--theta", result.output)
        self.assertIn("--max-crossings", result.output)

    def test_weight_command(self):
        """Test that 'weight' builds and checks a weight for a corpus entry."""
        out = os.path.join(self.temp_path, "weight.json")
        result = self.runner.invoke(cli, ["weight", "trefoil", "--out", out])
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertIn("Weight on 8 state(s): 0 violation(s)", result.output)

        document = self.read_json(out)
        self.assertEqual(len(document["states"]), 8)
        self.assertEqual(document["states"][0]["bits"], "000")

    def test_weight_then_check(self):
        out = os.path.join(self.temp_path, "weight.json")
        self.runner.invoke(cli, ["weight", "trefoil", "--out", out])
        result = self.runner.invoke(cli, ["check", "trefoil", out])
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertIn("0 violation(s)", result.output)

    def test_check_zero_weight(self):
        diagram = parse_pd(TREFOIL)
        weight_path = self.write(
            "zero.json", dump_json(weight_to_json(diagram, TwistingWeight.zero(diagram)))
        )
        report_path = os.path.join(self.temp_path, "report.json")
        result = self.runner.invoke(cli, ["check", "trefoil", weight_path, "--out", report_path])
        self.assertEqual(result.exit_code, EXIT_FALSE, result.output)
        self.assertIn("split at state 100 crossing 1", result.output)

        report = self.read_json(report_path)
        self.assertFalse(report["ok"])
        self.assertIn("split", {v["kind"] for v in report["violations"]})

    def test_check_missing_weight_file(self):
        result = self.runner.invoke(cli, ["check", "trefoil", os.path.join(self.temp_path, "none.json")])
        self.assertEqual(result.exit_code, EXIT_INPUT)

    def test_check_mismatched_weight(self):
        hopf = parse_pd("X 1 3 2 4 / X 2 4 1 3")
        weight_path = self.write("hopf.json", dump_json(weight_to_json(hopf, TwistingWeight.zero(hopf))))
        result = self.runner.invoke(cli, ["check", "trefoil", weight_path])
        self.assertEqual(result.exit_code, EXIT_INPUT)

    def test_pd_file_input(self):
        pd_path = self.write("mine.pd", "X 1 2 2 1\n")
        result = self.runner.invoke(cli, ["weight", pd_path])
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertIn("Weight on 2 state(s)", result.output)

    def test_missing_and_malformed_input(self):
        result = self.runner.invoke(cli, ["weight", "no_such_knot"])
        self.assertEqual(result.exit_code, EXIT_INPUT)

        bad = self.write("bad.pd", "X 1 1 2 2 / X 2 3 3 1\n")
        result = self.runner.invoke(cli, ["weight", bad])
        self.assertEqual(result.exit_code, EXIT_INPUT)

    def test_non_planar_input(self):
        curl = self.write("curl.pd", "X 1 2 1 2\n")
        result = self.runner.invoke(cli, ["weight", curl])
        self.assertEqual(result.exit_code, EXIT_INPUT)

    def test_crossing_guard(self):
        kinks = "\n".join(f"X {2 * k + 1} {2 * k + 2} {2 * k + 2} {2 * k + 1}" for k in range(17))
        path = self.write("many.pd", kinks + "\n")
        result = self.runner.invoke(cli, ["weight", path])
        self.assertEqual(result.exit_code, EXIT_GUARD)

        result = self.runner.invoke(cli, ["weight", "trefoil", "--max-crossings", "2"])
        self.assertEqual(result.exit_code, EXIT_GUARD)

    def test_oracle_feasible(self):
        out = os.path.join(self.temp_path, "oracle.json")
        result = self.runner.invoke(cli, ["oracle", "trefoil", "--out", out])
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertIn("feasible", result.output)
        self.assertTrue(self.read_json(out)["feasible"])

    def test_oracle_infeasible_pins(self):
        pins = self.write("pins.json", json.dumps(UNFORTUNATE_PINS))
        out = os.path.join(self.temp_path, "oracle.json")
        result = self.runner.invoke(cli, ["oracle", "trefoil", "--pins", pins, "--out", out])
        self.assertEqual(result.exit_code, EXIT_FALSE, result.output)
        self.assertIn("infeasible", result.output)
        document = self.read_json(out)
        self.assertFalse(document["feasible"])
        at_110 = [s for s in document["pins"]["states"] if s["bits"] == "110"][0]
        self.assertEqual(
            at_110["circles"],
            [{"id": 1, "nu": 1, "edges": [1, 4]}, {"id": 2, "nu": 0, "edges": [2, 3, 5, 6]}],
        )

    def test_oracle_swapped_pins(self):
        swapped = json.loads(json.dumps(UNFORTUNATE_PINS))
        swapped["states"][4]["circles"] = [{"id": 1, "nu": 0}, {"id": 2, "nu": 1}]
        pins = self.write("pins.json", json.dumps(swapped))
        result = self.runner.invoke(cli, ["oracle", "trefoil", "--pins", pins])
        self.assertEqual(result.exit_code, EXIT_OK, result.output)

    def test_oracle_guard_and_bad_pins(self):
        result = self.runner.invoke(cli, ["oracle", "granny", "--oracle-cap", "5"])
        self.assertEqual(result.exit_code, EXIT_GUARD)

        pins = self.write("pins.json", json.dumps({"states": [{"bits": "100", "circles": [{"id": 2, "nu": 0}]}]}))
        result = self.runner.invoke(cli, ["oracle", "trefoil", "--pins", pins])
        self.assertEqual(result.exit_code, EXIT_INPUT)

    def test_iso_kh(self):
        out = os.path.join(self.temp_path, "iso.json")
        dump = os.path.join(self.temp_path, "map.json")
        result = self.runner.invoke(
            cli, ["iso", "trefoil", "--algebra", "kh", "--theta", "1,1", "--out", out, "--dump", dump]
        )
        self.assertEqual(result.exit_code, EXIT_OK, result.output)

        document = self.read_json(out)
        self.assertEqual(document["ranks"], [4, 6, 12, 8])
        self.assertTrue(document["chain_map"])
        self.assertTrue(document["iso"])
        self.assertTrue(document["inverse"])
        self.assertTrue(document["homology_equal"])
        self.assertIn("maps", self.read_json(dump))

    def test_iso_lee(self):
        result = self.runner.invoke(cli, ["iso", "trefoil", "--algebra", "lee", "--theta", "0,1"])
        self.assertEqual(result.exit_code, EXIT_OK, result.output)

    def test_iso_input_errors(self):
        cases = [
            ["iso", "trefoil", "--algebra", "kh", "--theta", "0,1"],
            ["iso", "trefoil", "--algebra", "kh", "--theta", "1,1,1"],
            ["iso", "trefoil", "--algebra", "kh", "--theta", "one"],
            ["iso", "trefoil", "--algebra", "kh"],
            ["iso", "trefoil", "--theta", "1,1"],
            ["iso", "trefoil", "--algebra", "nope", "--theta", "1,1"],
        ]
        for args in cases:
            result = self.runner.invoke(cli, args)
            self.assertEqual(result.exit_code, EXIT_INPUT, args)

    def test_homology(self):
        out = os.path.join(self.temp_path, "homology.json")
        result = self.runner.invoke(cli, ["homology", "trefoil", "--algebra", "kh", "--out", out])
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertIn("H^0 = Z^", result.output)
        self.assertIn("Z/2", result.output)
        self.assertEqual([g["degree"] for g in self.read_json(out)], [0, 1, 2, 3])

    def test_homology_twisted_matches(self):
        plain = os.path.join(self.temp_path, "plain.json")
        twisted = os.path.join(self.temp_path, "twisted.json")
        self.runner.invoke(cli, ["homology", "trefoil", "--algebra", "kh", "--out", plain])
        result = self.runner.invoke(
            cli, ["homology", "trefoil", "--algebra", "kh", "--theta", "1,1", "--out", twisted]
        )
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertEqual(self.read_json(plain), self.read_json(twisted))

    def test_config_file(self):
        config = self.write("run.yaml", "max_crossings: 2\n")
        result = self.runner.invoke(cli, ["--config", config, "weight", "trefoil"])
        self.assertEqual(result.exit_code, EXIT_GUARD)

        config = self.write("iso.yaml", "algebra: kh\ntheta: [1, 1]\n")
        result = self.runner.invoke(cli, ["--config", config, "iso", "trefoil"])
        self.assertEqual(result.exit_code, EXIT_OK, result.output)

    def test_bad_config_file(self):
        config = self.write("bad.yaml", "sensors: []\n")
        result = self.runner.invoke(cli, ["--config", config, "weight", "trefoil"])
        self.assertEqual(result.exit_code, EXIT_INPUT)
        self.assertIn("loading configuration", result.output)

    def test_verbose_flag(self):
        result = self.runner.invoke(cli, ["--verbose", "weight", "kink"])
        self.assertEqual(result.exit_code, EXIT_OK, result.output)


if __name__ == "__main__":
    unittest.main()
