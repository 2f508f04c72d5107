import json
import os
import sys
import time
import unittest
from fractions import Fraction as F

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from cli.sweep import ParamRange, SweepSpec, dumps, evaluate_point, parse_range, sweep
from utils.errors import ValidationError


def spec(l1, l2, l3, predicate="eigenflag-without-LCW", workers=1):
    return SweepSpec(parse_range(l1), parse_range(l2), parse_range(l3), predicate=predicate, workers=workers)


class TestRanges(unittest.TestCase):
    """lo:hi:step parsing."""

    def test_values(self):
        r = parse_range("-1:1:1/2")
        self.assertEqual(r.values(), (F(-1), F(-1, 2), F(0), F(1, 2), F(1)))
        self.assertEqual(str(r), "-1:1:1/2")

    def test_single_value(self):
        self.assertEqual(parse_range("3").values(), (F(3),))

    def test_invalid(self):
        with self.assertRaises(ValidationError):
            parse_range("0:1:0")
        with self.assertRaises(ValidationError):
            parse_range("0:1")
        with self.assertRaises(ValidationError):
            parse_range("0:0.5:1")

    def test_empty_range(self):
        self.assertEqual(ParamRange(F(2), F(1), F(1)).values(), ())


class TestPredicates(unittest.TestCase):
    """Single grid points."""

    def test_known_counterexample(self):
        finding = evaluate_point("eigenflag-without-LCW", (F(6), F(-4), F(5)))
        self.assertEqual(finding["lambda"], ["6", "-4", "5"])
        self.assertEqual(finding["cy_diagonal"], ["-315/2", "315/2", "0"])
        self.assertEqual(finding["flags"], [["1", "1", "0"], ["1", "-1", "0"]])
        self.assertEqual([d["integrable"] for d in finding["distributions"]], [False, False])
        self.assertEqual(finding["distributions"][0]["witness_bracket"], ["-6", "4", "0"])

    def test_conformally_flat(self):
        point = (F(1), F(1), F(1))
        self.assertEqual(evaluate_point("detCY-zero", point)["cy_diagonal"], ["0", "0", "0"])
        self.assertEqual(evaluate_point("eigenflag-exists", point)["flags"], "all")
        self.assertIsNone(evaluate_point("eigenflag-without-LCW", point))

    def test_nonzero_det(self):
        for predicate in ("detCY-zero", "eigenflag-exists", "eigenflag-without-LCW"):
            self.assertIsNone(evaluate_point(predicate, (F(1), F(2), F(3))))


class TestSweep(unittest.TestCase):
    """Whole grids."""

    def test_finds_counterexample(self):
        result = sweep(spec("6", "-4", "5"))
        self.assertEqual(result["points"], 1)
        self.assertEqual(len(result["findings"]), 1)
        self.assertEqual(result["findings"][0]["index"], 0)

    def test_no_findings_off_the_locus(self):
        result = sweep(spec("1", "2", "3"))
        self.assertEqual(result["findings"], [])

    def test_indices_follow_grid_order(self):
        result = sweep(spec("0:2:1", "0:2:1", "0:2:1", predicate="detCY-zero"))
        self.assertEqual(result["points"], 27)
        indices = [f["index"] for f in result["findings"]]
        self.assertEqual(indices, sorted(indices))
        # (0, 0, 0) is abelian and flat
        self.assertEqual(result["findings"][0]["index"], 0)

    def test_worker_count_does_not_change_output(self):
        serial = dumps(sweep(spec("-2:2:1", "-2:2:1", "-2:2:1")))
        for workers in (4, 16):
            self.assertEqual(dumps(sweep(spec("-2:2:1", "-2:2:1", "-2:2:1", workers=workers))), serial)
        json.loads(serial)

    def test_throughput(self):
        """An 11³ integer grid runs at no less than 1000 points per second on one worker."""
        started = time.perf_counter()
        result = sweep(spec("-5:5:1", "-5:5:1", "-5:5:1"))
        elapsed = time.perf_counter() - started
        self.assertEqual(result["points"], 1331)
        self.assertGreaterEqual(result["points"] / elapsed, 1000)

    def test_empty_grid(self):
        with self.assertRaises(ValidationError):
            sweep(SweepSpec(ParamRange(F(2), F(1), F(1)), parse_range("0"), parse_range("0")))

    def test_spec_validation(self):
        with self.assertRaises(ValidationError):
            spec("0", "0", "0", predicate="always")
        with self.assertRaises(ValidationError):
            spec("0", "0", "0", workers=0)


if __name__ == '__main__':
    unittest.main()
