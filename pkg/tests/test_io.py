import json

import numpy as np
import pytest

from tailspace import io as tio
from tailspace import quadrature as Q
from tailspace.analytic import AnalyticPoly
from tailspace.hamming import BooleanFunction
from tailspace.hermite import HermiteExpansion, MonomialExpansion
from tailspace.sampling import random_analytic, random_hermite


class TestPolynomialFormat:
    @pytest.mark.parametrize("cls,basis", [
        (HermiteExpansion, "hermite"),
        (MonomialExpansion, "monomial"),
        (AnalyticPoly, "analytic"),
    ])
    def test_round_trip(self, cls, basis, tmp_path):
        poly = cls(2, {(1, 0): 1.5 - 0.25j, (0, 3): 2.0})
        path = tmp_path / "poly.json"
        tio.save_polynomial(poly, path)
        loaded = tio.load_polynomial(path)
        assert type(loaded) is cls
        assert loaded == poly
        doc = json.loads(path.read_text())
        assert doc["basis"] == basis and doc["dim"] == 2

    def test_terms_sorted_for_stability(self, tmp_path):
        poly = HermiteExpansion(1, {(5,): 1.0, (1,): 2.0, (3,): 3.0})
        doc = tio.polynomial_to_dict(poly)
        assert [t["alpha"] for t in doc["terms"]] == [[1], [3], [5]]

    def test_unknown_basis_rejected(self):
        with pytest.raises(ValueError, match="basis"):
            tio.polynomial_from_dict({"basis": "chebyshev", "dim": 1, "terms": []})


class TestBooleanFormat:
    def test_walsh_round_trip(self):
        f = BooleanFunction.from_walsh(3, {(1,): 0.5, (1, 2, 3): -0.5 + 1j})
        doc = tio.boolean_to_dict(f, "walsh")
        assert doc["form"] == "walsh"
        assert all(t["subset"] == sorted(t["subset"]) for t in doc["walsh"])
        assert tio.boolean_from_dict(doc) == f

    def test_values_round_trip(self):
        rng = np.random.default_rng(0)
        f = BooleanFunction(rng.standard_normal(8))
        doc = tio.boolean_to_dict(f, "values")
        assert tio.boolean_from_dict(doc) == f


class TestReportWriting:
    def test_empty_rows_give_header_only_csv(self):
        assert tio.write_report([], "csv", None) == "\n"

    def test_single_row_csv(self):
        doc = tio.write_report(
            [{"kind": "freud_F", "value": 1.0, "pass": True, "d": 3}], "csv", None
        )
        lines = doc.strip().split("\n")
        assert lines[0] == "kind,value,pass,d"
        assert lines[1] == "freud_F,1,true,3"

    def test_seventeen_significant_digits(self):
        doc = tio.write_report([{"x": 1 / 3}], "csv", None)
        assert "0.33333333333333331" in doc

    def test_json_array_of_flat_objects(self):
        doc = tio.write_report([{"a": 1, "b": None}], "json", None)
        assert json.loads(doc) == [{"a": 1, "b": None}]

    def test_heterogeneous_rows_rejected(self):
        with pytest.raises(ValueError, match="homogeneous"):
            tio.write_report([{"a": 1}, {"b": 2}], "csv", None)

    def test_byte_stability(self, tmp_path):
        rows = [{"kind": "x", "value": np.float64(0.1234567890123), "n": 3}]
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        tio.write_report(rows, "csv", p1)
        tio.write_report(rows, "csv", p2)
        assert p1.read_bytes() == p2.read_bytes()


class TestRuleExport:
    def test_gauss_rule_csv(self, tmp_path):
        rule = Q.build_rule("gauss_hermite", 5)
        path = tmp_path / "rule.csv"
        tio.rule_to_csv(rule, path)
        lines = path.read_text().strip().split("\n")
        assert lines[0] == "x1,weight"
        assert len(lines) == 6
        weights = [float(line.split(",")[1]) for line in lines[1:]]
        assert sum(weights) == pytest.approx(1.0, abs=1e-12)

    def test_polar_rule_csv(self, tmp_path):
        rule = Q.build_rule("polar_complex", (4, 9))
        path = tmp_path / "polar.csv"
        tio.rule_to_csv(rule, path)
        lines = path.read_text().strip().split("\n")
        assert lines[0] == "radius,angle,weight"
        assert len(lines) == 1 + 36

    def test_tensor_rule_csv(self, tmp_path):
        rule = Q.build_rule("tensor", 3, dim=2)
        path = tmp_path / "tensor.csv"
        tio.rule_to_csv(rule, path)
        lines = path.read_text().strip().split("\n")
        assert lines[0] == "x1,x2,weight"
        assert len(lines) == 1 + 9
