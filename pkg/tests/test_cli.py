"""End-to-end command-line tests, driven in-process through ``main``."""

from __future__ import annotations

import json

import pytest

from torext.cli import main
from torext.extcalc import ext_group
from torext.extensions import classify, pushout, realize
from torext.fgabelian import Morphism, parse_group
from torext.intmat import IntMatrix
from torext.jsonio import (
    ext_element_to_json,
    extension_from_json,
    extension_to_json,
    morphism_to_json,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert err == ""
    return code, json.loads(out)


def write_extension(tmp_path, name, e):
    path = tmp_path / name
    path.write_text(json.dumps(extension_to_json(e)))
    return str(path)


@pytest.fixture
def nonzero_case(tmp_path):
    ext = ext_group(parse_group("Z/4"), parse_group("Z/6"))
    x = ext.element((1,))
    return x, write_extension(tmp_path, "e.json", realize(x))


class TestGroupCommands:
    def test_group_canonicalizes(self, capsys):
        code, out, err = run(capsys, "group", "Z/6 + Z/4")
        assert (code, err) == (0, "")
        assert out.strip() == "Z/2 + Z/12"

    def test_group_json_payload(self, capsys):
        code, blob = run_json(capsys, "group", "Z^2 + Z/2")
        assert code == 0
        assert blob["group"] == {"free_rank": 2, "invariant_factors": [2]}
        assert blob["rendered"] == "Z^2 + Z/2"

    def test_hom_and_ext(self, capsys):
        assert run(capsys, "hom", "Z/4", "Z/6")[1].strip() == "Z/2"
        assert run(capsys, "ext", "Z/4", "Z/6")[1].strip() == "Z/2"
        assert run(capsys, "ext", "Z/12", "Z/8")[1].strip() == "Z/4"
        assert run(capsys, "ext", "Z/5", "Z")[1].strip() == "Z/5"

    def test_extt_reports_ambient(self, capsys):
        code, blob = run_json(capsys, "extt", "Z/4", "Z + Z/6")
        assert code == 0
        assert blob["rendered"] == "Z/2"
        assert blob["ambient_ext"] == "Z/2 + Z/4"

    def test_pext_vanishes(self, capsys):
        code, blob = run_json(capsys, "pext", "Z/9", "Z/3")
        assert code == 0
        assert blob["rendered"] == "0"
        assert "split" in blob["note"]


class TestSequence:
    def test_exact_input(self, capsys, nonzero_case):
        _, path = nonzero_case
        code, out, _ = run(capsys, "sequence", "check", path)
        assert code == 0
        assert "exact: yes" in out
        assert "t-extension: yes" in out
        assert "splits: no" in out
        assert "class: [1]" in out

    def test_non_exact_input_reports_instead_of_failing(self, capsys, tmp_path):
        z2 = {"free_rank": 0, "invariant_factors": [2]}
        ident = {"domain": z2, "codomain": z2, "matrix": [[1]]}
        blob = {"A": z2, "B": z2, "C": z2, "phi": ident, "psi": ident}
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(blob))
        code, out, err = run(capsys, "sequence", "check", str(path))
        assert (code, err) == (0, "")
        assert out.startswith("exact: no (")


class TestClassifyRealize:
    def test_classify_recovers_coordinates(self, capsys, nonzero_case):
        x, path = nonzero_case
        code, blob = run_json(capsys, "classify", path)
        assert code == 0
        assert blob["class"]["coords"] == [1]
        assert blob["ext"] == {"free_rank": 0, "invariant_factors": [2]}

    def test_realize_from_class_file(self, capsys, tmp_path, nonzero_case):
        x, _ = nonzero_case
        path = tmp_path / "x.json"
        path.write_text(json.dumps(ext_element_to_json(x)))
        code, out, _ = run(capsys, "realize", str(path))
        assert code == 0
        assert out.strip() == "0 -> Z/6 -> Z/24 -> Z/4 -> 0"


class TestBinaryOperations:
    def test_baer_sum_cancels_inverse(self, capsys, tmp_path):
        ext = ext_group(parse_group("Z/9"), parse_group("Z/3"))
        x = ext.element((1,))
        p1 = write_extension(tmp_path, "x.json", realize(x))
        p2 = write_extension(tmp_path, "minus_x.json", realize(-x))
        out_path = tmp_path / "sum.json"
        code, out, _ = run(
            capsys, "baer-sum", p1, p2, "--format", "json", "--output", str(out_path)
        )
        assert code == 0
        assert out == ""  # --output suppresses stdout
        blob = json.loads(out_path.read_text())
        total = extension_from_json(blob["extension"])
        assert classify(total).is_zero()

    def test_pushout_matches_library(self, capsys, tmp_path, nonzero_case):
        x, path = nonzero_case
        a = parse_group("Z/6")
        mu = Morphism(a, a, IntMatrix.from_rows([[5]], 1))  # an automorphism of Z/6
        mpath = tmp_path / "mu.json"
        mpath.write_text(json.dumps(morphism_to_json(mu)))
        code, blob = run_json(capsys, "pushout", path, str(mpath))
        assert code == 0
        got = extension_from_json(blob["extension"])
        expected = pushout(realize(x), mu)
        assert classify(got) == classify(expected)

    def test_pullback_runs(self, capsys, tmp_path, nonzero_case):
        _, path = nonzero_case
        c = parse_group("Z/4")
        gamma = Morphism(c, c, IntMatrix.from_rows([[3]], 1))
        mpath = tmp_path / "gamma.json"
        mpath.write_text(json.dumps(morphism_to_json(gamma)))
        code, out, _ = run(capsys, "pullback", path, str(mpath))
        assert code == 0
        assert out.strip().endswith("-> Z/4 -> 0")


class TestOracle:
    def test_census_lists_both_classes(self, capsys):
        code, blob = run_json(capsys, "oracle", "census", "Z/2", "Z/2")
        assert code == 0
        rows = blob["classes"]
        assert [r["index"] for r in rows] == [0, 1]
        assert rows[0]["middle"] == "Z/2 + Z/2"
        assert rows[0]["splits"] is True
        assert rows[1]["middle"] == "Z/4"
        assert rows[1]["splits"] is False
        assert all(r["is_t"] for r in rows)

    def test_census_text_format(self, capsys):
        code, out, _ = run(capsys, "oracle", "census", "Z/2", "Z/2")
        assert code == 0
        assert out.splitlines()[0] == "2 classes"
        assert "1: Z/4 is_t=yes is_pure=no splits=no" in out


class TestDual:
    def test_dual_group(self, capsys):
        assert run(capsys, "dual", "group", "Z/12")[1].strip() == "Z/12"
        assert run(capsys, "dual", "group", "Z/2 + Z/8")[1].strip() == "Z/2 + Z/8"

    def test_dual_morphism_swaps_ends(self, capsys, tmp_path):
        f = Morphism(parse_group("Z/2"), parse_group("Z/4"), IntMatrix.from_rows([[2]], 1))
        path = tmp_path / "f.json"
        path.write_text(json.dumps(morphism_to_json(f)))
        code, blob = run_json(capsys, "dual", "morphism", str(path))
        assert code == 0
        fd = blob["morphism"]
        assert fd["domain"] == {"free_rank": 0, "invariant_factors": [4]}
        assert fd["codomain"] == {"free_rank": 0, "invariant_factors": [2]}

    def test_dual_extension_is_exact(self, capsys, tmp_path, nonzero_case):
        _, path = nonzero_case
        code, blob = run_json(capsys, "dual", "extension", path)
        assert code == 0
        e = extension_from_json(blob["extension"])  # re-validates exactness
        assert (e.A.invariant_factors, e.C.invariant_factors) == ((4,), (6,))


class TestVerify:
    ARGS = ("--trials", "10", "--max-order", "8", "--seed", "1")

    def test_single_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "baer_group_law", *self.ARGS)
        assert code == 0
        assert "baer_group_law: PASS" in out
        assert out.strip().endswith("all suites passed")

    def test_mutation_flag_flips_exit_code(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "baer_group_law", "--mutate", *self.ARGS
        )
        assert code == 1
        assert "FAIL" in out
        assert "counterexample:" in out
        assert "PROPERTY VIOLATIONS FOUND" in out

    def test_json_report(self, capsys):
        code, blob = run_json(
            capsys, "verify", "--suite", "duality_transport", *self.ARGS
        )
        assert code == 0
        assert blob["all_passed"] is True
        assert blob["reports"][0]["suite"] == "duality_transport"


class TestErrorHandling:
    def test_bad_group_expression_exits_2(self, capsys):
        code, out, err = run(capsys, "group", "Z/1")
        assert code == 2
        assert out == ""
        assert err.startswith("error:")
        assert "position" in err

    def test_missing_file_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "sequence", "check", str(tmp_path / "absent.json"))
        assert code == 2
        assert err.startswith("error:")

    def test_malformed_json_exits_2(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert run(capsys, "classify", str(path))[0] == 2

    def test_no_subcommand_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2
