"""Command-line interface: JSON reports, golden values, determinism,
and exit codes."""

import json

import pytest

from mixedsym.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr().out
    return rc, out


def run_json(capsys, *argv):
    rc, out = run(capsys, "--format", "json", *argv)
    return rc, json.loads(out)


class TestTableau:
    def test_projection_chain(self, capsys):
        rc, rep = run_json(capsys, "tableau", "--k", "2", "--l", "3",
                           "--shift", "1")
        assert rc == 0
        assert rep["projection_chain"] == "J^{2,3}→J^{1,2}→J^{0,1}"
        lines = rep["tableau"].splitlines()
        assert lines[0].count("[ ]") == 3
        assert lines[1].count("[ ]") == 2


class TestSymmetries:
    def test_known_basis_dimension(self, capsys):
        rc, rep = run_json(capsys, "symmetries", "--k", "2", "--l", "4",
                           "--shift", "1", "--method", "known")
        assert rc == 0
        assert rep["dimension"] == 11
        assert len(rep["basis"]) == 11

    def test_both_methods_agree(self, capsys):
        rc, rep = run_json(capsys, "symmetries", "--k", "2", "--l", "3",
                           "--shift", "0", "--method", "both")
        assert rc == 0
        assert rep["dimension"] == 15
        assert rep["agreements"] == {"dimension_equal": True,
                                     "span_equal": True}
        assert rep["graded_dims"]["-3"] == 2

    def test_deterministic_output(self, capsys):
        outs = []
        for _ in range(2):
            _, rep = run_json(capsys, "symmetries", "--k", "2", "--l", "3",
                              "--shift", "1", "--method", "determining")
            rep.pop("timing")
            outs.append(json.dumps(rep, sort_keys=True))
        assert outs[0] == outs[1]


class TestProlong:
    def test_tanaka_layers(self, capsys):
        rc, rep = run_json(capsys, "prolong", "--k", "2", "--l", "3",
                           "--shift", "0", "--engine", "tanaka")
        assert rc == 0
        assert rep["graded_dims"] == {"-3": 2, "-2": 2, "-1": 2, "0": 4,
                                      "1": 2, "2": 1, "3": 2}

    def test_sternberg_layers(self, capsys):
        rc, rep = run_json(capsys, "prolong", "--k", "2", "--l", "3",
                           "--shift", "0", "--engine", "sternberg")
        assert rc == 0
        assert rep["layer_dims"] == {"-1": 5, "0": 7, "1": 3}
        assert rep["dimension"] == 15

    def test_transpose_changes_invariants(self, capsys):
        _, rep = run_json(capsys, "prolong", "--k", "2", "--l", "3",
                          "--shift", "0", "--engine", "sternberg")
        _, rept = run_json(capsys, "prolong", "--k", "2", "--l", "3",
                           "--shift", "0", "--engine", "sternberg",
                           "--transpose")
        assert rep["dimension"] == rept["dimension"] == 15
        assert rep["invariants"]["killing_rank"] != \
            rept["invariants"]["killing_rank"]


class TestCompare:
    def test_certified_distinct(self, capsys):
        rc, rep = run_json(capsys, "compare", "--k", "2", "--l", "3",
                           "--shift", "0", "--against-shift", "1")
        assert rc == 0
        ag = rep["agreements"]
        assert ag["dimension_agreement"] is True
        assert ag["dimensions"] == {"determining": 15, "tanaka": 15,
                                    "sternberg": 15}
        assert ag["verdict"] == "distinct"


class TestLemmaAndFlags:
    def test_lemma_part_b(self, capsys):
        rc, rep = run_json(capsys, "lemma", "--part", "b", "--r", "3")
        assert rc == 0
        assert all(rep["agreements"].values())

    def test_flags_ranks(self, capsys):
        rc, rep = run_json(capsys, "flags", "--k", "2", "--l", "4",
                           "--f", "z3^2")
        assert rc == 0
        assert rep["ranks"] == [4, 2, 0]


class TestExitCodes:
    def test_bad_shift(self, capsys):
        assert main(["symmetries", "--k", "2", "--l", "3", "--shift", "5",
                     "--method", "determining"]) == 2

    def test_bad_orders(self, capsys):
        assert main(["tableau", "--k", "1", "--l", "3", "--shift", "0"]) == 2

    def test_bad_polynomial(self, capsys):
        assert main(["flags", "--k", "2", "--l", "4", "--f", "q9+"]) == 2

    def test_unknown_flag(self, capsys):
        assert main(["tableau", "--k", "2", "--l", "3", "--shift", "0",
                     "--bogus"]) == 2

    def test_uncovered_known_case(self, capsys):
        assert main(["symmetries", "--k", "3", "--l", "3", "--shift", "0",
                     "--method", "known"]) == 2
