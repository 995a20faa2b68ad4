"""Command-line behavior: exit codes, reports, bounds flags.

Everything runs in-process through main(argv), so the tests see real exit
codes and captured stdout/stderr without spawning a shell.
"""

import json

import pytest

from metalogic.cli import main

CHAIN = {
    "name": "chain",
    "language": {"variables": ["P", "Q", "R"], "connectives": ["implies"]},
    "axioms": ["P", "(P -> Q)", "(Q -> R)"],
    "rules": [{"name": "modus_ponens"}],
}


@pytest.fixture(scope="module")
def chain_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("calc") / "chain.json"
    path.write_text(json.dumps(CHAIN), encoding="utf-8")
    return str(path)


@pytest.fixture(scope="module")
def short_file(tmp_path_factory):
    data = dict(CHAIN, name="short", axioms=["P", "(P -> Q)"])
    path = tmp_path_factory.mktemp("calc") / "short.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


@pytest.fixture(scope="module")
def staged_file(tmp_path_factory):
    data = dict(CHAIN, stages=[{"axioms": ["P"]},
                               {"axioms": ["(P -> Q)"]}])
    path = tmp_path_factory.mktemp("calc") / "staged.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestParse:
    def test_canonical_form_and_size(self, capsys, chain_file):
        assert main(["parse", "--calc", chain_file, "(P -> (Q -> R))"]) == 0
        out = capsys.readouterr().out
        assert "(P -> (Q -> R))" in out
        assert "size: 5" in out

    def test_parse_error_exits_3(self, capsys, chain_file):
        assert main(["parse", "--calc", chain_file, "(P ->"]) == 3
        assert "metalogic: error:" in capsys.readouterr().err

    def test_json_report(self, capsys, chain_file):
        assert main(["parse", "--json", "--calc", chain_file, "P"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["schema"] == "metalogic-report/1"
        assert report["command"] == "parse"
        assert report["formula"] == "P"
        assert report["timing_ms"] is None


class TestEnumLang:
    def test_kleene_language_up_to_three(self, capsys):
        assert main(["enum-lang", "--calc", "builtin:kleene",
                     "--size", "3"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("count: 36")

    def test_missing_size_is_a_usage_error(self, capsys):
        assert main(["enum-lang", "--calc", "builtin:kleene"]) == 3


class TestEnumBody:
    def test_saturating_body_exits_0(self, capsys, chain_file):
        assert main(["enum-body", "--calc", chain_file]) == 0
        out = capsys.readouterr().out
        assert "status: saturated-within-size-cap" in out
        assert "theorems: 5" in out
        assert "  R  " in out

    def test_justifications_name_rule_and_premises(self, capsys, chain_file):
        main(["enum-body", "--calc", chain_file])
        out = capsys.readouterr().out
        assert "[axiom]" in out
        assert "modus_ponens: P, (P -> Q)" in out

    def test_budget_exhaustion_exits_4(self, chain_file, capsys):
        assert main(["enum-body", "--calc", chain_file, "--budget", "1"]) == 4

    def test_stage_cap_exits_2(self, chain_file, capsys):
        assert main(["enum-body", "--calc", chain_file,
                     "--max-stage", "1"]) == 2

    def test_builtin_pool_is_goal_directed_so_body_is_empty(self, capsys):
        assert main(["enum-body", "--calc", "builtin:kleene"]) == 0
        assert "theorems: 0" in capsys.readouterr().out

    def test_pool_vars_override_fills_the_pool(self, capsys):
        assert main(["enum-body", "--calc", "builtin:kleene", "--json",
                     "--pool-vars", "P", "--max-stage", "1",
                     "--max-size", "9", "--pool-size", "3"]) in (0, 2)
        report = json.loads(capsys.readouterr().out)
        assert report["body"]["theorem_count"] > 0

    def test_unknown_pool_variable_exits_3(self, capsys):
        assert main(["enum-body", "--calc", "builtin:kleene",
                     "--pool-vars", "P,Z"]) == 3
        assert "unknown variables: Z" in capsys.readouterr().err

    def test_missing_calculus_file_exits_3(self, capsys, tmp_path):
        assert main(["enum-body", "--calc", str(tmp_path / "no.json")]) == 3
        assert "cannot read" in capsys.readouterr().err


class TestDerive:
    def test_goal_found_exits_0_with_a_proof(self, capsys, chain_file):
        assert main(["derive", "--calc", chain_file, "--goal", "R"]) == 0
        out = capsys.readouterr().out
        assert "status: goal-found" in out
        assert "modus_ponens" in out

    def test_underivable_goal_exits_1(self, capsys, chain_file):
        assert main(["derive", "--calc", chain_file,
                     "--goal", "(P -> R)"]) == 1
        assert "not derivable within the size cap" in capsys.readouterr().out

    def test_stage_cap_exits_2(self, capsys, chain_file):
        assert main(["derive", "--calc", chain_file, "--goal", "R",
                     "--max-stage", "1"]) == 2

    def test_json_derivation_is_one_indexed(self, capsys, chain_file):
        assert main(["derive", "--json", "--calc", chain_file,
                     "--goal", "Q"]) == 0
        report = json.loads(capsys.readouterr().out)
        nodes = report["derivation"]
        assert [n["index"] for n in nodes] == list(range(1, len(nodes) + 1))
        assert nodes[-1]["formula"] == "Q"
        assert all(p < n["index"] for n in nodes for p in n["premises"])

    def test_json_derivation_is_null_when_not_found(self, capsys, chain_file):
        assert main(["derive", "--json", "--calc", chain_file,
                     "--goal", "(P -> R)"]) == 1
        assert json.loads(capsys.readouterr().out)["derivation"] is None


class TestStages:
    def test_staged_run_prints_one_block_per_stage(self, capsys, staged_file):
        assert main(["stages", "--calc", staged_file]) == 0
        out = capsys.readouterr().out
        assert "stage 1:" in out
        assert "stage 2:" in out

    def test_unstaged_file_is_a_usage_error(self, capsys, chain_file):
        assert main(["stages", "--calc", chain_file]) == 3
        assert "declares no stages" in capsys.readouterr().err


class TestCompare:
    def test_identical_calculi_hold(self, capsys, chain_file):
        assert main(["compare", "--kind", "logical", "--calc-a", chain_file,
                     "--calc-b", chain_file]) == 0
        assert "verdict: holds" in capsys.readouterr().out

    def test_missing_theorems_fail(self, capsys, chain_file, short_file):
        assert main(["compare", "--kind", "logical", "--calc-a", chain_file,
                     "--calc-b", short_file]) == 1
        assert "verdict: fails" in capsys.readouterr().out

    def test_church_pair_is_inconclusive(self, capsys):
        assert main(["compare", "--kind", "logical",
                     "--calc-a", "builtin:church_p2",
                     "--calc-b", "builtin:church_p1",
                     "--map", "p2_to_p1"]) == 2
        assert "verdict: inconclusive" in capsys.readouterr().out

    def test_wrong_direction_map_exits_3(self, capsys, chain_file):
        assert main(["compare", "--kind", "logical", "--calc-a", chain_file,
                     "--calc-b", chain_file, "--map", "p2_to_p1"]) == 3
        assert "does not map" in capsys.readouterr().err


class TestCheck:
    def test_closed_wrt_axioms_holds(self, capsys, chain_file):
        assert main(["check", "--calc", chain_file,
                     "--property", "closed-wrt-axioms"]) == 0
        assert "verdict: holds" in capsys.readouterr().out

    def test_consistent_with_a_derived_member_fails(self, capsys, chain_file):
        assert main(["check", "--calc", chain_file,
                     "--property", "consistent-with",
                     "--member", "R"]) == 1

    def test_consistent_with_an_underivable_member_holds(self, capsys,
                                                         chain_file):
        assert main(["check", "--calc", chain_file,
                     "--property", "consistent-with",
                     "--member", "(R -> R)"]) == 0

    def test_pattern_spans_phi_chi_psi(self, capsys, chain_file):
        assert main(["check", "--calc", chain_file,
                     "--property", "consistent-with",
                     "--pattern", "(phi -> phi)"]) == 0

    def test_unknown_property_is_a_usage_error(self, capsys, chain_file):
        assert main(["check", "--calc", chain_file,
                     "--property", "decidable"]) == 3


class TestRelation:
    def test_sample_and_check_round_trip(self, capsys, chain_file, tmp_path):
        out_path = str(tmp_path / "rel.jsonl")
        assert main(["relation", "--calc", chain_file,
                     "--premise", "P", "--premise", "(P -> Q)",
                     "--max-premises", "2", "--out", out_path]) == 0
        assert f"written to {out_path}" in capsys.readouterr().out

        assert main(["relation-check", "--relation", out_path,
                     "--m", "2", "--kind", "bounded"]) == 0
        assert "verdict: holds" in capsys.readouterr().out

        assert main(["relation-check", "--relation", out_path,
                     "--m", "1", "--kind", "bounded"]) == 1
        assert "verdict: fails" in capsys.readouterr().out

    def test_inline_records_without_out(self, capsys, chain_file):
        assert main(["relation", "--calc", chain_file, "--premise", "P",
                     "--max-premises", "1"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("pairs: ")
        assert '"conclusion"' in out

    def test_functionally_bounded_via_the_empty_premise_set(
            self, capsys, chain_file, tmp_path):
        out_path = str(tmp_path / "rel.jsonl")
        main(["relation", "--calc", chain_file, "--premise", "P",
              "--max-premises", "1", "--out", out_path])
        capsys.readouterr()
        assert main(["relation-check", "--relation", out_path,
                     "--m", "1", "--kind", "functionally_bounded"]) == 0


class TestAutomaton:
    def test_interchange_text_by_default(self, capsys, chain_file):
        assert main(["automaton", "--calc", chain_file]) == 0
        out = capsys.readouterr().out
        assert out.startswith("states\t")
        assert "trans\tq0\teps\t" in out

    def test_accept_and_reject(self, capsys, chain_file):
        assert main(["automaton", "--calc", chain_file, "--accept", "R"]) == 0
        assert "accepted: True" in capsys.readouterr().out
        assert main(["automaton", "--calc", chain_file, "--accept", "Z"]) == 1
        assert "accepted: False" in capsys.readouterr().out

    def test_language_listing_equals_the_body(self, capsys, chain_file):
        assert main(["automaton", "--calc", chain_file, "--json",
                     "--language-upto", "8"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["language"] == ["(P -> Q)", "(Q -> R)", "P", "Q", "R"]

    def test_deterministic_variant(self, capsys, chain_file):
        assert main(["automaton", "--calc", chain_file,
                     "--deterministic", "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["deterministic"] is True
        assert "eps" not in report["automaton"]

    def test_negative_language_bound_exits_3(self, capsys, chain_file):
        assert main(["automaton", "--calc", chain_file,
                     "--language-upto", "-1"]) == 3


class TestHarness:
    def test_no_subcommand_is_a_usage_error(self, capsys):
        assert main([]) == 3

    def test_unknown_subcommand_is_a_usage_error(self, capsys):
        assert main(["transmogrify"]) == 3

    def test_help_exits_0(self, capsys):
        assert main(["--help"]) == 0
        assert "subcommand" in capsys.readouterr().out or True

    def test_machine_reports_are_byte_stable(self, capsys, chain_file):
        argv = ["enum-body", "--json", "--calc", chain_file]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_bounds_flags_override_file_bounds(self, capsys, tmp_path):
        data = dict(CHAIN, bounds={"max_stage": 1})
        path = tmp_path / "capped.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        # the file's stage cap stops the run early; the flag lifts it
        assert main(["enum-body", "--calc", str(path)]) == 2
        capsys.readouterr()
        assert main(["enum-body", "--calc", str(path),
                     "--max-stage", "4"]) == 0
