"""Definition-file parsing, builtin: shorthands, and loud failure on typos."""

import json

import pytest

from metalogic import (
    Bounds,
    CalculusFileError,
    apply_rule,
    load_calculus_file,
    parse_calculus_data,
    parse_formula,
    read_calculus_file,
)


def full_data():
    """A definition exercising every top-level section."""
    return {
        "name": "chain",
        "language": {
            "kind": "propositional",
            "variables": ["P", "Q"],
            "connectives": ["not", "or", "implies"],
        },
        "axioms": ["P", "(P -> Q)"],
        "schemata": [
            {"id": "s1", "pattern": "(phi -> (chi -> phi))",
             "metavariables": ["phi", "chi"]},
        ],
        "rules": [{"name": "modus_ponens"}],
        "schema_mode": "on-demand",
        "pool_variables": ["P", "Q"],
        "bounds": {"max_stage": 3, "max_formula_size": 9,
                   "node_budget": 400, "instantiation_pool_size": 2},
        "stages": [
            {"axioms": ["Q"], "schemata": [], "rules": None},
            {"axioms": [], "rules": [{"name": "identity"}]},
        ],
    }


def load(data):
    return parse_calculus_data(data)


class TestTopLevel:
    def test_full_definition_loads(self):
        loaded = load(full_data())
        calculus = loaded.calculus
        assert calculus.name == "chain"
        assert len(calculus.axioms) == 2
        assert [s.schema_id for s in calculus.schemata] == ["s1"]
        assert calculus.rules.identifiers() == frozenset({"modus_ponens"})
        assert calculus.pool_variables == ("P", "Q")
        assert loaded.bounds == Bounds(3, 9, 400, 2)
        assert loaded.staged is not None
        assert len(loaded.staged.stages) == 2

    def test_unknown_top_level_key_is_rejected(self):
        data = full_data()
        data["axiom"] = ["P"]
        with pytest.raises(CalculusFileError, match="unknown keys.*axiom"):
            load(data)

    def test_language_is_required(self):
        data = full_data()
        del data["language"]
        with pytest.raises(CalculusFileError, match="missing required key"):
            load(data)

    def test_non_object_data_is_rejected(self):
        with pytest.raises(CalculusFileError, match="JSON object"):
            load(["not", "an", "object"])

    def test_sections_other_than_language_are_optional(self):
        loaded = load({"language": {"variables": ["P"]}})
        assert loaded.calculus.axioms == ()
        assert loaded.bounds is None
        assert loaded.staged is None


class TestLanguage:
    def test_kind_defaults_to_propositional(self):
        calculus = load({"language": {"variables": ["P"]}}).calculus
        assert calculus.alphabet.kind == "propositional"
        assert calculus.alphabet.connectives == ("not", "and", "or", "implies")

    def test_constants_are_accepted(self):
        data = {"language": {"variables": ["p"], "constants": ["f"],
                             "connectives": ["implies"]}}
        calculus = load(data).calculus
        assert calculus.alphabet.constants == ("f",)

    def test_first_order_language(self):
        data = {"language": {
            "kind": "first-order",
            "individual_variables": ["x", "y"],
            "predicates": [["R", 2]],
            "functions": [["s", 1]],
            "quantifiers": ["exists"],
        }}
        alphabet = load(data).calculus.alphabet
        assert alphabet.kind == "first-order"
        assert ("R", 2) in alphabet.predicates
        assert ("s", 1) in alphabet.functions

    def test_propositional_rejects_first_order_keys(self):
        data = {"language": {"variables": ["P"],
                             "individual_variables": ["x"]}}
        with pytest.raises(CalculusFileError, match="needs kind 'first-order'"):
            load(data)

    def test_first_order_rejects_constants(self):
        data = {"language": {"kind": "first-order",
                             "individual_variables": ["x"],
                             "constants": ["c"]}}
        with pytest.raises(CalculusFileError, match="no constant symbols"):
            load(data)

    def test_arity_pairs_are_validated(self):
        data = {"language": {"kind": "first-order",
                             "individual_variables": ["x"],
                             "predicates": [["R", "two"]]}}
        with pytest.raises(CalculusFileError, match="name, arity"):
            load(data)

    def test_unknown_language_kind(self):
        with pytest.raises(CalculusFileError, match="kind must be"):
            load({"language": {"kind": "modal", "variables": ["P"]}})

    def test_unknown_language_key(self):
        with pytest.raises(CalculusFileError, match="language: unknown keys"):
            load({"language": {"variables": ["P"], "vars": ["Q"]}})

    def test_language_must_be_an_object(self):
        with pytest.raises(CalculusFileError, match="expected an object"):
            load({"language": "kleene"})


class TestFormulasAndSchemata:
    def test_axiom_parse_errors_carry_their_index(self):
        data = full_data()
        data["axioms"] = ["P", "(P ->"]
        with pytest.raises(CalculusFileError, match=r"axioms\[1\]"):
            load(data)

    def test_axioms_must_be_strings(self):
        data = full_data()
        data["axioms"] = [42]
        with pytest.raises(CalculusFileError, match="formula string"):
            load(data)

    def test_schema_pattern_errors_carry_their_location(self):
        data = full_data()
        data["schemata"] = [{"id": "s1", "pattern": "(phi ->",
                             "metavariables": ["phi"]}]
        with pytest.raises(CalculusFileError, match=r"schemata\[0\].pattern"):
            load(data)

    def test_schema_requires_all_three_fields(self):
        data = full_data()
        data["schemata"] = [{"id": "s1", "pattern": "phi"}]
        with pytest.raises(CalculusFileError, match="metavariables"):
            load(data)

    def test_unknown_schema_key(self):
        data = full_data()
        data["schemata"] = [{"id": "s1", "pattern": "phi",
                             "metavariables": ["phi"], "note": "hm"}]
        with pytest.raises(CalculusFileError, match=r"schemata\[0\]: unknown"):
            load(data)


class TestRules:
    def alphabet(self):
        return load(full_data()).calculus.alphabet

    def loaded_rule(self, spec):
        data = full_data()
        data["rules"] = [spec]
        rules = load(data).calculus.rules.rules
        assert len(rules) == 1
        return rules[0]

    def test_extension_takes_a_formula_parameter(self):
        rule = self.loaded_rule(
            {"name": "extension", "params": {"psi": "Q"}})
        assert rule.identifier == "extension(psi=Q)"
        p = parse_formula("P", self.alphabet())
        q = parse_formula("Q", self.alphabet())
        conclusions = apply_rule(rule, (p,))
        assert parse_formula("(P | Q)", self.alphabet()) in conclusions

    def test_length_filtered_wraps_a_nested_rule(self):
        rule = self.loaded_rule({
            "name": "length_filtered",
            "params": {"cap": 2, "rule": {"name": "modus_ponens"}},
        })
        alphabet = self.alphabet()
        p = parse_formula("P", alphabet)
        small = parse_formula("(P -> Q)", alphabet)
        big = parse_formula("(P -> (Q | Q))", alphabet)
        assert apply_rule(rule, (p, small))      # |Q| = 1 < 2
        assert not apply_rule(rule, (p, big))    # |(Q | Q)| = 3

    def test_compose_pipes_through_a_unary_second_rule(self):
        rule = self.loaded_rule({
            "name": "compose",
            "params": {"first": {"name": "modus_ponens"},
                       "second": {"name": "identity"}},
        })
        alphabet = self.alphabet()
        p = parse_formula("P", alphabet)
        pq = parse_formula("(P -> Q)", alphabet)
        assert apply_rule(rule, (p, pq)) == frozenset(
            {parse_formula("Q", alphabet)})

    def test_validated_mp_closes_over_the_file_axioms(self):
        rule = self.loaded_rule({
            "name": "validated_mp",
            "params": {"validator": "axiom-membership"},
        })
        alphabet = self.alphabet()
        p = parse_formula("P", alphabet)          # an axiom of full_data
        q = parse_formula("Q", alphabet)          # not an axiom
        p_to_q = parse_formula("(P -> Q)", alphabet)
        q_to_p = parse_formula("(Q -> P)", alphabet)
        assert apply_rule(rule, (p, p_to_q)) == frozenset({q})
        assert apply_rule(rule, (q, q_to_p)) == frozenset()

    def test_unknown_validator_name(self):
        with pytest.raises(CalculusFileError, match="unknown validator"):
            self.loaded_rule({"name": "validated_mp",
                              "params": {"validator": "oracle"}})

    def test_validator_must_be_a_name(self):
        with pytest.raises(CalculusFileError, match="validator name"):
            self.loaded_rule({"name": "validated_mp",
                              "params": {"validator": 7}})

    def test_unknown_rule_parameter(self):
        with pytest.raises(CalculusFileError, match="takes no parameter"):
            self.loaded_rule({"name": "modus_ponens",
                              "params": {"mood": "indicative"}})

    def test_cap_must_be_an_integer(self):
        with pytest.raises(CalculusFileError, match="expected an integer"):
            self.loaded_rule({
                "name": "length_filtered",
                "params": {"cap": "five", "rule": {"name": "identity"}},
            })

    def test_unknown_rule_name_carries_its_index(self):
        with pytest.raises(CalculusFileError, match=r"rules\[0\]"):
            self.loaded_rule({"name": "modus_tollens"})

    def test_params_must_be_an_object(self):
        with pytest.raises(CalculusFileError, match="params: expected"):
            self.loaded_rule({"name": "modus_ponens", "params": ["Q"]})


class TestBounds:
    def test_partial_bounds_fall_back_to_defaults(self):
        data = full_data()
        data["bounds"] = {"max_stage": 2}
        bounds = load(data).bounds
        defaults = Bounds()
        assert bounds.max_stage == 2
        assert bounds.max_formula_size == defaults.max_formula_size
        assert bounds.node_budget == defaults.node_budget
        assert bounds.instantiation_pool_size == defaults.instantiation_pool_size

    def test_invalid_bound_values_are_wrapped(self):
        data = full_data()
        data["bounds"] = {"max_stage": 0}
        with pytest.raises(CalculusFileError, match="bounds"):
            load(data)

    def test_unknown_bounds_key(self):
        data = full_data()
        data["bounds"] = {"max_depth": 4}
        with pytest.raises(CalculusFileError, match="bounds: unknown keys"):
            load(data)


class TestStages:
    def test_stage_rule_overrides(self):
        staged = load(full_data()).staged
        first, second = staged.stages
        assert first.rules is None
        assert second.rules.identifiers() == frozenset({"identity"})

    def test_stage_axioms_are_parsed(self):
        staged = load(full_data()).staged
        assert len(staged.stages[0].axioms) == 1

    def test_stage_formula_errors_carry_their_location(self):
        data = full_data()
        data["stages"] = [{"axioms": ["(Q"]}]
        with pytest.raises(CalculusFileError, match=r"stages\[0\].axioms\[0\]"):
            load(data)

    def test_unknown_stage_key(self):
        data = full_data()
        data["stages"] = [{"axioms": [], "when": "later"}]
        with pytest.raises(CalculusFileError, match=r"stages\[0\]: unknown"):
            load(data)

    def test_stages_must_be_objects(self):
        data = full_data()
        data["stages"] = ["P"]
        with pytest.raises(CalculusFileError, match=r"stages\[0\]"):
            load(data)


class TestBuiltinShorthands:
    def test_bare_builtin(self):
        loaded = read_calculus_file("builtin:kleene")
        assert loaded.calculus.name == "kleene"
        assert loaded.bounds is None
        assert loaded.staged is None

    def test_lv_with_base_and_validator(self):
        calculus = load_calculus_file("builtin:lv,kleene,always-true")
        assert calculus.name == "lv(kleene, always-true)"

    def test_lv_default_validator(self):
        calculus = load_calculus_file("builtin:lv,kleene")
        assert calculus.name == "lv(kleene, tautology)"

    def test_lv_rejects_extra_arguments(self):
        with pytest.raises(CalculusFileError, match="at most base and validator"):
            load_calculus_file("builtin:lv,kleene,tautology,more")

    def test_free_takes_a_size_cap(self):
        calculus = load_calculus_file("builtin:free,3")
        assert len(calculus.axioms) == 3

    def test_free_requires_its_cap(self):
        with pytest.raises(CalculusFileError, match="needs a size cap"):
            load_calculus_file("builtin:free")

    def test_free_cap_must_be_an_integer(self):
        with pytest.raises(CalculusFileError, match="must be an integer"):
            load_calculus_file("builtin:free,huge")

    def test_plain_builtins_take_no_arguments(self):
        with pytest.raises(CalculusFileError, match="takes no parameters"):
            load_calculus_file("builtin:kleene,extra")

    def test_unknown_builtin_name(self):
        with pytest.raises(CalculusFileError):
            load_calculus_file("builtin:hilbert")


class TestFiles:
    def test_round_trip_through_a_real_file(self, tmp_path):
        path = tmp_path / "chain.json"
        path.write_text(json.dumps(full_data()), encoding="utf-8")
        loaded = read_calculus_file(str(path))
        assert loaded.calculus.name == "chain"
        assert loaded.bounds == Bounds(3, 9, 400, 2)
        assert len(loaded.staged.stages) == 2

    def test_load_calculus_file_returns_the_calculus_alone(self, tmp_path):
        path = tmp_path / "chain.json"
        path.write_text(json.dumps(full_data()), encoding="utf-8")
        calculus = load_calculus_file(str(path))
        assert calculus.name == "chain"

    def test_invalid_json_is_reported_with_the_path(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(CalculusFileError, match="not valid JSON"):
            read_calculus_file(str(path))

    def test_missing_file_is_reported(self, tmp_path):
        with pytest.raises(CalculusFileError, match="cannot read"):
            read_calculus_file(str(tmp_path / "absent.json"))
