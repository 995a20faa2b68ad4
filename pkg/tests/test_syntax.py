"""Formula construction, parsing, printing, enumeration, schemata."""

import pytest

from metalogic import (
    AND,
    IMPLIES,
    NOT,
    OR,
    AlphabetError,
    ArityError,
    Atom,
    Binary,
    BudgetExceededError,
    Negation,
    ParseError,
    PredApp,
    Quantified,
    Schema,
    SchemaError,
    Var,
    canonical_key,
    enumerate_wffs,
    equality,
    first_order_alphabet,
    formula_atoms,
    free_variables,
    func_app,
    instantiate_schema,
    match_schema,
    parse_formula,
    print_formula,
    propositional_alphabet,
    subformulas,
    substitute_prop,
    validate_formula,
    var,
)


class TestParsePrint:
    def test_round_trip_is_identity(self, pq_alphabet):
        texts = [
            "P",
            "~P",
            "(P & Q)",
            "(P -> (Q -> P))",
            "~(P | ~Q)",
            "((P & Q) -> (Q & P))",
        ]
        for text in texts:
            formula = parse_formula(text, pq_alphabet)
            assert print_formula(formula) == text
            assert parse_formula(print_formula(formula), pq_alphabet) == formula

    def test_brackets_accepted_and_canonicalized(self, church_p1):
        formula = parse_formula("[p -> [q -> p]]", church_p1.alphabet)
        assert print_formula(formula) == "(p -> (q -> p))"

    def test_mixed_brackets_rejected(self, church_p1):
        with pytest.raises(ParseError):
            parse_formula("[p -> q)", church_p1.alphabet)

    def test_unknown_atom_rejected(self, pq_alphabet):
        with pytest.raises(ParseError):
            parse_formula("(P -> Z)", pq_alphabet)

    def test_trailing_garbage_rejected(self, pq_alphabet):
        with pytest.raises(ParseError):
            parse_formula("(P & Q) Q", pq_alphabet)

    def test_missing_connective_rejected(self, pq_alphabet):
        with pytest.raises(ParseError):
            parse_formula("(P Q)", pq_alphabet)

    def test_connective_not_in_alphabet_rejected(self):
        implies_only = propositional_alphabet(("P",), connectives=(IMPLIES,))
        with pytest.raises(ParseError):
            parse_formula("(P & P)", implies_only)

    def test_constant_parses_as_atom(self, church_p1):
        formula = parse_formula("(f -> p)", church_p1.alphabet)
        assert formula == Binary(IMPLIES, Atom("f"), Atom("p"))


class TestFormulaStructure:
    def test_size_counts_every_node(self):
        formula = Binary(AND, Negation(Atom("P")), Atom("Q"))
        assert formula.size == 4

    def test_atoms_and_subformulas(self, pq_alphabet):
        formula = parse_formula("(P -> ~(P & Q))", pq_alphabet)
        assert formula_atoms(formula) == frozenset({"P", "Q"})
        subs = subformulas(formula)
        assert parse_formula("(P & Q)", pq_alphabet) in subs
        assert formula in subs

    def test_substitute_prop(self, pq_alphabet):
        formula = parse_formula("(P -> (Q -> P))", pq_alphabet)
        result = substitute_prop(formula, "P", parse_formula("~Q", pq_alphabet))
        assert print_formula(result) == "(~Q -> (Q -> ~Q))"

    def test_equal_formulas_hash_alike(self, pq_alphabet):
        one = parse_formula("(P & ~Q)", pq_alphabet)
        two = Binary(AND, Atom("P"), Negation(Atom("Q")))
        assert one == two and hash(one) == hash(two)


class TestValidation:
    def test_validate_accepts_alphabet_formulas(self, pq_alphabet):
        validate_formula(parse_formula("(P | Q)", pq_alphabet), pq_alphabet)

    def test_validate_rejects_foreign_atom(self, pq_alphabet):
        with pytest.raises(AlphabetError):
            validate_formula(Atom("Z"), pq_alphabet)

    def test_validate_rejects_foreign_connective(self):
        implies_only = propositional_alphabet(("P",), connectives=(IMPLIES,))
        with pytest.raises(AlphabetError):
            validate_formula(Binary(AND, Atom("P"), Atom("P")), implies_only)

    def test_alphabet_rejects_duplicate_variables(self):
        with pytest.raises(AlphabetError):
            propositional_alphabet(("P", "P"))

    def test_alphabet_rejects_variable_constant_clash(self):
        with pytest.raises(AlphabetError):
            propositional_alphabet(("P",), constants=("P",))


# The closed-form counts below were worked out by hand from the grammar
# (two atoms, one unary and three binary connectives) before the
# enumerator existed, and pinned. Size n formulas: every binary split of
# n - 1 nodes across the two operands, plus a negation of any size n - 1
# formula.
KLEENE_PQ_SIZE_COUNTS = {1: 2, 2: 2, 3: 14, 4: 38, 5: 218}


class TestEnumeration:
    def test_pq_counts_by_size(self, pq_alphabet):
        formulas = enumerate_wffs(pq_alphabet, 5)
        assert len(formulas) == 274
        by_size = {}
        for f in formulas:
            by_size[f.size] = by_size.get(f.size, 0) + 1
        assert by_size == KLEENE_PQ_SIZE_COUNTS

    def test_implication_fragment_counts(self):
        alphabet = propositional_alphabet(
            ("p", "q"), connectives=(IMPLIES,), constants=("f",)
        )
        assert len(enumerate_wffs(alphabet, 5)) == 66
        assert len(enumerate_wffs(alphabet, 7)) == 471

    def test_enumeration_is_sorted_and_duplicate_free(self, pq_alphabet):
        formulas = enumerate_wffs(pq_alphabet, 4)
        assert formulas == sorted(set(formulas), key=canonical_key)

    def test_every_enumerated_formula_validates(self, pq_alphabet):
        for f in enumerate_wffs(pq_alphabet, 4):
            validate_formula(f, pq_alphabet)

    def test_limit_raises_budget_error(self, pq_alphabet):
        with pytest.raises(BudgetExceededError):
            enumerate_wffs(pq_alphabet, 5, limit=100)


class TestSchemas:
    def setup_method(self):
        self.alphabet = propositional_alphabet(
            ("P", "Q", "phi", "chi"), connectives=(NOT, AND, OR, IMPLIES)
        )
        pattern = parse_formula("(phi -> (chi -> phi))", self.alphabet)
        self.schema = Schema("k1", pattern, ("phi", "chi"))

    def test_match_positive(self, pq_alphabet):
        target = parse_formula("((P & Q) -> (~Q -> (P & Q)))", pq_alphabet)
        assignment = match_schema(self.schema, target)
        assert assignment is not None
        assert print_formula(assignment["phi"]) == "(P & Q)"
        assert print_formula(assignment["chi"]) == "~Q"

    def test_match_requires_consistent_bindings(self, pq_alphabet):
        target = parse_formula("(P -> (Q -> Q))", pq_alphabet)
        assert match_schema(self.schema, target) is None

    def test_instantiate_then_match_round_trips(self, pq_alphabet):
        assignment = {
            "phi": parse_formula("~P", pq_alphabet),
            "chi": parse_formula("(P | Q)", pq_alphabet),
        }
        instance = instantiate_schema(self.schema, assignment)
        assert match_schema(self.schema, instance) == assignment

    def test_instantiate_missing_metavariable_rejected(self):
        with pytest.raises(SchemaError):
            instantiate_schema(self.schema, {"phi": Atom("P")})

    def test_schema_rejects_unused_metavariable(self):
        pattern = parse_formula("(phi -> phi)", self.alphabet)
        with pytest.raises(SchemaError):
            Schema("bad", pattern, ("phi", "chi", "unused"))


class TestFirstOrder:
    def setup_method(self):
        self.alphabet = first_order_alphabet(
            ("x", "y"),
            functions=(("g", 1),),
            predicates=(("P", 1), ("R", 2)),
        )

    def test_parse_equality_and_predicate(self):
        formula = parse_formula("(g(x) = y)", self.alphabet)
        assert formula == equality(func_app("g", (var("x"),)), var("y"))
        assert print_formula(parse_formula("R(x, g(y))", self.alphabet)) == "R(x, g(y))"

    def test_parse_quantifier(self):
        formula = parse_formula("exists x P(x)", self.alphabet)
        assert isinstance(formula, Quantified)
        assert formula.variable == "x"
        assert print_formula(formula) == "exists x P(x)"

    def test_free_variables(self):
        formula = parse_formula("exists x R(x, y)", self.alphabet)
        assert free_variables(formula) == frozenset({"y"})

    def test_arity_enforced(self):
        with pytest.raises((ArityError, ParseError)):
            parse_formula("P(x, y)", self.alphabet)

    def test_predicate_atoms_are_not_terms(self):
        with pytest.raises(ParseError):
            parse_formula("(P(x) = y)", self.alphabet)
