"""Workbench for syntactic logical calculi.

A calculus here is a triad: an alphabet fixing the object language, a set
of realized axioms (possibly given through schemata), and a system of
inference rules. Everything downstream is bounded and honest about it:
bodies of theorems are enumerated stage by stage under explicit caps, and
every question about a calculus is answered holds, fails, or inconclusive
together with the bounds that were in force.
"""

from .errors import (
    AlphabetError,
    ArityError,
    BudgetExceededError,
    CalculusFileError,
    DerivationError,
    EvaluationError,
    MetalogicError,
    ParseError,
    RuleParameterError,
    SchemaError,
    UnknownCalculusError,
    UnknownRuleError,
)
from .syntax import (
    AND,
    BINARY_CONNECTIVES,
    CONNECTIVES,
    EXISTS,
    FIRST_ORDER,
    FORALL,
    IFF,
    IMPLIES,
    NOT,
    OR,
    PROPOSITIONAL,
    QUANTIFIERS,
    Alphabet,
    Atom,
    Binary,
    Equality,
    Formula,
    FuncApp,
    LanguageDefinition,
    Negation,
    PredApp,
    Quantified,
    Schema,
    Term,
    Var,
    atom,
    biconditional,
    canonical_key,
    conjunction,
    disjunction,
    enumerate_wffs,
    equality,
    existential,
    first_order_alphabet,
    formula_atoms,
    formula_size,
    free_variables,
    fresh_variable,
    func_app,
    implication,
    instantiate_schema,
    match_schema,
    negation,
    parse_formula,
    print_formula,
    print_term,
    propositional_alphabet,
    sorted_formulas,
    subformulas,
    substitute_prop,
    substitute_term,
    term_variables,
    universal,
    validate_formula,
    validate_term,
    var,
)
from .semantics import MAX_TAUTOLOGY_ATOMS, evaluate_prop, is_tautology
from .rules import (
    CONSTRUCTING,
    PARAM_FORMULA,
    PARAM_VARIABLE,
    TRANSFORMING,
    InferenceRule,
    RuleSystem,
    Validator,
    always_true_validator,
    apply_rule,
    builtin_rule_names,
    compose,
    length_filtered,
    make_rule,
    rule_system,
    validated_mp,
)
from .engine import (
    BUDGET_EXCEEDED,
    DEFAULT_BOUNDS,
    GOAL_FOUND,
    ON_DEMAND_MODE,
    SATURATED,
    STAGE_CAP_HIT,
    SUBSTITUTION_RULE_MODE,
    AxiomJustification,
    AxiomStage,
    BoundedBody,
    Bounds,
    Calculus,
    Derivation,
    DerivationNode,
    DeriveOutcome,
    PremiseJustification,
    RuleJustification,
    SchemaJustification,
    StagedAxioms,
    consequence_step,
    derive,
    enumerate_body,
    inference_closure,
    instantiation_pool,
    justification_premises,
    positional_realization,
    realized_axiom_stream,
    realized_axioms,
    render_derivation,
    render_justification,
    schema_instances,
    staged_run,
    validate_derivation,
)
from .library import (
    TranslationMap,
    axiom_membership_validator,
    builtin_calculus,
    builtin_calculus_names,
    church_p1_calculus,
    church_p2_calculus,
    free_calculus,
    identity_map,
    kleene_calculus,
    lv_calculus,
    make_validator,
    shoenfield_fragment_calculus,
    tautology_validator,
    translate,
    translation_map,
)
from .analysis import (
    BOUNDEDNESS_KINDS,
    COMPARISON_KINDS,
    PROPERTY_NAMES,
    AbstractCalculus,
    FiniteRelation,
    RelationSample,
    Verdict,
    apply_abstract,
    check_boundedness,
    check_property,
    compare_calculi,
    decompose_relation,
    relation_from_calculus,
    relation_from_lines,
    relation_to_lines,
)
from .automaton import (
    EPSILON,
    EpsilonNFA,
    automaton_from_text,
    automaton_to_text,
    build_body_automaton,
    build_deterministic_body_automaton,
    nfa_accepts,
    nfa_language_upto,
)
from .calcfile import (
    CalculusFile,
    load_calculus_file,
    parse_calculus_data,
    read_calculus_file,
)

__version__ = "0.1.0"
