"""Calculi as axiom-rule-body triads, and bounded body construction.

The body of a calculus is built in cumulative stages: stage 1 holds the
realized axioms, and every later stage adds one full pass of rule
applications over what is already present. Runs end in one of three states:

    saturated-within-size-cap   a further pass adds nothing under the size cap
    stage-cap-hit               the stage limit ended the run first
    budget-exceeded             the distinct-theorem budget ended the run first

Budget exhaustion is an explicit outcome, never a silent truncation: a body
whose status is budget-exceeded makes no completeness promise, and callers
that need monotonicity or saturation arguments must check the status.

Schemata are realized into stage 1 in one of two modes. In
substitution-rule mode each schema pattern is realized once as a concrete
axiom over the first object variables (the substitution rule then generates
instances during staging). In on-demand mode schemata are instantiated
against a finite pool of formulas: every well-formed formula over the
calculus's pool variables (plus declared constants) up to the pool size
bound, merged with any extra formulas the caller supplies (derivation
search adds the goal's subformulas). Instances are emitted in ascending
instance-size order interleaved across schemata, so a budget cut keeps the
small instances of every schema rather than all instances of the first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .errors import (
    AlphabetError,
    BudgetExceededError,
    DerivationError,
    RuleParameterError,
    SchemaError,
)
from .rules import PARAM_FORMULA, PARAM_VARIABLE, InferenceRule, RuleSystem
from .syntax import (
    Alphabet,
    Atom,
    Binary,
    Formula,
    Negation,
    PROPOSITIONAL,
    Quantified,
    Schema,
    canonical_key,
    enumerate_wffs,
    formula_atoms,
    instantiate_schema,
    print_formula,
    subformulas,
    validate_formula,
)

SATURATED = "saturated-within-size-cap"
STAGE_CAP_HIT = "stage-cap-hit"
BUDGET_EXCEEDED = "budget-exceeded"

SUBSTITUTION_RULE_MODE = "substitution-rule"
ON_DEMAND_MODE = "on-demand"


@dataclass(frozen=True)
class Bounds:
    """Hard resource limits for body construction and search."""

    max_stage: int = 4
    max_formula_size: int = 25
    node_budget: int = 200000
    instantiation_pool_size: int = 7

    def __post_init__(self):
        for name in ("max_stage", "max_formula_size", "node_budget",
                     "instantiation_pool_size"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise RuleParameterError(f"bound {name} must be an integer >= 1, got {value!r}")


DEFAULT_BOUNDS = Bounds()


# ==========================================================================
# Justifications
# ==========================================================================

@dataclass(frozen=True)
class AxiomJustification:
    """The formula is a declared concrete axiom."""


@dataclass(frozen=True)
class PremiseJustification:
    """The formula was seeded as a premise of an inference-closure run."""


@dataclass(frozen=True)
class SchemaJustification:
    """The formula is an instance of an axiom schema.

    ``assignment`` is a name-sorted tuple of (metavariable, formula) pairs.
    """

    schema_id: str
    assignment: tuple

    def assignment_dict(self) -> dict:
        return dict(self.assignment)


@dataclass(frozen=True)
class RuleJustification:
    """The formula is the conclusion of a rule application.

    ``premises`` holds the premise formulas in rule order; ``context`` is a
    name-sorted tuple of (parameter, value) pairs, empty for parameter-free
    rules.
    """

    rule_id: str
    premises: tuple
    context: tuple = ()

    def context_dict(self) -> Optional[dict]:
        return dict(self.context) if self.context else None


def _context_items(context: Optional[Mapping]) -> tuple:
    if not context:
        return ()
    return tuple(sorted(context.items(), key=lambda item: item[0]))


def _value_key(value) -> str:
    return print_formula(value) if isinstance(value, Formula) else str(value)


def _justification_key(justification) -> tuple:
    """Total order on justifications; the canonical first derivation is the minimum."""
    if isinstance(justification, AxiomJustification):
        return (0,)
    if isinstance(justification, PremiseJustification):
        return (1,)
    if isinstance(justification, SchemaJustification):
        return (2, justification.schema_id,
                tuple((name, print_formula(f)) for name, f in justification.assignment))
    return (3, justification.rule_id,
            tuple(print_formula(p) for p in justification.premises),
            tuple((name, _value_key(v)) for name, v in justification.context))


def justification_premises(justification) -> tuple:
    return justification.premises if isinstance(justification, RuleJustification) else ()


# ==========================================================================
# Calculus
# ==========================================================================

def _validate_pattern(schema: Schema, alphabet: Alphabet):
    """Patterns must be wffs of the alphabet once metavariables count as atoms."""
    augmented = replace(alphabet, variables=tuple(alphabet.variables) + schema.metavariables)
    try:
        validate_formula(schema.pattern, augmented)
    except AlphabetError as exc:
        raise SchemaError(f"schema {schema.schema_id!r}: {exc}") from exc


@dataclass(frozen=True)
class Calculus:
    """An axiom system, a rule system, and (computed on demand) a body.

    ``pool_variables`` names the propositional variables the instantiation
    pool ranges over; leave it empty to make enumeration pools empty and
    derivation pools goal-directed (the goal's subformulas).
    """

    alphabet: Alphabet
    axioms: tuple = ()
    schemata: tuple = ()
    rules: RuleSystem = field(default_factory=RuleSystem)
    schema_mode: str = ON_DEMAND_MODE
    pool_variables: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "axioms", tuple(self.axioms))
        object.__setattr__(self, "schemata", tuple(self.schemata))
        object.__setattr__(self, "pool_variables", tuple(self.pool_variables))
        if self.schema_mode not in (SUBSTITUTION_RULE_MODE, ON_DEMAND_MODE):
            raise SchemaError(f"unknown schema mode: {self.schema_mode!r}")
        for axiom in self.axioms:
            validate_formula(axiom, self.alphabet)
        seen_schema_ids = set()
        for schema in self.schemata:
            if schema.schema_id in seen_schema_ids:
                raise SchemaError(f"duplicate schema id: {schema.schema_id!r}")
            seen_schema_ids.add(schema.schema_id)
            for meta in schema.metavariables:
                if meta in self.alphabet.variables or meta in self.alphabet.constants:
                    raise SchemaError(
                        f"metavariable {meta!r} collides with an object symbol"
                    )
            _validate_pattern(schema, self.alphabet)
        if (self.schema_mode == SUBSTITUTION_RULE_MODE and self.schemata
                and "substitution" not in self.rules.identifiers()):
            raise SchemaError(
                "substitution-rule schema mode requires the substitution rule"
            )
        for v in self.pool_variables:
            if v not in self.alphabet.variables:
                raise AlphabetError(f"pool variable {v!r} is not declared")
        missing = frozenset()
        for rule in self.rules:
            missing |= rule.requires_connectives - frozenset(self.alphabet.connectives)
        if missing:
            raise AlphabetError(
                f"rules need undeclared connectives: {sorted(missing)}"
            )

    def schema_by_id(self, schema_id: str) -> Schema:
        for schema in self.schemata:
            if schema.schema_id == schema_id:
                return schema
        raise SchemaError(f"no schema with id {schema_id!r}")

    def rule_by_id(self, rule_id: str) -> InferenceRule:
        for rule in self.rules:
            if rule.identifier == rule_id:
                return rule
        raise RuleParameterError(f"no rule with identifier {rule_id!r}")


@dataclass(frozen=True)
class AxiomStage:
    """One stage of a changing axiom system, with an optional rule override."""

    axioms: tuple = ()
    schemata: tuple = ()
    rules: Optional[RuleSystem] = None

    def __post_init__(self):
        object.__setattr__(self, "axioms", tuple(self.axioms))
        object.__setattr__(self, "schemata", tuple(self.schemata))


@dataclass(frozen=True)
class StagedAxioms:
    stages: tuple

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        if not self.stages:
            raise RuleParameterError("a staged axiom system needs at least one stage")


# ==========================================================================
# Instantiation pools and realized axioms
# ==========================================================================

def instantiation_pool(calculus: Calculus, bounds: Bounds,
                       extra: Iterable[Formula] = ()) -> list:
    """The finite formula universe that schema metavariables and rule
    parameters range over, in canonical order."""
    restricted = replace(calculus.alphabet, variables=calculus.pool_variables)
    pool = set(enumerate_wffs(restricted, bounds.instantiation_pool_size,
                              limit=bounds.node_budget))
    for f in extra:
        if f.size <= bounds.instantiation_pool_size:
            pool.add(f)
        else:
            pool.add(f)  # goal subformulas stay usable even when oversized
    return sorted(pool, key=canonical_key)


def _count_atom_occurrences(formula: Formula) -> dict:
    counts = {}
    stack = [formula]
    while stack:
        f = stack.pop()
        kind = type(f)
        if kind is Atom:
            counts[f.name] = counts.get(f.name, 0) + 1
        elif kind is Negation:
            stack.append(f.operand)
        elif kind is Binary:
            stack.append(f.left)
            stack.append(f.right)
        elif kind is Quantified:
            stack.append(f.body)
    return counts


_META_PRIORITY = {"phi": 0, "chi": 1, "psi": 2}


def _meta_order(schema: Schema) -> list:
    return sorted(schema.metavariables,
                  key=lambda m: (_META_PRIORITY.get(m, len(_META_PRIORITY)), m))


def positional_realization(schema: Schema, alphabet: Alphabet) -> tuple:
    """Realize a schema as one concrete axiom over the first object variables.

    Metavariables are mapped in canonical order (phi, chi, psi, then others
    alphabetically) onto the alphabet's variables in declared order, so the
    realized formulas reproduce the classical concrete axiom lists.
    """
    metas = _meta_order(schema)
    if len(metas) > len(alphabet.variables):
        raise SchemaError(
            f"schema {schema.schema_id!r} has {len(metas)} metavariables but the "
            f"alphabet declares only {len(alphabet.variables)} variables"
        )
    assignment = {m: Atom(alphabet.variables[i]) for i, m in enumerate(metas)}
    return instantiate_schema(schema, assignment), _context_items(assignment)


def _size_vectors(weights: Sequence[int], sizes: Sequence[int], budget: int) -> Iterator[tuple]:
    """All tuples (s_1..s_k) over ``sizes`` with sum(w_i * (s_i - 1)) == budget."""
    if not weights:
        if budget == 0:
            yield ()
        return
    head, rest = weights[0], weights[1:]
    for s in sizes:
        spent = head * (s - 1)
        if spent > budget:
            break
        for tail in _size_vectors(rest, sizes, budget - spent):
            yield (s,) + tail


def schema_instances(schemata: Sequence[Schema], pool: Sequence[Formula],
                     max_size: int) -> Iterator[tuple]:
    """Stream (formula, SchemaJustification) in ascending instance size.

    Instances of all schemata are interleaved so that truncating the stream
    after N items keeps the N smallest instances overall (ties broken by
    schema position, then metavariable size vector, then pool order).
    """
    pool_by_size = {}
    for f in pool:
        pool_by_size.setdefault(f.size, []).append(f)
    available_sizes = sorted(pool_by_size)
    prepared = []
    for schema in schemata:
        occurrences = _count_atom_occurrences(schema.pattern)
        metas = list(schema.metavariables)
        weights = [occurrences[m] for m in metas]
        prepared.append((schema, metas, weights))
    if not prepared:
        return
    base_min = min(schema.pattern.size for schema, _, _ in prepared)
    for target in range(base_min, max_size + 1):
        for schema, metas, weights in prepared:
            budget = target - schema.pattern.size
            if budget < 0:
                continue
            if not metas:
                if budget == 0:
                    yield schema.pattern, SchemaJustification(schema.schema_id, ())
                continue
            for vector in _size_vectors(weights, available_sizes, budget):
                buckets = [pool_by_size[s] for s in vector]
                for combo in itertools.product(*buckets):
                    assignment = dict(zip(metas, combo))
                    yield (
                        instantiate_schema(schema, assignment),
                        SchemaJustification(schema.schema_id, _context_items(assignment)),
                    )


def realized_axiom_stream(calculus: Calculus, bounds: Bounds,
                          pool: Sequence[Formula]) -> Iterator[tuple]:
    """Stage-1 content: concrete axioms, then schema realizations/instances.

    Axioms larger than the size cap are dropped here; the bounded body can
    only ever contain formulas within the cap.
    """
    for axiom in calculus.axioms:
        if axiom.size <= bounds.max_formula_size:
            yield axiom, AxiomJustification()
    if not calculus.schemata:
        return
    if calculus.schema_mode == SUBSTITUTION_RULE_MODE:
        for schema in calculus.schemata:
            formula, assignment = positional_realization(schema, calculus.alphabet)
            if formula.size <= bounds.max_formula_size:
                yield formula, SchemaJustification(schema.schema_id, assignment)
        return
    yield from schema_instances(calculus.schemata, pool, bounds.max_formula_size)


def realized_axioms(calculus: Calculus, bounds: Bounds,
                    extra_pool: Iterable[Formula] = ()) -> list:
    """The realized axiom formulas, deduplicated, in emission order."""
    pool = instantiation_pool(calculus, bounds, extra_pool)
    out = []
    seen = set()
    for formula, _ in realized_axiom_stream(calculus, bounds, pool):
        if formula not in seen:
            seen.add(formula)
            out.append(formula)
            if len(out) >= bounds.node_budget:
                break
    return out


# ==========================================================================
# Bounded bodies
# ==========================================================================

class BoundedBody:
    """The staged theorem set of one bounded run.

    ``theorems`` is canonically ordered; ``stage_sets[n-1]`` is the
    cumulative stage T_n; per-theorem first stages and justifications are
    queryable, and ``derivation_of`` reconstructs a full proof DAG.
    """

    __slots__ = ("status", "bounds", "_members", "_order", "stage_sets",
                 "theorems", "stage_count")

    def __init__(self, members: dict, order: list, stage_sets: list,
                 status: str, bounds: Bounds):
        self._members = members
        self._order = tuple(order)
        self.stage_sets = tuple(stage_sets)
        self.status = status
        self.bounds = bounds
        self.theorems = tuple(sorted(members, key=canonical_key))
        self.stage_count = len(stage_sets)

    def __contains__(self, formula) -> bool:
        return formula in self._members

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self):
        return iter(self.theorems)

    def as_set(self) -> frozenset:
        return frozenset(self._members)

    def stage_of(self, formula: Formula) -> int:
        return self._entry(formula)[0]

    def justification_of(self, formula: Formula):
        return self._entry(formula)[1]

    def _entry(self, formula: Formula) -> tuple:
        try:
            return self._members[formula]
        except KeyError:
            raise DerivationError(
                f"not in this body: {print_formula(formula)}"
            ) from None

    def new_at_stage(self, stage: int) -> tuple:
        """Formulas first derived at the given 1-based stage, canonical order."""
        return tuple(f for f in self.theorems if self._members[f][0] == stage)

    def derivation_of(self, formula: Formula) -> "Derivation":
        if formula not in self._members:
            raise DerivationError(f"not in this body: {print_formula(formula)}")
        return _build_derivation(self._members, formula)

    def __repr__(self):
        return (f"BoundedBody({len(self._members)} theorems, "
                f"{self.stage_count} stages, {self.status})")


# ==========================================================================
# Derivations
# ==========================================================================

@dataclass(frozen=True)
class DerivationNode:
    formula: Formula
    justification: object
    premise_indices: tuple
    stage: int


@dataclass(frozen=True)
class Derivation:
    """A proof DAG in topological order; the last node is the conclusion."""

    nodes: tuple

    @property
    def conclusion(self) -> Formula:
        return self.nodes[-1].formula

    def __len__(self):
        return len(self.nodes)


def _build_derivation(members: dict, goal: Formula) -> Derivation:
    index_of = {}
    nodes = []
    stack = [(goal, False)]
    while stack:
        formula, expanded = stack.pop()
        if formula in index_of:
            continue
        _, justification = members[formula]
        premises = justification_premises(justification)
        if expanded or not premises:
            indices = tuple(index_of[p] for p in premises)
            index_of[formula] = len(nodes)
            nodes.append(DerivationNode(
                formula, justification, indices, members[formula][0]
            ))
        else:
            stack.append((formula, True))
            for p in reversed(premises):
                stack.append((p, False))
    return Derivation(tuple(nodes))


def validate_derivation(derivation: Derivation, calculus: Calculus) -> None:
    """Re-check every node against the calculus; raise DerivationError if any fails."""
    axioms = set(calculus.axioms)
    for index, node in enumerate(derivation.nodes):
        j = node.justification
        for p in node.premise_indices:
            if not (0 <= p < index):
                raise DerivationError(
                    f"node {index + 1} references node {p + 1}, which does not precede it"
                )
        if isinstance(j, (AxiomJustification, PremiseJustification)):
            if isinstance(j, AxiomJustification) and node.formula not in axioms:
                raise DerivationError(
                    f"node {index + 1} claims to be an axiom but is not declared: "
                    f"{print_formula(node.formula)}"
                )
            if node.premise_indices:
                raise DerivationError(f"node {index + 1} is a leaf but lists premises")
            if node.stage != 1:
                raise DerivationError(f"node {index + 1} is a leaf but has stage {node.stage}")
        elif isinstance(j, SchemaJustification):
            schema = calculus.schema_by_id(j.schema_id)
            if instantiate_schema(schema, j.assignment_dict()) != node.formula:
                raise DerivationError(
                    f"node {index + 1} does not match schema {j.schema_id!r} "
                    f"under its recorded assignment"
                )
            if node.premise_indices:
                raise DerivationError(f"node {index + 1} is a leaf but lists premises")
            if node.stage != 1:
                raise DerivationError(f"node {index + 1} is a leaf but has stage {node.stage}")
        elif isinstance(j, RuleJustification):
            rule = calculus.rule_by_id(j.rule_id)
            premise_formulas = tuple(derivation.nodes[p].formula for p in node.premise_indices)
            if premise_formulas != j.premises:
                raise DerivationError(
                    f"node {index + 1} premise references disagree with its justification"
                )
            if node.formula not in rule.conclusions(premise_formulas, j.context_dict()):
                raise DerivationError(
                    f"node {index + 1} is not a conclusion of {j.rule_id!r} "
                    f"on its stated premises"
                )
            expected = 1 + max(derivation.nodes[p].stage for p in node.premise_indices)
            if node.stage != expected:
                raise DerivationError(
                    f"node {index + 1} has stage {node.stage}, expected {expected}"
                )
        else:
            raise DerivationError(f"node {index + 1} has an unknown justification kind")


def render_justification(justification, premise_indices: tuple = ()) -> str:
    if isinstance(justification, AxiomJustification):
        return "axiom"
    if isinstance(justification, PremiseJustification):
        return "premise"
    if isinstance(justification, SchemaJustification):
        bindings = ", ".join(f"{name}={print_formula(f)}"
                             for name, f in justification.assignment)
        return f"schema {justification.schema_id}" + (f": {bindings}" if bindings else "")
    if premise_indices:
        refs = ", ".join(str(p + 1) for p in premise_indices)
    else:
        refs = ", ".join(print_formula(p) for p in justification.premises)
    text = f"{justification.rule_id}: {refs}" if refs else justification.rule_id
    if justification.context:
        params = ", ".join(f"{name}={_value_key(v)}" for name, v in justification.context)
        text += f" with {params}"
    return text


def render_derivation(derivation: Derivation) -> str:
    """One node per line: index, formula, justification."""
    lines = []
    for index, node in enumerate(derivation.nodes):
        lines.append(
            f"{index + 1}. {print_formula(node.formula)}  "
            f"[{render_justification(node.justification, node.premise_indices)}]"
        )
    return "\n".join(lines)


# ==========================================================================
# Saturation driver
# ==========================================================================

def _rule_contexts(rule: InferenceRule, pool: Sequence[Formula],
                   variables: Sequence[str]) -> tuple:
    """Every parameter context the rule can draw from the pool, in order."""
    if not rule.parameter_kinds:
        return (None,)
    slots = []
    for name, kind in rule.parameter_kinds:
        if kind == PARAM_FORMULA:
            slots.append([(name, f) for f in pool])
        elif kind == PARAM_VARIABLE:
            slots.append([(name, v) for v in variables])
        else:
            raise RuleParameterError(
                f"rule {rule.identifier!r} declares unknown parameter kind {kind!r}"
            )
    return tuple(dict(combo) for combo in itertools.product(*slots))


class _Run:
    __slots__ = ("members", "order", "stage_sets", "status", "found")

    def __init__(self):
        self.members = {}
        self.stage_sets = []
        self.order = []
        self.status = None
        self.found = False


def _saturate(seed_stream, rules: RuleSystem, pool: Sequence[Formula],
              variables: Sequence[str], bounds: Bounds,
              stop_goal: Optional[Formula] = None) -> _Run:
    run = _Run()
    members = run.members
    order = run.order

    # Stage 1: the realized axioms (or seeded premises).
    for formula, justification in seed_stream:
        if formula in members:
            continue
        if len(members) >= bounds.node_budget:
            run.status = BUDGET_EXCEEDED
            break
        members[formula] = (1, justification)
        order.append(formula)
        if stop_goal is not None and formula == stop_goal:
            run.found = True
            break
    run.stage_sets.append(frozenset(members))
    if run.found or run.status is not None:
        return run

    contexts_by_rule = tuple(
        (rule, _rule_contexts(rule, pool, variables)) for rule in rules
    )
    members_set = set(members)
    frontier = list(order)
    stage = 1

    while True:
        # Gather the next layer before looking at the stage cap: an empty
        # layer means saturation even when this was the last allowed stage.
        candidates = {}
        candidate_keys = {}
        for rule, contexts in contexts_by_rule:
            if not contexts:
                continue
            for premises, context in rule.candidate_applications(
                    order, members_set, frontier, contexts):
                for conclusion in rule.conclusions(premises, context):
                    if conclusion.size > bounds.max_formula_size:
                        continue
                    if conclusion in members:
                        continue
                    justification = RuleJustification(
                        rule.identifier, premises, _context_items(context)
                    )
                    key = _justification_key(justification)
                    held = candidate_keys.get(conclusion)
                    if held is None or key < held:
                        candidate_keys[conclusion] = key
                        candidates[conclusion] = justification
        if not candidates:
            run.status = SATURATED
            break
        if stage >= bounds.max_stage:
            run.status = STAGE_CAP_HIT
            break
        stage += 1
        frontier = []
        for formula in sorted(candidates, key=canonical_key):
            if len(members) >= bounds.node_budget:
                run.status = BUDGET_EXCEEDED
                break
            members[formula] = (stage, candidates[formula])
            order.append(formula)
            members_set.add(formula)
            frontier.append(formula)
            if stop_goal is not None and formula == stop_goal:
                run.found = True
                break
        run.stage_sets.append(frozenset(members))
        if run.found or run.status is not None:
            break
    return run


# ==========================================================================
# The operations
# ==========================================================================

def enumerate_body(calculus: Calculus, bounds: Bounds = DEFAULT_BOUNDS,
                   extra_pool: Iterable[Formula] = ()) -> BoundedBody:
    """Build the bounded body of the calculus."""
    pool = instantiation_pool(calculus, bounds, extra_pool)
    run = _saturate(
        realized_axiom_stream(calculus, bounds, pool),
        calculus.rules, pool, calculus.alphabet.variables, bounds,
    )
    return BoundedBody(run.members, run.order, run.stage_sets, run.status, bounds)


def consequence_step(rules: RuleSystem, premises: Iterable[Formula], *,
                     parameter_pool: Optional[Iterable[Formula]] = None,
                     variables: Sequence[str] = (),
                     size_cap: Optional[int] = None,
                     node_budget: Optional[int] = None) -> frozenset:
    """One application layer: every rule on every premise tuple.

    Returns exactly the conclusions (the layer H(premises)); the premises
    themselves appear only if some rule re-derives them. Parametric rules
    draw formula parameters from ``parameter_pool``, which defaults to the
    premises themselves.
    """
    premise_list = sorted(set(premises), key=canonical_key)
    pool = (sorted(set(parameter_pool), key=canonical_key)
            if parameter_pool is not None else premise_list)
    out = set()
    for rule in rules:
        contexts = _rule_contexts(rule, pool, variables)
        if not contexts:
            continue
        for combo in itertools.product(premise_list, repeat=rule.arity):
            for context in contexts:
                for conclusion in rule.conclusions(combo, context):
                    if size_cap is not None and conclusion.size > size_cap:
                        continue
                    out.add(conclusion)
                    if node_budget is not None and len(out) > node_budget:
                        raise BudgetExceededError(
                            f"consequence step produced more than {node_budget} formulas"
                        )
    return frozenset(out)


def inference_closure(rules: RuleSystem, premises: Iterable[Formula],
                      bounds: Bounds = DEFAULT_BOUNDS, *,
                      parameter_pool: Optional[Iterable[Formula]] = None,
                      variables: Sequence[str] = ()) -> BoundedBody:
    """Iterated consequence to fixpoint or bounds, with premises seeded.

    The premises are members of the result (the closure relation contains
    its arguments) even when no rule would re-derive them.
    """
    premise_list = sorted(set(premises), key=canonical_key)
    pool = (sorted(set(parameter_pool), key=canonical_key)
            if parameter_pool is not None else premise_list)
    seeds = (
        (f, PremiseJustification())
        for f in premise_list if f.size <= bounds.max_formula_size
    )
    run = _saturate(seeds, rules, pool, variables, bounds)
    return BoundedBody(run.members, run.order, run.stage_sets, run.status, bounds)


@dataclass(frozen=True)
class DeriveOutcome:
    """Result of a goal search: a derivation, or the status that ended the run.

    When ``derivation`` is None the goal was not reached; ``status`` then
    says how definitive that is. A saturated run proves the goal underivable
    within the size cap; a stage-cap or budget stop is inconclusive.
    """

    derivation: Optional[Derivation]
    status: str
    theorems_seen: int
    stages_run: int

    @property
    def found(self) -> bool:
        return self.derivation is not None


GOAL_FOUND = "goal-found"


def derive(calculus: Calculus, goal: Formula,
           bounds: Bounds = DEFAULT_BOUNDS) -> DeriveOutcome:
    """Search for a derivation of the goal by bounded forward saturation.

    The instantiation pool is extended with the goal's subformulas, so
    schema instantiation and rule parameters stay goal-directed even when
    the calculus declares no pool variables.
    """
    validate_formula(goal, calculus.alphabet)
    pool = instantiation_pool(calculus, bounds, subformulas(goal))
    run = _saturate(
        realized_axiom_stream(calculus, bounds, pool),
        calculus.rules, pool, calculus.alphabet.variables, bounds,
        stop_goal=goal,
    )
    if run.found:
        return DeriveOutcome(
            _build_derivation(run.members, goal), GOAL_FOUND,
            len(run.members), len(run.stage_sets),
        )
    return DeriveOutcome(None, run.status, len(run.members), len(run.stage_sets))


def staged_run(calculus: Calculus, staged: StagedAxioms,
               bounds: Bounds = DEFAULT_BOUNDS) -> tuple:
    """Independent bodies for a changing axiom system.

    Each element is enumerate_body of the calculus with that stage's axioms
    (and rule override, if any); nothing carries over between stages, so a
    formula derivable at stage n may be absent at stage n + 1.
    """
    bodies = []
    for stage in staged.stages:
        stage_calculus = replace(
            calculus,
            axioms=stage.axioms,
            schemata=stage.schemata,
            rules=stage.rules if stage.rules is not None else calculus.rules,
        )
        bodies.append(enumerate_body(stage_calculus, bounds))
    return tuple(bodies)
