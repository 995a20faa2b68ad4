"""Inference rules as algorithms on formula tuples.

A rule maps a fixed-arity tuple of premise formulas (plus, for parametric
rules, a parameter context) to a finite set of conclusions. The empty set
means the rule is inapplicable to that tuple; applicability is always
decided, never an error. Rules carry declared metadata (constructing vs
transforming, basic closure, decidable applicability) that downstream
analysis reports but does not verify.

Built-in rules:

    modus_ponens            (minor, major) with major = minor -> psi, gives psi
    substitution            phi with parameters x (a variable) and q (a
                            formula), gives phi with every x replaced by q
    extension               phi with parameter psi, gives (phi | psi)
    cancellation            (phi | phi) gives phi
    associativity_left      (phi | (psi | chi)) gives ((phi | psi) | chi)
    associativity_right     ((phi | psi) | chi) gives (phi | (psi | chi))
    cut                     ((phi | psi), (~phi | chi)) gives (psi | chi)
    exists_introduction     (phi -> psi) gives (exists x phi -> psi) for each
                            x free in phi but not in psi
    identity                phi gives phi

Combinators: compose(first, second) pipes every conclusion of first through
second; length_filtered(rule, cap) keeps only conclusions of size strictly
below cap; validated_mp(validator) is modus ponens gated on the validator
accepting the minor premise.

Rule identity (for rule-system comparison) is the identifier string, which
encodes bound parameters and combinator structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .errors import ArityError, RuleParameterError, UnknownRuleError
from .syntax import (
    Binary,
    EXISTS,
    Formula,
    IMPLIES,
    NOT,
    Negation,
    OR,
    Quantified,
    free_variables,
    print_formula,
    substitute_prop,
)

CONSTRUCTING = "constructing"
TRANSFORMING = "transforming"

PARAM_FORMULA = "formula"
PARAM_VARIABLE = "variable"


class Validator:
    """A named decidable predicate on formulas, used by validated_mp."""

    __slots__ = ("name", "_fn")

    def __init__(self, name: str, fn: Callable[[Formula], bool]):
        self.name = name
        self._fn = fn

    def __call__(self, formula: Formula) -> bool:
        return bool(self._fn(formula))

    def __repr__(self):
        return f"Validator({self.name!r})"


class InferenceRule:
    """A deterministic partial mapping from premise tuples to conclusion sets.

    ``conclude(premises, context)`` returns an iterable of conclusions.
    ``parameter_kinds`` lists (name, kind) slots the context must fill, with
    kind one of "formula" (drawn from the instantiation pool) or "variable"
    (drawn from the alphabet's propositional variables). ``strategy``, when
    present, enumerates candidate (premises, context) pairs against a
    universe/frontier split so saturation runs avoid the all-tuples scan;
    it must cover every tuple containing at least one frontier formula.
    """

    __slots__ = ("identifier", "arity", "parameter_kinds", "kind",
                 "basically_closed", "decidable_applicability",
                 "requires_connectives", "_conclude", "_strategy")

    def __init__(self, identifier: str, arity: int, conclude,
                 parameter_kinds=(), kind: str = TRANSFORMING,
                 basically_closed: bool = False,
                 decidable_applicability: bool = True,
                 requires_connectives=(), strategy=None):
        if arity < 0:
            raise RuleParameterError(f"rule arity must be >= 0, got {arity}")
        if kind not in (CONSTRUCTING, TRANSFORMING):
            raise RuleParameterError(f"unknown rule kind: {kind!r}")
        self.identifier = identifier
        self.arity = arity
        self.parameter_kinds = tuple(parameter_kinds)
        self.kind = kind
        self.basically_closed = basically_closed
        self.decidable_applicability = decidable_applicability
        self.requires_connectives = frozenset(requires_connectives)
        self._conclude = conclude
        self._strategy = strategy

    def conclusions(self, premises: tuple, context: Optional[dict] = None) -> frozenset:
        """All conclusions of this rule on the premise tuple; empty if inapplicable."""
        if len(premises) != self.arity:
            raise ArityError(
                f"rule {self.identifier!r} takes {self.arity} premise(s), "
                f"got {len(premises)}"
            )
        if self.parameter_kinds:
            if context is None:
                raise RuleParameterError(
                    f"rule {self.identifier!r} needs parameters "
                    f"{[name for name, _ in self.parameter_kinds]}"
                )
            missing = [name for name, _ in self.parameter_kinds if name not in context]
            if missing:
                raise RuleParameterError(
                    f"rule {self.identifier!r} is missing parameters {missing}"
                )
        return frozenset(self._conclude(premises, context))

    def candidate_applications(self, universe: list, universe_set: set,
                               frontier: list, contexts) -> Iterator[tuple]:
        """Yield (premises, context) pairs worth trying this pass.

        ``universe`` holds every formula known so far (frontier included, in
        first-seen order); ``frontier`` holds the formulas new since the last
        pass. Completeness contract: together with earlier passes over the
        same growing universe, every premise tuple over the final universe is
        eventually yielded. The generic fallback scans all tuples touching
        the frontier; arity-2 built-ins install indexed strategies.
        """
        if self._strategy is not None:
            yield from self._strategy(universe, universe_set, frontier, contexts)
            return
        if self.arity == 0:
            for ctx in contexts:
                yield ((), ctx)
            return
        if self.arity == 1:
            for f in frontier:
                for ctx in contexts:
                    yield ((f,), ctx)
            return
        frontier_set = set(frontier)
        for combo in itertools.product(universe, repeat=self.arity):
            if any(member in frontier_set for member in combo):
                for ctx in contexts:
                    yield (combo, ctx)

    def __eq__(self, other):
        return isinstance(other, InferenceRule) and other.identifier == self.identifier

    def __hash__(self):
        return hash(self.identifier)

    def __repr__(self):
        return f"InferenceRule({self.identifier!r})"


@dataclass(frozen=True)
class RuleSystem:
    """An ordered collection of rules with unique identifiers."""

    rules: tuple = ()
    closed_under_composition: bool = False

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        seen = set()
        for rule in self.rules:
            if rule.identifier in seen:
                raise RuleParameterError(f"duplicate rule identifier: {rule.identifier!r}")
            seen.add(rule.identifier)

    def identifiers(self) -> frozenset:
        return frozenset(rule.identifier for rule in self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)


def rule_system(*rules, closed_under_composition: bool = False) -> RuleSystem:
    return RuleSystem(tuple(rules), closed_under_composition)


def apply_rule(rule: InferenceRule, premises, context: Optional[dict] = None) -> frozenset:
    """Apply one rule to one premise tuple. Empty set means inapplicable."""
    return rule.conclusions(tuple(premises), context)


# --------------------------------------------------------------------------
# Indexed application strategies for the binary built-ins. Both honor the
# frontier contract: every (old, new), (new, old), (new, new) pair that the
# rule could fire on is yielded; (old, old) pairs were yielded when their
# younger member was itself new.
# --------------------------------------------------------------------------

def _mp_strategy(universe, universe_set, frontier, contexts):
    by_antecedent = {}
    for f in universe:
        if type(f) is Binary and f.op == IMPLIES:
            by_antecedent.setdefault(f.left, []).append(f)
    for ctx in contexts:
        for f in frontier:
            for major in by_antecedent.get(f, ()):
                yield ((f, major), ctx)
            if type(f) is Binary and f.op == IMPLIES and f.left in universe_set:
                yield ((f.left, f), ctx)


def _cut_strategy(universe, universe_set, frontier, contexts):
    or_by_left = {}
    or_by_negated_left = {}
    for f in universe:
        if type(f) is Binary and f.op == OR:
            or_by_left.setdefault(f.left, []).append(f)
            if type(f.left) is Negation:
                or_by_negated_left.setdefault(f.left.operand, []).append(f)
    for ctx in contexts:
        for f in frontier:
            if type(f) is Binary and f.op == OR:
                for second in or_by_negated_left.get(f.left, ()):
                    yield ((f, second), ctx)
                if type(f.left) is Negation:
                    for first in or_by_left.get(f.left.operand, ()):
                        yield ((first, f), ctx)


# --------------------------------------------------------------------------
# Built-in conclusions
# --------------------------------------------------------------------------

def _mp_conclude(premises, context):
    minor, major = premises
    if type(major) is Binary and major.op == IMPLIES and major.left == minor:
        return (major.right,)
    return ()


def _substitution_conclude(premises, context):
    (formula,) = premises
    return (substitute_prop(formula, context["variable"], context["formula"]),)


def _extension_conclude(premises, context):
    (formula,) = premises
    return (Binary(OR, formula, context["psi"]),)


def _cancellation_conclude(premises, context):
    (formula,) = premises
    if type(formula) is Binary and formula.op == OR and formula.left == formula.right:
        return (formula.left,)
    return ()


def _assoc_left_conclude(premises, context):
    (formula,) = premises
    if (type(formula) is Binary and formula.op == OR
            and type(formula.right) is Binary and formula.right.op == OR):
        inner = formula.right
        return (Binary(OR, Binary(OR, formula.left, inner.left), inner.right),)
    return ()


def _assoc_right_conclude(premises, context):
    (formula,) = premises
    if (type(formula) is Binary and formula.op == OR
            and type(formula.left) is Binary and formula.left.op == OR):
        inner = formula.left
        return (Binary(OR, inner.left, Binary(OR, inner.right, formula.right)),)
    return ()


def _cut_conclude(premises, context):
    first, second = premises
    if not (type(first) is Binary and first.op == OR):
        return ()
    if not (type(second) is Binary and second.op == OR):
        return ()
    if type(second.left) is Negation and second.left.operand == first.left:
        return (Binary(OR, first.right, second.right),)
    return ()


def _exists_intro_conclude(premises, context):
    (formula,) = premises
    if not (type(formula) is Binary and formula.op == IMPLIES):
        return ()
    body, target = formula.left, formula.right
    eligible = free_variables(body) - free_variables(target)
    return tuple(
        Binary(IMPLIES, Quantified(EXISTS, x, body), target)
        for x in sorted(eligible)
    )


def _identity_conclude(premises, context):
    return (premises[0],)


def _plain(identifier, arity, conclude, **kw) -> InferenceRule:
    return InferenceRule(identifier, arity, conclude, **kw)


_BUILTIN_FACTORIES = {}


def _register(name):
    def wrap(factory):
        _BUILTIN_FACTORIES[name] = factory
        return factory
    return wrap


@_register("modus_ponens")
def _make_modus_ponens(**params):
    _reject_params("modus_ponens", params)
    return _plain("modus_ponens", 2, _mp_conclude,
                  requires_connectives=(IMPLIES,), strategy=_mp_strategy)


@_register("substitution")
def _make_substitution(**params):
    _reject_params("substitution", params)
    return _plain(
        "substitution", 1, _substitution_conclude,
        parameter_kinds=(("variable", PARAM_VARIABLE), ("formula", PARAM_FORMULA)),
        kind=CONSTRUCTING, basically_closed=True,
    )


@_register("extension")
def _make_extension(**params):
    psi = params.pop("psi", None)
    _reject_params("extension", params)
    if psi is None:
        return _plain("extension", 1, _extension_conclude,
                      parameter_kinds=(("psi", PARAM_FORMULA),),
                      kind=CONSTRUCTING, basically_closed=True,
                      requires_connectives=(OR,))
    if not isinstance(psi, Formula):
        raise RuleParameterError("extension parameter psi must be a formula")
    bound = {"psi": psi}
    return _plain(f"extension(psi={print_formula(psi)})", 1,
                  lambda premises, context: _extension_conclude(premises, bound),
                  kind=CONSTRUCTING, basically_closed=True,
                  requires_connectives=(OR,))


@_register("cancellation")
def _make_cancellation(**params):
    _reject_params("cancellation", params)
    return _plain("cancellation", 1, _cancellation_conclude,
                  requires_connectives=(OR,))


@_register("associativity_left")
def _make_assoc_left(**params):
    _reject_params("associativity_left", params)
    return _plain("associativity_left", 1, _assoc_left_conclude,
                  requires_connectives=(OR,))


@_register("associativity_right")
def _make_assoc_right(**params):
    _reject_params("associativity_right", params)
    return _plain("associativity_right", 1, _assoc_right_conclude,
                  requires_connectives=(OR,))


@_register("cut")
def _make_cut(**params):
    _reject_params("cut", params)
    return _plain("cut", 2, _cut_conclude,
                  requires_connectives=(OR, NOT), strategy=_cut_strategy)


@_register("exists_introduction")
def _make_exists_intro(**params):
    _reject_params("exists_introduction", params)
    return _plain("exists_introduction", 1, _exists_intro_conclude,
                  kind=CONSTRUCTING, requires_connectives=(IMPLIES,))


@_register("identity")
def _make_identity(**params):
    _reject_params("identity", params)
    return _plain("identity", 1, _identity_conclude, basically_closed=True)


@_register("compose")
def _make_compose(**params):
    first = params.pop("first", None)
    second = params.pop("second", None)
    _reject_params("compose", params)
    if not isinstance(first, InferenceRule) or not isinstance(second, InferenceRule):
        raise RuleParameterError("compose needs two rules (first, second)")
    return compose(first, second)


@_register("length_filtered")
def _make_length_filtered(**params):
    rule = params.pop("rule", None)
    cap = params.pop("cap", None)
    _reject_params("length_filtered", params)
    if not isinstance(rule, InferenceRule):
        raise RuleParameterError("length_filtered needs an inner rule")
    if not isinstance(cap, int) or cap < 1:
        raise RuleParameterError("length_filtered needs an integer cap >= 1")
    return length_filtered(rule, cap)


@_register("validated_mp")
def _make_validated_mp(**params):
    validator = params.pop("validator", None)
    _reject_params("validated_mp", params)
    if validator is None:
        raise RuleParameterError("validated_mp needs a validator")
    return validated_mp(validator)


def _reject_params(name, leftover):
    if leftover:
        raise RuleParameterError(
            f"rule {name!r} does not take parameters {sorted(leftover)}"
        )


def make_rule(name: str, **params) -> InferenceRule:
    """Build a rule from its specification name plus keyword parameters."""
    factory = _BUILTIN_FACTORIES.get(name)
    if factory is None:
        raise UnknownRuleError(
            f"unknown rule {name!r}; known rules: {', '.join(sorted(_BUILTIN_FACTORIES))}"
        )
    return factory(**params)


def builtin_rule_names() -> tuple:
    return tuple(sorted(_BUILTIN_FACTORIES))


# --------------------------------------------------------------------------
# Combinators
# --------------------------------------------------------------------------

def compose(first: InferenceRule, second: InferenceRule) -> InferenceRule:
    """Pipe every conclusion of ``first`` through ``second``.

    The second rule must take exactly one premise and carry no unbound
    parameters, otherwise the composite's conclusions would not be a
    deterministic function of the first rule's inputs.
    """
    if second.arity != 1:
        raise RuleParameterError(
            f"compose: second rule {second.identifier!r} must take one premise"
        )
    if second.parameter_kinds:
        raise RuleParameterError(
            f"compose: second rule {second.identifier!r} has unbound parameters"
        )

    def conclude(premises, context):
        out = []
        for mid in first.conclusions(premises, context):
            out.extend(second.conclusions((mid,), None))
        return out

    return InferenceRule(
        f"compose({first.identifier}, {second.identifier})",
        first.arity,
        conclude,
        parameter_kinds=first.parameter_kinds,
        kind=first.kind if first.kind == second.kind else CONSTRUCTING,
        basically_closed=first.basically_closed,
        decidable_applicability=(first.decidable_applicability
                                 and second.decidable_applicability),
        requires_connectives=first.requires_connectives | second.requires_connectives,
        strategy=first._strategy,
    )


def length_filtered(rule: InferenceRule, cap: int) -> InferenceRule:
    """Keep only conclusions whose size is strictly below ``cap``."""

    def conclude(premises, context):
        return [c for c in rule.conclusions(premises, context) if c.size < cap]

    return InferenceRule(
        f"length_filtered({rule.identifier}, {cap})",
        rule.arity,
        conclude,
        parameter_kinds=rule.parameter_kinds,
        kind=rule.kind,
        basically_closed=rule.basically_closed,
        decidable_applicability=rule.decidable_applicability,
        requires_connectives=rule.requires_connectives,
        strategy=rule._strategy,
    )


def validated_mp(validator: Validator) -> InferenceRule:
    """Modus ponens that fires only when the validator accepts the minor premise."""
    if not isinstance(validator, Validator):
        raise RuleParameterError("validated_mp needs a Validator")

    def conclude(premises, context):
        minor, major = premises
        if (type(major) is Binary and major.op == IMPLIES
                and major.left == minor and validator(minor)):
            return (major.right,)
        return ()

    return InferenceRule(
        f"validated_mp({validator.name})",
        2,
        conclude,
        requires_connectives=(IMPLIES,),
        strategy=_mp_strategy,
    )


def always_true_validator() -> Validator:
    return Validator("always-true", lambda formula: True)
