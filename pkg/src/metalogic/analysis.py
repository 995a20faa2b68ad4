"""Bounded decision procedures over calculi and finitely based relations.

Everything here answers questions that are undecidable (or at least
unbounded) in general, so every answer is a three-way Verdict:

    holds          with evidence
    fails          with a concrete counterexample the caller can re-check
    inconclusive   with a report of which bound got in the way

The guiding policy: a verdict is only definitive when the bounded run
actually settles the question within the size cap. A missing formula
witnesses failure only when the enumeration saturated (nothing more will
appear under the cap); a present formula witnesses membership always
(bodies only grow). Where a check is inherently scoped to the cap, the
verdict text says so.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .engine import (
    BoundedBody,
    Bounds,
    Calculus,
    DEFAULT_BOUNDS,
    RuleJustification,
    SATURATED,
    consequence_step,
    enumerate_body,
    instantiation_pool,
    realized_axioms,
)
from .errors import BudgetExceededError, MetalogicError, RuleParameterError
from .library import TranslationMap, identity_map
from .rules import RuleSystem
from .semantics import MAX_TAUTOLOGY_ATOMS, is_tautology
from .syntax import (
    Binary,
    AND,
    Formula,
    Negation,
    Schema,
    canonical_key,
    enumerate_wffs,
    formula_atoms,
    match_schema,
    print_formula,
)

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    outcome: str
    evidence: object = None
    detail: str = ""

    @property
    def is_holds(self) -> bool:
        return self.outcome == HOLDS

    @property
    def is_fails(self) -> bool:
        return self.outcome == FAILS

    @property
    def is_inconclusive(self) -> bool:
        return self.outcome == INCONCLUSIVE

    def __bool__(self):
        raise TypeError(
            "a Verdict is three-valued; test .is_holds / .is_fails / "
            ".is_inconclusive explicitly"
        )


def holds(evidence=None, detail: str = "") -> Verdict:
    return Verdict(HOLDS, evidence, detail)


def fails(counterexample, detail: str = "") -> Verdict:
    return Verdict(FAILS, counterexample, detail)


def inconclusive(report=None, detail: str = "") -> Verdict:
    return Verdict(INCONCLUSIVE, report, detail)


# ==========================================================================
# Calculus equivalences
# ==========================================================================

COMPARISON_KINDS = ("logical", "algorithmic", "axiomatic")


def _image(formulas: Iterable[Formula], translation: TranslationMap,
           size_cap: int) -> frozenset:
    return frozenset(
        w for w in (translation.fn(f) for f in formulas)
        if w.size <= size_cap
    )


def _axioms_truncated(realized: Sequence[Formula], bounds: Bounds) -> bool:
    return len(realized) >= bounds.node_budget


def compare_calculi(kind: str, c: Calculus, d: Calculus,
                    bounds: Bounds = DEFAULT_BOUNDS,
                    translation: Optional[TranslationMap] = None) -> Verdict:
    """Bounded equivalence test.

    logical      f(body of C) versus body of D within the shared size cap
    algorithmic  logical, plus f(realized axioms of C) = realized axioms of D
    axiomatic    same alphabet; bodies equal and rule identifier sets equal

    A difference witness is definitive (fails) only when the side it is
    missing from saturated; for a non-identity translation only the forward
    direction can be witnessed, because a formula absent from the translated
    image may still be the image of a theorem beyond the size cap. holds
    requires both enumerations saturated and an empty difference.
    """
    if kind not in COMPARISON_KINDS:
        raise RuleParameterError(
            f"unknown comparison kind {kind!r}; known: {', '.join(COMPARISON_KINDS)}"
        )
    if kind == "axiomatic" and c.alphabet != d.alphabet:
        raise MetalogicError(
            "axiomatic comparison requires both calculi to share one alphabet"
        )
    if translation is None:
        if c.alphabet != d.alphabet:
            raise MetalogicError(
                "the calculi use different alphabets; a translation map is required"
            )
        translation = identity_map(c.alphabet)
    if (translation.source_alphabet != c.alphabet
            or translation.target_alphabet != d.alphabet):
        raise MetalogicError(
            f"translation {translation.identifier!r} does not map the first "
            f"calculus's language into the second's"
        )
    is_identity = translation.identifier == "identity"

    if kind == "axiomatic":
        ids_c = frozenset(c.rules.identifiers())
        ids_d = frozenset(d.rules.identifiers())
        if ids_c != ids_d:
            witness = sorted(ids_c ^ ids_d)
            return fails(
                tuple(witness),
                f"rule systems differ: {', '.join(witness)}",
            )

    if kind == "algorithmic":
        realized_c = realized_axioms(c, bounds)
        realized_d = realized_axioms(d, bounds)
        truncated = (_axioms_truncated(realized_c, bounds)
                     or _axioms_truncated(realized_d, bounds))
        image_axioms = _image(realized_c, translation, bounds.max_formula_size)
        axiom_diff = image_axioms ^ frozenset(realized_d)
        if axiom_diff:
            witness = min(axiom_diff, key=canonical_key)
            if truncated:
                return inconclusive(
                    {"undecided": sorted(map(print_formula, axiom_diff))[:10]},
                    "realized axiom streams were budget-truncated; the "
                    "difference is not definitive",
                )
            return fails(
                witness,
                f"realized axiom sets differ at {print_formula(witness)}",
            )
        if truncated:
            return inconclusive(
                {"axioms_compared": len(realized_c)},
                "realized axiom streams were budget-truncated",
            )

    body_c = enumerate_body(c, bounds)
    body_d = enumerate_body(d, bounds)
    image_c = _image(body_c.theorems, translation, bounds.max_formula_size)
    set_d = body_d.as_set()
    forward = sorted(image_c - set_d, key=canonical_key)
    backward = sorted(set_d - image_c, key=canonical_key)

    if forward and body_d.status == SATURATED:
        return fails(
            forward[0],
            f"{print_formula(forward[0])} is a translated theorem of the "
            f"first calculus but provably not of the second within the size cap",
        )
    if backward and is_identity and body_c.status == SATURATED:
        return fails(
            backward[0],
            f"{print_formula(backward[0])} is a theorem of the second "
            f"calculus but provably not of the first within the size cap",
        )
    if not forward and not backward:
        if body_c.status == SATURATED and body_d.status == SATURATED:
            return holds(
                {"theorems_compared": len(image_c),
                 "statuses": (body_c.status, body_d.status)},
                "bodies coincide within the size cap and both enumerations saturated",
            )
        return inconclusive(
            {"statuses": (body_c.status, body_d.status),
             "undecided": []},
            "no difference found, but at least one enumeration did not saturate",
        )
    undecided = [print_formula(w) for w in itertools.islice(
        itertools.chain(forward, backward), 10)]
    return inconclusive(
        {"statuses": (body_c.status, body_d.status), "undecided": undecided},
        f"{len(forward) + len(backward)} difference candidates survive, "
        f"none definitive under the run statuses",
    )


# ==========================================================================
# The property battery
# ==========================================================================

PROPERTY_NAMES = (
    "admissible",
    "consistent",
    "consistent-with",
    "complete-wrt-map",
    "complete-wrt-rules",
    "transitively-closed",
    "closed-wrt-axioms",
    "closed-wrt-rules",
    "completely-closed",
)


def _language_or_none(calculus: Calculus, bounds: Bounds):
    try:
        return enumerate_wffs(calculus.alphabet, bounds.max_formula_size,
                              limit=bounds.node_budget)
    except BudgetExceededError:
        return None


def _check_admissible(calculus, body, bounds, params) -> Verdict:
    language = _language_or_none(calculus, bounds)
    if language is None:
        return inconclusive(
            {"status": body.status},
            "the language itself exceeds the node budget at this size cap",
        )
    missing = [w for w in language if w not in body]
    if not missing:
        return fails(
            {"language_size": len(language), "cap": bounds.max_formula_size},
            "not admissible within the size cap: the body covers every "
            "well-formed formula up to the cap",
        )
    if body.status == SATURATED:
        witness = missing[0]
        return holds(
            witness,
            f"{print_formula(witness)} is outside the saturated body",
        )
    return inconclusive(
        {"status": body.status,
         "candidates": [print_formula(w) for w in missing[:5]]},
        "formulas are missing but the enumeration did not saturate",
    )


def _is_structural_contradiction(formula: Formula) -> bool:
    return (type(formula) is Binary and formula.op == AND
            and type(formula.right) is Negation
            and formula.left == formula.right.operand)


def _check_consistent(calculus, body, bounds, params) -> Verdict:
    strict = bool(params.pop("strict", False))
    constants = frozenset(calculus.alphabet.constants)
    for theorem in body.theorems:
        if _is_structural_contradiction(theorem):
            return fails(
                theorem,
                f"contradiction member {print_formula(theorem)}",
            )
        if strict and len(formula_atoms(theorem)) <= MAX_TAUTOLOGY_ATOMS:
            try:
                unsatisfiable = is_tautology(Negation(theorem), constants=constants)
            except MetalogicError:
                continue
            if unsatisfiable:
                return fails(
                    theorem,
                    f"semantically unsatisfiable member {print_formula(theorem)}",
                )
    if body.status == SATURATED:
        return holds(
            {"theorems_scanned": len(body)},
            "no contradiction pattern among the saturated theorems",
        )
    return inconclusive(
        {"status": body.status, "theorems_scanned": len(body)},
        "no contradiction found, but the enumeration did not saturate",
    )


def _check_consistent_with(calculus, body, bounds, params) -> Verdict:
    members = params.pop("members", None)
    pattern = params.pop("pattern", None)
    if (members is None) == (pattern is None):
        raise RuleParameterError(
            "consistent-with needs exactly one of: members (a formula "
            "collection) or pattern (a schema)"
        )
    if pattern is not None:
        if not isinstance(pattern, Schema):
            raise RuleParameterError("pattern must be a schema")
        hits = [t for t in body.theorems
                if match_schema(pattern, t) is not None]
    else:
        target = frozenset(members)
        hits = sorted(target & body.as_set(), key=canonical_key)
    if hits:
        return fails(
            hits[0],
            f"the body meets the forbidden set at {print_formula(hits[0])}",
        )
    if body.status == SATURATED:
        return holds(
            {"theorems_scanned": len(body)},
            "the saturated body avoids the forbidden set",
        )
    return inconclusive(
        {"status": body.status},
        "no overlap found, but the enumeration did not saturate",
    )


def _check_complete_wrt_map(calculus, body, bounds, params) -> Verdict:
    mapping = params.pop("mapping", None)
    if mapping is None:
        mapping = Negation
    language = _language_or_none(calculus, bounds)
    if language is None:
        return inconclusive(
            {"status": body.status},
            "the language itself exceeds the node budget at this size cap",
        )
    failing = [a for a in language if a not in body and mapping(a) not in body]
    if not failing:
        return holds(
            {"formulas_checked": len(language)},
            "every formula up to the cap is a theorem or has its image as one",
        )
    if body.status != SATURATED:
        return inconclusive(
            {"status": body.status,
             "candidates": [print_formula(a) for a in failing[:5]]},
            "cap-sized gaps exist but the enumeration did not saturate",
        )
    definitive = [a for a in failing
                  if mapping(a).size <= bounds.max_formula_size]
    if definitive:
        witness = definitive[0]
        return fails(
            witness,
            f"neither {print_formula(witness)} nor its image is a theorem "
            f"within the size cap",
        )
    return inconclusive(
        {"status": body.status,
         "candidates": [print_formula(a) for a in failing[:5]]},
        "all gap candidates have images beyond the size cap",
    )


def _check_complete_wrt_rules(calculus, body, bounds, params) -> Verdict:
    rules = params.pop("rules", None)
    targets = params.pop("targets", None)
    if rules is None or targets is None:
        raise RuleParameterError(
            "complete-wrt-rules needs rules (a rule system) and targets "
            "(a formula collection)"
        )
    targets = sorted(set(targets), key=canonical_key)
    layer = consequence_step(
        rules, body.theorems,
        parameter_pool=instantiation_pool(calculus, bounds),
        variables=calculus.alphabet.variables,
        node_budget=bounds.node_budget,
    )
    missing = [q for q in targets if q not in layer]
    if not missing:
        return holds(
            {"targets_checked": len(targets)},
            "every target is one rule application away from the body",
        )
    if body.status == SATURATED:
        return fails(
            missing[0],
            f"{print_formula(missing[0])} is not derivable in one step from "
            f"the saturated body",
        )
    return inconclusive(
        {"status": body.status,
         "candidates": [print_formula(q) for q in missing[:5]]},
        "targets are missing but the enumeration did not saturate",
    )


def _one_extra_pass(calculus, body, bounds) -> frozenset:
    layer = consequence_step(
        calculus.rules, body.theorems,
        parameter_pool=instantiation_pool(calculus, bounds),
        variables=calculus.alphabet.variables,
        size_cap=bounds.max_formula_size,
        node_budget=bounds.node_budget,
    )
    return frozenset(layer) - body.as_set()


def _check_transitively_closed(calculus, body, bounds, params) -> Verdict:
    if body.status != SATURATED:
        return inconclusive(
            {"status": body.status},
            "transitive closure is only decidable here once the "
            "enumeration saturates",
        )
    new = _one_extra_pass(calculus, body, bounds)
    if new:
        witness = min(new, key=canonical_key)
        return fails(
            witness,
            f"an extra pass still produces {print_formula(witness)}",
        )
    return holds(
        {"theorems": len(body)},
        "one extra full pass adds nothing within the size cap",
    )


def _check_closed_wrt_axioms(calculus, body, bounds, params) -> Verdict:
    oversize = [a for a in calculus.axioms
                if a.size > bounds.max_formula_size]
    if oversize:
        return inconclusive(
            {"oversized_axioms": [print_formula(a) for a in oversize[:5]]},
            "some declared axioms exceed the size cap, so their membership "
            "cannot be witnessed within it",
        )
    realized = realized_axioms(calculus, bounds)
    missing = [a for a in realized if a not in body]
    if missing:
        return inconclusive(
            {"status": body.status,
             "missing": [print_formula(a) for a in missing[:5]]},
            "budget truncation dropped realized axioms from the body",
        )
    if _axioms_truncated(realized, bounds):
        return inconclusive(
            {"realized": len(realized)},
            "the realized axiom stream was budget-truncated",
        )
    return holds(
        {"axioms_present": len(realized)},
        "every realized axiom is in the body",
    )


def _check_closed_wrt_rules(calculus, body, bounds, params) -> Verdict:
    used = set()
    for theorem in body.theorems:
        justification = body.justification_of(theorem)
        if isinstance(justification, RuleJustification):
            used.add(justification.rule_id)
    unused = sorted(frozenset(calculus.rules.identifiers()) - used)
    if not unused:
        return holds(
            {"rules_used": sorted(used)},
            "every rule is cited by some first derivation",
        )
    if body.status == SATURATED:
        return fails(
            unused[0],
            f"rule {unused[0]!r} is never cited by a first derivation of "
            f"the saturated body",
        )
    return inconclusive(
        {"status": body.status, "unused": unused},
        "unused rules remain, but the enumeration did not saturate",
    )


def _check_completely_closed(calculus, body, bounds, params) -> Verdict:
    parts = (
        _check_closed_wrt_axioms(calculus, body, bounds, dict(params)),
        _check_closed_wrt_rules(calculus, body, bounds, dict(params)),
        _check_transitively_closed(calculus, body, bounds, dict(params)),
    )
    names = ("closed-wrt-axioms", "closed-wrt-rules", "transitively-closed")
    for name, part in zip(names, parts):
        if part.is_fails:
            return fails(part.evidence, f"{name}: {part.detail}")
    for name, part in zip(names, parts):
        if part.is_inconclusive:
            return inconclusive(part.evidence, f"{name}: {part.detail}")
    return holds(
        {name: part.detail for name, part in zip(names, parts)},
        "closed with respect to axioms and rules, and transitively closed",
    )


_PROPERTY_CHECKS = {
    "admissible": _check_admissible,
    "consistent": _check_consistent,
    "consistent-with": _check_consistent_with,
    "complete-wrt-map": _check_complete_wrt_map,
    "complete-wrt-rules": _check_complete_wrt_rules,
    "transitively-closed": _check_transitively_closed,
    "closed-wrt-axioms": _check_closed_wrt_axioms,
    "closed-wrt-rules": _check_closed_wrt_rules,
    "completely-closed": _check_completely_closed,
}


def check_property(calculus: Calculus, property_name: str,
                   bounds: Bounds = DEFAULT_BOUNDS,
                   body: Optional[BoundedBody] = None, **params) -> Verdict:
    """Decide one Definition-style property of the calculus's bounded body.

    Parametric properties take keyword arguments: consistent-with needs
    ``members`` or ``pattern``; complete-wrt-map takes ``mapping`` (defaults
    to negation); complete-wrt-rules needs ``rules`` and ``targets``;
    consistent accepts ``strict`` for the semantic unsatisfiability mode.
    Pass a precomputed ``body`` to avoid re-enumerating.
    """
    check = _PROPERTY_CHECKS.get(property_name)
    if check is None:
        raise RuleParameterError(
            f"unknown property {property_name!r}; known: "
            f"{', '.join(PROPERTY_NAMES)}"
        )
    if body is None:
        body = enumerate_body(calculus, bounds)
    params = dict(params)
    verdict = check(calculus, body, bounds, params)
    if params:
        raise RuleParameterError(
            f"property {property_name!r} got unknown parameters: "
            f"{sorted(params)}"
        )
    return verdict


# ==========================================================================
# Finitely based relations
# ==========================================================================

def _token_text(token) -> str:
    return print_formula(token) if isinstance(token, Formula) else str(token)


def _pair_key(pair) -> tuple:
    premises, conclusion = pair
    return (len(premises), tuple(sorted(map(_token_text, premises))),
            _token_text(conclusion))


@dataclass(frozen=True)
class FiniteRelation:
    """A finite relation between finite premise sets and conclusions.

    Pairs are (frozenset of premises, conclusion); tokens are any hashable
    values (formulas or opaque strings).
    """

    carrier: frozenset
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "carrier", frozenset(self.carrier))
        normalized = frozenset(
            (frozenset(premises), conclusion)
            for premises, conclusion in self.pairs
        )
        object.__setattr__(self, "pairs", normalized)
        for premises, conclusion in normalized:
            stray = premises - self.carrier
            if stray or conclusion not in self.carrier:
                raise RuleParameterError(
                    "relation pair mentions tokens outside the carrier"
                )

    def range_tokens(self) -> frozenset:
        """Rg(R): every conclusion of some pair."""
        return frozenset(conclusion for _, conclusion in self.pairs)

    def sorted_pairs(self) -> list:
        return sorted(self.pairs, key=_pair_key)

    def __len__(self):
        return len(self.pairs)


def decompose_relation(relation: FiniteRelation) -> dict:
    """Partition into arity components: pairs with k premises land in
    component k + 1 as (x_1, ..., x_k, z) tuples with sorted premises."""
    components = {}
    for premises, conclusion in relation.sorted_pairs():
        arity = len(premises) + 1
        row = tuple(sorted(premises, key=_token_text)) + (conclusion,)
        components.setdefault(arity, set()).add(row)
    return {arity: frozenset(rows) for arity, rows in components.items()}


BOUNDEDNESS_KINDS = ("bounded", "strict", "functionally_bounded",
                     "functionally_strict")


def check_boundedness(relation: FiniteRelation, m: int, kind: str) -> Verdict:
    """Decide an m-boundedness property; always definitive (finite data).

    bounded                every pair has at most m premises
    strict                 every pair has exactly m premises
    functionally_bounded   every derivable conclusion has some pair with
                           at most m premises
    functionally_strict    the range coincides with the range of the
                           exactly-m-premise component
    """
    if kind not in BOUNDEDNESS_KINDS:
        raise RuleParameterError(
            f"unknown boundedness kind {kind!r}; known: "
            f"{', '.join(BOUNDEDNESS_KINDS)}"
        )
    if not isinstance(m, int) or m < 1:
        raise RuleParameterError(f"the bound m must be an integer >= 1, got {m!r}")
    pairs = relation.sorted_pairs()
    if kind == "bounded":
        for pair in pairs:
            if len(pair[0]) > m:
                return fails(pair, f"a pair has {len(pair[0])} premises, more than {m}")
        return holds({"pairs": len(pairs)}, f"every pair has at most {m} premises")
    if kind == "strict":
        for pair in pairs:
            if len(pair[0]) != m:
                return fails(pair, f"a pair has {len(pair[0])} premises, not exactly {m}")
        return holds({"pairs": len(pairs)}, f"every pair has exactly {m} premises")
    by_conclusion = {}
    for premises, conclusion in pairs:
        by_conclusion.setdefault(conclusion, []).append(premises)
    if kind == "functionally_bounded":
        for premises, conclusion in pairs:
            if not any(len(s) <= m for s in by_conclusion[conclusion]):
                return fails(
                    (premises, conclusion),
                    f"conclusion {_token_text(conclusion)} needs more than "
                    f"{m} premises in every pair",
                )
        return holds(
            {"conclusions": len(by_conclusion)},
            f"every conclusion is reachable with at most {m} premises",
        )
    # functionally_strict
    for premises, conclusion in pairs:
        if not any(len(s) == m for s in by_conclusion[conclusion]):
            return fails(
                (premises, conclusion),
                f"conclusion {_token_text(conclusion)} has no pair with "
                f"exactly {m} premises",
            )
    return holds(
        {"conclusions": len(by_conclusion)},
        f"the range coincides with the exactly-{m}-premise component's range",
    )


@dataclass(frozen=True)
class RelationSample:
    """A sampled inference relation plus the run status of each premise set."""

    relation: FiniteRelation
    statuses: tuple  # ((frozenset premises, status), ...) in canonical order


def relation_from_calculus(calculus: Calculus, premise_pool: Iterable[Formula],
                           max_premises: int,
                           bounds: Bounds = DEFAULT_BOUNDS) -> RelationSample:
    """Sample the inference relation over subsets of a finite premise pool.

    For every subset S of the pool with at most max_premises elements, the
    pairs (S, z) collect every theorem z of the calculus extended with S as
    extra axioms. Premises seed their own closure, so (S, s) holds for every
    s in S.
    """
    if max_premises < 0:
        raise RuleParameterError("max_premises must be >= 0")
    pool = sorted(set(premise_pool), key=canonical_key)
    pairs = set()
    statuses = []
    tokens = set(pool)
    for count in range(0, max_premises + 1):
        for subset in itertools.combinations(pool, count):
            extended = replace(
                calculus, axioms=calculus.axioms + tuple(subset)
            )
            body = enumerate_body(extended, bounds)
            premises = frozenset(subset)
            statuses.append((premises, body.status))
            for theorem in body.theorems:
                tokens.add(theorem)
                pairs.add((premises, theorem))
    return RelationSample(
        FiniteRelation(frozenset(tokens), frozenset(pairs)),
        tuple(statuses),
    )


# ==========================================================================
# Relation interchange: one record per line
# ==========================================================================

def relation_to_lines(relation: FiniteRelation) -> str:
    """Serialize as line-delimited records with sorted premise token lists.

    Tokens are serialized as text (formulas print canonically); parsing the
    text back yields a relation over string tokens.
    """
    lines = []
    for premises, conclusion in relation.sorted_pairs():
        lines.append(json.dumps(
            {"premises": sorted(map(_token_text, premises)),
             "conclusion": _token_text(conclusion)},
            sort_keys=True,
        ))
    return "\n".join(lines) + ("\n" if lines else "")


def relation_from_lines(text: str) -> FiniteRelation:
    pairs = set()
    tokens = set()
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
            premises = record["premises"]
            conclusion = record["conclusion"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise MetalogicError(
                f"bad relation record on line {line_number}: {exc}"
            ) from exc
        if (not isinstance(premises, list)
                or not all(isinstance(p, str) for p in premises)
                or not isinstance(conclusion, str)):
            raise MetalogicError(
                f"bad relation record on line {line_number}: premises must "
                f"be a list of strings and conclusion a string"
            )
        tokens.update(premises)
        tokens.add(conclusion)
        pairs.add((frozenset(premises), conclusion))
    return FiniteRelation(frozenset(tokens), frozenset(pairs))


# ==========================================================================
# Abstract calculi over arbitrary carriers
# ==========================================================================

@dataclass(frozen=True)
class AbstractCalculus:
    """A base set and a finitely based relation over an opaque carrier."""

    carrier: frozenset
    base: frozenset
    relation: FiniteRelation

    def __post_init__(self):
        object.__setattr__(self, "carrier", frozenset(self.carrier))
        object.__setattr__(self, "base", frozenset(self.base))
        if not self.base <= self.carrier:
            raise RuleParameterError("the base must be a subset of the carrier")
        if not self.relation.carrier <= self.carrier:
            raise RuleParameterError(
                "the relation's carrier must be within the calculus carrier"
            )


def apply_abstract(calculus: AbstractCalculus, closure: str = "single") -> frozenset:
    """single: T = F(A), exactly one relation application to the base.
    iterated: the least fixpoint of S -> A union F(S)."""
    if closure not in ("single", "iterated"):
        raise RuleParameterError(
            f"closure must be 'single' or 'iterated', got {closure!r}"
        )
    pairs = calculus.relation.pairs

    def step(current: frozenset) -> frozenset:
        return frozenset(
            conclusion for premises, conclusion in pairs
            if premises <= current
        )

    if closure == "single":
        return step(calculus.base)
    current = calculus.base
    while True:
        next_set = calculus.base | step(current)
        if next_set == current:
            return current
        current = next_set
