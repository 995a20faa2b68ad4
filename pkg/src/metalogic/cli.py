"""Command-line interface.

Subcommands:

    parse           parse one formula and print its canonical form
    enum-lang       enumerate well-formed formulas up to a size
    enum-body       build and print the bounded body of a calculus
    derive          search for a derivation of a goal formula
    stages          run a changing axiom system, one body per stage
    compare         bounded equivalence of two calculi
    check           decide a property of a calculus's body
    relation        sample the inference relation over premise subsets
    relation-check  boundedness properties of a relation file
    automaton       body acceptor construction and simulation

Exit codes: 0 holds/success, 1 fails/counterexample (including a goal
proven underivable and a rejected --accept word), 2 inconclusive or not
found within bounds, 3 usage or parse errors, 4 node budget exceeded.

Reports go to standard output; ``--json`` switches to a machine-readable
form with schema id "metalogic-report/1". Machine reports are byte-stable:
identical invocations produce identical bytes (the timing field is always
null for that reason). Diagnostics go to standard error.

Bounds precedence: command-line flags override calculus-file defaults,
which override the built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import Optional

from .analysis import (
    BOUNDEDNESS_KINDS,
    COMPARISON_KINDS,
    PROPERTY_NAMES,
    Verdict,
    check_boundedness,
    check_property,
    compare_calculi,
    relation_from_calculus,
    relation_from_lines,
    relation_to_lines,
)
from .automaton import (
    automaton_to_text,
    build_body_automaton,
    build_deterministic_body_automaton,
    nfa_accepts,
    nfa_language_upto,
)
from .calcfile import CalculusFile, read_calculus_file
from .engine import (
    BUDGET_EXCEEDED,
    BoundedBody,
    Bounds,
    GOAL_FOUND,
    SATURATED,
    STAGE_CAP_HIT,
    derive,
    enumerate_body,
    render_derivation,
    render_justification,
    staged_run,
)
from .errors import BudgetExceededError, CalculusFileError, MetalogicError
from .library import translation_map
from .rules import RuleSystem
from .syntax import (
    Formula,
    Schema,
    enumerate_wffs,
    formula_atoms,
    parse_formula,
    print_formula,
)

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3
EXIT_BUDGET = 4

REPORT_SCHEMA = "metalogic-report/1"

_STATUS_EXIT = {
    SATURATED: EXIT_HOLDS,
    STAGE_CAP_HIT: EXIT_INCONCLUSIVE,
    BUDGET_EXCEEDED: EXIT_BUDGET,
}

_VERDICT_EXIT = {
    "holds": EXIT_HOLDS,
    "fails": EXIT_FAILS,
    "inconclusive": EXIT_INCONCLUSIVE,
}


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the documented code is 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _jsonable(value):
    if isinstance(value, Formula):
        return print_formula(value)
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted((_jsonable(item) for item in value), key=str)
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


def _emit(report: dict, as_json: bool, text_lines: list):
    if as_json:
        payload = dict(report)
        payload["schema"] = REPORT_SCHEMA
        payload["timing_ms"] = None
        print(json.dumps(_jsonable(payload), indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _bounds_payload(bounds: Bounds) -> dict:
    return {
        "max_stage": bounds.max_stage,
        "max_formula_size": bounds.max_formula_size,
        "node_budget": bounds.node_budget,
        "instantiation_pool_size": bounds.instantiation_pool_size,
    }


def _add_bounds_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--max-stage", type=int, default=None,
                        help="stage cap (default 4, or the file's value)")
    parser.add_argument("--max-size", type=int, default=None,
                        help="formula size cap (default 25)")
    parser.add_argument("--budget", type=int, default=None,
                        help="distinct-theorem budget (default 200000)")
    parser.add_argument("--pool-size", type=int, default=None,
                        help="instantiation pool size cap (default 7)")
    parser.add_argument("--pool-vars", default=None,
                        help="comma-separated variables spanning the "
                             "instantiation pool, replacing the calculus's "
                             "own pool list for this run")


def _resolve_bounds(args, file_bounds: Optional[Bounds]) -> Bounds:
    base = file_bounds if file_bounds is not None else Bounds()
    return Bounds(
        max_stage=(args.max_stage if args.max_stage is not None
                   else base.max_stage),
        max_formula_size=(args.max_size if args.max_size is not None
                          else base.max_formula_size),
        node_budget=(args.budget if args.budget is not None
                     else base.node_budget),
        instantiation_pool_size=(args.pool_size if args.pool_size is not None
                                 else base.instantiation_pool_size),
    )


def _load_calculus(args, path_attr: str = "calc"):
    """Read a calculus spec and apply the --pool-vars override if given."""
    loaded = read_calculus_file(getattr(args, path_attr))
    calculus = loaded.calculus
    pool_vars = getattr(args, "pool_vars", None)
    if pool_vars:
        names = tuple(n.strip() for n in pool_vars.split(",") if n.strip())
        unknown = [n for n in names if n not in calculus.alphabet.variables]
        if unknown:
            raise MetalogicError(
                f"--pool-vars names unknown variables: {', '.join(unknown)}"
            )
        calculus = replace(calculus, pool_variables=names)
    return loaded, calculus


def _body_payload(body: BoundedBody) -> dict:
    return {
        "status": body.status,
        "stage_count": body.stage_count,
        "theorem_count": len(body),
        "theorems": [
            {
                "formula": print_formula(theorem),
                "stage": body.stage_of(theorem),
                "justification": render_justification(
                    body.justification_of(theorem)),
            }
            for theorem in body.theorems
        ],
    }


def _body_text(body: BoundedBody) -> list:
    lines = [
        f"status: {body.status}",
        f"stages: {body.stage_count}",
        f"theorems: {len(body)}",
    ]
    for theorem in body.theorems:
        justification = render_justification(body.justification_of(theorem))
        lines.append(
            f"  {print_formula(theorem)}  [stage {body.stage_of(theorem)}]"
            f"  [{justification}]"
        )
    return lines


def _derivation_payload(derivation) -> list:
    return [
        {
            "index": index + 1,
            "formula": print_formula(node.formula),
            "stage": node.stage,
            "premises": [p + 1 for p in node.premise_indices],
            "justification": render_justification(
                node.justification, node.premise_indices),
        }
        for index, node in enumerate(derivation.nodes)
    ]


def _verdict_payload(verdict: Verdict) -> dict:
    return {
        "verdict": verdict.outcome,
        "evidence": _jsonable(verdict.evidence),
        "detail": verdict.detail,
    }


def _verdict_text(verdict: Verdict) -> list:
    lines = [f"verdict: {verdict.outcome}"]
    if verdict.detail:
        lines.append(f"detail: {verdict.detail}")
    if verdict.evidence is not None:
        lines.append(f"evidence: {json.dumps(_jsonable(verdict.evidence), sort_keys=True)}")
    return lines


# ==========================================================================
# Subcommand implementations
# ==========================================================================

def _cmd_parse(args) -> int:
    loaded = read_calculus_file(args.calc)
    formula = parse_formula(args.formula, loaded.calculus.alphabet)
    report = {
        "command": "parse",
        "formula": print_formula(formula),
        "size": formula.size,
    }
    _emit(report, args.json,
          [f"{print_formula(formula)}", f"size: {formula.size}"])
    return EXIT_HOLDS


def _cmd_enum_lang(args) -> int:
    loaded = read_calculus_file(args.calc)
    bounds = _resolve_bounds(args, loaded.bounds)
    formulas = enumerate_wffs(loaded.calculus.alphabet, args.size,
                              limit=bounds.node_budget)
    printed = [print_formula(f) for f in formulas]
    report = {
        "command": "enum-lang",
        "max_size": args.size,
        "count": len(printed),
        "formulas": printed,
    }
    _emit(report, args.json, [f"count: {len(printed)}"] + printed)
    return EXIT_HOLDS


def _cmd_enum_body(args) -> int:
    loaded, calculus = _load_calculus(args)
    bounds = _resolve_bounds(args, loaded.bounds)
    body = enumerate_body(calculus, bounds)
    report = {
        "command": "enum-body",
        "calculus": calculus.name,
        "bounds": _bounds_payload(bounds),
        "body": _body_payload(body),
    }
    _emit(report, args.json, _body_text(body))
    return _STATUS_EXIT[body.status]


def _cmd_derive(args) -> int:
    loaded, calculus = _load_calculus(args)
    bounds = _resolve_bounds(args, loaded.bounds)
    goal = parse_formula(args.goal, calculus.alphabet)
    outcome = derive(calculus, goal, bounds)
    report = {
        "command": "derive",
        "calculus": calculus.name,
        "goal": print_formula(goal),
        "bounds": _bounds_payload(bounds),
        "status": outcome.status,
        "theorems_seen": outcome.theorems_seen,
        "stages_run": outcome.stages_run,
        "derivation": (_derivation_payload(outcome.derivation)
                       if outcome.found else None),
    }
    if outcome.found:
        _emit(report, args.json,
              [f"status: {outcome.status}", render_derivation(outcome.derivation)])
        return EXIT_HOLDS
    if outcome.status == SATURATED:
        text = [f"status: {outcome.status}",
                "the goal is not derivable within the size cap"]
        _emit(report, args.json, text)
        return EXIT_FAILS
    _emit(report, args.json,
          [f"status: {outcome.status}",
           "the goal was not found within the bounds"])
    return _STATUS_EXIT[outcome.status]


def _cmd_stages(args) -> int:
    loaded, calculus = _load_calculus(args)
    if loaded.staged is None:
        raise CalculusFileError(
            f"{args.calc} declares no stages; the stages command needs a "
            f"calculus file with a \"stages\" list"
        )
    bounds = _resolve_bounds(args, loaded.bounds)
    bodies = staged_run(calculus, loaded.staged, bounds)
    report = {
        "command": "stages",
        "calculus": calculus.name,
        "bounds": _bounds_payload(bounds),
        "stages": [_body_payload(body) for body in bodies],
    }
    text = []
    for index, body in enumerate(bodies, start=1):
        text.append(f"stage {index}:")
        text.extend("  " + line for line in _body_text(body))
    _emit(report, args.json, text)
    if any(body.status == BUDGET_EXCEEDED for body in bodies):
        return EXIT_BUDGET
    return EXIT_HOLDS


def _cmd_compare(args) -> int:
    loaded_a, calculus_a = _load_calculus(args, "calc_a")
    loaded_b, calculus_b = _load_calculus(args, "calc_b")
    bounds = _resolve_bounds(args, loaded_a.bounds or loaded_b.bounds)
    translation = translation_map(args.map) if args.map else None
    verdict = compare_calculi(args.kind, calculus_a, calculus_b,
                              bounds, translation)
    report = {
        "command": "compare",
        "kind": args.kind,
        "calculus_a": calculus_a.name,
        "calculus_b": calculus_b.name,
        "map": args.map,
        "bounds": _bounds_payload(bounds),
    }
    report.update(_verdict_payload(verdict))
    _emit(report, args.json, _verdict_text(verdict))
    return _VERDICT_EXIT[verdict.outcome]


def _meta_schema(pattern_text: str, alphabet) -> Schema:
    metas = ("phi", "chi", "psi")
    meta_alphabet = replace(
        alphabet, variables=tuple(alphabet.variables) + metas
    )
    pattern = parse_formula(pattern_text, meta_alphabet)
    used = tuple(m for m in metas if m in formula_atoms(pattern))
    return Schema("pattern", pattern, used)


def _cmd_check(args) -> int:
    loaded, calculus = _load_calculus(args)
    bounds = _resolve_bounds(args, loaded.bounds)
    params = {}
    if args.member:
        params["members"] = [parse_formula(text, calculus.alphabet)
                             for text in args.member]
    if args.pattern:
        params["pattern"] = _meta_schema(args.pattern, calculus.alphabet)
    if args.strict:
        params["strict"] = True
    if args.target:
        params["targets"] = [parse_formula(text, calculus.alphabet)
                             for text in args.target]
    if args.rules_from:
        params["rules"] = read_calculus_file(args.rules_from).calculus.rules
    elif args.property == "complete-wrt-rules":
        params["rules"] = calculus.rules
    verdict = check_property(calculus, args.property, bounds, **params)
    report = {
        "command": "check",
        "calculus": calculus.name,
        "property": args.property,
        "bounds": _bounds_payload(bounds),
    }
    report.update(_verdict_payload(verdict))
    _emit(report, args.json, _verdict_text(verdict))
    return _VERDICT_EXIT[verdict.outcome]


def _cmd_relation(args) -> int:
    loaded, calculus = _load_calculus(args)
    bounds = _resolve_bounds(args, loaded.bounds)
    pool = [parse_formula(text, calculus.alphabet)
            for text in args.premise]
    sample = relation_from_calculus(calculus, pool,
                                    args.max_premises, bounds)
    serialized = relation_to_lines(sample.relation)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(serialized)
    statuses = [
        {"premises": sorted(print_formula(p) for p in premises),
         "status": status}
        for premises, status in sample.statuses
    ]
    report = {
        "command": "relation",
        "calculus": calculus.name,
        "bounds": _bounds_payload(bounds),
        "pair_count": len(sample.relation),
        "statuses": statuses,
        "relation": None if args.out else serialized,
        "out": args.out,
    }
    text = [f"pairs: {len(sample.relation)}"]
    if args.out:
        text.append(f"written to {args.out}")
    else:
        text.append(serialized.rstrip("\n"))
    _emit(report, args.json, text)
    if any(s["status"] == BUDGET_EXCEEDED for s in statuses):
        return EXIT_BUDGET
    return EXIT_HOLDS


def _cmd_relation_check(args) -> int:
    with open(args.relation, "r", encoding="utf-8") as handle:
        relation = relation_from_lines(handle.read())
    verdict = check_boundedness(relation, args.m, args.kind)
    report = {
        "command": "relation-check",
        "relation": args.relation,
        "m": args.m,
        "kind": args.kind,
        "pair_count": len(relation),
    }
    report.update(_verdict_payload(verdict))
    _emit(report, args.json, _verdict_text(verdict))
    return _VERDICT_EXIT[verdict.outcome]


def _cmd_automaton(args) -> int:
    loaded, calculus = _load_calculus(args)
    bounds = _resolve_bounds(args, loaded.bounds)
    body = enumerate_body(calculus, bounds)
    build = (build_deterministic_body_automaton if args.deterministic
             else build_body_automaton)
    nfa = build(body.theorems)
    report = {
        "command": "automaton",
        "calculus": calculus.name,
        "bounds": _bounds_payload(bounds),
        "body_status": body.status,
        "deterministic": bool(args.deterministic),
        "state_count": len(nfa.states),
    }
    if args.accept is not None:
        accepted = nfa_accepts(nfa, args.accept)
        report["word"] = args.accept
        report["accepted"] = accepted
        _emit(report, args.json,
              [f"word: {args.accept}", f"accepted: {accepted}"])
        return EXIT_HOLDS if accepted else EXIT_FAILS
    if args.language_upto is not None:
        words = sorted(nfa_language_upto(nfa, args.language_upto))
        report["language"] = words
        _emit(report, args.json, [f"words: {len(words)}"] + words)
        return EXIT_HOLDS
    serialized = automaton_to_text(nfa)
    report["automaton"] = serialized
    _emit(report, args.json, [serialized.rstrip("\n")])
    return EXIT_HOLDS


# ==========================================================================
# Parser assembly
# ==========================================================================

def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="metalogic",
        description="bounded enumeration, derivation, and analysis of "
                    "syntactic logical calculi",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, handler, help_text):
        sub = subparsers.add_parser(name, help=help_text)
        sub.set_defaults(handler=handler)
        sub.add_argument("--json", action="store_true",
                         help="machine-readable report")
        return sub

    sub = add("parse", _cmd_parse, "parse one formula")
    sub.add_argument("--calc", required=True,
                     help="calculus file or builtin:<name>")
    sub.add_argument("formula", help="formula text in the surface syntax")

    sub = add("enum-lang", _cmd_enum_lang, "enumerate the language")
    sub.add_argument("--calc", required=True)
    sub.add_argument("--size", type=int, required=True,
                     help="maximum formula size")
    _add_bounds_flags(sub)

    sub = add("enum-body", _cmd_enum_body, "enumerate the bounded body")
    sub.add_argument("--calc", required=True)
    _add_bounds_flags(sub)

    sub = add("derive", _cmd_derive, "search for a derivation")
    sub.add_argument("--calc", required=True)
    sub.add_argument("--goal", required=True, help="goal formula text")
    _add_bounds_flags(sub)

    sub = add("stages", _cmd_stages, "run a changing axiom system")
    sub.add_argument("--calc", required=True,
                     help="calculus file with a stages list")
    _add_bounds_flags(sub)

    sub = add("compare", _cmd_compare, "bounded calculus equivalence")
    sub.add_argument("--kind", required=True, choices=COMPARISON_KINDS)
    sub.add_argument("--calc-a", required=True)
    sub.add_argument("--calc-b", required=True)
    sub.add_argument("--map", default=None,
                     choices=("p2_to_p1", "p1_to_p2"),
                     help="translation map for differing alphabets")
    _add_bounds_flags(sub)

    sub = add("check", _cmd_check, "check a body property")
    sub.add_argument("--calc", required=True)
    sub.add_argument("--property", required=True, choices=PROPERTY_NAMES)
    sub.add_argument("--member", action="append", default=[],
                     help="forbidden-set member for consistent-with "
                          "(repeatable)")
    sub.add_argument("--pattern", default=None,
                     help="forbidden-set pattern over phi/chi/psi for "
                          "consistent-with")
    sub.add_argument("--strict", action="store_true",
                     help="semantic unsatisfiability mode for consistent")
    sub.add_argument("--target", action="append", default=[],
                     help="target formula for complete-wrt-rules (repeatable)")
    sub.add_argument("--rules-from", default=None,
                     help="calculus whose rules serve as the mapping system "
                          "for complete-wrt-rules (defaults to --calc's rules)")
    _add_bounds_flags(sub)

    sub = add("relation", _cmd_relation, "sample the inference relation")
    sub.add_argument("--calc", required=True)
    sub.add_argument("--premise", action="append", default=[], required=True,
                     help="premise-pool formula (repeatable)")
    sub.add_argument("--max-premises", type=int, required=True)
    sub.add_argument("--out", default=None,
                     help="write the relation records to a file")
    _add_bounds_flags(sub)

    sub = add("relation-check", _cmd_relation_check,
              "boundedness of a relation file")
    sub.add_argument("--relation", required=True,
                     help="relation records file")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--kind", required=True, choices=BOUNDEDNESS_KINDS)

    sub = add("automaton", _cmd_automaton, "body acceptor")
    sub.add_argument("--calc", required=True)
    sub.add_argument("--deterministic", action="store_true",
                     help="build the shared-prefix deterministic acceptor")
    sub.add_argument("--accept", default=None,
                     help="test one word for acceptance")
    sub.add_argument("--language-upto", type=int, default=None,
                     help="list accepted words up to this length")
    _add_bounds_flags(sub)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except BudgetExceededError as exc:
        print(f"metalogic: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except MetalogicError as exc:
        print(f"metalogic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"metalogic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
