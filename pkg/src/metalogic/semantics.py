"""Classical two-valued evaluation of propositional formulas.

Declared constant symbols (for instance the falsum constant of an
implication-and-falsum language) evaluate to False unless an assignment
explicitly overrides them.
"""

from __future__ import annotations

from typing import Mapping

from .errors import EvaluationError
from .syntax import (
    AND,
    Atom,
    Binary,
    Formula,
    IFF,
    IMPLIES,
    Negation,
    OR,
    formula_atoms,
)

MAX_TAUTOLOGY_ATOMS = 20


def evaluate_prop(formula: Formula, assignment: Mapping[str, bool],
                  constants: frozenset = frozenset()) -> bool:
    kind = type(formula)
    if kind is Atom:
        if formula.name in assignment:
            return bool(assignment[formula.name])
        if formula.name in constants:
            return False
        raise EvaluationError(f"unassigned atom: {formula.name!r}")
    if kind is Negation:
        return not evaluate_prop(formula.operand, assignment, constants)
    if kind is Binary:
        left = evaluate_prop(formula.left, assignment, constants)
        right = evaluate_prop(formula.right, assignment, constants)
        if formula.op == AND:
            return left and right
        if formula.op == OR:
            return left or right
        if formula.op == IMPLIES:
            return (not left) or right
        if formula.op == IFF:
            return left == right
    raise EvaluationError(f"not a propositional formula: {formula!r}")


def is_tautology(formula: Formula, constants: frozenset = frozenset()) -> bool:
    """Exhaustive truth-table check.

    All 2^n assignment rows are evaluated at once: each atom becomes an
    integer whose bits are that atom's column of the truth table, and the
    connectives become bitwise operations on whole columns. Constants
    contribute an all-False column.
    """
    atoms = sorted(formula_atoms(formula) - constants)
    if len(atoms) > MAX_TAUTOLOGY_ATOMS:
        raise EvaluationError(
            f"formula has {len(atoms)} distinct atoms; "
            f"the truth-table cap is {MAX_TAUTOLOGY_ATOMS}"
        )
    rows = 1 << len(atoms)
    full = (1 << rows) - 1
    columns = {}
    for i, name in enumerate(atoms):
        # Atom i alternates in blocks of 2^i rows: 0101... for i = 0.
        block = 1 << i
        column = 0
        for row in range(rows):
            if (row // block) % 2:
                column |= 1 << row
        columns[name] = column

    def walk(f: Formula) -> int:
        kind = type(f)
        if kind is Atom:
            if f.name in columns:
                return columns[f.name]
            if f.name in constants:
                return 0
            raise EvaluationError(f"unassigned atom: {f.name!r}")
        if kind is Negation:
            return full & ~walk(f.operand)
        if kind is Binary:
            left = walk(f.left)
            right = walk(f.right)
            if f.op == AND:
                return left & right
            if f.op == OR:
                return left | right
            if f.op == IMPLIES:
                return (full & ~left) | right
            if f.op == IFF:
                return full & ~(left ^ right)
        raise EvaluationError(f"not a propositional formula: {f!r}")

    return walk(formula) == full
