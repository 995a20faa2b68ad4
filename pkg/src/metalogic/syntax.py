"""Object-language syntax: alphabets, formulas, parsing, printing, enumeration.

Surface grammar (ASCII canonical, Unicode synonyms accepted on input):

    formula   := iff
    iff       := imp ('<->' iff)?                 right associative
    imp       := or ('->' imp)?                   right associative
    or        := and ('|' and)*                   left associative
    and       := unary ('&' unary)*               left associative
    unary     := '~' unary
               | ('forall' | 'exists') VAR unary
               | primary
    primary   := '(' formula ')' | '[' formula ']'
               | ATOM
               | PREDICATE '(' term (',' term)* ')'
               | term '=' term
    term      := VAR | CONSTANT | FUNCTION '(' term (',' term)* ')'

Connective precedence is ~ over & over | over -> over <->. Accepted input
synonyms: not ~ <- {~, ¬, ∼}, and <- {&, ∧}, or <- {|, ∨}, implies <- {->, →,
⊃}, iff <- {<->, ↔}, forall <- {forall, ∀}, exists <- {exists, ∃}. Brackets
[ ] pair like parentheses. The printer emits the fully parenthesized ASCII
canonical form; round-tripping print then parse is the identity.

A formula's size is its node count: one per atom, predicate application,
equality, connective, quantifier, and term node. Quantifiers only bind
variables that occur free in their body (vacuous quantification is not well
formed). Individual variables may carry trailing apostrophes; the namespace of
a declared variable x includes x', x'' and so on, which is what fresh renaming
during capture-avoiding substitution produces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from .errors import AlphabetError, BudgetExceededError, ParseError, SchemaError

NOT = "not"
AND = "and"
OR = "or"
IMPLIES = "implies"
IFF = "iff"
CONNECTIVES = (NOT, AND, OR, IMPLIES, IFF)
BINARY_CONNECTIVES = (AND, OR, IMPLIES, IFF)

FORALL = "forall"
EXISTS = "exists"
QUANTIFIERS = (FORALL, EXISTS)

_BINARY_SYMBOL = {AND: "&", OR: "|", IMPLIES: "->", IFF: "<->"}

PROPOSITIONAL = "propositional"
FIRST_ORDER = "first-order"


# ==========================================================================
# Terms and formulas
#
# Plain slotted classes rather than dataclasses: these are the hot objects of
# every enumeration, so the hash is computed once at construction and the
# printed form is cached after first use. Treat instances as immutable.
# ==========================================================================

class Term:
    __slots__ = ("size", "_hash", "_printed")

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return print_term(self)


class Var(Term):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.size = 1
        self._hash = hash((1, name))
        self._printed = None

    def __eq__(self, other):
        return self is other or (type(other) is Var and other.name == self.name)

    __hash__ = Term.__hash__


class FuncApp(Term):
    """A function symbol applied to argument terms; arity 0 is a constant."""

    __slots__ = ("name", "args")

    def __init__(self, name: str, args: tuple = ()):
        self.name = name
        self.args = tuple(args)
        self.size = 1 + sum(a.size for a in self.args)
        self._hash = hash((2, name) + tuple(a._hash for a in self.args))
        self._printed = None

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is FuncApp
            and other._hash == self._hash
            and other.name == self.name
            and other.args == self.args
        )

    __hash__ = Term.__hash__


class Formula:
    __slots__ = ("size", "_hash", "_printed")

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return print_formula(self)


class Atom(Formula):
    """A propositional variable or propositional constant."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.size = 1
        self._hash = hash((3, name))
        self._printed = None

    def __eq__(self, other):
        return self is other or (type(other) is Atom and other.name == self.name)

    __hash__ = Formula.__hash__


class PredApp(Formula):
    __slots__ = ("name", "args")

    def __init__(self, name: str, args: tuple = ()):
        self.name = name
        self.args = tuple(args)
        self.size = 1 + sum(a.size for a in self.args)
        self._hash = hash((4, name) + tuple(a._hash for a in self.args))
        self._printed = None

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is PredApp
            and other._hash == self._hash
            and other.name == self.name
            and other.args == self.args
        )

    __hash__ = Formula.__hash__


class Equality(Formula):
    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term):
        self.left = left
        self.right = right
        self.size = 1 + left.size + right.size
        self._hash = hash((5, left._hash, right._hash))
        self._printed = None

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is Equality
            and other._hash == self._hash
            and other.left == self.left
            and other.right == self.right
        )

    __hash__ = Formula.__hash__


class Negation(Formula):
    __slots__ = ("operand",)

    def __init__(self, operand: Formula):
        self.operand = operand
        self.size = 1 + operand.size
        self._hash = hash((6, operand._hash))
        self._printed = None

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is Negation
            and other._hash == self._hash
            and other.operand == self.operand
        )

    __hash__ = Formula.__hash__


class Binary(Formula):
    """A binary connective node; ``op`` is one of and/or/implies/iff."""

    __slots__ = ("op", "left", "right")

    def __init__(self, op: str, left: Formula, right: Formula):
        self.op = op
        self.left = left
        self.right = right
        self.size = 1 + left.size + right.size
        self._hash = hash((7, op, left._hash, right._hash))
        self._printed = None

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is Binary
            and other._hash == self._hash
            and other.op == self.op
            and other.left == self.left
            and other.right == self.right
        )

    __hash__ = Formula.__hash__


class Quantified(Formula):
    """forall/exists over a named individual variable. Identity is
    structural: quantifying the same body over differently named variables
    gives different formulas."""

    __slots__ = ("quant", "variable", "body")

    def __init__(self, quant: str, variable: str, body: Formula):
        self.quant = quant
        self.variable = variable
        self.body = body
        self.size = 1 + body.size
        self._hash = hash((8, quant, variable, body._hash))
        self._printed = None

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is Quantified
            and other._hash == self._hash
            and other.quant == self.quant
            and other.variable == self.variable
            and other.body == self.body
        )

    __hash__ = Formula.__hash__


def atom(name: str) -> Atom:
    return Atom(name)


def negation(operand: Formula) -> Negation:
    return Negation(operand)


def conjunction(left: Formula, right: Formula) -> Binary:
    return Binary(AND, left, right)


def disjunction(left: Formula, right: Formula) -> Binary:
    return Binary(OR, left, right)


def implication(left: Formula, right: Formula) -> Binary:
    return Binary(IMPLIES, left, right)


def biconditional(left: Formula, right: Formula) -> Binary:
    return Binary(IFF, left, right)


def universal(variable: str, body: Formula) -> Quantified:
    return Quantified(FORALL, variable, body)


def existential(variable: str, body: Formula) -> Quantified:
    return Quantified(EXISTS, variable, body)


def var(name: str) -> Var:
    return Var(name)


def func_app(name: str, args: Iterable[Term] = ()) -> FuncApp:
    return FuncApp(name, tuple(args))


def equality(left: Term, right: Term) -> Equality:
    return Equality(left, right)


def formula_size(formula: Formula) -> int:
    return formula.size


# ==========================================================================
# Printing
# ==========================================================================

def print_term(term: Term) -> str:
    cached = term._printed
    if cached is not None:
        return cached
    if type(term) is Var:
        text = term.name
    elif term.args:
        text = "%s(%s)" % (term.name, ", ".join(print_term(a) for a in term.args))
    else:
        text = term.name
    term._printed = text
    return text


def print_formula(formula: Formula) -> str:
    """Fully parenthesized ASCII canonical form; parse of it is the identity."""
    cached = formula._printed
    if cached is not None:
        return cached
    kind = type(formula)
    if kind is Atom:
        text = formula.name
    elif kind is Negation:
        text = "~" + print_formula(formula.operand)
    elif kind is Binary:
        text = "(%s %s %s)" % (
            print_formula(formula.left),
            _BINARY_SYMBOL[formula.op],
            print_formula(formula.right),
        )
    elif kind is Quantified:
        text = "%s %s %s" % (formula.quant, formula.variable, print_formula(formula.body))
    elif kind is PredApp:
        if formula.args:
            text = "%s(%s)" % (formula.name, ", ".join(print_term(a) for a in formula.args))
        else:
            text = formula.name
    elif kind is Equality:
        text = "(%s = %s)" % (print_term(formula.left), print_term(formula.right))
    else:
        raise TypeError(f"not a formula: {formula!r}")
    formula._printed = text
    return text


def canonical_key(formula: Formula):
    """Sort key for the canonical size-lexicographic order."""
    return (formula.size, print_formula(formula))


def sorted_formulas(formulas: Iterable[Formula]) -> list:
    return sorted(formulas, key=canonical_key)


# ==========================================================================
# Alphabets
# ==========================================================================

def _as_arity_table(value) -> tuple:
    if isinstance(value, Mapping):
        items = tuple(sorted(value.items()))
    else:
        items = tuple(tuple(pair) for pair in value)
    for name, arity in items:
        if not isinstance(name, str) or not isinstance(arity, int) or arity < 0:
            raise AlphabetError(f"bad symbol declaration: {name!r}/{arity!r}")
    return items


@dataclass(frozen=True)
class Alphabet:
    """Symbol table of an object language.

    ``kind`` is "propositional" or "first-order". ``variables`` are the
    propositional atoms; ``constants`` are propositional constants (nullary
    atoms, meaningful in propositional alphabets). First-order alphabets
    declare individual variables, quantifiers, and arities for function and
    predicate symbols; constants of a first-order language are arity-0
    function symbols. ``punctuation`` records the preferred grouping style
    ("parens" or "brackets"); both are always accepted on input and the
    canonical printer emits parentheses.
    """

    kind: str
    variables: tuple = ()
    connectives: tuple = ()
    constants: tuple = ()
    functions: tuple = ()
    predicates: tuple = ()
    individual_variables: tuple = ()
    quantifiers: tuple = ()
    punctuation: str = "parens"
    _function_arity: Mapping = field(init=False, repr=False, compare=False, default=None)
    _predicate_arity: Mapping = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.kind not in (PROPOSITIONAL, FIRST_ORDER):
            raise AlphabetError(f"unknown language kind: {self.kind!r}")
        if self.punctuation not in ("parens", "brackets"):
            raise AlphabetError(f"unknown punctuation style: {self.punctuation!r}")
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "connectives", tuple(self.connectives))
        object.__setattr__(self, "constants", tuple(self.constants))
        object.__setattr__(self, "functions", _as_arity_table(self.functions))
        object.__setattr__(self, "predicates", _as_arity_table(self.predicates))
        object.__setattr__(self, "individual_variables", tuple(self.individual_variables))
        object.__setattr__(self, "quantifiers", tuple(self.quantifiers))
        for c in self.connectives:
            if c not in CONNECTIVES:
                raise AlphabetError(f"unknown connective: {c!r}")
        for q in self.quantifiers:
            if q not in QUANTIFIERS:
                raise AlphabetError(f"unknown quantifier: {q!r}")
        if self.kind == PROPOSITIONAL:
            if self.functions or self.predicates or self.individual_variables or self.quantifiers:
                raise AlphabetError("propositional alphabets declare no first-order symbols")
        categories = [
            self.variables,
            self.constants,
            [n for n, _ in self.functions],
            [n for n, _ in self.predicates],
            self.individual_variables,
        ]
        seen = {}
        for group_index, group in enumerate(categories):
            for name in group:
                if not name or not isinstance(name, str):
                    raise AlphabetError(f"bad symbol name: {name!r}")
                if name in ("forall", "exists"):
                    raise AlphabetError(f"symbol name collides with a keyword: {name!r}")
                if name in seen:
                    raise AlphabetError(f"symbol declared twice: {name!r}")
                seen[name] = group_index
        object.__setattr__(self, "_function_arity", dict(self.functions))
        object.__setattr__(self, "_predicate_arity", dict(self.predicates))

    # ---- symbol classification ------------------------------------------

    def has_connective(self, name: str) -> bool:
        return name in self.connectives

    def is_prop_variable(self, name: str) -> bool:
        return name in self.variables

    def is_constant(self, name: str) -> bool:
        return name in self.constants

    def is_function(self, name: str) -> bool:
        return name in self._function_arity

    def is_predicate(self, name: str) -> bool:
        return name in self._predicate_arity

    def function_arity(self, name: str) -> int:
        return self._function_arity[name]

    def predicate_arity(self, name: str) -> int:
        return self._predicate_arity[name]

    def is_individual_variable(self, name: str) -> bool:
        base = name.rstrip("'")
        return bool(base) and base in self.individual_variables


def propositional_alphabet(variables, connectives=CONNECTIVES, constants=(),
                           punctuation="parens") -> Alphabet:
    return Alphabet(
        kind=PROPOSITIONAL,
        variables=tuple(variables),
        connectives=tuple(connectives),
        constants=tuple(constants),
        punctuation=punctuation,
    )


def first_order_alphabet(individual_variables, *, variables=(), connectives=CONNECTIVES,
                         functions=(), predicates=(), quantifiers=QUANTIFIERS,
                         punctuation="parens") -> Alphabet:
    return Alphabet(
        kind=FIRST_ORDER,
        variables=tuple(variables),
        connectives=tuple(connectives),
        functions=functions,
        predicates=predicates,
        individual_variables=tuple(individual_variables),
        quantifiers=tuple(quantifiers),
        punctuation=punctuation,
    )


# ==========================================================================
# Structural queries
# ==========================================================================

def term_variables(term: Term) -> frozenset:
    if type(term) is Var:
        return frozenset((term.name,))
    out = frozenset()
    for a in term.args:
        out |= term_variables(a)
    return out


def free_variables(formula: Formula) -> frozenset:
    """Free individual variables. Propositional formulas have none."""
    kind = type(formula)
    if kind is Atom:
        return frozenset()
    if kind is PredApp:
        out = frozenset()
        for a in formula.args:
            out |= term_variables(a)
        return out
    if kind is Equality:
        return term_variables(formula.left) | term_variables(formula.right)
    if kind is Negation:
        return free_variables(formula.operand)
    if kind is Binary:
        return free_variables(formula.left) | free_variables(formula.right)
    if kind is Quantified:
        return free_variables(formula.body) - frozenset((formula.variable,))
    raise TypeError(f"not a formula: {formula!r}")


def formula_atoms(formula: Formula) -> frozenset:
    """Names of the propositional atoms occurring in the formula."""
    kind = type(formula)
    if kind is Atom:
        return frozenset((formula.name,))
    if kind in (PredApp, Equality):
        return frozenset()
    if kind is Negation:
        return formula_atoms(formula.operand)
    if kind is Binary:
        return formula_atoms(formula.left) | formula_atoms(formula.right)
    if kind is Quantified:
        return formula_atoms(formula.body)
    raise TypeError(f"not a formula: {formula!r}")


def subformulas(formula: Formula) -> set:
    """All formula-level subtrees, the formula itself included."""
    out = set()
    stack = [formula]
    while stack:
        f = stack.pop()
        if f in out:
            continue
        out.add(f)
        kind = type(f)
        if kind is Negation:
            stack.append(f.operand)
        elif kind is Binary:
            stack.append(f.left)
            stack.append(f.right)
        elif kind is Quantified:
            stack.append(f.body)
    return out


# ==========================================================================
# Substitution
# ==========================================================================

def substitute_prop(formula: Formula, name: str, replacement: Formula) -> Formula:
    """Replace every occurrence of the propositional atom ``name``."""
    kind = type(formula)
    if kind is Atom:
        return replacement if formula.name == name else formula
    if kind in (PredApp, Equality):
        return formula
    if kind is Negation:
        inner = substitute_prop(formula.operand, name, replacement)
        return formula if inner is formula.operand else Negation(inner)
    if kind is Binary:
        left = substitute_prop(formula.left, name, replacement)
        right = substitute_prop(formula.right, name, replacement)
        if left is formula.left and right is formula.right:
            return formula
        return Binary(formula.op, left, right)
    if kind is Quantified:
        body = substitute_prop(formula.body, name, replacement)
        return formula if body is formula.body else Quantified(formula.quant, formula.variable, body)
    raise TypeError(f"not a formula: {formula!r}")


def _substitute_in_term(term: Term, name: str, replacement: Term) -> Term:
    if type(term) is Var:
        return replacement if term.name == name else term
    if not term.args:
        return term
    return FuncApp(term.name, tuple(_substitute_in_term(a, name, replacement) for a in term.args))


def fresh_variable(base: str, taken) -> str:
    candidate = base + "'"
    while candidate in taken:
        candidate += "'"
    return candidate


def substitute_term(formula: Formula, name: str, term: Term) -> Formula:
    """Replace free occurrences of the individual variable ``name`` by ``term``.

    Capture is avoided by renaming bound variables to primed fresh ones when
    the incoming term mentions them.
    """
    kind = type(formula)
    if kind is Atom:
        return formula
    if kind is PredApp:
        return PredApp(formula.name, tuple(_substitute_in_term(a, name, term) for a in formula.args))
    if kind is Equality:
        return Equality(
            _substitute_in_term(formula.left, name, term),
            _substitute_in_term(formula.right, name, term),
        )
    if kind is Negation:
        return Negation(substitute_term(formula.operand, name, term))
    if kind is Binary:
        return Binary(
            formula.op,
            substitute_term(formula.left, name, term),
            substitute_term(formula.right, name, term),
        )
    if kind is Quantified:
        if formula.variable == name:
            return formula
        body_free = free_variables(formula.body)
        if name not in body_free:
            return formula
        bound = formula.variable
        body = formula.body
        incoming = term_variables(term)
        if bound in incoming:
            renamed = fresh_variable(bound, body_free | incoming | {name})
            body = substitute_term(body, bound, Var(renamed))
            bound = renamed
        return Quantified(formula.quant, bound, substitute_term(body, name, term))
    raise TypeError(f"not a formula: {formula!r}")


# ==========================================================================
# Tokenizer and parser
# ==========================================================================

_SINGLE = {
    "~": "NOT", "¬": "NOT", "∼": "NOT",
    "&": "AND", "∧": "AND",
    "|": "OR", "∨": "OR",
    "→": "IMPLIES", "⊃": "IMPLIES",
    "↔": "IFF",
    "∀": "FORALL", "∃": "EXISTS",
    "(": "LPAREN", "[": "LBRACKET",
    ")": "RPAREN", "]": "RBRACKET",
    ",": "COMMA", "=": "EQUALS",
}


class _Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "-":
            if text.startswith("->", i):
                tokens.append(_Token("IMPLIES", "->", i))
                i += 2
                continue
            raise ParseError("stray '-'", i)
        if ch == "<":
            if text.startswith("<->", i):
                tokens.append(_Token("IFF", "<->", i))
                i += 3
                continue
            raise ParseError("stray '<'", i)
        kind = _SINGLE.get(ch)
        if kind is not None:
            tokens.append(_Token(kind, ch, i))
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            start = i
            i += 1
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            while i < n and text[i] in ("'", "′"):
                i += 1
            name = text[start:i].replace("′", "'")
            if name == "forall":
                tokens.append(_Token("FORALL", name, start))
            elif name == "exists":
                tokens.append(_Token("EXISTS", name, start))
            else:
                tokens.append(_Token("IDENT", name, start))
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("END", "", n))
    return tokens


_CLOSER = {"LPAREN": ("RPAREN", ")"), "LBRACKET": ("RBRACKET", "]")}


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok.pos)

    def require_connective(self, name, tok):
        if not self.alphabet.has_connective(name):
            self.fail(f"connective {_BINARY_SYMBOL.get(name, '~')!r} is not declared in this alphabet", tok)

    # ---- precedence climbing ---------------------------------------------

    def parse(self) -> Formula:
        formula = self.parse_iff()
        tok = self.peek()
        if tok.kind != "END":
            self.fail(f"unexpected trailing input {tok.value!r}", tok)
        return formula

    def parse_iff(self) -> Formula:
        left = self.parse_implies()
        tok = self.peek()
        if tok.kind == "IFF":
            self.advance()
            self.require_connective(IFF, tok)
            right = self.parse_iff()
            return Binary(IFF, left, right)
        return left

    def parse_implies(self) -> Formula:
        left = self.parse_or()
        tok = self.peek()
        if tok.kind == "IMPLIES":
            self.advance()
            self.require_connective(IMPLIES, tok)
            right = self.parse_implies()
            return Binary(IMPLIES, left, right)
        return left

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while self.peek().kind == "OR":
            tok = self.advance()
            self.require_connective(OR, tok)
            left = Binary(OR, left, self.parse_and())
        return left

    def parse_and(self) -> Formula:
        left = self.parse_unary()
        while self.peek().kind == "AND":
            tok = self.advance()
            self.require_connective(AND, tok)
            left = Binary(AND, left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "NOT":
            self.advance()
            self.require_connective(NOT, tok)
            return Negation(self.parse_unary())
        if tok.kind in ("FORALL", "EXISTS"):
            return self.parse_quantifier()
        return self.parse_primary()

    def parse_quantifier(self) -> Formula:
        tok = self.advance()
        quant = FORALL if tok.kind == "FORALL" else EXISTS
        if self.alphabet.kind != FIRST_ORDER:
            self.fail("quantifier in a propositional language", tok)
        if quant not in self.alphabet.quantifiers:
            self.fail(f"quantifier {quant!r} is not declared in this alphabet", tok)
        name_tok = self.peek()
        if name_tok.kind != "IDENT" or not self.alphabet.is_individual_variable(name_tok.value):
            self.fail("expected an individual variable after the quantifier", name_tok)
        self.advance()
        body = self.parse_unary()
        if name_tok.value not in free_variables(body):
            self.fail(
                f"bound variable {name_tok.value!r} does not occur free in the quantifier body",
                name_tok,
            )
        return Quantified(quant, name_tok.value, body)

    def parse_primary(self) -> Formula:
        tok = self.peek()
        if tok.kind in ("LPAREN", "LBRACKET"):
            self.advance()
            inner = self.parse_iff()
            closer_kind, closer_text = _CLOSER[tok.kind]
            end = self.peek()
            if end.kind != closer_kind:
                self.fail(f"expected {closer_text!r}", end)
            self.advance()
            return inner
        if tok.kind == "IDENT":
            return self.parse_ident()
        self.fail(f"expected a formula, found {tok.value!r}" if tok.kind != "END"
                  else "unexpected end of input", tok)

    def parse_ident(self) -> Formula:
        tok = self.peek()
        name = tok.value
        ab = self.alphabet
        if ab.is_prop_variable(name) or (ab.kind == PROPOSITIONAL and ab.is_constant(name)):
            self.advance()
            return Atom(name)
        if ab.is_predicate(name):
            self.advance()
            arity = ab.predicate_arity(name)
            if arity == 0:
                return PredApp(name, ())
            args = self.parse_argument_list(arity, name, tok)
            return PredApp(name, args)
        if ab.kind == FIRST_ORDER and (ab.is_individual_variable(name) or ab.is_function(name)):
            left = self.parse_term()
            eq_tok = self.peek()
            if eq_tok.kind != "EQUALS":
                self.fail("expected '=' after a term", eq_tok)
            self.advance()
            right = self.parse_term()
            return Equality(left, right)
        self.fail(f"unknown symbol {name!r}", tok)

    def parse_argument_list(self, arity, owner, owner_tok) -> tuple:
        open_tok = self.peek()
        if open_tok.kind not in ("LPAREN", "LBRACKET"):
            self.fail(f"expected an argument list for {owner!r}", open_tok)
        self.advance()
        closer_kind, closer_text = _CLOSER[open_tok.kind]
        args = [self.parse_term()]
        while self.peek().kind == "COMMA":
            self.advance()
            args.append(self.parse_term())
        end = self.peek()
        if end.kind != closer_kind:
            self.fail(f"expected {closer_text!r}", end)
        self.advance()
        if len(args) != arity:
            self.fail(f"{owner!r} expects {arity} argument(s), got {len(args)}", owner_tok)
        return tuple(args)

    def parse_term(self) -> Term:
        tok = self.peek()
        if tok.kind != "IDENT":
            self.fail("expected a term", tok)
        name = tok.value
        ab = self.alphabet
        if ab.is_individual_variable(name):
            self.advance()
            return Var(name)
        if ab.is_function(name):
            self.advance()
            arity = ab.function_arity(name)
            if arity == 0:
                return FuncApp(name, ())
            args = self.parse_argument_list(arity, name, tok)
            return FuncApp(name, args)
        self.fail(f"unknown term symbol {name!r}", tok)


def parse_formula(text: str, alphabet: Alphabet) -> Formula:
    """Read the surface syntax into a formula, or raise ParseError."""
    return _Parser(text, alphabet).parse()


# ==========================================================================
# Validation
# ==========================================================================

def validate_term(term: Term, alphabet: Alphabet):
    if alphabet.kind != FIRST_ORDER:
        raise AlphabetError("terms require a first-order alphabet")
    if type(term) is Var:
        if not alphabet.is_individual_variable(term.name):
            raise AlphabetError(f"undeclared individual variable: {term.name!r}")
        return
    if not alphabet.is_function(term.name):
        raise AlphabetError(f"undeclared function symbol: {term.name!r}")
    if len(term.args) != alphabet.function_arity(term.name):
        raise AlphabetError(
            f"function {term.name!r} expects {alphabet.function_arity(term.name)} "
            f"argument(s), got {len(term.args)}"
        )
    for a in term.args:
        validate_term(a, alphabet)


def validate_formula(formula: Formula, alphabet: Alphabet):
    """Check that every symbol is declared and every node is well formed."""
    kind = type(formula)
    if kind is Atom:
        if not (alphabet.is_prop_variable(formula.name)
                or (alphabet.kind == PROPOSITIONAL and alphabet.is_constant(formula.name))):
            raise AlphabetError(f"undeclared atom: {formula.name!r}")
        return
    if kind is PredApp:
        if alphabet.kind != FIRST_ORDER:
            raise AlphabetError("predicate application in a propositional language")
        if not alphabet.is_predicate(formula.name):
            raise AlphabetError(f"undeclared predicate symbol: {formula.name!r}")
        if len(formula.args) != alphabet.predicate_arity(formula.name):
            raise AlphabetError(
                f"predicate {formula.name!r} expects {alphabet.predicate_arity(formula.name)} "
                f"argument(s), got {len(formula.args)}"
            )
        for a in formula.args:
            validate_term(a, alphabet)
        return
    if kind is Equality:
        if alphabet.kind != FIRST_ORDER:
            raise AlphabetError("equality in a propositional language")
        validate_term(formula.left, alphabet)
        validate_term(formula.right, alphabet)
        return
    if kind is Negation:
        if not alphabet.has_connective(NOT):
            raise AlphabetError("negation is not declared in this alphabet")
        validate_formula(formula.operand, alphabet)
        return
    if kind is Binary:
        if not alphabet.has_connective(formula.op):
            raise AlphabetError(f"connective {formula.op!r} is not declared in this alphabet")
        validate_formula(formula.left, alphabet)
        validate_formula(formula.right, alphabet)
        return
    if kind is Quantified:
        if alphabet.kind != FIRST_ORDER:
            raise AlphabetError("quantifier in a propositional language")
        if formula.quant not in alphabet.quantifiers:
            raise AlphabetError(f"quantifier {formula.quant!r} is not declared in this alphabet")
        if not alphabet.is_individual_variable(formula.variable):
            raise AlphabetError(f"undeclared individual variable: {formula.variable!r}")
        if formula.variable not in free_variables(formula.body):
            raise AlphabetError(
                f"bound variable {formula.variable!r} does not occur free in the quantifier body"
            )
        validate_formula(formula.body, alphabet)
        return
    raise TypeError(f"not a formula: {formula!r}")


# ==========================================================================
# Enumeration
# ==========================================================================

class _Budget:
    __slots__ = ("ceiling", "spent")

    def __init__(self, ceiling):
        self.ceiling = ceiling
        self.spent = 0

    def spend(self, amount=1):
        self.spent += amount
        if self.ceiling is not None and self.spent > self.ceiling:
            raise BudgetExceededError(
                f"enumeration outgrew its ceiling of {self.ceiling}"
            )


def _terms_by_size(alphabet: Alphabet, max_size: int) -> list:
    """terms[s] lists all terms of size exactly s, 0-indexed placeholder at 0."""
    terms = [[] for _ in range(max_size + 1)]
    if max_size >= 1:
        for v in alphabet.individual_variables:
            terms[1].append(Var(v))
        for name, arity in alphabet.functions:
            if arity == 0:
                terms[1].append(FuncApp(name, ()))
    for size in range(2, max_size + 1):
        for name, arity in alphabet.functions:
            if arity == 0:
                continue
            for combo in _tuples_with_total(terms, arity, size - 1):
                terms[size].append(FuncApp(name, combo))
    return terms


def _tuples_with_total(pool_by_size, arity, total):
    """All tuples of pool entries with sizes summing to ``total``."""
    if arity == 0:
        if total == 0:
            yield ()
        return
    max_here = total - (arity - 1)
    for first_size in range(1, max_here + 1):
        firsts = pool_by_size[first_size] if first_size < len(pool_by_size) else []
        if not firsts:
            continue
        for rest in _tuples_with_total(pool_by_size, arity - 1, total - first_size):
            for f in firsts:
                yield (f,) + rest


def enumerate_wffs(alphabet: Alphabet, max_size: int, limit: Optional[int] = None) -> list:
    """All well-formed formulas of size at most ``max_size``.

    Returned in the canonical order (size, printed form). ``limit`` is a
    ceiling on the count; exceeding it raises BudgetExceededError.
    """
    if max_size < 0:
        return []
    budget = _Budget(limit)
    by_size = [[] for _ in range(max_size + 1)]
    free_of = {}

    def emit(size, formula, free):
        budget.spend()
        by_size[size].append(formula)
        free_of[formula] = free

    if max_size >= 1:
        for name in alphabet.variables:
            emit(1, Atom(name), frozenset())
        if alphabet.kind == PROPOSITIONAL:
            for name in alphabet.constants:
                emit(1, Atom(name), frozenset())

    terms = _terms_by_size(alphabet, max_size - 1) if alphabet.kind == FIRST_ORDER else None
    if terms is not None:
        for name, arity in alphabet.predicates:
            if arity == 0 and max_size >= 1:
                emit(1, PredApp(name, ()), frozenset())
        for size in range(2, max_size + 1):
            for name, arity in alphabet.predicates:
                if arity == 0:
                    continue
                for combo in _tuples_with_total(terms, arity, size - 1):
                    free = frozenset()
                    for t in combo:
                        free |= term_variables(t)
                    emit(size, PredApp(name, combo), free)
            for combo in _tuples_with_total(terms, 2, size - 1):
                emit(size, Equality(combo[0], combo[1]),
                     term_variables(combo[0]) | term_variables(combo[1]))

    has_not = alphabet.has_connective(NOT)
    binary_ops = [op for op in BINARY_CONNECTIVES if alphabet.has_connective(op)]
    quants = alphabet.quantifiers if alphabet.kind == FIRST_ORDER else ()

    for size in range(2, max_size + 1):
        if has_not:
            for operand in by_size[size - 1]:
                emit(size, Negation(operand), free_of[operand])
        for q in quants:
            for body in by_size[size - 1]:
                for v in alphabet.individual_variables:
                    if v in free_of[body]:
                        emit(size, Quantified(q, v, body), free_of[body] - {v})
        for left_size in range(1, size - 1):
            right_size = size - 1 - left_size
            for op in binary_ops:
                for left in by_size[left_size]:
                    lf = free_of[left]
                    for right in by_size[right_size]:
                        emit(size, Binary(op, left, right), lf | free_of[right])

    out = []
    for bucket in by_size:
        out.extend(bucket)
    out.sort(key=canonical_key)
    return out


# ==========================================================================
# Schemata
# ==========================================================================

@dataclass(frozen=True)
class Schema:
    """A formula pattern whose listed atoms stand for arbitrary formulas."""

    schema_id: str
    pattern: Formula
    metavariables: tuple

    def __post_init__(self):
        object.__setattr__(self, "metavariables", tuple(self.metavariables))
        if len(set(self.metavariables)) != len(self.metavariables):
            raise SchemaError(f"duplicate metavariable in schema {self.schema_id!r}")
        present = formula_atoms(self.pattern)
        for m in self.metavariables:
            if m not in present:
                raise SchemaError(
                    f"metavariable {m!r} does not occur in the pattern of schema {self.schema_id!r}"
                )


def match_schema(schema: Schema, formula: Formula) -> Optional[dict]:
    """First-match structural binding of metavariables, or None.

    Matching is deterministic: a metavariable atom binds the subformula at
    its position, and repeated metavariables must bind equal subformulas.
    """
    metas = set(schema.metavariables)
    binding = {}

    def walk(pat, f):
        pkind = type(pat)
        if pkind is Atom and pat.name in metas:
            bound = binding.get(pat.name)
            if bound is None:
                binding[pat.name] = f
                return True
            return bound == f
        if pkind is not type(f):
            return False
        if pkind is Atom:
            return pat.name == f.name
        if pkind is PredApp:
            return pat.name == f.name and pat.args == f.args
        if pkind is Equality:
            return pat.left == f.left and pat.right == f.right
        if pkind is Negation:
            return walk(pat.operand, f.operand)
        if pkind is Binary:
            return pat.op == f.op and walk(pat.left, f.left) and walk(pat.right, f.right)
        if pkind is Quantified:
            return (pat.quant == f.quant and pat.variable == f.variable
                    and walk(pat.body, f.body))
        return False

    return binding if walk(schema.pattern, formula) else None


def instantiate_schema(schema: Schema, assignment: Mapping) -> Formula:
    """Replace every metavariable atom by its assigned formula."""
    missing = [m for m in schema.metavariables if m not in assignment]
    if missing:
        raise SchemaError(f"schema {schema.schema_id!r} is missing assignments for {missing}")
    metas = set(schema.metavariables)

    def walk(pat):
        pkind = type(pat)
        if pkind is Atom:
            return assignment[pat.name] if pat.name in metas else pat
        if pkind in (PredApp, Equality):
            return pat
        if pkind is Negation:
            return Negation(walk(pat.operand))
        if pkind is Binary:
            return Binary(pat.op, walk(pat.left), walk(pat.right))
        if pkind is Quantified:
            return Quantified(pat.quant, pat.variable, walk(pat.body))
        raise TypeError(f"not a formula: {pat!r}")

    return walk(schema.pattern)


# ==========================================================================
# Language definitions
# ==========================================================================

@dataclass(frozen=True)
class LanguageDefinition:
    """A language given either by listing its words or by construction rules.

    Demonstrative mode carries the explicit finite word list. Constructive
    mode carries an alphabet; the words are the printed well-formed formulas,
    realized lazily up to a requested size.
    """

    mode: str
    words: tuple = ()
    alphabet: Optional[Alphabet] = None

    def __post_init__(self):
        if self.mode not in ("demonstrative", "constructive"):
            raise AlphabetError(f"unknown language mode: {self.mode!r}")
        object.__setattr__(self, "words", tuple(self.words))
        if self.mode == "demonstrative":
            if len(set(self.words)) != len(self.words):
                raise AlphabetError("demonstrative language lists a word twice")
            if self.alphabet is not None:
                raise AlphabetError("demonstrative language takes no alphabet")
        else:
            if self.alphabet is None:
                raise AlphabetError("constructive language requires an alphabet")
            if self.words:
                raise AlphabetError("constructive language takes no word list")

    def produce(self, max_size: Optional[int] = None, limit: Optional[int] = None) -> tuple:
        if self.mode == "demonstrative":
            return self.words
        if max_size is None:
            raise BudgetExceededError("constructive language production needs a size bound")
        return tuple(print_formula(w) for w in enumerate_wffs(self.alphabet, max_size, limit))

    def accepts(self, word: str) -> bool:
        if self.mode == "demonstrative":
            return word in self.words
        try:
            parse_formula(word, self.alphabet)
        except ParseError:
            return False
        return True
