"""Clause-set normal form for ALC concepts.

A concept literal is a name, a negated name, or a quantified clause set
(``exists R.F`` / ``forall R.F`` with ``F`` itself in clause-set form).
A clause is a finite set of literals read disjunctively; a clause set is
a finite set of clauses read conjunctively.  :func:`to_cnf` transforms
any concept into this form by pushing negations to names (De Morgan and
double-negation laws), distributing disjunction over conjunction at
every nesting level, and flattening by associativity into sets.

Top/bottom handling: ``top`` and ``bot`` are simplified away
algebraically during normalization (``C & top = C``, ``C | bot = C``,
``C & bot = bot``, ``C | top = top``, ``!top = bot``,
``exists R.bot = bot``, ``forall R.top = top``).  A concept equivalent
to ``top`` becomes the empty clause set (vacuously satisfiable); one
equivalent to ``bot`` becomes ``{{}}``, the set holding the empty
clause.  Two residual forms survive: ``exists R.top`` becomes an
existential literal with an empty body (a bare demand for a successor)
and ``forall R.bot`` a universal literal with body ``{{}}`` (a demand
that no successor exists).

Clauses and clause sets are canonical by construction: constructors
deduplicate and order elements by a fixed structural total order
(positive name < negated name < existential < universal; within a kind
lexicographically by name/role, then recursively by body).  Structural
equality on these values is therefore set equality.

The distribution step is the naive recursive one and can blow up
exponentially in clause count; see the README for the trade-off.

Everything here is pure over immutable values and concurrently callable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Union

from alcsat.syntax import (
    And,
    Bottom,
    Concept,
    Exists,
    Forall,
    Name,
    Not,
    Or,
    Top,
)


@dataclass(frozen=True, slots=True)
class Pos:
    name: str


@dataclass(frozen=True, slots=True)
class Neg:
    name: str


@dataclass(frozen=True, slots=True)
class ExistsLit:
    role: str
    body: "ClauseSet"


@dataclass(frozen=True, slots=True)
class ForallLit:
    role: str
    body: "ClauseSet"


Literal = Union[Pos, Neg, ExistsLit, ForallLit]

_KIND_POS = 0
_KIND_NEG = 1
_KIND_EXISTS = 2
_KIND_FORALL = 3


def literal_key(lit: Literal) -> tuple:
    """Sort key realizing the structural total order on literals."""
    if isinstance(lit, Pos):
        return (_KIND_POS, lit.name)
    if isinstance(lit, Neg):
        return (_KIND_NEG, lit.name)
    if isinstance(lit, ExistsLit):
        return (_KIND_EXISTS, lit.role, clause_set_key(lit.body))
    if isinstance(lit, ForallLit):
        return (_KIND_FORALL, lit.role, clause_set_key(lit.body))
    raise TypeError(f"not a Literal: {lit!r}")


def clause_key(cl: "Clause") -> tuple:
    return tuple(literal_key(lit) for lit in cl)


def clause_set_key(f: "ClauseSet") -> tuple:
    return tuple(clause_key(cl) for cl in f)


def _sorted_unique(items: Iterable, key) -> tuple:
    seen = {}
    for item in items:
        seen.setdefault(key(item), item)
    return tuple(seen[k] for k in sorted(seen))


@dataclass(frozen=True, init=False, slots=True)
class Clause:
    """A disjunction of literals, stored as a canonically ordered set."""

    literals: tuple[Literal, ...]

    def __init__(self, literals: Iterable[Literal] = ()) -> None:
        object.__setattr__(self, "literals", _sorted_unique(literals, literal_key))

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __contains__(self, lit: Literal) -> bool:
        return lit in self.literals

    @property
    def is_unit(self) -> bool:
        return len(self.literals) == 1

    @property
    def is_empty(self) -> bool:
        return not self.literals

    def without(self, lit: Literal) -> "Clause":
        return Clause(l for l in self.literals if l != lit)


@dataclass(frozen=True, init=False, slots=True)
class ClauseSet:
    """A conjunction of clauses, stored as a canonically ordered set."""

    clauses: tuple[Clause, ...]

    def __init__(self, clauses: Iterable[Clause] = ()) -> None:
        object.__setattr__(self, "clauses", _sorted_unique(clauses, clause_key))

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def __contains__(self, cl: Clause) -> bool:
        return cl in self.clauses

    @property
    def is_empty(self) -> bool:
        return not self.clauses

    def union(self, other: "ClauseSet") -> "ClauseSet":
        return ClauseSet(self.clauses + other.clauses)

    def without(self, cl: Clause) -> "ClauseSet":
        return ClauseSet(c for c in self.clauses if c != cl)

    def issubset(self, other: "ClauseSet") -> bool:
        return all(cl in other for cl in self.clauses)


EMPTY_CLAUSE = Clause()
EMPTY_CLAUSE_SET = ClauseSet()
#: Clause-set encoding of an always-false concept: it holds the empty clause.
FALSE_CLAUSE_SET = ClauseSet((EMPTY_CLAUSE,))


def to_nnf(c: Concept) -> Concept:
    """Push negations down to names and simplify ``top``/``bot`` away.

    The result is semantically equivalent to ``c``; negation occurs only
    directly on names.  ``top``/``bot`` survive only as a whole-concept
    result or in the residual forms ``exists R.top`` / ``forall R.bot``.
    """
    if isinstance(c, (Name, Top, Bottom)):
        return c
    if isinstance(c, And):
        left, right = to_nnf(c.left), to_nnf(c.right)
        if isinstance(left, Bottom) or isinstance(right, Bottom):
            return Bottom()
        if isinstance(left, Top):
            return right
        if isinstance(right, Top):
            return left
        return And(left, right)
    if isinstance(c, Or):
        left, right = to_nnf(c.left), to_nnf(c.right)
        if isinstance(left, Top) or isinstance(right, Top):
            return Top()
        if isinstance(left, Bottom):
            return right
        if isinstance(right, Bottom):
            return left
        return Or(left, right)
    if isinstance(c, Forall):
        body = to_nnf(c.body)
        if isinstance(body, Top):
            return Top()
        return Forall(c.role, body)
    if isinstance(c, Exists):
        body = to_nnf(c.body)
        if isinstance(body, Bottom):
            return Bottom()
        return Exists(c.role, body)
    if isinstance(c, Not):
        inner = c.body
        if isinstance(inner, Name):
            return c
        if isinstance(inner, Top):
            return Bottom()
        if isinstance(inner, Bottom):
            return Top()
        if isinstance(inner, Not):
            return to_nnf(inner.body)
        if isinstance(inner, And):
            return to_nnf(Or(Not(inner.left), Not(inner.right)))
        if isinstance(inner, Or):
            return to_nnf(And(Not(inner.left), Not(inner.right)))
        if isinstance(inner, Forall):
            return to_nnf(Exists(inner.role, Not(inner.body)))
        if isinstance(inner, Exists):
            return to_nnf(Forall(inner.role, Not(inner.body)))
    raise TypeError(f"not a Concept: {c!r}")


def _cnf_of_nnf(c: Concept) -> ClauseSet:
    if isinstance(c, Name):
        return ClauseSet((Clause((Pos(c.name),)),))
    if isinstance(c, Top):
        return EMPTY_CLAUSE_SET
    if isinstance(c, Bottom):
        return FALSE_CLAUSE_SET
    if isinstance(c, Not):
        if not isinstance(c.body, Name):
            raise ValueError(f"not in negation normal form: {c!r}")
        return ClauseSet((Clause((Neg(c.body.name),)),))
    if isinstance(c, Exists):
        return ClauseSet((Clause((ExistsLit(c.role, _cnf_of_nnf(c.body)),)),))
    if isinstance(c, Forall):
        return ClauseSet((Clause((ForallLit(c.role, _cnf_of_nnf(c.body)),)),))
    if isinstance(c, And):
        return _cnf_of_nnf(c.left).union(_cnf_of_nnf(c.right))
    if isinstance(c, Or):
        left, right = _cnf_of_nnf(c.left), _cnf_of_nnf(c.right)
        # Cross product of clauses distributes | over &.  The top/bot
        # encodings fall out: {} absorbs, {{}} is the unit.
        return ClauseSet(
            Clause(cl.literals + cr.literals) for cl in left for cr in right
        )
    raise TypeError(f"not a Concept: {c!r}")


def to_cnf(c: Concept) -> ClauseSet:
    """Transform any concept into its canonical clause-set normal form."""
    return _cnf_of_nnf(to_nnf(c))


def literal_to_concept(lit: Literal) -> Concept:
    if isinstance(lit, Pos):
        return Name(lit.name)
    if isinstance(lit, Neg):
        return Not(Name(lit.name))
    if isinstance(lit, ExistsLit):
        return Exists(lit.role, clause_set_to_concept(lit.body))
    if isinstance(lit, ForallLit):
        return Forall(lit.role, clause_set_to_concept(lit.body))
    raise TypeError(f"not a Literal: {lit!r}")


def clause_to_concept(cl: Clause) -> Concept:
    """Re-expand a clause to a disjunction (the empty clause is ``bot``)."""
    if cl.is_empty:
        return Bottom()
    concepts = [literal_to_concept(lit) for lit in cl]
    node = concepts[0]
    for c in concepts[1:]:
        node = Or(node, c)
    return node


def clause_set_to_concept(f: ClauseSet) -> Concept:
    """Re-expand a clause set to a conjunction (the empty set is ``top``)."""
    if f.is_empty:
        return Top()
    concepts = [clause_to_concept(cl) for cl in f]
    node = concepts[0]
    for c in concepts[1:]:
        node = And(node, c)
    return node


@lru_cache(maxsize=None)
def complement(lit: Literal) -> Literal:
    """Complementary literal: names flip sign; ``exists R.F`` pairs with
    ``forall R.CNF(!F)`` and symmetrically.

    For names the complement is an involution; for quantified literals a
    double complement is semantically (not necessarily syntactically)
    equivalent to the original.
    """
    if isinstance(lit, Pos):
        return Neg(lit.name)
    if isinstance(lit, Neg):
        return Pos(lit.name)
    if isinstance(lit, ExistsLit):
        return ForallLit(lit.role, to_cnf(Not(clause_set_to_concept(lit.body))))
    if isinstance(lit, ForallLit):
        return ExistsLit(lit.role, to_cnf(Not(clause_set_to_concept(lit.body))))
    raise TypeError(f"not a Literal: {lit!r}")


def canonicalize(f: ClauseSet) -> ClauseSet:
    """Rebuild a clause set into its deterministic normal form.

    Constructors already deduplicate and order, so this is idempotent and
    mostly useful for values deserialized or assembled elsewhere.
    """
    return ClauseSet(Clause(cl.literals) for cl in f)


def is_canonical_clause_set(f: ClauseSet) -> bool:
    """True if every nesting level is deduplicated and ordered."""

    def lit_ok(lit: Literal) -> bool:
        if isinstance(lit, (ExistsLit, ForallLit)):
            return cs_ok(lit.body)
        return isinstance(lit, (Pos, Neg))

    def cl_ok(cl: Clause) -> bool:
        keys = [literal_key(l) for l in cl]
        return keys == sorted(set(keys)) and all(lit_ok(l) for l in cl)

    def cs_ok(cs: ClauseSet) -> bool:
        keys = [clause_key(c) for c in cs]
        return keys == sorted(set(keys)) and all(cl_ok(c) for c in cs)

    return cs_ok(f)


# --- JSON encoding -----------------------------------------------------
#
# literal   = {"pos": name} | {"neg": name}
#           | {"exists": {"role": r, "body": clauseset}}
#           | {"forall": {"role": r, "body": clauseset}}
# clause    = array of literal (canonical order)
# clauseset = array of clause (canonical order)


def literal_to_json(lit: Literal) -> dict:
    if isinstance(lit, Pos):
        return {"pos": lit.name}
    if isinstance(lit, Neg):
        return {"neg": lit.name}
    if isinstance(lit, ExistsLit):
        return {"exists": {"role": lit.role, "body": clause_set_to_json(lit.body)}}
    if isinstance(lit, ForallLit):
        return {"forall": {"role": lit.role, "body": clause_set_to_json(lit.body)}}
    raise TypeError(f"not a Literal: {lit!r}")


def clause_to_json(cl: Clause) -> list:
    return [literal_to_json(lit) for lit in cl]


def clause_set_to_json(f: ClauseSet) -> list:
    return [clause_to_json(cl) for cl in f]


def literal_from_json(data: dict) -> Literal:
    if "pos" in data:
        return Pos(data["pos"])
    if "neg" in data:
        return Neg(data["neg"])
    if "exists" in data:
        return ExistsLit(data["exists"]["role"], clause_set_from_json(data["exists"]["body"]))
    if "forall" in data:
        return ForallLit(data["forall"]["role"], clause_set_from_json(data["forall"]["body"]))
    raise ValueError(f"not a literal object: {data!r}")


def clause_from_json(data: list) -> Clause:
    return Clause(literal_from_json(item) for item in data)


def clause_set_from_json(data: list) -> ClauseSet:
    return ClauseSet(clause_from_json(item) for item in data)
