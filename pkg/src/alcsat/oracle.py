"""Reference satisfiability decision by a classical concept tableau.

This is the differential-testing oracle: a textbook ALC tableau working
directly on concept trees, deliberately sharing no machinery with the
clause-set engine (it even carries its own negation-normal-form pass).
Without terminological axioms every existential expansion strictly
decreases quantifier depth, so no blocking is needed and the procedure
terminates on the finite-tree-model argument.

Disjunctions branch left-first and label sets are processed in a fixed
order, so runs are reproducible.  The oracle is allowed to be slow; it
runs at desk scale only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

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
from alcsat.tableau import Interpretation


def _nnf(c: Concept) -> Concept:
    # Local negation push-down, kept separate from the clause-set pipeline
    # on purpose: a shared bug could mask itself in differential tests.
    if isinstance(c, (Name, Top, Bottom)):
        return c
    if isinstance(c, And):
        return And(_nnf(c.left), _nnf(c.right))
    if isinstance(c, Or):
        return Or(_nnf(c.left), _nnf(c.right))
    if isinstance(c, Forall):
        return Forall(c.role, _nnf(c.body))
    if isinstance(c, Exists):
        return Exists(c.role, _nnf(c.body))
    if isinstance(c, Not):
        inner = c.body
        if isinstance(inner, Name):
            return c
        if isinstance(inner, Top):
            return Bottom()
        if isinstance(inner, Bottom):
            return Top()
        if isinstance(inner, Not):
            return _nnf(inner.body)
        if isinstance(inner, And):
            return Or(_nnf(Not(inner.left)), _nnf(Not(inner.right)))
        if isinstance(inner, Or):
            return And(_nnf(Not(inner.left)), _nnf(Not(inner.right)))
        if isinstance(inner, Forall):
            return Exists(inner.role, _nnf(Not(inner.body)))
        if isinstance(inner, Exists):
            return Forall(inner.role, _nnf(Not(inner.body)))
    raise TypeError(f"not a Concept: {c!r}")


@dataclass
class _ModelNode:
    """One individual of an open branch: its positive atoms and children."""

    atoms: frozenset[str]
    children: list[tuple[str, "_ModelNode"]] = field(default_factory=list)


def _expand(todo: list[Concept], pos: frozenset[str], neg: frozenset[str],
            exists: tuple[tuple[str, Concept], ...],
            forall: tuple[tuple[str, Concept], ...]) -> _ModelNode | None:
    """Saturate one tableau node; return an open-branch model or None."""
    while todo:
        c = todo.pop()
        if isinstance(c, Top):
            continue
        if isinstance(c, Bottom):
            return None
        if isinstance(c, Name):
            if c.name in neg:
                return None
            pos = pos | {c.name}
            continue
        if isinstance(c, Not):
            # NNF guarantees the body is a name.
            if c.body.name in pos:
                return None
            neg = neg | {c.body.name}
            continue
        if isinstance(c, And):
            todo.append(c.right)
            todo.append(c.left)
            continue
        if isinstance(c, Or):
            left = _expand(todo + [c.left], pos, neg, exists, forall)
            if left is not None:
                return left
            return _expand(todo + [c.right], pos, neg, exists, forall)
        if isinstance(c, Exists):
            exists = exists + ((c.role, c.body),)
            continue
        if isinstance(c, Forall):
            forall = forall + ((c.role, c.body),)
            continue
        raise TypeError(f"not a Concept: {c!r}")

    node = _ModelNode(atoms=pos)
    for role, body in exists:
        child_todo = [body] + [d for r, d in forall if r == role]
        child = _expand(child_todo, frozenset(), frozenset(), (), ())
        if child is None:
            return None
        node.children.append((role, child))
    return node


def _solve(c: Concept) -> _ModelNode | None:
    return _expand([_nnf(c)], frozenset(), frozenset(), (), ())


def oracle_sat(c: Concept) -> bool:
    """True iff ``c`` is ALC-satisfiable."""
    return _solve(c) is not None


def oracle_model(c: Concept) -> Interpretation | None:
    """A finite interpretation from the open branch, with the root as
    element 0, or None when ``c`` is unsatisfiable."""
    root = _solve(c)
    if root is None:
        return None
    names: dict[str, set[int]] = {}
    roles: dict[str, set[tuple[int, int]]] = {}
    domain: list[int] = []

    def emit(node: _ModelNode) -> int:
        ident = len(domain)
        domain.append(ident)
        for atom in node.atoms:
            names.setdefault(atom, set()).add(ident)
        for role, child in node.children:
            child_id = emit(child)
            roles.setdefault(role, set()).add((ident, child_id))
        return ident

    emit(root)
    return Interpretation(
        domain=frozenset(domain),
        name_ext={n: frozenset(v) for n, v in names.items()},
        role_ext={r: frozenset(v) for r, v in roles.items()},
    )


def oracle_equiv(c1: Concept, c2: Concept) -> bool:
    """True iff ``c1`` and ``c2`` denote the same sets in every
    interpretation (neither difference is satisfiable)."""
    return not oracle_sat(And(c1, Not(c2))) and not oracle_sat(And(Not(c1), c2))
