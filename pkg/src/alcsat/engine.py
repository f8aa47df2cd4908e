"""Clause-set decision procedure with backtracking and trace recording.

Rule systems
    basic      A1, A2, A3
    optimized  A1+, A2+, A3

A1 collapses a chosen clause to one of its literals.  A1+ additionally
collapses every clause containing the chosen literal and deletes the
complementary literal from every clause containing it.  A2 consumes a
universal literal: clauses containing it are removed and its body is
merged into the body of every same-role existential literal.  A2+ is the
same transformation gated on every clause being a unit.  A3 applies when
a member consists solely of name units and existential units: one
existential unit is removed and its body becomes a new member, linked by
a role-labeled edge.

Scheduling (the deterministic order that makes traces reproducible):
members are visited in index order; within a member the first non-unit
clause in canonical order is the A1/A1+ target, branching over its
literals in canonical order; once all clauses are units, A2/A2+ fires on
the first universal unit; then A3 peels the first existential unit.  The
only backtracking choice points are the A1/A1+ literal picks (plus the
universal picks under ``a2_anywhere``, which enables consuming a
universal literal sitting inside a non-unit clause and discarding its
siblings).  A3 target order is fixed: peeling commutes, each existential
spawns an independent child.

A member is clashed when it contains the empty clause or two
complementary unit clauses; any clashed member prunes the whole node.
An empty member (no clauses) is trivially satisfiable, never a clash.

Termination is witnessed by an executable measure: members are stratified
by maximum quantifier nesting depth, and per stratum the triple
(universal-literal occurrences, sum of clause sizes beyond one,
existential-unit count) is summed.  Comparing strata deepest-first, every
rule application strictly decreases the measure; :func:`decide_sat`
asserts this at each step.

``decide_sat`` is a self-contained computation over immutable snapshots;
concurrent calls are safe and a run's trace is a deterministic function
of input and strategy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from alcsat.clause_model import Family, family_to_json, family_from_json
from alcsat.normal_form import (
    Clause,
    ClauseSet,
    ExistsLit,
    ForallLit,
    Literal,
    Neg,
    Pos,
    canonicalize,
    clause_to_concept,
    clause_to_json,
    clause_from_json,
    complement,
    literal_to_json,
    literal_from_json,
)
from alcsat.syntax import render_concept


class Strategy(Enum):
    BASIC = "basic"
    PLUS = "plus"


RULE_A1 = "A1"
RULE_A1_PLUS = "A1+"
RULE_A2 = "A2"
RULE_A2_PLUS = "A2+"
RULE_A3 = "A3"


class PreconditionError(ValueError):
    """A rule was applied outside its precondition."""


class NotAllUnitError(PreconditionError):
    """A2+/A3 require every clause of the member to be a unit."""


class UniversalPresentError(PreconditionError):
    """A3 requires the member to hold no universal unit."""


class NonUnitPresentError(NotAllUnitError):
    """A3 hit a clause that is not a unit."""


class ResourceLimitError(Exception):
    """Node budget exhausted; verdict withheld.

    The partial derivation tree explored so far is available as ``tree``.
    """

    def __init__(self, max_nodes: int, tree: "DerivationTree") -> None:
        super().__init__(f"exceeded max_nodes={max_nodes}")
        self.max_nodes = max_nodes
        self.tree = tree


# --- Rule applications --------------------------------------------------


def apply_a1(f: ClauseSet, cl: Clause, lit: Literal) -> ClauseSet:
    """Collapse clause ``cl`` to the chosen literal."""
    if cl not in f:
        raise PreconditionError("target clause not in clause set")
    if lit not in cl:
        raise PreconditionError("chosen literal not in target clause")
    if len(cl) < 2:
        raise PreconditionError("A1 targets clauses with at least two literals")
    return ClauseSet(
        (Clause((lit,)) if c == cl else c) for c in f
    )


def apply_a1_plus(f: ClauseSet, cl: Clause, lit: Literal) -> ClauseSet:
    """Collapse every clause containing the chosen literal and strip its
    complement everywhere (possibly leaving an empty clause)."""
    if cl not in f:
        raise PreconditionError("target clause not in clause set")
    if lit not in cl:
        raise PreconditionError("chosen literal not in target clause")
    if len(cl) < 2:
        raise PreconditionError("A1+ targets clauses with at least two literals")
    comp = complement(lit)
    out = []
    for c in f:
        if lit in c:
            out.append(Clause((lit,)))
        elif comp in c:
            out.append(c.without(comp))
        else:
            out.append(c)
    return ClauseSet(out)


def apply_a2(f: ClauseSet, univ: Literal) -> ClauseSet:
    """Consume a universal literal: drop clauses holding it, merge its
    body into every same-role existential literal."""
    if not isinstance(univ, ForallLit):
        raise PreconditionError("A2 consumes a universal literal")
    if not any(univ in c for c in f):
        raise PreconditionError("universal literal does not occur")

    def merge(l: Literal) -> Literal:
        if isinstance(l, ExistsLit) and l.role == univ.role:
            return ExistsLit(l.role, univ.body.union(l.body))
        return l

    return ClauseSet(
        Clause(merge(l) for l in c) for c in f if univ not in c
    )


def apply_a2_plus(f: ClauseSet, univ_unit: Clause) -> ClauseSet:
    """A2 gated on an all-unit member; derives the same clauses as A2."""
    if any(len(c) != 1 for c in f):
        raise NotAllUnitError("A2+ requires every clause to be a unit")
    if univ_unit not in f or not univ_unit.is_unit:
        raise PreconditionError("target is not a unit clause of the member")
    lit = univ_unit.literals[0]
    if not isinstance(lit, ForallLit):
        raise PreconditionError("A2+ consumes a universal unit")
    return apply_a2(f, lit)


def apply_a3(fam: Family, i: int, ex_unit: Clause) -> Family:
    """Peel an existential unit off member ``i`` into a new member."""
    f = fam.members[i]
    for c in f:
        if len(c) != 1:
            raise NonUnitPresentError("A3 requires every clause to be a unit")
        if isinstance(c.literals[0], ForallLit):
            raise UniversalPresentError("A3 requires no universal unit")
    if ex_unit not in f or not ex_unit.is_unit:
        raise PreconditionError("target is not a unit clause of the member")
    lit = ex_unit.literals[0]
    if not isinstance(lit, ExistsLit):
        raise PreconditionError("A3 peels an existential unit")
    return fam.replace_member(i, f.without(ex_unit)).append_member(
        i, lit.role, lit.body
    )


# --- Clash and completeness ----------------------------------------------


def is_clash(f: ClauseSet, *, role_complements: bool = True) -> bool:
    """True iff ``f`` holds the empty clause or a complementary pair of
    unit clauses.

    Complementary quantified units (``exists R.F`` against
    ``forall R.CNF(!F)``, structurally) are detected by default; with
    ``role_complements=False`` only name pairs count, which may delay but
    never change verdicts (the pair is refuted by A2 and A3 in a child).
    """
    units = []
    for c in f:
        if c.is_empty:
            return True
        if c.is_unit:
            units.append(c.literals[0])
    unit_set = set(units)
    for lit in units:
        if not role_complements and not isinstance(lit, (Pos, Neg)):
            continue
        if complement(lit) in unit_set:
            return True
    return False


def _first_nonunit(f: ClauseSet) -> Optional[Clause]:
    for c in f:
        if len(c) >= 2:
            return c
    return None


def _forall_units(f: ClauseSet) -> list[Clause]:
    return [c for c in f if c.is_unit and isinstance(c.literals[0], ForallLit)]


def _exists_units(f: ClauseSet) -> list[Clause]:
    return [c for c in f if c.is_unit and isinstance(c.literals[0], ExistsLit)]


def _forall_literals(f: ClauseSet) -> list[Literal]:
    seen = []
    for c in f:
        for lit in c:
            if isinstance(lit, ForallLit) and lit not in seen:
                seen.append(lit)
    return seen


def _member_complete(f: ClauseSet, strategy: Strategy) -> bool:
    if _first_nonunit(f) is not None:
        return False  # A1/A1+ applies
    all_unit = all(c.is_unit for c in f)
    if strategy is Strategy.BASIC:
        if _forall_literals(f):
            return False  # A2 applies (on units here, non-units caught above)
    else:
        if all_unit and _forall_units(f):
            return False  # A2+ applies
    if all_unit and not _forall_units(f) and _exists_units(f):
        return False  # A3 applies
    return True


def is_complete(fam: Family, strategy: Strategy) -> bool:
    """True iff no rule of the strategy's system applies to any member."""
    return all(_member_complete(m, strategy) for m in fam.members)


# --- Derivation trees and verdicts ---------------------------------------


@dataclass(frozen=True, slots=True)
class RuleApplication:
    """One rule application: what was applied where, and the family it
    produced.  ``chosen_literal`` is the picked literal for A1/A1+ and
    the consumed universal for A2/A2+; it is absent for A3."""

    rule: str
    member_index: int
    target_clause: Clause
    chosen_literal: Optional[Literal]
    result: Family

    def __post_init__(self) -> None:
        if self.rule in (RULE_A1, RULE_A1_PLUS) and len(self.target_clause) < 2:
            raise ValueError("A1/A1+ target must have at least two literals")
        if self.rule in (RULE_A2, RULE_A2_PLUS) and not isinstance(
            self.chosen_literal, ForallLit
        ):
            raise ValueError("A2/A2+ consume a universal literal")
        if self.rule == RULE_A3:
            if self.chosen_literal is not None:
                raise ValueError("A3 records no chosen literal")
            if not (
                self.target_clause.is_unit
                and isinstance(self.target_clause.literals[0], ExistsLit)
            ):
                raise ValueError("A3 target must be an existential unit")


@dataclass(frozen=True, slots=True)
class TraceEdge:
    parent: int
    application: RuleApplication
    child: int


@dataclass(slots=True)
class DerivationTree:
    """Every family node materialized during the search, including clashed
    dead ends, in depth-first visit order (the root is node 0)."""

    nodes: list[Family] = field(default_factory=list)
    edges: list[TraceEdge] = field(default_factory=list)
    clash_nodes: list[int] = field(default_factory=list)


@dataclass(slots=True)
class DecisionStats:
    nodes_expanded: int
    clashes: int
    max_depth: int


@dataclass(slots=True)
class Verdict:
    satisfiable: bool
    witness: Optional[int]  # node index of the complete clash-free family
    tree: DerivationTree
    stats: DecisionStats

    @property
    def witness_family(self) -> Family:
        if self.witness is None:
            raise ValueError("no witness on an unsatisfiable verdict")
        return self.tree.nodes[self.witness]


# --- Termination measure --------------------------------------------------


def _literal_depth(lit: Literal) -> int:
    if isinstance(lit, (Pos, Neg)):
        return 0
    return 1 + _clause_set_depth(lit.body)


def _clause_set_depth(f: ClauseSet) -> int:
    return max((_literal_depth(l) for c in f for l in c), default=0)


def family_measure(fam: Family, depth_bound: int) -> tuple:
    """Lexicographic termination measure, strata by member depth
    (deepest first), each stratum a componentwise sum of
    (universal occurrences, excess clause width, existential units)."""
    strata = [[0, 0, 0] for _ in range(depth_bound + 1)]
    for m in fam.members:
        d = _clause_set_depth(m)
        if d > depth_bound:
            raise ValueError("member exceeds the run's depth bound")
        row = strata[d]
        for c in m:
            row[0] += sum(1 for l in c if isinstance(l, ForallLit))
            if len(c) >= 2:
                row[1] += len(c) - 1
            elif c.is_unit and isinstance(c.literals[0], ExistsLit):
                row[2] += 1
    return tuple(tuple(strata[d]) for d in range(depth_bound, -1, -1))


# --- Search ----------------------------------------------------------------


def _plan(
    fam: Family, strategy: Strategy, a2_anywhere: bool
) -> Optional[list[tuple[str, int, Clause, Optional[Literal]]]]:
    """Alternatives for the next step, or None when the family is complete.

    A list with several entries is a backtracking choice point; the
    alternatives are tried in order.
    """
    a1_rule = RULE_A1 if strategy is Strategy.BASIC else RULE_A1_PLUS
    a2_rule = RULE_A2 if strategy is Strategy.BASIC else RULE_A2_PLUS
    for i, f in enumerate(fam.members):
        target = _first_nonunit(f)
        if target is not None:
            alts: list[tuple[str, int, Clause, Optional[Literal]]] = [
                (a1_rule, i, target, lit) for lit in target
            ]
            if a2_anywhere and strategy is Strategy.BASIC:
                for univ in _forall_literals(f):
                    holder = next(c for c in f if univ in c)
                    alts.append((RULE_A2, i, holder, univ))
            return alts
        univs = _forall_units(f)
        if univs:
            if a2_anywhere and strategy is Strategy.BASIC:
                return [(RULE_A2, i, u, u.literals[0]) for u in univs]
            u = univs[0]
            return [(a2_rule, i, u, u.literals[0])]
        exs = _exists_units(f)
        if exs and all(c.is_unit for c in f):
            return [(RULE_A3, i, exs[0], None)]
    return None


def _apply_planned(
    fam: Family, rule: str, member: int, target: Clause, lit: Optional[Literal]
) -> Family:
    if rule == RULE_A1:
        return fam.replace_member(member, apply_a1(fam.members[member], target, lit))
    if rule == RULE_A1_PLUS:
        return fam.replace_member(
            member, apply_a1_plus(fam.members[member], target, lit)
        )
    if rule == RULE_A2:
        return fam.replace_member(member, apply_a2(fam.members[member], lit))
    if rule == RULE_A2_PLUS:
        return fam.replace_member(member, apply_a2_plus(fam.members[member], target))
    if rule == RULE_A3:
        return apply_a3(fam, member, target)
    raise ValueError(f"unknown rule {rule!r}")


def decide_sat(
    f: ClauseSet,
    strategy: Strategy = Strategy.PLUS,
    *,
    max_nodes: int = 1_000_000,
    a2_anywhere: bool = False,
    role_complement_clash: bool = True,
) -> Verdict:
    """Decide satisfiability of a clause set by depth-first search over
    the derivation tree.

    Returns a satisfiable verdict with the first complete clash-free
    family found, or an unsatisfiable one after exhausting every branch.
    The tree records every expanded node including clashed dead ends.
    Raises :class:`ResourceLimitError` once more than ``max_nodes``
    families have been materialized.
    """
    root = Family((canonicalize(f),))
    tree = DerivationTree(nodes=[root])
    depth_bound = max(_clause_set_depth(m) for m in root.members)
    max_depth_seen = 0

    def explore(node_id: int, fam: Family, depth: int) -> Optional[int]:
        nonlocal max_depth_seen
        max_depth_seen = max(max_depth_seen, depth)
        if any(
            is_clash(m, role_complements=role_complement_clash) for m in fam.members
        ):
            tree.clash_nodes.append(node_id)
            return None
        plan = _plan(fam, strategy, a2_anywhere)
        if plan is None:
            return node_id
        for rule, member, target, lit in plan:
            child = _apply_planned(fam, rule, member, target, lit)
            assert family_measure(child, depth_bound) < family_measure(
                fam, depth_bound
            ), "termination measure failed to decrease"
            if len(tree.nodes) >= max_nodes:
                raise ResourceLimitError(max_nodes, tree)
            child_id = len(tree.nodes)
            tree.nodes.append(child)
            tree.edges.append(
                TraceEdge(node_id, RuleApplication(rule, member, target, lit, child), child_id)
            )
            found = explore(child_id, child, depth + 1)
            if found is not None:
                return found
        return None

    witness = explore(0, root, 0)
    stats = DecisionStats(
        nodes_expanded=len(tree.nodes),
        clashes=len(tree.clash_nodes),
        max_depth=max_depth_seen,
    )
    return Verdict(witness is not None, witness, tree, stats)


def witness_path(verdict: Verdict) -> list[tuple[Family, Optional[RuleApplication]]]:
    """Root-to-witness node sequence with the application that produced
    each node (None for the root)."""
    if not verdict.satisfiable or verdict.witness is None:
        raise ValueError("witness path exists only for satisfiable verdicts")
    by_child = {e.child: e for e in verdict.tree.edges}
    path: list[tuple[Family, Optional[RuleApplication]]] = []
    node = verdict.witness
    while node in by_child:
        edge = by_child[node]
        path.append((verdict.tree.nodes[node], edge.application))
        node = edge.parent
    path.append((verdict.tree.nodes[node], None))
    path.reverse()
    return path


# --- Trace serialization and replay ----------------------------------------


def trace_to_json(verdict: Verdict, strategy: Strategy) -> dict:
    return {
        "strategy": strategy.value,
        "verdict": "sat" if verdict.satisfiable else "unsat",
        "nodes": [family_to_json(n) for n in verdict.tree.nodes],
        "edges": [
            {
                "from": e.parent,
                "rule": e.application.rule,
                "member": e.application.member_index,
                "clause": clause_to_json(e.application.target_clause),
                "literal": (
                    literal_to_json(e.application.chosen_literal)
                    if e.application.chosen_literal is not None
                    else None
                ),
                "to": e.child,
            }
            for e in verdict.tree.edges
        ],
        "clash_nodes": list(verdict.tree.clash_nodes),
    }


def trace_to_dot(trace: dict) -> str:
    """Graphviz rendering: node label is the family index, edge label the
    rule plus its target; clashed nodes are marked, complete clash-free
    ones doubly circled."""
    clash = set(trace["clash_nodes"])
    strategy = Strategy(trace["strategy"])
    lines = ["digraph derivation {", "  node [shape=circle];"]
    for i, node_data in enumerate(trace["nodes"]):
        fam = family_from_json(node_data)
        attrs = [f'label="S{i}"']
        if i in clash:
            attrs.append('xlabel="clash"')
            attrs.append("style=dashed")
        elif is_complete(fam, strategy) and not any(is_clash(m) for m in fam.members):
            attrs.append("shape=doublecircle")
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for e in trace["edges"]:
        target = render_concept(clause_to_concept(clause_from_json(e["clause"])))
        label = f"{e['rule']} m{e['member']}: {target}".replace('"', '\\"')
        lines.append(f'  n{e["from"]} -> n{e["to"]} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def replay_trace(trace: dict) -> list[str]:
    """Re-apply every recorded step and cross-check the trace.

    Returns a list of human-readable problems; an empty list means the
    trace is internally consistent: each edge's rule application
    reproduces the child family, clash marks are exactly the clashed
    nodes, and the verdict matches the recorded tree.
    """
    problems: list[str] = []
    strategy = Strategy(trace["strategy"])
    nodes = [family_from_json(n) for n in trace["nodes"]]
    for e in trace["edges"]:
        parent = nodes[e["from"]]
        target = clause_from_json(e["clause"])
        lit = literal_from_json(e["literal"]) if e["literal"] is not None else None
        try:
            result = _apply_planned(parent, e["rule"], e["member"], target, lit)
        except (PreconditionError, ValueError) as exc:
            problems.append(f"edge {e['from']}->{e['to']}: {exc}")
            continue
        if result != nodes[e["to"]]:
            problems.append(
                f"edge {e['from']}->{e['to']}: replayed family differs from recorded one"
            )
    recorded_clashes = set(trace["clash_nodes"])
    for i, fam in enumerate(nodes):
        clashed = any(is_clash(m) for m in fam.members)
        if clashed != (i in recorded_clashes):
            # Clash marks are only recorded for visited nodes, and every
            # recorded node was visited, so this is a hard mismatch.
            problems.append(f"node {i}: clash mark disagrees with family content")
    verdict_sat = trace["verdict"] == "sat"
    has_open_complete = any(
        i not in recorded_clashes and is_complete(fam, strategy)
        for i, fam in enumerate(nodes)
    )
    if verdict_sat and not has_open_complete:
        problems.append("verdict sat but no complete clash-free node recorded")
    if not verdict_sat and has_open_complete:
        problems.append("verdict unsat but a complete clash-free node exists")
    return problems
