"""Random concept generation and differential testing.

The driver generates concepts from a seeded configuration, converts each
to clause-set form, and compares three independent verdicts: the
reference concept tableau, the basic rule system, and the optimized one.
Satisfiable runs are additionally checked for model soundness (the
extracted interpretation must satisfy the original concept at the root
individual).  Any failure is minimized by greedy subterm shrinking
before it is reported.

Trials are independent and deterministic per seed; the report aggregates
expanded-node statistics per strategy and lists every disagreement
(an empty list is the expected outcome).
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

from alcsat.engine import Strategy, decide_sat
from alcsat.normal_form import to_cnf
from alcsat.oracle import oracle_sat
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
    render_concept,
)
from alcsat.tableau import eval_concept, extract_tableau, tableau_to_interpretation

DEFAULT_WEIGHTS: Mapping[str, float] = {
    "name": 1.0,
    "top": 1.0,
    "bot": 1.0,
    "not": 1.0,
    "and": 1.0,
    "or": 1.0,
    "exists": 1.0,
    "forall": 1.0,
}


@dataclass(frozen=True)
class GenConfig:
    """Bounds and weights for random concept generation.

    ``max_depth`` counts nesting budget: at budget one only a name, a
    negated name, ``top``, or ``bot`` is produced.  All draws come from a
    generator seeded with ``seed``, so runs are reproducible.
    """

    max_depth: int = 3
    num_names: int = 4
    num_roles: int = 2
    connective_weights: Mapping[str, float] = field(
        default_factory=lambda: dict(DEFAULT_WEIGHTS)
    )
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.num_names < 1:
            raise ValueError("num_names must be at least 1")
        weights = {**DEFAULT_WEIGHTS, **dict(self.connective_weights)}
        if all(w <= 0 for w in weights.values()):
            raise ValueError("connective weights must not all be zero")
        object.__setattr__(self, "connective_weights", weights)

    def names(self) -> list[str]:
        letters = string.ascii_uppercase
        return [
            letters[i] if i < len(letters) else f"N{i}" for i in range(self.num_names)
        ]

    def roles(self) -> list[str]:
        base = ["R", "S", "T", "U", "V"]
        return [
            base[i] if i < len(base) else f"R{i}" for i in range(self.num_roles)
        ]


def _weighted_choice(rng: random.Random, options: list[tuple[str, float]]) -> str:
    total = sum(w for _, w in options)
    if total <= 0:
        return options[0][0]
    point = rng.random() * total
    acc = 0.0
    for kind, w in options:
        acc += w
        if point < acc:
            return kind
    return options[-1][0]


def gen_concept(cfg: GenConfig, rng: random.Random) -> Concept:
    """One random concept respecting the configuration bounds."""
    weights = cfg.connective_weights
    names = cfg.names()
    roles = cfg.roles()

    def leaf() -> Concept:
        kind = _weighted_choice(
            rng,
            [
                ("name", weights["name"]),
                ("not", weights["not"]),
                ("top", weights["top"]),
                ("bot", weights["bot"]),
            ],
        )
        if kind == "name":
            return Name(rng.choice(names))
        if kind == "not":
            return Not(Name(rng.choice(names)))
        if kind == "top":
            return Top()
        return Bottom()

    def build(budget: int) -> Concept:
        if budget <= 1:
            return leaf()
        options = [
            ("name", weights["name"]),
            ("top", weights["top"]),
            ("bot", weights["bot"]),
            ("not", weights["not"]),
            ("and", weights["and"]),
            ("or", weights["or"]),
        ]
        if roles:
            options.append(("exists", weights["exists"]))
            options.append(("forall", weights["forall"]))
        kind = _weighted_choice(rng, options)
        if kind == "name":
            return Name(rng.choice(names))
        if kind == "top":
            return Top()
        if kind == "bot":
            return Bottom()
        if kind == "not":
            return Not(build(budget - 1))
        if kind == "and":
            return And(build(budget - 1), build(budget - 1))
        if kind == "or":
            return Or(build(budget - 1), build(budget - 1))
        role = rng.choice(roles)
        if kind == "exists":
            return Exists(role, build(budget - 1))
        return Forall(role, build(budget - 1))

    return build(cfg.max_depth)


def _subterm_replacements(c: Concept) -> Iterator[Concept]:
    """Structurally smaller candidates, coarsest first."""
    if isinstance(c, (Top, Bottom)):
        return
    yield Top()
    yield Bottom()
    if isinstance(c, Not):
        yield c.body
        for repl in _subterm_replacements(c.body):
            yield Not(repl)
    elif isinstance(c, (And, Or)):
        yield c.left
        yield c.right
        ctor = And if isinstance(c, And) else Or
        for repl in _subterm_replacements(c.left):
            yield ctor(repl, c.right)
        for repl in _subterm_replacements(c.right):
            yield ctor(c.left, repl)
    elif isinstance(c, (Forall, Exists)):
        yield c.body
        ctor = Forall if isinstance(c, Forall) else Exists
        for repl in _subterm_replacements(c.body):
            yield ctor(c.role, repl)


def shrink_concept(c: Concept, fails) -> Concept:
    """Greedy shrink: repeatedly take the first smaller concept that still
    fails the predicate."""
    current = c
    progress = True
    while progress:
        progress = False
        for candidate in _subterm_replacements(current):
            if fails(candidate):
                current = candidate
                progress = True
                break
    return current


@dataclass(slots=True)
class TrialResult:
    index: int
    concept: Concept
    oracle: bool
    basic: bool
    plus: bool
    basic_nodes: int
    plus_nodes: int


@dataclass(slots=True)
class Disagreement:
    kind: str  # "verdict" or "model"
    trial: int
    concept: str
    detail: str
    shrunk: str

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "trial": self.trial,
            "concept": self.concept,
            "detail": self.detail,
            "shrunk": self.shrunk,
        }


@dataclass(slots=True)
class NodeStats:
    count: int = 0
    total: int = 0
    max: int = 0

    def add(self, nodes: int) -> None:
        self.count += 1
        self.total += nodes
        self.max = max(self.max, nodes)

    @property
    def mean(self) -> float:
        return self.total / self.count if self.count else 0.0

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "total": self.total,
            "max": self.max,
            "mean": self.mean,
        }


@dataclass(slots=True)
class Report:
    trials: int
    seed: int
    disagreements: list[Disagreement] = field(default_factory=list)
    basic_nodes: NodeStats = field(default_factory=NodeStats)
    plus_nodes: NodeStats = field(default_factory=NodeStats)
    trial_log: list[TrialResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "disagreements": [d.to_json() for d in self.disagreements],
            "nodes": {
                "basic": self.basic_nodes.to_json(),
                "plus": self.plus_nodes.to_json(),
            },
            "seed": self.seed,
        }


def _verdicts_disagree(c: Concept) -> Optional[str]:
    f = to_cnf(c)
    o = oracle_sat(c)
    b = decide_sat(f, Strategy.BASIC).satisfiable
    p = decide_sat(f, Strategy.PLUS).satisfiable
    if o == b == p:
        return None
    return f"oracle={o} basic={b} plus={p}"


def _model_unsound(c: Concept) -> Optional[str]:
    f = to_cnf(c)
    for strategy in (Strategy.BASIC, Strategy.PLUS):
        verdict = decide_sat(f, strategy)
        if not verdict.satisfiable:
            continue
        interp = tableau_to_interpretation(extract_tableau(verdict))
        if not eval_concept(c, interp, 0):
            return f"extracted {strategy.value} model does not satisfy the concept"
    return None


def run_differential(
    cfg: GenConfig, trials: int, include: Sequence[Concept] = ()
) -> Report:
    """Run ``trials`` generated concepts (after any injected ones) through
    the oracle and both strategies; check model soundness on every
    satisfiable verdict."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(cfg.seed)
    report = Report(trials=trials, seed=cfg.seed)
    for index in range(trials):
        if index < len(include):
            concept = include[index]
        else:
            concept = gen_concept(cfg, rng)
        f = to_cnf(concept)
        o = oracle_sat(concept)
        bv = decide_sat(f, Strategy.BASIC)
        pv = decide_sat(f, Strategy.PLUS)
        report.basic_nodes.add(bv.stats.nodes_expanded)
        report.plus_nodes.add(pv.stats.nodes_expanded)
        report.trial_log.append(
            TrialResult(
                index,
                concept,
                o,
                bv.satisfiable,
                pv.satisfiable,
                bv.stats.nodes_expanded,
                pv.stats.nodes_expanded,
            )
        )
        detail = _verdicts_disagree(concept)
        if detail is not None:
            shrunk = shrink_concept(concept, lambda x: _verdicts_disagree(x) is not None)
            report.disagreements.append(
                Disagreement(
                    "verdict",
                    index,
                    render_concept(concept),
                    detail,
                    render_concept(shrunk),
                )
            )
            continue
        detail = _model_unsound(concept)
        if detail is not None:
            shrunk = shrink_concept(concept, lambda x: _model_unsound(x) is not None)
            report.disagreements.append(
                Disagreement(
                    "model",
                    index,
                    render_concept(concept),
                    detail,
                    render_concept(shrunk),
                )
            )
    return report
