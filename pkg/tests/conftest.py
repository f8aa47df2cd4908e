"""Shared test fixtures: the worked animal example and concept strategies."""

from __future__ import annotations

import hypothesis.strategies as st
import pytest

from alcsat.clause_model import Family, FamilyEdge
from alcsat.normal_form import (
    Clause,
    ClauseSet,
    ExistsLit,
    ForallLit,
    Neg,
    Pos,
)
from alcsat.syntax import And, Bottom, Exists, Forall, Name, Not, Or, Top

# One satisfiable concept whose decision runs need backtracking under both
# rule systems; all golden expectations below are frozen from its known
# derivations.
ANIMAL_TEXT = (
    "(Animal | (Black & forall hasPart.Small))"
    " & (!Animal | exists hasPart.(Leg & !Small))"
    " & !(exists hasPart.Leg & exists hasPart.Wing)"
)


def cs(*clauses: Clause) -> ClauseSet:
    return ClauseSet(clauses)


def cl(*lits) -> Clause:
    return Clause(lits)


A, B, S, L, W = Pos("Animal"), Pos("Black"), Pos("Small"), Pos("Leg"), Pos("Wing")
NA, NS, NL, NW = Neg("Animal"), Neg("Small"), Neg("Leg"), Neg("Wing")

FA_SMALL = ForallLit("hasPart", cs(cl(S)))
EX_LEG_NOT_SMALL = ExistsLit("hasPart", cs(cl(L), cl(NS)))
FA_NOT_LEG = ForallLit("hasPart", cs(cl(NL)))
FA_NOT_WING = ForallLit("hasPart", cs(cl(NW)))
EX_MERGED_LEG = ExistsLit("hasPart", cs(cl(NL), cl(L), cl(NS)))
EX_MERGED_WING = ExistsLit("hasPart", cs(cl(NW), cl(L), cl(NS)))

#: Clause-set form of the animal concept: exactly these four clauses.
ANIMAL_CNF = cs(
    cl(A, B),
    cl(A, FA_SMALL),
    cl(NA, EX_LEG_NOT_SMALL),
    cl(FA_NOT_LEG, FA_NOT_WING),
)


def _fam(*members: ClauseSet, edges: tuple[FamilyEdge, ...] = ()) -> Family:
    return Family(tuple(members), edges)


_CHILD_EDGE = (FamilyEdge(0, "hasPart", 1),)

#: Node-by-node derivation of the animal concept under the basic system,
#: in depth-first visit order.  Nodes 3 and 7 clash; node 10 is the witness.
ANIMAL_BASIC_NODES = [
    _fam(ANIMAL_CNF),
    _fam(cs(cl(A), cl(A, FA_SMALL), cl(NA, EX_LEG_NOT_SMALL), cl(FA_NOT_LEG, FA_NOT_WING))),
    _fam(cs(cl(A), cl(NA, EX_LEG_NOT_SMALL), cl(FA_NOT_LEG, FA_NOT_WING))),
    _fam(cs(cl(A), cl(NA), cl(FA_NOT_LEG, FA_NOT_WING))),
    _fam(cs(cl(A), cl(EX_LEG_NOT_SMALL), cl(FA_NOT_LEG, FA_NOT_WING))),
    _fam(cs(cl(A), cl(EX_LEG_NOT_SMALL), cl(FA_NOT_LEG))),
    _fam(cs(cl(A), cl(EX_MERGED_LEG))),
    _fam(cs(cl(A)), cs(cl(NL), cl(L), cl(NS)), edges=_CHILD_EDGE),
    _fam(cs(cl(A), cl(EX_LEG_NOT_SMALL), cl(FA_NOT_WING))),
    _fam(cs(cl(A), cl(EX_MERGED_WING))),
    _fam(cs(cl(A)), cs(cl(NW), cl(L), cl(NS)), edges=_CHILD_EDGE),
]

#: (parent, child, rule, member, chosen literal or None)
ANIMAL_BASIC_EDGES = [
    (0, 1, "A1", 0, A),
    (1, 2, "A1", 0, A),
    (2, 3, "A1", 0, NA),
    (2, 4, "A1", 0, EX_LEG_NOT_SMALL),
    (4, 5, "A1", 0, FA_NOT_LEG),
    (5, 6, "A2", 0, FA_NOT_LEG),
    (6, 7, "A3", 0, None),
    (4, 8, "A1", 0, FA_NOT_WING),
    (8, 9, "A2", 0, FA_NOT_WING),
    (9, 10, "A3", 0, None),
]

ANIMAL_BASIC_CLASHES = [3, 7]

#: The optimized system's derivation: node 4 clashes; node 7 is the witness.
ANIMAL_PLUS_NODES = [
    _fam(ANIMAL_CNF),
    _fam(cs(cl(A), cl(EX_LEG_NOT_SMALL), cl(FA_NOT_LEG, FA_NOT_WING))),
    _fam(cs(cl(A), cl(EX_LEG_NOT_SMALL), cl(FA_NOT_LEG))),
    _fam(cs(cl(A), cl(EX_MERGED_LEG))),
    _fam(cs(cl(A)), cs(cl(NL), cl(L), cl(NS)), edges=_CHILD_EDGE),
    _fam(cs(cl(A), cl(EX_LEG_NOT_SMALL), cl(FA_NOT_WING))),
    _fam(cs(cl(A), cl(EX_MERGED_WING))),
    _fam(cs(cl(A)), cs(cl(NW), cl(L), cl(NS)), edges=_CHILD_EDGE),
]

ANIMAL_PLUS_EDGES = [
    (0, 1, "A1+", 0, A),
    (1, 2, "A1+", 0, FA_NOT_LEG),
    (2, 3, "A2+", 0, FA_NOT_LEG),
    (3, 4, "A3", 0, None),
    (1, 5, "A1+", 0, FA_NOT_WING),
    (5, 6, "A2+", 0, FA_NOT_WING),
    (6, 7, "A3", 0, None),
]

ANIMAL_PLUS_CLASHES = [4]


# --- hypothesis strategies -------------------------------------------------

GEN_NAMES = ["A", "B", "C", "D"]
GEN_ROLES = ["R", "S"]

_leaves = st.one_of(
    st.sampled_from(GEN_NAMES).map(Name),
    st.just(Top()),
    st.just(Bottom()),
)


def _extend(sub):
    return st.one_of(
        sub.map(Not),
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Forall, st.sampled_from(GEN_ROLES), sub),
        st.builds(Exists, st.sampled_from(GEN_ROLES), sub),
    )


concepts = st.recursive(_leaves, _extend, max_leaves=10)
small_concepts = st.recursive(_leaves, _extend, max_leaves=6)


@pytest.fixture(scope="session")
def animal_concept():
    from alcsat.syntax import parse_concept

    return parse_concept(ANIMAL_TEXT)
