"""Rule instantiation and fixpoint closure.

Two rule sets are supported.  The ``rdf`` mode applies the classic RDFS
rules (subproperty and subclass transitivity, predicate lifting, typing
by domain and range, and the implicit-typing variants 5a/5b), treating
negated, star and disjointness triples as ordinary statements.  The
``full`` mode adds the rules for negation (contrapositives 2c/3c, the
negative typing rules 4c/4d), for star terms (2d/2e, 3d/3e, 4e-4h) and
for disjointness (6a-6e, 7a-7e, 8a/8b).

A rule instance fires only when every premise and the conclusion are
valid triples after meta-variable replacement; instances that would need
to negate a blank node or build a malformed triple are silently skipped.
Rules 6c/7c have a free conclusion variable, which ranges over the class
and property terms recognized in the current partial closure.

The closure engine is a deterministic semi-naive fixpoint: each round
only matches instantiations touching triples derived in the previous
round, rules fire in ascending :class:`RuleId` order, and triples keep
first-insertion order.  The first derivation of every new triple is
recorded for proof extraction.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from .core import (
    BOTC,
    BOTP,
    DOM,
    RANGE,
    SC,
    SP,
    TYPE,
    RESERVED_VOCAB,
    Graph,
    Iri,
    Neg,
    Star,
    Term,
    Triple,
    VariableMap,
    is_reserved,
    negate,
    try_negate,
    try_triple,
)


class RuleId(Enum):
    """Identifiers of the deductive rules, in canonical firing order."""

    R1A = "1a"
    R1B = "1b"
    R2A = "2a"
    R2B = "2b"
    R2C = "2c"
    R2D = "2d"
    R2E = "2e"
    R3A = "3a"
    R3B = "3b"
    R3C = "3c"
    R3D = "3d"
    R3E = "3e"
    R4A = "4a"
    R4B = "4b"
    R4C = "4c"
    R4D = "4d"
    R4E = "4e"
    R4F = "4f"
    R4G = "4g"
    R4H = "4h"
    R5A = "5a"
    R5B = "5b"
    R6A = "6a"
    R6B = "6b"
    R6C = "6c"
    R6D = "6d"
    R6E = "6e"
    R7A = "7a"
    R7B = "7b"
    R7C = "7c"
    R7D = "7d"
    R7E = "7e"
    R8A = "8a"
    R8B = "8b"

    def __str__(self) -> str:
        return self.value


#: Rules admitted in rdf mode (1a via entailment, 1b implicitly).
RDF_RULE_IDS: FrozenSet[RuleId] = frozenset(
    {
        RuleId.R1A,
        RuleId.R1B,
        RuleId.R2A,
        RuleId.R2B,
        RuleId.R3A,
        RuleId.R3B,
        RuleId.R4A,
        RuleId.R4B,
        RuleId.R5A,
        RuleId.R5B,
    }
)

#: All rules.
FULL_RULE_IDS: FrozenSet[RuleId] = frozenset(RuleId)

MODE_RULE_IDS: Mapping[str, FrozenSet[RuleId]] = {
    "rdf": RDF_RULE_IDS,
    "full": FULL_RULE_IDS,
}


@dataclass(frozen=True)
class ProofStep:
    """One derivation step.

    ``conclusion`` is the derived triple, except for the map rule 1a
    where it is ``None`` and ``map`` carries the blank-node substitution
    whose application to ``targets`` yields the listed premises.
    Rule 1b steps introduce input triples and have no premises.
    """

    rule: RuleId
    premises: Tuple[Triple, ...]
    conclusion: Optional[Triple]
    map: Optional[VariableMap] = None
    targets: Tuple[Triple, ...] = ()


@dataclass(frozen=True)
class Domains:
    """Class and property terms recognized in a graph."""

    class_terms: FrozenSet[Term]
    property_terms: FrozenSet[Term]


@dataclass(frozen=True)
class ClosureStats:
    iterations: int
    rule_fire_counts: Mapping[str, int]
    input_size: int
    output_size: int
    elapsed_s: float


@dataclass(frozen=True)
class ClosureResult:
    """Closure graph plus provenance and domain bookkeeping.

    ``provenance`` maps each derived (non-input) triple to the first
    :class:`ProofStep` that produced it.
    """

    closure: Graph
    provenance: Mapping[Triple, ProofStep]
    class_terms: FrozenSet[Term]
    property_terms: FrozenSet[Term]
    stats: ClosureStats


class ClosureCapError(RuntimeError):
    """The closure grew past the configured triple cap."""

    def __init__(self, cap: int, size: int):
        super().__init__(f"closure exceeded the cap of {cap} triples (reached {size})")
        self.cap = cap
        self.size = size


def default_cap(input_size: int) -> int:
    return 10 * input_size**3 + 1000


# ---------------------------------------------------------------------------
# Domain recognition
# ---------------------------------------------------------------------------


class _DomainTracker:
    """Accumulates class/property terms triple by triple.

    Both sets are kept closed under single negation as they grow.
    """

    __slots__ = ("class_terms", "property_terms")

    def __init__(self) -> None:
        self.class_terms: Set[Term] = set()
        self.property_terms: Set[Term] = set(RESERVED_VOCAB)

    def _add(self, bucket: Set[Term], t: Term) -> None:
        bucket.add(t)
        mate = try_negate(t)
        if mate is not None:
            bucket.add(mate)

    def add_triple(self, t: Triple) -> None:
        self._add(self.property_terms, t.p)
        p = t.p
        if p == SP:
            self._add(self.property_terms, t.s)
            self._add(self.property_terms, t.o)
        elif p == SC:
            self._add(self.class_terms, t.s)
            self._add(self.class_terms, t.o)
        elif p == TYPE:
            self._add(self.class_terms, t.o)
        elif p in (DOM, RANGE):
            self._add(self.property_terms, t.s)
            self._add(self.class_terms, t.o)
        elif p == BOTC:
            self._add(self.class_terms, t.s)
            self._add(self.class_terms, t.o)
        elif p == BOTP:
            self._add(self.property_terms, t.s)
        for x in (t.s, t.o):
            if isinstance(x, Star):
                self._add(self.class_terms, x.cls)


def recognize_domains(g: Graph) -> Domains:
    """Collect the class and property terms a graph talks about.

    Property terms: every predicate, subjects and objects of ``sp``,
    subjects of ``dom``/``range``/``pdisj``, plus the reserved
    vocabulary.  Class terms: objects of ``type``/``dom``/``range``,
    subjects and objects of ``sc``/``cdisj``, and star subscripts.  Both
    sets are closed under single negation.
    """
    tracker = _DomainTracker()
    for t in g:
        tracker.add_triple(t)
    return Domains(frozenset(tracker.class_terms), frozenset(tracker.property_terms))


# ---------------------------------------------------------------------------
# Triple index
# ---------------------------------------------------------------------------


class _Index:
    """Per-shape views of a triple set, for join-based rule matching."""

    __slots__ = (
        "all",
        "by_pred",
        "by_sp",
        "by_po",
        "sp",
        "sp_by_subj",
        "sp_by_obj",
        "sc",
        "sc_by_subj",
        "sc_by_obj",
        "dom",
        "dom_by_subj",
        "dom_by_obj",
        "rng",
        "rng_by_subj",
        "rng_by_obj",
        "botc",
        "botc_by_subj",
        "botc_by_obj",
        "botp",
        "botp_by_subj",
        "botp_by_obj",
        "typ",
        "typ_by_obj",
        "star_obj",
        "star_obj_by_sub",
        "star_obj_by_pred",
        "star_subj",
        "star_subj_by_sub",
        "star_subj_by_pred",
    )

    def __init__(self, triples: Iterable[Triple] = ()):
        self.all: List[Triple] = []
        self.by_pred: Dict[Term, List[Triple]] = {}
        self.by_sp: Dict[Tuple[Term, Term], List[Triple]] = {}
        self.by_po: Dict[Tuple[Term, Term], List[Triple]] = {}
        self.sp: List[Triple] = []
        self.sp_by_subj: Dict[Term, List[Triple]] = {}
        self.sp_by_obj: Dict[Term, List[Triple]] = {}
        self.sc: List[Triple] = []
        self.sc_by_subj: Dict[Term, List[Triple]] = {}
        self.sc_by_obj: Dict[Term, List[Triple]] = {}
        self.dom: List[Triple] = []
        self.dom_by_subj: Dict[Term, List[Triple]] = {}
        self.dom_by_obj: Dict[Term, List[Triple]] = {}
        self.rng: List[Triple] = []
        self.rng_by_subj: Dict[Term, List[Triple]] = {}
        self.rng_by_obj: Dict[Term, List[Triple]] = {}
        self.botc: List[Triple] = []
        self.botc_by_subj: Dict[Term, List[Triple]] = {}
        self.botc_by_obj: Dict[Term, List[Triple]] = {}
        self.botp: List[Triple] = []
        self.botp_by_subj: Dict[Term, List[Triple]] = {}
        self.botp_by_obj: Dict[Term, List[Triple]] = {}
        self.typ: List[Triple] = []
        self.typ_by_obj: Dict[Term, List[Triple]] = {}
        self.star_obj: List[Triple] = []
        self.star_obj_by_sub: Dict[Term, List[Triple]] = {}
        self.star_obj_by_pred: Dict[Term, List[Triple]] = {}
        self.star_subj: List[Triple] = []
        self.star_subj_by_sub: Dict[Term, List[Triple]] = {}
        self.star_subj_by_pred: Dict[Term, List[Triple]] = {}
        for t in triples:
            self.add(t)

    def add(self, t: Triple) -> None:
        self.all.append(t)
        self.by_pred.setdefault(t.p, []).append(t)
        self.by_sp.setdefault((t.s, t.p), []).append(t)
        self.by_po.setdefault((t.p, t.o), []).append(t)
        p = t.p
        if p == SP:
            self.sp.append(t)
            self.sp_by_subj.setdefault(t.s, []).append(t)
            self.sp_by_obj.setdefault(t.o, []).append(t)
        elif p == SC:
            self.sc.append(t)
            self.sc_by_subj.setdefault(t.s, []).append(t)
            self.sc_by_obj.setdefault(t.o, []).append(t)
        elif p == DOM:
            self.dom.append(t)
            self.dom_by_subj.setdefault(t.s, []).append(t)
            self.dom_by_obj.setdefault(t.o, []).append(t)
        elif p == RANGE:
            self.rng.append(t)
            self.rng_by_subj.setdefault(t.s, []).append(t)
            self.rng_by_obj.setdefault(t.o, []).append(t)
        elif p == BOTC:
            self.botc.append(t)
            self.botc_by_subj.setdefault(t.s, []).append(t)
            self.botc_by_obj.setdefault(t.o, []).append(t)
        elif p == BOTP:
            self.botp.append(t)
            self.botp_by_subj.setdefault(t.s, []).append(t)
            self.botp_by_obj.setdefault(t.o, []).append(t)
        elif p == TYPE:
            self.typ.append(t)
            self.typ_by_obj.setdefault(t.o, []).append(t)
        if isinstance(t.o, Star):
            self.star_obj.append(t)
            self.star_obj_by_sub.setdefault(t.o.cls, []).append(t)
            self.star_obj_by_pred.setdefault(t.p, []).append(t)
        if isinstance(t.s, Star):
            self.star_subj.append(t)
            self.star_subj_by_sub.setdefault(t.s.cls, []).append(t)
            self.star_subj_by_pred.setdefault(t.p, []).append(t)


def _try_star(t: Term) -> Optional[Star]:
    if isinstance(t, Neg):
        return Star(t)
    if isinstance(t, Iri) and not is_reserved(t):
        return Star(t)
    return None


def _neg_fresh(t: Term) -> Optional[Neg]:
    # Negation-introducing rules only manufacture complements of plain
    # resources; a term that is already negated never collapses here.
    if isinstance(t, Iri) and not is_reserved(t):
        return Neg(t)
    return None


# ---------------------------------------------------------------------------
# Rule matchers
# ---------------------------------------------------------------------------

# Each matcher yields (premises, s, p, o) for every instantiation with at
# least one premise in the delta index `dx`; the full state is in `ix`.
# Candidates are validated and deduplicated by the caller, so overlapping
# enumeration when dx == ix is harmless.

_Candidate = Tuple[Tuple[Triple, ...], Term, Term, Term]
_Matcher = Callable[["_Index", "_Index", "_RoundContext"], Iterator[_Candidate]]


@dataclass
class _RoundContext:
    """Extra state for the free-variable rules 6c/7c."""

    class_terms: Sequence[Term] = ()
    property_terms: Sequence[Term] = ()
    new_class_terms: Sequence[Term] = ()
    new_property_terms: Sequence[Term] = ()
    self_botc_delta: Sequence[Triple] = ()
    self_botc_old: Sequence[Triple] = ()
    self_botp_delta: Sequence[Triple] = ()
    self_botp_old: Sequence[Triple] = ()


def _m_2a(ix, dx, ctx):
    for t1 in dx.sp:
        for t2 in ix.sp_by_subj.get(t1.o, ()):
            yield (t1, t2), t1.s, SP, t2.o
    for t2 in dx.sp:
        for t1 in ix.sp_by_obj.get(t2.s, ()):
            yield (t1, t2), t1.s, SP, t2.o


def _m_2b(ix, dx, ctx):
    for t1 in dx.sp:
        for t2 in ix.by_pred.get(t1.s, ()):
            yield (t1, t2), t2.s, t1.o, t2.o
    for t2 in dx.all:
        for t1 in ix.sp_by_subj.get(t2.p, ()):
            yield (t1, t2), t2.s, t1.o, t2.o


def _m_2c(ix, dx, ctx):
    for t in dx.sp:
        nb, na = _neg_fresh(t.o), _neg_fresh(t.s)
        if nb is not None and na is not None:
            yield (t,), nb, SP, na


def _m_2d(ix, dx, ctx):
    for t1 in dx.star_obj:
        for t2 in ix.sp_by_subj.get(t1.p, ()):
            yield (t1, t2), t1.s, t2.o, t1.o
    for t2 in dx.sp:
        for t1 in ix.star_obj_by_pred.get(t2.s, ()):
            yield (t1, t2), t1.s, t2.o, t1.o


def _m_2e(ix, dx, ctx):
    for t1 in dx.star_subj:
        for t2 in ix.sp_by_subj.get(t1.p, ()):
            yield (t1, t2), t1.s, t2.o, t1.o
    for t2 in dx.sp:
        for t1 in ix.star_subj_by_pred.get(t2.s, ()):
            yield (t1, t2), t1.s, t2.o, t1.o


def _m_3a(ix, dx, ctx):
    for t1 in dx.sc:
        for t2 in ix.sc_by_subj.get(t1.o, ()):
            yield (t1, t2), t1.s, SC, t2.o
    for t2 in dx.sc:
        for t1 in ix.sc_by_obj.get(t2.s, ()):
            yield (t1, t2), t1.s, SC, t2.o


def _m_3b(ix, dx, ctx):
    for t1 in dx.sc:
        for t2 in ix.typ_by_obj.get(t1.s, ()):
            yield (t1, t2), t2.s, TYPE, t1.o
    for t2 in dx.typ:
        for t1 in ix.sc_by_subj.get(t2.o, ()):
            yield (t1, t2), t2.s, TYPE, t1.o


def _m_3c(ix, dx, ctx):
    for t in dx.sc:
        nb, na = _neg_fresh(t.o), _neg_fresh(t.s)
        if nb is not None and na is not None:
            yield (t,), nb, SC, na


def _m_3d(ix, dx, ctx):
    for t1 in dx.star_obj:
        for t2 in ix.sc_by_obj.get(t1.o.cls, ()):
            st = _try_star(t2.s)
            if st is not None:
                yield (t1, t2), t1.s, t1.p, st
    for t2 in dx.sc:
        for t1 in ix.star_obj_by_sub.get(t2.o, ()):
            st = _try_star(t2.s)
            if st is not None:
                yield (t1, t2), t1.s, t1.p, st


def _m_3e(ix, dx, ctx):
    for t1 in dx.star_subj:
        for t2 in ix.sc_by_obj.get(t1.s.cls, ()):
            st = _try_star(t2.s)
            if st is not None:
                yield (t1, t2), st, t1.p, t1.o
    for t2 in dx.sc:
        for t1 in ix.star_subj_by_sub.get(t2.o, ()):
            st = _try_star(t2.s)
            if st is not None:
                yield (t1, t2), st, t1.p, t1.o


def _m_4a(ix, dx, ctx):
    for t1 in dx.dom:
        for t2 in ix.by_pred.get(t1.s, ()):
            yield (t1, t2), t2.s, TYPE, t1.o
    for t2 in dx.all:
        for t1 in ix.dom_by_subj.get(t2.p, ()):
            yield (t1, t2), t2.s, TYPE, t1.o


def _m_4b(ix, dx, ctx):
    for t1 in dx.rng:
        for t2 in ix.by_pred.get(t1.s, ()):
            yield (t1, t2), t2.o, TYPE, t1.o
    for t2 in dx.all:
        for t1 in ix.rng_by_subj.get(t2.p, ()):
            yield (t1, t2), t2.o, TYPE, t1.o


def _m_4c(ix, dx, ctx):
    # (D,dom,B), (X,type,!B), (Z,D,Y) -> (X,!D,Y)
    def combos(t1):
        nd = try_negate(t1.s)
        nb = try_negate(t1.o)
        return nd, nb

    for t1 in dx.dom:
        nd, nb = combos(t1)
        if nd is None or nb is None:
            continue
        for t2 in ix.typ_by_obj.get(nb, ()):
            for t3 in ix.by_pred.get(t1.s, ()):
                yield (t1, t2, t3), t2.s, nd, t3.o
    for t2 in dx.typ:
        b = try_negate(t2.o)
        if b is None:
            continue
        for t1 in ix.dom_by_obj.get(b, ()):
            nd = try_negate(t1.s)
            if nd is None:
                continue
            for t3 in ix.by_pred.get(t1.s, ()):
                yield (t1, t2, t3), t2.s, nd, t3.o
    for t3 in dx.all:
        for t1 in ix.dom_by_subj.get(t3.p, ()):
            nd, nb = combos(t1)
            if nd is None or nb is None:
                continue
            for t2 in ix.typ_by_obj.get(nb, ()):
                yield (t1, t2, t3), t2.s, nd, t3.o


def _m_4d(ix, dx, ctx):
    # (D,range,B), (Y,type,!B), (X,D,Z) -> (X,!D,Y)
    for t1 in dx.rng:
        nd, nb = try_negate(t1.s), try_negate(t1.o)
        if nd is None or nb is None:
            continue
        for t2 in ix.typ_by_obj.get(nb, ()):
            for t3 in ix.by_pred.get(t1.s, ()):
                yield (t1, t2, t3), t3.s, nd, t2.s
    for t2 in dx.typ:
        b = try_negate(t2.o)
        if b is None:
            continue
        for t1 in ix.rng_by_obj.get(b, ()):
            nd = try_negate(t1.s)
            if nd is None:
                continue
            for t3 in ix.by_pred.get(t1.s, ()):
                yield (t1, t2, t3), t3.s, nd, t2.s
    for t3 in dx.all:
        for t1 in ix.rng_by_subj.get(t3.p, ()):
            nd, nb = try_negate(t1.s), try_negate(t1.o)
            if nd is None or nb is None:
                continue
            for t2 in ix.typ_by_obj.get(nb, ()):
                yield (t1, t2, t3), t3.s, nd, t2.s


def _m_4e(ix, dx, ctx):
    for t1 in dx.star_obj:
        for t2 in ix.typ_by_obj.get(t1.o.cls, ()):
            yield (t1, t2), t1.s, t1.p, t2.s
    for t2 in dx.typ:
        for t1 in ix.star_obj_by_sub.get(t2.o, ()):
            yield (t1, t2), t1.s, t1.p, t2.s


def _m_4f(ix, dx, ctx):
    for t1 in dx.star_subj:
        for t2 in ix.typ_by_obj.get(t1.s.cls, ()):
            yield (t1, t2), t2.s, t1.p, t1.o
    for t2 in dx.typ:
        for t1 in ix.star_subj_by_sub.get(t2.o, ()):
            yield (t1, t2), t2.s, t1.p, t1.o


def _m_4g(ix, dx, ctx):
    # (A,D,*C), (A,!D,Y) -> (Y,type,!C)
    for t1 in dx.star_obj:
        nd = try_negate(t1.p)
        if nd is None:
            continue
        for t2 in ix.by_sp.get((t1.s, nd), ()):
            yield (t1, t2), t2.o, TYPE, negate(t1.o.cls)
    for t2 in dx.all:
        nd = try_negate(t2.p)
        if nd is None:
            continue
        for t1 in ix.by_sp.get((t2.s, nd), ()):
            if isinstance(t1.o, Star):
                yield (t1, t2), t2.o, TYPE, negate(t1.o.cls)


def _m_4h(ix, dx, ctx):
    # (*C,D,B), (X,!D,B) -> (X,type,!C)
    for t1 in dx.star_subj:
        nd = try_negate(t1.p)
        if nd is None:
            continue
        for t2 in ix.by_po.get((nd, t1.o), ()):
            yield (t1, t2), t2.s, TYPE, negate(t1.s.cls)
    for t2 in dx.all:
        nd = try_negate(t2.p)
        if nd is None:
            continue
        for t1 in ix.by_po.get((nd, t2.o), ()):
            if isinstance(t1.s, Star):
                yield (t1, t2), t2.s, TYPE, negate(t1.s.cls)


def _m_5a(ix, dx, ctx):
    # (A,dom,B), (D,sp,A), (X,D,Y) -> (X,type,B)
    for t1 in dx.dom:
        for t2 in ix.sp_by_obj.get(t1.s, ()):
            for t3 in ix.by_pred.get(t2.s, ()):
                yield (t1, t2, t3), t3.s, TYPE, t1.o
    for t2 in dx.sp:
        for t1 in ix.dom_by_subj.get(t2.o, ()):
            for t3 in ix.by_pred.get(t2.s, ()):
                yield (t1, t2, t3), t3.s, TYPE, t1.o
    for t3 in dx.all:
        for t2 in ix.sp_by_subj.get(t3.p, ()):
            for t1 in ix.dom_by_subj.get(t2.o, ()):
                yield (t1, t2, t3), t3.s, TYPE, t1.o


def _m_5b(ix, dx, ctx):
    for t1 in dx.rng:
        for t2 in ix.sp_by_obj.get(t1.s, ()):
            for t3 in ix.by_pred.get(t2.s, ()):
                yield (t1, t2, t3), t3.o, TYPE, t1.o
    for t2 in dx.sp:
        for t1 in ix.rng_by_subj.get(t2.o, ()):
            for t3 in ix.by_pred.get(t2.s, ()):
                yield (t1, t2, t3), t3.o, TYPE, t1.o
    for t3 in dx.all:
        for t2 in ix.sp_by_subj.get(t3.p, ()):
            for t1 in ix.rng_by_subj.get(t2.o, ()):
                yield (t1, t2, t3), t3.o, TYPE, t1.o


def _m_6a(ix, dx, ctx):
    for t in dx.botc:
        yield (t,), t.o, BOTC, t.s


def _m_6b(ix, dx, ctx):
    for t1 in dx.botc:
        for t2 in ix.sc_by_obj.get(t1.s, ()):
            yield (t1, t2), t2.s, BOTC, t1.o
    for t2 in dx.sc:
        for t1 in ix.botc_by_subj.get(t2.o, ()):
            yield (t1, t2), t2.s, BOTC, t1.o


def _m_6c(ix, dx, ctx):
    for t in ctx.self_botc_delta:
        for b in ctx.class_terms:
            yield (t,), t.s, BOTC, b
    for t in ctx.self_botc_old:
        for b in ctx.new_class_terms:
            yield (t,), t.s, BOTC, b


def _m_6d(ix, dx, ctx):
    for t in dx.botc:
        nb = _neg_fresh(t.o)
        if nb is not None:
            yield (t,), t.s, SC, nb


def _m_6e(ix, dx, ctx):
    for t in dx.sc:
        nb = _neg_fresh(t.o)
        if nb is not None:
            yield (t,), t.s, BOTC, nb


def _m_7a(ix, dx, ctx):
    for t in dx.botp:
        yield (t,), t.o, BOTP, t.s


def _m_7b(ix, dx, ctx):
    for t1 in dx.botp:
        for t2 in ix.sp_by_obj.get(t1.s, ()):
            yield (t1, t2), t2.s, BOTP, t1.o
    for t2 in dx.sp:
        for t1 in ix.botp_by_subj.get(t2.o, ()):
            yield (t1, t2), t2.s, BOTP, t1.o


def _m_7c(ix, dx, ctx):
    for t in ctx.self_botp_delta:
        for b in ctx.property_terms:
            yield (t,), t.s, BOTP, b
    for t in ctx.self_botp_old:
        for b in ctx.new_property_terms:
            yield (t,), t.s, BOTP, b


def _m_7d(ix, dx, ctx):
    for t in dx.botp:
        nb = _neg_fresh(t.o)
        if nb is not None:
            yield (t,), t.s, SP, nb


def _m_7e(ix, dx, ctx):
    for t in dx.sp:
        nb = _neg_fresh(t.o)
        if nb is not None:
            yield (t,), t.s, BOTP, nb


def _m_8a(ix, dx, ctx):
    # (A,dom,C), (B,dom,D), (C,botc,D) -> (A,botp,B)
    for t1 in dx.dom:
        for t3 in ix.botc_by_subj.get(t1.o, ()):
            for t2 in ix.dom_by_obj.get(t3.o, ()):
                yield (t1, t2, t3), t1.s, BOTP, t2.s
    for t2 in dx.dom:
        for t3 in ix.botc_by_obj.get(t2.o, ()):
            for t1 in ix.dom_by_obj.get(t3.s, ()):
                yield (t1, t2, t3), t1.s, BOTP, t2.s
    for t3 in dx.botc:
        for t1 in ix.dom_by_obj.get(t3.s, ()):
            for t2 in ix.dom_by_obj.get(t3.o, ()):
                yield (t1, t2, t3), t1.s, BOTP, t2.s


def _m_8b(ix, dx, ctx):
    for t1 in dx.rng:
        for t3 in ix.botc_by_subj.get(t1.o, ()):
            for t2 in ix.rng_by_obj.get(t3.o, ()):
                yield (t1, t2, t3), t1.s, BOTP, t2.s
    for t2 in dx.rng:
        for t3 in ix.botc_by_obj.get(t2.o, ()):
            for t1 in ix.rng_by_obj.get(t3.s, ()):
                yield (t1, t2, t3), t1.s, BOTP, t2.s
    for t3 in dx.botc:
        for t1 in ix.rng_by_obj.get(t3.s, ()):
            for t2 in ix.rng_by_obj.get(t3.o, ()):
                yield (t1, t2, t3), t1.s, BOTP, t2.s


_MATCHERS: Dict[RuleId, _Matcher] = {
    RuleId.R2A: _m_2a,
    RuleId.R2B: _m_2b,
    RuleId.R2C: _m_2c,
    RuleId.R2D: _m_2d,
    RuleId.R2E: _m_2e,
    RuleId.R3A: _m_3a,
    RuleId.R3B: _m_3b,
    RuleId.R3C: _m_3c,
    RuleId.R3D: _m_3d,
    RuleId.R3E: _m_3e,
    RuleId.R4A: _m_4a,
    RuleId.R4B: _m_4b,
    RuleId.R4C: _m_4c,
    RuleId.R4D: _m_4d,
    RuleId.R4E: _m_4e,
    RuleId.R4F: _m_4f,
    RuleId.R4G: _m_4g,
    RuleId.R4H: _m_4h,
    RuleId.R5A: _m_5a,
    RuleId.R5B: _m_5b,
    RuleId.R6A: _m_6a,
    RuleId.R6B: _m_6b,
    RuleId.R6C: _m_6c,
    RuleId.R6D: _m_6d,
    RuleId.R6E: _m_6e,
    RuleId.R7A: _m_7a,
    RuleId.R7B: _m_7b,
    RuleId.R7C: _m_7c,
    RuleId.R7D: _m_7d,
    RuleId.R7E: _m_7e,
    RuleId.R8A: _m_8a,
    RuleId.R8B: _m_8b,
}


def _is_self_botc(t: Triple) -> bool:
    return t.p == BOTC and t.s == t.o


def _is_self_botp(t: Triple) -> bool:
    return t.p == BOTP and t.s == t.o


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def instantiate(rule: RuleId, g: Graph, domains: Optional[Domains] = None) -> List[ProofStep]:
    """All applications of ``rule`` to ``g`` that derive something new.

    Premises are drawn from ``g``; instantiations whose conclusion is
    invalid or already present are dropped.  ``domains`` feeds the free
    variable of rules 6c/7c and defaults to ``recognize_domains(g)``.
    """
    if rule in (RuleId.R1A, RuleId.R1B):
        raise ValueError(f"rule {rule} is not a closure rule")
    if domains is None:
        domains = recognize_domains(g)
    ix = _Index(g)
    ctx = _RoundContext(
        class_terms=sorted(domains.class_terms, key=repr),
        property_terms=sorted(domains.property_terms, key=repr),
        self_botc_delta=[t for t in g if _is_self_botc(t)],
        self_botp_delta=[t for t in g if _is_self_botp(t)],
    )
    steps: List[ProofStep] = []
    seen: Set[Tuple[Tuple[Triple, ...], Triple]] = set()
    for premises, s, p, o in _MATCHERS[rule](ix, ix, ctx):
        t = try_triple(s, p, o)
        if t is None or t in g:
            continue
        key = (premises, t)
        if key in seen:
            continue
        seen.add(key)
        steps.append(ProofStep(rule, premises, t))
    return steps


class _Engine:
    def __init__(self, g: Graph, rule_ids: FrozenSet[RuleId], cap: int):
        self.cap = cap
        self.rules = [r for r in RuleId if r in rule_ids and r in _MATCHERS]
        self.order: List[Triple] = []
        self.seen: Set[Triple] = set()
        self.index = _Index()
        self.tracker = _DomainTracker()
        self.provenance: Dict[Triple, ProofStep] = {}
        self.fires: Dict[str, int] = {r.value: 0 for r in self.rules}
        self.self_botc: List[Triple] = []
        self.self_botp: List[Triple] = []
        self.pending: List[Tuple[Triple, ProofStep]] = []
        self.pending_set: Set[Triple] = set()
        self.input = [t for t in g]
        for t in self.input:
            self._install(t)
        if len(self.order) > self.cap:
            raise ClosureCapError(self.cap, len(self.order))

    def _install(self, t: Triple) -> None:
        self.order.append(t)
        self.seen.add(t)
        self.index.add(t)
        self.tracker.add_triple(t)
        if _is_self_botc(t):
            self.self_botc.append(t)
        elif _is_self_botp(t):
            self.self_botp.append(t)

    def _emit(self, rule: RuleId, premises: Tuple[Triple, ...], s: Term, p: Term, o: Term) -> None:
        t = try_triple(s, p, o)
        if t is None or t in self.seen or t in self.pending_set:
            return
        if len(self.seen) + len(self.pending) + 1 > self.cap:
            raise ClosureCapError(self.cap, len(self.seen) + len(self.pending) + 1)
        self.pending.append((t, ProofStep(rule, premises, t)))
        self.pending_set.add(t)
        self.fires[rule.value] += 1

    def run(self) -> Tuple[int, int]:
        iterations = 0
        delta = list(self.input)
        prev_classes: Set[Term] = set()
        prev_props: Set[Term] = set()
        while delta:
            iterations += 1
            dx = _Index(delta)
            delta_set = set(delta)
            classes = sorted(self.tracker.class_terms, key=repr)
            props = sorted(self.tracker.property_terms, key=repr)
            ctx = _RoundContext(
                class_terms=classes,
                property_terms=props,
                new_class_terms=[c for c in classes if c not in prev_classes],
                new_property_terms=[p for p in props if p not in prev_props],
                self_botc_delta=[t for t in self.self_botc if t in delta_set],
                self_botc_old=[t for t in self.self_botc if t not in delta_set],
                self_botp_delta=[t for t in self.self_botp if t in delta_set],
                self_botp_old=[t for t in self.self_botp if t not in delta_set],
            )
            prev_classes = set(classes)
            prev_props = set(props)
            self.pending = []
            self.pending_set = set()
            for rule in self.rules:
                for premises, s, p, o in _MATCHERS[rule](self.index, dx, ctx):
                    self._emit(rule, premises, s, p, o)
            for t, step in self.pending:
                self._install(t)
                self.provenance[t] = step
            delta = [t for t, _ in self.pending]
        return iterations, len(self.order)


def closure(
    g: Graph,
    mode: str = "full",
    *,
    cap: Optional[int] = None,
    rule_ids: Optional[FrozenSet[RuleId]] = None,
) -> ClosureResult:
    """Least fixpoint of the selected rule set over ``g``.

    ``mode`` picks the rule set (``rdf`` or ``full``); ``rule_ids``
    overrides it for experiments such as disabling rules 5a/5b.  Raises
    :class:`ClosureCapError` when the result would exceed ``cap``
    (default ``10 * len(g)**3 + 1000``).
    """
    if rule_ids is None:
        if mode not in MODE_RULE_IDS:
            raise ValueError(f"unknown mode {mode!r}")
        rule_ids = MODE_RULE_IDS[mode]
    if cap is None:
        cap = default_cap(len(g))
    if cap <= 0:
        raise ValueError("triple cap must be positive")
    start = time.perf_counter()
    engine = _Engine(g, rule_ids, cap)
    iterations, size = engine.run()
    elapsed = time.perf_counter() - start
    return ClosureResult(
        closure=Graph(engine.order),
        provenance=engine.provenance,
        class_terms=frozenset(engine.tracker.class_terms),
        property_terms=frozenset(engine.tracker.property_terms),
        stats=ClosureStats(
            iterations=iterations,
            rule_fire_counts=dict(engine.fires),
            input_size=len(g),
            output_size=size,
            elapsed_s=elapsed,
        ),
    )
