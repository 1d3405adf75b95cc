"""Term algebra, triples and graphs for the rhodf logic.

The logic extends the small RDFS fragment built from the reserved names
``sp`` (subproperty), ``sc`` (subclass), ``type``, ``dom`` and ``range``
with three extra features:

* negated resources ``Neg(r)``, written ``!r``, defined only for plain
  non-reserved IRIs and involutive under :func:`negate`;
* universal star terms ``Star(c)``, written ``*c``, whose subscript is a
  class name (an IRI or a negated IRI);
* the disjointness predicates ``cdisj`` (class level) and ``pdisj``
  (property level), which join the reserved vocabulary.

A triple ``(s, p, o)`` is valid when

1. neither ``s`` nor ``o`` is one of the seven reserved names,
2. ``p`` is an IRI or a negated IRI (never a literal, blank or star),
3. ``s`` and ``o`` are not both star terms, and
4. a reserved predicate never takes a star subject or object.

Blank nodes and literals are allowed in subject and object position, so
both can act as classes or properties.  :func:`validate_triple` reports
violations of the rules above without raising; the :class:`Triple`
constructor enforces them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Tuple, Union

# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

_RESERVED_NAMES = frozenset({"sp", "sc", "type", "dom", "range", "cdisj", "pdisj"})


class Term:
    """Base class for all term shapes."""

    __slots__ = ()


@dataclass(frozen=True)
class Iri(Term):
    """A named resource.  Reserved names are ordinary ``Iri`` values."""

    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("IRI name must be non-empty")


@dataclass(frozen=True)
class Literal(Term):
    """A data value, identified by its lexical form."""

    lexical: str


@dataclass(frozen=True)
class Blank(Term):
    """A blank node.  Blank nodes act as the variables of entailment."""

    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("blank node label must be non-empty")


@dataclass(frozen=True)
class Neg(Term):
    """A negated resource.  Only plain non-reserved IRIs can be negated."""

    base: Iri

    def __post_init__(self) -> None:
        if not isinstance(self.base, Iri):
            raise ValueError(f"only plain IRIs can be negated, got {self.base!r}")
        if self.base.name in _RESERVED_NAMES:
            raise ValueError(f"reserved name {self.base.name!r} cannot be negated")


@dataclass(frozen=True)
class Star(Term):
    """A universal class term.  ``Star(c)`` stands for every member of ``c``."""

    cls: Union[Iri, Neg]

    def __post_init__(self) -> None:
        if isinstance(self.cls, Iri):
            if self.cls.name in _RESERVED_NAMES:
                raise ValueError(f"reserved name {self.cls.name!r} cannot be a star subscript")
        elif not isinstance(self.cls, Neg):
            raise ValueError(f"star subscript must be an IRI or negated IRI, got {self.cls!r}")


# ---------------------------------------------------------------------------
# Reserved vocabulary
# ---------------------------------------------------------------------------

SP = Iri("sp")
SC = Iri("sc")
TYPE = Iri("type")
DOM = Iri("dom")
RANGE = Iri("range")
BOTC = Iri("cdisj")
BOTP = Iri("pdisj")

#: The five plain RDFS-style reserved names.
PLAIN_VOCAB: FrozenSet[Iri] = frozenset({SP, SC, TYPE, DOM, RANGE})

#: All seven reserved names, including the two disjointness predicates.
RESERVED_VOCAB: FrozenSet[Iri] = PLAIN_VOCAB | {BOTC, BOTP}


def in_plain_vocab(t: Term) -> bool:
    """True for the five RDFS-style reserved names."""
    return isinstance(t, Iri) and t.name in ("sp", "sc", "type", "dom", "range")


def is_reserved(t: Term) -> bool:
    """True for any of the seven reserved names."""
    return isinstance(t, Iri) and t.name in _RESERVED_NAMES


# ---------------------------------------------------------------------------
# Normalization and negation
# ---------------------------------------------------------------------------


def is_negatable(t: Term) -> bool:
    """True when :func:`negate` accepts ``t`` (non-reserved IRIs and negations)."""
    return isinstance(t, Neg) or (isinstance(t, Iri) and t.name not in _RESERVED_NAMES)


def negate(t: Term) -> Term:
    """Return the complement of ``t``.

    A double negation request collapses, so ``negate(negate(a)) == a`` and
    no nested negation is ever constructed.  Blanks, literals, star terms
    and reserved names have no complement and raise ``ValueError``.
    """
    if isinstance(t, Neg):
        return t.base
    if isinstance(t, Iri):
        return Neg(t)
    raise ValueError(f"term {t!r} has no complement")


def try_negate(t: Term) -> Optional[Term]:
    """Like :func:`negate` but returns ``None`` where no complement exists."""
    if isinstance(t, Neg):
        return t.base
    if isinstance(t, Iri) and t.name not in _RESERVED_NAMES:
        return Neg(t)
    return None


def normalize(t: Term) -> Term:
    """Return the canonical form of ``t``.

    The constructors already collapse double negation (via :func:`negate`)
    and reject malformed nestings, so every constructible term is its own
    canonical form and this function is idempotent.
    """
    if not isinstance(t, Term):
        raise TypeError(f"expected a Term, got {t!r}")
    return t


# ---------------------------------------------------------------------------
# Triples
# ---------------------------------------------------------------------------

#: Violation codes reported by :func:`validate_triple`:
#:   cond1            a reserved name in subject or object position
#:   cond3            subject and object are both star terms
#:   cond4            a reserved predicate with a star subject or object
#:   predicate-shape  the predicate is not an IRI or negated IRI
VIOLATION_CODES = ("cond1", "cond3", "cond4", "predicate-shape")


def validate_triple(s: Term, p: Term, o: Term) -> Tuple[str, ...]:
    """Check the triple validity conditions, returning violation codes.

    An empty tuple means the triple is valid.  The check never raises for
    malformed combinations, only for non-``Term`` arguments.
    """
    for x in (s, p, o):
        if not isinstance(x, Term):
            raise TypeError(f"expected a Term, got {x!r}")
    violations = []
    if is_reserved(s) or is_reserved(o):
        violations.append("cond1")
    if isinstance(s, Star) and isinstance(o, Star):
        violations.append("cond3")
    if is_reserved(p) and (isinstance(s, Star) or isinstance(o, Star)):
        violations.append("cond4")
    if not isinstance(p, (Iri, Neg)):
        violations.append("predicate-shape")
    return tuple(violations)


class InvalidTripleError(ValueError):
    """Raised when a triple constructor receives an invalid combination."""

    def __init__(self, s: Term, p: Term, o: Term, violations: Tuple[str, ...]):
        super().__init__(f"invalid triple ({s!r}, {p!r}, {o!r}): {', '.join(violations)}")
        self.violations = violations


@dataclass(frozen=True)
class Triple:
    """A valid statement.  Construction enforces the validity conditions."""

    s: Term
    p: Term
    o: Term

    def __post_init__(self) -> None:
        violations = validate_triple(self.s, self.p, self.o)
        if violations:
            raise InvalidTripleError(self.s, self.p, self.o, violations)

    def terms(self) -> Tuple[Term, Term, Term]:
        return (self.s, self.p, self.o)


def try_triple(s: Term, p: Term, o: Term) -> Optional[Triple]:
    """Build a triple, or return ``None`` when the combination is invalid."""
    if validate_triple(s, p, o):
        return None
    return Triple(s, p, o)


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


class Graph:
    """An immutable set of triples.

    Iteration follows first-insertion order so that every downstream
    computation is deterministic, while equality and hashing treat a graph
    as the plain set of its triples.
    """

    __slots__ = ("_order", "_set")

    def __init__(self, triples: Iterable[Triple] = ()):
        order = []
        seen = set()
        for t in triples:
            if not isinstance(t, Triple):
                raise TypeError(f"expected a Triple, got {t!r}")
            if t not in seen:
                seen.add(t)
                order.append(t)
        self._order: Tuple[Triple, ...] = tuple(order)
        self._set: FrozenSet[Triple] = frozenset(seen)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._order)

    def __len__(self) -> int:
        return len(self._order)

    def __contains__(self, t: object) -> bool:
        return t in self._set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"Graph({len(self._order)} triples)"

    def triples(self) -> Tuple[Triple, ...]:
        return self._order

    def union(self, other: "Graph") -> "Graph":
        return Graph(self._order + other._order)

    def issubset(self, other: "Graph") -> bool:
        return self._set <= other._set

    @property
    def universe(self) -> FrozenSet[Term]:
        """All terms occurring in subject, predicate or object position."""
        out = set()
        for t in self._order:
            out.add(t.s)
            out.add(t.p)
            out.add(t.o)
        return frozenset(out)

    @property
    def blanks(self) -> FrozenSet[Blank]:
        return frozenset(t for t in self.universe if isinstance(t, Blank))

    @property
    def is_ground(self) -> bool:
        return not self.blanks

    @property
    def star_subscripts(self) -> FrozenSet[Term]:
        """Subscripts of every star term occurring in the graph."""
        out = set()
        for t in self._order:
            for x in (t.s, t.o):
                if isinstance(x, Star):
                    out.add(x.cls)
        return frozenset(out)


EMPTY_GRAPH = Graph()


# ---------------------------------------------------------------------------
# Blank-node maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VariableMap:
    """A substitution sending blank nodes to terms (identity elsewhere)."""

    assignment: Mapping[Blank, Term]

    @classmethod
    def identity(cls) -> "VariableMap":
        return cls({})

    @classmethod
    def of(cls, pairs: Dict[Blank, Term]) -> "VariableMap":
        return cls(dict(pairs))

    @property
    def is_identity(self) -> bool:
        return all(k == v for k, v in self.assignment.items())

    def __len__(self) -> int:
        return len(self.assignment)

    def items(self) -> Iterable[Tuple[Blank, Term]]:
        return self.assignment.items()

    def apply(self, t: Term) -> Term:
        """Image of a term.  Blanks are only mapped at the top level since
        star subscripts can never be blank."""
        if isinstance(t, Blank):
            return self.assignment.get(t, t)
        return t

    def apply_triple(self, t: Triple) -> Triple:
        return Triple(self.apply(t.s), self.apply(t.p), self.apply(t.o))


def apply_map(mu: VariableMap, g: Graph) -> Graph:
    """Apply ``mu`` to every triple of ``g``.

    Distinct triples may collapse to one image.  If any image violates the
    triple validity conditions the substitution is rejected with
    :class:`InvalidTripleError`.
    """
    return Graph(mu.apply_triple(t) for t in g)
