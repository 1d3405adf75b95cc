"""Four-valued interpretations, canonical models and model checking.

An interpretation keeps positive extensions explicitly and derives the
negative extension of an element from the positive extension of its
complement.  The complement map is partial and involutive: elements
with no registered complement simply have empty negative extensions,
and every semantic condition that would mention a missing complement is
vacuous for it.

``canonical_model`` builds the interpretation induced by a graph's full
closure: elements are the closure's own terms, denotation is identity,
and extensions start from the closure's triples.  Star terms denote
nothing; a triple with a star term constrains extensions through its
subscript class instead, so star positions are excluded from the pair
extensions.  Extensions are then saturated semantically, because a
blank or a literal below a subproperty statement acquires obligations
that no well-formed triple can record; see ``_saturate``.  The result
satisfies every graph, including contradictory ones, which is the
paraconsistency property the test suite exercises.

``check_model`` verifies a graph against an interpretation and reports
each failed condition by name, e.g. ``Simple.2`` or ``Disjointness
I.3.Symmetry``.  Blank nodes without a fixed denotation are treated
existentially with a backtracking search over the resource domain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import (
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
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
    RESERVED_VOCAB,
    SC,
    SP,
    TYPE,
    Blank,
    Graph,
    Iri,
    Literal,
    Neg,
    Star,
    Term,
    Triple,
    try_negate,
)
from .parser import parse_term, serialize_term
from .reasoner import closure

Element = Hashable
Pair = Tuple[Element, Element]

_EMPTY_PAIRS: FrozenSet[Pair] = frozenset()
_EMPTY_MEMBERS: FrozenSet[Element] = frozenset()


@dataclass(frozen=True)
class Violation:
    """One failed semantic condition with the offending elements."""

    condition: str
    detail: str

    def __str__(self) -> str:
        return f"{self.condition}: {self.detail}"


@dataclass(frozen=True)
class SatisfactionReport:
    satisfied: bool
    violations: Tuple[Violation, ...] = ()


@dataclass(frozen=True)
class Interpretation:
    """A four-valued interpretation.

    ``ext_p_pos`` and ``ext_c_pos`` store positive extensions sparsely;
    elements without an entry have empty extensions.  Negative
    extensions are not stored: they are read off the complement map,
    so ``ext_p_neg(p)`` is the positive extension of ``p``'s complement
    when one is registered and empty otherwise.
    """

    delta_r: FrozenSet[Element]
    delta_p: FrozenSet[Element]
    delta_c: FrozenSet[Element]
    delta_l: FrozenSet[Element]
    ext_p_pos: Mapping[Element, FrozenSet[Pair]]
    ext_c_pos: Mapping[Element, FrozenSet[Element]]
    complement: Mapping[Element, Element]
    denote: Mapping[Term, Element]
    _cache: Dict[str, object] = field(default_factory=dict, repr=False, compare=False)

    def complement_of(self, el: Element) -> Optional[Element]:
        return self.complement.get(el)

    def pos_pairs(self, p: Element) -> FrozenSet[Pair]:
        return self.ext_p_pos.get(p, _EMPTY_PAIRS)

    def neg_pairs(self, p: Element) -> FrozenSet[Pair]:
        mate = self.complement.get(p)
        if mate is None:
            return _EMPTY_PAIRS
        return self.ext_p_pos.get(mate, _EMPTY_PAIRS)

    def pos_members(self, c: Element) -> FrozenSet[Element]:
        return self.ext_c_pos.get(c, _EMPTY_MEMBERS)

    def neg_members(self, c: Element) -> FrozenSet[Element]:
        mate = self.complement.get(c)
        if mate is None:
            return _EMPTY_MEMBERS
        return self.ext_c_pos.get(mate, _EMPTY_MEMBERS)

    @property
    def ext_p_neg(self) -> Dict[Element, FrozenSet[Pair]]:
        return {p: self.neg_pairs(p) for p in self.delta_p}

    @property
    def ext_c_neg(self) -> Dict[Element, FrozenSet[Element]]:
        return {c: self.neg_members(c) for c in self.delta_c}


def project(pairs: Iterable[Pair], side: str) -> FrozenSet[Element]:
    """First ("up") or second ("down") components of a pair set."""
    if side == "up":
        return frozenset(x for x, _ in pairs)
    if side == "down":
        return frozenset(y for _, y in pairs)
    raise ValueError(f"unknown projection side {side!r}")


def _fmt(el: Element) -> str:
    if isinstance(el, Term):
        return serialize_term(el)
    return str(el)


def _fmt_pair(pair: Pair) -> str:
    return f"({_fmt(pair[0])}, {_fmt(pair[1])})"


def _is_negative_element(el: Element) -> bool:
    # Complement-introducing conditions bind only at elements that are not
    # already negations; the calculus mirrors them with the same restriction.
    if isinstance(el, Neg):
        return True
    return isinstance(el, str) and el.startswith("!")


# ---------------------------------------------------------------------------
# Canonical model
# ---------------------------------------------------------------------------


def _saturate(
    ext_p_pos: Dict[Element, Set[Pair]],
    ext_c_pos: Dict[Element, Set[Element]],
    complement: Mapping[Element, Element],
    star_obj: Sequence[Tuple[Element, Element, Element]],
    star_subj: Sequence[Tuple[Element, Element, Element]],
) -> None:
    """Grow the closure-backed extensions to their semantic fixpoint.

    Deduction cannot place a blank or a literal in predicate position,
    so the pair extension of such an element stays empty even when a
    subproperty pair demands that it absorb another extension.  The
    shortfall is repaired directly on the interpretation: pairs flow
    along subproperty pairs, members flow along subclass, domain and
    range pairs, star statements reach semantically added members, and
    the negative typing conditions fill complements where complements
    exist.  Class membership and the extension of ``type`` stay
    synchronized throughout.  The extensions of the reserved vocabulary
    elements other than ``type`` are never touched, so every addition
    here is forced by a satisfaction condition on models of the graph.
    """
    sp_pairs = list(ext_p_pos.get(SP, ()))
    sc_pairs = list(ext_p_pos.get(SC, ()))
    dom_pairs = list(ext_p_pos.get(DOM, ()))
    rng_pairs = list(ext_p_pos.get(RANGE, ()))
    changed = False

    def add_pair(p: Element, pr: Pair) -> None:
        nonlocal changed
        bucket = ext_p_pos.setdefault(p, set())
        if pr not in bucket:
            bucket.add(pr)
            changed = True

    def add_member(c: Element, x: Element) -> None:
        nonlocal changed
        bucket = ext_c_pos.setdefault(c, set())
        if x not in bucket:
            bucket.add(x)
            ext_p_pos.setdefault(TYPE, set()).add((x, c))
            changed = True

    while True:
        changed = False
        for p, q in sp_pairs:
            for pr in list(ext_p_pos.get(p, ())):
                add_pair(q, pr)
        for c, d in sc_pairs:
            for x in list(ext_c_pos.get(c, ())):
                add_member(d, x)
        for p, c in dom_pairs:
            for x, _ in list(ext_p_pos.get(p, ())):
                add_member(c, x)
        for p, c in rng_pairs:
            for _, y in list(ext_p_pos.get(p, ())):
                add_member(c, y)
        for p, c in dom_pairs:
            np_, nc = complement.get(p), complement.get(c)
            if np_ is None or nc is None:
                continue
            neg_m = ext_c_pos.get(nc, _EMPTY_MEMBERS)
            if not neg_m:
                continue
            for _, y in list(ext_p_pos.get(p, ())):
                for x in list(neg_m):
                    add_pair(np_, (x, y))
        for p, c in rng_pairs:
            np_, nc = complement.get(p), complement.get(c)
            if np_ is None or nc is None:
                continue
            neg_m = ext_c_pos.get(nc, _EMPTY_MEMBERS)
            if not neg_m:
                continue
            for x, _ in list(ext_p_pos.get(p, ())):
                for y in list(neg_m):
                    add_pair(np_, (x, y))
        for s_el, p_el, c_el in star_obj:
            for y in list(ext_c_pos.get(c_el, ())):
                add_pair(p_el, (s_el, y))
            np_, nc = complement.get(p_el), complement.get(c_el)
            if np_ is not None and nc is not None:
                for x, y in list(ext_p_pos.get(np_, ())):
                    if x == s_el:
                        add_member(nc, y)
        for o_el, p_el, c_el in star_subj:
            for x in list(ext_c_pos.get(c_el, ())):
                add_pair(p_el, (x, o_el))
            np_, nc = complement.get(p_el), complement.get(c_el)
            if np_ is not None and nc is not None:
                for x, y in list(ext_p_pos.get(np_, ())):
                    if y == o_el:
                        add_member(nc, x)
        if not changed:
            return


def canonical_model(g: Graph, cap: Optional[int] = None) -> "Interpretation":
    """The interpretation induced by the full closure of ``g``.

    Every term of the closure denotes itself.  The property and class
    domains are the recognized property/class terms, the resource
    domain collects subjects, objects and star subscripts, and the
    extensions hold the closure's triples, with star positions left
    out of the pair extensions and a final semantic saturation pass
    covering the consequences that triple syntax cannot express.
    """
    result = closure(g, "full", cap=cap)
    cl = result.closure
    delta_p: Set[Element] = set(result.property_terms)
    delta_c: Set[Element] = set(result.class_terms)
    delta_r: Set[Element] = set(delta_c)
    ext_p_pos: Dict[Element, Set[Pair]] = {}
    ext_c_pos: Dict[Element, Set[Element]] = {}
    star_obj: List[Tuple[Element, Element, Element]] = []
    star_subj: List[Tuple[Element, Element, Element]] = []
    for t in cl:
        for x in (t.s, t.o):
            if isinstance(x, Star):
                delta_r.add(x.cls)
            else:
                delta_r.add(x)
        if not isinstance(t.s, Star) and not isinstance(t.o, Star):
            ext_p_pos.setdefault(t.p, set()).add((t.s, t.o))
        if isinstance(t.o, Star):
            star_obj.append((t.s, t.p, t.o.cls))
        if isinstance(t.s, Star):
            star_subj.append((t.o, t.p, t.s.cls))
        if t.p == TYPE:
            ext_c_pos.setdefault(t.o, set()).add(t.s)
    complement: Dict[Element, Element] = {}
    for el in set(delta_r) | delta_p | delta_c:
        mate = try_negate(el) if isinstance(el, Term) else None
        if mate is not None:
            complement[el] = mate
            complement[mate] = el
    for el in list(delta_r):
        mate = complement.get(el)
        if mate is not None:
            delta_r.add(mate)
    _saturate(ext_p_pos, ext_c_pos, complement, star_obj, star_subj)
    delta_l = {el for el in delta_r if isinstance(el, Literal)}
    denote: Dict[Term, Element] = {}
    for el in delta_r | delta_p | delta_c:
        if isinstance(el, Term):
            denote[el] = el
    for v in RESERVED_VOCAB:
        denote[v] = v
    return Interpretation(
        delta_r=frozenset(delta_r),
        delta_p=frozenset(delta_p),
        delta_c=frozenset(delta_c),
        delta_l=frozenset(delta_l),
        ext_p_pos={k: frozenset(v) for k, v in ext_p_pos.items()},
        ext_c_pos={k: frozenset(v) for k, v in ext_c_pos.items()},
        complement=complement,
        denote=denote,
    )


def is_satisfiable(g: Graph, cap: Optional[int] = None) -> Tuple[bool, "Interpretation"]:
    """Always true, with the canonical model as witness."""
    model = canonical_model(g, cap=cap)
    return True, model


# ---------------------------------------------------------------------------
# Model checking
# ---------------------------------------------------------------------------


def _structural_violations(i: Interpretation) -> List[Violation]:
    out: List[Violation] = []
    for el in i.delta_c - i.delta_r:
        out.append(Violation("Interpretation.ClassDomain", f"class element {_fmt(el)} is not a resource"))
    for el in i.delta_l - i.delta_r:
        out.append(Violation("Interpretation.LiteralDomain", f"literal element {_fmt(el)} is not a resource"))
    for x, y in i.complement.items():
        if i.complement.get(y) != x:
            out.append(Violation("Interpretation.Complement.Involution", f"complement of {_fmt(x)} is {_fmt(y)} but not back"))
        for name, dom in (("resource", i.delta_r), ("property", i.delta_p), ("class", i.delta_c)):
            if x in dom and y not in dom:
                out.append(
                    Violation(
                        "Interpretation.Complement.Domain",
                        f"{_fmt(x)} is a {name} element but its complement {_fmt(y)} is not",
                    )
                )
    for p, pairs in i.ext_p_pos.items():
        if p not in i.delta_p:
            out.append(Violation("Interpretation.PropertyExtension.Domain", f"{_fmt(p)} has pairs but is not a property element"))
        for x, y in pairs:
            if x not in i.delta_r or y not in i.delta_r:
                out.append(Violation("Interpretation.PropertyExtension.Range", f"pair {_fmt_pair((x, y))} of {_fmt(p)} leaves the resource domain"))
    for c, members in i.ext_c_pos.items():
        if c not in i.delta_c:
            out.append(Violation("Interpretation.ClassExtension.Domain", f"{_fmt(c)} has members but is not a class element"))
        for x in members:
            if x not in i.delta_r:
                out.append(Violation("Interpretation.ClassExtension.Range", f"member {_fmt(x)} of {_fmt(c)} is not a resource"))
    union = i.delta_r | i.delta_p
    for t, el in i.denote.items():
        if el not in union:
            out.append(Violation("Interpretation.Denotation.Range", f"{serialize_term(t)} denotes {_fmt(el)} outside the domains"))
        if isinstance(t, Blank) and el not in i.delta_r:
            out.append(Violation("Interpretation.Denotation.Blank", f"blank {serialize_term(t)} denotes a non-resource"))
        if isinstance(t, Literal) and el not in (t, t.lexical):
            out.append(Violation("Interpretation.Denotation.Literal", f"literal {serialize_term(t)} does not denote itself"))
        if isinstance(t, Neg):
            base = i.denote.get(t.base)
            if base is None or i.complement.get(base) != el:
                out.append(
                    Violation(
                        "Interpretation.Denotation.Complement",
                        f"{serialize_term(t)} does not denote the complement of {serialize_term(t.base)}",
                    )
                )
    return out


def _global_violations(i: Interpretation) -> List[Violation]:
    out: List[Violation] = []
    vocab_el: Dict[Term, Optional[Element]] = {v: i.denote.get(v) for v in RESERVED_VOCAB}
    for v, el in sorted(vocab_el.items(), key=lambda kv: kv[0].name):
        if el is None:
            out.append(Violation("Interpretation.Vocabulary", f"reserved term {serialize_term(v)} has no denotation"))
        elif el not in i.delta_p:
            out.append(Violation("Typing II.1", f"{serialize_term(v)} denotes {_fmt(el)} outside the property domain"))
    vocab_els = {el for el in vocab_el.values() if el is not None}

    def pairs(v: Term) -> FrozenSet[Pair]:
        el = vocab_el.get(v)
        return i.pos_pairs(el) if el is not None else _EMPTY_PAIRS

    sp_p, sc_p, typ_p = pairs(SP), pairs(SC), pairs(TYPE)
    dom_p, rng_p = pairs(DOM), pairs(RANGE)
    botc_p, botp_p = pairs(BOTC), pairs(BOTP)

    def succ(rel: FrozenSet[Pair]) -> Dict[Element, Set[Element]]:
        m: Dict[Element, Set[Element]] = {}
        for x, y in rel:
            m.setdefault(x, set()).add(y)
        return m

    # Subproperty conditions.
    sp_succ = succ(sp_p)
    for a, bs in sp_succ.items():
        for b in bs:
            for c in sp_succ.get(b, ()):
                if c not in bs:
                    out.append(Violation("Subproperty.1", f"{_fmt(a)} under {_fmt(b)} under {_fmt(c)} but not {_fmt(a)} under {_fmt(c)}"))
    for p, q in sp_p:
        if p not in i.delta_p or q not in i.delta_p:
            out.append(Violation("Subproperty.2", f"subproperty pair {_fmt_pair((p, q))} leaves the property domain"))
            continue
        for pr in i.pos_pairs(p) - i.pos_pairs(q):
            out.append(Violation("Subproperty.2", f"pair {_fmt_pair(pr)} of {_fmt(p)} is missing from {_fmt(q)}"))
        if _is_negative_element(p) or _is_negative_element(q):
            continue
        cp, cq = i.complement.get(p), i.complement.get(q)
        if cp is not None and cq is not None and (cq, cp) not in sp_p:
            out.append(Violation("Subproperty.3", f"{_fmt_pair((p, q))} holds but not the contrapositive {_fmt_pair((cq, cp))}"))

    # Subclass conditions.
    sc_succ = succ(sc_p)
    for a, bs in sc_succ.items():
        for b in bs:
            for c in sc_succ.get(b, ()):
                if c not in bs:
                    out.append(Violation("Subclass.1", f"{_fmt(a)} under {_fmt(b)} under {_fmt(c)} but not {_fmt(a)} under {_fmt(c)}"))
    for c, d in sc_p:
        if c not in i.delta_c or d not in i.delta_c:
            out.append(Violation("Subclass.2", f"subclass pair {_fmt_pair((c, d))} leaves the class domain"))
            continue
        for x in i.pos_members(c) - i.pos_members(d):
            out.append(Violation("Subclass.2", f"member {_fmt(x)} of {_fmt(c)} is missing from {_fmt(d)}"))
        if _is_negative_element(c) or _is_negative_element(d):
            continue
        cc, cd = i.complement.get(c), i.complement.get(d)
        if cc is not None and cd is not None and (cd, cc) not in sc_p:
            out.append(Violation("Subclass.3", f"{_fmt_pair((c, d))} holds but not the contrapositive {_fmt_pair((cd, cc))}"))

    # Typing I: extension of type agrees with class membership.
    for c in i.ext_c_pos:
        if c not in i.delta_c:
            continue
        for x in i.pos_members(c):
            if (x, c) not in typ_p:
                out.append(Violation("Typing I.1", f"member {_fmt(x)} of {_fmt(c)} has no type pair"))
    for x, c in typ_p:
        if c in i.delta_c and x not in i.pos_members(c):
            out.append(Violation("Typing I.1", f"type pair {_fmt_pair((x, c))} without class membership"))
    for p, c in dom_p:
        if c not in i.delta_c:
            continue
        for x, y in i.pos_pairs(p):
            if x not in i.pos_members(c):
                out.append(Violation("Typing I.2", f"subject {_fmt(x)} of {_fmt(p)} is not in domain class {_fmt(c)}"))
        nm = i.neg_members(c)
        if nm and i.complement.get(p) is not None:
            # The condition constrains the negative extension of p, so it
            # is vacuous for an element with no complement.
            npairs = i.neg_pairs(p)
            for y in project(i.pos_pairs(p), "down"):
                for x in nm:
                    if (x, y) not in npairs:
                        out.append(Violation("Typing I.4", f"{_fmt(x)} outside domain class {_fmt(c)} lacks negative pair with {_fmt(y)} for {_fmt(p)}"))
    for p, c in rng_p:
        if c not in i.delta_c:
            continue
        for x, y in i.pos_pairs(p):
            if y not in i.pos_members(c):
                out.append(Violation("Typing I.3", f"object {_fmt(y)} of {_fmt(p)} is not in range class {_fmt(c)}"))
        nm = i.neg_members(c)
        if nm and i.complement.get(p) is not None:
            npairs = i.neg_pairs(p)
            for x in project(i.pos_pairs(p), "up"):
                for y in nm:
                    if (x, y) not in npairs:
                        out.append(Violation("Typing I.5", f"{_fmt(y)} outside range class {_fmt(c)} lacks negative pair with {_fmt(x)} for {_fmt(p)}"))

    # Typing II: domain membership of the reserved machinery.
    for p, c in dom_p:
        if p not in i.delta_p or c not in i.delta_c:
            out.append(Violation("Typing II.2", f"domain pair {_fmt_pair((p, c))} leaves the property/class domains"))
    for p, c in rng_p:
        if p not in i.delta_p or c not in i.delta_c:
            out.append(Violation("Typing II.3", f"range pair {_fmt_pair((p, c))} leaves the property/class domains"))
    for x, c in typ_p:
        if c not in i.delta_c:
            out.append(Violation("Typing II.4", f"type pair {_fmt_pair((x, c))} targets a non-class"))

    # Disjointness I: the disjointness relations themselves.
    for c, d in botc_p:
        if c not in i.delta_c or d not in i.delta_c:
            out.append(Violation("Disjointness I.1", f"class disjointness pair {_fmt_pair((c, d))} leaves the class domain"))
    for p, q in botp_p:
        if p not in i.delta_p or q not in i.delta_p:
            out.append(Violation("Disjointness I.2", f"property disjointness pair {_fmt_pair((p, q))} leaves the property domain"))

    def disjointness_family(rel: FrozenSet[Pair], sub: FrozenSet[Pair], dom: FrozenSet[Element], label: str) -> None:
        rel_set = rel
        for c, d in rel_set:
            if (d, c) not in rel_set:
                out.append(Violation(f"{label}.Symmetry", f"{_fmt_pair((c, d))} without {_fmt_pair((d, c))}"))
        for c, d in rel_set:
            for e, c2 in sub:
                if c2 == c and (e, d) not in rel_set:
                    out.append(Violation(f"{label}.Sub-Transitivity", f"{_fmt(e)} below {_fmt(c)} but {_fmt_pair((e, d))} missing"))
        for c, d in rel_set:
            if c != d:
                continue
            for e in dom - vocab_els:
                if (c, e) not in rel_set:
                    out.append(Violation(f"{label}.Exhaustive", f"self-disjoint {_fmt(c)} is not disjoint from {_fmt(e)}"))

    disjointness_family(botc_p, sc_p, i.delta_c, "Disjointness I.3")
    disjointness_family(botp_p, sp_p, i.delta_p, "Disjointness I.4")

    # Disjointness II: interaction with dom/range and complements.
    dom_by_class: Dict[Element, Set[Element]] = {}
    for p, c in dom_p:
        dom_by_class.setdefault(c, set()).add(p)
    rng_by_class: Dict[Element, Set[Element]] = {}
    for p, c in rng_p:
        rng_by_class.setdefault(c, set()).add(p)
    for c, d in botc_p:
        for p in dom_by_class.get(c, ()):
            for q in dom_by_class.get(d, ()):
                if (p, q) not in botp_p:
                    out.append(Violation("Disjointness II.1", f"domains {_fmt(c)}, {_fmt(d)} disjoint but properties {_fmt_pair((p, q))} are not"))
        for p in rng_by_class.get(c, ()):
            for q in rng_by_class.get(d, ()):
                if (p, q) not in botp_p:
                    out.append(Violation("Disjointness II.2", f"ranges {_fmt(c)}, {_fmt(d)} disjoint but properties {_fmt_pair((p, q))} are not"))
    for c, d in botc_p:
        if _is_negative_element(d):
            continue
        cd = i.complement.get(d)
        if cd is not None and (c, cd) not in sc_p:
            out.append(Violation("Disjointness II.3", f"{_fmt_pair((c, d))} disjoint but {_fmt(c)} not below complement {_fmt(cd)}"))
    for c, e in sc_p:
        if _is_negative_element(e):
            continue
        ce = i.complement.get(e)
        if ce is not None and (c, ce) not in botc_p:
            out.append(Violation("Disjointness II.3", f"{_fmt(c)} below {_fmt(e)} but not disjoint from complement {_fmt(ce)}"))
    for p, q in botp_p:
        if _is_negative_element(q):
            continue
        cq = i.complement.get(q)
        if cq is not None and (p, cq) not in sp_p:
            out.append(Violation("Disjointness II.4", f"{_fmt_pair((p, q))} disjoint but {_fmt(p)} not below complement {_fmt(cq)}"))
    for p, q in sp_p:
        if _is_negative_element(q):
            continue
        cq = i.complement.get(q)
        if cq is not None and (p, cq) not in botp_p:
            out.append(Violation("Disjointness II.4", f"{_fmt(p)} below {_fmt(q)} but not disjoint from complement {_fmt(cq)}"))
    return out


def _simple_violations(i: Interpretation, t: Triple, alpha: Mapping[Blank, Element]) -> List[Violation]:
    def el(x: Term) -> Optional[Element]:
        if isinstance(x, Blank) and x in alpha:
            return alpha[x]
        return i.denote.get(x)

    out: List[Violation] = []
    p_el = el(t.p)
    if p_el is None or p_el not in i.delta_p:
        cond = "Simple.2" if isinstance(t.o, Star) else "Simple.3" if isinstance(t.s, Star) else "Simple.1"
        out.append(Violation(cond, f"predicate of {_fmt_triple(t)} does not denote a property"))
        return out
    if isinstance(t.o, Star):
        s_el, c_el = el(t.s), i.denote.get(t.o.cls)
        if s_el is None or c_el is None or c_el not in i.delta_c:
            out.append(Violation("Simple.2", f"terms of {_fmt_triple(t)} lack denotations in the right domains"))
            return out
        ppos = i.pos_pairs(p_el)
        for y in i.pos_members(c_el):
            if (s_el, y) not in ppos:
                out.append(Violation("Simple.2", f"{_fmt_triple(t)}: member {_fmt(y)} of {_fmt(c_el)} is not reached"))
        nneg = i.neg_members(c_el)
        for x, y in i.neg_pairs(p_el):
            if x == s_el and y not in nneg:
                out.append(Violation("Simple.4", f"{_fmt_triple(t)}: negative pair with {_fmt(y)} outside the complement of {_fmt(c_el)}"))
        return out
    if isinstance(t.s, Star):
        o_el, c_el = el(t.o), i.denote.get(t.s.cls)
        if o_el is None or c_el is None or c_el not in i.delta_c:
            out.append(Violation("Simple.3", f"terms of {_fmt_triple(t)} lack denotations in the right domains"))
            return out
        ppos = i.pos_pairs(p_el)
        for x in i.pos_members(c_el):
            if (x, o_el) not in ppos:
                out.append(Violation("Simple.3", f"{_fmt_triple(t)}: member {_fmt(x)} of {_fmt(c_el)} does not reach it"))
        nneg = i.neg_members(c_el)
        for x, y in i.neg_pairs(p_el):
            if y == o_el and x not in nneg:
                out.append(Violation("Simple.5", f"{_fmt_triple(t)}: negative pair with {_fmt(x)} outside the complement of {_fmt(c_el)}"))
        return out
    s_el, o_el = el(t.s), el(t.o)
    if s_el is None or o_el is None:
        out.append(Violation("Simple.1", f"terms of {_fmt_triple(t)} lack denotations"))
        return out
    if (s_el, o_el) not in i.pos_pairs(p_el):
        out.append(Violation("Simple.1", f"{_fmt_triple(t)} has no pair in the extension of {_fmt(p_el)}"))
    return out


def _fmt_triple(t: Triple) -> str:
    return f"({serialize_term(t.s)}, {serialize_term(t.p)}, {serialize_term(t.o)})"


def _required_terms(t: Triple) -> List[Term]:
    req: List[Term] = []
    for x in (t.s, t.p, t.o):
        if isinstance(x, Blank):
            continue
        if isinstance(x, Star):
            req.append(x.cls)
        else:
            req.append(x)
    return req


def check_model(i: Interpretation, g: Graph) -> SatisfactionReport:
    """Check that ``i`` is well formed and satisfies ``g``.

    Blanks that already have a denotation keep it; the others are bound
    by an exhaustive search over the resource domain.  Condition names
    in the report follow the semantics: ``Interpretation.*`` for
    structural defects, ``Simple.*`` per triple, and the global
    ``Subproperty``/``Subclass``/``Typing``/``Disjointness`` families.
    """
    if "structural" not in i._cache:
        i._cache["structural"] = _structural_violations(i)
    if "global" not in i._cache:
        i._cache["global"] = _global_violations(i)
    violations: List[Violation] = list(i._cache["structural"]) + list(i._cache["global"])

    missing_terms: List[Term] = []
    seen_missing: Set[Term] = set()
    for t in g:
        for x in _required_terms(t):
            if x not in i.denote and x not in seen_missing:
                seen_missing.add(x)
                missing_terms.append(x)
    for x in missing_terms:
        violations.append(Violation("Interpretation.Vocabulary", f"term {serialize_term(x)} has no denotation"))

    free = sorted((b for b in g.blanks if b not in i.denote), key=lambda b: b.name)
    free_set = set(free)
    checkable = [t for t in g if not any(x in seen_missing for x in _required_terms(t))]
    ground = [t for t in checkable if not ({t.s, t.o} & free_set)]
    open_triples = [t for t in checkable if {t.s, t.o} & free_set]
    for t in ground:
        violations.extend(_simple_violations(i, t, {}))
    if open_triples:
        assignment = _find_assignment(i, open_triples, free)
        if assignment is None:
            names = ", ".join(serialize_term(b) for b in free)
            violations.append(Violation("Simple.Existential", f"no assignment of {names} over the resource domain satisfies the graph"))
    return SatisfactionReport(satisfied=not violations, violations=tuple(violations))


def _find_assignment(
    i: Interpretation, open_triples: Sequence[Triple], free: Sequence[Blank]
) -> Optional[Dict[Blank, Element]]:
    domain = sorted(i.delta_r, key=_fmt)
    order = sorted(free, key=lambda b: (-sum(1 for t in open_triples if b in (t.s, t.o)), b.name))
    by_blank: Dict[Blank, List[Triple]] = {b: [] for b in order}
    for t in open_triples:
        for x in (t.s, t.o):
            if isinstance(x, Blank) and x in by_blank:
                by_blank[x].append(t)
    alpha: Dict[Blank, Element] = {}

    def assigned(t: Triple) -> bool:
        return all(not isinstance(x, Blank) or x in alpha or x in i.denote for x in (t.s, t.o))

    def solve(k: int) -> bool:
        if k == len(order):
            return True
        b = order[k]
        for el in domain:
            alpha[b] = el
            if all(not assigned(t) or not _simple_violations(i, t, alpha) for t in by_blank[b]):
                if solve(k + 1):
                    return True
            del alpha[b]
        return False

    if solve(0):
        return dict(alpha)
    return None


def serialize_interpretation(i: Interpretation) -> str:
    """Fixture-format dump of an interpretation, sorted for stability.

    Elements that are terms are written in term syntax, so complements
    come out with their ``!`` prefix and round-trip as complement
    partners.  Reserved vocabulary terms that denote themselves are
    left implicit.
    """
    lines: List[str] = []
    plain_r = i.delta_r - i.delta_c - i.delta_l
    for el in sorted(plain_r, key=_fmt):
        lines.append(f"R {_fmt(el)}")
    for el in sorted(i.delta_p, key=_fmt):
        if isinstance(el, Term) and el in RESERVED_VOCAB:
            continue
        if el in {v.name for v in RESERVED_VOCAB}:
            continue
        lines.append(f"P {_fmt(el)}")
    for el in sorted(i.delta_c, key=_fmt):
        lines.append(f"C {_fmt(el)}")
    for el in sorted(i.delta_l, key=_fmt):
        lines.append(f"L {_fmt(el)}")
    for p in sorted(i.ext_p_pos, key=_fmt):
        for s, o in sorted(i.ext_p_pos[p], key=lambda pr: (_fmt(pr[0]), _fmt(pr[1]))):
            lines.append(f"P+ {_fmt(p)} {_fmt(s)} {_fmt(o)}")
    for c in sorted(i.ext_c_pos, key=_fmt):
        for x in sorted(i.ext_c_pos[c], key=_fmt):
            lines.append(f"C+ {_fmt(c)} {_fmt(x)}")
    for t in sorted(i.denote, key=serialize_term):
        el = i.denote[t]
        if t in RESERVED_VOCAB and el in (t, t.name):
            continue
        if isinstance(el, Term) and el == t:
            continue
        if isinstance(el, str):
            if el == serialize_term(t) or (isinstance(t, Literal) and el == t.lexical):
                continue
        lines.append(f"I {serialize_term(t)} {_fmt(el)}")
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Interpretation fixtures
# ---------------------------------------------------------------------------


def _element(token: str) -> str:
    bangs = 0
    while bangs < len(token) and token[bangs] == "!":
        bangs += 1
    base = token[bangs:]
    if len(base) >= 2 and base[0] == '"' and base[-1] == '"':
        # Literal-backed elements are identified by their lexical form.
        base = base[1:-1]
    if not base:
        raise ValueError("empty element name")
    return base if bangs % 2 == 0 else "!" + base


def load_interpretation(text: str) -> Interpretation:
    """Build an interpretation from its line-oriented fixture form.

    Directives: ``R e``, ``P p``, ``C c``, ``L e`` declare domain
    elements; ``P+ p s o`` and ``C+ c x`` add extension entries and
    register their elements; ``I term e`` sets a denotation.  An
    element written with a ``!`` prefix is the complement partner of
    the bare name, and domains are closed over registered complements.
    Reserved vocabulary terms denote themselves unless overridden, and
    every registered element also becomes the denotation of the
    same-named term unless an ``I`` line says otherwise, so a dumped
    interpretation can be checked against its graph directly.
    """
    delta_r: Set[Element] = set()
    delta_p: Set[Element] = set()
    delta_c: Set[Element] = set()
    delta_l: Set[Element] = set()
    ext_p_pos: Dict[Element, Set[Pair]] = {}
    ext_c_pos: Dict[Element, Set[Element]] = {}
    complement: Dict[Element, Element] = {}
    denote: Dict[Term, Element] = {}

    def element(token: str, lineno: int) -> str:
        try:
            el = _element(token)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if el.startswith("!"):
            complement[el] = el[1:]
            complement[el[1:]] = el
        return el

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        directive, args = parts[0], parts[1:]
        if directive == "R" and len(args) == 1:
            delta_r.add(element(args[0], lineno))
        elif directive == "P" and len(args) == 1:
            delta_p.add(element(args[0], lineno))
        elif directive == "C" and len(args) == 1:
            el = element(args[0], lineno)
            delta_c.add(el)
            delta_r.add(el)
        elif directive == "L" and len(args) == 1:
            el = element(args[0], lineno)
            delta_l.add(el)
            delta_r.add(el)
        elif directive == "P+" and len(args) == 3:
            p, s, o = (element(a, lineno) for a in args)
            delta_p.add(p)
            delta_r.add(s)
            delta_r.add(o)
            ext_p_pos.setdefault(p, set()).add((s, o))
        elif directive == "C+" and len(args) == 2:
            c, x = element(args[0], lineno), element(args[1], lineno)
            delta_c.add(c)
            delta_r.add(c)
            delta_r.add(x)
            ext_c_pos.setdefault(c, set()).add(x)
        elif directive == "I" and len(args) == 2:
            try:
                term = parse_term(args[0])
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
            el = element(args[1], lineno)
            denote[term] = el
            if el not in delta_p:
                delta_r.add(el)
        else:
            raise ValueError(f"line {lineno}: unknown or malformed directive {line!r}")

    for dom in (delta_r, delta_p, delta_c, delta_l):
        for el in list(dom):
            mate = complement.get(el)
            if mate is not None:
                dom.add(mate)
    for v in RESERVED_VOCAB:
        if v not in denote:
            denote[v] = v.name
            delta_p.add(v.name)
    for el in sorted(delta_r | delta_p | delta_c | delta_l, key=str):
        if not isinstance(el, str):
            continue
        lit = Literal(el)
        if lit not in denote:
            denote[lit] = el
        try:
            term = parse_term(el)
        except ValueError:
            continue
        if isinstance(term, (Iri, Neg)) and term not in denote:
            denote[term] = el
    return Interpretation(
        delta_r=frozenset(delta_r),
        delta_p=frozenset(delta_p),
        delta_c=frozenset(delta_c),
        delta_l=frozenset(delta_l),
        ext_p_pos={k: frozenset(v) for k, v in ext_p_pos.items()},
        ext_c_pos={k: frozenset(v) for k, v in ext_c_pos.items()},
        complement=complement,
        denote=denote,
    )
