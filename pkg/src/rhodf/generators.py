"""Benchmark families and seeded random graphs.

``spchain`` and ``cubic`` are the two closed-form families used by the
growth-rate checks: the first closes quadratically over subproperty
transitivity, the second cubically once star triples are lifted across
the subproperty chain and then grounded on the class members.
``random_graph`` drives the property-based suites; it only ever emits
valid triples and is deterministic for a given seed.
"""

from __future__ import annotations

import random
from typing import List, Optional, Union

from .core import (
    BOTC,
    BOTP,
    PLAIN_VOCAB,
    Blank,
    Graph,
    Iri,
    Literal,
    Neg,
    Star,
    Term,
    Triple,
    TYPE,
    SP,
    try_triple,
)


def spchain(n: int) -> Graph:
    """Chain p_1 sp p_2 sp ... sp p_n; empty for n = 1."""
    if n < 1:
        raise ValueError("spchain needs n >= 1")
    props = [Iri(f"p{i}") for i in range(1, n + 1)]
    return Graph(Triple(props[i], SP, props[i + 1]) for i in range(n - 1))


def cubic(n: int) -> Graph:
    """n members of class c, n chained properties, star triples on p_1.

    The full closure grounds every (a_l, p_k, a_h) combination, so its
    size grows with the cube of n.
    """
    if n < 1:
        raise ValueError("cubic needs n >= 1")
    c = Iri("c")
    members = [Iri(f"a{i}") for i in range(1, n + 1)]
    props = [Iri(f"p{i}") for i in range(1, n + 1)]
    triples: List[Triple] = []
    for a in members:
        triples.append(Triple(a, TYPE, c))
    for a in members:
        triples.append(Triple(a, props[0], Star(c)))
    for i in range(n - 1):
        triples.append(Triple(props[i], SP, props[i + 1]))
    return Graph(triples)


def random_graph(
    seed: Union[int, random.Random] = 0,
    max_triples: int = 12,
    max_terms: int = 8,
    allow_star: bool = True,
    allow_neg: bool = True,
    allow_blank: bool = True,
    allow_literal: bool = True,
    salt_contradiction: bool = False,
) -> Graph:
    """A small random graph over at most ``max_terms`` base names.

    Predicates are drawn from the reserved vocabulary about half the
    time so the closure rules have something to chew on.  Invalid
    combinations are discarded and retried, so every returned triple is
    valid.  With ``salt_contradiction`` the graph ends with a
    contradictory pattern: a resource typed into a class and its
    negation while the class is disjoint from itself.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    names = [Iri(f"t{i}") for i in range(1, max(2, max_terms) + 1)]

    def pick_node() -> Term:
        base = rng.choice(names)
        roll = rng.random()
        if allow_star and roll < 0.12:
            return Star(Neg(base)) if allow_neg and rng.random() < 0.25 else Star(base)
        if allow_neg and roll < 0.30:
            return Neg(base)
        if allow_blank and roll < 0.42:
            return Blank(f"b{base.name[1:]}")
        if allow_literal and roll < 0.50:
            return Literal(f"v{base.name[1:]}")
        return base

    def pick_pred() -> Term:
        if rng.random() < 0.5:
            return rng.choice(sorted(PLAIN_VOCAB, key=lambda v: v.name) + [BOTC, BOTP])
        base = rng.choice(names)
        if allow_neg and rng.random() < 0.25:
            return Neg(base)
        return base

    count = rng.randint(1, max(1, max_triples))
    triples: List[Triple] = []
    attempts = 0
    while len(triples) < count and attempts < count * 30:
        attempts += 1
        t = try_triple(pick_node(), pick_pred(), pick_node())
        if t is not None and t not in triples:
            triples.append(t)
    if salt_contradiction:
        a = rng.choice(names)
        b = rng.choice(names)
        for t in (
            Triple(a, TYPE, b),
            Triple(a, TYPE, Neg(b)),
            Triple(b, BOTC, b),
        ):
            if t not in triples:
                triples.append(t)
    return Graph(triples)
