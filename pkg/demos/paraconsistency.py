"""A contradictory graph that still has a model.

The graph says that tweety is a bird, that tweety is not a bird, and
that bird is disjoint from itself.  A self-disjoint class is incoherent
and the rules make the most of it: nothing can be a bird, so every
classified resource picks up a negative bird typing.  What does not
happen is ex falso quodlibet.  Facts about other classes stay
underivable, the canonical model satisfies the whole graph, and the
model checker signs off on it.
"""

from rhodf import (
    BOTC,
    TYPE,
    Graph,
    Iri,
    Neg,
    Triple,
    canonical_model,
    check_model,
    closure,
    serialize_triple,
)


def main() -> int:
    bird = Iri("bird")
    g = Graph([
        Triple(Iri("tweety"), TYPE, bird),
        Triple(Iri("tweety"), TYPE, Neg(bird)),
        Triple(bird, BOTC, bird),
        Triple(Iri("robin"), TYPE, bird),
        Triple(Iri("stone"), TYPE, Iri("mineral")),
    ])
    result = closure(g)
    print(f"input triples:   {len(g)}")
    print(f"closure triples: {len(result.closure)}")
    print()

    print("the incoherent class empties out:")
    for t in (
        Triple(Iri("robin"), TYPE, Neg(bird)),
        Triple(Iri("stone"), TYPE, Neg(bird)),
    ):
        verdict = "derived" if t in result.closure else "not derived"
        print(f"  {serialize_triple(t)}  {verdict}")
    print()

    print("but the contradiction does not entail arbitrary facts:")
    for t in (
        Triple(Iri("stone"), TYPE, Neg(Iri("mineral"))),
        Triple(Iri("tweety"), TYPE, Iri("mineral")),
    ):
        verdict = "derived" if t in result.closure else "not derived"
        print(f"  {serialize_triple(t)}  {verdict}")
    print()

    model = canonical_model(g)
    print("canonical model membership for bird:")
    print("  asserted members:", sorted(
        getattr(el, "name", str(el)) for el in model.pos_members(bird)))
    print("  asserted non-members:", sorted(
        getattr(el, "name", str(el)) for el in model.neg_members(bird)))
    print()

    report = check_model(model, g)
    print("model check:", "satisfied" if report.satisfied else "violated")
    for violation in report.violations:
        print("  ", violation)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
