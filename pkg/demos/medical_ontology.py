"""Walk through the medical ontology and its negative statements.

The graph below types two drugs, chains a few classes and properties,
declares opioids disjoint from antipyretics, and states that nothing
treats ebola via the star term over treatment.  The script closes the
graph, asks three entailment questions, and can print the derivation
behind the negative type fact with --proof.
"""

import argparse

from rhodf import (
    TYPE,
    Blank,
    Graph,
    Iri,
    Neg,
    Triple,
    closure,
    entails,
    parse_graph,
    serialize_term,
    serialize_triple,
)

ONTOLOGY = """\
paracetamol type antipyretic .
antipyretic sc drugTreatment .
morphine type opioid .
opioid sc drugTreatment .
drugTreatment sc treatment .
brainTumour type tumour .
hasDrugTreatment sp hasTreatment .
hasTreatment dom illness .
hasTreatment range treatment .
hasDrugTreatment range drugTreatment .
fever hasDrugTreatment paracetamol .
brainTumour hasDrugTreatment morphine .
opioid cdisj antipyretic .
!drugTreatment sc treatment .
!hasDrugTreatment sp hasTreatment .
!hasDrugTreatment range !drugTreatment .
brainTumour !hasDrugTreatment radioTherapy .
!hasTreatment dom illness .
!hasTreatment range treatment .
ebola !hasTreatment *treatment .
"""

X = Blank("x")


def show(title, report):
    verdict = "entailed" if report.holds else "not entailed"
    print(f"{title}: {verdict}")
    if report.map is not None and len(report.map):
        for blank, term in report.map.items():
            print(f"  witness _:{blank.name} -> {serialize_term(term)}")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--proof", action="store_true",
                    help="print the derivation of the negative type fact")
    args = ap.parse_args()

    g = parse_graph(ONTOLOGY)
    result = closure(g)
    print(f"input triples:   {len(g)}")
    print(f"closure triples: {len(result.closure)}")
    print()

    sample = Triple(Iri("morphine"), TYPE, Neg(Iri("antipyretic")))
    print("derived along the way:")
    print(" ", serialize_triple(sample))
    print(" ", serialize_triple(
        Triple(Iri("radioTherapy"), TYPE, Neg(Iri("drugTreatment")))))
    print()

    q1 = Graph([
        Triple(Iri("brainTumour"), Iri("hasTreatment"), X),
        Triple(X, TYPE, Neg(Iri("antipyretic"))),
    ])
    show("a non-antipyretic treatment for brainTumour", entails(g, q1))

    q2 = Graph([Triple(Iri("ebola"), Neg(Iri("hasTreatment")), Iri("paracetamol"))])
    show("paracetamol does not treat ebola", entails(g, q2))

    q3 = Graph([Triple(Iri("ebola"), Neg(Iri("hasTreatment")), Iri("ebola"))])
    show("ebola does not treat ebola", entails(g, q3))

    if args.proof:
        print()
        print("derivation of", serialize_triple(sample))
        report = entails(g, Graph([sample]), with_proof=True)
        for i, step in enumerate(report.proof, start=1):
            if step.conclusion is None:
                print(f"  {i}. map the query onto the closure (rule {step.rule})")
            else:
                print(f"  {i}. {serialize_triple(step.conclusion)}  (rule {step.rule})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
