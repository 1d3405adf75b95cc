"""Entailment, blank-node search and proof extraction tests."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rhodf import (
    TYPE,
    Blank,
    Graph,
    Iri,
    Neg,
    RuleId,
    SearchBudgetExceeded,
    Triple,
    VariableMap,
    closure,
    entails,
    extract_proof,
    find_map,
    instantiate,
    parse_graph,
    random_graph,
)

seeds = st.integers(min_value=0, max_value=10_000)

X, Y = Blank("x"), Blank("y")
A, B, C = Iri("a"), Iri("b"), Iri("c")
E = Iri("e")


@pytest.fixture(scope="module")
def medical_negative(medical_negative_text):
    return parse_graph(medical_negative_text)


class TestGoldenJudgments:
    def test_treatment_query_with_negative_type(self, medical_negative):
        h = Graph([
            Triple(Iri("brainTumour"), Iri("hasTreatment"), X),
            Triple(X, TYPE, Neg(Iri("antipyretic"))),
        ])
        report = entails(medical_negative, h)
        assert report.holds
        assert report.map is not None
        witness = report.map.apply(X)
        assert witness in (Iri("morphine"), Iri("radioTherapy"))

    def test_universal_statement_grounds_to_an_instance(self, medical_negative):
        h = Graph([Triple(Iri("ebola"), Neg(Iri("hasTreatment")), Iri("paracetamol"))])
        assert entails(medical_negative, h).holds

    def test_untyped_resource_escapes_the_universal(self, medical_negative):
        h = Graph([Triple(Iri("ebola"), Neg(Iri("hasTreatment")), Iri("ebola"))])
        report = entails(medical_negative, h)
        assert not report.holds
        assert report.missing

    def test_rdf_mode_misses_the_negative_consequence(self, medical_negative):
        h = Graph([Triple(Iri("ebola"), Neg(Iri("hasTreatment")), Iri("paracetamol"))])
        assert not entails(medical_negative, h, mode="rdf").holds


class TestEntailsInterface:
    def test_fast_path_agrees_with_search_on_ground_queries(self, medical_negative):
        h = Graph([Triple(Iri("morphine"), TYPE, Iri("drugTreatment"))])
        assert entails(medical_negative, h, use_fast_path=True).holds
        assert entails(medical_negative, h, use_fast_path=False).holds

    def test_map_is_reported_only_for_blank_queries(self, medical_negative):
        ground = Graph([Triple(Iri("morphine"), TYPE, Iri("opioid"))])
        assert entails(medical_negative, ground).map is None

    def test_with_proof_attaches_a_derivation(self, medical_negative):
        h = Graph([Triple(Iri("morphine"), TYPE, Neg(Iri("antipyretic")))])
        report = entails(medical_negative, h, with_proof=True)
        assert report.holds
        assert report.proof
        assert report.proof[-1].conclusion in h

    def test_missing_lists_unmatchable_triples(self):
        g = parse_graph("a b c .\n")
        h = parse_graph("a b c .\nq r s .\n")
        report = entails(g, h)
        assert not report.holds
        assert Triple(Iri("q"), Iri("r"), Iri("s")) in report.missing

    @given(seeds)
    def test_every_graph_entails_itself(self, seed):
        g = random_graph(seed=seed)
        assert entails(g, g).holds

    @given(seeds)
    def test_every_graph_entails_its_closure_members(self, seed):
        g = random_graph(seed=seed, max_triples=6)
        cl = closure(g).closure
        for t in list(cl.triples())[:10]:
            assert entails(g, Graph([t])).holds


class TestFindMap:
    def test_two_cycle_embeds_into_a_symmetric_triangle(self):
        h = Graph([Triple(X, E, Y), Triple(Y, E, X)])
        target = Graph([
            Triple(A, E, B), Triple(B, E, A),
            Triple(B, E, C), Triple(C, E, B),
            Triple(C, E, A), Triple(A, E, C),
        ])
        mu = find_map(h, target)
        assert mu is not None
        assert mu.apply_triple(Triple(X, E, Y)) in target
        assert mu.apply_triple(Triple(Y, E, X)) in target

    def test_self_loop_pattern_has_no_image_in_a_plain_edge(self):
        h = Graph([Triple(X, E, X)])
        target = Graph([Triple(A, E, B)])
        assert find_map(h, target) is None

    def test_shared_blank_constrains_both_occurrences(self):
        h = Graph([Triple(A, E, X), Triple(X, E, C)])
        target = Graph([Triple(A, E, B), Triple(B, E, C), Triple(A, E, C)])
        mu = find_map(h, target)
        assert mu is not None
        assert mu.apply(X) == B

    def test_ground_pattern_is_plain_subset(self):
        target = Graph([Triple(A, E, B)])
        assert find_map(Graph([Triple(A, E, B)]), target) is not None
        assert find_map(Graph([Triple(B, E, A)]), target) is None

    def test_budget_exhaustion_raises(self):
        h = Graph([Triple(X, E, Y), Triple(Y, E, X)])
        target = Graph([Triple(Iri(f"n{i}"), E, Iri(f"n{i + 1}")) for i in range(8)])
        with pytest.raises(SearchBudgetExceeded):
            find_map(h, target, budget=1)

    def test_budget_error_propagates_through_entails(self):
        g = Graph([Triple(Iri(f"n{i}"), E, Iri(f"n{i + 1}")) for i in range(8)])
        h = Graph([Triple(X, E, Y), Triple(Y, E, X)])
        with pytest.raises(SearchBudgetExceeded):
            entails(g, h, budget=1)


class TestExtractProof:
    def test_blank_query_ends_with_the_map_rule(self, medical_negative):
        result = closure(medical_negative)
        h = Graph([
            Triple(Iri("brainTumour"), Iri("hasTreatment"), X),
            Triple(X, TYPE, Neg(Iri("antipyretic"))),
        ])
        mu = VariableMap.of({X: Iri("morphine")})
        proof = extract_proof(h, mu, result)
        assert proof[-1].rule == RuleId.R1A
        assert proof[-1].map == mu
        assert set(proof[-1].targets) == set(h.triples())

    def test_ground_identity_query_needs_no_map_step(self):
        g = parse_graph("a sc b .\nx type a .\n")
        result = closure(g)
        h = Graph([Triple(Iri("x"), TYPE, B)])
        proof = extract_proof(h, VariableMap.identity(), result)
        assert all(step.rule != RuleId.R1A for step in proof)
        assert proof[-1].conclusion == Triple(Iri("x"), TYPE, B)

    def test_input_triples_enter_through_rule_1b(self):
        g = parse_graph("a sc b .\nx type a .\n")
        proof = extract_proof(Graph([Triple(Iri("x"), TYPE, B)]), VariableMap.identity(), closure(g))
        starts = [step for step in proof if step.rule == RuleId.R1B]
        assert {step.conclusion for step in starts} <= set(g.triples())
        assert all(step.premises == () for step in starts)

    def test_premises_precede_their_conclusions(self, medical_negative):
        result = closure(medical_negative)
        h = Graph([Triple(Iri("ebola"), Neg(Iri("hasTreatment")), Iri("paracetamol"))])
        proof = extract_proof(h, VariableMap.identity(), result)
        seen = set()
        for step in proof:
            assert all(p in seen for p in step.premises)
            seen.add(step.conclusion)

    def test_non_derivable_goal_is_rejected(self):
        g = parse_graph("a sc b .\n")
        result = closure(g)
        with pytest.raises(ValueError):
            extract_proof(Graph([Triple(Iri("q"), TYPE, B)]), VariableMap.identity(), result)

    def test_replay_re_derives_every_step(self, medical_negative):
        result = closure(medical_negative)
        h = Graph([Triple(X, TYPE, Neg(Iri("antipyretic")))])
        mu = VariableMap.of({X: Iri("morphine")})
        proof = extract_proof(h, mu, result)
        for step in proof:
            if step.rule in (RuleId.R1A, RuleId.R1B):
                continue
            conclusions = {s.conclusion for s in instantiate(step.rule, Graph(step.premises))}
            assert step.conclusion in conclusions
