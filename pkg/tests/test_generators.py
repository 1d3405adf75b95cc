"""Benchmark families and the seeded random graph generator."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rhodf import (
    BOTC,
    SP,
    TYPE,
    Blank,
    Iri,
    Literal,
    Neg,
    Star,
    Triple,
    cubic,
    random_graph,
    spchain,
)

seeds = st.integers(min_value=0, max_value=10_000)


class TestSpchain:
    def test_chain_shape(self):
        g = spchain(10)
        assert len(g) == 9
        assert all(t.p == SP for t in g)
        assert Triple(Iri("p1"), SP, Iri("p2")) in g
        assert Triple(Iri("p9"), SP, Iri("p10")) in g

    def test_single_property_chain_is_empty(self):
        assert len(spchain(1)) == 0

    def test_rejects_nonpositive_sizes(self):
        with pytest.raises(ValueError):
            spchain(0)
        with pytest.raises(ValueError):
            spchain(-3)


class TestCubic:
    def test_shape_counts(self):
        g = cubic(5)
        types = [t for t in g if t.p == TYPE]
        stars = [t for t in g if isinstance(t.o, Star)]
        chain = [t for t in g if t.p == SP]
        assert len(types) == 5
        assert len(stars) == 5
        assert len(chain) == 4
        assert len(g) == 14

    def test_star_triples_sit_on_the_first_property(self):
        g = cubic(3)
        for t in g:
            if isinstance(t.o, Star):
                assert t.p == Iri("p1")
                assert t.o.cls == Iri("c")

    def test_members_are_typed_into_the_star_class(self):
        g = cubic(2)
        assert Triple(Iri("a1"), TYPE, Iri("c")) in g
        assert Triple(Iri("a2"), TYPE, Iri("c")) in g

    def test_rejects_nonpositive_sizes(self):
        with pytest.raises(ValueError):
            cubic(0)


class TestRandomGraph:
    def test_deterministic_per_seed(self):
        assert random_graph(seed=7) == random_graph(seed=7)
        assert random_graph(seed=7, salt_contradiction=True) == random_graph(
            seed=7, salt_contradiction=True
        )

    def test_different_seeds_usually_differ(self):
        produced = {random_graph(seed=s) for s in range(12)}
        assert len(produced) > 1

    def test_accepts_a_shared_rng(self):
        rng = random.Random(99)
        first = random_graph(seed=rng)
        second = random_graph(seed=random.Random(99))
        assert first == second

    def test_never_empty_and_bounded(self):
        for s in range(40):
            g = random_graph(seed=s, max_triples=6)
            assert 1 <= len(g) <= 6

    def test_salt_appends_a_contradictory_pattern(self):
        g = random_graph(seed=3, salt_contradiction=True)
        selfdisjoint = [t.s for t in g if t.p == BOTC and t.s == t.o]
        assert selfdisjoint
        b = selfdisjoint[0]
        subjects = [
            t.s
            for t in g
            if t.p == TYPE and t.o == b and Triple(t.s, TYPE, Neg(b)) in g
        ]
        assert subjects

    def test_term_budget_is_respected(self):
        g = random_graph(seed=11, max_terms=4)
        allowed = {f"t{i}" for i in range(1, 5)}
        for t in g:
            for x in t.terms():
                base = x.cls if isinstance(x, Star) else x
                if isinstance(base, Neg):
                    base = base.base
                if isinstance(base, Iri):
                    assert base.name in allowed or base.name in {
                        "sp",
                        "sc",
                        "type",
                        "dom",
                        "range",
                        "cdisj",
                        "pdisj",
                    }

    @pytest.mark.parametrize(
        "flag,shape",
        [
            ("allow_star", Star),
            ("allow_neg", Neg),
            ("allow_blank", Blank),
            ("allow_literal", Literal),
        ],
    )
    def test_shape_flags_suppress_their_terms(self, flag, shape):
        for s in range(30):
            g = random_graph(seed=s, **{flag: False})
            for t in g:
                for x in t.terms():
                    assert not isinstance(x, shape)
                    if isinstance(x, Star):
                        assert not isinstance(x.cls, shape)

    @given(seeds)
    def test_seeded_graphs_are_reproducible(self, seed):
        g = random_graph(seed=seed, salt_contradiction=bool(seed % 2))
        h = random_graph(seed=seed, salt_contradiction=bool(seed % 2))
        assert g == h
        assert len(g) >= 1
