"""Entailment decisions and proof extraction.

A graph ``g`` entails a graph ``h`` when some blank-node substitution
sends every triple of ``h`` into the closure of ``g``.  Blank nodes in
``h`` act as existential variables; blank nodes in ``g`` (and so in the
closure) are plain constants a variable may map to.

The matcher is a complete backtracking search over the closure, picking
the most constrained pattern first.  An optional budget bounds the
number of candidate triples it may try; exceeding it raises
:class:`SearchBudgetExceeded` so callers can tell "gave up" apart from
"does not hold".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .core import Blank, Graph, Term, Triple, VariableMap, apply_map, try_triple
from .reasoner import ClosureResult, ProofStep, RuleId, closure


class SearchBudgetExceeded(RuntimeError):
    """The homomorphism search hit its candidate budget before finishing."""

    def __init__(self, budget: int):
        super().__init__(f"homomorphism search exceeded its budget of {budget} candidate attempts")
        self.budget = budget


@dataclass(frozen=True)
class EntailmentReport:
    """Outcome of an entailment query.

    ``map`` is the witnessing substitution when the judgment holds and
    the query had blank nodes.  ``proof`` is filled only on request.
    ``missing`` lists query triples with no individual match in the
    closure; it is empty when the judgment holds.
    """

    holds: bool
    map: Optional[VariableMap] = None
    proof: Optional[Tuple[ProofStep, ...]] = None
    missing: Tuple[Triple, ...] = ()


class _TargetIndex:
    __slots__ = ("by_spo", "by_sp", "by_po", "by_pred")

    def __init__(self, target: Graph):
        self.by_spo: Dict[Triple, Triple] = {}
        self.by_sp: Dict[Tuple[Term, Term], List[Triple]] = {}
        self.by_po: Dict[Tuple[Term, Term], List[Triple]] = {}
        self.by_pred: Dict[Term, List[Triple]] = {}
        for t in target:
            self.by_spo[t] = t
            self.by_sp.setdefault((t.s, t.p), []).append(t)
            self.by_po.setdefault((t.p, t.o), []).append(t)
            self.by_pred.setdefault(t.p, []).append(t)

    def candidates(self, t: Triple, sigma: Dict[Blank, Term], variables: Set[Blank]) -> Sequence[Triple]:
        s = sigma.get(t.s) if t.s in variables else t.s
        o = sigma.get(t.o) if t.o in variables else t.o
        if s is not None and o is not None:
            key = try_triple(s, t.p, o)
            hit = self.by_spo.get(key) if key is not None else None
            return (hit,) if hit is not None else ()
        if s is not None:
            return self.by_sp.get((s, t.p), ())
        if o is not None:
            return self.by_po.get((t.p, o), ())
        return self.by_pred.get(t.p, ())


def _unify(pattern: Triple, cand: Triple, sigma: Dict[Blank, Term], variables: Set[Blank]) -> Optional[Dict[Blank, Term]]:
    new: Dict[Blank, Term] = {}
    for pt, ct in ((pattern.s, cand.s), (pattern.o, cand.o)):
        if pt in variables:
            cur = sigma.get(pt, new.get(pt))
            if cur is None:
                new[pt] = ct
            elif cur != ct:
                return None
        elif pt != ct:
            return None
    return new


def find_map(h: Graph, target: Graph, budget: Optional[int] = None) -> Optional[VariableMap]:
    """A substitution sending every triple of ``h`` into ``target``.

    Returns ``None`` when no such substitution exists.  The search is
    exhaustive; with ``budget`` set it raises
    :class:`SearchBudgetExceeded` after that many candidate attempts.
    """
    variables: Set[Blank] = set(h.blanks)
    patterns = list(h)
    ix = _TargetIndex(target)
    sigma: Dict[Blank, Term] = {}
    attempts = 0

    def solve(remaining: List[Triple]) -> bool:
        nonlocal attempts
        if not remaining:
            return True
        best_i = 0
        best_c: Sequence[Triple] = ix.candidates(remaining[0], sigma, variables)
        for i in range(1, len(remaining)):
            if not best_c:
                break
            c = ix.candidates(remaining[i], sigma, variables)
            if len(c) < len(best_c):
                best_i, best_c = i, c
        rest = remaining[:best_i] + remaining[best_i + 1 :]
        pattern = remaining[best_i]
        for cand in best_c:
            attempts += 1
            if budget is not None and attempts > budget:
                raise SearchBudgetExceeded(budget)
            new = _unify(pattern, cand, sigma, variables)
            if new is None:
                continue
            sigma.update(new)
            if solve(rest):
                return True
            for k in new:
                del sigma[k]
        return False

    if not solve(patterns):
        return None
    return VariableMap.of({v: sigma[v] for v in variables})


def extract_proof(h: Graph, mu: VariableMap, result: ClosureResult) -> Tuple[ProofStep, ...]:
    """Linear derivation of ``mu(h)`` from the closure's provenance.

    Input triples enter through rule 1b steps with no premises, derived
    triples through their recorded first derivation, and each step's
    premises appear earlier in the sequence.  A final rule 1a step maps
    the derived triples onto ``h``; it is omitted when ``h`` is ground
    and ``mu`` is the identity, where the map rule would do no work.
    """
    goal = apply_map(mu, h)
    for t in goal:
        if t not in result.closure:
            raise ValueError(f"triple {t} is not in the closure")
    steps: List[ProofStep] = []
    emitted: Set[Triple] = set()

    def visit(root: Triple) -> None:
        # Iterative post-order; provenance chains can be deep.
        stack: List[Tuple[Triple, bool]] = [(root, False)]
        while stack:
            t, expanded = stack.pop()
            if t in emitted:
                continue
            step = result.provenance.get(t)
            if step is None:
                emitted.add(t)
                steps.append(ProofStep(RuleId.R1B, (), t))
                continue
            if expanded:
                emitted.add(t)
                steps.append(step)
                continue
            stack.append((t, True))
            for prem in reversed(step.premises):
                stack.append((prem, False))

    for t in goal:
        visit(t)
    if not (mu.is_identity and h.is_ground):
        steps.append(
            ProofStep(
                RuleId.R1A,
                premises=goal.triples(),
                conclusion=None,
                map=mu,
                targets=h.triples(),
            )
        )
    return tuple(steps)


def entails(
    g: Graph,
    h: Graph,
    mode: str = "full",
    *,
    cap: Optional[int] = None,
    budget: Optional[int] = None,
    use_fast_path: bool = True,
    with_proof: bool = False,
) -> EntailmentReport:
    """Decide whether ``g`` entails ``h`` under the selected rule set.

    Ground queries are answered by direct membership in the closure
    unless ``use_fast_path`` is off, in which case they go through the
    same search as queries with blanks.  ``budget`` bounds that search.
    """
    result = closure(g, mode, cap=cap)
    cl = result.closure
    if h.is_ground and use_fast_path:
        missing = tuple(t for t in h if t not in cl)
        if missing:
            return EntailmentReport(holds=False, missing=missing)
        mu = VariableMap.identity()
        proof = extract_proof(h, mu, result) if with_proof else None
        return EntailmentReport(holds=True, proof=proof)
    mu = find_map(h, cl, budget=budget)
    if mu is None:
        sigma: Dict[Blank, Term] = {}
        ix = _TargetIndex(cl)
        variables = set(h.blanks)
        missing = tuple(t for t in h if not ix.candidates(t, sigma, variables))
        return EntailmentReport(holds=False, missing=missing)
    proof = extract_proof(h, mu, result) if with_proof else None
    report_map = mu if h.blanks else None
    return EntailmentReport(holds=True, map=report_map, proof=proof)
