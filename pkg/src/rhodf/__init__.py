"""Reasoning over an RDFS fragment with negation, star terms and disjointness.

The package decides entailment for graphs built from the vocabulary
{sp, sc, type, dom, range} extended with negated resources ``!r``,
universal star terms ``*c`` and the disjointness predicates ``cdisj``
and ``pdisj``.  It computes rule closures, searches blank-node witness
maps, extracts replayable proofs, and builds canonical four-valued
models that witness satisfiability of any graph, contradictions
included.
"""

from .core import (
    BOTC,
    BOTP,
    DOM,
    EMPTY_GRAPH,
    PLAIN_VOCAB,
    RANGE,
    RESERVED_VOCAB,
    SC,
    SP,
    TYPE,
    Blank,
    Graph,
    InvalidTripleError,
    Iri,
    Literal,
    Neg,
    Star,
    Term,
    Triple,
    VariableMap,
    apply_map,
    in_plain_vocab,
    is_negatable,
    is_reserved,
    negate,
    normalize,
    try_negate,
    try_triple,
    validate_triple,
)
from .parser import (
    GraphParseError,
    ParseError,
    SourceSpan,
    parse_graph,
    parse_graph_lenient,
    parse_term,
    serialize_graph,
    serialize_term,
    serialize_triple,
)
from .reasoner import (
    FULL_RULE_IDS,
    RDF_RULE_IDS,
    ClosureCapError,
    ClosureResult,
    ClosureStats,
    Domains,
    ProofStep,
    RuleId,
    closure,
    default_cap,
    instantiate,
    recognize_domains,
)
from .entailment import (
    EntailmentReport,
    SearchBudgetExceeded,
    entails,
    extract_proof,
    find_map,
)
from .semantics import (
    Interpretation,
    SatisfactionReport,
    Violation,
    canonical_model,
    check_model,
    is_satisfiable,
    load_interpretation,
    project,
    serialize_interpretation,
)
from .generators import cubic, random_graph, spchain

__version__ = "0.1.0"

__all__ = [
    "BOTC",
    "BOTP",
    "DOM",
    "EMPTY_GRAPH",
    "PLAIN_VOCAB",
    "RANGE",
    "RESERVED_VOCAB",
    "SC",
    "SP",
    "TYPE",
    "Blank",
    "ClosureCapError",
    "ClosureResult",
    "ClosureStats",
    "Domains",
    "EntailmentReport",
    "FULL_RULE_IDS",
    "Graph",
    "GraphParseError",
    "Interpretation",
    "InvalidTripleError",
    "Iri",
    "Literal",
    "Neg",
    "ParseError",
    "ProofStep",
    "RDF_RULE_IDS",
    "RuleId",
    "SatisfactionReport",
    "SearchBudgetExceeded",
    "SourceSpan",
    "Star",
    "Term",
    "Triple",
    "VariableMap",
    "Violation",
    "apply_map",
    "canonical_model",
    "check_model",
    "closure",
    "cubic",
    "default_cap",
    "entails",
    "extract_proof",
    "find_map",
    "in_plain_vocab",
    "instantiate",
    "is_negatable",
    "is_reserved",
    "is_satisfiable",
    "load_interpretation",
    "negate",
    "normalize",
    "parse_graph",
    "parse_graph_lenient",
    "parse_term",
    "project",
    "random_graph",
    "recognize_domains",
    "serialize_graph",
    "serialize_interpretation",
    "serialize_term",
    "serialize_triple",
    "spchain",
    "try_negate",
    "try_triple",
    "validate_triple",
]
