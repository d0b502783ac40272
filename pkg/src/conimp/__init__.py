"""Entailment of association rules read as support/confidence-constrained implications."""

from conimp.context import (
    FormalContext,
    confidence,
    derivation,
    holds_constrained,
    restrict_attributes,
    support,
)
from conimp.cxt import parse_cxt, serialize_cxt
from conimp.entail import (
    Verdict,
    brute_force_refute,
    decide_entailment,
    frequency_vector,
    solve_min_programs,
    witness_context,
)
from conimp.rules import (
    ConstrainedImplication,
    attribute_universe,
    mine_rules,
    parse_rule_file,
    rule,
    serialize_rules,
)

__all__ = [
    "ConstrainedImplication",
    "FormalContext",
    "Verdict",
    "attribute_universe",
    "brute_force_refute",
    "confidence",
    "decide_entailment",
    "derivation",
    "frequency_vector",
    "holds_constrained",
    "mine_rules",
    "parse_cxt",
    "parse_rule_file",
    "restrict_attributes",
    "rule",
    "serialize_cxt",
    "serialize_rules",
    "solve_min_programs",
    "support",
    "witness_context",
]
