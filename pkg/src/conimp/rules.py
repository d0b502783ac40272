"""Constrained implications, the rule-file grammar and rule mining.

A rule file holds one rule per line::

    # comment
    {a} -> {b} [s=1/2, c=1/3]
    ? {a} -> {c} [s=1/4, c=1/4]

The line starting with ``?`` is the query; at most one is allowed.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from conimp.context import FormalContext, confidence, support
from conimp.numeric import format_rational, parse_rational


class RuleError(ValueError):
    pass


class RuleSyntaxError(RuleError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"{message} at line {line}")


_NAME_RE = re.compile(r"[^\s,{}]+")
_RULE_RE = re.compile(
    r"""\{(?P<premise>[^{}]*)\}\s*->\s*\{(?P<conclusion>[^{}]*)\}\s*
        \[\s*s\s*=\s*(?P<s>[^,\]\s]*)\s*,\s*c\s*=\s*(?P<c>[^\]\s]*)\s*\]""",
    re.VERBOSE,
)


def _in_unit_interval(q: Fraction) -> bool:
    return 0 <= q <= 1


@dataclass(frozen=True)
class ConstrainedImplication:
    """The triple ``(A -> B, s, c)``."""

    premise: frozenset[str]
    conclusion: frozenset[str]
    support: Fraction
    confidence: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "premise", frozenset(self.premise))
        object.__setattr__(self, "conclusion", frozenset(self.conclusion))
        object.__setattr__(self, "support", Fraction(self.support))
        object.__setattr__(self, "confidence", Fraction(self.confidence))
        if not _in_unit_interval(self.support):
            raise RuleError(f"support {format_rational(self.support)} outside [0, 1]")
        if not _in_unit_interval(self.confidence):
            raise RuleError(f"confidence {format_rational(self.confidence)} outside [0, 1]")

    @property
    def attributes(self) -> frozenset[str]:
        return self.premise | self.conclusion

    def with_thresholds(self, s: Fraction | None = None, c: Fraction | None = None):
        return ConstrainedImplication(
            self.premise,
            self.conclusion,
            self.support if s is None else s,
            self.confidence if c is None else c,
        )

    def __str__(self) -> str:
        return (
            f"{format_attrset(self.premise)} -> {format_attrset(self.conclusion)} "
            f"[s={format_rational(self.support)}, c={format_rational(self.confidence)}]"
        )


def rule(premise: Iterable[str], conclusion: Iterable[str], s, c) -> ConstrainedImplication:
    """Shorthand constructor; ``s`` and ``c`` may be ints, Fractions or "p/q" strings."""
    s = parse_rational(s) if isinstance(s, str) else Fraction(s)
    c = parse_rational(c) if isinstance(c, str) else Fraction(c)
    return ConstrainedImplication(frozenset(premise), frozenset(conclusion), s, c)


def format_attrset(attrs: Iterable[str]) -> str:
    return "{" + ", ".join(sorted(attrs)) + "}"


def attribute_universe(
    rules: Iterable[ConstrainedImplication], query: ConstrainedImplication | None = None
) -> tuple[str, ...]:
    """All attributes mentioned by ``rules`` and ``query``, sorted by name."""
    names: set[str] = set()
    for r in rules:
        names |= r.attributes
    if query is not None:
        names |= query.attributes
    return tuple(sorted(names))


def _parse_set(raw: str, lineno: int) -> frozenset[str]:
    raw = raw.strip()
    if not raw:
        return frozenset()
    names = [part.strip() for part in raw.split(",")]
    for name in names:
        if not _NAME_RE.fullmatch(name):
            raise RuleSyntaxError(f"malformed attribute name {name!r}", lineno)
    return frozenset(names)


def _parse_threshold(raw: str, what: str, lineno: int) -> Fraction:
    try:
        q = parse_rational(raw)
    except ValueError:
        raise RuleSyntaxError(f"malformed {what} {raw!r}", lineno) from None
    if not _in_unit_interval(q):
        raise RuleSyntaxError(f"{what} out of range", lineno)
    return q


def parse_rule_line(text: str, lineno: int = 1) -> ConstrainedImplication:
    m = _RULE_RE.fullmatch(text.strip())
    if m is None:
        raise RuleSyntaxError("malformed rule", lineno)
    return ConstrainedImplication(
        _parse_set(m["premise"], lineno),
        _parse_set(m["conclusion"], lineno),
        _parse_threshold(m["s"], "support", lineno),
        _parse_threshold(m["c"], "confidence", lineno),
    )


def parse_rule_file(
    text: str,
) -> tuple[list[ConstrainedImplication], ConstrainedImplication | None]:
    rules: list[ConstrainedImplication] = []
    query = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("?"):
            if query is not None:
                raise RuleSyntaxError("second query line", lineno)
            query = parse_rule_line(stripped[1:], lineno)
        else:
            rules.append(parse_rule_line(stripped, lineno))
    return rules, query


def serialize_rules(
    rules: Iterable[ConstrainedImplication], query: ConstrainedImplication | None = None
) -> str:
    lines = [str(r) for r in rules]
    if query is not None:
        lines.append(f"? {query}")
    return "".join(line + "\n" for line in lines)


def _subsets(items: Sequence[str]):
    for size in range(len(items) + 1):
        yield from itertools.combinations(items, size)


def _rule_key(r: ConstrainedImplication):
    return (len(r.premise), sorted(r.premise), len(r.conclusion), sorted(r.conclusion))


def mine_rules(K: FormalContext, min_support: Fraction, min_confidence: Fraction):
    """Every rule ``A -> B`` of ``K`` with ``B`` non-empty and disjoint from ``A``
    that meets both thresholds.

    Each rule carries its achieved support and confidence in ``K`` as its
    thresholds, so the emitted rule is the tightest version that holds.
    Premises below ``min_support`` are skipped together with all their
    supersets.
    """
    min_support = Fraction(min_support)
    min_confidence = Fraction(min_confidence)
    if not (_in_unit_interval(min_support) and _in_unit_interval(min_confidence)):
        raise RuleError("mining thresholds must lie in [0, 1]")
    attrs = sorted(K.attributes)
    infrequent: list[frozenset[str]] = []
    found = []
    for premise in map(frozenset, _subsets(attrs)):
        if any(small <= premise for small in infrequent):
            continue
        supp = support(K, premise)
        if supp < min_support:
            infrequent.append(premise)
            continue
        rest = [m for m in attrs if m not in premise]
        for conclusion in map(frozenset, _subsets(rest)):
            if not conclusion:
                continue
            conf = confidence(K, premise, conclusion)
            if conf >= min_confidence:
                found.append(ConstrainedImplication(premise, conclusion, supp, conf))
    found.sort(key=_rule_key)
    return found
