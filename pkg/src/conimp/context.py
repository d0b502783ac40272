"""Formal contexts, derivation operators, support and confidence."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from conimp.rules import ConstrainedImplication


class ContextError(ValueError):
    """Raised for malformed contexts or names unknown to a context."""


@dataclass(frozen=True)
class FormalContext:
    """A finite context ``(G, M, I)``.

    ``incidence[g]`` holds the attribute *indices* of object ``g``.
    Objects with identical intents are allowed and counted separately.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    incidence: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(
            self, "incidence", tuple(frozenset(row) for row in self.incidence)
        )
        if len(set(self.objects)) != len(self.objects):
            raise ContextError("object names must be pairwise distinct")
        if len(set(self.attributes)) != len(self.attributes):
            raise ContextError("attribute names must be pairwise distinct")
        if len(self.incidence) != len(self.objects):
            raise ContextError(
                f"{len(self.objects)} objects but {len(self.incidence)} incidence rows"
            )
        n_attrs = len(self.attributes)
        for name, row in zip(self.objects, self.incidence):
            bad = [j for j in row if not 0 <= j < n_attrs]
            if bad:
                raise ContextError(f"object {name!r} references attribute index {bad[0]}")

    @classmethod
    def from_intents(
        cls,
        rows: Mapping[str, Iterable[str]] | Iterable[tuple[str, Iterable[str]]],
        attributes: Iterable[str] | None = None,
    ) -> FormalContext:
        """Build a context from ``object -> attribute names``.

        Without ``attributes`` the attribute list is the sorted union of
        all intents.
        """
        items = list(rows.items()) if isinstance(rows, Mapping) else list(rows)
        items = [(g, frozenset(intent)) for g, intent in items]
        if attributes is None:
            attributes = sorted(set().union(*(intent for _, intent in items)))
        attributes = tuple(attributes)
        position = {m: j for j, m in enumerate(attributes)}
        incidence = []
        for g, intent in items:
            unknown = sorted(intent - position.keys())
            if unknown:
                raise ContextError(f"object {g!r} has unknown attribute {unknown[0]!r}")
            incidence.append(frozenset(position[m] for m in intent))
        return cls(tuple(g for g, _ in items), attributes, tuple(incidence))

    def intent(self, g: int) -> frozenset[str]:
        return frozenset(self.attributes[j] for j in self.incidence[g])

    def intents(self) -> list[frozenset[str]]:
        return [self.intent(g) for g in range(len(self.objects))]

    def attribute_indices(self, names: Iterable[str]) -> frozenset[int]:
        position = {m: j for j, m in enumerate(self.attributes)}
        out = set()
        for m in names:
            if m not in position:
                raise ContextError(f"unknown attribute {m!r}")
            out.add(position[m])
        return frozenset(out)


def _require_evaluable(K: FormalContext) -> None:
    if not K.objects or not K.attributes:
        raise ContextError("support and confidence need a finite non-empty context")


def extent(K: FormalContext, attrs: Iterable[str]) -> frozenset[str]:
    """``A'``: objects having every attribute of ``attrs``."""
    wanted = K.attribute_indices(attrs)
    return frozenset(g for g, row in zip(K.objects, K.incidence) if wanted <= row)


def intent_of(K: FormalContext, objs: Iterable[str]) -> frozenset[str]:
    """``B'``: attributes shared by every object of ``objs``."""
    rows = dict(zip(K.objects, K.incidence))
    common = set(range(len(K.attributes)))
    for g in objs:
        if g not in rows:
            raise ContextError(f"unknown object {g!r}")
        common &= rows[g]
    return frozenset(K.attributes[j] for j in common)


def derivation(K: FormalContext, side: str, s: Iterable[str]) -> frozenset[str]:
    if side == "attributes":
        return extent(K, s)
    if side == "objects":
        return intent_of(K, s)
    raise ValueError(f"side must be 'attributes' or 'objects', not {side!r}")


def _count(K: FormalContext, attrs: Iterable[str]) -> int:
    wanted = K.attribute_indices(attrs)
    return sum(1 for row in K.incidence if wanted <= row)


def support(K: FormalContext, attrs: Iterable[str]) -> Fraction:
    _require_evaluable(K)
    return Fraction(_count(K, attrs), len(K.objects))


def confidence(K: FormalContext, premise: Iterable[str], conclusion: Iterable[str]) -> Fraction:
    """``|(A u B)'| / |A'|``, and exactly 1 when ``A'`` is empty."""
    _require_evaluable(K)
    premise = frozenset(premise)
    conclusion = frozenset(conclusion)
    n_premise = _count(K, premise)
    n_both = _count(K, premise | conclusion)
    if n_premise == 0:
        return Fraction(1)
    return Fraction(n_both, n_premise)


def implication_holds(K: FormalContext, premise: Iterable[str], conclusion: Iterable[str]) -> bool:
    """Plain implication: ``A' <= B'``."""
    return extent(K, premise) <= extent(K, conclusion)


def holds_constrained(K: FormalContext, rule: ConstrainedImplication) -> bool:
    return (
        support(K, rule.premise) >= rule.support
        and confidence(K, rule.premise, rule.conclusion) >= rule.confidence
    )


def holds_all(K: FormalContext, rules: Iterable[ConstrainedImplication]) -> bool:
    return all(holds_constrained(K, r) for r in rules)


def restrict_attributes(K: FormalContext, keep: Iterable[str]) -> FormalContext:
    """Drop every attribute outside ``keep``; objects are unchanged.

    Derivations, and hence support and confidence, of attribute sets inside
    ``keep`` are the same in the result as in ``K``.
    """
    keep_idx = K.attribute_indices(keep)
    old_to_new = {}
    attributes = []
    for j, m in enumerate(K.attributes):
        if j in keep_idx:
            old_to_new[j] = len(attributes)
            attributes.append(m)
    incidence = tuple(
        frozenset(old_to_new[j] for j in row if j in old_to_new) for row in K.incidence
    )
    return FormalContext(K.objects, tuple(attributes), incidence)


def with_attributes(K: FormalContext, extra: Iterable[str]) -> FormalContext:
    """Append attributes that no object has."""
    new = [m for m in extra if m not in K.attributes]
    return FormalContext(K.objects, K.attributes + tuple(new), K.incidence)
