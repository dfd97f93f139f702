"""Referential-property estimation from surface clues.

Each mention gets a score per category (generic / definite / indefinite),
computed as the sum of the deltas of every clue rule whose condition holds.
The category is the argmax; the definite score, clamped, is the plausibility
``P`` used by the antecedent scoring rule.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .corpus import Mention, ParseError, Particle, Sentence, Tense, _as_text

DEFAULT_P_MAX = 15


class RefPropCategory(str, Enum):
    GENERIC = "generic"
    DEFINITE = "definite"
    INDEFINITE = "indefinite"


# Earlier entries win ties.
TIE_ORDER = (RefPropCategory.DEFINITE, RefPropCategory.INDEFINITE, RefPropCategory.GENERIC)


@dataclass(frozen=True)
class RefPropScores:
    generic: float = 0
    definite: float = 0
    indefinite: float = 0

    def __add__(self, other: "RefPropScores") -> "RefPropScores":
        return RefPropScores(self.generic + other.generic,
                             self.definite + other.definite,
                             self.indefinite + other.indefinite)

    def of(self, category: RefPropCategory) -> float:
        return getattr(self, category.value)


@dataclass(frozen=True)
class Condition:
    """Conjunction of surface tests; ``None`` fields are wildcards.

    ``modified_by`` holds when *any* of the listed words is among the
    mention's modifiers.
    """

    particles: Optional[frozenset] = None
    tenses: Optional[frozenset] = None
    modified_by: Optional[frozenset] = None
    has_modifier: Optional[bool] = None
    marker: Optional[str] = None

    def matches(self, mention: Mention, sentence: Sentence) -> bool:
        if self.particles is not None and mention.particle not in self.particles:
            return False
        if self.tenses is not None and sentence.predicate_tense not in self.tenses:
            return False
        if self.modified_by is not None and not (self.modified_by & mention.modifiers):
            return False
        if self.has_modifier is not None and bool(mention.modifiers) != self.has_modifier:
            return False
        if self.marker is not None and self.marker not in mention.markers:
            return False
        return True

    @classmethod
    def from_json(cls, when: dict) -> "Condition":
        unknown = set(when) - {"particle", "tense", "modified_by", "has_modifier", "marker"}
        if unknown:
            raise ValueError(f"unknown condition keys: {sorted(unknown)}")

        def one_or_many(key, convert):
            value = when.get(key)
            if value is None:
                return None
            values = value if isinstance(value, list) else [value]
            return frozenset(convert(v) for v in values)

        has_modifier = when.get("has_modifier")
        if has_modifier is not None and not isinstance(has_modifier, bool):
            raise ValueError("'has_modifier' must be a boolean")
        modified_by = when.get("modified_by")
        if modified_by is not None:
            if isinstance(modified_by, str):
                modified_by = [modified_by]
            modified_by = frozenset(modified_by)
        marker = when.get("marker")
        if marker is not None and not isinstance(marker, str):
            raise ValueError("'marker' must be a string")
        return cls(
            particles=one_or_many("particle", Particle),
            tenses=one_or_many("tense", Tense),
            modified_by=modified_by,
            has_modifier=has_modifier,
            marker=marker,
        )

    def to_json(self) -> dict:
        out = {}
        if self.particles is not None:
            out["particle"] = sorted(p.value for p in self.particles)
        if self.tenses is not None:
            out["tense"] = sorted(t.value for t in self.tenses)
        if self.modified_by is not None:
            out["modified_by"] = sorted(self.modified_by)
        if self.has_modifier is not None:
            out["has_modifier"] = self.has_modifier
        if self.marker is not None:
            out["marker"] = self.marker
        return out


@dataclass(frozen=True)
class ClueRule:
    id: str
    condition: Condition
    deltas: RefPropScores


def _when(**kw) -> Condition:
    return Condition.from_json(kw)


DEFAULT_CLUE_RULES = (
    ClueRule("wa-past", _when(particle="WA", tense="past"), RefPropScores(definite=7)),
    ClueRule("each", _when(modified_by=["SOREZORE-NO", "ONOONO-NO"]), RefPropScores(indefinite=7)),
    ClueRule("ga-nonpast", _when(particle="GA", tense="nonpast"), RefPropScores(indefinite=3)),
    ClueRule("bare-topic-nonpast", _when(particle=["WA", "NIWA"], tense="nonpast", has_modifier=False),
             RefPropScores(generic=3)),
)


def estimate(mention: Mention, sentence: Sentence, table=DEFAULT_CLUE_RULES) -> RefPropScores:
    scores = RefPropScores()
    for rule in table:
        if rule.condition.matches(mention, sentence):
            scores = scores + rule.deltas
    return scores


def classify(scores: RefPropScores) -> RefPropCategory:
    # max() keeps the first maximal element, so TIE_ORDER decides ties
    return max(TIE_ORDER, key=scores.of)


def plausibility(scores: RefPropScores, p_max: float = DEFAULT_P_MAX) -> float:
    """Plausibility of the definite reading, clamped to ``[0, p_max]``."""
    return min(max(scores.definite, 0), p_max)


def load_clue_rules(data) -> list:
    """Read a clue-rule file: one ``{"id", "when", "delta": [g, d, i]}`` per line."""
    rules = []
    for lineno, line in enumerate(_as_text(data).splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            obj = json.loads(line)
            delta = obj["delta"]
            if not (isinstance(delta, list) and len(delta) == 3
                    and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in delta)):
                raise ValueError("'delta' must be a list of three numbers")
            rules.append(ClueRule(
                id=str(obj["id"]),
                condition=Condition.from_json(obj.get("when") or {}),
                deltas=RefPropScores(*delta),
            ))
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad clue rule: {exc}", lineno) from None
    return rules


def dump_clue_rules(rules) -> str:
    return "".join(
        json.dumps({"id": r.id, "when": r.condition.to_json(),
                    "delta": [r.deltas.generic, r.deltas.definite, r.deltas.indefinite]},
                   ensure_ascii=False) + "\n"
        for r in rules
    )
