"""Candidate referents, rule proposals and per-mention decisions."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional


class CandidateKind(str, Enum):
    ANTECEDENT = "antecedent"
    INDEFINITE = "indefinite"
    GENERIC = "generic"


@dataclass(frozen=True)
class Candidate:
    kind: CandidateKind
    mention_id: Optional[str] = None
    global_index: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", CandidateKind(self.kind))
        if self.is_antecedent and (self.mention_id is None or self.global_index is None):
            raise ValueError("an antecedent candidate needs a mention id and index")

    @classmethod
    def antecedent(cls, mention) -> "Candidate":
        return cls(CandidateKind.ANTECEDENT, mention.id, mention.global_index)

    @property
    def is_antecedent(self) -> bool:
        return self.kind is CandidateKind.ANTECEDENT

    def to_json(self):
        if self.is_antecedent:
            return {"antecedent": self.mention_id}
        return self.kind.value

    def __str__(self) -> str:
        return f"antecedent:{self.mention_id}" if self.is_antecedent else self.kind.value


INDEFINITE = Candidate(CandidateKind.INDEFINITE)
GENERIC = Candidate(CandidateKind.GENERIC)


def tie_key(candidate: Candidate) -> tuple:
    """Larger sorts first among equal totals: antecedent > indefinite > generic,
    and the most recent antecedent first."""
    if candidate.is_antecedent:
        return (2, candidate.global_index)
    if candidate.kind is CandidateKind.INDEFINITE:
        return (1, 0)
    return (0, 0)


@dataclass(frozen=True)
class Proposal:
    candidate: Candidate
    points: float
    rule_id: str


@dataclass(frozen=True)
class Decision:
    mention_id: str
    chosen: Candidate
    total: float
    trace: tuple = ()
    category: Optional[str] = None
    possessor: Optional[str] = None

    @property
    def antecedent(self) -> Optional[str]:
        return self.chosen.mention_id if self.chosen.is_antecedent else None

    def to_json(self) -> dict:
        return {
            "mention": self.mention_id,
            "chosen": self.chosen.to_json(),
            "total": self.total,
            "category": self.category,
            "possessor": self.possessor,
            "trace": [
                {"rule": p.rule_id, "candidate": p.candidate.to_json(), "points": p.points}
                for p in self.trace
            ],
        }
