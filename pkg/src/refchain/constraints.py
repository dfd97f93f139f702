"""Candidate filters: head identity, modifier inclusion, possessor identity."""

from __future__ import annotations

import unicodedata

from .corpus import Mention
from .discourse import DiscourseState


def _norm(text: str) -> str:
    return unicodedata.normalize("NFKC", text)


def head_match(anaphor: Mention, candidate: Mention) -> bool:
    return _norm(anaphor.head) == _norm(candidate.head)


def modifier_ok(anaphor: Mention, candidate: Mention) -> bool:
    """Every modifier of the anaphor must also modify the candidate.

    A bare anaphor may therefore pick up any modified antecedent, while a
    modified one never matches an antecedent lacking that modifier.
    """
    return anaphor.modifiers <= candidate.modifiers


def same_entity(a: Mention, b: Mention, state: DiscourseState) -> bool:
    if a.id == b.id:
        return True
    if a.id in state.chains and b.id in state.chains:
        return state.chains.same(a.id, b.id)
    return head_match(a, b)


def possessor_ok(anaphor: Mention, candidate: Mention, state: DiscourseState) -> bool:
    owner = state.possessor(anaphor)
    if owner is None:
        return True
    other = state.possessor(candidate)
    if other is None:
        return False
    return same_entity(owner, other, state)
