"""Left-to-right discourse state: prior mentions, salience, possessors and
committed coreference chains."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .corpus import ANI, HUM, PAR, Mention, Particle, Sentence

DEFAULT_SALIENCE = {"WA": 3, "NIWA": 3, "GA": 2, "other": 1}

_ANIMATE = frozenset({HUM, ANI})


class StateError(RuntimeError):
    pass


class OrderingError(ValueError):
    pass


class UnionFind:
    """Disjoint sets over mention ids. Only ids that took part in a union are
    members; a lone mention is not a chain."""

    def __init__(self):
        self._parent = {}

    def __contains__(self, item) -> bool:
        return item in self._parent

    def find(self, item):
        parent = self._parent
        root = item
        while parent[root] != root:
            root = parent[root]
        while parent[item] != root:
            parent[item], item = root, parent[item]
        return root

    def union(self, a, b) -> None:
        for x in (a, b):
            self._parent.setdefault(x, x)
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # deterministic: the lexicographically smaller root survives
            if rb < ra:
                ra, rb = rb, ra
            self._parent[rb] = ra

    def same(self, a, b) -> bool:
        return a in self and b in self and self.find(a) == self.find(b)

    def groups(self) -> list:
        out = {}
        for item in self._parent:
            out.setdefault(self.find(item), set()).add(item)
        return [frozenset(g) for g in out.values()]


@dataclass
class DiscourseState:
    seen: list = field(default_factory=list)
    chains: UnionFind = field(default_factory=UnionFind)
    possessor_of: dict = field(default_factory=dict)
    salience_config: dict = field(default_factory=lambda: dict(DEFAULT_SALIENCE))

    def __post_init__(self):
        self._by_id = {m.id: m for m in self.seen}
        self._committed = set(self._by_id)

    def get(self, mention_id: str) -> Mention:
        return self._by_id[mention_id]

    def possessor(self, mention: Mention) -> Optional[Mention]:
        pid = self.possessor_of.get(mention.id)
        if pid is None:
            return None
        return self._by_id.get(pid)


def salience_weight(candidate: Mention, cfg: dict = DEFAULT_SALIENCE) -> float:
    key = candidate.particle.value if candidate.particle is not Particle.NONE else "other"
    if key in cfg:
        return cfg[key]
    return cfg.get("other", 0)


def distance(anaphor: Mention, candidate: Mention) -> int:
    """Number of noun phrases strictly between candidate and anaphor."""
    if candidate.global_index >= anaphor.global_index:
        raise OrderingError(
            f"candidate {candidate.id} (#{candidate.global_index}) does not precede "
            f"anaphor {anaphor.id} (#{anaphor.global_index})")
    return anaphor.global_index - candidate.global_index - 1


def estimate_possessor(mention: Mention, state: DiscourseState,
                       sentence: Optional[Sentence] = None) -> Optional[Mention]:
    """Possessor of a body-part (PAR) mention.

    The subject of the mention's own sentence wins if it is human or animal;
    otherwise the nearest preceding human/animal topic, searched back across
    sentence boundaries. ``sentence`` is the mention's sentence; without it
    only already-seen subjects of that sentence are considered.
    """
    if PAR not in mention.markers:
        return None
    pool = sentence.mentions if sentence is not None else [
        m for m in state.seen if m.sentence_index == mention.sentence_index]
    found = None
    for m in pool:
        if m.id != mention.id and m.is_subject and m.markers & _ANIMATE:
            found = m
            break
    if found is None:
        for m in reversed(state.seen):
            if (m.global_index < mention.global_index and m.is_topic
                    and m.markers & _ANIMATE):
                found = m
                break
    if found is not None:
        state.possessor_of[mention.id] = found.id
        # a same-sentence subject may not be committed yet
        state._by_id.setdefault(found.id, found)
    return found


def commit(anaphor: Mention, decision, state: DiscourseState) -> DiscourseState:
    if anaphor.id in state._committed:
        raise StateError(f"mention {anaphor.id} already committed")
    if decision.chosen.is_antecedent:
        state.chains.union(anaphor.id, decision.chosen.mention_id)
    state.seen.append(anaphor)
    state._committed.add(anaphor.id)
    state._by_id[anaphor.id] = anaphor
    return state
