"""Antecedent selection with weighted proposal rules.

Every rule that fires proposes ``(candidate, points)`` pairs; points are
summed per candidate and the best total wins. The shipped table holds five
rules::

    R1  modified by SOREZORE-NO / ONOONO-NO        -> (Indefinite, 25)
    R2  definite, a same-head antecedent passes   -> (most recent such X, 30)
    R3  generic                                   -> (Generic, 10)
    R4  indefinite                                -> (Indefinite, 10)
    R5  not definite                              -> (each passing X, P+W-D+4)

so a non-definite mention links to ``X`` only when ``P+W-D+4`` beats R4/R3's
ten points.
"""

from __future__ import annotations

import json
import re
from collections import OrderedDict
from dataclasses import dataclass, field, replace
from enum import IntEnum
from pathlib import Path
from typing import Optional

from . import refprop
from .constraints import head_match, modifier_ok, possessor_ok
from .corpus import Document, Mention, ParseError, Sentence, _as_text
from .decisions import GENERIC, INDEFINITE, Candidate, Decision, Proposal, tie_key
from .discourse import (DEFAULT_SALIENCE, DiscourseState, commit, distance,
                        estimate_possessor, salience_weight)
from .refprop import Condition, RefPropCategory

DEFAULT_M3_BASE = 6
M3_FLAT_INDEFINITE = 10


class Method(IntEnum):
    M1 = 1  # all constraints
    M2 = 2  # only definite mentions may take an antecedent
    M3 = 3  # no referential property
    M4 = 4  # no modifier / possessor constraint

    @classmethod
    def parse(cls, value) -> "Method":
        if isinstance(value, str):
            value = value.strip().upper().lstrip("M")
        try:
            return cls(int(value))
        except (TypeError, ValueError):
            raise ValueError(f"unknown method {value!r}; expected 1-4") from None


# -- points expressions -----------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(P|W|D)|(\d+)|([+\-−]))")


@dataclass(frozen=True)
class Points:
    """Linear points formula ``const + p*P + w*W + d*D``."""

    const: float = 0
    p: float = 0
    w: float = 0
    d: float = 0
    text: Optional[str] = None

    @classmethod
    def parse(cls, value) -> "Points":
        if isinstance(value, bool):
            raise ValueError("points must be a number or formula")
        if isinstance(value, (int, float)):
            return cls(const=value)
        if not isinstance(value, str):
            raise ValueError("points must be a number or formula")
        coef = {"P": 0, "W": 0, "D": 0, "": 0}
        pos, sign, expect_term = 0, 1, True
        text = value.strip()
        if not text:
            raise ValueError("empty points formula")
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"bad token in points formula {value!r} at {pos}")
            var, num, op = m.groups()
            if expect_term:
                if op is not None:
                    raise ValueError(f"operand expected in {value!r} at {pos}")
                if var is not None:
                    coef[var] += sign
                else:
                    coef[""] += sign * int(num)
                expect_term = False
            else:
                if op is None:
                    raise ValueError(f"operator expected in {value!r} at {pos}")
                sign = 1 if op == "+" else -1
                expect_term = True
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        if expect_term:
            raise ValueError(f"points formula {value!r} ends with an operator")
        return cls(const=coef[""], p=coef["P"], w=coef["W"], d=coef["D"], text=text)

    @property
    def uses_candidate(self) -> bool:
        return bool(self.w or self.d)

    def __call__(self, P=0, W=0, D=0):
        return self.const + self.p * P + self.w * W + self.d * D

    def scaled(self, k) -> "Points":
        return Points(self.const * k, self.p * k, self.w * k, self.d * k)

    def to_json(self):
        if self.text is not None:
            return self.text
        if not (self.p or self.w or self.d):
            return self.const
        raise ValueError("scaled formula has no textual form")


# -- rules ------------------------------------------------------------------

REFPROP_TESTS = {
    "definite": lambda c: c is RefPropCategory.DEFINITE,
    "indefinite": lambda c: c is RefPropCategory.INDEFINITE,
    "generic": lambda c: c is RefPropCategory.GENERIC,
    "not_definite": lambda c: c is not RefPropCategory.DEFINITE,
}

# "antecedent" proposes only the most recent passing antecedent;
# "each_antecedent" proposes every one of them.
TARGETS = ("indefinite", "generic", "antecedent", "each_antecedent")


@dataclass(frozen=True)
class HeuristicRule:
    id: str
    condition: Condition
    target: str
    points: Points
    refprop: Optional[str] = None

    @property
    def proposes_antecedent(self) -> bool:
        return self.target in ("antecedent", "each_antecedent")

    def scaled(self, k) -> "HeuristicRule":
        return replace(self, points=self.points.scaled(k))

    @classmethod
    def from_json(cls, obj: dict) -> "HeuristicRule":
        when = dict(obj.get("when") or {})
        ref = when.pop("refprop", None)
        if ref is not None and ref not in REFPROP_TESTS:
            raise ValueError(f"unknown refprop test {ref!r}")
        propose = obj["propose"]
        target = propose["candidate"]
        if target not in TARGETS:
            raise ValueError(f"unknown proposal candidate {target!r}")
        points = Points.parse(propose["points"])
        if points.uses_candidate and target in ("indefinite", "generic"):
            raise ValueError("W and D need an antecedent candidate")
        return cls(id=str(obj["id"]), condition=Condition.from_json(when),
                   target=target, points=points, refprop=ref)

    def to_json(self) -> dict:
        when = self.condition.to_json()
        if self.refprop is not None:
            when["refprop"] = self.refprop
        return {"id": self.id, "when": when,
                "propose": {"candidate": self.target, "points": self.points.to_json()}}


def _rule(obj) -> HeuristicRule:
    return HeuristicRule.from_json(obj)


DEFAULT_HEURISTIC_RULES = (
    _rule({"id": "R1", "when": {"modified_by": ["SOREZORE-NO", "ONOONO-NO"]},
           "propose": {"candidate": "indefinite", "points": 25}}),
    _rule({"id": "R2", "when": {"refprop": "definite"},
           "propose": {"candidate": "antecedent", "points": 30}}),
    _rule({"id": "R3", "when": {"refprop": "generic"},
           "propose": {"candidate": "generic", "points": 10}}),
    _rule({"id": "R4", "when": {"refprop": "indefinite"},
           "propose": {"candidate": "indefinite", "points": 10}}),
    _rule({"id": "R5", "when": {"refprop": "not_definite"},
           "propose": {"candidate": "each_antecedent", "points": "P+W-D+4"}}),
)


def load_heuristic_rules(data) -> list:
    rules = []
    for lineno, line in enumerate(_as_text(data).splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            rules.append(HeuristicRule.from_json(json.loads(line)))
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad heuristic rule: {exc}", lineno) from None
    return rules


def dump_heuristic_rules(rules) -> str:
    return "".join(json.dumps(r.to_json(), ensure_ascii=False) + "\n" for r in rules)


# -- configuration ----------------------------------------------------------

@dataclass(frozen=True)
class ResolverConfig:
    method: Method = Method.M1
    heuristic_rules: tuple = DEFAULT_HEURISTIC_RULES
    salience: dict = field(default_factory=lambda: dict(DEFAULT_SALIENCE))
    clue_rules: tuple = refprop.DEFAULT_CLUE_RULES
    p_max: float = refprop.DEFAULT_P_MAX
    m3_base: float = DEFAULT_M3_BASE

    def with_method(self, method) -> "ResolverConfig":
        return replace(self, method=Method.parse(method))

    def scaled(self, k) -> "ResolverConfig":
        """Every rule's points multiplied by ``k`` (M3's built-in proposals are
        not rules and stay as they are)."""
        return replace(self, heuristic_rules=tuple(r.scaled(k) for r in self.heuristic_rules))


def load_config(path, **overrides) -> ResolverConfig:
    """Read a JSON resolver config. Rule-table paths resolve relative to the
    config file. Keyword overrides that are not ``None`` win over the file."""
    path = Path(path)
    obj = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: config must be a JSON object")
    unknown = set(obj) - {"method", "salience", "p_max", "m3_base", "clue_rules", "heuristic_rules"}
    if unknown:
        raise ParseError(f"{path}: unknown config keys {sorted(unknown)}")
    kw = {}
    if "method" in obj:
        try:
            kw["method"] = Method.parse(obj["method"])
        except ValueError as exc:
            raise ParseError(f"{path}: {exc}") from None
    if "salience" in obj:
        sal = obj["salience"]
        if not isinstance(sal, dict) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in sal.values()):
            raise ParseError(f"{path}: 'salience' must map particles to numbers")
        kw["salience"] = dict(sal)
    for key in ("p_max", "m3_base"):
        if key in obj:
            if not isinstance(obj[key], (int, float)) or isinstance(obj[key], bool):
                raise ParseError(f"{path}: {key!r} must be a number")
            kw[key] = obj[key]
    if obj.get("clue_rules"):
        kw["clue_rules"] = tuple(refprop.load_clue_rules(
            (path.parent / obj["clue_rules"]).read_bytes()))
    if obj.get("heuristic_rules"):
        kw["heuristic_rules"] = tuple(load_heuristic_rules(
            (path.parent / obj["heuristic_rules"]).read_bytes()))
    kw.update({k: v for k, v in overrides.items() if v is not None})
    if "method" in kw:
        kw["method"] = Method.parse(kw["method"])
    return ResolverConfig(**kw)


# -- resolution -------------------------------------------------------------

def candidate_antecedents(anaphor: Mention, state: DiscourseState,
                          cfg: ResolverConfig = ResolverConfig()) -> list:
    out = []
    for m in state.seen:
        if m.global_index >= anaphor.global_index or not head_match(anaphor, m):
            continue
        if cfg.method is not Method.M4:
            if not (modifier_ok(anaphor, m) and possessor_ok(anaphor, m, state)):
                continue
        out.append(m)
    return out


def apply_rules(anaphor: Mention, sentence: Sentence, state: DiscourseState,
                cfg: ResolverConfig = ResolverConfig(), scores=None) -> list:
    if scores is None:
        scores = refprop.estimate(anaphor, sentence, cfg.clue_rules)
    category = refprop.classify(scores)
    P = refprop.plausibility(scores, cfg.p_max)
    candidates = candidate_antecedents(anaphor, state, cfg)
    method = cfg.method

    proposals = []
    for rule in cfg.heuristic_rules:
        if rule.refprop is not None:
            if method is Method.M3 or not REFPROP_TESTS[rule.refprop](category):
                continue
        if not rule.condition.matches(anaphor, sentence):
            continue
        if rule.target == "indefinite":
            proposals.append(Proposal(INDEFINITE, rule.points(P), rule.id))
        elif rule.target == "generic":
            proposals.append(Proposal(GENERIC, rule.points(P), rule.id))
        else:
            if method is Method.M2 and category is not RefPropCategory.DEFINITE:
                continue
            chosen = candidates[-1:] if rule.target == "antecedent" else candidates
            for x in chosen:
                pts = rule.points(P, salience_weight(x, cfg.salience), distance(anaphor, x))
                proposals.append(Proposal(Candidate.antecedent(x), pts, rule.id))

    if method is Method.M3:
        proposals.append(Proposal(INDEFINITE, M3_FLAT_INDEFINITE, "M3-flat"))
        for x in candidates:
            pts = cfg.m3_base + salience_weight(x, cfg.salience) - distance(anaphor, x)
            proposals.append(Proposal(Candidate.antecedent(x), pts, "M3-distance"))
    return proposals


def decide(proposals, mention_id: Optional[str] = None) -> Decision:
    """Sum points per candidate and keep the best total.

    Ties go to an antecedent over Indefinite over Generic, and to the most
    recent antecedent. No proposals at all means Indefinite with total 0.
    """
    totals = OrderedDict()
    for p in proposals:
        totals[p.candidate] = totals.get(p.candidate, 0) + p.points
    if not totals:
        return Decision(mention_id, INDEFINITE, 0, tuple(proposals))
    best = max(totals, key=lambda c: (totals[c], tie_key(c)))
    return Decision(mention_id, best, totals[best], tuple(proposals))


def resolve_document(doc: Document, cfg: ResolverConfig = ResolverConfig(),
                     state: Optional[DiscourseState] = None) -> list:
    """Resolve every mention of ``doc`` left to right.

    Pass a fresh ``state`` to inspect chains and possessors afterwards.
    """
    if state is None:
        state = DiscourseState(salience_config=dict(cfg.salience))
    decisions = []
    for sentence in doc.sentences:
        for mention in sentence.mentions:
            scores = refprop.estimate(mention, sentence, cfg.clue_rules)
            owner = estimate_possessor(mention, state, sentence)
            proposals = apply_rules(mention, sentence, state, cfg, scores=scores)
            decision = replace(decide(proposals, mention.id),
                               category=refprop.classify(scores).value,
                               possessor=owner.id if owner is not None else None)
            commit(mention, decision, state)
            decisions.append(decision)
    return decisions
