"""Precision / recall of antecedent links against gold chains."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .corpus import GoldAnnotation, ValidationError
from .resolver import Method, ResolverConfig, resolve_document


@dataclass(frozen=True)
class Counts:
    judged: int = 0
    with_antecedent: int = 0
    correct: int = 0

    def __add__(self, other: "Counts") -> "Counts":
        return Counts(self.judged + other.judged,
                      self.with_antecedent + other.with_antecedent,
                      self.correct + other.correct)

    @property
    def precision(self) -> Optional[Fraction]:
        return Fraction(self.correct, self.judged) if self.judged else None

    @property
    def recall(self) -> Optional[Fraction]:
        return Fraction(self.correct, self.with_antecedent) if self.with_antecedent else None

    def to_json(self) -> dict:
        return {
            "judged": self.judged,
            "with_antecedent": self.with_antecedent,
            "correct": self.correct,
            "precision": None if self.precision is None else float(self.precision),
            "recall": None if self.recall is None else float(self.recall),
        }


# A report for one method is just its counts.
EvalReport = Counts


def percent(ratio: Optional[Fraction]) -> Optional[int]:
    """Nearest whole percent, halves rounded up."""
    if ratio is None:
        return None
    scaled = ratio * 100
    return int(scaled + Fraction(1, 2)) if scaled >= 0 else -int(-scaled + Fraction(1, 2))


def format_ratio(numerator: int, denominator: int) -> str:
    """``82% (130/159)``; an empty denominator gives ``undefined (0/0)``."""
    if denominator == 0:
        return f"undefined ({numerator}/{denominator})"
    return f"{percent(Fraction(numerator, denominator))}% ({numerator}/{denominator})"


def format_precision(counts: Counts) -> str:
    return format_ratio(counts.correct, counts.judged)


def format_recall(counts: Counts) -> str:
    return format_ratio(counts.correct, counts.with_antecedent)


def score(decisions, gold: GoldAnnotation) -> Counts:
    order = {mid: i for i, mid in enumerate(gold.mention_ids)}
    chain_of = {}
    for chain in gold.chains:
        for mid in chain:
            chain_of[mid] = chain

    judged = correct = 0
    for d in decisions:
        if d.mention_id not in order:
            raise ValidationError(f"decision for unknown mention {d.mention_id!r}")
        ante = d.antecedent
        if ante is None:
            continue
        if ante not in order:
            raise ValidationError(f"decision links to unknown mention {ante!r}")
        judged += 1
        chain = chain_of.get(d.mention_id)
        if chain is not None and ante in chain:
            correct += 1

    with_antecedent = sum(
        len(chain) - 1 for chain in gold.chains)
    return Counts(judged, with_antecedent, correct)


def evaluate(items, cfg: ResolverConfig = ResolverConfig()) -> Counts:
    """Pooled counts over ``[(Document, GoldAnnotation), ...]``."""
    total = Counts()
    for doc, gold in items:
        total = total + score(resolve_document(doc, cfg), gold)
    return total


def ablation(items, base_cfg: ResolverConfig = ResolverConfig()) -> dict:
    items = list(items)
    return {m: evaluate(items, base_cfg.with_method(m)) for m in Method}


def report_table(reports: dict) -> str:
    """Aligned text table: methods as columns, precision / recall as rows."""
    methods = list(reports)
    header = [""] + [f"Method {int(m)}" for m in methods]
    rows = [
        ["Precision"] + [format_precision(reports[m]) for m in methods],
        ["Recall"] + [format_recall(reports[m]) for m in methods],
    ]
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = []
    for r in [header] + rows:
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def report_json(reports: dict) -> str:
    body = {f"method_{int(m)}": c.to_json() for m, c in reports.items()}
    return json.dumps({"per_method": body}, indent=2, sort_keys=True) + "\n"
