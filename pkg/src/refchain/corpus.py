"""Document and gold-annotation model, plus readers/writers for the corpus
and lexicon file formats.

A corpus file holds one JSON document per line::

    {"id": "d1",
     "sentences": [{"tense": "past",
                    "mentions": [{"id": "m1", "head": "OJIISAN", "particle": "WA",
                                  "modifiers": [], "markers": [], "subject": false}]}],
     "gold": {"chains": [["m1", "m4"]], "generic": []}}

Mentions are pre-analyzed: particle, tense, subject flag and modifiers are
supplied by the corpus author. Global mention indices are derived from
document order and never read from the file.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Optional


class CorpusError(ValueError):
    """Base class for corpus and lexicon errors."""


class ParseError(CorpusError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(CorpusError):
    pass


class Particle(str, Enum):
    WA = "WA"
    GA = "GA"
    WO = "WO"
    NI = "NI"
    NIWA = "NIWA"
    NO = "NO"
    OTHER = "other"
    NONE = "none"


TOPIC_PARTICLES = frozenset({Particle.WA, Particle.NIWA})


class Tense(str, Enum):
    PAST = "past"
    NONPAST = "nonpast"
    UNKNOWN = "unknown"


# Semantic markers are plain strings. HUM/ANI/PAR drive possessor estimation;
# any other upper-case dictionary code is carried through untouched.
HUM = "HUM"
ANI = "ANI"
PAR = "PAR"
_MARKER_RE = re.compile(r"^[A-Z][A-Z0-9_-]*$")


def parse_marker(token: str) -> str:
    token = token.strip()
    if not _MARKER_RE.match(token):
        raise ValueError(f"unknown semantic marker {token!r}")
    return token


@dataclass(frozen=True)
class Mention:
    id: str
    global_index: int
    head: str
    particle: Particle = Particle.NONE
    modifiers: frozenset = frozenset()
    markers: frozenset = frozenset()
    is_subject: bool = False
    sentence_index: int = 0

    @property
    def is_topic(self) -> bool:
        return self.particle in TOPIC_PARTICLES


@dataclass(frozen=True)
class Sentence:
    index: int
    predicate_tense: Tense = Tense.UNKNOWN
    mentions: tuple = ()


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple = ()

    @property
    def mentions(self) -> tuple:
        return tuple(m for s in self.sentences for m in s.mentions)

    def mention(self, mention_id: str) -> Mention:
        for m in self.mentions:
            if m.id == mention_id:
                return m
        raise KeyError(mention_id)


@dataclass(frozen=True)
class GoldAnnotation:
    """Gold coreference chains for one document.

    ``mention_ids`` lists every mention id of the annotated document in
    document order; scoring needs it to find the first mention of a chain.
    """

    chains: tuple = ()
    generic_mentions: frozenset = frozenset()
    mention_ids: tuple = ()

    def chain_of(self, mention_id: str) -> Optional[frozenset]:
        for chain in self.chains:
            if mention_id in chain:
                return chain
        return None


@dataclass
class Lexicon:
    entries: dict = field(default_factory=dict)

    def lookup(self, noun: str) -> frozenset:
        return self.entries.get(noun, frozenset())


# -- corpus -----------------------------------------------------------------

def _as_text(data) -> str:
    if isinstance(data, (bytes, bytearray)):
        return bytes(data).decode("utf-8")
    if hasattr(data, "read"):
        return _as_text(data.read())
    return data


def _string_list(value, what: str, lineno: int) -> list:
    if value is None:
        return []
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError(f"{what} must be a list of strings", lineno)
    return value


def _parse_particle(value, lineno: int) -> Particle:
    if value is None:
        return Particle.NONE
    try:
        return Particle(value)
    except ValueError:
        raise ParseError(f"unknown particle {value!r}", lineno) from None


def _parse_tense(value, lineno: int) -> Tense:
    if value is None:
        return Tense.UNKNOWN
    try:
        return Tense(value)
    except ValueError:
        raise ParseError(f"unknown tense {value!r}", lineno) from None


def _parse_document(obj, lineno: int):
    if not isinstance(obj, dict):
        raise ParseError("document record must be an object", lineno)
    doc_id = obj.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise ParseError("document needs a non-empty string 'id'", lineno)
    raw_sentences = obj.get("sentences")
    if not isinstance(raw_sentences, list):
        raise ParseError("'sentences' must be a list", lineno)

    sentences = []
    seen_ids = set()
    gi = 0
    for si, raw in enumerate(raw_sentences):
        if not isinstance(raw, dict):
            raise ParseError(f"sentence {si} must be an object", lineno)
        tense = _parse_tense(raw.get("tense"), lineno)
        raw_mentions = raw.get("mentions", [])
        if not isinstance(raw_mentions, list):
            raise ParseError(f"sentence {si}: 'mentions' must be a list", lineno)
        mentions = []
        for rm in raw_mentions:
            if not isinstance(rm, dict):
                raise ParseError(f"sentence {si}: mention must be an object", lineno)
            mid = rm.get("id")
            head = rm.get("head")
            if not isinstance(mid, str) or not mid:
                raise ParseError(f"sentence {si}: mention needs a string 'id'", lineno)
            if not isinstance(head, str) or not head:
                raise ParseError(f"mention {mid}: 'head' must be a non-empty string", lineno)
            if mid in seen_ids:
                raise ValidationError(f"line {lineno}: duplicate mention id {mid!r}")
            seen_ids.add(mid)
            particle = _parse_particle(rm.get("particle"), lineno)
            subject = rm.get("subject", False)
            if not isinstance(subject, bool):
                raise ParseError(f"mention {mid}: 'subject' must be a boolean", lineno)
            try:
                markers = frozenset(parse_marker(t) for t in
                                    _string_list(rm.get("markers"), "markers", lineno))
            except ValueError as exc:
                raise ParseError(f"mention {mid}: {exc}", lineno) from None
            mentions.append(Mention(
                id=mid,
                global_index=gi,
                head=head,
                particle=particle,
                modifiers=frozenset(_string_list(rm.get("modifiers"), "modifiers", lineno)),
                markers=markers,
                is_subject=subject or particle is Particle.GA,
                sentence_index=si,
            ))
            gi += 1
        sentences.append(Sentence(index=si, predicate_tense=tense, mentions=tuple(mentions)))

    doc = Document(id=doc_id, sentences=tuple(sentences))
    gold = None
    if obj.get("gold") is not None:
        gold = _parse_gold(obj["gold"], doc, lineno)
    return doc, gold


def _parse_gold(raw, doc: Document, lineno: int) -> GoldAnnotation:
    if not isinstance(raw, dict):
        raise ParseError("'gold' must be an object", lineno)
    ids = tuple(m.id for m in doc.mentions)
    known = set(ids)
    raw_chains = raw.get("chains", [])
    if not isinstance(raw_chains, list):
        raise ParseError("gold 'chains' must be a list", lineno)
    chains = []
    used = set()
    for rc in raw_chains:
        members = _string_list(rc, "gold chain", lineno)
        chain = frozenset(members)
        if not chain:
            raise ParseError("gold chain may not be empty", lineno)
        for mid in chain:
            if mid not in known:
                raise ValidationError(f"line {lineno}: gold refers to unknown mention {mid!r}")
            if mid in used:
                raise ValidationError(f"line {lineno}: mention {mid!r} appears in two gold chains")
        used |= chain
        chains.append(chain)
    order = {mid: i for i, mid in enumerate(ids)}
    chains.sort(key=lambda c: min((order[m] for m in c), default=-1))
    generic = frozenset(_string_list(raw.get("generic"), "gold generic", lineno))
    for mid in generic:
        if mid not in known:
            raise ValidationError(f"line {lineno}: gold refers to unknown mention {mid!r}")
        if mid in used:
            raise ValidationError(
                f"line {lineno}: generic mention {mid!r} may not also sit in a gold chain")
    return GoldAnnotation(chains=tuple(chains), generic_mentions=generic, mention_ids=ids)


def parse_corpus(data) -> list:
    """Parse a corpus stream into ``[(Document, GoldAnnotation | None), ...]``.

    Accepts bytes, str, or a binary/text file object. Blank lines are skipped.
    """
    text = _as_text(data)
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc.msg}", lineno) from None
        out.append(_parse_document(obj, lineno))
    return out


def document_to_record(doc: Document, gold: Optional[GoldAnnotation] = None) -> dict:
    rec = {
        "id": doc.id,
        "sentences": [
            {
                "tense": s.predicate_tense.value,
                "mentions": [
                    {
                        "id": m.id,
                        "head": m.head,
                        "particle": m.particle.value,
                        "modifiers": sorted(m.modifiers),
                        "markers": sorted(m.markers),
                        "subject": m.is_subject,
                    }
                    for m in s.mentions
                ],
            }
            for s in doc.sentences
        ],
    }
    if gold is not None:
        order = {mid: i for i, mid in enumerate(m.id for m in doc.mentions)}
        chains = [sorted(c, key=order.__getitem__) for c in gold.chains]
        chains.sort(key=lambda c: order[c[0]] if c else -1)
        rec["gold"] = {
            "chains": chains,
            "generic": sorted(gold.generic_mentions, key=order.__getitem__),
        }
    return rec


def serialize_corpus(items: Iterable) -> bytes:
    """Inverse of :func:`parse_corpus`."""
    lines = []
    for doc, gold in items:
        lines.append(json.dumps(document_to_record(doc, gold), ensure_ascii=False))
    return "".join(line + "\n" for line in lines).encode("utf-8")


# -- lexicon ----------------------------------------------------------------

def parse_lexicon(data) -> Lexicon:
    """Read ``noun<TAB>marker[,marker...]`` lines; ``#`` starts a comment line."""
    text = _as_text(data)
    entries = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\r\n").split("\t")
        if len(parts) != 2 or not parts[0].strip():
            raise ParseError("expected 'noun<TAB>marker[,marker...]'", lineno)
        noun = parts[0].strip()
        try:
            markers = frozenset(parse_marker(t) for t in parts[1].split(","))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        entries[noun] = entries.get(noun, frozenset()) | markers
    return Lexicon(entries)


def attach_markers(doc: Document, lex: Lexicon) -> Document:
    sentences = tuple(
        replace(s, mentions=tuple(
            replace(m, markers=m.markers | lex.lookup(m.head)) for m in s.mentions))
        for s in doc.sentences
    )
    return replace(doc, sentences=sentences)
