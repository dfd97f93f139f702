"""Rule-based coreference for noun phrases in pre-analyzed Japanese text."""

from .corpus import (Document, GoldAnnotation, Lexicon, Mention, Sentence,
                     attach_markers, parse_corpus, parse_lexicon, serialize_corpus)
from .decisions import Candidate, Decision, Proposal
from .discourse import DiscourseState
from .evaluation import ablation, evaluate, score
from .refprop import RefPropCategory, RefPropScores, classify, estimate, plausibility
from .resolver import Method, ResolverConfig, decide, load_config, resolve_document

__version__ = "0.1.0"

__all__ = [
    "Candidate", "Decision", "DiscourseState", "Document", "GoldAnnotation", "Lexicon",
    "Mention", "Method", "Proposal", "RefPropCategory", "RefPropScores", "ResolverConfig",
    "Sentence", "ablation", "attach_markers", "classify", "decide", "estimate", "evaluate",
    "load_config", "parse_corpus", "parse_lexicon", "plausibility", "resolve_document",
    "score", "serialize_corpus",
]
