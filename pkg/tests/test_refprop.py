import pytest
from hypothesis import given, settings, strategies as st

from gen import documents
from refchain import refprop
from refchain.corpus import Mention, Particle, ParseError, Sentence, Tense
from refchain.refprop import (ClueRule, Condition, RefPropCategory, RefPropScores, classify,
                              estimate, load_clue_rules, plausibility)
from refchain.resources import read_bytes


def mention(particle="WA", mods=(), markers=()):
    return Mention("a", 0, "OJIISAN", Particle(particle), frozenset(mods), frozenset(markers))


def sentence(tense="past"):
    return Sentence(0, Tense(tense))


def test_wa_past_is_definite():
    scores = estimate(mention("WA"), sentence("past"))
    assert classify(scores) is RefPropCategory.DEFINITE
    assert scores == RefPropScores(0, 7, 0)


def test_empty_table():
    scores = estimate(mention(), sentence(), table=[])
    assert scores == RefPropScores(0, 0, 0)
    assert classify(scores) is RefPropCategory.DEFINITE


def test_single_rule_echoes_deltas():
    rule = ClueRule("only", Condition.from_json({"particle": "WA"}), RefPropScores(0, 7, 0))
    assert estimate(mention("WA"), sentence("nonpast"), [rule]) == RefPropScores(0, 7, 0)


@pytest.mark.parametrize("scores, expected", [
    ((0, 7, 3), RefPropCategory.DEFINITE),
    ((5, 5, 5), RefPropCategory.DEFINITE),
    ((9, 2, 3), RefPropCategory.GENERIC),
    ((1, 2, 2), RefPropCategory.DEFINITE),
    ((4, 2, 4), RefPropCategory.INDEFINITE),
    ((0, 0, 1), RefPropCategory.INDEFINITE),
])
def test_classify(scores, expected):
    assert classify(RefPropScores(*scores)) is expected


@pytest.mark.parametrize("scores, p_max, expected", [
    ((0, 7, 3), 15, 7),
    ((0, -2, 3), 15, 0),
    ((0, 40, 0), 15, 15),
    ((0, 40, 0), 20, 20),
])
def test_plausibility_clamp(scores, p_max, expected):
    assert plausibility(RefPropScores(*scores), p_max) == expected


def test_default_table_other_clues():
    each = estimate(mention("WO", mods=["SOREZORE-NO"]), sentence("past"))
    assert classify(each) is RefPropCategory.INDEFINITE
    assert classify(estimate(mention("GA"), sentence("nonpast"))) is RefPropCategory.INDEFINITE
    assert classify(estimate(mention("WA"), sentence("nonpast"))) is RefPropCategory.GENERIC
    # a modified topic is not caught by the generic clue
    assert classify(estimate(mention("WA", mods=["OOKINA"]), sentence("nonpast"))) \
        is RefPropCategory.DEFINITE


def test_condition_marker_and_modified_by():
    cond = Condition.from_json({"marker": "HUM", "modified_by": ["KONO"]})
    assert cond.matches(mention(mods=["KONO"], markers=["HUM"]), sentence())
    assert not cond.matches(mention(mods=["KONO"]), sentence())
    assert not cond.matches(mention(markers=["HUM"]), sentence())


def test_condition_rejects_unknown_keys():
    with pytest.raises(ValueError):
        Condition.from_json({"colour": "red"})


def test_bundled_clue_file_matches_defaults():
    assert tuple(load_clue_rules(read_bytes("clue_rules.jsonl"))) == refprop.DEFAULT_CLUE_RULES


@pytest.mark.parametrize("line", [
    '{"id": "x", "delta": [1, 2]}',
    '{"id": "x", "when": {"particle": "KARA"}, "delta": [0, 0, 1]}',
    '{"when": {}, "delta": [0, 0, 1]}',
    'nonsense',
])
def test_bad_clue_rule_file(line):
    with pytest.raises(ParseError) as err:
        load_clue_rules("# header\n" + line)
    assert err.value.line == 2


_never = ClueRule("never", Condition.from_json({"marker": "NO-SUCH-MARKER"}), RefPropScores(50, -9, 3))


@settings(max_examples=200, deadline=None)
@given(documents(), st.randoms(use_true_random=False))
def test_estimate_pure_permutation_and_noop(doc, rnd):
    table = list(refprop.DEFAULT_CLUE_RULES)
    shuffled = table[:]
    rnd.shuffle(shuffled)
    for s in doc.sentences:
        for m in s.mentions:
            base = estimate(m, s, table)
            assert estimate(m, s, table) == base
            assert classify(estimate(m, s, shuffled)) is classify(base)
            assert estimate(m, s, table + [_never]) == base
