import math
import random

import pytest

from spmodel import (Code, CostModel, KnowledgeBase, Pattern, SearchParams,
                     build_alignments, complete, decode, derive_costs,
                     encode, load_kb, recognize)
from spmodel.alignment import column_is_contents
from spmodel.codec import alignment_code

from conftest import SENTENCE
from instances import instances, plain_patterns
from oracles import best_cd_exhaustive

XABC = load_kb("P 1 : !X a b c !#X\n")


def _column_walk_code(a):
    return [col.name for col in a.columns if len(col.entries) == 1
            and col.entries[0][0] > 0
            and a.symbol(*col.entries[0]).is_id]


@pytest.fixture(scope="module")
def sentence_code(grammar_kb, grammar_costs):
    return encode(Pattern.new(SENTENCE), grammar_kb, grammar_costs)


def test_encode_sentence(sentence_code, grammar_costs):
    res = sentence_code
    assert res.compressed
    assert list(res.code.symbols) == _column_walk_code(res.alignment)
    assert res.code.symbols[0] == "S" and res.code.symbols[-1] == "#S"
    assert "PL" in res.code.symbols
    assert res.code.residue == ()
    assert res.code.source == res.alignment.pattern_ids
    cost = math.fsum(grammar_costs[n] for n in res.code.symbols)
    assert cost == res.score.b_code


def test_encode_empty_kb():
    res = encode(Pattern.new("a b"), KnowledgeBase(()),
                 CostModel({}, fallback=1.0))
    assert not res.compressed
    assert res.code.symbols == ()
    assert res.code.residue == ((0, "a"), (1, "b"))


def test_encode_single_pattern():
    res = encode(Pattern.new("a b c"), XABC, derive_costs(XABC))
    assert res.code.symbols == ("X", "#X")


def test_decode_single_pattern():
    res = decode(Code(("X", "#X")), XABC, derive_costs(XABC))
    assert res.ok and res.symbols == ("a", "b", "c")
    assert decode("X #X", XABC, derive_costs(XABC)).symbols == ("a", "b", "c")


def test_decode_empty_code():
    res = decode(Code(()), XABC, derive_costs(XABC))
    assert not res.ok and res.symbols == ()


def test_decode_unknown_code():
    res = decode(["Q"], XABC, derive_costs(XABC))
    assert not res.ok


def test_round_trip_sentence(sentence_code, grammar_kb, grammar_costs):
    out = decode(sentence_code.code, grammar_kb, grammar_costs)
    assert out.ok
    assert " ".join(out.symbols) == SENTENCE
    a = out.alignment
    contents = [c.name for c in a.columns if column_is_contents(a, c)]
    assert contents == SENTENCE.split()


def test_residue_round_trip():
    kb = load_kb("P 1 : !X a b c d !#X\n")
    costs = derive_costs(kb)
    res = encode(Pattern.new("a b q c d"), kb, costs)
    assert res.compressed
    assert res.code.symbols == ("X", "#X")
    assert res.code.residue == ((2, "q"),)
    assert decode(res.code, kb, costs).symbols == tuple("abqcd")


def _bracketed_kb(rng):
    # each pattern owns its brackets and its letters
    letters = list("abcdefghijklmnop")
    rng.shuffle(letters)
    bodies = []
    for i in range(rng.randint(1, 4)):
        own = letters[4 * i:4 * i + 4]
        bodies.append([rng.choice(own) for _ in range(rng.randint(3, 5))])
    text = "".join(f"P{i} 1 : !C{i} {' '.join(b)} !#C{i}\n"
                   for i, b in enumerate(bodies))
    return load_kb(text), bodies


def test_round_trip_random():
    rng = random.Random(31)
    params = SearchParams(max_iterations=4)
    for _ in range(30):
        kb, bodies = _bracketed_kb(rng)
        costs = derive_costs(kb)
        names = [x for _ in range(rng.randint(1, 2))
                 for x in bodies[rng.randrange(len(bodies))]]
        res = encode(Pattern.new(names), kb, costs, params)
        assert res.compressed and not res.code.residue
        assert decode(res.code, kb, costs, params).symbols == tuple(names)


def test_complete_finds_verb_only_with_sentence(grammar_kb, grammar_costs):
    res = complete(Pattern.new("t w o k i t t e n s"), grammar_kb,
                   grammar_costs)
    assert abs(math.fsum(c.probability for c in res) - 1) <= 1e-9
    top = res[0]
    verb = set("play")
    uses_sentence = "P7" in top.alignment.pattern_ids
    assert bool(verb & set(top.inferred)) <= uses_sentence
    cds = [c.cd for c in res]
    assert cds == sorted(cds, reverse=True)


def test_complete_top_matches_bounded_oracle(grammar_kb, grammar_costs):
    # three rows keeps the brute force affordable on the full grammar
    new = Pattern.new("t w o k i t t e n s")
    params = SearchParams(max_iterations=3, exhaustive=True)
    got = complete(new, grammar_kb, grammar_costs, params, top_n=3)
    want = best_cd_exhaustive(list(new.names), plain_patterns(grammar_kb),
                              dict(grammar_costs.bits), max_rows=3)
    assert got[0].cd == pytest.approx(want, rel=1e-12)
    assert got[0].inferred == ()


def test_complete_nothing_to_infer():
    res = complete(Pattern.new("a b c"), XABC, derive_costs(XABC))
    assert res[0].inferred == ()
    assert res[0].projection == ("X", "a", "b", "c", "#X")


def test_complete_no_overlap():
    costs = derive_costs(XABC)
    res = complete(Pattern.new("q r"), XABC, costs)
    assert len(res) == 1
    assert res[0].inferred == () and res[0].probability == 1.0


def test_recognize_sentence(grammar_kb, grammar_costs):
    res = recognize(Pattern.new(SENTENCE), grammar_kb, grammar_costs, top_n=3)
    assert res[0].pattern_ids == tuple(f"P{i}" for i in range(1, 9))
    assert len({r.pattern_ids for r in res}) == len(res)
    assert abs(math.fsum(r.probability for r in res) - 1) <= 1e-9


def test_recognize_corrupted(grammar_kb, grammar_costs):
    clean = recognize(Pattern.new(SENTENCE), grammar_kb, grammar_costs)[0]
    noisy = recognize(Pattern.new("t w o k i t t e n s p l a q"),
                      grammar_kb, grammar_costs)[0]
    assert noisy.pattern_ids == clean.pattern_ids
    assert noisy.cd < clean.cd


def test_recognize_no_overlap():
    res = recognize(Pattern.new("q"), XABC, derive_costs(XABC))
    assert [r.pattern_ids for r in res] == [()]


def test_recognize_top_n_positive():
    with pytest.raises(ValueError):
        recognize(Pattern.new("a"), XABC, derive_costs(XABC), top_n=0)


def test_unseen_symbol_never_raises_top_cd():
    rng = random.Random(12)
    for new, kb, costs in instances(9, 15, max_new=5):
        params = SearchParams(max_iterations=4)
        top = build_alignments(new, kb, costs, params)[0]
        matched = [p for c in top.alignment.columns if c.matched
                   for r, p in c.entries if r == 0]
        if not matched:
            continue
        names = list(new.names)
        names[rng.choice(matched)] = "never_seen"
        fb = CostModel(dict(costs.bits), fallback=2.0)
        worse = build_alignments(Pattern.new(names), kb, fb, params)[0]
        assert worse.cd <= top.cd


def test_code_matches_alignment_code(sentence_code):
    assert alignment_code(sentence_code.alignment) == sentence_code.code
