import time

import pytest

from spmodel import (ConfigurationError, KnowledgeBase, Pattern, SearchParams,
                     derive_costs, matched_pair_score, msa,
                     validate_alignment)
from spmodel.data import DNA, load_corpus

from oracles import star_alignment_score


@pytest.fixture(scope="module")
def dna():
    kb = load_corpus(DNA)
    t0 = time.perf_counter()
    a = msa(list(kb.patterns))
    return kb, a, time.perf_counter() - t0


def test_dna_valid_and_beats_star(dna):
    kb, a, _ = dna
    assert validate_alignment(a) == []
    costs = derive_costs(kb)
    star = star_alignment_score([list(p.names) for p in kb], dict(costs.bits))
    assert matched_pair_score(a, costs) >= star


def test_dna_rows_are_the_inputs(dna):
    kb, a, _ = dna
    assert [r.names for r in a.rows] == [p.names for p in kb]
    assert sorted(a.pattern_ids) == sorted(p.id for p in kb.patterns[1:])


def test_identical_sequences():
    a = msa(["a b c", "a b c"])
    assert [len(c.entries) for c in a.columns] == [2, 2, 2]


def test_disjoint_sequences():
    a = msa(["a b", "c d e"])
    assert not any(c.matched for c in a.columns)
    assert len(a.columns) == 5


def test_three_sequences_score():
    a = msa(["a b c", "a c", "b c"])
    costs = derive_costs(KnowledgeBase((Pattern.from_tokens("x", "a b c"),)))
    # every c lines up, plus a with a and b with b
    assert matched_pair_score(a, costs) == pytest.approx(4 * costs["a"])


def test_msa_errors():
    with pytest.raises(ConfigurationError):
        msa(["a b"])
    with pytest.raises(ConfigurationError):
        msa([Pattern.from_tokens("P", "!X a"), "a"])


def test_msa_ignores_iteration_limit():
    a = msa(["a", "a", "a", "a"], params=SearchParams(max_iterations=1))
    assert len(a.rows) == 4
