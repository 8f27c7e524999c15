import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spmodel import SearchParams, build_alignments, derive_costs, Pattern
from spmodel.data import DNA, GRAMMAR, corpus_path, load_corpus

SENTENCE = "t w o k i t t e n s p l a y"


@pytest.fixture(scope="session")
def grammar_kb():
    return load_corpus(GRAMMAR)


@pytest.fixture(scope="session")
def grammar_costs(grammar_kb):
    return derive_costs(grammar_kb)


@pytest.fixture(scope="session")
def grammar_path():
    return str(corpus_path(GRAMMAR))


@pytest.fixture(scope="session")
def dna_path():
    return str(corpus_path(DNA))


@pytest.fixture(scope="session")
def sentence_ranked(grammar_kb, grammar_costs):
    """Full ranked list for the kitten sentence, built once."""
    return build_alignments(Pattern.new(SENTENCE), grammar_kb, grammar_costs,
                            SearchParams())


@pytest.fixture(scope="session")
def sentence_top(sentence_ranked):
    return sentence_ranked[0]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
