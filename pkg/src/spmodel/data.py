"""Bundled example knowledge bases."""
from importlib import resources

from .patterns import KnowledgeBase, load_kb

GRAMMAR = "grammar.spk"
DNA = "dna.spk"


def corpus_path(name: str):
    """Path-like handle to a bundled .spk file."""
    return resources.files("spmodel").joinpath("data", name)


def corpus_text(name: str) -> str:
    return corpus_path(name).read_text(encoding="utf-8")


def load_corpus(name: str) -> KnowledgeBase:
    return load_kb(corpus_text(name))
