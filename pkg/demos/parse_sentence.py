"""Parse a short sentence against a small grammar held as patterns.

The grammar rules, the words and the sentence are all plain patterns.
The best alignment doubles as a parse tree: each Old row is one rule or
word, and its unmatched identification symbols form the code.

    python3 demos/parse_sentence.py
"""
from spmodel import (Pattern, SearchParams, build_alignments, derive_costs,
                     relative_probabilities, render)
from spmodel.codec import alignment_code
from spmodel.data import GRAMMAR, load_corpus

SENTENCE = "t w o k i t t e n s p l a y"


def main():
    kb = load_corpus(GRAMMAR)
    costs = derive_costs(kb)
    print(f"{len(kb)} stored patterns, {len(kb.alphabet)} symbol names, "
          f"{costs.bits['k']:.3f} bits per symbol\n")
    ranked = build_alignments(Pattern.new(SENTENCE), kb, costs,
                              SearchParams())
    top = ranked[:3]
    for n, (c, p) in enumerate(zip(top, relative_probabilities(top)), 1):
        print(f"#{n}  cd={c.cd:.3f} bits  p={p:.4f}  "
              f"rows: {' '.join(c.alignment.pattern_ids)}")
    # p follows code length alone, so rows that leave one New symbol
    # unmatched but keep the same code tie with the winner
    best = ranked[0]
    print("\nbest alignment:\n")
    print(render(best.alignment))
    code = alignment_code(best.alignment)
    print(f"\ncode: {code}")
    print(f"{best.score.b_new:.3f} bits for the sentence, "
          f"{best.score.b_code:.3f} for the code")


if __name__ == "__main__":
    main()
