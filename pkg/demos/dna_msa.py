"""Align five short DNA sequences into one multiple alignment.

The score counts, for every column, the matched pairs it holds weighted
by symbol cost.  A star alignment around the best centre sequence gives
a simple baseline to compare against.

    python3 demos/dna_msa.py
"""
import time

from spmodel import derive_costs, matched_pair_score, msa, render
from spmodel.data import DNA, load_corpus
from spmodel.pairwise import align_pairwise


def star_baseline(seqs, costs):
    best = 0.0
    for c in seqs:
        total = sum(align_pairwise(c, s, costs)[0].score
                    for s in seqs if s is not c)
        best = max(best, total)
    return best


def main():
    kb = load_corpus(DNA)
    seqs = list(kb.patterns)
    costs = derive_costs(kb)
    for p in seqs:
        print(f"{p.id}: {' '.join(p.names)}")
    t0 = time.perf_counter()
    a = msa(seqs, costs)
    dt = time.perf_counter() - t0
    print(f"\n{len(a.columns)} columns in {dt:.1f}s\n")
    print(render(a))
    print(f"\nmatched-pair score {matched_pair_score(a, costs):.1f}, "
          f"star baseline {star_baseline(seqs, costs):.1f}")


if __name__ == "__main__":
    main()
