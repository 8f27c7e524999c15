"""Compress a sentence to its code, then expand the code again.

    python3 demos/encode_decode.py
"""
from spmodel import Pattern, decode, derive_costs, encode
from spmodel.data import GRAMMAR, load_corpus

SENTENCE = "t w o k i t t e n s p l a y"


def main():
    kb = load_corpus(GRAMMAR)
    costs = derive_costs(kb)
    enc = encode(Pattern.new(SENTENCE), kb, costs)
    print(f"input : {SENTENCE}")
    print(f"code  : {enc.code}   ({enc.score.b_code:.2f} bits "
          f"instead of {enc.score.b_new:.2f})")
    dec = decode(enc.code, kb, costs)
    out = " ".join(dec.symbols)
    print(f"output: {out}")
    print("lossless" if out == SENTENCE else "MISMATCH")

    # a symbol no stored pattern knows travels as residue
    odd = "t w o k i t t e n s p l a y z"
    enc = encode(Pattern.new(odd), kb, costs)
    print(f"\ninput : {odd}")
    print(f"code  : {enc.code}  residue {list(enc.code.residue)}")
    print(f"output: {' '.join(decode(enc.code, kb, costs).symbols)}")


if __name__ == "__main__":
    main()
