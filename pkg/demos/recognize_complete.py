"""Recognition of noisy input and completion of partial input.

A corrupted sentence still lands on the same rule set, only with less
compression.  A truncated one is filled in from the stored patterns.

    python3 demos/recognize_complete.py
"""
from spmodel import Pattern, complete, derive_costs, recognize
from spmodel.data import GRAMMAR, load_corpus


# ranking is by cd; p is relative to the rows listed and follows code
# length only, so a short partial parse can be the most probable one
def show_recognition(kb, costs, text):
    print(f"\n'{text}'")
    for r in recognize(Pattern.new(text), kb, costs, top_n=3):
        ids = " ".join(r.pattern_ids) or "(nothing)"
        print(f"  cd={r.cd:7.3f}  p={r.probability:.4f}  {ids}")


def main():
    kb = load_corpus(GRAMMAR)
    costs = derive_costs(kb)
    print("recognition")
    show_recognition(kb, costs, "t w o k i t t e n s p l a y")
    show_recognition(kb, costs, "t w o k i t t e n s p l a q")
    show_recognition(kb, costs, "t w o k x t t e n s p l a y")

    print("\ncompletion")
    for text in ("k i t t e", "t w o k i t t e n s p l"):
        best = complete(Pattern.new(text), kb, costs)[0]
        print(f"  '{text}' -> '{' '.join(best.projection)}'  "
              f"(inferred: {' '.join(best.inferred) or '-'})")


if __name__ == "__main__":
    main()
