"""Three faces of the boundary encoding of the extended real line.

L/R words address nodes of the mediant (Stern-Brocot) tree of unimodular
intervals; syllable runs of an L/R word are continued-fraction digits; and
boundary words of the group translate letterwise (ab -> R, aB -> L) with
the involution z -> -1/z covering the negative ray.
"""

from fractions import Fraction

from modwalk import (
    cf_value,
    lr_to_cf,
    lr_to_interval,
    parse_word,
    rational_to_cf,
    rational_to_lr,
    tau_enclosure,
)

print("descending the mediant tree from [0, oo]:")
for word in ("", "L", "R", "LL", "LLR"):
    iv = lr_to_interval(word)
    print(f"  {word or '(root)':>6}: [{iv.left}, {iv.right}]  mediant {iv.mediant()}")

print()
codes = rational_to_lr(Fraction(2, 5))
print(f"2/5 sits at stem {codes.stem!r}; its two infinite codes are")
print(f"  left  {codes.left}   (ends in R forever)")
print(f"  right {codes.right}   (ends in L forever)")
print(f"continued fraction via the right code: {list(rational_to_cf(Fraction(2, 5)))}")
print(f"  check: value of [0;2,2] = {cf_value((0, 2, 2))}")

print()
print("syllable runs <-> continued-fraction digits:")
for word in ("RRLLLR", "LLL"):
    print(f"  {word} -> {list(lr_to_cf(word))}")

print()
print("boundary prefixes enclose their image on the real line; prefixes that")
print("do not start with 'a' land on the negative ray through z -> -1/z:")
for text in ("ab", "aBaB", "a", "b", "BaB"):
    iv = tau_enclosure(parse_word(text))
    print(f"  {text:>5} -> [{iv.left}, {iv.right}]")

print()
print("denominators grow without bound but stay exact (depth 100):")
deep = lr_to_interval("LR" * 50)
print(f"  left endpoint denominator has {len(str(deep.left.den))} digits")
