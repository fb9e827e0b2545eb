"""Exact arithmetic in the modular group Z2 * Z3.

Group elements are reduced words over {a, b, B} (B = b^2 = b^-1) in which
'a' alternates with letters from {b, B}.  Everything in this demo is exact:
words reduce symbolically and measure weights are rationals.
"""

from fractions import Fraction

from modwalk import (
    GroupMeasure,
    conjugate,
    convolve,
    inverse,
    parse_word,
    reduce_concat,
    translate_right,
    word_to_matrix,
)

u, v = parse_word("ab"), parse_word("ba")
print("concatenation reduces through the Z3 relation b.b = B:")
print(f"  ({u}) * ({v}) = {reduce_concat(u, v)}")
print(f"  inverse of {u} is {inverse(u)}")
print(f"  b * B = {reduce_concat(parse_word('b'), parse_word('B')).letters!r}  (the empty word e)")

print()
print("the letters map to PSL(2,Z) matrices (canonical sign, first nonzero")
print("top-row entry positive); concatenation becomes matrix product:")
for text in ("a", "b", "ab", "aB", "bab"):
    print(f"  {text:>4} -> {word_to_matrix(parse_word(text))}")

b = parse_word("b")
bbb = reduce_concat(reduce_concat(b, b), b)
print(f"  b^3 reduces to {bbb!r} with matrix {word_to_matrix(bbb)}")

print()
print("measures with rational weights convolve exactly:")
mu = GroupMeasure({parse_word("a"): Fraction(1, 3), parse_word("b"): Fraction(2, 3)})
print(f"  mu           = {mu.to_json_dict()}")
print(f"  mu * mu      = {convolve(mu, mu).to_json_dict()}")

a = parse_word("a")
print()
print("the convolution of mu with its conjugate a mu a is the square of the")
print("right translate mu a -- an identity the compound-walk example relies on:")
lhs = convolve(mu, conjugate(mu, a))
rhs = convolve(translate_right(mu, a), translate_right(mu, a))
print(f"  mu * (a mu a) = {lhs.to_json_dict()}")
print(f"  (mu a)^(*2)   = {rhs.to_json_dict()}")
print(f"  equal exactly: {lhs == rhs}")
