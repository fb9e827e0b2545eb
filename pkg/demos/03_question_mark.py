"""Minkowski's question-mark function as a boundary-measure CDF.

The alpha = 1/2 member of the measure family, pushed to the unit interval
through the mediant encoding, has the question-mark function as its CDF:
mediant-tree descent digits become binary digits.  Values at rationals are
exact dyadics.
"""

from fractions import Fraction

from modwalk import question_mark

print("exact dyadic values at small rationals:")
for x in (0, Fraction(1, 5), Fraction(1, 4), Fraction(1, 3), Fraction(2, 5),
          Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), 1):
    v = question_mark(x, depth=512)
    print(f"  ?({str(x):>4}) = {str(v):>7} = {float(v):.6f}")

print()
print("the reflection symmetry ?(x) + ?(1-x) = 1 is exact:")
for x in (Fraction(1, 7), Fraction(3, 11), Fraction(5, 13)):
    left, right = question_mark(x, depth=512), question_mark(1 - x, depth=512)
    print(f"  ?({x}) + ?({1 - x}) = {left} + {right} = {left + right}")

print()
print("a 'slippery staircase' table (plot x vs ?(x) to see it):")
print("x,qmark")
den = 64
for num in range(den + 1):
    x = Fraction(num, den)
    print(f"{float(x):.6f},{float(question_mark(x, depth=512)):.6f}")
