import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modwalk import (
    ExtRational,
    LRCode,
    ROOT_INTERVAL,
    boundary_to_lr,
    cf_to_lr,
    cf_value,
    lr_to_cf,
    lr_to_interval,
    parse_word,
    rational_to_cf,
    rational_to_lr,
    tau_enclosure,
)

from helpers import random_rational

lr_words = st.text(alphabet="LR", max_size=24)


class TestExtRational:
    def test_parse_format(self):
        assert str(ExtRational.parse("1/0")) == "1/0"
        assert str(ExtRational.parse("-1/0")) == "-1/0"
        assert ExtRational.parse("2/4") == ExtRational(1, 2)
        assert ExtRational.parse("0.25") == ExtRational(1, 4)
        assert ExtRational.parse("-3/6") == ExtRational(-1, 2)

    def test_order_with_infinities(self):
        lo, hi = ExtRational(-1, 0), ExtRational(1, 0)
        mid = ExtRational(7, 3)
        assert lo < mid < hi and lo < hi
        assert not hi < hi

    def test_neg_reciprocal(self):
        assert ExtRational(0, 1).neg_reciprocal() == ExtRational(-1, 0)
        assert ExtRational(1, 0).neg_reciprocal() == ExtRational(0, 1)
        assert ExtRational(1, 2).neg_reciprocal() == ExtRational(-2, 1)
        assert ExtRational(-2, 1).neg_reciprocal() == ExtRational(1, 2)


class TestIntervals:
    def test_llr_example(self):
        iv = lr_to_interval("LLR")
        assert (str(iv.left), str(iv.right)) == ("1/3", "1/2")
        assert iv.mediant() == ExtRational(2, 5)

    def test_r_and_empty(self):
        assert str(lr_to_interval("R")) == "1/1..1/0"
        assert lr_to_interval("") == ROOT_INTERVAL

    def test_ll_example(self):
        iv = lr_to_interval("LL")
        assert (str(iv.left), str(iv.right)) == ("0/1", "1/2")

    @settings(derandomize=True, max_examples=300)
    @given(lr_words)
    def test_unimodular_and_nested(self, word):
        iv = lr_to_interval(word)
        det = iv.right.num * iv.left.den - iv.left.num * iv.right.den
        assert det == 1
        m = iv.mediant()
        left, right = iv.child("L"), iv.child("R")
        assert left.right == m == right.left
        assert left.left == iv.left and right.right == iv.right

    def test_depth_100_exact_big_integers(self):
        iv = lr_to_interval("LR" * 50)
        assert min(iv.left.den, iv.right.den) > 2**60  # Fibonacci-type growth


class TestRationalCodes:
    def test_two_fifths(self):
        codes = rational_to_lr(Fraction(2, 5))
        assert codes.stem == "LLR"
        assert codes.left == LRCode("LLRL", "R")
        assert codes.right == LRCode("LLRR", "L")

    def test_one(self):
        codes = rational_to_lr(1)
        assert codes.stem == ""
        assert (codes.left, codes.right) == (LRCode("L", "R"), LRCode("R", "L"))

    def test_one_third_derived(self):
        # oracle: the mediant of the interval of the returned stem is the input
        codes = rational_to_lr(Fraction(1, 3))
        assert codes.stem == "LL"
        assert lr_to_interval(codes.stem).mediant() == ExtRational(1, 3)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            rational_to_lr(0)
        with pytest.raises(ValueError):
            rational_to_lr(Fraction(-2, 5))

    def test_round_trip_random_rationals(self):
        rng = random.Random(29)
        for _ in range(1000):
            q = random_rational(rng)
            codes = rational_to_lr(q)
            assert lr_to_interval(codes.stem).mediant().as_fraction() == q
            # both infinite codes truncate into the stem's interval
            for code in (codes.left, codes.right):
                deep = lr_to_interval(code.prefix(len(codes.stem) + 5))
                iv = lr_to_interval(codes.stem)
                assert iv.left <= deep.left and deep.right <= iv.right


class TestContinuedFractions:
    def test_syllable_examples(self):
        assert lr_to_cf("RRLLLR") == (2, 3, 1)
        assert lr_to_cf("LLL") == (0, 3)
        assert lr_to_cf("") == ()

    def test_infinite_code_truncation(self):
        assert lr_to_cf(LRCode("LLRR", "L")) == (0, 2, 2)
        assert lr_to_cf(LRCode("LLRL", "R")) == (0, 2, 1, 1)  # the other classical code of 2/5
        assert lr_to_cf(LRCode("", "L")) == ()

    def test_cf_to_lr_inverse(self):
        assert cf_to_lr((2, 3, 1)) == "RRLLLR"
        assert cf_to_lr((0, 3)) == "LLL"
        assert cf_to_lr(()) == ""
        with pytest.raises(ValueError):
            cf_to_lr((1, 0, 2))

    def test_round_trip_random_syllables(self):
        rng = random.Random(31)
        for _ in range(1000):
            digits = [rng.randint(0, 6)] + [
                rng.randint(1, 6) for _ in range(rng.randint(0, 8))
            ]
            word = cf_to_lr(digits)
            expected = tuple(digits) if (digits[0] or len(digits) > 1) else ()
            assert lr_to_cf(word) == expected

    def test_value_agrees_with_rational(self):
        rng = random.Random(37)
        for _ in range(500):
            q = random_rational(rng)
            digits = rational_to_cf(q)
            assert cf_value(digits) == q
        assert rational_to_cf(Fraction(2, 5)) == (0, 2, 2)
        assert rational_to_cf(Fraction(9, 4)) == (2, 3, 1)


class TestBoundaryCorrespondence:
    def test_letterwise_image(self):
        assert boundary_to_lr(parse_word("aBaB")) == "LL"
        assert boundary_to_lr(parse_word("ab")) == "R"
        assert boundary_to_lr(parse_word("a")) == ""
        with pytest.raises(ValueError):
            boundary_to_lr(parse_word("ba"))

    def test_enclosure_positive_ray(self):
        assert str(tau_enclosure(parse_word("aBaB"))) == "0/1..1/2"
        assert str(tau_enclosure(parse_word("ab"))) == "1/1..1/0"
        assert str(tau_enclosure(parse_word("a"))) == "0/1..1/0"

    def test_enclosure_negative_ray(self):
        # z -> -1/z applied to the enclosure of the word prefixed with 'a'
        assert str(tau_enclosure(parse_word("BaB"))) == "-1/0..-2/1"
        assert str(tau_enclosure(parse_word("b"))) == "-1/1..0/1"
        assert str(tau_enclosure(parse_word("B"))) == "-1/0..-1/1"

    def test_enclosures_nest(self):
        rng = random.Random(41)
        for _ in range(200):
            start = rng.choice(["a", "b", "B"])
            letters = start
            for _ in range(rng.randint(1, 6)):
                letters += "a" if letters[-1] != "a" else rng.choice(["b", "B"])
            prefix = parse_word(letters)
            outer = tau_enclosure(prefix)
            extended = letters + ("a" if letters[-1] != "a" else rng.choice(["b", "B"]))
            inner = tau_enclosure(parse_word(extended))
            assert outer.left <= inner.left and inner.right <= outer.right

        with pytest.raises(ValueError):
            tau_enclosure(parse_word(""))
