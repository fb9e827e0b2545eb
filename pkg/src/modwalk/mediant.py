"""Mediant (Stern-Brocot) encoding of the extended real line.

The maps ``R: z -> z+1`` and ``L: z -> z/(z+1)`` generate a binary tree of
unimodular intervals starting from ``[0, oo]``; descending left keeps the
lower endpoint and descending right keeps the upper one, with the Farey
mediant as the shared endpoint.  Finite L/R words address tree nodes,
infinite L/R words encode points of the extended positive ray, and the
involution ``z -> -1/z`` carries the encoding to the negative ray.  L/R
syllable runs translate to continued-fraction digits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Sequence, Union

from .group import GroupWord

__all__ = [
    "ExtRational",
    "MediantInterval",
    "LRCode",
    "RationalCodes",
    "ROOT_INTERVAL",
    "lr_to_interval",
    "rational_to_lr",
    "lr_to_cf",
    "cf_to_lr",
    "cf_value",
    "rational_to_cf",
    "boundary_to_lr",
    "tau_enclosure",
]

RationalLike = Union[Fraction, int, str]


@dataclass(frozen=True, slots=True)
class ExtRational:
    """A point of the extended real line as a formal fraction ``num/den``.

    ``den >= 0`` and ``gcd(num, den) == 1``; ``1/0`` is ``+oo`` and ``-1/0``
    is ``-oo``.
    """

    num: int
    den: int

    def __post_init__(self) -> None:
        if self.den < 0:
            raise ValueError("denominator must be nonnegative")
        if self.den == 0 and self.num not in (-1, 1):
            raise ValueError("infinity must be normalized to +-1/0")
        if self.den and gcd(abs(self.num), self.den) != 1:
            raise ValueError(f"{self.num}/{self.den} is not in lowest terms")

    @classmethod
    def of(cls, num: int, den: int) -> "ExtRational":
        if den == 0:
            if num == 0:
                raise ZeroDivisionError("0/0 is not a point of the extended line")
            return cls(1 if num > 0 else -1, 0)
        if den < 0:
            num, den = -num, -den
        g = gcd(abs(num), den)
        return cls(num // g, den // g)

    @classmethod
    def from_fraction(cls, q: RationalLike) -> "ExtRational":
        q = Fraction(q)
        return cls(q.numerator, q.denominator)

    @classmethod
    def parse(cls, text: str) -> "ExtRational":
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return cls.of(int(num), int(den))
        return cls.from_fraction(Fraction(text))

    @property
    def is_finite(self) -> bool:
        return self.den != 0

    def as_fraction(self) -> Fraction:
        if not self.is_finite:
            raise ValueError("infinity is not a fraction")
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __float__(self) -> float:
        if not self.is_finite:
            return float("inf") if self.num > 0 else float("-inf")
        return self.num / self.den

    def _cmp(self, other: "ExtRational") -> int:
        if self.den == 0 and other.den == 0:
            return (self.num > other.num) - (self.num < other.num)
        lhs, rhs = self.num * other.den, other.num * self.den
        return (lhs > rhs) - (lhs < rhs)

    def __lt__(self, other: "ExtRational") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "ExtRational") -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: "ExtRational") -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: "ExtRational") -> bool:
        return self._cmp(other) >= 0

    def mediant(self, other: "ExtRational") -> "ExtRational":
        """Farey sum of the two fractions."""
        return ExtRational.of(self.num + other.num, self.den + other.den)

    def neg_reciprocal(self) -> "ExtRational":
        """The involution ``z -> -1/z`` (monotone on each open ray)."""
        return ExtRational.of(-self.den, self.num)


ZERO = ExtRational(0, 1)
ONE = ExtRational(1, 1)
INFINITY = ExtRational(1, 0)


@dataclass(frozen=True, slots=True)
class MediantInterval:
    """A unimodular interval ``[left, right]`` of the extended line.

    Unimodularity means ``right.num * left.den - left.num * right.den == 1``,
    which every node of the mediant tree satisfies; images under ``z -> -1/z``
    keep the property.
    """

    left: ExtRational
    right: ExtRational

    def __post_init__(self) -> None:
        if not self.left < self.right:
            raise ValueError(f"endpoints out of order: {self.left} >= {self.right}")
        det = self.right.num * self.left.den - self.left.num * self.right.den
        if det != 1:
            raise ValueError(f"interval [{self.left}, {self.right}] is not unimodular")

    def mediant(self) -> ExtRational:
        return self.left.mediant(self.right)

    def child(self, letter: str) -> "MediantInterval":
        m = self.mediant()
        if letter == "L":
            return MediantInterval(self.left, m)
        if letter == "R":
            return MediantInterval(m, self.right)
        raise ValueError(f"invalid L/R letter {letter!r}")

    def contains(self, point: ExtRational) -> bool:
        return self.left <= point <= self.right

    def neg_reciprocal(self) -> "MediantInterval":
        return MediantInterval(self.left.neg_reciprocal(), self.right.neg_reciprocal())

    def __str__(self) -> str:
        return f"{self.left}..{self.right}"


ROOT_INTERVAL = MediantInterval(ZERO, INFINITY)


def _check_lr(word: str) -> None:
    bad = set(word) - {"L", "R"}
    if bad:
        raise ValueError(f"invalid L/R letters {sorted(bad)} in {word!r}")


def lr_to_interval(word: str) -> MediantInterval:
    """Interval addressed by a finite L/R word, starting from ``[0, oo]``."""
    _check_lr(word)
    iv = ROOT_INTERVAL
    for ch in word:
        iv = iv.child(ch)
    return iv


@dataclass(frozen=True, slots=True)
class LRCode:
    """An eventually constant infinite L/R word: ``stem`` then ``tail`` forever."""

    stem: str
    tail: str

    def __post_init__(self) -> None:
        _check_lr(self.stem)
        if self.tail not in ("L", "R"):
            raise ValueError("tail must be 'L' or 'R'")

    def prefix(self, n: int) -> str:
        if n <= len(self.stem):
            return self.stem[:n]
        return self.stem + self.tail * (n - len(self.stem))

    def __str__(self) -> str:
        return f"{self.stem}({self.tail})^oo"


class RationalCodes(NamedTuple):
    stem: str
    left: LRCode  # ends with R repeated forever
    right: LRCode  # ends with L repeated forever


def rational_to_lr(q: RationalLike) -> RationalCodes:
    """Mediant-tree address of a positive rational.

    Returns the finite word ``w`` whose interval has mediant ``q`` together
    with the two infinite codes of ``q``: the left one ``w L R^oo`` and the
    right one ``w R L^oo``.
    """
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"need a positive rational, got {q}")
    point = ExtRational.from_fraction(q)
    iv = ROOT_INTERVAL
    stem: list[str] = []
    while True:
        m = iv.mediant()
        if m == point:
            break
        letter = "L" if point < m else "R"
        stem.append(letter)
        iv = iv.child(letter)
    word = "".join(stem)
    return RationalCodes(word, LRCode(word + "L", "R"), LRCode(word + "R", "L"))


def _runs(word: str) -> list[tuple[str, int]]:
    return [(ch, len(list(grp))) for ch, grp in itertools.groupby(word)]


def lr_to_cf(word: Union[str, LRCode]) -> tuple[int, ...]:
    """Continued-fraction digits of an L/R word, one digit per syllable run.

    The first digit counts the leading run of R (zero for words starting
    with L).  For an :class:`LRCode` the infinite tail run is dropped: a
    trailing ``1/oo`` term vanishes, so truncation is exact.
    """
    if isinstance(word, LRCode):
        runs = _runs(word.stem)
        if runs and runs[-1][0] == word.tail:
            runs.pop()
        elif not runs:
            return ()
    else:
        _check_lr(word)
        runs = _runs(word)
    if not runs:
        return ()
    digits = []
    if runs[0][0] == "L":
        digits.append(0)
    digits.extend(n for _, n in runs)
    return tuple(digits)


def cf_to_lr(digits: Sequence[int]) -> str:
    """Inverse of :func:`lr_to_cf` on finite words: digits back to syllables."""
    out = []
    for i, d in enumerate(digits):
        if d < 0 or (i > 0 and d == 0):
            raise ValueError(f"digit {d} at position {i}: only the first digit may be 0")
        out.append(("R" if i % 2 == 0 else "L") * d)
    return "".join(out)


def cf_value(digits: Sequence[int]) -> Fraction:
    """Value of a finite continued fraction ``[d0; d1, d2, ...]``."""
    if not digits:
        raise ValueError("empty continued fraction")
    value = Fraction(digits[-1])
    for d in reversed(digits[:-1]):
        value = d + 1 / value
    return value


def rational_to_cf(q: RationalLike) -> tuple[int, ...]:
    """Canonical continued fraction of a positive rational via its right code."""
    codes = rational_to_lr(q)
    return lr_to_cf(codes.right)


def boundary_to_lr(prefix: GroupWord) -> str:
    """Letterwise image of a boundary prefix starting with ``a``.

    Pairs translate as ``ab -> R`` and ``aB -> L``; a trailing lone ``a``
    carries no information and is ignored.
    """
    s = prefix.letters
    if not s or s[0] != "a":
        raise ValueError(f"prefix {s!r} does not start with 'a'")
    out = []
    for i in range(0, len(s) - 1, 2):
        out.append("R" if s[i + 1] == "b" else "L")
    return "".join(out)


def tau_enclosure(prefix: GroupWord) -> MediantInterval:
    """Interval of the extended line enclosing the image of a boundary prefix.

    Prefixes starting with ``a`` map into the positive ray through the
    mediant tree; prefixes starting with ``b`` or ``B`` are handled by
    equivariance under ``z -> -1/z`` and land on the negative ray.
    """
    s = prefix.letters
    if not s:
        raise ValueError("the empty prefix encloses the whole boundary")
    if s[0] == "a":
        return lr_to_interval(boundary_to_lr(prefix))
    inner = tau_enclosure(GroupWord("a" + s))
    return inner.neg_reciprocal()
