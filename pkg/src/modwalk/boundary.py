"""The boundary at infinity as a space of admissible infinite words.

Cylinders are shadows of group elements; the canonical representative of a
shadow has a prefix ending in ``a`` (a shadow is unchanged by appending
``a`` to its base word).  Cylinders of a fixed depth partition the
boundary, left translation maps cylinders to finite disjoint unions of
cylinders, and the Gromov product at the identity turns the boundary into
an ultrametric space whose balls are exactly the cylinders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .group import GroupWord, reduce_concat, word_length

__all__ = [
    "Cylinder",
    "root_partition",
    "cylinders_at_depth",
    "cylinders_up_to_depth",
    "gromov_product",
    "cylinder_diameter",
    "act_on_cylinder",
]


@dataclass(frozen=True, slots=True)
class Cylinder:
    """All infinite admissible words beginning with ``prefix`` (which ends in ``a``)."""

    prefix: GroupWord

    def __post_init__(self) -> None:
        s = self.prefix.letters
        if not s:
            raise ValueError("a cylinder needs a nonempty prefix")
        if s[-1] != "a":
            raise ValueError(f"canonical cylinder prefixes end in 'a', got {s!r}")

    @classmethod
    def of(cls, letters: str) -> "Cylinder":
        return cls(GroupWord(letters))

    @classmethod
    def canonical(cls, word: GroupWord) -> "Cylinder":
        """Canonical cylinder of the shadow of ``word`` (append ``a`` if needed)."""
        s = word.letters
        if not s:
            raise ValueError("the identity has no shadow cylinder")
        return cls(word if s[-1] == "a" else GroupWord(s + "a"))

    @property
    def depth(self) -> int:
        """Number of ``a`` letters in the prefix; children are one level deeper."""
        return self.prefix.letters.count("a")

    def children(self) -> tuple["Cylinder", "Cylinder"]:
        s = self.prefix.letters
        return (Cylinder.of(s + "ba"), Cylinder.of(s + "Ba"))

    def extends(self, other: "Cylinder") -> bool:
        """True when this cylinder is contained in ``other``."""
        return self.prefix.letters.startswith(other.prefix.letters)

    def sort_key(self) -> tuple[int, str]:
        return (len(self.prefix.letters), self.prefix.letters)

    def __str__(self) -> str:
        return self.prefix.letters


def root_partition() -> tuple[Cylinder, Cylinder, Cylinder]:
    """The three depth-1 cylinders partitioning the boundary."""
    return (Cylinder.of("a"), Cylinder.of("ba"), Cylinder.of("Ba"))


def cylinders_at_depth(depth: int) -> Iterator[Cylinder]:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    level: list[Cylinder] = list(root_partition())
    for _ in range(depth - 1):
        level = [child for c in level for child in c.children()]
    yield from level


def cylinders_up_to_depth(depth: int) -> Iterator[Cylinder]:
    level: list[Cylinder] = list(root_partition())
    for _ in range(depth):
        yield from level
        level = [child for c in level for child in c.children()]


def gromov_product(u: GroupWord, v: GroupWord) -> int:
    """Length of the longest common prefix of two words (based at the identity)."""
    n = 0
    for x, y in zip(u.letters, v.letters):
        if x != y:
            break
        n += 1
    return n


def cylinder_diameter(c: Cylinder) -> float:
    """Diameter ``e^-|g|`` of the shadow of ``g`` in the ultrametric ``e^-(.|.)``."""
    return math.exp(-word_length(c.prefix))


def _compact(prefixes: set[str]) -> set[str]:
    # Merge full sibling pairs ...xba / ...xBa back into their parent until
    # stable; the parent prefix drops the final two letters.
    merged = True
    while merged:
        merged = False
        for s in sorted(prefixes, key=len, reverse=True):
            if len(s) < 3 or s not in prefixes:
                continue
            flip = "B" if s[-2] == "b" else "b"
            sibling = s[:-2] + flip + "a"
            if sibling in prefixes:
                prefixes.remove(s)
                prefixes.remove(sibling)
                prefixes.add(s[:-2])
                merged = True
    return prefixes


def act_on_cylinder(h: GroupWord, c: Cylinder) -> tuple[Cylinder, ...]:
    """Image ``h . c`` of a cylinder under left translation, as disjoint cylinders.

    The cylinder is refined until every refined prefix is at least two
    letters longer than ``h``, so cancellation in ``h . prefix`` can never
    swallow a whole prefix; each refined piece then maps onto a single
    cylinder, and full sibling families are merged back.
    """
    if h.is_identity():
        return (c,)
    target = word_length(h) + 2
    stack = [c]
    images: set[str] = set()
    while stack:
        cyl = stack.pop()
        if word_length(cyl.prefix) < target:
            stack.extend(cyl.children())
        else:
            images.add(reduce_concat(h, cyl.prefix).letters)
    compacted = _compact(images)
    return tuple(sorted((Cylinder.of(s) for s in compacted), key=Cylinder.sort_key))
