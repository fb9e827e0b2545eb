"""The Minkowski-Denjoy family of boundary measures.

A pair ``(alpha, p)`` in ``(0,1)^2`` determines the measure that draws the
letters ``b`` / ``B`` of an infinite word independently with probabilities
``alpha`` / ``1-alpha`` and puts weight ``p`` on the component of words
starting with ``a`` (weight ``1-p`` on its complement).  Equivalent data:
the positive weights ``(pi_a, pi_ba, pi_Ba)`` with ``pi_ba + pi_Ba = 1``,
or the base distribution of the associated multiplicative Markov measure.

Arithmetic is exact whenever the parameters are rationals; irrational
parameters (for instance the Hausdorff normalization) go through floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .boundary import Cylinder, act_on_cylinder, cylinders_up_to_depth
from .group import GroupMeasure, GroupWord, inverse, word_length
from .mediant import rational_to_lr

__all__ = [
    "Scalar",
    "DenjoyParams",
    "PiWeights",
    "MarkovBase",
    "NotNormalizedError",
    "params_to_pi",
    "pi_to_params",
    "solve_rn_problem",
    "markov_base_to_params",
    "params_to_markov_base",
    "cylinder_mass",
    "component_mass",
    "rn_derivative",
    "check_stationarity",
    "hausdorff_constants",
    "question_mark",
    "swap_involution",
]

Scalar = Union[Fraction, float]


class NotNormalizedError(ValueError):
    """The prescribed weights admit no quasi-invariant measure."""


def _check_open_unit(value: Scalar, name: str) -> None:
    if not 0 < value < 1:
        raise ValueError(f"{name} must lie strictly between 0 and 1, got {value}")


@dataclass(frozen=True, slots=True)
class DenjoyParams:
    """Parameters of one measure of the family; ``alpha = 1/2`` is the Minkowski case."""

    alpha: Scalar
    p: Scalar

    def __post_init__(self) -> None:
        _check_open_unit(self.alpha, "alpha")
        _check_open_unit(self.p, "p")


@dataclass(frozen=True, slots=True)
class PiWeights:
    """Positive weights ``(pi_a, pi_ba, pi_Ba)``; normalized means ``pi_ba + pi_Ba = 1``."""

    pi_a: Scalar
    pi_ba: Scalar
    pi_bbar_a: Scalar

    def __post_init__(self) -> None:
        for name in ("pi_a", "pi_ba", "pi_bbar_a"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def normalization_defect(self) -> Scalar:
        return self.pi_ba + self.pi_bbar_a - 1

    def is_normalized(self, tol: float = 1e-12) -> bool:
        defect = self.normalization_defect()
        if isinstance(self.pi_ba, Fraction) and isinstance(self.pi_bbar_a, Fraction):
            return defect == 0
        return abs(defect) <= tol


@dataclass(frozen=True, slots=True)
class MarkovBase:
    """Base distribution on the letters ``a, b, B`` of a multiplicative Markov measure."""

    sigma_a: Scalar
    sigma_b: Scalar
    sigma_bbar: Scalar

    def __post_init__(self) -> None:
        for name in ("sigma_a", "sigma_b", "sigma_bbar"):
            _check_open_unit(getattr(self, name), name)
        total = self.sigma_a + self.sigma_b + self.sigma_bbar
        exact = all(
            isinstance(v, Fraction)
            for v in (self.sigma_a, self.sigma_b, self.sigma_bbar)
        )
        if (total != 1) if exact else (abs(total - 1) > 1e-12):
            raise ValueError(f"base weights must sum to 1, got {total}")


def params_to_pi(d: DenjoyParams) -> PiWeights:
    return PiWeights(d.p / (1 - d.p), d.alpha, 1 - d.alpha)


def pi_to_params(w: PiWeights, tol: float = 1e-12) -> DenjoyParams:
    if not w.is_normalized(tol):
        raise NotNormalizedError(
            f"pi_ba + pi_bbar_a = {w.pi_ba + w.pi_bbar_a}, expected 1"
        )
    return DenjoyParams(w.pi_ba, w.pi_a / (1 + w.pi_a))


def solve_rn_problem(w: PiWeights, tol: float = 1e-12) -> DenjoyParams:
    """Unique normalized measure whose Radon-Nikodym cocycle has weights ``w``.

    Solvable exactly when ``pi_ba + pi_bbar_a = 1`` (Kolmogorov consistency
    of the prescribed cylinder masses); otherwise :class:`NotNormalizedError`.
    """
    return pi_to_params(w, tol)


def markov_base_to_params(m: MarkovBase) -> DenjoyParams:
    return DenjoyParams(m.sigma_b / (m.sigma_b + m.sigma_bbar), m.sigma_a)


def params_to_markov_base(d: DenjoyParams) -> MarkovBase:
    return MarkovBase(d.p, (1 - d.p) * d.alpha, (1 - d.p) * (1 - d.alpha))


def cylinder_mass(d: DenjoyParams, c: Cylinder) -> Scalar:
    """Measure of a cylinder: ``p`` or ``1-p`` times one letter factor per ``b``/``B``."""
    s = c.prefix.letters
    mass = d.p if s[0] == "a" else 1 - d.p
    for ch in s:
        if ch == "b":
            mass = mass * d.alpha
        elif ch == "B":
            mass = mass * (1 - d.alpha)
    return mass


def component_mass(alpha: Scalar, c: Cylinder) -> Scalar:
    """Mass under the Bernoulli component carried by the ``a``-started words alone.

    This is the conditional measure of the family on its first component;
    cylinders outside that component get zero.
    """
    _check_open_unit(alpha, "alpha")
    s = c.prefix.letters
    if s[0] != "a":
        return alpha * 0
    mass = alpha / alpha  # one of matching arithmetic type
    for ch in s:
        if ch == "b":
            mass = mass * alpha
        elif ch == "B":
            mass = mass * (1 - alpha)
    return mass


def rn_derivative(d: DenjoyParams, g: GroupWord, c: Cylinder) -> Scalar:
    """Density of the translated measure against the original one on ``c``.

    Computed as the mass ratio ``mass(g^-1 c) / mass(c)``; the cylinder must
    be deep enough that the pullback is a single cylinder, which makes the
    ratio independent of further refinement.
    """
    if word_length(c.prefix) <= word_length(g) + 1:
        raise ValueError(
            f"cylinder {c} is too shallow for the action of {g.letters!r}"
        )
    pulled = act_on_cylinder(inverse(g), c)
    numerator = cylinder_mass(d, pulled[0])
    for piece in pulled[1:]:
        numerator = numerator + cylinder_mass(d, piece)
    return numerator / cylinder_mass(d, c)


def check_stationarity(
    d: DenjoyParams, mu: GroupMeasure, depth: int = 8, tol: float = 1e-10
) -> float:
    """Max residual ``|nu(C) - sum_h mu(h) nu(h^-1 C)|`` over cylinders of depth <= depth.

    The measure is accepted as stationary for ``mu`` when the returned
    residual is at most ``tol`` (the conventional threshold used by
    callers; this function only reports the residual).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if not mu.is_probability():
        raise ValueError("mu must be a probability measure")
    pulled_by = {h: inverse(h) for h in mu.support()}
    worst = 0.0
    for c in cylinders_up_to_depth(depth):
        expected = cylinder_mass(d, c)
        convolved = 0
        for h, weight in mu.weights.items():
            pulled = act_on_cylinder(pulled_by[h], c)
            for piece in pulled:
                convolved = convolved + weight * cylinder_mass(d, piece)
        worst = max(worst, abs(float(expected - convolved)))
    return worst


def hausdorff_constants() -> tuple[float, DenjoyParams]:
    """Dimension and parameters of the Hausdorff measure class of the boundary.

    The ultrametric boundary has Hausdorff dimension ``ln(2)/2`` and its
    Hausdorff measure is the ``alpha = 1/2`` member with ``p = 1/(1+sqrt 2)``
    (so ``pi_a = sqrt(2)/2``, the well-scaling normalization).
    """
    dimension = math.log(2) / 2
    return dimension, DenjoyParams(Fraction(1, 2), 1 / (1 + math.sqrt(2)))


def question_mark(x: Union[Fraction, int, str], depth: int = 256) -> Fraction:
    """Minkowski's question-mark function at a rational of ``[0, 1]``.

    Descends the mediant tree below ``[0, 1]`` and reads binary digits off
    the L/R code (L after the leading L gives 0, R gives 1); the repeating
    tail of a rational resolves exactly, so the result is an exact dyadic
    whenever the code fits within ``depth`` digits, and a truncation to
    ``depth`` digits otherwise.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"need 0 <= x <= 1, got {x}")
    if x == 0:
        return Fraction(0)
    if x == 1:
        return Fraction(1)
    codes = rational_to_lr(x)
    word = codes.right.stem  # stem + 'R'; the dropped tail L^oo adds nothing
    bits = word[1 : depth + 1]
    value = int(bits.replace("L", "0").replace("R", "1"), 2)
    return Fraction(value, 1 << len(bits))


def swap_involution(d: DenjoyParams) -> DenjoyParams:
    """Parameter change induced by the automorphism exchanging ``b`` and ``B``."""
    return DenjoyParams(1 - d.alpha, d.p)
