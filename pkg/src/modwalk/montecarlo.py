"""Seeded Monte Carlo estimation for walks with finitely supported steps.

Paths multiply i.i.d. increments on the right; the estimators report the
fraction of paths that ever visit given target words (passage
probabilities) and the distribution of the depth-``d`` cylinder read off
the position at the final time (limiting cylinder frequencies), both with
binomial standard errors.

Randomness contract, version 1 (pinned so seeds reproduce across
platforms and across any batching of the work): path ``i`` draws its
uniform doubles from numpy's ``Philox`` bit generator keyed directly by
the 64-bit ``seed`` and advanced by ``i * 2**20`` before the first draw.
Batches only decide which paths a worker simulates, so merged counts
cannot depend on the batch layout, and rerunning a path with a larger
step budget extends the same trajectory.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .boundary import Cylinder
from .denjoy import DenjoyParams, cylinder_mass
from .group import GroupMeasure, GroupWord

__all__ = [
    "RNG_CONTRACT",
    "PATH_STRIDE",
    "SimConfig",
    "SimReport",
    "ZScoreRow",
    "ZTable",
    "UnresolvedPathsError",
    "sample_path",
    "estimate_passage",
    "estimate_cylinder_frequencies",
    "simulate",
    "compare_with_analytic",
]

PATH_STRIDE = 1 << 20  # counter positions reserved per path
RNG_CONTRACT = "philox-per-path-v1"

_CODE = {"a": 0, "b": 1, "B": 2}
_LETTER = "abB"


class UnresolvedPathsError(RuntimeError):
    """Too many paths ended with a word too short for the requested depth."""


@dataclass(frozen=True, slots=True)
class SimConfig:
    """Run parameters; ``steps`` should dominate ``depth`` so the truncation
    bias of the finite-time readout is negligible."""

    paths: int
    steps: int
    seed: int
    depth: int
    allow_short_steps: bool = False

    def __post_init__(self) -> None:
        if self.paths < 1:
            raise ValueError("paths must be >= 1")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if not 1 <= self.steps < PATH_STRIDE:
            raise ValueError(f"steps must lie in [1, {PATH_STRIDE})")
        floor = 20 * self.depth + 100
        if self.steps < floor:
            if not self.allow_short_steps:
                raise ValueError(
                    f"steps={self.steps} below the policy floor {floor} for depth={self.depth};"
                    " pass allow_short_steps=True to override"
                )
            warnings.warn(
                f"steps={self.steps} below the policy floor {floor}; truncation bias"
                " may not be negligible",
                stacklevel=2,
            )


@dataclass(frozen=True)
class SimReport:
    """Estimates with standard errors, plus the raw counts behind them."""

    cylinder_freq: Mapping[Cylinder, tuple[float, float]]
    cylinder_counts: Mapping[Cylinder, int]
    passage: Mapping[GroupWord, tuple[float, float]]
    passage_counts: Mapping[GroupWord, int]
    paths_used: int
    resolved: int
    unresolved: int
    steps_used: int
    seed: int
    depth: int
    degenerate_support: bool = False

    def to_json(self) -> str:
        payload = {
            "rng": RNG_CONTRACT,
            "paths": self.paths_used,
            "steps": self.steps_used,
            "seed": self.seed,
            "depth": self.depth,
            "resolved": self.resolved,
            "unresolved": self.unresolved,
            "degenerate_support": self.degenerate_support,
            "cylinders": {
                str(c): {"estimate": e, "stderr": s, "count": self.cylinder_counts[c]}
                for c, (e, s) in sorted(
                    self.cylinder_freq.items(), key=lambda kv: kv[0].sort_key()
                )
            },
            "passage": {
                str(w): {"estimate": e, "stderr": s, "count": self.passage_counts[w]}
                for w, (e, s) in sorted(
                    self.passage.items(), key=lambda kv: kv[0].sort_key()
                )
            },
        }
        return json.dumps(payload, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["kind,key,estimate,stderr,n"]
        for c, (e, s) in sorted(self.cylinder_freq.items(), key=lambda kv: kv[0].sort_key()):
            lines.append(f"cylinder,{c},{e!r},{s!r},{self.resolved}")
        for w, (e, s) in sorted(self.passage.items(), key=lambda kv: kv[0].sort_key()):
            lines.append(f"passage,{w},{e!r},{s!r},{self.paths_used}")
        return "\n".join(lines) + "\n"


try:  # optional accelerator; the numpy fallback computes the identical result
    from numba import njit as _njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False


def _provably_degenerate(words) -> bool:
    # Sufficient (not complete) conditions for the support to fail to
    # generate the group as a semigroup: stuck in the order-2 factor, stuck
    # in the order-3 factor, or trapped in the free semigroup of words that
    # start with b/B and end with a (products never cancel there).
    letters = [w.letters for w in words]
    if all(s in ("", "a") for s in letters):
        return True
    if all("a" not in s for s in letters):
        return True
    if all(s and s[0] != "a" and s[-1] == "a" for s in letters):
        return True
    return False


def _support_table(mu: GroupMeasure):
    if not mu.is_probability():
        raise ValueError("mu must be a probability measure")
    words = sorted(mu.support(), key=GroupWord.sort_key)
    cum = np.cumsum(np.array([float(mu(w)) for w in words], dtype=np.float64))
    cum[-1] = 1.0  # guard float rounding of the total mass
    width = max((len(w) for w in words), default=1) or 1
    table = np.full((len(words), width), -1, dtype=np.int8)
    for i, w in enumerate(words):
        for j, ch in enumerate(w.letters):
            table[i, j] = _CODE[ch]
    return words, cum, table


def _path_generator(seed: int, index: int) -> np.random.Generator:
    bg = np.random.Philox(key=seed)
    bg.advance(index * PATH_STRIDE)
    return np.random.Generator(bg)


def _batch_uniforms(seed: int, start: int, count: int, steps: int) -> np.ndarray:
    # One bit generator reused across the batch; resetting the counter by
    # hand reproduces exactly the state of _path_generator(seed, index) and
    # skips the per-path object construction.
    bg = np.random.Philox(key=seed)
    gen = np.random.Generator(bg)
    out = np.empty((count, steps), dtype=np.float64)
    for i in range(count):
        state = bg.state
        state["state"]["counter"][:] = 0
        state["state"]["counter"][0] = (start + i) * PATH_STRIDE
        state["buffer_pos"] = 4
        bg.state = state
        out[i] = gen.random(steps)
    return out


# Reduced-word push: with letters coded a=0, b=1, B=2, the pairs that cancel
# are exactly those with top + c in {0, 3}; equal nonzero letters merge to
# the third code 3 - c; anything else appends.

def _evolve_python(increments, table, width, tgt_flat, tgt_off):
    B, steps = increments.shape
    K = tgt_off.size - 1
    W = np.full((B, width), -1, dtype=np.int8)
    L = np.zeros(B, dtype=np.int64)
    visited = np.zeros((B, K), dtype=np.bool_)
    tgt_arrays = [tgt_flat[tgt_off[k] : tgt_off[k + 1]] for k in range(K)]
    for t in range(steps):
        codes = increments[:, t]
        for pos in range(table.shape[1]):
            letters = table[codes, pos]
            idx = np.flatnonzero(letters >= 0)
            if idx.size == 0:
                continue
            c = letters[idx]
            li = L[idx]
            top = np.where(li > 0, W[idx, np.maximum(li - 1, 0)], np.int8(-1))
            s = top + c
            cancel = (top >= 0) & ((s == 0) | (s == 3))
            merge = (top == c) & (top > 0)
            push = ~(cancel | merge)
            L[idx[cancel]] = li[cancel] - 1
            im = idx[merge]
            W[im, li[merge] - 1] = 3 - c[merge]
            ip = idx[push]
            W[ip, li[push]] = c[push]
            L[ip] = li[push] + 1
        for k, tgt in enumerate(tgt_arrays):
            n = len(tgt)
            hits = L == n
            if n:
                hits &= (W[:, :n] == tgt).all(axis=1)
            visited[:, k] |= hits
    return W, L, visited


def _evolve_kernel(increments, table, width, tgt_flat, tgt_off):  # pragma: no cover
    B, steps = increments.shape
    K = tgt_off.size - 1
    W = np.full((B, width), -1, dtype=np.int8)
    L = np.zeros(B, dtype=np.int64)
    visited = np.zeros((B, K), dtype=np.bool_)
    npos = table.shape[1]
    for i in range(B):
        ln = 0
        for t in range(steps):
            row = increments[i, t]
            for pos in range(npos):
                c = table[row, pos]
                if c < 0:
                    break
                if ln > 0:
                    top = W[i, ln - 1]
                    s = top + c
                    if s == 0 or s == 3:
                        ln -= 1
                        continue
                    if top == c and top > 0:
                        W[i, ln - 1] = 3 - c
                        continue
                W[i, ln] = c
                ln += 1
            for k in range(K):
                if visited[i, k]:
                    continue
                lo, hi = tgt_off[k], tgt_off[k + 1]
                if hi - lo == ln:
                    ok = True
                    for j in range(hi - lo):
                        if W[i, j] != tgt_flat[lo + j]:
                            ok = False
                            break
                    if ok:
                        visited[i, k] = True
        L[i] = ln
    return W, L, visited


if _HAVE_NUMBA:
    _evolve_compiled = _njit(cache=True)(_evolve_kernel)
else:  # pragma: no cover
    _evolve_compiled = _evolve_python


def _evolve(increments, table, width, tgt_flat, tgt_off):
    return _evolve_compiled(increments, table, width, tgt_flat, tgt_off)


def sample_path(
    mu: GroupMeasure,
    steps: int,
    rng: np.random.Generator,
    targets: Iterable[GroupWord] = (),
) -> tuple[GroupWord, frozenset[GroupWord]]:
    """One path of ``steps`` right-multiplications; flags the targets visited.

    The start position (the identity, time 0) counts as visited.
    """
    words, cum, _ = _support_table(mu)
    targets = frozenset(targets)
    visited = {t for t in targets if t.is_identity()}
    position = GroupWord.identity()
    for _ in range(steps):
        u = rng.random()
        position = position * words[int(np.searchsorted(cum, u, side="right"))]
        if position in targets:
            visited.add(position)
    return position, frozenset(visited)


def _run(
    mu: GroupMeasure,
    cfg: SimConfig,
    targets: Sequence[GroupWord],
    batch_paths: int,
):
    words, cum, table = _support_table(mu)
    width = cfg.steps * table.shape[1] + 2
    tgt_flat = np.array(
        [_CODE[ch] for t in targets for ch in t.letters], dtype=np.int8
    )
    tgt_off = np.cumsum([0] + [len(t.letters) for t in targets]).astype(np.int64)
    visit_counts = np.zeros(len(targets), dtype=np.int64)
    leaf_counts: dict[str, int] = {}
    unresolved = 0

    for start in range(0, cfg.paths, batch_paths):
        count = min(batch_paths, cfg.paths - start)
        u = _batch_uniforms(cfg.seed, start, count, cfg.steps)
        increments = np.searchsorted(cum, u, side="right").astype(np.int16)
        del u

        W, L, visited = _evolve(increments, table, width, tgt_flat, tgt_off)
        for j, t in enumerate(targets):
            if t.is_identity():
                visited[:, j] = True  # the start position counts as visited
        visit_counts += visited.sum(axis=0)

        # Read the depth-d cylinder off the prefix ending at the d-th 'a'.
        cols = np.arange(width)
        in_word = cols < L[:, None]
        a_count = np.cumsum((W == 0) & in_word, axis=1, dtype=np.int32)
        resolved_mask = a_count[:, -1] >= cfg.depth
        unresolved += int(count - resolved_mask.sum())
        if resolved_mask.any():
            pos = np.argmax(a_count >= cfg.depth, axis=1)
            take = 2 * cfg.depth
            P = W[:, :take].copy()
            P[cols[:take] > pos[:, None]] = -1
            uniq, counts = np.unique(P[resolved_mask], axis=0, return_counts=True)
            for row, n in zip(uniq, counts):
                key = "".join(_LETTER[c] for c in row if c >= 0)
                leaf_counts[key] = leaf_counts.get(key, 0) + int(n)

    return words, visit_counts, leaf_counts, unresolved


def _ancestor(prefix: str, depth: int) -> str:
    seen = 0
    for i, ch in enumerate(prefix):
        if ch == "a":
            seen += 1
            if seen == depth:
                return prefix[: i + 1]
    raise ValueError(f"prefix {prefix!r} is shallower than depth {depth}")


def simulate(
    mu: GroupMeasure,
    cfg: SimConfig,
    targets: Iterable[GroupWord] = (),
    batch_paths: int = 16384,
    max_unresolved_fraction: float = 0.01,
) -> SimReport:
    """Full run: passage estimates for ``targets`` plus cylinder frequencies
    for every depth up to ``cfg.depth``.

    Paths whose final word has fewer than ``cfg.depth`` letters ``a`` are
    counted as unresolved and dropped from the frequency table (at every
    depth, so parents stay the exact sums of their children); an
    unresolved fraction above ``max_unresolved_fraction`` raises
    :class:`UnresolvedPathsError`.
    """
    targets = sorted(set(targets), key=GroupWord.sort_key)
    if batch_paths < 1:
        raise ValueError("batch_paths must be >= 1")
    degenerate = _provably_degenerate(mu.support())
    if degenerate:
        warnings.warn(
            "the support provably fails to generate the group as a semigroup;"
            " estimates describe this restricted walk only",
            stacklevel=2,
        )
    _, visit_counts, leaf_counts, unresolved = _run(mu, cfg, targets, batch_paths)

    if unresolved > max_unresolved_fraction * cfg.paths:
        raise UnresolvedPathsError(
            f"{unresolved} of {cfg.paths} paths never reached depth {cfg.depth};"
            " the walk may not escape through 'a'-letters (degenerate support?)"
        )
    resolved = cfg.paths - unresolved

    counts: dict[Cylinder, int] = {}
    for leaf, n in leaf_counts.items():
        for depth in range(1, cfg.depth + 1):
            cyl = Cylinder.of(_ancestor(leaf, depth))
            counts[cyl] = counts.get(cyl, 0) + n
    freq = {}
    for cyl, n in counts.items():
        est = n / resolved
        freq[cyl] = (est, math.sqrt(est * (1 - est) / resolved))

    passage = {}
    passage_counts = {}
    for word, n in zip(targets, visit_counts):
        est = int(n) / cfg.paths
        passage[word] = (est, math.sqrt(est * (1 - est) / cfg.paths))
        passage_counts[word] = int(n)

    return SimReport(
        cylinder_freq=freq,
        cylinder_counts=counts,
        passage=passage,
        passage_counts=passage_counts,
        paths_used=cfg.paths,
        resolved=resolved,
        unresolved=unresolved,
        steps_used=cfg.steps,
        seed=cfg.seed,
        depth=cfg.depth,
        degenerate_support=degenerate,
    )


def estimate_passage(
    mu: GroupMeasure,
    targets: Iterable[GroupWord],
    cfg: SimConfig,
    batch_paths: int = 16384,
) -> SimReport:
    """Fraction of paths visiting each target within ``cfg.steps`` steps.

    The estimate misses visits later than ``cfg.steps`` (a one-sided bias
    that decays with the step budget; the config policy keeps it far below
    the standard error at desk scale).
    """
    return simulate(mu, cfg, targets=targets, batch_paths=batch_paths)


def estimate_cylinder_frequencies(
    mu: GroupMeasure, cfg: SimConfig, batch_paths: int = 16384
) -> SimReport:
    """Empirical limiting-cylinder distribution at depths ``1..cfg.depth``."""
    return simulate(mu, cfg, batch_paths=batch_paths)


@dataclass(frozen=True, slots=True)
class ZScoreRow:
    cylinder: Cylinder
    estimate: float
    expected: float
    stderr: float
    z: float


@dataclass(frozen=True)
class ZTable:
    rows: tuple[ZScoreRow, ...]
    max_abs_z: float
    threshold: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "rows": [
                {
                    "cylinder": str(r.cylinder),
                    "estimate": r.estimate,
                    "expected": r.expected,
                    "stderr": r.stderr,
                    "z": r.z,
                }
                for r in self.rows
            ],
            "max_abs_z": self.max_abs_z,
            "threshold": self.threshold,
            "passed": self.passed,
        }


def compare_with_analytic(
    report: SimReport,
    params: DenjoyParams,
    threshold: float = 4.0,
    depth: int | None = None,
) -> ZTable:
    """Per-cylinder z-scores of the report against a measure of the family."""
    if depth is not None and depth != report.depth:
        raise ValueError(f"depth mismatch: report has {report.depth}, expected {depth}")
    if report.degenerate_support:
        raise ValueError(
            "the simulated walk had a provably degenerate support; its limit"
            " is not a measure of this family"
        )
    if report.resolved == 0 or not report.cylinder_freq:
        raise ValueError("report carries no resolved cylinder estimates")
    rows = []
    worst = 0.0
    for cyl, (est, se) in sorted(report.cylinder_freq.items(), key=lambda kv: kv[0].sort_key()):
        expected = float(cylinder_mass(params, cyl))
        if se == 0.0:
            z = 0.0 if est == expected else math.inf
        else:
            z = (est - expected) / se
        worst = max(worst, abs(z))
        rows.append(ZScoreRow(cyl, est, expected, se, z))
    return ZTable(tuple(rows), worst, threshold, worst <= threshold)
