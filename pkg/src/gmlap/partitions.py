"""Integer partitions, conjugation, and the majorization partial order.

A partition is a non-increasing tuple of non-negative integers; trailing
zeros are allowed and ignored for equality purposes.  Majorization is
checked for both integer partitions (exactly) and real sequences (with an
additive tolerance on prefix sums).
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


def is_partition(parts: Sequence[int]) -> bool:
    """True if parts is a non-increasing sequence of non-negative integers."""
    return all(isinstance(x, int) for x in parts) and is_non_increasing(parts) and all(
        x >= 0 for x in parts
    )


def is_non_increasing(v) -> bool:
    return all(v[i] >= v[i + 1] for i in range(len(v) - 1))


def strip_zeros(parts):
    """Drop trailing zeros; two partitions are equal iff equal after this."""
    parts = tuple(parts)
    k = len(parts)
    while k > 0 and parts[k - 1] == 0:
        k -= 1
    return parts[:k]


def conjugate(parts: Sequence[int]):
    """Conjugate partition: entry j counts the parts that are >= j.

    The conjugate of (3,1,1,1) is (4,1,1): four parts are >= 1, one part is
    >= 2, one part is >= 3.  The result has exactly parts[0] entries, all
    non-zero, and the same total as the input.
    """
    parts = tuple(parts)
    if not is_partition(parts):
        raise ValueError("conjugate requires a non-increasing sequence of non-negative ints")
    parts = strip_zeros(parts)
    if not parts:
        return ()
    out = [0] * parts[0]
    for p in parts:
        for j in range(p):
            out[j] += 1
    return tuple(out)


def sort_desc(v):
    """Sorted copy in non-increasing order (stable)."""
    return tuple(sorted(v, reverse=True))


def concat(x, y):
    return tuple(x) + tuple(y)


def pad_to(v, n, fill=0):
    v = tuple(v)
    return v + (fill,) * (n - len(v)) if len(v) < n else v


@dataclass(frozen=True)
class MajorizationVerdict:
    """Outcome of a majorization comparison s <= t (prefix-sum sense).

    prefix_margins[k-1] holds sum(t[:k]) - sum(s[:k]); first_violation is
    the 1-based length of the first failing prefix, or None.  sum_gap is
    sum(t) - sum(s), relevant only when the total-sum condition was checked.
    """

    holds: bool
    first_violation: Optional[int]
    prefix_margins: tuple
    sum_gap: float


def _exact_inputs(t, s) -> bool:
    return all(isinstance(x, int) for x in t) and all(isinstance(x, int) for x in s)


def _compare(t, s, tolerance, require_sum):
    t = tuple(t)
    s = tuple(s)
    if not is_non_increasing(t):
        raise ValueError("majorization: left sequence not sorted non-increasing")
    if not is_non_increasing(s):
        raise ValueError("majorization: right sequence not sorted non-increasing")
    n = max(len(t), len(s))
    t = pad_to(t, n)
    s = pad_to(s, n)
    # Integer fast path: exact comparison, tolerance ignored.
    if _exact_inputs(t, s):
        tolerance = 0
    margins = []
    run = 0
    first_violation = None
    for k in range(n):
        run += t[k] - s[k]
        margins.append(run)
        if first_violation is None and run < -tolerance:
            first_violation = k + 1
    sum_gap = margins[-1] if margins else 0
    holds = first_violation is None
    if require_sum and abs(sum_gap) > tolerance:
        holds = False
    return MajorizationVerdict(holds, first_violation, tuple(margins), sum_gap)


def majorizes(t, s, tolerance: float = 0.0) -> MajorizationVerdict:
    """Verdict for "s is majorized by t": every prefix sum of t dominates the
    corresponding prefix sum of s, and the totals agree.

    Both inputs must already be non-increasing (sort with sort_desc first);
    the shorter is padded with zeros.  When both inputs are integer
    sequences the comparison is exact regardless of tolerance.
    """
    return _compare(t, s, tolerance, require_sum=True)


def dominance_prefix(t, s, tolerance: float = 0.0) -> MajorizationVerdict:
    """As majorizes, but without the total-sum equality condition.

    Used where the sums agree by construction (e.g. degree counting on a
    fixed edge set), so only the prefix inequalities carry information.
    """
    return _compare(t, s, tolerance, require_sum=False)


def random_doubly_stochastic(n: int, seed: int) -> np.ndarray:
    """Random doubly-stochastic matrix: convex combination of <= n random
    permutation matrices with seed-driven weights (deterministic)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    weights = rng.random(n)
    weights /= weights.sum()
    out = np.zeros((n, n))
    for w in weights:
        perm = rng.permutation(n)
        out[np.arange(n), perm] += w
    return out


def gale_ryser_check(matrix) -> MajorizationVerdict:
    """Check the Gale-Ryser inequality for a 0-1 matrix: the sorted column
    sums are majorized by the conjugate of the sorted row sums.

    Holds for every binary matrix; a failing verdict means the input was
    not binary or there is a bug upstream.
    """
    m = np.asarray(matrix)
    if m.ndim != 2:
        raise ValueError("gale_ryser_check requires a 2-d matrix")
    if m.size and not np.isin(m, (0, 1)).all():
        raise ValueError("gale_ryser_check requires a 0-1 matrix")
    rows = sort_desc(int(x) for x in m.sum(axis=1))
    cols = sort_desc(int(x) for x in m.sum(axis=0))
    return majorizes(conjugate(rows), cols)


def serialize_partition(parts) -> str:
    """Comma-separated integer form used in reports."""
    return ",".join(str(int(p)) for p in parts)
