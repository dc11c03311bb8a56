"""Recurrence and orbit-structure diagnostics on windows."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import PeriodicOrbit
from .errors import BoundsError, PreconditionError
from .words import as_window, occurrences


def zero_run_flanks(w, n):
    """Whether ``0^n 1`` and ``1 0^n`` occur in a binary window."""
    content = as_window(w).content
    if set(content) - {"0", "1"}:
        raise PreconditionError("zero_run_flanks needs a binary window")
    zeros = "0" * n
    return {"has_0n1": zeros + "1" in content, "has_10n": "1" + zeros in content}


@dataclass(frozen=True)
class StructureResult:
    ok: bool
    first_violation: int | None  # 0-based start offset in the window content
    m: int
    k: int


def orbit_hits(content, orbit, m):
    """Boolean array: ``hit[i]`` iff ``content[i:i+m]`` is an m-word of the orbit."""
    size = len(content)
    count = max(size - m + 1, 0)
    q = len(orbit)
    if m <= q or count == 0:
        allowed = orbit.words(m)
        return np.fromiter((content[i:i + m] in allowed for i in range(count)), dtype=bool, count=count)
    # an m-word (m > q) lies in the orbit iff it has period q and starts with a rotation of the period
    rotations = orbit.words(q)
    starts = np.fromiter((content[i:i + q] in rotations for i in range(count)), dtype=bool, count=count)
    codes = np.frombuffer(content.encode("utf-32-le"), dtype=np.uint32)
    mismatch = (codes[q:] != codes[:-q]).astype(np.int64)
    csum = np.concatenate(([0], np.cumsum(mismatch)))
    idx = np.arange(count)
    periodic = csum[idx + m - q] - csum[idx] == 0
    return starts & periodic


def structure_check(w, orbit, m, k=0):
    """Does every (3m + k)-factor contain an m-word of the orbit?"""
    if isinstance(orbit, str):
        orbit = PeriodicOrbit(orbit)
    content = as_window(w).content
    L = 3 * m + k
    if m < 1 or k < 0:
        raise BoundsError("need m >= 1 and k >= 0")
    if len(content) < L:
        raise BoundsError(f"window of length {len(content)} is shorter than 3m+k = {L}")
    hit = orbit_hits(content, orbit, m)
    # factor at s spans m-word starts s..s+L-m
    csum = np.concatenate(([0], np.cumsum(hit, dtype=np.int64)))
    starts = np.arange(len(content) - L + 1)
    counts = csum[starts + L - m + 1] - csum[starts]
    bad = np.nonzero(counts == 0)[0]
    if len(bad):
        return StructureResult(False, int(bad[0]), m, k)
    return StructureResult(True, None, m, k)


@dataclass(frozen=True)
class RecurrenceReport:
    occurrence_count: int
    max_gap: int | None
    uniform_recurrence_score: float | int


def recurrence_diagnostics(w, word):
    """Occurrence count, the longest stretch of symbols strictly between two
    consecutive occurrences (negative when they overlap), and the least L such
    that every L-window between the first and last occurrence contains ``word``.

    Edge stretches before the first and after the last occurrence are
    censored, so a word seen fewer than twice scores ``math.inf``.
    """
    content = as_window(w).content
    occ = occurrences(word, content)
    if len(occ) < 2:
        return RecurrenceReport(len(occ), None, math.inf)
    step = max(b - a for a, b in zip(occ, occ[1:]))
    return RecurrenceReport(len(occ), step - len(word), step + len(word) - 1)


def empirical_frequency(w, word):
    content = as_window(w).content
    if not word or len(word) > len(content):
        raise BoundsError(f"word length {len(word)} outside [1, {len(content)}]")
    return Fraction(count_occurrences(word, content), len(content) - len(word) + 1)


def count_occurrences(word, content):
    """Number of (possibly overlapping) occurrences."""
    return len(re.findall("(?=" + re.escape(word) + ")", content))


def frequency_bound_holds(w, m, j, k=0, symbol="0"):
    """``freq(symbol^j) >= (m - j) / (3m + k)`` on the window."""
    if not 1 <= j <= m:
        raise BoundsError("need 1 <= j <= m")
    return empirical_frequency(w, symbol * j) >= Fraction(m - j, 3 * m + k)


def structure_scan(w, orbit, ms, ks=(0,)):
    """``(m, k)`` pairs from the grid where :func:`structure_check` passes."""
    content = as_window(w).content
    passes = []
    for m in ms:
        for k in ks:
            if 3 * m + k > len(content):
                continue
            if structure_check(w, orbit, m, k).ok:
                passes.append((m, k))
    return passes
