"""Exact factor complexity and right-special words of windows."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator

from .automaton import SuffixAutomaton, coverage
from .errors import BoundsError, ConfigurationError, GateError, WordcxError
from .words import SequenceGenerator, Window, as_window, smallest_period


@dataclass(frozen=True)
class ComplexityProfile:
    """``c[n]`` and ``rs_count[n]`` for ``0 <= n <= N`` (``c[0] == 1``)."""

    N: int
    c: tuple
    rs_count: tuple
    stabilization_ok: bool | None = None
    first_unstable: int | None = None

    def rows(self):
        for n in range(1, self.N + 1):
            cn = self.c[n]
            yield n, cn, self.rs_count[n], cn - Fraction(3 * n, 2), cn - 2 * n

    def to_csv(self, fh=None):
        out = fh if fh is not None else io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "c_n", "rs_count", "c_n-1.5n", "c_n-2n"])
        for n, cn, rs, d15, d2 in self.rows():
            writer.writerow([n, cn, rs, _fmt3(d15), _fmt3(d2)])
        if fh is None:
            return out.getvalue()


def _fmt3(q):
    q = Fraction(q)
    scaled = q * 1000
    # round half away from zero, then place the decimal point by hand
    sign = "-" if scaled < 0 else ""
    a = abs(scaled)
    units = int(a + Fraction(1, 2))
    return f"{sign}{units // 1000}.{units % 1000:03d}"


@dataclass(frozen=True)
class RightSpecialReport:
    n: int
    words: tuple  # (word, successor letters) pairs in canonical order

    @property
    def count(self):
        return len(self.words)

    def word_set(self):
        return {w for w, _ in self.words}

    def to_dict(self):
        return {"n": self.n, "words": [{"word": w, "successors": s} for w, s in self.words]}


class SubwordIndex:
    """Suffix-automaton index over one window, reusable for many queries."""

    def __init__(self, w):
        self.window = as_window(w)
        self.alphabet = self.window.alphabet if len(self.window) else None
        content = self.window.content
        if content:
            self.sam = SuffixAutomaton(self.alphabet.encode(content), len(self.alphabet))
        else:
            self.sam = SuffixAutomaton([], 1)
        self._arrays = self.sam.arrays()

    def __len__(self):
        return len(self.window)

    def profile(self, N=None):
        size = len(self.window)
        if N is None:
            N = size
        if N > size or N < 0:
            raise BoundsError(f"horizon {N} outside [0, {size}]")
        minlen, maxlen, deg, _ = self._arrays
        c = coverage(minlen, maxlen, N)
        c[0] = 1
        special = deg >= 2
        rs = coverage(minlen[special], maxlen[special], N)
        rs[0] = _root_special(self.sam)
        return ComplexityProfile(N, tuple(int(v) for v in c), tuple(int(v) for v in rs))

    def _report(self, n, states):
        content = self.window.content
        symbols = self.alphabet.symbols if self.alphabet else ()
        words = []
        for v, end in states:
            word = content[end - n + 1:end + 1]
            succ = "".join(symbols[c] for c in self.sam.successors(v))
            words.append((word, succ))
        if self.alphabet:
            words.sort(key=lambda ws: self.alphabet.sort_key(ws[0]))
        return RightSpecialReport(n, tuple(words))

    def right_special(self, n):
        if not 0 <= n < len(self.window):
            raise BoundsError(f"length {n} outside [0, {len(self.window) - 1}]")
        if n == 0:
            succ = self.sam.successors(0)
            words = (("", "".join(self.alphabet.symbols[c] for c in succ)),) if len(succ) >= 2 else ()
            return RightSpecialReport(0, words)
        minlen, maxlen, deg, first = self._arrays
        hit = np.nonzero((deg >= 2) & (minlen <= n) & (maxlen >= n))[0]
        return self._report(n, [(int(i) + 1, int(first[i])) for i in hit])

    def right_special_table(self, N):
        """``{n: RightSpecialReport}`` for ``1 <= n <= N`` in one pass over the states."""
        if not 0 <= N < len(self.window):
            raise BoundsError(f"length {N} outside [0, {len(self.window) - 1}]")
        minlen, maxlen, deg, first = self._arrays
        buckets = {n: [] for n in range(1, N + 1)}
        for i in np.nonzero((deg >= 2) & (minlen <= N))[0]:
            for n in range(int(minlen[i]), min(int(maxlen[i]), N) + 1):
                buckets[n].append((int(i) + 1, int(first[i])))
        return {n: self._report(n, states) for n, states in buckets.items()}


def _root_special(sam):
    return 1 if len(sam.successors(0)) >= 2 else 0


def complexity_profile(w, N=None):
    """Exact ``c_n`` and right-special counts of the window content for n <= N."""
    return SubwordIndex(w).profile(N)


def right_special(w, n):
    return SubwordIndex(w).right_special(n)


def first_difference_check(profile):
    """Lengths n < N where ``c_{n+1} - c_n`` is below the right-special count."""
    c, rs = profile.c, profile.rs_count
    return [n for n in range(1, profile.N) if c[n + 1] - c[n] < rs[n]]


def schedule_formula_violations(profile, schedule):
    """``(n, c_n, expected)`` where ``c_n != n + 1 + |{1..n-1} cap R|``."""
    out = []
    for n in range(1, profile.N + 1):
        expected = n + 1 + schedule.r_count_below(n)
        if profile.c[n] != expected:
            out.append((n, profile.c[n], expected))
    return out


@dataclass(frozen=True)
class MorseHedlundVerdict:
    forces_periodic: bool
    n: int | None
    period: int | None
    N: int


def morse_hedlund_probe(w, N=None, profile=None):
    """Least n <= N with ``c_n <= n``, plus the least period of the content."""
    w = as_window(w)
    if profile is None:
        profile = complexity_profile(w, N)
    for n in range(1, profile.N + 1):
        if profile.c[n] <= n:
            return MorseHedlundVerdict(True, n, smallest_period(w.content), profile.N)
    return MorseHedlundVerdict(False, None, None, profile.N)


@dataclass(frozen=True)
class GapStats:
    max_excess_over_15n: Fraction
    argmax: int
    min_excess_over_2n: int
    argmin: int


def complexity_gap_stats(profile):
    if profile.N < 1:
        raise BoundsError("profile has no lengths >= 1")
    best = min_ = None
    for n, cn, _, d15, d2 in profile.rows():
        if best is None or d15 > best[0]:
            best = (d15, n)
        if min_ is None or d2 < min_[0]:
            min_ = (d2, n)
    return GapStats(best[0], best[1], min_[0], min_[1])


# -- doubling gate -------------------------------------------------------------


def _first_difference(p, q):
    for n in range(1, min(p.N, q.N) + 1):
        if p.c[n] != q.c[n] or p.rs_count[n] != q.rs_count[n]:
            return n
    return None


def compare_profiles(small, large, N):
    """Profile of ``large`` annotated with the doubling verdict against ``small``."""
    p = complexity_profile(small, N)
    q = complexity_profile(large, N)
    bad = _first_difference(p, q)
    return ComplexityProfile(q.N, q.c, q.rs_count, bad is None, bad)


def _trimmed(w):
    """Half-length sub-window; sides with a declared periodic tail are kept."""
    size = len(w)
    cut = size // 2
    if w.left_tail is not None and w.right_tail is None:
        lo, hi = 0, size - cut
    elif w.right_tail is not None and w.left_tail is None:
        lo, hi = cut, size
    else:
        lo, hi = cut // 2, size - (cut - cut // 2)
    return Window(w.content[lo:hi], w.origin + lo)


class ComplexityProfiler(BaseEstimator):
    """Estimator wrapper: ``fit`` computes a (gated) profile up to ``horizon``.

    ``fit`` accepts a :class:`Window`, a plain string or a
    :class:`SequenceGenerator`.  With ``gate_doubling`` the profile is
    accepted only if it is unchanged when the analysed span doubles: a
    generator is excerpted on ``[-s, s]`` and ``[-2s, 2s]`` (``s`` doubling
    from ``start_radius`` up to ``max_radius``); a generated window is
    re-excerpted at twice its span; any other window is compared with its
    central half.
    """

    def __init__(self, horizon=None, gate_doubling=True, start_radius=None, max_radius=1 << 22):
        self.horizon = horizon
        self.gate_doubling = gate_doubling
        self.start_radius = start_radius
        self.max_radius = max_radius

    def fit(self, X, y=None):
        if isinstance(X, SequenceGenerator):
            self._fit_generator(X)
        else:
            self._fit_window(as_window(X))
        p = self.profile_
        self.c_ = np.asarray(p.c[1:], dtype=np.int64)
        self.rs_count_ = np.asarray(p.rs_count[1:], dtype=np.int64)
        self.stabilization_ok_ = p.stabilization_ok
        self.first_unstable_ = p.first_unstable
        return self

    def _fit_window(self, w):
        N = len(w) if self.horizon is None else self.horizon
        if not self.gate_doubling:
            self.window_ = w
            self.profile_ = complexity_profile(w, N)
            return
        gen = None
        meta = w.meta or {}
        if "generator" in meta and "L" in meta:
            from .config import generator_from_config

            try:
                gen = generator_from_config(meta["generator"])
            except WordcxError:
                gen = None
        if gen is not None:
            L, R = meta["L"], meta["R"]
            span = R - L + 1
            try:
                big = gen.window(L - span // 2, R + (span - span // 2))
            except WordcxError as exc:
                raise GateError(f"cannot double the window: {exc}") from exc
            self.window_ = big
            self.profile_ = compare_profiles(w, big, N)
            return
        small = _trimmed(w)
        if N > len(small):
            raise GateError(f"horizon {N} exceeds the half window used by the gate")
        self.window_ = w
        self.profile_ = compare_profiles(small, w, N)

    def _fit_generator(self, gen):
        if self.horizon is None:
            raise ConfigurationError("a horizon is required to profile a generator")
        N = self.horizon
        s = self.start_radius or 2 * (N + 1)
        small = gen.window(-s, s)
        if not self.gate_doubling:
            self.window_ = small
            self.profile_ = complexity_profile(small, N)
            return
        while True:
            try:
                big = gen.window(-2 * s, 2 * s)
            except WordcxError as exc:
                # the generator ran out of defined symbols before stabilising
                self.window_ = small
                prof = complexity_profile(small, N)
                self.profile_ = ComplexityProfile(prof.N, prof.c, prof.rs_count, False, None)
                self.gate_error_ = str(exc)
                return
            prof = compare_profiles(small, big, N)
            if prof.stabilization_ok or 2 * s >= self.max_radius:
                self.window_ = big
                self.profile_ = prof
                return
            s *= 2
            small = big

    def right_special_table(self, N=None):
        index = SubwordIndex(self.window_)
        return index.right_special_table(self.profile_.N if N is None else N)
