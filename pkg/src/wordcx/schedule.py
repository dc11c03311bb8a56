"""Gap schedules and the non-uniformly-recurrent binary sequence they define.

The sequence is ``x = 0^inf . 1 0^g1 1 0^g2 1 ...`` with ``g_i = n_k`` where
``2^k`` is the largest power of two dividing ``i``.  The integers
``n_0 < n_1 < ...`` are chosen level by level as the least values satisfying

    n_k > |w(k-1)|   and   f(n_k) > 0.5 |w(k)| - n_k + |R cap [1, |w(k-1)|]|

for a slowly growing ``f``; the right-hand side does not depend on ``n_k``.

For slowly growing ``f`` the levels explode (``f = floor(log2(n+1))`` gives
``n_2 = 2^31 - 1`` and ``n_3`` with about 3.2e9 bits), so a schedule resolves
levels only up to ``cap``; deeper levels are recorded as certified to exceed
``cap``.  Analyses of words of length at most ``h`` never see the difference
between two gaps that are both ``>= h - 1``, which is what ``clip`` exploits.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import floor, isqrt

from .errors import BoundsError, ConfigurationError, ScheduleCapError, ScheduleDepthError
from .words import SequenceGenerator, Window

DEFAULT_CAP = 10**12


class GrowthFunction:
    """Nondecreasing unbounded ``f: N -> N`` probed only at integer points.

    ``inverse(v, cap)`` returns the least ``n >= 0`` with ``f(n) >= v``, or
    ``None`` if that exceeds ``cap``; without it a doubling/bisection search
    over ``f`` is used.
    """

    def __init__(self, name, func, inverse=None):
        self.name = name
        self.func = func
        self.inverse = inverse

    def __call__(self, n):
        return self.func(n)

    def __repr__(self):
        return f"GrowthFunction({self.name!r})"

    def least_above(self, bound, lo=0, cap=DEFAULT_CAP):
        """Least ``n >= lo`` with ``f(n) > bound``; ``None`` if beyond ``cap``."""
        target = floor(bound) + 1
        if self.inverse is not None:
            n = self.inverse(target, cap)
            if n is None:
                return None
            n = max(n, lo)
            return n if n <= cap else None
        if lo > cap:
            return None
        if self(lo) >= target:
            return lo
        step = 1
        good = lo
        bad = lo
        while True:
            good = lo + step
            if good > cap:
                good = cap
                if self(good) < target:
                    return None
                break
            if self(good) >= target:
                break
            bad = good
            step *= 2
        while good - bad > 1:
            mid = (good + bad) // 2
            if self(mid) >= target:
                good = mid
            else:
                bad = mid
        return good


def _log2_inverse(v, cap):
    if v <= 0:
        return 0
    if v > cap.bit_length():
        return None
    n = (1 << v) - 1
    return n if n <= cap else None


def _sqrt_inverse(v, cap):
    if v <= 0:
        return 0
    n = v * v
    return n if n <= cap else None


floor_log2 = GrowthFunction("floor-log2", lambda n: (n + 1).bit_length() - 1, _log2_inverse)
floor_sqrt = GrowthFunction("floor-sqrt", isqrt, _sqrt_inverse)


def constant_plus_step(c=0, s=1):
    """``f(n) = c + n // s``."""
    if s < 1:
        raise ConfigurationError("step width must be >= 1")

    def inverse(v, cap):
        n = max(0, s * (v - c))
        return n if n <= cap else None

    return GrowthFunction(f"constant-plus-step:{c}:{s}", lambda n: c + n // s, inverse)


def table_function(values):
    """``f(n) = values[n]``; probing past the table is a cap failure."""
    values = [int(v) for v in values]
    if any(b < a for a, b in zip(values, values[1:])):
        raise ConfigurationError("table values must be nondecreasing")

    def func(n):
        if n >= len(values):
            raise ScheduleCapError(f"f probed at {n}, past the end of its table")
        return values[n]

    def inverse(v, cap):
        from bisect import bisect_left

        n = bisect_left(values, v)
        if n == len(values) or n > cap:
            return None
        return n

    return GrowthFunction("table:" + ",".join(map(str, values)), func, inverse)


def growth_function(spec):
    """Parse ``floor-log2``, ``floor-sqrt``, ``constant-plus-step[:c[:s]]`` or ``table:v0,v1,...``."""
    if isinstance(spec, GrowthFunction):
        return spec
    spec = str(spec).strip()
    if spec == "floor-log2":
        return floor_log2
    if spec == "floor-sqrt":
        return floor_sqrt
    if spec.startswith("constant-plus-step"):
        parts = spec.split(":")[1:]
        return constant_plus_step(*(int(p) for p in parts))
    if spec.startswith("table:"):
        return table_function(spec[len("table:"):].split(","))
    raise ConfigurationError(f"unknown growth function {spec!r}")


def nu2(i):
    """2-adic valuation of a positive integer."""
    if i < 1:
        raise BoundsError("gap index must be >= 1")
    return (i & -i).bit_length() - 1


@dataclass(frozen=True)
class GapSchedule:
    f: GrowthFunction
    K: int
    n: tuple
    w_len: tuple
    cap: int = DEFAULT_CAP

    @property
    def n0(self):
        return self.n[0]

    @property
    def depth(self):
        """Deepest resolved level."""
        return len(self.n) - 1

    @property
    def complete(self):
        return self.depth == self.K

    @property
    def R(self):
        """Intervals ``(n_k, |w(k)|]`` of resolved levels, as ``(lo, hi)`` pairs."""
        return tuple(zip(self.n, self.w_len))

    def level(self, k):
        if k > self.K or k < 0:
            raise ScheduleDepthError(f"level {k} outside schedule depth {self.K}")
        if k > self.depth:
            raise ScheduleCapError(f"level {k} exceeds cap {self.cap} (f grows too slowly for cap)")
        return self.n[k]

    def required_bound(self, k):
        """Right-hand side that ``f(n_k)`` must exceed (needs levels < k)."""
        if not 1 <= k <= self.depth + 1:
            raise ScheduleDepthError(f"bound for level {k} needs levels 0..{k - 1}")
        total = Fraction(2 ** k, 2)
        for j in range(k):
            total += Fraction(self.n[j] * 2 ** (k - j), 4)
        total += sum(hi - lo for lo, hi in self.R[:k])
        return total

    def residuals(self):
        """``f(n_k) - bound_k`` for each resolved level k >= 1 (all positive)."""
        return tuple(self.f(self.n[k]) - self.required_bound(k) for k in range(1, self.depth + 1))

    def valid_up_to(self):
        """Largest length for which R-membership is exactly known."""
        if self.complete:
            return self.w_len[-1]
        return self.cap

    def in_R(self, n):
        if n > self.valid_up_to() and not self.complete:
            raise ScheduleCapError(f"R-membership of {n} depends on levels beyond cap {self.cap}")
        return any(lo < n <= hi for lo, hi in self.R)

    def r_count_below(self, n):
        """``|{1, ..., n-1} cap R|``."""
        m = n - 1
        if m > self.valid_up_to() and not self.complete:
            raise ScheduleCapError(f"|R cap [1, {m}]| depends on levels beyond cap {self.cap}")
        return sum(max(0, min(hi, m) - lo) for lo, hi in self.R)

    def to_dict(self):
        return {
            "f_name": self.f.name,
            "K": self.K,
            "cap": self.cap,
            "n": list(self.n),
            "w_len": list(self.w_len),
            "R": [[lo, hi] for lo, hi in self.R],
            "residuals": [str(r) for r in self.residuals()],
            "unresolved_levels": list(range(self.depth + 1, self.K + 1)),
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def build_schedule(f, K, n0=1, cap=DEFAULT_CAP, on_cap="truncate"):
    """Canonical schedule: each ``n_k`` is the least admissible value.

    ``on_cap="raise"`` turns an unreachable level into :class:`ScheduleCapError`;
    the default keeps the resolved levels and marks the rest as beyond ``cap``.
    """
    f = growth_function(f)
    if n0 < 1:
        raise ConfigurationError("n0 must be >= 1")
    if K < 0:
        raise ConfigurationError("K must be >= 0")
    if on_cap not in ("truncate", "raise"):
        raise ConfigurationError(f"on_cap must be 'truncate' or 'raise', not {on_cap!r}")
    n = [n0]
    w_len = [2 * n0 + 1]
    for k in range(1, K + 1):
        partial = GapSchedule(f, K, tuple(n), tuple(w_len), cap)
        bound = partial.required_bound(k)
        try:
            nk = f.least_above(bound, lo=w_len[-1] + 1, cap=cap)
        except ScheduleCapError:
            nk = None
        if nk is None:
            if on_cap == "raise":
                raise ScheduleCapError(
                    f"f grows too slowly for cap: level {k} needs f(n) > {bound} with n <= {cap}"
                )
            break
        n.append(nk)
        w_len.append(2 ** k + 2 * nk + sum(2 ** (k - j - 1) * n[j] for j in range(k)))
    return GapSchedule(f, K, tuple(n), tuple(w_len), cap)


def gap(sched, i, clip=None):
    """``g_i = n_{nu2(i)}``; with ``clip`` the value is ``min(g_i, clip)``."""
    k = nu2(i)
    if k > sched.K:
        raise ScheduleDepthError(f"gap {i} needs level {k} > K={sched.K}")
    if clip is not None:
        if k > sched.depth:
            if clip > sched.cap:
                raise ScheduleCapError(f"clip {clip} exceeds cap {sched.cap}")
            return clip
        return min(sched.n[k], clip)
    return sched.level(k)


def wk_word(sched, k, max_length=10**7):
    """``0^{n_k} 1 0^{g_1} 1 ... 1 0^{g_{2^k-1}} 1 0^{n_k}``."""
    nk = sched.level(k)
    if sched.w_len[k] > max_length:
        raise BoundsError(f"|w({k})| = {sched.w_len[k]} exceeds max_length={max_length}")
    parts = ["0" * nk, "1"]
    for i in range(1, 2 ** k):
        parts.append("0" * sched.n[nu2(i)])
        parts.append("1")
    parts.append("0" * nk)
    return "".join(parts)


def _right_ray(sched, num_gaps, clip):
    parts = ["1"]
    for i in range(1, num_gaps + 1):
        parts.append("0" * gap(sched, i, clip))
        parts.append("1")
    return "".join(parts)


def construction_prefix(sched, num_gaps, left_zeros=None, clip=None):
    """Window ``0^left_zeros 1 0^g1 1 ... 1 0^g_num_gaps 1`` with its first 1 at position 0."""
    limit = 2 ** (sched.K + 1) - 1
    if num_gaps > limit:
        raise ScheduleDepthError(f"num_gaps={num_gaps} exceeds 2^(K+1)-1 = {limit}")
    if num_gaps < 0:
        raise BoundsError("num_gaps must be >= 0")
    ray = _right_ray(sched, num_gaps, clip)
    if left_zeros is None:
        left_zeros = clip if clip is not None else max(
            (gap(sched, i) for i in range(1, num_gaps + 1)), default=1
        )
    meta = {
        "generator": GapConstruction(sched, clip).to_config(),
        "num_gaps": num_gaps,
    }
    return Window("0" * left_zeros + ray, -left_zeros, "0" if left_zeros else None, None, meta=meta)


class GapConstruction(SequenceGenerator):
    """The schedule's sequence; position 0 holds the first 1.

    With ``clip`` every gap longer than ``clip`` is shortened to ``clip``; the
    result has the same factors of length ``<= clip`` as the true sequence.
    """

    kind = "gap-construction"

    def __init__(self, schedule, clip=None):
        if clip is not None and clip < 1:
            raise ConfigurationError("clip must be >= 1")
        self.schedule = schedule
        self.clip = clip
        self._ray = "1"
        self._gaps = 0

    @classmethod
    def for_horizon(cls, schedule, horizon):
        """Clip so that factors of length up to ``horizon + 1`` are exact."""
        return cls(schedule, clip=horizon + 2)

    @property
    def max_gaps(self):
        return 2 ** (self.schedule.K + 1) - 1

    def _extend(self, upto):
        parts = [self._ray]
        size = len(self._ray)
        while size <= upto:
            if self._gaps >= self.max_gaps:
                raise ScheduleDepthError(
                    f"position {upto} lies past gap {self.max_gaps}, the last one defined at K={self.schedule.K}"
                )
            self._gaps += 1
            g = gap(self.schedule, self._gaps, self.clip)
            parts.append("0" * g + "1")
            size += g + 1
        self._ray = "".join(parts)

    def window(self, L, R):
        if L > R:
            raise BoundsError(f"empty range [{L}, {R}]")
        if R >= 0:
            self._extend(R)
        left = "0" * (min(R, -1) - L + 1) if L < 0 else ""
        right = self._ray[max(L, 0):R + 1] if R >= 0 else ""
        meta = {"generator": self.to_config(), "L": L, "R": R}
        return Window(left + right, L, "0" if L < 0 else None, None, meta=meta)

    def symbol(self, pos):
        if pos < 0:
            return "0"
        self._extend(pos)
        return self._ray[pos]

    def to_config(self):
        return {
            "kind": self.kind,
            "f": self.schedule.f.name,
            "K": self.schedule.K,
            "n0": self.schedule.n0,
            "cap": self.schedule.cap,
            "clip": self.clip,
        }
