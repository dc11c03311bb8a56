"""Finite words, two-sided windows and generators of bi-infinite sequences.

Words are plain ``str`` objects whose characters are the alphabet symbols.
A :class:`Window` is an excerpt ``x(L)..x(R)`` of a bi-infinite sequence ``x``
together with what is known about the sequence past either edge.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .errors import AlphabetError, BoundsError, ConfigurationError


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if not symbols:
            raise AlphabetError("alphabet must contain at least one symbol")
        if any(not isinstance(s, str) or len(s) != 1 for s in symbols):
            raise AlphabetError("symbols must be single characters")
        if len(set(symbols)) != len(symbols):
            raise AlphabetError(f"repeated symbols in {symbols!r}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    @classmethod
    def of(cls, *words):
        """Alphabet of all symbols used by ``words``, in sorted order."""
        return cls(tuple(sorted(set("".join(words)))))

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def __iter__(self):
        return iter(self.symbols)

    def index(self, symbol):
        return self._index[symbol]

    def check(self, word):
        bad = set(word) - set(self.symbols)
        if bad:
            raise AlphabetError(f"symbols {sorted(bad)} not in alphabet {self.symbols}")
        return word

    def encode(self, word):
        idx = self._index
        try:
            return [idx[s] for s in word]
        except KeyError as exc:
            raise AlphabetError(f"symbol {exc.args[0]!r} not in alphabet") from None

    def sort_key(self, word):
        """Canonical order: alphabet order extended lexicographically."""
        return tuple(self._index[s] for s in word)

    def __str__(self):
        return "".join(self.symbols)


def concat(v, w, alphabet=None):
    if alphabet is not None:
        alphabet.check(v)
        alphabet.check(w)
    return v + w


def is_prefix(v, u):
    return u.startswith(v)


def is_suffix(w, u):
    return u.endswith(w)


def occurrences(w, u):
    """Sorted 0-based start positions of ``w`` in ``u``, overlaps included."""
    if not w:
        raise BoundsError("occurrences of the empty word are not defined")
    out = []
    i = u.find(w)
    while i != -1:
        out.append(i)
        i = u.find(w, i + 1)
    return out


def smallest_period(word):
    """Least p >= 1 with word[i] == word[i + p] throughout (prefix function)."""
    n = len(word)
    if n == 0:
        return 0
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and word[i] != word[k]:
            k = fail[k - 1]
        if word[i] == word[k]:
            k += 1
        fail[i] = k
    return n - fail[-1]


def primitive_root(word):
    p = smallest_period(word)
    if p and len(word) % p == 0:
        return word[:p]
    return word


@dataclass(frozen=True)
class Window:
    """``content[i]`` is the symbol at position ``origin + i``.

    ``left_tail`` / ``right_tail`` are period words (as they appear at the
    corresponding edge of ``content``) declaring that the sequence continues
    periodically past that edge, or ``None`` when nothing is known.
    """

    content: str
    origin: int = 0
    left_tail: str | None = None
    right_tail: str | None = None
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.left_tail is not None:
            p = self.left_tail
            if not p or not self.content.startswith(p):
                raise ConfigurationError(f"left tail {p!r} does not match window content")
        if self.right_tail is not None:
            p = self.right_tail
            if not p or not self.content.endswith(p):
                raise ConfigurationError(f"right tail {p!r} does not match window content")

    def __len__(self):
        return len(self.content)

    def __str__(self):
        return self.content

    @property
    def start(self):
        return self.origin

    @property
    def stop(self):
        """Last position covered (inclusive)."""
        return self.origin + len(self.content) - 1

    @property
    def alphabet(self):
        return Alphabet.of(self.content)

    def at(self, pos):
        if not self.start <= pos <= self.stop:
            raise BoundsError(f"position {pos} outside [{self.start}, {self.stop}]")
        return self.content[pos - self.origin]

    def subword(self, L, R):
        """Symbols at positions ``L..R`` inclusive."""
        if L > R + 1 or L < self.start or R > self.stop:
            raise BoundsError(f"[{L}, {R}] outside [{self.start}, {self.stop}]")
        return self.content[L - self.origin:R - self.origin + 1]

    def to_dict(self):
        record = {
            "origin": self.origin,
            "content": self.content,
            "left_tail": self.left_tail,
            "right_tail": self.right_tail,
        }
        if self.meta:
            record["meta"] = self.meta
        return record

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)

    @classmethod
    def from_dict(cls, record):
        try:
            return cls(
                content=str(record["content"]),
                origin=int(record.get("origin", 0)),
                left_tail=record.get("left_tail"),
                right_tail=record.get("right_tail"),
                meta=dict(record.get("meta", {})),
            )
        except KeyError as exc:
            raise ConfigurationError(f"window record lacks {exc.args[0]!r}") from None

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def as_window(X):
    if isinstance(X, Window):
        return X
    if isinstance(X, str):
        return Window(X)
    raise ConfigurationError(f"expected a Window or a str, got {type(X).__name__}")


# -- generators --------------------------------------------------------------


class SequenceGenerator:
    """A bi-infinite sequence that can be excerpted on demand."""

    kind = None

    def symbol(self, pos):
        raise NotImplementedError

    def tails(self, L, R, content):
        return None, None

    def window(self, L, R):
        if L > R:
            raise BoundsError(f"empty range [{L}, {R}]")
        content = "".join(self.symbol(i) for i in range(L, R + 1))
        left, right = self.tails(L, R, content)
        return Window(content, L, left, right, meta={"generator": self.to_config(), "L": L, "R": R})

    def to_config(self):
        raise NotImplementedError


def window(gen, L, R):
    return gen.window(L, R)


class PeriodicGenerator(SequenceGenerator):
    """``x(i) = period[i mod |period|]``."""

    kind = "periodic"

    def __init__(self, period):
        if not period:
            raise ConfigurationError("period word must be non-empty")
        self.period = period

    def symbol(self, pos):
        return self.period[pos % len(self.period)]

    def window(self, L, R):
        if L > R:
            raise BoundsError(f"empty range [{L}, {R}]")
        p = self.period
        q = len(p)
        reps = (R - L + 1) // q + 2
        s = L % q
        content = (p * reps)[s:s + R - L + 1]
        left = content[:q] if len(content) >= q else None
        right = content[-q:] if len(content) >= q else None
        return Window(content, L, left, right, meta={"generator": self.to_config(), "L": L, "R": R})

    def to_config(self):
        return {"kind": self.kind, "period": self.period}


class EventuallyPeriodicGenerator(SequenceGenerator):
    """``... lp lp core rp rp ...`` with ``core`` occupying positions ``0..|core|-1``.

    The left period is aligned so that ``lp`` ends at position -1; the right
    period starts at position ``|core|``.
    """

    kind = "eventually-periodic"

    def __init__(self, left_period, core, right_period):
        if not left_period or not right_period:
            raise ConfigurationError("both period words must be non-empty")
        self.left_period = left_period
        self.core = core
        self.right_period = right_period

    def symbol(self, pos):
        n = len(self.core)
        if pos < 0:
            lp = self.left_period
            return lp[pos % len(lp)]
        if pos < n:
            return self.core[pos]
        rp = self.right_period
        return rp[(pos - n) % len(rp)]

    def tails(self, L, R, content):
        lp, rp = self.left_period, self.right_period
        left = content[:len(lp)] if L + len(lp) <= 0 else None
        right = content[-len(rp):] if R - len(rp) + 1 >= len(self.core) else None
        return left, right

    def to_config(self):
        return {
            "kind": self.kind,
            "left_period": self.left_period,
            "core": self.core,
            "right_period": self.right_period,
        }


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number ``(a + b*sqrt(d)) / c`` with d not a perfect square."""

    a: int
    b: int
    d: int
    c: int

    def __post_init__(self):
        if self.c <= 0:
            raise ConfigurationError("denominator must be positive")
        if self.d <= 1 or isqrt(self.d) ** 2 == self.d:
            raise ConfigurationError(f"{self.d} must be a non-square integer > 1")

    def floor_affine(self, n, beta=Fraction(0)):
        """Exact ``floor(n * self + beta)`` for integer n and rational beta."""
        beta = Fraction(beta)
        t = beta.denominator
        A = t * n * self.a + beta.numerator * self.c
        B = t * n * self.b
        if B >= 0:
            fl = isqrt(B * B * self.d)
        else:
            fl = -isqrt(B * B * self.d) - 1
        return (A + fl) // (self.c * t)

    def __float__(self):
        return (self.a + self.b * self.d ** 0.5) / self.c


GOLDEN = QuadraticSurd(-1, 1, 5, 2)


def parse_alpha(text):
    """``golden``, ``p/q``, or ``a,b,d,c`` meaning (a + b sqrt d) / c."""
    text = str(text).strip()
    if text in ("golden", "phi-1"):
        return GOLDEN
    if "," in text:
        a, b, d, c = (int(v) for v in text.split(","))
        return QuadraticSurd(a, b, d, c)
    return Fraction(text)


class SturmianGenerator(SequenceGenerator):
    """Rotation coding ``x(n) = floor((n+1)a + b) - floor(n a + b)``.

    ``alpha`` is either a :class:`QuadraticSurd` (exact, aperiodic) or a
    rational approximation; a rational ``p/q`` codes a periodic sequence, so
    windows longer than ``q`` are refused.
    """

    kind = "sturmian"

    def __init__(self, alpha=GOLDEN, beta=Fraction(0)):
        if isinstance(alpha, str):
            alpha = parse_alpha(alpha)
        if not isinstance(alpha, QuadraticSurd):
            alpha = Fraction(alpha)
        if not 0 < float(alpha) < 1:
            raise ConfigurationError("rotation number must lie in (0, 1)")
        self.alpha = alpha
        self.beta = Fraction(beta)

    def _floor(self, n):
        if isinstance(self.alpha, QuadraticSurd):
            return self.alpha.floor_affine(n, self.beta)
        v = n * self.alpha + self.beta
        return v.numerator // v.denominator

    def symbol(self, pos):
        return "1" if self._floor(pos + 1) - self._floor(pos) else "0"

    def window(self, L, R):
        if isinstance(self.alpha, Fraction) and R - L + 1 >= self.alpha.denominator:
            raise ConfigurationError(
                f"rational rotation {self.alpha} has period {self.alpha.denominator}; "
                f"window of length {R - L + 1} needs a finer approximation"
            )
        if L > R:
            raise BoundsError(f"empty range [{L}, {R}]")
        floors = [self._floor(n) for n in range(L, R + 2)]
        content = "".join("1" if b - a else "0" for a, b in zip(floors, floors[1:]))
        return Window(content, L, meta={"generator": self.to_config(), "L": L, "R": R})

    def to_config(self):
        if isinstance(self.alpha, QuadraticSurd):
            a = self.alpha
            alpha = f"{a.a},{a.b},{a.d},{a.c}"
        else:
            alpha = str(self.alpha)
        return {"kind": self.kind, "alpha": alpha, "beta": str(self.beta)}


class ExplicitGenerator(SequenceGenerator):
    """Serves excerpts of a stored window; positions outside it are errors."""

    kind = "explicit-window"

    def __init__(self, source):
        self.source = as_window(source)

    def window(self, L, R):
        w = self.source
        content = w.subword(L, R)
        left = w.left_tail if L == w.start else None
        right = w.right_tail if R == w.stop else None
        return Window(content, L, left, right, meta={"generator": self.to_config(), "L": L, "R": R})

    def symbol(self, pos):
        return self.source.at(pos)

    def to_config(self):
        return {"kind": self.kind}
