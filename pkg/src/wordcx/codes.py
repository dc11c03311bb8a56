"""Sliding block codes and the reduction of a periodic orbit to ``0^inf``."""
from __future__ import annotations

from collections.abc import Callable, Mapping
from itertools import product

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .errors import BoundsError, ConfigurationError, PreconditionError
from .words import Alphabet, Window, as_window, primitive_root


class PeriodicOrbit:
    """All shifts of ``period^inf``; ``period`` must be primitive."""

    def __init__(self, period):
        if not period:
            raise ConfigurationError("period word must be non-empty")
        if primitive_root(period) != period:
            raise ConfigurationError(f"{period!r} is a proper power of {primitive_root(period)!r}")
        self.period = period

    @classmethod
    def of(cls, word):
        """Orbit of ``word^inf``, reducing ``word`` to its primitive root."""
        return cls(primitive_root(word))

    def __len__(self):
        return len(self.period)

    def __repr__(self):
        return f"PeriodicOrbit({self.period!r})"

    def words(self, n):
        """``W_n(M)``: the n-words of the orbit."""
        p = self.period
        q = len(p)
        unrolled = p * (n // q + 2)
        return frozenset(unrolled[i:i + n] for i in range(q))

    def contains(self, word):
        return word in self.words(len(word))


class SlidingBlockCode(BaseEstimator, TransformerMixin):
    """Local rule of window size ``k``: output ``i`` is ``rule(w[i:i+k])``.

    ``rule`` is a mapping (checked for totality on ``A^k`` during ``fit``) or a
    callable on k-words.
    """

    def __init__(self, k=1, rule=None, alphabet=None):
        self.k = k
        self.rule = rule
        self.alphabet = alphabet

    def fit(self, X=None, y=None):
        if self.k < 1:
            raise ConfigurationError("window size must be >= 1")
        if self.rule is None:
            raise ConfigurationError("a rule is required")
        alphabet = self.alphabet
        if alphabet is None and X is not None:
            alphabet = as_window(X).alphabet
        if alphabet is not None and not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        if isinstance(self.rule, Mapping):
            if alphabet is None:
                raise ConfigurationError("a mapping rule needs an alphabet to check totality")
            missing = [
                "".join(t) for t in product(alphabet.symbols, repeat=self.k) if "".join(t) not in self.rule
            ]
            if missing:
                raise ConfigurationError(f"rule is not total: {len(missing)} words missing, e.g. {missing[0]!r}")
            self._apply = self.rule.__getitem__
        elif isinstance(self.rule, Callable):
            self._apply = self.rule
        else:
            raise ConfigurationError("rule must be a mapping or a callable")
        self.alphabet_ = alphabet
        return self

    def transform(self, X):
        check_is_fitted(self, "alphabet_")
        w = as_window(X)
        return _apply(self._apply, self.k, w)

    def image(self, word):
        """``phi(word)`` for a word of length >= k."""
        check_is_fitted(self, "alphabet_")
        if len(word) < self.k:
            raise BoundsError(f"word shorter than window size {self.k}")
        return "".join(self._apply(word[i:i + self.k]) for i in range(len(word) - self.k + 1))


def _apply(rule, k, w):
    content = w.content
    if len(content) < k:
        raise BoundsError(f"window of length {len(content)} is shorter than k={k}")
    out = "".join(rule(content[i:i + k]) for i in range(len(content) - k + 1))
    return Window(out, w.origin, _image_tail(w.left_tail, content, out, k, True),
                  _image_tail(w.right_tail, content, out, k, False))


def _image_tail(tail, content, out, k, left):
    # the image of a periodic stretch is periodic with the same period
    if tail is None:
        return None
    q = len(tail)
    need = q + k - 1
    if len(content) < need or len(out) < q:
        return None
    stretch = content[:need] if left else content[-need:]
    if any(stretch[i] != stretch[i + q] for i in range(len(stretch) - q)):
        return None
    return out[:q] if left else out[-q:]


def apply_sbc(code, w):
    if not hasattr(code, "alphabet_"):
        code.fit(w)
    return code.transform(w)


def phi_reduce(orbit, k):
    """Binary code: 0 where the k-window lies in ``W_k(M)``, 1 elsewhere."""
    if isinstance(orbit, str):
        orbit = PeriodicOrbit(orbit)
    if k <= len(orbit):
        raise PreconditionError(f"window size {k} must exceed the period {len(orbit)}")
    allowed = orbit.words(k)

    def rule(word):
        return "0" if word in allowed else "1"

    code = SlidingBlockCode(k=k, rule=rule)
    code.orbit_ = orbit
    return code.fit()
