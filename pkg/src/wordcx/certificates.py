"""Families of distinct n-words certifying lower bounds on ``c_n``.

Each constructor returns a :class:`Certificate` whose words have been checked
mechanically: they are pairwise distinct, have length n, and carry the
structural feature that separates them (leading ``0^i 1`` prefixes, terminal
zero runs, the rightmost position of a marker).  ``claimed_bound`` never
exceeds the number of verified words.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import CertificateError, PreconditionError
from .words import Window, as_window, occurrences

LEMMA_IDS = {
    "anchored": "anchored",
    "multyz": "double-ray",
    "termyz": "finite-ones",
    "inf0run": "bounded-runs",
    "lastcase": "one-point-five",
}


@dataclass(frozen=True)
class Certificate:
    lemma_id: str
    n: int
    words: tuple
    claimed_bound: int
    shortfall: int = 0
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        self._check()

    def _check(self):
        if any(len(w) != self.n for w in self.words):
            raise CertificateError(f"{self.lemma_id}: a word has length other than {self.n}")
        if len(set(self.words)) != len(self.words):
            raise CertificateError(f"{self.lemma_id}: words are not pairwise distinct")
        if self.claimed_bound > len(self.words):
            raise CertificateError(
                f"{self.lemma_id}: claimed bound {self.claimed_bound} exceeds {len(self.words)} words"
            )

    def verify(self, w=None):
        """Re-check the family; with a window, also that every word occurs in it."""
        self._check()
        if w is not None:
            content = as_window(w).content
            missing = [x for x in self.words if x not in content]
            if missing:
                raise CertificateError(f"{self.lemma_id}: {len(missing)} words do not occur, e.g. {missing[0]!r}")
        return True

    def to_dict(self):
        record = {
            "lemma_id": self.lemma_id,
            "n": self.n,
            "claimed_bound": self.claimed_bound,
            "words": list(self.words),
        }
        if self.shortfall:
            record["shortfall"] = self.shortfall
        if self.params:
            record["params"] = self.params
        return record

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)

    @classmethod
    def from_dict(cls, record):
        return cls(
            record["lemma_id"],
            int(record["n"]),
            tuple(record["words"]),
            int(record["claimed_bound"]),
            int(record.get("shortfall", 0)),
            dict(record.get("params", {})),
        )


def _require(cond, message):
    if not cond:
        raise PreconditionError(message)


def anchored_span(content, marker, n, j, nxt):
    """Start offsets of n-windows whose rightmost ``marker`` occurrence is at ``j``."""
    m = len(marker)
    lo = max(0, j + m - n)
    hi = min(j, len(content) - n)
    if nxt is not None:
        hi = min(hi, nxt + m - n - 1)
    return lo, hi


def anchored_family(w, marker, n):
    """n-words sliding across one occurrence of ``marker``, which is their rightmost one.

    The occurrence admitting the most windows is used (leftmost on ties); when
    the window is too short for all ``n - |marker| + 1`` of them the bound is
    the achievable count and ``shortfall`` records the difference.
    """
    w = as_window(w)
    content = w.content
    _require(len(marker) >= 1, "marker must be non-empty")
    _require(n >= len(marker), f"n={n} is shorter than the marker")
    occ = occurrences(marker, content)
    _require(bool(occ), f"marker {marker!r} does not occur in the window")
    best = None
    for idx, j in enumerate(occ):
        nxt = occ[idx + 1] if idx + 1 < len(occ) else None
        lo, hi = anchored_span(content, marker, n, j, nxt)
        count = max(0, hi - lo + 1)
        if best is None or count > best[0]:
            best = (count, j, lo, hi)
    count, j, lo, hi = best
    words = [content[i:i + n] for i in range(lo, hi + 1)]
    for i, word in zip(range(lo, hi + 1), words):
        if word.rfind(marker) != j - i:
            raise CertificateError("rightmost marker position is not the anchored one")
    full = n - len(marker) + 1
    return Certificate("anchored", n, tuple(words), count, full - count,
                       {"marker": marker, "anchor": j + w.origin})


def _zero_prefixed(y, n, indices):
    words = []
    for i in indices:
        word = "0" * i + y[:n - i]
        if not (word[:i] == "0" * i and word[i:i + 1] in ("1", "")):
            raise CertificateError(f"word {i} does not begin with 0^{i}1")
        words.append(word)
    return words


def _zero_suffixed(z, n, indices):
    return [(z[len(z) - j:] if j else "") + "0" * (n - j) for j in indices]


def ray_families(y_prefix, z_suffix, n, variant, params=None):
    """Word families built from a right ray ``y`` (with ``0^inf y`` in the
    subshift) and a left ray ``z`` (with ``z 0^inf`` in it).

    variants and ``params``:

    ``multyz``   ``y_alt`` second right ray, optional ``k`` (first index, 1-based,
                 where the rays differ); bound ``2n - 2k + 2``.
    ``inf0run``  ``k`` with ``0^k`` absent from ``y``; bound ``2n - 2k``.
    ``lastcase`` ``k``; ``m`` and ``l`` are derived (or checked if given) and
                 n must equal ``l + m - 2k``; bound ``2l + m - 2k``.
    ``termyz``   ``y_prefix`` is ``w 0...0``; ``window`` and ``marker`` v with
                 more 1s than w; bound ``(n - |w| + 1) + (n - |v| + 1)``.
    """
    params = dict(params or {})
    if variant not in ("multyz", "inf0run", "lastcase", "termyz"):
        raise PreconditionError(f"unknown variant {variant!r}")
    _require(y_prefix[:1] == "1", "y must begin with 1")
    if variant == "multyz":
        return _multyz(y_prefix, n, params)
    if variant == "termyz":
        return _termyz(y_prefix, n, params)
    _require(z_suffix[-1:] == "1", "z must end with 1")
    if variant == "inf0run":
        return _inf0run(y_prefix, z_suffix, n, params)
    return _lastcase(y_prefix, z_suffix, n, params)


def _multyz(y, n, params):
    y2 = params.get("y_alt")
    _require(y2 is not None, "multyz needs a second ray y_alt")
    _require(y2[:1] == "1", "y_alt must begin with 1")
    _require(len(y) >= n and len(y2) >= n, f"both rays need at least n={n} symbols")
    k = params.get("k")
    if k is None:
        k = next((i + 1 for i, (a, b) in enumerate(zip(y, y2)) if a != b), None)
        _require(k is not None, "the rays agree on their common prefix")
    _require(1 <= k <= n, f"need 1 <= k <= n (k={k})")
    _require(y[k - 1] != y2[k - 1], f"rays agree at position k={k}")
    idx = range(0, n - k + 1)
    us = _zero_prefixed(y, n, idx)
    vs = _zero_prefixed(y2, n, idx)
    for i, (u, v) in enumerate(zip(us, vs)):
        if u[i + k - 1] == v[i + k - 1]:
            raise CertificateError(f"u_{i} and v_{i} agree at position {i + k}")
    return Certificate("double-ray", n, tuple(us + vs), 2 * n - 2 * k + 2, 0, {"k": k})


def _inf0run(y, z, n, params):
    k = params.get("k")
    _require(k is not None and k >= 1, "inf0run needs k >= 1")
    _require(n > k, f"need n > k (n={n}, k={k})")
    _require(len(y) >= n - k, f"y needs at least n-k={n - k} symbols")
    _require("0" * k not in y[:n], f"0^{k} occurs in y")
    _require(len(z) >= n - k, f"z needs at least n-k={n - k} symbols")
    us = _zero_prefixed(y, n, range(k, n))
    vs = _zero_suffixed(z, n, range(1, n - k + 1))
    tail = "0" * k
    if any(u.endswith(tail) for u in us) or not all(v.endswith(tail) for v in vs):
        raise CertificateError("terminal 0-run does not separate the families")
    return Certificate("bounded-runs", n, tuple(us + vs), 2 * n - 2 * k, 0, {"k": k})


def lastcase_parameters(y, k):
    """``(m, l)``: m ends the prefix with exactly 2k ones; ``y(l+1..)`` starts the
    first run of ``m - 2k + 1`` zeros."""
    ones = [i + 1 for i, s in enumerate(y) if s == "1"]
    _require(len(ones) >= 2 * k, f"y holds fewer than 2k={2 * k} ones")
    m = ones[2 * k - 1]
    run = "0" * (m - 2 * k + 1)
    l = y.find(run)
    _require(l != -1, f"0^{m - 2 * k + 1} does not occur in the supplied prefix of y")
    return m, l


def _lastcase(y, z, n, params):
    k = params.get("k")
    _require(k is not None and k >= 1, "lastcase needs k >= 1")
    if "m" in params:
        m = params["m"]
        _require(m >= 2 * k, "m must be >= 2k")
        _require(y[m - 1:m] == "1", "y(1..m) must end with 1")
        _require(y[:m].count("1") == 2 * k, f"y(1..m) must contain exactly 2k={2 * k} ones")
    m_, l = lastcase_parameters(y, k)
    m = params.get("m", m_)
    if m != m_:
        raise PreconditionError("y(1..m) must end with its 2k-th one")
    if "l" in params:
        _require(params["l"] == l, f"y(l+1..l+m-2k+1) must be the first 0^{m - 2 * k + 1}; l={l}")
    expected_n = l + m - 2 * k
    if n is None:
        n = expected_n
    _require(n == expected_n, f"n must equal l + m - 2k = {expected_n}")
    _require(len(z) >= l - 1, f"z needs at least l-1={l - 1} symbols")
    _require(l >= m, "l must be >= m")
    us = _zero_prefixed(y, n, range(0, n))
    vs = _zero_suffixed(z, n, range(0, l))
    tail = "0" * (m - 2 * k + 1)
    if any(u.endswith(tail) for u in us) or not all(v.endswith(tail) for v in vs):
        raise CertificateError("terminal 0-run does not separate the families")
    bound = 2 * l + m - 2 * k
    return Certificate("one-point-five", n, tuple(us + vs), bound, 0, {"k": k, "m": m, "l": l})


def _termyz(y, n, params):
    core = y.rstrip("0")
    window, marker = params.get("window"), params.get("marker")
    _require(window is not None and marker, "termyz needs a window and a marker")
    _require(marker.count("1") > core.count("1"), "marker must contain more 1s than the core of y")
    _require(n >= max(len(core), len(marker)), "n must be at least max(|w|, |v|)")
    us = ["0" * i + core + "0" * (n - len(core) - i) for i in range(n - len(core) + 1)]
    for i, u in enumerate(us):
        if u.find(core) != i or u.find(core, i + 1) != -1:
            raise CertificateError(f"u_{i} does not hold the core once at offset {i}")
    anchored = anchored_family(window, marker, n)
    ts = list(anchored.words)
    if any(marker in u for u in us):
        raise CertificateError("a core word contains the marker")
    bound = len(us) + anchored.claimed_bound
    return Certificate("finite-ones", n, tuple(us + ts), bound,
                       anchored.shortfall, {"marker": marker, "core": core})


def ray_window(y_prefix, z_suffix, n, y_alt=None):
    """Window containing ``z 0^n`` and ``0^n y`` (and ``0^n y_alt``)."""
    content = z_suffix + "0" * n + y_prefix
    if y_alt:
        content += "0" * n + y_alt
    return Window(content)


def _zero_runs(content):
    runs = []
    i = 0
    size = len(content)
    while i < size:
        if content[i] == "0":
            j = i
            while j < size and content[j] == "0":
                j += 1
            runs.append((i, j))
            i = j
        else:
            i += 1
    return runs


def extract_rays(w):
    """Finite stand-ins for the limit rays of a binary window.

    ``y_prefix``: the content after the longest 0-run (with a 1 on its right)
    that starts in the right half; ``z_suffix``: the content before the
    longest 0-run (with a 1 on its left) that ends in the left half.  Either
    is ``None`` when no such run exists.
    """
    content = as_window(w).content
    mid = len(content) // 2
    runs = _zero_runs(content)
    right = [(b - a, -a, a, b) for a, b in runs if a >= mid and b < len(content)]
    left = [(b - a, a, a, b) for a, b in runs if b <= mid and a > 0]
    y = z = None
    if right:
        _, _, a, b = max(right)
        y = content[b:]
    if left:
        _, _, a, b = max(left)
        z = content[:a]
    return y, z
