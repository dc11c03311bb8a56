"""Suffix automaton over integer-coded words.

Every distinct factor of the indexed word belongs to exactly one state ``v``,
and the factors in ``v`` are precisely those with lengths in
``(len(link(v)), len(v)]``.  They share their end positions, hence their
right extensions; so both the number of distinct n-factors and the number of
right-special n-factors are interval-coverage counts over states.
"""
import numpy as np


class SuffixAutomaton:
    __slots__ = ("sigma", "size", "next", "link", "length", "first", "n")

    def __init__(self, codes, sigma):
        n = len(codes)
        cap = 2 * n + 2
        nxt = [-1] * (cap * sigma)
        link = [-1] * cap
        length = [0] * cap
        first = [-1] * cap
        size = 1
        last = 0
        for pos, c in enumerate(codes):
            cur = size
            size += 1
            length[cur] = length[last] + 1
            first[cur] = pos
            p = last
            while p != -1 and nxt[p * sigma + c] == -1:
                nxt[p * sigma + c] = cur
                p = link[p]
            if p == -1:
                link[cur] = 0
            else:
                q = nxt[p * sigma + c]
                if length[p] + 1 == length[q]:
                    link[cur] = q
                else:
                    clone = size
                    size += 1
                    length[clone] = length[p] + 1
                    nxt[clone * sigma:(clone + 1) * sigma] = nxt[q * sigma:(q + 1) * sigma]
                    link[clone] = link[q]
                    first[clone] = first[q]
                    while p != -1 and nxt[p * sigma + c] == q:
                        nxt[p * sigma + c] = clone
                        p = link[p]
                    link[q] = clone
                    link[cur] = clone
            last = cur
        self.sigma = sigma
        self.size = size
        self.n = n
        self.next = nxt
        self.link = link
        self.length = length
        self.first = first

    def arrays(self):
        """``(minlen, maxlen, out_degree, first_end)`` for the non-root states."""
        size, sigma = self.size, self.sigma
        length = np.asarray(self.length[:size], dtype=np.int64)
        link = np.asarray(self.link[:size], dtype=np.int64)
        nxt = np.asarray(self.next[:size * sigma], dtype=np.int64).reshape(size, sigma)
        first = np.asarray(self.first[:size], dtype=np.int64)
        minlen = length[link[1:]] + 1
        return minlen, length[1:], (nxt[1:] >= 0).sum(axis=1), first[1:]

    def successors(self, state):
        row = self.next[state * self.sigma:(state + 1) * self.sigma]
        return [c for c, t in enumerate(row) if t >= 0]


def coverage(lo, hi, N):
    """``out[n]`` = number of intervals ``[lo, hi]`` containing n, for 0 <= n <= N."""
    lo = np.minimum(lo, N + 1)
    hi = np.minimum(hi, N)
    keep = lo <= hi
    diff = np.bincount(lo[keep], minlength=N + 2) - np.bincount(hi[keep] + 1, minlength=N + 2)
    return np.cumsum(diff)[:N + 1]
