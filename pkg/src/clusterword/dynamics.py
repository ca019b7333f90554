"""Subshift languages at finite length: beta-shifts, factor complexity, entropy."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .omegaterm import factors_upto


@dataclass(frozen=True)
class ParryBeta:
    """beta given by the quasi-greedy expansion of 1: preperiod (period)^inf."""
    preperiod: tuple
    period: tuple
    ceil: int

    def __post_init__(self):
        if not self.period:
            raise ValueError("empty period")
        if any(not 0 <= d < self.ceil for d in self.preperiod + self.period):
            raise ValueError("digit out of range")
        if self.ceil < 2 and any(self.preperiod + self.period):
            raise ValueError("ceil must be at least 2")
        n = len(self.preperiod) + 2 * len(self.period)
        d = self.digits(n)
        for i in range(1, n):
            if d[i:] > d[:n - i]:
                raise ValueError("expansion is not self-admissible")

    def digits(self, n):
        out = list(self.preperiod)
        while len(out) < n:
            out.extend(self.period)
        return tuple(out[:n])

    def __lt__(self, other):
        n = 2 * (len(self.preperiod) + len(other.preperiod) + len(self.period) * len(other.period)) + 2
        return self.digits(n) < other.digits(n)

    def approx_beta(self, n=60):
        """Root of 1 = sum d_i x^-i by bisection (for reporting only)."""
        d = self.digits(n)
        lo, hi = 1.0, float(self.ceil)
        for _ in range(80):
            mid = (lo + hi) / 2
            val = sum(di * mid ** -(i + 1) for i, di in enumerate(d))
            lo, hi = (mid, hi) if val > 1 else (lo, mid)
        return (lo + hi) / 2


GOLDEN = ParryBeta((), (1, 0), 2)
TRIBONACCI = ParryBeta((), (1, 1, 0), 2)
FULL2 = ParryBeta((), (1,), 2)


@dataclass
class SubshiftLanguage:
    alphabet: tuple
    max_len: int
    words: dict = field(default_factory=dict)   # length -> sorted list of words (tuples)

    def __contains__(self, w):
        w = tuple(w)
        return w in self._sets.get(len(w), ()) if len(w) else True

    @property
    def _sets(self):
        if not hasattr(self, "_cache"):
            self._cache = {k: set(v) for k, v in self.words.items()}
        return self._cache

    def count(self, n):
        return len(self.words.get(n, []))


def language_from_predicate(alphabet, member, max_len):
    words = {0: [()]}
    for n in range(1, max_len + 1):
        words[n] = [w + (c,) for w in words[n - 1] for c in alphabet if member(w + (c,))]
    return SubshiftLanguage(tuple(alphabet), max_len, words)


def beta_admissible(pb, w):
    """Every suffix of w is lexicographically <= the same-length prefix of the expansion."""
    d = pb.digits(len(w))
    return all(tuple(w[i:]) <= d[:len(w) - i] for i in range(len(w)))


def beta_language(pb, n):
    return language_from_predicate(tuple(range(pb.ceil)), lambda w: beta_admissible(pb, w), n)


def factor_complexity(source, n):
    """q(1..n) for a SubshiftLanguage or an omega-term."""
    if isinstance(source, SubshiftLanguage):
        if n > source.max_len:
            raise ValueError(f"language materialized only up to {source.max_len}")
        return [source.count(k) for k in range(1, n + 1)]
    facts = factors_upto(source, n)
    counts = [0] * n
    for f in facts:
        counts[len(f) - 1] += 1
    return counts


def entropy_estimate(counts, n):
    """(1/n) log2 q(n); the entropy is the infimum of these over n."""
    q = counts[n - 1]
    if q == 0:
        raise ValueError(f"q({n}) = 0")
    return math.log2(q) / n


def is_factorial(L, n=None):
    n = L.max_len if n is None else n
    for k in range(2, n + 1):
        for w in L.words.get(k, []):
            if w[1:] not in L or w[:-1] not in L:
                return False
    return True


def is_prolongable(L, n=None):
    """Every word of length < n extends by one letter on each side."""
    n = L.max_len if n is None else n
    for k in range(1, n):
        for w in L.words.get(k, []):
            if not any(w + (c,) in L for c in L.alphabet):
                return False
            if not any((c,) + w in L for c in L.alphabet):
                return False
    return True


def connector(L, s, t, n):
    """Shortest u with |u| <= n and s u t in L, or None."""
    limit = L.max_len - len(s) - len(t)
    for k in range(0, min(n, limit) + 1):
        for u in product(L.alphabet, repeat=k):
            if s + u + t in L:
                return u
    return None


def is_irreducible_at_scale(L, n, word_len=None):
    """Every pair of words of length <= word_len is connected by some |u| <= n."""
    m = word_len if word_len is not None else max(1, (L.max_len - n) // 2)
    ws = [w for k in range(1, m + 1) for w in L.words.get(k, [])]
    return all(connector(L, s, t, n) is not None for s in ws for t in ws)


def fibonacci(k):
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def complexity_rows(counts):
    return [(n, q, math.log2(q) / n if q else float("nan")) for n, q in enumerate(counts, 1)]
