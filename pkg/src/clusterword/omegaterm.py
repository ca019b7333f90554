"""omega-terms: parsing, printing, evaluation, normalization and finite factors."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import cached_property

log = logging.getLogger(__name__)


class TermSyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class UnmappedLetter(KeyError):
    pass


class OmegaTerm:
    __slots__ = ()

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Letter(OmegaTerm):
    a: str


@dataclass(frozen=True)
class Concat(OmegaTerm):
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("Concat needs at least two children")
        if any(isinstance(c, Concat) for c in self.children):
            raise ValueError("Concat children must not be Concat")


@dataclass(frozen=True)
class Omega(OmegaTerm):
    child: OmegaTerm

    @cached_property
    def body(self):
        return factors(self.child)


def factors(t):
    return t.children if isinstance(t, Concat) else (t,)


def from_factors(fs):
    fs = tuple(fs)
    if not fs:
        raise ValueError("empty term")
    return fs[0] if len(fs) == 1 else Concat(fs)


def concat(*parts):
    out = []
    for p in parts:
        out.extend(factors(p))
    return from_factors(out)


def word(w):
    return from_factors(Letter(c) for c in w)


def parse(text):
    """term := factor+ ; factor := letter | '(' term ')^w'  (blanks ignored)."""
    s = text
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def term():
        nonlocal pos
        fs = []
        while True:
            skip()
            if pos >= len(s) or s[pos] == ")":
                break
            c = s[pos]
            if "a" <= c <= "z":
                fs.append(Letter(c))
                pos += 1
            elif c == "(":
                pos += 1
                inner = term()
                skip()
                if not s.startswith(")^w", pos):
                    raise TermSyntaxError("expected ')^w'", pos)
                pos += 3
                fs.append(Omega(inner))
            else:
                raise TermSyntaxError(f"unexpected character {c!r}", pos)
        if not fs:
            raise TermSyntaxError("empty term", pos)
        return concat(*fs)

    t = term()
    skip()
    if pos != len(s):
        raise TermSyntaxError("unbalanced ')'", pos)
    return t


def show(t):
    if isinstance(t, Letter):
        return t.a
    if isinstance(t, Omega):
        return "(" + show(t.child) + ")^w"
    out = ""
    prev = None
    for c in t.children:
        if prev is not None and (isinstance(prev, Omega) or isinstance(c, Omega)):
            out += " "
        out += show(c)
        prev = c
    return out


def letters(t):
    if isinstance(t, Letter):
        return {t.a}
    if isinstance(t, Omega):
        return letters(t.child)
    return set().union(*(letters(c) for c in t.children))


def depth(t):
    """Omega nesting depth."""
    if isinstance(t, Letter):
        return 0
    if isinstance(t, Omega):
        return 1 + depth(t.child)
    return max(depth(c) for c in t.children)


def size(t):
    """Number of characters of the printed form without blanks."""
    if isinstance(t, Letter):
        return 1
    if isinstance(t, Omega):
        return size(t.child) + 4
    return sum(size(c) for c in t.children)


def is_finite(t):
    return depth(t) == 0


def evaluate(t, S, phi, _memo=None):
    """Image of t in S under the letter map phi (Omega -> omega power)."""
    memo = {} if _memo is None else _memo
    if t in memo:
        return memo[t]
    if isinstance(t, Letter):
        if t.a not in phi:
            raise UnmappedLetter(t.a)
        r = phi[t.a]
    elif isinstance(t, Omega):
        r = S.omega_table[evaluate(t.child, S, phi, memo)]
    else:
        r = S.one
        for c in t.children:
            r = S.mul(r, evaluate(c, S, phi, memo))
    memo[t] = r
    return r


# -- normalization -----------------------------------------------------------

def absorbs_right(g, f):
    """Syntactic proof that g f = g for single factors g, f."""
    if not isinstance(g, Omega):
        return False
    b = g.body
    return f == g or b == (f,) or absorbs_right(b[-1], f)


def absorbs_left(g, f):
    """Syntactic proof that f g = g."""
    if not isinstance(g, Omega):
        return False
    b = g.body
    return f == g or b == (f,) or absorbs_left(b[0], f)


def _absorbs_all_right(g, v):
    return all(absorbs_right(g, f) for f in v)


def _absorbs_all_left(g, v):
    return all(absorbs_left(g, f) for f in v)


def _left_periods(h):
    """Factor tuples p with p h = h (syntactically)."""
    out = []
    while isinstance(h, Omega):
        out.append(h.body)
        h = h.body[0]
    return out


def _right_periods(h):
    """Factor tuples p with h p = h."""
    out = []
    while isinstance(h, Omega):
        out.append(h.body)
        h = h.body[-1]
    return out


def _gap_right(g, mid, h):
    """g mid h = g h: h = v mid h with g v = g."""
    k = len(mid)
    return k > 0 and any(k < len(b) and b[-k:] == mid and _absorbs_all_right(g, b[:-k])
                         for b in _left_periods(h))


def _gap_left(h, mid, g):
    """h mid g = h g: h = h mid v with v g = g."""
    k = len(mid)
    return k > 0 and any(k < len(b) and b[:k] == mid and _absorbs_all_left(g, b[k:])
                         for b in _right_periods(h))


def _gap(g, mid, h):
    return _gap_right(g, mid, h) or _gap_left(g, mid, h)


def _root(b):
    n = len(b)
    for d in range(1, n):
        if n % d == 0 and b == b[:d] * (n // d):
            return b[:d]
    return None


def _rules_at(fs, i):
    """First rule applying at index i of the factor list fs: (name, new list) or None."""
    f = fs[i]
    n = len(fs)
    if isinstance(f, Omega):
        b = f.body
        if len(b) == 1 and isinstance(b[0], Omega):
            return "R1", fs[:i] + (b[0],) + fs[i + 1:]
        r = _root(b)
        if r is not None:
            return "R4", fs[:i] + (Omega(from_factors(r)),) + fs[i + 1:]
        if i + 1 < n and fs[i + 1] == f:
            return "R2", fs[:i + 1] + fs[i + 2:]
        if fs[i + 1:i + 1 + len(b)] == b:
            return "R3", fs[:i + 1] + fs[i + 1 + len(b):]
        if i + 1 < n and absorbs_right(b[-1], fs[i + 1]):
            return "A-right", fs[:i + 1] + fs[i + 2:]
        for k in range(len(b) - 1, 0, -1):
            x = b[:k]
            if fs[i + 1:i + 1 + k] == x:
                y = b[k:]
                return "R5", fs[:i] + x + (Omega(from_factors(y + x)),) + fs[i + 1 + k:]
        if len(b) >= 2 and absorbs_right(b[-1], b[0]):
            return "S-left", fs[:i] + (b[0], Omega(from_factors(b[1:]))) + fs[i + 1:]
        if len(b) >= 2 and absorbs_left(b[0], b[-1]):
            return "S-right", fs[:i] + (Omega(from_factors(b[:-1])), b[-1]) + fs[i + 1:]
        # (P F)^w = P^w F when the last and first factors of P swallow F
        for k in range(1, len(b) - 1):
            P, F = b[:-k], b[-k:]
            if _gap(P[-1], F, P[0]):
                return "C-right", fs[:i] + (Omega(from_factors(P)),) + F + fs[i + 1:]
            F, P = b[:k], b[k:]
            if _gap(P[-1], F, P[0]):
                return "C-left", fs[:i] + F + (Omega(from_factors(P)),) + fs[i + 1:]
        for j in range(i + 2, n):
            if _gap_left(f, fs[i + 1:j], fs[j]):
                return "G-left", fs[:i + 1] + fs[j:]
    for j in range(i + 1, n):
        g = fs[j]
        if isinstance(g, Omega) and j - i == len(g.body) and fs[i:j] == g.body:
            return "R3", fs[:i] + fs[j:]
    if i + 1 < n and isinstance(fs[i + 1], Omega) and absorbs_left(fs[i + 1].body[0], f):
        return "A-left", fs[:i] + fs[i + 1:]
    if isinstance(f, Omega):
        for j in range(i + 2, n):
            if _gap_right(f, fs[i + 1:j], fs[j]):
                return "G-right", fs[:i + 1] + fs[j:]
    return None


def _step(fs):
    for i, f in enumerate(fs):
        if isinstance(f, Omega):
            inner = _step(f.body)
            if inner is not None:
                name, new = inner
                return name, fs[:i] + (Omega(from_factors(new)),) + fs[i + 1:]
    for i in range(len(fs)):
        hit = _rules_at(fs, i)
        if hit is not None:
            return hit
    return None


def normalize(t, trace=None):
    """Rewrite innermost-first, leftmost, until no rule applies.

    R1-R5 are the aperiodic identities; "A-left/A-right" delete a factor
    absorbed by a neighbouring omega power, "S-left/S-right" pull an absorbed
    end factor out of an omega power, "G-left/G-right" delete a gap g u h = g h
    and "C-left/C-right" pull a gap out of a cyclic body.  `trace` collects
    rule names.
    """
    fs = factors(t)
    while True:
        hit = _step(fs)
        if hit is None:
            return from_factors(fs)
        name, fs = hit
        if trace is not None:
            trace.append(name)


def is_normal(t):
    return normalize(t) == t


# -- finite factors ----------------------------------------------------------

@dataclass(frozen=True)
class _Profile:
    facts: frozenset
    pre: str
    suf: str
    finite: bool
    word: str | None


def _subwords(w, n):
    return {w[i:j] for i in range(len(w)) for j in range(i + 1, min(len(w), i + n) + 1)}


def _combine(p, q, n):
    facts = p.facts | q.facts | _subwords(p.suf + q.pre, n)
    pre = (p.pre + q.pre)[:n]
    suf = (p.suf + q.suf)[-n:] if n else ""
    fin = p.finite and q.finite
    return _Profile(frozenset(facts), pre, suf, fin, p.word + q.word if fin else None)


def _profile(t, n):
    if isinstance(t, Letter):
        return _Profile(frozenset({t.a}) if n else frozenset(), t.a[:n], t.a[:n] if n else "", True, t.a)
    if isinstance(t, Concat):
        p = _profile(t.children[0], n)
        for c in t.children[1:]:
            p = _combine(p, _profile(c, n), n)
        return p
    u = _profile(t.child, n)
    if u.finite:
        w = u.word * (n // len(u.word) + 2)
        return _Profile(frozenset(_subwords(w, n)), w[:n], w[-n:] if n else "", False, None)
    uu = _combine(u, u, n)
    return _Profile(uu.facts, uu.pre, uu.suf, False, None)


def factors_upto(t, n):
    """All finite factors of t of length 1..n."""
    return set(_profile(t, n).facts)


def finite_prefix(t, k):
    p = _profile(t, k)
    if p.finite and len(p.word) < k:
        raise ValueError(f"term has length {len(p.word)} < {k}")
    return p.pre


def finite_suffix(t, k):
    p = _profile(t, k)
    if p.finite and len(p.word) < k:
        raise ValueError(f"term has length {len(p.word)} < {k}")
    return p.suf


def first_letter(t):
    return finite_prefix(t, 1)


def last_letter(t):
    return finite_suffix(t, 1)


def unroll(t, m):
    """Finite word obtained by replacing every omega power by an m-th power."""
    if isinstance(t, Letter):
        return t.a
    if isinstance(t, Omega):
        return unroll(t.child, m) * m
    return "".join(unroll(c, m) for c in t.children)


# -- oracle --------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    kind: str                # "DISTINCT" or "INDISTINGUISHABLE_AT_SCALE"
    witness: tuple | None = None   # (S, phi, value1, value2)
    checked: int = 0

    @property
    def distinct(self):
        return self.kind == "DISTINCT"


def _candidate_maps(members, alphabet, map_limit):
    from .corpus import CorpusMember, all_maps
    for m in members:
        sgs = [m.S] + ([m.cover] if m.cover is not None and m.cover is not m.S else []) \
            if isinstance(m, CorpusMember) else [m]
        for S in sgs:
            if S.generators and alphabet <= set(S.generators):
                yield S, {a: S.generators[a] for a in sorted(alphabet)}
        S = sgs[0]
        for phi in all_maps(S, sorted(alphabet), map_limit):
            yield S, phi


def equal_oracle(t1, t2, corpus, map_limit=4096):
    """DISTINCT with a witness map, or INDISTINGUISHABLE_AT_SCALE."""
    if not corpus:
        raise ValueError("empty corpus")
    alphabet = letters(t1) | letters(t2)
    count = 0
    for S, phi in _candidate_maps(corpus, alphabet, map_limit):
        v1, v2 = evaluate(t1, S, phi), evaluate(t2, S, phi)
        count += 1
        if v1 != v2:
            return Verdict("DISTINCT", (S, phi, v1, v2), count)
    return Verdict("INDISTINGUISHABLE_AT_SCALE", None, count)


# -- sampling ------------------------------------------------------------------

def random_term(rng, alphabet="ab", max_depth=2, max_factors=3):
    """Random omega-term with nesting depth <= max_depth."""
    k = rng.randint(1, max_factors)
    fs = []
    for _ in range(k):
        if max_depth > 0 and rng.random() < 0.45:
            fs.append(Omega(random_term(rng, alphabet, max_depth - 1, max_factors)))
        else:
            fs.append(Letter(rng.choice(alphabet)))
    return concat(*fs)


def sample_terms(seed, count, alphabet="ab", max_depth=2, infinite_only=False):
    """Distinct normalized terms, deterministic in the seed."""
    rng = random.Random(seed)
    out = []
    seen = set()
    tries = 0
    while len(out) < count and tries < 100 * count:
        tries += 1
        t = normalize(random_term(rng, alphabet, max_depth))
        if t in seen or (infinite_only and is_finite(t)):
            continue
        seen.add(t)
        out.append(t)
    return out


def rule_instance(rule, x, y=None, n=2):
    """(lhs, rhs) of a rewrite rule instantiated with subterms x, y."""
    if rule == "R1":
        return Omega(Omega(x)), Omega(x)
    if rule == "R2":
        return concat(Omega(x), Omega(x)), Omega(x)
    if rule == "R3a":
        return concat(x, Omega(x)), Omega(x)
    if rule == "R3b":
        return concat(Omega(x), x), Omega(x)
    if rule == "R4":
        return Omega(concat(*([x] * n))), Omega(x)
    if rule == "R5":
        return concat(Omega(concat(x, y)), x), concat(x, Omega(concat(y, x)))
    raise ValueError(rule)
