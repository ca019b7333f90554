"""Curated fixtures and the seeded corpus of {a,b}-generated aperiodic semigroups."""
from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass
from itertools import product

from .expansion import CoverCapExceeded, unambiguous_cover
from .semigroup import FiniteSemigroup, from_transformations, is_aperiodic, is_unambiguous

log = logging.getLogger(__name__)


def _band(name, elems, reduce):
    """Semigroup on words over {a,b} given by a normal-form function."""
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[reduce(x + y)] for y in elems] for x in elems]
    return FiniteSemigroup(table, {"a": index["a"], "b": index["b"]}, name=name, labels=elems)


def _squeeze(w):
    out = []
    for c in w:
        if not out or out[-1] != c:
            out.append(c)
    return "".join(out)


def u2():
    """{e, z}: e idempotent, z zero; a -> z, b -> e."""
    return FiniteSemigroup([[0, 1], [1, 1]], {"a": 1, "b": 0}, name="U2", labels=["e", "z"])


def free_band2():
    def nf(w):
        w = _squeeze(w)
        if len(w) <= 2:
            return w
        return w[:2] + (w[0] if w[0] == w[-1] else "")
    return _band("B2", ["a", "b", "ab", "ba", "aba", "bab"], nf)


def left_regular_band2():
    return _band("LRB2", ["a", "b", "ab", "ba"], lambda w: "".join(dict.fromkeys(w)))


def right_regular_band2():
    return _band("RRB2", ["a", "b", "ab", "ba"],
                 lambda w: "".join(dict.fromkeys(w[::-1]))[::-1])


def rectangular_band2():
    return _band("RECT2", ["a", "b", "ab", "ba"],
                 lambda w: w[0] if w[0] == w[-1] else w[0] + w[-1])


def semilattice2():
    return _band("SL2", ["a", "b", "ab"], lambda w: "".join(sorted(set(w))))


def left_zero2():
    return _band("LZ2", ["a", "b"], lambda w: w[0])


def right_zero2():
    return _band("RZ2", ["a", "b"], lambda w: w[-1])


# minimal automata of star-free languages over {a, b}; letter actions on states 1..k
STAR_FREE = {
    "SYN_A*abA*": [(2, 2, 3), (1, 3, 3)],
    "SYN_(ab)+": [(2, 4, 2, 4), (4, 3, 4, 4)],
    "SYN_a*b*": [(1, 3, 3), (2, 2, 3)],
    "SYN_A*ab": [(2, 2, 2), (1, 3, 1)],
    "SYN_b*ab*": [(2, 3, 3), (1, 2, 3)],
    "SYN_A*aA*aA*aA*": [(2, 3, 4, 4), (1, 2, 3, 4)],
}


def syntactic(name):
    S = from_transformations(STAR_FREE[name], name=name)
    return S


def fixtures():
    out = [u2(), free_band2(), left_regular_band2(), right_regular_band2(),
           rectangular_band2(), semilattice2(), left_zero2(), right_zero2()]
    out += [syntactic(k) for k in STAR_FREE]
    return out


def fixture(name):
    for S in fixtures():
        if S.name.lower() == name.lower():
            return S
    raise KeyError(name)


@dataclass
class CorpusMember:
    S: FiniteSemigroup
    cover: FiniteSemigroup | None
    projection: list | None
    rounds: int
    cap_report: str | None = None

    @property
    def name(self):
        return self.S.name

    @property
    def unambiguous(self):
        """The member itself when unambiguous, else its cover."""
        return self.cover


def random_member(rng, max_size, name):
    while True:
        k = rng.randint(2, 4)
        maps = [tuple(rng.randint(1, k) for _ in range(k)) for _ in range(2)]
        S = from_transformations(maps, name=name)
        if S.size <= max_size and S.size >= 2 and is_aperiodic(S):
            return S


def corpus(seed=1, max_size=10, count=20, cap=8):
    """Fixtures of size <= max_size followed by `count` random members.

    Every member carries its unambiguous cover (or a cap report).
    """
    rng = random.Random(seed)
    members = [S for S in fixtures() if S.size <= max_size]
    seen = {(S.table.tobytes(), tuple(sorted(S.generators.items()))) for S in members}
    n_fix = len(members)
    attempts = 0
    while len(members) - n_fix < count:
        S = random_member(rng, max_size, f"R{seed}_{len(members)}")
        attempts += 1
        key = (S.table.tobytes(), tuple(sorted(S.generators.items())))
        if key in seen and attempts < 1000:
            continue
        seen.add(key)
        members.append(S)
    out = []
    for S in members:
        try:
            C, p, r = unambiguous_cover(S, cap=cap)
            out.append(CorpusMember(S, C, p, r))
        except CoverCapExceeded as e:
            log.warning("cover cap reached: %s", e)
            out.append(CorpusMember(S, None, None, e.rounds, str(e)))
    return out


def all_maps(S, letters, limit=4096):
    """Every map letters -> S, in lexicographic order, when there are few enough."""
    if S.size ** len(letters) > limit:
        return []
    return [dict(zip(letters, img)) for img in product(range(S.size), repeat=len(letters))]


def language_semigroup(regex, name=None, alphabet="ab", depth=6, test_len=4):
    """Transition semigroup of the automaton of a regular language, states
    found by comparing residuals on test suffixes up to test_len."""
    rx = re.compile(regex)
    words = [""] + ["".join(w) for n in range(1, depth + 1) for w in product(alphabet, repeat=n)]
    tests = [w for w in words if len(w) <= test_len]

    def sig(w):
        return tuple(rx.fullmatch(w + t) is not None for t in tests)
    states = {}
    reps = []
    for w in words:
        k = sig(w)
        if k not in states:
            states[k] = len(reps)
            reps.append(w)
    maps = [tuple(states[sig(w + c)] + 1 for w in reps) for c in alphabet]
    return from_transformations(maps, name=name or f"LANG_{regex}")


def separators():
    """Small aperiodic semigroups of the languages p q* and q* p (|p| <= 2)."""
    out = []
    for p in ["a", "b", "aa", "ab", "ba", "bb"]:
        for q in "ab":
            for rx in (p + q + "*", q + "*" + p):
                S = language_semigroup(rx)
                if is_aperiodic(S):
                    out.append(S)
    return out


def worthy_pairs(members):
    """recognition_pairs of the members followed by the separators' covers."""
    out = recognition_pairs(members)
    for S in separators():
        C, _, _ = unambiguous_cover(S)
        out.append((C, dict(C.generators)))
    return out


def recognition_pairs(members):
    """(S, phi) pairs with S unambiguous and aperiodic: members' covers."""
    out = []
    for m in members:
        if m.cover is not None and is_unambiguous(m.cover):
            out.append((m.cover, dict(m.cover.generators)))
    return out
