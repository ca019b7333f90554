"""Finite semigroups given by Cayley tables, Green structure and predicates."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels


class SemigroupError(ValueError):
    pass


class TableParseError(SemigroupError):
    pass


class AssociativityError(SemigroupError):
    def __init__(self, witness):
        x, y, z = witness
        super().__init__(f"not associative: ({x+1}*{y+1})*{z+1} != {x+1}*({y+1}*{z+1})")
        self.witness = witness


class FiniteSemigroup:
    """A semigroup on {0..n-1} with table[x, y] = xy.

    `generators` maps letters to element indices.  The fresh identity of S^I
    always gets index n in `ext` (the S^I table).
    """

    def __init__(self, table, generators=None, name="S", labels=None,
                 has_adjoined_identity=False, check=True):
        T = np.array(table, dtype=np.int32)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
            raise SemigroupError("table must be a nonempty square array")
        n = T.shape[0]
        if T.min() < 0 or T.max() >= n:
            bad = np.argwhere((T < 0) | (T >= n))[0]
            raise SemigroupError(f"entry at row {bad[0]+1}, column {bad[1]+1} out of range")
        T.setflags(write=False)
        self.table = T
        self.size = n
        self.name = name
        self.labels = list(labels) if labels is not None else [str(i + 1) for i in range(n)]
        self.has_adjoined_identity = has_adjoined_identity
        self.generators = dict(generators) if generators else None
        if self.generators:
            for a, g in self.generators.items():
                if not 0 <= g < n:
                    raise SemigroupError(f"generator {a}={g+1} out of range")
        if check:
            w = kernels.associativity_witness(self.ext[:n, :n].copy())
            if w is not None:
                raise AssociativityError(w)
            if self.generators and len(self.closure(self.generators.values())) != n:
                raise SemigroupError("generators do not generate the table")

    def __repr__(self):
        return f"FiniteSemigroup({self.name!r}, size={self.size})"

    def __eq__(self, other):
        return (isinstance(other, FiniteSemigroup) and self.size == other.size
                and np.array_equal(self.table, other.table)
                and self.generators == other.generators)

    def __hash__(self):
        return hash(self.digest)

    @cached_property
    def digest(self):
        h = hashlib.sha1(self.table.tobytes())
        h.update(repr(sorted((self.generators or {}).items())).encode())
        return h.hexdigest()[:12]

    @property
    def one(self):
        """Index of the adjoined identity in `ext`."""
        return self.size

    @cached_property
    def ext(self):
        """Table of S^I; the identity is index n."""
        n = self.size
        E = np.empty((n + 1, n + 1), dtype=np.int32)
        E[:n, :n] = self.table
        E[n, :] = np.arange(n + 1)
        E[:, n] = np.arange(n + 1)
        E.setflags(write=False)
        return E

    @cached_property
    def _ext_rows(self):
        return self.ext.tolist()

    def mul(self, x, y):
        """Product in S^I (either argument may be the identity index n)."""
        return self._ext_rows[x][y]

    def product(self, elems):
        r = self.one
        rows = self._ext_rows
        for e in elems:
            r = rows[r][e]
        return r

    @cached_property
    def one_label(self):
        # numeric labels already use "1"
        return "I" if "1" in self.labels else "1"

    def label(self, x):
        return self.one_label if x == self.size else self.labels[x]

    def closure(self, gens):
        gens = list(dict.fromkeys(int(g) for g in gens))
        seen = list(gens)
        found = set(seen)
        rows = self._ext_rows
        i = 0
        while i < len(seen):
            x = seen[i]
            for g in gens:
                z = rows[x][g]
                if z not in found:
                    found.add(z)
                    seen.append(z)
            i += 1
        return found

    def word_image(self, word):
        return self.product(self.generators[a] for a in word)

    @cached_property
    def omega_table(self):
        return [omega_power(self, s) for s in range(self.size)]

    @cached_property
    def green(self):
        return green(self)


def _parse_error(lineno, msg):
    return TableParseError(f"line {lineno}: {msg}")


def from_table(text, name="S"):
    """Parse a Cayley file: `n`, n rows of 1-based indices, optional `gens a=3 b=5`."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise TableParseError("empty file")
    lineno, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise _parse_error(lineno, f"expected the size, got {first!r}") from None
    if n <= 0:
        raise _parse_error(lineno, "size must be positive")
    if len(lines) < n + 1:
        raise TableParseError(f"expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for lineno, line in lines[1:n + 1]:
        parts = line.split()
        if len(parts) != n:
            raise _parse_error(lineno, f"expected {n} entries, found {len(parts)}")
        try:
            row = [int(p) for p in parts]
        except ValueError:
            raise _parse_error(lineno, "non-integer entry") from None
        for p in row:
            if not 1 <= p <= n:
                raise SemigroupError(f"line {lineno}: index {p} out of range 1..{n}")
        rows.append([p - 1 for p in row])
    gens = None
    for lineno, line in lines[n + 1:]:
        parts = line.split()
        if parts[0] != "gens":
            raise _parse_error(lineno, f"unexpected content {line!r}")
        gens = {}
        for item in parts[1:]:
            a, _, idx = item.partition("=")
            if len(a) != 1 or not a.islower() or not idx.isdigit():
                raise _parse_error(lineno, f"bad generator {item!r}")
            g = int(idx)
            if not 1 <= g <= n:
                raise SemigroupError(f"line {lineno}: generator index {g} out of range 1..{n}")
            gens[a] = g - 1
    return FiniteSemigroup(rows, gens, name=name)


def to_table(S):
    out = [str(S.size)]
    for row in S.table.tolist():
        out.append(" ".join(str(x + 1) for x in row))
    if S.generators:
        out.append("gens " + " ".join(f"{a}={g+1}" for a, g in sorted(S.generators.items())))
    return "\n".join(out) + "\n"


def from_transformations(maps, name="T"):
    """Transformation semigroup generated by maps on {1..k}, acting on the right.

    x*y means: apply x, then y.  Letters a, b, c, ... name the maps in order.
    """
    maps = [tuple(m) for m in maps]
    if not maps:
        raise SemigroupError("empty generator list")
    k = len(maps[0])
    for m in maps:
        if len(m) != k or not all(1 <= i <= k for i in m):
            raise SemigroupError("maps must be total functions on {1..k}")
    elems = []
    index = {}
    for m in maps:
        if m not in index:
            index[m] = len(elems)
            elems.append(m)
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in maps:
            y = tuple(g[j - 1] for j in x)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
        i += 1
    n = len(elems)
    table = [[index[tuple(y[j - 1] for j in x)] for y in elems] for x in elems]
    gens = {chr(ord("a") + i): index[m] for i, m in enumerate(maps)}
    labels = ["".join(map(str, e)) for e in elems]
    return FiniteSemigroup(table, gens, name=name, labels=labels, check=False)


def adjoin_identity(S):
    """S^I as a semigroup in its own right (always a fresh element)."""
    gens = dict(S.generators) if S.generators else None
    T = S.ext
    return FiniteSemigroup(T, gens, name=S.name + "^I", labels=S.labels + [S.one_label],
                           has_adjoined_identity=True, check=False)


def omega_power(S, s):
    seen = {}
    x = s
    k = 1
    while x not in seen:
        seen[x] = k
        x = S.mul(x, s)
        k += 1
    # x = s^k repeats s^j; the cycle is s^j .. s^(k-1)
    start = seen[x]
    cyc = [x]
    y = S.mul(x, s)
    while y != x:
        cyc.append(y)
        y = S.mul(y, s)
    for c in cyc:
        if S.mul(c, c) == c:
            return c
    raise AssertionError(f"no idempotent in the cycle of {s} (from power {start})")


def is_aperiodic(S):
    om = S.omega_table
    return all(S.mul(om[s], s) == om[s] for s in range(S.size))


def _partition(eq):
    m = eq.shape[0]
    seen = [False] * m
    out = []
    for i in range(m):
        if not seen[i]:
            cls = [int(j) for j in np.flatnonzero(eq[i])]
            for j in cls:
                seen[j] = True
            out.append(cls)
    return out


@dataclass(frozen=True)
class GreenData:
    """Green preorders and classes on S^I (the identity is index n)."""
    n: int
    leqR: np.ndarray
    leqL: np.ndarray
    leqJ: np.ndarray
    idempotents: tuple
    classesR: list = field(repr=False)
    classesL: list = field(repr=False)
    classesJ: list = field(repr=False)
    classesH: list = field(repr=False)
    classesD: list = field(repr=False)

    def R(self, s, t):
        return bool(self.leqR[s, t] and self.leqR[t, s])

    def L(self, s, t):
        return bool(self.leqL[s, t] and self.leqL[t, s])

    def J(self, s, t):
        return bool(self.leqJ[s, t] and self.leqJ[t, s])

    @property
    def j_index(self):
        idx = [0] * (self.n + 1)
        for k, cls in enumerate(self.classesJ):
            for x in cls:
                idx[x] = k
        return idx


def green(S):
    T = S.ext
    R = kernels.leq_right(T)
    L = kernels.leq_left(T)
    J = kernels.leq_two_sided(T)
    eqR, eqL, eqJ = R & R.T, L & L.T, J & J.T
    # D is the join of R and L; in a finite semigroup it coincides with J
    eqD = ((eqR.astype(np.int32) @ eqL.astype(np.int32)) > 0)
    idem = tuple(x for x in range(S.size + 1) if S.mul(x, x) == x)
    return GreenData(S.size, R, L, J, idem, _partition(eqR), _partition(eqL),
                     _partition(eqJ), _partition(eqR & eqL), _partition(eqD))


def ambiguity_witness(S):
    """(side, x, y, z): x below y and z for that side, with y, z incomparable."""
    G = S.green
    for side, leq in (("L", G.leqL), ("R", G.leqR)):
        w = kernels.ambiguity_witness(leq, S.size)
        if w is not None:
            return (side,) + tuple(int(v) for v in w)
    return None


def is_unambiguous(S):
    return ambiguity_witness(S) is None


def equidivisibility_witness(S):
    w = kernels.equidivisibility_witness(S.ext, S.size)
    return None if w is None else tuple(int(v) for v in w)


def is_equidivisible(S):
    return equidivisibility_witness(S) is None


def has_transition(S, x, y, u, v):
    """Some t in S^I with (xt = u and y = tv) or (x = ut and ty = v)."""
    for t in range(S.size + 1):
        if S.mul(x, t) == u and S.mul(t, v) == y:
            return True
        if S.mul(u, t) == x and S.mul(t, y) == v:
            return True
    return False


def is_stable(S):
    G = S.green
    eqJ = G.leqJ & G.leqJ.T
    okL = np.array_equal(eqJ & G.leqL, G.leqL & G.leqL.T)
    okR = np.array_equal(eqJ & G.leqR, G.leqR & G.leqR.T)
    return bool(okL and okR)


def is_group(S):
    n = S.size
    idem = [x for x in range(n) if S.mul(x, x) == x]
    if len(idem) != 1:
        return False
    e = idem[0]
    return all(any(S.mul(x, y) == e for y in range(n)) for x in range(n))
