"""One-sided Rhodes expansions cut down to generators, and unambiguous covers."""
from __future__ import annotations

from .semigroup import FiniteSemigroup, SemigroupError, ambiguity_witness


class CoverCapExceeded(SemigroupError):
    def __init__(self, S, rounds, size):
        super().__init__(f"{S.name}: still ambiguous after {rounds} expansion rounds (size {size})")
        self.rounds = rounds
        self.size = size


def _reduce(seq, eq):
    # keep the last element of every block of equivalent neighbours
    return tuple(x for i, x in enumerate(seq) if i == len(seq) - 1 or not eq(x, seq[i + 1]))


def rhodes_expansion(S, side):
    """Return (expansion, projection list).

    side="left": elements are strict R-chains of prefix values (fixes the R-order);
    side="right": elements are strict L-chains of suffix values (fixes the L-order).
    """
    if not S.generators:
        raise SemigroupError("rhodes_expansion needs a generator map")
    G = S.green
    mul = S.mul
    if side == "left":
        def eq(x, y):
            return G.R(x, y)

        def prod(c, d):
            last = c[-1]
            return _reduce(c + tuple(mul(last, x) for x in d), eq)
    elif side == "right":
        def eq(x, y):
            return G.L(x, y)

        def prod(c, d):
            last = d[-1]
            return _reduce(d + tuple(mul(x, last) for x in c), eq)
    else:
        raise ValueError("side must be 'left' or 'right'")

    letters = sorted(S.generators)
    gen_elems = [(S.generators[a],) for a in letters]
    elems = list(dict.fromkeys(gen_elems))
    index = {e: i for i, e in enumerate(elems)}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gen_elems:
            y = prod(x, g)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
        i += 1
    table = [[index[prod(x, y)] for y in elems] for x in elems]
    gens = {a: index[g] for a, g in zip(letters, gen_elems)}
    labels = ["<" + ",".join(S.labels[v] for v in e) + ">" for e in elems]
    E = FiniteSemigroup(table, gens, name=f"{S.name}/{side[0].upper()}", labels=labels, check=False)
    return E, [e[-1] for e in elems]


def unambiguous_cover(S, cap=8):
    """Alternate one-sided expansions until both Green orders are unambiguous.

    Returns (cover, projection, rounds).  Raises CoverCapExceeded past `cap`.
    """
    proj = list(range(S.size))
    cur = S
    rounds = 0
    side = None
    while True:
        w = ambiguity_witness(cur)
        if w is None:
            return cur, proj, rounds
        if rounds == cap:
            raise CoverCapExceeded(S, rounds, cur.size)
        if side is None:
            side = "right" if w[0] == "L" else "left"
        else:
            side = "left" if side == "right" else "right"
        cur, p = rhodes_expansion(cur, side)
        proj = [proj[x] for x in p]
        rounds += 1


def is_homomorphism(S, T, f):
    n = S.size
    return all(f[S.mul(x, y)] == T.mul(f[x], f[y]) for x in range(n) for y in range(n))
