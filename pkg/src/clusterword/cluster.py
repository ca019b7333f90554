"""Cluster words of normalized omega-terms as symbolic labeled linear orders.

A ClusterExpr presents the order of 2-factorizations minus its maximum;
the maximum (labeled 1) is implicit.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import islice

from . import ordertype as ot
from .omegaterm import Concat, Letter, Omega, concat, from_factors, is_normal, normalize, show

log = logging.getLogger(__name__)


class NotNormalized(ValueError):
    pass


class InvalidPosition(ValueError):
    pass


class ClusterExpr:
    __slots__ = ()


@dataclass(frozen=True)
class WordBlock(ClusterExpr):
    word: str
    term: object = field(default=None, compare=False)


@dataclass(frozen=True)
class Sum(ClusterExpr):
    left: ClusterExpr
    right: ClusterExpr
    term: object = field(default=None, compare=False)


@dataclass(frozen=True)
class OmegaBlock(ClusterExpr):
    """body·w + center + body·w*.

    bwd_body/bwd_base are only set when two centers were merged; the
    backward copies then use them.
    """
    body: ClusterExpr
    base: object
    jrep: object
    term: object = field(default=None, compare=False)
    bwd_body: ClusterExpr | None = None
    bwd_base: object = None

    @property
    def back(self):
        return self.body if self.bwd_body is None else self.bwd_body

    @property
    def back_base(self):
        return self.base if self.bwd_base is None else self.bwd_base


# -- positions -------------------------------------------------------------

@dataclass(frozen=True)
class InWord:
    i: int  # 1-based

    def __str__(self):
        return f"W{self.i}"


@dataclass(frozen=True)
class InLeft:
    def __str__(self):
        return "L"


@dataclass(frozen=True)
class InRight:
    def __str__(self):
        return "R"


@dataclass(frozen=True)
class FwdCopy:
    n: int | None  # None: every copy

    def __str__(self):
        return f"F{'n' if self.n is None else self.n}"


@dataclass(frozen=True)
class BwdCopy:
    n: int | None

    def __str__(self):
        return f"B{'n' if self.n is None else self.n}"


@dataclass(frozen=True)
class Center:
    def __str__(self):
        return "C"


@dataclass(frozen=True)
class Position:
    path: tuple

    def __str__(self):
        return ".".join(str(s) for s in self.path) if self.path else "max"

    @property
    def is_max(self):
        return not self.path

    @property
    def is_stationary(self):
        return bool(self.path) and isinstance(self.path[-1], Center)

    @property
    def is_step(self):
        return not self.is_stationary


MAX = Position(())
LEFT, RIGHT, CENTER = InLeft(), InRight(), Center()


# -- build -------------------------------------------------------------------

def _build(t):
    if isinstance(t, Letter):
        return WordBlock(t.a, t)
    if isinstance(t, Omega):
        body = _build(t.child)
        return OmegaBlock(body, t.child, Omega(t.child), t)
    parts = []
    run = []
    for c in t.children:
        if isinstance(c, Letter):
            run.append(c)
            continue
        if run:
            parts.append(WordBlock("".join(x.a for x in run), from_factors(run)))
            run = []
        parts.append(_build(c))
    if run:
        parts.append(WordBlock("".join(x.a for x in run), from_factors(run)))
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Sum(p, out, concat(p.term, out.term))
    return out


def _last_block(ce):
    while isinstance(ce, Sum):
        ce = ce.right
    return ce


def _first_block(ce):
    while isinstance(ce, Sum):
        ce = ce.left
    return ce


def _replace_last(ce, new):
    if isinstance(ce, Sum):
        right = _replace_last(ce.right, new)
        return Sum(ce.left, right, concat(ce.left.term, right.term)) if right is not None else ce.left
    return new


def _drop_first(ce):
    if isinstance(ce, Sum):
        left = _drop_first(ce.left)
        return Sum(left, ce.right, concat(left.term, ce.right.term)) if left is not None else ce.right
    return None


def merge_allowed(A, B, corpus, map_limit=4096):
    """Gate for identifying two adjacent centers: J-equivalent representatives
    and a connecting transition J-above both, under every letter map into
    every member and cover (finite evidence only; see build)."""
    from .corpus import CorpusMember, all_maps
    from .omegaterm import evaluate, letters
    tau = concat(A.jrep, B.jrep)
    alphabet = sorted(letters(tau))
    checked = 0
    for m in corpus:
        sgs = [m.S, m.cover] if isinstance(m, CorpusMember) else [m]
        for S in dict.fromkeys(x for x in sgs if x is not None):
            maps = all_maps(S, alphabet, map_limit)
            if not maps and S.generators and set(alphabet) <= set(S.generators):
                maps = [dict(S.generators)]
            G = S.green
            for phi in maps:
                x, y, t = (evaluate(z, S, phi) for z in (A.jrep, B.jrep, tau))
                if not (G.J(x, y) and G.leqJ[x, t] and G.leqJ[y, t]):
                    return False
                checked += 1
    return checked > 0


def _merge(ce, corpus):
    """Apply the absorption merge at Sum boundaries where the gate allows it."""
    if isinstance(ce, OmegaBlock):
        body = _merge(ce.body, corpus)
        return OmegaBlock(body, ce.base, ce.jrep, ce.term, ce.bwd_body, ce.bwd_base)
    if not isinstance(ce, Sum):
        return ce
    left, right = _merge(ce.left, corpus), _merge(ce.right, corpus)
    A, B = _last_block(left), _first_block(right)
    if isinstance(A, OmegaBlock) and isinstance(B, OmegaBlock) and merge_allowed(A, B, corpus):
        log.warning("merging adjacent centers %s and %s", show(A.jrep), show(B.jrep))
        merged = OmegaBlock(A.body, A.base, A.jrep, concat(A.term, B.term), B.back, B.back_base)
        left = _replace_last(left, merged)
        right = _drop_first(right)
        if right is None:
            return left
    return Sum(left, right, concat(left.term, right.term))


def build(t, corpus=None):
    """Cluster expression of a normalized term.

    With a corpus, adjacent centers that pass the merge gate are identified
    and the merge is logged.  The gate only sees finite evidence: conjugate
    powers such as (bab)^w (abb)^w pass it on the shipped corpus but fail in
    larger aperiodic semigroups, so callers pass a corpus only to study it.
    """
    if not is_normal(t):
        raise NotNormalized(f"{show(t)} is not in normal form (normal form: {show(normalize(t))})")
    ce = _build(t)
    if corpus is not None:
        ce = _merge(ce, corpus)
    return ce


def term_of(ce):
    return ce.term


# -- walking -----------------------------------------------------------------

def _node_at(ce, path):
    """Sub-expression addressed by a path prefix ending before a terminal step."""
    node = ce
    for st in path:
        if isinstance(st, InLeft):
            node = node.left
        elif isinstance(st, InRight):
            node = node.right
        elif isinstance(st, FwdCopy):
            node = node.body
        elif isinstance(st, BwdCopy):
            node = node.back
        else:
            raise InvalidPosition(str(st))
    return node


def validate(ce, pos):
    node = ce
    path = pos.path
    for k, st in enumerate(path):
        last = k == len(path) - 1
        if isinstance(node, WordBlock):
            if not (last and isinstance(st, InWord) and 1 <= st.i <= len(node.word)):
                raise InvalidPosition(str(pos))
            return
        if isinstance(node, Sum):
            if isinstance(st, InLeft):
                node = node.left
            elif isinstance(st, InRight):
                node = node.right
            else:
                raise InvalidPosition(str(pos))
        else:
            if isinstance(st, Center):
                if not last:
                    raise InvalidPosition(str(pos))
                return
            if isinstance(st, (FwdCopy, BwdCopy)) and st.n is not None and st.n >= 0:
                node = node.body if isinstance(st, FwdCopy) else node.back
            else:
                raise InvalidPosition(str(pos))
    if path:
        raise InvalidPosition(str(pos))


def _first(node):
    if isinstance(node, WordBlock):
        return (InWord(1),)
    if isinstance(node, Sum):
        return (LEFT,) + _first(node.left)
    return (FwdCopy(0),) + _first(node.body)


def _last(node):
    if isinstance(node, WordBlock):
        return (InWord(len(node.word)),)
    if isinstance(node, Sum):
        return (RIGHT,) + _last(node.right)
    return (BwdCopy(0),) + _last(node.back)


def _succ(node, path):
    st, rest = path[0], path[1:]
    if isinstance(node, WordBlock):
        return (InWord(st.i + 1),) if st.i < len(node.word) else None
    if isinstance(node, Sum):
        if isinstance(st, InLeft):
            s = _succ(node.left, rest)
            return (LEFT,) + s if s is not None else (RIGHT,) + _first(node.right)
        s = _succ(node.right, rest)
        return (RIGHT,) + s if s is not None else None
    if isinstance(st, Center):
        raise InvalidPosition("stationary points have no successor")
    if isinstance(st, FwdCopy):
        s = _succ(node.body, rest)
        return (st,) + s if s is not None else (FwdCopy(st.n + 1),) + _first(node.body)
    s = _succ(node.back, rest)
    if s is not None:
        return (st,) + s
    return (BwdCopy(st.n - 1),) + _first(node.back) if st.n > 0 else None


def _pred(node, path):
    st, rest = path[0], path[1:]
    if isinstance(node, WordBlock):
        return (InWord(st.i - 1),) if st.i > 1 else None
    if isinstance(node, Sum):
        if isinstance(st, InRight):
            s = _pred(node.right, rest)
            return (RIGHT,) + s if s is not None else (LEFT,) + _last(node.left)
        s = _pred(node.left, rest)
        return (LEFT,) + s if s is not None else None
    if isinstance(st, Center):
        raise InvalidPosition("stationary points have no predecessor")
    if isinstance(st, BwdCopy):
        s = _pred(node.back, rest)
        return (st,) + s if s is not None else (BwdCopy(st.n + 1),) + _last(node.back)
    s = _pred(node.body, rest)
    if s is not None:
        return (st,) + s
    return (FwdCopy(st.n - 1),) + _last(node.body) if st.n > 0 else None


def minimum(ce):
    return Position(_first(ce))


def successor(ce, pos):
    if pos.is_max:
        return None
    s = _succ(ce, pos.path)
    return MAX if s is None else Position(s)


def predecessor(ce, pos):
    if pos.is_max:
        return Position(_last(ce))
    s = _pred(ce, pos.path)
    return None if s is None else Position(s)


def _key(ce, pos):
    if pos.is_max:
        return ((1,),)
    out = [(0,)]
    for st in pos.path:
        if isinstance(st, InWord):
            out.append((st.i,))
        elif isinstance(st, InLeft):
            out.append((0,))
        elif isinstance(st, InRight):
            out.append((1,))
        elif isinstance(st, FwdCopy):
            out.append((0, st.n))
        elif isinstance(st, Center):
            out.append((1, 0))
        else:
            out.append((2, -st.n))
    return tuple(out)


def compare(ce, p, q):
    a, b = _key(ce, p), _key(ce, q)
    return (a > b) - (a < b)


def step_label(ce, pos):
    """Letter at a step point; "1" at the maximum."""
    if pos.is_max:
        return "1"
    validate(ce, pos)
    if pos.is_stationary:
        raise InvalidPosition(f"{pos} is stationary")
    node = _node_at(ce, pos.path[:-1])
    return node.word[pos.path[-1].i - 1]


def iter_from_left(ce):
    p = minimum(ce)
    while not p.is_max:
        yield p
        p = successor(ce, p)


def iter_from_right(ce):
    p = predecessor(ce, MAX)
    while p is not None:
        yield p
        p = predecessor(ce, p)


def window(ce, k, side="left"):
    """First (or last) k step labels; fewer when the order has fewer step points."""
    it = iter_from_left(ce) if side == "left" else iter_from_right(ce)
    labels = [step_label(ce, p) for p in islice(it, k)]
    return "".join(labels if side == "left" else labels[::-1])


def step_positions(ce, copies=2):
    """Step points whose copy indices are all < copies, in order."""
    def rec(node):
        if isinstance(node, WordBlock):
            return [(InWord(i),) for i in range(1, len(node.word) + 1)]
        if isinstance(node, Sum):
            return [(LEFT,) + p for p in rec(node.left)] + [(RIGHT,) + p for p in rec(node.right)]
        fwd = rec(node.body)
        bwd = rec(node.back)
        out = [(FwdCopy(n),) + p for n in range(copies) for p in fwd]
        out += [(BwdCopy(n),) + p for n in reversed(range(copies)) for p in bwd]
        return out
    return [Position(p) for p in rec(ce)]


# -- stationary points ---------------------------------------------------------

@dataclass(frozen=True)
class StationaryFamily:
    """Centers addressed by `path`; copy steps with n=None range over all n."""
    path: tuple
    jrep: object
    block: OmegaBlock = field(compare=False)

    def __str__(self):
        return f"{Position(self.path)} jrep {show(self.jrep)}"

    @property
    def copy_depth(self):
        return sum(isinstance(s, (FwdCopy, BwdCopy)) for s in self.path)


def stationary_points(ce):
    def rec(node):
        if isinstance(node, WordBlock):
            return []
        if isinstance(node, Sum):
            return [((LEFT,) + p, j, b) for p, j, b in rec(node.left)] + \
                   [((RIGHT,) + p, j, b) for p, j, b in rec(node.right)]
        out = [((CENTER,), node.jrep, node)]
        out += [((FwdCopy(None),) + p, j, b) for p, j, b in rec(node.body)]
        out += [((BwdCopy(None),) + p, j, b) for p, j, b in rec(node.back)]
        return out
    return [StationaryFamily(p, j, b) for p, j, b in rec(ce)]


def expand_family(fam, copies=2):
    """Concrete centers of a family with copy indices < copies."""
    out = [()]
    for st in fam.path:
        if isinstance(st, (FwdCopy, BwdCopy)) and st.n is None:
            out = [p + (type(st)(n),) for p in out for n in range(copies)]
        else:
            out = [p + (st,) for p in out]
    return [Position(p) for p in out]


# -- order types -----------------------------------------------------------------

def _type(node):
    if isinstance(node, WordBlock):
        return ot.OFin(len(node.word))
    if isinstance(node, Sum):
        return ot.OSum((_type(node.left), _type(node.right)))
    return ot.OSum((ot.OOmega(_type(node.body)), ot.OStat(), ot.OOmegaStar(_type(node.back))))


def type_without_max(ce):
    return ot.canonical(_type(ce))


def order_type(ce):
    """Canonical order type including the implicit maximum."""
    return ot.canonical(ot.OSum((_type(ce), ot.OFin(1))))


def order_type_report(ce):
    """Type of the expression followed by the explicit maximum."""
    return ot.show(type_without_max(ce)) + " + F(1)"


# -- axioms --------------------------------------------------------------------------

@dataclass(frozen=True)
class ClusterCheck:
    ok: bool
    axiom: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _empty_nodes(node, path=()):
    if isinstance(node, WordBlock):
        return [path] if not node.word else []
    if isinstance(node, Sum):
        return _empty_nodes(node.left, path + (LEFT,)) + _empty_nodes(node.right, path + (RIGHT,))
    out = _empty_nodes(node.body, path + (FwdCopy(None),))
    if node.bwd_body is not None:
        out += _empty_nodes(node.bwd_body, path + (BwdCopy(None),))
    return out


def _has_step(node):
    if isinstance(node, WordBlock):
        return bool(node.word)
    if isinstance(node, Sum):
        return _has_step(node.left) or _has_step(node.right)
    return _has_step(node.body) and _has_step(node.back)


def check_clustered(ce, copies=3):
    if not _has_step(ce) and isinstance(ce, WordBlock):
        return ClusterCheck(False, "C.1", "no minimum distinct from the maximum")
    empties = _empty_nodes(ce)
    if empties:
        return ClusterCheck(False, "C.4", f"empty block at {Position(empties[0])}")
    if not _has_step(ce):
        return ClusterCheck(False, "C.4", "a block without step points")
    try:
        if not minimum(ce).is_step:
            return ClusterCheck(False, "C.1", "minimum is not a step point")
        steps = step_positions(ce, copies)
        for p in steps:
            q = successor(ce, p)
            if compare(ce, p, q) >= 0:
                return ClusterCheck(False, "C.2", f"successor of {p} is not above it")
            if not q.is_max and predecessor(ce, q) != p:
                return ClusterCheck(False, "C.2", f"pred(succ({p})) != {p}")
            r = predecessor(ce, p)
            if r is not None and successor(ce, r) != p:
                return ClusterCheck(False, "C.3", f"succ(pred({p})) != {p}")
        if predecessor(ce, MAX) is None or successor(ce, predecessor(ce, MAX)) != MAX:
            return ClusterCheck(False, "C.3", "maximum has no predecessor")
        for p, q in zip(steps, steps[1:]):
            if compare(ce, p, q) >= 0:
                return ClusterCheck(False, "C.2", f"{p} and {q} out of order")
    except (InvalidPosition, AttributeError, IndexError) as e:
        return ClusterCheck(False, "C.2", f"walk failed: {e}")
    return ClusterCheck(True)


# -- isomorphism -----------------------------------------------------------------------

def _flat(node):
    if isinstance(node, Sum):
        return _flat(node.left) + _flat(node.right)
    if isinstance(node, WordBlock):
        return [("W", node.word)]
    return [("O", tuple(_flat(node.body)), tuple(_flat(node.back)))]


def structure_key(ce):
    out = []
    for item in _flat(ce):
        if item[0] == "W" and out and out[-1][0] == "W":
            out[-1] = ("W", out[-1][1] + item[1])
        else:
            out.append(item)
    return tuple(out)


def isomorphic(ce1, ce2):
    """Labels compared pointwise, centers by position only."""
    return structure_key(ce1) == structure_key(ce2)


# -- segments ----------------------------------------------------------------------------

START, END = "start", "end"


def _seg(node, p, q):
    """Factors presented by the points of node from p (inclusive) to q (exclusive)."""
    if isinstance(node, WordBlock):
        i = 0 if p == START else p[0].i - 1
        j = len(node.word) if q == END else q[0].i - 1
        return [Letter(c) for c in node.word[i:j]]
    if isinstance(node, Sum):
        ps = LEFT if p == START else p[0]
        qs = RIGHT if q == END else q[0]
        pr = START if p == START else p[1:]
        qr = END if q == END else q[1:]
        if isinstance(ps, InLeft) and isinstance(qs, InLeft):
            return _seg(node.left, pr, qr)
        if isinstance(ps, InRight):
            return _seg(node.right, pr, qr)
        return _seg(node.left, pr, END) + _seg(node.right, START, qr)
    fb, bb = node.base, node.back_base
    ps = FwdCopy(0) if p == START else p[0]
    pr = START if p == START else p[1:]
    if q == END:
        qs, qr = BwdCopy(-1), END
    else:
        qs, qr = q[0], q[1:]
    if isinstance(ps, FwdCopy):
        if isinstance(qs, FwdCopy):
            if qs.n == ps.n:
                return _seg(node.body, pr, qr)
            return _seg(node.body, pr, END) + [fb] * (qs.n - ps.n - 1) + _seg(node.body, START, qr)
        head = _seg(node.body, pr, END) + [Omega(fb)]
        if node.bwd_body is not None:
            head.append(Omega(bb))
        if isinstance(qs, Center):
            return head
        if qs.n < 0:
            return head
        return head + _seg(node.back, START, qr)
    if qs.n == ps.n:
        return _seg(node.back, pr, qr)
    if qs.n < 0:
        return _seg(node.back, pr, END) + [bb] * ps.n
    return _seg(node.back, pr, END) + [bb] * (ps.n - qs.n - 1) + _seg(node.back, START, qr)


def segment_term(ce, p, q):
    """Normalized term presented by the half-open interval [p, q[ of step points, or None."""
    if compare(ce, p, q) > 0:
        raise InvalidPosition(f"{p} > {q}")
    fs = _seg(ce, p.path, END if q.is_max else q.path)
    out = []
    for f in fs:
        if isinstance(f, Concat):
            out.extend(f.children)
        else:
            out.append(f)
    return normalize(from_factors(out)) if out else None


# -- diagrams -----------------------------------------------------------------------------

def diagram(ce):
    def rec(node):
        if isinstance(node, WordBlock):
            return node.word
        if isinstance(node, Sum):
            a, b = rec(node.left), rec(node.right)
            return a + (" " if not (isinstance(_last_block(node.left), WordBlock)
                                    and isinstance(_first_block(node.right), WordBlock)) else "") + b
        fwd, bwd = rec(node.body), rec(node.back)
        if isinstance(node.body, WordBlock) and node.bwd_body is None:
            return f"{fwd * 3}… • …{bwd * 3}"
        return f"{fwd} … ● … {bwd}"
    return rec(ce) + " |1"


def to_text(ce, indent=0):
    pad = "  " * indent
    if isinstance(ce, WordBlock):
        return f"{pad}WordBlock({ce.word})\n"
    if isinstance(ce, Sum):
        return f"{pad}Sum\n" + to_text(ce.left, indent + 1) + to_text(ce.right, indent + 1)
    s = f"{pad}OmegaBlock base {show(ce.base)} jrep {show(ce.jrep)}\n" + to_text(ce.body, indent + 1)
    if ce.bwd_body is not None:
        s += f"{pad}  backward\n" + to_text(ce.bwd_body, indent + 2)
    return s
