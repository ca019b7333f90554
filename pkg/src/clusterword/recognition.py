"""Recognition of cluster words by finite semigroups: canonical recognizers,
the R.1-R.4 checker, a brute-force recognizer search and the worthy conditions."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .cluster import (MAX, BwdCopy, Center, FwdCopy, InLeft, InRight, InWord, OmegaBlock, Position,
                      Sum, WordBlock, build, minimum, segment_term,
                      stationary_points, step_label, step_positions, successor)
from .factorization import HypothesisError, has_nontrivial_stabilizer
from .omegaterm import evaluate, last_letter, show
from .semigroup import is_aperiodic, is_unambiguous

log = logging.getLogger(__name__)


class SearchCapExceeded(RuntimeError):
    pass


def stabilization_index(S, b):
    """Least n >= 1 with b^n equal to the omega power of b."""
    e = S.omega_table[b]
    x, n = b, 1
    while x != e:
        x = S.mul(x, b)
        n += 1
        if n > S.size + 1:
            raise HypothesisError(f"{S.name}: powers of {S.label(b)} do not stabilize (not aperiodic)")
    return n


# -- canonical recognizer ------------------------------------------------------------

@dataclass
class RWord:
    node: WordBlock
    values: list          # pair (x, y) per position


@dataclass
class RSum:
    node: Sum
    left: object
    right: object


@dataclass
class ROmega:
    node: OmegaBlock
    n0: int               # copies n >= n0 of the forward part use fwd_tail
    fwd: list
    fwd_tail: object
    m0: int
    bwd: list
    bwd_tail: object
    center: tuple


@dataclass
class Recognizer:
    ce: object
    S: object
    phi: dict
    s: int                # eval of the presented term
    root: object
    max_value: tuple

    def value(self, pos):
        if pos.is_max:
            return self.max_value
        return _value_at(self.root, pos.path)

    def rec_at(self, path):
        """Recognizer subtree reached by a path of container steps."""
        r = self.root
        for st in path:
            r = _child(r, st)
        return r


def _child(r, st):
    if isinstance(st, InLeft):
        return r.left
    if isinstance(st, InRight):
        return r.right
    if isinstance(st, FwdCopy):
        return r.fwd[st.n] if st.n < r.n0 else r.fwd_tail
    if isinstance(st, BwdCopy):
        return r.bwd[st.n] if st.n < r.m0 else r.bwd_tail
    raise ValueError(st)


def _value_at(r, path):
    for k, st in enumerate(path):
        if isinstance(st, InWord):
            return r.values[st.i - 1]
        if isinstance(st, Center):
            return r.center
        r = _child(r, st)
    raise ValueError("incomplete path")


class _Ctx:
    def __init__(self, S, phi):
        self.S = S
        self.phi = phi
        self.memo = {}

    def ev(self, term):
        return evaluate(term, self.S, self.phi, self.memo)


def _canon(ctx, node, L, R):
    S = ctx.S
    mul = S.mul
    if isinstance(node, WordBlock):
        imgs = [ctx.phi[c] for c in node.word]
        vals = []
        for i in range(len(imgs)):
            vals.append((S.product([L] + imgs[:i]), S.product(imgs[i:] + [R])))
        return RWord(node, vals)
    if isinstance(node, Sum):
        a, b = ctx.ev(node.left.term), ctx.ev(node.right.term)
        return RSum(node, _canon(ctx, node.left, L, mul(b, R)), _canon(ctx, node.right, mul(L, a), R))
    bf, bb = ctx.ev(node.base), ctx.ev(node.back_base)
    ef, eb = S.omega_table[bf], S.omega_table[bb]
    e = mul(ef, eb)
    n0, m0 = stabilization_index(S, bf), stabilization_index(S, bb)
    fwd, p = [], L
    for _ in range(n0):
        fwd.append(_canon(ctx, node.body, p, mul(e, R)))
        p = mul(p, bf)
    fwd_tail = _canon(ctx, node.body, mul(L, ef), mul(e, R))
    bwd, q = [], R
    for _ in range(m0):
        bwd.append(_canon(ctx, node.back, mul(L, e), q))
        q = mul(bb, q)
    bwd_tail = _canon(ctx, node.back, mul(L, e), mul(eb, R))
    return ROmega(node, n0, fwd, fwd_tail, m0, bwd, bwd_tail, (mul(L, ef), mul(eb, R)))


def canonical_recognizer(ce, S, phi):
    """g(u, v) = (image of u, image of v), with infinite families kept
    eventually constant."""
    ctx = _Ctx(S, phi)
    s = ctx.ev(ce.term)
    root = _canon(ctx, ce, S.one, S.one)
    return Recognizer(ce, S, dict(phi), s, root, (s, S.one))


# -- checker -------------------------------------------------------------------------

def _all_values(r):
    if isinstance(r, RWord):
        return set(r.values)
    if isinstance(r, RSum):
        return _all_values(r.left) | _all_values(r.right)
    out = {r.center} | _all_values(r.fwd_tail) | _all_values(r.bwd_tail)
    for x in r.fwd + r.bwd:
        out |= _all_values(x)
    return out


def _step_values(r):
    """Values at step points only (centers excluded)."""
    if isinstance(r, RWord):
        return set(r.values)
    if isinstance(r, RSum):
        return _step_values(r.left) | _step_values(r.right)
    out = _step_values(r.fwd_tail) | _step_values(r.bwd_tail)
    for x in r.fwd + r.bwd:
        out |= _step_values(x)
    return out


def _omega_recs(r):
    if isinstance(r, RWord):
        return []
    if isinstance(r, RSum):
        return _omega_recs(r.left) + _omega_recs(r.right)
    out = [r]
    for x in r.fwd + r.bwd + [r.fwd_tail, r.bwd_tail]:
        out += _omega_recs(x)
    return out


def _max_copies(r):
    if isinstance(r, RWord):
        return 0
    if isinstance(r, RSum):
        return max(_max_copies(r.left), _max_copies(r.right))
    inner = max(_max_copies(x) for x in r.fwd + r.bwd + [r.fwd_tail, r.bwd_tail])
    return max(r.n0, r.m0, inner)


@dataclass
class CofinalValueSet:
    center: object
    left_set: frozenset
    right_set: frozenset

    @property
    def balanced(self):
        return self.left_set == self.right_set


def _fg_of(r, center=None):
    return CofinalValueSet(center, frozenset(_step_values(r.fwd_tail)), frozenset(_step_values(r.bwd_tail)))


def fg(rec, center):
    """Left and right cofinal value sets at a concrete center position."""
    r = rec.rec_at(center.path[:-1])
    return _fg_of(r, center)


def fg_all(rec):
    return [_fg_of(r) for r in _omega_recs(rec.root)]


def recognizer_failures(rec, s):
    """Violations of R.1-R.4 (and of x*y = s) for the assignment rec and target s."""
    S = rec.S
    ce = rec.ce
    out = []
    first = rec.value(minimum(ce))
    if first != (S.one, s):
        out.append(("R.1", first))
    if rec.max_value != (s, S.one):
        out.append(("R.2", rec.max_value))
    for v in _all_values(rec.root):
        if S.mul(*v) != s:
            out.append(("value", v))
            break
    N = _max_copies(rec.root) + 2
    for p in step_positions(ce, N):
        q = successor(ce, p)
        a = rec.phi[step_label(ce, p)]
        (x, y), (x2, y2) = rec.value(p), rec.value(q)
        if S.mul(x, a) != x2 or S.mul(a, y2) != y:
            out.append(("R.3", (str(p), str(q))))
            break
    for r in _omega_recs(rec.root):
        c = _fg_of(r)
        if not c.balanced:
            out.append(("R.4", show(r.node.term)))
            break
    return out


_HYP = {}


def _require(S):
    ok = _HYP.get(S.digest)
    if ok is None:
        ok = _HYP[S.digest] = (is_unambiguous(S), is_aperiodic(S))
    if not ok[0]:
        raise HypothesisError(f"{S.name} is not unambiguous")
    if not ok[1]:
        raise HypothesisError(f"{S.name} is not aperiodic")


_CACHE = {}


def _canonical_status(ce, S, phi):
    key = (id(ce), S.digest, tuple(sorted(phi.items())))
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is ce:
        return hit[1], hit[2]
    rec = canonical_recognizer(ce, S, phi)
    fails = recognizer_failures(rec, rec.s)
    if len(_CACHE) > 4096:
        _CACHE.clear()
    _CACHE[key] = (ce, rec, fails)
    return rec, fails


def verify_recognition(ce, S, phi, s):
    """Is the cluster word recognized by (phi, s)?  The canonical recognizer is
    checked once; with another target, R.1 and R.2 fail."""
    _require(S)
    rec, fails = _canonical_status(ce, S, phi)
    if fails:
        log.warning("canonical recognizer of %s in %s fails: %s", show(ce.term), S.name, fails[:2])
        return False
    return s == rec.s


def recognized_set(ce, S, phi):
    """All s in S recognizing the cluster word (one canonical run serves every s)."""
    _require(S)
    rec, fails = _canonical_status(ce, S, phi)
    return [] if fails else [rec.s]


# -- brute-force search ----------------------------------------------------------------

@dataclass(frozen=True)
class Profile:
    first: tuple
    last: tuple
    vals: frozenset


class _Search:
    def __init__(self, S, phi, s, family_bound, cap):
        self.S, self.phi, self.s = S, phi, s
        self.bound = family_bound
        self.cap = cap
        self.states = 0
        m = S.size + 1
        self.verts = [(u, v) for u in range(m) for v in range(m) if S.mul(u, v) == s]
        self.vset = set(self.verts)
        self.succ = {}
        for a, g in phi.items():
            d = {}
            for (x, y) in self.verts:
                x2 = S.mul(x, g)
                d[(x, y)] = [(x2, y2) for y2 in range(m) if S.mul(g, y2) == y and (x2, y2) in self.vset]
            self.succ[a] = d

    def tick(self, k=1):
        self.states += k
        if self.states > self.cap:
            raise SearchCapExceeded(f"more than {self.cap} search states")

    def edge(self, p, a, q):
        return q in self.succ[a][p]

    def profiles(self, node):
        """dict Profile -> witness for assignments of node satisfying the
        internal conditions."""
        if isinstance(node, WordBlock):
            out = {}
            w = node.word

            def dfs(seq):
                self.tick()
                if len(seq) == len(w):
                    pr = Profile(seq[0], seq[-1], frozenset(seq))
                    out.setdefault(pr, tuple(seq))
                    return
                for nxt in self.succ[w[len(seq) - 1]][seq[-1]]:
                    dfs(seq + [nxt])
            for v in self.verts:
                dfs([v])
            return out
        if isinstance(node, Sum):
            A, B = self.profiles(node.left), self.profiles(node.right)
            a = last_letter(node.left.term)
            out = {}
            for pa, wa in A.items():
                for pb, wb in B.items():
                    self.tick()
                    if self.edge(pa.last, a, pb.first):
                        out.setdefault(Profile(pa.first, pb.last, pa.vals | pb.vals), (wa, wb))
            return out
        P = self.profiles(node.body)
        Q = P if node.bwd_body is None else self.profiles(node.bwd_body)
        a = last_letter(node.body.term)
        b = last_letter(node.back.term)
        # forward part: P_0 ... P_{k-1} T T T ...
        fwd = {}
        for t, wt in P.items():
            if self.edge(t.last, a, t.first):
                fwd.setdefault((t.first, t.vals, t.vals), ([], wt))
        frontier = dict(fwd)
        for _ in range(self.bound):
            new = {}
            for (f, U, tv), (ws, wt) in frontier.items():
                for p, wp in P.items():
                    self.tick()
                    if self.edge(p.last, a, f):
                        key = (p.first, p.vals | U, tv)
                        if key not in fwd and key not in new:
                            new[key] = ([wp] + ws, wt)
            fwd.update(new)
            frontier = new
            if not new:
                break
        # backward part: ... T' T' Q_{k-1} ... Q_0
        bwd = {}
        for t, wt in Q.items():
            if self.edge(t.last, b, t.first):
                bwd.setdefault((t.last, t.vals, t.vals), ([], wt))
        frontier = dict(bwd)
        for _ in range(self.bound):
            new = {}
            for (l, U, tv), (ws, wt) in frontier.items():
                for q, wq in Q.items():
                    self.tick()
                    if self.edge(l, b, q.first):
                        key = (q.last, U | q.vals, tv)
                        if key not in bwd and key not in new:
                            new[key] = (ws + [wq], wt)
            bwd.update(new)
            frontier = new
            if not new:
                break
        out = {}
        for (f, U1, tv1), w1 in fwd.items():
            for (l, U2, tv2), w2 in bwd.items():
                self.tick()
                if tv1 == tv2:
                    out.setdefault(Profile(f, l, U1 | U2), (w1, w2))
        return out


@dataclass
class SearchResult:
    found: bool
    witness: object = None
    profile: Profile | None = None
    states: int = 0


def search_recognizer(ce, S, phi, s, family_bound=None, cap=200_000):
    """Exhaustive search for an eventually constant recognizer.

    Copies before the constant tail number at most family_bound
    (default |S| + 1).  Raises SearchCapExceeded past `cap` states.
    """
    bound = S.size + 1 if family_bound is None else family_bound
    sr = _Search(S, phi, s, bound, cap)
    profs = sr.profiles(ce)
    last = last_letter(ce.term)
    top = (s, S.one)
    for pr, w in profs.items():
        if pr.first == (S.one, s) and sr.edge(pr.last, last, top):
            return SearchResult(True, w, pr, sr.states)
    return SearchResult(False, None, None, sr.states)


# -- worthy conditions -----------------------------------------------------------------

@dataclass
class WorthyCell:
    term: str
    semigroup: str
    value: str
    recognized: list
    verdict: str
    notes: list = field(default_factory=list)

    def line(self):
        rs = "{" + ",".join(self.recognized) + "}"
        return f"{self.term} | {self.semigroup} | {self.value} | {rs} | {self.verdict}"


@dataclass
class WorthyReport:
    verdict: str          # PASS-at-scale, REFUTED or UNDECIDED
    cells: list
    witness: object = None

    def text(self):
        lines = [c.line() for c in self.cells]
        lines.append(f"overall | {self.verdict}" + (f" | {self.witness}" if self.witness else ""))
        return "\n".join(lines) + "\n"


def _sample_pairs(ce, copies, limit):
    pts = step_positions(ce, copies) + [MAX]
    pairs = [(p, q) for i, p in enumerate(pts) for q in pts[i + 1:]]
    if len(pairs) > limit:
        stride = len(pairs) / limit
        pairs = [pairs[int(k * stride)] for k in range(limit)]
    return pairs


def check_worthy(ce, pairs, search_size=6, copies=2, pair_limit=40, cap=50_000, w4_copies=1):
    """W.1-W.4 at scale over (S, phi) pairs with S unambiguous and aperiodic.

    W.1-W.3 failures refute.  W.4 asks for some semigroup leaving a step
    point unstabilized; points without such a witness in `pairs` (sampled
    with copy indices < w4_copies) only make the verdict UNDECIDED.
    """
    term = show(ce.term)
    cells = []
    verdict = "PASS-at-scale"
    witness = None
    pts = step_positions(ce, copies) + [MAX]
    sample = _sample_pairs(ce, copies, pair_limit)
    seg_ce = {}
    for p, q in sample:
        tau = segment_term(ce, p, q)
        seg_ce[(p, q)] = (tau, build(tau) if tau is not None else None)
    unstabilized = {p: False for p in step_positions(ce, w4_copies)}

    for S, phi in pairs:
        notes = []
        cell_verdict = "PASS-at-scale"
        rec, fails = _canonical_status(ce, S, phi)
        rset = recognized_set(ce, S, phi)
        # W.1
        if len(rset) != 1:
            cell_verdict = "REFUTED"
            notes.append(f"W.1: recognized by {len(rset)} elements")
        if S.size <= search_size:
            try:
                found = [s for s in range(S.size)
                         if search_recognizer(ce, S, phi, s, cap=cap).found]
                if found != rset:
                    cell_verdict = "REFUTED"
                    notes.append(f"W.1: search finds {found}, checker {rset}")
            except SearchCapExceeded:
                notes.append("W.1: search cap")
                if cell_verdict == "PASS-at-scale":
                    cell_verdict = "UNDECIDED"
        # representatives of centers
        for fam in stationary_points(ce):
            base = fam.block.base
            ctx = _Ctx(S, phi)
            if not S.green.J(ctx.ev(fam.jrep), S.omega_table[ctx.ev(base)]):
                cell_verdict = "REFUTED"
                notes.append(f"J: {show(fam.jrep)} not J-equivalent to ({show(base)})^w")
        # W.2 and W.3
        for (p, q), (tau, sce) in seg_ce.items():
            if tau is None:
                continue
            segset = recognized_set(sce, S, phi)
            if len(segset) != 1:
                cell_verdict = "REFUTED"
                notes.append(f"W.2: [{p},{q}] recognized by {len(segset)} elements")
                continue
            t = segset[0]
            (x, y), (x2, y2) = rec.value(p), rec.value(q)
            if S.mul(x, t) != x2 or S.mul(t, y2) != y:
                cell_verdict = "REFUTED"
                notes.append(f"W.3: no edge {p} -{show(tau)}-> {q}")
        # W.4 bookkeeping
        for p in unstabilized:
            if not unstabilized[p] and not has_nontrivial_stabilizer(S, *rec.value(p)):
                unstabilized[p] = True
        if cell_verdict == "REFUTED" and verdict != "REFUTED":
            verdict = "REFUTED"
            witness = f"{S.name}: {notes[0]}"
        elif cell_verdict == "UNDECIDED" and verdict == "PASS-at-scale":
            verdict = "UNDECIDED"
        cells.append(WorthyCell(term, S.name, S.label(rec.s), [S.label(x) for x in rset],
                                cell_verdict, notes))
    stuck = [str(p) for p, ok in unstabilized.items() if not ok]
    if stuck and verdict == "PASS-at-scale":
        verdict = "UNDECIDED"
        witness = f"W.4: no member leaves {stuck[0]} unstabilized"
    return WorthyReport(verdict, cells, witness)


def report_line(ce, S, phi):
    rs = recognized_set(ce, S, phi)
    rec, fails = _canonical_status(ce, S, phi)
    verdict = "RECOGNIZED" if rs == [rec.s] and not fails else "FAIL"
    rstr = "{" + ",".join(S.label(x) for x in rs) + "}"
    return f"{show(ce.term)} | {S.name} | {S.label(rec.s)} | {rstr} | {verdict}"
