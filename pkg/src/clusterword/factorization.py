"""2-factorizations of an element, their quasi-order, stabilizers and J_p / K_p."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .semigroup import SemigroupError, is_aperiodic, is_unambiguous


class HypothesisError(SemigroupError):
    """The semigroup does not satisfy a hypothesis the requested computation relies on."""


class ConsistencyError(AssertionError):
    """Two computations that must agree did not (signals a bug)."""


@dataclass
class FactorizationPoset:
    S: object
    s: int
    vertices: list           # (u, v) pairs, u, v in S^I
    leq: np.ndarray          # leq[i, j]: vertex i <= vertex j
    transitions: dict        # (i, j) -> sorted labels t with u t = u', v = t v'
    sim_classes: list        # lists of vertex indices
    class_leq: np.ndarray
    is_linear: bool

    @cached_property
    def index(self):
        return {uv: i for i, uv in enumerate(self.vertices)}

    @cached_property
    def class_of(self):
        out = [0] * len(self.vertices)
        for k, cls in enumerate(self.sim_classes):
            for i in cls:
                out[i] = k
        return out

    def class_containing(self, u, v):
        return self.class_of[self.index[(u, v)]]

    @property
    def minimum(self):
        return self.index[(self.S.one, self.s)]

    @property
    def maximum(self):
        return self.index[(self.s, self.S.one)]

    def edges_within(self, p):
        cls = set(self.sim_classes[p])
        return [(i, t, j) for (i, j), ts in self.transitions.items()
                if i in cls and j in cls for t in ts]

    def to_text(self):
        S = self.S
        lines = [f"element {S.label(self.s)}"]
        for i, (u, v) in enumerate(self.vertices):
            lines.append(f"v{i} ({S.label(u)},{S.label(v)}) class {self.class_of[i]}")
        for (i, j), ts in sorted(self.transitions.items()):
            lines.append(f"v{i} -> v{j}: " + " ".join(S.label(t) for t in ts))
        return "\n".join(lines) + "\n"


def build_poset(S, s):
    verts, edges = kernels.factorization_edges(S.ext, int(s))
    nv = len(verts)
    trans = defaultdict(set)
    for i, j, t in edges.tolist():
        trans[(i, j)].add(t)
    transitions = {k: sorted(v) for k, v in sorted(trans.items())}
    leq = np.zeros((nv, nv), dtype=bool)
    for i, j in transitions:
        leq[i, j] = True
    eq = leq & leq.T
    classes = []
    seen = set()
    for i in range(nv):
        if i not in seen:
            cls = [int(j) for j in np.flatnonzero(eq[i])]
            seen.update(cls)
            classes.append(cls)
    # order the classes by the number of vertices below them
    classes.sort(key=lambda c: int(leq[:, c[0]].sum()))
    nc = len(classes)
    reps = [c[0] for c in classes]
    cleq = leq[np.ix_(reps, reps)]
    linear = bool((cleq | cleq.T).all())
    vertices = [(int(u), int(v)) for u, v in verts]
    return FactorizationPoset(S, int(s), vertices, leq, transitions, classes, cleq, linear)


def stabilizers(S, u, v):
    one = S.one
    return [z for z in range(one + 1) if S.mul(u, z) == u and S.mul(z, v) == v]


def has_nontrivial_stabilizer(S, u, v):
    return any(S.mul(u, z) == u and S.mul(z, v) == v for z in range(S.size))


def minimal_ideal(S, M):
    """Minimum ideal of the finite monoid M (a list of elements of S^I)."""
    best = None
    for x in M:
        ideal = {S.mul(S.mul(a, x), b) for a in M for b in M}
        if best is None or len(ideal) < len(best):
            best = ideal
    return sorted(best)


@dataclass(frozen=True)
class StabilizerData:
    vertex: tuple
    M: tuple
    I: tuple
    jp: int


def stabilizer_data(S, u, v):
    M = stabilizers(S, u, v)
    I = minimal_ideal(S, M)
    jidx = S.green.j_index
    js = {jidx[x] for x in I}
    if len(js) != 1:
        raise ConsistencyError(f"minimal ideal of stabilizers of {(u, v)} meets {len(js)} J-classes")
    return StabilizerData((u, v), tuple(M), tuple(I), js.pop())


def jp_class(S, poset, p):
    """Index (into green.classesJ) of the J-class J_p; checked on every vertex of p."""
    found = {stabilizer_data(S, *poset.vertices[i]).jp for i in poset.sim_classes[p]}
    if len(found) != 1:
        raise ConsistencyError(f"vertices of class {p} disagree on J_p: {sorted(found)}")
    return found.pop()


def jp_elements(S, poset, p):
    return S.green.classesJ[jp_class(S, poset, p)]


def _loops_within(poset, p):
    labels = set()
    cls = poset.sim_classes[p]
    for i in cls:
        for j in cls:
            labels.update(poset.transitions.get((i, j), ()))
    return labels


def transition_characterization(S, poset, p, t):
    """Is t a transition from p to p?  Cross-checked with "t is a factor of J_p"."""
    direct = t in _loops_within(poset, p)
    leqJ = S.green.leqJ
    criterion = all(leqJ[e, t] for e in jp_elements(S, poset, p))
    if direct != criterion:
        raise ConsistencyError(f"class {p}, t={S.label(t)}: direct {direct}, factor criterion {criterion}")
    return direct


def kp_edges(S, poset, p):
    """Edges (i, t, j) inside p with label in J_p (S must be unambiguous)."""
    if not is_unambiguous(S):
        raise HypothesisError(f"{S.name} is not unambiguous")
    J = set(jp_elements(S, poset, p))
    return [(i, t, j) for (i, t, j) in poset.edges_within(p) if t in J]


def kp_edges_by_definition(S, poset, p):
    """Edges of T_p admitting a loop of the minimum ideal at a base vertex as a factor."""
    cls = poset.sim_classes[p]
    v0 = cls[0]
    I = stabilizer_data(S, *poset.vertices[v0]).I
    to_v0 = {i: poset.transitions.get((i, v0), []) for i in cls}
    from_v0 = {j: poset.transitions.get((v0, j), []) for j in cls}
    out = []
    for (i, t, j) in poset.edges_within(p):
        if any(S.mul(S.mul(a, k), b) == t for a in to_v0[i] for k in I for b in from_v0[j]):
            out.append((i, t, j))
    return out


def _require_unambiguous_aperiodic(S):
    if not is_unambiguous(S):
        raise HypothesisError(f"{S.name} is not unambiguous")
    if not is_aperiodic(S):
        raise HypothesisError(f"{S.name} is not aperiodic")


def idempotent_bijection(S, poset, p):
    """Map each vertex of p to the unique idempotent of J_p stabilizing it."""
    _require_unambiguous_aperiodic(S)
    J = jp_elements(S, poset, p)
    idem = [e for e in J if S.mul(e, e) == e]
    out = {}
    for i in poset.sim_classes[p]:
        u, v = poset.vertices[i]
        es = [e for e in idem if S.mul(u, e) == u and S.mul(e, v) == v]
        if len(es) != 1:
            raise ConsistencyError(f"vertex {(u, v)} stabilized by {len(es)} idempotents of J_p")
        out[(u, v)] = es[0]
    if sorted(out.values()) != sorted(idem):
        raise ConsistencyError(f"class {p}: map onto {sorted(out.values())}, idempotents {sorted(idem)}")
    bad = mu_check(S, poset, p)
    if bad:
        raise ConsistencyError(f"class {p}: mu_s check failed for {bad[:3]}")
    return out


def mu_check(S, poset, p):
    """For s in J_p with e R s L f: mu_s(u,v) = (us, tv) maps p_e bijectively to p_f."""
    G = S.green
    J = jp_elements(S, poset, p)
    idem = [e for e in J if S.mul(e, e) == e]
    cls = poset.sim_classes[p]
    members = {poset.vertices[i] for i in cls}

    def block(e):
        return sorted(uv for uv in members if S.mul(uv[0], e) == uv[0] and S.mul(e, uv[1]) == uv[1])

    failures = []
    for s in J:
        for e in idem:
            if not G.R(e, s):
                continue
            for f in idem:
                if not G.L(s, f):
                    continue
                ts = [t for t in J if S.mul(s, t) == e and S.mul(t, s) == f]
                if len(ts) != 1:
                    failures.append((s, e, f, "t"))
                    continue
                t = ts[0]
                pe, pf = block(e), block(f)
                image = sorted((S.mul(u, s), S.mul(t, v)) for u, v in pe)
                if image != pf or len(set(image)) != len(pe):
                    failures.append((s, e, f, "mu"))
    return failures
