"""Pure numpy versions of the hot loops.  Same signatures as _ckernels.

All tables passed here are tables of S^I: shape (m, m), identity at index m-1.
"""
import numpy as np


def leq_right(T):
    """leq[s, t] iff s in t S^I."""
    m = T.shape[0]
    leq = np.zeros((m, m), dtype=bool)
    leq[T, np.arange(m)[:, None]] = True
    return leq


def leq_left(T):
    """leq[s, t] iff s in S^I t."""
    m = T.shape[0]
    leq = np.zeros((m, m), dtype=bool)
    leq[T, np.arange(m)[None, :]] = True
    return leq


def leq_two_sided(T):
    r = leq_right(T).astype(np.int32)
    l = leq_left(T).astype(np.int32)
    return (r @ l) > 0


def associativity_witness(T):
    lhs = T[T]          # (xy)z
    rhs = T[:, T]       # x(yz)
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return None
    return tuple(int(i) for i in bad[0])


def ambiguity_witness(leq, n):
    """First (x, y, z) in S with x <= y, x <= z and y, z incomparable."""
    L = leq[:n, :n]
    incomparable = ~(L | L.T)
    for x in range(n):
        above = np.flatnonzero(L[x])
        if len(above) < 2:
            continue
        sub = np.triu(incomparable[np.ix_(above, above)], 1)
        hit = np.argwhere(sub)
        if len(hit):
            return (x, int(above[hit[0][0]]), int(above[hit[0][1]]))
    return None


def equidivisibility_witness(T, n):
    """First (x, y, u, v) in S with xy = uv and no transition t in S^I."""
    S = T[:n, :n]
    found = []
    for p in range(n):
        pairs = np.argwhere(S == p)
        if len(pairs) < 2:
            continue
        X, Y = pairs[:, 0], pairs[:, 1]
        # a[i, j]: some t with x_i t = x_j and y_i = t y_j
        xt = T[X]            # xt[i, t] = x_i t
        ty = T[:, Y].T       # ty[j, t] = t y_j
        a = ((xt[:, None, :] == X[None, :, None]) & (ty[None, :, :] == Y[:, None, None])).any(2)
        ok = a | a.T
        for i, j in np.argwhere(~ok):
            found.append((int(X[i]), int(Y[i]), int(X[j]), int(Y[j])))
    return min(found) if found else None


def factorization_edges(T, s):
    """Vertices (u, v) with uv = s, and edges (i, j, t) with u t = u', v = t v'."""
    m = T.shape[0]
    verts = np.argwhere(T == s).astype(np.int32)
    idx = np.full((m, m), -1, dtype=np.int64)
    idx[verts[:, 0], verts[:, 1]] = np.arange(len(verts))
    # for each v: all (t, v') with t v' = v
    pre = {}
    for v in np.unique(verts[:, 1]):
        pre[int(v)] = np.argwhere(T == v)
    out = []
    for i, (u, v) in enumerate(verts):
        tv = pre[int(v)]
        ts, vps = tv[:, 0], tv[:, 1]
        js = idx[T[u, ts], vps]
        out.append(np.stack([np.full(len(ts), i), js, ts], axis=1))
    edges = np.concatenate(out).astype(np.int32) if out else np.zeros((0, 3), np.int32)
    return verts, edges
