# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops.  Same signatures as _pykernels."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def leq_right(const cnp.int32_t[:, :] T):
    cdef Py_ssize_t m = T.shape[0], t, x
    out = np.zeros((m, m), dtype=np.uint8)
    cdef cnp.uint8_t[:, :] leq = out
    for t in range(m):
        for x in range(m):
            leq[T[t, x], t] = 1
    return out.astype(bool)


def leq_left(const cnp.int32_t[:, :] T):
    cdef Py_ssize_t m = T.shape[0], t, x
    out = np.zeros((m, m), dtype=np.uint8)
    cdef cnp.uint8_t[:, :] leq = out
    for t in range(m):
        for x in range(m):
            leq[T[x, t], t] = 1
    return out.astype(bool)


def leq_two_sided(const cnp.int32_t[:, :] T):
    cdef Py_ssize_t m = T.shape[0], t, x, y
    out = np.zeros((m, m), dtype=np.uint8)
    cdef cnp.uint8_t[:, :] leq = out
    for t in range(m):
        for x in range(m):
            for y in range(m):
                leq[T[T[x, t], y], t] = 1
    return out.astype(bool)


def associativity_witness(const cnp.int32_t[:, :] T):
    cdef Py_ssize_t m = T.shape[0], x, y, z
    for x in range(m):
        for y in range(m):
            for z in range(m):
                if T[T[x, y], z] != T[x, T[y, z]]:
                    return (x, y, z)
    return None


def ambiguity_witness(leq_in, Py_ssize_t n):
    cdef cnp.uint8_t[:, :] L = np.ascontiguousarray(leq_in, dtype=np.uint8)
    cdef Py_ssize_t x, y, z
    for x in range(n):
        for y in range(n):
            if not L[x, y]:
                continue
            for z in range(y + 1, n):
                if L[x, z] and not L[y, z] and not L[z, y]:
                    return (x, y, z)
    return None


cdef bint _has_transition(const cnp.int32_t[:, :] T, Py_ssize_t m, int x, int y, int u, int v):
    cdef Py_ssize_t t
    for t in range(m):
        if T[x, t] == u and T[t, v] == y:
            return True
        if T[u, t] == x and T[t, y] == v:
            return True
    return False


def equidivisibility_witness(const cnp.int32_t[:, :] T, Py_ssize_t n):
    cdef Py_ssize_t m = T.shape[0], x, y, u, v
    for x in range(n):
        for y in range(n):
            for u in range(n):
                for v in range(n):
                    if T[x, y] == T[u, v] and not _has_transition(T, m, x, y, u, v):
                        return (x, y, u, v)
    return None


def factorization_edges(const cnp.int32_t[:, :] T, int s):
    cdef Py_ssize_t m = T.shape[0], i, t, w, u, v, nv = 0, ne = 0
    idx_arr = np.full((m, m), -1, dtype=np.int64)
    cdef cnp.int64_t[:, :] idx = idx_arr
    for u in range(m):
        for v in range(m):
            if T[u, v] == s:
                idx[u, v] = nv
                nv += 1
    verts = np.zeros((nv, 2), dtype=np.int32)
    cdef cnp.int32_t[:, :] V = verts
    for u in range(m):
        for v in range(m):
            if idx[u, v] >= 0:
                V[idx[u, v], 0] = u
                V[idx[u, v], 1] = v
    # count first, then fill
    for i in range(nv):
        v = V[i, 1]
        for t in range(m):
            for w in range(m):
                if T[t, w] == v:
                    ne += 1
    edges = np.zeros((ne, 3), dtype=np.int32)
    cdef cnp.int32_t[:, :] E = edges
    ne = 0
    for i in range(nv):
        u = V[i, 0]
        v = V[i, 1]
        for t in range(m):
            for w in range(m):
                if T[t, w] == v:
                    E[ne, 0] = i
                    E[ne, 1] = idx[T[u, t], w]
                    E[ne, 2] = t
                    ne += 1
    return verts, edges
