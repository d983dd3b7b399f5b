# cython: language_level=3
"""Compiled twin of kernels_py: identical semantics, typed loop machinery.

Matrix entries stay arbitrary-precision Python ints (closures routinely
overflow 64 bits), so the speedup comes from typed indices, preallocated
lists and tighter dispatch, not from C arithmetic.
"""

from math import gcd


cdef long _content_c(list vec):
    cdef long g = 0
    cdef Py_ssize_t i, n = len(vec)
    cdef object x
    for i in range(n):
        x = vec[i]
        if x:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


cdef class IntEchelon:
    cdef public Py_ssize_t ncols
    cdef public list rows
    cdef public dict pivots

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []
        self.pivots = {}

    @property
    def rank(self):
        return len(self.rows)

    cdef Py_ssize_t _leading(self, list vec, Py_ssize_t start):
        cdef Py_ssize_t c
        for c in range(start, self.ncols):
            if vec[c]:
                return c
        return -1

    cdef list _combine(self, list w, list row, Py_ssize_t c):
        cdef object a = w[c]
        cdef object p = row[c]
        cdef object g = gcd(a, p)
        cdef object ma = p // g
        cdef object mp = a // g
        cdef Py_ssize_t i, n = len(w)
        cdef list out = [0] * n
        for i in range(n):
            out[i] = ma * w[i] - mp * row[i]
        return out

    def add(self, vec):
        cdef list w = [int(x) for x in vec]
        if len(w) != self.ncols:
            raise ValueError(
                f"expected length {self.ncols}, got {len(w)}")
        cdef Py_ssize_t c = self._leading(w, 0)
        cdef Py_ssize_t i
        cdef long g
        while c >= 0:
            hit = self.pivots.get(c)
            if hit is None:
                g = _content_c(w)
                if g > 1:
                    w = [x // g for x in w]
                if w[c] < 0:
                    w = [-x for x in w]
                self.pivots[c] = len(self.rows)
                self.rows.append(w)
                return True
            w = self._combine(w, <list> self.rows[<Py_ssize_t> hit], c)
            g = _content_c(w)
            if g > 1:
                w = [x // g for x in w]
            c = self._leading(w, c + 1)
        return False

    def contains(self, vec):
        cdef list w = [int(x) for x in vec]
        cdef Py_ssize_t c = self._leading(w, 0)
        while c >= 0:
            hit = self.pivots.get(c)
            if hit is None:
                return False
            w = self._combine(w, <list> self.rows[<Py_ssize_t> hit], c)
            c = self._leading(w, c + 1)
        return True


def mat_mul_int(A, B):
    cdef list LA = [list(r) for r in A]
    cdef list LB = [list(r) for r in B]
    cdef Py_ssize_t m = len(LA)
    cdef Py_ssize_t n = len(<list> LB[0])
    cdef Py_ssize_t kk = len(LB)
    cdef list out = [None] * m
    cdef Py_ssize_t i, j, k
    cdef list Ai, Oi, Bk
    cdef object a, b
    for i in range(m):
        Ai = <list> LA[i]
        Oi = [0] * n
        for k in range(kk):
            a = Ai[k]
            if a:
                Bk = <list> LB[k]
                for j in range(n):
                    b = Bk[j]
                    if b:
                        Oi[j] = Oi[j] + a * b
        out[i] = Oi
    return out


def mat_comm_int(A, B):
    AB = mat_mul_int(A, B)
    BA = mat_mul_int(B, A)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(AB, BA)]
