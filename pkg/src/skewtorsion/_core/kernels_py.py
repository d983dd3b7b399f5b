"""Integer linear-algebra kernels (pure Python reference implementation).

These are the hot inner loops of bracket closures and associative-algebra
saturations: fraction-free row reduction over Z and dense integer matrix
products.  A compiled twin with identical semantics lives in _kernels_c.pyx.
"""

from math import gcd


def _content(vec):
    g = 0
    for x in vec:
        if x:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


class IntEchelon:
    """Incremental fraction-free echelon basis over Z.

    add(vec) reduces vec against the stored rows; it returns True and stores
    the reduced row when vec enlarges the span, False when vec was already in
    the span.  Rows are kept content-normalized with a positive leading entry,
    so entry growth stays bounded during long closures.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []
        self.pivots = {}  # leading column -> index into rows

    @property
    def rank(self):
        return len(self.rows)

    def _leading(self, vec, start=0):
        for c in range(start, self.ncols):
            if vec[c]:
                return c
        return -1

    def add(self, vec):
        w = [int(x) for x in vec]
        if len(w) != self.ncols:
            raise ValueError(f"expected length {self.ncols}, got {len(w)}")
        c = self._leading(w)
        while c >= 0:
            hit = self.pivots.get(c)
            if hit is None:
                g = _content(w)
                if g > 1:
                    w = [x // g for x in w]
                if w[c] < 0:
                    w = [-x for x in w]
                self.pivots[c] = len(self.rows)
                self.rows.append(w)
                return True
            row = self.rows[hit]
            a, p = w[c], row[c]
            g = gcd(a, p)
            ma, mp = p // g, a // g
            w = [ma * x - mp * y for x, y in zip(w, row)]
            g = _content(w)
            if g > 1:
                w = [x // g for x in w]
            c = self._leading(w, c + 1)
        return False

    def contains(self, vec):
        """Membership test without inserting."""
        w = [int(x) for x in vec]
        c = self._leading(w)
        while c >= 0:
            hit = self.pivots.get(c)
            if hit is None:
                return False
            row = self.rows[hit]
            a, p = w[c], row[c]
            g = gcd(a, p)
            ma, mp = p // g, a // g
            w = [ma * x - mp * y for x, y in zip(w, row)]
            c = self._leading(w, c + 1)
        return True


def mat_mul_int(A, B):
    """Dense integer matrix product, skipping zero entries."""
    n = len(B[0])
    out = [[0] * n for _ in range(len(A))]
    for i, Ai in enumerate(A):
        Oi = out[i]
        for k, a in enumerate(Ai):
            if a:
                Bk = B[k]
                for j in range(n):
                    b = Bk[j]
                    if b:
                        Oi[j] += a * b
    return out


def mat_comm_int(A, B):
    """Commutator A@B - B@A over Z."""
    AB = mat_mul_int(A, B)
    BA = mat_mul_int(B, A)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(AB, BA)]
