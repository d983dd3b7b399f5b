"""Exact dense and sparse linear algebra over Q, Q(sqrt(d)), and Q(i).

Matrices are lists of row lists whose entries support field arithmetic
(Fraction, Quad, Cx).  Truthiness is the zero test.  Float helpers are
segregated at the bottom and never feed exact results.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ._core import IntEchelon
from .scalars import Quad, scalar_sign

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(m, n):
    return [[ZERO] * n for _ in range(m)]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_add(A, B):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(A, B):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(c, A):
    return [[c * x for x in row] for row in A]


def mat_mul(A, B):
    n = len(B[0])
    out = []
    for Ai in A:
        row = [ZERO] * n
        for k, a in enumerate(Ai):
            if a:
                Bk = B[k]
                for j in range(n):
                    if Bk[j]:
                        row[j] = row[j] + a * Bk[j]
        out.append(row)
    return out


def mat_vec(A, v):
    out = []
    for row in A:
        acc = ZERO
        for a, x in zip(row, v):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return out


def mat_comm(A, B):
    return mat_sub(mat_mul(A, B), mat_mul(B, A))


def is_zero_matrix(A):
    return all(not x for row in A for x in row)


def rref(M):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = [list(row) for row in M]
    m, n = len(R), len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if R[i][c]), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = ONE / R[r][c]
        R[r] = [inv * x for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(M):
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def nullspace(M):
    """Basis of {v : M v = 0}, one vector per free column."""
    if not M:
        return []
    n = len(M[0])
    R, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [ZERO] * n
        v[free] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][free]
        basis.append(v)
    return basis


def linear_solve(A, b):
    """General solve A x = b.

    Returns (particular, kernel_basis) or None when inconsistent.
    """
    if not A:
        return [], []
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for r, pc in enumerate(pivots):
        x[pc] = R[r][n]
    return x, nullspace([row[:n] for row in R[: len(pivots)]])


def det_field(M):
    """Determinant by fraction-preserving Gaussian elimination."""
    A = [list(row) for row in M]
    n = len(A)
    det = ONE
    for c in range(n):
        pr = next((i for i in range(c, n) if A[i][c]), None)
        if pr is None:
            return ZERO * det
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            det = -det
        det = det * A[c][c]
        inv = ONE / A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return det


def det_int(M):
    """Bareiss fraction-free determinant for integer matrices."""
    A = [[int(x) for x in row] for row in M]
    n = len(A)
    sign, prev = 1, 1
    for c in range(n - 1):
        pr = next((i for i in range(c, n) if A[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                A[i][j] = (A[i][j] * A[c][c] - A[i][c] * A[c][j]) // prev
            A[i][c] = 0
        prev = A[c][c]
    return sign * A[n - 1][n - 1]


def is_neg_definite(B):
    """Exact negative definiteness of a symmetric matrix.

    Sylvester: all leading principal minors of -B positive.  A vanishing
    minor means not definite, which is the right answer for Killing forms.
    """
    n = len(B)
    negB = [[-x for x in row] for row in B]
    for k in range(1, n + 1):
        minor = det_field([row[:k] for row in negB[:k]])
        if scalar_sign(minor) <= 0:
            return False
    return True


def gram(vectors):
    return [[_dot(v, w) for w in vectors] for v in vectors]


def _dot(v, w):
    acc = ZERO
    for a, b in zip(v, w):
        if a and b:
            acc = acc + a * b
    return acc


def orthoprojector(basis_vectors):
    """Orthogonal projector onto span of the given (exact) vectors."""
    B = transpose(basis_vectors)  # columns are the basis
    G = gram(basis_vectors)
    Ginv = mat_inverse(G)
    return mat_mul(mat_mul(B, Ginv), transpose(B))


def mat_inverse(A):
    n = len(A)
    aug = [list(row) + list(identity(n)[i]) for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def express_in_span(basis_vectors, vec):
    """Coefficients of vec over basis_vectors, or None if outside the span."""
    if not basis_vectors:
        return None if any(vec) else []
    A = transpose(basis_vectors)
    sol = linear_solve(A, list(vec))
    return None if sol is None else sol[0]


class FieldEchelon:
    """Incremental echelon span over an exact field (Fraction, Quad, Cx).

    Same add/contains contract as the integer kernel; used whenever entries
    leave Q so no flattening trick can misstate ranks.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []
        self.pivots = {}

    @property
    def rank(self):
        return len(self.rows)

    def _reduce(self, vec):
        w = list(vec)
        for c, idx in sorted(self.pivots.items()):
            if w[c]:
                f = w[c]
                row = self.rows[idx]
                w = [x - f * y for x, y in zip(w, row)]
        return w

    def add(self, vec):
        w = self._reduce(vec)
        c = next((i for i in range(self.ncols) if w[i]), None)
        if c is None:
            return False
        inv = ONE / w[c]
        w = [inv * x for x in w]
        self.pivots[c] = len(self.rows)
        self.rows.append(w)
        return True

    def contains(self, vec):
        return not any(self._reduce(vec))


def vector_is_rational(vec):
    return all(isinstance(x, (int, Fraction)) for x in vec)


def clear_denominators(vec):
    """Rational vector -> primitive integer vector (common scaling)."""
    fracs = [Fraction(x) for x in vec]
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


class SpanTracker:
    """Span accumulator that picks the fast integer kernel when it can.

    Vectors with rational entries are denominator-cleared and fed to the
    fraction-free integer echelon; the first irrational entry switches the
    whole accumulated span to generic field elimination.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self._int = IntEchelon(ncols)
        self._field = None
        self._raw = []  # accepted vectors, original scalars

    @property
    def rank(self):
        return self._field.rank if self._field is not None else self._int.rank

    @property
    def vectors(self):
        return self._raw

    def _go_field(self):
        self._field = FieldEchelon(self.ncols)
        for v in self._raw:
            self._field.add(v)

    def add(self, vec):
        vec = list(vec)
        if self._field is None:
            if vector_is_rational(vec):
                if self._int.add(clear_denominators(vec)):
                    self._raw.append(vec)
                    return True
                return False
            self._go_field()
        if self._field.add(vec):
            self._raw.append(vec)
            return True
        return False

    def contains(self, vec):
        vec = list(vec)
        if self._field is None:
            if vector_is_rational(vec):
                return self._int.contains(clear_denominators(vec))
            self._go_field()
        return self._field.contains(vec)


def sparse_rank_int(rows, ncols):
    """Rank of a sparse integer matrix given as {col: coeff} dicts.

    Pivot choice prefers unit coefficients and short rows to limit fill;
    elimination is fraction-free with content normalization.
    """
    live = [dict(r) for r in rows if r]
    by_col = {}
    for i, r in enumerate(live):
        for c in r:
            by_col.setdefault(c, set()).add(i)
    alive = set(range(len(live)))
    rk = 0
    while alive:
        best = None
        for i in alive:
            r = live[i]
            unit = any(abs(v) == 1 for v in r.values())
            key = (0 if unit else 1, len(r))
            if best is None or key < best[0]:
                best = (key, i)
                if key == (0, 1):
                    break
        i = best[1]
        row = live[i]
        alive.discard(i)
        c = min(
            row, key=lambda col: (abs(row[col]) != 1, len(by_col.get(col, ())))
        )
        p = row[c]
        rk += 1
        for j in list(by_col.get(c, ())):
            if j == i or j not in alive:
                continue
            other = live[j]
            a = other.get(c)
            if not a:
                continue
            g = gcd(a, p)
            mo, mp = p // g, a // g
            new = {}
            for col, v in other.items():
                new[col] = mo * v
            for col, v in row.items():
                nv = new.get(col, 0) - mp * v
                if nv:
                    new[col] = nv
                elif col in new:
                    del new[col]
            cont = 0
            for v in new.values():
                cont = gcd(cont, v)
                if cont == 1:
                    break
            if cont > 1:
                new = {col: v // cont for col, v in new.items()}
            for col in other:
                by_col[col].discard(j)
            live[j] = new
            if new:
                for col in new:
                    by_col.setdefault(col, set()).add(j)
            else:
                alive.discard(j)
        for col in row:
            by_col[col].discard(i)
    return rk


# ---------------------------------------------------------------------------
# float helpers (presentation and scanning only, never exact claims)


def float_matrix(M):
    return [[float(x) for x in row] for row in M]


def qr_rank(vectors, tol=1e-9):
    """Numerical rank of a list of float vectors."""
    import numpy as np

    if not vectors:
        return 0
    A = np.array(vectors, dtype=float)
    s = np.linalg.svd(A, compute_uv=False)
    scale = s[0] if len(s) and s[0] > 0 else 1.0
    return int((s > tol * scale).sum())
