"""Lie algebra closures of matrix sets, with exact structure analysis.

Everything here is representation-level: elements are square matrices over
Q, Q(sqrt(d)), or Q(i); the span bookkeeping is fraction-free over Z when it
can be and generic field elimination otherwise.  Dimension statements are
proofs, not numerics; the only modular arithmetic used (Burnside saturation,
commutant bounds) is one-sided in the safe direction, since a rank over GF(p)
never exceeds the rank over the fraction field.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from ._core import IntEchelon, mat_comm_int
from .linalg import (
    SpanTracker,
    clear_denominators,
    det_int,
    mat_comm,
    mat_inverse,
    mat_vec,
    nullspace,
    rref,
    vector_is_rational,
)
from .scalars import Cx, Quad


def vectorize_matrix(M):
    """Flatten a matrix to one coefficient vector.

    Complex entries contribute (re, im) coordinate pairs, which is exactly
    right for real-span ranks of complex matrices.
    """
    flat = [x for row in M for x in row]
    if any(isinstance(x, Cx) for x in flat):
        re = [x.re if isinstance(x, Cx) else x for x in flat]
        im = [x.im if isinstance(x, Cx) else 0 for x in flat]
        return re + im
    return flat


def _matrix_is_rational(M):
    return vector_is_rational([x for row in M for x in row])


def _to_int_matrix(M):
    """Scale a rational matrix to a primitive integer one (span-safe)."""
    flat = clear_denominators([x for row in M for x in row])
    n = len(M[0])
    return [flat[i * n : (i + 1) * n] for i in range(len(M))]


def bracket_closure(generators, max_steps=None):
    """Smallest Lie algebra of matrices containing the generators.

    Returns the list of accepted basis elements in discovery order
    (generators first).  Worklist order is deterministic: new elements are
    bracketed against every earlier accepted element, first-in first-out.
    """
    gens = [g for g in generators if any(any(x for x in row) for row in g)]
    if not gens:
        return []
    m = len(gens[0])
    rational = all(_matrix_is_rational(g) for g in gens)
    if rational:
        elems = []
        ech = IntEchelon(m * m)
        comm = mat_comm_int
        conv = _to_int_matrix
    else:
        elems = []
        ech = SpanTracker(len(vectorize_matrix(gens[0])))
        comm = mat_comm
        conv = lambda g: g
    queue = deque()
    for g in gens:
        g = conv(g)
        if ech.add(vectorize_matrix(g)):
            for other in range(len(elems)):
                queue.append((other, len(elems)))
            elems.append(g)
    steps = 0
    while queue:
        i, j = queue.popleft()
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise RuntimeError("bracket closure exceeded the step budget")
        c = comm(elems[i], elems[j])
        if rational:
            c = _to_int_matrix(c)
        if ech.add(vectorize_matrix(c)):
            for other in range(len(elems)):
                queue.append((other, len(elems)))
            elems.append(c)
    return elems


def derived_dimension(basis):
    """dim [g, g] for a basis of g."""
    if not basis:
        return 0
    rational = all(_matrix_is_rational(b) for b in basis)
    if rational:
        ech = IntEchelon(len(basis[0]) ** 2)
        comm = mat_comm_int
    else:
        ech = SpanTracker(len(vectorize_matrix(basis[0])))
        comm = mat_comm
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            ech.add(vectorize_matrix(comm(basis[i], basis[j])))
    return ech.rank


def center_dimension(basis):
    """dim of the center of the span of basis (assumed bracket-closed)."""
    d = len(basis)
    if d == 0:
        return 0
    cols = []
    for i in range(d):
        col = []
        for j in range(d):
            col.extend(vectorize_matrix(mat_comm(basis[i], basis[j])))
        cols.append(col)
    rational = all(vector_is_rational(c) for c in cols)
    if rational:
        ech = IntEchelon(len(cols[0]))
        rk = sum(ech.add(clear_denominators(c)) for c in cols)
    else:
        ech = SpanTracker(len(cols[0]))
        rk = sum(ech.add(c) for c in cols)
    return d - rk


class _CoordinateSolver:
    """Express elements of a span in its stored basis, exactly."""

    def __init__(self, basis):
        self.basis = basis
        vecs = [vectorize_matrix(b) for b in basis]
        cols = list(zip(*vecs))  # rows of the (N x d) matrix with basis columns
        A = [list(r) for r in cols]
        _, pivots = rref([list(v) for v in vecs])
        self.rows = pivots  # independent coordinate positions
        sub = [[A[r][j] for j in range(len(basis))] for r in self.rows]
        self.inv = mat_inverse(sub)

    def coords(self, M):
        v = vectorize_matrix(M)
        return mat_vec(self.inv, [v[r] for r in self.rows])


def structure_constants(basis):
    """c[i][j] = coordinates of [b_i, b_j] in the given closed basis."""
    solver = _CoordinateSolver(basis)
    d = len(basis)
    table = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            if i == j:
                table[i][j] = [Fraction(0)] * d
            elif j < i:
                table[i][j] = [-x for x in table[j][i]]
            else:
                table[i][j] = solver.coords(mat_comm(basis[i], basis[j]))
    return table


def _leading_minors_int(B):
    """Leading principal minors by fraction-free elimination; stops at zero."""
    n = len(B)
    A = [[int(x) for x in row] for row in B]
    minors = []
    prev = 1
    for c in range(n):
        piv = A[c][c]
        minors.append(piv)
        if piv == 0:
            return minors, False
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                A[i][j] = (A[i][j] * piv - A[i][c] * A[c][j]) // prev
            A[i][c] = 0
        prev = piv
    return minors, True


def killing_analysis(basis, structure=None):
    """Killing form with exact semisimplicity and compactness verdicts.

    Returns (K, semisimple, compact): K in the given basis, semisimple iff
    det K != 0, compact iff K is negative definite (Sylvester on -K).  The ad
    matrices are denominator-cleared first; positive rescaling of basis
    vectors preserves both verdicts.
    """
    d = len(basis)
    if d == 0:
        return [], True, True
    table = structure if structure is not None else structure_constants(basis)
    ads = []
    for i in range(d):
        ad = [[table[i][j][k] for j in range(d)] for k in range(d)]
        flat = clear_denominators([x for row in ad for x in row])
        ads.append([flat[r * d : (r + 1) * d] for r in range(d)])
    K = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            acc = 0
            for k in range(d):
                rowik = ads[i][k]
                for l in range(d):
                    if rowik[l]:
                        v = ads[j][l][k]
                        if v:
                            acc += rowik[l] * v
            K[i][j] = acc
            K[j][i] = acc
    semisimple = det_int(K) != 0
    minors, complete = _leading_minors_int([[-x for x in row] for row in K])
    compact = complete and all(m > 0 for m in minors)
    return K, semisimple, compact


# ---------------------------------------------------------------------------
# irreducibility


def _embed_modp(x, p, omega_d, d_used):
    if isinstance(x, Cx):
        raise ValueError("use a complex embedding first")
    if isinstance(x, Quad):
        if x.d != d_used:
            raise ValueError("mixed radicands")
        a = x.a
        b = x.b
        return (
            a.numerator * pow(a.denominator, -1, p)
            + omega_d * b.numerator * pow(b.denominator, -1, p)
        ) % p
    f = Fraction(x)
    return f.numerator * pow(f.denominator, -1, p) % p


def _sqrt_modp(a, p):
    """Tonelli-Shanks square root mod an odd prime, or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return r


def _modp_matrices(mats, p):
    """Reduce matrices over Q, Q(sqrt(d)) or Q(i) into GF(p) numpy arrays.

    Returns None when the embedding does not exist for this prime (needed
    square roots absent, or a denominator divisible by p).
    """
    import numpy as np

    flat = [x for M in mats for row in M for x in row]
    ds = {x.d for x in flat if isinstance(x, Quad)}
    has_cx = any(isinstance(x, Cx) for x in flat)
    if has_cx:
        flat2 = []
        for x in flat:
            x = x if isinstance(x, Cx) else Cx(x)
            flat2.extend([x.re, x.im])
        ds |= {x.d for x in flat2 if isinstance(x, Quad)}
    if len(ds) > 1:
        return None
    d_used = next(iter(ds)) if ds else None
    roots_needed = []
    if d_used is not None:
        roots_needed.append(d_used)
    if has_cx:
        roots_needed.append(p - 1)  # sqrt(-1)
    omegas = {}
    for val in roots_needed:
        root = _sqrt_modp(val % p, p)
        if root is None:
            return None
        omegas[val] = root
    omega_d = omegas.get(d_used)
    out = []
    try:
        for M in mats:
            if has_cx:
                ii = omegas[p - 1]
                R = np.zeros((len(M), len(M)), dtype=np.int64)
                for r in range(len(M)):
                    for c in range(len(M)):
                        x = M[r][c]
                        x = x if isinstance(x, Cx) else Cx(x)
                        R[r][c] = (
                            _embed_modp(x.re, p, omega_d, d_used)
                            + ii * _embed_modp(x.im, p, omega_d, d_used)
                        ) % p
                out.append(R)
            else:
                out.append(
                    np.array(
                        [
                            [_embed_modp(x, p, omega_d, d_used) for x in row]
                            for row in M
                        ],
                        dtype=np.int64,
                    )
                )
    except ValueError:
        return None
    return out


class _ModpEchelon:
    def __init__(self, ncols, p):
        import numpy as np

        self.np = np
        self.p = p
        self.R = np.zeros((0, ncols), dtype=np.int64)
        self.pivots = []

    @property
    def rank(self):
        return len(self.pivots)

    def add(self, v):
        np, p = self.np, self.p
        v = np.mod(v.astype(np.int64), p)
        if self.pivots:
            coeffs = v[self.pivots]
            if coeffs.any():
                v = np.mod(v - coeffs @ self.R, p)
        nz = np.nonzero(v)[0]
        if len(nz) == 0:
            return False
        c = int(nz[0])
        inv = pow(int(v[c]), -1, p)
        v = np.mod(v * inv, p)
        if len(self.pivots):
            col = self.R[:, c].copy()
            if col.any():
                self.R = np.mod(self.R - np.outer(col, v), p)
        self.R = np.vstack([self.R, v[None, :]])
        self.pivots.append(c)
        return True


def _burnside_saturated_modp(mats, p):
    """True when the unital algebra generated by mats is all of End(V) mod p.

    Ranks over GF(p) bound ranks over the exact field from below, so a full
    saturation here is a proof of absolute irreducibility.
    """
    import numpy as np

    mm = _modp_matrices(mats, p)
    if mm is None:
        return None
    m = mm[0].shape[0]
    ech = _ModpEchelon(m * m, p)
    ident = np.eye(m, dtype=np.int64)
    queue = deque()
    for M in [ident] + mm:
        if ech.add(M.reshape(-1)):
            queue.append(M)
    while queue and ech.rank < m * m:
        A = queue.popleft()
        for G in mm:
            Pr = np.mod(G @ A, p)
            if ech.add(Pr.reshape(-1)):
                queue.append(Pr)
    return ech.rank == m * m


def _commutant_dim_bound_modp(mats, p, samples=4):
    """Upper bound for the commutant dimension via GF(p) ranks."""
    import numpy as np

    mm = _modp_matrices(mats, p)
    if mm is None:
        return None
    m = mm[0].shape[0]
    picks = mm if len(mm) <= samples else mm[:samples]
    # also throw in one pseudo-random combination for genericity
    if len(mm) > samples:
        acc = np.zeros_like(mm[0])
        for k, M in enumerate(mm):
            acc = np.mod(acc + (k + 1) * M, p)
        picks = picks + [acc]
    rows = []
    ident = np.eye(m, dtype=np.int64)
    for M in picks:
        # K -> MK - KM as an (m^2 x m^2) matrix: M (x) I - I (x) M^T
        op = np.kron(M, ident) - np.kron(ident, M.T)
        rows.append(np.mod(op, p))
    stack = np.vstack(rows)
    ech = _ModpEchelon(m * m, p)
    for r in stack:
        if ech.rank == m * m:
            break
        ech.add(r)
    return m * m - ech.rank


def _orbit_subspace(basis, start):
    """Smallest invariant subspace containing start, over the module's field.

    Returns (rank, accepted_vectors).  Complex matrices get C-linear spans,
    real ones R-linear spans.
    """
    m = len(basis[0])
    complex_mode = any(
        isinstance(x, Cx) for M in basis for row in M for x in row
    )
    if complex_mode:
        from .linalg import FieldEchelon

        ech = FieldEchelon(m)
    else:
        ech = SpanTracker(m)
    accepted = []
    queue = deque()
    if ech.add(start):
        accepted.append(start)
        queue.append(start)
    while queue:
        v = queue.popleft()
        for M in basis:
            w = mat_vec(M, v)
            if ech.add(w):
                accepted.append(w)
                queue.append(w)
    return ech.rank, accepted


def _matrix_is_skew(M):
    n = len(M)
    return all(M[i][j] == -M[j][i] for i in range(n) for j in range(i, n))


def _is_prime(n):
    if n < 2 or n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


_PRIME_CACHE = []


def _work_primes(count=2):
    """Primes small enough that GF(p) echelon sums stay inside int64."""
    cand = _PRIME_CACHE[-1] - 2 if _PRIME_CACHE else 7999999
    while len(_PRIME_CACHE) < count:
        while not _is_prime(cand):
            cand -= 2
        _PRIME_CACHE.append(cand)
        cand -= 2
    return tuple(_PRIME_CACHE[:count])


def invariant_subspace_search(basis, rng=None, primes=None):
    """(flag, witness): flag True/False/None; witness spans a proper invariant
    subspace when flag is False.

    Reducibility is certified by an exact orbit closure; irreducibility by a
    GF(p) Burnside saturation or, for skew real families, a GF(p) commutant
    bound of 1.  When neither side resolves, the verdict is None.
    """
    import random

    if not basis:
        return None, None
    rng = rng or random.Random(7)
    primes = primes or _work_primes()
    m = len(basis[0])
    starts = []
    for i in range(m):
        e = [Fraction(0)] * m
        e[i] = Fraction(1)
        starts.append(e)
    for _ in range(8):
        starts.append([Fraction(rng.randint(-5, 5)) for _ in range(m)])
    for v in starts:
        if not any(v):
            continue
        orank, ovecs = _orbit_subspace(basis, v)
        if 0 < orank < m:
            return False, ovecs
    for p in primes:
        sat = _burnside_saturated_modp(basis, p)
        if sat:
            return True, None
    if all(_matrix_is_rational(b) and _matrix_is_skew(b) for b in basis):
        for p in primes:
            bound = _commutant_dim_bound_modp(basis, p)
            if bound == 1:
                # skew family: any invariant subspace contributes an
                # orthogonal projection to the commutant, so dim 1 is a proof
                return True, None
    return None, None


def algebra_rank(basis, structure=None, rng=None, tries=3):
    """Rank (dimension of a generic centralizer) via random regular elements."""
    import random

    d = len(basis)
    if d == 0:
        return 0
    rng = rng or random.Random(11)
    table = structure if structure is not None else structure_constants(basis)
    best = d
    for _ in range(tries):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(d)]
        ad = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            if not coeffs[i]:
                continue
            for j in range(d):
                for k in range(d):
                    if table[i][j][k]:
                        ad[k][j] += coeffs[i] * table[i][j][k]
        best = min(best, len(nullspace(ad)))
    return best


@dataclass
class ClosureReport:
    basis: list
    dim: int
    derived_dim: int
    center_dim: int
    semisimple: bool
    compact_type: bool
    irreducible_on_ambient: object  # True / False / None


def closure_report(generators, rng=None):
    """Full structural report of the Lie closure of a matrix family."""
    basis = bracket_closure(generators)
    if not basis:
        return ClosureReport([], 0, 0, 0, True, True, None)
    table = structure_constants(basis)
    _, semisimple, compact = killing_analysis(basis, structure=table)
    irr, _ = invariant_subspace_search(basis, rng=rng)
    return ClosureReport(
        basis=basis,
        dim=len(basis),
        derived_dim=derived_dimension(basis),
        center_dim=center_dimension(basis),
        semisimple=semisimple,
        compact_type=compact,
        irreducible_on_ambient=irr,
    )
