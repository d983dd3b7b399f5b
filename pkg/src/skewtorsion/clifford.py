"""Clifford algebra Cl(R^n) with e_i^2 = -1 and its spinor modules.

Blade products are sign-twisted XORs of index masks.  Spinor modules come in
two flavours: for n in {7, 8} the real octonionic modules R^8 and R^16 (the
ones the torsion geometry lives on), otherwise the standard complex module of
dimension 2^(n//2) built from Pauli tensor factors.  Every generator is a
signed permutation, so Clifford actions never materialize dense products.
"""

from __future__ import annotations

from fractions import Fraction

from .forms import Form
from .linalg import det_field
from .scalars import Cx

# Fano-plane multiplication triples: o_a o_b = o_c cyclically for each row.
OCT_TRIPLES = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))


def _octonion_table():
    """table[i][j] = (k, sign) with o_i o_j = sign * o_k, indices 0..7."""
    table = [[None] * 8 for _ in range(8)]
    for j in range(8):
        table[0][j] = (j, 1)
        table[j][0] = (j, 1)
    for i in range(1, 8):
        table[i][i] = (0, -1)
    for a, b, c in OCT_TRIPLES:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            table[x][y] = (z, 1)
            table[y][x] = (z, -1)
    return table


_OCT = _octonion_table()


def blade_product(ma, mb):
    """Clifford product of basis blades: (sign, mask of the product)."""
    sign = 1
    b = mb
    while b:
        low = b & -b
        # generators of ma strictly above this one each contribute a swap
        if (ma >> low.bit_length()).bit_count() & 1:
            sign = -sign
        b ^= low
    if (ma & mb).bit_count() & 1:
        sign = -sign
    return sign, ma ^ mb


def clifford_product(x, y):
    """Clifford product of two forms over the same frame."""
    if x.n != y.n:
        raise ValueError("clifford product requires matching frame dimension")
    out = {}
    for ma, va in x.c.items():
        for mb, vb in y.c.items():
            sign, m = blade_product(ma, mb)
            out[m] = out.get(m, Fraction(0)) + sign * va * vb
    return Form(x.n, out)


def sigma_form(t):
    """sigma_T = (1/2) sum_k (e_k -| T) ^ (e_k -| T)."""
    out = Form(t.n)
    for k in range(1, t.n + 1):
        ek = t.contract_basis(k)
        out = out + ek.wedge(ek)
    return Fraction(1, 2) * out


def square_parts(t):
    """Clifford square of a form, split by grade: {grade: Form}."""
    sq = clifford_product(t, t)
    return {k: sq.grade_part(k) for k in sq.grades()}


class SpinRep:
    """Spinor module of Cl(R^n) with signed-permutation generators.

    field is "real" (n = 7, 8: octonionic modules, dimensions 8 and 16) or
    "complex" (other n: dimension 2^(n//2) over Q(i)).  perms[i][c] is the row
    of the single nonzero entry of gamma_{i+1} in column c and signs[i][c] its
    value.
    """

    def __init__(self, n, field, perms, signs):
        self.n = n
        self.field = field
        self.perms = perms
        self.signs = signs
        self.dim = len(perms[0]) if perms else 1

    @classmethod
    def build(cls, n, flip=False):
        if not 1 <= n <= 16:
            raise ValueError("spinor modules are built for 1 <= n <= 16")
        if n == 7:
            rep = cls._octonion_left()
        elif n == 8:
            rep = cls._octonion_double()
        else:
            rep = cls._pauli_complex(n)
        if flip:
            rep = rep.flipped()
        return rep

    @classmethod
    def _octonion_left(cls):
        perms, signs = [], []
        for i in range(1, 8):
            p, s = [0] * 8, [0] * 8
            for c in range(8):
                r, sg = _OCT[i][c]
                p[c], s[c] = r, sg
            perms.append(p)
            signs.append(s)
        return cls(7, "real", perms, signs)

    @classmethod
    def _octonion_double(cls):
        """gamma(v)(x, y) = (y vbar, -x v) on O + O, with e_8 = 1."""
        perms, signs = [], []
        for i in range(1, 8):
            p, s = [0] * 16, [0] * 16
            for c in range(8):
                # x block: -x o_i lands in the y block
                r, sg = _OCT[c][i]
                p[c], s[c] = 8 + r, -sg
                # y block: y * conj(o_i) = -y o_i lands in the x block
                p[8 + c], s[8 + c] = r, -sg
            perms.append(p)
            signs.append(s)
        p, s = [0] * 16, [0] * 16
        for c in range(8):
            p[c], s[c] = 8 + c, -1
            p[8 + c], s[8 + c] = c, 1
        perms.append(p)
        signs.append(s)
        return cls(8, "real", perms, signs)

    @staticmethod
    def _tensor(fa, fb):
        """Tensor product of signed permutations (pa, sa) x (pb, sb)."""
        (pa, sa), (pb, sb) = fa, fb
        na, nb = len(pa), len(pb)
        p, s = [0] * (na * nb), [0] * (na * nb)
        for a in range(na):
            for b in range(nb):
                p[a * nb + b] = pa[a] * nb + pb[b]
                s[a * nb + b] = sa[a] * sb[b]
        return p, s

    @classmethod
    def _pauli_complex(cls, n):
        one = Cx(1)
        i_ = Cx(0, 1)
        ident = ([0, 1], [one, one])
        sig3 = ([0, 1], [one, -one])
        isig1 = ([1, 0], [i_, i_])
        isig2 = ([1, 0], [-one, one])  # i*sigma_2: col 0 -> row 1 entry -1, col 1 -> row 0 entry 1

        m = n // 2
        perms, signs = [], []
        for k in range(1, m + 1):
            for head in (isig1, isig2):
                factors = [sig3] * (k - 1) + [head] + [ident] * (m - k)
                acc = factors[0]
                for f in factors[1:]:
                    acc = cls._tensor(acc, f)
                perms.append(acc[0])
                signs.append(acc[1])
        if n % 2:
            # gamma_n = c * gamma_1 ... gamma_2m with c^2 (-1)^m = -1:
            # walk each column through the factors, rightmost acting first
            dim = 1 << m
            cfact = i_ if m % 2 == 0 else one
            p, s = [0] * dim, [one] * dim
            for c in range(dim):
                pos, val = c, cfact
                for g in range(2 * m - 1, -1, -1):
                    val = val * signs[g][pos]
                    pos = perms[g][pos]
                p[c], s[c] = pos, val
            perms.append(p)
            signs.append(s)
        return cls(n, "complex", perms, signs)

    def flipped(self):
        """The other representation class: negate every generator."""
        return SpinRep(
            self.n,
            self.field,
            [list(p) for p in self.perms],
            [[-v for v in s] for s in self.signs],
        )

    def _zero(self):
        return 0 if self.field == "real" else Cx(0)

    def gamma_matrix(self, i):
        """Dense matrix of gamma_i, 1-based."""
        p, s = self.perms[i - 1], self.signs[i - 1]
        out = [[self._zero()] * self.dim for _ in range(self.dim)]
        for c in range(self.dim):
            out[p[c]][c] = s[c]
        return out

    def act(self, form):
        """Dense matrix of the Clifford action of a form."""
        out = [[self._zero()] * self.dim for _ in range(self.dim)]
        if form.n != self.n:
            raise ValueError("form frame does not match the spinor module")
        for mask, coeff in form.c.items():
            factors = []
            m, idx = mask, 0
            while m:
                if m & 1:
                    factors.append(idx)
                m >>= 1
                idx += 1
            for c in range(self.dim):
                pos, sgn = c, 1
                for g in reversed(factors):
                    sgn = sgn * self.signs[g][pos]
                    pos = self.perms[g][pos]
                out[pos][c] = out[pos][c] + coeff * sgn
        return out

    def act_vector(self, form, psi):
        """Clifford action applied to a single spinor, no dense matrix."""
        if form.n != self.n:
            raise ValueError("form frame does not match the spinor module")
        out = [self._zero()] * self.dim
        for mask, coeff in form.c.items():
            factors = []
            m, idx = mask, 0
            while m:
                if m & 1:
                    factors.append(idx)
                m >>= 1
                idx += 1
            for c in range(self.dim):
                x = psi[c]
                if not x:
                    continue
                pos, val = c, coeff * x
                for g in reversed(factors):
                    val = val * self.signs[g][pos]
                    pos = self.perms[g][pos]
                out[pos] = out[pos] + val
        return out

    def lift_two_form(self, omega):
        """spin(n) image of a 2-form: half its Clifford action."""
        if omega.is_zero():
            return [[self._zero()] * self.dim for _ in range(self.dim)]
        if omega.grade() != 2:
            raise ValueError("lift_two_form expects a 2-form")
        mat = self.act(omega)
        half = Fraction(1, 2)
        return [[half * x for x in row] for row in mat]


def matrix_of_two_form(omega, n=None):
    """so(n) matrix M with <M e_a, e_b> = omega(e_a, e_b)."""
    n = n or omega.n
    if not omega.is_zero() and omega.grade() != 2:
        raise ValueError("matrix_of_two_form expects a 2-form")
    M = [[Fraction(0)] * n for _ in range(n)]
    for (a, b), v in omega.terms():
        M[b - 1][a - 1] = v
        M[a - 1][b - 1] = -v
    return M


def two_form_of_matrix(A, n=None):
    """Inverse of matrix_of_two_form on skew matrices."""
    n = n or len(A)
    coeffs = {}
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            v = A[b - 1][a - 1]
            if v:
                coeffs[(1 << (a - 1)) | (1 << (b - 1))] = v
    return Form(n, coeffs)


def _as_real(z):
    if isinstance(z, Cx):
        if z.im:
            raise ValueError("expected a real value, got nonzero imaginary part")
        return z.re
    return z


def det_endomorphism(a, omega, f):
    """Determinant of a + omega + f e_1234 on the 4-dimensional spinor module.

    Returns (direct, closed): the matrix determinant over the complex module
    and the closed product
        [(a+f)^2 + 2(w-, w-)] * [(a-f)^2 + 2(w+, w+)]
    over the (anti-)self-dual halves w+- = (omega -+ *omega)/2.  With the
    module's volume convention the self-dual half acts on the vol = -1
    eigenspace; reversing orientation swaps the two factors but not the
    product's value on its own factor pair.  Both results must agree.
    """
    if omega.n != 4:
        raise ValueError("det_endomorphism works on R^4")
    if not omega.is_zero() and omega.grade() != 2:
        raise ValueError("omega must be a 2-form")
    rep = SpinRep.build(4)
    op = rep.act(Form(4, {0: a}) + omega + f * Form.volume(4))
    direct = _as_real(det_field(op))
    star = omega.hodge()
    half = Fraction(1, 2)
    wplus = half * (omega + star)
    wminus = half * (omega - star)
    closed = ((a + f) ** 2 + 2 * wminus.norm_sq()) * ((a - f) ** 2 + 2 * wplus.norm_sq())
    return direct, closed
