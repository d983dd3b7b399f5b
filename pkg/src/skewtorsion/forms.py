"""Exterior algebra on an orthonormal frame of R^n, exact coefficients.

A blade e_{i1...ik} is a bitmask (index i occupies bit i-1), so wedge and
interior products reduce to popcount sign rules.  Forms may be inhomogeneous;
the metric pairing insists on a common grade because that is the only version
the geometry ever needs.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import det_field
from .scalars import format_scalar, parse_scalar

_ZERO = Fraction(0)


def _mask_of(indices, n):
    mask, sign = 0, 1
    idx = list(indices)
    # insertion sort, tracking the permutation parity
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for i in idx:
        if not 1 <= i <= n:
            raise ValueError(f"index {i} out of range 1..{n}")
        bit = 1 << (i - 1)
        if mask & bit:
            return 0, 0  # repeated index
        mask |= bit
    return mask, sign


def _indices_of(mask):
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _wedge_sign(a, b):
    """Sign of e_a ^ e_b for disjoint masks: count crossings."""
    sign = 1
    while b:
        low = b & -b
        if (a >> low.bit_length()).bit_count() & 1:
            sign = -sign
        b ^= low
    return sign


class Form:
    """Exterior form on R^n with exact scalar coefficients."""

    __slots__ = ("n", "c")

    def __init__(self, n, coeffs=None):
        if n < 0 or n > 16:
            raise ValueError("frame dimension must be in 0..16")
        self.n = n
        self.c = {}
        if coeffs:
            for mask, val in coeffs.items():
                if mask >> n:
                    raise ValueError("blade outside frame dimension")
                if val:
                    self.c[mask] = self.c.get(mask, _ZERO) + val
            self.c = {m: v for m, v in self.c.items() if v}

    @classmethod
    def blade(cls, n, indices, coeff=1):
        mask, sign = _mask_of(indices, n)
        if sign == 0 or not coeff:
            return cls(n)
        return cls(n, {mask: sign * coeff})

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def volume(cls, n):
        return cls(n, {(1 << n) - 1: Fraction(1)})

    def is_zero(self):
        return not self.c

    def grades(self):
        return sorted({m.bit_count() for m in self.c})

    def grade(self):
        """The common grade, or None for zero or mixed forms."""
        gs = self.grades()
        return gs[0] if len(gs) == 1 else None

    def grade_part(self, k):
        return Form(self.n, {m: v for m, v in self.c.items() if m.bit_count() == k})

    def terms(self):
        """Deterministic iteration: (indices tuple, coefficient)."""
        for mask in sorted(self.c, key=lambda m: (m.bit_count(), _indices_of(m))):
            yield _indices_of(mask), self.c[mask]

    def coeff(self, indices):
        mask, sign = _mask_of(indices, self.n)
        if sign == 0:
            return _ZERO
        return sign * self.c.get(mask, _ZERO)

    def _binop(self, other, fn):
        if not isinstance(other, Form) or other.n != self.n:
            raise ValueError("form arithmetic requires matching frame dimension")
        out = dict(self.c)
        for m, v in other.c.items():
            out[m] = fn(out.get(m, _ZERO), v)
        return Form(self.n, out)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return Form(self.n, {m: -v for m, v in self.c.items()})

    def __rmul__(self, scalar):
        if isinstance(scalar, Form):
            return NotImplemented
        return Form(self.n, {m: scalar * v for m, v in self.c.items()})

    def __mul__(self, scalar):
        return self.__rmul__(scalar)

    def __truediv__(self, scalar):
        inv = 1 / Fraction(scalar) if isinstance(scalar, int) else 1 / scalar
        return self.__rmul__(inv)

    def __eq__(self, other):
        return isinstance(other, Form) and self.n == other.n and self.c == other.c

    __hash__ = None

    def wedge(self, other):
        if other.n != self.n:
            raise ValueError("wedge requires matching frame dimension")
        out = {}
        for ma, va in self.c.items():
            for mb, vb in other.c.items():
                if ma & mb:
                    continue
                m = ma | mb
                out[m] = out.get(m, _ZERO) + _wedge_sign(ma, mb) * va * vb
        return Form(self.n, out)

    def contract_basis(self, i):
        """Interior product e_i -| self."""
        if self.c and self.grades() == [0]:
            raise ValueError("interior product of a 0-form is undefined")
        bit = 1 << (i - 1)
        out = {}
        for m, v in self.c.items():
            if m & bit:
                sign = -1 if (m & (bit - 1)).bit_count() & 1 else 1
                out[m ^ bit] = out.get(m ^ bit, _ZERO) + sign * v
        return Form(self.n, out)

    def contract_vector(self, v):
        """Interior product with a coefficient vector of length n."""
        if self.c and self.grades() == [0]:
            raise ValueError("interior product of a 0-form is undefined")
        out = Form(self.n)
        for i, vi in enumerate(v, start=1):
            if vi:
                out = out + vi * self.contract_basis(i)
        return out

    def hodge(self):
        """Star for the standard orientation: e_S ^ *e_S = vol."""
        full = (1 << self.n) - 1
        out = {}
        for m, v in self.c.items():
            comp = full ^ m
            out[comp] = out.get(comp, _ZERO) + _wedge_sign(m, comp) * v
        return Form(self.n, out)

    def inner(self, other):
        """Metric pairing of two forms of one common grade."""
        if other.n != self.n:
            raise ValueError("inner product requires matching frame dimension")
        ga, gb = self.grade(), other.grade()
        if self.is_zero() or other.is_zero():
            return _ZERO
        if ga is None or gb is None or ga != gb:
            raise ValueError("inner product requires homogeneous forms of one grade")
        return self._dot(other)

    def _dot(self, other):
        acc = _ZERO
        for m, v in self.c.items():
            w = other.c.get(m)
            if w:
                acc = acc + v * w
        return acc

    def norm_sq(self):
        return self._dot(self)

    def pullback(self, A):
        """(A* w)(v_1,...,v_k) = w(A v_1, ..., A v_k), one grade at a time."""
        out = {}
        cols = list(zip(*A))
        for m, v in self.c.items():
            rows = [i - 1 for i in _indices_of(m)]
            k = len(rows)
            if k == 0:
                out[0] = out.get(0, _ZERO) + v
                continue
            for target in _masks_of_grade(self.n, k):
                tcols = [i - 1 for i in _indices_of(target)]
                minor = [[cols[c][r] for c in tcols] for r in rows]
                d = det_field(minor)
                if d:
                    out[target] = out.get(target, _ZERO) + v * d
        return Form(self.n, out)

    def __repr__(self):
        if self.is_zero():
            return "Form(0)"
        parts = [
            f"{format_scalar(v)}*e{''.join(map(str, idx)) if max(idx) < 10 else '_'.join(map(str, idx))}"
            for idx, v in self.terms()
        ]
        return " + ".join(parts)


def _masks_of_grade(n, k):
    # Gosper's hack over n-bit masks with k bits set
    if k == 0:
        yield 0
        return
    m = (1 << k) - 1
    top = 1 << n
    while m < top:
        yield m
        c = m & -m
        r = m + c
        m = (((r ^ m) >> 2) // c) | r


def wedge(*forms):
    out = forms[0]
    for f in forms[1:]:
        out = out.wedge(f)
    return out


def blades_of_grade(n, k):
    """All grade-k basis blades of R^n in deterministic order."""
    return [Form(n, {m: Fraction(1)}) for m in sorted(_masks_of_grade(n, k))]


def form_to_vector(form, k=None):
    """Coefficient vector over the sorted grade-k blade basis."""
    if k is None:
        k = form.grade()
        if k is None:
            raise ValueError("form_to_vector needs a homogeneous form or a grade")
    return [form.c.get(m, _ZERO) for m in sorted(_masks_of_grade(form.n, k))]


def vector_to_form(n, k, vec):
    masks = sorted(_masks_of_grade(n, k))
    if len(vec) != len(masks):
        raise ValueError("coefficient vector has the wrong length")
    return Form(n, dict(zip(masks, vec)))


def random_form(n, k, rng, max_num=9, max_den=4):
    """Dense random rational k-form; never the zero form."""
    while True:
        coeffs = {
            m: Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
            for m in _masks_of_grade(n, k)
        }
        f = Form(n, coeffs)
        if not f.is_zero():
            return f


def parse_form(text, n=None):
    """Text format: one term per line, '1 2 3 : coeff'; '#' comments.

    The frame dimension is the largest index seen unless n is given.
    """
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected 'i j k : coeff', got {raw!r}")
        left, right = line.split(":", 1)
        try:
            indices = tuple(int(tok) for tok in left.split())
            coeff = parse_scalar(right)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        if not indices:
            raise ValueError(f"line {lineno}: a term needs at least one index")
        if min(indices) < 1:
            raise ValueError(f"line {lineno}: indices are 1-based")
        entries.append((lineno, indices, coeff))
    dim = n
    if dim is None:
        dim = max((max(idx) for _, idx, _ in entries), default=0)
    out = Form(dim)
    for lineno, indices, coeff in entries:
        if max(indices) > dim:
            raise ValueError(f"line {lineno}: index exceeds frame dimension {dim}")
        out = out + Form.blade(dim, indices, coeff)
    return out


def format_form(form):
    lines = [f"# frame dimension {form.n}"]
    for idx, v in form.terms():
        lines.append(f"{' '.join(map(str, idx))} : {format_scalar(v)}")
    return "\n".join(lines) + "\n"
