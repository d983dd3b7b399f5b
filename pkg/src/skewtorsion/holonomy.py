"""Holonomy algebras of constant-torsion connections on flat frames.

For a k-form T the contractions X -| T generate a Lie algebra g*_T, either as
so(n) matrices (vector picture, k = 3) or as Clifford images on the spinor
module.  Everything downstream of those generators (closures, fixed spinors,
annihilating forms, supports, splittings, prolongations) lives here.
"""

from __future__ import annotations

from fractions import Fraction

from .clifford import SpinRep, matrix_of_two_form
from .forms import Form, blades_of_grade, form_to_vector, vector_to_form
from .liealg import (
    bracket_closure,
    closure_report,
    derived_dimension,
    invariant_subspace_search,
    vectorize_matrix,
)
from .linalg import (
    SpanTracker,
    clear_denominators,
    det_field,
    linear_solve,
    nullspace,
    orthoprojector,
    sparse_rank_int,
)


def g2_form(n=7):
    """The standard 3-form with 14-dimensional isotropy algebra."""
    t = Form(n)
    for idx, sign in (
        ((1, 2, 7), 1),
        ((1, 3, 5), 1),
        ((1, 4, 6), -1),
        ((2, 3, 6), -1),
        ((2, 4, 5), -1),
        ((3, 4, 7), 1),
        ((5, 6, 7), 1),
    ):
        t = t + Form.blade(n, idx, Fraction(sign))
    return t


def generic_four_form():
    """A 4-form on R^7 whose contraction algebra is as large as it gets (46)."""
    t = Form(7)
    for idx, sign in (
        ((1, 2, 3, 4), 1),
        ((1, 2, 5, 6), -1),
        ((1, 4, 5, 7), -1),
        ((1, 3, 6, 7), 1),
        ((2, 3, 5, 7), -1),
        ((2, 4, 6, 7), -1),
        ((3, 4, 5, 6), -1),
    ):
        t = t + Form.blade(7, idx, Fraction(sign))
    return t


def contraction_generators(t, mode="vector", rep=None):
    """The family {e_i -| T} as matrices.

    mode "vector": so(n) matrices, defined for 3-forms only.
    mode "spinor": Clifford actions of the contractions on the spinor module.
    Zero contractions are dropped.
    """
    n = t.n
    if mode == "vector":
        if not t.is_zero() and t.grade() != 3:
            raise ValueError("the so(n) picture needs a 3-form")
        gens = []
        for i in range(1, n + 1):
            w = t.contract_basis(i)
            if not w.is_zero():
                gens.append(matrix_of_two_form(w, n))
        return gens
    if mode == "spinor":
        rep = rep or SpinRep.build(n)
        gens = []
        for i in range(1, n + 1):
            w = t.contract_basis(i)
            if not w.is_zero():
                gens.append(rep.act(w))
        return gens
    raise ValueError(f"unknown mode {mode!r}")


def holonomy_algebra(t, mode="vector", rep=None):
    """Basis of the Lie algebra generated by the contractions of T."""
    return bracket_closure(contraction_generators(t, mode=mode, rep=rep))


def holonomy_report(t, mode="vector", rep=None, rng=None):
    return closure_report(contraction_generators(t, mode=mode, rep=rep), rng=rng)


def derived_holonomy(t, mode="vector", rep=None):
    """Basis dimension of h*_T = [g*_T, g*_T]."""
    return derived_dimension(holonomy_algebra(t, mode=mode, rep=rep))


def invariant_spinors(t, rep=None):
    """Joint kernel of the Clifford actions of all contractions of T."""
    rep = rep or SpinRep.build(t.n)
    mats = contraction_generators(t, mode="spinor", rep=rep)
    if not mats:
        return [
            [Fraction(1) if i == j else Fraction(0) for j in range(rep.dim)]
            for i in range(rep.dim)
        ]
    stacked = []
    for M in mats:
        stacked.extend(M)
    return nullspace(stacked)


def annihilating_forms(psi, k, rep):
    """All k-forms T with (e_i -| T) . psi = 0 for every frame vector."""
    n = rep.n
    blades = blades_of_grade(n, k)
    columns = []
    for b in blades:
        col = []
        for i in range(1, n + 1):
            w = b.contract_basis(i)
            col.extend(rep.act_vector(w, psi) if not w.is_zero() else [0] * rep.dim)
        columns.append(col)
    rows = [list(r) for r in zip(*columns)]
    kernel = nullspace(rows)
    return [vector_to_form(n, k, v) for v in kernel]


def support_reduction(t):
    """(support_dim, support_basis, kernel_basis) for the direction support.

    The kernel is {X : X -| T = 0}; the support is its orthocomplement, the
    smallest coordinate-free subspace carrying T.
    """
    n = t.n
    if t.is_zero():
        return 0, [], [
            [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i in range(n)
        ]
    k = t.grade()
    rows = []
    for i in range(1, n + 1):
        rows.append(form_to_vector(t.contract_basis(i), k - 1))
    cols = [list(c) for c in zip(*rows)]
    kernel = nullspace(cols)
    if kernel:
        support = nullspace(kernel)
    else:
        support = [
            [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i in range(n)
        ]
    return len(support), support, kernel


def form_derivation(A, phi):
    """so(n) action on forms: (L_A phi)(v,...) = sum phi(..., A v_m, ...)."""
    n = phi.n
    out = Form(n)
    for i in range(1, n + 1):
        col = [A[r][i - 1] for r in range(n)]
        if not any(col):
            continue
        contr = phi.contract_vector(col)
        out = out + Form.blade(n, (i,)).wedge(contr)
    return out


def isotropy_algebra(phi):
    """Basis of {A in so(n) : L_A phi = 0} as matrices."""
    n = phi.n
    two_blades = blades_of_grade(n, 2)
    k = phi.grade()
    rows_per = []
    for b in two_blades:
        A = matrix_of_two_form(b, n)
        rows_per.append(form_to_vector(form_derivation(A, phi), k))
    cols = [list(c) for c in zip(*rows_per)]
    kernel = nullspace(cols)
    return [matrix_of_two_form(vector_to_form(n, 2, v), n) for v in kernel]


def split_torsion(t):
    """Orthogonal invariant splitting of a 3-form, when one exists.

    Components are the restrictions of T to the orbit subspaces of the frame
    vectors under the vector-picture closure.  If the pieces fail to re-sum
    to T (cross terms), the form is reported as a single component.
    Returns a list of (projector, component) pairs; empty for T = 0.
    """
    if t.is_zero():
        return []
    n = t.n
    basis = holonomy_algebra(t, mode="vector")
    subspaces = []
    seen = SpanTracker(n)
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        if seen.contains(e):
            continue
        tracker = SpanTracker(n)
        stack = [e]
        tracker.add(e)
        while stack:
            v = stack.pop()
            for M in basis:
                w = [
                    sum((M[r][c] * v[c] for c in range(n) if v[c]), Fraction(0))
                    for r in range(n)
                ]
                if tracker.add(w):
                    stack.append(w)
        for v in tracker.vectors:
            seen.add(v)
        subspaces.append(tracker.vectors)
    merged = []
    for vecs in subspaces:
        placed = False
        for grp in merged:
            probe = SpanTracker(n)
            for v in grp:
                probe.add(v)
            if any(probe.contains(v) or not probe.add(v) for v in vecs):
                # overlap: fold the new vectors into the group span
                grp.extend(v for v in vecs if v not in grp)
                placed = True
                break
        if not placed:
            merged.append(list(vecs))
    out = []
    total = Form(n)
    for grp in merged:
        tracker = SpanTracker(n)
        basis_vecs = [v for v in grp if tracker.add(v)]
        P = orthoprojector(basis_vecs)
        comp = t.pullback(P)
        out.append((P, comp))
        total = total + comp
    if total != t:
        full = [
            [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i in range(n)
        ]
        return [(full, t)]
    return out


def invariant_two_forms(t, rng=None, retries=8):
    """2-forms commuting with the vector-picture closure of T.

    Returns (basis_forms, nondegenerate_example_or_None).  The example is
    exact: a rational combination with nonzero determinant; None when the
    space is zero or all sampled combinations are degenerate.
    """
    import random

    n = t.n
    basis = holonomy_algebra(t, mode="vector")
    two_blades = blades_of_grade(n, 2)
    cols = []
    for b in two_blades:
        M = matrix_of_two_form(b, n)
        col = []
        for A in basis:
            col.extend(
                vectorize_matrix(
                    [
                        [
                            sum(
                                (A[r][k] * M[k][c] - M[r][k] * A[k][c] for k in range(n)),
                                Fraction(0),
                            )
                            for c in range(n)
                        ]
                        for r in range(n)
                    ]
                )
            )
        cols.append(col)
    if basis:
        rows = [list(r) for r in zip(*cols)]
        kernel = nullspace(rows)
    else:
        kernel = [form_to_vector(b, 2) for b in two_blades]
    forms = [vector_to_form(n, 2, v) for v in kernel]
    if not forms:
        return [], None
    rng = rng or random.Random(23)
    for _ in range(retries):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in forms]
        omega = Form(n)
        for c, f in zip(coeffs, forms):
            omega = omega + c * f
        if omega.is_zero():
            continue
        M = matrix_of_two_form(omega, n)
        if det_field(M):
            return forms, omega
    return forms, None


def antisym_prolongation(g_basis, n, want_basis=True):
    """3-forms all of whose contractions lie in the span of g_basis.

    The conditions are lambda(e_i -| T) = 0 for every functional lambda
    annihilating g inside so(n).  Returns (dim, basis_forms); basis_forms is
    empty when want_basis is False or the space is zero.
    """
    two_blades = blades_of_grade(n, 2)
    g_rows = []
    for A in g_basis:
        w = Form(n)
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                v = A[b - 1][a - 1]
                if v:
                    w = w + Form.blade(n, (a, b), v)
        g_rows.append(form_to_vector(w, 2))
    annihilators = nullspace([list(c) for c in zip(*g_rows)]) if g_rows else None
    if annihilators is None:
        annihilators = [form_to_vector(b, 2) for b in two_blades]
    if not annihilators:
        return _binom(n, 3), (blades_of_grade(n, 3) if want_basis else [])
    three_blades = blades_of_grade(n, 3)
    sparse_rows = []
    dense_needed = want_basis
    for lam in annihilators:
        lam_ints = clear_denominators(lam)
        for i in range(1, n + 1):
            row = {}
            for j, b in enumerate(three_blades):
                w = b.contract_basis(i)
                if w.is_zero():
                    continue
                acc = 0
                for pos, lv in enumerate(lam_ints):
                    if lv:
                        wv = form_to_vector(w, 2)[pos]
                        if wv:
                            acc += lv * wv
                if acc:
                    row[j] = acc
            if row:
                sparse_rows.append(row)
    nvars = len(three_blades)
    rank = sparse_rank_int(sparse_rows, nvars)
    dim = nvars - rank
    if dim == 0 or not dense_needed:
        return dim, []
    dense = []
    for row in sparse_rows:
        r = [Fraction(0)] * nvars
        for c, v in row.items():
            r[c] = Fraction(v)
        dense.append(r)
    kernel = nullspace(dense)
    return dim, [vector_to_form(n, 3, v) for v in kernel]


def _binom(n, k):
    from math import comb

    return comb(n, k)
