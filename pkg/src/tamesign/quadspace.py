"""Quadratic spaces over finite fields of odd characteristic: reflections,
reflection factorization, spinor norms, and graded spaces with semisimple
isometries.

The bilinear form stored in a QuadSpace is the half-polarization
b(v, w) = (phi(v+w) - phi(v) - phi(w)) / 2, so phi(v) = b(v, v) and a one
dimensional form c x^2 has Gram determinant c.

Factorization into reflections walks an orthogonal basis: at each step the
basis vector is restored by one reflection when the difference vector is
anisotropic, by two otherwise.  This yields at most 2n reflections and needs
no exhaustive vector search.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fields
from .errors import (
    FieldMismatch,
    InvariantViolation,
    IsotropicVector,
    NotAnIsometry,
    NotNormOne,
)
from .fields import SquareClass

# -- small dense linear algebra over a FieldDesc ------------------------------


def mat_identity(field, n):
    return tuple(
        tuple(field.one() if i == j else field.zero() for j in range(n)) for i in range(n)
    )


def mat_mul(A, B):
    n, m = len(A), len(B[0])
    kk = len(B)
    return tuple(
        tuple(sum((A[i][t] * B[t][j] for t in range(kk)), A[i][0].field.zero()) for j in range(m))
        for i in range(n)
    )


def mat_vec(A, v):
    z = v[0].field.zero()
    return tuple(sum((A[i][j] * v[j] for j in range(len(v))), z) for i in range(len(A)))


def mat_transpose(A):
    return tuple(tuple(A[i][j] for i in range(len(A))) for j in range(len(A[0])))


def mat_inv(field, A):
    n = len(A)
    m = [list(A[i]) + [field.one() if i == j else field.zero() for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise InvariantViolation("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col].inv()
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


class QuadSpace:
    """Non-degenerate quadratic space over a FieldDesc, given by its Gram matrix."""

    def __init__(self, field, gram):
        self.field = field
        self.gram = tuple(tuple(field.elem(x) if not isinstance(x, fields.FqElem) else x for x in row) for row in gram)
        self.dim = len(self.gram)
        for i in range(self.dim):
            for j in range(self.dim):
                if self.gram[i][j] != self.gram[j][i]:
                    raise InvariantViolation("Gram matrix must be symmetric")
        if not fields._det(field, [list(r) for r in self.gram]):
            raise InvariantViolation("Gram matrix must be invertible")

    def bilinear(self, v, w):
        z = self.field.zero()
        return sum((v[i] * self.gram[i][j] * w[j] for i in range(self.dim) for j in range(self.dim)), z)

    def phi(self, v):
        return self.bilinear(v, v)

    def is_isometry(self, A):
        At = mat_transpose(A)
        return mat_mul(At, mat_mul(self.gram, A)) == self.gram

    def basis_vector(self, i):
        return tuple(self.field.one() if j == i else self.field.zero() for j in range(self.dim))


def reflection(V: QuadSpace, v) -> tuple:
    """Matrix of the reflection in an anisotropic vector."""
    c = V.phi(v)
    if not c:
        raise IsotropicVector("reflection vector must be anisotropic")
    cinv = c.inv()
    n = V.dim
    cols = []
    for j in range(n):
        e = V.basis_vector(j)
        coef = (V.bilinear(v, e) + V.bilinear(v, e)) * cinv
        cols.append(tuple(e[i] - coef * v[i] for i in range(n)))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def _orthogonal_basis(V: QuadSpace):
    """Vectors u_1..u_n, pairwise orthogonal, each anisotropic."""
    field = V.field
    n = V.dim
    basis = [V.basis_vector(i) for i in range(n)]
    out = []
    work = list(basis)
    while work:
        anis = next((w for w in work if V.phi(w)), None)
        if anis is None:
            # all remaining isotropic; some cross term is nonzero by
            # non-degeneracy, and char != 2 makes the sum anisotropic
            found = None
            for a in range(len(work)):
                for b in range(a + 1, len(work)):
                    cand = tuple(x + y for x, y in zip(work[a], work[b]))
                    if V.phi(cand):
                        found = (a, cand)
                        break
                if found:
                    break
            if found is None:
                raise InvariantViolation("no anisotropic vector in a non-degenerate space")
            work[found[0]] = found[1]
            anis = found[1]
        out.append(anis)
        c = V.phi(anis).inv()
        # projecting the other members keeps them independent: anis is a
        # member of `work`, which stays linearly independent throughout
        work = [
            tuple(x - (V.bilinear(anis, w) * c) * u for x, u in zip(w, anis))
            for w in work
            if w is not anis
        ]
    return out


def decompose(V: QuadSpace, A) -> list:
    """Anisotropic vectors v_1..v_m (m <= 2 dim) with tau_{v_1}...tau_{v_m} = A.

    Works in coordinates of an orthogonal basis, where the form is diagonal
    and a reflection is a cheap rank-one column update."""
    if not V.is_isometry(A):
        raise NotAnIsometry("matrix does not preserve the form")
    n = V.dim
    if n == 0:
        return []
    field = V.field
    zero = field.zero()
    P = mat_transpose(tuple(_orthogonal_basis(V)))  # columns are the basis
    Pinv = mat_inv(field, P)
    gram_p = mat_mul(mat_transpose(P), mat_mul(V.gram, P))
    diag = [gram_p[i][i] for i in range(n)]

    def bil(v, w):
        return sum((d * a * b for d, a, b in zip(diag, v, w)), zero)

    def phi(v):
        return bil(v, v)

    Ap = mat_mul(Pinv, mat_mul(A, P))
    cols = [tuple(Ap[r][j] for r in range(n)) for j in range(n)]

    def reflect_cols(w):
        pw = phi(w).inv()
        two = field.elem(2)
        for j in range(n):
            coef = two * bil(w, cols[j]) * pw
            if coef:
                cols[j] = tuple(c - coef * wi for c, wi in zip(cols[j], w))

    recorded = []
    for i in range(n):
        e = tuple(field.one() if t == i else zero for t in range(n))
        u = cols[i]
        if u == e:
            continue
        diff = tuple(a - b for a, b in zip(u, e))
        if phi(diff):
            reflect_cols(diff)
            recorded.append(diff)
        else:
            summ = tuple(a + b for a, b in zip(u, e))
            reflect_cols(summ)
            reflect_cols(e)
            recorded.append(summ)
            recorded.append(e)
    ident = [tuple(field.one() if t == j else zero for t in range(n)) for j in range(n)]
    if cols != ident:
        raise InvariantViolation("factorization did not terminate at the identity")
    return [mat_vec(P, w) for w in recorded]


def spinor_norm(V: QuadSpace, A) -> SquareClass:
    """Product of the form values over any reflection factorization."""
    cls = SquareClass(V.field, False)
    for v in decompose(V, A):
        cls = cls * fields.sgn(V.phi(v))
    return cls


# -- graded spaces -------------------------------------------------------------

ASYM_BLOCK = "asymmetric"
HERM_BLOCK = "hermitian"
ANISO_BLOCK = "anisotropic"


@dataclass(frozen=True)
class GradedBlock:
    """One Sigma-orbit worth of grading data.

    kind ASYM: a hyperbolic pair of dim_i lines over the degree f_i subfield.
    kind HERM: dim_i lines over degree f_i with Hermitian scales over f_i/2.
    kind ANISO (negation-fixed): dim_i lines over f_i with diagonal form values.
    `form` holds the scales/values as integer codes into the block field.
    """

    kind: str
    f_i: int
    dim_i: int
    form: tuple


class GradedQuadSpace:
    def __init__(self, k, blocks):
        self.k = k
        self.blocks = tuple(blocks)
        for blk in self.blocks:
            if blk.kind == HERM_BLOCK and blk.f_i % 2 != 0:
                raise InvariantViolation("hermitian block needs even relative degree")
            if blk.kind in (HERM_BLOCK, ANISO_BLOCK) and len(blk.form) != blk.dim_i:
                raise InvariantViolation("one scale per block line required")

    def block_field(self, blk):
        return fields.GF(self.k.p, self.k.degree * blk.f_i)

    def pm_field(self, blk):
        return fields.GF(self.k.p, self.k.degree * blk.f_i // 2)

    def realize(self):
        """Assemble the k-rational quadratic space with trace forms per block."""
        if getattr(self, "_realized", None) is not None:
            return self._realized
        gram_blocks = []
        for blk in self.blocks:
            gram_blocks.append(self._block_gram(blk))
        n = sum(len(g) for g in gram_blocks)
        zero = self.k.zero()
        gram = [[zero] * n for _ in range(n)]
        off = 0
        self.slices = []
        for g in gram_blocks:
            d = len(g)
            for i in range(d):
                for j in range(d):
                    gram[off + i][off + j] = g[i][j]
            self.slices.append((off, d))
            off += d
        self._realized = QuadSpace(self.k, gram)
        return self._realized

    def _basis_powers(self, ki):
        g = ki.gen()
        f_rel = ki.degree // self.k.degree
        out = [ki.one()]
        for _ in range(f_rel - 1):
            out.append(out[-1] * g)
        return out

    def _tr(self, val, sub):
        return fields.project(fields.trace(val, sub), self.k) if sub != self.k else fields.trace(val, self.k)

    def _block_gram(self, blk):
        ki = self.block_field(blk)
        pw = self._basis_powers(ki)
        f_rel = len(pw)
        half = self.k.elem(2).inv()
        if blk.kind == ASYM_BLOCK:
            # hyperbolic pairs: b(z+w, z'+w') picks up Tr(z w' + z' w)/2
            d = blk.dim_i
            size = 2 * d * f_rel
            zero = self.k.zero()
            g = [[zero] * size for _ in range(size)]
            for a in range(d):
                for j1 in range(f_rel):
                    for j2 in range(f_rel):
                        t = half * fields.trace(pw[j1] * pw[j2], self.k)
                        r = a * f_rel + j1
                        c = (d + a) * f_rel + j2
                        g[r][c] = t
                        g[c][r] = t
            return g
        if blk.kind == ANISO_BLOCK:
            d = blk.dim_i
            size = d * f_rel
            zero = self.k.zero()
            g = [[zero] * size for _ in range(size)]
            for a in range(d):
                c_val = ki.elem(blk.form[a])
                for j1 in range(f_rel):
                    for j2 in range(f_rel):
                        g[a * f_rel + j1][a * f_rel + j2] = fields.trace(
                            c_val * pw[j1] * pw[j2], self.k
                        )
            return g
        # hermitian: phi(x) = Tr_{pm/k}(c x sigma(x)); the polarized entry is
        # Tr_{pm/k}(c (x sigma(y) + y sigma(x)))/2, and tracing the pm-rational
        # expr from the top field doubles it, hence the two half factors
        kpm = self.pm_field(blk)
        q_pm = kpm.order
        d = blk.dim_i
        size = d * f_rel
        zero = self.k.zero()
        g = [[zero] * size for _ in range(size)]
        for a in range(d):
            c_val = fields.embed(kpm.elem(blk.form[a]), ki)
            for j1 in range(f_rel):
                for j2 in range(f_rel):
                    expr = c_val * (pw[j1] * pw[j2] ** q_pm + pw[j2] * pw[j1] ** q_pm)
                    g[a * f_rel + j1][a * f_rel + j2] = half * half * fields.trace(expr, self.k)
        return g

    def mult_matrix(self, blk, mu):
        """k-matrix of multiplication by mu on the block field."""
        ki = self.block_field(blk)
        pw = self._basis_powers(ki)
        cols = [self._k_coords(ki, mu * b) for b in pw]
        f_rel = len(pw)
        return tuple(tuple(cols[j][i] for j in range(f_rel)) for i in range(f_rel))

    def _k_coords(self, ki, y):
        """Coordinates of y in the power basis of ki over k."""
        pw = self._basis_powers(ki)
        f_rel = len(pw)
        m = self.k.degree
        p = self.k.p
        # solve over GF(p): unknowns are the GF(p)-digits of the k-coefficients
        kbasis = []
        kg = fields.embed(self.k.gen(), ki) if m > 1 else ki.one()
        acc = ki.one()
        for _ in range(m):
            kbasis.append(acc)
            acc = acc * kg
        cols = []
        for j in range(f_rel):
            for t in range(m):
                cols.append(kbasis[t] * pw[j])
        # GF(p)-linear solve: each ki element is a coefficient tuple of length ki.degree
        size = ki.degree
        mat = [[(col.coeffs[r] if r < len(col.coeffs) else 0) for col in cols] for r in range(size)]
        rhs = [(y.coeffs[r] if r < len(y.coeffs) else 0) for r in range(size)]
        sol = _solve_gfp(p, mat, rhs)
        out = []
        for j in range(f_rel):
            digits = sol[j * m : (j + 1) * m]
            out.append(self.k.elem(list(digits)))
        return out


def _solve_gfp(p, mat, rhs):
    n = len(mat)
    m = len(mat[0])
    aug = [list(mat[r]) + [rhs[r]] for r in range(n)]
    piv_cols = []
    r0 = 0
    for c in range(m):
        piv = next((r for r in range(r0, n) if aug[r][c] % p), None)
        if piv is None:
            continue
        aug[r0], aug[piv] = aug[piv], aug[r0]
        inv = pow(aug[r0][c], -1, p)
        aug[r0] = [(x * inv) % p for x in aug[r0]]
        for r in range(n):
            if r != r0 and aug[r][c] % p:
                f = aug[r][c]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[r0])]
        piv_cols.append(c)
        r0 += 1
        if r0 == n:
            break
    sol = [0] * m
    for r, c in enumerate(piv_cols):
        sol[c] = aug[r][m] % p
    for r in range(r0, n):
        if aug[r][m] % p:
            raise InvariantViolation("inconsistent coordinate system")
    return sol


class GradedIsometry:
    """Scalar action per block: lambda in the block field, inverse on the
    opposite side of an asymmetric pair, norm-one on a hermitian block, +-1 on
    an anisotropic one."""

    def __init__(self, space: GradedQuadSpace, lambdas):
        self.space = space
        self.lambdas = []
        if len(lambdas) != len(space.blocks):
            raise InvariantViolation("one scalar per block required")
        for blk, lam in zip(space.blocks, lambdas):
            ki = space.block_field(blk)
            lam = ki.elem(lam) if not isinstance(lam, fields.FqElem) else lam
            if lam.field != ki:
                raise FieldMismatch("scalar not in the block field")
            if not lam:
                raise InvariantViolation("scalar must be invertible")
            if blk.kind == HERM_BLOCK:
                q_pm = space.pm_field(blk).order
                if lam ** (q_pm + 1) != ki.one():
                    raise NotNormOne("hermitian scalar must be norm-one")
            if blk.kind == ANISO_BLOCK and lam * lam != ki.one():
                raise InvariantViolation("scalar on a negation-fixed block must square to one")
            self.lambdas.append(lam)

    def realize(self, realized_space=None):
        sp = self.space
        V = realized_space if realized_space is not None else sp.realize()
        n = V.dim
        zero, one = sp.k.zero(), sp.k.one()
        A = [[zero] * n for _ in range(n)]
        for (off, size), blk, lam in zip(sp.slices, sp.blocks, self.lambdas):
            f_rel = sp.block_field(blk).degree // sp.k.degree
            if blk.kind == ASYM_BLOCK:
                M1 = sp.mult_matrix(blk, lam)
                M2 = sp.mult_matrix(blk, lam.inv())
                d = blk.dim_i
                for a in range(d):
                    for i in range(f_rel):
                        for j in range(f_rel):
                            A[off + a * f_rel + i][off + a * f_rel + j] = M1[i][j]
                            A[off + (d + a) * f_rel + i][off + (d + a) * f_rel + j] = M2[i][j]
            else:
                M = sp.mult_matrix(blk, lam)
                d = blk.dim_i
                for a in range(d):
                    for i in range(f_rel):
                        for j in range(f_rel):
                            A[off + a * f_rel + i][off + a * f_rel + j] = M[i][j]
        return tuple(tuple(row) for row in A)


def spinor_formula(space: GradedQuadSpace, iso: GradedIsometry) -> SquareClass:
    """Closed three-factor product for the spinor norm of a graded scalar
    isometry: discriminant and form determinant on negation-fixed blocks
    acting by -1, norms of the scalar determinant on asymmetric pairs, norms
    of Lang representatives on hermitian blocks."""
    k = space.k
    cls = SquareClass(k, False)
    for blk, lam in zip(space.blocks, iso.lambdas):
        ki = space.block_field(blk)
        if blk.kind == ANISO_BLOCK:
            if lam == ki.one():
                continue
            disc = fields.disc_ext(ki, k)
            if blk.dim_i % 2 == 1 and disc.nontrivial:
                cls = cls * SquareClass(k, True)
            det_form = ki.one()
            for c in blk.form:
                det_form = det_form * ki.elem(c)
            nrm = fields.norm(det_form, k)
            cls = cls * fields.sgn(nrm)
        elif blk.kind == ASYM_BLOCK:
            det = lam**blk.dim_i
            nrm = fields.norm(det, k)
            cls = cls * fields.sgn(nrm)
        else:
            det = lam**blk.dim_i
            kpm = space.pm_field(blk)
            a = fields.lang(det, kpm)
            nrm = fields.norm(a, k)
            cls = cls * fields.sgn(nrm)
    return cls
