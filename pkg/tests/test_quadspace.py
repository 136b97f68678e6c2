import itertools
import random

import pytest

from tamesign import checks, fields, quadspace as Q
from tamesign.errors import InvariantViolation, IsotropicVector, NotAnIsometry, NotNormOne


def diag_space(field, entries):
    n = len(entries)
    return Q.QuadSpace(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def test_reflection_basics():
    k3 = fields.GF(3)
    V = diag_space(k3, [1, 1])
    e0 = V.basis_vector(0)
    tau = Q.reflection(V, e0)
    assert Q.mat_vec(tau, e0) == tuple(-c for c in e0)
    assert Q.mat_mul(tau, tau) == Q.mat_identity(k3, 2)
    assert fields._det(k3, [list(r) for r in tau]) == -k3.one()
    # scaling invariance of the reflection
    assert Q.reflection(V, tuple(k3.elem(2) * c for c in e0)) == tau
    with pytest.raises(IsotropicVector):
        Q.reflection(Q.QuadSpace(k3, [[0, 1], [1, 0]]), (k3.one(), k3.zero()))


def test_reflection_spinor_norm_is_form_value():
    for p in (3, 5, 7):
        k = fields.GF(p)
        V = diag_space(k, [1, 2, 1])
        rng = random.Random(p)
        for _ in range(25):
            v = tuple(k.elem(rng.randrange(p)) for _ in range(3))
            if not any(v) or not V.phi(v):
                continue
            assert Q.spinor_norm(V, Q.reflection(V, v)) == fields.sgn(V.phi(v))


def test_decompose_roundtrip():
    rng = random.Random(0)
    for p in (3, 5):
        k = fields.GF(p)
        V = diag_space(k, [1, 1, 2])
        assert Q.decompose(V, Q.mat_identity(k, 3)) == []
        for _ in range(30):
            # random isometry as a product of random reflections
            A = Q.mat_identity(k, 3)
            for _ in range(rng.randint(1, 5)):
                v = tuple(k.elem(rng.randrange(p)) for _ in range(3))
                if any(v) and V.phi(v):
                    A = Q.mat_mul(Q.reflection(V, v), A)
            vs = Q.decompose(V, A)
            assert len(vs) <= 2 * V.dim
            B = Q.mat_identity(k, 3)
            for v in vs:
                assert V.phi(v)
                B = Q.mat_mul(B, Q.reflection(V, v))
            assert B == A


def test_minus_identity_two_reflections():
    k3 = fields.GF(3)
    V = diag_space(k3, [1, 1])
    minus = tuple(tuple(-x for x in row) for row in Q.mat_identity(k3, 2))
    vs = Q.decompose(V, minus)
    assert len(vs) == 2
    assert V.bilinear(vs[0], vs[1]) == k3.zero()


def test_not_an_isometry():
    k3 = fields.GF(3)
    V = diag_space(k3, [1, 1])
    bad = ((k3.one(), k3.one()), (k3.zero(), k3.one()))  # shear, not orthogonal
    with pytest.raises(NotAnIsometry):
        Q.decompose(V, bad)


def test_spinor_homomorphism_exhaustive_O2():
    k3 = fields.GF(3)
    V = diag_space(k3, [1, 1])
    els = [k3.elem(i) for i in range(3)]
    group = [
        (e[0:2], e[2:4])
        for e in itertools.product(els, repeat=4)
        if V.is_isometry((e[0:2], e[2:4]))
    ]
    assert len(group) == 8
    sn = {A: Q.spinor_norm(V, A) for A in group}
    for A in group:
        for B in group:
            assert sn[Q.mat_mul(A, B)] == sn[A] * sn[B]
    # commutators land in the kernel
    for A in group:
        for B in group:
            if fields._det(k3, [list(r) for r in A]) == k3.one() and fields._det(
                k3, [list(r) for r in B]
            ) == k3.one():
                Ainv = Q.mat_inv(k3, A)
                Binv = Q.mat_inv(k3, B)
                comm = Q.mat_mul(Q.mat_mul(A, B), Q.mat_mul(Ainv, Binv))
                assert not Q.spinor_norm(V, comm).nontrivial


def test_unipotent_in_SO_has_trivial_spinor_norm():
    # split 3-dim form with an isotropic flag and its root subgroup
    for p in (3, 5, 7):
        k = fields.GF(p)
        V = Q.QuadSpace(k, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        for t in range(1, p):
            tt = k.elem(t)
            two_inv = k.elem(2).inv()
            A = (
                (k.one(), -tt, -(tt * tt) * two_inv),
                (k.zero(), k.one(), tt),
                (k.zero(), k.zero(), k.one()),
            )
            assert V.is_isometry(A)
            assert not Q.spinor_norm(V, A).nontrivial


def test_scale_invariance_on_rotations():
    # for elements of the special orthogonal group the spinor norm does not
    # change when the form is scaled
    k5 = fields.GF(5)
    for scale in (2, 3):
        V1 = diag_space(k5, [1, 1])
        V2 = diag_space(k5, [scale, scale])
        for e in itertools.product([k5.elem(i) for i in range(5)], repeat=4):
            A = (e[0:2], e[2:4])
            if not V1.is_isometry(A):
                continue
            if fields._det(k5, [list(r) for r in A]) != k5.one():
                continue
            assert Q.spinor_norm(V1, A) == Q.spinor_norm(V2, A)


def test_orthogonal_sum_additivity():
    k3 = fields.GF(3)
    rng = random.Random(2)
    V1 = diag_space(k3, [1, 2])
    V2 = diag_space(k3, [1, 1])
    V = diag_space(k3, [1, 2, 1, 1])
    for _ in range(20):
        A1 = Q.mat_identity(k3, 2)
        A2 = Q.mat_identity(k3, 2)
        for _ in range(rng.randint(0, 3)):
            v = tuple(k3.elem(rng.randrange(3)) for _ in range(2))
            if any(v) and V1.phi(v):
                A1 = Q.mat_mul(Q.reflection(V1, v), A1)
        for _ in range(rng.randint(0, 3)):
            v = tuple(k3.elem(rng.randrange(3)) for _ in range(2))
            if any(v) and V2.phi(v):
                A2 = Q.mat_mul(Q.reflection(V2, v), A2)
        z = k3.zero()
        block = tuple(
            tuple(list(A1[i]) + [z, z]) for i in range(2)
        ) + tuple(tuple([z, z] + list(A2[i])) for i in range(2))
        assert Q.spinor_norm(V, block) == Q.spinor_norm(V1, A1) * Q.spinor_norm(V2, A2)


def test_graded_space_equivalence_random():
    rng = random.Random(10)
    for trial in range(120):
        k = [fields.GF(3), fields.GF(5), fields.GF(7), fields.GF(3, 2)][trial % 4]
        space = checks.random_graded(rng, k)
        V = space.realize()
        assert V.dim <= 8
        iso = checks.random_graded_isometry(rng, space)
        A = iso.realize(V)
        assert V.is_isometry(A)
        assert Q.spinor_formula(space, iso) == Q.spinor_norm(V, A)


def test_graded_trivial_scalars():
    k3 = fields.GF(3)
    space = Q.GradedQuadSpace(
        k3,
        [
            Q.GradedBlock(Q.ASYM_BLOCK, 2, 1, ()),
            Q.GradedBlock(Q.ANISO_BLOCK, 1, 1, (2,)),
        ],
    )
    ones = [space.block_field(b).one() for b in space.blocks]
    iso = Q.GradedIsometry(space, ones)
    assert not Q.spinor_formula(space, iso).nontrivial
    V = space.realize()
    assert not Q.spinor_norm(V, iso.realize(V)).nontrivial


def test_hermitian_scalar_must_be_norm_one():
    k3 = fields.GF(3)
    space = Q.GradedQuadSpace(k3, [Q.GradedBlock(Q.HERM_BLOCK, 2, 1, (1,))])
    k9 = fields.GF(3, 2)
    not_norm_one = next(u for c in range(1, 9) for u in [k9.elem(c)] if u**4 != k9.one())
    with pytest.raises(NotNormOne):
        Q.GradedIsometry(space, [not_norm_one])
    with pytest.raises(InvariantViolation):
        Q.GradedIsometry(
            Q.GradedQuadSpace(k3, [Q.GradedBlock(Q.ANISO_BLOCK, 1, 1, (1,))]),
            [k3.elem(2) + k3.one()],  # zero
        )
