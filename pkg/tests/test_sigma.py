import random

import pytest

from tamesign.errors import UnknownIndex, ValidationError
from tamesign.sigma import ASYMMETRIC, SYM_RAM, SYM_UNRAM, GaloisFrame, SigmaSet


def frame_and_set(n, gens, igens, frob, neg):
    fr = GaloisFrame(n, gens, igens, frob)
    return fr, SigmaSet.on_domain(fr, neg)


def test_classification_examples():
    # trivial group, free negation
    _, s = frame_and_set(2, [], [], None, {0: 1, 1: 0})
    c = s.classify(0)
    assert (c.kind, c.e, c.f) == (ASYMMETRIC, 1, 1)
    # inertia swap
    _, s = frame_and_set(2, [(1, 0)], [(1, 0)], None, {0: 1, 1: 0})
    assert s.classify(0).kind == SYM_RAM
    # frobenius swap
    _, s = frame_and_set(2, [(1, 0)], [], (1, 0), {0: 1, 1: 0})
    c = s.classify(0)
    assert (c.kind, c.f, c.f_pm, c.rel_degree) == (SYM_UNRAM, 2, 1, 2)
    with pytest.raises(UnknownIndex):
        s.classify(99)


def test_classification_constant_on_orbits():
    perm = (1, 2, 0, 4, 5, 3)
    fr, s = frame_and_set(6, [perm], [perm], None, {0: 3, 3: 0, 1: 4, 4: 1, 2: 5, 5: 2})
    base = s.classify(0)
    for i in s.gamma_orbit(0) | {s.neg(0)}:
        assert s.classify(i) == base


def test_symmetric_index_two():
    # for symmetric i the pair stabilizer is twice the stabilizer
    fr, s = frame_and_set(2, [(1, 0)], [], (1, 0), {0: 1, 1: 0})
    assert len(s.pair_stabilizer(0)) == 2 * len(s.stabilizer(0))
    _, sa = frame_and_set(2, [], [], None, {0: 1, 1: 0})
    assert len(sa.pair_stabilizer(0)) == len(sa.stabilizer(0))


def test_orbits():
    _, s = frame_and_set(1, [], [], None, {0: 0})
    assert s.orbits("gamma") == [[0]]
    perm = (1, 2, 0, 4, 5, 3)
    _, s6 = frame_and_set(6, [perm], [perm], None, {0: 3, 3: 0, 1: 4, 4: 1, 2: 5, 5: 2})
    assert len(s6.orbits("gamma")) == 2
    # free Z/3 quotient has orbit size 3 everywhere
    q, proj = s6.quotient_by_inertia()
    assert len(q.indices) == 2 and all(len(lab) == 3 for lab in q.indices)
    with pytest.raises(ValueError):
        s6.orbits("nonsense")


def test_sigma_orbits_refine_gamma_orbits():
    rng = random.Random(0)
    for _ in range(40):
        n_pairs = rng.randint(1, 10)
        n = 2 * n_pairs
        neg = {}
        for t in range(n_pairs):
            neg[2 * t] = 2 * t + 1
            neg[2 * t + 1] = 2 * t
        # random negation-equivariant involution as sole generator
        pairs = list(range(n_pairs))
        rng.shuffle(pairs)
        perm = list(range(n))
        for a, b in zip(pairs[::2], pairs[1::2]):
            flip = rng.random() < 0.5
            perm[2 * a], perm[2 * a + 1] = (2 * b + flip, 2 * b + (not flip))
            perm[2 * b + flip], perm[2 * b + (not flip)] = 2 * a, 2 * a + 1
        perm = tuple(perm)
        fr = GaloisFrame(n, [perm], [], perm)
        s = SigmaSet.on_domain(fr, neg)
        gamma_parts = {frozenset(o) for o in s.orbits("gamma")}
        for orb in s.orbits("sigma"):
            inside = {frozenset(g) for g in gamma_parts if set(g) <= set(orb)}
            assert 1 <= len(inside) <= 2
            assert set().union(*inside) == set(orb)


def test_orbit_reps_deterministic():
    perm = (1, 2, 0, 4, 5, 3)
    fr, s = frame_and_set(6, [perm], [perm], None, {0: 3, 3: 0, 1: 4, 4: 1, 2: 5, 5: 2})
    assert s.orbit_reps("gamma") == SigmaSet.on_domain(
        GaloisFrame(6, [perm], [perm], None), {0: 3, 3: 0, 1: 4, 4: 1, 2: 5, 5: 2}
    ).orbit_reps("gamma")
    assert s.orbit_reps("gamma") == [0, 3]


def test_frame_validation():
    with pytest.raises(ValidationError):
        GaloisFrame(2, [(0, 0)], [], None)  # not a permutation
    # totally inert frame: any Frobenius lift is fine since the quotient is trivial
    fr = GaloisFrame(3, [(1, 2, 0)], [(1, 2, 0)], (1, 2, 0))
    assert fr.f_total == 1
    with pytest.raises(ValidationError):
        GaloisFrame(3, [(1, 2, 0)], [], None)  # cyclic quotient not generated by the lift
    # inertia normality: S3 with a non-normal order-2 subgroup
    rot = (1, 2, 0)
    flip = (0, 2, 1)
    with pytest.raises(ValidationError):
        GaloisFrame(3, [rot, flip], [flip], rot)


def test_negation_must_commute():
    with pytest.raises(ValidationError):
        SigmaSet.on_domain(GaloisFrame(3, [(1, 0, 2)], [], (1, 0, 2)), {0: 2, 2: 0, 1: 1})
