import random

import pytest

from tamesign import checks, fields, hypercoh
from tamesign.errors import BadPartition, FixedPointUnderNegation, InvariantViolation
from tamesign.sigma import GaloisFrame, SigmaSet


def two_point_set(inert):
    swap = (1, 0)
    fr = GaloisFrame(2, [swap], [swap] if inert else [], None if inert else swap)
    return SigmaSet.on_domain(fr, {0: 1, 1: 0})


def test_from_sigma_set_small_examples():
    # trivial group
    fr = GaloisFrame(2, [], [], None)
    sig = SigmaSet.on_domain(fr, {0: 1, 1: 0})
    hc = hypercoh.from_sigma_set(sig)
    assert hc.delta == (1,)
    assert all(v == (0,) for v in hc.rho.values())
    # Z/2 swapping i and -i through Frobenius
    sig2 = two_point_set(inert=False)
    hc2 = hypercoh.from_sigma_set(sig2)
    swap = (1, 0)
    assert hc2.delta == (1,) and hc2.rho[swap] == (1,)
    hc2.validate()


def test_fixed_point_rejected():
    fr = GaloisFrame(1, [], [], None)
    sig = SigmaSet.on_domain(fr, {0: 0})
    with pytest.raises(FixedPointUnderNegation):
        hypercoh.from_sigma_set(sig)


def test_bad_partition_rejected():
    sig = two_point_set(inert=False)
    with pytest.raises(BadPartition):
        hypercoh.from_sigma_set(sig, positive=[0, 1])
    with pytest.raises(BadPartition):
        hypercoh.from_sigma_set(sig, positive=[])


def test_gamma_fixed_delta_is_plain_square_class():
    # rho = 0 and delta fixed: the character is just the class of delta(g)
    fr = GaloisFrame(2, [], [], None)
    sig = SigmaSet.on_domain(fr, {0: 1, 1: 0})
    lat, chi = hypercoh.sigma_lattice(sig)
    k = fields.GF(7)
    for code in range(1, 7):
        ctx = hypercoh.EvalContext(lat, k, k, [k.elem(code)])
        hc = hypercoh.from_sigma_set(sig, chi=chi, lattice=lat)
        assert hypercoh.eval_direct(hc, ctx) == fields.sgn(k.elem(code))


def test_random_contexts_direct_equals_formula():
    rng = random.Random(123)
    done = 0
    while done < 150:
        data = checks.random_hyper_context(rng)
        if data is None:
            continue
        sig, values, kbar, k = data
        lat, chi = hypercoh.sigma_lattice(sig)
        ctx = hypercoh.context_from_index_values(sig, lat, chi, kbar, k, values)
        hc = hypercoh.from_sigma_set(sig, chi=chi, lattice=lat)
        hc.validate()
        d = hypercoh.eval_direct(hc, ctx)
        assert d == hypercoh.eval_formula(sig, lambda i: values[i], kbar, k)
        done += 1


def test_partition_independence_and_coboundaries():
    rng = random.Random(5)
    done = 0
    while done < 60:
        data = checks.random_hyper_context(rng)
        if data is None or not data[0].indices:
            continue
        sig, values, kbar, k = data
        lat, chi = hypercoh.sigma_lattice(sig)
        ctx = hypercoh.context_from_index_values(sig, lat, chi, kbar, k, values)
        base = hypercoh.eval_direct(hypercoh.from_sigma_set(sig, chi=chi, lattice=lat), ctx)
        taken, pos = set(), []
        for i in sig.indices:
            if i in taken or sig.neg(i) in taken:
                continue
            cand = i if rng.random() < 0.5 else sig.neg(i)
            pos.append(cand)
            taken.add(cand)
        assert hypercoh.eval_direct(hypercoh.from_sigma_set(sig, positive=pos, chi=chi, lattice=lat), ctx) == base
        vec = tuple(rng.randint(-2, 2) for _ in range(lat.rank))
        cb = hypercoh.coboundary(lat, vec)
        assert not hypercoh.eval_direct(cb, ctx).nontrivial
        assert hypercoh.eval_direct(hypercoh.from_sigma_set(sig, chi=chi, lattice=lat) + cb, ctx) == base
        done += 1


def test_refinement_collapse():
    # collapsing two asymmetric pairs onto one by an equivariant surjection
    fr = GaloisFrame(4, [], [], None)
    sig = SigmaSet.on_domain(fr, {0: 1, 1: 0, 2: 3, 3: 2})
    lat, chi = hypercoh.sigma_lattice(sig)
    k = fields.GF(5)
    rng = random.Random(1)
    for _ in range(20):
        v0 = k.elem(rng.randrange(1, 5))
        v2 = k.elem(rng.randrange(1, 5))
        values = {0: v0, 1: v0.inv(), 2: v2, 3: v2.inv()}
        ctx = hypercoh.context_from_index_values(sig, lat, chi, k, k, values)
        fine = hypercoh.eval_direct(hypercoh.from_sigma_set(sig, chi=chi, lattice=lat), ctx)
        # coarse set {i, -i} with chi_i = chi_0 + chi_2 inside the fine lattice
        frc = GaloisFrame(2, [], [], None)
        coarse = SigmaSet.on_domain(frc, {0: 1, 1: 0})
        chi_c = {0: tuple(a + b for a, b in zip(chi[0], chi[2])), 1: tuple(-(a + b) for a, b in zip(chi[0], chi[2]))}
        lat_c = hypercoh.CharLattice(frc, lat.rank, {(0, 1): _identity_matrix(lat.rank)})
        hc_c = hypercoh.from_sigma_set(coarse, chi=chi_c, lattice=lat_c)
        ctx_c = hypercoh.EvalContext(lat_c, k, k, ctx.basis_values)
        assert hypercoh.eval_direct(hc_c, ctx_c) == fine


def _identity_matrix(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def test_functoriality():
    # pushing a cocycle along an equivariant lattice map matches pulling the context back
    sig = two_point_set(inert=False)
    lat, chi = hypercoh.sigma_lattice(sig)
    k, kbar = fields.GF(3), fields.GF(3, 2)
    # doubled target lattice with the swap acting by negation on both coordinates
    swap = (1, 0)
    ident = (1, 0)
    frame = sig.frame
    act = {e: ((1, 0), (0, 1)) if frame.d[e] % 2 == 0 else ((-1, 0), (0, -1)) for e in frame.elements}
    target = hypercoh.CharLattice(frame, 2, act)
    emb = ((1,), (1,))  # diagonal embedding as a 2x1 integer matrix
    norm_one = [a for a in kbar.elements() if a and a ** 4 == kbar.one()]
    for u in norm_one:
        ctx_t = hypercoh.EvalContext(target, kbar, k, [u, u])
        hc = hypercoh.from_sigma_set(sig, chi=chi, lattice=lat)
        pushed = hypercoh.map_cocycle(hc, emb, target)
        pulled = ctx_t.pullback(emb, lat)
        assert hypercoh.eval_direct(pushed, ctx_t) == hypercoh.eval_direct(hc, pulled)


def test_cocycle_values_square_to_one():
    rng = random.Random(9)
    done = 0
    while done < 30:
        data = checks.random_hyper_context(rng)
        if data is None or not data[0].indices:
            continue
        sig, values, kbar, k = data
        lat, chi = hypercoh.sigma_lattice(sig)
        ctx = hypercoh.context_from_index_values(sig, lat, chi, kbar, k, values)
        hc = hypercoh.from_sigma_set(sig, chi=chi, lattice=lat)
        rho_f = ctx.value(hc.rho[sig.frame.frobenius])
        delta_g = ctx.value(hc.delta)
        eps = rho_f * delta_g ** ((k.order - 1) // 2)
        assert eps * eps == kbar.one()
        done += 1


def test_inertia_must_act_trivially():
    sig = two_point_set(inert=True)  # swap lies in inertia
    lat, chi = hypercoh.sigma_lattice(sig)
    k = fields.GF(3)
    hc = hypercoh.from_sigma_set(sig, chi=chi, lattice=lat)
    ctx = hypercoh.EvalContext(lat, k, k, [k.elem(2)], check=False)
    with pytest.raises(InvariantViolation):
        hypercoh.eval_direct(hc, ctx)
