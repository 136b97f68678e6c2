import random
from fractions import Fraction

import pytest

from tamesign import epschar, presets, synth, torus
from tamesign.errors import NotInvariant, NotSigmaStable
from tamesign.scenario import load
from tamesign.sigma import SYM_RAM, SYM_UNRAM
from tamesign.torus import TorusPoint


def all_points(sc):
    return torus.enumerate_all(sc)


def test_eps_phi_empty_and_identity():
    sc = presets.preset("pgsp4-siegel")
    ident = torus.identity_point(sc)
    assert epschar.eps_phi(sc, frozenset(), ident) == 1
    for which in epschar.PHI_KINDS:
        assert epschar.eps_phi(sc, epschar.build_phi(sc, which), ident) == 1
    for name in epschar.NAMED:
        assert epschar.eps_named(sc, name, ident) == 1
    assert epschar.eps_x(sc, ident) == 1


def test_eps_phi_rejects_unstable_sets():
    sc = presets.preset("pgl3-inertial")
    pt = torus.identity_point(sc)
    with pytest.raises(NotSigmaStable):
        epschar.eps_phi(sc, frozenset({0}), pt)  # not negation closed
    with pytest.raises(NotSigmaStable):
        epschar.eps_phi(sc, frozenset({0, 3}), pt)  # not Galois closed


def test_symdif_law():
    rng = random.Random(4)
    for name in ("pgsp4-siegel", "g2-unramified", "pgl3-levi-mixed"):
        sc = presets.preset(name)
        orbits = [frozenset(sc.sigma.sigma_orbit(i)) for i in sc.gm]
        orbits = sorted(set(orbits), key=lambda o: min(o))
        pts = all_points(sc)
        for _ in range(10):
            phi1 = frozenset().union(*(o for o in orbits if rng.random() < 0.5)) if orbits else frozenset()
            phi2 = frozenset().union(*(o for o in orbits if rng.random() < 0.5)) if orbits else frozenset()
            for pt in pts[:6]:
                lhs = epschar.eps_phi(sc, phi1, pt) * epschar.eps_phi(sc, phi2, pt)
                assert lhs == epschar.eps_phi(sc, phi1 ^ phi2, pt)


def test_build_phi_sharp_full_when_offsets_hit_s():
    doc = presets.preset_document("pgl2-split")
    doc["depth_r"] = "2"
    doc["offsets"] = {"0": "1", "1": "-1"}  # s = 1 lies in every jump set
    sc = load(doc)
    assert epschar.build_phi(sc, "sharp") == frozenset(sc.gm)


def test_build_phi_flat0_empty_without_ramified_weights():
    for name in ("pgl2-split", "pgl2-unramified", "pgsp4-siegel", "g2-unramified"):
        sc = presets.preset(name)
        assert epschar.build_phi(sc, "flat0") == frozenset()


def test_repack_on_presets_and_synthetic():
    rng = random.Random(6)
    scs = [presets.preset(n) for n in presets.preset_names()]
    scs += [synth.generate_scenario(rng) for _ in range(150)]
    for sc in scs:
        sharp = epschar.build_phi(sc, "sharp")
        flat0 = epschar.build_phi(sc, "flat0")
        a = epschar.build_phi(sc, "zero_symram")
        b = epschar.build_phi(sc, "s_symram")
        c = epschar.build_phi(sc, "zs_symram")
        assert (sharp ^ flat0) == (a | b | c)
        assert not (a & b) and not (a & c) and not (b & c)
        # no unramified symmetric root enters the zero-versus-s piece
        assert all(sc.cls_root[i].kind != SYM_UNRAM for i in c)


def test_ord_membership_parity_dichotomy():
    rng = random.Random(8)
    for _ in range(80):
        sc = synth.generate_scenario(rng)
        for i in sc.gm:
            if sc.cls_weight[sc.restriction[i]].kind != SYM_RAM:
                continue
            zero_in = sc.ord_contains(i, Fraction(0))
            s_in = sc.ord_contains(i, sc.s)
            if sc.rel_ramification(i) % 2 == 0:
                assert zero_in == s_in
            else:
                assert not (zero_in and s_in)


def test_named_characters_single_ramified_orbit():
    sc = presets.preset("pgl2-ramified")  # toral invariant -1
    pts = all_points(sc)
    minus = next(p for p in pts if p.values[0] == -sc.kbar.one())
    assert epschar.eps_named(sc, "f", minus) == -1
    assert epschar.eps_named(sc, "flat2", minus) == 1  # e(alpha/alpha_0) = 1
    f_deg = sc.f_root[0]
    assert epschar.eps_named(sc, "flat1", minus) == (-1) ** (f_deg + 1) * (
        epschar._sgn_int_root(sc, 0, sc.e_root[0] * sc.ell_covee_p(0))
    )


def test_pieces_formula_equals_oracle_everywhere():
    for name in presets.preset_names():
        sc = presets.preset(name)
        for pt in all_points(sc):
            assert epschar.piece_esr(sc, pt, "formula") == epschar.piece_esr(sc, pt, "oracle")
            assert epschar.piece_hyper(sc, pt, "formula") == epschar.piece_hyper(sc, pt, "direct")
            assert epschar.piece_spinor(sc, pt, "formula") == epschar.piece_spinor(sc, pt, "oracle")


def test_pieces_trivial_without_ramified_weights():
    for name in ("pgl2-split", "pgl2-unramified", "pgsp4-siegel", "g2-unramified"):
        sc = presets.preset(name)
        for pt in all_points(sc):
            assert epschar.piece_esr(sc, pt, "formula") == 1
            assert epschar.piece_esr(sc, pt, "oracle") == 1
            assert epschar.piece_spinor(sc, pt, "formula") == 1
            assert epschar.piece_spinor(sc, pt, "oracle") == 1


def test_main_identity_on_all_presets():
    for name in presets.preset_names():
        sc = presets.preset(name)
        for pt in all_points(sc):
            assert epschar.eps_x(sc, pt) == (
                epschar.eps_named(sc, "sharp_x", pt)
                * epschar.eps_named(sc, "flat", pt)
                * epschar.eps_named(sc, "f", pt)
            )


def test_piece_restrictions_match_plain_characters():
    for name in presets.preset_names():
        sc = presets.preset(name)
        phi_s = epschar.build_phi(sc, "s_symram")
        phi_0 = epschar.build_phi(sc, "zero_symram")
        for pt in all_points(sc):
            assert epschar.piece_hyper(sc, pt) == epschar.eps_phi(sc, phi_s, pt)
            assert epschar.piece_spinor(sc, pt) == (
                epschar.eps_phi(sc, phi_0, pt)
                * epschar.eps_named(sc, "f", pt)
                * epschar.eps_named(sc, "flat1", pt)
            )


def test_characters_multiplicative():
    for name in ("pgl2-ramified", "pgsp4-siegel-ramified", "g2-ramified", "pgl3-levi-mixed"):
        sc = presets.preset(name)
        pts = all_points(sc)
        for a in pts:
            for b in pts:
                ab = a * b
                for nm in epschar.NAMED:
                    assert epschar.eps_named(sc, nm, ab) == epschar.eps_named(
                        sc, nm, a
                    ) * epschar.eps_named(sc, nm, b)
                assert epschar.eps_x(sc, ab) == epschar.eps_x(sc, a) * epschar.eps_x(sc, b)


def test_relabeling_invariance():
    rng = random.Random(12)
    for name in ("pgl3-levi-mixed", "pgsp4-siegel-ramified", "g2-ramified-p3"):
        sc = presets.preset(name)
        perm = list(range(sc.nroots))
        rng.shuffle(perm)
        sc2 = sc.relabeled(perm)
        for pt in all_points(sc):
            pt2 = TorusPoint(sc2, {perm[i]: v for i, v in pt.values.items()})
            for nm in epschar.NAMED:
                assert epschar.eps_named(sc, nm, pt) == epschar.eps_named(sc2, nm, pt2)
            assert epschar.eps_x(sc, pt) == epschar.eps_x(sc2, pt2)


def test_delta_xy():
    sc = presets.preset("pgsp4-siegel")
    pts = all_points(sc)
    zero = tuple(0 for _ in range(sc.dim))
    for pt in pts:
        assert epschar.delta_xy(sc, zero, pt) == 1
    lam = sc.invariant_coweights()[0]
    with pytest.raises(NotInvariant):
        epschar.delta_xy(sc, (1,), pts[0])
    bad = tuple(l + 1 for l in lam)
    if any(sc.pairing(g[i], bad) != sc.pairing(i, bad) for g in sc.frame.elements for i in range(sc.nroots)):
        with pytest.raises(NotInvariant):
            epschar.delta_xy(sc, bad, pts[0])


def test_delta_xy_reciprocity():
    rng = random.Random(21)
    done = 0
    while done < 30:
        sc = synth.generate_scenario(rng)
        basis = sc.invariant_coweights()
        if not basis:
            continue
        coeffs = [rng.randint(-2, 2) for _ in basis]
        lam = tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(sc.dim))
        if all(c == 0 for c in lam):
            continue
        scy = sc.shifted(lam)
        neg = tuple(-c for c in lam)
        try:
            pts = torus.enumerate_all(sc)
        except Exception:
            continue
        for pt in pts:
            pty = TorusPoint(scy, pt.values, check=False)
            assert epschar.eps_named(sc, "sharp_x", pt) * epschar.delta_xy(sc, lam, pt) == epschar.eps_named(
                scy, "sharp_x", pty
            ) * epschar.delta_xy(scy, neg, pty)
        done += 1
