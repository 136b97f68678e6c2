import random

import pytest

from tamesign import presets, torus
from tamesign.errors import TooLarge, UnknownRoot, ValidationError
from tamesign.scenario import load
from tamesign.torus import TorusPoint


def test_identity_point():
    sc = presets.preset("pgsp4-siegel")
    pt = torus.identity_point(sc)
    pt.validate()
    assert all(pt.evaluate(i) == sc.kbar.one() for i in range(sc.nroots))


def test_enumeration_counts():
    doc = presets.preset_document("pgl2-split")
    doc["p"] = 3
    doc["a_residues"] = {"0": 1, "1": 2}
    sc3 = load(doc)
    assert len(torus.enumerate_all(sc3)) == 2  # q - 1
    scr = presets.preset("pgl2-ramified")
    pts = torus.enumerate_all(scr)
    assert len(pts) == 2  # values are forced into {1, -1}
    assert {int(p.values[0]) for p in pts} == {1, scr.p - 1}
    # unramified rank one: the norm-one group
    scu = presets.preset("pgl2-unramified")
    assert len(torus.enumerate_all(scu)) == scu.p + 1


def test_generate_valid_and_in_enumeration():
    rng = random.Random(3)
    for name in presets.preset_names():
        sc = presets.preset(name)
        pts = torus.enumerate_all(sc)
        for seed in range(12):
            g = torus.generate(sc, seed)
            g.validate()
            assert any(g == q for q in pts)


def test_points_form_a_group():
    sc = presets.preset("g2-unramified")
    pts = torus.enumerate_all(sc)
    keys = {p.key() for p in pts}
    for a in pts[:6]:
        for b in pts[:6]:
            c = a * b
            c.validate()
            assert c.key() in keys


def test_evaluate_unknown_root():
    sc = presets.preset("pgl2-split")
    pt = torus.identity_point(sc)
    with pytest.raises(UnknownRoot):
        pt.evaluate(5)


def test_ramified_symmetric_values_are_signs():
    sc = presets.preset("g2-ramified")
    for pt in torus.enumerate_all(sc):
        for i in sc.gm:
            v = pt.evaluate(i)
            assert v * v == sc.kbar.one()


def test_validation_rejects_broken_points():
    sc = presets.preset("pgl2-unramified")
    good = torus.enumerate_all(sc)[-1]
    bad_vals = dict(good.values)
    bad_vals[0] = sc.kbar.elem(1)  # breaks negation/equivariance coupling
    if bad_vals[0] * bad_vals[1] != sc.kbar.one():
        with pytest.raises(ValidationError):
            TorusPoint(sc, bad_vals, check=True)


def test_enumeration_guard():
    doc = presets.preset_document("pgl2-split")
    doc["p"] = 103
    doc["a_residues"] = {"0": 1, "1": 102}
    sc = load(doc)
    with pytest.raises(TooLarge):
        torus.enumerate_all(sc)
    # the fallback sampler still works
    assert len(torus.points_for_tests(sc, count=5, seed=0)) == 5
