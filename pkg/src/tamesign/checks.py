"""Seeded property suites over the whole calculus.

Each suite returns a list of check records, dicts with keys
(check, description, scenario, trials, failures, counterexample); a
counterexample carries enough to replay the failure: the scenario document,
the point's value key, and the check name.  Suites are deterministic in the
seed.  The command line runner and the acceptance tests both call these.
"""

from __future__ import annotations

import itertools
import random

from . import chidata, epschar, fields, hypercoh, presets, quadspace, synth, torus
from .errors import TamesignError, ValidationError
from .scenario import load
from .sigma import SYM_RAM, GaloisFrame, SigmaSet
from .torus import TorusPoint

SUITES = ("hypercoh", "spinor", "repack", "main-theorem", "chidata", "laws", "reciprocity", "validation")


def _record(check, description, trials, failures, counterexample=None, scenario=""):
    return {
        "check": check,
        "description": description,
        "scenario": scenario,
        "trials": trials,
        "failures": failures,
        "counterexample": counterexample,
    }


def _counterexample(sc, point, check):
    return {
        "check": check,
        "scenario": sc.doc if sc is not None else None,
        "gamma_key": list(point.key()) if point is not None else None,
    }


def _scenarios(scenario=None):
    if scenario is None:
        return presets.all_presets()
    if isinstance(scenario, str) and scenario in presets.preset_names():
        return [presets.preset(scenario)]
    return [load(scenario)]


# -- hypercocycle contexts -------------------------------------------------------


def random_hyper_context(rng):
    """A random cyclic frame, Sigma-set without negation fixed points, and an
    equivariant nonzero value assignment."""
    n_orbits = rng.randint(1, 3)
    specs = [(rng.choice(["asym", "sym"]), rng.choice([1, 2])) for _ in range(n_orbits)]
    idx, orbits = [], []
    for kind, fi in specs:
        base = len(idx)
        members = list(range(base, base + 2 * fi))
        idx.extend(members)
        orbits.append((kind, fi, members))
    n = len(idx)  # at most 12 by construction
    perm = list(range(n))
    neg = {}
    for kind, fi, mem in orbits:
        if kind == "asym":
            pos, negs = mem[:fi], mem[fi:]
            for t in range(fi):
                perm[pos[t]] = pos[(t + 1) % fi]
                perm[negs[t]] = negs[(t + 1) % fi]
                neg[pos[t]] = negs[t]
                neg[negs[t]] = pos[t]
        else:
            L = 2 * fi
            for t in range(L):
                perm[mem[t]] = mem[(t + 1) % L]
                neg[mem[t]] = mem[(t + fi) % L]
    frame = GaloisFrame(n, [tuple(perm)], [], tuple(perm))
    sig = SigmaSet.on_domain(frame, neg)
    N = 1
    for i in sig.indices:
        d = sig.frame.subfield_degree(sig.stabilizer(i))
        N = N * d // _gcd(N, d)
    N = max(N, 1)
    # base fields up to order 49, capped so Lang-map exhaustion stays small
    pool = [p for p in (3, 5, 7, 11, 13, 23, 47) if p**N <= 2500]
    if not pool:
        return None
    p = rng.choice(pool)
    k = fields.GF(p)
    kbar = fields.GF(p, N)
    values = {}
    for kind, fi, mem in orbits:
        i0 = mem[0]
        fdeg = sig.frame.subfield_degree(sig.stabilizer(i0))
        units = fields.subfield_units(kbar, fdeg)
        if kind == "asym":
            seed = units[rng.randrange(len(units))]
        else:
            fpm = sig.frame.subfield_degree(sig.pair_stabilizer(i0))
            w = units[rng.randrange(len(units))]
            seed = w * (w ** (p**fpm)).inv()
        j = i0
        for t in range(frame.f_total):
            values[j] = fields.frobenius(seed, k, t)
            values[sig.neg(j)] = values[j].inv()
            j = sig.act(frame.frobenius, j)
    return sig, values, kbar, k


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def suite_hypercoh(seed=0, trials=10000, scenario=None):
    rng = random.Random(seed)
    fails_eq = fails_part = fails_cob = fails_add = 0
    ce = None
    done = 0
    while done < trials:
        ctx_data = random_hyper_context(rng)
        if ctx_data is None:
            continue
        sig, values, kbar, k = ctx_data
        if not sig.indices:
            continue
        lattice, chi = hypercoh.sigma_lattice(sig)
        ctx = hypercoh.context_from_index_values(sig, lattice, chi, kbar, k, values)
        hc = hypercoh.from_sigma_set(sig, chi=chi, lattice=lattice)
        direct = hypercoh.eval_direct(hc, ctx)
        formula = hypercoh.eval_formula(sig, lambda i: values[i], kbar, k)
        if direct != formula:
            fails_eq += 1
            ce = ce or {"check": "hypercoh-direct-vs-formula", "values": {str(i): int(v) for i, v in values.items()}}
        # random positive system
        taken, pos = set(), []
        for i in sig.indices:
            if i in taken or sig.neg(i) in taken:
                continue
            cand = i if rng.random() < 0.5 else sig.neg(i)
            pos.append(cand)
            taken.add(cand)
        if hypercoh.eval_direct(hypercoh.from_sigma_set(sig, positive=pos, chi=chi, lattice=lattice), ctx) != direct:
            fails_part += 1
        cvec = tuple(rng.randint(-2, 2) for _ in range(lattice.rank))
        cb = hypercoh.coboundary(lattice, cvec)
        if hypercoh.eval_direct(cb, ctx).nontrivial:
            fails_cob += 1
        if hypercoh.eval_direct(hc + cb, ctx) != direct:
            fails_add += 1
        done += 1
    return [
        _record("hypercoh-direct-vs-formula", "defining evaluation equals the orbit-product formula", done, fails_eq, ce),
        _record("hypercoh-partition-independence", "any positive system gives the same character", done, fails_part),
        _record("hypercoh-coboundary-trivial", "hypercoboundaries evaluate trivially", done, fails_cob),
        _record("hypercoh-additivity", "evaluation is additive in the cocycle", done, fails_add),
    ]


# -- graded quadratic spaces ------------------------------------------------------


def random_graded(rng, k):
    blocks = []
    total = 0
    budget = 8
    while total < budget and (not blocks or rng.random() < 0.7):
        kind = rng.choice([quadspace.ASYM_BLOCK, quadspace.HERM_BLOCK, quadspace.ANISO_BLOCK])
        f = rng.choice([1, 2]) if kind != quadspace.HERM_BLOCK else 2
        d = rng.choice([1, 2])
        size = (2 if kind == quadspace.ASYM_BLOCK else 1) * d * f
        if total + size > budget:
            break
        ki = fields.GF(k.p, k.degree * f)
        if kind == quadspace.ANISO_BLOCK:
            form = tuple(rng.randrange(1, ki.order) for _ in range(d))
        elif kind == quadspace.HERM_BLOCK:
            kpm = fields.GF(k.p, k.degree * f // 2)
            form = tuple(rng.randrange(1, kpm.order) for _ in range(d))
        else:
            form = ()
        blocks.append(quadspace.GradedBlock(kind, f, d, form))
        total += size
    return quadspace.GradedQuadSpace(k, blocks)


def random_graded_isometry(rng, space):
    lams = []
    for blk in space.blocks:
        ki = space.block_field(blk)
        if blk.kind == quadspace.ANISO_BLOCK:
            lams.append(ki.elem(1) if rng.random() < 0.5 else -ki.one())
        elif blk.kind == quadspace.HERM_BLOCK:
            q_pm = space.pm_field(blk).order
            w = ki.elem(rng.randrange(1, ki.order))
            lams.append(w * (w**q_pm).inv())
        else:
            lams.append(ki.elem(rng.randrange(1, ki.order)))
    return quadspace.GradedIsometry(space, lams)


def suite_spinor(seed=0, trials=2000, scenario=None):
    rng = random.Random(seed)
    fails_eq = fails_refl = 0
    ce = None
    done = 0
    bases = [fields.GF(3), fields.GF(5), fields.GF(7), fields.GF(3, 2)]
    while done < trials:
        k = bases[done % len(bases)]
        space = random_graded(rng, k)
        V = space.realize()
        iso = random_graded_isometry(rng, space)
        A = iso.realize(V)
        if quadspace.spinor_formula(space, iso) != quadspace.spinor_norm(V, A):
            fails_eq += 1
            ce = ce or {"check": "spinor-formula-vs-oracle", "blocks": [repr(b) for b in space.blocks]}
        # one reflection check per trial on the realized space
        v = None
        for code in range(1, min(V.field.order ** V.dim, 200)):
            cand = tuple(V.field.elem((code >> (2 * t)) % V.field.order) for t in range(V.dim))
            if any(cand) and V.phi(cand):
                v = cand
                break
        if v is not None:
            tau = quadspace.reflection(V, v)
            if quadspace.spinor_norm(V, tau) != fields.sgn(V.phi(v)):
                fails_refl += 1
        done += 1
    # exhaustive homomorphism property on O(2, GF(3))
    k3 = fields.GF(3)
    V2 = quadspace.QuadSpace(k3, [[1, 0], [0, 1]])
    els = [k3.elem(i) for i in range(3)]
    group = []
    for entries in itertools.product(els, repeat=4):
        A = (entries[0:2], entries[2:4])
        try:
            if V2.is_isometry(A):
                group.append(A)
        except TamesignError:
            pass
    hom_fails = 0
    sn = {A: quadspace.spinor_norm(V2, A) for A in group}
    for A in group:
        for B in group:
            if sn[quadspace.mat_mul(A, B)] != sn[A] * sn[B]:
                hom_fails += 1
    return [
        _record("spinor-formula-vs-oracle", "closed graded formula equals the reflection-product spinor norm", done, fails_eq, ce),
        _record("spinor-reflection-value", "a reflection's spinor norm is the class of the form value", done, fails_refl),
        _record("spinor-homomorphism-O2", "spinor norm is multiplicative on O(2, GF(3)), exhaustively", len(group) ** 2, hom_fails),
    ]


# -- Phi-set repacking -------------------------------------------------------------


def suite_repack(seed=0, trials=1000, scenario=None):
    rng = random.Random(seed)
    fails_union = fails_disjoint = 0
    ce = None
    for _ in range(trials):
        sc = synth.generate_scenario(rng)
        sharp = epschar.build_phi(sc, "sharp")
        flat0 = epschar.build_phi(sc, "flat0")
        a = epschar.build_phi(sc, "zero_symram")
        b = epschar.build_phi(sc, "s_symram")
        c = epschar.build_phi(sc, "zs_symram")
        if (sharp ^ flat0) != (a | b | c):
            fails_union += 1
            ce = ce or _counterexample(sc, None, "repack-symmetric-difference")
        if (a & b) or (a & c) or (b & c):
            fails_disjoint += 1
    return [
        _record("repack-symmetric-difference", "jump-set symmetric difference equals the union of the three pieces", trials, fails_union, ce),
        _record("repack-pairwise-disjoint", "the three pieces are pairwise disjoint", trials, fails_disjoint),
    ]


# -- the main identity ---------------------------------------------------------------


def _points(sc, rng, generated=500):
    try:
        return torus.enumerate_all(sc)
    except TamesignError:
        return [torus.generate(sc, rng) for _ in range(generated)]


def suite_main_theorem(seed=0, trials=500, scenario=None):
    rng = random.Random(seed)
    out = []
    for sc in _scenarios(scenario):
        fails_main = fails_esr = fails_hyper = fails_spinor = 0
        ce = None
        pts = _points(sc, rng, trials)
        for pt in pts:
            if epschar.piece_esr(sc, pt, "formula") != epschar.piece_esr(sc, pt, "oracle"):
                fails_esr += 1
                ce = ce or _counterexample(sc, pt, "piece-esr")
            if epschar.piece_hyper(sc, pt, "formula") != epschar.piece_hyper(sc, pt, "direct"):
                fails_hyper += 1
                ce = ce or _counterexample(sc, pt, "piece-hyper")
            if epschar.piece_spinor(sc, pt, "formula") != epschar.piece_spinor(sc, pt, "oracle"):
                fails_spinor += 1
                ce = ce or _counterexample(sc, pt, "piece-spinor")
            lhs = epschar.eps_x(sc, pt)
            rhs = (
                epschar.eps_named(sc, "sharp_x", pt)
                * epschar.eps_named(sc, "flat", pt)
                * epschar.eps_named(sc, "f", pt)
            )
            if lhs != rhs:
                fails_main += 1
                ce = ce or _counterexample(sc, pt, "main-identity")
        out += [
            _record("main-identity", "product of the three pieces equals the five-character product", len(pts), fails_main, ce, sc.name),
            _record("piece-esr", "jump-count piece: formula equals oracle", len(pts), fails_esr, None, sc.name),
            _record("piece-hyper", "hypercocycle piece: formula equals defining evaluation", len(pts), fails_hyper, None, sc.name),
            _record("piece-spinor", "spinor piece: formula equals reflection oracle", len(pts), fails_spinor, None, sc.name),
        ]
    return out


# -- character data -------------------------------------------------------------------


def suite_chidata(seed=0, trials=0, scenario=None):
    out = []
    fails = 0
    count = 0
    for p, a in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1)]:
        for f_rel in (1, 2):
            if a % f_rel:
                continue
            for e_rel in (1, 3):
                for ell in (1, 2, 3):
                    if (2 * e_rel) % p == 0 or ell % p == 0:
                        continue
                    count += 1
                    if not chidata.ratio_check_raw(p, a, f_rel, e_rel, ell):
                        fails += 1
    out.append(_record("chidata-ratio-sweep", "normalization ratio equals the closed sign across the parameter sweep", count, fails))

    gauss_fails = 0
    gauss_count = 0
    for p in (3, 5, 7, 11):
        n = 1
        while p**n <= 121:
            F = fields.GF(p, n)
            G = chidata.gauss_sum(F)
            gauss_count += 1
            if abs(abs(G) - 1) > chidata.TOL:
                gauss_fails += 1
            if not chidata.close(G * G, fields.sgn_in(-F.one(), n)):
                gauss_fails += 1
            if n > 1 and not chidata.hasse_davenport(fields.GF(p), F):
                gauss_fails += 1
            n += 1
    out.append(_record("gauss-infrastructure", "unit modulus, square law, and the lifting relation for q <= 121", gauss_count, gauss_fails))

    scs = presets.chidata_presets() if scenario is None else _scenarios(scenario)
    for sc in scs:
        fails_d = 0
        used = 0
        ce = None
        try:
            pts = torus.enumerate_all(sc)
        except TamesignError:
            rng = random.Random(seed)
            pts = [torus.generate(sc, rng) for _ in range(100)]
        for pt in pts:
            if not torus.residually_regular(sc, pt):
                continue
            used += 1
            d2 = chidata.delta_II(sc, pt, "doubleprime")
            d1 = chidata.delta_II(sc, pt, "prime")
            rhs = d1 * (
                epschar.eps_named(sc, "f", pt)
                * epschar.eps_named(sc, "sharp_x", pt)
                * epschar.eps_x(sc, pt)
            )
            if not chidata.close(d2, rhs):
                fails_d += 1
                ce = ce or _counterexample(sc, pt, "chidata-transfer-identity")
        out.append(_record("chidata-transfer-identity", "norm-inflated factor equals minimally ramified factor times the three signs", used, fails_d, ce, sc.name))
        ram = [r for r in sc.gm_gamma_reps() if sc.cls_root[r].kind == SYM_RAM]
        rfails = sum(0 if chidata.ratio_check(sc, r) else 1 for r in ram)
        if ram:
            out.append(_record("chidata-ratio-preset", "ratio identity at each ramified symmetric orbit", len(ram), rfails, None, sc.name))
    return out


# -- character laws --------------------------------------------------------------------


def suite_laws(seed=0, trials=1000, scenario=None):
    rng = random.Random(seed)
    out = []
    for sc in _scenarios(scenario):
        fails = 0
        ce = None
        try:
            pts = torus.enumerate_all(sc)
            pairs = [(a, b) for a in pts for b in pts]
        except TamesignError:
            pairs = [(torus.generate(sc, rng), torus.generate(sc, rng)) for _ in range(trials)]
        evaluators = [("eps_x", epschar.eps_x)]
        evaluators += [(n, (lambda s, g, _n=n: epschar.eps_named(s, _n, g))) for n in epschar.NAMED]
        evaluators += [
            ("piece_esr", lambda s, g: epschar.piece_esr(s, g)),
            ("piece_hyper", lambda s, g: epschar.piece_hyper(s, g)),
            ("piece_spinor", lambda s, g: epschar.piece_spinor(s, g)),
        ]
        for a, b in pairs:
            ab = a * b
            for _, fn in evaluators:
                va, vb, vab = fn(sc, a), fn(sc, b), fn(sc, ab)
                if va not in (1, -1) or vb not in (1, -1) or vab != va * vb:
                    fails += 1
                    ce = ce or _counterexample(sc, ab, "character-laws")
        out.append(_record("character-laws", "every character and piece is a sign and multiplicative", len(pairs), fails, ce, sc.name))
    return out


# -- translation reciprocity -------------------------------------------------------------


def suite_reciprocity(seed=0, trials=200, scenario=None):
    rng = random.Random(seed)
    sources = presets.all_presets() if scenario is None else _scenarios(scenario)
    fails = 0
    done = 0
    ce = None
    while done < trials:
        sc = rng.choice(sources) if rng.random() < 0.5 else synth.generate_scenario(rng)
        basis = sc.invariant_coweights()
        if not basis:
            continue
        coeffs = [rng.randint(-2, 2) for _ in basis]
        lam = tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(sc.dim))
        if all(c == 0 for c in lam):
            continue
        scy = sc.shifted(lam)
        try:
            pts = torus.enumerate_all(sc)
        except TamesignError:
            pts = [torus.generate(sc, rng) for _ in range(20)]
        neg = tuple(-c for c in lam)
        for pt in pts:
            pty = TorusPoint(scy, pt.values, check=False)
            lhs = epschar.eps_named(sc, "sharp_x", pt) * epschar.delta_xy(sc, lam, pt)
            rhs = epschar.eps_named(scy, "sharp_x", pty) * epschar.delta_xy(scy, neg, pty)
            if lhs != rhs:
                fails += 1
                ce = ce or _counterexample(sc, pt, "translation-reciprocity")
        done += 1
    return [_record("translation-reciprocity", "jump character times comparison sign is translation symmetric", done, fails, ce)]


# -- validation honesty --------------------------------------------------------------------


def bad_documents():
    """Documents violating one named invariant each, with the expected name."""
    out = []
    doc = presets.preset_document("pgl2-ramified")
    doc["depth_r"] = "1"  # e*r = 2, even
    out.append(("ramified-depth-parity", doc))
    doc2 = presets.preset_document("pgl2-ramified")
    doc2["offsets"] = {"0": "1/4"}
    out.append(("ramified-jump-at-zero", doc2))
    doc3 = presets.preset_document("pgsp4-siegel")
    doc3["a_residues"] = dict(doc3["a_residues"], **{"2": 1})
    out.append(("residue-fiber-consistent", doc3))
    doc4 = presets.preset_document("pgl2-split")
    doc4["offsets"] = {"0": "0", "1": "1/2"}
    out.append(("ord-negation-antisymmetric", doc4))
    doc5 = presets.preset_document("pgl3-inertial")
    doc5["p"] = 3  # p | e
    out.append(("tame-ramification", doc5))
    doc6 = presets.preset_document("pgl2-ramified")
    doc6["toral_invariants"] = {}
    out.append(("toral-invariant-keys", doc6))
    doc7 = presets.preset_document("pgl2-split")
    doc7["depth_r"] = "1/2"
    out.append(("depth-in-ord-lattice", doc7))
    return out


def suite_validation(seed=0, trials=0, scenario=None):
    fails = 0
    records = []
    docs = bad_documents()
    for expected, doc in docs:
        try:
            load(doc)
            fails += 1
            records.append((expected, "accepted"))
        except ValidationError as exc:
            if exc.invariant != expected:
                fails += 1
                records.append((expected, exc.invariant))
        except TamesignError as exc:
            fails += 1
            records.append((expected, repr(exc)))
    ce = {"check": "validation-honesty", "mismatches": records} if records else None
    return [_record("validation-honesty", "invalid documents are rejected with the correct named invariant", len(docs), fails, ce)]


SUITE_FUNCS = {
    "hypercoh": suite_hypercoh,
    "spinor": suite_spinor,
    "repack": suite_repack,
    "main-theorem": suite_main_theorem,
    "chidata": suite_chidata,
    "laws": suite_laws,
    "reciprocity": suite_reciprocity,
    "validation": suite_validation,
}


def run_suite(name, seed=0, trials=None, scenario=None):
    if name == "all":
        out = []
        defaults = {
            "hypercoh": 2000,
            "spinor": 400,
            "repack": 1000,
            "main-theorem": 200,
            "chidata": 0,
            "laws": 200,
            "reciprocity": 60,
            "validation": 0,
        }
        for s in SUITES:
            out += SUITE_FUNCS[s](seed=seed, trials=trials if trials is not None else defaults[s], scenario=scenario)
        return out
    if name not in SUITE_FUNCS:
        raise ValueError("unknown suite %r" % (name,))
    kwargs = {"seed": seed, "scenario": scenario}
    if trials is not None:
        kwargs["trials"] = trials
    return SUITE_FUNCS[name](**kwargs)
