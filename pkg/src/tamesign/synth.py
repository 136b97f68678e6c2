"""Seeded synthetic scenario generator.

Draws a base root system, a Galois option from a hand-checked catalog, a Levi
subset, a depth, jump offsets, residues and toral invariants, then validates
through the ordinary loader; rejected draws are retried.  Only valid scenarios
are ever returned.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm

from .errors import TamesignError
from .scenario import Scenario, load
from .sigma import SYM_RAM

_A1 = dict(roots=[[1], [-1]], lengths=[1, 1], comp=["A1"] * 2)
_A1xA1 = dict(
    roots=[[1, 0], [0, 1], [-1, 0], [0, -1]],
    lengths=[1, 1, 1, 1],
    comp=["X", "Y", "X", "Y"],
)
_A2 = dict(
    roots=[[1, 0], [0, 1], [1, 1], [-1, 0], [0, -1], [-1, -1]],
    lengths=[1] * 6,
    comp=["A2"] * 6,
)
_C2 = dict(
    roots=[[1, 0], [0, 1], [1, 1], [2, 1], [-1, 0], [0, -1], [-1, -1], [-2, -1]],
    lengths=[1, 2, 1, 2, 1, 2, 1, 2],
    comp=["C2"] * 8,
)
_G2 = dict(
    roots=[
        [1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2],
        [-1, 0], [0, -1], [-1, -1], [-2, -1], [-3, -1], [-3, -2],
    ],
    lengths=[1, 3, 1, 1, 3, 3] * 2,
    comp=["G2"] * 12,
)


def _perm(roots, mat):
    index = {tuple(v): i for i, v in enumerate(roots)}
    out = []
    for v in roots:
        image = tuple(sum(mat[r][c] * v[c] for c in range(len(v))) for r in range(len(v)))
        if image not in index:
            return None
        out.append(index[image])
    return out


def _options(system):
    """(gamma matrices, inertia indices, frobenius index, allowed levis)."""
    roots = system["roots"]
    d = len(roots[0])
    minus = [[-(1 if r == c else 0) for c in range(d)] for r in range(d)]
    base = [
        ([], [], None, [[]]),
        ([minus], [0], None, [[]]),
        ([minus], [], 0, [[]]),
    ]
    if system is _A1xA1:
        swap = [[0, 1], [1, 0]]
        base += [
            ([swap], [], 0, [[]]),
            ([swap], [0], None, [[]]),
            ([swap, minus], [0], 1, [[]]),
            ([swap, minus], [1], 0, [[]]),
        ]
    if system is _A2:
        rot = [[0, -1], [1, -1]]
        flip = [[0, -1], [-1, 0]]
        linertia = [[1, -1], [0, -1]]
        base += [
            ([rot], [0], None, [[]]),
            ([rot], [], 0, [[]]),
            ([rot, flip], [0], 1, [[]]),
            ([linertia], [0], None, [[0, 3]]),
            ([linertia, minus], [0], 1, [[0, 3]]),
            ([], [], None, [[0, 3]]),
            ([minus], [], 0, [[0, 3]]),
        ]
    if system is _C2:
        siegel = [[1, -2], [0, -1]]
        base += [
            ([siegel], [0], None, [[0, 4]]),
            ([], [], None, [[0, 4], [1, 5]]),
            ([minus], [], 0, [[0, 4], [1, 5]]),
        ]
    if system is _G2:
        base += [([], [], None, [[0, 6]])]
    return base


_SYSTEMS = [_A1, _A1xA1, _A2, _C2, _G2]


def _fibers_from_levi(roots, levi):
    """Partition the non-Levi roots by restriction: alpha ~ beta when their
    difference lies in the rational span of the Levi roots."""
    levi_vecs = [roots[i] for i in levi]
    d = len(roots[0])

    def in_span(vec):
        if not levi_vecs:
            return all(c == 0 for c in vec)
        # gaussian elimination over Q
        rows = [list(map(Fraction, v)) for v in levi_vecs]
        target = list(map(Fraction, vec))
        piv = []
        for col in range(d):
            src = next((r for r in range(len(piv), len(rows)) if rows[r][col]), None)
            if src is None:
                continue
            r0 = len(piv)
            rows[r0], rows[src] = rows[src], rows[r0]
            pv = rows[r0][col]
            rows[r0] = [x / pv for x in rows[r0]]
            for r in range(len(rows)):
                if r != r0 and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[r0])]
            if target[col]:
                f = target[col]
                target = [a - f * b for a, b in zip(target, rows[r0])]
            piv.append(col)
        return all(x == 0 for x in target)

    gm = [i for i in range(len(roots)) if i not in set(levi)]
    labels = {}
    for i in gm:
        for j in gm:
            if j in labels and in_span([a - b for a, b in zip(roots[i], roots[j])]):
                labels[i] = labels[j]
                break
        else:
            labels[i] = "w%d" % i
    return labels


def _draw_document(rng):
    system = rng.choice(_SYSTEMS)
    mats, inertia_idx, frob_idx, levis = rng.choice(_options(system))
    perms = []
    for m in mats:
        pm = _perm(system["roots"], m)
        if pm is None:
            return None
        perms.append(pm)
    levi = rng.choice(levis)
    labels = _fibers_from_levi(system["roots"], levi)
    p = rng.choice([3, 5, 7])
    doc = dict(
        name="synthetic",
        p=p,
        base_degree=1,
        roots=[list(v) for v in system["roots"]],
        levi=list(levi),
        gamma_generators=perms,
        inertia_generators=[perms[i] for i in inertia_idx],
        frobenius=frob_idx,
        restriction={str(i): lab for i, lab in labels.items()},
        components=list(system["comp"]),
        lengths=list(system["lengths"]),
    )
    # a first pass through the loader machinery needs offsets/depth; compute
    # classification directly from a probe document with safe placeholders
    probe = dict(doc)
    probe.update(depth_r="1", offsets={}, toral_invariants={}, a_residues={})
    try:
        sc = _probe_structure(probe)
    except TamesignError:
        return None
    reps = sc.gm_gamma_reps()
    # depth: r = j / L subject to integrality and parity constraints
    L = lcm(*[sc.e_root[i] for i in sc.gm])
    candidates = []
    for j in range(1, 6 * L + 1):
        r = Fraction(j, L)
        ok = all((r * sc.e_root[i]).denominator == 1 for i in sc.gm)
        for i in sc.gm:
            w = sc.restriction[i]
            if sc.cls_weight[w].kind == SYM_RAM:
                er0 = r * sc.e_weight[w]
                if er0.denominator != 1 or er0.numerator % 2 == 0:
                    ok = False
            if sc.cls_root[i].kind == SYM_RAM:
                er = r * sc.e_root[i]
                if er.denominator != 1 or er.numerator % 2 == 0:
                    ok = False
        if ok:
            candidates.append(r)
    if not candidates:
        return None
    doc["depth_r"] = str(rng.choice(candidates))
    offsets = {}
    assigned = {}
    for rep in reps:
        kind = sc.cls_root[rep].kind
        e = sc.e_root[rep]
        if rep in assigned:
            offsets[str(rep)] = str(assigned[rep])
            continue
        if kind == SYM_RAM:
            t = Fraction(0)
        elif kind == "symmetric_unramified":
            t = Fraction(rng.randrange(0, 2 * e), 2 * e)
        else:
            t = Fraction(rng.randrange(-4 * e, 4 * e + 1), 2 * e)
            neg_orbit_rep = min(sc.sigma.gamma_orbit(sc.neg[rep]))
            assigned[neg_orbit_rep] = -t
        offsets[str(rep)] = str(t)
    doc["offsets"] = offsets
    doc["toral_invariants"] = {
        str(rep): rng.choice([1, -1])
        for rep in reps
        if sc.cls_root[rep].kind == SYM_RAM
    }
    fiber_scale = {lab: rng.randrange(1, p) for lab in set(labels.values())}
    ares = {}
    for rep in reps:
        lp = sc.ell_p(rep)
        inv = pow(lp % p, -1, p)
        ares[str(rep)] = (fiber_scale[labels[rep]] * inv) % p
    doc["a_residues"] = ares
    return doc


class _ProbeScenario(Scenario):
    """Scenario that stops validating after the structural stage."""

    def _check_ord(self, offsets_doc):
        self.offsets = {}

    def _check_toral(self, toral_doc):
        self._toral = {}

    def _check_residues(self, ares_doc):
        self.a_res = {}


def _probe_structure(doc):
    return _ProbeScenario(doc)


def generate_scenario(seed) -> Scenario:
    """A validated random scenario; deterministic in the seed."""
    rng = random.Random(seed) if not isinstance(seed, random.Random) else seed
    for _ in range(200):
        doc = _draw_document(rng)
        if doc is None:
            continue
        try:
            return load(doc)
        except TamesignError:
            continue
    raise TamesignError("synthetic generator failed to produce a valid scenario")
