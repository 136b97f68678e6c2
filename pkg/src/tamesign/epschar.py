"""The sign-character calculus on torus points.

Five named auxiliary characters, the generic finite-set character, the three
construction pieces (jump-count determinant, hypercocycle, spinor norm) each
with a closed formula and an independent oracle, the product character, and
the translation-comparison character with its reciprocity.

All values are +-1 (plain ints).
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor

from . import fields, hypercoh, quadspace
from .errors import InvariantViolation, NotInvariant, NotSigmaStable, UnknownRoot
from .sigma import ASYMMETRIC, SYM_RAM, SYM_UNRAM, SigmaSet

PHI_KINDS = ("sharp", "flat0", "zero_symram", "s_symram", "zs_symram")
NAMED = ("sharp_x", "flat0", "flat1", "flat2", "f", "flat")


# -- residue-field character helpers ------------------------------------------


def _sgn_root(sc, i, value) -> int:
    """sgn in the residue field attached to root i, of a value in the ambient field."""
    return fields.sgn_in(value, sc.m * sc.f_root[i])


def _sgn1_root(sc, i, value) -> int:
    cls = sc.cls_root[i]
    over = fields.GF(sc.p, sc.m * cls.f_pm)
    return fields.sgn1(value, over)


def _sgn_int_root(sc, i, n) -> int:
    """sgn_{k_alpha} of a rational integer (nonzero mod p)."""
    if n % sc.p == 0:
        raise InvariantViolation("integer argument of sgn vanishes in the residue field")
    return _sgn_root(sc, i, sc.kbar.elem(n % sc.p))


# -- Phi-sets -------------------------------------------------------------------


def check_sigma_stable(sc, phi):
    phi = frozenset(phi)
    for i in phi:
        if i not in set(sc.gm):
            raise NotSigmaStable("index %r is not a root outside the Levi" % (i,))
        if sc.neg[i] not in phi:
            raise NotSigmaStable("not closed under negation at %r" % (i,))
        for g in sc.frame.elements:
            if g[i] not in phi:
                raise NotSigmaStable("not Galois stable at %r" % (i,))
    return phi


def build_phi(sc, which) -> frozenset:
    if which not in PHI_KINDS:
        raise ValueError("unknown Phi-set kind %r" % (which,))
    out = set()
    for i in sc.gm:
        w = sc.restriction[i]
        w_ram = sc.cls_weight[w].kind == SYM_RAM
        in_s = sc.ord_contains(i, sc.s)
        if which == "sharp":
            take = in_s
        elif which == "flat0":
            take = w_ram and sc.rel_ramification(i) % 2 == 1
        elif which == "zero_symram":
            take = w_ram and sc.ord_contains(i, Fraction(0))
        elif which == "s_symram":
            take = (not w_ram) and in_s
        else:  # zs_symram
            take = (
                w_ram
                and sc.rel_ramification(i) % 2 == 1
                and not sc.ord_contains(i, Fraction(0))
                and not in_s
            )
        if take:
            out.add(i)
    return frozenset(out)


def eps_phi(sc, phi, gamma) -> int:
    """Product of sgn over asymmetric orbits and sgn1 over unramified
    symmetric orbits of the given stable root subset."""
    phi = check_sigma_stable(sc, phi)
    sign = 1
    seen = set()
    for i in sorted(phi):
        if i in seen:
            continue
        kind = sc.cls_root[i].kind
        if kind == ASYMMETRIC:
            orbit = sc.sigma.sigma_orbit(i)
            seen |= orbit
            sign *= _sgn_root(sc, i, gamma.evaluate(i))
        elif kind == SYM_UNRAM:
            orbit = sc.sigma.gamma_orbit(i)
            seen |= orbit
            sign *= _sgn1_root(sc, i, gamma.evaluate(i))
        else:
            seen |= sc.sigma.gamma_orbit(i)
    return sign


# -- the five named characters ---------------------------------------------------


def _ram_sym_reps_with_minus_one(sc, gamma):
    reps = []
    for rep in sc.gm_gamma_reps():
        if sc.cls_root[rep].kind != SYM_RAM:
            continue
        v = gamma.evaluate(rep)
        one = sc.kbar.one()
        if v == -one:
            reps.append(rep)
        elif v != one:
            raise InvariantViolation("ramified symmetric root value must be a sign")
    return reps


def eps_named(sc, name, gamma) -> int:
    if name not in NAMED:
        raise ValueError("unknown character name %r" % (name,))
    if name == "sharp_x":
        return eps_phi(sc, build_phi(sc, "sharp"), gamma)
    if name == "flat0":
        return eps_phi(sc, build_phi(sc, "flat0"), gamma)
    if name == "flat":
        return (
            eps_named(sc, "flat0", gamma)
            * eps_named(sc, "flat1", gamma)
            * eps_named(sc, "flat2", gamma)
        )
    sign = 1
    for rep in _ram_sym_reps_with_minus_one(sc, gamma):
        if name == "f":
            sign *= sc.toral_invariant(rep)
        elif name == "flat1":
            f_deg = sc.f_root[rep]
            sign *= (-1) ** (f_deg + 1) * _sgn_int_root(
                sc, rep, sc.e_root[rep] * sc.ell_covee_p(rep)
            )
        else:  # flat2
            exp = (sc.rel_ramification(rep) - 1) // 2
            sign *= _sgn_int_root(sc, rep, -1) ** exp
    return sign


# -- piece one: jump counts between zero and half the coarse step ----------------


def _count_ord_open(sc, i, a, b) -> int:
    """Cardinality of ord_x(alpha_i) in the open interval (a, b)."""
    e = sc.e_root[i]
    t = sc.offsets[i]
    lo = (Fraction(a) - t) * e
    hi = (Fraction(b) - t) * e
    return max(0, ceil(hi) - floor(lo) - 1)


def _ram_weight_preimage(sc):
    return [
        i for i in sc.gm if sc.cls_weight[sc.restriction[i]].kind == SYM_RAM
    ]


def piece_esr(sc, gamma, mode="formula") -> int:
    """Determinant-of-the-action character for the ramified-symmetric weights,
    with jump window (0, 1/(2 e_{alpha_0}))."""
    rt = set(_ram_weight_preimage(sc))
    if mode == "oracle":
        sign = 1
        seen = set()
        for i in sorted(rt):
            if i in seen:
                continue
            seen |= sc.sigma.gamma_orbit(i)
            d = Fraction(1, sc.e_weight[sc.restriction[i]])
            n = _count_ord_open(sc, i, 0, d / 2)
            if n % 2:
                sign *= _sgn_root(sc, i, gamma.evaluate(i))
        return sign
    if mode != "formula":
        raise ValueError("mode must be formula or oracle")
    sign = 1
    seen = set()
    for i in sorted(rt):
        if i in seen:
            continue
        kind = sc.cls_root[i].kind
        d = Fraction(1, sc.e_weight[sc.restriction[i]])
        if kind == ASYMMETRIC:
            seen |= sc.sigma.sigma_orbit(i)
            if (
                not sc.ord_contains(i, Fraction(0))
                and not sc.ord_contains(i, d / 2)
                and sc.rel_ramification(i) % 2 == 1
            ):
                sign *= _sgn_root(sc, i, gamma.evaluate(i))
        elif kind == SYM_RAM:
            seen |= sc.sigma.gamma_orbit(i)
            one = sc.kbar.one()
            if gamma.evaluate(i) == -one:
                exp = (sc.e_root[i] * d - 1) / 2
                exp = int(exp) if exp == int(exp) else floor(exp)
                sign *= _sgn_int_root(sc, i, -1) ** exp
        else:
            seen |= sc.sigma.gamma_orbit(i)
    return sign


# -- piece two: hypercocycle character off the ramified-symmetric weights --------


def _hyper_sigma_set(sc):
    """Inertia orbits of the weights that are not ramified symmetric."""
    wq, proj = sc.weight_sigma.quotient_by_inertia()
    keep = [
        lab
        for lab in wq.indices
        if sc.cls_weight[next(iter(lab))].kind != SYM_RAM
    ]
    action = {e: {lab: wq.act(e, lab) for lab in keep} for e in sc.frame.elements}
    negation = {lab: wq.neg(lab) for lab in keep}
    return SigmaSet(sc.frame, keep, action, negation), proj


def _hyper_chi_values(sc, gamma):
    """chi_O(gamma): product of root-orbit residue values at jump s over the fiber."""
    rq, rproj = sc.root_inertia_quotient()
    values = {}
    wq, _ = sc.weight_sigma.quotient_by_inertia()
    for wlab in wq.indices:
        acc = sc.kbar.one()
        seen = set()
        for i in sc.gm:
            if sc.restriction[i] not in wlab:
                continue
            P = rproj[i]
            if P in seen:
                continue
            seen.add(P)
            if sc.ord_contains(i, sc.s):
                acc = acc * gamma.evaluate(i)
        values[wlab] = acc
    return values


def piece_hyper(sc, gamma, mode="formula") -> int:
    sig, _ = _hyper_sigma_set(sc)
    if not sig.indices:
        return 1
    values = _hyper_chi_values(sc, gamma)
    if mode == "formula":
        cls = hypercoh.eval_formula(sig, lambda lab: values[lab], sc.kbar, sc.k)
        return cls.sign()
    if mode != "direct":
        raise ValueError("mode must be formula or direct")
    lattice, chi = hypercoh.sigma_lattice(sig)
    hc = hypercoh.from_sigma_set(sig, chi=chi, lattice=lattice)
    ctx = hypercoh.context_from_index_values(
        sig, lattice, chi, sc.kbar, sc.k, {lab: values[lab] for lab in sig.indices}
    )
    return hypercoh.eval_direct(hc, ctx).sign()


# -- piece three: spinor norm at jump zero ---------------------------------------


def _least_nonsquare(field):
    for code in range(1, field.order):
        cand = field.elem(code)
        if fields.sgn_in(cand, field.degree) < 0:
            return cand
    raise InvariantViolation("no nonsquare in a field of odd order")


def piece_spinor(sc, gamma, mode="formula") -> int:
    rt = set(_ram_weight_preimage(sc))
    if mode == "formula":
        sign = 1
        seen = set()
        for i in sorted(rt):
            if i in seen:
                continue
            kind = sc.cls_root[i].kind
            if kind == ASYMMETRIC:
                seen |= sc.sigma.sigma_orbit(i)
                if sc.ord_contains(i, Fraction(0)):
                    sign *= _sgn_root(sc, i, gamma.evaluate(i))
            elif kind == SYM_UNRAM:
                seen |= sc.sigma.gamma_orbit(i)
                if sc.ord_contains(i, Fraction(0)):
                    sign *= _sgn1_root(sc, i, gamma.evaluate(i))
            else:
                seen |= sc.sigma.gamma_orbit(i)
                one = sc.kbar.one()
                if gamma.evaluate(i) == -one:
                    f_deg = sc.f_root[i]
                    sign *= (
                        (-1) ** (f_deg + 1)
                        * _sgn_int_root(sc, i, sc.e_root[i] * sc.ell_covee_p(i))
                        * sc.toral_invariant(i)
                    )
        return sign
    if mode != "oracle":
        raise ValueError("mode must be formula or oracle")
    space, iso = spinor_zero_space(sc, gamma)
    if space is None:
        return 1
    V = space.realize()
    A = iso.realize(V)
    return quadspace.spinor_norm(V, A).sign()


def spinor_zero_space(sc, gamma):
    """Graded space carried by the jump-zero layer over the ramified-symmetric
    weights, together with gamma realized as a graded scalar isometry."""
    rq, rproj = sc.root_inertia_quotient()
    rt = set(_ram_weight_preimage(sc))
    labels = []
    seen = set()
    for i in sorted(rt):
        P = rproj[i]
        if P in seen:
            continue
        seen.add(P)
        if sc.ord_contains(i, Fraction(0)):
            labels.append(P)
    if not labels:
        return None, None
    blocks = []
    lambdas = []
    done = set()
    for P in labels:
        if P in done:
            continue
        done |= {
            Q for Q in labels if Q in rq.sigma_orbit(P)
        }
        i = min(P)
        cls = sc.cls_root[i]
        ki = sc.field_of_root(i)
        lam = fields.project(gamma.evaluate(i), ki)
        if cls.kind == SYM_RAM:
            scale = ki.elem(sc.e_root[i] * sc.ell_covee_p(i) % sc.p)
            if sc.toral_invariant(i) < 0:
                scale = scale * _least_nonsquare(ki)
            blocks.append(
                quadspace.GradedBlock(quadspace.ANISO_BLOCK, cls.f, 1, (int(scale),))
            )
        elif cls.kind == ASYMMETRIC:
            blocks.append(quadspace.GradedBlock(quadspace.ASYM_BLOCK, cls.f, 1, ()))
        else:
            blocks.append(quadspace.GradedBlock(quadspace.HERM_BLOCK, cls.f, 1, (1,)))
        lambdas.append(lam)
    space = quadspace.GradedQuadSpace(sc.k, blocks)
    iso = quadspace.GradedIsometry(space, lambdas)
    return space, iso


# -- the product character and the translation comparison ------------------------


def eps_x(sc, gamma) -> int:
    return (
        piece_esr(sc, gamma, "formula")
        * piece_hyper(sc, gamma, "formula")
        * piece_spinor(sc, gamma, "formula")
    )


def delta_xy(sc, lam, gamma) -> int:
    """Comparison character between the scenario and its coweight translate."""
    lam = tuple(lam)
    if len(lam) != sc.dim:
        raise NotInvariant("coweight of wrong dimension")
    for g in sc.frame.elements:
        for i in range(sc.nroots):
            if sc.pairing(g[i], lam) != sc.pairing(i, lam):
                raise NotInvariant("coweight is not Galois invariant")
    sign = 1
    seen = set()
    for i in sc.gm:
        if i in seen:
            continue
        if sc.cls_root[i].kind != ASYMMETRIC:
            continue
        orbit = sc.sigma.sigma_orbit(i)
        seen |= orbit
        pair = sc.pairing(i, lam)
        if pair == 0 or not sc.ord_contains(i, sc.s):
            continue
        rep = i if pair > 0 else sc.neg[i]
        sign *= _sgn_root(sc, rep, gamma.evaluate(rep))
    return sign
