"""Gauss sums, lambda constants, tame characters, and the comparison of the
two character-data normalizations through the second transfer factor.

Complex values use floating arithmetic with one global tolerance; everything
compared is a root of unity times unit-modulus sums, far above the tolerance
at this scale.

Tame characters are pinned by their value at the class of the leading a-data
element rather than at a uniformizer, so no uniformizer convention enters any
identity computed here.  Evaluation is only defined at valuations the pin
reaches exactly (all in-scope identities evaluate at valuations 0 and +-r).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from . import fields
from .errors import (
    InvariantViolation,
    NotRamifiedSymmetric,
    ResiduallySingular,
    WrongSymmetryClass,
)
from .sigma import ASYMMETRIC, SYM_RAM, SYM_UNRAM

TOL = 1e-9


def close(a, b, tol=TOL):
    return abs(a - b) <= tol


# -- Gauss sums ---------------------------------------------------------------


def additive_char(a: fields.FqElem) -> complex:
    """exp(2 pi i Tr(a) / p) with the absolute trace to the prime field."""
    t = fields.trace(a, fields.GF(a.field.p))
    tint = t.coeffs[0] if t.coeffs else 0
    return cmath.exp(2j * cmath.pi * tint / a.field.p)


def gauss_sum(field: fields.FieldDesc) -> complex:
    """Normalized quadratic Gauss sum: q^(-1/2) sum sgn(x) psi(x)."""
    acc = 0j
    for code in range(1, field.order):
        x = field.elem(code)
        acc += fields.sgn_in(x, field.degree) * additive_char(x)
    return acc / cmath.sqrt(field.order)


def hasse_davenport(small: fields.FieldDesc, big: fields.FieldDesc) -> bool:
    """- G_big == (- G_small)^[big:small], checked numerically."""
    if small.p != big.p or big.degree % small.degree != 0:
        raise InvariantViolation("not an extension pair")
    d = big.degree // small.degree
    return close(-gauss_sum(big), (-gauss_sum(small)) ** d)


def lambda_constant_raw(kalpha: fields.FieldDesc, e_pm: int) -> complex:
    """kappa(e_pm) times the Gauss sum of the ramified quadratic residue field."""
    if e_pm % kalpha.p == 0:
        raise InvariantViolation("wild ramification degree")
    kappa = fields.sgn_in(kalpha.elem(e_pm % kalpha.p), kalpha.degree)
    return kappa * gauss_sum(kalpha)


def lambda_constant(sc, i) -> complex:
    if sc.cls_root[i].kind != SYM_RAM:
        raise NotRamifiedSymmetric("root %r" % (i,))
    e_pm = sc.e_root[i] // 2
    return lambda_constant_raw(sc.field_of_root(i), e_pm)


# -- tame elements and characters -----------------------------------------------


@dataclass(frozen=True)
class TameElement:
    """Leading-term data of a tame element: valuation and leading residue."""

    valuation: Fraction
    leading: fields.FqElem


class TameCharacter:
    """A tamely ramified character seen through leading-term data.

    residue_exp 0 or 1 selects the trivial or the quadratic residue character
    of the degree `res_subdeg` subfield.  The depth component is pinned: the
    value at the reference valuation step `pin_exp / e` is `pin_val`.  For odd
    pin exponents the value extends canonically to every integer step; for
    even ones only multiples of the pin are defined.
    """

    def __init__(self, e, res_subdeg, res_exp, pin_exp, pin_val):
        if pin_exp == 0:
            raise InvariantViolation("pin exponent must be nonzero")
        self.e = e
        self.res_subdeg = res_subdeg
        self.res_exp = res_exp % 2
        self.pin_exp = pin_exp
        self.pin_val = complex(pin_val)

    def unif_value(self):
        """Value at one normalized valuation step, when determined."""
        m = self.pin_exp
        if m % 2 == 0:
            raise InvariantViolation(
                "depth component pinned only at even steps; no canonical value"
            )
        minv = pow(m % 4, -1, 4)
        return self.pin_val**minv

    def _depth_part(self, n):
        m = self.pin_exp
        if n % m == 0:
            return self.pin_val ** (n // m)
        if m % 2 == 1:
            return self.unif_value() ** n
        raise InvariantViolation("valuation %r not reachable from the pin" % (n,))

    def __call__(self, t: TameElement) -> complex:
        n = Fraction(t.valuation) * self.e
        if n.denominator != 1:
            raise InvariantViolation("valuation outside the home lattice")
        if not t.leading:
            raise InvariantViolation("leading residue must be nonzero")
        val = self._depth_part(int(n))
        if self.res_exp:
            val *= fields.sgn_in(t.leading, self.res_subdeg)
        return val


# -- construction of the two character-data families -----------------------------


def require_tame_bonds(sc):
    for comp, top in sc.ell_c.items():
        if top % sc.p == 0:
            raise InvariantViolation(
                "character-data comparisons require p prime to every bond multiplicity"
            )


def _weight_rep_data(sc, i):
    """Absolute residue degree of the weight field and leading of the pinned
    element ell(coroot) * a_alpha, as data of the root i."""
    w = sc.restriction[i]
    f0_abs = sc.m * sc.f_weight[w]
    lead = sc.a_res[i] * sc.kbar.elem(sc.ell_covee_p(i) % sc.p)
    if not fields.in_subfield(lead, fields.GF(sc.p, f0_abs)):
        raise InvariantViolation(
            "pinned a-data residue is not rational over the weight field"
        )
    return f0_abs, lead


def make_chi(sc, i, variant) -> TameCharacter:
    """Character data attached to a root: `prime` is the minimally ramified
    normalization pinned by the lambda constant, `doubleprime0` the weight
    level normalization pinned by a Gauss sum, `doubleprime` its pullback
    through the norm of the root field over the weight field."""
    require_tame_bonds(sc)
    if i not in set(sc.gm):
        raise WrongSymmetryClass("root %r is not outside the Levi" % (i,))
    kind = sc.cls_root[i].kind
    e_alpha = sc.e_root[i]
    f_abs = sc.m * sc.f_root[i]
    m_pin = int(-sc.r * e_alpha) if (sc.r * e_alpha).denominator == 1 else None
    if variant == "prime":
        if kind == ASYMMETRIC:
            return TameCharacter(e_alpha, f_abs, 0, 1, 1.0)
        if kind == SYM_UNRAM:
            return TameCharacter(e_alpha, f_abs, 0, 1, -1.0)
        lam = lambda_constant(sc, i)
        two_c = sc.kbar.elem(2) * sc.a_res[i]
        w = lam * fields.sgn_in(two_c, f_abs)
        return TameCharacter(e_alpha, f_abs, 1, m_pin, w)
    w0 = sc.restriction[i]
    kind0 = sc.cls_weight[w0].kind
    if variant == "doubleprime0":
        e0 = sc.e_weight[w0]
        f0_abs = sc.m * sc.f_weight[w0]
        if kind0 == ASYMMETRIC:
            return TameCharacter(e0, f0_abs, 0, 1, 1.0)
        if kind0 == SYM_UNRAM:
            return TameCharacter(e0, f0_abs, 0, 1, -1.0)
        f0_rel = sc.f_weight[w0]
        z0 = (-1) ** (f0_rel + 1) * gauss_sum(fields.GF(sc.p, f0_abs))
        m0 = int(-sc.r * e0)
        _, lead = _weight_rep_data(sc, i)
        w = z0 * fields.sgn_in(lead, f0_abs)
        return TameCharacter(e0, f0_abs, 1, m0, w)
    if variant != "doubleprime":
        raise ValueError("variant must be prime, doubleprime0 or doubleprime")
    e_rel = sc.rel_ramification(i)
    f_rel = sc.rel_residue_degree(i)
    if kind0 == ASYMMETRIC:
        return TameCharacter(e_alpha, f_abs, 0, 1, 1.0)
    if kind0 == SYM_UNRAM:
        return TameCharacter(e_alpha, f_abs, 0, 1, (-1.0) ** f_rel)
    chi0 = make_chi(sc, i, "doubleprime0")
    _, lead = _weight_rep_data(sc, i)
    pin0 = chi0(TameElement(-sc.r, lead))
    big_pin = pin0 ** (e_rel * f_rel)
    # unit rule of the norm pullback: residue sgn to the e_rel-th power
    res_exp = e_rel % 2
    w = big_pin * (fields.sgn_in(lead, f_abs) if res_exp else 1.0)
    return TameCharacter(e_alpha, f_abs, res_exp, int(-sc.r * e_alpha), w)


def chi_weight_independent(sc, i, j) -> bool:
    """Two roots of one fiber produce the same weight-level character data."""
    if sc.restriction[i] != sc.restriction[j]:
        raise WrongSymmetryClass("roots lie over different weights")
    ci, cj = make_chi(sc, i, "doubleprime0"), make_chi(sc, j, "doubleprime0")
    if (ci.e, ci.res_subdeg, ci.res_exp, ci.pin_exp) != (cj.e, cj.res_subdeg, cj.res_exp, cj.pin_exp):
        return False
    return close(ci.pin_val, cj.pin_val)


def ratio_check(sc, i) -> bool:
    """Numeric ratio of the two normalizations at the pinned element against
    the closed sign."""
    if sc.cls_root[i].kind != SYM_RAM:
        raise NotRamifiedSymmetric("root %r" % (i,))
    require_tame_bonds(sc)
    e_rel = sc.rel_ramification(i)
    f_abs = sc.m * sc.f_root[i]
    _, lead = _weight_rep_data(sc, i)
    t = TameElement(-sc.r, lead)
    num = make_chi(sc, i, "doubleprime")(t)
    den = make_chi(sc, i, "prime")(t)
    f_rel_base = sc.f_root[i]
    closed = (
        (-1) ** (f_rel_base + 1)
        * _sgn_int(sc, f_abs, sc.e_root[i] * sc.ell_covee_p(i))
        * _sgn_int(sc, f_abs, -1) ** ((e_rel - 1) // 2)
    )
    return close(num / den, closed)


def ratio_check_raw(p, a, f_rel, e_rel, ell, e0=2) -> bool:
    """Parameter-sweep form of the ratio identity.

    k_alpha = GF(p^a), weight field of relative index f_rel, relative
    ramification e_rel (odd), coroot length ell; e0 is the even ramification
    of the weight field."""
    if a % f_rel != 0 or e_rel % 2 == 0:
        raise InvariantViolation("invalid sweep parameters")
    e_alpha = e0 * e_rel
    if e_alpha % p == 0 or ell % p == 0:
        raise InvariantViolation("wild parameters")
    kalpha = fields.GF(p, a)
    k0 = fields.GF(p, a // f_rel)
    z0 = (-1) ** (a // f_rel + 1) * gauss_sum(k0)
    num = z0 ** (e_rel * f_rel)
    lam = lambda_constant_raw(kalpha, e_alpha // 2)
    den = lam * fields.sgn_in(kalpha.elem((2 * ell) % p), a)
    closed = (
        (-1) ** (a + 1)
        * fields.sgn_in(kalpha.elem((e_alpha * ell) % p), a)
        * fields.sgn_in(-kalpha.one(), a) ** ((e_rel - 1) // 2)
    )
    return close(num / den, closed)


def _sgn_int(sc, subdeg, n) -> int:
    if n % sc.p == 0:
        raise InvariantViolation("argument vanishes in the residue field")
    return fields.sgn_in(sc.kbar.elem(n % sc.p), subdeg)


# -- unramified-sign data and the transfer-factor products -----------------------


def zeta_character(sc, eps_signs, gamma, path="formula") -> complex:
    """Character attached to unramified sign data on the ramified symmetric
    orbits.  `eps_signs` maps each such orbit representative to +-1."""
    reps = [r for r in sc.gm_gamma_reps() if sc.cls_root[r].kind == SYM_RAM]
    if set(eps_signs) != set(reps):
        raise InvariantViolation("signs must be keyed by the ramified symmetric orbits")
    out = 1.0
    one = sc.kbar.one()
    for rep in reps:
        v = gamma.evaluate(rep)
        if path == "formula":
            if v == -one:
                out *= eps_signs[rep]
        elif path == "unit-choice":
            # choose the solution of the twist equation: a unit when the
            # residue is 1 (contributing nothing), a depth-one step otherwise
            if v == one:
                exponent = 0
            elif v == -one:
                exponent = sc.e_root[rep] * Fraction(1, sc.e_root[rep])
            else:
                raise InvariantViolation("ramified symmetric value must be a sign")
            out *= eps_signs[rep] ** int(exponent)
        else:
            raise ValueError("path must be formula or unit-choice")
    return out


def delta_II(sc, gamma, chi="prime") -> complex:
    """Product over Galois orbit representatives of the character value at
    (alpha(gamma) - 1) / a_alpha.

    Orbits whose character is trivial contribute nothing and are skipped even
    at residue 1; any orbit carrying a nontrivial character demands residual
    regularity there, since the depth of alpha(gamma) - 1 is invisible to the
    leading-term model when the residue is 1.  For the minimally ramified
    normalization the asymmetric factors are all trivial and the product
    reduces to its familiar symmetric-orbit form.
    """
    out = 1.0 + 0j
    one = sc.kbar.one()
    for rep in sc.gm_gamma_reps():
        ch = make_chi(sc, rep, chi) if isinstance(chi, str) else chi[rep]
        trivial = ch.res_exp == 0 and close(ch.pin_val, 1.0)
        if trivial:
            continue
        v = gamma.evaluate(rep)
        if v == one:
            raise ResiduallySingular(
                "root value with residue 1 meets a nontrivial character; "
                "depth of alpha(gamma)-1 unknown"
            )
        lead = (v - one) * sc.a_res[rep].inv()
        out *= ch(TameElement(sc.r, lead))
    return out


def delta_II_abs(sc, gamma, chi="prime", levi_units=None) -> complex:
    """Absolute version: multiplies in the Levi-side symmetric factors with
    caller-supplied unit a-data residues (valuation zero)."""
    out = delta_II(sc, gamma, chi)
    levi_units = dict(levi_units or {})
    one = sc.kbar.one()
    seen = set()
    for i in sorted(sc.levi):
        if i in seen:
            continue
        seen |= sc.sigma.gamma_orbit(i)
        kind = sc.cls_root[i].kind
        if kind == ASYMMETRIC:
            continue
        v = gamma.evaluate(i)
        if v == one:
            raise ResiduallySingular("Levi symmetric root with residue 1")
        unit = sc.kbar.elem(levi_units.get(i, 1))
        if not unit:
            raise InvariantViolation("unit residue must be nonzero")
        if kind == SYM_RAM:
            out *= fields.sgn_in((v - one) * unit.inv(), sc.m * sc.f_root[i])
        # unramified symmetric factors are valuation-zero values of an
        # unramified character, hence contribute 1
    return out
