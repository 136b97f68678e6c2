"""Residue-field points of the torus, modeled as equivariant multiplicative
root-value assignments.

A point stores one value per root, all inside the scenario's ambient field.
Sampling composes "norm elements" indexed by a coweight and a scalar; these
satisfy every structural constraint by construction.  Exhaustive enumeration
assigns values on the standard lattice basis and filters by equivariance.
"""

from __future__ import annotations

import random

from . import fields
from .errors import TooLarge, UnknownRoot, ValidationError

ENUM_DIM_CAP = 3
ENUM_FIELD_CAP = 81


class TorusPoint:
    __slots__ = ("scenario", "values")

    def __init__(self, scenario, values, check=True):
        self.scenario = scenario
        self.values = dict(values)
        if check:
            self.validate()

    def validate(self):
        sc = self.scenario
        one = sc.kbar.one()
        if set(self.values) != set(range(sc.nroots)):
            raise ValidationError("torus-values-domain", "one value per root required")
        for i, v in self.values.items():
            if v.field != sc.kbar or not v:
                raise ValidationError("torus-values-field")
            if self.values[sc.neg[i]] * v != one:
                raise ValidationError("torus-negation", "value at -alpha must be inverse")
        for g in sc.frame.elements:
            d = sc.frame.d[g]
            for i in range(sc.nroots):
                if self.values[g[i]] != sc.frob(self.values[i], d):
                    raise ValidationError(
                        "torus-equivariance", "values must intertwine the Galois action"
                    )
        # additive closure relations among roots (alpha + beta also a root)
        vec_index = {v: i for i, v in enumerate(sc.roots)}
        for i in range(sc.nroots):
            for j in range(i, sc.nroots):
                s = tuple(a + b for a, b in zip(sc.roots[i], sc.roots[j]))
                if s in vec_index:
                    if self.values[vec_index[s]] != self.values[i] * self.values[j]:
                        raise ValidationError(
                            "torus-multiplicative", "values are not multiplicative on root sums"
                        )

    def evaluate(self, i) -> fields.FqElem:
        if i not in self.values:
            raise UnknownRoot(repr(i))
        v = self.values[i]
        f = self.scenario.f_root[i]
        assert fields.frobenius(v, self.scenario.k, f) == v, "value outside its root field"
        return v

    def __mul__(self, other):
        if other.scenario is not self.scenario:
            raise ValidationError("torus-scenario-mismatch")
        vals = {i: self.values[i] * other.values[i] for i in self.values}
        return TorusPoint(self.scenario, vals, check=False)

    def __eq__(self, other):
        return (
            isinstance(other, TorusPoint)
            and other.scenario is self.scenario
            and other.values == self.values
        )

    def __hash__(self):
        return hash(tuple(sorted((i, v) for i, v in self.values.items())))

    def key(self):
        return tuple(int(self.values[i]) for i in range(self.scenario.nroots))

    def is_identity(self):
        one = self.scenario.kbar.one()
        return all(v == one for v in self.values.values())


def identity_point(sc) -> TorusPoint:
    one = sc.kbar.one()
    return TorusPoint(sc, {i: one for i in range(sc.nroots)}, check=False)


def _norm_element(sc, lam, t) -> TorusPoint:
    """values(alpha) = prod over the group of Frob^{d(g)}(t)^{<g^{-1} alpha, lam>}."""
    vals = {}
    for i in range(sc.nroots):
        acc = sc.kbar.one()
        for g in sc.frame.elements:
            ginv_i = next(j for j in range(sc.nroots) if g[j] == i)
            exp = sc.pairing(ginv_i, lam)
            if exp:
                acc = acc * sc.frob(t, sc.frame.d[g]) ** exp
        vals[i] = acc
    return TorusPoint(sc, vals, check=False)


def generate(sc, seed) -> TorusPoint:
    """Seed-deterministic valid point, a product of a few norm elements."""
    rng = random.Random(seed) if not isinstance(seed, random.Random) else seed
    point = identity_point(sc)
    for _ in range(rng.randint(1, 3)):
        lam = tuple(rng.randint(-2, 2) for _ in range(sc.dim))
        t = sc.kbar.elem(rng.randrange(1, sc.kbar.order))
        point = point * _norm_element(sc, lam, t)
    return point


def enumerate_all(sc):
    """All equivariant multiplicative assignments, by exhausting values on the
    standard lattice basis.  Guarded to desk scale."""
    if sc.dim > ENUM_DIM_CAP or sc.kbar.order > ENUM_FIELD_CAP:
        raise TooLarge(
            "enumeration guard: dim %d, ambient order %d" % (sc.dim, sc.kbar.order)
        )
    units = [sc.kbar.elem(c) for c in range(1, sc.kbar.order)]
    gens = [g for g in sc.frame.elements]
    out = []

    def value_of(basis_vals, i):
        acc = sc.kbar.one()
        for c, v in zip(sc.roots[i], basis_vals):
            if c:
                acc = acc * v**c
        return acc

    import itertools

    for basis_vals in itertools.product(units, repeat=sc.dim):
        vals = {i: value_of(basis_vals, i) for i in range(sc.nroots)}
        ok = True
        for g in gens:
            d = sc.frame.d[g]
            for i in range(sc.nroots):
                if vals[g[i]] != sc.frob(vals[i], d):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(TorusPoint(sc, vals, check=False))
    return out


def points_for_tests(sc, count=40, seed=0):
    """Enumerated points when feasible, else `count` generated ones."""
    try:
        return enumerate_all(sc)
    except TooLarge:
        rng = random.Random(seed)
        return [generate(sc, rng) for _ in range(count)]


def residually_regular(sc, point) -> bool:
    """No root value outside the Levi has residue 1.

    The character-data comparison factors fire at any orbit carrying a
    nontrivial character; with norm-inflated data that includes asymmetric
    orbits over ramified symmetric weights, so regularity is demanded at
    every non-Levi root."""
    one = sc.kbar.one()
    return all(point.values[i] != one for i in sc.gm)
