"""Finite Sigma = Gamma x {+-1} sets with a distinguished inertia subgroup.

Gamma is realized as a concrete permutation group on a reference domain (the
root index set); profinite Galois groups are replaced by the finite quotient
through which they act.  Derived index sets (inertia orbits, weight labels)
reuse the same group elements with their own action tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import UnknownIndex, ValidationError

Perm = tuple  # permutation of range(n), as a tuple of images

GROUP_CAP = 1296


def compose(a: Perm, b: Perm) -> Perm:
    """a after b."""
    return tuple(a[b[i]] for i in range(len(a)))


def identity(n: int) -> Perm:
    return tuple(range(n))


def closure(n, generators):
    gens = [tuple(g) for g in generators]
    elems = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                c = compose(g, e)
                if c not in elems:
                    if len(elems) >= GROUP_CAP:
                        raise ValidationError("group-too-large", "more than %d elements" % GROUP_CAP)
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    return elems


class GaloisFrame:
    """A finite acting Galois quotient: group, inertia subgroup, Frobenius lift.

    ``d`` maps each element to its residue-Frobenius power in Z/f_total;
    inertia is exactly the kernel of d.
    """

    def __init__(self, domain_size, generators, inertia_generators, frobenius=None):
        self.domain_size = domain_size
        gens = [tuple(g) for g in generators]
        for g in gens:
            if sorted(g) != list(range(domain_size)):
                raise ValidationError("not-a-permutation", repr(g))
        self.elements = frozenset(closure(domain_size, gens))
        igens = [tuple(g) for g in inertia_generators]
        for g in igens:
            if g not in self.elements:
                raise ValidationError("inertia-not-in-group", repr(g))
        self.inertia = frozenset(closure(domain_size, igens))
        # normality of inertia
        for g in gens:
            ginv = self._inverse(g)
            for h in self.inertia:
                if compose(compose(g, h), ginv) not in self.inertia:
                    raise ValidationError("inertia-not-normal")
        self.frobenius = tuple(frobenius) if frobenius is not None else identity(domain_size)
        if self.frobenius not in self.elements:
            raise ValidationError("frobenius-not-in-group")
        self.f_total = len(self.elements) // len(self.inertia)
        self.d = self._frobenius_degrees()

    @staticmethod
    def _inverse(g):
        inv = [0] * len(g)
        for i, gi in enumerate(g):
            inv[gi] = i
        return tuple(inv)

    def _frobenius_degrees(self):
        cosets = {}
        current = set(self.inertia)
        power = 0
        frob = self.frobenius
        n = self.domain_size
        rep = identity(n)
        while True:
            for e in current:
                cosets[e] = power
            power += 1
            if power == self.f_total:
                break
            rep = compose(frob, rep)
            current = {compose(rep, h) for h in self.inertia}
            if any(e in cosets for e in current):
                raise ValidationError(
                    "frobenius-not-generating", "Frobenius cosets repeat before covering the group"
                )
        if len(cosets) != len(self.elements):
            raise ValidationError(
                "frobenius-not-generating", "group/inertia is not generated by the Frobenius image"
            )
        return cosets

    def subfield_degree(self, stabilizer_elements):
        """Degree over the base of the fixed field of a stabilizer subgroup."""
        g = self.f_total
        for e in stabilizer_elements:
            g = gcd(g, self.d[e])
        return g


ASYMMETRIC = "asymmetric"
SYM_UNRAM = "symmetric_unramified"
SYM_RAM = "symmetric_ramified"


@dataclass(frozen=True)
class OrbitClass:
    kind: str
    e: int
    f: int
    e_pm: int
    f_pm: int

    @property
    def rel_degree(self):
        """[k_i : k_{+-i}]: 1 for ramified, 2 for unramified symmetric."""
        return self.f // self.f_pm


class SigmaSet:
    """A finite index set with a GaloisFrame action and a commuting negation."""

    def __init__(self, frame, indices, action, negation):
        """action: dict element -> dict index -> index; negation: dict index -> index."""
        self.frame = frame
        self.indices = tuple(indices)
        self.action = action
        self.negation = dict(negation)
        iset = set(self.indices)
        for i in self.indices:
            if self.negation[self.negation[i]] != i:
                raise ValidationError("negation-not-involutive", repr(i))
        for e in frame.elements:
            amap = action[e]
            if set(amap[i] for i in self.indices) != iset:
                raise ValidationError("action-not-bijective")
            for i in self.indices:
                if amap[self.negation[i]] != self.negation[amap[i]]:
                    raise ValidationError("negation-not-equivariant", repr(i))

    @classmethod
    def on_domain(cls, frame, negation):
        """The defining action of the frame on its own reference domain."""
        idx = range(frame.domain_size)
        action = {e: {i: e[i] for i in idx} for e in frame.elements}
        return cls(frame, idx, action, negation)

    def act(self, element, i):
        return self.action[element][i]

    def neg(self, i):
        return self.negation[i]

    # -- orbits ------------------------------------------------------------

    def _orbit(self, elements, i):
        if i not in self.negation:
            raise UnknownIndex(repr(i))
        seen = {i}
        frontier = [i]
        while frontier:
            nxt = []
            for j in frontier:
                for e in elements:
                    jj = self.action[e][j]
                    if jj not in seen:
                        seen.add(jj)
                        nxt.append(jj)
            frontier = nxt
        return seen

    def gamma_orbit(self, i):
        return self._orbit(self.frame.elements, i)

    def inertia_orbit(self, i):
        return self._orbit(self.frame.inertia, i)

    def sigma_orbit(self, i):
        o = self.gamma_orbit(i)
        return o | {self.negation[j] for j in o}

    def stabilizer(self, i):
        return [e for e in self.frame.elements if self.action[e][i] == i]

    def pair_stabilizer(self, i):
        pair = {i, self.negation[i]}
        return [e for e in self.frame.elements if self.action[e][i] in pair]

    def classify(self, i) -> OrbitClass:
        gorb = self.gamma_orbit(i)
        iorb = self.inertia_orbit(i)
        neg = self.negation[i]
        if neg not in gorb:
            kind = ASYMMETRIC
        elif neg in iorb:
            kind = SYM_RAM
        else:
            kind = SYM_UNRAM
        e = len(iorb)
        f = self.frame.subfield_degree(self.stabilizer(i))
        pair_orbit_i = {frozenset({j, self.negation[j]}) for j in iorb}
        e_pm = len(pair_orbit_i)
        f_pm = self.frame.subfield_degree(self.pair_stabilizer(i))
        return OrbitClass(kind, e, f, e_pm, f_pm)

    def orbits(self, under="gamma"):
        """Partition into orbits; each orbit is listed with its least index first."""
        if under == "gamma":
            orbit = self.gamma_orbit
        elif under == "sigma":
            orbit = self.sigma_orbit
        elif under == "inertia":
            orbit = self.inertia_orbit
        else:
            raise ValueError("under must be gamma, sigma or inertia")
        seen = set()
        parts = []
        for i in self.indices:
            if i in seen:
                continue
            o = orbit(i)
            seen |= o
            parts.append(sorted(o, key=self._sort_key))
        return parts

    @staticmethod
    def _sort_key(i):
        # natural order for ints, member-sorted order for frozenset labels,
        # repr otherwise; index sets are homogeneous so keys stay comparable
        if isinstance(i, int):
            return (0, i)
        if isinstance(i, frozenset):
            return (2, tuple(sorted(SigmaSet._sort_key(j) for j in i)))
        return (1, repr(i))

    def orbit_reps(self, under="gamma"):
        return [part[0] for part in self.orbits(under)]

    def quotient_by_inertia(self):
        """The induced SigmaSet on inertia orbits (labels are frozensets)."""
        parts = self.orbits("inertia")
        labels = [frozenset(p) for p in parts]
        by_index = {}
        for lab in labels:
            for i in lab:
                by_index[i] = lab
        action = {
            e: {lab: by_index[self.action[e][next(iter(lab))]] for lab in labels}
            for e in self.frame.elements
        }
        negation = {lab: by_index[self.negation[next(iter(lab))]] for lab in labels}
        return SigmaSet(self.frame, labels, action, negation), by_index
