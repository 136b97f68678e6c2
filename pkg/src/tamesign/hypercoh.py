"""Sign characters from hypercocycles of the doubling complex of a character
lattice.

A degree-1 hypercocycle is a pair (rho, delta) with rho a 1-cocycle valued in
the lattice and (1 - sigma) delta = 2 rho_sigma.  Evaluating at a rational
point g and the Frobenius generator yields a sign; under the identification of
degree-1 classes with square classes of the base field this sign is trivial
exactly for the trivial class.  The identification is valid because every
acting group here factors through the procyclic residue quotient, so inertia
must act trivially on the data (checked).

Two evaluation paths are provided: the defining one through rho and a square
root of delta(g), and the closed orbit-product formula through norms and the
Lang map.  Their agreement is one of the package's central test surfaces.
"""

from __future__ import annotations

from . import fields
from .errors import (
    BadPartition,
    ContextMissing,
    FixedPointUnderNegation,
    InvariantViolation,
    NotNormOne,
)
from .fields import SquareClass
from .sigma import compose


class CharLattice:
    """Free abelian group of finite rank with an action of a GaloisFrame."""

    def __init__(self, frame, rank, action):
        """action: dict group element -> (rank x rank) integer matrix tuple."""
        self.frame = frame
        self.rank = rank
        self.action = action
        ident = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
        for a, b in ((x, y) for x in frame.elements for y in frame.elements):
            if _mat_mul(action[a], action[b]) != action[compose(a, b)]:
                raise InvariantViolation("lattice action is not a group action")
        if action[_identity_of(frame)] != ident:
            raise InvariantViolation("identity must act trivially")

    def __eq__(self, other):
        return (
            isinstance(other, CharLattice)
            and other.frame is self.frame
            and other.rank == self.rank
            and other.action == self.action
        )

    def __hash__(self):
        return hash((id(self.frame), self.rank))

    def act(self, element, vec):
        return _mat_vec(self.action[element], vec)

    def zero(self):
        return (0,) * self.rank

    def inertia_acts_trivially(self):
        ident = tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))
        return all(self.action[e] == ident for e in self.frame.inertia)


def _identity_of(frame):
    return tuple(range(frame.domain_size))


def _mat_vec(A, v):
    return tuple(sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A)))


def _mat_mul(A, B):
    n = len(A)
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(n)) for j in range(n)) for i in range(n)
    )


def _vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _vec_scale(c, v):
    return tuple(c * a for a in v)


class HyperCocycle:
    def __init__(self, lattice, rho, delta, check=True):
        self.lattice = lattice
        self.rho = dict(rho)
        self.delta = tuple(delta)
        if check:
            self.validate()

    def validate(self):
        lat = self.lattice
        frame = lat.frame
        if set(self.rho) != set(frame.elements):
            raise InvariantViolation("rho must be defined on every group element")
        for a in frame.elements:
            for b in frame.elements:
                lhs = self.rho[compose(a, b)]
                rhs = _vec_add(self.rho[a], lat.act(a, self.rho[b]))
                if lhs != rhs:
                    raise InvariantViolation("rho is not a 1-cocycle")
            if _vec_sub(self.delta, lat.act(a, self.delta)) != _vec_scale(2, self.rho[a]):
                raise InvariantViolation("(1 - sigma) delta = 2 rho_sigma fails")

    def __add__(self, other):
        if other.lattice != self.lattice:
            raise InvariantViolation("cocycles on different lattices")
        rho = {e: _vec_add(self.rho[e], other.rho[e]) for e in self.rho}
        return HyperCocycle(self.lattice, rho, _vec_add(self.delta, other.delta), check=False)


def coboundary(lattice, chi) -> HyperCocycle:
    """The hypercoboundary ((1 - sigma) chi, 2 chi)."""
    rho = {e: _vec_sub(chi, lattice.act(e, chi)) for e in lattice.frame.elements}
    return HyperCocycle(lattice, rho, _vec_scale(2, chi))


def map_cocycle(hc, matrix, target) -> HyperCocycle:
    """Push a cocycle forward along an equivariant lattice map (functoriality)."""
    rho = {e: _mat_vec_rect(matrix, v) for e, v in hc.rho.items()}
    return HyperCocycle(target, rho, _mat_vec_rect(matrix, hc.delta))


def _mat_vec_rect(A, v):
    return tuple(sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A)))


# -- the concrete family from a Sigma-set -------------------------------------


def canonical_positive(sig):
    """Deterministic positive system: scan indices, keep i unless -i is kept."""
    pos, taken = [], set()
    for i in sig.indices:
        if sig.neg(i) == i:
            raise FixedPointUnderNegation(repr(i))
        if i in taken or sig.neg(i) in taken:
            continue
        pos.append(i)
        taken.add(i)
    return pos


def sigma_lattice(sig):
    """Free lattice on the canonical positive system, with e_{-i} = -e_i.

    Returns (lattice, chi) where chi maps each index to its vector.
    """
    pos = canonical_positive(sig)
    pos_index = {i: j for j, i in enumerate(pos)}
    rank = len(pos)

    def vec_of(i):
        if i in pos_index:
            v = [0] * rank
            v[pos_index[i]] = 1
            return tuple(v)
        j = sig.neg(i)
        v = [0] * rank
        v[pos_index[j]] = -1
        return tuple(v)

    chi = {i: vec_of(i) for i in sig.indices}
    action = {}
    for e in sig.frame.elements:
        cols = [chi[sig.act(e, b)] for b in pos]
        action[e] = tuple(tuple(cols[j][r] for j in range(rank)) for r in range(rank))
    return CharLattice(sig.frame, rank, action), chi


def check_partition(sig, positive):
    pos = list(positive)
    seen = set(pos)
    if len(seen) != len(pos):
        raise BadPartition("repeated index in the positive system")
    negs = {sig.neg(i) for i in pos}
    if seen & negs or seen | negs != set(sig.indices):
        raise BadPartition("positive system does not split the set with its negative")
    return pos


def from_sigma_set(sig, positive=None, chi=None, lattice=None) -> HyperCocycle:
    """delta = sum of chi over the positive system; rho_sigma collects the
    positive indices thrown to the negative side by sigma."""
    if (chi is None) != (lattice is None):
        raise ContextMissing("chi and lattice must be supplied together")
    if chi is None:
        lattice, chi = sigma_lattice(sig)
    for i in sig.indices:
        if sig.neg(i) == i:
            raise FixedPointUnderNegation(repr(i))
    pos = check_partition(sig, positive if positive is not None else canonical_positive(sig))
    delta = lattice.zero()
    for i in pos:
        delta = _vec_add(delta, chi[i])
    pos_set = set(pos)
    rho = {}
    for e in sig.frame.elements:
        acc = lattice.zero()
        for i in pos_set:
            # i in sigma(S^-) iff sigma^{-1}(i) is negative
            pre = next(j for j in sig.indices if sig.act(e, j) == i)
            if pre not in pos_set:
                acc = _vec_add(acc, chi[i])
        rho[e] = acc
    return HyperCocycle(lattice, rho, delta)


# -- evaluation ----------------------------------------------------------------


class EvalContext:
    """Multiplicative evaluation of lattice vectors at one rational point.

    basis_values[j] is the value of the j-th basis vector, living in the
    ambient field `kbar`; `k` is the base field whose square classes are the
    output.  Values must intertwine the lattice action with the Frobenius.
    """

    def __init__(self, lattice, kbar, k, basis_values, check=True):
        self.lattice = lattice
        self.kbar = kbar
        self.k = k
        self.basis_values = tuple(basis_values)
        if len(self.basis_values) != lattice.rank:
            raise ContextMissing("one value per basis vector required")
        if any(not v or v.field != kbar for v in self.basis_values):
            raise ContextMissing("values must be nonzero elements of the ambient field")
        if check:
            self.validate()

    def validate(self):
        frame = self.lattice.frame
        for e in frame.elements:
            d = frame.d[e]
            A = self.lattice.action[e]
            for j in range(self.lattice.rank):
                col = tuple(A[r][j] for r in range(self.lattice.rank))
                if self.value(col) != fields.frobenius(self.basis_values[j], self.k, d):
                    raise ContextMissing("context values are not Galois-equivariant")

    def value(self, vec):
        acc = self.kbar.one()
        for c, v in zip(vec, self.basis_values):
            if c:
                acc = acc * v**c
        return acc

    def pullback(self, matrix, source_lattice):
        """Context on the source of an equivariant lattice map into this one."""
        cols = []
        for j in range(source_lattice.rank):
            col = tuple(matrix[r][j] for r in range(len(matrix)))
            cols.append(self.value(col))
        return EvalContext(source_lattice, self.kbar, self.k, cols)


def context_from_index_values(sig, lattice, chi, kbar, k, index_values) -> EvalContext:
    """Build a context from a value per Sigma-set index.

    Requires value(-i) inverse to value(i) and Galois equivariance; both are
    re-checked through the lattice validation.
    """
    pos = canonical_positive(sig)
    vals = []
    for b in pos:
        v = index_values[b]
        if chi[b] != tuple(int(x == len(vals)) for x in range(lattice.rank)):
            raise ContextMissing("chi is not the canonical embedding")
        vals.append(v)
    return EvalContext(lattice, kbar, k, vals)


def eval_direct(hc: HyperCocycle, ctx: EvalContext) -> SquareClass:
    """rho_Frob(g) times the Frobenius twist of a square root of delta(g).

    The twist sigma(sqrt)/sqrt equals delta(g)^((q-1)/2) for either root,
    whether or not the root lies in the ambient field, so no quadratic ascent
    is performed.
    """
    if not hc.lattice.inertia_acts_trivially():
        raise InvariantViolation(
            "inertia must act trivially for the Frobenius-value identification"
        )
    frame = hc.lattice.frame
    rho_f = ctx.value(hc.rho[frame.frobenius])
    delta_g = ctx.value(hc.delta)
    q = ctx.k.order
    eps = rho_f * delta_g ** ((q - 1) // 2)
    one = ctx.kbar.one()
    if eps == one:
        return SquareClass(ctx.k, False)
    if eps == -one:
        return SquareClass(ctx.k, True)
    raise InvariantViolation("cocycle value is not a sign; context is inconsistent")


def eval_formula(sig, value_fn, kbar, k) -> SquareClass:
    """Orbit-product formula: norms of values on asymmetric orbits, norms of
    Lang preimages on symmetric ones, as a square class of the base."""
    for e in sig.frame.inertia:
        if any(sig.act(e, i) != i for i in sig.indices):
            raise InvariantViolation(
                "inertia must act trivially for the Frobenius-value identification"
            )
    sign = +1
    base_deg = k.degree
    for orbit in sig.orbits("sigma"):
        i = orbit[0]
        if sig.neg(i) == i:
            raise FixedPointUnderNegation(repr(i))
        v = value_fn(i)
        if not v or v.field != kbar:
            raise ContextMissing("value missing or in the wrong field")
        f_i = sig.frame.subfield_degree(sig.stabilizer(i))
        cls = sig.classify(i)
        if cls.kind == "asymmetric":
            nrm = _norm_tower(v, k, f_i)
            sign *= fields.sgn_in(nrm, base_deg)
        else:
            f_pm = sig.frame.subfield_degree(sig.pair_stabilizer(i))
            q_pm = k.p ** (base_deg * f_pm)
            if v ** (q_pm + 1) != kbar.one():
                raise NotNormOne("symmetric orbit value is not norm-one")
            a = _lang_in(kbar, v, base_deg * f_pm, base_deg * f_i)
            nrm = _norm_tower(a, k, f_i)
            sign *= fields.sgn_in(nrm, base_deg)
    return SquareClass(k, sign < 0)


def _norm_tower(v, k, rel_degree):
    acc = v.field.one()
    t = v
    for _ in range(rel_degree):
        acc = acc * t
        t = fields.frobenius(t, k, 1)
    return acc


def _lang_in(kbar, u, sub_deg_pm, sub_deg_i):
    q_pm = kbar.p**sub_deg_pm
    for a in fields.subfield_units(kbar, sub_deg_i):
        if a * (a**q_pm).inv() == u:
            return a
    raise NotNormOne("no Lang preimage; value is outside the norm-one group")
