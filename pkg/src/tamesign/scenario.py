"""The twisted-Levi datum: roots with a Sigma-action, restriction to central
weights, lengths, jump torsors, depth, toral-invariant signs and leading
a-data residues, with validation of every structural hypothesis the sign
formulas rely on.

Building-theoretic input is abstracted to offset data: for each root orbit a
rational t_alpha with ord_x(alpha) = t_alpha + (1/e_alpha) Z, plus the depth r.
"""

from __future__ import annotations

import functools
import json
from fractions import Fraction
from math import gcd, lcm

from . import fields
from .errors import ParseError, UnknownRoot, ValidationError
from .sigma import ASYMMETRIC, SYM_RAM, SYM_UNRAM, GaloisFrame, SigmaSet


def _parse_fraction(s):
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError("bad rational %r" % s) from exc
    raise ParseError("rational expected, got %r" % (s,))


def _mat_vec(A, v):
    return tuple(sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A)))


def _mat_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)) for i in range(n)
    )


def _mat_inv_fraction(A):
    n = len(A)
    m = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def _transpose(A):
    return tuple(tuple(A[i][j] for i in range(len(A))) for j in range(len(A[0])))


class Scenario:
    """Validated twisted-Levi datum.  Immutable after construction."""

    def __init__(self, doc):
        self.doc = doc
        self.name = doc.get("name", "<anonymous>")
        self._build(doc)

    # -- construction -------------------------------------------------------

    def _build(self, doc):
        try:
            self.p = int(doc["p"])
            self.m = int(doc.get("base_degree", 1))
            roots = [tuple(int(c) for c in v) for v in doc["roots"]]
            levi = [int(i) for i in doc.get("levi", [])]
            ggens = [tuple(int(i) for i in g) for g in doc.get("gamma_generators", [])]
            igens = [tuple(int(i) for i in g) for g in doc.get("inertia_generators", [])]
            frob_idx = doc.get("frobenius")
            restriction = {int(k): str(v) for k, v in doc["restriction"].items()}
            components = [str(c) for c in doc["components"]]
            lengths = [int(v) for v in doc["lengths"]]
            self.r = _parse_fraction(doc["depth_r"])
            offsets_doc = {int(k): _parse_fraction(v) for k, v in doc["offsets"].items()}
            toral_doc = {int(k): int(v) for k, v in doc.get("toral_invariants", {}).items()}
            ares_doc = dict(doc.get("a_residues", {}))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("malformed scenario document: %s" % exc) from exc

        self.k = fields.GF(self.p, self.m)
        self.roots = tuple(roots)
        self.nroots = len(roots)
        dim = len(roots[0]) if roots else 0
        if any(len(v) != dim for v in roots):
            raise ParseError("root vectors of unequal dimension")
        self.dim = dim

        vec_index = {}
        for i, v in enumerate(self.roots):
            if v in vec_index:
                raise ValidationError("roots-distinct", "duplicate root %r" % (v,))
            if all(c == 0 for c in v):
                raise ValidationError("roots-nonzero")
            vec_index[v] = i
        neg = {}
        for i, v in enumerate(self.roots):
            nv = tuple(-c for c in v)
            if nv not in vec_index:
                raise ValidationError("roots-negation-closed", "missing -%r" % (v,))
            neg[i] = vec_index[nv]
        self.neg = neg

        self._check_full_lattice()

        frob_perm = None if frob_idx is None else ggens[int(frob_idx)]
        self.frame = GaloisFrame(self.nroots, ggens, igens, frob_perm)
        self.sigma = SigmaSet.on_domain(self.frame, neg)
        self._generator_matrices(ggens)

        self.levi = frozenset(levi)
        for e in self.frame.elements:
            if {e[i] for i in self.levi} != self.levi:
                raise ValidationError("gamma-preserves-levi")
        if any(neg[i] not in self.levi for i in self.levi):
            raise ValidationError("levi-negation-closed")
        self.gm = tuple(sorted(set(range(self.nroots)) - self.levi))
        if not self.gm:
            raise ValidationError("gm-nonempty", "no roots outside the Levi subset")

        if set(restriction) != set(self.gm):
            raise ValidationError("restriction-domain", "labels required exactly on non-Levi roots")
        self.restriction = restriction
        self._build_weight_sigma()

        if len(components) != self.nroots or len(lengths) != self.nroots:
            raise ParseError("components/lengths must list every root")
        self.component = dict(enumerate(components))
        self.length = dict(enumerate(lengths))
        self._check_lengths()

        self._classify_all()
        self._check_tame()
        self._check_ord(offsets_doc)
        self._check_toral(toral_doc)

        degs = [self.f_root[i] for i in range(self.nroots)]
        self.N = lcm(*degs) if degs else 1
        self.kbar = fields.GF(self.p, self.m * self.N)
        self._check_residues(ares_doc)

    def _check_full_lattice(self):
        # G adjoint: the roots must generate the full integer lattice.
        import itertools

        d = self.dim
        vecs = self.roots
        g = 0
        for comb in itertools.combinations(range(len(vecs)), d):
            mat = [vecs[i] for i in comb]
            g = gcd(g, abs(_int_det(mat)))
            if g == 1:
                return
        raise ValidationError("adjoint-full-lattice", "root lattice is not the full lattice")

    def _generator_matrices(self, ggens):
        # every generator permutation must come from an integral lattice map
        import itertools

        d = self.dim
        base = None
        for comb in itertools.combinations(range(self.nroots), d):
            mat = _transpose([self.roots[i] for i in comb])
            if _int_det(_transpose(mat)) != 0:
                base = comb
                break
        if base is None:
            raise ValidationError("roots-span", "roots do not span the ambient space")
        M = tuple(tuple(Fraction(self.roots[i][r]) for i in base) for r in range(d))
        Minv = _mat_inv_fraction(M)
        self.gen_matrices = {}
        for g in ggens:
            Mg = tuple(tuple(Fraction(self.roots[g[i]][r]) for i in base) for r in range(d))
            A = _mat_mul(Mg, Minv)
            if any(x.denominator != 1 for row in A for x in row):
                raise ValidationError("gamma-linear", "generator is not an integral lattice map")
            A = tuple(tuple(int(x) for x in row) for row in A)
            for j in range(self.nroots):
                if _mat_vec(A, self.roots[j]) != self.roots[g[j]]:
                    raise ValidationError(
                        "gamma-linear", "permutation disagrees with its linear extension"
                    )
            self.gen_matrices[g] = A

    def _build_weight_sigma(self):
        labels = sorted(set(self.restriction.values()))
        fibers = {lab: [i for i in self.gm if self.restriction[i] == lab] for lab in labels}
        self.fibers = fibers
        action = {}
        for e in self.frame.elements:
            amap = {}
            for lab, fib in fibers.items():
                images = {self.restriction[e[i]] for i in fib}
                if len(images) != 1:
                    raise ValidationError(
                        "restriction-sigma-equivariant",
                        "group element splits the fiber %r" % lab,
                    )
                amap[lab] = images.pop()
            action[e] = amap
        negation = {}
        for lab, fib in fibers.items():
            images = {self.restriction[self.neg[i]] for i in fib}
            if len(images) != 1:
                raise ValidationError("restriction-respects-negation", repr(lab))
            negation[lab] = images.pop()
        for lab in labels:
            if negation[lab] == lab:
                raise ValidationError(
                    "weights-nonzero", "a fiber maps to its own negative: %r" % lab
                )
        self.weight_sigma = SigmaSet(self.frame, labels, action, negation)
        self.weights = tuple(labels)

    def _check_lengths(self):
        for i in range(self.nroots):
            if self.length[i] not in (1, 2, 3):
                raise ValidationError("length-values", "length must be 1, 2 or 3")
            if self.length[self.neg[i]] != self.length[i]:
                raise ValidationError("length-negation-invariant")
            if self.component[self.neg[i]] != self.component[i]:
                raise ValidationError("component-negation-invariant")
        for g in self.frame.elements:
            for i in range(self.nroots):
                if self.length[g[i]] != self.length[i]:
                    raise ValidationError("length-gamma-invariant")
        comp_lengths = {}
        for i in range(self.nroots):
            comp_lengths.setdefault(self.component[i], set()).add(self.length[i])
        self.ell_c = {}
        for comp, ls in comp_lengths.items():
            top = max(ls)
            if ls not in ({1}, {1, top}):
                raise ValidationError(
                    "length-two-values", "component %r has lengths %r" % (comp, sorted(ls))
                )
            self.ell_c[comp] = top
        for i in self.gm:
            fib = self.fibers[self.restriction[i]]
            if len({self.component[j] for j in fib}) != 1:
                raise ValidationError("fiber-single-component", self.restriction[i])

    def _classify_all(self):
        self.cls_root = {i: self.sigma.classify(i) for i in range(self.nroots)}
        self.e_root = {i: c.e for i, c in self.cls_root.items()}
        self.f_root = {i: c.f for i, c in self.cls_root.items()}
        self.cls_weight = {w: self.weight_sigma.classify(w) for w in self.weights}
        self.e_weight = {w: c.e for w, c in self.cls_weight.items()}
        self.f_weight = {w: c.f for w, c in self.cls_weight.items()}

    def _check_tame(self):
        for i in self.gm:
            if self.e_root[i] % self.p == 0:
                raise ValidationError(
                    "tame-ramification", "p divides the ramification degree of a root"
                )
        for w in self.weights:
            if self.e_weight[w] % self.p == 0:
                raise ValidationError(
                    "tame-ramification", "p divides the ramification degree of a weight"
                )

    def _check_ord(self, offsets_doc):
        reps = [o[0] for o in self._gm_gamma_orbits()]
        if set(offsets_doc) != set(reps):
            raise ValidationError(
                "offsets-per-orbit",
                "offset keys must be the least index of each Galois orbit outside the Levi; expected %r"
                % (sorted(reps),),
            )
        self.offsets = {}
        for rep in reps:
            for i in self._gamma_orbit_of(rep):
                self.offsets[i] = offsets_doc[rep]
        for i in self.gm:
            e = self.e_root[i]
            if (self.r * e).denominator != 1:
                raise ValidationError(
                    "depth-in-ord-lattice", "r is not in (1/e_alpha)Z for some root"
                )
            tneg = self.offsets[self.neg[i]]
            if ((tneg + self.offsets[i]) * e).denominator != 1:
                raise ValidationError(
                    "ord-negation-antisymmetric",
                    "offsets of a root and its negative do not sum to the jump lattice",
                )
        for i in self.gm:
            kind = self.cls_root[i].kind
            if kind == SYM_RAM:
                if not self.ord_contains(i, Fraction(0)):
                    raise ValidationError(
                        "ramified-jump-at-zero",
                        "0 must lie in ord_x(alpha) for ramified symmetric alpha",
                    )
                er = self.r * self.e_root[i]
                if er.denominator != 1 or er.numerator % 2 == 0:
                    raise ValidationError(
                        "ramified-depth-parity",
                        "e_alpha * r must be an odd integer for ramified symmetric alpha",
                    )
            w = self.restriction[i]
            if self.cls_weight[w].kind == SYM_RAM:
                er0 = self.r * self.e_weight[w]
                if er0.denominator != 1 or er0.numerator % 2 == 0:
                    raise ValidationError(
                        "ramified-depth-parity",
                        "e_{alpha_0} * r must be an odd integer when the restricted weight "
                        "is ramified symmetric",
                    )
                if kind == SYM_RAM:
                    assert self.rel_ramification(i) % 2 == 1

    def _check_toral(self, toral_doc):
        ram_reps = [
            o[0] for o in self._gm_gamma_orbits() if self.cls_root[o[0]].kind == SYM_RAM
        ]
        if set(toral_doc) != set(ram_reps):
            raise ValidationError(
                "toral-invariant-keys",
                "toral invariants must be keyed by the ramified symmetric orbit representatives %r"
                % (sorted(ram_reps),),
            )
        if any(v not in (1, -1) for v in toral_doc.values()):
            raise ValidationError("toral-invariant-values", "values must be +-1")
        self._toral = {}
        for rep in ram_reps:
            for i in self._gamma_orbit_of(rep):
                self._toral[i] = toral_doc[rep]

    def _check_residues(self, ares_doc):
        reps = [o[0] for o in self._gm_gamma_orbits()]
        try:
            parsed = {int(kk): vv for kk, vv in ares_doc.items()}
        except (TypeError, ValueError) as exc:
            raise ParseError("a_residues keys must be root indices") from exc
        if set(parsed) != set(reps):
            raise ValidationError(
                "residues-per-orbit",
                "a-data residues must be keyed by orbit representatives %r" % (sorted(reps),),
            )
        self.a_res = {}
        for rep, raw in parsed.items():
            small = fields.GF(self.p, self.m * self.f_root[rep])
            c = fields.embed(small.elem(raw), self.kbar)
            if not c:
                raise ValidationError("residue-nonzero")
            # extend along the orbit by the Frobenius power of the moving element
            for e in self.frame.elements:
                i = e[rep]
                val = fields.frobenius(c, self.k, self.frame.d[e])
                if i in self.a_res and self.a_res[i] != val:
                    raise ValidationError(
                        "residue-in-kalpha",
                        "residue at root %d is not fixed by its stabilizer" % rep,
                    )
                self.a_res[i] = val
        for w, fib in self.fibers.items():
            vals = {
                i: self.a_res[i] * self.kbar.elem(self.ell_p(i)) for i in fib
            }
            if len(set(vals.values())) != 1:
                raise ValidationError(
                    "residue-fiber-consistent",
                    "l_{p'}(alpha) * c_alpha must be constant on the fiber over %r" % w,
                )

    # -- derived accessors ---------------------------------------------------

    def _gamma_orbit_of(self, i):
        return self.sigma.gamma_orbit(i)

    def _gm_gamma_orbits(self):
        return [o for o in self.sigma.orbits("gamma") if o[0] in set(self.gm)]

    def gm_gamma_reps(self):
        return [o[0] for o in self._gm_gamma_orbits()]

    def gm_sigma_reps(self):
        return [o[0] for o in self.sigma.orbits("sigma") if o[0] in set(self.gm)]

    def toral_invariant(self, i):
        return self._toral[i]

    def ell(self, i):
        return self.length[i]

    def ell_covee(self, i):
        """Square length of the coroot: top bond over ell(alpha)."""
        return self.ell_c[self.component[i]] // self.length[i]

    def ell_p(self, i):
        l = self.length[i]
        return l // gcd(l, self.p)

    def ell_covee_p(self, i):
        l = self.ell_covee(i)
        return l // gcd(l, self.p)

    @property
    def s(self):
        return self.r / 2

    def ord_contains(self, i, t) -> bool:
        if i not in self.offsets:
            raise UnknownRoot("root %r carries no jump data" % (i,))
        return ((Fraction(t) - self.offsets[i]) * self.e_root[i]).denominator == 1

    def rel_ramification(self, i) -> int:
        if i not in set(self.gm):
            raise UnknownRoot("root %r is not outside the Levi" % (i,))
        e0 = self.e_weight[self.restriction[i]]
        e = self.e_root[i]
        assert e % e0 == 0
        return e // e0

    def rel_residue_degree(self, i) -> int:
        f0 = self.f_weight[self.restriction[i]]
        f = self.f_root[i]
        assert f % f0 == 0
        return f // f0

    def field_of_root(self, i):
        return fields.GF(self.p, self.m * self.f_root[i])

    def gm_sigma_set(self):
        """The Sigma-set structure restricted to the non-Levi roots."""
        idx = self.gm
        action = {e: {i: e[i] for i in idx} for e in self.frame.elements}
        negation = {i: self.neg[i] for i in idx}
        return SigmaSet(self.frame, idx, action, negation)

    @functools.lru_cache(maxsize=None)
    def root_inertia_quotient(self):
        """SigmaSet of inertia orbits of non-Levi roots, plus index -> orbit map."""
        return self.gm_sigma_set().quotient_by_inertia()

    # -- frobenius on the ambient residue field -------------------------------

    def frob(self, a, power=1):
        return fields.frobenius(a, self.k, power)

    # -- modified copies -------------------------------------------------------

    def invariant_coweights(self):
        """Integer basis of the Galois-fixed coweight vectors."""
        d = self.dim
        rows = []
        for A in self.gen_matrices.values():
            At = _transpose(A)
            for r in range(d):
                rows.append([Fraction(At[r][c] - (1 if r == c else 0)) for c in range(d)])
        basis = _rational_kernel(rows, d)
        out = []
        for vec in basis:
            den = 1
            for x in vec:
                den = den * x.denominator // gcd(den, x.denominator)
            out.append(tuple(int(x * den) for x in vec))
        return out

    def pairing(self, i, lam):
        return sum(c * l for c, l in zip(self.roots[i], lam))

    def shifted(self, lam):
        """The scenario at the translated point: offsets move by <alpha, lam>."""
        doc = json.loads(json.dumps(self.doc))
        new_offsets = {}
        for rep_str, val in doc["offsets"].items():
            rep = int(rep_str)
            t = _parse_fraction(val) + self.pairing(rep, lam)
            new_offsets[rep_str] = str(t)
        doc["offsets"] = new_offsets
        doc["name"] = self.name + "+shift"
        return Scenario(doc)

    def relabeled(self, perm):
        """Transport every datum along a permutation of the root indices.

        perm[i] is the new index of old root i.  Used to exercise relabeling
        invariance of the characters.
        """
        inv = [0] * self.nroots
        for i, t in enumerate(perm):
            inv[t] = i
        doc = json.loads(json.dumps(self.doc))
        doc["roots"] = [list(self.roots[inv[t]]) for t in range(self.nroots)]
        doc["levi"] = sorted(perm[i] for i in self.levi)
        doc["gamma_generators"] = [
            [perm[g[inv[t]]] for t in range(self.nroots)] for g in self.doc.get("gamma_generators", [])
        ]
        doc["inertia_generators"] = [
            [perm[g[inv[t]]] for t in range(self.nroots)] for g in self.doc.get("inertia_generators", [])
        ]
        doc["restriction"] = {str(perm[i]): lab for i, lab in self.restriction.items()}
        doc["components"] = [self.component[inv[t]] for t in range(self.nroots)]
        doc["lengths"] = [self.length[inv[t]] for t in range(self.nroots)]

        # per-orbit data keys move to the least new index of each orbit, and the
        # stored value is re-expressed at that representative
        new_offsets = {}
        new_toral = {}
        new_ares = {}
        for o in self._gm_gamma_orbits():
            new_rep = min(perm[j] for j in o)
            old_at_rep = inv[new_rep]
            new_offsets[str(new_rep)] = str(self.offsets[old_at_rep])
            if self.cls_root[old_at_rep].kind == SYM_RAM:
                new_toral[str(new_rep)] = self._toral[old_at_rep]
            cres = fields.project(
                self.a_res[old_at_rep], fields.GF(self.p, self.m * self.f_root[old_at_rep])
            )
            new_ares[str(new_rep)] = list(cres.coeffs)
        doc["offsets"] = new_offsets
        doc["toral_invariants"] = new_toral
        doc["a_residues"] = new_ares
        doc["name"] = self.name + "+relabel"
        return Scenario(doc)


def _int_det(mat):
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    assert det.denominator == 1
    return int(det)


def _rational_kernel(rows, d):
    """Basis of the kernel of the stacked row constraints (dimension d)."""
    m = [list(r) for r in rows if any(r)]
    pivots = []
    for col in range(d):
        piv = next((r for r in range(len(pivots), len(m)) if m[r][col]), None)
        if piv is None:
            continue
        r0 = len(pivots)
        m[r0], m[piv] = m[piv], m[r0]
        pv = m[r0][col]
        m[r0] = [x / pv for x in m[r0]]
        for r in range(len(m)):
            if r != r0 and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[r0])]
        pivots.append(col)
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * d
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(vec)
    return basis


def load(source) -> Scenario:
    """Build a Scenario from a dict, a JSON string, or a file path."""
    if isinstance(source, Scenario):
        return source
    if isinstance(source, dict):
        return Scenario(source)
    if isinstance(source, str):
        text = source
        if not source.lstrip().startswith("{"):
            try:
                with open(source) as fh:
                    text = fh.read()
            except OSError as exc:
                raise ParseError("cannot read %r: %s" % (source, exc)) from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError("invalid JSON: %s" % exc) from exc
        return Scenario(doc)
    raise ParseError("unsupported scenario source %r" % type(source))
