"""Shipped scenario presets.

Each preset is a plain document dict that goes through scenario.load, so the
presets exercise the same validation path as user files.  Coverage: split,
unramified and ramified rank-one tori; inertial and full S3 actions on the
rank-two simply laced system; a Siegel-type Levi with mixed root lengths in
one restriction fiber (split and ramified); the doubly laced rank-two mix.
"""

from __future__ import annotations

from .errors import UnknownIndex
from .scenario import Scenario, load

_A1_ROOTS = [[1], [-1]]
_A2_ROOTS = [[1, 0], [0, 1], [1, 1], [-1, 0], [0, -1], [-1, -1]]
_C2_ROOTS = [[1, 0], [0, 1], [1, 1], [2, 1], [-1, 0], [0, -1], [-1, -1], [-2, -1]]
_C2_LENGTHS = [1, 2, 1, 2, 1, 2, 1, 2]
_G2_ROOTS = [
    [1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2],
    [-1, 0], [0, -1], [-1, -1], [-2, -1], [-3, -1], [-3, -2],
]
_G2_LENGTHS = [1, 3, 1, 1, 3, 3] * 2


def _perm_from_matrix(roots, mat):
    """Permutation of root indices induced by an integer matrix."""
    index = {tuple(v): i for i, v in enumerate(roots)}
    out = []
    for v in roots:
        image = tuple(sum(mat[r][c] * v[c] for c in range(len(v))) for r in range(len(v)))
        out.append(index[image])
    return out


def _singleton_restriction(roots, levi):
    return {str(i): "w%d" % i for i in range(len(roots)) if i not in levi}


_A2_ROT = _perm_from_matrix(_A2_ROOTS, [[0, -1], [1, -1]])
_A2_FLIP = _perm_from_matrix(_A2_ROOTS, [[0, -1], [-1, 0]])
_A2_LEVI_INERTIA = _perm_from_matrix(_A2_ROOTS, [[1, -1], [0, -1]])
_A2_MINUS = _perm_from_matrix(_A2_ROOTS, [[-1, 0], [0, -1]])
_C2_SIEGEL_INERTIA = _perm_from_matrix(_C2_ROOTS, [[1, -2], [0, -1]])
_G2_MINUS = _perm_from_matrix(_G2_ROOTS, [[-1, 0], [0, -1]])


def _doc(**kw):
    return kw


_PRESETS = {
    "pgl2-split": _doc(
        p=5, base_degree=1, roots=_A1_ROOTS, levi=[],
        gamma_generators=[], inertia_generators=[], frobenius=None,
        restriction={"0": "w", "1": "-w"}, components=["A1", "A1"], lengths=[1, 1],
        depth_r="2", offsets={"0": "0", "1": "0"},
        toral_invariants={}, a_residues={"0": 2, "1": 3},
    ),
    "pgl2-unramified": _doc(
        p=5, base_degree=1, roots=_A1_ROOTS, levi=[],
        gamma_generators=[[1, 0]], inertia_generators=[], frobenius=0,
        restriction={"0": "w", "1": "-w"}, components=["A1", "A1"], lengths=[1, 1],
        depth_r="2", offsets={"0": "0"},
        toral_invariants={}, a_residues={"0": [1, 1]},
    ),
    "pgl2-ramified": _doc(
        p=7, base_degree=1, roots=_A1_ROOTS, levi=[],
        gamma_generators=[[1, 0]], inertia_generators=[[1, 0]], frobenius=None,
        restriction={"0": "w", "1": "-w"}, components=["A1", "A1"], lengths=[1, 1],
        depth_r="1/2", offsets={"0": "0"},
        toral_invariants={"0": -1}, a_residues={"0": 3},
    ),
    "pgl3-inertial": _doc(
        p=7, base_degree=1, roots=_A2_ROOTS, levi=[],
        gamma_generators=[_A2_ROT], inertia_generators=[_A2_ROT], frobenius=None,
        restriction=_singleton_restriction(_A2_ROOTS, set()),
        components=["A2"] * 6, lengths=[1] * 6,
        depth_r="1/3", offsets={"0": "1/6", "2": "-1/6"},
        toral_invariants={}, a_residues={"0": 3, "2": 5},
    ),
    "pgl3-s3": _doc(
        p=5, base_degree=1, roots=_A2_ROOTS, levi=[],
        gamma_generators=[_A2_ROT, _A2_FLIP], inertia_generators=[_A2_ROT], frobenius=1,
        restriction=_singleton_restriction(_A2_ROOTS, set()),
        components=["A2"] * 6, lengths=[1] * 6,
        depth_r="1/3", offsets={"0": "1/6"},
        toral_invariants={}, a_residues={"0": [2, 1]},
    ),
    "pgl3-levi-mixed": _doc(
        p=3, base_degree=1, roots=_A2_ROOTS, levi=[0, 3],
        gamma_generators=[_A2_LEVI_INERTIA, _A2_MINUS],
        inertia_generators=[_A2_LEVI_INERTIA], frobenius=1,
        restriction={"1": "z", "2": "z", "4": "-z", "5": "-z"},
        components=["A2"] * 6, lengths=[1] * 6,
        depth_r="1/2", offsets={"1": "0"},
        toral_invariants={}, a_residues={"1": 2},
    ),
    "pgsp4-siegel": _doc(
        p=3, base_degree=1, roots=_C2_ROOTS, levi=[0, 4],
        gamma_generators=[], inertia_generators=[], frobenius=None,
        restriction={"1": "z", "2": "z", "3": "z", "5": "-z", "6": "-z", "7": "-z"},
        components=["C2"] * 8, lengths=_C2_LENGTHS,
        depth_r="1", offsets={"1": "1/2", "2": "0", "3": "1/2", "5": "1/2", "6": "0", "7": "1/2"},
        toral_invariants={},
        a_residues={"1": 1, "2": 2, "3": 1, "5": 1, "6": 2, "7": 1},
    ),
    "pgsp4-siegel-ramified": _doc(
        p=3, base_degree=1, roots=_C2_ROOTS, levi=[0, 4],
        gamma_generators=[_C2_SIEGEL_INERTIA], inertia_generators=[_C2_SIEGEL_INERTIA],
        frobenius=None,
        restriction={"1": "z", "2": "z", "3": "z", "5": "-z", "6": "-z", "7": "-z"},
        components=["C2"] * 8, lengths=_C2_LENGTHS,
        depth_r="1/2", offsets={"1": "1/4", "2": "0", "3": "-1/4"},
        toral_invariants={"2": -1}, a_residues={"1": 1, "2": 2, "3": 1},
    ),
    "pgsp4-siegel-offgrid": _doc(
        p=3, base_degree=1, roots=_C2_ROOTS, levi=[0, 4],
        gamma_generators=[_C2_SIEGEL_INERTIA], inertia_generators=[_C2_SIEGEL_INERTIA],
        frobenius=None,
        restriction={"1": "z", "2": "z", "3": "z", "5": "-z", "6": "-z", "7": "-z"},
        components=["C2"] * 8, lengths=_C2_LENGTHS,
        depth_r="1/2", offsets={"1": "1/8", "2": "0", "3": "-1/8"},
        toral_invariants={"2": 1}, a_residues={"1": 2, "2": 1, "3": 2},
    ),
    "g2-unramified": _doc(
        p=5, base_degree=1, roots=_G2_ROOTS, levi=[],
        gamma_generators=[_G2_MINUS], inertia_generators=[], frobenius=0,
        restriction=_singleton_restriction(_G2_ROOTS, set()),
        components=["G2"] * 12, lengths=_G2_LENGTHS,
        depth_r="1",
        offsets={"0": "1/2", "1": "0", "2": "1/2", "3": "0", "4": "1/2", "5": "0"},
        toral_invariants={},
        a_residues={"0": [1, 1], "1": [2, 0], "2": [1, 2], "3": [3, 1], "4": [2, 1], "5": [4, 2]},
    ),
    "g2-ramified": _doc(
        p=5, base_degree=1, roots=_G2_ROOTS, levi=[],
        gamma_generators=[_G2_MINUS], inertia_generators=[_G2_MINUS], frobenius=None,
        restriction=_singleton_restriction(_G2_ROOTS, set()),
        components=["G2"] * 12, lengths=_G2_LENGTHS,
        depth_r="3/2",
        offsets={"0": "0", "1": "0", "2": "0", "3": "0", "4": "0", "5": "0"},
        toral_invariants={"0": 1, "1": -1, "2": -1, "3": 1, "4": 1, "5": -1},
        a_residues={"0": 1, "1": 2, "2": 3, "3": 1, "4": 2, "5": 4},
    ),
    "g2-ramified-p3": _doc(
        p=3, base_degree=1, roots=_G2_ROOTS, levi=[],
        gamma_generators=[_G2_MINUS], inertia_generators=[_G2_MINUS], frobenius=None,
        restriction=_singleton_restriction(_G2_ROOTS, set()),
        components=["G2"] * 12, lengths=_G2_LENGTHS,
        depth_r="1/2",
        offsets={"0": "0", "1": "0", "2": "0", "3": "0", "4": "0", "5": "0"},
        toral_invariants={"0": -1, "1": 1, "2": 1, "3": -1, "4": 1, "5": -1},
        a_residues={"0": 1, "1": 2, "2": 1, "3": 2, "4": 1, "5": 2},
    ),
}


def preset_names():
    return sorted(_PRESETS)


def preset_document(name):
    if name not in _PRESETS:
        raise UnknownIndex("no preset named %r" % name)
    import json

    doc = json.loads(json.dumps(_PRESETS[name]))
    doc["name"] = name
    return doc


def preset(name) -> Scenario:
    return load(preset_document(name))


def all_presets():
    return [preset(n) for n in preset_names()]


def chidata_presets():
    """Presets usable for the character-data comparisons: p must not divide
    any bond multiplicity."""
    out = []
    for n in preset_names():
        sc = preset(n)
        if all(sc.ell_c[c] % sc.p != 0 for c in sc.ell_c):
            out.append(sc)
    return out
