"""tamesign: machine-checked sign-character calculus on residue-field tori.

Exact finite-field arithmetic, finite Galois-with-negation actions, jump
torsors, torus points, hypercocycle and spinor-norm sign characters, and the
character-data comparison, with every closed formula paired against an
independent brute-force oracle.
"""

__version__ = "0.1.0"

from . import (  # noqa: F401
    chidata,
    epschar,
    fields,
    hypercoh,
    presets,
    quadspace,
    scenario,
    sigma,
    synth,
    torus,
)
from .errors import TamesignError  # noqa: F401
