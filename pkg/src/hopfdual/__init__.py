"""Exact verification of Hopf-algebraic dualities over Z, Z/n, Q and F_p.

Submodules:

- ``rings``, ``linalg``: coefficient rings and canonical-form linear algebra
- ``modules``: finitely presented modules, tensor products, duals, purity
- ``algebras``: structure-constant algebras, polynomial and Laurent families
- ``hopf``: coalgebras, bialgebras, Hopf algebras and their axiom checkers
- ``finite_dual``: elements and structure of the finite dual
- ``rational``: rational pairings, Rat(M), modules versus comodules
- ``smash``: smash products and the duality isomorphism
- ``cli``: session files and the ``hopfdual`` command
"""

from .errors import HopfDualError
from .rings import QQ, ZZ, CoeffRing, Fp, Zmod, parse_ring

__version__ = "0.1.0"

__all__ = ["HopfDualError", "CoeffRing", "ZZ", "QQ", "Zmod", "Fp", "parse_ring", "__version__"]
