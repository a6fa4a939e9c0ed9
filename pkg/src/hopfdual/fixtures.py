"""Shipped fixtures: the Hopf algebras, truncations and duality data used by tests and the CLI."""

from .algebras import LaurentAlgebra, PolynomialAlgebra, counterexample_algebra, truncated_polynomial_algebra
from .groups import group_by_name
from .hopf import group_hopf_algebra, primitive_truncation
from .linalg import RMatrix
from .rings import ZZ, Fp, Zmod
from .smash import ComoduleAlgebraData, hopf_dual_pair

GROUP_NAMES = ("C2", "C3", "C2xC2", "S3")
GROUP_RINGS = (ZZ, Zmod(4), Fp(3), Fp(5))


def group_fixtures():
    """(name, HopfData) for R[G], G in C2, C3, C2xC2, S3 and R in Z, Z4, F3, F5."""
    out = []
    for R in GROUP_RINGS:
        for g in GROUP_NAMES:
            out.append((f"{R.name}[{g}]", group_hopf_algebra(R, group_by_name(g))))
    return out


def hopf_fixtures():
    """All shipped Hopf algebras: the group algebras plus F2[x]/(x^2) with x primitive."""
    return group_fixtures() + [("F2[x]/(x^2) primitive", primitive_truncation(Fp(2), 2))]


def sign_coaction(pair):
    """R[y]/(y^2) as a comodule algebra over U = R[C2]*: rho(1) = 1 (x) eps, rho(y) = y (x) (e* - g*)."""
    R = pair.ring
    A = truncated_polynomial_algebra(R, (0, 0, 1), "y")
    rho = RMatrix(R, [[1, 1, 0, 0], [0, 0, 1, -1]], 4)
    return ComoduleAlgebraData(pair.u, A, rho)


def duality_fixture(p=3):
    """(pair, comodule algebra) for H = F_p[C2], U = H*, A = F_p[y]/(y^2) with the sign coaction."""
    pair = hopf_dual_pair(group_hopf_algebra(Fp(p), group_by_name("C2")))
    return pair, sign_coaction(pair)


def truncation_pairs():
    """(family, ideal) pairs of rank at most 4 used for the finite-dual law suites."""
    gl = PolynomialAlgebra(ZZ, ("x",), "group_like")
    pr = PolynomialAlgebra(ZZ, ("x",), "primitive")
    la = LaurentAlgebra(ZZ, ("x",), "group_like")
    out = []
    for q in ("x - 1", "x - 2", "x^2 - 1", "x^2 - 3*x + 1", "x^3", "x^2 + x + 1"):
        out.append((gl, gl.ideal(q)))
    for q in ("x", "x^2", "x^3", "x^2 - 1", "x^4"):
        out.append((pr, pr.ideal(q)))
    for q in ("x - 1", "x + 1", "x^2 - 1", "x^2 - 3*x + 1", "x^2 + x - 1"):
        out.append((la, la.ideal(q)))
    return out


def counterexample_truncations():
    """Z4[x]/(2x, x^k) for k = 1, 2, 3."""
    return {k: counterexample_algebra(k) for k in (1, 2, 3)}


__all__ = [
    "GROUP_NAMES",
    "GROUP_RINGS",
    "group_fixtures",
    "hopf_fixtures",
    "sign_coaction",
    "duality_fixture",
    "truncation_pairs",
    "counterexample_truncations",
]
