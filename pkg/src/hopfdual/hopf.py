"""Coalgebras, bialgebras, Hopf algebras and comodules on free modules of finite rank.

Structure maps are matrices in the row convention.  For a rank-n coalgebra
the comultiplication is an ``n x n^2`` matrix whose row i is Delta(e_i) in the
Kronecker basis ``e_j (x) e_k -> j*n + k``; the counit is a vector.  Every
checker returns a :class:`~hopfdual.report.Report` whose failures carry the
least basis witness for each violated axiom.
"""

from dataclasses import dataclass
from functools import cached_property

from .algebras import SCAlgebra, group_algebra, tensor_algebra, truncated_polynomial_algebra
from .errors import NoAntipode, NotACoideal, RingMismatch, ShapeMismatch
from .groups import FiniteGroup
from .linalg import RMatrix, inverse, kronecker
from .report import Report


@dataclass(frozen=True, eq=False)
class CoalgebraData:
    ring: object
    rank: int
    comult: RMatrix  # n x n^2
    counit: tuple
    labels: tuple = ()

    def __post_init__(self):
        n = self.rank
        if self.comult.shape != (n, n * n):
            raise ShapeMismatch(f"comultiplication must be {n}x{n * n}, got {self.comult.shape}")
        if len(self.counit) != n:
            raise ShapeMismatch("counit vector has the wrong length")
        object.__setattr__(self, "counit", tuple(self.ring(c) for c in self.counit))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(n)))

    def __eq__(self, other):
        return (
            isinstance(other, CoalgebraData)
            and self.ring == other.ring
            and self.comult == other.comult
            and self.counit == other.counit
        )

    def __hash__(self):
        return hash((self.ring, self.rank, self.counit))

    @cached_property
    def counit_col(self):
        return RMatrix(self.ring, [[c] for c in self.counit], 1)

    def delta(self, x):
        """Delta(x) as a vector of length n^2."""
        return self.comult.vecmul(x)

    def eps(self, x):
        return self.ring(sum(a * b for a, b in zip(x, self.counit)))

    def delta_terms(self, i):
        """Nonzero terms ``(j, k, c)`` of Delta(e_i)."""
        n = self.rank
        return [(p // n, p % n, c) for p, c in enumerate(self.comult.rows[i]) if c != 0]


@dataclass(frozen=True, eq=False)
class HopfData:
    alg: SCAlgebra
    coalg: CoalgebraData
    antipode: RMatrix = None

    def __post_init__(self):
        if self.alg.ring != self.coalg.ring:
            raise RingMismatch("algebra and coalgebra live over different rings")
        if self.alg.rank != self.coalg.rank:
            raise ShapeMismatch("algebra and coalgebra ranks differ")
        if self.antipode is not None and self.antipode.shape != (self.rank, self.rank):
            raise ShapeMismatch("antipode must be square of the algebra rank")

    @property
    def ring(self):
        return self.alg.ring

    @property
    def rank(self):
        return self.alg.rank

    @property
    def labels(self):
        return self.alg.labels

    def S(self, x):
        if self.antipode is None:
            raise NoAntipode("this bialgebra has no antipode")
        return self.antipode.vecmul(x)

    @cached_property
    def antipode_inverse(self):
        if self.antipode is None:
            return None
        return inverse(self.antipode)


@dataclass(frozen=True, eq=False)
class Comodule:
    """Right comodule: ``coaction`` is ``m x (m*n)``, row i = rho(m_i) in index ``j*n + k``."""

    coalg: CoalgebraData
    rank: int
    coaction: RMatrix

    def __post_init__(self):
        if self.coaction.shape != (self.rank, self.rank * self.coalg.rank):
            raise ShapeMismatch("coaction has the wrong shape")


# ---------------------------------------------------------------------------
# checkers


def _first_row_mismatch(a, b):
    for i, (r, s) in enumerate(zip(a.rows, b.rows)):
        if r != s:
            return i
    return None


def check_algebra(alg, report=None):
    report = report if report is not None else Report(repr(alg))
    report.ran("associativity")
    w = alg.associativity_witness()
    if w is not None:
        report.fail("associativity", w)
    report.ran("unit")
    w = alg.unit_witness()
    if w is not None:
        report.fail("unit", w)
    return report


def check_coalgebra(c, report=None):
    report = report if report is not None else Report("coalgebra")
    R, n = c.ring, c.rank
    I = RMatrix.identity(R, n)
    D = c.comult
    report.ran("coassociativity")
    i = _first_row_mismatch(D @ kronecker(D, I), D @ kronecker(I, D))
    if i is not None:
        report.fail("coassociativity", i, f"(Delta (x) id)Delta != (id (x) Delta)Delta on {c.labels[i]}")
    report.ran("counit")
    E = c.counit_col
    for name, m in (("counit right", D @ kronecker(I, E)), ("counit left", D @ kronecker(E, I))):
        i = _first_row_mismatch(m, I)
        if i is not None:
            report.fail("counit", i, f"{name} law fails on {c.labels[i]}")
            break
    return report


def check_bialgebra(h, report=None):
    report = report if report is not None else Report("bialgebra")
    A, C, R, n = h.alg, h.coalg, h.ring, h.rank
    AA = tensor_algebra(A, A)
    deltas = [C.delta(A.basis(i)) for i in range(n)]
    report.ran("comultiplication multiplicative")
    if C.delta(A.unit) != AA.unit:
        report.fail("comultiplication multiplicative", "unit", "Delta(1) != 1 (x) 1")
    else:
        for i in range(n):
            bad = next(
                (j for j in range(n) if C.delta(A.basis_product(i, j)) != AA.mul(deltas[i], deltas[j])),
                None,
            )
            if bad is not None:
                report.fail("comultiplication multiplicative", (i, bad))
                break
    report.ran("counit multiplicative")
    if C.eps(A.unit) != R.one:
        report.fail("counit multiplicative", "unit", "eps(1) != 1")
    else:
        e = C.counit
        for i in range(n):
            bad = next((j for j in range(n) if C.eps(A.basis_product(i, j)) != R(e[i] * e[j])), None)
            if bad is not None:
                report.fail("counit multiplicative", (i, bad))
                break
    return report


def antipode_witness(h, S):
    """Least basis index where S fails to be the convolution inverse of id, else None."""
    A, C, n = h.alg, h.coalg, h.rank
    for i in range(n):
        target = A.scale(C.counit[i], A.unit)
        left = right = A.zero
        for j, k, c in C.delta_terms(i):
            left = A.add(left, A.scale(c, A.mul(S.rows[j], A.basis(k))))
            right = A.add(right, A.scale(c, A.mul(A.basis(j), S.rows[k])))
        if left != target or right != target:
            return i
    return None


def check_hopf(h):
    """All axioms: algebra, coalgebra, compatibility and (when present) the antipode."""
    report = Report("Hopf algebra" if h.antipode is not None else "bialgebra")
    check_algebra(h.alg, report)
    check_coalgebra(h.coalg, report)
    check_bialgebra(h, report)
    if h.antipode is not None:
        report.ran("antipode")
        w = antipode_witness(h, h.antipode)
        if w is not None:
            report.fail("antipode", w, f"m(S (x) id)Delta != u eps on {h.labels[w]}")
    return report


def check_comodule(m):
    report = Report("comodule")
    C, R = m.coalg, m.coalg.ring
    I_m, I_c = RMatrix.identity(R, m.rank), RMatrix.identity(R, C.rank)
    rho = m.coaction
    report.ran("coassociativity")
    i = _first_row_mismatch(rho @ kronecker(I_m, C.comult), rho @ kronecker(rho, I_c))
    if i is not None:
        report.fail("coassociativity", i)
    report.ran("counit")
    i = _first_row_mismatch(rho @ kronecker(I_m, C.counit_col), I_m)
    if i is not None:
        report.fail("counit", i)
    return report


# ---------------------------------------------------------------------------
# constructions


def coalgebra_from_terms(ring, rank, terms, counit, labels=()):
    """``terms[i]`` is a dict ``{(j, k): c}`` describing Delta(e_i)."""
    rows = []
    for i in range(rank):
        r = [0] * (rank * rank)
        for (j, k), c in terms[i].items():
            r[j * rank + k] += c
        rows.append(r)
    return CoalgebraData(ring, rank, RMatrix(ring, rows, rank * rank), tuple(counit), tuple(labels))


def group_hopf_algebra(ring, group):
    """R[G] with group-like basis and S(g) = g^-1."""
    if not isinstance(group, FiniteGroup):
        group = FiniteGroup(group)
    A = group_algebra(ring, group)
    n = group.order
    C = coalgebra_from_terms(ring, n, [{(g, g): 1} for g in range(n)], [1] * n, A.labels)
    S = RMatrix(ring, [[1 if j == group.inv(i) else 0 for j in range(n)] for i in range(n)], n)
    return HopfData(A, C, S)


def dual_algebra(c):
    """The convolution algebra C* on the dual basis: product transpose to Delta, unit eps."""
    R, n = c.ring, c.rank
    mult = {}
    for i in range(n):
        for p, v in enumerate(c.comult.rows[i]):
            if v != 0:
                mult.setdefault((p // n, p % n), {})[i] = v
    return SCAlgebra(R, tuple(f"{l}*" for l in c.labels), mult, c.counit)


def dual_coalgebra(a):
    """The coalgebra A* of a free finite algebra: Delta transpose to the product."""
    return CoalgebraData(a.ring, a.rank, a.mult_matrix.T, a.unit, tuple(f"{l}*" for l in a.labels))


def convolution_dual(h):
    """The dual Hopf algebra on the dual basis: all structure maps transposed."""
    alg = dual_algebra(h.coalg)
    coalg = dual_coalgebra(h.alg)
    S = h.antipode.T if h.antipode is not None else None
    return HopfData(alg, coalg, S)


def convolution_product(f, g, coalg, alg):
    """f * g = m (f (x) g) Delta for maps C -> A given as ``rank(C) x rank(A)`` matrices."""
    if f.shape != (coalg.rank, alg.rank) or g.shape != f.shape:
        raise ShapeMismatch("convolution factors must be rank(C) x rank(A) matrices")
    if coalg.ring != alg.ring:
        raise RingMismatch("coalgebra and algebra live over different rings")
    return coalg.comult @ kronecker(f, g) @ alg.mult_matrix


def unit_counit(coalg, alg):
    """The convolution unit u o eps."""
    return coalg.counit_col @ RMatrix.row_vector(alg.ring, alg.unit)


def is_hopf_isomorphism(h1, h2, m):
    """True when x -> x@m is a bijective algebra and coalgebra map h1 -> h2."""
    if inverse(m) is None:
        return False
    if h1.alg.is_algebra_map(h2.alg, m) is not None:
        return False
    if h1.coalg.comult @ kronecker(m, m) != m @ h2.coalg.comult:
        return False
    return m @ h2.coalg.counit_col == h1.coalg.counit_col


def polynomial_bialgebras(ring, n_vars, flavor, trunc, names=None):
    """The group-like or primitive structure on R[x_1..x_n]/trunc.

    ``trunc`` gives one monic generator per variable.  Raises NotACoideal when
    the ideal is not a coideal for the chosen flavor; the antipode is included
    only when it descends to the quotient.
    """
    from .algebras import LaurentAlgebra, PolynomialAlgebra

    names = tuple(names or (("x",) if n_vars == 1 else tuple(f"x{i + 1}" for i in range(n_vars))))
    fam = PolynomialAlgebra(ring, names, flavor)
    ideal = fam.ideal(*trunc) if not hasattr(trunc, "generators") else trunc
    t = fam.truncate(ideal)
    A, keys, n = t.algebra, t.keys, t.algebra.rank

    def red2(d):
        out = [0] * (n * n)
        for (k1, k2), c in d.items():
            v1 = fam.reduce_key(k1, ideal)
            v2 = fam.reduce_key(k2, ideal)
            for a, x in enumerate(v1):
                if x:
                    for b, y in enumerate(v2):
                        out[a * n + b] += c * x * y
        return tuple(ring(v) for v in out)

    for v, g in enumerate(fam.generator_elements(ideal)):
        dg = red2(fam.coproduct(g))
        if any(dg):
            raise NotACoideal(
                (names[v], dg), f"Delta({fam.fmt(g)}) does not vanish modulo the ideal"
            )
        if fam.counit(g) != 0:
            raise NotACoideal((names[v], "counit"), f"eps({fam.fmt(g)}) = {fam.counit(g)} is not zero")
    comult = RMatrix(ring, [red2(fam.coproduct_key(k)) for k in keys], n * n)
    counit = tuple(fam.counit_key(k) for k in keys)
    C = CoalgebraData(ring, n, comult, counit, A.labels)
    S = None
    if flavor == "primitive" or all(ring.is_unit(g[0]) for g in ideal.generators):
        lfam = LaurentAlgebra(ring, names, "group_like") if flavor == "group_like" else fam
        lideal = lfam.ideal(*ideal.generators) if lfam is not fam else ideal
        sgens = [lfam.antipode(g) for g in lfam.generator_elements(lideal)]
        if all(not any(lfam.reduce(s, lideal)) for s in sgens):
            S = RMatrix(ring, [lfam.reduce(lfam.antipode({k: 1}), lideal) for k in keys], n)
    return HopfData(A, C, S)


def primitive_truncation(ring, degree=2):
    """R[x]/(x^degree) with x primitive."""
    return polynomial_bialgebras(ring, 1, "primitive", [(0,) * degree + (1,)])


def tensor_coalgebra(c1, c2):
    """C1 (x) C2 with Delta(a (x) b) = sum (a1 (x) b1) (x) (a2 (x) b2)."""
    R = c1.ring
    if c2.ring != R:
        raise RingMismatch("tensor factors live over different rings")
    n1, n2 = c1.rank, c2.rank
    n = n1 * n2
    rows = []
    for i in range(n1):
        for k in range(n2):
            r = [0] * (n * n)
            for j1, j2, c in c1.delta_terms(i):
                for l1, l2, d in c2.delta_terms(k):
                    r[(j1 * n2 + l1) * n + (j2 * n2 + l2)] += c * d
            rows.append(r)
    counit = tuple(R(a * b) for a in c1.counit for b in c2.counit)
    labels = tuple(f"{x}*{y}" for x in c1.labels for y in c2.labels)
    return CoalgebraData(R, n, RMatrix(R, rows, n * n), counit, labels)


def tensor_hopf(h1, h2):
    """H1 (x) H2 with componentwise structure."""
    A = tensor_algebra(h1.alg, h2.alg)
    C = tensor_coalgebra(h1.coalg, h2.coalg)
    S = None
    if h1.antipode is not None and h2.antipode is not None:
        S = kronecker(h1.antipode, h2.antipode)
    return HopfData(A, C, S)


__all__ = [
    "CoalgebraData",
    "HopfData",
    "Comodule",
    "check_algebra",
    "check_coalgebra",
    "check_bialgebra",
    "check_hopf",
    "check_comodule",
    "antipode_witness",
    "coalgebra_from_terms",
    "group_hopf_algebra",
    "convolution_dual",
    "dual_algebra",
    "dual_coalgebra",
    "tensor_coalgebra",
    "convolution_product",
    "unit_counit",
    "is_hopf_isomorphism",
    "polynomial_bialgebras",
    "primitive_truncation",
    "tensor_hopf",
    "truncated_polynomial_algebra",
]
