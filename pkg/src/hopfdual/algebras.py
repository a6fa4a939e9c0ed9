"""Structure-constant algebras, filtered algebra families and their truncations.

Finite algebras are ``SCAlgebra`` objects (free of finite rank, elements are
coefficient tuples).  Infinite algebras are family descriptors
(``PolynomialAlgebra``, ``LaurentAlgebra``, ``FiniteFamily``,
``TensorFamily``) whose elements are sparse dicts ``{key: coeff}``.  They are
only ever computed with through cofinite-ideal truncations, which are again
``SCAlgebra`` objects.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from . import polys as P
from .errors import (
    InvalidIdeal,
    NoAntipode,
    NoBialgebraFlavor,
    NotAction,
    NotAssociative,
    NotAutomorphism,
    NotCofinite,
    NotMonic,
    NotReversible,
    RingMismatch,
    ShapeMismatch,
    UnitLawFails,
)
from .groups import FiniteGroup, cyclic, direct_product
from .linalg import RMatrix, charpoly, inverse, is_invertible, kronecker, solve
from .modules import FPModule


# ---------------------------------------------------------------------------
# structure-constant algebras


class SCAlgebra:
    """Free algebra of finite rank with ``e_i e_j = sum_k table[i,j][k] e_k``.

    ``table`` is sparse: a dict mapping ``(i, j)`` to ``{k: c}`` with nonzero
    ``c``.  Construction does not validate; use :func:`make_sc_algebra`.
    """

    def __init__(self, ring, labels, table, unit):
        self.ring = ring
        self.labels = tuple(labels)
        self.rank = len(self.labels)
        self.table = {
            ij: {k: ring(c) for k, c in row.items() if ring(c) != 0} for ij, row in table.items()
        }
        self.table = {ij: row for ij, row in self.table.items() if row}
        self.unit = tuple(ring(c) for c in unit)
        if len(self.unit) != self.rank:
            raise ShapeMismatch("unit vector has the wrong length")

    def __repr__(self):
        return f"SCAlgebra({self.ring.name}, rank={self.rank})"

    def __eq__(self, other):
        return (
            isinstance(other, SCAlgebra)
            and self.ring == other.ring
            and self.rank == other.rank
            and self.table == other.table
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.ring, self.rank, self.unit))

    # -- elements --------------------------------------------------------

    @property
    def one(self):
        return self.unit

    @property
    def zero(self):
        return (self.ring.zero,) * self.rank

    def basis(self, i):
        v = [self.ring.zero] * self.rank
        v[i] = self.ring.one
        return tuple(v)

    def vec(self, x):
        x = tuple(self.ring(c) for c in x)
        if len(x) != self.rank:
            raise ShapeMismatch(f"expected {self.rank} coordinates, got {len(x)}")
        return x

    def add(self, x, y):
        return tuple(self.ring(a + b) for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(self.ring(a - b) for a, b in zip(x, y))

    def scale(self, c, x):
        return tuple(self.ring(c * a) for a in x)

    def mul(self, x, y):
        R = self.ring
        out = [0] * self.rank
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0:
                    continue
                row = self.table.get((i, j))
                if row:
                    ab = a * b
                    for k, c in row.items():
                        out[k] += ab * c
        return tuple(R(c) for c in out)

    def basis_product(self, i, j):
        out = [self.ring.zero] * self.rank
        for k, c in self.table.get((i, j), {}).items():
            out[k] = c
        return tuple(out)

    def power(self, x, e):
        acc = self.one
        for _ in range(e):
            acc = self.mul(acc, x)
        return acc

    # -- matrices (row-vector convention) --------------------------------

    def left_matrix(self, x):
        """Matrix L with ``y @ L = x*y``."""
        return RMatrix(self.ring, [self.mul(x, self.basis(j)) for j in range(self.rank)], self.rank)

    def right_matrix(self, x):
        """Matrix with ``y @ M = y*x``."""
        return RMatrix(self.ring, [self.mul(self.basis(j), x) for j in range(self.rank)], self.rank)

    @cached_property
    def mult_matrix(self):
        """The multiplication map A (x) A -> A: row ``i*n + j`` is ``e_i e_j``."""
        n = self.rank
        return RMatrix(self.ring, [self.basis_product(i, j) for i in range(n) for j in range(n)], n)

    def dense(self):
        n = self.rank
        return [[list(self.basis_product(i, j)) for j in range(n)] for i in range(n)]

    # -- checks ----------------------------------------------------------

    def associativity_witness(self):
        n = self.rank
        for i in range(n):
            ei = self.basis(i)
            for j in range(n):
                eij = self.basis_product(i, j)
                for k in range(n):
                    ek = self.basis(k)
                    if self.mul(eij, ek) != self.mul(ei, self.basis_product(j, k)):
                        return (i, j, k)
        return None

    def unit_witness(self):
        for i in range(self.rank):
            e = self.basis(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                return i
        return None

    def is_commutative(self):
        n = self.rank
        return all(self.basis_product(i, j) == self.basis_product(j, i) for i in range(n) for j in range(i))

    def is_algebra_map(self, target, matrix):
        """First basis pair (i, j) where x -> x@matrix fails to be multiplicative, 'unit', or None."""
        u = (RMatrix.row_vector(self.ring, self.unit) @ matrix).rows[0]
        if u != target.unit:
            return "unit"
        imgs = [matrix.rows[i] for i in range(self.rank)]
        for i in range(self.rank):
            for j in range(self.rank):
                lhs = (RMatrix.row_vector(self.ring, self.basis_product(i, j)) @ matrix).rows[0]
                if lhs != target.mul(imgs[i], imgs[j]):
                    return (i, j)
        return None

    def fmt(self, x):
        parts = []
        for c, lab in zip(x, self.labels):
            if c != 0:
                s = self.ring.fmt(c)
                parts.append(lab if s == "1" else f"{s}*{lab}")
        return " + ".join(parts) if parts else "0"


def _sparse_table(ring, mult, n):
    if isinstance(mult, dict):
        table = {}
        for (i, j), row in mult.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ShapeMismatch(f"table index {(i, j)} out of range")
            if not isinstance(row, dict):
                row = {k: c for k, c in enumerate(row)}
            if any(not 0 <= k < n for k in row):
                raise ShapeMismatch("table value index out of range")
            table[(i, j)] = row
        return table
    if len(mult) != n or any(len(r) != n for r in mult) or any(len(c) != n for r in mult for c in r):
        raise ShapeMismatch(f"structure constants must have shape {n}x{n}x{n}")
    return {(i, j): {k: c for k, c in enumerate(mult[i][j]) if ring(c) != 0} for i in range(n) for j in range(n)}


def make_sc_algebra(ring, labels, mult, unit):
    """Validated structure-constant algebra.

    ``mult`` is either a dense ``c[i][j][k]`` nested list or a sparse dict
    ``{(i, j): {k: c}}``.  Associativity and unit laws are checked on all
    basis tuples.
    """
    labels = list(labels)
    a = SCAlgebra(ring, labels, _sparse_table(ring, mult, len(labels)), unit)
    w = a.associativity_witness()
    if w is not None:
        raise NotAssociative(w, f"(e{w[0]} e{w[1]}) e{w[2]} != e{w[0]} (e{w[1]} e{w[2]})")
    w = a.unit_witness()
    if w is not None:
        raise UnitLawFails(w, f"unit law fails on basis element {labels[w]}")
    return a


def group_algebra(ring, group):
    """R[G] with basis the group elements."""
    if not isinstance(group, FiniteGroup):
        group = FiniteGroup(group)
    n = group.order
    table = {(i, j): {group.mul(i, j): 1} for i in range(n) for j in range(n)}
    unit = [0] * n
    unit[group.identity] = 1
    a = SCAlgebra(ring, group.labels, table, unit)
    a.group = group
    return a


def tensor_algebra(a, b):
    """A (x) B with basis index ``i*rank(B) + k``."""
    if a.ring != b.ring:
        raise RingMismatch("tensor factors live over different rings")
    R = a.ring
    nb = b.rank
    table = {}
    for (i, j), ra in a.table.items():
        for (k, l), rb in b.table.items():
            table[(i * nb + k, j * nb + l)] = {
                p * nb + q: ca * cb for p, ca in ra.items() for q, cb in rb.items()
            }
    labels = [f"{x}*{y}" for x in a.labels for y in b.labels]
    unit = kronecker(RMatrix.row_vector(R, a.unit), RMatrix.row_vector(R, b.unit)).rows[0]
    return SCAlgebra(R, labels, table, unit)


def algebra_automorphism_witness(a, m):
    """None when x -> x@m is a unital multiplicative bijection of a."""
    if m.shape != (a.rank, a.rank):
        return "shape"
    if not is_invertible(m):
        return "not bijective"
    return a.is_algebra_map(a, m)


def skew_group_algebra(a, group, act):
    """Skew group algebra A*G with ``(a u_s)(b u_t) = a s(b) u_{st}``.

    ``act[s]`` is the matrix of the automorphism s in row convention
    (``b @ act[s] = s(b)``).  Basis index ``i*|G| + s``.
    """
    if not isinstance(group, FiniteGroup):
        group = FiniteGroup(group)
    R = a.ring
    n, g = a.rank, group.order
    act = [m if isinstance(m, RMatrix) else RMatrix(R, m, n) for m in act]
    if len(act) != g:
        raise ShapeMismatch("one automorphism per group element is required")
    for s, m in enumerate(act):
        w = algebra_automorphism_witness(a, m)
        if w is not None:
            raise NotAutomorphism(f"action of {group.labels[s]} is not an automorphism ({w})")
    if act[group.identity] != RMatrix.identity(R, n):
        raise NotAction("identity does not act trivially")
    for s in range(g):
        for t in range(g):
            # s(t(b)) = b @ act[t] @ act[s]
            if act[group.mul(s, t)] != act[t] @ act[s]:
                raise NotAction(f"action is not multiplicative at {(group.labels[s], group.labels[t])}")
    table = {}
    for i in range(n):
        for s in range(g):
            for j in range(n):
                sb = act[s].rows[j]
                prod = a.mul(a.basis(i), sb)
                for t in range(g):
                    st = group.mul(s, t)
                    row = {k * g + st: c for k, c in enumerate(prod) if c != 0}
                    if row:
                        table[(i * g + s, j * g + t)] = row
    unit = [0] * (n * g)
    for i, c in enumerate(a.unit):
        unit[i * g + group.identity] = c
    labels = [f"{x}u{gl}" for x in a.labels for gl in group.labels]
    return make_sc_algebra(R, labels, table, unit)


def truncated_polynomial_algebra(ring, q, var="x"):
    """R[x]/(q) for monic q, basis 1, x, ..., x^(n-1)."""
    q = P.canon(ring, q)
    if not P.is_monic(q):
        raise NotMonic(f"{P.pfmt(ring, q, var)} is not monic")
    n = P.degree(q)
    red = UnivariateReducer(ring, q, laurent=False)
    table = {}
    for i in range(n):
        for j in range(n):
            v = red.power(i + j)
            table[(i, j)] = {k: c for k, c in enumerate(v) if c != 0}
    labels = ["1"] + [var if k == 1 else f"{var}^{k}" for k in range(1, n)]
    unit = [1] + [0] * (n - 1) if n else []
    return SCAlgebra(ring, labels, table, unit)


# ---------------------------------------------------------------------------
# reversible polynomials


def is_reversible(q, ring):
    """Monic q with unit constant term."""
    q = P.canon(ring, q)
    if not P.is_monic(q):
        raise NotMonic(f"{P.pfmt(ring, q)} is not monic")
    return ring.is_unit(q[0])


def inverse_of_x(q, ring):
    """The polynomial y of degree < n with x*y = 1 modulo the reversible q.

    For q = x^n + a_{n-1}x^{n-1} + ... + a_0 this is
    y = -a_0^{-1} (x^{n-1} + a_{n-1}x^{n-2} + ... + a_1).
    """
    q = P.canon(ring, q)
    if not is_reversible(q, ring):
        raise NotReversible(f"{P.pfmt(ring, q)} has a non-unit constant term")
    c = ring(-ring.inv(q[0]))
    return P.pscale(ring, c, q[1:])


def find_reversible_generator(f1, f2, ring):
    """q = x^m (f1(x) + f2(x^{-1})) for monic f1 (degree n) and f2 (degree m)."""
    f1, f2 = P.canon(ring, f1), P.canon(ring, f2)
    for f in (f1, f2):
        if not P.is_monic(f):
            raise NotMonic(f"{P.pfmt(ring, f)} is not monic")
    m = P.degree(f2)
    if m == 0 or P.degree(f1) == 0:
        return (ring.one,)
    return P.padd(ring, P.pshift(f1, m), P.preverse(f2))


class UnivariateReducer:
    """Coordinates of x^e (any integer e for Laurent) in R[x]/(q), basis 1..x^(n-1)."""

    def __init__(self, ring, q, laurent):
        self.ring = ring
        self.q = P.canon(ring, q)
        self.n = P.degree(self.q)
        self.laurent = laurent
        self._pos = [self._vec(P.pmod(ring, (ring.one,), self.q))] if self.n else [()]
        self._neg = [self._pos[0]]
        if laurent and self.n:
            self.y = inverse_of_x(self.q, ring)

    def _vec(self, p):
        return tuple(list(p) + [self.ring.zero] * (self.n - len(p)))

    def power(self, e):
        R, q, n = self.ring, self.q, self.n
        if n == 0:
            return ()
        if e >= 0:
            while len(self._pos) <= e:
                v = self._pos[-1]
                top = v[-1]
                w = [R.zero] + list(v[:-1])
                if top != 0:
                    w = [R(w[k] - top * q[k]) for k in range(n)]
                self._pos.append(tuple(w))
            return self._pos[e]
        if not self.laurent:
            raise ValueError("negative power in a polynomial quotient")
        while len(self._neg) <= -e:
            p = P.pmod(R, P.pmul(R, P.trim(self._neg[-1]), self.y), q)
            self._neg.append(self._vec(p))
        return self._neg[-e]


@dataclass
class LaurentPolyIso:
    """Isomorphism between R[x]/(q) and the Laurent quotient R[x, x^-1]/(q).

    The Laurent side is built independently as R[z]/(q*) with z = x^-1 and
    q* the normalized reversal of q; ``matrix`` sends z^k to y^k mod q.
    """

    q: tuple
    y_image: tuple
    poly_side: SCAlgebra
    laurent_side: SCAlgebra
    matrix: RMatrix
    inverse_matrix: RMatrix


def reversed_monic(q, ring):
    """a_0^{-1} x^n q(1/x): the monic polynomial of x^{-1}."""
    q = P.canon(ring, q)
    if not is_reversible(q, ring):
        raise NotReversible(f"{P.pfmt(ring, q)} has a non-unit constant term")
    return P.pscale(ring, ring.inv(q[0]), P.preverse(q))


def laurent_poly_iso(q, ring):
    q = P.canon(ring, q)
    y = inverse_of_x(q, ring)
    n = P.degree(q)
    if P.pmod(ring, P.pmul(ring, (0, 1), y), q) != P.pmod(ring, (1,), q):
        raise NotReversible("x*y is not 1 modulo q")
    poly_side = truncated_polynomial_algebra(ring, q, "x")
    qstar = reversed_monic(q, ring)
    laurent_side = truncated_polynomial_algebra(ring, qstar, "z")
    laurent_side.labels = tuple(["1"] + [f"x^-{k}" for k in range(1, n)])
    red = UnivariateReducer(ring, q, laurent=True)
    rows = [red.power(-k) for k in range(n)]
    mat = RMatrix(ring, rows, n)
    w = laurent_side.is_algebra_map(poly_side, mat)
    if w is not None:
        raise NotReversible(f"induced map is not multiplicative at {w}")
    inv = inverse(mat)
    if inv is None:
        raise NotReversible("induced map is not bijective")
    return LaurentPolyIso(q, y, poly_side, laurent_side, mat, inv)


# ---------------------------------------------------------------------------
# filtered algebra families


@dataclass(frozen=True)
class IdealSpec:
    """A cofinite ideal from the canonical free-quotient family of its owner.

    ``generators`` holds one univariate coefficient tuple per variable for
    polynomial and Laurent families, ``()`` (the zero ideal) for finite
    families, and a pair of IdealSpecs for tensor families.
    """

    owner: object
    generators: tuple

    def describe(self):
        return self.owner.describe_ideal(self)

    def __repr__(self):
        return f"IdealSpec({self.describe()})"


@dataclass
class Truncation:
    family: object
    ideal: IdealSpec
    algebra: SCAlgebra
    keys: tuple

    def proj(self, x):
        """Coordinates of the family element x in the quotient."""
        return self.family.reduce(x, self.ideal)

    def lift(self, i):
        return {self.keys[i]: self.algebra.ring.one}


class FilteredAlgebra:
    """Common interface.  Elements are dicts ``{key: coeff}``."""

    flavor = None
    kind = "abstract"

    def __init__(self, ring):
        self.ring = ring
        self._trunc_cache = {}

    # equality by descriptor
    def descriptor(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, FilteredAlgebra) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())

    # element arithmetic
    def clean(self, x):
        return P.mclean(self.ring, x)

    def add(self, x, y):
        out = dict(x)
        for k, c in y.items():
            out[k] = out.get(k, 0) + c
        return self.clean(out)

    def scale(self, c, x):
        return self.clean({k: c * v for k, v in x.items()})

    def sub(self, x, y):
        return self.add(x, self.scale(-1, y))

    def mul(self, x, y):
        out = {}
        for ka, ca in x.items():
            for kb, cb in y.items():
                for k, c in self.key_product(ka, kb).items():
                    out[k] = out.get(k, 0) + ca * cb * c
        return self.clean(out)

    def one(self):
        return {self.unit_key(): self.ring.one}

    def reduce(self, x, ideal):
        t = self.truncate(ideal)
        R = self.ring
        out = [0] * t.algebra.rank
        for k, c in x.items():
            for i, v in enumerate(self.reduce_key(k, ideal)):
                if v != 0:
                    out[i] += c * v
        return tuple(R(v) for v in out)

    def truncate(self, ideal):
        self.check_ideal(ideal)
        key = ideal.generators
        if key not in self._trunc_cache:
            self._trunc_cache[key] = self._build_truncation(ideal)
        return self._trunc_cache[key]

    def _table_from_keys(self, ideal, keys, labels):
        idx = range(len(keys))
        table = {}
        for i in idx:
            for j in idx:
                prod = self.key_product(keys[i], keys[j])
                v = [0] * len(keys)
                for k, c in prod.items():
                    for t, w in enumerate(self.reduce_key(k, ideal)):
                        v[t] += c * w
                table[(i, j)] = {t: c for t, c in enumerate(v) if self.ring(c) != 0}
        unit = list(self.reduce_key(self.unit_key(), ideal))
        alg = SCAlgebra(self.ring, labels, table, unit)
        return Truncation(self, ideal, alg, tuple(keys))

    def check_ideal(self, ideal):
        if ideal.owner != self:
            raise InvalidIdeal("ideal belongs to a different algebra")

    # bialgebra data
    def require_flavor(self):
        if self.flavor is None:
            raise NoBialgebraFlavor(f"{self.describe()} carries no bialgebra structure")

    def coproduct(self, x):
        """Delta(x) as a dict ``{(k1, k2): c}``."""
        self.require_flavor()
        out = {}
        for k, c in x.items():
            for kk, v in self.coproduct_key(k).items():
                out[kk] = out.get(kk, 0) + c * v
        return P.mclean(self.ring, out)

    def counit(self, x):
        self.require_flavor()
        return self.ring(sum(c * self.counit_key(k) for k, c in x.items()))

    def antipode(self, x):
        self.require_flavor()
        out = {}
        for k, c in x.items():
            for kk, v in self.antipode_key(k).items():
                out[kk] = out.get(kk, 0) + c * v
        return self.clean(out)

    @property
    def has_antipode(self):
        try:
            self.antipode(self.one())
            return True
        except NoAntipode:
            return False

    def describe(self):
        return repr(self)


class PolynomialAlgebra(FilteredAlgebra):
    """R[x_1, ..., x_n]; elements are ``{exponent tuple: coeff}``."""

    kind = "polynomial"
    laurent = False

    def __init__(self, ring, names=("x",), flavor=None):
        super().__init__(ring)
        self.names = tuple(names)
        self.nvars = len(self.names)
        if flavor not in (None, "group_like", "primitive"):
            raise NoBialgebraFlavor(f"unknown flavor {flavor!r}")
        if self.laurent and flavor == "primitive":
            raise NoBialgebraFlavor("Laurent polynomials carry only the group-like structure")
        self.flavor = flavor
        self._reducers = {}

    def descriptor(self):
        return (self.kind, self.ring, self.names, self.flavor)

    def __repr__(self):
        inner = ",".join(self.names)
        if self.laurent:
            inner = ",".join(f"{n},{n}^-1" for n in self.names)
        fl = f", {self.flavor}" if self.flavor else ""
        return f"{self.ring.name}[{inner}]{fl}"

    # elements
    def element(self, x):
        if isinstance(x, str):
            el = P.parse_poly(self.ring, x, self.names)
        elif isinstance(x, dict):
            el = self.clean({tuple(k): v for k, v in x.items()})
        else:
            el = P.mclean(self.ring, {(0,) * self.nvars: x})
        if not self.laurent and any(e < 0 for k in el for e in k):
            raise ValueError("negative exponent in a polynomial algebra")
        return el

    def var(self, name):
        e = [0] * self.nvars
        e[self.names.index(name)] = 1
        return {tuple(e): self.ring.one}

    def monomial(self, exps):
        return {tuple(exps): self.ring.one}

    def unit_key(self):
        return (0,) * self.nvars

    def key_product(self, a, b):
        return {tuple(x + y for x, y in zip(a, b)): 1}

    def fmt(self, x):
        return P.mfmt(self.ring, x, self.names)

    def univariate(self, p, v):
        return P.univariate_to_m(self.ring, p, self.nvars, v)

    # ideals
    def ideal(self, *gens):
        """IdealSpec from one monic (reversible for Laurent) univariate generator per variable."""
        if len(gens) == 1 and self.nvars > 1 and isinstance(gens[0], (list, tuple)) and gens[0] and isinstance(gens[0][0], (list, tuple)):
            gens = gens[0]
        if len(gens) != self.nvars:
            raise InvalidIdeal(f"need one generator per variable ({self.nvars}), got {len(gens)}")
        out = []
        for v, g in enumerate(gens):
            if isinstance(g, (str, dict)):
                try:
                    g = P.m_to_univariate(self.ring, self.element(g), v)
                except ValueError as e:
                    raise InvalidIdeal(str(e)) from e
            g = P.canon(self.ring, g)
            if not P.is_monic(g):
                raise InvalidIdeal(f"generator {P.pfmt(self.ring, g, self.names[v])} is not monic")
            if self.laurent and not self.ring.is_unit(g[0]):
                raise InvalidIdeal(f"generator {P.pfmt(self.ring, g, self.names[v])} is not reversible")
            out.append(g)
        return IdealSpec(self, tuple(out))

    def describe_ideal(self, ideal):
        return "(" + ", ".join(P.pfmt(self.ring, g, n) for g, n in zip(ideal.generators, self.names)) + ")"

    def _reducer(self, q):
        if q not in self._reducers:
            self._reducers[q] = UnivariateReducer(self.ring, q, self.laurent)
        return self._reducers[q]

    def reduce_key(self, key, ideal):
        vec = (self.ring.one,)
        for e, q in zip(key, ideal.generators):
            if e < 0 and not self.laurent:
                raise ValueError("negative exponent in a polynomial algebra")
            v = self._reducer(q).power(e)
            vec = tuple(a * b for a in vec for b in v)
        return tuple(self.ring(c) for c in vec)

    def _build_truncation(self, ideal):
        degs = [P.degree(g) for g in ideal.generators]
        keys = list(product(*[range(d) for d in degs]))
        labels = [P.mfmt(self.ring, {k: 1}, self.names) for k in keys]
        return self._table_from_keys(ideal, keys, labels)

    def contains(self, fine, coarse):
        """fine is contained in coarse."""
        for v, (f, q) in enumerate(zip(fine.generators, coarse.generators)):
            if any(self.reduce(self.univariate(f, v), coarse)):
                return False
        return True

    def common_refinement(self, i, j):
        return IdealSpec(self, tuple(P.pmul(self.ring, a, b) for a, b in zip(i.generators, j.generators)))

    def generator_elements(self, ideal):
        return [self.univariate(g, v) for v, g in enumerate(ideal.generators)]

    # bialgebra structure
    def coproduct_key(self, key):
        if self.flavor == "group_like":
            return {(key, key): 1}
        out = {((), ()): 1}
        for e in key:
            nxt = {}
            for (l, r), c in out.items():
                for (j, k), b in P.binomial_coproduct_1d(e):
                    nxt[(l + (j,), r + (k,))] = c * b
            out = nxt
        return {(tuple(l), tuple(r)): c for (l, r), c in out.items()}

    def counit_key(self, key):
        if self.flavor == "group_like":
            return self.ring.one
        return self.ring.one if all(e == 0 for e in key) else self.ring.zero

    def antipode_key(self, key):
        if self.flavor == "group_like":
            if not self.laurent:
                raise NoAntipode("x is group-like but not invertible in R[x]")
            return {tuple(-e for e in key): 1}
        return {key: (-1) ** sum(key)}

    def counit_ideal(self):
        self.require_flavor()
        g = (self.ring(-1), self.ring.one) if self.flavor == "group_like" else (0, self.ring.one)
        return IdealSpec(self, (P.canon(self.ring, g),) * self.nvars)

    def antipode_ideal(self, ideal):
        """An ideal of the family containing S(ideal)."""
        self.require_flavor()
        if self.flavor == "group_like":
            if not self.laurent:
                raise NoAntipode("x is group-like but not invertible in R[x]")
            return IdealSpec(self, tuple(reversed_monic(g, self.ring) for g in ideal.generators))
        gens = []
        for g in ideal.generators:
            h = P.pcompose_neg(self.ring, g)
            if P.degree(g) % 2:
                h = P.pscale(self.ring, -1, h)
            gens.append(h)
        return IdealSpec(self, tuple(gens))

    def product_ideal(self, i, j):
        """Ideal K with Delta(K) in I (x) A + A (x) J.

        Per variable: the characteristic polynomial of multiplication by
        Delta(x_v) on the free module A/I (x) A/J, which kills Delta(x_v)
        there by Cayley-Hamilton.
        """
        self.require_flavor()
        ti, tj = self.truncate(i), self.truncate(j)
        t = tensor_algebra(ti.algebra, tj.algebra)
        gens = []
        for v in range(self.nvars):
            dx = self.coproduct(self.var(self.names[v]))
            el = [0] * t.rank
            for (k1, k2), c in dx.items():
                for p, w in enumerate(kronecker(
                    RMatrix.row_vector(self.ring, self.reduce_key(k1, i)),
                    RMatrix.row_vector(self.ring, self.reduce_key(k2, j)),
                ).rows[0]):
                    el[p] += c * w
            el = tuple(self.ring(c) for c in el)
            gens.append(tuple(charpoly(t.left_matrix(el))))
        return IdealSpec(self, tuple(P.canon(self.ring, g) for g in gens))

    # property P_l witnesses
    def p_ell_witness(self, generators, bound=64):
        """Ideal from the free-quotient family inside the ideal generated by ``generators``."""
        gens = [self.element(g) if not isinstance(g, dict) else self.clean(g) for g in generators]
        out = []
        for v in range(self.nvars):
            f1 = monic_in_ideal(self.ring, gens, self.nvars, v, bound, self.laurent)
            if self.laurent:
                sgens = [self.clean({tuple(-e for e in k): c for k, c in g.items()}) for g in gens]
                f2 = monic_in_ideal(self.ring, sgens, self.nvars, v, bound, True)
                out.append(find_reversible_generator(f1, f2, self.ring))
            else:
                out.append(f1)
        return IdealSpec(self, tuple(out))


class LaurentAlgebra(PolynomialAlgebra):
    """R[x_1^{+-1}, ...]; keys may have negative exponents."""

    kind = "laurent"
    laurent = True

    def __init__(self, ring, names=("x",), flavor=None):
        super().__init__(ring, names, flavor)


def monic_in_ideal(ring, gens, nvars, v, bound=64, laurent=False):
    """A monic polynomial in x_v alone lying in the ideal generated by ``gens``.

    Searches R-combinations of monomial multiples of the generators inside a
    growing exponent box ``[0, D]`` (``[-D, D]`` for Laurent), degree by degree
    up to ``bound``.  Raises NotCofinite when none is found.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise NotCofinite("the zero ideal is not cofinite")
    for D in range(1, bound + 1):
        lo = -D if laurent else 0
        box = list(product(range(lo, D + 1), repeat=nvars))
        col = {e: i for i, e in enumerate(box)}
        rows = []
        for g in gens:
            for m in box:
                shifted = {tuple(a + b for a, b in zip(m, k)): c for k, c in g.items()}
                if all(k in col for k in shifted):
                    r = [0] * len(box)
                    for k, c in shifted.items():
                        r[col[k]] = c
                    rows.append(r)
        if not rows:
            continue
        M = RMatrix(ring, rows, len(box))
        unit = [0] * nvars
        for d in range(1, D + 1):
            free = set()
            for j in range(d):
                e = list(unit)
                e[v] = j
                free.add(col[tuple(e)])
            keep = [i for i in range(len(box)) if i not in free]
            e = list(unit)
            e[v] = d
            target = [1 if i == col[tuple(e)] else 0 for i in keep]
            x = solve(M.submatrix(cols=keep), target)
            if x is None:
                continue
            f = (RMatrix.row_vector(ring, x) @ M).rows[0]
            poly = [ring.zero] * (d + 1)
            for j in range(d + 1):
                e = list(unit)
                e[v] = j
                poly[j] = f[col[tuple(e)]]
            return P.canon(ring, poly)
    raise NotCofinite(f"no monic element in variable {v} found up to degree {bound}")


class FiniteFamily(FilteredAlgebra):
    """A free finite-rank algebra seen as a family; only the zero ideal is used."""

    kind = "finite"

    def __init__(self, algebra, flavor=None, name=None):
        super().__init__(algebra.ring)
        self.algebra = algebra
        self.group = getattr(algebra, "group", None)
        if flavor == "group_like" and self.group is None:
            raise NoBialgebraFlavor("group-like flavor needs a group algebra")
        self.flavor = flavor
        self.name = name or repr(algebra)

    def descriptor(self):
        table = repr(sorted((ij, sorted(row.items())) for ij, row in self.algebra.table.items()))
        return (self.kind, self.ring, self.algebra.labels, table, self.algebra.unit, self.flavor)

    def __repr__(self):
        return self.name

    def element(self, x):
        if isinstance(x, dict):
            return self.clean(x)
        return self.clean({i: c for i, c in enumerate(x)})

    def unit_key(self):
        support = [i for i, c in enumerate(self.algebra.unit) if c != 0]
        if len(support) != 1 or self.algebra.unit[support[0]] != 1:
            raise InvalidIdeal("the unit is not a basis element")
        return support[0]

    def one(self):
        return self.element(self.algebra.unit)

    def key_product(self, a, b):
        return dict(self.algebra.table.get((a, b), {}))

    def fmt(self, x):
        v = [0] * self.algebra.rank
        for k, c in x.items():
            v[k] = c
        return self.algebra.fmt(v)

    def ideal(self, *gens):
        if gens and any(self.clean(g) if isinstance(g, dict) else any(g) for g in gens):
            raise InvalidIdeal("finite families only use the zero ideal")
        return IdealSpec(self, ())

    def zero_ideal(self):
        return IdealSpec(self, ())

    def describe_ideal(self, ideal):
        return "(0)"

    def reduce_key(self, key, ideal):
        return self.algebra.basis(key)

    def reduce(self, x, ideal):
        self.check_ideal(ideal)
        v = [0] * self.algebra.rank
        for k, c in x.items():
            v[k] += c
        return tuple(self.ring(c) for c in v)

    def _build_truncation(self, ideal):
        return Truncation(self, ideal, self.algebra, tuple(range(self.algebra.rank)))

    def contains(self, fine, coarse):
        return True

    def common_refinement(self, i, j):
        return IdealSpec(self, ())

    def generator_elements(self, ideal):
        return []

    def coproduct_key(self, key):
        return {(key, key): 1}

    def counit_key(self, key):
        return self.ring.one

    def antipode_key(self, key):
        return {self.group.inv(key): 1}

    def counit_ideal(self):
        return IdealSpec(self, ())

    def antipode_ideal(self, ideal):
        return IdealSpec(self, ())

    def product_ideal(self, i, j):
        return IdealSpec(self, ())

    def p_ell_witness(self, generators=(), bound=64):
        return IdealSpec(self, ())


def group_algebra_family(ring, group):
    if isinstance(group, str):
        from .groups import group_by_name

        group = group_by_name(group)
    return FiniteFamily(group_algebra(ring, group), "group_like", f"{ring.name}[{group.name}]")


def skew_group_family(a, group, act):
    return FiniteFamily(skew_group_algebra(a, group, act), None, f"skew({group.name})")


class TensorFamily(FilteredAlgebra):
    """A (x) B; elements are ``{(key_a, key_b): coeff}``."""

    kind = "tensor"

    def __init__(self, a, b):
        if a.ring != b.ring:
            raise RingMismatch("tensor factors live over different rings")
        super().__init__(a.ring)
        self.a, self.b = a, b

    def descriptor(self):
        return (self.kind, self.a.descriptor(), self.b.descriptor())

    def __repr__(self):
        return f"({self.a!r}) (x) ({self.b!r})"

    def pure_tensor(self, x, y):
        return self.clean({(ka, kb): ca * cb for ka, ca in x.items() for kb, cb in y.items()})

    def element(self, x):
        return self.clean(x)

    def unit_key(self):
        return (self.a.unit_key(), self.b.unit_key())

    def key_product(self, p, q):
        pa = self.a.key_product(p[0], q[0])
        pb = self.b.key_product(p[1], q[1])
        return {(ka, kb): ca * cb for ka, ca in pa.items() for kb, cb in pb.items()}

    def fmt(self, x):
        return " + ".join(
            f"{self.ring.fmt(c)}*({self.a.fmt({ka: 1})} (x) {self.b.fmt({kb: 1})})" for (ka, kb), c in sorted(x.items())
        ) or "0"

    def ideal(self, ia, ib):
        if not isinstance(ia, IdealSpec):
            ia = self.a.ideal(*ia)
        if not isinstance(ib, IdealSpec):
            ib = self.b.ideal(*ib)
        return IdealSpec(self, (ia, ib))

    def describe_ideal(self, ideal):
        ia, ib = ideal.generators
        return f"{ia.describe()} (x) B + A (x) {ib.describe()}"

    def reduce_key(self, key, ideal):
        ia, ib = ideal.generators
        va = self.a.reduce_key(key[0], ia)
        vb = self.b.reduce_key(key[1], ib)
        return tuple(self.ring(x * y) for x in va for y in vb)

    def _build_truncation(self, ideal):
        ia, ib = ideal.generators
        ta, tb = self.a.truncate(ia), self.b.truncate(ib)
        keys = [(p, q) for p in ta.keys for q in tb.keys]
        return Truncation(self, ideal, tensor_algebra(ta.algebra, tb.algebra), tuple(keys))

    def contains(self, fine, coarse):
        return self.a.contains(fine.generators[0], coarse.generators[0]) and self.b.contains(
            fine.generators[1], coarse.generators[1]
        )

    def common_refinement(self, i, j):
        return IdealSpec(
            self,
            (
                self.a.common_refinement(i.generators[0], j.generators[0]),
                self.b.common_refinement(i.generators[1], j.generators[1]),
            ),
        )

    def generator_elements(self, ideal):
        ia, ib = ideal.generators
        one_a, one_b = self.a.one(), self.b.one()
        return [self.pure_tensor(g, one_b) for g in self.a.generator_elements(ia)] + [
            self.pure_tensor(one_a, g) for g in self.b.generator_elements(ib)
        ]

    def p_ell_witness(self, generators, bound=64):
        """Split witness I_0 (x) B + A (x) J_0 inside the ideal generated by ``generators``.

        Supported for two finite factors, or two polynomial (two Laurent)
        factors, where the tensor product is again a polynomial (Laurent)
        algebra in the concatenated variables.
        """
        a, b = self.a, self.b
        if a.kind == "finite" and b.kind == "finite":
            return IdealSpec(self, (a.zero_ideal(), b.zero_ideal()))
        if a.kind == b.kind and a.kind in ("polynomial", "laurent"):
            cls = LaurentAlgebra if a.kind == "laurent" else PolynomialAlgebra
            names = tuple(f"a{n}" for n in a.names) + tuple(f"b{n}" for n in b.names)
            merged = cls(self.ring, names)
            gens = [merged.clean({ka + kb: c for (ka, kb), c in self.element(g).items()}) for g in generators]
            w = merged.p_ell_witness(gens, bound)
            na = a.nvars
            return IdealSpec(self, (IdealSpec(a, w.generators[:na]), IdealSpec(b, w.generators[na:])))
        raise NotCofinite(f"no witness search for the tensor product {self!r}")


# ---------------------------------------------------------------------------
# finite quotients that need not be free


class PresentedQuotient:
    """R[x]/(q, r_1, ..., r_s) with q monic: a finite but possibly non-free algebra.

    The underlying module is presented on 1, x, ..., x^(n-1) with relations
    x^j r_i mod q.  Multiplication is polynomial multiplication mod q, which
    is well defined on the quotient module.
    """

    def __init__(self, ring, relations, var="x"):
        self.ring = ring
        self.var = var
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = P.m_to_univariate(ring, P.parse_poly(ring, r, (var,)), 0)
            rels.append(P.canon(ring, r))
        monic = [r for r in rels if P.is_monic(r)]
        if not monic:
            raise NotCofinite("a presented quotient needs a monic relation to be finite")
        self.monic = min(monic, key=P.degree)
        self.relations = tuple(rels)
        self.n = P.degree(self.monic)
        rows = []
        for r in rels:
            if r == self.monic:
                continue
            for j in range(self.n):
                red = P.pmod(ring, P.pshift(r, j), self.monic)
                rows.append(list(red) + [0] * (self.n - len(red)))
        self.module = FPModule(ring, self.n, RMatrix(ring, rows, self.n) if rows else None)

    def __repr__(self):
        return f"{self.ring.name}[{self.var}]/(" + ", ".join(P.pfmt(self.ring, r, self.var) for r in self.relations) + ")"

    def labels(self):
        return ["1"] + [self.var if k == 1 else f"{self.var}^{k}" for k in range(1, self.n)]

    def mul(self, u, v):
        p = P.pmul(self.ring, P.trim(u), P.trim(v))
        red = P.pmod(self.ring, p, self.monic)
        return self.module.canonical(tuple(list(red) + [0] * (self.n - len(red))))


def counterexample_algebra(k, ring=None):
    """Z4[x]/(2x, x^k), the truncations of Z4[x]/(2x) at (x^k)."""
    from .rings import Zmod

    ring = ring or Zmod(4)
    return PresentedQuotient(ring, [(0, 2), (0,) * k + (1,)])


# ---------------------------------------------------------------------------
# convenient constructors


def algebra_for_group(ring, name):
    from .groups import group_by_name

    return group_algebra(ring, group_by_name(name))


__all__ = [
    "SCAlgebra",
    "make_sc_algebra",
    "group_algebra",
    "tensor_algebra",
    "skew_group_algebra",
    "truncated_polynomial_algebra",
    "is_reversible",
    "inverse_of_x",
    "find_reversible_generator",
    "laurent_poly_iso",
    "reversed_monic",
    "IdealSpec",
    "Truncation",
    "FilteredAlgebra",
    "PolynomialAlgebra",
    "LaurentAlgebra",
    "FiniteFamily",
    "TensorFamily",
    "group_algebra_family",
    "skew_group_family",
    "monic_in_ideal",
    "PresentedQuotient",
    "counterexample_algebra",
    "cyclic",
    "direct_product",
]
