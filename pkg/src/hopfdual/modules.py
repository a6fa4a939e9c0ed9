"""Finitely presented modules over a ``CoeffRing``.

A module is ``R^g / rowspan(relations)``; elements are coordinate vectors
on the ``g`` generators.  Submodules are always carried as injective
``ModuleMap`` objects into an ambient module.
"""

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, lcm

from sympy import factorint, divisors

from .errors import HypothesisFailed, NotInjective, RingMismatch, ShapeMismatch
from .linalg import (
    RMatrix,
    kernel,
    kronecker,
    reduce_vector,
    row_span_form,
    smith_diagonal,
    solve,
    vstack_all,
)
from .rings import ZZ

INFINITY = float("inf")


class FPModule:
    """Module presented by generators and relations over ``ring``."""

    def __init__(self, ring, ngens, relations=None):
        if relations is None:
            relations = RMatrix.zeros(ring, 0, ngens)
        elif not isinstance(relations, RMatrix):
            relations = RMatrix(ring, relations, ngens)
        if relations.ncols != ngens:
            raise ShapeMismatch("relations must have one column per generator")
        if relations.ring != ring:
            raise RingMismatch("relations over a different ring")
        self.ring = ring
        self.ngens = ngens
        self.relations = relations

    @classmethod
    def free(cls, ring, rank):
        return cls(ring, rank)

    @classmethod
    def cyclic(cls, ring, d):
        """R/(d)."""
        return cls(ring, 1, RMatrix(ring, [[d]], 1))

    def __repr__(self):
        return f"FPModule({self.ring.name}, {self.describe()})"

    # -- canonical data ----------------------------------------------------

    @cached_property
    def relation_form(self):
        """Canonical form of the relation span (fixed generators)."""
        return row_span_form(self.relations)

    @cached_property
    def invariants(self):
        """Isomorphism invariants: sorted elementary divisors, 0 for free.

        Over Z/n and F_p the module is viewed as an abelian group through the
        lift ``Z^g / (relations + n Z^g)``, which determines it up to
        isomorphism.  Over Q the invariant is just the dimension.
        """
        R = self.ring
        g = self.ngens
        if R.kind == "Q":
            return (0,) * (g - len(self.relation_form.rows))
        rels = [list(map(int, r)) for r in self.relations.rows]
        if R.is_modular:
            rels += [[R.modulus if i == j else 0 for j in range(g)] for i in range(g)]
        if g == 0:
            return ()
        lifted = RMatrix(ZZ, rels, g) if rels else RMatrix.zeros(ZZ, 0, g)
        diag = smith_diagonal(lifted)
        diag = diag + [0] * (g - len(diag))
        return tuple(d for d in diag if d != 1)

    def is_zero_module(self):
        return self.invariants == ()

    def is_free(self):
        return all(d == 0 for d in self.invariants) if not self.ring.is_modular else \
            all(d == self.ring.modulus for d in self.invariants)

    def isomorphic(self, other):
        return self.ring == other.ring and self.invariants == other.invariants

    def describe(self):
        inv = self.invariants
        if not inv:
            return "0"
        parts = []
        for d in inv:
            parts.append("R" if d == 0 else f"Z/{d}")
        return " + ".join(parts)

    def order(self):
        """Number of elements (None when infinite)."""
        total = 1
        for d in self.invariants:
            if d == 0:
                return None
            total *= d
        return total

    # -- elements ----------------------------------------------------------

    def canonical(self, v):
        """Canonical representative of the element with coordinates ``v``."""
        if len(v) != self.ngens:
            raise ShapeMismatch(f"element of length {len(v)} in module with {self.ngens} generators")
        return reduce_vector(v, self.relation_form)

    def is_zero(self, v):
        return not any(self.canonical(v))

    def equal(self, v, w):
        return self.is_zero([self.ring(a - b) for a, b in zip(v, w)])

    def elements(self):
        """Enumerate canonical representatives of a finite module."""
        R = self.ring
        if not R.is_modular:
            raise ValueError("element enumeration needs a finite ring")
        seen = {}
        for v in _product(R.elements(), self.ngens):
            c = self.canonical(v)
            seen.setdefault(c, None)
        return list(seen)


def _product(values, n):
    values = list(values)
    if n == 0:
        yield ()
        return
    for head in values:
        for tail in _product(values, n - 1):
            yield (head,) + tail


def element_order(m, v):
    """Least k > 0 with k*v = 0 in ``m``; ``INFINITY`` when none exists."""
    R = m.ring
    if m.is_zero(v):
        return 1
    if R.kind == "Q":
        return INFINITY
    g = m.ngens
    rels = [list(map(int, r)) for r in m.relations.rows]
    if R.is_modular:
        rels += [[R.modulus if i == j else 0 for j in range(g)] for i in range(g)]
    from .linalg import smith_normal_form

    lifted = RMatrix(ZZ, rels, g)
    _, d, vv = smith_normal_form(lifted)
    w = vv.vecmul([int(x) for x in v])
    order = 1
    for i, wi in enumerate(w):
        di = d[i, i] if i < min(d.nrows, d.ncols) else 0
        if wi == 0:
            continue
        if di == 0:
            return INFINITY
        order = lcm(order, di // gcd(di, wi))
    return order


# -- module maps ----------------------------------------------------------


@dataclass(frozen=True)
class ModuleMap:
    """Homomorphism given by the images of the source generators (rows)."""

    source: FPModule
    target: FPModule
    matrix: RMatrix
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.matrix.shape != (self.source.ngens, self.target.ngens):
            raise ShapeMismatch(
                f"map matrix {self.matrix.shape} vs {self.source.ngens}->{self.target.ngens}"
            )
        if self.check:
            for rel in self.source.relations.rows:
                if not self.target.is_zero(self.matrix.vecmul(rel)):
                    raise ValueError(f"relation {rel} does not map to zero; map is not well defined")

    def __call__(self, v):
        return self.target.canonical(self.matrix.vecmul(v))

    def kernel_generators(self):
        """Generators (source coordinates) of the kernel, including source relations."""
        stacked = vstack_all(
            self.matrix.ring, self.target.ngens, [self.matrix, self.target.relations]
        )
        K = kernel(stacked)
        return [r[: self.source.ngens] for r in K.rows]

    def kernel_witness(self):
        """A kernel element that is nonzero in the source, or None."""
        for v in self.kernel_generators():
            if not self.source.is_zero(v):
                return self.source.canonical(v)
        return None

    def is_injective(self):
        return self.kernel_witness() is None


def identity_map(m):
    return ModuleMap(m, m, RMatrix.identity(m.ring, m.ngens))


def quotient(m, incl):
    """M / image(incl)."""
    rels = vstack_all(m.ring, m.ngens, [m.relations, incl.matrix])
    return FPModule(m.ring, m.ngens, rels)


def submodule(m, vectors):
    """The submodule of ``m`` generated by ``vectors`` with its inclusion map."""
    R = m.ring
    V = RMatrix(R, [list(v) for v in vectors], m.ngens) if vectors else RMatrix.zeros(R, 0, m.ngens)
    K = kernel(vstack_all(R, m.ngens, [V, m.relations]))
    rels = RMatrix(R, [r[: V.nrows] for r in K.rows], V.nrows) if K.nrows else RMatrix.zeros(R, 0, V.nrows)
    sub = FPModule(R, V.nrows, rels)
    return sub, ModuleMap(sub, m, V, check=False)


def direct_sum(*mods):
    R = mods[0].ring
    g = sum(x.ngens for x in mods)
    rows = []
    off = 0
    for x in mods:
        if x.ring != R:
            raise RingMismatch("direct sum over different rings")
        for r in x.relations.rows:
            rows.append([R.zero] * off + list(r) + [R.zero] * (g - off - x.ngens))
        off += x.ngens
    return FPModule(R, g, RMatrix(R, rows, g) if rows else None)


def tensor_module(m, n):
    """Presentation of m (x) n: generator (i, k) has index i*n.ngens + k."""
    if m.ring != n.ring:
        raise RingMismatch(f"{m.ring.name} vs {n.ring.name}")
    R = m.ring
    g = m.ngens * n.ngens
    rels = vstack_all(
        R,
        g,
        [
            kronecker(m.relations, RMatrix.identity(R, n.ngens)),
            kronecker(RMatrix.identity(R, m.ngens), n.relations),
        ],
    )
    return FPModule(R, g, rels)


def tensor_map(f, g):
    """f (x) g between tensor modules."""
    return ModuleMap(
        tensor_module(f.source, g.source),
        tensor_module(f.target, g.target),
        kronecker(f.matrix, g.matrix),
        check=False,
    )


def dual_module_with_embedding(m):
    """Hom(m, R) as a module, together with the matrix embedding it in R^g.

    A homomorphism is its column of generator values phi; it must kill
    every relation, so Hom(m, R) = {phi : relations @ phi = 0}.  Row k of
    the returned matrix is the value vector of the k-th generator of the dual.
    """
    R = m.ring
    K = kernel(m.relations.T)
    if K.nrows == 0:
        return FPModule(R, 0), RMatrix.zeros(R, 0, m.ngens)
    rels = kernel(K)
    return FPModule(R, K.nrows, rels if rels.nrows else None), K


def dual_module(m):
    return dual_module_with_embedding(m)[0]


# -- purity ---------------------------------------------------------------


def _check_injective(incl):
    w = incl.kernel_witness()
    if w is not None:
        raise NotInjective(f"inclusion has kernel element {w}")


def is_x_pure(incl, x):
    """True iff incl (x) id_x is injective."""
    _check_injective(incl)
    return tensor_map(incl, identity_map(x)).is_injective()


def purity_battery(ring):
    """Finite battery of test modules used for suite-level purity claims."""
    if ring.kind == "Z":
        return [
            FPModule.free(ring, 1),
            FPModule.cyclic(ring, 2),
            FPModule.cyclic(ring, 3),
            FPModule.cyclic(ring, 4),
            direct_sum(FPModule.cyclic(ring, 2), FPModule.cyclic(ring, 4)),
        ]
    if ring.is_field:
        return [FPModule.free(ring, 1), FPModule.free(ring, 2)]
    mods = [FPModule.free(ring, 1)]
    for d in divisors(ring.modulus)[1:-1]:
        mods.append(FPModule.cyclic(ring, d))
    if len(mods) > 2:
        mods.append(direct_sum(mods[1], mods[-1]))
    return mods


def _witness_candidates(ring, incl):
    """Cyclic test modules that detect any failure of purity for ``incl``."""
    if ring.is_field:
        return []
    if ring.is_modular:
        return [FPModule.cyclic(ring, d) for d in divisors(ring.modulus)[1:-1]]
    exps = {}
    for mod in (incl.source, incl.target, quotient(incl.target, incl)):
        for d in mod.invariants:
            for p, e in factorint(d).items() if d else ():
                exps[p] = max(exps.get(p, 0), e)
    out = []
    for p in sorted(exps):
        for k in range(1, exps[p] + 2):
            out.append(FPModule.cyclic(ring, p ** k))
    return out


@dataclass
class PurityVerdict:
    pure: bool
    witness_module: FPModule = None
    kernel_element: tuple = None

    def __bool__(self):
        return self.pure


def is_pure_submodule(incl):
    """Decide purity of an injective map between finitely generated modules.

    Over the shipped rings a pure submodule of a f.g. module is a direct
    summand, and the sequence 0 -> N -> M -> M/N -> 0 splits iff
    M ~ N + M/N (Miyata).  The verdict is that invariant comparison; on
    failure a cyclic test module X and a nonzero kernel element of
    N (x) X -> M (x) X are produced.
    """
    _check_injective(incl)
    n, m = incl.source, incl.target
    q = quotient(m, incl)
    split = direct_sum(n, q).isomorphic(m)
    if split:
        return PurityVerdict(True)
    for x in _witness_candidates(m.ring, incl):
        t = tensor_map(incl, identity_map(x))
        w = t.kernel_witness()
        if w is not None:
            return PurityVerdict(False, x, w)
    raise AssertionError("non-split inclusion without a cyclic purity witness")


def quotient_tensor_check(m, m_sub, n, n_sub):
    """Compare M/M' (x) N/N' with (M (x) N)/(M' (x) N + M (x) N').

    ``m_sub`` and ``n_sub`` are inclusions into ``m`` and ``n``.  Raises
    HypothesisFailed unless M' is N-pure and N' is M-pure.
    """
    if not is_x_pure(m_sub, n):
        raise HypothesisFailed("M' is not N-pure")
    if not is_x_pure(n_sub, m):
        raise HypothesisFailed("N' is not M-pure")
    left = tensor_module(quotient(m, m_sub), quotient(n, n_sub))
    R = m.ring
    mn = tensor_module(m, n)
    rels = vstack_all(
        R,
        mn.ngens,
        [
            mn.relations,
            kronecker(m_sub.matrix, RMatrix.identity(R, n.ngens)),
            kronecker(RMatrix.identity(R, m.ngens), n_sub.matrix),
        ],
    )
    right = FPModule(R, mn.ngens, rels)
    return left.isomorphic(right)


def same_submodule(m, vs, ws):
    """True when the vectors ``vs`` and ``ws`` generate the same submodule of m."""
    R = m.ring
    a = row_span_form(vstack_all(R, m.ngens, [RMatrix(R, [list(v) for v in vs], m.ngens) if vs else RMatrix.zeros(R, 0, m.ngens), m.relations]))
    b = row_span_form(vstack_all(R, m.ngens, [RMatrix(R, [list(v) for v in ws], m.ngens) if ws else RMatrix.zeros(R, 0, m.ngens), m.relations]))
    return a == b


def intersect_submodules(m, vs, ws):
    """Generators of <vs> + rel  intersected with  <ws> + rel, inside m."""
    R = m.ring
    g = m.ngens
    V = RMatrix(R, [list(v) for v in vs], g) if vs else RMatrix.zeros(R, 0, g)
    W = RMatrix(R, [list(w) for w in ws], g) if ws else RMatrix.zeros(R, 0, g)
    K = kernel(vstack_all(R, g, [V, W.scale(-1), m.relations]))
    out = []
    for r in K.rows:
        out.append(m.canonical(V.vecmul(r[: V.nrows])))
    return [v for v in out if any(v)]


def in_submodule(m, vs, v):
    R = m.ring
    g = m.ngens
    V = RMatrix(R, [list(x) for x in vs], g) if vs else RMatrix.zeros(R, 0, g)
    return solve(vstack_all(R, g, [V, m.relations]), v) is not None
