"""Elements and structure of the finite dual of a filtered algebra.

A functional whose kernel contains a cofinite ideal I from the owner's
canonical family is stored as a coefficient vector on the dual basis of the
free quotient A/I.  All structure maps (comultiplication dual to the
product, product dual to the coproduct, antipode, actions, the tensor
isomorphism) are computed on these quotients and land again in that form.
"""

from dataclasses import dataclass

from . import polys as P
from .algebras import FilteredAlgebra, IdealSpec, PresentedQuotient, TensorFamily
from .errors import (
    InvalidIdeal,
    InvariantFailure,
    NotContained,
    OwnerMismatch,
    PrefixTooShort,
    RingMismatch,
)
from .linalg import RMatrix, charpoly, kronecker, solve
from .modules import (
    INFINITY,
    FPModule,
    ModuleMap,
    direct_sum,
    dual_module_with_embedding,
    element_order,
    tensor_module,
)


class DualElement:
    """A functional on ``owner`` that factors through ``owner/ideal``."""

    __slots__ = ("owner", "ideal", "functional")

    def __init__(self, owner, ideal, functional):
        self.owner = owner
        self.ideal = ideal
        self.functional = functional

    @property
    def ring(self):
        return self.owner.ring

    @property
    def truncation(self):
        return self.owner.truncate(self.ideal)

    def key_value(self, key):
        v = self.owner.reduce_key(key, self.ideal)
        return self.ring(sum(a * b for a, b in zip(v, self.functional)))

    def __call__(self, x):
        """Evaluate at a family element (a dict)."""
        return self.ring(sum(c * self.key_value(k) for k, c in x.items()))

    def is_zero(self):
        return not any(self.functional)

    def __repr__(self):
        vals = ", ".join(self.ring.fmt(c) for c in self.functional)
        return f"DualElement(ideal={self.ideal.describe()}, [{vals}])"

    def record(self):
        """Serializable description."""
        return {
            "family": repr(self.owner),
            "ideal": self.ideal.describe(),
            "basis": list(self.truncation.algebra.labels),
            "functional": [_plain(c) for c in self.functional],
        }


def _plain(c):
    from fractions import Fraction

    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else str(c)
    return c


def dual_element(a, ideal, functional):
    """Validated DualElement; ``ideal`` may be an IdealSpec or generator list."""
    if not isinstance(ideal, IdealSpec):
        ideal = a.ideal(*ideal)
    if ideal.owner != a:
        raise InvalidIdeal("ideal belongs to a different algebra")
    t = a.truncate(ideal)
    functional = tuple(a.ring(c) for c in functional)
    if len(functional) != t.algebra.rank:
        raise InvalidIdeal(f"functional needs {t.algebra.rank} values on {t.algebra.labels}")
    return DualElement(a, ideal, functional)


def evaluate(f, x):
    return f(x)


def zero_dual(a, ideal=None):
    if ideal is None:
        ideal = a.counit_ideal()
    return dual_element(a, ideal, [0] * a.truncate(ideal).algebra.rank)


def refine(f, finer):
    """The same functional seen on A/finer, for finer contained in f.ideal."""
    a = f.owner
    if not isinstance(finer, IdealSpec):
        finer = a.ideal(*finer)
    if finer.owner != a:
        raise OwnerMismatch("ideal belongs to a different algebra")
    if not a.contains(finer, f.ideal):
        raise NotContained(f"{finer.describe()} is not contained in {f.ideal.describe()}")
    t = a.truncate(finer)
    return DualElement(a, finer, tuple(f.key_value(k) for k in t.keys))


def dual_equal(f, g):
    """Equality decided on the product refinement of both ideals."""
    if f.owner != g.owner:
        raise OwnerMismatch("functionals on different algebras")
    if f.ideal == g.ideal:
        return f.functional == g.functional
    k = f.owner.common_refinement(f.ideal, g.ideal)
    return refine(f, k).functional == refine(g, k).functional


def dual_add(f, g):
    if f.owner != g.owner:
        raise OwnerMismatch("functionals on different algebras")
    if f.ideal != g.ideal:
        k = f.owner.common_refinement(f.ideal, g.ideal)
        f, g = refine(f, k), refine(g, k)
    return DualElement(f.owner, f.ideal, tuple(f.ring(a + b) for a, b in zip(f.functional, g.functional)))


def dual_scale(c, f):
    return DualElement(f.owner, f.ideal, tuple(f.ring(c * a) for a in f.functional))


def evaluation_functional(a, point):
    """Evaluation at a point (one coordinate per variable; units for Laurent)."""
    R = a.ring
    point = [R(p) for p in point]
    gens = [P.canon(R, (-p, 1)) for p in point]
    return dual_element(a, a.ideal(*gens), [1])


# ---------------------------------------------------------------------------
# linearly recurrent sequences


@dataclass(frozen=True)
class SequenceFunctional:
    ring: object
    prefix: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.ring(s) for s in self.prefix))


def membership_annihilator(s, bound=None):
    """Least-degree monic q with sum_j q_j s_{k+j} = 0 on every window of the prefix.

    ``bound`` defaults to half the prefix length; the prefix must hold at
    least ``2*bound`` values.  Returns None when no monic recurrence of degree
    at most ``bound`` fits.
    """
    R, seq = s.ring, s.prefix
    n = len(seq)
    if bound is None:
        bound = n // 2
    if n < 2 * bound:
        raise PrefixTooShort(f"need {2 * bound} terms for bound {bound}, got {n}")
    for d in range(bound + 1):
        windows = n - d
        if d == 0:
            if not any(seq):
                return (R.one,)
            continue
        m = RMatrix(R, [[seq[k + j] for k in range(windows)] for j in range(d)], windows)
        b = [R(-seq[k + d]) for k in range(windows)]
        x = solve(m, b)
        if x is not None:
            return tuple(x) + (R.one,)
    return None


def sequence_dual_element(a, s, bound=None):
    """The element of R[x]-dual with f(x^k) = s_k, if the prefix is recurrent."""
    if a.nvars != 1 or a.laurent:
        raise InvalidIdeal("sequence functionals live on one-variable polynomial algebras")
    q = membership_annihilator(s, bound)
    if q is None:
        return None
    n = len(q) - 1
    return dual_element(a, a.ideal(q), s.prefix[:n])


# ---------------------------------------------------------------------------
# coalgebra and algebra structure


def comultiply_matrix(f):
    """Matrix of values f(e_i e_j) on the truncation basis."""
    A = f.truncation.algebra
    n = A.rank
    return [[f.ring(sum(a * b for a, b in zip(A.basis_product(i, j), f.functional))) for j in range(n)] for i in range(n)]


def dual_comultiply(f):
    """Delta(f) = sum_i e_i* (x) (sum_j f(e_i e_j) e_j*), zero terms dropped."""
    M = comultiply_matrix(f)
    n = len(M)
    out = []
    for i in range(n):
        if any(M[i]):
            ei = tuple(f.ring.one if j == i else f.ring.zero for j in range(n))
            out.append((DualElement(f.owner, f.ideal, ei), DualElement(f.owner, f.ideal, tuple(M[i]))))
    return out


def pair_value(pairs, a, b):
    """sum_i g_i(a) h_i(b) for a list of pairs of DualElements."""
    if not pairs:
        return 0
    R = pairs[0][0].ring
    return R(sum(g(a) * h(b) for g, h in pairs))


class DualStructure:
    """Bialgebra (Hopf) structure on the finite dual of a flavored family."""

    def __init__(self, a):
        a.require_flavor()
        self.a = a

    @property
    def has_antipode(self):
        return self.a.has_antipode

    def comultiply(self, f):
        return dual_comultiply(f)

    def counit(self, f):
        return f(self.a.one())

    def unit(self):
        a = self.a
        ideal = a.counit_ideal()
        t = a.truncate(ideal)
        return DualElement(a, ideal, tuple(a.counit_key(k) for k in t.keys))

    def multiply(self, f, g):
        """(fg)(x) = sum f(x_1) g(x_2), on the ideal killed by Delta^-1(I (x) A + A (x) J)."""
        a = self.a
        if f.owner != a or g.owner != a:
            raise OwnerMismatch("functionals on different algebras")
        k = a.product_ideal(f.ideal, g.ideal)
        for gen in a.generator_elements(k):
            v = sum(c * f.key_value(k1) * g.key_value(k2) for (k1, k2), c in _coproduct_pairs(a, gen))
            if a.ring(v) != 0:
                raise InvariantFailure(a.fmt(gen), "product ideal is not killed by the convolution")
        t = a.truncate(k)
        vals = []
        for key in t.keys:
            vals.append(a.ring(sum(c * f.key_value(k1) * g.key_value(k2) for (k1, k2), c in a.coproduct_key(key).items())))
        return DualElement(a, k, tuple(vals))

    def antipode(self, f):
        """f o S on an ideal J with S(J) inside f.ideal."""
        a = self.a
        j = a.antipode_ideal(f.ideal)
        for gen in a.generator_elements(j):
            if any(a.reduce(a.antipode(gen), f.ideal)):
                raise InvariantFailure(a.fmt(gen), "antipode does not map the ideal into the kernel")
        t = a.truncate(j)
        return DualElement(a, j, tuple(f(a.antipode({k: 1})) for k in t.keys))


def _coproduct_pairs(a, x):
    return a.coproduct(x).items()


def dual_structure(a):
    return DualStructure(a)


def bimodule_action(side, x, f):
    """(x -> f)(b) = f(b x) for side 'left'; (f <- x)(b) = f(x b) for side 'right'."""
    a = f.owner
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    t = f.truncation
    vals = []
    for key in t.keys:
        b = {key: a.ring.one}
        prod = a.mul(b, x) if side == "left" else a.mul(x, b)
        vals.append(f(prod))
    return DualElement(a, f.ideal, tuple(vals))


# ---------------------------------------------------------------------------
# tensor products


def tensor_dual(f, g):
    """pi(f (x) g)(a (x) b) = f(a) g(b), on the ideal I (x) B + A (x) J."""
    if f.ring != g.ring:
        raise RingMismatch("factors over different rings")
    T = TensorFamily(f.owner, g.owner)
    ideal = IdealSpec(T, (f.ideal, g.ideal))
    vals = kronecker(RMatrix.row_vector(f.ring, f.functional), RMatrix.row_vector(g.ring, g.functional)).rows[0]
    return DualElement(T, ideal, vals)


def tensor_dual_element(T, generators, functional, bound=64):
    """h in the dual of A (x) B vanishing on the ideal K generated by ``generators``.

    A split ideal I0 (x) B + A (x) J0 inside K is found first; ``functional``
    gives h on the free quotient A/I0 (x) B/J0 and is checked to kill K.
    """
    split = T.p_ell_witness(generators, bound)
    h = dual_element(T, split, functional)
    t = h.truncation
    for gen in generators:
        gen = T.element(gen)
        for key in t.keys:
            if h(T.mul({key: T.ring.one}, gen)) != 0:
                raise InvalidIdeal(f"functional does not vanish on the generator {T.fmt(gen)}")
    return h


def tensor_dual_inverse(h):
    """Write h as sum f_i (x) g_i; the f_i run over the dual basis of A/I0."""
    T = h.owner
    if not isinstance(T, TensorFamily):
        raise OwnerMismatch("expected a functional on a tensor family")
    ia, ib = h.ideal.generators
    ra = T.a.truncate(ia).algebra.rank
    rb = T.b.truncate(ib).algebra.rank
    R = T.ring
    out = []
    for i in range(ra):
        row = h.functional[i * rb:(i + 1) * rb]
        if any(row):
            ei = tuple(R.one if j == i else R.zero for j in range(ra))
            out.append((DualElement(T.a, ia, ei), DualElement(T.b, ib, tuple(row))))
    return out


def tensor_sum_equal(xs, ys):
    """Equality of two sums of pure tensors of DualElements, as functionals on A (x) B."""
    if not xs and not ys:
        return True
    items = list(xs) + list(ys)
    a, b = items[0][0].owner, items[0][1].owner
    ia = ib = None
    for f, g in items:
        ia = f.ideal if ia is None else a.common_refinement(ia, f.ideal)
        ib = g.ideal if ib is None else b.common_refinement(ib, g.ideal)

    def total(pairs):
        acc = None
        for f, g in pairs:
            v = tensor_dual(refine(f, ia), refine(g, ib)).functional
            acc = v if acc is None else tuple(a.ring(p + q) for p, q in zip(acc, v))
        return acc

    n = a.truncate(ia).algebra.rank * b.truncate(ib).algebra.rank
    zero = (a.ring.zero,) * n
    return (total(xs) or zero) == (total(ys) or zero)


# ---------------------------------------------------------------------------
# functoriality along algebra maps given on generators


def pullback(f, source, images):
    """phi-dual of f, where phi: source -> f.owner sends variable v to images[v].

    The ideal on the source side has, per variable, the characteristic
    polynomial of multiplication by phi(y_v) on f.owner/f.ideal, which is
    mapped into f.ideal by Cayley-Hamilton.
    """
    a = f.owner
    t = f.truncation
    imgs = [a.element(x) if not isinstance(x, dict) else x for x in images]
    gens = []
    for img in imgs:
        gens.append(tuple(charpoly(t.algebra.left_matrix(t.proj(img)))))
    ideal = source.ideal(*gens)
    st = source.truncate(ideal)

    def phi_key(key):
        acc = a.one()
        for e, img in zip(key, imgs):
            for _ in range(e):
                acc = a.mul(acc, img)
        return acc

    return DualElement(source, ideal, tuple(f(phi_key(k)) for k in st.keys))


# ---------------------------------------------------------------------------
# truncations of non-free quotients and the purity probe


@dataclass
class DualOrderTable:
    algebra: str
    dual_invariants: tuple
    entries: list  # (values on 1, x, ..., order)

    def orders(self):
        return sorted({o for _, o in self.entries}, key=lambda o: (o == INFINITY, o))


def truncation_dual_orders(q):
    """Every element of Hom(q, R) for a finite presented quotient, with its additive order."""
    if not isinstance(q, PresentedQuotient):
        raise InvalidIdeal("expected a presented quotient")
    D, emb = dual_module_with_embedding(q.module)
    entries = []
    seen = set()
    for v in D.elements():
        vals = emb.vecmul(v) if emb.nrows else tuple([q.ring.zero] * q.n)
        if vals in seen:
            continue
        seen.add(vals)
        entries.append((vals, element_order(D, v)))
    entries.sort()
    return DualOrderTable(repr(q), D.invariants, entries)


@dataclass
class ProbeVerdict:
    """Outcome of checking (A/I)* (x) X -> X^(A/I) at one truncation.

    A probe only sees one truncation and one test module; it never certifies
    purity of the whole finite dual.
    """

    injective: bool
    kernel_element: tuple
    quotient_invariants: tuple
    dual_invariants: tuple
    tensor_invariants: tuple
    test_module: str

    def as_dict(self):
        return {
            "injective": self.injective,
            "kernel_element": list(self.kernel_element) if self.kernel_element else None,
            "quotient": list(self.quotient_invariants),
            "dual": list(self.dual_invariants),
            "dual_tensor_X": list(self.tensor_invariants),
            "X": self.test_module,
        }


def purity_probe(a, trunc_level, test_module):
    """Injectivity of (A/I)* (x) X -> X^n, n the number of generators of A/I.

    ``a`` is a FilteredAlgebra with ``trunc_level`` an IdealSpec, or a
    PresentedQuotient (``trunc_level`` ignored).
    """
    if isinstance(a, PresentedQuotient):
        Q = a.module
    elif isinstance(a, FilteredAlgebra):
        Q = FPModule.free(a.ring, a.truncate(trunc_level).algebra.rank)
    elif isinstance(a, FPModule):
        Q = a
    else:
        raise InvalidIdeal("purity_probe needs a family with an ideal or a presented quotient")
    X = test_module
    if X.ring != Q.ring:
        raise RingMismatch("test module over a different ring")
    D, emb = dual_module_with_embedding(Q)
    DX = tensor_module(D, X)
    target = direct_sum(*([X] * Q.ngens)) if Q.ngens else FPModule(Q.ring, 0)
    if D.ngens == 0 or X.ngens == 0:
        return ProbeVerdict(True, None, Q.invariants, D.invariants, DX.invariants, X.describe())
    mat = kronecker(emb, RMatrix.identity(Q.ring, X.ngens))
    alpha = ModuleMap(DX, target, mat)
    w = alpha.kernel_witness()
    return ProbeVerdict(w is None, w, Q.invariants, D.invariants, DX.invariants, X.describe())


__all__ = [
    "DualElement",
    "dual_element",
    "evaluate",
    "refine",
    "dual_equal",
    "dual_add",
    "dual_scale",
    "evaluation_functional",
    "SequenceFunctional",
    "membership_annihilator",
    "sequence_dual_element",
    "comultiply_matrix",
    "dual_comultiply",
    "pair_value",
    "DualStructure",
    "dual_structure",
    "bimodule_action",
    "tensor_dual",
    "tensor_dual_element",
    "tensor_dual_inverse",
    "tensor_sum_equal",
    "pullback",
    "truncation_dual_orders",
    "DualOrderTable",
    "purity_probe",
    "ProbeVerdict",
]
