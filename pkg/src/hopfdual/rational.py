"""Rational systems and pairings, rational elements and the module/comodule dictionary.

A pairing is a Gram matrix ``gram[i][j] = <c_i | a_j>`` between the basis of a
free coalgebra C (or a bare free module P for a rational system) and the
basis of an algebra A.  Modules over A are ``AlgebraModule`` records: a
finitely presented R-module with one action matrix per basis element of A
(row convention, ``a_j . v = v @ basis_actions[j]``).  Truncated pairings of a
finite dual against an infinite family also carry annihilator matrices that a
rational element must be killed by.
"""

from dataclasses import dataclass, field

from .algebras import SCAlgebra, tensor_algebra
from .errors import NotRational, ProbeInsufficient, RingMismatch, ShapeMismatch
from .hopf import CoalgebraData, Comodule, check_coalgebra, dual_algebra, dual_coalgebra, tensor_coalgebra
from .linalg import RMatrix, kernel, kronecker, reduce_vector, row_span_form, solve, vstack_all
from .modules import FPModule, ModuleMap, direct_sum, purity_battery, submodule, tensor_module
from .report import Report


@dataclass(frozen=True, eq=False)
class Pairing:
    """``<c_i | a_j> = gram[i][j]``; ``coalg`` may be None for a bare rational system."""

    alg: SCAlgebra
    gram: RMatrix
    coalg: CoalgebraData = None
    family: object = None
    ideal: object = None

    def __post_init__(self):
        if self.gram.ncols != self.alg.rank:
            raise ShapeMismatch("Gram matrix columns must match the algebra rank")
        if self.coalg is not None:
            if self.coalg.ring != self.alg.ring:
                raise RingMismatch("coalgebra and algebra over different rings")
            if self.gram.nrows != self.coalg.rank:
                raise ShapeMismatch("Gram matrix rows must match the coalgebra rank")

    @property
    def ring(self):
        return self.alg.ring

    @property
    def prank(self):
        return self.gram.nrows

    def value(self, c, a):
        """<c | a> for coordinate vectors."""
        return self.ring(sum(x * y for x, y in zip(self.gram.vecmul(c), a)))


@dataclass(frozen=True, eq=False)
class AlgebraModule:
    module: FPModule
    basis_actions: tuple
    annihilators: tuple = ()

    @property
    def ring(self):
        return self.module.ring

    @property
    def ngens(self):
        return self.module.ngens

    def act(self, j, v):
        return self.module.canonical(self.basis_actions[j].vecmul(v))

    def same_action(self, other):
        if len(self.basis_actions) != len(other.basis_actions):
            return False
        m = self.module
        for a, b in zip(self.basis_actions, other.basis_actions):
            for i in range(m.ngens):
                if not m.equal(a.rows[i], b.rows[i]):
                    return False
        return True


@dataclass
class RationalParameters:
    """The tensor t = sum m_i (x) c_i in M (x) C, reduced modulo ker(alpha) and relations."""

    tensor: tuple
    pairs: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# constructions


def canonical_pairing(c):
    """(C, C*) with the dual-basis Gram matrix."""
    return Pairing(dual_algebra(c), RMatrix.identity(c.ring, c.rank), c)


def algebra_dual_pairing(a):
    """(A*, A) for a free finite algebra A."""
    return Pairing(a, RMatrix.identity(a.ring, a.rank), dual_coalgebra(a))


def truncated_dual_pairing(family, ideal):
    """(A/I)* against A, realized on the truncation basis.

    Module data for this pairing comes from :func:`family_module`, which adds
    the ideal generators as annihilators so that rationality refers to the
    whole algebra and not just the coset representatives.
    """
    t = family.truncate(ideal)
    c = dual_coalgebra(t.algebra)
    return Pairing(t.algebra, RMatrix.identity(family.ring, t.algebra.rank), c, family, ideal)


def bilinear_system(ring, gram, alg):
    """A bare rational system: no coalgebra, only the form."""
    return Pairing(alg, RMatrix(ring, gram, alg.rank) if not isinstance(gram, RMatrix) else gram)


def induced_tensor_pairing(p, q):
    """Pairing of P (x) Q with A (x) B by the Kronecker product of the Gram matrices."""
    if p.ring != q.ring:
        raise RingMismatch("pairings over different rings")
    alg = tensor_algebra(p.alg, q.alg)
    coalg = tensor_coalgebra(p.coalg, q.coalg) if p.coalg is not None and q.coalg is not None else None
    return Pairing(alg, kronecker(p.gram, q.gram), coalg)


def family_module(family, module, var_actions, p):
    """AlgebraModule for a truncated pairing from commuting variable actions.

    ``var_actions[v]`` is the matrix of x_v (invertible for Laurent families).
    Basis actions are the monomials of the truncation basis; annihilators are
    the ideal generators q_v(X_v).
    """
    R = family.ring
    g = module.ngens
    mats = [m if isinstance(m, RMatrix) else RMatrix(R, m, g) for m in var_actions]
    t = family.truncate(p.ideal)

    def power(m, e):
        from .linalg import inverse

        base = m
        if e < 0:
            base = inverse(m)
            if base is None:
                raise ShapeMismatch("variable action is not invertible")
            e = -e
        acc = RMatrix.identity(R, g)
        for _ in range(e):
            acc = acc @ base
        return acc

    def monomial(key):
        acc = RMatrix.identity(R, g)
        for m, e in zip(mats, key):
            acc = acc @ power(m, e)
        return acc

    actions = tuple(monomial(k) for k in t.keys)
    anns = []
    for v, q in enumerate(p.ideal.generators):
        acc = RMatrix.zeros(R, g, g)
        for e, c in enumerate(q):
            if c != 0:
                acc = acc + power(mats[v], e).scale(c)
        anns.append(acc)
    return AlgebraModule(module, actions, tuple(anns))


def regular_module(a):
    """A acting on itself by left multiplication."""
    m = FPModule.free(a.ring, a.rank)
    # a_j . v = a_j v; row i of the matrix is a_j e_i
    acts = tuple(
        RMatrix(a.ring, [a.mul(a.basis(j), a.basis(i)) for i in range(a.rank)], a.rank) for j in range(a.rank)
    )
    return AlgebraModule(m, acts)


# ---------------------------------------------------------------------------
# alpha maps and pairing checks


@dataclass
class AlphaResult:
    map: ModuleMap
    injective: bool
    witness: tuple


def alpha_map(m, p):
    """alpha_M: M (x) P -> Hom(A, M) = M^rank(A), m (x) c -> (a_j -> <c|a_j> m).

    Generator (g, i) of M (x) P has index g*rank(P) + i; component j of the
    target is the j-th copy of M.
    """
    R = p.ring
    if m.ring != R:
        raise RingMismatch("module and pairing over different rings")
    gm, nc, na = m.ngens, p.prank, p.alg.rank
    src = tensor_module(m, FPModule.free(R, nc))
    tgt = direct_sum(*([m] * na)) if na else FPModule(R, 0)
    rows = []
    for g in range(gm):
        for i in range(nc):
            r = [0] * (na * gm)
            for j in range(na):
                r[j * gm + g] = p.gram.rows[i][j]
            rows.append(r)
    mat = RMatrix(R, rows, na * gm) if rows else RMatrix.zeros(R, 0, na * gm)
    f = ModuleMap(src, tgt, mat, check=False)
    w = f.kernel_witness() if gm and nc else None
    return AlphaResult(f, w is None, w)


def alpha_battery(ring):
    if ring.kind == "Z":
        from .modules import direct_sum as ds

        return [FPModule.free(ring, 1), FPModule.cyclic(ring, 2), FPModule.cyclic(ring, 4),
                ds(FPModule.cyclic(ring, 2), FPModule.cyclic(ring, 3))]
    return purity_battery(ring)


def check_rational_pairing(p, battery=True):
    report = Report("rational pairing")
    R, G, A = p.ring, p.gram, p.alg
    if p.coalg is not None:
        check_coalgebra(p.coalg, report)
        C = p.coalg
        report.ran("pairing multiplicative")
        lhs = (A.mult_matrix @ G.T).T  # row i, column j*n+k: <c_i | a_j a_k>
        rhs = C.comult @ kronecker(G, G)
        if lhs != rhs:
            n = A.rank
            for i in range(C.rank):
                if lhs.rows[i] != rhs.rows[i]:
                    p_ = next(k for k in range(n * n) if lhs.rows[i][k] != rhs.rows[i][k])
                    report.fail("pairing multiplicative", (i, p_ // n, p_ % n))
                    break
        report.ran("pairing unital")
        unit_vals = tuple((G @ RMatrix(R, [[u] for u in A.unit], 1)).col(0))
        if unit_vals != C.counit:
            i = next(k for k in range(C.rank) if unit_vals[k] != C.counit[k])
            report.fail("pairing unital", i, "<c | 1> != eps(c)")
    if battery:
        for X in alpha_battery(R):
            report.ran(f"alpha injective for {X.describe()}")
            res = alpha_map(X, p)
            if not res.injective:
                report.fail("alpha injective", (X.describe(), res.witness))
    return report


# ---------------------------------------------------------------------------
# rational elements


def _alpha_block(am, p):
    """Matrix of alpha on free coordinates and the target relation block."""
    R = p.ring
    g, na = am.ngens, p.alg.rank
    alpha = alpha_map(am.module, p).map.matrix
    rel = am.module.relations
    relblock = kronecker(RMatrix.identity(R, na), rel) if rel.nrows else RMatrix.zeros(R, 0, na * g)
    return alpha, relblock


def _action_vector(am, v):
    out = []
    for B in am.basis_actions:
        out.extend(B.vecmul(v))
    return tuple(out)


def _killed(am, v):
    return all(am.module.is_zero(N.vecmul(v)) for N in am.annihilators)


def _check_shapes(am, p):
    if len(am.basis_actions) != p.alg.rank:
        raise ShapeMismatch("one action matrix per algebra basis element is required")
    if am.ring != p.ring:
        raise RingMismatch("module and pairing over different rings")


def rational_parameters(am, m, p):
    """Canonical t in M (x) C with a_j . m = alpha(t)_j for every j, or None."""
    _check_shapes(am, p)
    R = p.ring
    m = tuple(R(x) for x in m)
    if not _killed(am, m):
        return None
    alpha, relblock = _alpha_block(am, p)
    n_t = alpha.nrows
    big = vstack_all(R, alpha.ncols, [alpha, relblock])
    x = solve(big, _action_vector(am, m)) if big.nrows else (None if any(_action_vector(am, m)) else ())
    if x is None:
        return None
    t = tuple(x[:n_t])
    # canonical representative modulo ker(alpha) and the relations of M (x) C
    kgens = [r[:n_t] for r in kernel(big).rows] if big.nrows else []
    src = alpha_map(am.module, p).map.source
    red = vstack_all(R, n_t, [RMatrix(R, kgens, n_t) if kgens else RMatrix.zeros(R, 0, n_t), src.relations])
    t = reduce_vector(t, row_span_form(red)) if red.nrows else t
    nc = p.prank
    pairs = []
    for i in range(nc):
        mi = tuple(t[g * nc + i] for g in range(am.ngens))
        if any(mi):
            pairs.append((mi, i))
    return RationalParameters(t, pairs)


def rat_submodule(am, p):
    """Generators (canonical span) of Rat(M) = {m : rational parameters exist}.

    Solves jointly for (m, t): the m-part of the kernel of
    [actions | annihilators] over [m; -alpha(t); relation slack] is Rat(M).
    """
    _check_shapes(am, p)
    R = p.ring
    g = am.ngens
    if g == 0:
        return []
    alpha, relblock = _alpha_block(am, p)
    na = p.alg.rank
    anns = list(am.annihilators)
    rel = am.module.relations
    width = na * g + g * len(anns)
    rows = []
    for i in range(g):
        r = []
        for B in am.basis_actions:
            r.extend(B.rows[i])
        for N in anns:
            r.extend(N.rows[i])
        rows.append(r)
    pad = [0] * (g * len(anns))
    rows += [[-x for x in r] + pad for r in alpha.rows]
    rows += [[-x for x in r] + pad for r in relblock.rows]
    for k in range(len(anns)):
        for r in rel.rows:
            rows.append([0] * (na * g + k * g) + [-x for x in r] + [0] * ((len(anns) - k - 1) * g))
    if width == 0:
        gens = [tuple(R.one if i == j else R.zero for i in range(g)) for j in range(g)]
    else:
        gens = [tuple(r[:g]) for r in kernel(RMatrix(R, rows, width)).rows]
    gens = [am.module.canonical(v) for v in gens]
    return span_generators(am.module, [v for v in gens if any(v)])


def span_generators(module, vectors):
    """Canonical generators of the submodule spanned by ``vectors`` (relations reduced out)."""
    R = module.ring
    g = module.ngens
    rel = module.relation_form
    if not vectors:
        return []
    form = row_span_form(vstack_all(R, g, [RMatrix(R, [list(v) for v in vectors], g), rel]))
    relset = set(rel.rows)
    return [r for r in form.rows if r not in relset and not module.is_zero(r)] or []


def same_span(module, vs, ws):
    R, g = module.ring, module.ngens
    rel = module.relations

    def form(xs):
        mats = [RMatrix(R, [list(v) for v in xs], g)] if xs else []
        return row_span_form(vstack_all(R, g, mats + [rel]))

    return form(vs) == form(ws)


def intersect_spans(module, vs, ws):
    from .modules import intersect_submodules

    return intersect_submodules(module, vs, ws)


def restrict_module(am, vectors):
    """The A-submodule generated by ``vectors`` (assumed A-stable) with its own action.

    Returns (submodule AlgebraModule, inclusion matrix).  Raises ValueError if
    the span is not stable.
    """
    R = am.ring
    g = am.ngens
    sub, incl = submodule(am.module, vectors)
    V = incl.matrix
    stack = vstack_all(R, g, [V, am.module.relations])
    acts = []
    for B in am.basis_actions:
        rows = []
        for w in V.rows:
            x = solve(stack, B.vecmul(w))
            if x is None:
                raise ValueError("span is not stable under the action")
            rows.append(x[: V.nrows])
        acts.append(RMatrix(R, rows, V.nrows) if rows else RMatrix.zeros(R, 0, 0))
    anns = []
    for N in am.annihilators:
        rows = []
        for w in V.rows:
            x = solve(stack, N.vecmul(w))
            if x is None:
                raise ValueError("span is not stable under the annihilators")
            rows.append(x[: V.nrows])
        anns.append(RMatrix(R, rows, V.nrows) if rows else RMatrix.zeros(R, 0, 0))
    return AlgebraModule(sub, tuple(acts), tuple(anns)), V


def stable_closure(am, vectors):
    """Smallest A-submodule containing ``vectors`` (as canonical generators).

    Annihilator matrices are included: for a truncated pairing A is spanned by
    the basis monomials together with the ideal.
    """
    gens = span_generators(am.module, vectors)
    while True:
        more = list(gens)
        for B in am.basis_actions + am.annihilators:
            more += [B.vecmul(v) for v in gens]
        nxt = span_generators(am.module, more)
        if same_span(am.module, nxt, gens):
            return nxt
        gens = nxt


# ---------------------------------------------------------------------------
# rational modules and comodules


def to_comodule(am, p):
    """Coaction rho(e_g) = canonical rational parameters of e_g (M must be free)."""
    if p.coalg is None:
        raise ShapeMismatch("a coalgebra is needed to build a comodule")
    if am.module.relations.nrows:
        raise ShapeMismatch("to_comodule works on free modules")
    rows = []
    R = p.ring
    for gi in range(am.ngens):
        e = tuple(R.one if k == gi else R.zero for k in range(am.ngens))
        params = rational_parameters(am, e, p)
        if params is None:
            raise NotRational(e)
        rows.append(params.tensor)
    return Comodule(p.coalg, am.ngens, RMatrix(R, rows, am.ngens * p.prank))


def to_module(com, p):
    """a_j . m = sum m_0 <m_1 | a_j>."""
    R = p.ring
    m = com.rank
    acts = []
    for j in range(p.alg.rank):
        col = RMatrix(R, [[p.gram.rows[i][j]] for i in range(p.prank)], 1)
        acts.append(com.coaction @ kronecker(RMatrix.identity(R, m), col))
    anns = ()
    if p.family is not None:
        anns = tuple(RMatrix.zeros(R, m, m) for _ in p.ideal.generators)
    return AlgebraModule(FPModule.free(R, m), tuple(acts), anns)


def comodule_from_coalgebra(c):
    """C as a right comodule over itself via Delta."""
    return Comodule(c, c.rank, c.comult)


# ---------------------------------------------------------------------------
# mock-projective witnesses


@dataclass
class MockProjectiveWitness:
    chosen: list  # indices into the probe
    g_values: list  # g_l on the probe, one row per chosen index
    values: list  # p_i on the probe

    def verify(self, ring):
        n = len(self.values)
        s = len(self.values[0]) if n else 0
        for i in range(n):
            for t in range(s):
                rhs = sum(self.values[i][a] * self.g_values[l][t] for l, a in enumerate(self.chosen))
                if ring(rhs) != self.values[i][t]:
                    return False
        return True


def mock_projective_witness(ring, values, holdout=0):
    """Witness p_i = sum_l p_i(a_l) g_l on a probe set.

    ``values[i][s]`` is p_i evaluated at the s-th probe element.  Probe
    elements are chosen greedily until their value tuples generate the span of
    all value tuples; g_l(a_s) are the coefficients expressing the tuple of
    a_s in the chosen ones.  With ``holdout = h`` the last h probe elements
    must already be generated by the choice made on the rest, otherwise
    ProbeInsufficient is raised.
    """
    values = [[ring(v) for v in row] for row in values]
    n = len(values)
    s = len(values[0]) if n else 0
    cols = [tuple(values[i][t] for i in range(n)) for t in range(s)]
    chosen = []
    limit = s - holdout
    for t in range(limit):
        if not any(cols[t]):
            continue
        if chosen:
            M = RMatrix(ring, [cols[c] for c in chosen], n)
            if solve(M, cols[t]) is not None:
                continue
        chosen.append(t)
    M = RMatrix(ring, [cols[c] for c in chosen], n) if chosen else RMatrix.zeros(ring, 0, n)
    g = [[ring.zero] * s for _ in chosen]
    for t in range(s):
        x = solve(M, cols[t])
        if x is None:
            raise ProbeInsufficient(f"probe element {t} is not generated by the earlier choice")
        for l, c in enumerate(x):
            g[l][t] = c
    w = MockProjectiveWitness(chosen, g, values)
    if not w.verify(ring):
        raise ProbeInsufficient("witness does not reproduce the functionals")
    return w


__all__ = [
    "Pairing",
    "AlgebraModule",
    "RationalParameters",
    "canonical_pairing",
    "algebra_dual_pairing",
    "truncated_dual_pairing",
    "bilinear_system",
    "induced_tensor_pairing",
    "family_module",
    "regular_module",
    "alpha_map",
    "AlphaResult",
    "check_rational_pairing",
    "rational_parameters",
    "rat_submodule",
    "span_generators",
    "same_span",
    "intersect_spans",
    "restrict_module",
    "stable_closure",
    "to_comodule",
    "to_module",
    "comodule_from_coalgebra",
    "mock_projective_witness",
    "MockProjectiveWitness",
]
