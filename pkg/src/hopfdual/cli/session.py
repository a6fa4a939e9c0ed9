"""Name resolution: turn parsed statements into library objects.

Every object statement is built (and thereby validated) when the session is
parsed, so a :class:`SessionSpec` only exists when all references resolve.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .. import polys as P
from ..algebras import (
    FilteredAlgebra,
    LaurentAlgebra,
    PolynomialAlgebra,
    PresentedQuotient,
    SCAlgebra,
    group_algebra,
    make_sc_algebra,
    tensor_algebra,
    truncated_polynomial_algebra,
)
from ..errors import HopfDualError, ParseError, RingMismatch, UnknownReference
from ..finite_dual import dual_element, evaluation_functional, sequence_dual_element, SequenceFunctional
from ..groups import group_by_name
from ..hopf import (
    CoalgebraData,
    HopfData,
    convolution_dual,
    dual_coalgebra,
    group_hopf_algebra,
    polynomial_bialgebras,
    tensor_hopf,
)
from ..linalg import RMatrix
from ..modules import FPModule
from ..rational import (
    AlgebraModule,
    algebra_dual_pairing,
    bilinear_system,
    canonical_pairing,
    family_module,
    regular_module,
    truncated_dual_pairing,
)
from ..rings import parse_ring
from ..smash import (
    ComoduleAlgebraData,
    DualPair,
    ModuleAlgebraAction,
    action_from_coaction,
    hopf_dual_pair,
    regular_coaction,
    smash_product,
    trivial_action,
    trivial_coaction,
)
from .syntax import Atom, Call, ListExpr, ObjectStmt, RingStmt, TaskStmt, parse_text, print_statements


@dataclass
class SessionSpec:
    ring: object
    statements: list
    objects: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)

    def text(self):
        return print_statements(self.statements)


class _Builder:
    def __init__(self):
        self.ring = None
        self.objects = {}

    # -- leaves ---------------------------------------------------------

    def fail(self, node, msg):
        line, col = getattr(node, "pos", (0, 0))
        return ParseError(line, col, msg)

    def ref(self, node, kinds=None):
        if not isinstance(node, Atom):
            raise self.fail(node, "expected a name")
        if node.text not in self.objects:
            raise UnknownReference(node.text, *node.pos)
        kind, obj = self.objects[node.text]
        if kinds and kind not in kinds:
            raise self.fail(node, f"{node.text} is a {kind}, expected {' or '.join(kinds)}")
        return obj

    def word(self, node):
        if not isinstance(node, Atom):
            raise self.fail(node, "expected a word")
        return node.text

    def number(self, node, ring=None):
        ring = ring or self.ring
        if not isinstance(node, Atom):
            raise self.fail(node, "expected a number")
        try:
            return ring(Fraction(node.text))
        except (ValueError, ZeroDivisionError, HopfDualError) as e:
            raise self.fail(node, f"bad number {node.text!r}: {e}") from None

    def vector(self, node, ring=None):
        if not isinstance(node, ListExpr):
            raise self.fail(node, "expected a list")
        return [self.number(x, ring) for x in node.items]

    def matrix(self, node, ncols=None, ring=None):
        if not isinstance(node, ListExpr):
            raise self.fail(node, "expected a matrix (list of rows)")
        rows = [self.vector(r, ring) for r in node.items]
        width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != width for r in rows):
            raise self.fail(node, f"matrix rows must have length {width}")
        return RMatrix(ring or self.ring, rows, width)

    def ring_of(self, call):
        r = call.kw("ring") if isinstance(call, Call) else None
        if r is None:
            return self.ring
        try:
            return parse_ring(self.word(r).replace("_", " "))
        except HopfDualError as e:
            raise self.fail(r, str(e)) from None

    def args(self, call, n, name):
        if len(call.args) != n:
            raise self.fail(call, f"{name} takes {n} positional argument(s), got {len(call.args)}")
        return call.args

    # -- objects --------------------------------------------------------

    def as_sc(self, node):
        obj = self.ref(node, ("algebra", "hopf"))
        if isinstance(obj, HopfData):
            return obj.alg
        if isinstance(obj, PresentedQuotient) and len(obj.relations) == 1:
            return truncated_polynomial_algebra(obj.ring, obj.monic, obj.var)
        if isinstance(obj, SCAlgebra):
            return obj
        raise self.fail(node, f"{node.text} is not a free finite algebra")

    def algebra(self, e):
        if not isinstance(e, Call):
            raise self.fail(e, "expected an algebra constructor")
        R = self.ring_of(e)
        if e.name == "group":
            (g,) = self.args(e, 1, "group")
            return group_algebra(R, group_by_name(self.word(g)))
        if e.name in ("poly", "laurent"):
            names = tuple(self.word(a) for a in e.args) or ("x",)
            fl = e.kw("flavor")
            flavor = self.word(fl) if fl is not None else "group_like"
            cls = PolynomialAlgebra if e.name == "poly" else LaurentAlgebra
            return cls(R, names, flavor)
        if e.name == "quotient":
            base, rels = self.args(e, 2, "quotient")
            if not (isinstance(base, Call) and base.name == "poly" and len(base.args) == 1):
                raise self.fail(base, "quotient needs poly(<var>) as its first argument")
            var = self.word(base.args[0])
            if not isinstance(rels, ListExpr):
                raise self.fail(rels, "expected a list of relations")
            polys = []
            for r in rels.items:
                try:
                    polys.append(P.m_to_univariate(R, P.parse_poly(R, self.word(r), (var,)), 0))
                except (ValueError, TypeError, SyntaxError) as ex:
                    raise self.fail(r, f"bad polynomial: {ex}") from None
            return PresentedQuotient(R, polys, var)
        if e.name == "table":
            labels = [self.word(x) for x in e.kw("labels", ListExpr(())).items]
            unit = self.vector(e.kw("unit"), R)
            mult = e.kw("mult")
            dense = [[self.vector(c, R) for c in row.items] for row in mult.items]
            return make_sc_algebra(R, labels, dense, unit)
        if e.name == "tensor":
            a, b = self.args(e, 2, "tensor")
            x, y = self.as_sc(a), self.as_sc(b)
            if x.ring != y.ring:
                raise RingMismatch("tensor factors over different rings")
            return tensor_algebra(x, y)
        if e.name == "smash":
            (a,) = self.args(e, 1, "smash")
            return smash_product(self.ref(a, ("action",))).algebra
        raise self.fail(e, f"unknown algebra constructor {e.name!r}")

    def hopf(self, e):
        if not isinstance(e, Call):
            raise self.fail(e, "expected a Hopf algebra constructor")
        R = self.ring_of(e)
        if e.name == "group":
            (g,) = self.args(e, 1, "group")
            return group_hopf_algebra(R, group_by_name(self.word(g)))
        if e.name == "dual":
            (h,) = self.args(e, 1, "dual")
            return convolution_dual(self.ref(h, ("hopf",)))
        if e.name == "tensor":
            a, b = self.args(e, 2, "tensor")
            x, y = self.ref(a, ("hopf",)), self.ref(b, ("hopf",))
            if x.ring != y.ring:
                raise RingMismatch("tensor factors over different rings")
            return tensor_hopf(x, y)
        if e.name == "truncation":
            fam, ideal = self.args(e, 2, "truncation")
            f = self.ref(fam, ("algebra",))
            i = self.ref(ideal, ("ideal",))
            if not isinstance(f, PolynomialAlgebra) or isinstance(f, LaurentAlgebra):
                raise self.fail(fam, "truncation needs a polynomial family")
            return polynomial_bialgebras(f.ring, f.nvars, f.flavor, i, f.names)
        if e.name == "table":
            alg = self.as_sc(e.kw("algebra"))
            n = alg.rank
            comult = self.matrix(e.kw("comult"), n * n, alg.ring)
            counit = tuple(self.vector(e.kw("counit"), alg.ring))
            c = CoalgebraData(alg.ring, n, comult, counit, alg.labels)
            s = e.kw("antipode")
            return HopfData(alg, c, self.matrix(s, n, alg.ring) if s is not None else None)
        raise self.fail(e, f"unknown Hopf constructor {e.name!r}")

    def coalgebra(self, e):
        if not isinstance(e, Call):
            raise self.fail(e, "expected a coalgebra constructor")
        if e.name == "dual":
            (a,) = self.args(e, 1, "dual")
            return dual_coalgebra(self.as_sc(a))
        if e.name == "of":
            (h,) = self.args(e, 1, "of")
            return self.ref(h, ("hopf",)).coalg
        if e.name == "table":
            R = self.ring_of(e)
            counit = tuple(self.vector(e.kw("counit"), R))
            n = len(counit)
            labels = tuple(self.word(x) for x in e.kw("labels", ListExpr(())).items)
            return CoalgebraData(R, n, self.matrix(e.kw("comult"), n * n, R), counit, labels)
        raise self.fail(e, f"unknown coalgebra constructor {e.name!r}")

    def ideal(self, e):
        if not (isinstance(e, Call) and e.name == "generated" and e.args):
            raise self.fail(e, "expected generated(<family>, <generator>, ...)")
        fam = self.ref(e.args[0], ("algebra",))
        if not isinstance(fam, FilteredAlgebra):
            raise self.fail(e.args[0], "ideals live in polynomial or Laurent families")
        return fam.ideal(*[self.word(g) for g in e.args[1:]])

    def pairing(self, e):
        if not isinstance(e, Call):
            raise self.fail(e, "expected a pairing constructor")
        if e.name == "dual":
            (h,) = self.args(e, 1, "dual")
            return hopf_dual_pair(self.ref(h, ("hopf",)))
        if e.name == "hopf":
            h, u, g = self.args(e, 3, "hopf")
            H, U = self.ref(h, ("hopf",)), self.ref(u, ("hopf",))
            if H.ring != U.ring:
                raise RingMismatch("paired Hopf algebras over different rings")
            return DualPair(H, U, self.matrix(g, H.rank, H.ring))
        if e.name == "canonical":
            (c,) = self.args(e, 1, "canonical")
            return canonical_pairing(self.ref(c, ("coalgebra",)))
        if e.name == "algebra":
            (a,) = self.args(e, 1, "algebra")
            return algebra_dual_pairing(self.as_sc(a))
        if e.name == "truncated":
            fam, ideal = self.args(e, 2, "truncated")
            return truncated_dual_pairing(self.ref(fam, ("algebra",)), self.ref(ideal, ("ideal",)))
        if e.name == "bilinear":
            a, g = self.args(e, 2, "bilinear")
            alg = self.as_sc(a)
            return bilinear_system(alg.ring, self.matrix(g, alg.rank, alg.ring), alg)
        raise self.fail(e, f"unknown pairing constructor {e.name!r}")

    def action(self, e):
        if not isinstance(e, Call):
            raise self.fail(e, "expected an action constructor")
        if e.name == "matrix":
            h, a, m = self.args(e, 3, "matrix")
            H, A = self.ref(h, ("hopf",)), self.as_sc(a)
            if H.ring != A.ring:
                raise RingMismatch("acting Hopf algebra and algebra over different rings")
            act = ModuleAlgebraAction(H, A, self.matrix(m, A.rank, A.ring))
            rep = act.check()
            if not rep.ok:
                raise self.fail(e, f"not a module algebra: {rep.failures[0].axiom} at {rep.failures[0].witness}")
            return act
        if e.name == "trivial":
            h, a = self.args(e, 2, "trivial")
            return trivial_action(self.ref(h, ("hopf",)), self.as_sc(a))
        if e.name == "from_coaction":
            c, p = self.args(e, 2, "from_coaction")
            return action_from_coaction(self.ref(c, ("coaction",)), self.ref(p, ("pairing",)))
        if e.name == "module":
            (p,) = self.args(e, 1, "module")
            pairing = self.ref(p, ("pairing",))
            R = pairing.ring
            rels = e.kw("relations")
            ngens = e.kw("ngens")
            g = int(self.word(ngens)) if ngens is not None else None
            if e.kw("vars") is not None:
                mats = [self.matrix(m, None, R) for m in e.kw("vars").items]
                g = mats[0].nrows if g is None else g
                mod = FPModule(R, g, self.matrix(rels, g, R) if rels is not None else None)
                return family_module(pairing.family, mod, mats, pairing)
            mats = [self.matrix(m, None, R) for m in e.kw("actions").items]
            g = mats[0].nrows if g is None else g
            mod = FPModule(R, g, self.matrix(rels, g, R) if rels is not None else None)
            return AlgebraModule(mod, tuple(mats))
        if e.name == "regular":
            (p,) = self.args(e, 1, "regular")
            return regular_module(self.ref(p, ("pairing",)).alg)
        raise self.fail(e, f"unknown action constructor {e.name!r}")

    def coaction(self, e):
        if not isinstance(e, Call):
            raise self.fail(e, "expected a coaction constructor")
        if e.name == "matrix":
            a, u, m = self.args(e, 3, "matrix")
            A, U = self.as_sc(a), self.ref(u, ("hopf",))
            if A.ring != U.ring:
                raise RingMismatch("comodule algebra and Hopf algebra over different rings")
            ca = ComoduleAlgebraData(U, A, self.matrix(m, A.rank * U.rank, A.ring))
            rep = ca.check()
            if not rep.ok:
                raise self.fail(e, f"not a comodule algebra: {rep.failures[0].axiom} at {rep.failures[0].witness}")
            return ca
        if e.name == "trivial":
            u, a = self.args(e, 2, "trivial")
            return trivial_coaction(self.ref(u, ("hopf",)), self.as_sc(a))
        if e.name == "regular":
            (u,) = self.args(e, 1, "regular")
            return regular_coaction(self.ref(u, ("hopf",)))
        raise self.fail(e, f"unknown coaction constructor {e.name!r}")

    def dualelem(self, e):
        if not isinstance(e, Call):
            raise self.fail(e, "expected a dual element constructor")
        if e.name == "functional":
            fam, ideal, vals = self.args(e, 3, "functional")
            f = self.ref(fam, ("algebra",))
            return dual_element(f, self.ref(ideal, ("ideal",)), self.vector(vals, f.ring))
        if e.name == "ev":
            fam = self.ref(e.args[0], ("algebra",))
            return evaluation_functional(fam, [self.number(x, fam.ring) for x in e.args[1:]])
        if e.name == "sequence":
            fam, vals = self.args(e, 2, "sequence")
            f = self.ref(fam, ("algebra",))
            s = SequenceFunctional(f.ring, tuple(self.vector(vals, f.ring)))
            return sequence_dual_element(f, s)
        raise self.fail(e, f"unknown dual element constructor {e.name!r}")


def parse_session(text):
    """Parse and resolve a session; raises ParseError, UnknownReference or RingMismatch."""
    stmts = parse_text(text)
    b = _Builder()
    spec = SessionSpec(None, stmts)
    for s in stmts:
        if isinstance(s, RingStmt):
            try:
                b.ring = parse_ring(s.text)
            except HopfDualError as e:
                raise ParseError(*s.pos, str(e)) from None
            spec.ring = b.ring
            continue
        if isinstance(s, TaskStmt):
            spec.tasks.append(s)
            continue
        if b.ring is None:
            raise ParseError(*s.pos, "declare a ring before any object")
        if s.name in b.objects:
            raise ParseError(*s.pos, f"{s.name} is already defined")
        try:
            obj = getattr(b, s.kind)(s.expr)
        except (ParseError, UnknownReference, RingMismatch):
            raise
        except HopfDualError as e:
            raise ParseError(*s.pos, f"{s.kind} {s.name}: {e}") from None
        b.objects[s.name] = (s.kind, obj)
    spec.objects = b.objects
    return spec


__all__ = ["SessionSpec", "parse_session", "ObjectStmt"]
