"""Task execution and report rendering.

Check tasks pass when every axiom holds.  Computing tasks (dual elements,
orders, Rat(M), smash products, purity) pass when the computation finishes
and its built-in self-verification succeeds; the computed data is reported
under ``artifacts`` whatever it says.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebras import PresentedQuotient, SCAlgebra, truncated_polynomial_algebra
from ..errors import HopfDualError
from ..finite_dual import DualElement, DualStructure, dual_comultiply, purity_probe, truncation_dual_orders
from ..hopf import CoalgebraData, HopfData, check_algebra, check_coalgebra, check_hopf, convolution_dual, is_hopf_isomorphism
from ..linalg import RMatrix
from ..modules import FPModule, ModuleMap, is_pure_submodule, is_x_pure, purity_battery
from ..rational import AlgebraModule, Pairing, check_rational_pairing, rat_submodule, rational_parameters
from ..report import Report
from ..smash import (
    ComoduleAlgebraData,
    DualPair,
    ModuleAlgebraAction,
    bm_isomorphism,
    check_dual_pair,
    check_rl_condition,
    harpoon_reports,
    lambda_map,
    lambda_prime_psi_check,
    rho_map,
    smash_product,
)
from .syntax import Atom, ListExpr, print_statement

SCHEMA = 1


@dataclass
class TaskResult:
    task: str
    verdict: str
    witnesses: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "task": self.task,
            "verdict": self.verdict,
            "witnesses": _plain(self.witnesses),
            "artifacts": _plain(self.artifacts),
        }


@dataclass
class RunReport:
    results: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.verdict == "PASS" for r in self.results)

    def as_dict(self):
        return {"schema": SCHEMA, "tasks": [r.as_dict() for r in self.results]}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self, verbose=False):
        lines = []
        for r in self.results:
            lines.append(f"{r.verdict:5} {r.task}")
            if verbose or r.verdict != "PASS":
                for w in r.witnesses:
                    lines.append(f"      witness: {json.dumps(_plain(w), sort_keys=True)}")
            if verbose and r.artifacts:
                lines.append(f"      artifacts: {json.dumps(_plain(r.artifacts), sort_keys=True)}")
        n_pass = sum(r.verdict == "PASS" for r in self.results)
        lines.append(f"{n_pass}/{len(self.results)} tasks passed")
        return "\n".join(lines) + "\n"


def _plain(x):
    if isinstance(x, RMatrix):
        return [_plain(r) for r in x.rows]
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    if isinstance(x, DualElement):
        return x.record()
    return x


def _from_report(task, report, artifacts=None):
    witnesses = [f.as_dict() for f in report.failures]
    verdict = "PASS" if report.ok else "FAIL"
    arts = {"checked": list(report.checked)}
    arts.update(artifacts or {})
    return TaskResult(task, verdict, witnesses, arts)


class _Runner:
    def __init__(self, spec):
        self.spec = spec
        self.objects = spec.objects

    def obj(self, node, types=None):
        if not isinstance(node, Atom) or node.text not in self.objects:
            raise HopfDualError(f"unknown object {getattr(node, 'text', node)!r}")
        o = self.objects[node.text][1]
        if types and not isinstance(o, types):
            raise HopfDualError(f"{node.text} has the wrong type for this task")
        return o

    def sc(self, node):
        o = self.obj(node)
        if isinstance(o, HopfData):
            return o.alg
        if isinstance(o, PresentedQuotient) and len(o.relations) == 1:
            return truncated_polynomial_algebra(o.ring, o.monic, o.var)
        if isinstance(o, SCAlgebra):
            return o
        raise HopfDualError(f"{node.text} is not a free finite algebra")

    def numbers(self, node, ring):
        if not isinstance(node, ListExpr):
            raise HopfDualError("expected a list of numbers")
        return [ring(Fraction(x.text)) for x in node.items]

    def matrix(self, node, ring, ncols):
        rows = [self.numbers(r, ring) for r in node.items] if isinstance(node, ListExpr) else []
        return RMatrix(ring, rows, ncols)

    def run(self, t):
        name = print_statement(t)
        try:
            fn = getattr(self, f"task_{t.kind}")
            return fn(name, t)
        except HopfDualError as e:
            return TaskResult(name, "ERROR", [{"error": type(e).__name__, "detail": str(e)}], {})

    # -- check -----------------------------------------------------------

    def task_check(self, name, t):
        head = t.head
        (x,) = t.args
        if head == "hopf":
            return _from_report(name, check_hopf(self.obj(x, (HopfData,))))
        if head == "algebra":
            return _from_report(name, check_algebra(self.sc(x)))
        if head == "coalgebra":
            c = self.obj(x, (CoalgebraData, HopfData))
            return _from_report(name, check_coalgebra(c.coalg if isinstance(c, HopfData) else c))
        if head == "pairing":
            p = self.obj(x, (DualPair, Pairing))
            rep = check_dual_pair(p) if isinstance(p, DualPair) else check_rational_pairing(p)
            return _from_report(name, rep)
        if head in ("action", "coaction"):
            return _from_report(name, self.obj(x, (ModuleAlgebraAction, ComoduleAlgebraData)).check())
        if head == "smash":
            return _from_report(name, smash_product(self.obj(x, (ModuleAlgebraAction,))).check())
        if head == "harpoons":
            rep = Report("hit actions")
            for r in harpoon_reports(self.obj(x, (DualPair,))).values():
                rep.extend(r)
            return _from_report(name, rep)
        if head == "dual":
            h = self.obj(x, (HopfData,))
            d = convolution_dual(h)
            rep = check_hopf(d)
            rep.ran("double dual isomorphic")
            if not is_hopf_isomorphism(h, convolution_dual(d), RMatrix.identity(h.ring, h.rank)):
                rep.fail("double dual isomorphic", None)
            return _from_report(name, rep, {"dual_labels": list(d.labels)})
        raise HopfDualError(f"unknown check {head!r}")

    # -- dual ------------------------------------------------------------

    def task_dual(self, name, t):
        head = t.head
        if head == "comultiply":
            (x,) = t.args
            f = self.obj(x, (DualElement,))
            pairs = dual_comultiply(f)
            A = f.truncation.algebra
            rep = Report("comultiplication")
            rep.ran("sum g(a) h(b) = f(ab)")
            keys = f.truncation.keys
            for i, ki in enumerate(keys):
                for j, kj in enumerate(keys):
                    lhs = f.ring(sum(g.key_value(ki) * h.key_value(kj) for g, h in pairs))
                    if lhs != f.ring(sum(a * b for a, b in zip(A.basis_product(i, j), f.functional))):
                        rep.fail("sum g(a) h(b) = f(ab)", (i, j))
            return _from_report(name, rep, {"pairs": [[g.record(), h.record()] for g, h in pairs]})
        if head == "counit":
            (x,) = t.args
            f = self.obj(x, (DualElement,))
            return TaskResult(name, "PASS", [], {"value": DualStructure(f.owner).counit(f)})
        if head == "multiply":
            x, y = t.args
            f, g = self.obj(x, (DualElement,)), self.obj(y, (DualElement,))
            return TaskResult(name, "PASS", [], {"product": DualStructure(f.owner).multiply(f, g).record()})
        if head == "antipode":
            (x,) = t.args
            f = self.obj(x, (DualElement,))
            return TaskResult(name, "PASS", [], {"antipode": DualStructure(f.owner).antipode(f).record()})
        if head == "orders":
            (x,) = t.args
            q = self.obj(x, (PresentedQuotient,))
            tab = truncation_dual_orders(q)
            entries = [{"values": list(v), "order": o} for v, o in tab.entries]
            return TaskResult(
                name, "PASS", [], {"algebra": tab.algebra, "dual_invariants": list(tab.dual_invariants), "entries": entries}
            )
        raise HopfDualError(f"unknown dual task {head!r}")

    # -- rat -------------------------------------------------------------

    def task_rat(self, name, t):
        head = t.head
        if head == "pairing":
            (x,) = t.args
            return _from_report(name, check_rational_pairing(self.obj(x, (Pairing,))))
        if head == "submodule":
            m, p = t.args
            am, pairing = self.obj(m, (AlgebraModule,)), self.obj(p, (Pairing,))
            gens = rat_submodule(am, pairing)
            rep = Report("Rat(M)")
            rep.ran("generators are rational")
            for g in gens:
                if rational_parameters(am, g, pairing) is None:
                    rep.fail("generators are rational", g)
            return _from_report(name, rep, {"generators": [list(g) for g in gens]})
        if head == "element":
            m, p, v = t.args
            am, pairing = self.obj(m, (AlgebraModule,)), self.obj(p, (Pairing,))
            vec = self.numbers(v, pairing.ring)
            res = rational_parameters(am, vec, pairing)
            if res is None:
                return TaskResult(name, "FAIL", [{"axiom": "rational", "witness": vec, "detail": "no rational parameters"}], {})
            return TaskResult(
                name, "PASS", [], {"tensor": list(res.tensor), "pairs": [[list(mi), i] for mi, i in res.pairs]}
            )
        raise HopfDualError(f"unknown rat task {head!r}")

    # -- smash -----------------------------------------------------------

    def task_smash(self, name, t):
        head = t.head
        (x,) = t.args
        if head == "product":
            sm = smash_product(self.obj(x, (ModuleAlgebraAction,)))
            A = sm.algebra
            table = [[list(A.basis_product(i, j)) for j in range(A.rank)] for i in range(A.rank)]
            return _from_report(name, sm.check(), {"labels": list(A.labels), "table": table})
        pair = self.obj(x, (DualPair,))
        if head == "lambda":
            ev = lambda_map(pair)
            rep = ev.report
            rep.ran("bijective")
            if not ev.bijective:
                rep.fail("bijective", None)
            return _from_report(name, rep, {"matrix": ev.matrix})
        if head == "rho":
            ev = rho_map(pair)
            return _from_report(name, ev.report, {"matrix": ev.matrix, "injective": ev.injective})
        if head == "psi":
            return _from_report(name, lambda_prime_psi_check(pair))
        if head == "rl":
            v = check_rl_condition(pair)
            verdict = "PASS" if v.holds else "FAIL"
            wit = [] if v.holds else [{"axiom": "RL-condition", "witness": v.failing, "detail": "no solution"}]
            return TaskResult(name, verdict, wit, {"verdict": v.verdict, "table": {str(k): list(s) for k, s in v.table.items()}})
        raise HopfDualError(f"unknown smash task {head!r}")

    # -- bm --------------------------------------------------------------

    def task_bm(self, name, t):
        if len(t.args) == 2:
            ca = self.obj(t.args[0], (ComoduleAlgebraData,))
            pair = self.obj(t.args[1], (DualPair,))
        else:
            a, h, u = t.args
            A, H, U = self.sc(a), self.obj(h, (HopfData,)), self.obj(u, (HopfData,))
            ca = self._find(ComoduleAlgebraData, lambda c: c.u is U and c.a == A, "coaction of U on A")
            pair = self._find(DualPair, lambda p: p.h is H and p.u is U, None)
            if pair is None:
                d = convolution_dual(H)
                if U.alg != d.alg or U.coalg != d.coalg:
                    raise HopfDualError("no pairing between H and U declared and U is not H*")
                pair = DualPair(H, U, RMatrix.identity(H.ring, H.rank))
        res = bm_isomorphism(ca, pair)
        return _from_report(
            name,
            res.report,
            {
                "rank": res.matrix.nrows,
                "source": list(res.source.labels),
                "target": list(res.target.labels),
                "matrix": res.matrix,
                "construction": res.construction,
            },
        )

    def _find(self, cls, pred, what):
        for _, (_, o) in sorted(self.objects.items()):
            if isinstance(o, cls) and pred(o):
                return o
        if what is None:
            return None
        raise HopfDualError(f"no {what} declared")

    # -- purity ----------------------------------------------------------

    def task_purity(self, name, t):
        R = self.spec.ring
        if t.head == "probe":
            q = self.obj(t.args[0], (PresentedQuotient,))
            n = int(t.args[1].text) if len(t.args) > 1 else 0
            X = FPModule.cyclic(q.ring, n) if n else FPModule.free(q.ring, 1)
            v = purity_probe(q, None, X)
            return TaskResult(name, "PASS", [], v.as_dict())
        if t.head == "submodule":
            g, rels, gens = t.args
            ng = int(g.text)
            M = FPModule(R, ng, self.matrix(rels, R, ng) if rels.items else None)
            sub = self.matrix(gens, R, ng)
            N = FPModule.free(R, sub.nrows)
            incl = ModuleMap(N, M, sub)
            verdict = is_pure_submodule(incl)
            rep = Report("purity")
            if verdict.pure:
                rep.ran("cross-check over the battery")
                for X in purity_battery(R):
                    if not is_x_pure(incl, X):
                        rep.fail("cross-check over the battery", X.describe())
            else:
                rep.ran("witness verified")
                if is_x_pure(incl, verdict.witness_module):
                    rep.fail("witness verified", verdict.witness_module.describe())
            arts = {"pure": verdict.pure}
            if not verdict.pure:
                arts["witness_module"] = verdict.witness_module.describe()
                arts["kernel_element"] = list(verdict.kernel_element)
            return _from_report(name, rep, arts)
        raise HopfDualError(f"unknown purity task {t.head!r}")


def run_tasks(spec):
    """Run every task in order; library errors become ERROR verdicts."""
    runner = _Runner(spec)
    return RunReport([runner.run(t) for t in spec.tasks])


__all__ = ["TaskResult", "RunReport", "run_tasks", "SCHEMA"]
