"""Pointwise coalgebra laws for finite-dual elements.

Products of basis elements are formed in the ambient family (not in the
truncation table), so the laws are checked against the algebra itself.
"""

from hopfdual.finite_dual import dual_add, dual_comultiply, dual_equal, dual_scale


def _lifts(f):
    t = f.truncation
    return [{k: f.ring.one} for k in t.keys]


def comultiplication_failures(f):
    a = f.owner
    pairs = dual_comultiply(f)
    basis = _lifts(f)
    bad = []
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            lhs = f.ring(sum(g(x) * h(y) for g, h in pairs))
            if lhs != f(a.mul(x, y)):
                bad.append((i, j))
    return bad


def coassociativity_failures(f):
    pairs = dual_comultiply(f)
    left = [(g1, g2, h) for g, h in pairs for g1, g2 in dual_comultiply(g)]
    right = [(g, h1, h2) for g, h in pairs for h1, h2 in dual_comultiply(h)]
    basis = _lifts(f)
    R = f.ring
    bad = []
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            for k, z in enumerate(basis):
                lv = R(sum(p(x) * q(y) * r(z) for p, q, r in left))
                rv = R(sum(p(x) * q(y) * r(z) for p, q, r in right))
                if lv != rv:
                    bad.append((i, j, k))
    return bad


def counit_failures(f):
    """Sum eps(g_i) h_i = f = sum g_i eps(h_i), with eps = evaluation at 1."""
    a = f.owner
    one = a.one()
    pairs = dual_comultiply(f)
    bad = []
    for side in ("left", "right"):
        acc = dual_scale(0, f)
        for g, h in pairs:
            term = dual_scale(g(one), h) if side == "left" else dual_scale(h(one), g)
            acc = dual_add(acc, term)
        if not dual_equal(acc, f):
            bad.append(side)
    return bad
