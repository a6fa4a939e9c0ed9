"""Small exact polynomial toolkit over a CoeffRing.

Univariate polynomials are coefficient tuples, lowest degree first, with no
trailing zeros (the zero polynomial is ``()``).  Multivariate (Laurent)
polynomials are dicts ``{exponent tuple: coefficient}`` with nonzero values.
"""

from math import comb

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

_TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def canon(R, p):
    return trim(R(c) for c in p)


def degree(p):
    return len(p) - 1


def is_monic(p):
    return bool(p) and p[-1] == 1


def padd(R, p, q):
    n = max(len(p), len(q))
    return trim(R((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)) for i in range(n))


def pscale(R, c, p):
    return trim(R(c * a) for a in p)


def psub(R, p, q):
    return padd(R, p, pscale(R, -1, q))


def pmul(R, p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return canon(R, out)


def pdivmod(R, p, q):
    """Division by a monic polynomial q."""
    if not is_monic(q):
        raise ValueError("division needs a monic divisor")
    p = list(canon(R, p))
    n = degree(q)
    quot = [R.zero] * max(len(p) - n, 0)
    for k in range(len(p) - 1, n - 1, -1):
        c = p[k]
        if c == 0:
            continue
        quot[k - n] = c
        for j, b in enumerate(q):
            p[k - n + j] = R(p[k - n + j] - c * b)
    return trim(quot), trim(p[:n])


def pmod(R, p, q):
    return pdivmod(R, p, q)[1]


def pshift(p, k):
    """Multiply by x^k (k >= 0)."""
    return tuple([0] * k + list(p)) if p else ()


def peval(R, p, a):
    acc = R.zero
    for c in reversed(p):
        acc = R(acc * a + c)
    return acc


def pcompose_neg(R, p):
    """p(-x)."""
    return canon(R, [c if i % 2 == 0 else -c for i, c in enumerate(p)])


def preverse(p):
    """x^deg p * p(1/x)."""
    return trim(reversed(p))


def pfmt(R, p, var="x"):
    if not p:
        return "0"
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        s = R.fmt(c)
        neg = s.startswith("-")
        mag = s[1:] if neg else s
        if k == 0:
            body = mag
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == "1" else f"{mag}{mono}"
        if not terms:
            terms.append(("-" if neg else "") + body)
        else:
            terms.append((" - " if neg else " + ") + body)
    return "".join(terms)


# -- multivariate / Laurent ----------------------------------------------


def mclean(R, d):
    out = {}
    for k, c in d.items():
        c = R(c)
        if c != 0:
            out[k] = c
    return out


def madd(R, a, b):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + c
    return mclean(R, out)


def mscale(R, c, a):
    return mclean(R, {k: c * v for k, v in a.items()})


def mmul(R, a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + ca * cb
    return mclean(R, out)


def mmonomial(R, exps, c=1):
    return mclean(R, {tuple(exps): c})


def univariate_to_m(R, p, nvars, v):
    out = {}
    for k, c in enumerate(p):
        if c != 0:
            e = [0] * nvars
            e[v] = k
            out[tuple(e)] = c
    return mclean(R, out)


def m_to_univariate(R, a, v):
    """Coefficients of an element supported on nonnegative powers of x_v only."""
    if not a:
        return ()
    top = 0
    for e in a:
        if any(x != 0 for i, x in enumerate(e) if i != v) or e[v] < 0:
            raise ValueError("element is not a polynomial in a single variable")
        top = max(top, e[v])
    p = [R.zero] * (top + 1)
    for e, c in a.items():
        p[e[v]] = c
    return trim(p)


def mfmt(R, a, names):
    if not a:
        return "0"
    parts = []
    for e in sorted(a, reverse=True):
        c = a[e]
        mono = "*".join(
            n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x != 0
        )
        s = R.fmt(c)
        if mono:
            body = mono if s == "1" else ("-" + mono if s == "-1" else f"{s}*{mono}")
        else:
            body = s
        parts.append(body)
    return " + ".join(parts).replace("+ -", "- ")


def parse_poly(R, text, names):
    """Parse text such as ``x^2 - 3x + 1`` or ``x*y^-1`` into a dict element."""
    syms = {n: sympy.Symbol(n) for n in names}
    expr = parse_expr(str(text), local_dict=syms, transformations=_TRANSFORMS)
    expr = sympy.expand(expr)
    out = {}
    for term in sympy.Add.make_args(expr):
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict() if rest != 1 else {}
        exps = [0] * len(names)
        for base, e in powers.items():
            if base == 1:
                continue
            if base not in syms.values():
                raise ValueError(f"unknown symbol {base} in {text!r}")
            if not e.is_integer:
                raise ValueError(f"non-integer exponent in {text!r}")
            exps[names.index(str(base))] += int(e)
        c = sympy.Rational(coeff)
        from fractions import Fraction

        val = R(Fraction(int(c.p), int(c.q)))
        k = tuple(exps)
        out[k] = out.get(k, 0) + val
    return mclean(R, out)


def binomial_coproduct_1d(e):
    """Primitive coproduct of x^e: list of ((j, e-j), C(e, j))."""
    return [((j, e - j), comb(e, j)) for j in range(e + 1)]
