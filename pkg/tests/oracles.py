"""Brute-force reference computations used by the tests.

Everything here works on plain nested lists of ints or Fractions and never
calls into the library's linear algebra, so agreement with the library is
evidence rather than tautology.
"""

from fractions import Fraction
from itertools import permutations, product
from math import gcd


def reduce(x, mod):
    return x % mod if mod else x


def det(rows):
    """Leibniz determinant of a square list of lists."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def minors_gcd(rows, k):
    """gcd of all k x k minors of an integer matrix."""
    nr, nc = len(rows), len(rows[0]) if rows else 0
    g = 0
    from itertools import combinations

    for rs in combinations(range(nr), k):
        for cs in combinations(range(nc), k):
            g = gcd(g, det([[rows[r][c] for c in cs] for r in rs]))
    return g


def smith_invariants(rows):
    """Smith invariants of an integer matrix from determinantal divisors."""
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    out = []
    prev = 1
    for k in range(1, min(nr, nc) + 1):
        dk = minors_gcd(rows, k)
        if dk == 0:
            out.append(0)
            prev = 0
            continue
        out.append(dk // prev)
        prev = dk
    return out


def matmul(a, b, mod=0):
    return [[reduce(sum(a[i][k] * b[k][j] for k in range(len(b))), mod) for j in range(len(b[0]))] for i in range(len(a))]


def span_mod(rows, ncols, mod):
    """Every vector in the row span of ``rows`` over Z/mod, by closure."""
    zero = (0,) * ncols
    seen = {zero}
    frontier = [zero]
    gens = [tuple(r[j] % mod for j in range(ncols)) for r in rows]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % mod for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def hankel_rank(seq, size):
    """Rank over Q of the size x size Hankel matrix of ``seq``."""
    m = [[Fraction(seq[i + j]) for j in range(size)] for i in range(size)]
    rank = 0
    cols = size
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, size) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(size):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        rank += 1
    return rank


def poly_divides(q, p):
    """Does monic q divide p over Q?  Coefficients low to high."""
    p = [Fraction(c) for c in p]
    dq = len(q) - 1
    while len(p) - 1 >= dq and any(p):
        while p and p[-1] == 0:
            p.pop()
        if len(p) - 1 < dq:
            break
        c = p[-1] / q[-1]
        shift = len(p) - 1 - dq
        for i, a in enumerate(q):
            p[shift + i] -= c * a
        p.pop()
    return not any(p)


# -- dense Hopf axioms --------------------------------------------------------


def dense_hopf(h):
    """(n, mod, mult[i][j][k], unit, comult[i][j][k], counit, S[i][j]) as plain lists."""
    n = h.rank
    mod = h.ring.modulus if h.ring.is_modular else 0
    mult = [[list(h.alg.basis_product(i, j)) for j in range(n)] for i in range(n)]
    unit = list(h.alg.unit)
    comult = [[[h.coalg.comult.rows[i][j * n + k] for k in range(n)] for j in range(n)] for i in range(n)]
    counit = list(h.coalg.counit)
    S = [list(r) for r in h.antipode.rows] if h.antipode is not None else None
    return n, mod, mult, unit, comult, counit, S


def hopf_axioms_hold(n, mod, mult, unit, comult, counit, S):
    """Exhaustive check of the Hopf algebra axioms on dense structure tensors."""
    R = range(n)

    def z(x):
        return reduce(x, mod) == 0

    def delta_of(vec):
        return [[sum(vec[i] * comult[i][a][b] for i in R) for b in R] for a in R]

    def prod(x, y):
        return [sum(x[i] * y[j] * mult[i][j][k] for i in R for j in R) for k in R]

    for i, j, k in product(R, R, R):
        for p in R:
            lhs = sum(mult[i][j][l] * mult[l][k][p] for l in R)
            rhs = sum(mult[j][k][l] * mult[i][l][p] for l in R)
            if not z(lhs - rhs):
                return False
    for i, k in product(R, R):
        d = 1 if i == k else 0
        if not z(sum(unit[u] * mult[u][i][k] for u in R) - d):
            return False
        if not z(sum(unit[u] * mult[i][u][k] for u in R) - d):
            return False
    for i, a, b, c in product(R, R, R, R):
        lhs = sum(comult[i][j][c] * comult[j][a][b] for j in R)
        rhs = sum(comult[i][a][k] * comult[k][b][c] for k in R)
        if not z(lhs - rhs):
            return False
    for i, k in product(R, R):
        d = 1 if i == k else 0
        if not z(sum(comult[i][j][k] * counit[j] for j in R) - d):
            return False
        if not z(sum(comult[i][k][j] * counit[j] for j in R) - d):
            return False
    for i, j in product(R, R):
        ab = mult[i][j]
        lhs = delta_of(ab)
        for a, b in product(R, R):
            rhs = 0
            for p, q, r, s in product(R, R, R, R):
                c = comult[i][p][q] * comult[j][r][s]
                if c:
                    rhs += c * mult[p][r][a] * mult[q][s][b]
            if not z(lhs[a][b] - rhs):
                return False
        if not z(sum(ab[k] * counit[k] for k in R) - counit[i] * counit[j]):
            return False
    du = delta_of(unit)
    for a, b in product(R, R):
        if not z(du[a][b] - unit[a] * unit[b]):
            return False
    if not z(sum(unit[k] * counit[k] for k in R) - 1):
        return False
    if S is None:
        return False
    for i in R:
        left = [0] * n
        right = [0] * n
        for j, k in product(R, R):
            c = comult[i][j][k]
            if c:
                sj = [S[j][t] for t in R]
                sk = [S[k][t] for t in R]
                ek = [1 if t == k else 0 for t in R]
                ej = [1 if t == j else 0 for t in R]
                left = [x + c * y for x, y in zip(left, prod(sj, ek))]
                right = [x + c * y for x, y in zip(right, prod(ej, sk))]
        for t in R:
            target = counit[i] * unit[t]
            if not z(left[t] - target) or not z(right[t] - target):
                return False
    return True
