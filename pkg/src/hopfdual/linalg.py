"""Exact matrices and canonical forms over a ``CoeffRing``.

Conventions used everywhere in the package:

* vectors are rows, and a matrix ``M`` acts on the right: ``x -> x @ M``;
* Kronecker indices are left-factor major, ``(i*b.nrows + k, j*b.ncols + l)``.

Canonical row-span forms are Hermite form over Z, reduced row echelon form
over fields and Howell form over Z/n.  All three are computed by the same
gcd-elimination loop; the Howell variant adds the annihilator rows that make
greedy reduction complete for modules over Z/n.
"""

from .errors import RingMismatch, ShapeMismatch, UnsupportedRing


class RMatrix:
    """Immutable dense matrix over a coefficient ring."""

    __slots__ = ("ring", "nrows", "ncols", "rows", "_hash")

    def __init__(self, ring, rows, ncols=None):
        rows = tuple(tuple(ring(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ShapeMismatch("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ShapeMismatch("ragged rows")
        self.ring = ring
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, ring, rows, ncols):
        # rows already canonical tuples
        m = cls.__new__(cls)
        m.ring = ring
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero
        return cls._raw(ring, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls._raw(
            ring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def diag(cls, ring, entries, nrows=None, ncols=None):
        nrows = len(entries) if nrows is None else nrows
        ncols = len(entries) if ncols is None else ncols
        rows = [[ring.zero] * ncols for _ in range(nrows)]
        for i, d in enumerate(entries):
            rows[i][i] = d
        return cls(ring, rows, ncols)

    @classmethod
    def row_vector(cls, ring, v):
        return cls(ring, [list(v)], len(v))

    # -- basic protocol ----------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.fmt(x) for x in r) for r in self.rows)
        return f"RMatrix({self.ring.name}, {self.nrows}x{self.ncols}, [{body}])"

    def tolist(self):
        return [list(r) for r in self.rows]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    @property
    def T(self):
        cols = tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols))
        return RMatrix._raw(self.ring, cols, self.nrows)

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")

    def __add__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        R = self.ring
        return RMatrix._raw(
            R,
            tuple(tuple(R(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __neg__(self):
        R = self.ring
        return RMatrix._raw(R, tuple(tuple(R(-a) for a in r) for r in self.rows), self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        R = self.ring
        return RMatrix._raw(R, tuple(tuple(R(c * a) for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other):
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        R = self.ring
        out = []
        orows = other.rows
        n = other.ncols
        for r in self.rows:
            acc = [0] * n
            for k, a in enumerate(r):
                if a == 0:
                    continue
                ok = orows[k]
                for j in range(n):
                    b = ok[j]
                    if b != 0:
                        acc[j] += a * b
            out.append(tuple(R(x) for x in acc))
        return RMatrix._raw(R, tuple(out), n)

    def vecmul(self, v):
        """Row vector ``v`` (a sequence) times this matrix, as a tuple."""
        if len(v) != self.nrows:
            raise ShapeMismatch(f"vector of length {len(v)} against {self.shape}")
        R = self.ring
        acc = [0] * self.ncols
        for a, r in zip(v, self.rows):
            if a == 0:
                continue
            for j, b in enumerate(r):
                if b != 0:
                    acc[j] += a * b
        return tuple(R(x) for x in acc)

    def hstack(self, other):
        self._check_ring(other)
        if self.nrows != other.nrows:
            raise ShapeMismatch("hstack row mismatch")
        return RMatrix._raw(
            self.ring, tuple(r + s for r, s in zip(self.rows, other.rows)), self.ncols + other.ncols
        )

    def vstack(self, other):
        self._check_ring(other)
        if self.ncols != other.ncols:
            raise ShapeMismatch("vstack column mismatch")
        return RMatrix._raw(self.ring, self.rows + other.rows, self.ncols)

    def submatrix(self, rows=None, cols=None):
        rows = range(self.nrows) if rows is None else rows
        cols = list(range(self.ncols)) if cols is None else list(cols)
        return RMatrix._raw(
            self.ring, tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols)
        )


def vstack_all(ring, ncols, mats):
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise ShapeMismatch("vstack column mismatch")
        rows.extend(m.rows)
    return RMatrix._raw(ring, tuple(rows), ncols)


def kronecker(a, b):
    """Kronecker product with index convention (i*b.nrows + k, j*b.ncols + l)."""
    a._check_ring(b)
    R = a.ring
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(R(x * y) for x in ra for y in rb))
    return RMatrix._raw(R, tuple(rows), a.ncols * b.ncols)


# -- canonical row-span forms ---------------------------------------------


def _axpy(R, c, x, y):
    # y + c*x, canonical
    return [R(yi + c * xi) for xi, yi in zip(x, y)]


def _echelon(m, howell):
    R = m.ring
    n = m.ncols
    pool = [list(r) for r in m.rows if any(r)]
    result = []
    pivcols = []
    for c in range(n):
        pivot = None
        rest = []
        for r in pool:
            if r[c] == 0:
                rest.append(r)
                continue
            if pivot is None:
                pivot = r
                continue
            s, t, u, v = R.elim(pivot[c], r[c])
            new_p = [R(s * x + t * y) for x, y in zip(pivot, r)]
            new_r = [R(u * x + v * y) for x, y in zip(pivot, r)]
            pivot = new_p
            if any(new_r):
                rest.append(new_r)
        pool = rest
        if pivot is None or pivot[c] == 0:
            if pivot is not None and any(pivot):
                pool.append(pivot)
            continue
        p, unit = R.normalize(pivot[c])
        pivot = [R(unit * x) for x in pivot]
        for k, pr in enumerate(result):
            q = R.quo(pr[c], p)
            if q != 0:
                result[k] = _axpy(R, -q, pivot, pr)
        result.append(pivot)
        pivcols.append(c)
        if howell:
            ann = R.modulus // p
            extra = [R(ann * x) for x in pivot]
            if any(extra):
                pool.append(extra)
    return result, pivcols


def row_span_form(m):
    """Canonical generating matrix of the row span of ``m``.

    Hermite normal form over Z, RREF over fields, Howell form over Z/n.
    Two matrices have the same row span iff their forms are equal.
    """
    howell = m.ring.is_modular and not m.ring.is_field
    rows, _ = _echelon(m, howell)
    return RMatrix(m.ring, rows, m.ncols)


def howell_form(m):
    """Howell canonical form of the row span of a matrix over Z/n."""
    if not m.ring.is_modular:
        raise UnsupportedRing(f"howell_form needs Z/n, got {m.ring.name}")
    rows, _ = _echelon(m, True)
    return RMatrix(m.ring, rows, m.ncols)


def pivots(form):
    """(row, column) of the leading entry for each row of an echelon form."""
    out = []
    for i, r in enumerate(form.rows):
        for j, x in enumerate(r):
            if x != 0:
                out.append((i, j))
                break
    return out


def reduce_vector(v, form):
    """Canonical representative of ``v`` modulo the row span of ``form``.

    ``form`` must be a ``row_span_form``.  The result is zero iff ``v`` lies
    in the span.
    """
    R = form.ring
    v = [R(x) for x in v]
    for i, j in pivots(form):
        row = form.rows[i]
        q = R.quo(v[j], row[j])
        if q != 0:
            v = _axpy(R, -q, row, v)
    return tuple(v)


def in_span(v, m):
    return not any(reduce_vector(v, row_span_form(m)))


def same_span(a, b):
    return row_span_form(a) == row_span_form(b)


def kernel(m):
    """Generators of the left kernel {x : x @ m = 0}, one per row.

    Over Z and fields the rows form a basis; over Z/n they generate the
    kernel as a module (Howell property).
    """
    R = m.ring
    aug = m.hstack(RMatrix.identity(R, m.nrows))
    form = row_span_form(aug)
    rows = [r[m.ncols:] for r in form.rows if not any(r[: m.ncols])]
    return RMatrix(R, rows, m.nrows)


def solve(m, b):
    """Some row vector x with x @ m = b, or None when inconsistent."""
    R = m.ring
    b = tuple(R(x) for x in b)
    if len(b) != m.ncols:
        raise ShapeMismatch(f"rhs length {len(b)} vs {m.ncols} columns")
    if m.nrows == 0:
        return () if not any(b) else None
    aug = m.hstack(RMatrix.identity(R, m.nrows))
    form = row_span_form(aug)
    v = list(b) + [R.zero] * m.nrows
    for i, j in pivots(form):
        if j >= m.ncols:
            break
        row = form.rows[i]
        if not R.divides(row[j], v[j]):
            return None
        q = R.divexact(v[j], row[j])
        if q != 0:
            v = _axpy(R, -q, row, v)
    if any(v[: m.ncols]):
        return None
    return tuple(R(-x) for x in v[m.ncols:])


def inverse(m):
    """Inverse of a square matrix, or None when it is not invertible."""
    if m.nrows != m.ncols:
        raise ShapeMismatch("inverse of a non-square matrix")
    n = m.nrows
    R = m.ring
    form = row_span_form(m.hstack(RMatrix.identity(R, n)))
    if form.nrows < n:
        return None
    left = form.submatrix(range(n), range(n))
    if left != RMatrix.identity(R, n):
        return None
    return form.submatrix(range(n), range(n, 2 * n))


def is_invertible(m):
    return m.nrows == m.ncols and inverse(m) is not None


# -- Smith normal form ----------------------------------------------------


def smith_normal_form(m):
    """Return (u, d, v) with u @ m @ v = d, u and v invertible, d diagonal
    with d1 | d2 | ... .  Diagonal entries are canonical associates.
    """
    R = m.ring
    if not R.is_pid:
        raise UnsupportedRing(f"smith_normal_form needs a PID, got {R.name}; use howell_form")
    nr, nc = m.shape
    A = [list(r) for r in m.rows]
    U = [list(r) for r in RMatrix.identity(R, nr).rows]
    V = [list(r) for r in RMatrix.identity(R, nc).rows]

    def size(x):
        return abs(x) if R.kind == "Z" else (0 if x == 0 else 1)

    def row_op(i, k, s, t, u, v):
        for M in (A, U):
            ri, rk = M[i], M[k]
            M[i] = [R(s * x + t * y) for x, y in zip(ri, rk)]
            M[k] = [R(u * x + v * y) for x, y in zip(ri, rk)]

    def col_op(j, k, s, t, u, v):
        for M in (A, V):
            for r in M:
                x, y = r[j], r[k]
                r[j] = R(s * x + t * y)
                r[k] = R(u * x + v * y)

    for t in range(min(nr, nc)):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if A[i][j] != 0 and (best is None or size(A[i][j]) < size(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            A[t], A[i] = A[i], A[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            for M in (A, V):
                for r in M:
                    r[t], r[j] = r[j], r[t]
        while True:
            for i in range(t + 1, nr):
                if A[i][t] != 0:
                    row_op(t, i, *R.elim(A[t][t], A[i][t]))
            for j in range(t + 1, nc):
                if A[t][j] != 0:
                    col_op(t, j, *R.elim(A[t][t], A[t][j]))
            if any(A[i][t] != 0 for i in range(t + 1, nr)):
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if not R.divides(A[t][t], A[i][j]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # fold the offending row into the pivot row and eliminate again
            row_op(t, bad, R.one, R.one, R.zero, R.one)
        p, unit = R.normalize(A[t][t])
        if unit != 1:
            A[t] = [R(unit * x) for x in A[t]]
            U[t] = [R(unit * x) for x in U[t]]
    return RMatrix(R, U, nr), RMatrix(R, A, nc), RMatrix(R, V, nc)


def smith_diagonal(m):
    """Diagonal of the Smith form (length min(rows, cols))."""
    _, d, _ = smith_normal_form(m)
    return [d[i, i] for i in range(min(d.nrows, d.ncols))]


def rank(m):
    """Rank over a PID (number of nonzero Smith invariants)."""
    if m.ring.is_field or m.ring.kind == "Z":
        return len(row_span_form(m).rows)
    raise UnsupportedRing("rank needs a PID")


# -- characteristic polynomial --------------------------------------------


def charpoly(m):
    """Coefficients c0..cn (low to high, monic) of det(xI - m).

    Berkowitz's algorithm, division free, so valid over every supported ring.
    """
    if m.nrows != m.ncols:
        raise ShapeMismatch("charpoly of a non-square matrix")
    R = m.ring
    n = m.nrows
    A = m.rows
    # polynomials held high-to-low during the iteration
    poly = [R.one]
    for r in range(n):
        # leading principal submatrix of size r+1: split off row/col r
        a = A[r][r]
        R_row = [A[r][j] for j in range(r)]
        C_col = [A[i][r] for i in range(r)]
        M = [list(A[i][:r]) for i in range(r)]
        # Toeplitz column: 1, -a, -R C, -R M C, ...
        col = [R.one, R(-a)]
        vec = C_col
        for _ in range(r):
            col.append(R(-sum(x * y for x, y in zip(R_row, vec))))
            vec = [R(sum(M[i][k] * vec[k] for k in range(r))) for i in range(r)]
        new = []
        for i in range(r + 2):
            s = 0
            for k in range(len(poly)):
                if 0 <= i - k < len(col):
                    s += col[i - k] * poly[k]
            new.append(R(s))
        poly = new
    return tuple(reversed(poly))


def det(m):
    cp = charpoly(m)
    n = m.nrows
    return m.ring(cp[0] * (-1) ** n)
