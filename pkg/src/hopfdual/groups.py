"""Finite groups given by multiplication tables."""

from itertools import permutations

from .errors import NotAGroup


class FiniteGroup:
    """Group on ``range(order)`` with ``table[i][j] = i*j``."""

    def __init__(self, table, labels=None, name=None):
        n = len(table)
        self.table = tuple(tuple(r) for r in table)
        self.order = n
        self.labels = tuple(labels) if labels else tuple(f"g{i}" for i in range(n))
        self.name = name or f"G{n}"
        self._validate()
        self.identity = next(
            e for e in range(n) if all(self.table[e][i] == i == self.table[i][e] for i in range(n))
        )
        self._inv = tuple(
            next(j for j in range(n) if self.table[i][j] == self.identity) for i in range(n)
        )

    def _validate(self):
        n = self.order
        if n == 0:
            raise NotAGroup("empty table")
        for r in self.table:
            if len(r) != n or any(not 0 <= x < n for x in r):
                raise NotAGroup("table is not closed")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                        raise NotAGroup(f"not associative at {(i, j, k)}")
        ids = [e for e in range(n) if all(self.table[e][i] == i == self.table[i][e] for i in range(n))]
        if not ids:
            raise NotAGroup("no identity element")
        e = ids[0]
        for i in range(n):
            if not any(self.table[i][j] == e == self.table[j][i] for j in range(n)):
                raise NotAGroup(f"element {self.labels[i]} has no inverse")

    def mul(self, i, j):
        return self.table[i][j]

    def inv(self, i):
        return self._inv[i]

    def is_abelian(self):
        return all(self.table[i][j] == self.table[j][i] for i in range(self.order) for j in range(self.order))

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def cyclic(n):
    labels = ["e"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], labels, f"C{n}")


def symmetric(n):
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):  # (p*q)(x) = p(q(x))
        return tuple(p[q[x]] for x in range(n))

    table = [[index[compose(p, q)] for q in perms] for p in perms]
    labels = ["".join(str(x + 1) for x in p) for p in perms]
    return FiniteGroup(table, labels, f"S{n}")


def direct_product(g, h):
    n, m = g.order, h.order
    table = [
        [g.mul(a, c) * m + h.mul(b, d) for c in range(n) for d in range(m)]
        for a in range(n)
        for b in range(m)
    ]
    labels = [f"({x},{y})" for x in g.labels for y in h.labels]
    return FiniteGroup(table, labels, f"{g.name}x{h.name}")


def group_by_name(name):
    """``C<n>``, ``S<n>`` or products such as ``C2xC2``."""
    parts = name.split("x")
    groups = []
    for p in parts:
        if p.startswith("C") and p[1:].isdigit():
            groups.append(cyclic(int(p[1:])))
        elif p.startswith("S") and p[1:].isdigit():
            groups.append(symmetric(int(p[1:])))
        else:
            raise NotAGroup(f"unknown group {name!r}")
    g = groups[0]
    for h in groups[1:]:
        g = direct_product(g, h)
    g.name = name
    return g
