"""Exact coefficient rings: Z, Q, Z/n and F_p.

Ring elements are plain Python values: ``int`` for Z and the modular rings
(canonical residues ``0..n-1``) and ``fractions.Fraction`` for Q.  A
``CoeffRing`` is a small immutable descriptor that knows how to canonicalize,
add, multiply, divide and run the extended gcd for its elements.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import isprime

from .errors import UnsupportedRing

__all__ = ["CoeffRing", "ZZ", "QQ", "Zmod", "Fp", "parse_ring"]


def _egcd(a, b):
    """Integer extended gcd: returns (g, s, t) with s*a + t*b = g >= 0."""
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


@dataclass(frozen=True)
class CoeffRing:
    kind: str  # "Z", "Q", "Zmod", "Fp"
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zmod", "Fp"):
            raise UnsupportedRing(f"unknown ring kind {self.kind!r}")
        if self.kind == "Zmod" and self.modulus < 2:
            raise UnsupportedRing("Zmod n requires n >= 2")
        if self.kind == "Fp" and not isprime(self.modulus):
            raise UnsupportedRing(f"Fp requires a prime, got {self.modulus}")
        if self.kind in ("Z", "Q") and self.modulus:
            raise UnsupportedRing("Z and Q take no modulus")

    # -- descriptors -------------------------------------------------------

    @property
    def name(self):
        if self.kind in ("Z", "Q"):
            return self.kind
        return f"{self.kind} {self.modulus}"

    def __repr__(self):
        return f"CoeffRing({self.name})"

    @property
    def is_modular(self):
        return self.kind in ("Zmod", "Fp")

    @property
    def is_field(self):
        if self.kind in ("Q", "Fp"):
            return True
        return self.kind == "Zmod" and isprime(self.modulus)

    @property
    def is_pid(self):
        return self.kind == "Z" or self.is_field

    @property
    def characteristic(self):
        return self.modulus if self.is_modular else 0

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def elements(self):
        """All elements of a finite ring, in canonical order."""
        if not self.is_modular:
            raise UnsupportedRing(f"{self.name} is infinite")
        return range(self.modulus)

    # -- arithmetic --------------------------------------------------------

    def __call__(self, x):
        """Canonical representative of ``x`` (an int, Fraction or str)."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return int(x.numerator)
            return int(x)
        if self.kind == "Q":
            return Fraction(x)
        n = self.modulus
        if isinstance(x, Fraction):
            if x.denominator != 1:
                return (x.numerator * pow(x.denominator, -1, n)) % n
            x = x.numerator
        return int(x) % n

    def add(self, a, b):
        return self(a + b)

    def sub(self, a, b):
        return self(a - b)

    def mul(self, a, b):
        return self(a * b)

    def neg(self, a):
        return self(-a)

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        if self.kind == "Z":
            return a in (1, -1)
        if self.kind == "Q":
            return a != 0
        return gcd(a, self.modulus) == 1

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit in {self.name}")
        if self.kind == "Z":
            return a
        if self.kind == "Q":
            return 1 / Fraction(a)
        return pow(a, -1, self.modulus)

    def divides(self, a, b):
        """True when a | b in the ring."""
        if self.kind == "Z":
            return b == 0 if a == 0 else b % a == 0
        if self.kind == "Q":
            return a != 0 or b == 0
        return b % gcd(a, self.modulus) == 0

    def divexact(self, b, a):
        """Some q with a*q = b; raises ArithmeticError when a does not divide b."""
        if not self.divides(a, b):
            raise ArithmeticError(f"{a} does not divide {b} in {self.name}")
        if a == 0:
            return self.zero
        if self.kind == "Z":
            return b // a
        if self.kind == "Q":
            return Fraction(b) / a
        n = self.modulus
        g = gcd(a, n)
        m = n // g
        return ((b // g) * pow(a // g, -1, m)) % m if m > 1 else 0

    def gcdex(self, a, b):
        """Return (g, s, t) with s*a + t*b = g and g generating (a, b)."""
        if self.kind == "Q" or (self.is_field and a != 0):
            if a != 0:
                return self.one, self.inv(a), self.zero
            if b != 0:
                return self.one, self.zero, self.inv(b)
            return self.zero, self.one, self.zero
        if self.kind == "Fp" or self.is_field:
            if b != 0:
                return self.one, self.zero, self.inv(b)
            return self.zero, self.one, self.zero
        g, s, t = _egcd(int(a), int(b))
        return self(g), self(s), self(t)

    def elim(self, a, b):
        """Unimodular (s, t, u, v) with s*a + t*b = gcd and u*a + v*b = 0."""
        if self.is_field:
            if a != 0:
                return self.inv(a), self.zero, self(-b), self(a)
            return self.zero, self.inv(b), self(-b), self.zero
        a, b = int(a), int(b)
        if a != 0 and b % a == 0:
            # keep the pivot row; plain subtraction avoids swap cycles
            return self.one, self.zero, self(-(b // a)), self.one
        g, s, t = _egcd(a, b)
        return self(s), self(t), self(-(b // g)), self(a // g)

    def normalize(self, a):
        """Return (assoc, unit) with unit*a = assoc the canonical associate of a.

        Canonical associates: |a| over Z, 1 over a field, gcd(a, n) over Z/n.
        """
        if a == 0:
            return self.zero, self.one
        if self.kind == "Z":
            return (a, 1) if a > 0 else (-a, -1)
        if self.is_field:
            return self.one, self.inv(a)
        n = self.modulus
        g = gcd(a, n)
        m = n // g
        u0 = pow(a // g, -1, m) if m > 1 else 1
        # lift u0 (a unit mod n/g) to a unit mod n
        for k in range(n):
            u = u0 + k * m
            if gcd(u, n) == 1:
                return g, u % n
        raise AssertionError("unit lift must exist")

    def rem(self, a, p):
        """Canonical remainder of a modulo a canonical associate p."""
        if p == 0:
            return a
        if self.is_field:
            return self.zero
        return a % p

    def quo(self, a, p):
        """Quotient q with a - q*p = rem(a, p)."""
        if p == 0:
            return self.zero
        if self.is_field:
            return self.divexact(a, p)
        return self(a // p)

    def fmt(self, a):
        if isinstance(a, Fraction):
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)


ZZ = CoeffRing("Z")
QQ = CoeffRing("Q")


def Zmod(n):
    return CoeffRing("Zmod", n)


def Fp(p):
    return CoeffRing("Fp", p)


def parse_ring(text):
    """Parse ``Z``, ``Q``, ``Zmod n``, ``Fp p`` or the shorthand ``Z4``."""
    parts = text.split()
    if parts == ["Z"]:
        return ZZ
    if parts == ["Q"]:
        return QQ
    if len(parts) == 2 and parts[0] in ("Zmod", "Fp") and parts[1].isdigit():
        return CoeffRing(parts[0], int(parts[1]))
    if len(parts) == 1 and parts[0].startswith("Z") and parts[0][1:].isdigit():
        return Zmod(int(parts[0][1:]))
    if len(parts) == 1 and parts[0].startswith("F") and parts[0][1:].isdigit():
        return Fp(int(parts[0][1:]))
    raise UnsupportedRing(f"cannot parse ring {text!r}")
