"""Exact coefficient fields: the rationals and prime fields F_p."""

from fractions import Fraction


class Rationals:
    """Field of rational numbers, elements are fractions.Fraction."""

    __slots__ = ()
    p = 0  # characteristic marker used by the kernel dispatch

    @property
    def char(self):
        return 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def of(self, v):
        """Coerce an int, Fraction or 'a/b' string into the field."""
        if isinstance(v, str):
            return Fraction(v)
        return Fraction(v)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash(("field", 0))

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Field F_p for a prime p, elements are ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError("modulus must be prime, got %r" % (p,))
        self.p = p

    @property
    def char(self):
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def of(self, v):
        if isinstance(v, str):
            v = Fraction(v)
        if isinstance(v, Fraction):
            return self.mul(v.numerator % self.p, self.inv(v.denominator % self.p))
        return int(v) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = Rationals()


def GF(p):
    return PrimeField(p)
