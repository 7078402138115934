"""Exact scalar arithmetic: arbitrary-precision rationals and prime fields.

Every computation in the library is exact; there is no floating point
anywhere.  A field object carries the arithmetic and a parser for scalar
literals, and matrices store a reference to the field they live over.
"""

from fractions import Fraction


class Field:
    """Base interface.  Elements are plain Python values (Fraction or int)."""

    name = "field"

    def of(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def div(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    @property
    def zero(self):
        return self.of(0)

    @property
    def one(self):
        return self.of(1)

    def is_zero(self, a):
        return a == self.zero

    def parse(self, text):
        """Parse a scalar literal such as ``3`` or ``-2/5``."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.div(self.of(int(num)), self.of(int(den)))
        return self.of(int(text))

    def to_str(self, a):
        return str(a)


class RationalField(Field):
    """Arbitrary-precision rationals (the default field)."""

    name = "rat"

    def of(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in rational field")
        return a / b

    def neg(self, a):
        return -a

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rat")


class PrimeField(Field):
    """Integers modulo a prime p.

    Faster than rationals on big eliminations, with the documented caveat
    that the rank of an integer matrix can drop mod p.
    """

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.name = f"fp:{p}"

    def of(self, x):
        if isinstance(x, Fraction):
            return self.div(int(x.numerator) % self.p, int(x.denominator) % self.p)
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return (a * pow(b, self.p - 2, self.p)) % self.p

    def neg(self, a):
        return (-a) % self.p

    def __repr__(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))


QQ = RationalField()


def field_from_name(name):
    """Resolve a field flag value: ``rat`` or ``fp:<prime>``."""
    if name == "rat":
        return QQ
    if name.startswith("fp:"):
        return PrimeField(int(name[3:]))
    raise ValueError(f"unknown field {name!r} (expected 'rat' or 'fp:<p>')")
