"""Exact base-field arithmetic: rationals and odd prime fields.

Field elements are small value objects supporting ``+ - * / == bool``.
Rational elements are plain :class:`fractions.Fraction`; prime-field
elements are :class:`ModInt` residues with ``p < 2**31``.
"""

from fractions import Fraction


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class ModInt:
    """Residue modulo an odd prime, with inverse via Fermat."""

    __slots__ = ("p", "v")

    def __init__(self, p, v):
        self.p = p
        self.v = v % p

    def _lift(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError("mixed moduli: %d vs %d" % (self.p, other.p))
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by %d" % self.p)
            return (other.numerator * pow(other.denominator, self.p - 2, self.p)) % self.p
        return NotImplemented

    def __add__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return ModInt(self.p, self.v + w)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return ModInt(self.p, self.v - w)

    def __rsub__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return ModInt(self.p, w - self.v)

    def __mul__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return ModInt(self.p, self.v * w)

    __rmul__ = __mul__

    def __truediv__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        if w == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModInt(self.p, self.v * pow(w, self.p - 2, self.p))

    def __rtruediv__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModInt(self.p, w * pow(self.v, self.p - 2, self.p))

    def __pow__(self, n):
        if n < 0:
            return ModInt(self.p, 1) / self ** (-n)
        return ModInt(self.p, pow(self.v, n, self.p))

    def __neg__(self):
        return ModInt(self.p, -self.v)

    def __eq__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return self.v == w

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d" % self.v


class Rationals:
    """The field of rational numbers with exact Fraction arithmetic."""

    char = 0

    def el(self, v):
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            return Fraction(v)
        raise TypeError("cannot coerce %r into Q" % (v,))

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def to_str(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """F_p for an odd prime p >= 5, residues below 2**31."""

    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError("modulus must be prime, got %r" % (p,))
        if p in (2, 3):
            raise ValueError("characteristic 2 and 3 are not supported")
        if p >= 2 ** 31:
            raise ValueError("prime modulus must be below 2**31")
        self.p = p
        self.char = p

    def el(self, v):
        if isinstance(v, ModInt):
            if v.p != self.p:
                raise ValueError("mixed moduli")
            return v
        if isinstance(v, int):
            return ModInt(self.p, v)
        if isinstance(v, str):
            return ModInt(self.p, int(v))
        if isinstance(v, Fraction):
            return ModInt(self.p, 0) + v
        raise TypeError("cannot coerce %r into F_%d" % (v, self.p))

    @property
    def zero(self):
        return ModInt(self.p, 0)

    @property
    def one(self):
        return ModInt(self.p, 1)

    def to_str(self, a):
        return str(a.v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return "F_%d" % self.p
