"""Exact arithmetic in Q(beta) = Q[X]/(p) for a monic squarefree integer p.

Elements are stored as integer numerators over one positive common
denominator in the power basis 1, beta, ..., beta^(d-1).  Since p is monic,
reduction modulo p never introduces new denominators, so Z[beta] membership
is simply ``den == 1``.
"""
from fractions import Fraction
from math import gcd as igcd

from . import poly
from .errors import InputError, NotMonic, NotSquarefree, ReducibleDetected


class NumberField:
    """The field Q(beta) defined by a monic squarefree integer polynomial."""

    def __init__(self, p):
        p = poly.parse_polynomial(p)
        if p[-1] != 1:
            raise NotMonic(f"{poly.format_polynomial(p)} is not monic")
        if not poly.is_squarefree(p):
            g = poly.primitive(poly.gcd(p, poly.derivative(p)))
            raise NotSquarefree(
                f"{poly.format_polynomial(p)} is not squarefree "
                f"(gcd with derivative is {poly.format_polynomial(g)})"
            )
        self.p = tuple(p)
        self.d = len(p) - 1
        self._roots_cache = {}
        self._beta_inv = None

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.p == other.p

    def __hash__(self):
        return hash(self.p)

    def __repr__(self):
        return f"NumberField({poly.format_polynomial(self.p)})"

    @property
    def companion(self):
        """Integer matrix of multiplication by beta; column j is beta * beta^j."""
        d = self.d
        m = [[0] * d for _ in range(d)]
        for j in range(d - 1):
            m[j + 1][j] = 1
        for i in range(d):
            m[i][d - 1] = -self.p[i]
        return m

    def element(self, coords):
        coords = list(coords)
        if len(coords) > self.d:
            raise InputError(f"expected at most {self.d} coordinates, got {len(coords)}")
        coords += [0] * (self.d - len(coords))
        fr = [Fraction(c) for c in coords]
        den = 1
        for c in fr:
            den = den * c.denominator // igcd(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in fr]
        return FieldElement._make(self, nums, den)

    def parse_element(self, items):
        """Coordinates given as ints or ``"num/den"`` strings."""
        if isinstance(items, (int, str, Fraction)):
            items = [items]
        try:
            return self.element([Fraction(str(c).strip()) for c in items])
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse field element {items!r}: {exc}") from None

    def from_int(self, n):
        return FieldElement._make(self, [n] + [0] * (self.d - 1), 1)

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    @property
    def beta(self):
        if self.d == 1:
            return self.from_int(-self.p[0])
        return FieldElement._make(self, [0, 1] + [0] * (self.d - 2), 1)

    @property
    def beta_inv(self):
        if self._beta_inv is None:
            self._beta_inv = self.beta.inverse()
        return self._beta_inv

    def _reduce(self, coeffs):
        """Reduce an integer coefficient list modulo the monic p (in place)."""
        d, p = self.d, self.p
        for k in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[k]
            if c:
                base = k - d
                for i in range(d):
                    coeffs[base + i] -= c * p[i]
        del coeffs[d:]
        return coeffs


class FieldElement:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "nums", "den", "_hash")

    def __init__(self, field, nums, den):
        raise TypeError("use NumberField.element()")

    @classmethod
    def _make(cls, field, nums, den):
        if den < 0:
            nums, den = [-n for n in nums], -den
        g = den
        for n in nums:
            if g == 1:
                break
            g = igcd(g, n)
        if g > 1:
            nums = [n // g for n in nums]
            den //= g
        self = object.__new__(cls)
        self.field = field
        self.nums = tuple(nums)
        self.den = den
        self._hash = None
        return self

    # -- views --------------------------------------------------------

    @property
    def coords(self):
        return tuple(Fraction(n, self.den) for n in self.nums)

    def is_zero(self):
        return not any(self.nums)

    def is_integral(self):
        """True iff the element lies in Z[beta]."""
        return self.den == 1

    def denominator_lcm(self):
        """Least J >= 1 with J * self in Z[beta]."""
        return self.den

    def rational_value(self):
        """The element as a Fraction if it lies in Q, else None."""
        if any(self.nums[1:]):
            return None
        return Fraction(self.nums[0], self.den)

    def to_strings(self):
        return [str(c) if c.denominator != 1 else str(c.numerator) for c in self.coords]

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            mono = "" if k == 0 else ("b" if k == 1 else f"b^{k}")
            terms.append(f"{c}{'*' + mono if mono else ''}")
        return f"<{' + '.join(terms) or '0'} in {self.field!r}>"

    def __eq__(self, other):
        if isinstance(other, int):
            return self.den == 1 and self.nums[0] == other and not any(self.nums[1:])
        if isinstance(other, Fraction):
            return self == self.field.element([other])
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.den == other.den and self.nums == other.nums

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.p, self.nums, self.den))
        return self._hash

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements belong to different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.element([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return FieldElement._make(self.field, [a + b for a, b in zip(self.nums, o.nums)], self.den)
        return FieldElement._make(
            self.field,
            [a * o.den + b * self.den for a, b in zip(self.nums, o.nums)],
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._make(self.field, [-a for a in self.nums], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement._make(self.field, [a * other for a in self.nums], self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.nums, o.nums
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return FieldElement._make(self.field, self.field._reduce(prod), self.den * o.den)

    __rmul__ = __mul__

    def mul_beta(self):
        """Multiply by beta (one application of the companion action)."""
        coeffs = [0] + list(self.nums)
        return FieldElement._make(self.field, self.field._reduce(coeffs), self.den)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(beta)")
        f = self.field
        # extended Euclid: u * a + v * p = g
        r0, r1 = [Fraction(c) for c in f.p], [Fraction(n, self.den) for n in self.nums]
        r1 = poly.trim(r1)
        u0, u1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = poly.divmod_poly(r0, r1)
            r0, r1 = r1, r
            u0, u1 = u1, poly.sub(u0, poly.mul(q, u1))
            if not r1:
                break
        if not r1:
            # r0 is a nontrivial common factor of a and p
            raise ReducibleDetected(poly.format_polynomial(poly.primitive(r0)))
        c = r1[0]
        return f.element([x / c for x in u1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(beta)")
            return FieldElement._make(self.field, list(self.nums), self.den * other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pow_beta(self, n):
        """self * beta^n for any integer n."""
        if n >= 0:
            x = self
            for _ in range(n):
                x = x.mul_beta()
            return x
        return self * self.field.beta_inv ** (-n)
