"""Complex balls with exact dyadic center and radius.

A ball stores integers ``re``, ``im``, ``rad`` and a precision ``prec``; it
denotes the closed disc with center ``(re + i*im) / 2**prec`` and radius
``rad / 2**prec``.  Every operation rounds outward, so the result disc
contains every exact result obtainable from points of the input discs.
"""
from fractions import Fraction
from math import isqrt


def _ceil_div(a, b):
    return -((-a) // b)


def _isqrt_ceil(n):
    r = isqrt(n)
    return r if r * r == n else r + 1


class ComplexBall:
    __slots__ = ("re", "im", "rad", "prec")

    def __init__(self, re, im, rad, prec):
        if rad < 0:
            raise ValueError("ball radius must be nonnegative")
        self.re = re
        self.im = im
        self.rad = rad
        self.prec = prec

    # -- construction -------------------------------------------------

    @classmethod
    def exact_int(cls, n, prec):
        return cls(n << prec, 0, 0, prec)

    @classmethod
    def from_rational(cls, x, prec, im=0):
        """Ball containing the complex rational ``x + i*im``."""
        x, im = Fraction(x), Fraction(im)
        re_n, re_exact = _round_fraction(x, prec)
        im_n, im_exact = _round_fraction(im, prec)
        # one ulp per rounded coordinate covers the diagonal error
        rad = (not re_exact) + (not im_exact)
        return cls(re_n, im_n, rad, prec)

    @classmethod
    def from_fractions(cls, center_re, center_im, radius, prec):
        """Smallest ball at ``prec`` enclosing the disc with the given rational data."""
        re_n, re_exact = _round_fraction(Fraction(center_re), prec)
        im_n, im_exact = _round_fraction(Fraction(center_im), prec)
        rad = Fraction(radius) * (1 << prec)
        rad_n = _ceil_div(rad.numerator, rad.denominator)
        rad_n += (not re_exact) + (not im_exact)
        return cls(re_n, im_n, rad_n, prec)

    # -- views --------------------------------------------------------

    @property
    def center(self):
        s = 1 << self.prec
        return Fraction(self.re, s), Fraction(self.im, s)

    @property
    def radius(self):
        return Fraction(self.rad, 1 << self.prec)

    @property
    def is_real(self):
        return self.im == 0

    def real_interval(self):
        s = 1 << self.prec
        return Fraction(self.re - self.rad, s), Fraction(self.re + self.rad, s)

    def abs_upper(self):
        n = self.re * self.re + self.im * self.im
        return Fraction(_isqrt_ceil(n) + self.rad, 1 << self.prec)

    def abs_lower(self):
        n = self.re * self.re + self.im * self.im
        return Fraction(max(0, isqrt(n) - self.rad), 1 << self.prec)

    def contains_zero(self):
        return self.re * self.re + self.im * self.im <= self.rad * self.rad

    def contains_point(self, re, im=0):
        s = 1 << self.prec
        dx = Fraction(re) * s - self.re
        dy = Fraction(im) * s - self.im
        return dx * dx + dy * dy <= self.rad * self.rad

    def contains(self, other):
        """True if ``other`` lies inside ``self`` (as discs)."""
        a, b = _align(self, other)
        if b.rad > a.rad:
            return False
        dx, dy = a.re - b.re, a.im - b.im
        gap = a.rad - b.rad
        return dx * dx + dy * dy <= gap * gap

    def overlaps(self, other):
        a, b = _align(self, other)
        dx, dy = a.re - b.re, a.im - b.im
        s = a.rad + b.rad
        return dx * dx + dy * dy <= s * s

    def __complex__(self):
        s = float(1 << self.prec) if self.prec < 1000 else None
        if s is not None:
            return complex(self.re / s, self.im / s)
        re, im = self.center
        return complex(float(re), float(im))

    def __repr__(self):
        z = complex(self)
        return f"ComplexBall({z.real:.12g}{z.imag:+.12g}j +/- {float(self.radius):.3g})"

    # -- arithmetic ---------------------------------------------------

    def __neg__(self):
        return ComplexBall(-self.re, -self.im, self.rad, self.prec)

    def __add__(self, other):
        if isinstance(other, int):
            return ComplexBall(self.re + (other << self.prec), self.im, self.rad, self.prec)
        a, b = _align(self, other)
        return ComplexBall(a.re + b.re, a.im + b.im, a.rad + b.rad, a.prec)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ComplexBall(self.re * other, self.im * other, self.rad * abs(other), self.prec)
        a, b = _align(self, other)
        p = a.prec
        re2 = a.re * b.re - a.im * b.im
        im2 = a.re * b.im + a.im * b.re
        mag_a = _isqrt_ceil(a.re * a.re + a.im * a.im)
        mag_b = _isqrt_ceil(b.re * b.re + b.im * b.im)
        err2 = mag_a * b.rad + mag_b * a.rad + a.rad * b.rad
        if re2 == 0 and im2 == 0 and err2 == 0:
            return ComplexBall(0, 0, 0, p)
        re_n = re2 >> p
        im_n = im2 >> p
        inexact = (re_n << p) != re2 or (im_n << p) != im2
        rad = _ceil_div(err2, 1 << p) + (2 if inexact else 0)
        return ComplexBall(re_n, im_n, rad, p)

    __rmul__ = __mul__

    def div_int(self, n):
        """Divide by a nonzero integer."""
        if n < 0:
            return (-self).div_int(-n)
        re_n, re_r = divmod(self.re, n)
        im_n, im_r = divmod(self.im, n)
        rad = _ceil_div(self.rad, n) + (re_r != 0) + (im_r != 0)
        return ComplexBall(re_n, im_n, rad, self.prec)

    def conjugate(self):
        return ComplexBall(self.re, -self.im, self.rad, self.prec)

    def with_prec(self, prec):
        """Re-express at another precision (exact when increasing)."""
        if prec >= self.prec:
            k = prec - self.prec
            return ComplexBall(self.re << k, self.im << k, self.rad << k, prec)
        k = self.prec - prec
        re_n = self.re >> k
        im_n = self.im >> k
        inexact = (re_n << k) != self.re or (im_n << k) != self.im
        rad = _ceil_div(self.rad, 1 << k) + (2 if inexact else 0)
        return ComplexBall(re_n, im_n, rad, prec)

    def abs_ball(self):
        """Real ball containing |z|."""
        lo, hi = self.abs_lower(), self.abs_upper()
        mid = (lo + hi) / 2
        return ComplexBall.from_fractions(mid, 0, (hi - lo) / 2, self.prec)


def _round_fraction(x, prec):
    num = x.numerator << prec
    q, r = divmod(num, x.denominator)
    return q, r == 0


def _align(a, b):
    if a.prec == b.prec:
        return a, b
    if a.prec > b.prec:
        return a, b.with_prec(a.prec)
    return a.with_prec(b.prec), b


def compare_abs(a, b):
    """Certified comparison of |a| and |b|: -1, 1, or None when undecided."""
    if a.abs_upper() < b.abs_lower():
        return -1
    if a.abs_lower() > b.abs_upper():
        return 1
    return None
