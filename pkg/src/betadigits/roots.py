"""Certified root isolation and certified evaluation of embeddings.

Approximate roots come from Aberth iteration in mpmath; they are then
certified with Smith's inclusion theorem: for monic p of degree d and
distinct points z_1..z_d, the discs |z - z_i| <= d*|W_i| with
W_i = p(z_i) / prod_{j != i}(z_i - z_j) cover all roots, and a connected
component made of k discs holds exactly k roots.  Pairwise disjoint discs
therefore isolate the roots one by one.  All certification arithmetic is
exact integer arithmetic on dyadic centers.
"""
from fractions import Fraction
from math import isqrt

import mpmath

from .balls import ComplexBall
from .errors import DomainError, PrecisionExhausted

DEFAULT_PRECISION = 64
PRECISION_CAP = 1 << 16


class RootEnclosure:
    """A certified disc containing exactly one root of the defining polynomial.

    Real roots carry an exact rational bracket ``(lo, hi)`` with a sign change
    of p, and a ball whose imaginary part is exactly zero.
    """

    __slots__ = ("field", "index", "ball", "is_real", "lo", "hi")

    def __init__(self, field, index, ball, is_real, lo=None, hi=None):
        self.field = field
        self.index = index
        self.ball = ball
        self.is_real = is_real
        self.lo = lo
        self.hi = hi

    multiplicity = 1

    @property
    def approx(self):
        return complex(self.ball)

    @property
    def radius(self):
        return self.ball.radius

    def __repr__(self):
        kind = "real" if self.is_real else "complex"
        return f"RootEnclosure(#{self.index}, {kind}, {self.ball!r})"

    def refine(self, prec, cap=PRECISION_CAP):
        """Enclosure of the same root with radius <= 2**-prec."""
        if self.ball.rad == 0 or self.radius <= Fraction(1, 1 << prec):
            return self
        if prec > cap:
            raise PrecisionExhausted(f"root refinement beyond {cap} bits requested")
        cache = self.field._roots_cache
        key = ("refined", self.index, prec)
        if key in cache:
            return cache[key]
        if self.is_real:
            lo, hi = _refine_real(self.field.p, self.lo, self.hi, prec)
            mid, half = (lo + hi) / 2, (hi - lo) / 2
            ball = ComplexBall.from_fractions(mid, 0, half, prec + 2)
            out = RootEnclosure(self.field, self.index, ball, True, lo, hi)
        else:
            # the old disc holds exactly one root; a single overlapping new
            # disc must therefore be the one holding that root
            work = prec
            while True:
                hits = [e for e in _isolate(self.field, work, cap) if e.ball.overlaps(self.ball)]
                if len(hits) == 1:
                    break
                work *= 2
                if work > cap:
                    raise PrecisionExhausted("could not match refined enclosure")
            out = RootEnclosure(self.field, self.index, hits[0].ball, False)
        cache[key] = out
        return out


def _sign_at(p, x):
    x = Fraction(x)
    d = len(p) - 1
    acc = 0
    den_pow = 1
    for k in range(d, -1, -1):
        acc = acc * x.numerator + p[k] * den_pow
        den_pow *= x.denominator
    return (acc > 0) - (acc < 0)


def _mpf_to_fraction(x):
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp) if man else Fraction(0)


def _fraction_to_mpf(q):
    return mpmath.mpf(q.numerator) / q.denominator


def _refine_real(p, lo, hi, prec):
    """Shrink a sign-change bracket of a simple real root to width <= 2**-prec."""
    target = Fraction(1, 1 << prec)
    s_lo = _sign_at(p, lo)
    if s_lo == 0:
        return lo, lo
    s_hi = _sign_at(p, hi)
    if s_hi == 0:
        return hi, hi
    if s_lo == s_hi:
        raise ArithmeticError("bracket without sign change")
    with mpmath.workprec(prec + 32):
        coeffs = [mpmath.mpf(c) for c in reversed(p)]
        x = _fraction_to_mpf((lo + hi) / 2)
        for _ in range(200):
            if hi - lo <= target:
                break
            val, der = mpmath.polyval(coeffs, x, derivative=True)
            if der != 0:
                x = x - val / der
            xf = _mpf_to_fraction(x)
            eps = target / 4
            a, b = max(lo, xf - eps), min(hi, xf + eps)
            if a < b:
                sa, sb = _sign_at(p, a), _sign_at(p, b)
                if sa == 0:
                    return a, a
                if sb == 0:
                    return b, b
                if sa != sb:
                    lo, hi = a, b
                    continue
            # Newton guess unusable: bisect a few times
            for _ in range(4):
                mid = (lo + hi) / 2
                sm = _sign_at(p, mid)
                if sm == 0:
                    return mid, mid
                if sm == s_lo:
                    lo = mid
                else:
                    hi = mid
            x = _fraction_to_mpf((lo + hi) / 2)
    while hi - lo > target:
        mid = (lo + hi) / 2
        sm = _sign_at(p, mid)
        if sm == 0:
            return mid, mid
        if sm == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _aberth(p, start, prec, max_iter=500):
    d = len(p) - 1
    with mpmath.workprec(prec + 20):
        coeffs = [mpmath.mpf(c) for c in reversed(p)]
        z = [mpmath.mpc(c) for c in start]
        tol = mpmath.mpf(2) ** (-prec - 4)
        for _ in range(max_iter):
            worst = mpmath.mpf(0)
            for i in range(d):
                val, der = mpmath.polyval(coeffs, z[i], derivative=True)
                if val == 0:
                    continue
                if der == 0:
                    der = mpmath.mpf(2) ** (-prec)
                ratio = val / der
                s = mpmath.fsum(1 / (z[i] - z[j]) for j in range(d) if j != i and z[i] != z[j])
                w = ratio / (1 - ratio * s)
                z[i] -= w
                worst = max(worst, abs(w) / max(1, abs(z[i])))
            if worst < tol:
                break
        return z


def _initial_guesses(p):
    d = len(p) - 1
    bound = 1 + max(abs(c) for c in p[:-1])
    radius = min(bound, 2 * max(abs(c) for c in p[:-1]) ** (1.0 / d) + 1)
    out = []
    for k in range(d):
        angle = 2 * mpmath.pi * (k + 0.25) / d + 0.4
        out.append(mpmath.mpc(radius * mpmath.cos(angle), radius * mpmath.sin(angle)))
    return out


def _to_dyadic(z, P):
    re = mpmath.mpf(z.real)
    im = mpmath.mpf(z.imag)
    return int(mpmath.nint(re * (mpmath.mpf(2) ** P))), int(mpmath.nint(im * (mpmath.mpf(2) ** P)))


def _symmetrize(approx, prec):
    """Snap near-real approximations to the axis and pair conjugates exactly."""
    tol = mpmath.mpf(2) ** (-(prec // 2))
    real, upper, lower = [], [], []
    for z in approx:
        z = mpmath.mpc(z)
        if abs(z.imag) <= tol * max(1, abs(z)):
            real.append(mpmath.mpc(z.real, 0))
        elif z.imag > 0:
            upper.append(z)
        else:
            lower.append(z)
    if len(upper) != len(lower):
        return None
    out = list(real)
    remaining = list(lower)
    for z in upper:
        j = min(range(len(remaining)), key=lambda k: abs(remaining[k] - mpmath.conj(z)))
        w = remaining.pop(j)
        mid = (z + mpmath.conj(w)) / 2
        out.append(mid)
        out.append(mpmath.conj(mid))
    return out


def _smith_certify(p, centers, P):
    """Exact Smith radii for dyadic centers (a + bi)/2**P; None if discs overlap.

    Returns a list of integer radii r_i (in units 2**-P, rounded up).
    """
    d = len(p) - 1
    radii = []
    for i, (a, b) in enumerate(centers):
        # p(z) * 2**(P*d) as an exact Gaussian integer
        vr, vi = 0, 0
        for k in range(d, -1, -1):
            vr, vi = vr * a - vi * b + p[k] * (1 << (P * (d - k))), vr * b + vi * a
        # prod (z_i - z_j) * 2**(P*(d-1))
        qr, qi = 1, 0
        for j, (c, e) in enumerate(centers):
            if j == i:
                continue
            dr, di = a - c, b - e
            if dr == 0 and di == 0:
                return None
            qr, qi = qr * dr - qi * di, qr * di + qi * dr
        num2 = vr * vr + vi * vi
        den2 = qr * qr + qi * qi
        # |W|^2 = num2 / (den2 * 2**(2P));  radius^2 in units 2**-2P: d^2 |W|^2 2**(2P)
        r2_num = d * d * num2
        r2 = -((-r2_num) // den2)
        r = isqrt(r2)
        if r * r < r2:
            r += 1
        radii.append(r)
    for i in range(d):
        for j in range(i + 1, d):
            dx = centers[i][0] - centers[j][0]
            dy = centers[i][1] - centers[j][1]
            s = radii[i] + radii[j]
            if dx * dx + dy * dy <= s * s:
                return None
    return radii


def _order_key(z):
    # moduli equal to ~1e-9 count as tied (conjugate pairs, unit-circle roots)
    z = complex(z)
    return (-round(abs(z), 9), -mpmath.arg(z) if z != 0 else 0.0)


def _isolate(field, prec, cap):
    """Certified enclosures at radius <= 2**-prec, in canonical order."""
    cache = field._roots_cache
    if prec in cache:
        return cache[prec]
    p = list(field.p)
    d = field.d
    if d == 1:
        r = Fraction(-p[0])
        encs = [RootEnclosure(field, 0, ComplexBall.from_rational(r, prec), True, r, r)]
        cache[prec] = encs
        return encs
    work = max(prec, 53)
    start = None
    prev = [k for k in cache if isinstance(k, int) and k < prec]
    if prev:
        start = [mpmath.mpc(complex(e.ball)) for e in cache[max(prev)]]
    while work <= cap:
        approx = _aberth(p, start or _initial_guesses(p), work)
        with mpmath.workprec(work + 40):
            sym = _symmetrize(approx, work)
            P = work + 8
            centers = [_to_dyadic(z, P) for z in sym] if sym is not None else None
        if centers is not None and len(centers) == d:
            radii = _smith_certify(p, centers, P)
            if radii is not None and max(radii) <= (1 << (P - prec)):
                encs = []
                for (a, b), r in zip(centers, radii):
                    ball = ComplexBall(a, b, r, P)
                    if b == 0:
                        lo, hi = ball.real_interval()
                        encs.append(RootEnclosure(field, -1, ball, True, lo, hi))
                    else:
                        encs.append(RootEnclosure(field, -1, ball, False))
                encs.sort(key=lambda e: _order_key(e.approx))
                for k, e in enumerate(encs):
                    e.index = k
                cache[prec] = encs
                return encs
        start = approx
        work *= 2
    raise PrecisionExhausted(f"root isolation did not certify below {cap} bits")


def isolate_roots(field, prec=DEFAULT_PRECISION, cap=PRECISION_CAP):
    """All d roots as pairwise disjoint certified enclosures.

    Order: descending modulus, ties broken by descending argument (so the
    member of a conjugate pair with positive imaginary part comes first).
    """
    base = _isolate(field, DEFAULT_PRECISION, cap)
    if prec <= DEFAULT_PRECISION:
        return list(base)
    return [e.refine(prec, cap) for e in base]


def select_root(field, index, cap=PRECISION_CAP):
    roots = isolate_roots(field, cap=cap)
    if not 0 <= index < len(roots):
        raise DomainError(f"root index {index} out of range 0..{len(roots) - 1}")
    return roots[index]


# -- embeddings -------------------------------------------------------


def _horner(x, root_ball, work):
    b = root_ball.with_prec(work)
    nums = x.nums
    acc = ComplexBall.exact_int(nums[-1], work)
    for c in reversed(nums[:-1]):
        acc = acc * b + c
    return acc.div_int(x.den)


def _magnitude_bits(x, root):
    m = max(abs(n) for n in x.nums)
    return m.bit_length() + len(x.nums) * int(abs(root.approx) + 2).bit_length()


def embed(x, root, precision_bits=32, cap=PRECISION_CAP):
    """Certified ball around sigma(x), sigma: beta -> root, radius <= 2**-precision_bits."""
    if x.is_zero():
        return ComplexBall(0, 0, 0, precision_bits)
    if x.field.d == 1:
        return ComplexBall.from_rational(x.rational_value() * 1, precision_bits + 2)
    target = Fraction(1, 1 << precision_bits)
    work = precision_bits + 16 + _magnitude_bits(x, root)
    while True:
        if work > cap:
            raise PrecisionExhausted(f"embedding needs more than {cap} bits")
        r = root.refine(work, cap)
        ball = _horner(x, r.ball, work + 8)
        if ball.radius <= target:
            return ball
        work *= 2


def embed_loose(x, root, work):
    """Ball around sigma(x) at working precision ``work`` with no radius target."""
    if x.is_zero():
        return ComplexBall(0, 0, 0, work)
    r = root.refine(work)
    return _horner(x, r.ball, work + 8)


def _require_real(root):
    if not root.is_real:
        raise DomainError("operation requires a real embedding")


def floor_real(x, root, cap=PRECISION_CAP):
    """Exact floor of the real number sigma(x)."""
    _require_real(root)
    q = x.rational_value()
    if q is not None:
        return q.numerator // q.denominator
    work = 64
    while work <= cap:
        lo, hi = embed_loose(x, root, work).real_interval()
        f_lo = lo.numerator // lo.denominator
        f_hi = hi.numerator // hi.denominator
        if f_lo == f_hi:
            return f_lo
        # exactly one integer m in (lo, hi]: it may be the exact value
        if f_hi == f_lo + 1 and x == f_hi:
            return f_hi
        work *= 2
    raise PrecisionExhausted("floor could not be certified")


def sign_real(x, root, cap=PRECISION_CAP):
    """Exact sign (-1, 0, 1) of the real number sigma(x)."""
    _require_real(root)
    if x.is_zero():
        return 0
    work = 64
    while work <= cap:
        lo, hi = embed_loose(x, root, work).real_interval()
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        work *= 2
    raise PrecisionExhausted("sign could not be certified")
