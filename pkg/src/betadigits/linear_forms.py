"""Linear forms Y_R in the powers of eta = (beta - 1) xi and their bookkeeping.

Notation follows the lower-bound argument for digit exchanges:

* B_k = A_k (beta - 1)^(D-k) / pi, so that sum_k B_k eta^k = 0;
* rho(k; m) is the coefficient of beta^-m in (sum_n s_n beta^-n)^k;
* Y_R = sum_{k>=1} B_k sum_{m>=1} beta^-m rho(k; m + R), which equals the
  finite expression -B_0 beta^R - sum_k B_k sum_{j=0}^{R} beta^(R-j) rho(k; j).
"""
import bisect
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .balls import ComplexBall
from .convolution import convolve_exact
from .errors import (
    HorizonExceeded,
    HypothesisIIViolated,
    NotInGapInterior,
    ThresholdTieUnresolved,
)
from .exchange import sumset
from .roots import PRECISION_CAP, embed, embed_loose


@dataclass(frozen=True)
class BCoefficients:
    B: tuple  # B_0 .. B_D

    @property
    def D(self):
        return len(self.B) - 1

    def __getitem__(self, k):
        return self.B[k]


def compute_B(A, pi, check=True):
    """B_k = A_k (beta-1)^(D-k) / pi; raises if some B_k (k >= 1) is not in Z[beta]."""
    if pi.is_zero():
        raise ZeroDivisionError("pi must be nonzero")
    D = len(A) - 1
    if A[D].is_zero():
        raise ValueError("leading coefficient A_D must be nonzero")
    field = pi.field
    pinv = pi.inverse()
    bm1 = field.beta - 1
    B = tuple(A[k] * bm1 ** (D - k) * pinv for k in range(D + 1))
    if check:
        for k in range(1, D + 1):
            if not B[k].is_integral():
                raise HypothesisIIViolated(
                    f"(beta-1)^{D - k} A_{k} / pi = {B[k].to_strings()} is not in Z[beta]", witness=k
                )
    return BCoefficients(B)


@dataclass(frozen=True)
class HypothesisIIIResult:
    holds: bool
    witness: int | None  # least n >= 1 with B_0 beta^n in Z[beta]
    modulus: int  # q = denominator of B_0
    states_visited: int
    integral_at_zero: bool  # B_0 itself in Z[beta] (the n = 0 case, reported separately)


def check_hypothesis_iii(B0):
    """Decide whether B_0 beta^n lies outside Z[beta] for every n >= 1.

    With q the common denominator of B_0 and c its integer numerator vector,
    B_0 beta^n is integral iff C^n c = 0 mod q for the companion matrix C.
    The orbit of c in (Z/q)^d is finite, so it either reaches 0 or cycles.
    """
    field = B0.field
    q = B0.den
    if q == 1:
        return HypothesisIIIResult(False, 1, 1, 1, True)
    state = tuple(c % q for c in B0.nums)
    seen = {state}
    n = 0
    while True:
        n += 1
        coeffs = field._reduce([0] + list(state))
        state = tuple(c % q for c in coeffs)
        if not any(state):
            return HypothesisIIIResult(False, n, q, n, False)
        if state in seen:
            return HypothesisIIIResult(True, None, q, n, False)
        seen.add(state)


def check_hypothesis_i_exact(A, xi):
    """sum_k A_k xi^k == 0 for xi in Q(beta)."""
    acc = xi.field.zero
    for a in reversed(A):
        acc = acc * xi + a
    return acc.is_zero()


def check_hypothesis_i_ball(A, digits, root, M=None, work=256):
    """Certified consistency: the truncated digit series with its tail ball is compatible with A(xi) = 0."""
    field = A[0].field
    M = min(len(digits), M or len(digits))
    binv = embed_loose(field.beta_inv, root, work)
    acc = ComplexBall(0, 0, 0, work)
    for t in reversed(digits.digits[:M]):
        acc = acc * binv + int(t)
    acc = acc * binv
    mb = embed_loose(field.beta, root, work).abs_lower()
    tail = digits.T * binv.abs_upper() ** M / (mb - 1)
    xi_ball = inflate(acc, tail)
    val = ComplexBall(0, 0, 0, work)
    for a in reversed(A):
        val = val * xi_ball + embed_loose(a, root, work)
    return val.contains_zero()


def inflate(ball, r):
    r = Fraction(r) * (1 << ball.prec)
    extra = -((-r.numerator) // r.denominator)
    return ComplexBall(ball.re, ball.im, ball.rad + extra, ball.prec)


# -- rho and Y_R ------------------------------------------------------


def rho_table(e, D, M=None):
    """Arrays rho[k][m] for 1 <= k <= D and 0 <= m < M (rho[0] is unused).

    Only s_0..s_{M-1} enter rho(k; m) for m < M, so M may not exceed the
    horizon of the exchange data.
    """
    M = e.horizon if M is None else M
    if M > e.horizon:
        raise HorizonExceeded(f"rho up to {M} needs {M} transformed digits, have {e.horizon}")
    s = e.s[:M].astype(np.int64)
    table = [None, s.copy()]
    for _ in range(2, D + 1):
        table.append(convolve_exact(table[-1], s, M))
    return table


def rho(k, m, e, table=None):
    if m >= e.horizon:
        raise HorizonExceeded(f"rho({k}; {m}) needs s up to index {m}")
    if table is None or len(table[k]) <= m:
        table = rho_table(e, k, m + 1)
    return int(table[k][m])


def _combined(B, table, j):
    acc = None
    for k in range(1, B.D + 1):
        r = int(table[k][j])
        if r:
            term = B[k] * r
            acc = term if acc is None else acc + term
    return acc


def Y_R_exact(R, B, table):
    """Y_R from its finite closed form, evaluated by Horner in beta."""
    if R >= len(table[1]):
        raise HorizonExceeded(f"Y_{R} needs rho up to index {R}")
    acc = -B[0] * B[0].field.beta_inv
    for j in range(R + 1):
        acc = acc.mul_beta()
        c = _combined(B, table, j)
        if c is not None:
            acc = acc - c
    return acc


def Y_sequence(B, table, N):
    """Y_0, ..., Y_{N-1}, each the closed form, built by extending the Horner scheme.

    Y_R = beta Y_{R-1} - sum_k B_k rho(k; R), with Y_{-1} = -B_0 / beta.
    """
    if N > len(table[1]):
        raise HorizonExceeded(f"Y up to {N - 1} needs rho up to index {N - 1}")
    out = []
    field = B[0].field
    y = -B[0] * field.beta_inv
    for R in range(N):
        y = y.mul_beta()
        c = _combined(B, table, R)
        if c is not None:
            y = y - c
        out.append(y)
    return out


def Y_series_check(R, B, table, root, M, work=128):
    """Compare Y_R with the series truncated after M terms.

    Returns (ok, difference upper bound, tail bound) where the tail bound is
    sum_k |B_k| sum_{m>M} |beta|^-m (S(m+R+1))^k with S = max|s_n|.
    Needs rho up to index R + M.
    """
    if R + M >= len(table[1]):
        raise HorizonExceeded("series check beyond the rho horizon")
    field = B[0].field
    binv = embed_loose(field.beta_inv, root, work)
    beta_lo = embed_loose(field.beta, root, work).abs_lower()
    total = ComplexBall(0, 0, 0, work)
    tail = Fraction(0)
    s_max = max(1, int(np.max(np.abs(table[1]))))
    x = 1 / beta_lo
    for k in range(1, B.D + 1):
        acc = ComplexBall(0, 0, 0, work)
        for m in range(M, 0, -1):
            acc = acc * binv + int(table[k][m + R])
        acc = acc * binv
        bk = embed_loose(B[k], root, work)
        total = total + bk * acc
        # geometric domination of the tail starting at m = M + 1
        first = x ** (M + 1) * Fraction(s_max * (M + R + 2)) ** k
        ratio = x * Fraction(M + R + 3, M + R + 2) ** k
        if ratio >= 1:
            raise ValueError("truncation too short for a convergent tail bound")
        tail += bk.abs_upper() * first / (1 - ratio)
    exact = embed_loose(Y_R_exact(R, B, table), root, work)
    diff = (exact - total).abs_upper()
    return diff <= tail, diff, tail


def assert_Y_nonzero(Y, B, R):
    """True if Y_R != 0.  A zero forces B_0 beta^R into Z[beta]; that is asserted."""
    if not Y.is_zero():
        return True
    if not B[0].pow_beta(R).is_integral():
        raise AssertionError(f"Y_{R} = 0 but B_0 beta^{R} is not integral")
    return False


# -- gap structure ----------------------------------------------------


@dataclass(frozen=True)
class GapStructure:
    """Points i(1) = 0 < ... < i(tau) of (D-1)Gamma below N, and i(tau+1) = N.

    Intervals I_h = [i(h), i(h+1)) for h = 1..tau partition [0, N).
    """

    points: tuple  # i(1) .. i(tau+1)
    N: int

    @property
    def tau(self):
        return len(self.points) - 1

    def i(self, h):
        return self.points[h - 1]

    def interval(self, h):
        return range(self.i(h), self.i(h + 1))

    def interior(self, h):
        return range(self.i(h) + 1, self.i(h + 1))

    def locate(self, R):
        """The h with R in I_h."""
        return bisect.bisect_right(self.points, R)


def gap_structure(e, D, N):
    if N > e.horizon:
        raise HorizonExceeded(f"gap structure up to {N} needs {N} transformed digits")
    S = sumset(e.gamma, D - 1, N)
    pts = tuple(int(x) for x in S.members) + (N,)
    return GapStructure(pts, N)


def verify_recursion(R, h, B, Ys, table, G):
    """Exact check of Y_{R-1} = (B_D / beta) rho(D; R) + Y_R / beta for R inside I_h.

    Also checks rho(k; R) = 0 for 1 <= k <= D-1.
    """
    if not (1 <= h <= G.tau and G.i(h) < R < G.i(h + 1)):
        raise NotInGapInterior(f"R={R} is not strictly inside I_{h}")
    D = B.D
    for k in range(1, D):
        if table[k][R] != 0:
            return False
    binv = B[0].field.beta_inv
    rhs = (B[D] * int(table[D][R]) + Ys[R]) * binv
    return Ys[R - 1] == rhs


# -- threshold counting -----------------------------------------------


class ThresholdComparator:
    """Decides |sigma(Y)| >= C9 = |sigma(B_D)| / (2|beta|) with certified balls.

    For a real embedding |Y| = C9 exactly iff Y = +-B_D/(2 beta), which is
    tested in Q(beta) first; otherwise precision is doubled until the balls
    separate or the cap is hit.
    """

    def __init__(self, B, root, cap=PRECISION_CAP):
        self.root = root
        self.cap = cap
        field = B[0].field
        self.c9_element = B[B.D] * field.beta_inv / 2
        self._c9 = {}
        self.real = root.is_real

    def c9_bounds(self, work):
        if work not in self._c9:
            ball = embed(self.c9_element, self.root, work)
            self._c9[work] = (ball.abs_lower(), ball.abs_upper())
        return self._c9[work]

    def at_least(self, Y):
        # exact tie; for a complex embedding this is only a sufficient test
        if Y == self.c9_element or Y == -self.c9_element:
            return True
        if not self.real and Y.field.d == 2:
            # imaginary quadratic field: |sigma(Y)|^2 is the norm, compare exactly
            return _norm2(Y) >= _norm2(self.c9_element)
        work = 64
        while work <= self.cap:
            lo, hi = self.c9_bounds(work)
            ball = embed_loose(Y, self.root, work)
            if ball.abs_lower() > hi:
                return True
            if ball.abs_upper() < lo:
                return False
            work *= 2
        raise ThresholdTieUnresolved(f"|Y| vs C9 undecided at {self.cap} bits for Y = {Y.to_strings()}")


def _norm2(x):
    """Norm of a + b beta in a quadratic field X^2 + p1 X + p0."""
    p0, p1 = x.field.p[0], x.field.p[1]
    a, b = (Fraction(c) for c in x.coords)
    return a * a - p1 * a * b + p0 * b * b


def threshold_flags(Ys, B, root, cap=PRECISION_CAP):
    cmp = ThresholdComparator(B, root, cap)
    return np.array([cmp.at_least(Y) for Y in Ys], dtype=bool)


def y_N_count(flags, N):
    """Number of R < N with |Y_R| >= C9."""
    return int(np.count_nonzero(flags[:N]))


def gap_lemma_check(flags, G, C10, log_beta_N):
    """Backward distance from each admissible R to the previous threshold hit.

    Admissible: i(h) + 3 C10 log_|beta| N < R < i(h+1).  Returns
    (number checked, largest distance, bound 2 C10 log_|beta| N, failures).
    """
    N = G.N
    last = np.full(N, -1, dtype=np.int64)
    prev = -1
    for R in range(N):
        last[R] = prev
        if flags[R]:
            prev = R
    bound = 2 * C10 * log_beta_N
    checked, worst, failures = 0, 0, []
    for h in range(1, G.tau + 1):
        lo = G.i(h) + 3 * C10 * log_beta_N
        start = max(G.i(h) + 1, int(np.floor(lo)) + 1)
        for R in range(start, G.i(h + 1)):
            checked += 1
            dist = R - last[R] if last[R] >= 0 else float("inf")
            worst = max(worst, dist)
            if dist > bound:
                failures.append(R)
    return checked, worst, bound, failures
