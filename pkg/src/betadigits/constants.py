"""Explicit values for every implied constant of the digit-exchange lower bound.

Each constant is a rational number together with the formula that produced
it.  Wherever the argument leaves slack, the loosest safe choice is taken;
tightness is not a goal.  Logarithms and roots are evaluated with mpmath at
high precision and rounded outward to rationals.
"""
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, floor

import mpmath

from .roots import embed, isolate_roots

_EPS = mpmath.mpf(2) ** -120


def _mpf(q):
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


def _to_fraction(x):
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp) if man else Fraction(0)


def _up(x):
    with mpmath.workprec(200):
        x = mpmath.mpf(x)
        return _to_fraction(x + abs(x) * _EPS + _EPS ** 2)


def _down(x):
    with mpmath.workprec(200):
        x = mpmath.mpf(x)
        return _to_fraction(x - abs(x) * _EPS - _EPS ** 2)


def _ceil(q):
    q = Fraction(q)
    return -((-q.numerator) // q.denominator)


def eulerian_series_bound(D, x):
    """sum_{j>=0} (j+1)^D x^j = E_D(x) / (1-x)^(D+1), E_D the Eulerian polynomial."""
    x = Fraction(x)
    num = Fraction(0)
    for k in range(D):
        a = sum((-1) ** i * comb(D + 1, i) * (k + 1 - i) ** D for i in range(k + 2))
        num += a * x ** k
    return num / (1 - x) ** (D + 1)


@dataclass
class Constant:
    value: Fraction
    formula: str
    provenance: str

    def to_json(self):
        v = Fraction(self.value)
        return {
            "value": str(v),
            "approx": float(v),
            "formula": self.formula,
            "provenance": self.provenance,
        }


@dataclass
class ConstantsRecord:
    d: int
    D: int
    T: int
    N0: int
    real_base: bool
    beta_abs: tuple  # certified (lower, upper) for |beta|
    sigma_bounds: list  # sigma_bounds[i][k] >= |sigma_i(B_k)|
    constants: dict = dc_field(default_factory=dict)

    def __getitem__(self, name):
        return self.constants[name].value

    def add(self, name, value, formula, provenance):
        self.constants[name] = Constant(value, formula, provenance)
        return value

    def log_beta(self, N, upper=True):
        """log_|beta| N, bounded from above (upper=True) or below."""
        lo, hi = self.beta_abs
        with mpmath.workprec(120):
            b = _mpf(lo if upper else hi)
            return mpmath.log(N) / mpmath.log(b)

    def gamma_bound(self, N):
        """C5 (N / log N)^(1/D) as an mpf (N >= 2)."""
        with mpmath.workprec(120):
            return _mpf(self["C5"]) * (mpmath.mpf(N) / mpmath.log(N)) ** (mpmath.mpf(1) / self.D)

    def to_json(self):
        return {
            "d": self.d,
            "D": self.D,
            "T": self.T,
            "N0": self.N0,
            "real_base": self.real_base,
            "beta_abs": [str(self.beta_abs[0]), str(self.beta_abs[1])],
            "sigma_bounds": [[str(b) for b in row] for row in self.sigma_bounds],
            "constants": {k: c.to_json() for k, c in self.constants.items()},
        }


def derive_sigma_bounds(B, roots, prec=40):
    """Certified rational upper bounds on |sigma_i(B_k)| for every root i and every k."""
    out = []
    for r in roots:
        row = []
        for b in B.B:
            row.append(Fraction(0) if b.is_zero() else embed(b, r, prec).abs_upper())
        out.append(row)
    return out


def _conjugate_indices(roots, root):
    """Indices of the embeddings other than beta (and its complex conjugate)."""
    if root.is_real:
        return [r.index for r in roots if r.index != root.index]
    conj = root.ball.conjugate()
    others = [r for r in roots if r.index != root.index]
    partner = min(others, key=lambda r: abs(complex(r.ball) - complex(conj)))
    return [r.index for r in others if r.index != partner.index]


def derive_C7_C8(rec, J, conj_idx):
    """|Y_R| > R^-C7 for R >= C8, from the norm of the algebraic integer J Y_R.

    Each other conjugate obeys |sigma_i(Y_R)| <= W (R+1)^(D+1) with
    W = max_i (|sigma_i(B_0)| + sum_k |sigma_i(B_k)| (2T)^k), so
    |Y_R| >= c (R+1)^-e with c = (J^d W^m)^(-1/r), e = m (D+1) / r,
    r = 1 (real beta) or 2 (complex beta) and m = d - r.
    """
    D, d, T = rec.D, rec.d, rec.T
    r = 1 if rec.real_base else 2
    m = d - r
    W = Fraction(0)
    for i in conj_idx:
        row = rec.sigma_bounds[i]
        W = max(W, row[0] + sum(row[k] * (2 * T) ** k for k in range(1, D + 1)))
    rec.add(
        "W",
        W,
        "max over other conjugates of |s_i(B_0)| + sum_k |s_i(B_k)| (2T)^k",
        "conjugate size of Y_R",
    )
    e = Fraction(m * (D + 1), r)
    with mpmath.workprec(200):
        c = (_mpf(J) ** d * (_mpf(W) ** m if m else 1)) ** (-mpmath.mpf(1) / r)
        c_lo = _down(c)
        C7 = floor(e) + 1
        gap = C7 - e
        thresh = (mpmath.mpf(2) ** _mpf(e) / _mpf(c_lo)) ** (1 / _mpf(gap))
        C8 = max(1, int(mpmath.floor(_up(thresh))) + 1)
    rec.add("c_norm", c_lo, "(J^d W^m)^(-1/r); |Y_R| >= c_norm (R+1)^-e", "norm of J Y_R")
    rec.add("e_norm", e, "m (D+1) / r", "norm of J Y_R")
    rec.add("C7", Fraction(C7), "floor(e) + 1", "lower bound |Y_R| > R^-C7")
    rec.add("C8", Fraction(C8), "floor((2^e / c_norm)^(1/(C7-e))) + 1", "lower bound |Y_R| > R^-C7")
    return C7, C8


def derive_constants(B, root, T, N0, cap_prec=40):
    """Build the full :class:`ConstantsRecord` for an instance.

    ``T`` bounds the digits |t_n|; ``N0`` is the index of the first nonzero
    digit of the original sequence (the constants refer to the shifted one).
    """
    field = B[0].field
    roots = isolate_roots(field)
    D, d = B.D, field.d
    ball = embed(field.beta, root, 128)
    beta_lo, beta_hi = ball.abs_lower(), ball.abs_upper()
    rec = ConstantsRecord(
        d=d,
        D=D,
        T=T,
        N0=N0,
        real_base=root.is_real,
        beta_abs=(beta_lo, beta_hi),
        sigma_bounds=derive_sigma_bounds(B, roots, cap_prec),
    )
    J = B[0].denominator_lcm()
    rec.add("J", Fraction(J), "least J with J B_0 in Z[beta]", "integrality of J Y_R")
    C7, C8 = derive_C7_C8(rec, J, _conjugate_indices(roots, root))

    bD = rec.sigma_bounds[root.index]
    c9_ball = embed(B[D] * field.beta_inv / 2, root, 128)
    C9_lo = c9_ball.abs_lower()
    rec.add("C9", C9_lo, "|B_D| / (2|beta|) (certified lower bound)", "threshold for |Y_R|")
    C10 = 1 + D + C7
    rec.add("C10", Fraction(C10), "1 + D + C7", "gap lemma")
    C11 = max(4 * C10 + 1, 8 * C10)
    rec.add(
        "C11",
        Fraction(C11),
        "max(4 C10 + 1, 8 C10); each admissible run of length L' holds >= (L' - 1 - 3 C10 log N)/(2 C10 log N) hits",
        "hits per gap interval",
    )

    x = 1 / beta_lo
    G = eulerian_series_bound(D, x)
    rec.add("G", G, "sum_{j>=0} (j+1)^D |beta|^-j (Eulerian closed form)", "geometric tail")
    two_T = 2 * T
    P = Fraction(0)
    Q = Fraction(0)
    for k in range(1, D + 1):
        P += bD[k] * two_T ** k * (Fraction(2 ** k) / (beta_lo - 1) + 2 ** D * G / beta_lo)
        Q += bD[k] * two_T ** k * G / beta_lo
    P /= C9_lo
    with mpmath.workprec(200):
        inv_log_beta = _up(1 / mpmath.log(_mpf(beta_lo)))
    K_coef = (D + 1) * inv_log_beta + 1
    C12 = max(K_coef, P)
    rec.add(
        "C12",
        C12,
        "max((D+1)/log|beta| + 1, (1/C9) sum_k |B_k| (2T)^k (2^k/(|beta|-1) + 2^D G/|beta|))",
        "count of R with |Y_R| >= C9",
    )
    rec.add("Q_sup", Q, "sum_k |B_k| (2T)^k G / |beta|; |Y_R| <= Q_sup (N+1)^D for R < N", "size of Y_R")

    # thresholds on N used conditionally along the argument
    th = {}
    th["y_bound"] = 3
    th["Y_small"] = _ceil(Q * 2 ** D) + 1
    with mpmath.workprec(200):
        lb = _mpf(beta_hi)
        th["gap_start"] = int(mpmath.ceil(_up(lb ** (mpmath.mpf(C8 + 2) / (2 * C10))))) + 1
        th["gap_len"] = int(mpmath.ceil(_up(lb ** (mpmath.mpf(2) / C10)))) + 1
        th["log_ge_1"] = int(mpmath.ceil(_up(lb))) + 1
        # smallest N with 2 C11 C12 log(N) log_|beta|(N) <= N, monotone beyond e^2
        coef = 2 * _mpf(C11) * _mpf(C12) * _mpf(inv_log_beta)

        def ok(n):
            return coef * mpmath.log(n) ** 2 <= n

        hi = 8
        while not ok(hi):
            hi *= 2
        lo = max(8, hi // 2)
        while lo < hi:
            mid = (lo + hi) // 2
            if ok(mid):
                hi = mid
            else:
                lo = mid + 1
        N_gap = max(th["Y_small"], th["gap_start"], th["gap_len"], th["log_ge_1"])
        rec.add(
            "N_gap",
            Fraction(N_gap),
            "max(Y_small, gap_start, gap_len, log_ge_1)",
            "validity range of the gap lemma",
        )
        th["final_chain"] = hi
        N_star = max(th.values())
        rec.add(
            "N_lambda",
            Fraction(N_star),
            "max of the thresholds " + ", ".join(f"{k}={v}" for k, v in th.items()),
            "validity range of lambda bound",
        )
        kappa = (_mpf(_down(mpmath.log(_mpf(beta_lo)))) / (2 * C11 * (1 + _mpf(C12)))) ** (mpmath.mpf(1) / D)
        C5 = _down(kappa * mpmath.mpf(2) ** (-mpmath.mpf(1) / D) / 2)
        rec.add(
            "kappa",
            _down(kappa),
            "(log|beta| / (2 C11 (1 + C12)))^(1/D); lambda(N)^D >= N/(2 C11 (1+C12) log_|beta| N)",
            "final chain",
        )
        rec.add("C5", C5, "kappa 2^(-1/D) / 2", "digit-exchange lower bound")
        # N / log N >= 2^(D+1) / kappa^D makes the -1 from gamma = lambda - 1 affordable
        target = mpmath.mpf(2) ** (D + 1) / kappa ** D

        def ok5(n):
            return mpmath.mpf(n) / mpmath.log(n) >= target

        hi = 8
        while not ok5(hi):
            hi *= 2
        lo = max(3, hi // 2)
        while lo < hi:
            mid = (lo + hi) // 2
            if ok5(mid):
                hi = mid
            else:
                lo = mid + 1
        N5 = hi
    C6 = max(N_star + N0 - 1, 2 * N0, N5, C8, 3)
    rec.add(
        "C6",
        Fraction(C6),
        f"max(N_lambda + N0 - 1, 2 N0, N5={N5}, C8, 3)",
        "digit-exchange lower bound",
    )
    return rec
