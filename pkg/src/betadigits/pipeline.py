"""End-to-end verification of the digit-exchange lower bound on one instance.

Stages: field and root -> digits -> shift to t_1 != 0 -> transform ->
hypothesis checks -> Y_R tables -> constants -> lemma and bound checks.
Every stage that can fail raises a typed error, which the CLI maps to an
exit code.
"""
import math
import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .classify import Kind, classify
from .constants import derive_constants
from .errors import (
    DomainError,
    HypothesisIIIViolated,
    InputError,
    HypothesisIViolated,
    IdentityFailure,
    InsufficientDigits,
)
from .exchange import exchange_sequence, lambda_count, reduce_to_N0, telescoping_identity
from .expansion import gamma_nu_profile, greedy_digits, read_digit_file
from .field import NumberField
from .linear_forms import (
    ThresholdComparator,
    Y_sequence,
    Y_series_check,
    assert_Y_nonzero,
    check_hypothesis_i_ball,
    check_hypothesis_i_exact,
    check_hypothesis_iii,
    compute_B,
    gap_lemma_check,
    gap_structure,
    rho_table,
    verify_recursion,
    y_N_count,
)
from .poly import parse_polynomial
from .roots import PRECISION_CAP, embed_loose, select_root

DEFAULT_Y_MAX = 10_000


@dataclass
class Instance:
    """A fully loaded instance: field, base, digits, A and pi."""

    field: NumberField
    root: object
    classification: object
    digits: object
    A: list
    pi: object
    xi: object = None


def load_instance(cfg, n_digits, cap=PRECISION_CAP):
    field = NumberField(parse_polynomial(cfg.polynomial))
    root = select_root(field, cfg.root, cap)
    cls = classify(field, cap)
    if cls.kind == Kind.NONE:
        raise DomainError("the base is neither (quasi-)Pisot nor (quasi-)Salem")
    if root.index not in cls.outside:
        raise DomainError(f"root {cfg.root} is not the distinguished root of modulus > 1")
    A = [field.parse_element(a) for a in cfg.A]
    pi = field.parse_element(cfg.pi)
    xi = None
    if cfg.source == "greedy":
        xi = field.parse_element(cfg.xi)
        digits = greedy_digits(field, root, xi, n_digits)
    else:
        digits = read_digit_file(cfg.path)
    if cfg.T is not None:
        if any(abs(t) > cfg.T for t in digits.digits):
            raise InputError(f"digits violate the configured bound T={cfg.T}")
        digits = type(digits)(digits.digits, cfg.T, digits.source, digits.final_state, digits.cycle)
    return Instance(field, root, cls, digits, A, pi, xi)


@dataclass
class LemmaSummary:
    name: str
    checked: int
    failures: list = dc_field(default_factory=list)
    detail: dict = dc_field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    def to_json(self):
        return {
            "name": self.name,
            "checked": self.checked,
            "ok": self.ok,
            "failures": self.failures[:20],
            "detail": self.detail,
        }


def lower_bound_rows(gamma, C5, D, N_values):
    """Bound C5 (N / log N)^(1/D) and the pass flag for each N.

    The bound is computed in double precision; a row passes only when gamma
    clears it with relative room 1e-9, far above the rounding error.
    """
    N = np.asarray(N_values, dtype=np.float64)
    bound = float(C5) * (N / np.log(N)) ** (1.0 / D)
    g = np.asarray(gamma, dtype=np.float64)
    return bound, g >= bound * (1 + 1e-9)


def prior_curve(N):
    """(log N)^(3/2) / (log log N)^(1/2), for visual comparison only."""
    N = np.asarray(N, dtype=np.float64)
    L = np.log(N)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = L ** 1.5 / np.sqrt(np.log(L))
    return np.where(N > math.e, out, np.nan)


def check_lemma_lower(Ys, root, C7, C8, cap=PRECISION_CAP):
    """Certified |Y_R| > R^-C7 for C8 <= R < len(Ys)."""
    s = LemmaSummary("Y_lower_bound", 0)
    start = max(int(C8), 1)
    for R in range(start, len(Ys)):
        thr = Fraction(1, R ** int(C7))
        work = 64
        while True:
            ball = embed_loose(Ys[R], root, work)
            if ball.abs_lower() > thr:
                break
            if ball.abs_upper() <= thr or work >= cap:
                s.failures.append(R)
                break
            work *= 2
        s.checked += 1
    s.detail = {"R_range": [start, len(Ys) - 1], "C7": int(C7), "C8": int(C8)}
    return s


def run_verify(cfg, n_max=None, cap=PRECISION_CAP, seed=0, log=None):
    """Run every stage; return the report as a dict plus row tables."""
    t_start = time.perf_counter()
    say = log or (lambda msg: None)
    n_max = n_max or cfg.n_max
    y_max = min(cfg.y_max or DEFAULT_Y_MAX, n_max)

    inst = load_instance(cfg, n_max + 2, cap)
    field, root, d = inst.field, inst.root, inst.digits
    if len(d.digits) < n_max + 1:
        raise InsufficientDigits(f"need {n_max + 1} digits, file has {len(d.digits)}")
    say(f"classified: {inst.classification.kind.value}; {len(d.digits)} digits")

    # hypotheses
    if inst.xi is not None:
        if not check_hypothesis_i_exact(inst.A, inst.xi):
            raise HypothesisIViolated("A(xi) != 0")
    elif not check_hypothesis_i_ball(inst.A, d, root, M=min(len(d.digits), 4000)):
        raise HypothesisIViolated("the digit series is incompatible with A(xi) = 0")
    shifted, A_t, N0 = reduce_to_N0(d, inst.A)
    B = compute_B(A_t, inst.pi)
    h3 = check_hypothesis_iii(B[0])
    if not h3.holds:
        raise HypothesisIIIViolated(f"B_0 beta^{h3.witness} lies in Z[beta]", witness=h3.witness)
    say(f"hypotheses hold; N0={N0}, q={h3.modulus}")

    # transform and identities
    e = exchange_sequence(shifted)
    M = min(200, len(shifted.digits))
    if not telescoping_identity(field, shifted, M):
        raise IdentityFailure(f"telescoping identity fails at M={M}")
    y_horizon = min(y_max, e.horizon)
    table = rho_table(e, B.D, min(e.horizon, y_horizon + 64))
    Ys = Y_sequence(B, table, y_horizon)
    for R, Y in enumerate(Ys):
        if not assert_Y_nonzero(Y, B, R):
            raise IdentityFailure(f"Y_{R} = 0 although hypothesis (iii) holds")
    series_checked = 0
    for R in range(min(50, y_horizon)):
        if R + 60 < len(table[1]):
            ok, _, _ = Y_series_check(R, B, table, root, 60)
            if not ok:
                raise IdentityFailure(f"Y_{R} disagrees with its series")
            series_checked += 1
    rng = random.Random(seed)
    G = gap_structure(e, B.D, y_horizon)
    interior = [(h, R) for h in range(1, G.tau + 1) for R in G.interior(h) if R >= 1]
    sample = rng.sample(interior, min(100, len(interior)))
    for h, R in sample:
        if not verify_recursion(R, h, B, Ys, table, G):
            raise IdentityFailure(f"recursion fails at R={R}, h={h}")
    say(f"identities verified; Y up to {y_horizon - 1}")

    # constants and lemma checks
    rec = derive_constants(B, root, shifted.T, N0)
    cmp = ThresholdComparator(B, root, cap)
    flags = np.array([cmp.at_least(Y) for Y in Ys], dtype=bool)
    lemmas = [check_lemma_lower(Ys, root, rec["C7"], rec["C8"], cap)]
    sched = sorted(set(n for n in (cfg.schedule or [100, 1000, 10_000]) if n <= y_horizon))
    yb = LemmaSummary("y_N_upper_bound", 0)
    gp = LemmaSummary("gap_bound", 0)
    C12, C10 = rec["C12"], rec["C10"]
    for N in sched:
        lam = lambda_count(e.gamma, N)
        yN = y_N_count(flags, N)
        bound = float(C12) * (math.log(N) + lam ** B.D)
        yb.checked += 1
        yb.detail[str(N)] = {"y_N": yN, "lambda": lam, "bound": bound}
        if not yN <= bound:
            yb.failures.append(N)
        if N >= rec["N_gap"]:
            GN = gap_structure(e, B.D, N)
            L = float(rec.log_beta(N))
            checked, worst, gbound, fails = gap_lemma_check(flags, GN, int(C10), L)
            gp.checked += checked
            gp.detail[str(N)] = {"admissible": checked, "worst": float(worst), "bound": gbound}
            gp.failures += [(N, R) for R in fails]
    lemmas += [yb, gp]
    say("lemma checks done")

    # the lower bound itself
    gam, nu = gamma_nu_profile(d)
    Ns = np.arange(2, n_max + 1)
    bound, passed = lower_bound_rows(gam[Ns], rec["C5"], B.D, Ns)
    C6 = int(rec["C6"])
    in_range = Ns >= C6
    rel = LemmaSummary("gamma_nu_relation", int(len(Ns)))
    bad = np.flatnonzero(2 * nu[Ns] < gam[Ns] - 2)
    rel.failures = [int(Ns[i]) for i in bad[:20]]
    lemmas.append(rel)

    lam_profile = np.concatenate(([0], np.cumsum(e.mask)))
    rows = []
    row_N = sorted(set(sched) | {n for n in (10, 100, 1000, 10_000, 100_000) if n <= n_max} | {n_max})
    for N in row_N:
        i = N - 2
        lam = int(lam_profile[min(N, len(lam_profile) - 1)])
        rows.append(
            {
                "N": N,
                "gamma": int(gam[N]),
                "nu": int(nu[N]),
                "lambda": lam,
                "bound": float(bound[i]),
                "pass": bool(passed[i]),
                "in_range": bool(in_range[i]),
            }
        )
    grid = np.unique(np.geomspace(3, n_max, num=200).astype(np.int64))
    plot = {
        "N": grid.tolist(),
        "gamma": gam[grid].tolist(),
        "nu": nu[grid].tolist(),
        "bound": lower_bound_rows(gam[grid], rec["C5"], B.D, grid)[0].tolist(),
        "prior": prior_curve(grid).tolist(),
    }
    report = {
        "instance": cfg.echo(),
        "classification": inst.classification.to_json(field.p),
        "N0": N0,
        "B": [b.to_strings() for b in B.B],
        "hypothesis_iii": {
            "holds": h3.holds,
            "modulus": h3.modulus,
            "states_visited": h3.states_visited,
            "n0_integral": h3.integral_at_zero,
        },
        "identities": {
            "telescoping_M": M,
            "Y_nonzero_checked": y_horizon,
            "series_checked": series_checked,
            "recursion_checked": len(sample),
        },
        "constants": rec.to_json(),
        "lemmas": [s.to_json() for s in lemmas],
        "bound": {
            "C5": float(rec["C5"]),
            "C6": C6,
            "formal_range_empty": C6 > n_max,
            "checked_in_range": int(np.count_nonzero(in_range)),
            "failures_in_range": [int(n) for n in Ns[in_range & ~passed][:20]],
            "checked_extended": int(len(Ns)),
            "failures_extended": [int(n) for n in Ns[~passed][:20]],
        },
        "rows": rows,
        "wall_time_s": round(time.perf_counter() - t_start, 3),
    }
    return report, plot
