"""Shift to a nonzero first digit, the difference transform t -> s, and sumsets.

With s_0 = t_1 and s_n = t_{n+1} - t_n, the series identity
(beta - 1) * sum t_n beta^-n = sum s_n beta^-n holds, and the support
Gamma = {n : s_n != 0} is {0} together with the digit-exchange positions.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .balls import ComplexBall
from .convolution import support_sum
from .errors import AllZero, NotReduced
from .expansion import DigitData
from .roots import embed_loose


def reduce_to_N0(d, A):
    """Drop the N0 - 1 leading zero digits.

    Returns ``(shifted digits, A_tilde, N0)`` with A_tilde_k = A_k beta^((D-k)(N0-1)),
    so that A_tilde has the shifted number beta^(N0-1) xi as a root.
    """
    N0 = d.N0
    if N0 is None:
        raise AllZero("digit sequence is identically zero")
    D = len(A) - 1
    shift = N0 - 1
    A_t = [a.pow_beta((D - k) * shift) for k, a in enumerate(A)]
    shifted = DigitData(d.digits[shift:], d.T, d.source)
    return shifted, A_t, N0


@dataclass(frozen=True)
class ExchangeData:
    s: np.ndarray  # s_0 .. s_{N-1}
    gamma: np.ndarray  # sorted support of s
    T: int

    @property
    def v(self):
        """Exchange positions v(1) < v(2) < ... (Gamma without 0)."""
        return self.gamma[1:]

    @property
    def horizon(self):
        return len(self.s)

    @property
    def mask(self):
        m = np.zeros(len(self.s), dtype=bool)
        m[self.gamma] = True
        return m

    def to_json(self):
        return {"s": self.s.tolist(), "gamma_indices": self.gamma.tolist(), "T": self.T}


def exchange_sequence(d):
    """s_0 = t_1, s_n = t_{n+1} - t_n (1 <= n <= N-1) for digits with t_1 != 0."""
    if not d.digits or d.digits[0] == 0:
        raise NotReduced("first digit must be nonzero; apply reduce_to_N0 first")
    t = np.asarray(d.digits, dtype=np.int64)
    s = np.empty(len(t), dtype=np.int64)
    s[0] = t[0]
    s[1:] = t[1:] - t[:-1]
    return ExchangeData(s, np.flatnonzero(s), d.T)


def series_in_inverse_beta(field, coeffs, start=0):
    """Exact sum_{n} coeffs[n] * beta^-(n + start) in Q(beta), by Horner in beta^-1."""
    binv = field.beta_inv
    acc = field.zero
    for c in reversed(list(coeffs)):
        acc = acc * binv + int(c)
    if start:
        acc = acc * binv ** start
    return acc


def telescoping_identity(field, d, M):
    """Exact check of (beta-1) sum_{n=1}^M t_n beta^-n = sum_{n=0}^{M-1} s_n beta^-n - t_M beta^-M.

    ``d`` must have t_1 != 0 and at least M digits.
    """
    e = exchange_sequence(DigitData(d.digits[:M], d.T, d.source))
    beta = field.beta
    lhs = (beta - 1) * series_in_inverse_beta(field, d.digits[:M], start=1)
    rhs = series_in_inverse_beta(field, e.s[:M]) - field.beta_inv ** M * d.digits[M - 1]
    return lhs == rhs


def verify_eta_identity(field, root, d, e, M, work=128):
    """Ball check that (beta-1) sum_{n<=M} t_n beta^-n and sum_{n<M} s_n beta^-n agree.

    Returns ``(ok, gap_upper, allowed)`` where allowed is the tail bound
    |beta|^-M * 2T|beta|/(|beta|-1) plus the ball radii.
    """
    binv = embed_loose(field.beta_inv, root, work)
    beta = embed_loose(field.beta, root, work)

    def series(coeffs, first_power):
        acc = ComplexBall(0, 0, 0, work)
        for c in reversed(list(coeffs)):
            acc = acc * binv + int(c)
        for _ in range(first_power):
            acc = acc * binv
        return acc

    lhs = (beta - 1) * series(d.digits[:M], 1)
    rhs = series(e.s[:M], 0)
    diff = lhs - rhs
    mod_beta = beta.abs_lower()
    powm = binv.abs_upper() ** M
    allowed = powm * 2 * d.T * beta.abs_upper() / (mod_beta - 1)
    gap = diff.abs_upper()
    return gap <= allowed, gap, allowed


@dataclass(frozen=True)
class Sumset:
    k: int
    horizon: int
    mask: np.ndarray

    @property
    def members(self):
        return np.flatnonzero(self.mask)

    def __contains__(self, m):
        return 0 <= m < self.horizon and bool(self.mask[m])


def sumset(gamma, k, N):
    """k-fold sumset of gamma intersected with [0, N); 0*gamma = {0}."""
    base = np.zeros(N, dtype=bool)
    g = np.asarray(gamma, dtype=np.int64)
    base[g[g < N]] = True
    cur = np.zeros(N, dtype=bool)
    if N:
        cur[0] = True
    for _ in range(k):
        cur = support_sum(cur, base, N)
    return Sumset(k, N, cur)


def sumset_chain(gamma, D, N):
    """[0 Gamma, 1 Gamma, ..., D Gamma], each cut at N."""
    base = np.zeros(N, dtype=bool)
    g = np.asarray(gamma, dtype=np.int64)
    base[g[g < N]] = True
    out = [sumset(gamma, 0, N)]
    for k in range(1, D + 1):
        out.append(Sumset(k, N, support_sum(out[-1].mask, base, N)))
    return out


def lambda_count(S, N):
    """Number of members below N of a Sumset or a sorted index array."""
    if isinstance(S, Sumset):
        return int(np.count_nonzero(S.mask[: min(N, S.horizon)]))
    S = np.asarray(S)
    return int(np.searchsorted(S, N, side="left"))
