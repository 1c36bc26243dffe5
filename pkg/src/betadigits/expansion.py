"""Greedy beta-expansions in exact arithmetic and digit statistics."""
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError, InsufficientDigits, OutOfRange
from .roots import floor_real, sign_real


@dataclass(frozen=True)
class DigitData:
    """Finite digit prefix t_1..t_N (stored 0-based) with a bound T on |t_n|."""

    digits: tuple
    T: int
    source: str = "user"
    final_state: object = None
    cycle: tuple | None = None  # (start, period): state_start == state_{start+period}

    def __post_init__(self):
        if self.T < 1:
            raise InputError("digit bound T must be a positive integer")
        bad = next((t for t in self.digits if abs(t) > self.T), None)
        if bad is not None:
            raise InputError(f"digit {bad} violates the bound T={self.T}")

    def __len__(self):
        return len(self.digits)

    @property
    def N0(self):
        """1-based index of the first nonzero digit, or None."""
        for n, t in enumerate(self.digits, start=1):
            if t:
                return n
        return None

    def t(self, n):
        """The digit t_n (1-based)."""
        return self.digits[n - 1]


def greedy_digits(field, root, xi, N, detect_cycles=True):
    """The first N digits of the greedy beta-expansion of xi, beta = sigma(root).

    The state x_n = T_beta^n(xi) is iterated exactly: t_{n+1} = floor(beta x_n),
    x_{n+1} = beta x_n - t_{n+1}.  Once a state repeats the remaining digits
    are copied from the cycle.
    """
    beta = field.beta
    if not root.is_real or sign_real(beta - 1, root) <= 0:
        raise OutOfRange("greedy expansions need a real base beta > 1")
    if sign_real(xi, root) < 0 or sign_real(xi - 1, root) > 0:
        raise OutOfRange("xi must lie in [0, 1]")
    integer_base = beta.rational_value()
    if integer_base is not None and xi == 1:
        raise OutOfRange("for an integer base xi must be < 1")
    fb = floor_real(beta, root)
    T = max(1, fb if beta != fb else fb - 1)

    digits = []
    state = xi
    seen = {state: 0} if detect_cycles else None
    cycle = None
    while len(digits) < N:
        y = state.mul_beta()
        t = floor_real(y, root)
        state = y - t
        digits.append(t)
        if seen is not None:
            n = len(digits)
            if state in seen:
                start = seen[state]
                cycle = (start, n - start)
                break
            seen[state] = n
    if cycle is not None and len(digits) < N:
        start, period = cycle
        block = digits[start:start + period]
        while len(digits) < N:
            digits.append(block[(len(digits) - start) % period])
        states = list(seen)
        state = states[start + (N - start) % period]
    elif cycle is not None and len(digits) > N:
        digits = digits[:N]
    return DigitData(tuple(digits), T, "greedy", state, cycle)


def _check_len(d, need):
    if len(d.digits) < need:
        raise InsufficientDigits(f"need {need} digits, have {len(d.digits)}")


def gamma_count(d, N):
    """Number of n <= N with t_n != t_{n+1}."""
    _check_len(d, N + 1)
    t = d.digits
    return sum(1 for n in range(N) if t[n] != t[n + 1])


def nu_count(d, N):
    """Number of n <= N with t_n != 0."""
    _check_len(d, N)
    return sum(1 for n in range(N) if d.digits[n] != 0)


def gamma_nu_profile(d):
    """Arrays (gamma[N], nu[N]) for N = 0..len-1, index N meaning prefix length N."""
    t = np.asarray(d.digits, dtype=np.int64)
    exch = np.concatenate(([0], np.cumsum(t[:-1] != t[1:])))
    nz = np.concatenate(([0], np.cumsum(t != 0)))[: len(t)]
    return exch, nz


def check_gamma_nu_relation(d, N):
    """nu(N) >= gamma(N)/2 - 1, the explicit form of the gamma/nu relation."""
    return 2 * nu_count(d, N) >= gamma_count(d, N) - 2


def read_digit_file(path):
    """One integer per line; optional first line ``# T=<bound>``."""
    header_T = None
    digits = []
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].replace(" ", "")
            if body.upper().startswith("T=") and header_T is None and not digits:
                try:
                    header_T = int(body[2:])
                except ValueError:
                    raise InputError(f"{path}:{lineno}: bad header {line!r}") from None
            continue
        try:
            digits.append(int(line))
        except ValueError:
            raise InputError(f"{path}:{lineno}: not an integer: {line!r}") from None
    if not digits:
        raise InputError(f"{path}: no digits")
    T = header_T if header_T is not None else max(1, max(abs(t) for t in digits))
    return DigitData(tuple(digits), T, "user")


def write_digit_file(path, d):
    with open(path, "w") as fh:
        fh.write(f"# T={d.T}\n")
        fh.write("\n".join(str(t) for t in d.digits))
        fh.write("\n")
