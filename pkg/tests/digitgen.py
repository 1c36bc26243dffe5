"""Digits of xi = sqrt(2)/3 in base beta = -1 + i (root of X^2 + 2X + 2).

xi satisfies 9 xi^2 - 2 = 0, so with A = (-2, 0, 9) it is a degree-2
instance over a complex quadratic base.  The expansion is produced two
digits at a time: for a remainder r = a beta + b with a, b in [0, 1),
beta^2 r = u beta + v, the digits are floor(u), floor(v), and the
fractional parts form the next remainder.  Then
r = floor(u) beta^-1 + floor(v) beta^-2 + beta^-2 r'.

Coordinates are kept exactly as (p + q sqrt 2) / 3 with integers p, q.
"""
import gmpy2

POLY = "2,2,1"
A = ("-2", "0", "9")
PI = "9"
T = 3


def _floor3(p, q):
    """floor((p + q sqrt 2) / 3)."""
    r = gmpy2.isqrt(2 * q * q)
    fq = r if q >= 0 else -r - 1  # q sqrt 2 is never an integer for q != 0
    return int((p + fq) // 3)


def digits(n):
    a = (gmpy2.mpz(0), gmpy2.mpz(0))
    b = (gmpy2.mpz(0), gmpy2.mpz(1))
    out = []
    while len(out) < n:
        u = (2 * a[0] - 2 * b[0], 2 * a[1] - 2 * b[1])
        v = (4 * a[0] - 2 * b[0], 4 * a[1] - 2 * b[1])
        t1, t2 = _floor3(*u), _floor3(*v)
        out += [t1, t2]
        a = (u[0] - 3 * t1, u[1])
        b = (v[0] - 3 * t2, v[1])
    return out[:n]


def write(path, n):
    with open(path, "w") as fh:
        fh.write(f"# T={T}\n")
        fh.write("\n".join(map(str, digits(n))))
        fh.write("\n")
    return path


if __name__ == "__main__":
    import sys

    write(sys.argv[1], int(sys.argv[2]))
