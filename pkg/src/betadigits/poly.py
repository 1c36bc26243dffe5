"""Dense univariate polynomials over Q as coefficient lists, constant term first.

Only what the rest of the package needs: Euclidean arithmetic, gcd,
Sturm sequences and the reciprocal/trace tricks used for unit-circle
root counting.
"""
from fractions import Fraction

from .errors import InputError


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(trim(p)) - 1


def parse_polynomial(text):
    """Parse ``"1,-1,-1"`` (constant term first) into a list of ints."""
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        items = [c for c in str(text).replace(" ", "").split(",") if c != ""]
    try:
        coeffs = [int(c) for c in items]
    except (TypeError, ValueError) as exc:
        raise InputError(f"cannot parse polynomial {text!r}: {exc}") from None
    coeffs = trim(coeffs)
    if len(coeffs) < 2:
        raise InputError(f"polynomial {text!r} must be nonconstant")
    return coeffs


def format_polynomial(p, var="X"):
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, [-c for c in q])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p, c):
    return trim([c * a for a in p])


def derivative(p):
    return trim([k * p[k] for k in range(1, len(p))])


def divmod_poly(p, q):
    """Euclidean division over Q. Returns (quotient, remainder) with Fraction coefficients."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in trim(p)]
    dq = len(q) - 1
    lead = Fraction(q[-1])
    if len(r) - 1 < dq:
        return [], r
    quot = [Fraction(0)] * (len(r) - dq)
    while len(r) - 1 >= dq and r:
        shift = len(r) - 1 - dq
        c = r[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r = trim(r)
    return trim(quot), r


def monic(p):
    p = trim(p)
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def gcd(p, q):
    """Monic gcd over Q (the zero polynomial has gcd equal to the other argument)."""
    a, b = trim(p), trim(q)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    if not a:
        return []
    return monic(a)


def primitive(p):
    """Scale a rational polynomial to a primitive integer polynomial with positive lead."""
    p = [Fraction(c) for c in trim(p)]
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = _gcd_int(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def reciprocal(p):
    """X^deg(p) * p(1/X)."""
    return trim(list(reversed(trim(p))))


def is_squarefree(p):
    return degree(gcd(p, derivative(p))) == 0


def sturm_sequence(p):
    seq = [[Fraction(c) for c in trim(p)], [Fraction(c) for c in derivative(p)]]
    while True:
        _, r = divmod_poly(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(values):
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p, a, b, seq=None):
    """Number of distinct real roots of ``p`` in the half-open interval (a, b]."""
    if seq is None:
        seq = sturm_sequence(p)
    va = _sign_changes([evaluate(s, Fraction(a)) for s in seq])
    vb = _sign_changes([evaluate(s, Fraction(b)) for s in seq])
    return va - vb


def palindromic_to_trace(g):
    """For palindromic g of degree 2m return q with g(x) = x^m q(x + 1/x)."""
    g = trim(g)
    n = len(g) - 1
    if n % 2:
        raise ValueError("palindromic polynomial must have even degree")
    m = n // 2
    # x^j + x^-j = V_j(x + 1/x): V_0 = 2, V_1 = y, V_{j+1} = y V_j - V_{j-1}
    v_prev, v_cur = [Fraction(2)], [Fraction(0), Fraction(1)]
    q = [Fraction(g[m])]
    for j in range(1, m + 1):
        q = add(q, scale(v_cur, g[m + j]))
        v_prev, v_cur = v_cur, sub(mul([0, 1], v_cur), v_prev)
    return q


def unit_circle_root_count(p):
    """Exact number of roots of the squarefree polynomial p with |z| = 1.

    Works on g = gcd(p, reciprocal(p)), which carries every unit-circle root.
    The roots +-1 are counted by direct evaluation; the rest of g is
    palindromic and folds to q(y), y = x + 1/x, whose roots in (-2, 2) each
    account for a conjugate pair on the circle.
    """
    p = trim(p)
    count = 0
    g = gcd(p, reciprocal(p))
    for r in (1, -1):
        if evaluate(p, r) == 0:
            count += 1
            g, rem = divmod_poly(g, [-r, 1])
            assert not rem
    if degree(g) <= 0:
        return count
    g = monic(g)
    if reciprocal(g) != g:
        raise ArithmeticError(f"gcd with reciprocal is not palindromic: {g}")
    q = palindromic_to_trace(g)
    seq = sturm_sequence(q)
    inside = count_real_roots(q, -2, 2, seq)
    if evaluate(q, 2) == 0:
        inside -= 1
    return count + 2 * inside
