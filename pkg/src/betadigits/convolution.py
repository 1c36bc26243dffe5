"""Exact integer convolution, truncated to a horizon.

Sparse inputs use a direct pairwise product over the nonzero entries.  Dense
inputs use Kronecker substitution: each sequence is packed into one big
integer with fixed-width slots, the integers are multiplied, and the slots
are read back.  Both paths are exact.
"""
import numpy as np

try:
    import gmpy2
except ImportError:  # pragma: no cover
    gmpy2 = None

SPARSE_WORK_LIMIT = 2_000_000


def _nonzero(a):
    idx = np.flatnonzero(a)
    return idx, a[idx]


def convolve_sparse(a, b, limit):
    ia, va = _nonzero(a)
    ib, vb = _nonzero(b)
    out = np.zeros(limit, dtype=object)
    for i, x in zip(ia.tolist(), va.tolist()):
        if i >= limit:
            break
        for j, y in zip(ib.tolist(), vb.tolist()):
            if i + j >= limit:
                break
            out[i + j] += x * y
    return out


def _pack(a, width):
    """Nonnegative int64 array -> little-endian big integer with ``width``-byte slots."""
    raw = a.astype("<u8").view(np.uint8).reshape(-1, 8)[:, :width]
    return int.from_bytes(raw.tobytes(), "little")


def _unpack(n, width, count):
    raw = np.frombuffer(int(n).to_bytes(width * count, "little"), dtype=np.uint8)
    padded = np.zeros((count, 8), dtype=np.uint8)
    padded[:, :width] = raw.reshape(count, width)
    return padded.view("<u8").reshape(count).astype(np.int64)


def _mul(x, y):
    if gmpy2 is not None:
        return int(gmpy2.mpz(x) * gmpy2.mpz(y))
    return x * y


def _kronecker_nonneg(a, b, limit, width):
    a, b = a[:limit], b[:limit]
    prod = _mul(_pack(a, width), _pack(b, width))
    count = min(limit, len(a) + len(b) - 1)
    prod &= (1 << (8 * width * count)) - 1
    return _unpack(prod, width, count)


def convolve_exact(a, b, limit):
    """First ``limit`` coefficients of the product of two integer sequences.

    Returns an int64 array when every coefficient provably fits, else an
    object array of Python ints.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    a, b = a[:limit], b[:limit]
    if len(a) == 0 or len(b) == 0:
        return np.zeros(limit, dtype=np.int64)
    na, nb = np.count_nonzero(a), np.count_nonzero(b)
    ma = int(np.max(np.abs(a.astype(object)))) if na else 0
    mb = int(np.max(np.abs(b.astype(object)))) if nb else 0
    bound = min(na, nb) * ma * mb
    if na * nb <= SPARSE_WORK_LIMIT or bound >= 1 << 62 or a.dtype == object or b.dtype == object:
        out = convolve_sparse(a, b, limit)
        if bound < 1 << 62:
            out = out.astype(np.int64)
        return out
    width = max(1, ((bound.bit_length() + 1) + 7) // 8)
    ap, an = np.maximum(a, 0), np.maximum(-a, 0)
    bp, bn = np.maximum(b, 0), np.maximum(-b, 0)
    pos = _kronecker_nonneg(ap, bp, limit, width) + _kronecker_nonneg(an, bn, limit, width)
    neg = _kronecker_nonneg(ap, bn, limit, width) + _kronecker_nonneg(an, bp, limit, width)
    out = np.zeros(limit, dtype=np.int64)
    res = pos - neg
    out[: len(res)] = res
    return out


def support_sum(mask_a, mask_b, limit):
    """Boolean mask of {x + y < limit : mask_a[x], mask_b[y]} (set addition)."""
    ia = np.flatnonzero(mask_a[:limit])
    ib = np.flatnonzero(mask_b[:limit])
    out = np.zeros(limit, dtype=bool)
    if len(ia) == 0 or len(ib) == 0:
        return out
    if len(ia) > len(ib):
        ia, ib = ib, ia
        mask_a, mask_b = mask_b, mask_a
    if len(ia) * limit <= 50_000_000:
        src = np.zeros(limit, dtype=bool)
        src[ib] = True
        for i in ia.tolist():
            out[i:] |= src[: limit - i]
        return out
    counts = convolve_exact(mask_a[:limit].astype(np.int64), mask_b[:limit].astype(np.int64), limit)
    return np.asarray(counts != 0)
