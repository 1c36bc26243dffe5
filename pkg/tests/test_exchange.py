import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from betadigits.errors import AllZero, NotReduced
from betadigits.exchange import (
    exchange_sequence,
    lambda_count,
    reduce_to_N0,
    sumset,
    sumset_chain,
    telescoping_identity,
    verify_eta_identity,
)
from betadigits.expansion import DigitData, greedy_digits
from betadigits.field import NumberField

FIELDS = [NumberField([-1, -1, 1]), NumberField([2, 2, 1]), NumberField([-1, -1, 0, 1])]


@given(
    st.sampled_from(FIELDS),
    st.lists(st.integers(-3, 3), min_size=1, max_size=40).filter(lambda t: t[0] != 0),
)
def test_telescoping_identity(F, t):
    d = DigitData(tuple(t), 3)
    for M in (1, len(t) // 2 + 1, len(t)):
        assert telescoping_identity(F, d, M)


def test_golden_transform(golden):
    F, r = golden
    d = greedy_digits(F, r, F.parse_element(["1/2"]), 30)
    sh, A_t, N0 = reduce_to_N0(d, [F.from_int(-1), F.from_int(2)])
    assert N0 == 2
    assert A_t[0] == -F.beta and A_t[1] == 2
    e = exchange_sequence(sh)
    assert list(e.s[:6]) == [1, -1, 0, 1, -1, 0]
    assert list(e.gamma[:6]) == [0, 1, 3, 4, 6, 7]
    ok, gap, allowed = verify_eta_identity(F, r, sh, e, 25)
    assert ok


def test_shift_preserves_root(golden):
    F, _ = golden
    xi = F.parse_element(["1/2"])
    A = [F.from_int(-1), F.from_int(2)]
    d = DigitData((0, 0, 1, 1), 1)
    _, A_t, N0 = reduce_to_N0(d, A)
    shifted_xi = xi * F.beta ** (N0 - 1)
    assert A_t[0] + A_t[1] * shifted_xi == 0


def test_errors():
    with pytest.raises(AllZero):
        reduce_to_N0(DigitData((0, 0), 1), [])
    with pytest.raises(NotReduced):
        exchange_sequence(DigitData((0, 1), 1))


@st.composite
def sparse_gammas(draw):
    N = draw(st.integers(2, 150))
    rest = draw(st.lists(st.integers(1, N - 1), max_size=12))
    return np.array(sorted({0, *rest})), N


@given(sparse_gammas(), st.integers(0, 4))
def test_sumset_law(g, k):
    gamma, N = g
    S = sumset(gamma, k, N)
    assert lambda_count(S, N) <= lambda_count(gamma, N) ** k
    if k:
        assert set(S.members) >= set(sumset(gamma, k - 1, N).members)


@given(sparse_gammas())
def test_sumset_chain_brute(g):
    gamma, N = g
    chain = sumset_chain(gamma, 3, N)
    cur = {0}
    for k in range(4):
        assert set(chain[k].members.tolist()) == {x for x in cur if x < N}
        cur = {a + b for a in cur for b in gamma.tolist()}
