import itertools
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfroots.errors import CapExceeded, InvalidInput
from hfroots.seifert import (
    DeltaSequence,
    SeifertParams,
    delta_at,
    delta_sequence,
    n0,
    residual,
    solve_diophantine,
    tau_from_delta,
)

from oracles import brute_solve, coprime_tuples, delta_frac, n0_frac, tau_oracle

SMALL = [t for l in (3, 4, 5) for t in coprime_tuples(l, 5000)]


def S(*p):
    return SeifertParams.of(*p)


@pytest.mark.parametrize(
    "p, e0, pp",
    [
        ((2, 3, 5), -2, (1, 2, 4)),
        ((2, 3, 7), -1, (1, 1, 1)),
        ((2, 3, 11), -2, (1, 2, 9)),
        ((2, 3, 5, 7), -2, (1, 2, 2, 3)),
        ((2, 3, 5, 7, 11), -3, (1, 1, 2, 6, 10)),
    ],
)
def test_solve_frozen(p, e0, pp):
    sol = solve_diophantine(S(*p))
    assert (sol.e0, sol.pprime) == (e0, pp)


def test_solve_matches_brute_force():
    for p in SMALL[:400]:
        if prod(x - 1 for x in p) > 20000:
            continue
        sol = solve_diophantine(S(*p))
        assert (sol.e0, sol.pprime) == brute_solve(p)


def test_residue_class_7_mod_30():
    # pq = 7 mod 30 pins the entries for the 3- and 5-fibers at (2, 2)
    hits = 0
    for p in range(7, 120):
        for q in range(p + 1, 200):
            try:
                params = S(2, 3, 5, p, q)
            except InvalidInput:
                continue
            if p * q % 30 != 7:
                continue
            sol = solve_diophantine(params)
            by = dict(zip(params.p, sol.pprime))
            assert (by[3], by[5]) == (2, 2)
            hits += 1
    assert hits > 50


@pytest.mark.parametrize("p, N0", [((2, 3, 7), 1), ((2, 3, 5), -1), ((2, 3, 5, 7, 11), 4003)])
def test_n0(p, N0):
    assert n0(S(*p)) == N0 == n0_frac(p)


def test_params_validation():
    with pytest.raises(InvalidInput, match="pairwise coprime"):
        S(2, 4, 6)
    with pytest.raises(InvalidInput):
        S(2, 3)
    with pytest.raises(InvalidInput):
        SeifertParams((3, 2, 5))
    with pytest.raises(OverflowError):
        S(2**63 - 25, 2**63 + 29, 2**61 - 1)


def test_delta_examples():
    params = S(2, 3, 7)
    sol = solve_diophantine(params)
    assert delta_at(params, sol, 0) == 1
    assert delta_at(params, sol, 1) == -1
    with pytest.raises(InvalidInput):
        delta_at(params, sol, -1)


def test_delta_against_fractions():
    for p in SMALL[::7]:
        params = S(*p)
        sol = solve_diophantine(params)
        for n in range(0, 3 * prod(p), max(1, prod(p) // 50)):
            assert delta_at(params, sol, n) == delta_frac(p, sol.e0, sol.pprime, n)


def test_delta_sequence_examples():
    assert delta_sequence(S(2, 3, 5)).pairs() == [(0, 1)]
    assert delta_sequence(S(2, 3, 7)).pairs() == [(0, 1), (1, -1)]
    ds = delta_sequence(S(2, 3, 5, 7, 11))
    vals = [int(v) for v in ds.values]
    # tau comes back to 0 at N0, where Δ(N0) = -Δ(0) = -1; prefix sums dip well below 0
    assert sum(vals) == 0 and vals[-1] == -1 and ds.positions[-1] == ds.n0 == 4003
    assert min(itertools.accumulate(vals)) == -867
    assert vals[0] > 0 and all(0 <= x <= ds.n0 for x in ds.positions)


def test_tau_examples():
    assert tau_from_delta(DeltaSequence.from_pairs([(0, 2), (5, -2)])).tolist() == [0, 2, 0]
    assert tau_from_delta(delta_sequence(S(2, 3, 7))).tolist() == [0, 1, 0]
    assert tau_from_delta(delta_sequence(S(2, 3, 5))).tolist() == [0, 1]


def test_tau_matches_oracle():
    for p in [(2, 3, 7), (2, 5, 7), (3, 4, 5), (2, 3, 5, 7), (2, 3, 5, 7, 11), (2, 5, 7, 9)]:
        assert tau_from_delta(delta_sequence(S(*p))).tolist() == tau_oracle(p)


def test_delta_sequence_cap():
    with pytest.raises(CapExceeded):
        delta_sequence(S(2, 3, 5, 7, 11), cap=100)


def test_delta_sequence_rejects_bad_input():
    with pytest.raises(InvalidInput):
        DeltaSequence.from_pairs([(0, -1)])
    with pytest.raises(InvalidInput):
        DeltaSequence.from_pairs([(3, 1), (2, -1)])


@st.composite
def seifert(draw, max_len=5, hi=60):
    n = draw(st.integers(3, max_len))
    xs: list[int] = []
    while len(xs) < n:
        x = draw(st.integers(2, hi).filter(lambda v: all(gcd(v, y) == 1 for y in xs)))
        xs.append(x)
    return S(*sorted(xs))


@settings(max_examples=300, deadline=None)
@given(seifert())
def test_residual_zero(params):
    sol = solve_diophantine(params)
    assert residual(params, sol) == 0
    assert all(0 < a < x for a, x in zip(sol.pprime, params.p))
    assert sol.e0 < 0


@settings(max_examples=150, deadline=None)
@given(seifert(max_len=4, hi=40), st.data())
def test_antisymmetry_and_tower(params, data):
    sol = solve_diophantine(params)
    N0 = n0(params)
    P = params.product
    if N0 >= 0:
        n = data.draw(st.integers(0, N0))
        assert delta_at(params, sol, N0 - n) == -delta_at(params, sol, n)
    if N0 >= 0:
        assert delta_at(params, sol, N0) == -1
    m = data.draw(st.integers(max(N0, 0) + 1, max(N0, 0) + P))
    assert delta_at(params, sol, m) >= 0
    for k in range(6):
        assert delta_at(params, sol, k * P) == k + 1


@settings(max_examples=200, deadline=None)
@given(st.integers(7, 400), st.integers(7, 400))
def test_family_e0_ranges(p, q):
    for fixed, allowed in (((2, 3, 5), {-1, -2, -3}), ((2, 3, 7), {-1, -2, -3, -4})):
        try:
            params = S(*fixed, p, q)
        except InvalidInput:
            continue
        assert solve_diophantine(params).e0 in allowed
