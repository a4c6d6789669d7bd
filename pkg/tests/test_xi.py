import random
from dataclasses import replace
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golden import GOLDEN
from sbgrs import kernels
from sbgrs.codec import root_polys
from sbgrs.field import make_field
from sbgrs.support import build_W, design_from_rows
from sbgrs.xi import (EXHAUSTIVE, GREEDY, RANDOMIZED, AttemptsExhausted, BoundViolated,
                      BudgetExceeded, Certificate, claim3_oracle, coordinate_sweep_zeros,
                      elem_sym, find_points, xi_eval, xi_matrix)


def subset_sums(gf, values):
    out = []
    for l in range(len(values) + 1):
        acc = 0
        for c in combinations(values, l):
            term = 1
            for v in c:
                term = gf.mul(term, v)
            acc = gf.add(acc, term)
        out.append(acc)
    return out


def leibniz(gf, M):
    n = len(M)
    tot = 0
    for perm in permutations(range(n)):
        inv = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        t = 1
        for i in range(n):
            t = gf.mul(t, M[i][perm[i]])
        tot = gf.sub(tot, t) if inv % 2 else gf.add(tot, t)
    return tot


def test_elem_sym_examples():
    gf7 = make_field(7)
    assert elem_sym(gf7, [2, 3]) == [1, 5, 6]
    assert elem_sym(gf7, []) == [1]
    gf16 = make_field(2, 4)
    rng = random.Random(3)
    for _ in range(20):
        vals = rng.sample(range(16), 5)
        assert elem_sym(gf16, vals) == subset_sums(gf16, vals)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(3, 1), (5, 1), (2, 3), (3, 2), (13, 1)]), st.data())
def test_elem_sym_matches_subset_oracle(pm, data):
    gf = make_field(*pm)
    vals = data.draw(st.lists(st.integers(0, gf.q - 1), max_size=7))
    assert elem_sym(gf, vals) == subset_sums(gf, vals)


def test_xi_two_rows(backend):
    gf = make_field(2, 4)
    for a1, a2 in permutations(range(16), 2):
        assert xi_eval(gf, [[0], [1]], [a1, a2]) == gf.sub(a2, a1)


def test_xi_identical_columns_is_zero(backend):
    gf = make_field(7)
    # two supports with the same point values give equal columns
    assert xi_eval(gf, [[0, 1], [2, 3], [4]], [1, 2, 1, 2, 5]) == 0


def test_xi_against_oracle(backend):
    for (n, k), p in [((10, 7), (2, 4)), ((13, 7), (17, 1)), ((7, 4), (11, 1))]:
        gf = make_field(*p)
        d = build_W(n, k)
        rng = random.Random(n)
        for _ in range(5):
            pts = rng.sample(range(gf.q), n)
            M = [[subset_sums(gf, [pts[j] for j in Z])[l] if l <= len(Z) else 0
                  for Z in d.supports0()] for l in range(k)]
            if k <= 7:
                assert xi_eval(gf, d, pts) == leibniz(gf, M)
            assert xi_matrix(gf, d, pts) == M


def test_xi_nonzero_iff_polys_independent():
    gf = make_field(11)
    d = build_W(7, 4)
    rng = random.Random(1)
    seen = set()
    for _ in range(400):
        pts = rng.sample(range(11), 7)
        coeffs = [list(p.coeffs) + [0] * (4 - len(p.coeffs)) for p in root_polys(gf, pts, d)]
        indep = kernels.rank(gf, coeffs) == 4
        seen.add(indep)
        assert (xi_eval(gf, d, pts) != 0) == indep
    assert seen == {True, False}


def test_exhaustive_small():
    gf = make_field(2, 2)
    d = build_W(3, 2)
    pts, cert = find_points(gf, d, strategy=EXHAUSTIVE)
    assert pts == [0, 1, 2]
    assert cert.xi == 1 and cert.attempts == 1


def test_exhaustive_budget():
    gf = make_field(16 + 1)
    with pytest.raises(BudgetExceeded):
        find_points(gf, build_W(10, 7), strategy=EXHAUSTIVE)


def test_pigeonhole_rejected():
    with pytest.raises(BoundViolated):
        find_points(make_field(2, 2), build_W(5, 2))


def test_below_sufficient_bound():
    gf = make_field(11)  # (10, 7) wants q >= 15
    d = build_W(10, 7)
    with pytest.raises(BoundViolated):
        find_points(gf, d)
    with pytest.warns(UserWarning):
        try:
            find_points(gf, d, unsafe_bound=True, max_attempts=200, fallback=False)
        except AttemptsExhausted:
            pass


@pytest.mark.parametrize("strategy", [RANDOMIZED, GREEDY])
def test_search_certifies(strategy):
    gf = make_field(2, 4)
    d = build_W(10, 7)
    pts, cert = find_points(gf, d, strategy=strategy, seed=0)
    assert len(set(pts)) == 10 and cert.attempts >= 1
    assert cert.strategy == strategy
    assert xi_eval(gf, d, pts) == cert.xi != 0
    # independent re-evaluation through the pure-Python path
    with kernels.backend_set("python"):
        assert xi_eval(gf, d, pts) == cert.xi


@pytest.mark.parametrize("strategy", [RANDOMIZED, GREEDY])
def test_search_deterministic(strategy):
    gf = make_field(17)
    d = build_W(13, 7)
    assert find_points(gf, d, strategy=strategy, seed=5) == find_points(gf, d, strategy=strategy, seed=5)


def test_randomized_falls_back_to_greedy():
    gf = make_field(2, 4)
    d = build_W(10, 7)
    pts, cert = find_points(gf, d, max_attempts=0)
    assert cert.strategy == GREEDY and xi_eval(gf, d, pts) != 0
    with pytest.raises(AttemptsExhausted):
        find_points(gf, d, max_attempts=0, fallback=False)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        find_points(make_field(5), build_W(4, 2), strategy="annealing")


def test_coordinate_sweep_bounded_by_degree():
    # xi has degree at most ceil(k(k-1)/n) in each coordinate
    for (n, k), p in [((10, 7), (2, 4)), ((13, 7), (17, 1)), ((8, 5), (11, 1))]:
        gf = make_field(*p)
        d = build_W(n, k)
        pts, _ = find_points(gf, d)
        m = -(-k * (k - 1) // n)
        for j in range(n):
            assert coordinate_sweep_zeros(gf, d, pts, j) <= m


def test_certificate_roundtrip():
    c = Certificate(7, RANDOMIZED, 3, 2)
    assert Certificate.from_json(c.to_json()) == c


@pytest.mark.parametrize("nk", sorted(GOLDEN))
def test_claim3_golden(nk):
    rep = claim3_oracle(build_W(*nk))
    assert rep.count == 1
    assert rep.sigma == tuple(range(nk[1], 0, -1))
    assert rep.ok


def test_claim3_guards():
    with pytest.raises(BudgetExceeded):
        claim3_oracle(build_W(20, 8))
    with pytest.raises(ValueError):
        claim3_oracle(design_from_rows(3, 2, [[1, 0, 0], [0, 1, 0]]))


def test_claim3_detects_ambiguity():
    # a design whose rows share their support admits two decompositions
    d = build_W(5, 3)
    Z = (d.Z[0], d.Z[0], d.Z[2])
    rep = claim3_oracle(replace(d, Z=Z))
    assert not rep.ok
