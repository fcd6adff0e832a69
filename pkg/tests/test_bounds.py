import math

import mpmath
import pytest
from conftest import exact_cases

from wreathwalk.bounds import (
    BoundInputs,
    bounds_row,
    compare,
    corollary_ub1_check,
    cutoff_time,
    fixed_point_exact,
    fixed_point_formulas,
    lb_l2,
    lb_tv,
    lemma_ub1_check,
    ub_l2_key_ineq,
    ub_l2_specialized,
    ub_tv_coupling,
    ub_tv_spectral,
)
from wreathwalk.errors import CapacityError, DomainError
from wreathwalk.groups import make_cyclic
from wreathwalk.montecarlo import MCConfig, distinguishing_tv_lower
from wreathwalk.walk import build_warp_measure, evolve, l2_sq, tv_distance


def test_lemma_examples():
    lhs, rhs, holds = lemma_ub1_check(1, 0, 1)
    assert lhs == 1 and rhs == pytest.approx(math.exp(math.exp(-2))) and holds
    lhs, rhs, holds = corollary_ub1_check(2, 0, 1)
    assert lhs == 0.25 and holds
    assert corollary_ub1_check(1, 0, 3)[0] == 0
    assert corollary_ub1_check(10, 1, 20)[2]


@pytest.mark.parametrize("L", range(1, 13))
@pytest.mark.parametrize("s", [0, 0.5, 1])
def test_lemma_holds_for_small_shifts(L, s):
    for k in range(L, 4 * L + 1):
        assert lemma_ub1_check(L, s, k)[2]
        assert corollary_ub1_check(L, s, k)[2]


def test_lemma_top_term():
    for L in (3, 7, 12):
        assert lemma_ub1_check(L, 0, 2 * L)[0] >= 1


def test_lemma_fails_when_shift_exceeds_first_row():
    # (lam_1 - s)^2k stays >= 1 while the right side decays like e^{-2ks/L}
    assert not lemma_ub1_check(1, 2, 1)[2]
    assert not lemma_ub1_check(2, 2, 2)[2]


def test_lemma_capacity_and_domain():
    with pytest.raises(CapacityError):
        lemma_ub1_check(41, 0, 41)
    with pytest.raises(DomainError):
        lemma_ub1_check(3, -1, 3)


def test_key_inequality_domain():
    with pytest.raises(DomainError):
        ub_l2_key_ineq(BoundInputs(10, 2, 2, 20))
    assert ub_l2_key_ineq(BoundInputs(10, 2, 2, 10 * math.log(10))) > 0
    assert ub_l2_key_ineq(BoundInputs(10, 2, 2, 10_000)) < 1e-300 + 1e-12


@pytest.mark.parametrize("n,G,Gh,C", [(10, 2, 2, 0.5), (50, 6, 3, 1.0), (7, 24, 5, 2.0)])
def test_specialized_form(n, G, Gh, C):
    k = cutoff_time(n, G) + C * n
    assert ub_l2_key_ineq(BoundInputs(n, G, Gh, k)) == pytest.approx(ub_l2_specialized(n, G, Gh, C), rel=1e-10)


@pytest.mark.parametrize("g,n", exact_cases())
def test_key_inequality_dominates_exact(g, n):
    for k, d in evolve(build_warp_measure(n, g), 60):
        if k >= max(n, n * math.log(n)):
            assert ub_l2_key_ineq(BoundInputs(n, g.order, len(g.irreps), k)) >= l2_sq(d)


def test_ub_tv_spectral():
    mpmath.mp.dps = 30
    ref = mpmath.sqrt(2) * (mpmath.e ** -2 + 1) * mpmath.e ** -1
    assert ub_tv_spectral(1) == pytest.approx(float(ref), rel=1e-14)
    assert ub_tv_spectral(1) == pytest.approx(0.5907, abs=1e-4)
    assert ub_tv_spectral(40) < 1e-16
    with pytest.raises(DomainError):
        ub_tv_spectral(0)


def test_ub_tv_coupling():
    assert ub_tv_coupling(4, 2) == pytest.approx(2 * math.exp(-4) + (math.e + 1) * math.exp(-2))
    assert ub_tv_coupling(4, 2) == pytest.approx(0.5398, abs=1e-4)
    assert ub_tv_coupling(100, 2) < 1e-20
    with pytest.raises(DomainError):
        ub_tv_coupling(1, 2)
    with pytest.raises(DomainError):
        ub_tv_coupling(3, 0)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_coupling_bound_dominates_exact_tv(n):
    g = make_cyclic(2)
    targets = {math.ceil(n * math.log(n) + C * n): C for C in (2, 3, 4)}
    for k, d in evolve(build_warp_measure(n, g), max(targets), mode="float"):
        if k in targets:
            assert compare("ub_tv_coupling", ub_tv_coupling(targets[k], 2.0), tv_distance(d), "upper") == "ok"


def test_lb_l2_b2_is_asymptotic_only():
    g = make_cyclic(2)
    exact = {k: math.sqrt(l2_sq(d)) for k, d in evolve(build_warp_measure(2, g), 2)}
    v1 = lb_l2(BoundInputs(2, 2, 2, 1))
    v2 = lb_l2(BoundInputs(2, 2, 2, 2))
    assert v1 == pytest.approx(math.sqrt(2) * math.exp(-0.5)) and v1 <= exact[1]
    assert v2 == pytest.approx(0.5203, abs=1e-4) and v2 > exact[2] == 0.5
    assert compare("lb_l2", v2, exact[2], "lower") == "asymptotic-diagnostic"
    assert compare("ub_tv_coupling", 0.1, 0.2, "upper") == "violated"


def test_lb_l2_grows_below_cutoff():
    eps = 0.3
    values = [lb_l2(BoundInputs(n, 3, 3, (1 - eps) * cutoff_time(n, 3))) for n in (10, 100, 1000, 10_000, 10**6)]
    assert values == sorted(values) and values[-1] > 50


def test_lb_tv_domain_and_clamp():
    with pytest.raises(DomainError):
        lb_tv(BoundInputs(2, 2, 2, 5))
    with pytest.raises(DomainError):
        lb_tv(BoundInputs(10, 2, 2, 1))
    assert lb_tv(BoundInputs(100, 2, 2, 5000)) == 0
    assert 0 <= lb_tv(BoundInputs(10, 2, 2, 2)) <= 1


def test_lb_tv_trend():
    values = [lb_tv(BoundInputs(n, 2, 2, math.floor(0.7 * n * math.log(n)))) for n in (100, 1000, 10_000, 10**6, 10**8)]
    assert values == sorted(values)
    assert values[-1] > 0.95


def test_lb_tv_against_monte_carlo():
    n = 100
    k = math.floor(0.5 * n * math.log(n))
    value = lb_tv(BoundInputs(n, 2, 2, k))
    assert value == pytest.approx(0.4797, abs=1e-4)
    assert distinguishing_tv_lower(MCConfig(n, make_cyclic(2), 20_000, seed=21), k, 2) >= value


def test_fixed_point_formulas():
    assert fixed_point_formulas(50, 0)[0] == 49
    ek, ek2 = fixed_point_formulas(50, 10_000)
    assert ek == pytest.approx(1) and ek2 == pytest.approx(2)
    assert fixed_point_formulas(100, math.ceil(100 * math.log(100)))[0] == pytest.approx(1.98, abs=0.01)
    with pytest.raises(DomainError):
        fixed_point_formulas(2, 3)


def test_exact_moments_basics():
    assert fixed_point_exact(10, 0) == (10, 100)
    # one step: identity with probability 1/n, otherwise a transposition
    assert fixed_point_exact(10, 1) == pytest.approx((0.1 * 10 + 0.9 * 8, 0.1 * 100 + 0.9 * 64))
    ek, ek2 = fixed_point_exact(30, 5000)
    assert ek == pytest.approx(1) and ek2 == pytest.approx(2)


def test_approximation_gap_shrinks_with_n():
    ks = {n: math.ceil(n * math.log(n)) for n in (10, 100, 1000, 10_000)}
    gaps = [abs(fixed_point_formulas(n, k)[0] - fixed_point_exact(n, k)[0]) for n, k in ks.items()]
    assert gaps == sorted(gaps, reverse=True)


def test_bounds_row():
    row = bounds_row(10, 2, 2, 5)
    assert row["ub_l2_key"] is None and row["ub_tv_coupling"] is None and row["ub_tv_spectral"] is None
    assert row["lb_l2"] is not None and row["lb_tv"] is not None
    assert "lb_tv" in row["asymptotic_flags"]
    row = bounds_row(10, 2, 2, 100)
    assert all(row[h] is not None for h in ("ub_l2_key", "ub_tv_spectral", "ub_tv_coupling"))
    with pytest.raises(DomainError):
        cutoff_time(5, 1)
