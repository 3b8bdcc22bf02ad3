from fractions import Fraction

import pytest

from dunklcm.invariance import (
    condition_equations,
    criterion_invariant,
    direct_invariance_violations,
    is_invariant_direct,
    order_vanishing_violations,
    solve_multiplicities,
)
from dunklcm.rootsystems import (
    Multiplicities,
    OrbitCapExceeded,
    block_stratum,
    parabolic_stratum,
    root_system,
)


def test_single_component_equation_text():
    rs = root_system("B", 4)
    st = block_stratum(rs, m=0, k=0, l=2)
    assert condition_equations(st) == ["2*c1+2*c2 = 1"]


def test_equations_split_by_component():
    rs = root_system("F4")
    st = parabolic_stratum(rs, (0, 3))  # two orthogonal nodes, one per orbit
    assert sorted(condition_equations(st)) == ["2*c1 = 1", "2*c2 = 1"]


@pytest.mark.parametrize(
    "gamma0,good,bad",
    [
        ((0,), Fraction(1, 2), Fraction(1, 3)),
        ((0, 1), Fraction(1, 3), Fraction(1, 2)),
        ((0, 2), Fraction(1, 2), Fraction(2, 3)),
    ],
)
def test_criterion_matches_direct_route(gamma0, good, bad):
    rs = root_system("A", 3)
    st = parabolic_stratum(rs, gamma0)
    for value, expect in ((good, True), (bad, False)):
        mults = Multiplicities.numeric(rs, value)
        assert criterion_invariant(st, mults) is expect
        assert is_invariant_direct(st, mults) is expect


def test_direct_route_mixed_orbits():
    rs = root_system("B", 3)
    st = block_stratum(rs, m=0, k=0, l=2)
    good = Multiplicities.numeric(rs, {"c1": Fraction(1, 3), "c2": Fraction(1, 6)})
    off = Multiplicities.numeric(rs, {"c1": Fraction(1, 3), "c2": Fraction(1, 5)})
    assert criterion_invariant(st, good) and is_invariant_direct(st, good)
    assert not criterion_invariant(st, off)
    assert not is_invariant_direct(st, off)


def test_direct_route_respects_orbit_limit():
    rs = root_system("B", 3)
    st = parabolic_stratum(rs, (0,))
    mults = Multiplicities.numeric(rs, {"c1": Fraction(1, 2), "c2": Fraction(1, 2)})
    with pytest.raises(OrbitCapExceeded):
        direct_invariance_violations(st, mults, orbit_limit=2)


def test_solve_unique():
    rs = root_system("A", 3)
    st = parabolic_stratum(rs, (0, 1))
    solved = solve_multiplicities(st)
    assert solved["status"] == "unique"
    assert solved["values"] == {"c": "1/3"}
    assert solved["free"] == []


def test_solve_family():
    rs = root_system("B", 4)
    st = block_stratum(rs, m=0, k=0, l=2)
    solved = solve_multiplicities(st)
    assert solved["status"] == "family"
    assert solved["values"]["c1"] == "-c2+1/2"
    assert solved["free"] == ["c2"]


def test_solve_inconsistent():
    rs = root_system("A", 5)
    st = parabolic_stratum(rs, (0, 2, 3))  # a pair block next to a triple block
    solved = solve_multiplicities(st)
    assert solved["status"] == "inconsistent"
    assert sorted(solved["equations"]) == ["2*c = 1", "3*c = 1"]


def test_solve_unconstrained_on_full_space():
    rs = root_system("A", 2)
    st = parabolic_stratum(rs, ())
    solved = solve_multiplicities(st)
    assert solved["status"] == "unconstrained"
    assert solved["free"] == ["c"]


@pytest.mark.parametrize("m,good,bad", [(1, Fraction(1, 2), Fraction(1, 3)), (2, Fraction(3, 2), Fraction(1, 2))])
def test_order_vanishing_rank_one(m, good, bad):
    rs = root_system("A", 1)
    order = 2 * m - 1
    ok = order_vanishing_violations(rs, [0], order, Multiplicities.numeric(rs, good))
    assert ok == []
    broken = order_vanishing_violations(rs, [0], order, Multiplicities.numeric(rs, bad))
    assert broken != []


def test_order_vanishing_rejects_even_order():
    rs = root_system("A", 1)
    with pytest.raises(ValueError):
        order_vanishing_violations(rs, [0], 2, Multiplicities.numeric(rs, Fraction(1, 2)))
