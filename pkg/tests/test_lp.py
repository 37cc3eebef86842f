"""Exact simplex solver against scipy.optimize.linprog."""

import random
from fractions import Fraction

import numpy as np
import pytest

scipy_opt = pytest.importorskip("scipy.optimize")

from wctree.lp import solve_lp


def frac_list(rng, n, lo=-6, hi=6, den=4):
    return [Fraction(rng.randint(lo, hi), rng.randint(1, den)) for _ in range(n)]


def test_known_lp():
    # min -x - y  s.t.  x + y <= 1, x, y >= 0  ->  value -1 on the segment
    res = solve_lp(c=[Fraction(-1), Fraction(-1)],
                   a_ub=[[Fraction(1), Fraction(1)]], b_ub=[Fraction(1)])
    assert res.status == "optimal"
    assert res.value == Fraction(-1)
    assert sum(res.x) == Fraction(1)


def test_infeasible_lp():
    res = solve_lp(c=[Fraction(1)], a_eq=[[Fraction(1)]], b_eq=[Fraction(-1)])
    assert res.status == "infeasible"


def test_unbounded_lp():
    res = solve_lp(c=[Fraction(-1)], a_ub=[[Fraction(-1)]], b_ub=[Fraction(1)])
    assert res.status == "unbounded"


def test_equality_constraints_respected():
    res = solve_lp(c=[Fraction(2), Fraction(3)],
                   a_eq=[[Fraction(1), Fraction(1)]], b_eq=[Fraction(1)])
    assert res.status == "optimal"
    assert res.value == Fraction(2)
    assert res.x[0] == 1 and res.x[1] == 0


def test_random_lps_match_scipy():
    """Value agreement on bounded feasible programs, scipy as float oracle."""
    rng = random.Random(20240817)
    checked = 0
    for _ in range(120):
        n = rng.randint(1, 4)
        m_ub = rng.randint(1, 3)
        c = frac_list(rng, n)
        a_ub = [frac_list(rng, n) for _ in range(m_ub)]
        b_ub = frac_list(rng, m_ub, lo=0, hi=8)
        # a simplex cap keeps everything bounded and usually feasible
        a_ub.append([Fraction(1)] * n)
        b_ub.append(Fraction(5))
        mine = solve_lp(c=c, a_ub=a_ub, b_ub=b_ub)
        ref = scipy_opt.linprog(
            c=[float(x) for x in c],
            A_ub=[[float(x) for x in row] for row in a_ub],
            b_ub=[float(x) for x in b_ub],
            bounds=[(0, None)] * n, method="highs")
        if mine.status == "optimal":
            assert ref.status == 0
            assert abs(float(mine.value) - ref.fun) < 1e-7
            # exact feasibility of the returned point
            for row, bound in zip(a_ub, b_ub):
                assert sum(r * x for r, x in zip(row, mine.x)) <= bound
            checked += 1
        elif mine.status == "infeasible":
            assert ref.status == 2
    assert checked >= 60


def test_random_equality_lps_match_scipy():
    rng = random.Random(99)
    checked = 0
    for _ in range(80):
        n = rng.randint(2, 4)
        c = frac_list(rng, n)
        a_eq = [[Fraction(1)] * n]
        b_eq = [Fraction(1)]
        a_ub = [frac_list(rng, n) for _ in range(rng.randint(0, 2))]
        b_ub = frac_list(rng, len(a_ub), lo=1, hi=6)
        mine = solve_lp(c=c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq)
        ref = scipy_opt.linprog(
            c=[float(x) for x in c],
            A_ub=[[float(x) for x in row] for row in a_ub] or None,
            b_ub=[float(x) for x in b_ub] or None,
            A_eq=[[1.0] * n], b_eq=[1.0],
            bounds=[(0, None)] * n, method="highs")
        if mine.status == "optimal" and ref.status == 0:
            assert abs(float(mine.value) - ref.fun) < 1e-7
            assert sum(mine.x) == 1
            checked += 1
    assert checked >= 40


def test_maximize_flag():
    res = solve_lp(c=[Fraction(1), Fraction(2)],
                   a_ub=[[Fraction(1), Fraction(1)]], b_ub=[Fraction(1)],
                   maximize=True)
    assert res.status == "optimal"
    assert res.value == Fraction(2)
