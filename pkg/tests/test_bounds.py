import math
from fractions import Fraction

import pytest

from ffdyn.bounds import BoundRefused, bound_check, bound_survey, check_hypotheses
from ffdyn.ensemble import EnsembleSpec
from ffdyn.ffield import make_field
from ffdyn.projmap import normalize, polynomial_map


def test_square_over_f3():
    c = bound_check(polynomial_map(make_field(3), [0, 0, 1]), 1)
    assert c.image_size == 3 and c.image_ratio == Fraction(3, 4)
    assert c.assumed_fix == Fraction(1, 2) and c.assumed_group_order == 2
    assert c.rhs_constant == 28
    assert c.rhs_absolute == pytest.approx(28 / math.sqrt(3))
    assert c.satisfied_abs and c.satisfied_rel and c.vacuous_abs


def test_bijective_cube_over_f5():
    c = bound_check(polynomial_map(make_field(5), [0, 0, 0, 1]), 1)
    assert c.image_ratio == 1
    assert c.assumed_fix == Fraction(2, 3) and c.lhs_relative == Fraction(1, 3)
    c = bound_check(polynomial_map(make_field(7), [0, 0, 0, 0, 0, 1]), 1)  # X^5 permutes F_7
    assert c.image_ratio == 1
    assert c.lhs_relative == 1 - c.assumed_fix


def test_lhs_exact_values():
    phi = normalize(make_field(11), [1, 0, 1], [0, 1])  # (X^2+1)/X
    c = bound_check(phi, 2)
    f = Fraction(3, 8)
    assert c.assumed_fix == f
    assert c.lhs_absolute == abs(c.image_size / f - 12)
    assert c.lhs_relative == abs(Fraction(c.image_size, 12) - f)


def test_vacuous_implies_satisfied():
    for p in (5, 7, 11, 13):
        F = make_field(p)
        for f in ([0, 0, 1], [1, 3, 2], [2, 0, 0, 1]):
            phi = polynomial_map(F, f)
            if math.gcd(p, math.factorial(phi.d)) != 1:
                continue
            for n in (1, 2, 3):
                c = bound_check(phi, n)
                assert not c.vacuous_abs or c.satisfied_abs
                assert not c.vacuous_rel or c.satisfied_rel


def test_refusals():
    with pytest.raises(BoundRefused):
        check_hypotheses(2, 2)
    with pytest.raises(BoundRefused):
        check_hypotheses(9, 3)
    check_hypotheses(25, 4)
    F = make_field(5)
    with pytest.raises(ValueError):
        bound_check(polynomial_map(F, [0, 0, 1]), 0)
    # X^7 over F_7 is inseparable and also has 7 | 7!
    with pytest.raises(BoundRefused):
        bound_check(polynomial_map(make_field(7), [0] * 7 + [1]), 1)


def test_survey_q5():
    s = bound_survey(EnsembleSpec(5, 1, 2, "polynomial"), 1)
    assert len(s.rows) + s.skipped_inseparable == 100
    assert s.skipped_inseparable == 0
    assert s.fraction_abs == 1 and s.fraction_rel == 1
    assert sum(s.lhs_relative_distribution.values()) == 100
    again = bound_survey(EnsembleSpec(5, 1, 2, "polynomial"), 1)
    assert again.rows == s.rows
    assert all(c.vacuous_abs for _, c in s.rows)
