import itertools

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ffdyn import poly
from ffdyn.ffield import make_field
from ffdyn.projmap import (
    INFINITY,
    ProjPoint,
    derivative_is_zero,
    evaluate,
    has_good_reduction,
    map_from_text,
    map_to_text,
    normalize,
    points,
    polynomial_map,
    resultant,
    specialize,
    tuple_generates,
)

X = sympy.Symbol("X")


def sym_poly(a, p):
    return sympy.Poly(list(reversed(a)) or [0], X, modulus=p)


coeff_lists = st.lists(st.integers(0, 6), min_size=0, max_size=5)


@settings(max_examples=200, deadline=None)
@given(coeff_lists, coeff_lists)
def test_gcd_and_resultant_match_sympy_over_f7(a, b):
    F = make_field(7)
    a, b = poly.trim(a), poly.trim(b)
    if not a and not b:
        return
    g = poly.gcd(F, a, b)
    sg = sympy.gcd(sym_poly(a, 7), sym_poly(b, 7)).monic()
    assert [c % 7 for c in reversed(sg.all_coeffs())] == g
    if a and b:
        # sympy's Sylvester matrix; its resultant() disagrees in sign when deg a < deg b
        pa, pb = sym_poly(a, 7).as_expr(), sym_poly(b, 7).as_expr()
        if len(a) == 1 or len(b) == 1:
            sr = pow(a[-1], len(b) - 1, 7) * pow(b[-1], len(a) - 1, 7) % 7
        else:
            sr = int(sylvester(pa, pb, X, 1).det()) % 7
        assert resultant(F, a, b) == sr


def test_resultant_example():
    F = make_field(3)
    # Res(X^2 + 1, X) = 1 over F_3
    assert resultant(F, [1, 0, 1], [0, 1]) == 1
    assert resultant(F, [0, 1], [0, 0, 1]) == 0


def test_divmod_roundtrip():
    F = make_field(3, 2)
    a, b = [1, 4, 0, 7, 2], [3, 0, 5]
    qq, r = poly.divmod_(F, a, b)
    assert poly.add(F, poly.mul(F, qq, b), r) == poly.trim(a)
    assert poly.degree(r) < poly.degree(b)


def test_points_order_and_count():
    F = make_field(2, 2)
    pts = points(F)
    assert len(pts) == 5
    assert pts[-1] == INFINITY
    assert [P.index(F) for P in pts] == list(range(5))
    assert ProjPoint.from_homogeneous(F, 3, 0) == INFINITY
    assert ProjPoint.from_homogeneous(F, 2, 2) == ProjPoint(1)
    with pytest.raises(ValueError):
        ProjPoint.from_homogeneous(F, 0, 0)


def test_square_map_over_f3():
    F = make_field(3)
    phi = polynomial_map(F, [0, 0, 1])
    assert phi.images() == [0, 1, 1, 3]
    assert evaluate(phi, INFINITY) == INFINITY


def test_mobius_inversion_over_f5():
    F = make_field(5)
    phi = normalize(F, [1], [0, 1])  # 1/X
    assert phi.d == 1
    assert phi.images() == [5, 1, 3, 2, 4, 0]


def test_normalize_cancels_and_scales():
    F = make_field(5)
    # (2X^2 + 2X) / (X + 1) = 2X, a polynomial of degree 1
    phi = normalize(F, [0, 2, 2], [1, 1])
    assert (phi.num, phi.den, phi.d) == ((0, 2), (1,), 1)
    assert phi.is_polynomial
    # 3X / (3X^2 + 1): den has degree d, so it is made monic
    psi = normalize(F, [0, 3], [1, 0, 3])
    assert psi.den[-1] == 1 and psi.d == 2
    # (2X^2 + 1) / (2X): deg g < d, so f is monic
    chi = normalize(F, [1, 0, 2], [0, 2])
    assert chi.num[-1] == 1 and chi.d == 2
    assert normalize(F, [1, 1], []) is None
    with pytest.raises(ValueError):
        normalize(F, [], [0])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=1, max_size=4), st.lists(st.integers(0, 8), min_size=1, max_size=4),
       st.integers(1, 8))
def test_normalize_idempotent_and_scale_invariant(f, g, c):
    F = make_field(3, 2)
    assume(poly.trim(f) or poly.trim(g))
    phi = normalize(F, f, g)
    if phi is None:
        return
    again = normalize(F, list(phi.num), list(phi.den))
    assert again == phi
    assert normalize(F, poly.scale(F, f, c), poly.scale(F, g, c)) == phi


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=3, max_size=3), st.lists(st.integers(0, 8), min_size=3, max_size=3))
def test_fibers_at_most_d(f, g):
    F = make_field(3, 2)
    assume(poly.trim(f) or poly.trim(g))
    phi = normalize(F, f, g)
    if phi is None:
        return
    img = phi.images()
    for y in set(img):
        assert img.count(y) <= max(phi.d, 1) or phi.d == 0
    # image array agrees with elementwise evaluation
    assert img == [phi.eval_index(i) for i in range(F.q + 1)]


@pytest.mark.parametrize("p,j", [(3, 1), (2, 2)])
def test_good_reduction_gcd_vs_resultant_exhaustive(p, j):
    # every (a_2, a_1, a_0, b_2, b_1, b_0): specialize (gcd route) vs resultant route
    F = make_field(p, j)
    good = 0
    for a in itertools.product(range(F.q), repeat=6):
        s = specialize(F, a, 2) is not None
        assert s == has_good_reduction(F, a, 2)
        good += s
    # good tuples are the maps of degree 2 times the q-1 scalings
    q = F.q
    assert good == (q - 1) * q**3 * (q * q - 1)


def test_specialize_polynomial_tuple():
    F = make_field(3)
    assert specialize(F, (1, 0, 0), 2).images() == [0, 1, 1, 3]
    assert specialize(F, (0, 1, 0), 2) is None
    with pytest.raises(ValueError):
        specialize(F, (1, 2, 3, 4), 2)


def test_tuple_generates():
    F = make_field(2, 2)
    assert not tuple_generates(F, (0, 1, 1, 0))
    assert tuple_generates(F, (0, 2, 1, 0))


def test_derivative_is_zero():
    F = make_field(3)
    assert derivative_is_zero(polynomial_map(F, [1, 0, 0, 1]))  # X^3 + 1
    assert not derivative_is_zero(polynomial_map(F, [0, 0, 1]))
    F2 = make_field(2, 2)
    assert derivative_is_zero(normalize(F2, [1, 0, 1], [0, 0, 1]))  # (X^2+1)/X^2


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 26), min_size=1, max_size=4), st.lists(st.integers(0, 26), min_size=1, max_size=4))
def test_text_roundtrip(f, g):
    F = make_field(3, 3)
    assume(poly.trim(f) or poly.trim(g))
    phi = normalize(F, f, g)
    if phi is None:
        return
    text = map_to_text(phi)
    assert map_from_text(F, text) == phi
    assert str(phi) == text


def test_text_errors():
    F = make_field(3)
    with pytest.raises(ValueError):
        map_from_text(F, "2; 0 0 1")
    with pytest.raises(ValueError):
        map_from_text(F, "3; 0 0 1; 1")
    with pytest.raises(ValueError):
        map_from_text(F, "1; 0 5; 1")


def test_documented_examples():
    F2, F3, F4, F5 = make_field(2), make_field(3), make_field(2, 2), make_field(5)
    phi = normalize(F2, [0, 1, 1], [0, 1])
    assert (phi.num, phi.den, phi.d) == ((1, 1), (1,), 1)
    assert normalize(F3, [0, 0, 2], [2]) == polynomial_map(F3, [0, 0, 1])
    sq = polynomial_map(F3, [0, 0, 1])
    assert evaluate(sq, ProjPoint(2)) == ProjPoint(1)
    assert evaluate(normalize(F3, [1], [0, 1]), ProjPoint(0)) == INFINITY
    assert derivative_is_zero(polynomial_map(F3, [0, 0, 0, 1]))
    assert not derivative_is_zero(polynomial_map(F5, [0, 0, 0, 1]))
    assert resultant(F3, [0, 0, 1], [1]) == 1
    assert resultant(F3, [0, 1], [0, 1]) == 0
    assert resultant(F3, [1, 0, 1], [1, 1]) == 2
    assert specialize(F3, (1, 0, 0, 0, 0, 1), 2) == sq
    assert specialize(F3, (1, 0, 0, 1, 0, 0), 2) is None
    assert specialize(F3, (0, 0, 0, 0, 0, 1), 2) is None
    assert not tuple_generates(F4, (0,) * 6)
    assert tuple_generates(F4, (0, 0, 2, 0, 0, 1))
    assert all(tuple_generates(F3, a) for a in itertools.product(range(3), repeat=3))
