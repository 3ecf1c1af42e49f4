from fractions import Fraction
from itertools import product

from hypothesis import given, strategies as st

from wmn_lab.superalgebra import (SuperMonomial, SuperPolynomial, enumerate_monomials,
                                  monomial_count, monomials_up_to, mul, partial_x, partial_y,
                                  render_poly)

M, N_ = 2, 2


def x(i, m=M, n=N_):
    return SuperPolynomial.x(i, m, n)


def y(t, m=M, n=N_):
    return SuperPolynomial.y(t, m, n)


def one(m=M, n=N_):
    return SuperPolynomial.one(m, n)


def test_odd_sign_rule():
    assert mul(y(1), y(2)) == SuperPolynomial.monomial(M, N_, mu=(1, 2))
    assert mul(y(2), y(1)) == -SuperPolynomial.monomial(M, N_, mu=(1, 2))
    assert mul(y(1), y(1)).is_zero()


def test_cross_terms_cancel():
    assert mul(x(1) + y(1), x(1) - y(1)) == mul(x(1), x(1))


def test_monomial_canonical_sign():
    assert SuperPolynomial.monomial(M, N_, mu=(2, 1)) == -SuperPolynomial.monomial(M, N_, mu=(1, 2))
    assert SuperPolynomial.monomial(M, N_, mu=(1, 1)).is_zero()


def test_even_derivatives():
    assert partial_x(1, x(1) * x(1) * y(1)) == 2 * x(1) * y(1)
    assert partial_x(2, x(1)).is_zero()
    assert partial_x(1, x(1) * x(1) * x(1) * x(2)) == 3 * x(1) * x(1) * x(2)


def test_odd_derivatives():
    assert partial_y(2, y(1) * y(2)) == -y(1)
    assert partial_y(1, y(1) * y(2)) == y(2)
    assert partial_y(1, x(1) * y(1) * y(2)) == x(1) * y(2)


def test_render():
    f = 2 * x(1) * x(1) * y(1) - SuperPolynomial.monomial(M, N_, mu=(1, 2)).scale(Fraction(1, 3))
    # graded order: lower degree first
    assert render_poly(f) == "-1/3*y1*y2 + 2*x1^2*y1"
    assert render_poly(2 * x(1) * x(1) * y(1)) == "2*x1^2*y1"


def test_enumeration_small():
    assert enumerate_monomials(0, 3, 2) == [SuperMonomial((0, 0, 0), ())]
    assert {k.render() for k in enumerate_monomials(2, 1, 1)} == {"x1^2", "x1*y1"}


def brute_count(d, m, n):
    """Count monomials of degree d by scanning all exponent vectors and odd subsets."""
    c = 0
    for alpha in product(range(d + 1), repeat=m):
        for mask in product((0, 1), repeat=n):
            if sum(alpha) + sum(mask) == d:
                c += 1
    return c


def test_degree_two_count_is_eight():
    # the enumerated list is x1^2, x1x2, x2^2, x1y1, x1y2, x2y1, x2y2, y1y2
    assert len(enumerate_monomials(2, 2, 2)) == 8 == brute_count(2, 2, 2)


@given(st.integers(0, 5), st.integers(1, 3), st.integers(0, 3))
def test_count_matches_brute_force(d, m, n):
    mons = enumerate_monomials(d, m, n)
    assert len(mons) == monomial_count(d, m, n) == brute_count(d, m, n)
    assert len(set(mons)) == len(mons)
    assert all(k.degree == d and list(k.mu) == sorted(set(k.mu)) for k in mons)


def test_monomials_up_to_graded():
    mons = monomials_up_to(3, 2, 1)
    assert [k.degree for k in mons] == sorted(k.degree for k in mons)


# polynomials of degree <= 2 in R(2|2) with small integer coefficients
monos = monomials_up_to(2, M, N_)
polys = st.dictionaries(st.sampled_from(monos), st.integers(-3, 3), max_size=4).map(
    lambda d: SuperPolynomial(M, N_, d))
homog = st.tuples(st.sampled_from(monos), st.integers(1, 3)).map(
    lambda t: SuperPolynomial(M, N_, {t[0]: t[1]}))


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert mul(mul(f, g), h) == mul(f, mul(g, h))
    assert mul(f, g + h) == mul(f, g) + mul(f, h)
    assert mul(f, one()) == f


@given(homog, homog)
def test_supercommutativity(f, g):
    s = -1 if f.parity and g.parity else 1
    assert mul(f, g) == mul(g, f).scale(s)


@given(homog, homog, st.integers(1, N_))
def test_odd_leibniz(f, g, t):
    s = -1 if f.parity else 1
    assert partial_y(t, mul(f, g)) == mul(partial_y(t, f), g) + mul(f, partial_y(t, g)).scale(s)


@given(homog, homog, st.integers(1, M))
def test_even_leibniz(f, g, i):
    assert partial_x(i, mul(f, g)) == mul(partial_x(i, f), g) + mul(f, partial_x(i, g))


@given(polys, st.integers(1, N_), st.integers(1, N_))
def test_odd_derivations_anticommute(f, s, t):
    assert partial_y(s, partial_y(t, f)) == -partial_y(t, partial_y(s, f))


@given(polys, st.integers(1, M), st.integers(1, N_))
def test_mixed_derivations_commute(f, i, t):
    assert partial_x(i, partial_y(t, f)) == partial_y(t, partial_x(i, f))


@given(polys)
def test_no_zero_coefficients(f):
    assert all(c != 0 for c in (f - f + f).terms.values())
    assert (f - f).is_zero()
