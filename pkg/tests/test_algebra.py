import pytest
from hypothesis import given, strategies as st

from wmn_lab.algebra import (GlMatrix, WittElement, apply, basis_keys, basis_of_gi, bracket, d,
                             dim_gi, g0_element, g0_to_gl, gl_to_g0, semi_infinite_character,
                             super_commutator, supertrace_ad_pair)
from wmn_lab.superalgebra import (SuperPolynomial, enumerate_monomials, monomials_up_to, mul)
from wmn_lab.verifiers import algebra_suite


def P(m, n):
    x = lambda i: SuperPolynomial.x(i, m, n)
    y = lambda t: SuperPolynomial.y(t, m, n)
    return x, y


def W(f, g):
    return WittElement.from_poly(f, g)


def test_apply_examples():
    x, y = P(2, 2)
    assert apply(W(x(1), 1), x(1) * x(1)) == 2 * x(1) * x(1)
    assert apply(W(y(1), 4), y(2)) == y(1)                     # y1 D2
    assert apply(W(x(1) * y(1), 1), x(1) * y(2)) == x(1) * y(1) * y(2)


def test_bracket_examples():
    m, n = 2, 2
    x, y = P(m, n)
    assert bracket(d(1, m, n), W(x(1), 2)) == d(2, m, n)
    assert bracket(d(3, m, n), W(y(1), 3)) == d(3, m, n)
    assert bracket(d(3, m, n), d(3, m, n)).is_zero()


def test_small_bases():
    assert {str(E) for E in basis_of_gi(-1, 1, 1)} == {"d1", "D1"}
    assert len(basis_of_gi(0, 1, 1)) == 4
    assert dim_gi(1, 2, 2) == 4 * len(enumerate_monomials(2, 2, 2)) == 32
    with pytest.raises(ValueError):
        basis_of_gi(-2, 1, 1)


def test_g0_to_gl_examples():
    x, y = P(1, 1)
    assert g0_to_gl(W(x(1), 1)) == GlMatrix.unit(1, 1, 1, 1)
    assert g0_to_gl(W(y(1), 1)) == GlMatrix.unit(2, 1, 1, 1)
    A, B = W(x(1), 2), W(y(1), 1)
    assert g0_to_gl(bracket(A, B)) == super_commutator(g0_to_gl(A), g0_to_gl(B))


def test_supertrace_examples():
    x, y = P(1, 1)
    assert supertrace_ad_pair(W(x(1) * y(1), 2), d(1, 1, 1), 1, 1) == 1
    x2, y2 = P(2, 1)
    assert supertrace_ad_pair(W(x2(1) * x2(2), 3), d(3, 2, 1), 2, 1) == 0
    assert supertrace_ad_pair(W(x(1) * y(1), 1), d(2, 1, 1), 1, 1) == 1


def test_character_values():
    m, n = 2, 2
    assert semi_infinite_character(g0_element(1, 1, m, n)) == 1
    assert semi_infinite_character(g0_element(3, 3, m, n)) == -1
    assert semi_infinite_character(g0_element(1, 3, m, n)) == 0
    with pytest.raises(ValueError):
        semi_infinite_character(d(1, m, n))


@pytest.mark.parametrize("mn", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_suite_passes(mn):
    reports = algebra_suite(*mn, degree=2)
    assert all(r.passed for r in reports), [r.to_json() for r in reports if not r.passed]


def test_suite_degree_zero():
    assert all(r.passed for r in algebra_suite(2, 2, degree=0))


# random homogeneous basis elements of g_{-1..2} in W(2|1)
MN = (2, 1)
keys = [k for i in range(-1, 3) for k in basis_keys(i, *MN)]
elem = st.sampled_from(keys).map(lambda k: WittElement(*MN, {k: 1}))
test_polys = monomials_up_to(3, *MN)


def as_operator(E):
    return {k: apply(E, SuperPolynomial(*MN, {k: 1})) for k in test_polys}


@given(elem, elem)
def test_bracket_is_operator_supercommutator(A, B):
    # independent oracle: [A,B] f = A(B f) - (-1)^{|A||B|} B(A f)
    s = -1 if A.parity and B.parity else 1
    C = bracket(A, B)
    for k in test_polys:
        f = SuperPolynomial(*MN, {k: 1})
        assert apply(C, f) == apply(A, apply(B, f)) - apply(B, apply(A, f)).scale(s)


@given(elem, elem)
def test_antisymmetry_and_grading(A, B):
    s = -1 if A.parity and B.parity else 1
    C = bracket(A, B)
    assert C == -bracket(B, A).scale(s)
    if not C.is_zero():
        assert C.is_z_homogeneous(A.z_degree + B.z_degree)
        assert C.parity == (A.parity + B.parity) % 2


@given(elem, elem, elem)
def test_super_jacobi(A, B, C):
    pa, pb, pc = A.parity, B.parity, C.parity
    sg = lambda p, q: -1 if p and q else 1
    total = (bracket(A, bracket(B, C)).scale(sg(pa, pc))
             + bracket(B, bracket(C, A)).scale(sg(pb, pa))
             + bracket(C, bracket(A, B)).scale(sg(pc, pb)))
    assert total.is_zero()


g0 = st.lists(st.tuples(st.sampled_from(basis_keys(0, 2, 2)), st.integers(-3, 3)), max_size=5).map(
    lambda t: WittElement(2, 2, dict(t)))


@given(g0)
def test_gl_roundtrip(E):
    assert gl_to_g0(g0_to_gl(E)) == E


@given(st.sampled_from(basis_keys(0, 2, 2)), st.sampled_from(basis_keys(0, 2, 2)))
def test_gl_bracket_homomorphism(a, b):
    A, B = WittElement(2, 2, {a: 1}), WittElement(2, 2, {b: 1})
    assert g0_to_gl(bracket(A, B)) == super_commutator(g0_to_gl(A), g0_to_gl(B))


@given(st.sampled_from(basis_keys(0, 2, 2)), st.sampled_from(basis_keys(0, 2, 2)))
def test_character_kills_brackets_of_odd_free_part(a, b):
    # supertrace vanishes on super-commutators
    A, B = WittElement(2, 2, {a: 1}), WittElement(2, 2, {b: 1})
    assert semi_infinite_character(bracket(A, B)) == 0
