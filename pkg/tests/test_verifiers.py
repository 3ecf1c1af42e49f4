import pytest
from hypothesis import given, strategies as st

from wmn_lab import verifiers as V
from wmn_lab.algebra import WittElement, d, semi_infinite_character, supertrace_ad_pair, bracket
from wmn_lab.glrep import exceptional_type, is_dominant
from wmn_lab.mixed import MixedProductModule
from wmn_lab.superalgebra import SuperMonomial, SuperPolynomial


@pytest.fixture(scope="module")
def V2eps():
    return MixedProductModule((2, 0, 0, 0), 2, 2, 3)


def test_case_validation():
    V.RelationCase(1, 1, 2, 1, 2).validate(2, 2)
    V.RelationCase(2, 1, 3, 2, 4).validate(2, 2)
    with pytest.raises(ValueError):
        V.RelationCase(3, 3, 3, 4, 4).validate(2, 2)     # k = k'
    with pytest.raises(ValueError):
        V.RelationCase(2, 3, 1, 1, 3).validate(2, 2)
    assert len(V.relation_cases(1, 2, 2)) == 16
    assert len(V.relation_cases(3, 2, 2)) == 8


@pytest.mark.parametrize("situation", [1, 2, 3])
def test_polynomial_lemmas(situation):
    fs = V.sample_polynomials(2, 2, seed=1)
    for case in V.relation_cases(situation, 2, 2):
        aux = V.auxiliary_identities(case, 2, 2, fs)
        assert all(aux.values()), (case.label(), aux)


def test_rel4_needs_three():
    # with g_4 = 1 the sum f_nu g_nu no longer vanishes
    case = V.RelationCase(3, 3, 3, 3, 4)
    _, fam = V.monomial_family(case, 2, 2)
    f4, g4 = fam[-1]
    assert g4 == SuperPolynomial.one(2, 2, 3)
    zero = SuperPolynomial.zero(2, 2)
    alt = fam[:-1] + [(f4, SuperPolynomial.one(2, 2))]
    assert not sum((f * g for f, g in alt), zero).is_zero()


def test_operator_identities(V2eps):
    rows = V.skryabin_suite(V2eps, seed=0)
    assert len(rows) == 16 + 16 + 8
    assert all(r["status"] == "pass" for r in rows), [r for r in rows if r["status"] != "pass"][:2]


def test_literal_middle_index_fails(V2eps, monkeypatch):
    # sigma(E_ki) sigma(E_{m+k', i'}) read literally in situation 2
    orig = V.expected_words

    def literal(case, m):
        words = orig(case, m)
        if case.situation != 2:
            return words
        (c0, w0), (c1, w1), (c2, w2) = words
        return [(c0, w0), (c1, [w1[0], (case.kp, case.ip - m)]), (c2, w2)]

    monkeypatch.setattr(V, "expected_words", literal)
    fails = sum(bool(V.skryabin_failures(c, V2eps)) for c in V.relation_cases(2, 2, 2))
    assert fails > 0


def test_requires_highest_weight(V2eps):
    case = V.RelationCase(1, 1, 1, 1, 2)
    with pytest.raises(ValueError):
        V.skryabin_failures(case, V2eps, hw={V2eps.d0 * 1: 1})


@pytest.mark.parametrize("mn", [(1, 1), (2, 2), (3, 2)])
def test_solver_box6(mn):
    rep = V.solver_report(*mn, 6)
    assert rep["passed"]
    assert [tuple(s["weight"]) for s in rep["solutions"]] == [tuple(w) for w in rep["expected"]]


def test_solver_examples():
    sols = {s.weight for s in V.exceptional_solver(2, 2, 5)}
    assert {(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0), (1, 1, 3, 0), (1, 1, -1, -3)} <= sols
    assert (2, 0, 0, 0) not in sols


@given(st.tuples(*[st.integers(-4, 4)] * 4).filter(lambda w: is_dominant(w, 2)))
def test_solutions_are_exceptional(w):
    assert V.satisfies_constraints(w, 2, 2) == (exceptional_type(w, 2, 2).variant != "NonExceptional")


def W(m, n, alpha, mu, g):
    return WittElement(m, n, {(SuperMonomial(tuple(alpha), tuple(mu)), g): 1})


def test_semi_infinite_examples():
    # x_i y_j D_j against d_i
    X = W(2, 2, (1, 0), (2,), 4)
    assert supertrace_ad_pair(X, d(1, 2, 2), 2, 2) == 1 == semi_infinite_character(bracket(X, d(1, 2, 2)))
    X = W(2, 2, (1, 1), (), 3)
    assert supertrace_ad_pair(X, d(1, 2, 2), 2, 2) == 0 == semi_infinite_character(bracket(X, d(1, 2, 2)))


@pytest.mark.parametrize("mn", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_semi_infinite_exhaustive(mn):
    rep = V.semi_infinite_check(*mn, 3)
    assert rep.passed and rep.pairs == len(V.basis_keys(1, *mn)) * (sum(mn))
    assert sum(rep.families.values()) == rep.pairs


def test_generation_example():
    E = W(1, 1, (2,), (1,), 1)            # x1^2 y1 d1 lies in g_2
    assert E.z_degree == 2 and V.in_generated_span(E, 2)


def test_algebra_suite_names():
    names = [r.name for r in V.algebra_suite(1, 1, degree=1)]
    assert names == ["super-antisymmetry", "grading-and-weights", "super-jacobi",
                     "g0-gl-bijection", "g0-gl-bracket"]
