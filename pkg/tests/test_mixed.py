import pytest
from hypothesis import given, strategies as st

from wmn_lab.algebra import WittElement, basis_keys, d
from wmn_lab.complexes import type1_differential, type1_module, type2_module
from wmn_lab.glrep import construct_L0
from wmn_lab.linalg import Span
from wmn_lab.mixed import (MixedProductModule, check_module_axiom, check_rg_axioms,
                           check_weights, covers, full_spans, generated_submodule,
                           is_irreducible_truncated, mflat, mflat_test, socle_check, tensor_vector,
                           total_dim)
from wmn_lab.superalgebra import SuperMonomial, SuperPolynomial, monomial_count


def mono(m, alpha=None, mu=()):
    return SuperMonomial(tuple(alpha) if alpha else (0,) * m, tuple(mu))


@pytest.fixture(scope="module")
def V11():
    return MixedProductModule((1, 1), 1, 1, 3)      # L0 = F_E, one-dimensional


@pytest.fixture(scope="module")
def Vomega1():
    return type1_module(1, 2, 2, 3)


def test_basis_and_weights(Vomega1):
    M = Vomega1
    assert M.dim == sum(monomial_count(d_, 2, 2) for d_ in range(4)) * 4
    for j in range(M.dim):
        k, b = M.split(j)
        assert M.weight(j) == tuple(a + c for a, c in zip(k.weight(2), M.L0.weights[b]))
    assert check_weights(M).passed


def test_derivative_of_x(V11):
    M = V11
    u = tensor_vector(M, mono(1, (1,)), {0: 1})
    assert M.act(d(1, 1, 1), u) == {0: 1}


def test_g0_acts_on_bottom(Vomega1):
    M = Vomega1
    x1d1 = WittElement(2, 2, {(mono(2, (1, 0)), 1): 1})
    for b in range(M.d0):
        want = {j: c for j, c in M.L0.act[(1, 1)][b].items()}
        assert M.act(x1d1, {b: 1}) == want


def test_y1D1_on_y1():
    # trivial L0: y1 D1 (y1 (x) v) = D1(y1) y1 (x) v = y1 (x) v
    M = MixedProductModule((0, 0), 1, 1, 2)
    u = tensor_vector(M, mono(1, None, (1,)), {0: 1})
    assert M.act(WittElement(1, 1, {(mono(1, None, (1,)), 2): 1}), u) == u


def test_sigma_examples(Vomega1):
    M = Vomega1
    y1 = mono(2, None, (1,))
    x1d1 = WittElement(2, 2, {(mono(2, (1, 0)), 1): 1})
    x1D1 = WittElement(2, 2, {(mono(2, (1, 0)), 3): 1})
    u = tensor_vector(M, y1, {0: 1})
    assert M.sigma_act(x1d1, u) == tensor_vector(M, y1, M.L0.act[(1, 1)][0])
    assert M.sigma_act(x1D1, {2: 1}) == {j: c for j, c in M.L0.act[(1, 3)][2].items()}
    e3 = tensor_vector(M, y1, {2: 1})
    want = {j: -c for j, c in tensor_vector(M, y1, M.L0.act[(1, 3)][2]).items()}
    assert M.sigma_act(x1D1, e3) == want
    with pytest.raises(ValueError):
        M.sigma_act(d(1, 2, 2), u)


@pytest.mark.parametrize("lam,mn", [((0, 0), (1, 1)), ((1, 0), (1, 1)), ((1, -2), (1, 1)),
                                    ((2, 0, 0), (2, 1)), ((1, 1, -1, -1), (2, 2))])
def test_axioms_small(lam, mn):
    M = MixedProductModule(lam, *mn, 3)
    rep = check_module_axiom(M, max_degree=2)
    assert rep.passed, rep.failures
    assert check_rg_axioms(M, samples=48).passed


@pytest.fixture(scope="module")
def V2eps():
    return MixedProductModule((2, 0, 0, 0), 2, 2, 3)


keys22 = [k for i in range(-1, 3) for k in basis_keys(i, 2, 2)]


@given(st.sampled_from(keys22), st.sampled_from(keys22))
def test_axiom_random_pairs(V2eps, E, F):
    rep = check_module_axiom(V2eps, keys=[E, F])
    assert rep.passed, rep.failures


def test_generation(Vomega1, V2eps):
    M = type2_module(1, 2, 2, 3)
    seed = tensor_vector(M, mono(2, None, (2,)), {3: 1})
    assert covers(M, generated_submodule(M, [seed]))
    # 1 (x) L0 generates everything only when V(lambda) is simple
    assert not covers(M, generated_submodule(M, [{b: 1} for b in M.bottom()]))
    assert covers(V2eps, generated_submodule(V2eps, [{b: 1} for b in V2eps.bottom()]))
    V0 = type1_module(0, 2, 2, 3)
    D0 = type1_differential(0, V0, Vomega1)
    img = D0(tensor_vector(V0, mono(2, (1, 0)), {0: 1}))
    assert img == {0: 1}
    gen = generated_submodule(Vomega1, [img])
    assert total_dim(gen) < Vomega1.dim


def test_socle(Vomega1):
    M = Vomega1
    assert socle_check(M, trials=32).passed
    u = tensor_vector(M, mono(2, (1, 0), (1,)), {0: 1})
    v = M.act(d(3, 2, 2), M.act(d(1, 2, 2), u))
    assert v and all(M.degree(j) == 0 for j in v)


def test_irreducibility_examples(Vomega1, V2eps):
    assert not is_irreducible_truncated(Vomega1).irreducible
    rep = is_irreducible_truncated(V2eps)
    assert rep.irreducible and rep.socle_ok
    assert not is_irreducible_truncated(type2_module(1, 2, 2, 3)).irreducible


def test_methods_agree_small():
    for lam in [(2, 0), (1, 0), (1, -1), (3, 0)]:
        M = MixedProductModule(lam, 1, 1, 3)
        a = is_irreducible_truncated(M).irreducible
        b = is_irreducible_truncated(M, method="exhaustive").irreducible
        assert a == b


def test_mflat(Vomega1):
    M = Vomega1
    assert len(mflat(M, full_spans(M))) == M.L0.dim
    assert not mflat_test(M, {})
    V0 = type1_module(0, 2, 2, 3)
    D0 = type1_differential(0, V0, M)
    spans = {bid: D0.image_span(bid) for bid in M.blocks}
    assert not mflat_test(M, spans)


def test_truncation_guard():
    M = MixedProductModule((0, 0), 1, 1, 1)
    with pytest.raises(ArithmeticError):
        M.mult(SuperPolynomial.x(1, 1, 1), tensor_vector(M, mono(1, (1,)), {0: 1}))
