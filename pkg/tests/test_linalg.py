from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from wmn_lab.linalg import Span, intersect_dim, kernel, rank

NCOLS = 5
vecs = st.dictionaries(st.integers(0, NCOLS - 1),
                       st.fractions(min_value=-3, max_value=3, max_denominator=3), max_size=4)
mats = st.lists(vecs, min_size=0, max_size=6)


def dense(rows, ncols=NCOLS):
    return sympy.Matrix([[sympy.Rational(r.get(j, 0).numerator, r.get(j, 0).denominator)
                          if j in r else 0 for j in range(ncols)] for r in rows])


@given(mats)
def test_rank_matches_sympy(rows):
    want = dense(rows).rank() if rows else 0
    assert rank(rows, NCOLS) == want
    assert Span(rows).dim == want


@given(mats)
def test_kernel_is_nullspace(cols):
    # columns -> kernel vectors c with sum c_j col_j = 0
    ker = kernel(cols, NCOLS)
    A = dense(cols).T if cols else None
    if not cols:
        assert ker == []
        return
    assert len(ker) == len(cols) - A.rank()
    for v in ker:
        x = sympy.Matrix([sympy.nsimplify(v.get(j, 0)) for j in range(len(cols))])
        assert A * x == sympy.zeros(NCOLS, 1)


@given(mats, vecs)
def test_span_membership(rows, v):
    sp = Span(rows)
    inside = dense(rows + [v]).rank() == (dense(rows).rank() if rows else 0)
    assert sp.contains(v) == inside
    for r in rows:
        assert sp.contains(r)


@given(mats, mats)
def test_intersection_dimension(a, b):
    ra = dense(a).rank() if a else 0
    rb = dense(b).rank() if b else 0
    rab = dense(a + b).rank() if a + b else 0
    assert intersect_dim(a, b, NCOLS) == ra + rb - rab


def test_exact_fractions():
    assert rank([{0: Fraction(1, 3), 1: 1}, {0: 1, 1: 3}], 2) == 1
