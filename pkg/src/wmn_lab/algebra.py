"""The Lie superalgebra W(m,n) of super derivations of R.

An element is stored as a dict ``(monomial, g) -> coeff`` meaning
sum coeff * x^alpha y_mu * X_g, with X_g = d_g for 1 <= g <= m and
X_g = D_{g-m} for m < g <= m+n.  The generator index g doubles as the
column index of gl(m|n) under g_0 ~ gl(m|n).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from .superalgebra import (
    SuperMonomial,
    SuperPolynomial,
    dx_mono,
    dy_mono,
    enumerate_monomials,
    mono_mul,
    partial_x,
    partial_y,
)


def gen_parity(g: int, m: int) -> int:
    return 0 if g <= m else 1


def gen_label(g: int, m: int) -> str:
    return f"d{g}" if g <= m else f"D{g - m}"


def derive_mono(g: int, m: int, k: SuperMonomial):
    """X_g applied to a single monomial: (coeff, monomial) or None."""
    return dx_mono(g, k) if g <= m else dy_mono(g - m, k)


class WittElement:
    __slots__ = ("m", "n", "terms")

    def __init__(self, m: int, n: int, terms: Optional[Dict[Tuple[SuperMonomial, int], object]] = None):
        self.m = m
        self.n = n
        t = {}
        for k, v in (terms or {}).items():
            if v:
                if isinstance(v, Fraction) and v.denominator == 1:
                    v = v.numerator
                t[k] = v
        self.terms = t

    @classmethod
    def from_poly(cls, f: SuperPolynomial, g: int):
        if not 1 <= g <= f.m + f.n:
            raise IndexError("generator index out of range")
        return cls(f.m, f.n, {(k, g): c for k, c in f.terms.items()})

    @classmethod
    def basis_element(cls, m, n, mono: SuperMonomial, g: int, c=1):
        return cls(m, n, {(mono, g): c})

    # grading
    def z_degrees(self):
        return {k.degree - 1 for k, _ in self.terms}

    def parities(self):
        return {(k.parity + gen_parity(g, self.m)) & 1 for k, g in self.terms}

    def is_z_homogeneous(self, k: Optional[int] = None) -> bool:
        ds = self.z_degrees()
        if k is None:
            return len(ds) <= 1
        return ds <= {k}

    def is_parity_homogeneous(self) -> bool:
        return len(self.parities()) <= 1

    @property
    def z_degree(self) -> int:
        ds = self.z_degrees()
        if len(ds) != 1:
            raise ValueError("element is not Z-homogeneous")
        return next(iter(ds))

    @property
    def parity(self) -> int:
        ps = self.parities()
        if len(ps) > 1:
            raise ValueError("element is not parity-homogeneous")
        return next(iter(ps)) if ps else 0

    def weight(self) -> Tuple[int, ...]:
        ws = {term_weight(k, g, self.m, self.n) for k, g in self.terms}
        if len(ws) != 1:
            raise ValueError("element is not a weight vector")
        return ws.pop()

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, g: int) -> SuperPolynomial:
        return SuperPolynomial(self.m, self.n, {k: c for (k, h), c in self.terms.items() if h == g})

    # arithmetic
    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return WittElement(self.m, self.n, t)

    def __neg__(self):
        return WittElement(self.m, self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return WittElement(self.m, self.n, {k: c * v for k, v in self.terms.items()})

    __rmul__ = scale

    def __mul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, WittElement):
            return (self.m, self.n) == (other.m, other.n) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.n, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1]))

    def __str__(self):
        return render_witt(self)

    __repr__ = __str__


def term_weight(k: SuperMonomial, g: int, m: int, n: int) -> Tuple[int, ...]:
    w = list(k.weight(n))
    w[g - 1] -= 1
    return tuple(w)


def render_witt(E: WittElement) -> str:
    if not E.terms:
        return "0"
    out = []
    for idx, ((k, g), c) in enumerate(E.sorted_terms()):
        c = Fraction(c)
        neg = c < 0
        a = -c if neg else c
        mono = k.render()
        lab = gen_label(g, E.m)
        body = lab if mono == "1" else f"{mono}*{lab}"
        if a != 1:
            body = f"{a}*{body}"
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def d(g: int, m: int, n: int) -> WittElement:
    """The basic derivation X_g."""
    return WittElement(m, n, {(SuperMonomial((0,) * m, ()), g): 1})


def apply(E: WittElement, f: SuperPolynomial) -> SuperPolynomial:
    """E(f), with fX acting as f * X(.)."""
    out: Dict[SuperMonomial, object] = {}
    for (k, g), c in E.terms.items():
        for h, a in f.terms.items():
            r = derive_mono(g, E.m, h)
            if r is None:
                continue
            s, mono = mono_mul(k, r[1])
            if s:
                out[mono] = out.get(mono, 0) + s * r[0] * c * a
    return SuperPolynomial(f.m, f.n, out)


def _bracket_terms(k1, g1, k2, g2, m):
    """[x^a X_g1, x^b X_g2] for monomial coefficients, as a list of ((mono, g), c)."""
    p1 = (k1.parity + gen_parity(g1, m)) & 1
    p2 = (k2.parity + gen_parity(g2, m)) & 1
    out = []
    r = derive_mono(g1, m, k2)
    if r is not None:
        s, mono = mono_mul(k1, r[1])
        if s:
            out.append(((mono, g2), s * r[0]))
    r = derive_mono(g2, m, k1)
    if r is not None:
        s, mono = mono_mul(k2, r[1])
        if s:
            sign = -1 if (p1 & p2) else 1
            out.append(((mono, g1), -sign * s * r[0]))
    return out


def bracket(E1: WittElement, E2: WittElement) -> WittElement:
    """Super bracket, extended bilinearly over homogeneous parts."""
    if (E1.m, E1.n) != (E2.m, E2.n):
        raise ValueError("elements of different algebras")
    out: Dict[Tuple[SuperMonomial, int], object] = {}
    for (k1, g1), c1 in E1.terms.items():
        for (k2, g2), c2 in E2.terms.items():
            for key, c in _bracket_terms(k1, g1, k2, g2, E1.m):
                out[key] = out.get(key, 0) + c * c1 * c2
    return WittElement(E1.m, E1.n, out)


@lru_cache(maxsize=None)
def basis_keys(i: int, m: int, n: int) -> Tuple[Tuple[SuperMonomial, int], ...]:
    if i < -1:
        return ()
    return tuple((k, g) for k in enumerate_monomials(i + 1, m, n) for g in range(1, m + n + 1))


def basis_of_gi(i: int, m: int, n: int) -> List[WittElement]:
    """Basis {x^alpha y_mu X_g : |alpha| + |mu| = i + 1} of g_i."""
    if i < -1:
        raise ValueError("g_i is zero below degree -1")
    return [WittElement(m, n, {key: 1}) for key in basis_keys(i, m, n)]


def dim_gi(i: int, m: int, n: int) -> int:
    return len(basis_keys(i, m, n))


# g_0 ~ gl(m|n)

class GlMatrix:
    """Sparse (m+n)x(m+n) matrix with the gl(m|n) block parity."""

    __slots__ = ("m", "n", "entries")

    def __init__(self, m, n, entries: Optional[Dict[Tuple[int, int], object]] = None):
        self.m = m
        self.n = n
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def unit(cls, a, b, m, n, c=1):
        return cls(m, n, {(a, b): c})

    def entry_parity(self, a, b) -> int:
        return (gen_parity(a, self.m) + gen_parity(b, self.m)) & 1

    def parts(self):
        ev = {k: v for k, v in self.entries.items() if not self.entry_parity(*k)}
        od = {k: v for k, v in self.entries.items() if self.entry_parity(*k)}
        return GlMatrix(self.m, self.n, ev), GlMatrix(self.m, self.n, od)

    def __add__(self, o):
        e = dict(self.entries)
        for k, v in o.entries.items():
            e[k] = e.get(k, 0) + v
        return GlMatrix(self.m, self.n, e)

    def __sub__(self, o):
        return self + o.scale(-1)

    def scale(self, c):
        return GlMatrix(self.m, self.n, {k: c * v for k, v in self.entries.items()})

    def matmul(self, o):
        e: Dict[Tuple[int, int], object] = {}
        for (a, b), x in self.entries.items():
            for (c, dd), y in o.entries.items():
                if b == c:
                    e[(a, dd)] = e.get((a, dd), 0) + x * y
        return GlMatrix(self.m, self.n, e)

    def __eq__(self, o):
        return isinstance(o, GlMatrix) and self.entries == o.entries and (self.m, self.n) == (o.m, o.n)

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def supertrace(self):
        return sum((v if a <= self.m else -v) for (a, b), v in self.entries.items() if a == b)

    def super_transpose(self):
        """X^T = [[A^T, -C^T], [B^T, D^T]] for X = [[A, B], [C, D]]."""
        e = {}
        m = self.m
        for (a, b), v in self.entries.items():
            if a > m and b <= m:
                e[(b, a)] = -v
            else:
                e[(b, a)] = v
        return GlMatrix(m, self.n, e)

    def __repr__(self):
        return f"GlMatrix({dict(sorted(self.entries.items()))})"


def super_commutator(A: GlMatrix, B: GlMatrix) -> GlMatrix:
    out = GlMatrix(A.m, A.n)
    for a in A.parts():
        for b in B.parts():
            if not a.entries or not b.entries:
                continue
            pa = a.entry_parity(*next(iter(a.entries)))
            pb = b.entry_parity(*next(iter(b.entries)))
            sign = -1 if pa & pb else 1
            out = out + a.matmul(b) - b.matmul(a).scale(sign)
    return out


def g0_to_gl(E: WittElement) -> GlMatrix:
    """x_i d_j -> E_ij, x_i D_s -> E_{i,m+s}, y_r d_j -> E_{m+r,j}, y_r D_s -> E_{m+r,m+s}."""
    m = E.m
    e = {}
    for (k, g), c in E.terms.items():
        if k.degree != 1:
            raise ValueError("element is not in g_0")
        if k.mu:
            row = m + k.mu[0]
        else:
            row = k.alpha.index(1) + 1
        e[(row, g)] = e.get((row, g), 0) + c
    return GlMatrix(m, E.n, e)


def gl_to_g0(X: GlMatrix) -> WittElement:
    m, n = X.m, X.n
    t = {}
    for (a, b), c in X.entries.items():
        if a <= m:
            alpha = [0] * m
            alpha[a - 1] = 1
            mono = SuperMonomial(tuple(alpha), ())
        else:
            mono = SuperMonomial((0,) * m, (a - m,))
        t[(mono, b)] = c
    return WittElement(m, n, t)


def g0_element(a: int, b: int, m: int, n: int) -> WittElement:
    """Preimage of the matrix unit E_ab."""
    return gl_to_g0(GlMatrix.unit(a, b, m, n))


def semi_infinite_character(Z: WittElement):
    """E(x_i d_j) = delta_ij, E(y_r D_t) = -delta_rt, zero on the odd part of g_0."""
    if not Z.is_zero() and Z.z_degrees() != {0}:
        raise ValueError("character is defined on g_0 only")
    return g0_to_gl(Z).supertrace()


def coordinates(E: WittElement, i: int) -> Dict[int, object]:
    """Coordinates of E along basis_of_gi(i)."""
    index = basis_index(i, E.m, E.n)
    out = {}
    for key, c in E.terms.items():
        if key not in index:
            raise ValueError("element has components outside g_%d" % i)
        out[index[key]] = c
    return out


@lru_cache(maxsize=None)
def basis_index(i: int, m: int, n: int) -> Dict[Tuple[SuperMonomial, int], int]:
    return {key: j for j, key in enumerate(basis_keys(i, m, n))}


def supertrace_ad_pair(X: WittElement, Y: WittElement, m: int, n: int):
    """str(ad X o ad Y |_{g_0}) for X in g_1, Y in g_{-1}."""
    if not X.is_z_homogeneous(1) or not Y.is_z_homogeneous(-1):
        raise ValueError("need X in g_1 and Y in g_-1")
    total = 0
    for key in basis_keys(0, m, n):
        Z = WittElement(m, n, {key: 1})
        W = bracket(X, bracket(Y, Z))
        c = W.terms.get(key, 0)
        if c:
            pz = (key[0].parity + gen_parity(key[1], m)) & 1
            total += -c if pz else c
    return total
