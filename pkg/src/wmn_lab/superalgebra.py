"""Exact arithmetic in R = F[x_1..x_m] (x) Lambda(y_1..y_n).

Monomials are pairs (alpha, mu) with alpha an exponent vector and mu a
strictly increasing tuple of odd indices (1-based).  Coefficients are
Python ints or ``fractions.Fraction``; nothing here ever touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, factorial, prod
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple

Coeff = "int | Fraction"


class SuperMonomial(NamedTuple):
    alpha: Tuple[int, ...]
    mu: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.alpha) + len(self.mu)

    @property
    def parity(self) -> int:
        return len(self.mu) & 1

    def weight(self, n: int) -> Tuple[int, ...]:
        """Weight sum(alpha_i eps_i) + sum_{s in mu} delta_s as an (m+n)-vector."""
        dl = [0] * n
        for s in self.mu:
            dl[s - 1] = 1
        return tuple(self.alpha) + tuple(dl)

    def sort_key(self):
        # graded, then lex with x_1 first and mu ascending
        return (self.degree, tuple(-a for a in self.alpha), self.mu)

    def render(self) -> str:
        parts = []
        for i, a in enumerate(self.alpha, 1):
            if a == 1:
                parts.append(f"x{i}")
            elif a > 1:
                parts.append(f"x{i}^{a}")
        parts.extend(f"y{s}" for s in self.mu)
        return "*".join(parts) if parts else "1"


def sort_sign(seq: Iterable[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign and sorted tuple for a product of odd generators y_{s_1}...y_{s_k}.

    Returns sign 0 when an index repeats (y_s^2 = 0)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, ()
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(seq))


def merge_mu(mu: Tuple[int, ...], nu: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    """Sign and support of y_mu * y_nu, both sorted."""
    if not mu:
        return 1, nu
    if not nu:
        return 1, mu
    inv = 0
    j = 0
    out = []
    i = 0
    # classic merge, counting how many of mu remain when each nu element is placed
    while i < len(mu) and j < len(nu):
        a, b = mu[i], nu[j]
        if a == b:
            return 0, ()
        if a < b:
            out.append(a)
            i += 1
        else:
            out.append(b)
            inv += len(mu) - i
            j += 1
    out.extend(mu[i:])
    out.extend(nu[j:])
    return (-1 if inv & 1 else 1), tuple(out)


def mono_mul(a: SuperMonomial, b: SuperMonomial) -> Tuple[int, Optional[SuperMonomial]]:
    sign, mu = merge_mu(a.mu, b.mu)
    if not sign:
        return 0, None
    alpha = tuple(p + q for p, q in zip(a.alpha, b.alpha))
    return sign, SuperMonomial(alpha, mu)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class SuperPolynomial:
    """Sparse element of R with exact coefficients.  Treat as immutable."""

    __slots__ = ("m", "n", "terms")

    def __init__(self, m: int, n: int, terms: Optional[Dict[SuperMonomial, object]] = None):
        self.m = m
        self.n = n
        self.terms = {k: _norm(v) for k, v in (terms or {}).items() if v != 0}

    # constructors
    @classmethod
    def zero(cls, m, n):
        return cls(m, n)

    @classmethod
    def one(cls, m, n, c=1):
        return cls(m, n, {SuperMonomial((0,) * m, ()): c})

    @classmethod
    def monomial(cls, m, n, alpha=None, mu=(), c=1):
        alpha = tuple(alpha) if alpha is not None else (0,) * m
        if len(alpha) != m:
            raise ValueError("exponent vector has wrong length")
        if any(s < 1 or s > n for s in mu):
            raise ValueError("odd index out of range")
        sign, smu = sort_sign(mu)
        if not sign:
            return cls(m, n)
        return cls(m, n, {SuperMonomial(alpha, smu): sign * c})

    @classmethod
    def x(cls, i, m, n):
        if not 1 <= i <= m:
            raise IndexError(f"x_{i} out of range for m={m}")
        a = [0] * m
        a[i - 1] = 1
        return cls(m, n, {SuperMonomial(tuple(a), ()): 1})

    @classmethod
    def y(cls, t, m, n):
        if not 1 <= t <= n:
            raise IndexError(f"y_{t} out of range for n={n}")
        return cls(m, n, {SuperMonomial((0,) * m, (t,)): 1})

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self):
        return {k.degree for k in self.terms}

    def parities(self):
        return {k.parity for k in self.terms}

    def is_degree_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_parity_homogeneous(self) -> bool:
        return len(self.parities()) <= 1

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("polynomial is not degree-homogeneous")
        return ds.pop()

    @property
    def parity(self) -> int:
        ps = self.parities()
        if len(ps) > 1:
            raise ValueError("polynomial is not parity-homogeneous")
        return ps.pop() if ps else 0

    def _check(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("polynomials live in different rings")

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, SuperPolynomial):
            other = SuperPolynomial.one(self.m, self.n, other)
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return SuperPolynomial(self.m, self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial(self.m, self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return SuperPolynomial(self.m, self.n, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SuperPolynomial):
            return self.scale(other)
        self._check(other)
        t: Dict[SuperMonomial, object] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                s, mono = mono_mul(a, b)
                if s:
                    t[mono] = t.get(mono, 0) + s * ca * cb
        return SuperPolynomial(self.m, self.n, t)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, SuperPolynomial):
            return (self.m, self.n) == (other.m, other.n) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.n, frozenset(self.terms.items())))

    def sorted_terms(self) -> List[Tuple[SuperMonomial, object]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"SuperPolynomial({render_poly(self)!r})"

    def to_json(self):
        return [[list(k.alpha), list(k.mu), str(Fraction(v))] for k, v in self.sorted_terms()]


def render_poly(f: SuperPolynomial) -> str:
    """Text form such as ``2*x1^2*y1 - 1/3*y1*y2``."""
    if not f.terms:
        return "0"
    out = []
    for idx, (k, c) in enumerate(f.sorted_terms()):
        c = Fraction(c)
        neg = c < 0
        a = -c if neg else c
        mono = k.render()
        if mono == "1":
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def mul(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    return f * g


# derivations on monomials: return (coeff, monomial) or None

def dx_mono(i: int, k: SuperMonomial):
    a = k.alpha[i - 1]
    if a == 0:
        return None
    alpha = list(k.alpha)
    alpha[i - 1] -= 1
    return a, SuperMonomial(tuple(alpha), k.mu)


def dy_mono(t: int, k: SuperMonomial):
    mu = k.mu
    for pos, s in enumerate(mu):
        if s == t:
            return (-1 if pos & 1 else 1), SuperMonomial(k.alpha, mu[:pos] + mu[pos + 1:])
        if s > t:
            return None
    return None


def partial_x(i: int, f: SuperPolynomial) -> SuperPolynomial:
    """Even derivation with d_i(x_j) = delta_ij."""
    if not 1 <= i <= f.m:
        raise IndexError(f"partial_x index {i} out of range 1..{f.m}")
    t: Dict[SuperMonomial, object] = {}
    for k, c in f.terms.items():
        r = dx_mono(i, k)
        if r:
            t[r[1]] = t.get(r[1], 0) + r[0] * c
    return SuperPolynomial(f.m, f.n, t)


def partial_y(t: int, f: SuperPolynomial) -> SuperPolynomial:
    """Odd derivation D_t; sign (-1)^(position of t in mu - 1)."""
    if not 1 <= t <= f.n:
        raise IndexError(f"partial_y index {t} out of range 1..{f.n}")
    out: Dict[SuperMonomial, object] = {}
    for k, c in f.terms.items():
        r = dy_mono(t, k)
        if r:
            out[r[1]] = out.get(r[1], 0) + r[0] * c
    return SuperPolynomial(f.m, f.n, out)


def monomial_count(d: int, m: int, n: int) -> int:
    if m == 0:
        return comb(n, d)
    return sum(comb(n, j) * comb(m - 1 + d - j, d - j) for j in range(min(d, n) + 1))


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_monomials(d: int, m: int, n: int) -> List[SuperMonomial]:
    """All monomials of total degree exactly d, in the canonical order."""
    if d < 0:
        return []
    out = []
    for j in range(min(d, n) + 1):
        for mu in combinations(range(1, n + 1), j):
            for alpha in _compositions(d - j, m):
                out.append(SuperMonomial(alpha, mu))
    out.sort(key=SuperMonomial.sort_key)
    return out


def monomials_up_to(N: int, m: int, n: int) -> List[SuperMonomial]:
    out = []
    for d in range(N + 1):
        out.extend(enumerate_monomials(d, m, n))
    return out


# index conventions for multi-indices

def partial_alpha(alpha: Tuple[int, ...], f: SuperPolynomial) -> SuperPolynomial:
    """d^alpha = prod d_i^alpha_i; zero for a vector with a negative entry."""
    if any(a < 0 for a in alpha):
        return SuperPolynomial.zero(f.m, f.n)
    for i, a in enumerate(alpha, 1):
        for _ in range(a):
            f = partial_x(i, f)
    return f


def alpha_factorial(alpha: Tuple[int, ...]) -> int:
    return prod(factorial(a) for a in alpha)


def preceq(kappa: Tuple[int, ...], alpha: Tuple[int, ...]) -> bool:
    return all(0 <= k <= a for k, a in zip(kappa, alpha))


def binom_multi(alpha: Tuple[int, ...], kappa: Tuple[int, ...]) -> int:
    """C^alpha_kappa = prod alpha_i! / (kappa_i! (alpha_i - kappa_i)!)."""
    if not preceq(kappa, alpha):
        raise ValueError("kappa is not below alpha")
    return prod(comb(a, k) for a, k in zip(alpha, kappa))


def falling_multi(alpha: Tuple[int, ...], kappa: Tuple[int, ...]) -> int:
    """P^alpha_kappa = prod alpha_i! / (alpha_i - kappa_i)!."""
    if not preceq(kappa, alpha):
        raise ValueError("kappa is not below alpha")
    return prod(factorial(a) // factorial(a - k) for a, k in zip(alpha, kappa))


def D_eta(eta: Iterable[int], f: SuperPolynomial) -> SuperPolynomial:
    """D_eta = D_{i_1} ... D_{i_k} for i_1 < ... < i_k (rightmost acts first)."""
    for t in reversed(sorted(eta)):
        f = partial_y(t, f)
    return f


def unit(i: int, m: int) -> Tuple[int, ...]:
    """eps_i as an indicator vector in N^m."""
    v = [0] * m
    v[i - 1] = 1
    return tuple(v)
