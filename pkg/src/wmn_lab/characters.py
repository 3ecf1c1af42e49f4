"""Truncated formal characters and the character formulas.

A character is a finite map weight -> integer together with a window:
``level`` of a weight is its coordinate sum (the R-degree shifts it by
one per variable, so it tracks the Z-grading), and a character is exact
for every level <= ``top``.  ``top is None`` means exact everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import basis_keys, gen_parity, term_weight
from .glrep import (
    E_weight,
    GlRep,
    as_vec,
    construct_L0,
    exceptional_type,
    is_dominant,
    omega,
    reciprocity_map,
    render_weight,
    theta,
    wadd,
    wsub,
)
from .superalgebra import monomials_up_to

WeightVec = Tuple[int, ...]


def level(w: Sequence[int]) -> int:
    return sum(w)


def _min_top(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class FormalCharacter:
    """Sparse virtual character exact up to level ``top``."""

    __slots__ = ("m", "n", "coeffs", "top")

    def __init__(self, m: int, n: int, coeffs: Optional[Dict[WeightVec, int]] = None,
                 top: Optional[int] = None):
        self.m, self.n, self.top = m, n, top
        c = {}
        for w, v in (coeffs or {}).items():
            if v and (top is None or level(w) <= top):
                c[tuple(w)] = int(v)
        self.coeffs = c

    @classmethod
    def exp(cls, w, m, n, c=1):
        return cls(m, n, {tuple(as_vec(w)): c})

    @classmethod
    def zero(cls, m, n, top=None):
        return cls(m, n, {}, top)

    @property
    def base(self) -> Optional[int]:
        return min((level(w) for w in self.coeffs), default=None)

    def __getitem__(self, w) -> int:
        return self.coeffs.get(tuple(w), 0)

    def _check(self, o):
        if not isinstance(o, FormalCharacter) or (o.m, o.n) != (self.m, self.n):
            raise TypeError("characters of different algebras")

    def __add__(self, o):
        self._check(o)
        c = dict(self.coeffs)
        for w, v in o.coeffs.items():
            c[w] = c.get(w, 0) + v
        return FormalCharacter(self.m, self.n, c, _min_top(self.top, o.top))

    def __neg__(self):
        return FormalCharacter(self.m, self.n, {w: -v for w, v in self.coeffs.items()}, self.top)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c: int):
        return FormalCharacter(self.m, self.n, {w: c * v for w, v in self.coeffs.items()}, self.top)

    def __mul__(self, o):
        if isinstance(o, int):
            return self.scale(o)
        self._check(o)
        ba, bb = self.base, o.base
        if ba is None or bb is None:
            top = _min_top(self.top, o.top)
            return FormalCharacter(self.m, self.n, {}, top)
        # each factor is unknown above its top, so the product is exact only below
        top = _min_top(None if self.top is None else self.top + bb,
                       None if o.top is None else o.top + ba)
        c: Dict[WeightVec, int] = {}
        for w1, v1 in self.coeffs.items():
            l1 = level(w1)
            for w2, v2 in o.coeffs.items():
                if top is not None and l1 + level(w2) > top:
                    continue
                w = wadd(w1, w2)
                c[w] = c.get(w, 0) + v1 * v2
        return FormalCharacter(self.m, self.n, c, top)

    __rmul__ = __mul__

    def truncate(self, top: Optional[int]):
        return FormalCharacter(self.m, self.n, self.coeffs, _min_top(self.top, top))

    def agrees(self, o) -> bool:
        """Coefficient-exact equality on the common window."""
        self._check(o)
        top = _min_top(self.top, o.top)
        return self.truncate(top).coeffs == o.truncate(top).coeffs

    def diff(self, o):
        top = _min_top(self.top, o.top)
        a, b = self.truncate(top), o.truncate(top)
        keys = sorted(set(a.coeffs) | set(b.coeffs))
        return [(w, a[w], b[w]) for w in keys if a[w] != b[w]]

    def __eq__(self, o):
        return isinstance(o, FormalCharacter) and (self.m, self.n, self.top, self.coeffs) == \
            (o.m, o.n, o.top, o.coeffs)

    def __hash__(self):
        return hash((self.m, self.n, self.top, tuple(sorted(self.coeffs.items()))))

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.coeffs.values())

    def dimension(self) -> int:
        return sum(self.coeffs.values())

    def sorted_items(self) -> List[Tuple[WeightVec, int]]:
        return sorted(self.coeffs.items(), key=lambda t: (level(t[0]), tuple(-x for x in t[0])))

    def to_json(self):
        return {"top_level": self.top,
                "terms": [[list(w), v] for w, v in self.sorted_items()]}

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w, v in self.sorted_items():
            e = "1" if not any(w) else f"e^{{{render_weight(w, self.m)}}}"
            if e == "1":
                parts.append(str(v))
            else:
                parts.append(e if v == 1 else f"{v}·{e}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


# ---------------------------------------------------------------- char_of

def char_of(obj, m: Optional[int] = None, n: Optional[int] = None) -> FormalCharacter:
    """Character of a GlRep (exact) or of a truncated mixed-product module."""
    from .mixed import MixedProductModule
    if isinstance(obj, GlRep):
        c: Dict[WeightVec, int] = {}
        for w in obj.weights:
            c[w] = c.get(w, 0) + 1
        return FormalCharacter(obj.m, obj.n, c, None)
    if isinstance(obj, MixedProductModule):
        c = {}
        for (d, w), ix in obj.blocks.items():
            c[w] = c.get(w, 0) + len(ix)
        return FormalCharacter(obj.m, obj.n, c, obj.N + _l0_level(obj.L0))
    raise TypeError(f"no character for {type(obj).__name__}")


def _l0_level(L0: GlRep) -> int:
    return level(L0.weights[0]) if L0.dim else 0


def block_character(M, dims: Dict[Tuple[int, WeightVec], int], max_degree: int) -> FormalCharacter:
    """Character of a block-dimension table known up to R-degree max_degree."""
    c: Dict[WeightVec, int] = {}
    for (d, w), k in dims.items():
        if d <= max_degree and k:
            c[w] = c.get(w, 0) + k
    return FormalCharacter(M.m, M.n, c, max_degree + _l0_level(M.L0))


# ---------------------------------------------------------------- series

def gamma(m: int, n: int, N: int) -> FormalCharacter:
    """ch R = prod (1 - e^{eps_i})^{-1} prod (1 + e^{delta_s}), expanded to level N."""
    c: Dict[WeightVec, int] = {(0,) * (m + n): 1}
    for i in range(m + n):
        odd = i >= m
        new: Dict[WeightVec, int] = {}
        for w, v in c.items():
            top = 1 if odd else N - level(w)
            for p in range(0, top + 1):
                if level(w) + p > N:
                    break
                u = list(w)
                u[i] += p
                u = tuple(u)
                new[u] = new.get(u, 0) + v
        c = new
    return FormalCharacter(m, n, c, N)


def gamma_enumerated(m: int, n: int, N: int) -> FormalCharacter:
    c: Dict[WeightVec, int] = {}
    for k in monomials_up_to(N, m, n):
        w = k.weight(n)
        c[w] = c.get(w, 0) + 1
    return FormalCharacter(m, n, c, N)


def positive_roots(m: int, n: int, N: int) -> List[Tuple[WeightVec, int]]:
    """(weight, parity) of every basis element of g_1 .. g_N, with multiplicity."""
    out = []
    for i in range(1, N + 1):
        for k, g in basis_keys(i, m, n):
            out.append((term_weight(k, g, m, n), (k.parity + gen_parity(g, m)) & 1))
    return out


def upsilon(m: int, n: int, N: int, printed: bool = False) -> FormalCharacter:
    """ch U(g_{>=1}) = prod_{even} (1 - e^a)^{-1} prod_{odd} (1 + e^a) to level N.

    ``printed=True`` uses (1 + e^a)^{-1} for odd roots, as displayed next to
    the tilting theorem; that is not the PBW character."""
    c: Dict[WeightVec, int] = {(0,) * (m + n): 1}
    for a, p in positive_roots(m, n, N):
        la = level(a)
        new: Dict[WeightVec, int] = {}
        for w, v in c.items():
            lw = level(w)
            if p == 1 and not printed:
                steps = [(0, 1), (1, 1)]
            else:
                sgn = -1 if (p == 1 and printed) else 1
                steps = []
                e = 0
                while lw + e * la <= N:
                    steps.append((e, sgn ** e))
                    e += 1
            for e, s in steps:
                if lw + e * la > N:
                    break
                u = tuple(x + e * y for x, y in zip(w, a))
                new[u] = new.get(u, 0) + s * v
        c = new
    return FormalCharacter(m, n, c, N)


def upsilon_pbw(m: int, n: int, N: int) -> FormalCharacter:
    """Oracle: count PBW monomials of U(g_{>=1}) by weight, level by level."""
    roots = positive_roots(m, n, N)
    c: Dict[WeightVec, int] = {}
    zero = (0,) * (m + n)

    def rec(start: int, w: WeightVec, lv: int):
        c[w] = c.get(w, 0) + 1
        for idx in range(start, len(roots)):
            a, p = roots[idx]
            la = level(a)
            if lv + la > N:
                continue
            # even roots may repeat, odd roots appear at most once
            rec(idx if p == 0 else idx + 1, wadd(w, a), lv + la)

    rec(0, zero, 0)
    return FormalCharacter(m, n, c, N)


def ch_L0(lam, m: int, n: int) -> FormalCharacter:
    return char_of(construct_L0(as_vec(lam), m, n))


def standard_character(lam, m: int, n: int, N: int, printed: bool = False) -> FormalCharacter:
    """ch Delta(lam) = Upsilon ch L0(lam)."""
    return upsilon(m, n, N, printed) * ch_L0(lam, m, n)


def costandard_character(lam, m: int, n: int, N: int) -> FormalCharacter:
    """ch V(lam) = Gamma ch L0(lam)."""
    return gamma(m, n, N) * ch_L0(lam, m, n)


# ---------------------------------------------------------------- irreducible characters

def irr_character(lam, m: int, n: int, N: int) -> FormalCharacter:
    """The irreducible character formulas exactly as printed.

    (1) Gamma ch L0(lam) for non-exceptional lam, and for lam = 0 (the
    printed convention L(omega_0) = R); (2) sum_{i=0}^{k} (-1)^i Gamma ch L0(omega_{k-i});
    (3) sum_{i=0}^{q-1} (-1)^i Gamma ch L0(theta_{q-i}) + (-1)^q Gamma e^E;
    (4) as (3) plus (-1)^{q-m+1} ch L(0), with ch L(0) read as the trivial
    character 1.  See :func:`irr_character_corrected` for the version that
    matches the modules."""
    lam = tuple(as_vec(lam))
    if not is_dominant(lam, m):
        raise ValueError(f"{render_weight(lam, m)} is not dominant")
    G = gamma(m, n, N)
    tag = exceptional_type(lam, m, n)
    if tag.variant == "Omega" and tag.index >= 1:
        k = tag.index
        out = FormalCharacter.zero(m, n)
        for i in range(k + 1):
            out = out + (G * ch_L0(omega(k - i, m, n), m, n)).scale((-1) ** i)
        return out
    if tag.variant == "Theta" and tag.index >= 1:
        q = tag.index
        out = FormalCharacter.zero(m, n)
        for i in range(q):
            out = out + (G * ch_L0(theta(q - i, m, n), m, n)).scale((-1) ** i)
        out = out + (G * FormalCharacter.exp(E_weight(m, n), m, n)).scale((-1) ** q)
        if q >= m:
            out = out + FormalCharacter.exp((0,) * (m + n), m, n, (-1) ** (q - m + 1))
        return out
    return G * ch_L0(lam, m, n)


def irr_character_corrected(lam, m: int, n: int, N: int) -> FormalCharacter:
    """Irreducible characters derived from the computed composition factors.

    L(0) is the trivial module; ch L(omega_k) = Gamma ch L0(omega_{k-1}) - ch L(omega_{k-1});
    ch L(theta_q) = Gamma ch L0(theta_q) - ch L(theta_{q-1}) (minus 1 more at q = m),
    with L(theta_0) = V(theta_0)."""
    lam = tuple(as_vec(lam))
    if not is_dominant(lam, m):
        raise ValueError(f"{render_weight(lam, m)} is not dominant")
    G = gamma(m, n, N)
    tag = exceptional_type(lam, m, n)
    one = FormalCharacter.exp((0,) * (m + n), m, n)
    if tag.variant == "Omega":
        if tag.index == 0:
            return one
        k = tag.index
        return G * ch_L0(omega(k - 1, m, n), m, n) - irr_character_corrected(omega(k - 1, m, n), m, n, N)
    if tag.variant == "Theta":
        q = tag.index
        if q == 0:
            return G * ch_L0(theta(0, m, n), m, n)
        out = G * ch_L0(lam, m, n) - irr_character_corrected(theta(q - 1, m, n), m, n, N)
        if q == m:
            out = out - one
        return out
    return G * ch_L0(lam, m, n)


def check_additivity(whole: FormalCharacter, sub: FormalCharacter, quotient: FormalCharacter) -> bool:
    """ch(middle) = ch(sub) + ch(quotient) on the common window."""
    return whole.agrees(sub + quotient)


# ---------------------------------------------------------------- composition table

def composition_factors_table(lam, m: int, n: int, source: str = "printed") -> List[WeightVec]:
    """Highest weights of the composition factors of V(lam), each of multiplicity one.

    ``printed``: the stated theorem (V(omega_k) -> omega_k, omega_{k+1};
    V(theta_q) -> theta_q, theta_{q+1}; V(theta_m) adds 0; lam = 0 and
    theta_0 irreducible).  ``computed``: what the complexes show
    (V(0) -> 0, omega_1; V(theta_q) -> theta_q, theta_{q-1}; V(theta_m) adds 0)."""
    lam = tuple(as_vec(lam))
    tag = exceptional_type(lam, m, n)
    zero = (0,) * (m + n)
    if source not in ("printed", "computed"):
        raise ValueError("source must be 'printed' or 'computed'")
    if tag.variant == "Omega":
        k = tag.index
        if k == 0:
            return [zero] if source == "printed" else [zero, omega(1, m, n)]
        return [lam, omega(k + 1, m, n)]
    if tag.variant == "Theta":
        q = tag.index
        if q == 0:
            return [lam]
        other = theta(q + 1, m, n) if source == "printed" else theta(q - 1, m, n)
        out = [lam, other]
        if q == m:
            out.append(zero)
        return out
    return [lam]


def composition_multiplicity(lam, mu, m: int, n: int, source: str = "printed") -> int:
    return 1 if tuple(as_vec(mu)) in composition_factors_table(lam, m, n, source) else 0


# ---------------------------------------------------------------- tilting

def phi(w, m: int, n: int) -> WeightVec:
    """x -> -w_0 x - E, the reciprocity involution."""
    return reciprocity_map(w, m, n)


def tilting_case(mu, m: int, n: int) -> int:
    """Case 1..5 of the Delta-flag classification, keyed by phi(mu)."""
    t = exceptional_type(phi(mu, m, n), m, n)
    if t.variant == "Omega" and t.index >= 1:
        return 1 if t.index < m else 2
    if t.variant == "Theta" and t.index >= 1:
        return 4 if t.index == m else 3
    return 5


def delta_flag_occurrences(mu, m: int, n: int, source: str = "printed") -> List[WeightVec]:
    """All lam with [T(lam) : Delta(mu)] = 1, i.e. phi of the factors of V(phi(mu))."""
    return sorted(phi(nu, m, n) for nu in composition_factors_table(phi(mu, m, n), m, n, source))


def _inverse_candidates(nu, m, n, source):
    """Weights kappa with L(nu) possibly a factor of V(kappa)."""
    nu = tuple(nu)
    zero = (0,) * (m + n)
    out = {nu}
    t = exceptional_type(nu, m, n)
    if t.variant == "Omega":
        for k in (t.index - 1, t.index + 1):
            if k >= 0:
                out.add(omega(k, m, n))
        if t.index == 1:
            out.add(zero)
    if t.variant == "Theta":
        for q in (t.index - 1, t.index + 1):
            if q >= 0:
                out.add(theta(q, m, n))
    if nu == zero:
        out.add(theta(m, m, n))
        out.add(omega(0, m, n))
    return out


def tilting_multiplicities(lam, m: int, n: int, source: str = "printed") -> List[Tuple[WeightVec, int]]:
    """[T(lam) : Delta(mu)] = [V(phi(mu)) : L(phi(lam))], over all mu with a nonzero value."""
    lam = tuple(as_vec(lam))
    if not is_dominant(lam, m):
        raise ValueError(f"{render_weight(lam, m)} is not dominant")
    nu = phi(lam, m, n)
    out = []
    for kappa in sorted(_inverse_candidates(nu, m, n, source)):
        mult = composition_multiplicity(kappa, nu, m, n, source)
        if mult:
            out.append((phi(kappa, m, n), mult))
    return sorted(out)


def tilting_character(lam, m: int, n: int, N: int, source: str = "printed") -> FormalCharacter:
    """sum_mu [T(lam) : Delta(mu)] Upsilon ch L0(mu)."""
    U = upsilon(m, n, N)
    out = FormalCharacter.zero(m, n)
    for mu, mult in tilting_multiplicities(lam, m, n, source):
        out = out + (U * ch_L0(mu, m, n)).scale(mult)
    return out


def tilting_flag_printed(lam, m: int, n: int) -> List[WeightVec]:
    """The L0 summands named by the printed tilting-character theorem for lam."""
    lam = tuple(as_vec(lam))
    E = E_weight(m, n)
    zero = (0,) * (m + n)

    def unit(i):
        v = [0] * (m + n)
        v[i - 1] = 1
        return tuple(v)

    # (1) -2 sum_{i<=k} eps_{m+1-i} - sum_{i>k} eps_{m+1-i} + sum delta
    for k in range(1, m):
        v = [0] * (m + n)
        for i in range(1, m + 1):
            v[m - i] = -2 if i <= k else -1
        for j in range(n):
            v[m + j] = 1
        if tuple(v) == lam:
            return [lam, wadd(lam, unit(m - k))]
    # (2) -sum eps - E - (k-m) delta_n, k >= m
    base2 = wsub(tuple(-1 if i < m else 0 for i in range(m + n)), E)
    diff = wsub(lam, base2)
    if not any(diff[:-1]) and diff[-1] <= 0:
        return [lam, wadd(lam, unit(m + n))]
    # (3)/(4) -2E + k delta_1
    d = wsub(lam, tuple(-2 * c for c in E))
    if not any(d[:m]) and not any(d[m + 1:]) and d[m] >= 1:
        k = d[m]
        if k != m:
            return [lam, wsub(lam, unit(m + 1))]
        return [lam, wsub(lam, unit(m + 1)), wadd(wsub(lam, E), tuple(m * c for c in unit(m + 1)))]
    return [lam]


# ---------------------------------------------------------------- block-rank characters

def image_character(D, N: int) -> FormalCharacter:
    """ch im D inside the target, from block ranks; exact up to target degree N - 1."""
    M = D.target
    dims = {}
    for bid in M.blocks:
        src = (bid[0] + 1, bid[1])
        dims[bid] = D.rank_on(src) if bid[0] + 1 <= N and src in D.source.blocks else 0
    return block_character(M, dims, N - 1)


def kernel_image_split(D) -> Tuple[FormalCharacter, FormalCharacter]:
    """(ch ker D, ch im D) both as characters graded like the source."""
    M = D.source
    ker, im = {}, {}
    for bid, ix in M.blocks.items():
        r = D.rank_on(bid)
        ker[bid], im[bid] = len(ix) - r, r
    return block_character(M, ker, M.N), block_character(M, im, M.N)


def subquotient_character(lam, m: int, n: int, N: int) -> Tuple[FormalCharacter, str]:
    """Block-rank character of the irreducible L(lam) realised inside the complexes.

    omega_k (k >= 1): im of the type-I map into V(omega_k); theta_q (q >= 1):
    im of the type-II map into V(theta_q); 0: the constants; otherwise the
    whole truncated V(lam) (irreducibility is checked separately)."""
    from .complexes import (type1_differential, type1_module, type2_differential, type2_module)
    from .mixed import MixedProductModule
    lam = tuple(as_vec(lam))
    tag = exceptional_type(lam, m, n)
    if tag.variant == "Omega" and tag.index >= 1:
        k = tag.index
        D = type1_differential(k - 1, type1_module(k - 1, m, n, N), type1_module(k, m, n, N))
        return image_character(D, N), f"image of the type-I map into V(ω{k})"
    if tag.variant == "Theta" and tag.index >= 1:
        q = tag.index
        D = type2_differential(q + 1, type2_module(q + 1, m, n, N), type2_module(q, m, n, N))
        return image_character(D, N), f"image of the type-II map into V(θ{q})"
    if tag.variant == "Omega":
        return FormalCharacter.exp((0,) * (m + n), m, n).truncate(N), "constants in V(0)"
    return char_of(MixedProductModule(lam, m, n, N)), "V(λ) itself"
