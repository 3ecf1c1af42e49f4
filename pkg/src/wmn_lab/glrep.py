"""Finite-dimensional gl(m|n)-modules over Q.

Basis indices are 0-based; gl indices a, b run over 1..m+n with
1..m even and m+1..m+n odd.  An action matrix is stored column-wise:
``act[(a, b)][j]`` is the sparse image E_ab . v_j.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import Span, Vec, add_into, kernel

WeightVec = Tuple[int, ...]


class NotACharacter(ValueError):
    pass


class NotRealizable(ValueError):
    pass


# ---------------------------------------------------------------- weights

@dataclass(frozen=True)
class Weight:
    eps: Tuple[int, ...]
    delta: Tuple[int, ...]

    @classmethod
    def from_vec(cls, vec: Sequence[int], m: int) -> "Weight":
        vec = tuple(int(v) for v in vec)
        return cls(vec[:m], vec[m:])

    @property
    def vec(self) -> WeightVec:
        return self.eps + self.delta

    @property
    def m(self):
        return len(self.eps)

    @property
    def n(self):
        return len(self.delta)

    def is_dominant(self) -> bool:
        return is_dominant(self.vec, self.m)

    def exceptional_type(self) -> "ExceptionalTag":
        return exceptional_type(self.vec, self.m, self.n)

    def __str__(self):
        return render_weight(self.vec, self.m)


def as_vec(w) -> WeightVec:
    return w.vec if isinstance(w, Weight) else tuple(w)


def render_weight(w: Sequence[int], m: int) -> str:
    if not any(w):
        return "0"
    out = []
    for idx, c in enumerate(w):
        if not c:
            continue
        name = f"ε{idx + 1}" if idx < m else f"δ{idx - m + 1}"
        mag = abs(c)
        body = name if mag == 1 else f"{mag}{name}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("-" if c < 0 else "+") + body)
    return "".join(out)


def is_dominant(w: Sequence[int], m: int) -> bool:
    w = as_vec(w)
    ev, od = w[:m], w[m:]
    return all(ev[i] >= ev[i + 1] for i in range(len(ev) - 1)) and all(
        od[j] >= od[j + 1] for j in range(len(od) - 1))


def unit_weight(a: int, m: int, n: int) -> WeightVec:
    v = [0] * (m + n)
    v[a - 1] = 1
    return tuple(v)


def wadd(u, v) -> WeightVec:
    return tuple(a + b for a, b in zip(u, v))


def wsub(u, v) -> WeightVec:
    return tuple(a - b for a, b in zip(u, v))


def wscale(c, u) -> WeightVec:
    return tuple(c * a for a in u)


def E_weight(m: int, n: int) -> WeightVec:
    """The supertrace weight sum eps_i - sum delta_j."""
    return (1,) * m + (-1,) * n


def omega(k: int, m: int, n: int) -> WeightVec:
    """omega_k = eps_1+..+eps_k (k <= m), eps_1+..+eps_m + (k-m) delta_1 (k > m)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    v = [0] * (m + n)
    for i in range(min(k, m)):
        v[i] = 1
    if k > m:
        if n == 0:
            raise ValueError("omega_k with k > m needs n >= 1")
        v[m] = k - m
    return tuple(v)


def theta(q: int, m: int, n: int) -> WeightVec:
    """theta_q = E - q delta_n."""
    if q < 0:
        raise ValueError("q must be non-negative")
    v = list(E_weight(m, n))
    v[m + n - 1] -= q
    return tuple(v)


@dataclass(frozen=True)
class ExceptionalTag:
    variant: str  # "Omega", "Theta" or "NonExceptional"
    index: Optional[int] = None

    def __str__(self):
        return self.variant if self.index is None else f"{self.variant}({self.index})"


def exceptional_type(w, m: int, n: int) -> ExceptionalTag:
    w = as_vec(w)
    ev, od = w[:m], w[m:]
    # omega family: eps part 1..1 0..0 with delta part zero, or all ones plus l*delta_1
    k = sum(ev)
    if all(c in (0, 1) for c in ev) and list(ev) == [1] * k + [0] * (m - k):
        if not any(od):
            return ExceptionalTag("Omega", k)
        if k == m and od[0] > 0 and not any(od[1:]):
            return ExceptionalTag("Omega", m + od[0])
    if n >= 1 and all(c == 1 for c in ev) and all(c == -1 for c in od[:-1]) and od[-1] <= -1:
        return ExceptionalTag("Theta", -1 - od[-1])
    return ExceptionalTag("NonExceptional")


def weyl_longest(w, m: int) -> WeightVec:
    """w_0 reverses the eps block and the delta block."""
    w = as_vec(w)
    return tuple(reversed(w[:m])) + tuple(reversed(w[m:]))


def reciprocity_map(w, m: int, n: int) -> WeightVec:
    """phi(x) = -w_0 x - E; an involution preserving dominance."""
    return wsub(wscale(-1, weyl_longest(w, m)), E_weight(m, n))


# ---------------------------------------------------------------- modules

def gl_parity(a: int, m: int) -> int:
    return 0 if a <= m else 1


def generators(m: int, n: int) -> List[Tuple[int, int]]:
    return [(a, b) for a in range(1, m + n + 1) for b in range(1, m + n + 1)]


class GlRep:
    """Finite-dimensional gl(m|n)-module given by generator action matrices."""

    __slots__ = ("m", "n", "dim", "labels", "parity", "weights", "act", "_by_weight")

    def __init__(self, m, n, labels, parity, weights, act):
        self.m = m
        self.n = n
        self.dim = len(labels)
        self.labels = list(labels)
        self.parity = list(parity)
        self.weights = [tuple(w) for w in weights]
        self.act: Dict[Tuple[int, int], List[Vec]] = act
        self._by_weight = None

    def apply(self, a: int, b: int, v: Vec) -> Vec:
        cols = self.act[(a, b)]
        out: Vec = {}
        for j, c in v.items():
            col = cols[j]
            if col:
                add_into(out, col, c)
        return out

    def weight_spaces(self) -> Dict[WeightVec, List[int]]:
        if self._by_weight is None:
            d: Dict[WeightVec, List[int]] = {}
            for i, w in enumerate(self.weights):
                d.setdefault(w, []).append(i)
            self._by_weight = d
        return self._by_weight

    def character(self) -> Dict[WeightVec, int]:
        return {w: len(ix) for w, ix in self.weight_spaces().items()}

    def __repr__(self):
        return f"GlRep(m={self.m}, n={self.n}, dim={self.dim})"


def natural_rep(m: int, n: int) -> GlRep:
    N = m + n
    act = {}
    for a, b in generators(m, n):
        cols = [{} for _ in range(N)]
        cols[b - 1] = {a - 1: 1}
        act[(a, b)] = cols
    labels = [f"e{k}" for k in range(1, N + 1)]
    parity = [gl_parity(k, m) for k in range(1, N + 1)]
    weights = [unit_weight(k, m, n) for k in range(1, N + 1)]
    return GlRep(m, n, labels, parity, weights, act)


def dual_rep(m: int, n: int) -> GlRep:
    """V* with E_ij . e*_k = -(-1)^{p(E_ij) p(e*_k)} delta_ik e*_j."""
    N = m + n
    act = {}
    for i, j in generators(m, n):
        cols = [{} for _ in range(N)]
        pE = (gl_parity(i, m) + gl_parity(j, m)) & 1
        pk = gl_parity(i, m)
        cols[i - 1] = {j - 1: (1 if pE & pk else -1)}
        act[(i, j)] = cols
    labels = [f"e*{k}" for k in range(1, N + 1)]
    parity = [gl_parity(k, m) for k in range(1, N + 1)]
    weights = [wscale(-1, unit_weight(k, m, n)) for k in range(1, N + 1)]
    return GlRep(m, n, labels, parity, weights, act)


def dual(rep: GlRep) -> GlRep:
    """Dual module: (X.f)(v) = -(-1)^{p(X)p(f)} f(X.v)."""
    m, n = rep.m, rep.n
    act = {}
    for a, b in generators(m, n):
        pX = (gl_parity(a, m) + gl_parity(b, m)) & 1
        cols: List[Vec] = [{} for _ in range(rep.dim)]
        for j, col in enumerate(rep.act[(a, b)]):
            for k, c in col.items():
                # X v_j has coefficient c on v_k, so X f_k picks up c on f_j
                s = 1 if (pX & rep.parity[k]) else -1
                cols[k][j] = cols[k].get(j, 0) + s * c
        act[(a, b)] = [{i: c for i, c in col.items() if c} for col in cols]
    return GlRep(m, n, [f"({l})*" for l in rep.labels], rep.parity,
                 [wscale(-1, w) for w in rep.weights], act)


def twist_tau(rep: GlRep) -> GlRep:
    """rho^tau(X) = rho(-X^T) with the super transpose of the block convention."""
    m, n = rep.m, rep.n
    act = {}
    for a, b in generators(m, n):
        # -(E_ab)^T = -E_ba, or +E_ba when a is odd and b is even
        s = 1 if (a > m and b <= m) else -1
        act[(a, b)] = [{i: s * c for i, c in col.items()} for col in rep.act[(b, a)]]
    return GlRep(m, n, rep.labels, rep.parity, [wscale(-1, w) for w in rep.weights], act)


def _power_basis(parity: Sequence[int], k: int, kind: str):
    """Sorted index tuples; repeats allowed only for the commuting parity."""
    dim = len(parity)
    repeat_ok = 1 if kind == "exterior" else 0
    out = []
    for t in combinations_with_replacement(range(dim), k):
        ok = True
        for a in range(len(t) - 1):
            if t[a] == t[a + 1] and parity[t[a]] != repeat_ok:
                ok = False
                break
        if ok:
            out.append(t)
    return out


def _swap_sign(pu: int, pw: int, kind: str) -> int:
    # exterior: uw = -(-1)^{p(u)p(w)} wu ; symmetric: uw = (-1)^{p(u)p(w)} wu
    s = -1 if (pu & pw) else 1
    return -s if kind == "exterior" else s


def _normal_form(word: List[int], parity: Sequence[int], kind: str):
    """Sort a word of basis indices with the commutation sign; 0 if it vanishes."""
    w = list(word)
    sign = 1
    # insertion sort, tracking every adjacent transposition
    for i in range(1, len(w)):
        j = i
        while j > 0 and w[j - 1] > w[j]:
            sign *= _swap_sign(parity[w[j - 1]], parity[w[j]], kind)
            w[j - 1], w[j] = w[j], w[j - 1]
            j -= 1
    repeat_ok = 1 if kind == "exterior" else 0
    for a in range(len(w) - 1):
        if w[a] == w[a + 1] and parity[w[a]] != repeat_ok:
            return 0, None
    return sign, tuple(w)


def super_power(rep: GlRep, k: int, kind: str = "exterior") -> GlRep:
    """Grassmann (kind="exterior") or super-symmetric power of a module.

    The exterior relation is uw = -(-1)^{p(u)p(w)} wu, so odd vectors
    commute and may repeat.  The action is by the super Leibniz rule."""
    if kind not in ("exterior", "symmetric"):
        raise ValueError("kind must be 'exterior' or 'symmetric'")
    m, n = rep.m, rep.n
    basis = _power_basis(rep.parity, k, kind)
    index = {t: i for i, t in enumerate(basis)}
    parity = [sum(rep.parity[i] for i in t) & 1 for t in basis]
    weights = []
    for t in basis:
        w = (0,) * (m + n)
        for i in t:
            w = wadd(w, rep.weights[i])
        weights.append(w)
    act = {}
    for a, b in generators(m, n):
        pX = (gl_parity(a, m) + gl_parity(b, m)) & 1
        gen_cols = rep.act[(a, b)]
        cols: List[Vec] = []
        for t in basis:
            out: Vec = {}
            before = 0
            for pos, i in enumerate(t):
                s0 = -1 if (pX & before) else 1
                for j, c in gen_cols[i].items():
                    word = list(t)
                    word[pos] = j
                    s, nf = _normal_form(word, rep.parity, kind)
                    if s:
                        col = index[nf]
                        out[col] = out.get(col, 0) + s0 * s * c
                before ^= rep.parity[i]
            cols.append({i: c for i, c in out.items() if c})
        act[(a, b)] = cols
    sep = "∧" if kind == "exterior" else "·"
    labels = [sep.join(rep.labels[i] for i in t) if t else "1" for t in basis]
    return GlRep(m, n, labels, parity, weights, act)


def grassmann_power(rep: GlRep, k: int) -> GlRep:
    return super_power(rep, k, "exterior")


def grassmann_dim(m: int, n: int, k: int) -> int:
    """dim of the k-th Grassmann power of C^{m|n}: sum_i C(m,i) C(n+k-i-1, k-i)."""
    from math import comb
    if n == 0:
        return comb(m, k)
    return sum(comb(m, i) * comb(n + k - i - 1, k - i) for i in range(min(m, k) + 1))


def one_dim_rep(w, m: int, n: int, check: bool = True) -> GlRep:
    """E_aa -> w_a, off-diagonal -> 0; raises NotACharacter when relations fail."""
    w = as_vec(w)
    if len(w) != m + n:
        raise ValueError("weight has wrong length")
    act = {}
    for a, b in generators(m, n):
        act[(a, b)] = [{0: w[a - 1]} if (a == b and w[a - 1]) else {}]
    rep = GlRep(m, n, [f"1[{render_weight(w, m)}]"], [0], [w], act)
    if check:
        bad = relation_failures(rep, limit=1)
        if bad:
            raise NotACharacter(f"{render_weight(w, m)} is not a character of gl({m}|{n}): "
                                f"relation {bad[0]} fails")
    return rep


def trivial_rep(m, n) -> GlRep:
    return one_dim_rep((0,) * (m + n), m, n, check=False)


def tensor(A: GlRep, B: GlRep) -> GlRep:
    """X(u (x) v) = Xu (x) v + (-1)^{p(X)p(u)} u (x) Xv."""
    m, n = A.m, A.n
    db = B.dim
    labels, parity, weights = [], [], []
    for i in range(A.dim):
        for j in range(db):
            labels.append(f"{A.labels[i]}⊗{B.labels[j]}")
            parity.append((A.parity[i] + B.parity[j]) & 1)
            weights.append(wadd(A.weights[i], B.weights[j]))
    act = {}
    for a, b in generators(m, n):
        pX = (gl_parity(a, m) + gl_parity(b, m)) & 1
        ca, cb = A.act[(a, b)], B.act[(a, b)]
        cols = []
        for i in range(A.dim):
            s = -1 if (pX & A.parity[i]) else 1
            for j in range(db):
                out: Vec = {}
                for i2, c in ca[i].items():
                    out[i2 * db + j] = out.get(i2 * db + j, 0) + c
                for j2, c in cb[j].items():
                    key = i * db + j2
                    out[key] = out.get(key, 0) + s * c
                cols.append({k: v for k, v in out.items() if v})
        act[(a, b)] = cols
    return GlRep(m, n, labels, parity, weights, act)


def relation_failures(rep: GlRep, limit: Optional[int] = None):
    """Generator pairs violating [E_ab, E_cd] = d_bc E_ad - (-1)^{..} d_da E_cb."""
    m, n = rep.m, rep.n
    out = []
    gens = generators(m, n)
    for (a, b) in gens:
        for (c, d) in gens:
            p1 = (gl_parity(a, m) + gl_parity(b, m)) & 1
            p2 = (gl_parity(c, m) + gl_parity(d, m)) & 1
            s = -1 if (p1 & p2) else 1
            for j in range(rep.dim):
                v = {j: 1}
                lhs = rep.apply(a, b, rep.apply(c, d, v))
                add_into(lhs, rep.apply(c, d, rep.apply(a, b, v)), -s)
                if b == c:
                    add_into(lhs, rep.act[(a, d)][j], -1)
                if d == a:
                    add_into(lhs, rep.act[(c, b)][j], s)
                if lhs:
                    out.append(((a, b), (c, d), j))
                    if limit and len(out) >= limit:
                        return out
                    break
    return out


def weight_failures(rep: GlRep):
    bad = []
    for j in range(rep.dim):
        for a in range(1, rep.m + rep.n + 1):
            col = rep.act[(a, a)][j]
            want = rep.weights[j][a - 1]
            if {k: v for k, v in col.items() if k != j} or col.get(j, 0) != want:
                bad.append((j, a))
    return bad


def raising(m: int, n: int) -> List[Tuple[int, int]]:
    return [(a, b) for a in range(1, m + n + 1) for b in range(a + 1, m + n + 1)]


def highest_weight_vectors(rep: GlRep) -> List[Tuple[WeightVec, Vec]]:
    """Basis of the joint kernel of all E_ab (a < b), by weight."""
    out = []
    rs = raising(rep.m, rep.n)
    for w in sorted(rep.weight_spaces()):
        ix = rep.weight_spaces()[w]
        # columns of the stacked raising map restricted to this weight space
        cols = []
        for j in ix:
            col: Vec = {}
            for r, (a, b) in enumerate(rs):
                for i, c in rep.act[(a, b)][j].items():
                    col[r * rep.dim + i] = c
            cols.append(col)
        for kv in kernel(cols, len(rs) * rep.dim):
            out.append((w, {ix[t]: c for t, c in kv.items()}))
    return out


def weight_components(rep: GlRep, v: Vec) -> Dict[WeightVec, Vec]:
    comp: Dict[WeightVec, Vec] = {}
    for j, c in v.items():
        if c:
            comp.setdefault(rep.weights[j], {})[j] = c
    return comp


def closure_spans(rep: GlRep, seeds: Sequence[Vec]) -> Dict[WeightVec, Span]:
    """Per-weight spans of the smallest submodule containing the seeds."""
    spans: Dict[WeightVec, Span] = {}
    queue: List[Tuple[WeightVec, Vec]] = []

    def push(w, v):
        sp = spans.setdefault(w, Span())
        row = sp.add(v)
        if row is not None:
            queue.append((w, row))

    for v in seeds:
        for w, comp in weight_components(rep, v).items():
            push(w, comp)
    gens = generators(rep.m, rep.n)
    while queue:
        w, v = queue.pop()
        for a, b in gens:
            img = rep.apply(a, b, v)
            if img:
                for w2, comp in weight_components(rep, img).items():
                    push(w2, comp)
    return spans


def cyclic_submodule(rep: GlRep, v: Vec) -> GlRep:
    """Smallest subrepresentation containing v, in a weight basis."""
    if not any(v.values()):
        raise ValueError("cyclic_submodule needs a nonzero vector")
    spans = closure_spans(rep, [v])
    return restrict(rep, spans)


def restrict(rep: GlRep, spans: Dict[WeightVec, Span]) -> GlRep:
    basis: List[Vec] = []
    weights: List[WeightVec] = []
    pivots: Dict[int, int] = {}
    reduced = {}
    for w in sorted(spans):
        red = spans[w].reduced()
        reduced[w] = red
        for p in sorted(red):
            pivots[p] = len(basis)
            basis.append(red[p])
            weights.append(w)
    act = {}
    for a, b in generators(rep.m, rep.n):
        cols = []
        for vec in basis:
            img = rep.apply(a, b, vec)
            cols.append({pivots[p]: img[p] for p in img if p in pivots and img[p]})
        act[(a, b)] = cols
    parity = []
    for vec in basis:
        parity.append(rep.parity[min(vec)])
    labels = [f"u{i}" for i in range(len(basis))]
    sub = GlRep(rep.m, rep.n, labels, parity, weights, act)
    sub_embedding = basis
    sub.labels = [_vec_label(rep, v) for v in sub_embedding]
    return sub


def _vec_label(rep: GlRep, v: Vec) -> str:
    if len(v) == 1:
        (j, c), = v.items()
        if c == 1:
            return rep.labels[j]
    return "+".join(f"{Fraction(c)}·{rep.labels[j]}" for j, c in sorted(v.items()))


def is_irreducible(rep: GlRep, method: str = "sampled", seed: int = 0, samples: int = 16) -> bool:
    """Irreducibility test.

    ``sampled``: every weight-basis vector and ``samples`` random combinations
    per weight space generate the whole module.  ``highest-weight``: exactly
    one highest weight line and it generates (exact for finite dimension)."""
    if rep.dim == 0:
        raise ValueError("zero module")
    if method == "highest-weight":
        hw = highest_weight_vectors(rep)
        if len(hw) != 1:
            return False
        return _closure_dim(rep, [hw[0][1]]) == rep.dim
    rng = random.Random(seed)
    for w in sorted(rep.weight_spaces()):
        ix = rep.weight_spaces()[w]
        trials = [{j: 1} for j in ix]
        if len(ix) > 1:
            for _ in range(samples):
                trials.append({j: rng.randint(-5, 5) or 1 for j in ix})
        for v in trials:
            if _closure_dim(rep, [v]) != rep.dim:
                return False
    return True


def _closure_dim(rep, seeds) -> int:
    return sum(sp.dim for sp in closure_spans(rep, seeds).values())


def tensor_power(rep: GlRep, p: int) -> Optional[GlRep]:
    if p == 0:
        return None
    out = rep
    for _ in range(p - 1):
        out = tensor(out, rep)
    return out


def _maybe_tensor(a: Optional[GlRep], b: Optional[GlRep]) -> Optional[GlRep]:
    if a is None:
        return b
    if b is None:
        return a
    return tensor(a, b)


def twist(rep: GlRep, c: int) -> GlRep:
    if c == 0:
        return rep
    m, n = rep.m, rep.n
    return tensor(rep, one_dim_rep(wscale(c, E_weight(m, n)), m, n, check=False))


@lru_cache(maxsize=None)
def _cached_L0(lam: WeightVec, m: int, n: int, bounds: Tuple[int, int, int], max_dim: int) -> GlRep:
    return _construct_L0(lam, m, n, bounds, max_dim)


def construct_L0(lam, m: int, n: int, bounds: Tuple[int, int, int] = (3, 3, 4),
                 max_dim: int = 1024) -> GlRep:
    """An irreducible module of highest weight lam (lam dominant)."""
    lam = as_vec(lam)
    if len(lam) != m + n:
        raise ValueError("weight has wrong length")
    if not is_dominant(lam, m):
        raise ValueError(f"{render_weight(lam, m)} is not dominant")
    return _cached_L0(lam, m, n, tuple(bounds), max_dim)


def _construct_L0(lam, m, n, bounds, max_dim) -> GlRep:
    tag = exceptional_type(lam, m, n)
    V = natural_rep(m, n)
    if tag.variant == "Omega":
        if tag.index == 0:
            return trivial_rep(m, n)
        return grassmann_power(V, tag.index)
    if tag.variant == "Theta":
        return tensor(grassmann_power(dual_rep(m, n), tag.index), one_dim_rep(E_weight(m, n), m, n))
    E = E_weight(m, n)
    for c in _c_range(bounds[2]):
        if wscale(c, E) == lam:
            return one_dim_rep(lam, m, n)
    P, Rb, C = bounds
    found = _search_L0(lam, m, n, P, Rb, C, max_dim)
    if found is None:
        found = _product_L0(lam, m, n, bounds, max_dim)
    if found is None:
        raise NotRealizable(f"no irreducible module of highest weight {render_weight(lam, m)} "
                            f"within bounds p<={P}, r<={Rb}, |c|<={C}")
    return found


def _c_range(C):
    out = [0]
    for c in range(1, C + 1):
        out += [c, -c]
    return out


def _ambients(m, n, p, r, max_dim):
    """Candidate modules containing L0 pieces: full tensors, then power products."""
    V, Vs = natural_rep(m, n), dual_rep(m, n)
    seen = []
    if (m + n) ** (p + r) <= max_dim:
        seen.append(("tensor", lambda: _maybe_tensor(tensor_power(V, p), tensor_power(Vs, r))))
    for k1 in ("symmetric", "exterior"):
        for k2 in ("symmetric", "exterior"):
            if r == 0 and k2 == "exterior":
                continue
            if p == 0 and k1 == "exterior":
                continue
            a = (lambda k1=k1: super_power(V, p, k1)) if p else (lambda: None)
            b = (lambda k2=k2: super_power(Vs, r, k2)) if r else (lambda: None)
            seen.append((f"{k1}-{k2}", lambda a=a, b=b: _maybe_tensor(a(), b())))
    return seen


def _search_L0(lam, m, n, P, Rb, C, max_dim) -> Optional[GlRep]:
    E = E_weight(m, n)
    rng = random.Random(1)
    pairs = sorted(((p, r) for p in range(P + 1) for r in range(Rb + 1) if p + r > 0),
                   key=lambda t: (t[0] + t[1], t))
    for p, r in pairs:
        for c in _c_range(C):
            target = wsub(lam, wscale(c, E))
            if sum(target) != p - r:
                continue
            for _, build in _ambients(m, n, p, r, max_dim):
                amb = build()
                if amb is None or amb.dim > max_dim or target not in amb.weight_spaces():
                    continue
                hws = [v for w, v in highest_weight_vectors(amb) if w == target]
                if not hws:
                    continue
                trials = list(hws)
                if len(hws) > 1:
                    for _ in range(4):
                        trials.append(add_many(hws, [rng.randint(1, 7) for _ in hws]))
                for v in trials:
                    sub = cyclic_submodule(amb, v)
                    if is_irreducible(sub, method="highest-weight"):
                        return twist(sub, c)
    return None


def _height(w: WeightVec) -> int:
    # strictly increases along every raising root e_a - e_b, a < b
    k = len(w)
    return sum((k - i) * c for i, c in enumerate(w))


def simple_quotient(rep: GlRep, v: Vec) -> GlRep:
    """L(lam) as the quotient of the highest-weight module U(g)v by its radical.

    v must be a highest weight vector of weight lam.  The radical is
    {w : (U(n+) w)_lam = 0}; it is found one weight space at a time,
    going down in height, as the joint kernel of the raising operators
    taken modulo the radical one step up."""
    W = cyclic_submodule(rep, v)
    spaces = W.weight_spaces()
    top = max(spaces, key=_height)
    if len(spaces[top]) != 1:
        raise ValueError("vector is not a highest weight vector")
    rs = raising(W.m, W.n)
    rad: Dict[WeightVec, Span] = {}
    for w in sorted(spaces, key=_height, reverse=True):
        if w == top:
            rad[w] = Span()
            continue
        cols = []
        for j in spaces[w]:
            col: Vec = {}
            for t, (a, b) in enumerate(rs):
                img = W.apply(a, b, {j: 1})
                if not img:
                    continue
                tw = W.weights[min(img)]
                red = rad[tw].reduce(img) if tw in rad else img
                for i, c in red.items():
                    col[t * W.dim + i] = c
            cols.append(col)
        ker = kernel(cols, len(rs) * W.dim)
        rad[w] = Span({spaces[w][i]: c for i, c in kv.items()} for kv in ker)
    keep = [j for w in sorted(spaces) for j in spaces[w] if j not in rad[w].rows]
    pos = {j: t for t, j in enumerate(keep)}
    act = {}
    for a, b in generators(W.m, W.n):
        cols = []
        for j in keep:
            img = W.apply(a, b, {j: 1})
            if img:
                img = rad[W.weights[min(img)]].reduce(img)
            cols.append({pos[i]: c for i, c in img.items()})
        act[(a, b)] = cols
    return GlRep(W.m, W.n, [W.labels[j] for j in keep], [W.parity[j] for j in keep],
                 [W.weights[j] for j in keep], act)


def _product_L0(lam, m, n, bounds, max_dim, depth: int = 6) -> Optional[GlRep]:
    """L0(lam) as the simple quotient inside L0(lam - u) (x) L0(u) for small u."""
    if depth == 0:
        return None
    small = [unit_weight(1, m, n), wscale(-1, unit_weight(m + n, m, n))]
    if n:
        small.append(unit_weight(m + 1, m, n))
    for u in small:
        a = wsub(lam, u)
        if not is_dominant(a, m):
            continue
        # step toward the origin so the recursion terminates
        if sum(abs(x) for x in a) >= sum(abs(x) for x in lam):
            continue
        try:
            A = _cached_L0(a, m, n, bounds, max_dim)
        except NotRealizable:
            A = None
        if A is None:
            continue
        U = _cached_L0(u, m, n, bounds, max_dim)
        if A.dim * U.dim > 4 * max_dim:
            continue
        va = [v for w, v in highest_weight_vectors(A) if w == a][0]
        vu = [v for w, v in highest_weight_vectors(U) if w == u][0]
        v = {i * U.dim + j: c * d for i, c in va.items() for j, d in vu.items()}
        L = simple_quotient(tensor(A, U), v)
        if L.dim <= max_dim:
            return L
    return None


def add_many(vecs, coeffs) -> Vec:
    out: Vec = {}
    for c, v in zip(coeffs, vecs):
        add_into(out, v, c)
    return out


def intertwines(phi: Dict[int, Vec], A: GlRep, B: GlRep) -> bool:
    """phi(A(X) v) = B(X) phi(v) for all generators and basis vectors."""
    for a, b in generators(A.m, A.n):
        for j in range(A.dim):
            left: Vec = {}
            for k, c in A.act[(a, b)][j].items():
                add_into(left, phi[k], c)
            right = B.apply(a, b, phi[j])
            if left != right:
                return False
    return True
