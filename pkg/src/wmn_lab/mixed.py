"""Truncated mixed-product modules V(lambda) = R (x) L0(lambda).

A basis vector is x^alpha y_mu (x) v_b; its global index is
``mono_index * dim L0 + b`` with monomials in the canonical graded
order.  Vectors are sparse dicts over global indices.  An operator of
Z-degree k applied to a vector of R-degree d is only defined when
d + k <= N; otherwise :class:`TruncationOverflow` is raised.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import (
    WittElement,
    _bracket_terms,
    basis_keys,
    derive_mono,
    gen_parity,
)
from .glrep import GlRep, construct_L0, highest_weight_vectors, render_weight, wadd, as_vec
from .linalg import Span, Vec, add_into, kernel
from .superalgebra import SuperMonomial, SuperPolynomial, dx_mono, dy_mono, mono_mul, monomials_up_to

Key = Tuple[SuperMonomial, int]
BlockId = Tuple[int, Tuple[int, ...]]


class TruncationOverflow(ArithmeticError):
    pass


def key_degree(key: Key) -> int:
    return key[0].degree - 1


def key_parity(key: Key, m: int) -> int:
    return (key[0].parity + gen_parity(key[1], m)) & 1


def g0_row(mono: SuperMonomial, m: int) -> int:
    """gl row index of a degree-one monomial: x_i -> i, y_r -> m + r."""
    if mono.mu:
        return m + mono.mu[0]
    return mono.alpha.index(1) + 1


class MixedProductModule:
    """R (x) L0 truncated at R-degree N."""

    def __init__(self, lam, m: int, n: int, N: int, L0: Optional[GlRep] = None):
        if N < 0:
            raise ValueError("truncation degree must be non-negative")
        self.m, self.n, self.N = m, n, N
        self.L0 = L0 if L0 is not None else construct_L0(as_vec(lam), m, n)
        self.lam = tuple(as_vec(lam)) if lam is not None else None
        self.monos: List[SuperMonomial] = monomials_up_to(N, m, n)
        self.mono_index = {k: i for i, k in enumerate(self.monos)}
        self.d0 = self.L0.dim
        self.dim = len(self.monos) * self.d0
        self._deg = [k.degree for k in self.monos]
        self._par = [k.parity for k in self.monos]
        self._cache: Dict[Tuple[Key, int], Vec] = {}
        blocks: Dict[BlockId, List[int]] = {}
        for mi, k in enumerate(self.monos):
            kw = k.weight(n)
            for b in range(self.d0):
                blocks.setdefault((k.degree, wadd(kw, self.L0.weights[b])), []).append(mi * self.d0 + b)
        self.blocks = dict(sorted(blocks.items()))
        self._block_of = {}
        for bid, ix in self.blocks.items():
            for j in ix:
                self._block_of[j] = bid

    # ------------------------------------------------------------ basis data
    def split(self, j: int) -> Tuple[SuperMonomial, int]:
        return self.monos[j // self.d0], j % self.d0

    def degree(self, j: int) -> int:
        return self._deg[j // self.d0]

    def parity(self, j: int) -> int:
        return (self._par[j // self.d0] + self.L0.parity[j % self.d0]) & 1

    def weight(self, j: int) -> Tuple[int, ...]:
        return self._block_of[j][1]

    def block_of(self, j: int) -> BlockId:
        return self._block_of[j]

    def label(self, j: int) -> str:
        k, b = self.split(j)
        return f"{k.render()}⊗{self.L0.labels[b]}"

    def index(self, mono: SuperMonomial, b: int) -> int:
        return self.mono_index[mono] * self.d0 + b

    def bottom(self) -> List[int]:
        return list(range(self.d0))

    def block_dims(self) -> Dict[BlockId, int]:
        return {b: len(ix) for b, ix in self.blocks.items()}

    def render_vector(self, v: Vec) -> str:
        if not v:
            return "0"
        return " + ".join(f"({c})·{self.label(j)}" for j, c in sorted(v.items()))

    # ------------------------------------------------------------ actions
    def _xi(self, row: int, g: int, b: int) -> Vec:
        return self.L0.act[(row, g)][b]

    def act_key(self, key: Key, j: int) -> Vec:
        """rho(f X_g) on one basis vector, f a monomial."""
        ck = (key, j)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        f, g = key
        m, n, d0 = self.m, self.n, self.d0
        h, b = self.split(j)
        if h.degree + f.degree - 1 > self.N:
            raise TruncationOverflow(
                f"degree {f.degree - 1} operator on R-degree {h.degree} exceeds N={self.N}")
        out: Vec = {}
        mi = self.mono_index
        # f X_g(h) (x) v
        r = derive_mono(g, m, h)
        if r is not None:
            s, mono = mono_mul(f, r[1])
            if s:
                add_into(out, {mi[mono] * d0 + b: s * r[0]})
        pX = gen_parity(g, m)
        ph = h.parity
        sig = -1 if (ph & pX) else 1
        # sum_j d_j(f) h (x) sigma(x_j X_g) v
        for jx in range(1, m + 1):
            r = dx_mono(jx, f)
            if r is None:
                continue
            s, mono = mono_mul(r[1], h)
            if not s:
                continue
            base = mi[mono] * d0
            for b2, c in self._xi(jx, g, b).items():
                add_into(out, {base + b2: sig * s * r[0] * c})
        # (-1)^{p(f)+1} sum_j D_j(f) h (x) sigma(y_j X_g) v
        sf = 1 if f.parity else -1
        sig2 = -1 if (ph & (1 - pX)) else 1
        for jy in range(1, n + 1):
            r = dy_mono(jy, f)
            if r is None:
                continue
            s, mono = mono_mul(r[1], h)
            if not s:
                continue
            base = mi[mono] * d0
            for b2, c in self._xi(m + jy, g, b).items():
                add_into(out, {base + b2: sf * sig2 * s * r[0] * c})
        self._cache[ck] = out
        return out

    def act_key_vec(self, key: Key, u: Vec) -> Vec:
        out: Vec = {}
        for j, c in u.items():
            col = self.act_key(key, j)
            if col:
                add_into(out, col, c)
        return out

    def act(self, E: WittElement, u: Vec) -> Vec:
        out: Vec = {}
        for key, c in E.terms.items():
            for j, a in u.items():
                col = self.act_key(key, j)
                if col:
                    add_into(out, col, c * a)
        return out

    def sigma_key(self, key: Key, j: int) -> Vec:
        """sigma(f X)(h (x) v) = (-1)^{p(h)p(fX)} h (x) xi(fX) v on g_0, zero on g_{>=1}."""
        f, g = key
        if f.degree == 0:
            raise ValueError("sigma is defined on g_{>=0} only")
        if f.degree >= 2:
            return {}
        h, b = self.split(j)
        s = -1 if (h.parity & key_parity(key, self.m)) else 1
        base = (j // self.d0) * self.d0
        return {base + b2: s * c for b2, c in self._xi(g0_row(f, self.m), g, b).items()}

    def sigma_act(self, E: WittElement, u: Vec) -> Vec:
        out: Vec = {}
        for key, c in E.terms.items():
            for j, a in u.items():
                add_into(out, self.sigma_key(key, j), c * a)
        return out

    def mult(self, f: SuperPolynomial, u: Vec) -> Vec:
        """Left multiplication by f in R."""
        out: Vec = {}
        for j, a in u.items():
            h, b = self.split(j)
            for k, c in f.terms.items():
                if k.degree + h.degree > self.N:
                    raise TruncationOverflow("multiplication leaves the truncation")
                s, mono = mono_mul(k, h)
                if s:
                    add_into(out, {self.index(mono, b): s * c * a})
        return out

    def ops(self, lo: int = -1, hi: Optional[int] = None) -> List[Key]:
        hi = self.N if hi is None else hi
        return [key for i in range(lo, hi + 1) for key in basis_keys(i, self.m, self.n)]

    def safe_vectors(self, max_shift: int) -> List[int]:
        """Basis indices whose degree plus max_shift stays within N."""
        return [j for j in range(self.dim) if self.degree(j) + max_shift <= self.N]


def tensor_vector(M: MixedProductModule, mono: SuperMonomial, v: Vec) -> Vec:
    """mono (x) v for v given in L0 coordinates."""
    base = M.mono_index[mono] * M.d0
    return {base + b: c for b, c in v.items() if c}


def hw_vector(M: MixedProductModule) -> Vec:
    """1 (x) v_hw for the unique highest weight line of L0."""
    hws = highest_weight_vectors(M.L0)
    if len(hws) != 1:
        raise ValueError("L0 has more than one highest weight line")
    return dict(hws[0][1])


# ---------------------------------------------------------------- reports

@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int = 0
    failures: List[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "failures": self.failures, "details": self.details}


def _pair_sign(p1, p2):
    return -1 if (p1 & p2) else 1


def check_module_axiom(M: MixedProductModule, max_degree: int = 2, keys: Optional[Sequence[Key]] = None,
                       vectors: Optional[Iterable[int]] = None, max_failures: int = 5) -> CheckReport:
    """[E,F].u = E.F.u - (-1)^{p(E)p(F)} F.E.u on every safe basis vector."""
    m = M.m
    keys = list(keys) if keys is not None else M.ops(-1, max_degree)
    vec_filter = set(vectors) if vectors is not None else None
    by_deg: Dict[int, List[int]] = {}
    for j in range(M.dim):
        if vec_filter is None or j in vec_filter:
            by_deg.setdefault(M.degree(j), []).append(j)
    checked = 0
    fails = []
    for a, E in enumerate(keys):
        kE, pE = key_degree(E), key_parity(E, m)
        for F in keys[a:]:
            kF, pF = key_degree(F), key_parity(F, m)
            s = _pair_sign(pE, pF)
            br = _bracket_terms(E[0], E[1], F[0], F[1], m)
            lim = M.N - max(kE, kF, kE + kF, 0)
            for d, ix in by_deg.items():
                if d > lim:
                    continue
                for j in ix:
                    lhs: Vec = {}
                    for bk, c in br:
                        add_into(lhs, M.act_key(bk, j), c)
                    rhs = M.act_key_vec(E, M.act_key(F, j))
                    add_into(rhs, M.act_key_vec(F, M.act_key(E, j)), -s)
                    checked += 1
                    if lhs != rhs:
                        fails.append({"E": _key_str(E, M), "F": _key_str(F, M), "u": M.label(j)})
                        if len(fails) >= max_failures:
                            return CheckReport("module-axiom", False, checked, fails)
    return CheckReport("module-axiom", not fails, checked, fails)


def _key_str(key: Key, M) -> str:
    return str(WittElement(M.m, M.n, {key: 1}))


def check_weights(M: MixedProductModule) -> CheckReport:
    """The Cartan elements x_i d_i, y_s D_s act diagonally by the declared weights."""
    m, n = M.m, M.n
    fails = []
    cartan = []
    for i in range(1, m + 1):
        al = [0] * m
        al[i - 1] = 1
        cartan.append((SuperMonomial(tuple(al), ()), i))
    for s in range(1, n + 1):
        cartan.append((SuperMonomial((0,) * m, (s,)), m + s))
    for j in range(M.dim):
        w = M.weight(j)
        for a, key in enumerate(cartan):
            col = M.act_key(key, j)
            if col != ({j: w[a]} if w[a] else {}):
                fails.append({"u": M.label(j), "h": _key_str(key, M)})
    return CheckReport("weights", not fails, M.dim * len(cartan), fails[:5])


def check_rg_axioms(M: MixedProductModule, samples: int = 64, seed: int = 0) -> CheckReport:
    """Axioms (i)-(iv) of (R,g)-modules on random tuples inside safe blocks.

    f runs over monomials, D and D' over basis elements, u over basis vectors."""
    rng = random.Random(seed)
    m, n, N = M.m, M.n, M.N
    monos = [k for k in M.monos if 1 <= k.degree <= max(1, N - 1)]
    low = M.ops(-1, max(-1, N - 2))
    nonneg = [k for k in low if key_degree(k) >= 0]
    X_keys = list(basis_keys(-1, m, n))
    fails = []
    checked = 0
    for _ in range(samples):
        f = rng.choice(monos)
        fp = SuperPolynomial(m, n, {f: 1})
        pf = f.parity
        # (i) [rho(D), f] = (Df)_R
        D = rng.choice(low)
        kD, pD = key_degree(D), key_parity(D, m)
        ok_deg = [j for j in range(M.dim) if M.degree(j) + f.degree + max(kD, 0) <= N]
        if ok_deg:
            j = rng.choice(ok_deg)
            lhs = M.act_key_vec(D, M.mult(fp, {j: 1}))
            add_into(lhs, M.mult(fp, M.act_key(D, j)), -_pair_sign(pD, pf))
            Df = _apply_key(D, fp, m, n)
            rhs = M.mult(Df, {j: 1}) if not Df.is_zero() else {}
            checked += 1
            if lhs != rhs:
                fails.append({"axiom": "i", "f": str(fp), "D": _key_str(D, M), "u": M.label(j)})
        # (ii) [sigma(D'), f] = 0
        Dp = rng.choice(nonneg)
        ok_deg = [j for j in range(M.dim) if M.degree(j) + f.degree <= N]
        j = rng.choice(ok_deg)
        pDp = key_parity(Dp, m)
        lhs = _sigma_vec(M, Dp, M.mult(fp, {j: 1}))
        add_into(lhs, M.mult(fp, M.sigma_key(Dp, j)), -_pair_sign(pDp, pf))
        checked += 1
        if lhs:
            fails.append({"axiom": "ii", "f": str(fp), "D'": _key_str(Dp, M), "u": M.label(j)})
        # (iii) [rho(X), sigma(D')] = 0 for X in g_{-1}
        X = rng.choice(X_keys)
        ok_deg = [j for j in range(M.dim) if M.degree(j) <= N]
        j = rng.choice(ok_deg)
        lhs = M.act_key_vec(X, M.sigma_key(Dp, j))
        add_into(lhs, _sigma_vec(M, Dp, M.act_key(X, j)), -_pair_sign(key_parity(X, m), pDp))
        checked += 1
        if lhs:
            fails.append({"axiom": "iii", "X": _key_str(X, M), "D'": _key_str(Dp, M), "u": M.label(j)})
        # (iv) rho(fX) = f rho(X) + sum d_i f sigma(x_i X) + (-1)^{p(f)+1} sum D_j f sigma(y_j X)
        g = X[1]
        ok_deg = [j for j in range(M.dim) if M.degree(j) + f.degree - 1 <= N]
        j = rng.choice(ok_deg)
        lhs = M.act_key((f, g), j)
        rhs = M.mult(fp, M.act_key(X, j))
        for i in range(1, m + 1):
            r = dx_mono(i, f)
            if r:
                al = [0] * m
                al[i - 1] = 1
                sv = M.sigma_key((SuperMonomial(tuple(al), ()), g), j)
                add_into(rhs, M.mult(SuperPolynomial(m, n, {r[1]: r[0]}), sv))
        sgn = 1 if pf else -1
        for t in range(1, n + 1):
            r = dy_mono(t, f)
            if r:
                sv = M.sigma_key((SuperMonomial((0,) * m, (t,)), g), j)
                add_into(rhs, M.mult(SuperPolynomial(m, n, {r[1]: r[0]}), sv), sgn)
        checked += 1
        if lhs != rhs:
            fails.append({"axiom": "iv", "f": str(fp), "X": _key_str(X, M), "u": M.label(j)})
    return CheckReport("rg-axioms", not fails, checked, fails[:5], {"seed": seed, "samples": samples})


def _sigma_vec(M, key, u):
    out: Vec = {}
    for j, c in u.items():
        add_into(out, M.sigma_key(key, j), c)
    return out


def _apply_key(key: Key, f: SuperPolynomial, m, n) -> SuperPolynomial:
    from .algebra import apply
    return apply(WittElement(m, n, {key: 1}), f)


# ---------------------------------------------------------------- submodules

def components(M: MixedProductModule, v: Vec) -> Dict[BlockId, Vec]:
    out: Dict[BlockId, Vec] = {}
    for j, c in v.items():
        if c:
            out.setdefault(M.block_of(j), {})[j] = c
    return out


def closure(M: MixedProductModule, seeds: Iterable[Vec], keys: Optional[Sequence[Key]] = None
            ) -> Dict[BlockId, Span]:
    """Smallest span containing the seeds and closed under the basis operators of
    Z-degree -1..N whenever the result stays inside the truncation."""
    keys = list(keys) if keys is not None else M.ops(-1, M.N)
    by_deg: Dict[int, List[Key]] = {}
    for key in keys:
        by_deg.setdefault(key_degree(key), []).append(key)
    spans: Dict[BlockId, Span] = {}
    queue: List[Tuple[BlockId, Vec]] = []

    def push(bid, v):
        sp = spans.get(bid)
        if sp is None:
            sp = spans[bid] = Span()
        row = sp.add(v)
        if row is not None:
            queue.append((bid, row))

    for v in seeds:
        for bid, comp in components(M, v).items():
            push(bid, comp)
    while queue:
        (d, _), v = queue.pop()
        for k, ks in by_deg.items():
            if d + k > M.N:
                continue
            for key in ks:
                img = M.act_key_vec(key, v)
                if img:
                    for bid, comp in components(M, img).items():
                        push(bid, comp)
    return spans


def span_dims(spans: Dict[BlockId, Span]) -> Dict[BlockId, int]:
    return {b: sp.dim for b, sp in sorted(spans.items()) if sp.dim}


def generated_submodule(M: MixedProductModule, seeds: Sequence[Vec]) -> Dict[BlockId, int]:
    if not seeds or all(not any(s.values()) for s in seeds):
        raise ValueError("seeds must contain a nonzero vector")
    return span_dims(closure(M, seeds))


def total_dim(table: Dict[BlockId, int]) -> int:
    return sum(table.values())


def covers(M: MixedProductModule, table: Dict[BlockId, int]) -> bool:
    full = M.block_dims()
    return all(table.get(b, 0) == d for b, d in full.items())


def lower_kernel(M: MixedProductModule, bid: BlockId) -> List[Vec]:
    """Joint kernel of g_{-1} on one block, as vectors in global coordinates."""
    ix = M.blocks[bid]
    keys = basis_keys(-1, M.m, M.n)
    cols = []
    pos: Dict[int, int] = {}
    for j in ix:
        col: Vec = {}
        for r, key in enumerate(keys):
            for i, c in M.act_key(key, j).items():
                p = pos.setdefault(i, len(pos))
                col[r * 10 ** 9 + p] = c
        cols.append(col)
    # compress row ids
    rows = sorted({i for col in cols for i in col})
    rmap = {i: t for t, i in enumerate(rows)}
    cols = [{rmap[i]: c for i, c in col.items()} for col in cols]
    return [{ix[t]: c for t, c in v.items()} for v in kernel(cols, len(rows))]


def socle_check(M: MixedProductModule, trials: int = 64, seed: int = 0) -> CheckReport:
    """Random nonzero vectors reach 1 (x) L0 by repeatedly applying d_i, D_j."""
    rng = random.Random(seed)
    lower = list(basis_keys(-1, M.m, M.n))
    fails = []
    for t in range(trials):
        bid = rng.choice([b for b in M.blocks if b[0] >= 1] or list(M.blocks))
        ix = M.blocks[bid]
        w = {j: rng.randint(-3, 3) for j in ix}
        w = {j: c for j, c in w.items() if c} or {ix[0]: 1}
        v = w
        path = []
        while M.degree(next(iter(v))) > 0:
            moved = False
            # deterministic preference: first lowering operator with nonzero image
            for key in lower:
                img = M.act_key_vec(key, v)
                if img:
                    v = img
                    path.append(_key_str(key, M))
                    moved = True
                    break
            if not moved:
                break
        if M.degree(next(iter(v))) != 0:
            fails.append({"trial": t, "block": _bid_json(bid, M), "stuck_after": path})
    return CheckReport("socle", not fails, trials, fails[:5], {"seed": seed})


def _bid_json(bid: BlockId, M) -> dict:
    return {"degree": bid[0], "weight": list(bid[1]), "weight_str": render_weight(bid[1], M.m)}


@dataclass
class IrreducibilityReport:
    irreducible: bool
    method: str
    socle_ok: bool
    generated: Dict[BlockId, int]
    full: Dict[BlockId, int]
    witness: Optional[dict] = None

    def to_json(self, M: MixedProductModule):
        return {
            "irreducible": self.irreducible,
            "method": self.method,
            "socle_ok": self.socle_ok,
            "generated_dim": total_dim(self.generated),
            "full_dim": total_dim(self.full),
            "witness": self.witness,
        }


def is_irreducible_truncated(M: MixedProductModule, method: str = "socle", seed: int = 0,
                             samples: int = 4) -> IrreducibilityReport:
    """Irreducibility of V(lambda) up to degree N.

    ``socle``: g_{-1} has no joint kernel above degree 0 (so every nonzero
    vector generates something in 1 (x) L0), and 1 (x) v_hw generates the
    whole truncation.  ``exhaustive``: the literal test, each weight-basis
    vector of every block (plus ``samples`` random combinations) must
    generate everything.  Both are exact refutations when they fail."""
    full = M.block_dims()
    if method == "exhaustive":
        rng = random.Random(seed)
        for bid, ix in M.blocks.items():
            trials = [{j: 1} for j in ix]
            if len(ix) > 1:
                trials += [{j: rng.randint(1, 9) for j in ix} for _ in range(samples)]
            for v in trials:
                gen = generated_submodule(M, [v])
                if not covers(M, gen):
                    return IrreducibilityReport(False, method, True, gen, full,
                                                _witness(M, gen, v))
        return IrreducibilityReport(True, method, True, full, full)
    if method != "socle":
        raise ValueError("method must be 'socle' or 'exhaustive'")
    socle_ok = True
    witness = None
    for bid in M.blocks:
        if bid[0] == 0:
            continue
        ker = lower_kernel(M, bid)
        if ker:
            socle_ok = False
            v = ker[0]
            gen = generated_submodule(M, [v])
            witness = _witness(M, gen, v)
            witness["reason"] = "vector killed by g_-1 above degree 0"
            break
    v = tensor_hw(M)
    gen = generated_submodule(M, [v])
    ok = covers(M, gen)
    if not ok and witness is None:
        witness = _witness(M, gen, v)
        witness["reason"] = "1⊗v_hw generates a proper submodule"
    return IrreducibilityReport(ok and socle_ok, method, socle_ok, gen, full, witness)


def tensor_hw(M: MixedProductModule) -> Vec:
    return hw_vector(M)


def _witness(M, gen, v) -> dict:
    return {
        "generator": M.render_vector(v),
        "submodule_dim": total_dim(gen),
        "module_dim": M.dim,
        "blocks": [{**_bid_json(b, M), "dim": d, "full": M.block_dims()[b]}
                   for b, d in gen.items()],
    }


def mflat(M: MixedProductModule, spans: Dict[BlockId, Span]) -> List[Vec]:
    """Basis of M-flat = intersection over monomials k of {v : k (x) v in the submodule}."""
    L0 = M.L0
    out: List[Vec] = []
    for w, ix in sorted(L0.weight_spaces().items()):
        current = [{b: 1} for b in ix]
        for k in M.monos:
            if not current:
                break
            bid = (k.degree, wadd(k.weight(M.n), w))
            sp = spans.get(bid)
            if sp is None or sp.dim == 0:
                current = []
                break
            resid = [sp.reduce(tensor_vector(M, k, u)) for u in current]
            if not any(resid):
                continue
            rows = sorted({i for r in resid for i in r})
            rmap = {i: t for t, i in enumerate(rows)}
            ker = kernel([{rmap[i]: c for i, c in r.items()} for r in resid], len(rows))
            new = []
            for kv in ker:
                vec: Vec = {}
                for t, c in kv.items():
                    add_into(vec, current[t], c)
                new.append(vec)
            current = new
        out.extend(current)
    return out


def mflat_test(M: MixedProductModule, spans: Dict[BlockId, Span]) -> bool:
    return bool(mflat(M, spans))


def full_spans(M: MixedProductModule) -> Dict[BlockId, Span]:
    return {b: Span({j: 1} for j in ix) for b, ix in M.blocks.items()}
