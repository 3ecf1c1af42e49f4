"""Type-I and type-II complexes of mixed-product modules, as block maps.

Type I:  V(omega_0) -> V(omega_1) -> ...  with L0(omega_k) = Omega^k(V).
Type II: ... -> V(theta_1) -> V(theta_0) -> 0  with
L0(theta_q) = Omega^q(V*) (x) F_E.  Both differentials lower the
R-degree by one and preserve weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .glrep import (
    E_weight,
    _normal_form,
    _power_basis,
    as_vec,
    dual_rep,
    exceptional_type,
    grassmann_power,
    natural_rep,
    omega,
    one_dim_rep,
    render_weight,
    tensor,
    theta,
)
from .linalg import Span, Vec, add_into, kernel, rank
from .mixed import (
    BlockId,
    CheckReport,
    MixedProductModule,
    _bid_json,
    _key_str,
    key_degree,
)
from .superalgebra import SuperMonomial, dx_mono, dy_mono, mono_mul


# ---------------------------------------------------------------- modules

@lru_cache(maxsize=None)
def type1_module(k: int, m: int, n: int, N: int) -> MixedProductModule:
    return MixedProductModule(omega(k, m, n), m, n, N, L0=grassmann_power(natural_rep(m, n), k))


@lru_cache(maxsize=None)
def type2_module(q: int, m: int, n: int, N: int) -> MixedProductModule:
    L0 = tensor(grassmann_power(dual_rep(m, n), q), one_dim_rep(E_weight(m, n), m, n))
    return MixedProductModule(theta(q, m, n), m, n, N, L0=L0)


def _wedge_tuples(m: int, n: int, k: int):
    parity = [0] * m + [1] * n
    basis = _power_basis(parity, k, "exterior")
    return parity, basis, {t: i for i, t in enumerate(basis)}


def grassmann_derivation(r: int, t: Tuple[int, ...], parity: Sequence[int]) -> List[Tuple[int, Tuple[int, ...]]]:
    """F_r(e_{t1}...e_{tk}) with F_r(e_j) = delta_rj (0-based indices).

    Passing F_r across e_b costs -(-1)^{p_r p_b}, the factor forced by the
    Grassmann relation."""
    out = []
    sign = 1
    for pos, b in enumerate(t):
        if b == r:
            out.append((sign, t[:pos] + t[pos + 1:]))
        sign *= -1 if (parity[r] & parity[b]) == 0 else 1
    # merge equal tuples
    acc: Dict[Tuple[int, ...], int] = {}
    for s, u in out:
        acc[u] = acc.get(u, 0) + s
    return [(c, u) for u, c in acc.items() if c]


# ---------------------------------------------------------------- block maps

class BlockMap:
    """A linear map between truncated modules given by basis-vector images."""

    def __init__(self, name: str, source: MixedProductModule, target: MixedProductModule,
                 images: Dict[int, Vec], shift: int = -1):
        if source.N != target.N:
            raise ValueError("mismatched truncation degrees")
        self.name = name
        self.source = source
        self.target = target
        self.images = images
        self.shift = shift

    def __call__(self, v: Vec) -> Vec:
        out: Vec = {}
        for j, c in v.items():
            img = self.images.get(j)
            if img:
                add_into(out, img, c)
        return out

    def block_columns(self, bid: BlockId) -> List[Vec]:
        return [self.images.get(j, {}) for j in self.source.blocks.get(bid, [])]

    def target_block(self, bid: BlockId) -> BlockId:
        return (bid[0] + self.shift, bid[1])

    def rank_on(self, bid: BlockId) -> int:
        cols = self.block_columns(bid)
        return rank(cols, self.target.dim) if cols else 0

    def kernel_on(self, bid: BlockId) -> List[Vec]:
        ix = self.source.blocks.get(bid, [])
        cols = [self.images.get(j, {}) for j in ix]
        if not ix:
            return []
        ker = kernel(cols, self.target.dim)
        return [{ix[t]: c for t, c in v.items()} for v in ker]

    def image_span(self, bid_target: BlockId) -> Span:
        src = (bid_target[0] - self.shift, bid_target[1])
        return Span(self.block_columns(src))

    def is_zero(self) -> bool:
        return not any(self.images.values())

    def check_blocks(self) -> CheckReport:
        """Weight preservation and the degree shift, per nonzero image."""
        fails = []
        for j, img in self.images.items():
            want = self.target_block(self.source.block_of(j))
            for i in img:
                if self.target.block_of(i) != want:
                    fails.append({"u": self.source.label(j), "image_term": self.target.label(i)})
                    break
        return CheckReport(f"{self.name}-blocks", not fails, len(self.images), fails[:5])


def compose(A: BlockMap, B: BlockMap) -> BlockMap:
    """B after A."""
    if A.target is not B.source:
        raise ValueError("maps are not composable")
    images = {j: B(img) for j, img in A.images.items()}
    return BlockMap(f"{B.name}∘{A.name}", A.source, B.target,
                    {j: v for j, v in images.items() if v}, A.shift + B.shift)


def zero_map(source: MixedProductModule, target: MixedProductModule, name="0") -> BlockMap:
    return BlockMap(name, source, target, {})


# ---------------------------------------------------------------- type I

def type1_differential(k: int, Mk: MixedProductModule, Mk1: MixedProductModule) -> BlockMap:
    """d_k(x^a y_eta (x) w) = sum_i d_i(x^a) y_eta (x) w^e_i
    + (-1)^{p(w)+|eta|+1} sum_i x^a D_i(y_eta) (x) w^e_{m+i}."""
    if Mk.N != Mk1.N:
        raise ValueError("mismatched truncation")
    m, n = Mk.m, Mk.n
    parity, src_basis, _ = _wedge_tuples(m, n, k)
    _, _, tgt_index = _wedge_tuples(m, n, k + 1)
    if Mk.L0.dim != len(src_basis) or Mk1.L0.dim != len(tgt_index):
        raise ValueError("modules are not V(omega_k), V(omega_k+1) in the wedge basis")
    images: Dict[int, Vec] = {}
    for j in range(Mk.dim):
        h, b = Mk.split(j)
        w = src_basis[b]
        out: Vec = {}
        for i in range(1, m + 1):
            r = dx_mono(i, h)
            if r is None:
                continue
            s, nf = _normal_form(list(w) + [i - 1], parity, "exterior")
            if s:
                add_into(out, {Mk1.index(r[1], tgt_index[nf]): s * r[0]})
        pw = sum(parity[a] for a in w) & 1
        base = -1 if (pw + len(h.mu) + 1) & 1 else 1
        for i in range(1, n + 1):
            r = dy_mono(i, h)
            if r is None:
                continue
            s, nf = _normal_form(list(w) + [m + i - 1], parity, "exterior")
            if s:
                add_into(out, {Mk1.index(r[1], tgt_index[nf]): base * s * r[0]})
        if out:
            images[j] = out
    return BlockMap(f"d{k}", Mk, Mk1, images)


# ---------------------------------------------------------------- type II

def _split_dual(t: Tuple[int, ...], m: int, n: int):
    """e*_{i_1..i_s} e*_{m+j_1..j_t} e*_{m+n}^r from a sorted 0-based tuple."""
    ev = [a + 1 for a in t if a < m]
    od = [a - m + 1 for a in t if m <= a < m + n - 1]
    r = sum(1 for a in t if a == m + n - 1)
    return ev, od, r


def type2_differential(q: int, Mq: MixedProductModule, Mq1: MixedProductModule) -> BlockMap:
    """The closed form for d_q : V(theta_q) -> V(theta_{q-1}).

    With eta in [1, n-1] and w = e*_{i..} e*_{m+j..} e*_{m+n}^{q-s-t}:
    on x^a y_eta y_n (x) w (x) 1,
      (1/q)[ -sum_k x^a y_n D_{j_k}(y_eta) (x) F_{m+j_k}(w)
             + (-1)^{|eta|+1} sum_l d_{i_l}(x^a) y_n y_eta (x) F_{i_l}(w)
             + (-1)^s (q-s-t) x^a y_eta (x) w/e*_{m+n} ];
    on x^a y_eta (x) w (x) 1,
      (1/q)[ (-1)^{|eta|+1} sum_k x^a D_{j_k}(y_eta) (x) F_{m+j_k}(w)
             - sum_l d_{i_l}(x^a) y_eta (x) F_{i_l}(w) ].
    The sums run over distinct indices j: F_{m+j} already produces the
    multiplicity of a repeated odd factor, so summing over factor positions
    would count it twice."""
    if q < 1:
        raise ValueError("d_0 is the zero map to 0")
    if Mq.N != Mq1.N:
        raise ValueError("mismatched truncation")
    m, n = Mq.m, Mq.n
    parity, src_basis, _ = _wedge_tuples(m, n, q)
    _, _, tgt_index = _wedge_tuples(m, n, q - 1)
    if Mq.L0.dim != len(src_basis) or Mq1.L0.dim != len(tgt_index):
        raise ValueError("modules are not V(theta_q), V(theta_q-1) in the wedge basis")
    inv_q = Fraction(1, q)
    images: Dict[int, Vec] = {}
    yn = SuperMonomial((0,) * m, (n,))
    for j in range(Mq.dim):
        h, b = Mq.split(j)
        w = src_basis[b]
        ev, od, r = _split_dual(w, m, n)
        s, t = len(ev), len(od)
        has_yn = n in h.mu
        eta_mono = SuperMonomial(h.alpha, tuple(x for x in h.mu if x != n))
        eta_len = len(eta_mono.mu)
        # h = x^a y_eta y_n: y_eta y_n is already sorted, no sign
        out: Vec = {}

        def put(sign, mono, tup):
            if mono is None or not sign:
                return
            add_into(out, {Mq1.index(mono, tgt_index[tup]): sign * inv_q})

        odd_terms = []
        for jk in sorted(set(od)):
            rr = dy_mono(jk, eta_mono)
            if rr is None:
                continue
            for c, u in grassmann_derivation(m + jk - 1, w, parity):
                odd_terms.append((rr[0] * c, rr[1], u))
        even_terms = []
        for il in ev:
            rr = dx_mono(il, eta_mono)
            if rr is None:
                continue
            for c, u in grassmann_derivation(il - 1, w, parity):
                even_terms.append((rr[0] * c, rr[1], u))
        sg_eta = 1 if (eta_len + 1) % 2 == 0 else -1
        if has_yn:
            for c, mono, u in odd_terms:
                # y_n * (x^a D(y_eta))
                sgn, prod = mono_mul(yn, mono)
                put(-c * sgn, prod, u)
            for c, mono, u in even_terms:
                sgn, prod = mono_mul(yn, mono)
                put(sg_eta * c * sgn, prod, u)
            if r > 0:
                low = w[:-1]  # the last factor is e*_{m+n}
                put((-1) ** s * (q - s - t), eta_mono, low)
        else:
            for c, mono, u in odd_terms:
                put(sg_eta * c, mono, u)
            for c, mono, u in even_terms:
                put(-c, mono, u)
        if out:
            images[j] = out
    return BlockMap(f"𝐝{q}", Mq, Mq1, images)


def propagated_differential(name: str, source: MixedProductModule, target: MixedProductModule,
                            generator: Vec, value: Vec) -> Tuple[Optional[BlockMap], CheckReport]:
    """The unique module map sending generator to value, built by propagating
    along basis operators; reports inconsistencies (failure of well-definedness)."""
    from .linalg import Span
    N = source.N
    ops = source.ops(-1, N)
    # echelon rows paired with their images
    rows: Dict[int, Tuple[Vec, Vec]] = {}

    def reduce(v: Vec, img: Vec):
        v, img = dict(v), dict(img)
        while v:
            p = min(v)
            if p not in rows:
                return v, img
            c = v[p]
            rv, ri = rows[p]
            add_into(v, rv, -c)
            add_into(img, ri, -c)
        return v, img

    fails = []
    queue = []

    def push(v, img):
        rv, ri = reduce(v, img)
        if not rv:
            if ri:
                fails.append({"vector": source.render_vector(v)})
            return
        p = min(rv)
        c = rv[p]
        inv = Fraction(1) / c
        rv = {k: x * inv for k, x in rv.items()}
        ri = {k: x * inv for k, x in ri.items()}
        # keep rows fully reduced against later pivots lazily
        rows[p] = (rv, ri)
        queue.append((rv, ri))

    push(generator, value)
    while queue and len(fails) < 5:
        v, img = queue.pop()
        d = source.degree(min(v))
        for key in ops:
            k = key_degree(key)
            if d + k > N:
                continue
            av = source.act_key_vec(key, v)
            if not av:
                continue
            ai = target.act_key_vec(key, img) if img else {}
            push(av, ai)
    report = CheckReport(f"{name}-propagation", not fails, len(rows), fails[:5],
                         {"spanned": len(rows), "source_dim": source.dim})
    if fails or len(rows) < source.dim:
        return None, report
    # solve for basis images by back substitution
    images: Dict[int, Vec] = {}
    for p in sorted(rows, reverse=True):
        rv, ri = rows[p]
        img = dict(ri)
        for k2, c in rv.items():
            if k2 != p:
                add_into(img, images.get(k2, {}), -c)
        if img:
            images[p] = img
        else:
            images[p] = {}
    return BlockMap(name, source, target, {j: v for j, v in images.items() if v}), report


def type2_propagated(q: int, Mq: MixedProductModule, Mq1: MixedProductModule):
    """d_q determined only by y_n (x) e*_{m+n}^q (x) 1 -> 1 (x) e*_{m+n}^{q-1} (x) 1."""
    m, n = Mq.m, Mq.n
    _, src_basis, src_index = _wedge_tuples(m, n, q)
    _, _, tgt_index = _wedge_tuples(m, n, q - 1)
    top = m + n - 1
    gen = {Mq.index(SuperMonomial((0,) * m, (n,)), src_index[(top,) * q]): 1}
    val = {Mq1.index(SuperMonomial((0,) * m, ()), tgt_index[(top,) * (q - 1)]): 1}
    return propagated_differential(f"𝐝{q}", Mq, Mq1, gen, val)


# ---------------------------------------------------------------- checks

def verify_module_map(D: BlockMap, max_degree: Optional[int] = None, vectors=None,
                      max_failures: int = 5, keys=None) -> CheckReport:
    """D(E.u) = E.D(u) for basis operators E and safe basis vectors u."""
    S, T = D.source, D.target
    hi = S.N if max_degree is None else max_degree
    keys = S.ops(-1, hi) if keys is None else list(keys)
    vecs = list(vectors) if vectors is not None else range(S.dim)
    fails = []
    checked = 0
    for key in keys:
        k = key_degree(key)
        for j in vecs:
            if S.degree(j) + k > S.N:
                continue
            left = D(S.act_key(key, j))
            dj = D.images.get(j, {})
            right = T.act_key_vec(key, dj) if dj else {}
            checked += 1
            if left != right:
                fails.append({"E": _key_str(key, S), "u": S.label(j)})
                if len(fails) >= max_failures:
                    return CheckReport(f"{D.name}-module-map", False, checked, fails)
    return CheckReport(f"{D.name}-module-map", not fails, checked, fails)


def verify_d_squared(D1: BlockMap, D2: BlockMap) -> CheckReport:
    C = compose(D1, D2)
    bad = [{"u": D1.source.label(j)} for j, v in C.images.items() if v]
    return CheckReport(f"{D2.name}∘{D1.name}=0", not bad, len(D1.images), bad[:5])


@dataclass
class HomologyReport:
    position: str
    blocks: List[dict] = field(default_factory=list)
    total_homology: int = 0
    classes: List[dict] = field(default_factory=list)
    representatives: List[Vec] = field(default_factory=list)

    def character(self) -> Dict[Tuple[int, ...], int]:
        out: Dict[Tuple[int, ...], int] = {}
        for b in self.blocks:
            if b["dim_H"]:
                w = tuple(b["weight"])
                out[w] = out.get(w, 0) + b["dim_H"]
        return out

    def to_json(self):
        return {"position": self.position, "total_homology": self.total_homology,
                "classes": self.classes, "blocks": self.blocks}


def homology(Dprev: Optional[BlockMap], Dnext: Optional[BlockMap], middle: Optional[MixedProductModule] = None,
             position: str = "") -> HomologyReport:
    """Per-block ker(Dnext)/im(Dprev) on blocks where both maps are fully represented."""
    M = middle or (Dnext.source if Dnext is not None else Dprev.target)
    if Dprev is not None and Dnext is not None:
        if Dprev.target is not Dnext.source:
            raise ValueError("maps are not composable")
        sq = verify_d_squared(Dprev, Dnext)
        if not sq.passed:
            raise ValueError("Dnext∘Dprev is not zero")
    rep = HomologyReport(position)
    for bid, ix in M.blocks.items():
        d = bid[0]
        if Dprev is not None and d - Dprev.shift > M.N:
            continue
        ker = Dnext.kernel_on(bid) if Dnext is not None else [{j: 1} for j in ix]
        im = Dprev.image_span(bid) if Dprev is not None else Span()
        h = len(ker) - im.dim
        entry = {"degree": d, "weight": list(bid[1]), "weight_str": render_weight(bid[1], M.m),
                 "dim_source": len(ix), "dim_ker": len(ker), "dim_im_prev": im.dim, "dim_H": h}
        rep.blocks.append(entry)
        if h:
            rep.total_homology += h
            rep.classes.append({"degree": d, "weight": list(bid[1]),
                                "weight_str": render_weight(bid[1], M.m), "dim": h})
            for v in ker:
                if im.add(v) is not None:
                    rep.representatives.append(v)
    return rep


def trivial_class_check(M: MixedProductModule, rep: Vec, image: Optional[BlockMap]) -> CheckReport:
    """Every basis operator maps the class of rep into im(image) (trivial action)."""
    spans: Dict[BlockId, Span] = {}
    fails = []
    checked = 0
    d = M.degree(min(rep))
    # the image of the previous map is only complete below degree N
    for key in M.ops(-1, M.N - 1 - d):
        img = M.act_key_vec(key, rep)
        checked += 1
        if not img:
            continue
        bid = M.block_of(min(img))
        if image is None:
            fails.append({"E": _key_str(key, M)})
            continue
        if bid not in spans:
            spans[bid] = image.image_span(bid)
        if not spans[bid].contains(img):
            fails.append({"E": _key_str(key, M), "image": M.render_vector(img)})
    return CheckReport("trivial-action", not fails, checked, fails[:5])


# ---------------------------------------------------------------- complexes

@dataclass
class ComplexRun:
    family: str
    index: int
    checks: List[CheckReport]
    homology: HomologyReport

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def run_type1(k: int, m: int, n: int, N: int, module_map_degree: int = 2) -> ComplexRun:
    """Module-map, d^2 and homology at position k >= 1 of the type-I complex."""
    if k < 1:
        raise ValueError("type-I homology is reported at positions k >= 1")
    Mp, Mk, Mn = (type1_module(i, m, n, N) for i in (k - 1, k, k + 1))
    Dp = type1_differential(k - 1, Mp, Mk)
    Dn = type1_differential(k, Mk, Mn)
    checks = [Dp.check_blocks(), Dn.check_blocks(),
              verify_module_map(Dp, module_map_degree), verify_module_map(Dn, module_map_degree),
              verify_d_squared(Dp, Dn)]
    H = homology(Dp, Dn, position=f"V(ω{k})")
    checks.append(CheckReport("homology-zero", H.total_homology == 0, len(H.blocks), H.classes[:5]))
    return ComplexRun("I", k, checks, H)


def type2_maps(q: int, m: int, n: int, N: int):
    Mq1 = type2_module(q - 1, m, n, N) if q >= 1 else None
    Mq = type2_module(q, m, n, N)
    Mq2 = type2_module(q + 1, m, n, N)
    Dn = type2_differential(q, Mq, Mq1) if q >= 1 else None
    Dp = type2_differential(q + 1, Mq2, Mq)
    return Mq2, Mq, Mq1, Dp, Dn


def run_type2(q: int, m: int, n: int, N: int, module_map_degree: int = 2) -> ComplexRun:
    """Homology at V(theta_q): zero for q != m, one trivial class of weight 0 at q = m."""
    Mq2, Mq, Mq1, Dp, Dn = type2_maps(q, m, n, N)
    checks = [Dp.check_blocks(), verify_module_map(Dp, module_map_degree)]
    if Dn is not None:
        checks += [Dn.check_blocks(), verify_module_map(Dn, module_map_degree), verify_d_squared(Dp, Dn)]
    H = homology(Dp, Dn, middle=Mq, position=f"V(θ{q})")
    if q == m:
        ok = H.total_homology == 1 and H.classes and not any(H.classes[0]["weight"])
        checks.append(CheckReport("homology-trivial-line", bool(ok), len(H.blocks), H.classes[:5]))
        if H.representatives:
            checks.append(trivial_class_check(Mq, H.representatives[0], Dp))
    else:
        checks.append(CheckReport("homology-zero", H.total_homology == 0, len(H.blocks), H.classes[:5]))
    return ComplexRun("II", q, checks, H)


# ---------------------------------------------------------------- composition factors

def composition_factors(lam, M: MixedProductModule) -> List[Tuple[Tuple[int, ...], object]]:
    """Composition factors of V(lam) up to degree N, each with its block-rank character.

    omega_k: L(omega_k) = im d_{k-1} and L(omega_{k+1}) = V/ker d_k.
    theta_q: L(theta_q) = im d_{q+1}, L(theta_{q-1}) = V/ker d_q, plus the trivial
    homology line at q = m.  V(0) = R: the constants and R/C = im of R -> V(omega_1).
    Everything else (theta_0 included) is reported as a single factor."""
    from .characters import FormalCharacter, char_of, image_character, kernel_image_split
    lam = tuple(as_vec(lam))
    m, n, N = M.m, M.n, M.N
    tag = exceptional_type(lam, m, n)
    if tag.variant == "Omega":
        k = tag.index
        up = type1_differential(k, M, type1_module(k + 1, m, n, N))
        quotient = (omega(k + 1, m, n), kernel_image_split(up)[1])
        if k == 0:
            return [((0,) * (m + n), FormalCharacter.exp((0,) * (m + n), m, n).truncate(N)), quotient]
        down = type1_differential(k - 1, type1_module(k - 1, m, n, N), M)
        return [(lam, image_character(down, N)), quotient]
    if tag.variant == "Theta" and tag.index >= 1:
        q = tag.index
        into = type2_differential(q + 1, type2_module(q + 1, m, n, N), M)
        out_of = type2_differential(q, M, type2_module(q - 1, m, n, N))
        factors = [(lam, image_character(into, N)), (theta(q - 1, m, n), kernel_image_split(out_of)[1])]
        if q == m:
            H = homology(into, out_of, middle=M)
            factors.append(((0,) * (m + n), FormalCharacter(m, n, H.character(), N - 1)))
        return sorted(factors)
    return [(lam, char_of(M))]
