"""Skryabin operator identities, the exceptional-weight solver and the
semi-infinite character check."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import (
    WittElement,
    _bracket_terms,
    basis_keys,
    bracket,
    coordinates,
    dim_gi,
    g0_element,
    g0_to_gl,
    gen_parity,
    gl_to_g0,
    super_commutator,
    term_weight,
    semi_infinite_character,
    supertrace_ad_pair,
)
from .glrep import ExceptionalTag, exceptional_type, is_dominant, omega, render_weight, theta
from .linalg import Span, add_into
from .mixed import CheckReport, MixedProductModule, hw_vector, tensor_vector
from .superalgebra import SuperMonomial, SuperPolynomial, monomials_up_to, partial_x, partial_y

Poly = SuperPolynomial


# ---------------------------------------------------------------- relation cases

@dataclass(frozen=True)
class RelationCase:
    """One instance of the three relation families, in gl(m|n) indices.

    situation 1: 1 <= i, i', k, k' <= m; situation 2: i, k <= m < i', k';
    situation 3: all indices > m and k != k'."""

    situation: int
    i: int
    ip: int
    k: int
    kp: int

    def validate(self, m: int, n: int):
        s, idx = self.situation, (self.i, self.ip, self.k, self.kp)
        if any(not 1 <= a <= m + n for a in idx):
            raise ValueError("index out of range")
        ok = {
            1: all(a <= m for a in idx),
            2: self.i <= m and self.k <= m and self.ip > m and self.kp > m,
            3: all(a > m for a in idx) and self.k != self.kp,
        }.get(s, False)
        if not ok:
            raise ValueError(f"indices {idx} do not fit situation {s}")

    def label(self) -> str:
        return f"situation {self.situation}: i={self.i} i'={self.ip} k={self.k} k'={self.kp}"


def relation_cases(situation: int, m: int, n: int) -> List[RelationCase]:
    ev, od = range(1, m + 1), range(m + 1, m + n + 1)
    if situation == 1:
        rng = product(ev, ev, ev, ev)
    elif situation == 2:
        rng = product(ev, od, ev, od)
    elif situation == 3:
        rng = ((i, ip, k, kp) for i, ip, k, kp in product(od, od, od, od) if k != kp)
    else:
        raise ValueError("situation must be 1, 2 or 3")
    return [RelationCase(situation, *t) for t in rng]


def monomial_family(case: RelationCase, m: int, n: int) -> Tuple[str, List[Tuple[Poly, Poly]]]:
    """(lemma name, [(f_nu, g_nu)]) used for the case."""
    x = lambda i: Poly.x(i, m, n)
    y = lambda t: Poly.y(t - m, m, n)
    one = Poly.one(m, n)
    k, kp = case.k, case.kp
    if case.situation == 1 and k != kp:
        return "rel1", [(one, x(k) * x(kp)), (-x(kp), x(k)), (-x(k), x(kp)), (x(k) * x(kp), one)]
    if case.situation == 1:
        h = Fraction(1, 2)
        return "rel2", [(one.scale(h), x(k) * x(k)), (-x(k), x(k)), ((x(k) * x(k)).scale(h), one)]
    if case.situation == 2:
        return "rel3", [(one, x(k) * y(kp)), (-y(kp), x(k)), (-x(k), y(kp)), (x(k) * y(kp), one)]
    # g_4 = 3 as listed; it is what makes sum f_nu g_nu vanish, since y_k y_k' = -y_k' y_k
    return "rel4", [(one, y(kp) * y(k)), (y(kp), y(k)), (-y(k), y(kp)), (-(y(kp) * y(k)), one.scale(3))]


def _d(a, b):
    return 1 if a == b else 0


def expected_words(case: RelationCase, m: int) -> List[Tuple[int, List[Tuple[int, int]]]]:
    """The displayed sigma-expression as [(coefficient, [E_ab, E_cd, ...])]; words act right to left.

    Situation 2 is written with E_{m+k', m+i'} in the middle product; the
    display's E_{k', i'} there does not match its own derivation."""
    i, ip, k, kp = case.i, case.ip, case.k, case.kp
    if case.situation == 1 and k != kp:
        return [(_d(i, k), [(kp, ip)]), (_d(i, kp), [(k, ip)]),
                (-1, [(k, i), (kp, ip)]), (-1, [(kp, i), (k, ip)])]
    if case.situation == 1:
        return [(_d(i, k), [(k, ip)]), (-1, [(k, i), (k, ip)])]
    if case.situation == 2:
        return [(_d(i, k), [(kp, ip)]), (-1, [(k, i), (kp, ip)]), (-1, [(kp, i), (k, ip)])]
    return [(-_d(i, k), [(kp, ip)]), (_d(i, kp), [(k, ip)]),
            (-1, [(k, i), (kp, ip)]), (1, [(kp, i), (k, ip)])]


def operator_generators(case: RelationCase, m: int) -> Tuple[int, int]:
    """Generator indices (X, Y) of rho(f f_nu X) rho(g_nu Y).

    The first factor carries the index i: d_i for i <= m, D_{i-m} otherwise."""
    return case.i, case.ip


# ---------------------------------------------------------------- polynomial lemma items

def _vanishes(p: Poly) -> bool:
    return p.is_zero()


def auxiliary_identities(case: RelationCase, m: int, n: int, fs: Sequence[Poly]) -> Dict[str, bool]:
    """The vanishing-sum items of the relevant lemma, as identities in R."""
    name, fam = monomial_family(case, m, n)
    zero = Poly.zero(m, n)
    out = {"sum f g": _vanishes(sum((f * g for f, g in fam), zero))}
    if name in ("rel1", "rel2"):
        out["sum f dx(g)"] = all(_vanishes(sum((f * partial_x(j, g) for f, g in fam), zero))
                                 for j in range(1, m + 1))
        out["sum dx(h f) g"] = all(
            _vanishes(sum((partial_x(j, h * f) * g for f, g in fam), zero))
            for h in fs for j in range(1, m + 1))
        out["sum D(h f) g"] = all(
            _vanishes(sum((partial_y(s, h * f) * g for f, g in fam), zero))
            for h in fs for s in range(1, n + 1))
    elif name == "rel3":
        def sgn(p):
            return 1 if (p.parity + 1) % 2 == 0 else -1
        out["sum dx(+-f D(g))"] = all(
            _vanishes(partial_x(j, sum(((f * partial_y(s, g)).scale(sgn(g)) for f, g in fam), zero)))
            for j in range(1, m + 1) for s in range(1, n + 1))
        out["sum f dx(g)"] = all(_vanishes(sum((f * partial_x(j, g) for f, g in fam), zero))
                                 for j in range(1, m + 1))
        out["sum +-f D(g)"] = all(
            _vanishes(sum(((f * partial_y(s, g)).scale(sgn(f)) for f, g in fam), zero))
            for s in range(1, n + 1))
    else:
        out["sum f D(g)"] = all(_vanishes(sum((f * partial_y(s, g) for f, g in fam), zero))
                                for s in range(1, n + 1))
    return out


# ---------------------------------------------------------------- operator identities

def sample_polynomials(m: int, n: int, seed: int = 0, random_count: int = 8) -> List[Poly]:
    """All monomials of degree <= 2 and seeded random combinations of degree <= 3."""
    out = [Poly(m, n, {k: 1}) for k in monomials_up_to(2, m, n)]
    rng = random.Random(seed)
    pool = list(monomials_up_to(3, m, n))
    for _ in range(random_count):
        # random parity-homogeneous element
        par = rng.randint(0, 1)
        cand = [k for k in pool if k.parity == par]
        pick = rng.sample(cand, min(3, len(cand)))
        out.append(Poly(m, n, {k: rng.choice([-3, -2, -1, 1, 2, 3]) for k in pick}))
    return out


def _parity_pieces(f: Poly) -> List[Poly]:
    pieces = {}
    for k, c in f.terms.items():
        pieces.setdefault(k.parity, {})[k] = c
    return [Poly(f.m, f.n, t) for _, t in sorted(pieces.items())]


def sigma_words(M: MixedProductModule, words, u) -> dict:
    out: dict = {}
    for c, word in words:
        if not c:
            continue
        w = dict(u)
        for a, b in reversed(word):
            w = M.sigma_act(g0_element(a, b, M.m, M.n), w)
        add_into(out, w, c)
    return out


def _require_hw(M: MixedProductModule, hw):
    for g in range(1, M.m + M.n + 1):
        if M.act(WittElement.from_poly(Poly.one(M.m, M.n), g), hw):
            raise ValueError("vector is not annihilated by rho(g_-1)")
    for a in range(1, M.m + M.n + 1):
        for b in range(a + 1, M.m + M.n + 1):
            if M.sigma_act(g0_element(a, b, M.m, M.n), hw):
                raise ValueError("vector is not sigma(g_0)-highest")


def skryabin_operator_check(case: RelationCase, M: MixedProductModule, hw=None,
                            fs: Optional[Sequence[Poly]] = None, seed: int = 0) -> bool:
    """sum_nu rho(f f_nu X) rho(g_nu Y) hw == f * (sigma-expression) hw for every sample f."""
    return not skryabin_failures(case, M, hw, fs, seed)


def skryabin_failures(case: RelationCase, M: MixedProductModule, hw=None,
                      fs: Optional[Sequence[Poly]] = None, seed: int = 0) -> List[dict]:
    m, n = M.m, M.n
    case.validate(m, n)
    if hw is None:
        one = SuperMonomial((0,) * m, ())
        hw = tensor_vector(M, one, hw_vector(M))
    _require_hw(M, hw)
    if fs is None:
        fs = sample_polynomials(m, n, seed)
    _, fam = monomial_family(case, m, n)
    X, Y = operator_generators(case, m)
    rhs_core = sigma_words(M, expected_words(case, m), hw)
    bad = []
    for f0 in fs:
        for f in _parity_pieces(f0):
            if max(f.degrees(), default=0) > M.N:
                continue
            lhs: dict = {}
            for fn, gn in fam:
                A = WittElement.from_poly(f * fn, X)
                B = WittElement.from_poly(gn, Y)
                if A.is_zero() or B.is_zero():
                    continue
                add_into(lhs, M.act(A, M.act(B, hw)))
            rhs = M.mult(f, rhs_core)
            diff = dict(lhs)
            add_into(diff, rhs, -1)
            if diff:
                bad.append({"f": str(f), "difference": M.render_vector(diff)})
    return bad


def skryabin_suite(M: MixedProductModule, seed: int = 0) -> List[dict]:
    """All cases of the three situations plus the auxiliary lemma items."""
    fs = sample_polynomials(M.m, M.n, seed)
    one = SuperMonomial((0,) * M.m, ())
    hw = tensor_vector(M, one, hw_vector(M))
    rows = []
    for s in (1, 2, 3):
        for case in relation_cases(s, M.m, M.n):
            name, _ = monomial_family(case, M.m, M.n)
            aux = auxiliary_identities(case, M.m, M.n, fs)
            fails = skryabin_failures(case, M, hw, fs)
            rows.append({
                "case": s,
                "lemma": name,
                "indices": [case.i, case.ip, case.k, case.kp],
                "status": "pass" if not fails and all(aux.values()) else "fail",
                "auxiliary": aux,
                "witness": fails[0] if fails else None,
            })
    return rows


# ---------------------------------------------------------------- exceptional solver

@dataclass(frozen=True)
class ConstraintSolution:
    weight: Tuple[int, ...]
    tag: ExceptionalTag

    def to_json(self, m: int):
        return {"weight": list(self.weight), "rendered": render_weight(self.weight, m),
                "tag": self.tag.variant, "index": self.tag.index}


def satisfies_constraints(lam: Sequence[int], m: int, n: int) -> bool:
    ev, od = lam[:m], lam[m:]
    if any(c not in (0, 1) for c in ev):
        return False
    if any(ev[ip] * (1 - ev[i]) for i in range(m) for ip in range(i + 1, m)):
        return False
    if any(od[t] * (1 - ev[s]) for s in range(m) for t in range(n)):
        return False
    if any(od[t] * (1 + od[s]) for s in range(n) for t in range(s + 1, n)):
        return False
    return True


def _dominant_box(m: int, n: int, box: int):
    def decreasing(length, hi):
        if length == 0:
            yield ()
            return
        for a in range(hi, -box - 1, -1):
            for rest in decreasing(length - 1, a):
                yield (a,) + rest
    for ev in decreasing(m, box):
        for od in decreasing(n, box):
            yield ev + od


def exceptional_solver(m: int, n: int, box: int) -> List[ConstraintSolution]:
    """All dominant integral weights in [-box, box]^{m+n} meeting the constraint families."""
    out = []
    for lam in _dominant_box(m, n, box):
        if satisfies_constraints(lam, m, n):
            out.append(ConstraintSolution(lam, exceptional_type(lam, m, n)))
    return sorted(out, key=lambda s: s.weight)


def exceptional_family(m: int, n: int, box: int) -> List[Tuple[int, ...]]:
    """{0} u {omega_k} u {theta_q, q >= 0}, intersected with the box."""
    cands = {omega(k, m, n) for k in range(0, m + box + 1)}
    if n:
        cands |= {theta(q, m, n) for q in range(0, box + 1)}
    return sorted(w for w in cands if all(-box <= c <= box for c in w))


def solver_report(m: int, n: int, box: int) -> dict:
    sols = exceptional_solver(m, n, box)
    got = [s.weight for s in sols]
    want = exceptional_family(m, n, box)
    return {
        "m": m, "n": n, "box": box,
        "solutions": [s.to_json(m) for s in sols],
        "expected": [list(w) for w in want],
        "passed": got == want,
    }


# ---------------------------------------------------------------- semi-infinite character

_MONO_TYPES = {(2, 0): "xx", (1, 1): "xy", (0, 2): "yy"}


def appendix_family(Xkey, Ykey, m: int) -> int:
    """Family number 1..12 of a pair (X in g_1, Y in g_-1)."""
    mono, g = Xkey
    t = _MONO_TYPES[(sum(mono.alpha), len(mono.mu))]
    gx = "d" if g <= m else "D"
    gy = "d" if Ykey[1] <= m else "D"
    table = {
        ("xy", "D"): 1, ("xx", "D"): 3, ("yy", "D"): 5,
        ("yy", "d"): 7, ("xx", "d"): 9, ("xy", "d"): 11,
    }
    return table[(t, gx)] + (0 if gy == "d" else 1)


@dataclass
class SemiInfiniteReport:
    m: int
    n: int
    N: int
    pairs: int = 0
    exceptions: List[dict] = field(default_factory=list)
    families: Dict[int, int] = field(default_factory=dict)
    generation: Dict[int, dict] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.exceptions and all(g["generated"] == g["dim"] for g in self.generation.values())

    def to_json(self):
        return {
            "m": self.m, "n": self.n, "N": self.N,
            "pairs_checked": self.pairs,
            "families": {str(k): v for k, v in sorted(self.families.items())},
            "exceptions": self.exceptions,
            "generation": {str(k): v for k, v in sorted(self.generation.items())},
            "passed": self.passed,
        }


def semi_infinite_pairs(m: int, n: int) -> SemiInfiniteReport:
    rep = SemiInfiniteReport(m, n, 0)
    for Xk in basis_keys(1, m, n):
        X = WittElement(m, n, {Xk: 1})
        for Yk in basis_keys(-1, m, n):
            Y = WittElement(m, n, {Yk: 1})
            fam = appendix_family(Xk, Yk, m)
            rep.families[fam] = rep.families.get(fam, 0) + 1
            s = supertrace_ad_pair(X, Y, m, n)
            e = semi_infinite_character(bracket(X, Y))
            rep.pairs += 1
            if s != e:
                rep.exceptions.append({"X": str(X), "Y": str(Y), "family": fam,
                                       "str": str(s), "E": str(e)})
    return rep


def generation_dims(m: int, n: int, N: int) -> Dict[int, dict]:
    """dim of the degree-k part of the subalgebra generated by g_-1 + g_0 + g_1."""
    levels: Dict[int, List[WittElement]] = {}
    for i in (-1, 0, 1):
        levels[i] = [WittElement(m, n, {k: 1}) for k in basis_keys(i, m, n)]
    out = {i: {"dim": dim_gi(i, m, n), "generated": len(levels[i])} for i in (-1, 0, 1) if i <= N}
    for k in range(2, N + 1):
        sp = Span()
        basis = []
        for a in levels[1]:
            for b in levels[k - 1]:
                c = bracket(a, b)
                if not c.is_zero() and sp.add(coordinates(c, k)) is not None:
                    basis.append(c)
        levels[k] = basis
        out[k] = {"dim": dim_gi(k, m, n), "generated": sp.dim}
    return out


def semi_infinite_check(m: int, n: int, N: int = 3) -> SemiInfiniteReport:
    """(SI-2) on all g_1 x g_-1 basis pairs, plus (SI-1) generation up to degree N."""
    rep = semi_infinite_pairs(m, n)
    rep.N = N
    rep.generation = generation_dims(m, n, N)
    return rep


def in_generated_span(E: WittElement, N: int) -> bool:
    """Does the homogeneous element E lie in the span produced by generation_dims?"""
    m, n = E.m, E.n
    k = E.z_degree
    levels = {1: [WittElement(m, n, {key: 1}) for key in basis_keys(1, m, n)]}
    sp = Span(coordinates(x, 1) for x in levels[1])
    for d in range(2, k + 1):
        new, sp = [], Span()
        for a in levels[1]:
            for b in levels[d - 1]:
                c = bracket(a, b)
                if not c.is_zero() and sp.add(coordinates(c, d)) is not None:
                    new.append(c)
        levels[d] = new
    return sp.contains(coordinates(E, k))


# ---------------------------------------------------------------- algebra suite

def _br(E1: dict, E2: dict, m: int) -> dict:
    out: dict = {}
    for (k1, g1), c1 in E1.items():
        for (k2, g2), c2 in E2.items():
            for key, c in _bracket_terms(k1, g1, k2, g2, m):
                v = out.get(key, 0) + c * c1 * c2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


def _key_parity(key, m):
    return (key[0].parity + gen_parity(key[1], m)) & 1


def _key_str(key, m, n):
    return str(WittElement(m, n, {key: 1}))


def algebra_suite(m: int, n: int, degree: int = 3) -> List[CheckReport]:
    """Super-antisymmetry, grading and weights on all basis pairs of g_-1..g_degree;
    super-Jacobi on basis triples whose total degree is <= degree; g_0 = gl(m|n)."""
    B = [(d, key) for d in range(-1, degree + 1) for key in basis_keys(d, m, n)]
    anti, grad = [], []
    pairs = 0
    for ia, (da, a) in enumerate(B):
        for db, b in B[ia:]:
            pairs += 1
            ab, ba = _br({a: 1}, {b: 1}, m), _br({b: 1}, {a: 1}, m)
            s = -1 if _key_parity(a, m) & _key_parity(b, m) else 1
            if any(ab.get(k, 0) + s * ba.get(k, 0) for k in set(ab) | set(ba)):
                anti.append({"X": _key_str(a, m, n), "Y": _key_str(b, m, n)})
            want = tuple(x + y for x, y in zip(term_weight(*a, m, n), term_weight(*b, m, n)))
            for k in ab:
                if k[0].degree - 1 != da + db or term_weight(*k, m, n) != want:
                    grad.append({"X": _key_str(a, m, n), "Y": _key_str(b, m, n)})
                    break
    jac, triples = [], 0
    for ia in range(len(B)):
        da, a = B[ia]
        for ib in range(ia, len(B)):
            db, b = B[ib]
            if da + db - 1 > degree:
                break
            ab = _br({a: 1}, {b: 1}, m)
            for ic in range(ib, len(B)):
                dc, c = B[ic]
                if da + db + dc > degree:
                    break
                pa, pb, pc = (_key_parity(x, m) for x in (a, b, c))
                tot: dict = {}
                for sgn, x, yz in ((pa & pc, a, _br({b: 1}, {c: 1}, m)),
                                   (pb & pa, b, _br({c: 1}, {a: 1}, m)),
                                   (pc & pb, c, ab)):
                    for k, v in _br({x: 1}, yz, m).items():
                        tot[k] = tot.get(k, 0) + (-v if sgn else v)
                triples += 1
                if any(tot.values()):
                    jac.append({"X": _key_str(a, m, n), "Y": _key_str(b, m, n), "Z": _key_str(c, m, n)})
    # g_0 <-> gl(m|n)
    g0 = [WittElement(m, n, {k: 1}) for k in basis_keys(0, m, n)]
    mats = [g0_to_gl(E) for E in g0]
    bij = len(set(mats)) == len(mats) == (m + n) ** 2 and all(gl_to_g0(X) == E for X, E in zip(mats, g0))
    hom = []
    for E1, X1 in zip(g0, mats):
        for E2, X2 in zip(g0, mats):
            if g0_to_gl(bracket(E1, E2)) != super_commutator(X1, X2):
                hom.append({"X": str(E1), "Y": str(E2)})
    return [
        CheckReport("super-antisymmetry", not anti, pairs, anti[:5]),
        CheckReport("grading-and-weights", not grad, pairs, grad[:5]),
        CheckReport("super-jacobi", not jac, triples, jac[:5]),
        CheckReport("g0-gl-bijection", bij, len(g0), []),
        CheckReport("g0-gl-bracket", not hom, len(g0) ** 2, hom[:5]),
    ]
