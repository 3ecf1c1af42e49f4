"""Exact sparse linear algebra over Q.

Vectors are dicts ``index -> coefficient``.  Batch rank and kernel go
through sympy's DomainMatrix over QQ (gmpy2-backed); the incremental
:class:`Span` is kept here because closure loops need cheap one-vector
membership updates, which DomainMatrix does not offer.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vec = Dict[int, object]


def _q(c):
    if isinstance(c, Fraction):
        return QQ(c.numerator, c.denominator)
    return QQ(c)


def _from_q(c):
    num, den = int(c.numerator), int(c.denominator)
    return num if den == 1 else Fraction(num, den)


def add_into(acc: Vec, v: Vec, c=1) -> Vec:
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def lincomb(pairs: Iterable) -> Vec:
    acc: Vec = {}
    for c, v in pairs:
        if c:
            add_into(acc, v, c)
    return acc


def normalize(v: Vec) -> Vec:
    out = {}
    for k, c in v.items():
        if c:
            if isinstance(c, Fraction) and c.denominator == 1:
                c = c.numerator
            out[k] = c
    return out


def to_domain_matrix(rows: Sequence[Vec], ncols: int) -> DomainMatrix:
    dod = {}
    for i, r in enumerate(rows):
        d = {j: _q(c) for j, c in r.items() if c}
        if d:
            dod[i] = d
    return DomainMatrix.from_dod(dod, (len(rows), ncols), QQ)


def rank(rows: Sequence[Vec], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    if all(not r for r in rows):
        return 0
    return to_domain_matrix(rows, ncols).rank()


def kernel(columns: Sequence[Vec], nrows: int) -> List[Vec]:
    """Basis of {c : sum_j c_j columns[j] = 0}, as dicts over column indices."""
    ncols = len(columns)
    if ncols == 0:
        return []
    # build the matrix whose j-th column is columns[j]
    dod: Dict[int, Dict[int, object]] = {}
    for j, col in enumerate(columns):
        for i, c in col.items():
            if c:
                dod.setdefault(i, {})[j] = _q(c)
    if not dod:
        return [{j: 1} for j in range(ncols)]
    dm = DomainMatrix.from_dod(dod, (max(nrows, 1), ncols), QQ)
    ns = dm.nullspace().to_dod()
    return [{j: _from_q(c) for j, c in row.items()} for _, row in sorted(ns.items())]


class Span:
    """Incrementally maintained row-echelon basis of a subspace.

    Each stored row is normalized so its smallest index (the pivot) has
    coefficient 1."""

    __slots__ = ("rows", "originals")

    def __init__(self, vectors: Iterable[Vec] = ()):
        self.rows: Dict[int, Vec] = {}
        self.originals: List[Vec] = []
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        r = {k: c for k, c in v.items() if c}
        heap = [k for k in r if k in self.rows]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = r.get(k)
            if not c:
                continue
            row = self.rows[k]
            for j, x in row.items():
                y = r.get(j, 0) - c * x
                if y:
                    if j not in r and j in self.rows:
                        heapq.heappush(heap, j)
                    r[j] = y
                else:
                    r.pop(j, None)
        return r

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def add(self, v: Vec) -> Optional[Vec]:
        """Insert v; return the new echelon row when v was independent."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        c = r[p]
        if c != 1:
            inv = Fraction(1, 1) / c
            r = {k: _simp(x * inv) for k, x in r.items()}
        self.rows[p] = r
        self.originals.append(dict(v))
        return r

    def basis(self) -> List[Vec]:
        return [self.rows[p] for p in sorted(self.rows)]

    def reduced(self) -> Dict[int, Vec]:
        """Fully reduced rows: each pivot column is zero in every other row."""
        out: Dict[int, Vec] = {}
        for p in sorted(self.rows, reverse=True):
            r = dict(self.rows[p])
            for q in [k for k in r if k != p and k in out]:
                c = r.get(q)
                if c:
                    add_into(r, out[q], -c)
            out[p] = r
        return out

    def coordinates(self, v: Vec, reduced: Optional[Dict[int, Vec]] = None) -> Dict[int, object]:
        """Coordinates of v (assumed in the span) along the reduced rows, keyed by pivot."""
        red = reduced if reduced is not None else self.reduced()
        return {p: v[p] for p in red if v.get(p)}


def _simp(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def intersect_dim(a: Sequence[Vec], b: Sequence[Vec], ncols: int) -> int:
    return rank(a, ncols) + rank(b, ncols) - rank(list(a) + list(b), ncols)
