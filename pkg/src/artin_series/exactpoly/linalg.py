"""Exact sparse linear algebra over a field.

Vectors are ``dict[int, coeff]`` with no zero entries.  :class:`Echelon`
maintains an incrementally built row-echelon basis of a subspace and can
optionally track how every stored row was combined from the inserted
vectors, which is how kernels and explicit solutions are recovered.
"""

from __future__ import annotations

import heapq
from typing import Dict, Hashable, Iterable, List, Optional, Tuple

Vector = Dict[int, object]


def vec_add(u: Vector, v: Vector, scale=1) -> Vector:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, 0) + scale * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_scale(v: Vector, c) -> Vector:
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


class Echelon:
    """Row-echelon basis; each row is normalised to have pivot entry 1.

    The pivot of a row is its smallest column index, and no row has a nonzero
    entry in the pivot column of an earlier row.
    """

    def __init__(self, field, track: bool = False):
        self.field = field
        self.track = track
        self.rows: Dict[int, Vector] = {}
        self.combos: Dict[int, Dict[Hashable, object]] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self):
        return set(self.rows)

    def _reduce(self, v: Vector, combo: Optional[dict]):
        v = dict(v)
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        rows = self.rows
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            x = v.get(c)
            if not x or c not in rows:
                continue
            row = rows[c]
            for k, y in row.items():
                if k == c:
                    continue
                z = v.get(k, 0) - x * y
                if z:
                    if k not in v:
                        heapq.heappush(heap, k)
                    v[k] = z
                else:
                    v.pop(k, None)
            del v[c]
            if combo is not None:
                for tag, y in self.combos[c].items():
                    z = combo.get(tag, 0) - x * y
                    if z:
                        combo[tag] = z
                    else:
                        combo.pop(tag, None)
        return v, combo

    def reduce(self, v: Vector) -> Vector:
        """Remainder of ``v`` modulo the stored subspace (zero iff ``v`` is in it)."""
        return self._reduce(v, None)[0]

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def insert(self, v: Vector, tag: Hashable = None):
        """Add ``v`` to the spanning set.

        Returns ``None`` when the rank grows.  When ``v`` is already in the
        span and tracking is on, returns the dependency as a dict
        ``tag -> coeff`` whose combination of inserted vectors is zero;
        without tracking returns ``{}``.
        """
        combo = {tag: self.field.one} if self.track else None
        r, combo = self._reduce(v, combo)
        if not r:
            return combo if self.track else {}
        p = min(r)
        inv = self.field.one / r[p]
        r = {k: x * inv for k, x in r.items()}
        # keep rows free of the new pivot column
        for q, row in self.rows.items():
            x = row.get(p)
            if x:
                for k, y in r.items():
                    z = row.get(k, 0) - x * y
                    if z:
                        row[k] = z
                    else:
                        row.pop(k, None)
                if self.track:
                    cq = self.combos[q]
                    for t, y in combo.items():
                        z = cq.get(t, 0) - x * y * inv
                        if z:
                            cq[t] = z
                        else:
                            cq.pop(t, None)
        self.rows[p] = r
        if self.track:
            self.combos[p] = {t: y * inv for t, y in combo.items()}
        return None

    def express(self, v: Vector):
        """Return ``(remainder, combo)`` with ``v - remainder = sum combo[t] * input[t]``."""
        if not self.track:
            raise ValueError("express() needs a tracking Echelon")
        r, combo = self._reduce(v, {})
        return r, {t: -c for t, c in combo.items()}

    def basis(self) -> List[Vector]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]


def span(field, vectors: Iterable[Vector]) -> Echelon:
    E = Echelon(field)
    for v in vectors:
        E.insert(v)
    return E


def rank(field, vectors: Iterable[Vector]) -> int:
    return span(field, vectors).rank


def kernel(field, columns: List[Vector]) -> List[Dict[int, object]]:
    """Basis of ``{x : sum_j x_j * columns[j] = 0}`` as sparse dicts over column indices."""
    E = Echelon(field, track=True)
    out = []
    for j, col in enumerate(columns):
        dep = E.insert(col, tag=j)
        if dep is not None:
            out.append(dep)
    return out


def solve(field, columns: List[Vector], target: Vector) -> Optional[Dict[int, object]]:
    """Some ``x`` with ``sum_j x_j * columns[j] = target``, or ``None``."""
    E = Echelon(field, track=True)
    for j, col in enumerate(columns):
        E.insert(col, tag=j)
    r, combo = E.express(target)
    if r:
        return None
    return combo


def dense(v: Vector, n: int, zero) -> Tuple:
    return tuple(v.get(i, zero) for i in range(n))


def sparse(coords) -> Vector:
    return {i: c for i, c in enumerate(coords) if c}
