"""Independent reference implementations used only by the tests.

Nothing here imports the library's linear algebra or Groebner code.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, FrozenSet, List, Sequence, Tuple

Mono = Tuple[int, ...]
Poly = Dict[Mono, Fraction]


def monomials_upto(n: int, d: int) -> List[Mono]:
    return [m for m in itertools.product(range(d + 1), repeat=n) if sum(m) <= d]


def poly_mul_mono(p: Poly, m: Mono) -> Poly:
    return {tuple(a + b for a, b in zip(k, m)): c for k, c in p.items()}


def in_span(vectors: List[Poly], target: Poly) -> bool:
    """Plain Gaussian elimination over Fraction."""
    rows: List[Tuple[Mono, Poly]] = []
    for v in vectors:
        v = dict(v)
        for piv, r in rows:
            if piv in v:
                c = v[piv]
                for k, x in r.items():
                    v[k] = v.get(k, 0) - c * x
                v = {k: x for k, x in v.items() if x}
        if v:
            piv = max(v)
            inv = 1 / Fraction(v[piv])
            r = {k: x * inv for k, x in v.items()}
            new_rows = []
            for p2, r2 in rows:
                if piv in r2:
                    c = r2[piv]
                    r2 = {k: r2.get(k, 0) - c * r.get(k, 0) for k in set(r2) | set(r)}
                    r2 = {k: x for k, x in r2.items() if x}
                new_rows.append((p2, r2))
            rows = new_rows + [(piv, r)]
    t = dict(target)
    for piv, r in rows:
        if piv in t:
            c = t[piv]
            for k, x in r.items():
                t[k] = t.get(k, 0) - c * x
            t = {k: x for k, x in t.items() if x}
    return not t


def brute_membership(f: Poly, gens: Sequence[Poly], n: int, bound: int) -> bool:
    """``f`` in the span of ``m * g`` over all monomials with total degree at most ``bound``."""
    vecs = []
    for g in gens:
        if not g:
            continue
        dg = max(sum(k) for k in g)
        for m in monomials_upto(n, max(bound - dg, -1)) if bound >= dg else []:
            vecs.append(poly_mul_mono(g, m))
    return in_span(vecs, f)


def monomial_associated_primes(gens: Sequence[Mono], n: int) -> set:
    """Associated primes of a monomial ideal via irreducible decomposition.

    ``I`` is the intersection of ``(x_i^{a_i} : i in S)`` over the
    "staircase corners"; the radicals of these irreducible components are
    exactly the associated primes.  Components are found by splitting on
    one generator at a time: ``(I, m1*m2) = (I, m1) cap (I, m2)`` when
    ``m1, m2`` are coprime.
    """
    def decompose(gs: FrozenSet[Mono]) -> List[FrozenSet[Mono]]:
        for g in gs:
            support = [i for i in range(n) if g[i]]
            if len(support) > 1:
                i = support[0]
                a = tuple(g[i] if j == i else 0 for j in range(n))
                b = tuple(0 if j == i else g[j] for j in range(n))
                rest = gs - {g}
                return decompose(rest | {a}) + decompose(rest | {b})
        return [gs]

    def minimalize(gs):
        return frozenset(g for g in gs if not any(h != g and all(x <= y for x, y in zip(h, g)) for h in gs))

    comps = {minimalize(c) for c in decompose(frozenset(gens))}
    # drop redundant irreducible components: J1 contains J2 means J2 is not needed
    def contains(big, small):
        return all(any(all(x <= y for x, y in zip(h, g)) for h in big) for g in small)

    irredundant = [c for c in comps if not any(o != c and contains(c, o) for o in comps)]
    return {frozenset(next(i for i in range(n) if g[i]) for g in c) for c in irredundant}


def brute_height_generated(gens: Sequence[Mono], n: int) -> bool:
    """Minimal generator count equals the smallest variable set meeting every generator."""
    gs = set(gens)
    minimal = [g for g in gs if not any(h != g and all(x <= y for x, y in zip(h, g)) for h in gs)]
    cover = min(r for r in range(n + 1) for S in itertools.combinations(range(n), r)
                if all(any(g[i] for i in S) for g in minimal))
    return len(minimal) == cover
