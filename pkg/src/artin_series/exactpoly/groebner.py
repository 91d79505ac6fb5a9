"""Division, Buchberger's algorithm and ideal membership (degrevlex)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..errors import AmbientMismatch
from .poly import (
    Polynomial,
    PolyRing,
    degrevlex_key,
    mono_div,
    mono_divides,
    mono_lcm,
)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis; ``generators`` are monic and sorted by leading term."""

    ring: PolyRing
    generators: Tuple[Polynomial, ...]
    order: str = "degrevlex"

    @property
    def leading_monomials(self):
        return [g.leading_monomial() for g in self.generators]

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def normal_form(f: Polynomial, G) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo the polynomials ``G``.

    When ``G`` is a Groebner basis the remainder is unique and vanishes
    exactly when ``f`` lies in the ideal.
    """
    gens = G.generators if isinstance(G, GroebnerBasis) else tuple(G)
    ring = G.ring if isinstance(G, GroebnerBasis) else f.ring
    if f.ring != ring:
        raise AmbientMismatch(f"{f.ring!r} vs {ring!r}")
    for g in gens:
        if g.ring != ring:
            raise AmbientMismatch(f"{g.ring!r} vs {ring!r}")
    leads = [(g.leading_monomial(), g.leading_coefficient(), g) for g in gens if g]
    p = dict(f.terms)
    rem = {}
    while p:
        m = max(p, key=degrevlex_key)
        c = p[m]
        for lm, lc, g in leads:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                coef = c / lc
                for gm, gc in g.terms.items():
                    t = tuple(a + b for a, b in zip(gm, q))
                    v = p.get(t, 0) - coef * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[m] = c
            del p[m]
    return Polynomial(ring, rem)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    mf, mg = f.leading_monomial(), g.leading_monomial()
    lcm = mono_lcm(mf, mg)
    return f.mul_term(mono_div(lcm, mf), f.ring.field.one / f.leading_coefficient()) - g.mul_term(
        mono_div(lcm, mg), g.ring.field.one / g.leading_coefficient()
    )


def _reduce_basis(ring, basis: List[Polynomial]) -> Tuple[Polynomial, ...]:
    basis = [b.monic() for b in basis if b]
    # drop generators whose leading monomial is divisible by another's
    minimal = []
    for i, g in enumerate(basis):
        lm = g.leading_monomial()
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            hm = h.leading_monomial()
            if mono_divides(hm, lm) and (hm != lm or j < i):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lm = g.leading_monomial()
        tail = Polynomial(ring, {m: c for m, c in g.terms.items() if m != lm})
        reduced.append(ring.monomial(lm) + normal_form(tail, others))
    reduced.sort(key=lambda p: degrevlex_key(p.leading_monomial()))
    return tuple(reduced)


def buchberger(gens: Sequence[Polynomial]) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if not gens:
        raise ValueError("buchberger needs at least one generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise AmbientMismatch(f"{g.ring!r} vs {ring!r}")
    basis = [g.monic() for g in gens if g]
    if not basis:
        return GroebnerBasis(ring, ())
    if any(g.is_constant() for g in basis):
        return GroebnerBasis(ring, (ring.one,))
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        i, j = pairs.pop(0)
        mi, mj = basis[i].leading_monomial(), basis[j].leading_monomial()
        lcm = mono_lcm(mi, mj)
        # product criterion: coprime leading monomials reduce to zero
        if all(a == 0 or b == 0 for a, b in zip(mi, mj)):
            continue
        # chain criterion: some k with lm_k | lcm whose pairs were already handled
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if mono_divides(basis[k].leading_monomial(), lcm):
                a, b = sorted((i, k))
                c, d = sorted((j, k))
                if (a, b) not in pairs and (c, d) not in pairs:
                    skip = True
                    break
        if skip:
            continue
        r = normal_form(s_polynomial(basis[i], basis[j]), basis)
        if r:
            r = r.monic()
            if r.is_constant():
                return GroebnerBasis(ring, (ring.one,))
            basis.append(r)
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))
    return GroebnerBasis(ring, _reduce_basis(ring, basis))


def ideal_membership(f: Polynomial, gens) -> bool:
    """True iff ``f`` lies in the ideal generated by ``gens``."""
    G = gens if isinstance(gens, GroebnerBasis) else buchberger(gens)
    if f.ring != G.ring:
        raise AmbientMismatch(f"{f.ring!r} vs {G.ring!r}")
    return normal_form(f, G).is_zero()


def is_groebner(G: GroebnerBasis) -> bool:
    """Check the S-polynomial criterion directly (used by tests)."""
    gens = G.generators
    for j in range(len(gens)):
        for i in range(j):
            if normal_form(s_polynomial(gens[i], gens[j]), gens):
                return False
    return True
