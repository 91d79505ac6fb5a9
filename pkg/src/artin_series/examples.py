"""The local ring ``k[y, z0, z1, ...]/(y^2, z_i^2, y*z_i)`` and its witnesses.

The maximal ideal ``P = (y, z0, z1, ...)`` is not SFT: for a finitely
generated proper ``J`` and any ``k`` there is ``f = z_s + ... + z_{s+k-1}``
in ``P`` with ``f^k = k! * z_s * ... * z_{s+k-1}`` outside ``J``.  In
``R[[X]]`` the element ``y`` kills all of ``P[[X]]`` but nothing with a unit
coefficient, so ``P[[X]] = (0 : y)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import List, Sequence, Tuple

from .artinian import AlgebraElement
from .errors import NotProper, UnsupportedPresentation
from .exactpoly import QQ, PolyRing, buchberger, ideal_membership, normal_form
from .exactpoly.fields import PrimeField
from .family import DirectedFamily, SubringHandle, example_ring_family
from .series import SeriesContext, SeriesElement


@lru_cache(maxsize=None)
def shared_example_family(field=QQ) -> DirectedFamily:
    """One family per base field, so windows are built once per process."""
    return example_ring_family(field)


class ExampleRingWindow:
    """The subring generated by ``y, z_0, ..., z_{s-1}``."""

    def __init__(self, s: int, field=QQ):
        if s < 0:
            raise ValueError("window size must be non-negative")
        self.s = s
        self.family = shared_example_family(field)
        self.handle = self.family.handle(range(s))
        self.algebra = self.handle.algebra

    @property
    def y(self) -> AlgebraElement:
        return self.algebra.gen("y")

    def z(self, i: int) -> AlgebraElement:
        return self.algebra.gen(f"z{i}")

    @property
    def maximal_ideal(self):
        (M,) = self.algebra.maximal_ideals()
        return M

    def check_local(self) -> bool:
        """Exactly one maximal ideal, generated by ``y`` and the ``z_i``."""
        Ms = self.algebra.maximal_ideals()
        if len(Ms) != 1:
            return False
        want = [self.y] + [self.z(i) for i in range(self.s)]
        span = Ms[0].span()
        other = self.algebra.ideal_span(want)
        return span.rank == other.rank and all(span.contains(v) for v in other.basis())

    def y_kills_maximal_ideal(self) -> bool:
        """``y * b = 0`` for every basis element ``b`` of ``P``."""
        y = self.y
        return all(not (y * b) for b in self.maximal_ideal_basis())

    def maximal_ideal_basis(self) -> List[AlgebraElement]:
        # P is spanned by the non-constant standard monomials
        return [self.algebra.basis_element(i) for i in range(1, self.algebra.dim)]


# ---------------------------------------------------------------------------
# SFT witnesses


@dataclass(frozen=True)
class SftWitness:
    k: int
    s: int
    f: str
    power: str
    coefficient: int
    product: str
    expansion_ok: bool
    outside_J: bool
    stable: bool
    windows: Tuple[int, int]

    @property
    def ok(self) -> bool:
        return self.expansion_ok and self.outside_J and self.stable

    def to_json(self):
        return {
            "k": self.k,
            "s": self.s,
            "f": self.f,
            "f^k": self.power,
            "coefficient": self.coefficient,
            "product": self.product,
            "expansion_ok": self.expansion_ok,
            "outside_J": self.outside_J,
            "stable": self.stable,
            "windows": list(self.windows),
        }


def _parse_ideal(J) -> List[str]:
    if isinstance(J, str):
        J = [p.strip() for p in J.split(",")]
    return [g for g in J if g and g.strip() not in ("0",)]


def sft_start(F: DirectedFamily, J: Sequence[str]) -> int:
    """One past the largest ``z`` index mentioned by ``J``'s generators.

    No product of ``z_t`` with ``t`` at or beyond this index can be a
    multiple of a generator, since none of them involves those variables.
    """
    idx = []
    for g in J:
        idx.extend(F.indices_in(g))
    return max(idx) + 1 if idx else 0


def _window_ring(F: DirectedFamily, size: int):
    """Polynomial ring of the window ``y, z_0..z_{size-1}`` and its relations.

    Membership questions are answered there directly, without enumerating
    the (exponentially large) standard-monomial basis.
    """
    names = list(F.base.vars) + [F.generator_name(i) for i in range(size)]
    ring = PolyRing(F.field, names)
    rels = [ring(r) for r in F.base.given]
    for i in range(size):
        rels.extend(ring(r) for r in F.generator(i)[1])
    G = buchberger(rels)
    return ring, G


def _in_ideal(ring, G, J: Sequence[str], poly) -> bool:
    return ideal_membership(poly, [ring(g) for g in J] + list(G.generators))


def sft_witness(J, k: int, field=QQ) -> SftWitness:
    """``f_k = z_s + ... + z_{s+k-1}`` with ``f_k^k = k! z_s...z_{s+k-1}`` outside ``J``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if isinstance(field, PrimeField) and field.p <= k:
        raise UnsupportedPresentation(
            f"k! vanishes in characteristic {field.p} for k = {k}; the witness is only built for k < p"
        )
    J = _parse_ideal(J)
    F = shared_example_family(field)
    s = sft_start(F, J)
    size = s + k
    ring, G = _window_ring(F, size)
    if J and _in_ideal(ring, G, J, ring.one):
        raise NotProper(f"J = ({', '.join(J)}) is the unit ideal")
    names = [f"z{t}" for t in range(s, s + k)]
    f = ring.parse(" + ".join(names))
    fk = ring.one
    for _ in range(k):
        fk = normal_form(fk * f, G)
    product = ring.parse("*".join(names))
    expansion_ok = fk == product * factorial(k)
    outside = not _in_ideal(ring, G, J, fk)
    big_ring, big_G = _window_ring(F, size + 3)
    outside_big = not _in_ideal(big_ring, big_G, J, fk.to_ring(big_ring))
    return SftWitness(
        k,
        s,
        str(f),
        str(fk),
        factorial(k),
        "*".join(names),
        expansion_ok,
        outside,
        outside_big == outside,
        (size, size + 3),
    )


def non_sft_scan(k_max: int, J, field=QQ) -> List[SftWitness]:
    return [sft_witness(J, k, field) for k in range(1, k_max + 1)]


# ---------------------------------------------------------------------------
# weak-Bourbaki failure in R[[X]]


@dataclass(frozen=True)
class WbReport:
    window: int
    trunc: int
    spanning_set: int
    annihilated: int
    samples: int
    nonzero_products: int
    examples: Tuple[Tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return self.annihilated == self.spanning_set and self.nonzero_products == self.samples

    def to_json(self):
        return {
            "window": self.window,
            "trunc": self.trunc,
            "spanning_set": self.spanning_set,
            "annihilated": self.annihilated,
            "samples": self.samples,
            "nonzero_products": self.nonzero_products,
            "examples": [{"h": h, "y*h": p} for h, p in self.examples],
            "annihilator_equals_P[[X]]": self.ok,
            "cited": "P[[X]] has infinite height, while minimal primes of (0) have height 0",
        }


def wb_failure_check(s: int, D: int, samples: int = 50, seed: int = 0,
                     series_var: str = "X") -> WbReport:
    """``y`` kills a spanning set of ``P[[X]]`` below ``D`` but no sampled unit-constant ``h``."""
    if s < 1:
        raise ValueError("window size must be at least 1")
    if D < 2:
        raise ValueError("truncation must be at least 2")
    W = ExampleRingWindow(s)
    ctx = SeriesContext(W.family, [series_var], D)
    h = W.handle
    y = ctx.const(W.y, h)
    spanning = [ctx.monomial(m, b, h) for m in ctx.monomials for b in W.maximal_ideal_basis()]
    killed = sum(1 for g in spanning if (y * g).is_zero())
    rng = random.Random(seed)
    A = W.algebra
    nonzero = 0
    shown = []
    for i in range(samples):
        g = ctx.random_element(rng, h, density=0.5)
        unit = A.scalar(rng.choice([1, -1, 2, -2, 3]))
        rest = A.random_element(rng, 0.4)
        # force the constant term to be a unit: nonzero scalar plus an element of P
        rest = rest - A.scalar(rest.vec.get(0, 0))
        hh = g - ctx.const(g.constant_term(), h) + ctx.const(unit + rest, h)
        p = y * hh
        if not p.is_zero():
            nonzero += 1
        if i < 3:
            shown.append((str(hh), str(p)))
    return WbReport(s, D, len(spanning), killed, samples, nonzero, tuple(shown))
