"""Truncated power series whose coefficients live in one subring of a family.

Every identity here is exact below the total-degree bound ``D`` of the
context; terms of degree ``>= D`` are dropped.  A series element carries a
:class:`SubringHandle` naming a subring that contains all its coefficients.
The handle is a witness, not necessarily the smallest such subring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .artinian import (
    AlgebraElement,
    ArtinianAlgebra,
    MaximalIdealDesc,
    PresentedAlgebra,
    ProductAlgebra,
    residue_field,
)
from .errors import (
    AmbientMismatch,
    ContextMismatch,
    IncompatibleIdeal,
    InternalSelfCheck,
    UnsupportedPresentation,
)
from .exactpoly import Echelon, PolyRing, kernel
from .exactpoly.parse import variables_in
from .family import DirectedFamily, SubringHandle, join

SeriesMonomial = Tuple[int, ...]


def series_monomials(n: int, D: int) -> List[SeriesMonomial]:
    """Exponent vectors of total degree < D, by degree and then lexicographically descending."""
    out = []
    for d in range(D):
        for combo in itertools.combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    # combinations_with_replacement already yields each degree block in lex-descending order
    return out


def monomial_str(names: Sequence[str], m: SeriesMonomial) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


class SeriesContext:
    """The truncated ring ``F[[X_1..X_n]] / (X)^D`` over a directed family."""

    def __init__(self, family: DirectedFamily, series_vars: Sequence[str], trunc: int):
        series_vars = tuple(series_vars)
        if trunc < 1:
            raise ValueError("truncation degree must be at least 1")
        if not series_vars:
            raise ValueError("need at least one series variable")
        if len(set(series_vars)) != len(series_vars):
            raise ValueError(f"duplicate series variables {series_vars}")
        self.family = family
        self.vars = series_vars
        self.n = len(series_vars)
        self.trunc = trunc
        self.field = family.field
        self.monomials = series_monomials(self.n, trunc)
        self.mono_index = {m: i for i, m in enumerate(self.monomials)}

    def __eq__(self, other):
        return (
            isinstance(other, SeriesContext)
            and other.family is self.family
            and other.vars == self.vars
            and other.trunc == self.trunc
        )

    def __hash__(self):
        return hash((id(self.family), self.vars, self.trunc))

    def __repr__(self):
        return f"SeriesContext({self.family.name}, {list(self.vars)}, D={self.trunc})"

    @property
    def monomial_count(self) -> int:
        return comb(self.n + self.trunc - 1, self.n)

    def with_trunc(self, D: int) -> "SeriesContext":
        return SeriesContext(self.family, self.vars, D)

    def check(self, other: "SeriesContext"):
        if other != self:
            raise ContextMismatch(f"{self!r} vs {other!r}")

    # constructors -----------------------------------------------------------
    def element(self, coeffs: Dict[SeriesMonomial, AlgebraElement], handle: Optional[SubringHandle] = None,
                no_single_subring: bool = False) -> "SeriesElement":
        if handle is None:
            handle = self.family.bottom
            for c in coeffs.values():
                handle = join(handle, self.family.handle_of(c.owner))
        return SeriesElement(self, handle, coeffs, no_single_subring)

    def zero(self, handle: Optional[SubringHandle] = None) -> "SeriesElement":
        return SeriesElement(self, handle or self.family.bottom, {})

    def one(self, handle: Optional[SubringHandle] = None) -> "SeriesElement":
        h = handle or self.family.bottom
        return self.const(h.algebra.one, h)

    def const(self, a: AlgebraElement, handle: Optional[SubringHandle] = None) -> "SeriesElement":
        h = handle or self.family.handle_of(a.owner)
        return SeriesElement(self, h, {(0,) * self.n: a})

    def monomial(self, m: SeriesMonomial, coeff: Optional[AlgebraElement] = None,
                 handle: Optional[SubringHandle] = None) -> "SeriesElement":
        h = handle or (self.family.handle_of(coeff.owner) if coeff is not None else self.family.bottom)
        c = coeff if coeff is not None else h.algebra.one
        return SeriesElement(self, h, {tuple(m): c})

    def var(self, name: str, handle: Optional[SubringHandle] = None) -> "SeriesElement":
        if name not in self.vars:
            raise AmbientMismatch(f"{name!r} is not a series variable of {self!r}")
        e = tuple(1 if v == name else 0 for v in self.vars)
        return self.monomial(e, handle=handle)

    def parse(self, text: str, handle: Optional[SubringHandle] = None) -> "SeriesElement":
        """Parse text such as ``y + z0*X + 2*X^2``.

        Names that are not series variables are coefficient-ring names: base
        variables, stream generators, or ``e0, e1, ...`` for the factor
        idempotents of a product base.
        """
        names = variables_in(text)
        coeff_names = [v for v in names if v not in self.vars]
        F = self.family
        if handle is None:
            handle = F.handle(F.indices_of_names(coeff_names))
        assign = F.coefficient_assignment(handle)
        missing = [v for v in coeff_names if v not in assign]
        if missing:
            raise AmbientMismatch(f"unknown names {missing} for {handle!r}")
        ring = PolyRing(self.field, coeff_names + list(self.vars))
        p = ring.parse(text)
        k = len(coeff_names)
        A = handle.algebra
        coeffs: Dict[SeriesMonomial, AlgebraElement] = {}
        for mono, c in p.terms.items():
            s = mono[k:]
            term = A.scalar(c)
            for name, e in zip(coeff_names, mono[:k]):
                if e:
                    term = term * (assign[name] ** e)
            coeffs[s] = coeffs.get(s, A.zero) + term
        return SeriesElement(self, handle, coeffs)

    def random_element(self, rng, handle: SubringHandle, density: float = 0.4, bound: int = 2,
                       max_degree: Optional[int] = None) -> "SeriesElement":
        A = handle.algebra
        top = self.trunc if max_degree is None else min(self.trunc, max_degree + 1)
        coeffs = {}
        for m in self.monomials:
            if sum(m) < top and rng.random() < density:
                c = A.random_element(rng, 0.6, bound)
                if c:
                    coeffs[m] = c
        return SeriesElement(self, handle, coeffs)


class SeriesElement:
    """Truncated series with coefficients in ``handle.algebra``."""

    __slots__ = ("ctx", "handle", "coeffs", "no_single_subring")

    def __init__(self, ctx: SeriesContext, handle: SubringHandle, coeffs: Dict[SeriesMonomial, AlgebraElement],
                 no_single_subring: bool = False):
        if handle.family is not ctx.family:
            raise ContextMismatch("handle belongs to a different family than the context")
        A = handle.algebra
        clean = {}
        for m, c in coeffs.items():
            m = tuple(m)
            if len(m) != ctx.n:
                raise AmbientMismatch(f"monomial {m} has wrong length for {ctx!r}")
            if sum(m) >= ctx.trunc or not c:
                continue
            if c.owner is not A:
                c = ctx.family.embed(c, handle)
            clean[m] = c
        self.ctx = ctx
        self.handle = handle
        self.coeffs = clean
        self.no_single_subring = no_single_subring

    @property
    def algebra(self) -> ArtinianAlgebra:
        return self.handle.algebra

    def lift(self, handle: SubringHandle) -> "SeriesElement":
        if handle == self.handle:
            return self
        if not self.handle <= handle:
            raise AmbientMismatch(f"{self.handle!r} is not contained in {handle!r}")
        F = self.ctx.family
        return SeriesElement(self.ctx, handle, {m: F.embed(c, handle) for m, c in self.coeffs.items()})

    def _coerce(self, other):
        if isinstance(other, SeriesElement):
            self.ctx.check(other.ctx)
            return other
        if isinstance(other, AlgebraElement):
            return self.ctx.const(other)
        return self.ctx.const(self.algebra.scalar(other), self.handle)

    def _common(self, other):
        other = self._coerce(other)
        h = join(self.handle, other.handle)
        return self.lift(h), other.lift(h), h

    def __add__(self, other):
        a, b, h = self._common(other)
        out = dict(a.coeffs)
        for m, c in b.coeffs.items():
            out[m] = out[m] + c if m in out else c
        return SeriesElement(self.ctx, h, out)

    __radd__ = __add__

    def __neg__(self):
        return SeriesElement(self.ctx, self.handle, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        a, b, h = self._common(other)
        D = self.ctx.trunc
        out: Dict[SeriesMonomial, AlgebraElement] = {}
        for m1, c1 in a.coeffs.items():
            d1 = sum(m1)
            for m2, c2 in b.coeffs.items():
                if d1 + sum(m2) >= D:
                    continue
                m = tuple(x + y for x, y in zip(m1, m2))
                p = c1 * c2
                out[m] = out[m] + p if m in out else p
        return SeriesElement(self.ctx, h, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a series")
        result = self.ctx.one(self.handle)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, SeriesElement):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        if other.ctx != self.ctx:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.ctx, frozenset(self.coeffs)))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def constant_term(self) -> AlgebraElement:
        return self.coeffs.get((0,) * self.ctx.n, self.algebra.zero)

    def coefficient(self, m: SeriesMonomial) -> AlgebraElement:
        return self.coeffs.get(tuple(m), self.algebra.zero)

    def degree(self) -> int:
        return max((sum(m) for m in self.coeffs), default=-1)

    def order(self) -> int:
        """Lowest total degree of a nonzero term; ``trunc`` for the zero series."""
        return min((sum(m) for m in self.coeffs), default=self.ctx.trunc)

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def truncate(self, D: int) -> "SeriesElement":
        ctx = self.ctx.with_trunc(D) if D != self.ctx.trunc else self.ctx
        return SeriesElement(ctx, self.handle, self.coeffs, self.no_single_subring)

    def minimize_subring(self) -> "SeriesElement":
        """Re-home the element in the smallest window its coefficients mention."""
        A = self.algebra
        if not isinstance(A, PresentedAlgebra):
            return self
        F = self.ctx.family
        names = set()
        for c in self.coeffs.values():
            for i in c.to_poly().support_variables():
                names.add(A.vars[i])
        h = F.handle(F.indices_of_names(sorted(names)))
        if h == self.handle:
            return self
        B = h.algebra
        return SeriesElement(self.ctx, h, {m: B.from_poly(c.to_poly()) for m, c in self.coeffs.items()},
                             self.no_single_subring)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, key=lambda m: self.ctx.mono_index[m]):
            a = self.coeffs[m]
            mono = monomial_str(self.ctx.vars, m)
            if a.vec == a.owner.one_vector():
                parts.append(mono)
                continue
            c = str(a)
            if mono == "1":
                parts.append(c)
            else:
                simple = " " not in c or c.startswith("(")
                parts.append(f"{c}*{mono}" if simple else f"({c})*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"SeriesElement({self}; {self.handle!r})"

    def to_json(self):
        return {
            "window": list(self.handle.idx),
            "terms": {monomial_str(self.ctx.vars, m): self.coeffs[m].to_json()
                      for m in sorted(self.coeffs, key=lambda m: self.ctx.mono_index[m])},
        }


# ---------------------------------------------------------------------------
# truncated linear algebra


class TruncatedSpace:
    """``R_h[X]/(X)^D`` as a vector space over the base field.

    Coordinate ``mono_index * dim R_h + basis_index`` holds the coefficient of
    ``basis_element * X^mono``.
    """

    def __init__(self, ctx: SeriesContext, handle: SubringHandle):
        self.ctx = ctx
        self.handle = handle
        self.algebra = handle.algebra
        self.adim = self.algebra.dim
        self.dim = self.adim * len(ctx.monomials)

    def vector(self, f: SeriesElement) -> dict:
        f = f.lift(self.handle)
        out = {}
        for m, c in f.coeffs.items():
            base = self.ctx.mono_index[m] * self.adim
            for i, x in c.vec.items():
                out[base + i] = x
        return out

    def element(self, vec: dict) -> SeriesElement:
        coeffs: Dict[SeriesMonomial, dict] = {}
        for k, x in vec.items():
            mi, bi = divmod(k, self.adim)
            coeffs.setdefault(self.ctx.monomials[mi], {})[bi] = x
        A = self.algebra
        return SeriesElement(self.ctx, self.handle, {m: AlgebraElement(A, v) for m, v in coeffs.items()})

    def basis_element(self, k: int) -> SeriesElement:
        mi, bi = divmod(k, self.adim)
        return SeriesElement(self.ctx, self.handle, {self.ctx.monomials[mi]: self.algebra.basis_element(bi)})

    def degree_of(self, k: int) -> int:
        return sum(self.ctx.monomials[k // self.adim])

    def coordinates_below(self, e: int) -> List[int]:
        """Coordinates whose series monomial has total degree < e."""
        out = []
        for mi, m in enumerate(self.ctx.monomials):
            if sum(m) < e:
                out.extend(range(mi * self.adim, (mi + 1) * self.adim))
        return out

    def multiply(self, f: SeriesElement, k: int) -> dict:
        return self.vector(f * self.basis_element(k))

    def ideal_span(self, gens: Sequence[SeriesElement], track: bool = False) -> Echelon:
        """Span of the truncated ideal ``(gens) + (X)^D``, modulo ``(X)^D``."""
        E = Echelon(self.ctx.field, track=track)
        for gi, g in enumerate(gens):
            g = g.lift(self.handle)
            # multiples by basis * X^m with deg m < D - order(g) suffice
            top = self.ctx.trunc - g.order()
            for k in self.coordinates_below(top):
                E.insert(self.multiply(g, k), tag=(gi, k))
        return E


# ---------------------------------------------------------------------------
# extension ideals


def _contraction(N: MaximalIdealDesc, small: SubringHandle, big: SubringHandle) -> Echelon:
    """``N ∩ R_small`` as a subspace of ``R_small`` (N an ideal of ``R_big``)."""
    F = small.family
    A = small.algebra
    span = N.span()
    cols = [span.reduce(F.embed(A.basis_element(i), big).vec) for i in range(A.dim)]
    return Echelon(A.field) if not cols else _echelon_of(A.field, kernel(A.field, cols))


def _echelon_of(field, vectors) -> Echelon:
    E = Echelon(field)
    for v in vectors:
        E.insert(v)
    return E


def _same_space(a: Echelon, b: Echelon) -> bool:
    return a.rank == b.rank and all(a.contains(r) for r in b.basis())


class ExtIdealDesc:
    """The extension ``MS`` of a maximal ideal ``M`` of ``R``, seen through windows.

    ``M`` is given on one window ``R_alpha``; its restriction to any other
    window ``R_beta`` is computed on demand: by contraction when
    ``beta <= alpha``, otherwise as the unique maximal ideal of the join
    contracting to the known one.
    """

    def __init__(self, ctx: SeriesContext, window: SubringHandle, M: MaximalIdealDesc):
        if M.owner is not window.algebra:
            raise IncompatibleIdeal("maximal ideal does not belong to the window's algebra")
        self.ctx = ctx
        self.window = window
        self.M = M
        self._restrictions: Dict[Tuple[int, ...], MaximalIdealDesc] = {window.idx: M}
        self.cross_checked_with: Optional[SubringHandle] = None

    def __repr__(self):
        return f"ExtIdeal({self.M!r} on {self.window!r})"

    def restriction(self, h: SubringHandle) -> MaximalIdealDesc:
        got = self._restrictions.get(h.idx)
        if got is not None:
            return got
        if h <= self.window:
            got = self._contract(self.M, self.window, h)
        else:
            g = join(h, self.window)
            up = self._extend(g)
            got = up if g == h else self._contract(up, g, h)
        self._restrictions.setdefault(h.idx, got)
        return self._restrictions[h.idx]

    def _contract(self, N: MaximalIdealDesc, big: SubringHandle, small: SubringHandle) -> MaximalIdealDesc:
        target = _contraction(N, small, big)
        matches = [P for P in small.algebra.maximal_ideals() if _same_space(P.span(), target)]
        if len(matches) != 1:
            raise IncompatibleIdeal(f"contraction to {small!r} is not a listed maximal ideal")
        return matches[0]

    def _extend(self, g: SubringHandle) -> MaximalIdealDesc:
        want = self.M.span()
        matches = [P for P in g.algebra.maximal_ideals()
                   if _same_space(_contraction(P, self.window, g), want)]
        if len(matches) != 1:
            raise IncompatibleIdeal(
                f"{len(matches)} maximal ideals of {g!r} lie over {self.M!r}; restriction is not unique"
            )
        return matches[0]

    def check_compatible(self, beta: SubringHandle, gamma: SubringHandle) -> bool:
        """``M_beta == M_gamma ∩ R_beta`` for ``beta <= gamma``."""
        if not beta <= gamma:
            raise ValueError("compatibility is only defined for nested windows")
        Mb = self.restriction(beta)
        Mg = self.restriction(gamma)
        return _same_space(Mb.span(), _contraction(Mg, beta, gamma))

    def contains_coefficient(self, a: AlgebraElement, h: SubringHandle) -> bool:
        return self.restriction(h).contains(a)

    def residue_degree(self, h: Optional[SubringHandle] = None) -> int:
        h = h or self.window
        return self.restriction(h).quotient_dim

    def to_json(self):
        return {"window": list(self.window.idx), "maximal_ideal": self.M.to_json()}


def ext_membership(f: SeriesElement, E: ExtIdealDesc) -> bool:
    """``f`` lies in ``MS`` iff every coefficient lies in the restriction of ``M``."""
    E.ctx.check(f.ctx)
    M = E.restriction(f.handle)
    return all(M.contains(c) for c in f.coeffs.values())


# ---------------------------------------------------------------------------
# residue family and residue map


class ResidueFamily(DirectedFamily):
    """Windows ``k_alpha = R_alpha / M_alpha`` of the residue fields of ``E``."""

    def __init__(self, E: ExtIdealDesc):
        self.ext = E
        self.parent = E.ctx.family
        self.base = None
        self.stream = self.parent.stream
        self.name = f"residue({self.parent.name})"
        self.field = self.parent.field
        self._residues = {}
        # share name bookkeeping with the parent family
        self._produced = self.parent._produced
        self._deps = self.parent._deps
        self._names = self.parent._names
        self.base = self.subring(())

    def residue(self, idx) -> "object":
        key = self.closure(idx)
        r = self._residues.get(key)
        if r is None:
            h = self.parent.handle(key)
            r = residue_field(h.algebra, self.ext.restriction(h))
            r = self._residues.setdefault(key, r)
        return r

    def subring(self, idx=()) -> ArtinianAlgebra:
        return self.residue(idx).field

    def embed(self, a: AlgebraElement, target: SubringHandle) -> AlgebraElement:
        B = target.algebra
        if a.owner is B:
            return a
        if isinstance(B, PresentedAlgebra) and isinstance(a.owner, PresentedAlgebra):
            return B.from_poly(a.to_poly())
        raise UnsupportedPresentation("cannot embed between these residue fields")

    def handle_of(self, A: ArtinianAlgebra) -> SubringHandle:
        for key, r in self._residues.items():
            if r.field is A:
                return SubringHandle(self, key)
        raise AmbientMismatch(f"{A!r} is not a residue window of {self!r}")


def residue_context(E: ExtIdealDesc) -> SeriesContext:
    ctx = E.ctx
    cached = getattr(E, "_residue_ctx", None)
    if cached is None:
        cached = SeriesContext(ResidueFamily(E), ctx.vars, ctx.trunc)
        E._residue_ctx = cached
    return cached


def residue_map(f: SeriesElement, E: ExtIdealDesc) -> SeriesElement:
    """Apply ``R_alpha -> k_alpha`` to every coefficient."""
    E.ctx.check(f.ctx)
    rctx = residue_context(E)
    RF = rctx.family
    key = f.handle.idx
    r = RF.residue(key)
    h = SubringHandle(RF, RF.closure(key))
    return SeriesElement(rctx, h, {m: r.project(c) for m, c in f.coeffs.items()})


# ---------------------------------------------------------------------------
# minimal primes and the quotient by MS


def _larger_window(F: DirectedFamily, window: SubringHandle) -> Optional[SubringHandle]:
    if F.stream.finite and F.stream.length is not None:
        free = [i for i in range(F.stream.length) if i not in window.idx]
        return F.handle(window.idx + (free[0],)) if free else None
    nxt = max(window.idx, default=-1) + 1
    return F.handle(window.idx + (nxt,))


def minimal_primes(ctx: SeriesContext, window: Optional[SubringHandle] = None) -> List[ExtIdealDesc]:
    """One extension ideal ``MS`` per maximal ideal ``M`` seen in ``window``.

    The list is cross-checked against one larger window: each ``M`` must have
    exactly one maximal ideal above it there, and the counts must agree.
    """
    F = ctx.family
    window = window or F.bottom
    A = window.algebra
    out = [ExtIdealDesc(ctx, window, M) for M in A.maximal_ideals()]
    bigger = _larger_window(F, window)
    if bigger is not None:
        try:
            bigger_count = len(bigger.algebra.maximal_ideals())
        except UnsupportedPresentation:
            # the larger window exceeds a documented presentation limit
            bigger = None
        else:
            if bigger_count != len(out):
                raise IncompatibleIdeal(f"maximal ideals of {window!r} and {bigger!r} do not correspond")
    for E in out:
        if bigger is not None:
            E.restriction(bigger)
            if not E.check_compatible(window, bigger):
                raise IncompatibleIdeal(f"{E!r} is not compatible with {bigger!r}")
        E.cross_checked_with = bigger
    return out


@dataclass(frozen=True)
class QuotientPresentation:
    """``S/MS`` at truncation as series over the residue fields, with a rank count."""

    residue_ctx: SeriesContext
    window: Tuple[int, ...]
    residue_degree: int
    monomial_count: int
    expected_rank: int
    rank: int
    kernel_dim: int
    kernel_in_ideal: bool

    @property
    def holds(self) -> bool:
        return self.rank == self.expected_rank and self.kernel_in_ideal

    def to_json(self):
        return {
            "window": list(self.window),
            "residue_degree": self.residue_degree,
            "monomials": self.monomial_count,
            "expected": self.expected_rank,
            "rank": self.rank,
            "kernel_dim": self.kernel_dim,
            "kernel_in_ideal": self.kernel_in_ideal,
            "holds": self.holds,
        }


def quotient_presentation(ctx: SeriesContext, E: ExtIdealDesc,
                          window: Optional[SubringHandle] = None) -> QuotientPresentation:
    """Realise ``S/MS`` below degree D and check the dimension count.

    The residue map on ``R_beta[X]/(X)^D`` must have rank
    ``[k_beta : k0] * #monomials`` and its kernel must be exactly the
    coefficientwise extension of ``M_beta``.
    """
    ctx.check(E.ctx)
    window = window or E.window
    rctx = residue_context(E)
    V = TruncatedSpace(ctx, window)
    M = E.restriction(window)
    RF = rctx.family
    r = RF.residue(window.idx)
    rh = SubringHandle(RF, RF.closure(window.idx))
    W = TruncatedSpace(rctx, rh)
    images = []
    for k in range(V.dim):
        f = V.basis_element(k)
        images.append(W.vector(residue_map(f, E)))
    K = kernel(ctx.field, images)
    rank = V.dim - len(K)
    in_ideal = all(ext_membership(V.element(v), E) for v in K)
    kdim = M.owner.dim - M.quotient_dim
    if len(K) != kdim * ctx.monomial_count:
        in_ideal = False
    return QuotientPresentation(
        rctx, window.idx, r.degree, ctx.monomial_count, r.degree * ctx.monomial_count, rank, len(K), in_ideal
    )


# ---------------------------------------------------------------------------
# elements of R[[X]] with no single coefficient subring


@dataclass(frozen=True)
class UnboundedTruncation:
    trunc: int
    window: Tuple[int, ...]
    element: SeriesElement


def unbounded_series(F: DirectedFamily, series_var: str, D: int) -> List[UnboundedTruncation]:
    """Truncations of ``sum_i g_i X^i`` (``g_i`` the i-th stream generator).

    Each truncation needs every generator below its degree, so the windows
    grow strictly with D: no single subring holds all coefficients.
    """
    if F.stream.finite:
        raise UnsupportedPresentation("needs an unbounded generator stream")
    out = []
    for d in range(1, D + 1):
        ctx = SeriesContext(F, [series_var], d)
        h = F.handle(range(d))
        A = h.algebra
        coeffs = {(i,): A.gen(F.generator_name(i)) for i in range(d)}
        f = SeriesElement(ctx, h, coeffs, no_single_subring=True).minimize_subring()
        out.append(UnboundedTruncation(d, f.handle.idx, f))
    return out
