"""Finitely generated ideals of the truncated series ring.

Everything is decided by exact linear algebra on ``R_h[X]/(X)^D`` for a
window ``h`` holding all coefficients.  "Regular at truncation D" means:
multiplication by ``f`` is injective from ``S_e/(J + (X)^e)`` into
``S_D/(J + (X)^D)`` where ``e = D - deg f``.  That is necessary for
regularity in the full ring; for monomial data of degree at most ``D/2`` the
witnesses of non-regularity always live below degree ``e``, so the test is
exact there.

Heights and associated primes are only computed on the *monomial slice*:
generators ``c * X^m`` where, on every component ``MS``, the coefficient is
either zero or a unit.  There ``S/MS`` is a power series ring over a field,
and the image of the ideal is a monomial ideal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .artinian import AlgebraElement, MaximalIdealDesc, ProductAlgebra, is_zero_divisor
from .errors import (
    ContextMismatch,
    InternalSelfCheck,
    NotHeightGenerated,
    NotMonomial,
    NotSupportedSlice,
    SearchExhausted,
    UnitGenerator,
    UnsupportedPresentation,
)
from .exactpoly import Echelon
from .family import SubringHandle, join
from .series import (
    ExtIdealDesc,
    SeriesContext,
    SeriesElement,
    TruncatedSpace,
    ext_membership,
    minimal_primes,
    monomial_str,
    residue_context,
    residue_map,
)

# exhaustive vertex-cover search is limited to this many series variables
MAX_COVER_VARS = 12


class FgIdeal:
    """``(f_1, ..., f_t) S`` for series elements sharing one context."""

    def __init__(self, ctx: SeriesContext, gens: Sequence[SeriesElement] = ()):
        gens = tuple(gens)
        for g in gens:
            ctx.check(g.ctx)
        self.ctx = ctx
        self.gens = gens

    @classmethod
    def parse(cls, ctx: SeriesContext, texts: Sequence[str], handle: Optional[SubringHandle] = None) -> "FgIdeal":
        return cls(ctx, [ctx.parse(t, handle) for t in texts])

    @property
    def window(self) -> SubringHandle:
        h = self.ctx.family.bottom
        for g in self.gens:
            h = join(h, g.handle)
        return h

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def to_json(self):
        return [str(g) for g in self.gens]


# ---------------------------------------------------------------------------
# linear algebra on the truncated ring


class _Space(TruncatedSpace):
    """Truncated space with cached lifts and a fast multiply by basis elements."""

    def __init__(self, ctx, handle):
        super().__init__(ctx, handle)
        self._lifted = {}

    def lifted(self, f: SeriesElement) -> SeriesElement:
        key = id(f)
        got = self._lifted.get(key)
        if got is None or got[0] is not f:
            got = (f, f.lift(self.handle))
            self._lifted[key] = got
        return got[1]

    def multiply(self, f, k):
        f = self.lifted(f)
        mi, bi = divmod(k, self.adim)
        m = self.ctx.monomials[mi]
        dm = sum(m)
        D = self.ctx.trunc
        bp = self.algebra.basis_product
        idx = self.ctx.mono_index
        out = {}
        for m1, a in f.coeffs.items():
            if sum(m1) + dm >= D:
                continue
            base = idx[tuple(x + y for x, y in zip(m1, m))] * self.adim
            for i, x in a.vec.items():
                for j, y in bp(i, bi).items():
                    key = base + j
                    v = out.get(key, 0) + x * y
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        return out

    def ideal_span(self, gens, track=False):
        E = Echelon(self.ctx.field, track=track)
        for gi, g in enumerate(gens):
            top = self.ctx.trunc - g.order()
            for k in self.coordinates_below(top):
                E.insert(self.multiply(g, k), tag=(gi, k))
        return E

    def project_below(self, E: Echelon, e: int) -> Echelon:
        """Image of the subspace under truncation to degree < e."""
        keep = set(self.coordinates_below(e))
        P = Echelon(self.ctx.field)
        for row in E.basis():
            P.insert({k: x for k, x in row.items() if k in keep})
        return P


def _space_for(ctx: SeriesContext, elements: Sequence[SeriesElement], extra: Optional[SubringHandle] = None) -> _Space:
    h = extra or ctx.family.bottom
    for f in elements:
        h = join(h, f.handle)
    return _Space(ctx, h)


def truncated_membership(f: SeriesElement, I: FgIdeal) -> bool:
    """``f`` in ``I + (X)^D``, by a span computation on the truncated ring."""
    I.ctx.check(f.ctx)
    V = _space_for(I.ctx, list(I.gens) + [f])
    return V.ideal_span(I.gens).contains(V.vector(f))


def ideal_contains(I: FgIdeal, J: FgIdeal) -> bool:
    """Every generator of ``J`` lies in ``I`` at truncation."""
    I.ctx.check(J.ctx)
    V = _space_for(I.ctx, list(I.gens) + list(J.gens))
    span = V.ideal_span(I.gens)
    return all(span.contains(V.vector(g)) for g in J.gens)


# ---------------------------------------------------------------------------
# regular sequences


@dataclass(frozen=True)
class RegularStep:
    index: int
    element: SeriesElement
    regular: bool
    domain_degree: int
    domain_dim: int
    witness: Optional[SeriesElement] = None

    def to_json(self):
        out = {
            "step": self.index,
            "element": str(self.element),
            "regular": self.regular,
            "checked_below_degree": self.domain_degree,
            "domain_dim": self.domain_dim,
        }
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out


@dataclass(frozen=True)
class RegularSequenceReport:
    sequence: Tuple[SeriesElement, ...]
    certified_to_degree: int
    steps: Tuple[RegularStep, ...]

    @property
    def regular(self) -> bool:
        return all(s.regular for s in self.steps) and len(self.steps) == len(self.sequence)

    @property
    def length(self) -> int:
        """Number of certified steps."""
        n = 0
        for s in self.steps:
            if not s.regular:
                break
            n += 1
        return n

    def __bool__(self):
        return self.regular

    @property
    def witness(self) -> Optional[SeriesElement]:
        for s in self.steps:
            if not s.regular:
                return s.witness
        return None

    def to_json(self):
        return {
            "sequence": [str(f) for f in self.sequence],
            "certified_to_degree": self.certified_to_degree,
            "regular": self.regular,
            "steps": [s.to_json() for s in self.steps],
        }


def _check_not_unit(f: SeriesElement):
    c = f.constant_term()
    if c and not is_zero_divisor(c).zero_divisor:
        raise UnitGenerator(f"{f} has a unit constant term")


def _regular_step(V: _Space, J: Echelon, f: SeriesElement, index: int) -> RegularStep:
    """Is multiplication by ``f`` injective on ``S_e / J_e`` into ``S_D / J_D``?"""
    e = V.ctx.trunc - max(f.degree(), 0)
    if e <= 0:
        return RegularStep(index, f, True, 0, 0)
    P = V.project_below(J, e)
    domain = [k for k in V.coordinates_below(e) if k not in P.rows]
    images = Echelon(V.ctx.field, track=True)
    for k in domain:
        dep = images.insert(J.reduce(V.multiply(f, k)), tag=k)
        if dep is not None:
            u = V.element(dict(dep))
            return RegularStep(index, f, False, e, len(domain), u)
    return RegularStep(index, f, True, e, len(domain))


def is_regular_sequence(fs: Sequence[SeriesElement], ctx: Optional[SeriesContext] = None) -> RegularSequenceReport:
    """Certify ``f_1, ..., f_t`` regular at truncation, stopping at the first failure."""
    fs = tuple(fs)
    if not fs:
        return RegularSequenceReport((), ctx.trunc if ctx else 0, ())
    ctx = ctx or fs[0].ctx
    for f in fs:
        ctx.check(f.ctx)
        _check_not_unit(f)
    V = _space_for(ctx, fs)
    steps = []
    for i, f in enumerate(fs):
        J = V.ideal_span(fs[:i])
        step = _regular_step(V, J, f, i)
        steps.append(step)
        if not step.regular:
            break
    return RegularSequenceReport(fs, ctx.trunc, tuple(steps))


# ---------------------------------------------------------------------------
# the monomial slice


def _exponents(gens) -> List[Tuple[int, ...]]:
    """Exponent vectors of unit-coefficient series monomials (or raw tuples)."""
    out = []
    for g in gens:
        if isinstance(g, tuple):
            out.append(g)
            continue
        if not isinstance(g, SeriesElement) or len(g.coeffs) != 1:
            raise NotMonomial(f"{g} is not a single series monomial")
        (m, c), = g.coeffs.items()
        if is_zero_divisor(c).zero_divisor:
            raise NotMonomial(f"{g} does not have a unit coefficient")
        out.append(m)
    return out


def minimal_monomials(exps: Sequence[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """Minimal generators of the monomial ideal (dedupe, drop multiples)."""
    uniq = sorted(set(exps), key=lambda m: (sum(m), m))
    out = []
    for m in uniq:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def vertex_cover_number(exps: Sequence[Tuple[int, ...]], n: int) -> int:
    """Least number of variables meeting the support of every monomial."""
    if n > MAX_COVER_VARS:
        raise UnsupportedPresentation(f"vertex cover search limited to {MAX_COVER_VARS} variables")
    supports = [frozenset(i for i, x in enumerate(m) if x) for m in exps]
    if any(not s for s in supports):
        # a constant monomial generates the unit ideal
        raise NotMonomial("unit monomial in a height computation")
    for size in range(n + 1):
        for Z in itertools.combinations(range(n), size):
            z = set(Z)
            if all(s & z for s in supports):
                return size
    raise AssertionError("the full variable set always covers")


def height_monomial(gens, component: Optional[ExtIdealDesc] = None, n: Optional[int] = None) -> int:
    """Height of a unit-coefficient monomial ideal over a component ``MS``.

    ``S/MS`` is a power series ring over the residue field, so the height is
    the minimal vertex cover of the generators' supports.
    """
    exps = _exponents(gens)
    if n is None:
        if component is not None:
            n = component.ctx.n
        elif exps:
            n = len(exps[0])
        else:
            n = 0
    if not exps:
        return 0
    return vertex_cover_number(exps, n)


@dataclass(frozen=True)
class MonomialPrime:
    """``MS + (X_i : i in Z)``."""

    Z: FrozenSet[int]
    component: Optional[ExtIdealDesc] = field(default=None, compare=False, hash=False)

    @property
    def height(self) -> int:
        return len(self.Z)

    def names(self, vars: Sequence[str]) -> List[str]:
        return [vars[i] for i in sorted(self.Z)]

    def __str__(self):
        return "(" + ", ".join(f"X{i + 1}" for i in sorted(self.Z)) + ")"


def colon_monomial(exps, a) -> List[Tuple[int, ...]]:
    """Minimal generators of ``(I : a)`` for monomials."""
    return minimal_monomials([tuple(max(g - x, 0) for g, x in zip(m, a)) for m in exps])


def associated_primes_monomial(gens, component: Optional[ExtIdealDesc] = None,
                               n: Optional[int] = None) -> List[MonomialPrime]:
    """Associated primes of a monomial ideal by colon enumeration.

    Every associated prime is ``(I : a)`` for a monomial ``a`` below the
    exponent-wise maximum of the generators; collect the colons generated by
    variables.
    """
    exps = _exponents(gens)
    if n is None:
        n = component.ctx.n if component is not None else (len(exps[0]) if exps else 0)
    exps = minimal_monomials(exps)
    top = [max((m[i] for m in exps), default=0) for i in range(n)]
    found = set()
    for a in itertools.product(*(range(t + 1) for t in top)):
        if any(all(g <= x for g, x in zip(m, a)) for m in exps):
            continue  # a lies in I
        col = colon_monomial(exps, a)
        if all(sum(m) == 1 for m in col):
            found.add(frozenset(m.index(1) for m in col))
    return [MonomialPrime(Z, component) for Z in sorted(found, key=lambda z: (len(z), sorted(z)))]


# ---------------------------------------------------------------------------
# components of the slice


def component_idempotent(M: MaximalIdealDesc) -> AlgebraElement:
    A = M.owner
    if M.kind == "product-factor":
        return A.inject(A.factors[M.factor].one, M.factor)
    return A.one


@dataclass(frozen=True)
class ComponentImage:
    """Image of a slice ideal in ``S/MS``: a monomial ideal over the residue field."""

    component: ExtIdealDesc
    index: int
    exponents: Tuple[Tuple[int, ...], ...]

    @property
    def minimal(self):
        return minimal_monomials(self.exponents)

    @property
    def height(self) -> int:
        if not self.exponents:
            return 0
        return vertex_cover_number(self.exponents, self.component.ctx.n)

    @property
    def mu(self) -> int:
        return len(self.minimal)


def slice_components(I: FgIdeal, window: Optional[SubringHandle] = None) -> List[ComponentImage]:
    """Split a slice ideal over the minimal primes ``MS``.

    Raises NotSupportedSlice unless every generator is ``c * X^m`` with ``c``
    zero or a unit on each component.
    """
    h = window or I.window
    comps = minimal_primes(I.ctx, h)
    out = []
    for j, E in enumerate(comps):
        M = E.restriction(h)
        e = component_idempotent(M)
        exps = []
        for g in I.gens:
            if len(g.coeffs) != 1:
                raise NotSupportedSlice(f"{g} is not a single series monomial")
            (m, c), = g.coeffs.items()
            c = I.ctx.family.embed(c, h)
            if not (c * e):
                continue
            if M.contains(c):
                raise NotSupportedSlice(f"coefficient of {g} is a non-unit on component {j}")
            exps.append(m)
        out.append(ComponentImage(E, j, tuple(exps)))
    return out


def height_of_slice(I: FgIdeal) -> int:
    comps = slice_components(I)
    return min(c.height for c in comps) if comps else 0


def require_height_generated(I: FgIdeal) -> Tuple[int, List[ComponentImage]]:
    """Common height ``t`` with ``mu == height == t`` on every component."""
    comps = slice_components(I)
    t = None
    for c in comps:
        if c.mu != c.height:
            raise NotHeightGenerated(
                f"component {c.index}: height {c.height} but {c.mu} minimal generators"
            )
        if t is None:
            t = c.height
        elif c.height != t:
            raise NotHeightGenerated(f"component {c.index}: height {c.height} differs from {t}")
    return (t or 0), comps


# ---------------------------------------------------------------------------
# unmixedness


@dataclass(frozen=True)
class ComponentPrimes:
    index: int
    height: int
    primes: Tuple[MonomialPrime, ...]

    @property
    def unmixed(self) -> bool:
        return all(p.height == self.height for p in self.primes)

    @property
    def minimal_equals_maximal(self) -> bool:
        zs = [p.Z for p in self.primes]
        minimal = {z for z in zs if not any(w < z for w in zs)}
        maximal = {z for z in zs if not any(z < w for w in zs)}
        return minimal == maximal

    def to_json(self, vars):
        return {
            "component": self.index,
            "height": self.height,
            "prime_divisors": [{"vars": p.names(vars), "height": p.height} for p in self.primes],
            "unmixed": self.unmixed,
            "minimal_equals_maximal": self.minimal_equals_maximal,
        }


@dataclass(frozen=True)
class UnmixedReport:
    vars: Tuple[str, ...]
    components: Tuple[ComponentPrimes, ...]

    @property
    def unmixed(self) -> bool:
        return all(c.unmixed and c.minimal_equals_maximal for c in self.components)

    def to_json(self):
        return {"unmixed": self.unmixed, "components": [c.to_json(self.vars) for c in self.components]}


def verify_unmixed(I: FgIdeal, components: Optional[Sequence[ExtIdealDesc]] = None) -> UnmixedReport:
    """All prime divisors of a height-generated slice ideal have the same height.

    Height-generated is checked with the number of minimal monomial
    generators on each component.
    """
    images = slice_components(I)
    if components is not None and len(components) != len(images):
        raise ValueError("component list does not match the minimal primes")
    out = []
    for c in images:
        if c.mu != c.height:
            raise NotHeightGenerated(
                f"component {c.index}: height {c.height} but {c.mu} minimal generators"
            )
        primes = associated_primes_monomial(list(c.exponents), c.component, I.ctx.n) if c.exponents else [
            MonomialPrime(frozenset(), c.component)
        ]
        out.append(ComponentPrimes(c.index, c.height, tuple(primes)))
    return UnmixedReport(I.ctx.vars, tuple(out))


# ---------------------------------------------------------------------------
# prime avoidance: coset search


def _coefficients(A) -> List[AlgebraElement]:
    """Search coefficients: 1, -1, then the visible idempotents."""
    out = [A.one, -A.one]
    if isinstance(A, ProductAlgebra):
        out.extend(A.idempotents())
    return out


def coset_candidates(gens: Sequence[SeriesElement], a: int, ctx: SeriesContext, h: SubringHandle):
    """``f_a + sum_j c_j g_j f_j`` in a fixed order, fewest extra terms first.

    ``c_j`` runs over ``{1, -1}`` plus idempotents and ``g_j`` over ``1`` and
    the series variables.
    """
    A = h.algebra
    mults = [ctx.one(h)] + [ctx.var(v, h) for v in ctx.vars]
    coeffs = _coefficients(A)
    others = [j for j in range(len(gens)) if j != a]
    for size in range(1, len(others) + 1):
        for chosen in itertools.combinations(others, size):
            for picks in itertools.product(itertools.product(coeffs, mults), repeat=size):
                h_ = gens[a]
                for j, (c, g) in zip(chosen, picks):
                    h_ = h_ + (g * gens[j]) * c
                yield h_, dict(zip(chosen, picks))


def _avoids_minimal_primes(f: SeriesElement, comps: Sequence[ExtIdealDesc]) -> bool:
    return not any(ext_membership(f, E) for E in comps)


@dataclass(frozen=True)
class Replacement:
    ideal: FgIdeal
    report: RegularSequenceReport
    generated_same: bool
    searched: int


def replace_with_regular(I: FgIdeal) -> Replacement:
    """Generators ``h_1..h_t`` of ``I`` forming a regular sequence.

    Each ``h_k`` is the first element, in a fixed search order, of a coset
    ``f_a + sum g_j f_j`` that is regular modulo ``(h_1..h_{k-1})``.  Redundant
    generators are dropped first so that the search never commits to a
    non-minimal generator.
    """
    ctx = I.ctx
    if not I.gens:
        return Replacement(I, RegularSequenceReport((), ctx.trunc, ()), True, 0)
    rep = is_regular_sequence(I.gens, ctx)
    if rep.regular:
        return Replacement(I, rep, True, 0)
    try:
        t, comps = require_height_generated(I)
    except NotSupportedSlice as exc:
        raise NotHeightGenerated(f"height certification unavailable: {exc}") from None
    h = I.window
    V = _Space(ctx, h)
    gens = _irredundant(V, list(I.gens))
    minimal = [c.component for c in comps]
    seq: List[SeriesElement] = []
    searched = 0
    while True:
        J = V.ideal_span(seq)
        if all(J.contains(V.vector(g)) for g in gens):
            break
        if len(seq) >= t:
            raise SearchExhausted(f"{len(seq)} regular elements do not generate {I!r}")
        chosen = None
        for cand in _candidates(gens, ctx, h):
            searched += 1
            if not seq and not _avoids_minimal_primes(cand, minimal):
                continue
            if J.contains(V.vector(cand)):
                continue
            try:
                _check_not_unit(cand)
            except UnitGenerator:
                continue
            if _regular_step(V, J, cand, len(seq)).regular:
                chosen = cand
                break
        if chosen is None:
            raise SearchExhausted(f"no avoiding element found at step {len(seq) + 1} for {I!r}")
        seq.append(chosen)
    out = FgIdeal(ctx, seq)
    report = is_regular_sequence(seq, ctx)
    same = ideal_contains(out, I) and ideal_contains(I, out)
    if not (report.regular and same):
        raise InternalSelfCheck(f"replacement for {I!r} failed its own certificate")
    return Replacement(out, report, same, searched)


def _irredundant(V: _Space, gens: List[SeriesElement]) -> List[SeriesElement]:
    out = list(gens)
    i = 0
    while i < len(out):
        rest = out[:i] + out[i + 1:]
        if rest and V.ideal_span(rest).contains(V.vector(out[i])):
            out.pop(i)
        else:
            i += 1
    return out


def _candidates(gens, ctx, h):
    for g in gens:
        yield g
    for a in range(len(gens)):
        for cand, _ in coset_candidates(gens, a, ctx, h):
            yield cand


# ---------------------------------------------------------------------------
# classical grade


@dataclass(frozen=True)
class GradeReport:
    sequence: Tuple[SeriesElement, ...]
    report: RegularSequenceReport
    annihilator: Optional[SeriesElement]
    height: Optional[int]

    @property
    def grade(self) -> int:
        return len(self.sequence)

    def to_json(self):
        return {
            "grade": self.grade,
            "height": self.height,
            "sequence": [str(f) for f in self.sequence],
            "maximality_witness": str(self.annihilator) if self.annihilator is not None else None,
        }


def _annihilator_witness(V: _Space, J: Echelon, gens: Sequence[SeriesElement]) -> Optional[SeriesElement]:
    """A class ``u`` nonzero mod ``J`` with ``u * g`` in ``J`` for every generator."""
    if not gens:
        return None
    e = V.ctx.trunc - max(max(g.degree(), 0) for g in gens)
    if e <= 0:
        return None
    P = V.project_below(J, e)
    domain = [k for k in V.coordinates_below(e) if k not in P.rows]
    stack = Echelon(V.ctx.field, track=True)
    for k in domain:
        vec = {}
        for gi, g in enumerate(gens):
            for c, x in J.reduce(V.multiply(g, k)).items():
                vec[gi * V.dim + c] = x
        dep = stack.insert(vec, tag=k)
        if dep is not None:
            return V.element(dict(dep))
    return None


def cgrade_report(I: FgIdeal) -> GradeReport:
    """Greedy maximal regular sequence inside ``I``, with a maximality witness."""
    ctx = I.ctx
    if not I.gens:
        return GradeReport((), RegularSequenceReport((), ctx.trunc, ()), None, 0)
    try:
        height = height_of_slice(I)
    except (NotSupportedSlice, NotMonomial):
        if not is_regular_sequence(I.gens, ctx).regular:
            raise NotSupportedSlice("ideal is neither in the monomial slice nor a regular sequence") from None
        height = None
    h = I.window
    V = _Space(ctx, h)
    gens = list(I.gens)
    seq: List[SeriesElement] = []
    while True:
        J = V.ideal_span(seq)
        # stop as soon as every element of I is visibly a zero-divisor mod J
        witness = _annihilator_witness(V, J, gens)
        if witness is not None:
            break
        chosen = None
        for cand in _candidates(gens, ctx, h):
            if J.contains(V.vector(cand)):
                continue
            if _regular_step(V, J, cand, len(seq)).regular:
                chosen = cand
                break
        if chosen is None:
            raise SearchExhausted(f"no regular element of {I!r} found modulo {len(seq)} chosen elements")
        seq.append(chosen)
    report = is_regular_sequence(seq, ctx)
    return GradeReport(tuple(seq), report, witness, height)


def cgrade(I: FgIdeal) -> int:
    return cgrade_report(I).grade


# ---------------------------------------------------------------------------
# prime chains


@dataclass(frozen=True)
class ChainLink:
    Z: Tuple[int, ...]
    proper: bool
    strict: bool
    quotient_rank: int
    expected_rank: int

    @property
    def certified(self) -> bool:
        return self.proper and self.strict and self.quotient_rank == self.expected_rank

    def to_json(self, vars):
        return {
            "ideal": ["MS"] + [vars[i] for i in self.Z],
            "proper": self.proper,
            "strict": self.strict,
            "quotient_rank": self.quotient_rank,
            "expected_rank": self.expected_rank,
        }


@dataclass(frozen=True)
class CatenaryCheck:
    pairs: int
    chains: int
    equal_lengths: bool


@dataclass(frozen=True)
class PrimeChain:
    component: ExtIdealDesc
    links: Tuple[ChainLink, ...]
    catenary: Optional[CatenaryCheck]

    @property
    def length(self) -> int:
        return len(self.links) - 1

    @property
    def certified(self) -> bool:
        ok = all(l.certified for l in self.links)
        return ok and (self.catenary is None or self.catenary.equal_lengths)

    def to_json(self):
        vars = self.component.ctx.vars
        out = {"length": self.length, "certified": self.certified, "links": [l.to_json(vars) for l in self.links]}
        if self.catenary is not None:
            out["catenary"] = {
                "pairs": self.catenary.pairs,
                "chains": self.catenary.chains,
                "equal_lengths": self.catenary.equal_lengths,
            }
        return out


def prime_chain(component: ExtIdealDesc, n: Optional[int] = None, check_catenary: bool = True) -> PrimeChain:
    """``MS ⊂ MS + (X_1) ⊂ ... ⊂ MS + (X_1..X_n)`` with per-link certificates.

    Work happens in ``S/MS``, realised as series over the residue fields: a
    link is strict when ``X_{i+1}`` is not in ``(X_1..X_i)`` there, proper
    when ``1`` is not, and its quotient must have base-field dimension
    ``[k : k0]`` times the number of monomials in the remaining variables.
    """
    ctx = component.ctx
    n = ctx.n if n is None else n
    if n > ctx.n:
        raise ValueError(f"chain length {n} exceeds the {ctx.n} series variables")
    rctx = residue_context(component)
    RF = rctx.family
    h = SubringHandle(RF, RF.closure(component.window.idx))
    W = _Space(rctx, h)
    degree = h.algebra.dim
    xs = [rctx.var(v, h) for v in ctx.vars]
    one = W.vector(rctx.one(h))
    links = []
    D = ctx.trunc
    for i in range(n + 1):
        J = W.ideal_span(xs[:i])
        proper = not J.contains(one)
        strict = True if i == 0 else not W.ideal_span(xs[: i - 1]).contains(W.vector(xs[i - 1]))
        rest = ctx.n - i
        expected = degree * comb(rest + D - 1, rest)
        links.append(ChainLink(tuple(range(i)), proper, strict, W.dim - J.rank, expected))
    cat = catenary_check(ctx.n) if check_catenary and ctx.n <= 4 else None
    return PrimeChain(component, tuple(links), cat)


def saturated_chains(bottom: FrozenSet[int], top: FrozenSet[int]) -> List[List[FrozenSet[int]]]:
    """All maximal chains of variable subsets from ``bottom`` to ``top``.

    Covers are computed from the order itself: ``Z < W`` is a cover when no
    subset lies strictly between them.
    """
    between = [frozenset(bottom | set(extra))
               for r in range(len(top - bottom) + 1)
               for extra in itertools.combinations(sorted(top - bottom), r)]

    def covers(z):
        ups = [w for w in between if z < w]
        return [w for w in ups if not any(z < u < w for u in ups)]

    out = []

    def walk(path):
        z = path[-1]
        if z == top:
            out.append(list(path))
            return
        for w in covers(z):
            walk(path + [w])

    walk([frozenset(bottom)])
    return out


def catenary_check(n: int) -> CatenaryCheck:
    """Every pair of monomial primes: all saturated chains have the same length."""
    subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]
    pairs = chains = 0
    equal = True
    for b in subsets:
        for t in subsets:
            if not b <= t:
                continue
            pairs += 1
            cs = saturated_chains(b, t)
            chains += len(cs)
            if len({len(c) - 1 for c in cs}) != 1 or len(cs[0]) - 1 != len(t) - len(b):
                equal = False
    return CatenaryCheck(pairs, chains, equal)


def monomial_family(n: int, max_gens: int, max_degree: int):
    """Every set of 1..max_gens distinct monomials of degree 1..max_degree in n variables."""
    monos = [m for m in itertools.product(range(max_degree + 1), repeat=n) if 1 <= sum(m) <= max_degree]
    monos.sort(key=lambda m: (sum(m), tuple(-x for x in m)))
    for size in range(1, max_gens + 1):
        for combo in itertools.combinations(monos, size):
            yield list(combo)
