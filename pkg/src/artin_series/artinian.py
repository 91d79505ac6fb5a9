"""Finite-dimensional (Artinian) algebras over an exact field.

Three presentation forms are supported for maximal-ideal computations:

* monomial relations with a pure power of every variable (a connected local
  algebra whose maximal ideal is generated by the variables),
* explicit finite products of supported algebras,
* towers of single-generator extensions that together form a field.

Arithmetic itself works for any zero-dimensional presentation; elements are
coordinate vectors over the standard-monomial basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence

from .errors import NotAField, NotArtinian, UnsupportedPresentation
from .exactpoly import QQ, Echelon, GroebnerBasis, Polynomial, PolyRing, buchberger, normal_form
from .exactpoly.fields import PrimeField, field_from_tag
from .exactpoly.poly import degrevlex_key, mono_divides

# irreducibility is tested only up to this degree
IRREDUCIBILITY_DEGREE_CAP = 8


class ArtinianAlgebra:
    """Common interface: a basis, lazily cached structure constants, elements."""

    form = "general"

    def __init__(self, field, labels: Sequence[str]):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self._table: Dict[tuple, dict] = {}
        self._maximal = None
        self.origin = None

    # structure constants -----------------------------------------------------
    def basis_product(self, i: int, j: int) -> dict:
        if i > j:
            i, j = j, i
        key = (i, j)
        out = self._table.get(key)
        if out is None:
            out = self._compute_product(i, j)
            # concurrent first use stores identical data; last writer wins
            self._table[key] = out
        return out

    def _compute_product(self, i: int, j: int) -> dict:
        raise NotImplementedError

    def one_vector(self) -> dict:
        raise NotImplementedError

    # elements ---------------------------------------------------------------
    def element(self, coords) -> "AlgebraElement":
        if isinstance(coords, dict):
            vec = {i: self.field(c) for i, c in coords.items() if c}
        else:
            coords = list(coords)
            if len(coords) != self.dim:
                raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
            vec = {i: self.field(c) for i, c in enumerate(coords) if c}
        return AlgebraElement(self, vec)

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    @property
    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.one_vector())

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, {i: self.field.one})

    def scalar(self, c) -> "AlgebraElement":
        c = self.field(c)
        return AlgebraElement(self, {i: c * x for i, x in self.one_vector().items()}) if c else self.zero

    def basis(self) -> List["AlgebraElement"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def random_element(self, rng, density: float = 0.5, bound: int = 2) -> "AlgebraElement":
        vec = {}
        for i in range(self.dim):
            if rng.random() < density:
                c = self.field.random_element(rng, bound)
                if c:
                    vec[i] = c
        return AlgebraElement(self, vec)

    # linear algebra helpers -------------------------------------------------
    def ideal_span(self, generators: Sequence["AlgebraElement"]) -> Echelon:
        """k-subspace spanned by the ideal the generators generate."""
        E = Echelon(self.field)
        for g in generators:
            for b in range(self.dim):
                E.insert((g * self.basis_element(b)).vec)
        return E

    def maximal_ideals(self) -> List["MaximalIdealDesc"]:
        if self._maximal is None:
            self._maximal = self._compute_maximal_ideals()
        return list(self._maximal)

    def _compute_maximal_ideals(self):
        raise UnsupportedPresentation(f"no supported form for {self!r}")

    def idempotents(self) -> List["AlgebraElement"]:
        """Primitive idempotents visible from the presentation (``[1]`` if connected)."""
        return [self.one]

    def element_str(self, vec: dict) -> str:
        if not vec:
            return "0"
        return " + ".join(f"{c}*{self.labels[i]}" for i, c in sorted(vec.items()))

    def element_json(self, vec: dict):
        return {self.labels[i]: self.field.to_json(c) for i, c in sorted(vec.items())}


class AlgebraElement:
    """An element of an :class:`ArtinianAlgebra`, stored as a sparse coordinate dict."""

    __slots__ = ("owner", "vec")

    def __init__(self, owner: ArtinianAlgebra, vec: dict):
        self.owner = owner
        self.vec = vec

    @property
    def coords(self):
        z = self.owner.field.zero
        return tuple(self.vec.get(i, z) for i in range(self.owner.dim))

    def _same(self, other):
        if isinstance(other, AlgebraElement):
            if other.owner is not self.owner:
                raise ValueError("elements of different algebras")
            return other
        return self.owner.scalar(other)

    def __add__(self, other):
        other = self._same(other)
        vec = dict(self.vec)
        for i, c in other.vec.items():
            x = vec.get(i, 0) + c
            if x:
                vec[i] = x
            else:
                vec.pop(i, None)
        return AlgebraElement(self.owner, vec)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.owner, {i: -c for i, c in self.vec.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            c = self.owner.field(other)
            if not c:
                return self.owner.zero
            return AlgebraElement(self.owner, {i: x * c for i, x in self.vec.items()})
        other = self._same(other)
        out: dict = {}
        bp = self.owner.basis_product
        for i, a in self.vec.items():
            for j, b in other.vec.items():
                ab = a * b
                for k, c in bp(i, j).items():
                    x = out.get(k, 0) + ab * c
                    if x:
                        out[k] = x
                    else:
                        out.pop(k, None)
        return AlgebraElement(self.owner, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.owner.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.owner is other.owner and self.vec == other.vec
        try:
            return self.vec == self.owner.scalar(other).vec
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((id(self.owner), frozenset(self.vec.items())))

    def __bool__(self):
        return bool(self.vec)

    def is_zero(self) -> bool:
        return not self.vec

    def inverse(self) -> "AlgebraElement":
        check = is_zero_divisor(self)
        if check.zero_divisor:
            raise ZeroDivisionError(f"{self} is a zero-divisor")
        return check.inverse

    def to_poly(self) -> Polynomial:
        return self.owner.to_poly(self)

    def __str__(self):
        return self.owner.element_str(self.vec)

    def __repr__(self):
        return f"<{self} in {self.owner!r}>"

    def to_json(self):
        return self.owner.element_json(self.vec)


# ---------------------------------------------------------------------------
# presented algebras


class PresentedAlgebra(ArtinianAlgebra):
    """``field[vars] / (relations)`` with a finite standard-monomial basis."""

    def __init__(self, ring: PolyRing, relations: GroebnerBasis, given: Sequence[Polynomial]):
        self.ring = ring
        self.relations = relations
        self.given = tuple(given)
        self.monomials = _standard_monomials(ring, relations)
        self.mono_index = {m: i for i, m in enumerate(self.monomials)}
        labels = [str(ring.monomial(m)) for m in self.monomials]
        super().__init__(ring.field, labels)
        if all(len(g.terms) == 1 for g in relations.generators):
            self.form = "monomial"
        elif _tower_order(ring, self.given) is not None:
            self.form = "tower"
        else:
            self.form = "general"
        self._field_cert = None

    @property
    def vars(self):
        return self.ring.names

    def __repr__(self):
        rel = ", ".join(str(g) for g in self.given)
        return f"{self.field!r}[{', '.join(self.ring.names)}]/({rel})"

    def one_vector(self):
        return {self.mono_index[(0,) * self.ring.nvars]: self.field.one}

    def _compute_product(self, i, j):
        m = tuple(a + b for a, b in zip(self.monomials[i], self.monomials[j]))
        if m in self.mono_index:
            # a standard product of standard monomials may still reduce
            # for non-monomial relations, so only shortcut the monomial form
            if self.form == "monomial":
                return {self.mono_index[m]: self.field.one}
        return self.from_poly(self.ring.monomial(m)).vec

    def from_poly(self, p: Polynomial) -> AlgebraElement:
        p = p.to_ring(self.ring) if p.ring != self.ring else p
        r = normal_form(p, self.relations)
        return AlgebraElement(self, {self.mono_index[m]: c for m, c in r.terms.items()})

    def parse(self, text: str) -> AlgebraElement:
        return self.from_poly(self.ring.parse(text))

    def to_poly(self, a: AlgebraElement) -> Polynomial:
        return Polynomial(self.ring, {self.monomials[i]: c for i, c in a.vec.items()})

    def element_str(self, vec):
        return str(Polynomial(self.ring, {self.monomials[i]: c for i, c in vec.items()}))

    def element_json(self, vec):
        return self.element_str(vec)

    def gen(self, name) -> AlgebraElement:
        return self.from_poly(self.ring.gen(name))

    def _compute_maximal_ideals(self):
        if self.dim == 1:
            return [MaximalIdealDesc(self, (), "field-zero")]
        if self.form == "monomial":
            gens = tuple(self.gen(v) for v in self.vars)
            return [MaximalIdealDesc(self, gens, "local-monomial")]
        if self.form == "tower":
            if not certify_field(self):
                raise NotAField(f"{self!r} is not a field")
            return [MaximalIdealDesc(self, (), "field-zero")]
        raise UnsupportedPresentation(
            f"{self!r}: relations are neither monomial nor a field tower"
        )


def _standard_monomials(ring: PolyRing, G: GroebnerBasis):
    leads = [g.leading_monomial() for g in G.generators]
    start = (0,) * ring.nvars
    if any(mono_divides(lm, start) for lm in leads):
        raise NotArtinian("relations generate the unit ideal")
    for i in range(ring.nvars):
        if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in leads):
            raise NotArtinian(f"no pure power of {ring.names[i]} among leading terms")
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(ring.nvars):
                e = list(m)
                e[i] += 1
                e = tuple(e)
                if e in seen or any(mono_divides(lm, e) for lm in leads):
                    continue
                seen.add(e)
                nxt.append(e)
        frontier = nxt
    return sorted(seen, key=degrevlex_key)


def _tower_order(ring: PolyRing, relations: Sequence[Polynomial]):
    """Return per-variable defining degrees if the relations form a tower, else None.

    Relation ``j`` may only involve variables ``0..j``, must contain a pure
    power ``v_j^d``, and every other term must have ``v_j``-degree below ``d``
    and earlier-variable degrees below their own defining degrees.
    """
    n = ring.nvars
    if n == 0 or len(relations) != n:
        return None
    degrees = [None] * n
    remaining = list(relations)
    for j in range(n):
        found = None
        for r in remaining:
            support = r.support_variables()
            if j not in support or any(v > j for v in support):
                continue
            pure = [m for m in r.terms if m[j] > 0 and sum(m) == m[j]]
            if not pure:
                continue
            d = max(m[j] for m in pure)
            top = tuple(d if k == j else 0 for k in range(n))
            if any(m != top and m[j] >= d for m in r.terms):
                continue
            if any(m[k] >= degrees[k] for m in r.terms for k in range(j)):
                continue
            found = (r, d)
            break
        if found is None:
            return None
        remaining.remove(found[0])
        degrees[j] = found[1]
    return degrees


def present(base, vars: Sequence[str], relation_polys: Sequence) -> PresentedAlgebra:
    """Present ``base[vars]/(relations)``; raises NotArtinian unless zero-dimensional."""
    field = field_from_tag(base) if isinstance(base, str) else base
    ring = PolyRing(field, vars)
    rels = [ring(r) for r in relation_polys]
    rels = [r for r in rels if r]
    G = buchberger(rels) if rels else GroebnerBasis(ring, ())
    return PresentedAlgebra(ring, G, rels)


def present_tower(base, vars: Sequence[str], minpolys: Sequence) -> PresentedAlgebra:
    A = present(base, vars, minpolys)
    if A.form != "tower" and A.dim != 1:
        raise UnsupportedPresentation(f"{A!r} is not a tower of single-generator extensions")
    if not certify_field(A):
        raise NotAField(f"{A!r}: a minimal polynomial in the tower is reducible")
    return A


@lru_cache(maxsize=None)
def prime_field_algebra(field) -> PresentedAlgebra:
    """The base field itself as a one-dimensional algebra."""
    return present(field, [], [])


# ---------------------------------------------------------------------------
# products


class ProductAlgebra(ArtinianAlgebra):
    """Structural finite product; never flattened into a single presentation."""

    form = "product"

    def __init__(self, factors: Sequence[ArtinianAlgebra]):
        if not factors:
            raise ValueError("a product needs at least one factor")
        field = factors[0].field
        if any(f.field != field for f in factors):
            raise ValueError("factors must share the base field")
        self.factors = tuple(factors)
        self.offsets = []
        labels = []
        off = 0
        for k, f in enumerate(factors):
            self.offsets.append(off)
            labels.extend(f"e{k}*({lab})" for lab in f.labels)
            off += f.dim
        super().__init__(field, labels)

    def __repr__(self):
        return " x ".join(f"({f!r})" for f in self.factors)

    def locate(self, i):
        for k in range(len(self.factors) - 1, -1, -1):
            if i >= self.offsets[k]:
                return k, i - self.offsets[k]
        raise IndexError(i)

    def one_vector(self):
        out = {}
        for k, f in enumerate(self.factors):
            out.update({self.offsets[k] + i: c for i, c in f.one_vector().items()})
        return out

    def _compute_product(self, i, j):
        ki, a = self.locate(i)
        kj, b = self.locate(j)
        if ki != kj:
            return {}
        off = self.offsets[ki]
        return {off + k: c for k, c in self.factors[ki].basis_product(a, b).items()}

    def component(self, a: AlgebraElement, k: int) -> AlgebraElement:
        f = self.factors[k]
        off = self.offsets[k]
        return AlgebraElement(f, {i - off: c for i, c in a.vec.items() if off <= i < off + f.dim})

    def inject(self, b: AlgebraElement, k: int) -> AlgebraElement:
        off = self.offsets[k]
        return AlgebraElement(self, {off + i: c for i, c in b.vec.items()})

    def from_components(self, parts: Sequence[AlgebraElement]) -> AlgebraElement:
        out = {}
        for k, p in enumerate(parts):
            out.update(self.inject(p, k).vec)
        return AlgebraElement(self, out)

    def idempotents(self):
        return [self.inject(f.one, k) for k, f in enumerate(self.factors)]

    def to_poly(self, a):
        raise UnsupportedPresentation("product algebras have no single polynomial presentation")

    def element_str(self, vec):
        a = AlgebraElement(self, vec)
        return "(" + ", ".join(str(self.component(a, k)) for k in range(len(self.factors))) + ")"

    def element_json(self, vec):
        a = AlgebraElement(self, vec)
        return [self.component(a, k).to_json() for k in range(len(self.factors))]

    def _compute_maximal_ideals(self):
        out = []
        for k, f in enumerate(self.factors):
            others = [self.inject(g.one, j) for j, g in enumerate(self.factors) if j != k]
            for M in f.maximal_ideals():
                gens = tuple(self.inject(g, k) for g in M.generators) + tuple(others)
                out.append(MaximalIdealDesc(self, gens, "product-factor", factor=k, factor_ideal=M))
        return out


def present_product(factors: Sequence[ArtinianAlgebra]) -> ProductAlgebra:
    return ProductAlgebra(factors)


# ---------------------------------------------------------------------------
# maximal ideals and residue fields


class MaximalIdealDesc:
    """A maximal ideal of a supported algebra, validated on construction."""

    KINDS = ("local-monomial", "product-factor", "field-zero")

    def __init__(self, owner, generators, kind, factor=None, factor_ideal=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown maximal ideal kind {kind!r}")
        self.owner = owner
        self.generators = tuple(generators)
        self.kind = kind
        self.factor = factor
        self.factor_ideal = factor_ideal
        self._span = None
        self._validate()

    def span(self) -> Echelon:
        if self._span is None:
            self._span = self.owner.ideal_span(self.generators)
        return self._span

    @property
    def quotient_dim(self) -> int:
        return self.owner.dim - self.span().rank

    def contains(self, a: AlgebraElement) -> bool:
        return self.span().contains(a.vec)

    def _validate(self):
        q = self.quotient_dim
        if q < 1:
            raise NotAField("ideal is not proper")
        if self.kind == "local-monomial" and q != 1:
            raise NotAField(f"quotient has dimension {q}, expected the base field")
        if self.kind == "field-zero":
            if self.generators and any(self.generators):
                raise NotAField("field-zero ideal must be (0)")
            if self.owner.dim > 1 and not certify_field(self.owner):
                raise NotAField(f"{self.owner!r} is not a field")
        if self.kind == "product-factor":
            if self.factor_ideal is None or q != self.factor_ideal.quotient_dim:
                raise NotAField("product-factor ideal does not match its factor")

    def same_as(self, other: "MaximalIdealDesc") -> bool:
        """Equal as subspaces of the same algebra."""
        if other.owner is not self.owner:
            return False
        a, b = self.span(), other.span()
        return a.rank == b.rank and all(a.contains(r) for r in b.basis())

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"MaximalIdeal<{self.kind}: ({gens})>"

    def to_json(self):
        return {"kind": self.kind, "generators": [g.to_json() for g in self.generators]}


def maximal_ideals(A: ArtinianAlgebra) -> List[MaximalIdealDesc]:
    return A.maximal_ideals()


@dataclass(frozen=True)
class ResidueField:
    """``A/M`` realised as a field algebra plus the quotient map on coordinates."""

    algebra: ArtinianAlgebra
    field: ArtinianAlgebra
    ideal: MaximalIdealDesc
    _project: Callable[[AlgebraElement], AlgebraElement]

    def project(self, a: AlgebraElement) -> AlgebraElement:
        if a.owner is not self.algebra:
            raise ValueError("element is not in the residue field's source algebra")
        return self._project(a)

    @property
    def degree(self) -> int:
        return self.field.dim


def residue_field(A: ArtinianAlgebra, M: MaximalIdealDesc) -> ResidueField:
    if M.owner is not A:
        raise ValueError("maximal ideal belongs to a different algebra")
    if M.kind == "field-zero":
        return ResidueField(A, A, M, lambda a: a)
    if M.kind == "local-monomial":
        K = prime_field_algebra(A.field)
        i0 = A.mono_index[(0,) * A.ring.nvars]
        one = K.one_vector()
        (k0, c0), = one.items()

        def proj(a):
            c = a.vec.get(i0)
            return AlgebraElement(K, {k0: c * c0} if c else {})

        return ResidueField(A, K, M, proj)
    if M.kind == "product-factor":
        inner = residue_field(A.factors[M.factor], M.factor_ideal)
        return ResidueField(A, inner.field, M, lambda a: inner.project(A.component(a, M.factor)))
    raise UnsupportedPresentation(M.kind)


# ---------------------------------------------------------------------------
# element-level operations


def minimal_polynomial(a: AlgebraElement, var: str = "t") -> Polynomial:
    """Monic polynomial of least degree killing ``a`` (linear dependence of powers)."""
    A = a.owner
    E = Echelon(A.field, track=True)
    p = A.one
    k = 0
    while True:
        dep = E.insert(p.vec, tag=k)
        if dep is not None:
            ring = PolyRing(A.field, [var])
            poly = Polynomial(ring, {(t,): c for t, c in dep.items()})
            return poly.monic()
        p = p * a
        k += 1


def evaluate_univariate(p: Polynomial, a: AlgebraElement) -> AlgebraElement:
    out = a.owner.zero
    for (e,), c in p.terms.items():
        out = out + (a ** e) * c
    return out


@dataclass(frozen=True)
class ZeroDivisorCheck:
    zero_divisor: bool
    witness: Optional[AlgebraElement]
    inverse: Optional[AlgebraElement]

    def __bool__(self):
        return self.zero_divisor


def is_zero_divisor(a: AlgebraElement) -> ZeroDivisorCheck:
    """Singularity of multiplication by ``a``; a regular element gets its inverse."""
    A = a.owner
    cols = [(a * A.basis_element(j)).vec for j in range(A.dim)]
    E = Echelon(A.field, track=True)
    for j, col in enumerate(cols):
        dep = E.insert(col, tag=j)
        if dep is not None:
            return ZeroDivisorCheck(True, AlgebraElement(A, dict(dep)), None)
    r, combo = E.express(A.one_vector())
    if r:  # pragma: no cover - injective endomorphism of a finite space is onto
        raise ArithmeticError("multiplication map injective but not surjective")
    return ZeroDivisorCheck(False, None, AlgebraElement(A, combo))


def is_irreducible(p: Polynomial) -> bool:
    """Irreducibility of a univariate polynomial over Q or GF(p) (degree <= cap)."""
    import sympy

    deg = p.total_degree()
    if deg <= 0:
        return False
    if deg > IRREDUCIBILITY_DEGREE_CAP:
        raise UnsupportedPresentation(
            f"irreducibility test limited to degree {IRREDUCIBILITY_DEGREE_CAP}, got {deg}"
        )
    t = sympy.Symbol("t")
    field = p.ring.field
    if isinstance(field, PrimeField):
        coeffs = {e[0]: int(c.v) for e, c in p.terms.items()}
        sp = sympy.Poly(sum(c * t ** e for e, c in coeffs.items()), t, modulus=field.p)
    else:
        sp = sympy.Poly(
            sum(sympy.Rational(c.numerator, c.denominator) * t ** e[0] for e, c in p.terms.items()),
            t,
            domain=sympy.QQ,
        )
    return bool(sp.is_irreducible)


def certify_field(A: ArtinianAlgebra) -> bool:
    """Decide whether a tower-form algebra is a field.

    Searches for an element whose minimal polynomial has degree ``dim A``;
    then ``A = k[t]/(m)`` and ``A`` is a field iff ``m`` is irreducible.
    """
    if A.dim == 1:
        return True
    if not isinstance(A, PresentedAlgebra):
        return False
    if A._field_cert is not None:
        return A._field_cert
    if A.dim > IRREDUCIBILITY_DEGREE_CAP:
        raise UnsupportedPresentation(
            f"field certification limited to degree {IRREDUCIBILITY_DEGREE_CAP}, got {A.dim}"
        )
    gens = [A.gen(v) for v in A.vars]
    for cand in _primitive_candidates(A, gens):
        m = minimal_polynomial(cand)
        if m.total_degree() == A.dim:
            A._field_cert = is_irreducible(m)
            return A._field_cert
        if not is_irreducible(m):
            # in a field every minimal polynomial is irreducible
            A._field_cert = False
            return False
    raise UnsupportedPresentation(f"no primitive element found for {A!r}")


def _primitive_candidates(A, gens, limit: int = 64):
    n = len(gens)
    for c in range(1, limit):
        coeffs = [c ** k for k in range(n)]
        yield sum((g * x for g, x in zip(gens, coeffs)), A.zero)
    for combo in itertools.islice(itertools.product(range(-2, 3), repeat=n), limit):
        if any(combo):
            yield sum((g * x for g, x in zip(gens, combo)), A.zero)
