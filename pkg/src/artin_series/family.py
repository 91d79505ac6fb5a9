"""Directed families of Artinian subrings.

A family is a base algebra ``R0`` together with a stream of generators
``g0, g1, ...``; each generator comes with relations binding it to the base
and to earlier generators.  The ring ``R`` is the union of the finitely
generated subrings ``R0[g_i : i in idx]``, which are materialised on demand
and cached by their (closed, sorted) index set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .artinian import (
    AlgebraElement,
    ArtinianAlgebra,
    PresentedAlgebra,
    ProductAlgebra,
    minimal_polynomial,
    present,
    prime_field_algebra,
)
from .errors import AmbientMismatch, FamilyMismatch, StreamFinite, UnsupportedPresentation
from .exactpoly import QQ, Polynomial, ideal_membership
from .exactpoly.parse import variables_in

# generous bound for locating a generator by name in streams without index_of
NAME_SCAN_LIMIT = 4096


@dataclass(frozen=True)
class GeneratorStream:
    """``produce(i)`` gives ``(name, relations)`` for the i-th generator.

    ``length`` is ``None`` for an unbounded stream.  ``index_of`` optionally
    maps a generator name back to its index without scanning.
    """

    name: str
    produce: Callable[[int], Tuple[str, Tuple[str, ...]]]
    length: Optional[int] = None
    index_of: Optional[Callable[[str], Optional[int]]] = None

    @property
    def finite(self) -> bool:
        return self.length is not None

    def check_index(self, i: int):
        if i < 0 or (self.length is not None and i >= self.length):
            raise StreamFinite(f"stream {self.name!r} has no generator {i}")


def empty_stream(name: str = "empty") -> GeneratorStream:
    def produce(i):
        raise StreamFinite(f"stream {name!r} is empty")

    return GeneratorStream(name, produce, length=0, index_of=lambda s: None)


@dataclass(frozen=True)
class SubringHandle:
    """Names the subring ``R0[g_i : i in idx]`` of a family."""

    family: "DirectedFamily" = field(compare=False, repr=False)
    idx: Tuple[int, ...] = ()

    def __eq__(self, other):
        return (
            isinstance(other, SubringHandle)
            and other.family is self.family
            and other.idx == self.idx
        )

    def __hash__(self):
        return hash((id(self.family), self.idx))

    @property
    def algebra(self) -> ArtinianAlgebra:
        return self.family.subring(self.idx)

    def __le__(self, other: "SubringHandle") -> bool:
        _same_family(self, other)
        return set(self.idx) <= set(other.idx)

    def __repr__(self):
        return f"SubringHandle({self.family.name}, {list(self.idx)})"


def _same_family(a: SubringHandle, b: SubringHandle):
    if a.family is not b.family:
        raise FamilyMismatch(f"{a!r} and {b!r} belong to different families")


def join(a: SubringHandle, b: SubringHandle) -> SubringHandle:
    _same_family(a, b)
    return a.family.handle(set(a.idx) | set(b.idx))


class DirectedFamily:
    """The lattice of finitely generated subrings of ``R`` over ``R0``."""

    def __init__(self, base: ArtinianAlgebra, stream: GeneratorStream, name: Optional[str] = None):
        self.base = base
        self.stream = stream
        self.name = name or stream.name
        self.field = base.field
        self._cache: Dict[Tuple[int, ...], ArtinianAlgebra] = {(): base}
        self._produced: Dict[int, Tuple[str, Tuple[str, ...]]] = {}
        self._deps: Dict[int, Tuple[int, ...]] = {}
        self._names: Dict[str, int] = {}
        if base.origin is None:
            base.origin = (self, ())

    def __repr__(self):
        return f"DirectedFamily({self.name})"

    # generators -------------------------------------------------------------
    def generator(self, i: int) -> Tuple[str, Tuple[str, ...]]:
        got = self._produced.get(i)
        if got is None:
            self.stream.check_index(i)
            got = self.stream.produce(i)
            got = (got[0], tuple(got[1]))
            self._produced[i] = got
            self._names[got[0]] = i
        return got

    def generator_name(self, i: int) -> str:
        return self.generator(i)[0]

    def index_of(self, name: str) -> Optional[int]:
        """Stream index of a generator name, or None for base variables / unknown names."""
        if name in self._names:
            return self._names[name]
        if self.stream.index_of is not None:
            i = self.stream.index_of(name)
            if i is not None and self.generator(i)[0] == name:
                return i
            return None
        limit = self.stream.length if self.stream.finite else NAME_SCAN_LIMIT
        for i in range(limit):
            if self.generator(i)[0] == name:
                return i
        return None

    def dependencies(self, i: int) -> Tuple[int, ...]:
        """Earlier generators mentioned by the relations of generator ``i``."""
        if i not in self._deps:
            _, rels = self.generator(i)
            names = set()
            for r in rels:
                names.update(variables_in(r))
            deps = []
            for n in names:
                j = self.index_of(n)
                if j is not None and j != i:
                    deps.append(j)
            self._deps[i] = tuple(sorted(deps))
        return self._deps[i]

    def closure(self, idx: Iterable[int]) -> Tuple[int, ...]:
        todo = list(idx)
        out = set()
        while todo:
            i = todo.pop()
            if i in out:
                continue
            self.stream.check_index(i)
            out.add(i)
            todo.extend(self.dependencies(i))
        return tuple(sorted(out))

    # subrings ---------------------------------------------------------------
    def handle(self, idx: Iterable[int] = ()) -> SubringHandle:
        return SubringHandle(self, self.closure(idx))

    @property
    def bottom(self) -> SubringHandle:
        return SubringHandle(self, ())

    def subring(self, idx: Iterable[int] = ()) -> ArtinianAlgebra:
        key = self.closure(idx)
        A = self._cache.get(key)
        if A is None:
            A = self._build(key)
            A.origin = (self, key)
            # racing builders produce identical presentations; keep the first
            A = self._cache.setdefault(key, A)
        return A

    def _build(self, idx: Tuple[int, ...]) -> ArtinianAlgebra:
        if not isinstance(self.base, PresentedAlgebra):
            raise UnsupportedPresentation("generators can only be adjoined to a presented base")
        names = list(self.base.vars)
        rels = [str(g) for g in self.base.given]
        for i in idx:
            n, r = self.generator(i)
            names.append(n)
            rels.extend(r)
        return present(self.field, names, rels)

    def embed(self, a: AlgebraElement, target: SubringHandle) -> AlgebraElement:
        """Image of ``a`` (in some cached subring) inside ``target``'s algebra."""
        B = target.algebra
        if a.owner is B:
            return a
        src = self.handle_of(a.owner)
        if not set(src.idx) <= set(target.idx):
            raise FamilyMismatch(f"{src!r} is not contained in {target!r}")
        if isinstance(B, ProductAlgebra) or isinstance(a.owner, ProductAlgebra):
            raise UnsupportedPresentation("embedding of product algebras into larger subrings")
        return B.from_poly(a.to_poly())

    def handle_of(self, A: ArtinianAlgebra) -> SubringHandle:
        if A.origin is None or A.origin[0] is not self:
            raise FamilyMismatch(f"{A!r} is not a subring of {self!r}")
        return SubringHandle(self, A.origin[1])

    def parse(self, text: str, handle: Optional[SubringHandle] = None) -> AlgebraElement:
        """Parse an element; without a handle, the smallest subring containing its variables."""
        if handle is None:
            handle = self.handle(self.indices_in(text))
        A = handle.algebra
        if not isinstance(A, PresentedAlgebra):
            raise UnsupportedPresentation("text elements need a presented subring")
        return A.parse(text)

    def indices_in(self, text: str) -> List[int]:
        return self.indices_of_names(variables_in(text))

    def base_names(self) -> Dict[str, AlgebraElement]:
        """Names usable for base elements: variables, or ``e0, e1, ...`` for a product."""
        B = self.base
        if isinstance(B, PresentedAlgebra):
            return {v: B.gen(v) for v in B.vars}
        if isinstance(B, ProductAlgebra):
            return {f"e{k}": e for k, e in enumerate(B.idempotents())}
        return {}

    def indices_of_names(self, names: Iterable[str]) -> List[int]:
        base = self.base_names()
        out = []
        for name in names:
            if name in base:
                continue
            i = self.index_of(name)
            if i is None:
                raise AmbientMismatch(f"{name!r} is not a variable of {self!r}")
            out.append(i)
        return out

    def coefficient_assignment(self, handle: SubringHandle) -> Dict[str, AlgebraElement]:
        """Name -> element of ``handle.algebra`` for every name valid there."""
        A = handle.algebra
        if isinstance(A, PresentedAlgebra):
            return {v: A.gen(v) for v in A.vars}
        if handle.idx:
            raise UnsupportedPresentation("only presented windows carry generator names")
        return self.base_names()


def subring(F: DirectedFamily, idx: Iterable[int] = ()) -> ArtinianAlgebra:
    return F.subring(idx)


def integrality_witness(F: DirectedFamily, idx, element) -> Polynomial:
    """Monic polynomial over the base field (hence over ``R0``) killed by ``element``."""
    if isinstance(element, str):
        element = F.parse(element, F.handle(idx))
    handle = F.handle(idx)
    element = F.embed(element, handle)
    return minimal_polynomial(element)


# ---------------------------------------------------------------------------
# strict chains


@dataclass(frozen=True)
class ChainStep:
    index: int
    generator: str
    strict_in_ring: bool
    strict_in_series: bool
    window: Tuple[int, ...]

    def to_json(self):
        return {
            "i": self.index,
            "next": self.generator,
            "strict_in_ring": self.strict_in_ring,
            "strict_in_series": self.strict_in_series,
            "window": list(self.window),
        }


def non_noetherian_chain(F: DirectedFamily, t: int, generators: Optional[Sequence[str]] = None) -> List[ChainStep]:
    """For ``i < t``, test whether ``r_{i+1}`` lies outside ``(r_0, ..., r_i)``.

    The ring test uses a Groebner basis of relations plus generators.  The
    series test compares constant terms: a relation ``r_{i+1} = sum g_j r_j``
    in the series ring forces the same relation with the constant terms of
    the ``g_j``, which is checked independently as a span computation.
    """
    if t <= 0:
        return []
    if F.stream.finite:
        raise StreamFinite(f"stream {F.stream.name!r} is finite; no infinite chain")
    if generators is None:
        generators = [F.generator_name(i) for i in range(t + 1)]
    if len(generators) < t + 1:
        raise ValueError(f"need {t + 1} chain generators, got {len(generators)}")
    out = []
    for i in range(t):
        texts = list(generators[: i + 2])
        idx = set()
        for s in texts:
            idx.update(F.indices_in(s))
        h = F.handle(idx)
        A = h.algebra
        rs = [A.parse(s) for s in texts]
        prev, nxt = rs[:-1], rs[-1]
        polys = [r.to_poly() for r in prev] + list(A.relations.generators)
        in_ring = ideal_membership(nxt.to_poly(), polys)
        in_series = A.ideal_span(prev).contains(nxt.vec)
        out.append(ChainStep(i, texts[-1], not in_ring, not in_series, h.idx))
    return out


# ---------------------------------------------------------------------------
# built-in families


def _index_after(prefix: str):
    def index_of(name: str):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return int(name[len(prefix):])
        return None

    return index_of


def example_ring_family(field=QQ) -> DirectedFamily:
    """``k[y, z0, z1, ...]/(y^2, z_i^2, y*z_i)``: local, zero-dimensional, not Noetherian."""
    base = present(field, ["y"], ["y^2"])
    stream = GeneratorStream(
        "example-ring",
        lambda i: (f"z{i}", (f"z{i}^2", f"y*z{i}")),
        None,
        _index_after("z"),
    )
    return DirectedFamily(base, stream)


def _primes():
    n = 2
    while True:
        if all(n % p for p in range(2, int(n ** 0.5) + 1)):
            yield n
        n += 1


_PRIME_LIST: List[int] = []


def nth_prime(i: int) -> int:
    gen = _primes()
    while len(_PRIME_LIST) <= i:
        _PRIME_LIST[:] = [next(gen) for _ in range(max(2 * len(_PRIME_LIST), i + 1))]
    return _PRIME_LIST[i]


def quadratic_tower_family(field=QQ) -> DirectedFamily:
    """``Q(sqrt 2, sqrt 3, sqrt 5, ...)``: square roots of successive primes."""
    if field != QQ:
        raise UnsupportedPresentation("the quadratic tower is defined over Q")
    base = prime_field_algebra(QQ)
    stream = GeneratorStream(
        "quadratic-tower",
        lambda i: (f"t{i}", (f"t{i}^2 - {nth_prime(i)}",)),
        None,
        _index_after("t"),
    )
    # the base field algebra is shared, so give the family its own copy
    return DirectedFamily(present(QQ, [], []), stream)


def product_family(factors: Sequence[ArtinianAlgebra], name: str = "product") -> DirectedFamily:
    return DirectedFamily(ProductAlgebra(factors), empty_stream(name), name)


def qxq_family(field=QQ) -> DirectedFamily:
    return product_family([present(field, [], []), present(field, [], [])], "qxq")


def rationals_family(field=QQ) -> DirectedFamily:
    return DirectedFamily(present(field, [], []), empty_stream("rationals"), "rationals")


def constant_family(A: ArtinianAlgebra, name: str = "ring") -> DirectedFamily:
    """A single Artinian ring viewed as a family with no further generators."""
    return DirectedFamily(A, empty_stream(name), name)


BUILTIN_FAMILIES: Dict[str, Callable[..., DirectedFamily]] = {
    "example-ring": example_ring_family,
    "quadratic-tower": quadratic_tower_family,
    "qxq": qxq_family,
    "rationals": rationals_family,
}


def register_family(name: str, factory: Callable[..., DirectedFamily]):
    """Make a plugin stream available to scenario files under ``name``."""
    if name in BUILTIN_FAMILIES:
        raise ValueError(f"family {name!r} already registered")
    BUILTIN_FAMILIES[name] = factory


def builtin_family(name: str, field=QQ) -> DirectedFamily:
    try:
        factory = BUILTIN_FAMILIES[name]
    except KeyError:
        raise UnsupportedPresentation(
            f"unknown family {name!r}; known: {sorted(BUILTIN_FAMILIES)}"
        ) from None
    return factory(field)
