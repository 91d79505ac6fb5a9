"""Sparse multivariate polynomials over an exact field.

Monomials are exponent tuples indexed by variable position; variable names
only live on the :class:`PolyRing`.  Terms are compared with the
degree-reverse-lexicographic order.
"""

from __future__ import annotations

from typing import Dict, Iterable, Tuple

from ..errors import AmbientMismatch

Monomial = Tuple[int, ...]


def degrevlex_key(e: Monomial):
    """Sort key: a larger key means a larger monomial in degrevlex."""
    return (sum(e), tuple(-x for x in reversed(e)))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    """Ambient polynomial ring ``field[names]``."""

    def __init__(self, field, names: Iterable[str]):
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self.nvars = len(self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self._key = (field, self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"{self.field!r}[{', '.join(self.names)}]"

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index[name_or_index]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Monomial, c=1) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        from .parse import parse_polynomial

        return parse_polynomial(text, self)

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x.to_ring(self)
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` never stores zero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, object]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    # -- structure -----------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise AmbientMismatch(f"{self.ring!r} vs {other.ring!r}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        """Terms in decreasing degrevlex order."""
        return sorted(self.terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=degrevlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def support_variables(self) -> set:
        return {i for m in self.terms for i, x in enumerate(m) if x}

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.ring.field.one / self.leading_coefficient()
        return Polynomial(self.ring, {m: c * inv for m, c in self.terms.items()})

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-embed into another ring by matching variable names."""
        if ring == self.ring:
            return self
        pos = []
        for i, name in enumerate(self.ring.names):
            pos.append(ring.index.get(name))
        terms = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, x in enumerate(m):
                if x:
                    if pos[i] is None:
                        raise AmbientMismatch(
                            f"variable {self.ring.names[i]!r} missing from {ring!r}"
                        )
                    e[pos[i]] = x
            terms[tuple(e)] = ring.field(c)
        return Polynomial(ring, terms)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field(other)
            return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        terms: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        return Polynomial(self.ring, {mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int,)) or hasattr(other, "denominator") or hasattr(other, "p"):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- display -------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            factors = []
            for name, x in zip(self.ring.names, m):
                if x == 1:
                    factors.append(name)
                elif x:
                    factors.append(f"{name}^{x}")
            cs = str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if factors:
                body = "*".join(factors) if cs == "1" else f"{cs}*" + "*".join(factors)
            else:
                body = cs
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"
