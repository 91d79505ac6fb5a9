"""Equational flatness certificates for the truncated series ring.

Given ``sum r_i m_i = 0`` with ``r_i`` in the coefficient ring and ``m_i``
series, a certificate is a matrix ``b`` over some window ``R_beta`` and
series ``y_j`` with

* ``sum_i r_i b_ij = 0`` for every ``j``, and
* ``m_i = sum_j b_ij y_j`` below the truncation degree.

Syzygies of ``r`` over ``R_beta`` are computed as a base-field basis of the
kernel of ``x -> sum r_i x_i``.  Each coefficient vector ``(m_i)_mu`` is
itself such a syzygy, so it is a base-field combination of the basis; those
scalars become the coefficients of the ``y_j``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .artinian import AlgebraElement, is_zero_divisor
from .errors import ConstraintViolated, NoSolution, SamplingExhausted
from .exactpoly import Echelon, kernel, solve as linsolve
from .family import DirectedFamily, SubringHandle, join
from .series import ExtIdealDesc, SeriesContext, SeriesElement, ext_membership

# resampling attempts before random_relation gives up
SAMPLING_BUDGET = 64


@dataclass(frozen=True)
class RelationInstance:
    ctx: SeriesContext
    r: Tuple[AlgebraElement, ...]
    m: Tuple[SeriesElement, ...]

    def __post_init__(self):
        if len(self.r) != len(self.m) or not self.r:
            raise ValueError("r and m must have the same positive length")

    @property
    def n(self) -> int:
        return len(self.r)

    def window(self) -> SubringHandle:
        F = self.ctx.family
        h = F.bottom
        for a in self.r:
            h = join(h, F.handle_of(a.owner))
        for f in self.m:
            h = join(h, f.handle)
        return h

    def residual(self) -> SeriesElement:
        total = self.ctx.zero()
        for a, f in zip(self.r, self.m):
            total = total + f * self.ctx.const(a)
        return total

    def holds(self) -> bool:
        return self.residual().is_zero()

    def to_json(self):
        return {"r": [a.to_json() for a in self.r], "m": [str(f) for f in self.m]}


@dataclass(frozen=True)
class FlatCertificate:
    beta: SubringHandle
    b: Tuple[Tuple[AlgebraElement, ...], ...]   # n rows, s columns
    y: Tuple[SeriesElement, ...]

    @property
    def width(self) -> int:
        return len(self.y)

    def to_json(self):
        return {
            "beta": list(self.beta.idx),
            "b": [[c.to_json() for c in row] for row in self.b],
            "y": [y.to_json() for y in self.y],
        }


def verify_certificate(inst: RelationInstance, cert: FlatCertificate) -> bool:
    """Re-check both defining identities directly from the data."""
    ctx = inst.ctx
    F = ctx.family
    beta = cert.beta
    r = [F.embed(a, beta) for a in inst.r]
    if len(cert.b) != inst.n:
        return False
    for j in range(cert.width):
        col = beta.algebra.zero
        for i in range(inst.n):
            col = col + r[i] * cert.b[i][j]
        if col:
            return False
    for i in range(inst.n):
        rhs = ctx.zero(beta)
        for j in range(cert.width):
            rhs = rhs + cert.y[j] * ctx.const(cert.b[i][j], beta)
        if not (inst.m[i] - rhs).is_zero():
            return False
    return True


def syzygy_basis(r: Sequence[AlgebraElement]) -> List[Tuple[AlgebraElement, ...]]:
    """Base-field basis of ``{x in A^n : sum r_i x_i = 0}``."""
    A = r[0].owner
    d = A.dim
    cols = []
    for a in r:
        for k in range(d):
            cols.append((a * A.basis_element(k)).vec)
    out = []
    for vec in kernel(A.field, cols):
        parts = [{} for _ in r]
        for idx, c in vec.items():
            i, k = divmod(idx, d)
            parts[i][k] = c
        out.append(tuple(AlgebraElement(A, p) for p in parts))
    return out


def solve(inst: RelationInstance) -> FlatCertificate:
    if not inst.holds():
        raise ConstraintViolated(f"sum r_i m_i = {inst.residual()} is not zero below degree {inst.ctx.trunc}")
    ctx = inst.ctx
    F = ctx.family
    beta = inst.window()
    A = beta.algebra
    r = [F.embed(a, beta) for a in inst.r]
    m = [f.lift(beta) for f in inst.m]
    syz = syzygy_basis(r)
    d = A.dim
    n = inst.n
    E = Echelon(A.field, track=True)
    for j, s in enumerate(syz):
        vec = {}
        for i, a in enumerate(s):
            for k, c in a.vec.items():
                vec[i * d + k] = c
        E.insert(vec, tag=j)
    coeffs = [dict() for _ in syz]
    monos = set()
    for f in m:
        monos.update(f.coeffs)
    for mu in sorted(monos, key=lambda x: ctx.mono_index[x]):
        target = {}
        for i, f in enumerate(m):
            for k, c in f.coefficient(mu).vec.items():
                target[i * d + k] = c
        rem, combo = E.express(target)
        if rem:
            raise NoSolution(f"coefficient of {mu} is not a syzygy combination; flatness self-check failed")
        for j, c in combo.items():
            coeffs[j][mu] = A.scalar(c)
    keep = [j for j in range(len(syz)) if coeffs[j]]
    b = tuple(tuple(syz[j][i] for j in keep) for i in range(n))
    y = tuple(SeriesElement(ctx, beta, coeffs[j]) for j in keep)
    cert = FlatCertificate(beta, b, y)
    if not verify_certificate(inst, cert):
        raise NoSolution("constructed certificate fails its own identities")
    return cert


def survival_check(E: ExtIdealDesc) -> bool:
    """``MS != S``: the unit series ``1`` is not in ``MS`` (constant-term argument)."""
    one = E.ctx.one(E.window)
    unit = not is_zero_divisor(one.constant_term()).zero_divisor
    return unit and not ext_membership(one, E)


# ---------------------------------------------------------------------------
# random instances


def _sub_window(rng: random.Random, h: SubringHandle) -> SubringHandle:
    idx = [i for i in h.idx if rng.random() < 0.6]
    return h.family.handle(idx)


def _random_nonunit(rng: random.Random, h: SubringHandle) -> AlgebraElement:
    A = h.algebra
    Ms = A.maximal_ideals()
    M = Ms[rng.randrange(len(Ms))]
    a = A.random_element(rng)
    if M.generators:
        g = M.generators[rng.randrange(len(M.generators))]
        return g * (a + A.one)
    return A.zero


def random_relation(seed: int, ring, n: int, D: int, series_vars: Sequence[str] = ("X",),
                    budget: int = SAMPLING_BUDGET) -> RelationInstance:
    """Deterministic pseudo-random ``r, m`` with ``sum r_i m_i = 0``.

    ``ring`` is a window handle or a family (its bottom window).  ``r`` and
    ``m_1..m_{n-1}`` are sampled in random sub-windows; ``m_n`` is solved
    for coefficientwise and shifted by a random annihilator of ``r_n``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    h = ring if isinstance(ring, SubringHandle) else ring.bottom
    F = h.family
    ctx = SeriesContext(F, series_vars, D)
    rng = random.Random(seed)
    for _ in range(budget):
        r = []
        for _ in range(n):
            w = _sub_window(rng, h)
            u = rng.random()
            if u < 0.15:
                r.append(w.algebra.zero)
            elif u < 0.7:
                r.append(_random_nonunit(rng, w))
            else:
                r.append(w.algebra.random_element(rng, 0.7))
        ms = []
        for i in range(n - 1):
            w = _sub_window(rng, h)
            f = ctx.random_element(rng, w, density=0.5)
            if rng.random() < 0.5:
                f = f * ctx.const(r[-1])
            ms.append(f)
        last = _solve_last(ctx, h, r, ms, rng)
        if last is None:
            continue
        inst = RelationInstance(ctx, tuple(r), tuple(ms) + (last,))
        if inst.holds():
            return inst
    raise SamplingExhausted(f"no consistent relation after {budget} attempts (seed {seed})")


def _solve_last(ctx: SeriesContext, h: SubringHandle, r, ms, rng) -> Optional[SeriesElement]:
    F = ctx.family
    A = h.algebra
    rn = F.embed(r[-1], h)
    rest = ctx.zero(h)
    for a, f in zip(r, ms):
        rest = rest + f * ctx.const(a)
    rest = rest.lift(h)
    cols = [(rn * A.basis_element(k)).vec for k in range(A.dim)]
    ann = kernel(A.field, cols)
    coeffs = {}
    for mu in ctx.monomials:
        target = (-rest.coefficient(mu)).vec
        x = linsolve(A.field, cols, target) if target else {}
        if x is None:
            return None
        z = dict(x)
        if ann and rng.random() < 0.4:
            v = ann[rng.randrange(len(ann))]
            c = rng.randint(-2, 2)
            for k, val in v.items():
                z[k] = z.get(k, 0) + c * val
        coeffs[mu] = AlgebraElement(A, {k: A.field(v) for k, v in z.items() if v})
    return SeriesElement(ctx, h, coeffs)
