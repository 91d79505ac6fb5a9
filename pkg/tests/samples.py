"""Deterministic test inputs shared by several test modules."""

import itertools
import random

from artin_series.errors import NotHeightGenerated
from artin_series.family import builtin_family
from artin_series.idealkit import FgIdeal, require_height_generated, slice_components
from artin_series.series import SeriesContext

QXQ = builtin_family("qxq")


def ctx(n, F=QXQ, D=6):
    return SeriesContext(F, [f"X{i + 1}" for i in range(n)], D)


def seeded_height_generated(seed, count):
    """Slice ideals over Q x Q with idempotent coefficients that are height-generated."""
    rng = random.Random(seed)
    out = []
    e = ["e0*", "e1*", "", "2*"]
    while len(out) < count:
        n = rng.choice([2, 3])
        c = ctx(n)
        monos = [m for m in itertools.product(range(3), repeat=n) if 1 <= sum(m) <= 2]
        picked = rng.sample(monos, rng.randint(1, 3))
        texts = []
        for m in picked:
            mono = "*".join(f"X{i + 1}^{x}" for i, x in enumerate(m) if x)
            coeff = rng.choice(e)
            texts.append(coeff + mono)
            if coeff in ("e0*", "e1*") and rng.random() < 0.7:
                texts.append(("e1*" if coeff == "e0*" else "e0*") + mono)
        I = FgIdeal.parse(c, texts)
        try:
            require_height_generated(I)
        except NotHeightGenerated:
            continue
        if any(comp.mu == 0 for comp in slice_components(I)):
            continue
        out.append(I)
    return out
