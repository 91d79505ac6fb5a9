"""Acceptance criteria, each with its runtime budget.

Every criterion prints one ``PASS``/``FAIL`` line (collected and repeated in
the terminal summary) and asserts both correctness and the budget.
"""

import random
import time

import pytest

from artin_series.errors import NotHeightGenerated
from artin_series.examples import non_sft_scan, wb_failure_check
from artin_series.family import builtin_family, non_noetherian_chain
from artin_series.flatcert import random_relation, solve, survival_check, verify_certificate
from artin_series.idealkit import (
    FgIdeal,
    associated_primes_monomial,
    cgrade_report,
    ideal_contains,
    is_regular_sequence,
    monomial_family,
    prime_chain,
    replace_with_regular,
    slice_components,
    verify_unmixed,
)
from artin_series.report import build_report, strip_timings, to_json_text
from artin_series.scenario import load_scenario_file, run_scenario
from artin_series.series import (
    SeriesContext,
    ext_membership,
    minimal_primes,
    quotient_presentation,
    residue_map,
)

from oracles import brute_height_generated, monomial_associated_primes
from samples import seeded_height_generated

EX = builtin_family("example-ring")
TOWER = builtin_family("quadratic-tower")
QXQ = builtin_family("qxq")
RAT = builtin_family("rationals")

# each built-in ring with the window used for it
RINGS = {
    "example-ring": EX.handle(range(4)),
    "qxq": QXQ.bottom,
    "quadratic-tower": TOWER.handle(range(3)),
    "rationals": RAT.bottom,
}


class Clock:
    def __init__(self, number, title, budget, record):
        self.number, self.title, self.budget, self.record = number, title, budget, record

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and (self.budget is None or elapsed < self.budget)
        budget = f"budget {self.budget:.0f} s" if self.budget else "no budget"
        why = "" if exc_type is None else f" ({exc_type.__name__}: {exc})"
        self.record(f"criterion {self.number:2d} {'PASS' if ok else 'FAIL'}  {self.title}: "
                    f"{elapsed:.2f} s, {budget}{why}")
        if exc_type is None and not ok:
            raise AssertionError(f"criterion {self.number} took {elapsed:.2f} s, over its {self.budget} s budget")
        return False


@pytest.fixture
def criterion(acceptance_record):
    def make(number, title, budget):
        return Clock(number, title, budget, acceptance_record)

    return make


# -- exhaustive monomial family shared by criteria 4 to 6 ----------------------

def exhaustive_ideals():
    for n in (1, 2, 3):
        ctx = SeriesContext(QXQ, [f"X{i + 1}" for i in range(n)], 6)
        for exps in monomial_family(n, 3, 3):
            yield n, exps, FgIdeal(ctx, [ctx.monomial(m) for m in exps])


@pytest.fixture(scope="module")
def exhaustive():
    return list(exhaustive_ideals())


def test_flatness(criterion):
    with criterion(1, "faithful flatness, 500 certificates per ring plus survival", 60):
        for name in ("example-ring", "qxq", "quadratic-tower"):
            h = RINGS[name]
            for seed in range(500):
                inst = random_relation(seed, h, 1 + seed % 3, 4)
                cert = solve(inst)
                assert verify_certificate(inst, cert), (name, seed)
                assert cert.beta.idx == inst.window().idx or inst.window() <= cert.beta
            ctx = SeriesContext(h.family, ["X"], 4)
            assert all(survival_check(E) for E in minimal_primes(ctx, h)), name


def test_dimension(criterion):
    with criterion(2, "dimension n: certified chains and tensor identity at D = 4", 10):
        for name, h in RINGS.items():
            for n in (1, 2, 3):
                ctx = SeriesContext(h.family, [f"X{i + 1}" for i in range(n)], 4)
                for E in minimal_primes(ctx, h):
                    chain = prime_chain(E, n)
                    assert chain.certified and chain.length == n, (name, n)
                    q = quotient_presentation(ctx, E, h)
                    assert q.holds and q.rank == E.residue_degree(h) * ctx.monomial_count, (name, n)


def test_minimal_primes(criterion):
    with criterion(3, "minimal primes are the extensions MS, kernel identity on 200 elements", 10):
        for name, h in RINGS.items():
            ctx = SeriesContext(h.family, ["X"], 4)
            comps = minimal_primes(ctx, h)
            Ms = h.algebra.maximal_ideals()
            assert len(comps) == len(Ms)
            for M in Ms:
                assert sum(E.restriction(h).same_as(M) for E in comps) == 1, name
            rng = random.Random(3)
            for i in range(200):
                f = ctx.random_element(rng, h, density=0.4)
                E = comps[i % len(comps)]
                gens = E.restriction(h).generators
                if gens and i % 2:
                    f = f * ctx.const(gens[i % len(gens)])
                for E in comps:
                    assert residue_map(f, E).is_zero() == ext_membership(f, E), (name, i)


def test_krull_bound(criterion, exhaustive):
    with criterion(4, "Krull bound and regular sequences are height-generated (n <= 3)", 30):
        regular = 0
        for n, exps, I in exhaustive:
            heights = [c.height for c in slice_components(I)]
            assert all(h <= len(exps) for h in heights), exps
            if is_regular_sequence(I.gens).regular:
                regular += 1
                assert all(h == len(exps) for h in heights), exps
        assert len(exhaustive) == 7 + 129 + 1159 and regular > 0


def _height_generated(I):
    comps = slice_components(I)
    return all(c.mu == c.height for c in comps), comps


def test_unmixed(criterion, exhaustive):
    with criterion(5, "height-generated monomial ideals are unmixed on every component", 30):
        checked = 0
        for n, exps, I in exhaustive:
            ok, comps = _height_generated(I)
            assert ok == brute_height_generated(exps, n), exps
            if not ok:
                continue
            rep = verify_unmixed(I)
            assert rep.unmixed, exps
            for comp, listed in zip(comps, rep.components):
                primes = {p.Z for p in listed.primes}
                assert all(len(Z) == comp.height for Z in primes), exps
                assert primes == monomial_associated_primes(list(comp.exponents), n), exps
                direct = {p.Z for p in associated_primes_monomial(list(comp.exponents), n=n)}
                assert primes == direct
            checked += 1
        assert checked > 0
        ctx = SeriesContext(QXQ, ["X1", "X2"], 6)
        with pytest.raises(NotHeightGenerated):
            verify_unmixed(FgIdeal.parse(ctx, ["X1^2", "X1*X2"]))


def test_grade_equals_height(criterion, exhaustive):
    with criterion(6, "cgrade equals height on height-generated ideals at D = 6", 30):
        for n, exps, I in exhaustive:
            ok, comps = _height_generated(I)
            if not ok:
                continue
            g = cgrade_report(I)
            assert g.grade == min(c.height for c in comps), exps
            assert g.report.regular and g.report.certified_to_degree == 6


def test_regular_generation(criterion):
    with criterion(7, "replacement by a regular sequence on the fixed suite", 10):
        ctx = SeriesContext(QXQ, ["X1"], 6)
        suite = [FgIdeal.parse(ctx, ["e0*X1", "e1*X1"])] + seeded_height_generated(7, 10)
        for I in suite:
            r = replace_with_regular(I)
            assert r.report.regular and r.generated_same
            assert ideal_contains(I, r.ideal) and ideal_contains(r.ideal, I)
        first = replace_with_regular(suite[0])
        assert [str(g) for g in first.ideal.gens] == ["X1"]


def test_sft_counterexample(criterion):
    with criterion(8, "non-SFT witnesses for k = 1..6 and three ideals J", 5):
        for J in (["z0"], ["z0", "z1", "z2", "z3", "z4"], ["z0*z1"]):
            rows = non_sft_scan(6, J)
            assert len(rows) == 6
            for w in rows:
                assert w.expansion_ok and w.outside_J and w.stable, (J, w.k)
        assert non_sft_scan(3, ["z0", "z1", "z2", "z3", "z4"])[2].power == "6*z5*z6*z7"


def test_wb_failure(criterion):
    with criterion(9, "y annihilates P[[X]] and no unit-constant series (s = 4, D = 6)", 5):
        rep = wb_failure_check(4, 6, samples=50, seed=0)
        assert rep.annihilated == rep.spanning_set
        assert rep.nonzero_products == rep.samples == 50


def test_non_noetherian(criterion):
    with criterion(10, "strict chain z0 < (z0, z1) < ... for t = 6, in R and in the series ring", 5):
        steps = non_noetherian_chain(EX, 6)
        assert len(steps) == 6
        assert all(s.strict_in_ring and s.strict_in_series for s in steps)


def test_determinism(criterion):
    with criterion(11, "paper-suite twice gives identical JSON apart from timings", None):
        texts = []
        for _ in range(2):
            sc = load_scenario_file("paper-suite")
            outcomes = run_scenario(sc)
            assert all(o.verdict == "pass" for o in outcomes), [o.reason for o in outcomes if o.verdict != "pass"]
            texts.append(to_json_text(strip_timings(build_report(sc.name, sc.seed, outcomes))))
        assert texts[0] == texts[1]
