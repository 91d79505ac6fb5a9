import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from artin_series.errors import (
    NotHeightGenerated,
    NotMonomial,
    NotSupportedSlice,
    UnitGenerator,
)
from artin_series.family import builtin_family
from artin_series.idealkit import (
    FgIdeal,
    _regular_step,
    _Space,
    associated_primes_monomial,
    catenary_check,
    cgrade,
    cgrade_report,
    height_monomial,
    ideal_contains,
    is_regular_sequence,
    monomial_family,
    prime_chain,
    replace_with_regular,
    saturated_chains,
    truncated_membership,
    verify_unmixed,
)
from artin_series.series import SeriesContext, minimal_primes

from oracles import monomial_associated_primes
from samples import seeded_height_generated

QXQ = builtin_family("qxq")
RAT = builtin_family("rationals")
EX = builtin_family("example-ring")


def ctx(n, F=QXQ, D=6):
    return SeriesContext(F, [f"X{i + 1}" for i in range(n)], D)


def ideal(c, *gens):
    return FgIdeal.parse(c, list(gens))


class TestMembership:
    def test_generator(self):
        c = ctx(1)
        assert truncated_membership(c.parse("X1"), ideal(c, "X1"))

    def test_sum_of_idempotent_multiples(self):
        c = ctx(1)
        assert truncated_membership(c.parse("X1"), ideal(c, "e0*X1", "e1*X1"))

    @pytest.mark.parametrize("D", [1, 2, 5])
    def test_unit_not_member(self, D):
        c = ctx(1, D=D)
        assert not truncated_membership(c.parse("1"), ideal(c, "X1"))


class TestRegularSequence:
    def test_variables(self):
        c = ctx(2, RAT)
        assert is_regular_sequence([c.parse("X1"), c.parse("X2")]).regular

    def test_repeated(self):
        c = ctx(2, RAT)
        r = is_regular_sequence([c.parse("X1"), c.parse("X1")])
        assert not r.regular and r.length == 1
        w = r.witness
        x = c.parse("X1")
        I = ideal(c, "X1")
        assert not truncated_membership(w, I) and truncated_membership(w * x, I)

    def test_idempotent_multiple(self):
        c = ctx(1)
        r = is_regular_sequence([c.parse("e0*X1")])
        assert not r.regular and r.length == 0
        assert str(r.witness) == str(c.parse("e1"))

    def test_unit_generator(self):
        c = ctx(1)
        with pytest.raises(UnitGenerator):
            is_regular_sequence([c.parse("1 + X1")])


class TestReplace:
    def test_idempotent_pair(self):
        c = ctx(1)
        I = ideal(c, "e0*X1", "e1*X1")
        r = replace_with_regular(I)
        assert [str(g) for g in r.ideal.gens] == ["X1"]
        assert r.report.regular and r.generated_same
        assert ideal_contains(I, r.ideal) and ideal_contains(r.ideal, I)

    def test_already_regular(self):
        c = ctx(2)
        I = ideal(c, "X1", "X2")
        r = replace_with_regular(I)
        assert r.ideal.gens == I.gens

    def test_empty(self):
        c = ctx(2)
        r = replace_with_regular(FgIdeal(c, []))
        assert r.ideal.gens == () or list(r.ideal.gens) == []

    def test_not_height_generated(self):
        c = ctx(2)
        with pytest.raises(NotHeightGenerated):
            replace_with_regular(ideal(c, "X1^2", "X1*X2"))


class TestHeight:
    def test_principal(self):
        assert height_monomial([(1, 1)], n=2) == 1

    def test_triangle(self):
        gens = [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
        # brute force over all 8 subsets of variables
        covers = [S for r in range(4) for S in itertools.combinations(range(3), r)
                  if all(any(g[i] for i in S) for g in gens)]
        assert height_monomial(gens, n=3) == min(len(S) for S in covers) == 2

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_all_variables(self, n):
        gens = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        assert height_monomial(gens, n=n) == n

    def test_not_monomial(self):
        c = ctx(2, RAT)
        with pytest.raises(NotMonomial):
            height_monomial([c.parse("X1 + X2")])


class TestAssociatedPrimes:
    def test_square(self):
        assert [set(p.Z) for p in associated_primes_monomial([(2,)], n=1)] == [{0}]

    def test_embedded(self):
        assert {p.Z for p in associated_primes_monomial([(2, 0), (1, 1)], n=2)} == {frozenset({0}), frozenset({0, 1})}

    def test_product(self):
        assert {p.Z for p in associated_primes_monomial([(1, 1)], n=2)} == {frozenset({0}), frozenset({1})}


class TestUnmixed:
    def test_variables_over_product(self):
        c = ctx(3)
        rep = verify_unmixed(ideal(c, "X1", "X2"))
        assert rep.unmixed and len(rep.components) == 2
        assert all(p.height == 2 for comp in rep.components for p in comp.primes)

    def test_principal(self):
        c = ctx(2)
        rep = verify_unmixed(ideal(c, "X1*X2"))
        assert rep.unmixed
        assert {p.Z for p in rep.components[0].primes} == {frozenset({0}), frozenset({1})}

    def test_embedded_rejected(self):
        c = ctx(2)
        with pytest.raises(NotHeightGenerated):
            verify_unmixed(ideal(c, "X1^2", "X1*X2"))


class TestGrade:
    def test_variables(self):
        c = ctx(3)
        assert cgrade(ideal(c, "X1", "X2", "X3")) == 3

    def test_principal(self):
        c = ctx(2)
        assert cgrade(ideal(c, "X1*X2")) == 1

    def test_zero(self):
        assert cgrade(FgIdeal(ctx(2), [])) == 0

    def test_triangle(self):
        c = ctx(3)
        g = cgrade_report(ideal(c, "X1*X2", "X1*X3", "X2*X3"))
        assert g.grade == g.height == 2 and g.report.regular

    def test_outside_slice(self):
        c = ctx(2, RAT)
        with pytest.raises(NotSupportedSlice):
            cgrade(ideal(c, "X1 + X2", "2*X1 + 2*X2"))

    def test_regular_outside_slice(self):
        c = ctx(2, RAT)
        assert cgrade(ideal(c, "X1 + X2^2", "X2")) == 2


class TestChains:
    def test_two_variables_over_field(self):
        c = ctx(2, RAT)
        (E,) = minimal_primes(c)
        ch = prime_chain(E)
        assert ch.length == 2 and ch.certified

    def test_example_ring(self):
        c = SeriesContext(EX, ["X1"], 6)
        (E,) = minimal_primes(c, EX.handle([0]))
        ch = prime_chain(E, 1)
        assert ch.length == 1 and ch.certified

    def test_saturated_chain_lengths(self):
        chains = saturated_chains(frozenset({0}), frozenset({0, 1, 2}))
        assert len(chains) == 2 and all(len(ch) - 1 == 2 for ch in chains)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_catenary(self, n):
        assert catenary_check(n).equal_lengths


# -- oracles and property tests ------------------------------------------------

SMALL_FAMILY = [gens for n in (1, 2, 3) for gens in monomial_family(n, 3, 2)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_associated_primes_match_decomposition_oracle(n):
    for gens in monomial_family(n, 3, 3):
        got = {p.Z for p in associated_primes_monomial(gens, n=n)}
        assert got == monomial_associated_primes(gens, n), gens


@pytest.mark.parametrize("exps", [[(2, 0), (1, 1)], [(1, 1)], [(1, 0), (0, 2)], [(1, 1, 0), (0, 1, 1)],
                                  [(2, 0, 0), (0, 1, 1)], [(1, 1, 0), (1, 0, 1), (0, 1, 1)]], ids=str)
def test_zero_divisors_are_the_listed_primes(exps):
    """Truncated zero-divisor oracle: ``u`` fails to be regular mod ``I`` iff it lies in an associated prime."""
    n = len(exps[0])
    c = ctx(n, RAT, D=7)
    I = FgIdeal(c, [c.monomial(m) for m in exps])
    primes = [p.Z for p in associated_primes_monomial(exps, n=n)]
    V = _Space(c, RAT.bottom)
    J = V.ideal_span(I.gens)
    rng = random.Random(len(exps))
    samples = [c.monomial(tuple(int(i == j) for j in range(n))) for i in range(n)]
    for _ in range(8):
        support = [i for i in range(n) if rng.random() < 0.5] or [0]
        samples.append(sum((c.var(f"X{i + 1}") * c.const(c.family.bottom.algebra.scalar(rng.randint(1, 3)))
                            for i in support), c.zero()))
    for u in samples:
        support = {i for i in range(n) if any(m[i] for m in u.coeffs)}
        in_prime = any(support <= Z for Z in primes)
        regular = _regular_step(V, J, u, 0).regular
        assert regular != in_prime, (str(u), primes)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL_FAMILY))
def test_krull_bound_and_regular_prefixes(gens):
    n = len(gens[0])
    c = ctx(n, RAT)
    fs = [c.monomial(m) for m in gens]
    assert height_monomial(gens, n=n) <= len(gens)
    # regular iff every prefix has height equal to its length
    prefix_ok = all(height_monomial(gens[:i], n=n) == i for i in range(1, len(gens) + 1))
    assert is_regular_sequence(fs).regular == prefix_ok


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([g for g in SMALL_FAMILY if len(g) > 1]), st.randoms(use_true_random=False))
def test_permuting_regular_sequences(gens, rnd):
    n = len(gens[0])
    c = ctx(n, RAT)
    fs = [c.monomial(m) for m in gens]
    if not is_regular_sequence(fs).regular:
        return
    perm = list(fs)
    rnd.shuffle(perm)
    assert is_regular_sequence(perm).regular


@pytest.mark.parametrize("I", seeded_height_generated(7, 10), ids=lambda I: ",".join(map(str, I.gens)))
def test_replace_on_seeded_ideals(I):
    r = replace_with_regular(I)
    assert r.report.regular and r.generated_same
    assert ideal_contains(I, r.ideal) and ideal_contains(r.ideal, I)
