import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from artin_series.errors import AmbientMismatch, ParseError
from artin_series.exactpoly import (
    GF,
    QQ,
    Echelon,
    Polynomial,
    PolyRing,
    buchberger,
    ideal_membership,
    is_groebner,
    kernel,
    normal_form,
    parse_polynomial,
    solve,
)

from oracles import brute_membership

R = PolyRing(QQ, ["Y", "Z0", "Z1"])
T = PolyRing(QQ, ["t"])


def G_example():
    return buchberger([R("Y^2"), R("Z0^2"), R("Y*Z0")])


class TestFields:
    def test_rationals_lowest_terms(self):
        x = QQ(Fraction(6, -4))
        assert x.numerator == -3 and x.denominator == 2

    def test_mod_p_range(self):
        F = GF(7)
        assert int(F(-1).v) == 6
        assert F(3) * F(5) == F(1)
        assert F(3) / F(3) == F(1)

    def test_gf_rejects_composite(self):
        with pytest.raises(Exception):
            GF(9)


class TestParse:
    def test_grammar(self):
        p = R.parse("3/2*Y^2*Z0 - 1")
        assert p.terms == {(2, 1, 0): Fraction(3, 2), (0, 0, 0): Fraction(-1)}

    def test_implicit_power(self):
        assert R.parse("Y^2") == R.gen("Y") * R.gen("Y")

    def test_unknown_variable(self):
        with pytest.raises(ParseError):
            R.parse("W + 1")

    def test_garbage(self):
        with pytest.raises(ParseError):
            parse_polynomial("Y + * 2", R)


class TestNormalForm:
    def test_generator_reduces_to_zero(self):
        assert normal_form(R("Y^2"), G_example()).is_zero()

    def test_single_cancellation(self):
        assert normal_form(R("Y*Z0 + Z0"), G_example()) == R("Z0")

    def test_one_step(self):
        G = buchberger([T("t^2 - 2")])
        assert normal_form(T("t^2"), G) == T(2)

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatch):
            normal_form(T("t"), G_example())
        with pytest.raises(AmbientMismatch):
            ideal_membership(T("t"), G_example())


class TestBuchberger:
    def test_monomial_ideal_is_itself(self):
        G = G_example()
        assert sorted(str(g) for g in G) == sorted(["Y^2", "Z0^2", "Y*Z0"])

    def test_principal(self):
        G = buchberger([T("t^2 - 2")])
        assert list(G.generators) == [T("t^2 - 2")]

    def test_mixed_against_oracle(self):
        P = PolyRing(QQ, ["X", "Y"])
        gens = [P("X - Y"), P("Y^2")]
        G = buchberger(gens)
        assert is_groebner(G)
        oracle_gens = [g.terms for g in gens]
        for text in ["X^2", "X*Y", "X", "Y", "X + Y", "X^2 - Y^2 + 1", "X^3", "1"]:
            f = P(text)
            assert ideal_membership(f, G) == brute_membership(f.terms, oracle_gens, 2, 4), text


class TestMembership:
    def test_distinct_variables(self):
        P = PolyRing(QQ, ["z0", "z1"])
        assert not ideal_membership(P("z1"), [P("z0")])

    def test_multiple(self):
        P = PolyRing(QQ, ["z0", "z1"])
        assert ideal_membership(P("z0*z1"), [P("z0")])

    def test_chain_does_not_stabilise(self):
        names = [f"z{i}" for i in range(6)]
        P = PolyRing(QQ, names)
        for i in range(5):
            assert not ideal_membership(P(names[i + 1]), [P(n) for n in names[: i + 1]])


class TestLinalg:
    def test_kernel_and_solve(self):
        cols = [{0: QQ(1), 1: QQ(1)}, {0: QQ(2), 1: QQ(2)}, {1: QQ(1)}]
        ker = kernel(QQ, cols)
        assert len(ker) == 1
        v = ker[0]
        total = {}
        for j, c in v.items():
            for i, x in cols[j].items():
                total[i] = total.get(i, 0) + c * x
        assert not any(total.values())
        assert solve(QQ, cols, {0: QQ(3)}) is not None
        assert solve(QQ, [{0: QQ(1)}], {1: QQ(1)}) is None

    def test_echelon_express(self):
        E = Echelon(QQ, track=True)
        E.insert({0: QQ(1), 1: QQ(1)}, tag="a")
        E.insert({1: QQ(1)}, tag="b")
        rem, combo = E.express({0: QQ(2), 1: QQ(5)})
        assert not rem
        assert combo == {"a": 2, "b": 3}


# -- property tests -----------------------------------------------------------

P3 = PolyRing(QQ, ["x", "y", "z"])


def homogeneous(deg):
    ms = [m for m in itertools.product(range(deg + 1), repeat=3) if sum(m) == deg]
    coeffs = st.dictionaries(st.sampled_from(ms), st.integers(-3, 3).filter(bool), min_size=1, max_size=3)
    return coeffs.map(lambda d: Polynomial(P3, {m: Fraction(c) for m, c in d.items()}))


gens_strategy = st.lists(st.integers(1, 2).flatmap(homogeneous), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(gens=gens_strategy, f=st.integers(1, 4).flatmap(homogeneous))
def test_membership_matches_linear_algebra_oracle(gens, f):
    # homogeneous ideals: f of degree d is in I iff it is in the degree-d span
    d = f.total_degree()
    expected = brute_membership(f.terms, [g.terms for g in gens], 3, d)
    assert ideal_membership(f, gens) == expected


@settings(max_examples=40, deadline=None)
@given(gens=gens_strategy, a=st.integers(1, 3).flatmap(homogeneous), b=st.integers(1, 3).flatmap(homogeneous),
       h=st.integers(1, 2).flatmap(homogeneous))
def test_membership_closed_under_ideal_operations(gens, a, b, h):
    G = buchberger(gens)
    f = a * gens[0]
    g = b * gens[-1]
    assert ideal_membership(f, G) and ideal_membership(g, G)
    assert ideal_membership(f + g, G)
    assert ideal_membership(h * f, G)


@settings(max_examples=40, deadline=None)
@given(gens=gens_strategy, f=st.integers(1, 4).flatmap(homogeneous))
def test_normal_form_idempotent(gens, f):
    G = buchberger(gens)
    r = normal_form(f, G)
    assert normal_form(r, G) == r
    assert is_groebner(G)
