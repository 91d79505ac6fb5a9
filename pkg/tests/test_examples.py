import pytest

from artin_series.errors import NotProper, UnsupportedPresentation
from artin_series.examples import (
    ExampleRingWindow,
    non_sft_scan,
    sft_witness,
    wb_failure_check,
)
from artin_series.exactpoly import GF
from artin_series.series import SeriesContext


class TestWindow:
    @pytest.mark.parametrize("s", [0, 1, 2, 4])
    def test_local_and_killed_by_y(self, s):
        W = ExampleRingWindow(s)
        assert W.check_local()
        assert W.y_kills_maximal_ideal()

    def test_dimension(self):
        # 1, y and every square-free product of the z_i
        assert ExampleRingWindow(4).algebra.dim == 2 + 2 ** 4 - 1


class TestSft:
    def test_five_generators(self):
        w = sft_witness("z0,z1,z2,z3,z4", 3)
        assert w.s == 5
        assert w.f == "z5 + z6 + z7"
        assert w.coefficient == 6
        assert w.power == "6*z5*z6*z7"
        assert w.ok

    def test_k1_zero_ideal(self):
        w = sft_witness("0", 1)
        assert w.f == "z0" and w.power == "z0" and w.ok

    def test_product_ideal(self):
        w = sft_witness(["z0*z1"], 2)
        assert w.s >= 2 and w.ok

    def test_unit_ideal(self):
        with pytest.raises(NotProper):
            sft_witness("1", 2)
        with pytest.raises(NotProper):
            sft_witness("1 + y", 2)

    def test_small_characteristic(self):
        with pytest.raises(UnsupportedPresentation):
            sft_witness("z0", 3, GF(3))
        assert sft_witness("z0", 2, GF(3)).ok

    def test_scan(self):
        rows = non_sft_scan(4, "z0")
        assert len(rows) == 4 and all(w.ok for w in rows)

    def test_empty_scan(self):
        assert non_sft_scan(0, "z0") == []

    def test_y_ideal(self):
        rows = non_sft_scan(3, "y")
        assert all(w.ok and "y" not in w.f for w in rows)


class TestWb:
    def test_report(self):
        rep = wb_failure_check(4, 6)
        assert rep.ok
        assert rep.annihilated == rep.spanning_set > 0
        assert rep.nonzero_products == rep.samples == 50

    def test_spot_values(self):
        W = ExampleRingWindow(4)
        ctx = SeriesContext(W.family, ["X"], 6)
        y = ctx.const(W.y, W.handle)
        assert (y * ctx.parse("z3*X^2", W.handle)).is_zero()
        assert y * ctx.parse("1 + z0*X", W.handle) == y
        assert (y * ctx.parse("y*X", W.handle)).is_zero()

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            wb_failure_check(0, 6)
        with pytest.raises(ValueError):
            wb_failure_check(2, 1)
