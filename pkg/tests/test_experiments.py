import math
from fractions import Fraction

import pytest

from ntcdepth.experiments import (
    CSV_HEADER,
    FitResult,
    MetricsRecord,
    auto_mesh,
    check_invariants,
    fit_exponent,
    parse_records_csv,
    report,
    run_scaling,
    run_scaling_detailed,
    write_records_csv,
)


def synthetic(n, value, **overrides):
    fields = dict(
        n=n, k=1, dims=(n,), adder="cla", placement="identity_snake",
        mode="swap", depth_ac=1, depth_ntc=value, swap_count=0,
        qubits_total=n, dilation_bound=Fraction(1), seed=0,
    )
    fields.update(overrides)
    return MetricsRecord(**fields)


class TestAutoMesh:
    def test_examples(self):
        assert auto_mesh(1, 7).dims == (7,)
        assert auto_mesh(2, 31).dims == (6, 6)
        assert auto_mesh(3, 8).dims == (2, 2, 2)

    def test_near_equal_and_sufficient(self):
        for k in (1, 2, 3):
            for count in (1, 2, 5, 17, 63, 100, 255):
                m = auto_mesh(k, count)
                assert m.node_count >= count
                assert max(m.dims) - min(m.dims) <= 1


class TestFitExponent:
    def test_linear_slope_one(self):
        recs = [synthetic(n, n) for n in (8, 16, 32, 64)]
        fit = fit_exponent(recs, "depth_ntc")
        assert abs(fit.slope - 1.0) <= 1e-9
        assert fit.r_squared > 1 - 1e-12

    def test_log_growth_slope_below_035(self):
        recs = [synthetic(n, math.ceil(math.log2(n))) for n in (16, 32, 64, 128, 256)]
        assert fit_exponent(recs, "depth_ntc").slope < 0.35

    def test_sqrt_slope_half(self):
        recs = [synthetic(n, math.ceil(math.sqrt(n))) for n in (16, 32, 64, 128, 256)]
        assert abs(fit_exponent(recs, "depth_ntc").slope - 0.5) <= 0.05

    def test_too_few_records(self):
        with pytest.raises(ValueError, match="3 records"):
            fit_exponent([synthetic(8, 8), synthetic(16, 16)], "depth_ntc")

    def test_mixed_configurations_rejected(self):
        recs = [synthetic(8, 8), synthetic(16, 16, k=2), synthetic(32, 32)]
        with pytest.raises(ValueError, match="mix"):
            fit_exponent(recs, "depth_ntc")

    def test_duplicate_n_rejected(self):
        recs = [synthetic(8, 8), synthetic(8, 9), synthetic(16, 16)]
        with pytest.raises(ValueError, match="distinct"):
            fit_exponent(recs, "depth_ntc")

    def test_nonpositive_rejected(self):
        recs = [synthetic(8, 0), synthetic(16, 16), synthetic(32, 32)]
        with pytest.raises(ValueError, match="positive"):
            fit_exponent(recs, "depth_ntc")


class TestCsv:
    def test_header_exact(self):
        assert CSV_HEADER == [
            "n", "k", "dims", "adder", "placement", "mode", "depth_ac",
            "depth_ntc", "swap_count", "qubits_total", "dilation_bound", "seed",
        ]

    def test_empty_records_header_only(self, tmp_path):
        p = tmp_path / "r.csv"
        write_records_csv([], p)
        assert p.read_text().strip() == ",".join(CSV_HEADER)

    def test_four_records_five_lines(self, tmp_path):
        p = tmp_path / "r.csv"
        write_records_csv([synthetic(n, n) for n in (8, 16, 32, 64)], p)
        assert len(p.read_text().strip().splitlines()) == 5

    def test_round_trip(self, tmp_path):
        recs = [
            synthetic(8, 11, dims=(3, 3), k=2, dilation_bound=Fraction(5, 4)),
            synthetic(16, 40, seed=7),
        ]
        p = tmp_path / "r.csv"
        write_records_csv(recs, p)
        back = parse_records_csv(p)
        assert back == sorted(recs, key=lambda r: (r.k, r.n))

    def test_sorted_by_k_then_n(self, tmp_path):
        recs = [synthetic(16, 5, k=2, dims=(4, 4)), synthetic(8, 3), synthetic(4, 2)]
        p = tmp_path / "r.csv"
        write_records_csv(recs, p)
        back = parse_records_csv(p)
        assert [(r.k, r.n) for r in back] == [(1, 4), (1, 8), (2, 16)]

    def test_report_writes_summary(self, tmp_path):
        recs = [synthetic(n, n) for n in (8, 16, 32)]
        fits = {"depth_ntc": fit_exponent(recs, "depth_ntc")}
        csv_path, summary_path = report(recs, fits, tmp_path / "out")
        assert csv_path.exists() and summary_path.exists()
        text = summary_path.read_text()
        assert '"slope"' in text and '"records": 3' in text


class TestRunScaling:
    def test_single_record_invariant(self):
        (rec,) = run_scaling(1, [4])
        assert rec.depth_ntc >= rec.depth_ac
        assert rec.adder == "cla" and rec.k == 1

    def test_depth_ntc_strictly_increasing(self):
        recs = run_scaling(1, [4, 8, 16])
        ds = [r.depth_ntc for r in recs]
        assert ds == sorted(ds) and len(set(ds)) == len(ds)

    def test_2d_no_worse_than_1d_at_n64(self):
        (r1,) = run_scaling(1, [64])
        (r2,) = run_scaling(2, [64])
        assert r2.depth_ntc <= r1.depth_ntc

    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_records_csv(run_scaling(1, [4, 8], seed=7), a)
        write_records_csv(run_scaling(1, [4, 8], seed=7), b)
        assert a.read_bytes() == b.read_bytes()

    def test_ripple_routes_full_adder(self):
        (rec,) = run_scaling(1, [8], adder="ripple")
        assert rec.qubits_total == 4 * 8 + 2
        assert rec.depth_ntc >= rec.depth_ac

    def test_invariants_clean_on_small_runs(self):
        details = run_scaling_detailed(1, [4, 8]) + run_scaling_detailed(
            2, [4, 8], adder="ripple"
        )
        assert check_invariants(details) == []

    def test_bad_adder_rejected(self):
        with pytest.raises(ValueError, match="adder"):
            run_scaling(1, [4], adder="qft")

    def test_swap_cost_three_deepens(self):
        (r1,) = run_scaling(1, [8], swap_cost=1)
        (r3,) = run_scaling(1, [8], swap_cost=3)
        assert r3.depth_ntc > r1.depth_ntc

    def test_seed_recorded(self):
        (rec,) = run_scaling(1, [4], seed=99)
        assert rec.seed == 99
