import csv
import io
import json

import pytest

from flinthills.cli import run


def run_cli(argv):
    buf = io.StringIO()
    code = run(argv, out=buf)
    return code, buf.getvalue()


class TestExitCodes:
    def test_usage_error_unknown_command(self):
        code, _ = run_cli(["frobnicate"])
        assert code == 2

    def test_usage_error_bad_flag(self):
        code, _ = run_cli(["measure", "--no-such-flag"])
        assert code == 2

    def test_domain_error(self):
        # cf technique requires d > 16 pi^4 ~ 1558.5
        code, _ = run_cli(["kernel", "--type", "cf", "--d", "1558"])
        assert code == 1

    def test_precision_below_minimum(self, capsys):
        code, _ = run_cli(["expand", "--terms", "5", "--digits", "10"])
        assert code == 1
        assert "precision too low" in capsys.readouterr().err

    def test_success(self):
        code, out = run_cli(["convergents", "--terms", "3", "--format", "csv"])
        assert code == 0
        assert out.splitlines() == ["n,p,q", "1,3,1", "2,22,7", "3,333,106"]


class TestFormats:
    def test_csv_json_numeric_identity(self):
        _, csv_text = run_cli(["measure", "--terms", "6", "--format", "csv"])
        _, json_text = run_cli(["measure", "--terms", "6", "--format", "json"])
        csv_rows = list(csv.DictReader(io.StringIO(csv_text)))
        json_rows = [json.loads(line) for line in json_text.splitlines()]
        assert len(csv_rows) == len(json_rows) == 6
        for c, j in zip(csv_rows, json_rows):
            for key, cval in c.items():
                jval = j[key]
                if cval == "":
                    assert jval is None
                else:
                    assert cval == (str(jval) if not isinstance(jval, str) else jval) or \
                        float(cval) == float(jval)

    def test_plain_has_header(self):
        _, out = run_cli(["convergents", "--terms", "2"])
        assert out.splitlines()[0].split() == ["n", "p", "q"]

    def test_full_precision_flag(self):
        _, brief = run_cli(["measure", "--terms", "2", "--format", "csv"])
        _, full = run_cli(["measure", "--terms", "2", "--format", "csv", "--full"])
        assert len(full) > len(brief)

    def test_measure_blank_first_row(self):
        _, out = run_cli(["measure", "--terms", "2", "--format", "csv"])
        assert out.splitlines()[1].endswith(",")


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["measure", "--terms", "12", "--digits", "60", "--format", "csv"],
            ["series", "flint", "--u", "3", "--v", "2", "--limit", "60", "--format", "csv"],
            ["recip-sin", "--n-max", "8", "--format", "csv"],
        ],
    )
    def test_byte_identical_runs(self, argv):
        first = run_cli(argv)
        second = run_cli(argv)
        assert first == second


class TestSeriesCommand:
    def test_flint_value_at_355(self):
        code, out = run_cli(["series", "flint", "--u", "3", "--v", "2",
                             "--limit", "355", "--format", "json"])
        assert code == 0
        row = json.loads(out.splitlines()[0])
        assert abs(row["value"] - 29.405625) < 1e-4  # 6 significant digits printed
        assert row["largest_term_index"] == 355

    def test_points_match_plot(self, flint_plot_reference):
        points = ",".join(r["x"] for r in flint_plot_reference)
        code, out = run_cli(["series", "flint", "--u", "3", "--v", "2", "--limit", "500",
                             "--points", points, "--format", "json", "--full"])
        assert code == 0
        got = {json.loads(l)["x"]: json.loads(l)["partial_sum"] for l in out.splitlines()}
        for ref in flint_plot_reference:
            assert abs(got[int(ref["x"])] - float(ref["P"])) < 1e-6

    def test_lacunary_and_alpha_pi(self):
        code, out = run_cli(["series", "lacunary", "--u", "3", "--v", "2",
                             "--limit", "3", "--format", "json", "--full"])
        assert code == 0
        assert abs(json.loads(out)["value"] - 3.2720521259710487) < 1e-12
        code, out = run_cli(["series", "alpha-pi", "--alpha", "sqrt2", "--u", "3",
                             "--v", "2", "--limit", "1", "--format", "json", "--full"])
        assert code == 0
        assert abs(json.loads(out)["value"] - 1.0763010329070786) < 1e-12

    def test_flat_family(self):
        code, out = run_cli(["series", "flat-scaled", "--u", "2", "--v", "1",
                             "--limit", "1", "--format", "json", "--full"])
        assert code == 0
        assert abs(json.loads(out)["value"] - 2.475016898983283) < 1e-11

    def test_convergence_report(self):
        code, out = run_cli(["series", "flint", "--u", "3", "--v", "2",
                             "--limit", "50", "--report", "--format", "json"])
        assert code == 0
        row = json.loads(out)
        assert row["predicted_convergent"] is True
        assert row["exponent"] == 1.0


class TestKernelAndShiftCommands:
    def test_dirichlet_row(self):
        code, out = run_cli(["kernel", "--type", "dirichlet", "--x", "2", "--z", "1",
                             "--format", "json", "--full"])
        assert code == 0
        row = json.loads(out)
        assert abs(row["closed_form"] - (-1.1395809148215086)) < 1e-12
        assert abs(row["closed_form"] - row["sum_form"]) < 1e-12

    def test_cf_audit(self):
        code, out = run_cli(["kernel", "--type", "cf", "--d", "1559", "--m-max", "3",
                             "--format", "json"])
        assert code == 0
        rows = [json.loads(l) for l in out.splitlines()]
        assert [r["within_bound"] for r in rows] == [False, True, True]

    def test_shift_report_columns(self):
        code, out = run_cli(["shift", "--n-max", "3", "--format", "csv"])
        assert code == 0
        header = out.splitlines()[0]
        assert header == "n,p,v2,w_odd,shift_residual,recip_sin,ratio"
        rows = list(csv.DictReader(io.StringIO(out)))
        assert all(r["w_odd"] == "true" for r in rows)

    def test_shift_integer_technique(self):
        code, out = run_cli(["shift", "--n-max", "2", "--technique", "integer",
                             "--format", "json"])
        assert code == 0
        rows = [json.loads(l) for l in out.splitlines()]
        assert rows[0]["floor_x"] == 11 and rows[0]["argument"] == 69


class TestStatsCommand:
    def test_summary_rows(self):
        code, out = run_cli(["stats", "--terms", "50", "--format", "json"])
        assert code == 0
        rows = {json.loads(l)["statistic"]: json.loads(l)["value"] for l in out.splitlines()}
        assert rows["terms"] == 50
        assert abs(rows["geometric_mean_10"] - 3.36103) < 1e-4

    def test_histogram_rows(self):
        code, out = run_cli(["stats", "--terms", "100", "--histogram", "--format", "csv"])
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        total = sum(int(r["count"]) for r in rows)
        assert total == 100


class TestVerifyCommand:
    @pytest.mark.parametrize("sequence", ["numerators", "denominators", "lacunary"])
    def test_bundled_fixtures_pass(self, sequence):
        code, out = run_cli(["verify", "--sequence", sequence, "--terms", "25",
                             "--format", "json"])
        assert code == 0
        assert json.loads(out.splitlines()[0])["passed"] is True

    def test_corrupted_fixture_fails_with_index(self, tmp_path):
        bad = tmp_path / "A002485.txt"
        bad.write_text("2 3\n3 22\n4 334\n")
        code, out = run_cli(["verify", "--sequence", "numerators", "--terms", "5",
                             "--fixture", str(bad), "--format", "json"])
        assert code == 1
        rows = [json.loads(l) for l in out.splitlines()]
        assert rows[0]["passed"] is False
        assert rows[1]["fixture"] == "index 4"

    def test_missing_fixture_is_domain_error(self):
        code, _ = run_cli(["verify", "--sequence", "numerators",
                           "--fixture", "/nonexistent/path.txt"])
        assert code == 1


class TestExpandAndCache:
    def test_expand_lists_quotients(self):
        code, out = run_cli(["expand", "--terms", "5", "--format", "csv"])
        assert code == 0
        assert out.splitlines()[1:] == ["0,3", "1,7", "2,15", "3,1", "4,292"]

    def test_cache_round_trip(self, tmp_path, monkeypatch):
        monkeypatch.setenv("FLINTHILLS_CACHE_DIR", str(tmp_path))
        cold_code, cold = run_cli(["convergents", "--terms", "20", "--format", "csv"])
        code, _ = run_cli(["expand", "--terms", "40", "--cache-write", "--format", "csv"])
        assert code == 0
        assert (tmp_path / "pi.cfcache").exists()
        warm_code, warm = run_cli(["convergents", "--terms", "20", "--cache-read",
                                   "--format", "csv"])
        assert (cold_code, cold) == (warm_code, warm)

    def test_stale_cache_ignored(self, tmp_path, monkeypatch):
        monkeypatch.setenv("FLINTHILLS_CACHE_DIR", str(tmp_path))
        run_cli(["expand", "--terms", "10", "--cache-write"])
        code, out = run_cli(["convergents", "--terms", "30", "--cache-read",
                             "--format", "csv"])
        assert code == 0
        assert len(out.splitlines()) == 31  # recomputed past the cached depth

    def test_checksum_failure_detected(self, tmp_path, monkeypatch):
        monkeypatch.setenv("FLINTHILLS_CACHE_DIR", str(tmp_path))
        run_cli(["expand", "--terms", "10", "--cache-write"])
        path = tmp_path / "pi.cfcache"
        path.write_text(path.read_text().replace(" 292", " 293"))
        code, _ = run_cli(["convergents", "--terms", "5", "--cache-read"])
        assert code == 1
