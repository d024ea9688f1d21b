import json
import math

import pytest

from qdgates.cli import main
from qdgates.fockspace import FunctionFamily
from qdgates.qnumber import DeformationParam
from qdgates.qubits import TruncatedFockSpace, norm_ratio_experiment
from qdgates.report import (
    ConfigError,
    ENTRY_COLUMNS,
    LAW_PRODUCT,
    LAW_SQRT,
    REGISTERED_CHECKS,
    SweepConfig,
    infer_psi_from_norm,
    parse_report,
    run_sweep,
    serialize,
)

S_GRID = (0.1, 0.5, 0.9)
POWER_ONE = FunctionFamily("power_of_q", 1.0)


def config(**kwargs):
    kwargs.setdefault("s_grid", (0.5,))
    return SweepConfig(**kwargs)


class TestSweepConfig:
    def test_empty_grid_names_the_field(self):
        with pytest.raises(ConfigError, match="s_grid"):
            config(s_grid=())

    def test_all_problems_reported_at_once(self):
        with pytest.raises(ConfigError) as err:
            SweepConfig(s_grid=(), cutoff=2, tolerance=-1.0, output_format="xml")
        assert len(err.value.problems) == 4

    def test_rejects_decreasing_grid(self):
        with pytest.raises(ConfigError, match="increasing"):
            config(s_grid=(0.9, 0.1))

    def test_rejects_out_of_range_strengths(self):
        with pytest.raises(ConfigError, match="\\(0, 1\\]"):
            config(s_grid=(0.5, 1.5))

    def test_payload_round_trip(self):
        c = config(s_grid=(0.1, 0.4), psi_family=POWER_ONE, cutoff=8, tolerance=1e-9)
        assert SweepConfig.from_payload(c.to_payload()) == c


class TestRunSweep:
    def test_unit_functions_pass_everything(self):
        report = run_sweep(config(s_grid=(0.5,), cutoff=16, tolerance=1e-10))
        assert len(report.entries) == len(REGISTERED_CHECKS)
        assert report.summary["total_fail"] == 0
        assert report.unexpected_failures() == 0

    def test_nonunit_family_fails_only_the_product_relation(self):
        report = run_sweep(config(s_grid=S_GRID, psi_family=POWER_ONE))
        assert len(report.entries) == len(S_GRID) * len(REGISTERED_CHECKS)
        products = [e for e in report.entries if e.check_id == "number_products"]
        flips = [e for e in report.entries if e.check_id == "not_condition"]
        assert len(products) == len(S_GRID) and all(not e.passed for e in products)
        assert all("expected failure" in e.note for e in products)
        assert len(flips) == len(S_GRID) and all(e.passed for e in flips)
        assert report.unexpected_failures() == 0

    def test_summary_matches_entry_tally(self):
        report = run_sweep(config(s_grid=(0.1, 0.5), psi_family=POWER_ONE))
        passed = sum(1 for e in report.entries if e.passed)
        failed = sum(1 for e in report.entries if not e.passed)
        assert report.summary["total_pass"] == passed
        assert report.summary["total_fail"] == failed
        per_check = report.summary["per_check"]
        for check_id in REGISTERED_CHECKS:
            rows = [e for e in report.entries if e.check_id == check_id]
            assert per_check[check_id]["pass"] == sum(1 for e in rows if e.passed)
            assert per_check[check_id]["fail"] == sum(1 for e in rows if not e.passed)

    def test_entries_in_canonical_order(self):
        report = run_sweep(config(s_grid=(0.1, 0.5)))
        keys = [(e.s, e.check_id) for e in report.entries]
        grid_pos = {0.1: 0, 0.5: 1}
        assert keys == sorted(keys, key=lambda k: (grid_pos[k[0]], k[1]))

    def test_norm_ratio_samples_pin_the_product_law(self):
        report = run_sweep(config(s_grid=S_GRID, psi_family=POWER_ONE))
        assert len(report.norm_ratio) == len(S_GRID)
        assert all(r.matched_law == "product" for r in report.norm_ratio)

    def test_domain_errors_become_entries_instead_of_aborting(self, monkeypatch):
        import qdgates.report as report_module

        def broken(*args, **kwargs):
            raise ValueError("rigged dressing failure")

        monkeypatch.setattr(report_module, "run_algebra_checks", broken)
        report = run_sweep(config(s_grid=(0.5,)))
        assert len(report.entries) == len(REGISTERED_CHECKS)
        errored = [e for e in report.entries if e.note.startswith("error:")]
        assert len(errored) == 4
        assert all(e.residual == -1.0 and not e.passed for e in errored)
        assert report.unexpected_failures() == 4


class TestSerialization:
    def test_json_round_trip(self):
        report = run_sweep(config(s_grid=(0.1, 0.5), psi_family=POWER_ONE))
        assert parse_report(serialize(report, "json")) == report

    def test_identical_configs_give_identical_bytes(self):
        first = serialize(run_sweep(config(s_grid=S_GRID, psi_family=POWER_ONE)))
        second = serialize(run_sweep(config(s_grid=S_GRID, psi_family=POWER_ONE)))
        assert first == second

    def test_csv_header_snapshot(self):
        report = run_sweep(config())
        blob = serialize(report, "csv").decode()
        assert blob.splitlines()[0] == ",".join(ENTRY_COLUMNS)
        assert ENTRY_COLUMNS == (
            "check_id", "s", "cutoff", "psi1", "psi2", "beta1", "beta2",
            "residual", "pass", "note",
        )

    def test_csv_row_count(self):
        report = run_sweep(config(s_grid=(0.1, 0.5)))
        lines = serialize(report, "csv").decode().splitlines()
        assert len(lines) == 1 + len(report.entries)

    def test_unsupported_format_rejected(self):
        with pytest.raises(ValueError, match="format"):
            serialize(run_sweep(config()), "yaml")

    def test_json_payload_has_documented_top_level_keys(self):
        payload = json.loads(serialize(run_sweep(config()), "json"))
        for key in ("schema_version", "config", "entries", "summary"):
            assert key in payload
        entry = payload["entries"][0]
        assert tuple(sorted(entry)) == tuple(sorted(ENTRY_COLUMNS))


class TestInference:
    @pytest.mark.parametrize("s", S_GRID)
    def test_round_trip_recovers_the_dressing(self, s):
        p = DeformationParam(s)
        space = TruncatedFockSpace(4)
        beta = p.q
        for psi in (1 / p.q, 1.0, p.q**0.5, p.q, p.q**2):
            ratio = norm_ratio_experiment(1, 0, p, psi, beta, space).measured
            inferred = infer_psi_from_norm(ratio, beta, p).inferred_psi
            assert abs(inferred - psi) <= 1e-10 * psi

    def test_classifies_both_encodings(self):
        p = DeformationParam(0.5)
        for n_hat in (1, 2):
            zero = infer_psi_from_norm(p.q**n_hat, 1.0, p, n_hat=n_hat)
            one = infer_psi_from_norm(p.q ** (n_hat - 1), 1.0, p, n_hat=n_hat)
            assert zero.classified_n_prime == 0 and zero.log_distance < 1e-12
            assert one.classified_n_prime == 1 and one.log_distance < 1e-12

    def test_identity_fixed_point(self):
        assert infer_psi_from_norm(1.0, 1.0, DeformationParam(0.5)).inferred_psi == 1.0

    def test_sqrt_law_inversion(self):
        p = DeformationParam(0.5)
        psi, beta = p.q, p.q**2
        ratio = math.sqrt(psi * beta)
        inferred = infer_psi_from_norm(ratio, beta, p, law=LAW_SQRT).inferred_psi
        assert inferred == pytest.approx(psi, rel=1e-12)

    def test_law_is_an_explicit_parameter(self):
        p = DeformationParam(0.5)
        product = infer_psi_from_norm(2.0, 1.0, p, law=LAW_PRODUCT)
        sqrt = infer_psi_from_norm(2.0, 1.0, p, law=LAW_SQRT)
        assert product.inferred_psi == 2.0
        assert sqrt.inferred_psi == 4.0

    def test_rejects_bad_inputs(self):
        p = DeformationParam(0.5)
        with pytest.raises(ValueError):
            infer_psi_from_norm(-1.0, 1.0, p)
        with pytest.raises(ValueError):
            infer_psi_from_norm(1.0, 1.0, p, law="geometric")


class TestCli:
    def test_audit_exits_clean(self, capsys):
        assert main(["audit", "--s", "0.5", "--tol", "1e-10"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "qcommutator" in out

    def test_gates_exits_clean(self):
        assert main(["gates", "--s", "0.5", "--psi", "q", "--beta", "q^2"]) == 0

    def test_states_prints_bookkeeping(self, capsys):
        assert main(["states", "--s", "0.5", "--psi", "q"]) == 0
        out = capsys.readouterr().out
        assert "n_hat=2 n'=1" in out
        assert "-> product" in out

    def test_states_prints_amplitude_triples(self, capsys):
        assert main(["states", "--s", "0.5"]) == 0
        out = capsys.readouterr().out
        # |10> occupies (1,0,0,1): index 1*64 + 0*16 + 0*4 + 1 at cutoff 4
        assert "|10>  (65, 1, 0)" in out

    def test_unexpected_failures_exit_one(self):
        # a tolerance below the extended-precision floor flips clean checks red
        assert main(["audit", "--s", "0.9", "--tol", "1e-30"]) == 1

    def test_infer_round_trip(self, capsys):
        assert main(["infer", "--s", "0.5", "--psi", "q^2", "--beta", "q", "--n-hat", "2"]) == 0
        assert "n'=0" in capsys.readouterr().out

    def test_sweep_writes_identical_files(self, tmp_path):
        args = ["sweep", "--s-grid", "0.1,0.5,0.9", "--psi", "q", "--cutoff", "16"]
        first = tmp_path / "a.json"
        second = tmp_path / "b.json"
        assert main(args + ["--out", str(first)]) == 0
        assert main(args + ["--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_sweep_csv_output(self, tmp_path):
        out = tmp_path / "report.csv"
        assert main(["sweep", "--s", "0.5", "--format", "csv", "--out", str(out)]) == 0
        assert out.read_text().splitlines()[0].startswith("check_id,")

    def test_sweep_config_file(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"s_grid": [0.2, 0.6], "psi_family": "q", "cutoff": 8}))
        out = tmp_path / "report.json"
        assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert payload["config"]["s_grid"] == [0.2, 0.6]

    def test_config_errors_exit_two(self):
        assert main(["sweep", "--s-grid", "0.9,0.1"]) == 2
        assert main(["audit", "--psi", "bogus"]) == 2
        assert main(["audit", "--s", "0.5", "--s-grid", "0.1,0.2"]) == 2
        assert main(["audit", "--cutoff", "2"]) == 2
