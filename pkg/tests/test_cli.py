"""Command-line interface: schemas, exit codes, and byte-level determinism."""

import json

import pytest

from sigmadecay.cli import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_TOLERANCE,
    EXIT_USAGE,
    main,
)

THEOREM_CFG = {
    "sigma": 2.0,
    "delta1": 0.5,
    "delta2": 1.5,
    "a": 1,
    "b": 0,
    "n": 3,
    "queries": [[0, 0]],
    "t_exponents": [6, 16],
    "fit_tail": 6,
}


def read(path):
    return path.read_text()


class TestRoots:
    def test_csv_schema(self, tmp_path):
        out = tmp_path / "roots.csv"
        rc = main(["roots", "--r", "0.1", "--r", "2.0", "--format", "csv", "--out", str(out)])
        assert rc == EXIT_OK
        lines = read(out).splitlines()
        assert lines[0] == "r,lambda1_re,lambda1_im,lambda2_re,lambda2_im,discriminant,confluent"
        assert len(lines) == 3

    def test_json_schema(self, tmp_path):
        out = tmp_path / "roots.json"
        rc = main(["roots", "--r", "1.0", "--out", str(out)])
        assert rc == EXIT_OK
        doc = json.loads(read(out))
        assert doc["params"]["sigma"] == 1.0
        assert len(doc["roots"]) == 1
        assert set(doc["roots"][0]) == {"r", "lambda1", "lambda2", "discriminant", "confluent"}

    def test_stdout_default(self, capsys):
        rc = main(["roots", "--r", "1.0", "--format", "csv"])
        assert rc == EXIT_OK
        assert capsys.readouterr().out.startswith("r,lambda1_re")

    def test_domain_error_exits_2(self, tmp_path):
        rc = main(["roots", "--r", "1.0", "--sigma", "0.5", "--out", str(tmp_path / "x")])
        assert rc == EXIT_USAGE


class TestKernel:
    def test_csv_values(self, tmp_path):
        out = tmp_path / "k.csv"
        rc = main(
            ["kernel", "--t", "0", "--r", "1.0", "--format", "csv", "--out", str(out)]
        )
        assert rc == EXIT_OK
        lines = read(out).splitlines()
        assert lines[0] == "t,r,k0,k1,dt_k0,dt_k1"
        t, r, k0, k1, dk0, dk1 = lines[1].split(",")
        assert (float(k0), float(k1), float(dk0), float(dk1)) == (1.0, 0.0, 0.0, 1.0)


class TestNorm:
    def test_solution_norm_csv(self, tmp_path):
        out = tmp_path / "n.csv"
        rc = main(
            ["norm", "--t", "1", "--t", "4", "--format", "csv", "--out", str(out)]
        )
        assert rc == EXIT_OK
        lines = read(out).splitlines()
        assert lines[0] == "t,s,j,target,value,abs_error,nodes"
        assert len(lines) == 3

    def test_profile_norm_with_auto_kind(self, tmp_path):
        out = tmp_path / "p.json"
        rc = main(["norm", "--t", "2", "--target", "profile", "--out", str(out)])
        assert rc == EXIT_OK
        doc = json.loads(read(out))
        assert doc["kind"] == "diffusion_j0"
        assert doc["converged"] is True

    def test_svg_output(self, tmp_path):
        out = tmp_path / "n.json"
        svg = tmp_path / "n.svg"
        rc = main(
            ["norm", "--t", "1", "--t", "8", "--t", "64", "--out", str(out), "--svg", str(svg)]
        )
        assert rc == EXIT_OK
        body = read(svg)
        assert body.startswith("<svg")
        assert "polyline" in body

    def test_unknown_data_exits_2(self):
        rc = main(["norm", "--t", "1", "--data0", "mystery"])
        assert rc == EXIT_USAGE


class TestRates:
    def test_fitted_rate_near_prediction(self, tmp_path):
        out = tmp_path / "r.json"
        rc = main(
            [
                "rates",
                "--sigma", "2", "--delta1", "0.5", "--delta2", "1.5",
                "--t-exponents", "8", "14", "--fit-tail", "4",
                "--out", str(out),
            ]
        )
        assert rc == EXIT_OK
        doc = json.loads(read(out))
        assert doc["theoretical"]["exact"] == "-1/6"
        assert abs(doc["fitted_rate"] - doc["theoretical"]["value"]) <= 0.03

    def test_hypothesis_violation_reported_without_prediction(self, tmp_path):
        # n = 1 breaks the dimension condition; the fit still runs
        out = tmp_path / "r.json"
        rc = main(
            [
                "rates",
                "-n", "1",
                "--t-exponents", "6", "10", "--fit-tail", "3",
                "--out", str(out),
            ]
        )
        assert rc == EXIT_OK
        doc = json.loads(read(out))
        assert doc["theoretical"]["value"] is None
        assert "error" in doc["theoretical"]


class TestTheorem:
    def test_config_run_json(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(THEOREM_CFG))
        out = tmp_path / "t.json"
        rc = main(["theorem", "--claim", "1.1", "--config", str(cfg), "--out", str(out)])
        assert rc == EXIT_OK
        doc = json.loads(read(out))
        assert doc["claim"] == "1.1"
        assert doc["passed"] is True
        assert doc["queries"][0]["theoretical_exponent_exact"] == "-1/6"

    def test_flag_overrides_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(dict(THEOREM_CFG, n=1)))
        out = tmp_path / "t.json"
        # n = 1 from the file violates the hypothesis; the flag must win
        rc = main(
            ["theorem", "--claim", "1.1", "--config", str(cfg), "-n", "3", "--out", str(out)]
        )
        assert rc == EXIT_OK

    def test_unknown_config_key_exits_2(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(dict(THEOREM_CFG, flavor="blue")))
        rc = main(["theorem", "--claim", "1.1", "--config", str(cfg)])
        assert rc == EXIT_USAGE

    def test_failed_check_exits_4_and_writes_report(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        # early-time window: the fitted rate sits far from the asymptote
        cfg.write_text(json.dumps(dict(THEOREM_CFG, t_exponents=[0, 4], fit_tail=3)))
        out = tmp_path / "t.json"
        rc = main(["theorem", "--claim", "1.1", "--config", str(cfg), "--out", str(out)])
        assert rc == EXIT_CHECK_FAILED
        doc = json.loads(read(out))
        assert doc["passed"] is False

    def test_csv_and_svg(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(THEOREM_CFG))
        out = tmp_path / "t.csv"
        svg = tmp_path / "t.svg"
        rc = main(
            [
                "theorem", "--claim", "1.1", "--config", str(cfg),
                "--format", "csv", "--out", str(out), "--svg", str(svg),
            ]
        )
        assert rc == EXIT_OK
        lines = read(out).splitlines()
        assert lines[0] == "t,s,j,target,value,abs_error,nodes"
        assert read(svg).count("<polyline") >= 3

    def test_byte_identical_reruns(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(THEOREM_CFG))
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        for out in (a, b):
            rc = main(
                ["theorem", "--claim", "1.1", "--config", str(cfg), "--format", "csv", "--out", str(out)]
            )
            assert rc == EXIT_OK
        assert a.read_bytes() == b.read_bytes()


class TestBounds:
    def test_kernel_bound_csv(self, tmp_path):
        out = tmp_path / "b.csv"
        rc = main(["bounds", "--id", "2.1", "--format", "csv", "--out", str(out)])
        assert rc == EXIT_OK
        lines = read(out).splitlines()
        assert lines[0] == "bound,zone,line,s,j,fitted_constant,max_ratio,worst_t,worst_r,passed"
        assert all(line.endswith(",true") for line in lines[1:])

    def test_expansion_target(self, tmp_path):
        out = tmp_path / "e.json"
        rc = main(["bounds", "--id", "3.1.1", "--out", str(out)])
        assert rc == EXIT_OK
        assert json.loads(read(out))["passed"] is True

    def test_l1_lemma(self, tmp_path):
        out = tmp_path / "l1.csv"
        rc = main(["bounds", "--id", "l1", "--format", "csv", "--out", str(out)])
        assert rc == EXIT_OK
        assert read(out).splitlines()[0] == "t,scaled_low,scaled_high"

    def test_riemann_lebesgue(self, tmp_path):
        out = tmp_path / "rl.csv"
        rc = main(
            ["bounds", "--id", "riemann_lebesgue", "--taus", "1", "10", "100",
             "--format", "csv", "--out", str(out)]
        )
        assert rc == EXIT_OK
        assert read(out).splitlines()[0] == "tau,cos_value,sin_value,magnitude"

    def test_case_mismatch_exits_2(self):
        rc = main(["bounds", "--id", "2.2"])  # defaults are the (1, 0) case
        assert rc == EXIT_USAGE


class TestOracleCheck:
    def test_small_grid_passes(self, tmp_path):
        out = tmp_path / "o.csv"
        rc = main(
            ["oracle-check", "--r-points", "5", "--t", "0.5", "--format", "csv", "--out", str(out)]
        )
        assert rc == EXIT_OK
        lines = read(out).splitlines()
        assert lines[0] == "r,t,abs_diff"
        assert len(lines) == 6

    def test_unreachable_tolerance_exits_3(self, tmp_path):
        out = tmp_path / "o.csv"
        rc = main(
            [
                "oracle-check", "--r-points", "5", "--t", "0.5",
                "--tol", "1e-20", "--format", "csv", "--out", str(out),
            ]
        )
        assert rc == EXIT_TOLERANCE
        assert out.exists()  # report written before the failure exit


class TestArgumentHandling:
    def test_unknown_subcommand_is_systemexit(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])

    def test_seed_flag_accepted(self, capsys):
        rc = main(["roots", "--r", "1.0", "--seed", "7", "--format", "csv"])
        assert rc == EXIT_OK
        capsys.readouterr()
