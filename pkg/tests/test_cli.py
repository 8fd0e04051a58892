import json
import math

import pytest

from csrel import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out), out


class TestAmp:
    def test_su2_identity(self, capsys):
        doc, _ = run_json(capsys, "amp", "su2", "--theta", "0")
        assert doc["probability"] == 1.0
        assert doc["size"] == 0.0

    def test_su2_right_angle(self, capsys):
        doc, _ = run_json(capsys, "amp", "su2", "--theta", str(math.pi / 2))
        assert doc["probability"] == pytest.approx(0.5, abs=1e-15)

    def test_wh(self, capsys):
        doc, _ = run_json(capsys, "amp", "wh", "--lam", "1,0")
        assert doc["modulus"] == pytest.approx(0.60653, abs=5e-6)
        assert doc["size"] == pytest.approx(math.sqrt(1 - math.exp(-1)), rel=1e-14)
        assert doc["manifest"]["command"] == "amp"

    def test_wh_mode_mismatch(self, capsys):
        code, _, err = run(capsys, "amp", "wh", "--lam", "1,0", "--lam", "0,1", "--ref-lam", "0")
        assert code == 1 and "modes" in err

    def test_seventeen_digits(self, capsys):
        _, out = run_json(capsys, "amp", "wh", "--lam", "0.3,0.1")
        line = next(ln for ln in out.splitlines() if '"modulus"' in ln)
        value = line.split(":")[1].strip().rstrip(",")
        assert float(value) == json.loads(out)["modulus"]
        assert len(value.replace("0.", "").lstrip("0")) >= 16


class TestHv:
    def test_su2(self, capsys):
        doc, _ = run_json(capsys, "hv", "su2", "--theta", str(math.pi / 2), "--samples", "200000")
        assert abs(doc["z_score"]) < 3
        assert doc["manifest"]["seed"] == 2

    def test_wh(self, capsys):
        doc, _ = run_json(capsys, "hv", "wh", "--lam", "1,0", "--samples", "200000")
        assert doc["p_analytic"] == pytest.approx(math.exp(-1))
        assert abs(doc["z_score"]) < 3

    def test_byte_identical_across_threads(self, capsys):
        base = run(capsys, "hv", "su2", "--theta", "1", "--samples", "300000")[1]
        again = run(capsys, "hv", "su2", "--theta", "1", "--samples", "300000")[1]
        threaded = run(capsys, "hv", "su2", "--theta", "1", "--samples", "300000",
                       "--threads", "4")[1]
        assert base == again == threaded

    def test_env_seed_and_precedence(self, capsys, monkeypatch):
        monkeypatch.setenv("CSREL_SEED", "9")
        doc, _ = run_json(capsys, "hv", "su2", "--theta", "1", "--samples", "100")
        assert doc["seed"] == 9
        doc, _ = run_json(capsys, "hv", "su2", "--theta", "1", "--samples", "100", "--seed", "3")
        assert doc["seed"] == 3

    def test_bad_env(self, capsys, monkeypatch):
        monkeypatch.setenv("CSREL_SEED", "abc")
        code, _, err = run(capsys, "hv", "su2", "--theta", "1")
        assert code == 1 and "CSREL_SEED" in err

    @pytest.mark.parametrize("argv", [
        ["hv", "su2", "--theta", "5"],
        ["hv", "su2", "--theta", "1", "--samples", "0"],
        ["hv", "wh", "--lam", "x,y"],
        ["hv"],
        ["nonsense"],
    ])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 1

    def test_record_time(self, capsys):
        doc, _ = run_json(capsys, "hv", "su2", "--theta", "1", "--samples", "10", "--record-time")
        assert doc["manifest"]["wall_time_s"] >= 0
        doc, _ = run_json(capsys, "hv", "su2", "--theta", "1", "--samples", "10")
        assert "wall_time_s" not in doc["manifest"]


class TestSqueezeScan:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "squeeze-scan", "--zeta", "0.5", "--grid=-1:1:3")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("# manifest: {")
        manifest = json.loads(lines[0][len("# manifest: "):])
        assert manifest["parameters"]["beta"] == pytest.approx(math.sqrt(0.75))
        assert lines[1].split(",") == cli.SCAN_HEADER
        assert len(lines) == 2 + 9
        origin = next(ln for ln in lines[2:] if ln.startswith("0,0,0,0,"))
        assert float(origin.split(",")[4]) == pytest.approx(math.sqrt(0.75))

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "scan.csv"
        code, out, _ = run(capsys, "squeeze-scan", "--zeta", "0.2,0.1", "-o", str(path))
        assert code == 0 and out == ""
        assert path.read_text().startswith("# manifest:")

    @pytest.mark.parametrize("zeta", ["1,0", "0,1.5"])
    def test_outside_disc(self, capsys, zeta):
        assert run(capsys, "squeeze-scan", "--zeta", zeta)[0] == 1

    def test_bad_grid(self, capsys):
        assert run(capsys, "squeeze-scan", "--zeta", "0.1", "--grid", "1:2")[0] == 1


class TestBell:
    def test_default(self, capsys):
        doc, _ = run_json(capsys, "bell", "--grid-order", "16")
        assert doc["identity_defect"] < 1e-12
        assert doc["singlet_fidelity"] > 1 - 1e-10
        assert doc["norm"] == pytest.approx(doc["measure_norm"], rel=1e-12)
        for row in doc["correlation_table"]:
            assert row["correlation_re"] == pytest.approx(row["expected_re"], abs=1e-12)
            assert row["correlation_im"] == pytest.approx(row["expected_im"], abs=1e-12)

    def test_order_too_small(self, capsys):
        assert run(capsys, "bell", "--grid-order", "4")[0] == 1

    def test_reproducible(self, capsys):
        assert run(capsys, "bell")[1] == run(capsys, "bell")[1]


class TestLattice:
    def test_auto_dim(self, capsys):
        doc, _ = run_json(capsys, "lattice", "--window", "3")
        mins = [w["min_singular"] for w in doc["windows"]]
        assert mins[0] == pytest.approx(1.0)
        assert all(a > b for a, b in zip(mins, mins[1:]))
        assert doc["tail_bound"] < 1e-14
        assert all(w["oracle_gram_deviation"] < 1e-10 for w in doc["windows"])
        assert doc["manifest"]["truncation"]["fock_dim"] == "auto"

    def test_fixed_dim_too_small(self, capsys):
        code, _, err = run(capsys, "lattice", "--fock-dim", "100", "--window", "3")
        assert code == 2 and "truncation" in err

    def test_negative_window(self, capsys):
        assert run(capsys, "lattice", "--window", "-1")[0] == 1


class TestOracleCheck:
    @pytest.mark.slow
    def test_all_pass(self, capsys):
        doc, _ = run_json(capsys, "oracle-check")
        assert doc["all_passed"]
        assert len(doc["suites"]) == 9

    def test_tiny_dim_fails(self, capsys):
        code, out, _ = run(capsys, "oracle-check", "--fock-dim", "4", "--fock-dim-two", "40")
        assert code == 2
        doc = json.loads(out)
        assert not doc["all_passed"]
        failed = {s["name"] for s in doc["suites"] if not s["passed"]}
        assert "glauber_vacuum" in failed


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0
