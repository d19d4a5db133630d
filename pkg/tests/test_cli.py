import io
import json
import subprocess
import sys
from importlib import resources

import pytest

from etaq.cli import main

FIXTURES = resources.files("etaq") / "fixtures"

# fixture -> (exit code, status)
GOLDEN = {
    "e4": (0, "valid"),
    "e6": (0, "valid"),
    "e4_perturbed": (1, "invalid"),
    "e22_printed": (1, "malformed"),
    "e32_printed": (1, "malformed"),
    "e52_printed": (1, "malformed"),
    "e72_printed": (1, "malformed"),
    "e22_corrected": (0, "valid"),
    "e32_level27": (0, "valid"),
    "e52_level20": (0, "valid"),
    "e72_level28": (0, "valid"),
}


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestExpand:
    def test_delta(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["expand", "--precision", "4"], '{"level":1,"exponents":{"1":24}}')
        assert code == 0
        assert json.loads(out) == {"offset24": 24, "coeffs": ["1", "-24", "252", "-1472"]}

    def test_level_11_offset(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["expand"], '{"level":11,"exponents":{"1":2,"11":2}}')
        assert code == 0 and json.loads(out)["offset24"] == 24

    def test_empty_exponents(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["expand", "--precision", "3"], '{"level":1,"exponents":{}}')
        assert json.loads(out) == {"offset24": 0, "coeffs": ["1", "0", "0"]}

    def test_default_precision_is_sturm_plus_ten(self, capsys, monkeypatch):
        _, out, _ = run(capsys, monkeypatch, ["expand"], '{"level":11,"exponents":{"1":2,"11":2}}')
        assert len(json.loads(out)["coeffs"]) == 2 + 10

    def test_env_precision(self, capsys, monkeypatch):
        monkeypatch.setenv("ETAQ_PRECISION", "5")
        _, out, _ = run(capsys, monkeypatch, ["expand"], '{"level":1,"exponents":{"1":24}}')
        assert len(json.loads(out)["coeffs"]) == 5

    def test_json_flag(self, capsys, monkeypatch, tmp_path):
        path = tmp_path / "delta.json"
        path.write_text('{"level":1,"exponents":{"1":24}}')
        code, out, _ = run(capsys, monkeypatch, ["expand", "--json", str(path), "--precision", "2"])
        assert code == 0 and json.loads(out)["coeffs"] == ["1", "-24"]

    @pytest.mark.parametrize("text", ["not json", '{"level":4,"exponents":{"3":1}}', '{"exponents":{}}', "[1, 2]"])
    def test_bad_input(self, capsys, monkeypatch, text):
        code, out, err = run(capsys, monkeypatch, ["expand"], text)
        assert code == 2
        assert out == "" and err

    def test_roundtrip(self, capsys, monkeypatch):
        _, out, _ = run(capsys, monkeypatch, ["expand", "--precision", "8"], '{"level":6,"exponents":{"1":-3,"2":5,"3":2,"6":-1}}')
        data = json.loads(out)
        assert json.dumps(data, indent=2) + "\n" == out


class TestCheck:
    def test_delta(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["check"], '{"level":1,"exponents":{"1":24}}')
        data = json.loads(out)
        assert code == 0 and data["pass"]
        assert data["weight"] == "12" and data["character"]["trivial"]

    def test_weight_one(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["check"], '{"level":576,"exponents":{"12":-2,"24":6,"48":-2}}')
        data = json.loads(out)
        assert code == 0 and data["pass"] and data["weight"] == "1"

    def test_eta_fails(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["check"], '{"level":1,"exponents":{"1":1}}')
        data = json.loads(out)
        assert code == 1 and not data["cond_delta"] and data["character"] is None


class TestBasis:
    def test_level_11(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["basis", "--level", "11", "--weight", "2"])
        assert code == 0
        assert {"level": 11, "exponents": {"1": 2, "11": 2}} in json.loads(out)["basis"]

    def test_delta(self, capsys, monkeypatch):
        _, out, _ = run(capsys, monkeypatch, ["basis", "--level", "1", "--weight", "12"])
        assert json.loads(out)["basis"] == [{"level": 1, "exponents": {"1": 24}}]

    def test_level_20(self, capsys, monkeypatch):
        _, out, _ = run(capsys, monkeypatch, ["basis", "--level", "20", "--weight", "2"])
        assert json.loads(out)["rank"] >= 6

    def test_missing_argument(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["basis", "--level", "20"])
        assert exc.value.code == 2


class TestDecompose:
    def test_e4_from_search(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["decompose", "--target", "E4", "--level", "4", "--weight", "4"])
        assert code == 0 and json.loads(out)["status"] == "ok"

    def test_basis_file(self, capsys, monkeypatch, tmp_path):
        path = tmp_path / "basis.json"
        path.write_text(json.dumps([{"level": 2, "exponents": {"1": 16, "2": -8}}, {"level": 2, "exponents": {"1": -8, "2": 16}}]))
        code, out, _ = run(capsys, monkeypatch, ["decompose", "--target", "E4", "--basis", str(path)])
        assert [t["coeff"] for t in json.loads(out)["terms"]] == ["1", "256"]

    def test_no_solution_exit(self, capsys, monkeypatch, tmp_path):
        path = tmp_path / "basis.json"
        path.write_text(json.dumps([{"level": 2, "exponents": {"1": 16, "2": -8}}]))
        code, out, _ = run(capsys, monkeypatch, ["decompose", "--target", "E4", "--basis", str(path)])
        assert code == 1 and json.loads(out)["status"] == "no-solution"


class TestCertify:
    @pytest.mark.parametrize("name", sorted(GOLDEN))
    def test_golden_suite(self, capsys, monkeypatch, name):
        code, out, _ = run(capsys, monkeypatch, ["certify", str(FIXTURES / f"{name}.json")])
        assert (code, json.loads(out)["status"]) == GOLDEN[name]

    def test_fixture_by_name(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["certify", "e4"])
        assert code == 0

    def test_stdin(self, capsys, monkeypatch):
        text = (FIXTURES / "e6.json").read_text()
        code, out, _ = run(capsys, monkeypatch, ["certify", "-"], text)
        data = json.loads(out)
        assert code == 0 and data["verified_bound"] >= 3

    def test_target_override(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["certify", "e4", "--target", "E6"])
        assert code == 1 and json.loads(out)["status"] == "invalid"

    def test_malformed_term_index(self, capsys, monkeypatch):
        _, out, _ = run(capsys, monkeypatch, ["certify", "e72_printed"])
        assert json.loads(out)["term_index"] == 5

    def test_certificate_fields(self, capsys, monkeypatch):
        _, out, _ = run(capsys, monkeypatch, ["certify", "e4", "--coefficients", "200"])
        data = json.loads(out)
        assert set(data) >= {"space", "target", "terms", "verified_bound", "status", "detail"}
        assert data["verified_bound"] == 199
        assert data["terms"][1]["coeff"] == "256"

    def test_missing_file(self, capsys, monkeypatch):
        code, _, err = run(capsys, monkeypatch, ["certify", "/nonexistent/identity.json"])
        assert code == 2 and err


class TestSmallCommands:
    def test_dims(self, capsys, monkeypatch):
        _, out, _ = run(capsys, monkeypatch, ["dims", "--prime", "11", "--weight", "2"])
        assert json.loads(out) == {"prime": 11, "weight": 2, "genus": 1, "cusp": 1, "eisenstein": 1, "modular": 2}

    def test_dims_out_of_domain(self, capsys, monkeypatch):
        code, _, _ = run(capsys, monkeypatch, ["dims", "--prime", "3", "--weight", "4"])
        assert code == 2

    def test_sturm(self, capsys, monkeypatch):
        _, out, _ = run(capsys, monkeypatch, ["sturm", "--level", "8", "--weight", "2"])
        data = json.loads(out)
        assert data["sturm_bound"] == 2 and data["certificate_coefficients"] == 3

    @pytest.mark.parametrize("n, p", [(0, 1), (4, 5), (200, 3972999029388)])
    def test_partition(self, capsys, monkeypatch, n, p):
        _, out, _ = run(capsys, monkeypatch, ["partition", "--n", str(n)])
        assert json.loads(out)["p"] == p

    def test_partition_published_p200(self, capsys, monkeypatch):
        # Expected to fail: the published value drops a digit 9.
        _, out, _ = run(capsys, monkeypatch, ["partition", "--n", "200"])
        assert json.loads(out)["p"] == 397299029388

    def test_j(self, capsys, monkeypatch):
        _, out, _ = run(capsys, monkeypatch, ["j", "--precision", "3"])
        assert json.loads(out) == {"offset24": -24, "coeffs": ["1", "744", "196884"]}

    def test_j_routes_agree(self, capsys, monkeypatch):
        _, a, _ = run(capsys, monkeypatch, ["j", "--precision", "30"])
        _, b, _ = run(capsys, monkeypatch, ["j", "--precision", "30", "--route", "eta"])
        assert a == b

    @pytest.mark.parametrize("p, status, code", [(7, "infeasible-congruence", 1), (5, "infeasible-parity", 1), (3, "feasible", 0)])
    def test_feasible(self, capsys, monkeypatch, p, status, code):
        got, out, _ = run(capsys, monkeypatch, ["feasible", "--prime", str(p), "--power", "3"])
        assert got == code and json.loads(out)["status"] == status

    def test_not_prime(self, capsys, monkeypatch):
        code, _, err = run(capsys, monkeypatch, ["feasible", "--prime", "9", "--power", "1"])
        assert code == 2 and err


class TestProcess:
    def _run(self, *args, stdin=""):
        return subprocess.run([sys.executable, "-m", "etaq.cli", *args], input=stdin, capture_output=True, text=True)

    def test_deterministic(self):
        a = self._run("basis", "--level", "28", "--weight", "2")
        b = self._run("basis", "--level", "28", "--weight", "2")
        assert a.returncode == 0 and a.stdout == b.stdout

    def test_stdout_is_pure_json(self):
        result = self._run("certify", "e4_perturbed")
        assert result.returncode == 1
        json.loads(result.stdout)

    def test_usage_error(self):
        result = self._run("no-such-command")
        assert result.returncode == 2 and result.stdout == ""
