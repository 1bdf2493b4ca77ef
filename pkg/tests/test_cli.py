import json
import subprocess
import sys

import pytest

from hopfknot.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestAlgebraCheck:
    def test_cyclic3(self, capsys):
        code, out, _ = run(capsys, "algebra", "check", "cyclic:3")
        assert code == 0 and "factorizable: true" in out and "λ(θ)" in out

    def test_cyclic4_fails_gauge(self, capsys):
        code, out, _ = run(capsys, "algebra", "check", "cyclic:4")
        assert code == 1 and "factorizable: false" in out and "gauge fixing: FAILED" in out

    def test_malformed_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{ nope")
        assert run(capsys, "algebra", "check", f"json:{bad}")[0] == 2

    @pytest.mark.parametrize("spec", ["cyclic:x", "cyclic:0", "quaternion:8", "json:/no/such/file"])
    def test_bad_specs(self, capsys, spec):
        assert run(capsys, "algebra", "check", spec)[0] == 2


class TestInvariant:
    def test_s1xs2_kuperberg(self, capsys):
        code, out, _ = run(capsys, "invariant", "kuperberg", "--manifold", "s1xs2", "--algebra", "cyclic:3")
        assert code == 0 and out.strip() == "3.000000000000 + 0.000000000000i"

    @pytest.mark.parametrize("alg", ["cyclic:3", "double-cyclic:2"])
    def test_s3_hennings(self, capsys, alg):
        code, out, _ = run(capsys, "invariant", "hennings", "--manifold", "s3", "--algebra", alg)
        assert code == 0 and out.startswith("1.000000000000 + 0.000000000000i")

    def test_l52_matches_golden(self, capsys, golden):
        code, out, _ = run(capsys, "invariant", "kuperberg", "--manifold", "lens:5:2", "--algebra", "cyclic:5", "--json")
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(golden["kuperberg"]["lens:5:2|cyclic:5"], abs=1e-9)

    def test_json_is_deterministic(self, capsys):
        argv = ("invariant", "kuperberg", "--manifold", "poincare", "--algebra", "double-cyclic:2", "--json", "--symbolic")
        first = run(capsys, *argv)[1]
        assert first == run(capsys, *argv)[1]
        data = json.loads(first)
        assert set(data) == {"algebra", "manifold", "kind", "value", "expr"}
        assert data["expr"].startswith("λ(")

    def test_link_spec(self, capsys, tmp_path):
        f = tmp_path / "unknot.json"
        f.write_text('{"slices": [["cup", 0], ["cap", 0]]}')
        code, out, _ = run(capsys, "invariant", "hennings", "--manifold", f"link:{f}", "--algebra", "cyclic:3")
        assert code == 0 and out.startswith("1.732050807569")

    def test_kuperberg_rejects_link(self, capsys, tmp_path):
        f = tmp_path / "unknot.json"
        f.write_text('{"slices": []}')
        assert run(capsys, "invariant", "kuperberg", "--manifold", f"link:{f}", "--algebra", "cyclic:3")[0] == 2

    def test_heegaard_file(self, capsys, tmp_path):
        from hopfknot.heegaard import dump_json, lens_space_heegaard

        f = tmp_path / "l31.json"
        f.write_text(dump_json(lens_space_heegaard(3, 1)))
        code, out, _ = run(capsys, "invariant", "kuperberg", "--manifold", f"heegaard:{f}", "--algebra", "cyclic:3")
        assert code == 0 and out.startswith("3.000000000000")

    def test_guard_env(self, capsys, monkeypatch):
        monkeypatch.setenv("HOPFKNOT_GUARD", "5")
        assert run(capsys, "invariant", "kuperberg", "--manifold", "lens:5:2", "--algebra", "double-cyclic:3")[0] == 1
        monkeypatch.setenv("HOPFKNOT_GUARD", "lots")
        assert run(capsys, "invariant", "kuperberg", "--manifold", "s3", "--algebra", "cyclic:3")[0] == 2


class TestVerify:
    @pytest.mark.parametrize("manifold, alg", [("lens:5:2", "cyclic:5"), ("s1xs2", "cyclic:3")])
    def test_theorem(self, capsys, manifold, alg):
        code, out, _ = run(capsys, "verify", "theorem", "--manifold", manifold, "--algebra", alg)
        assert code == 0 and "hennings generic" in out

    def test_theorem_poincare_fast_only(self, capsys):
        code, out, _ = run(capsys, "verify", "theorem", "--manifold", "poincare", "--algebra", "double-cyclic:3")
        assert code == 0 and "skipped" in out

    @pytest.mark.parametrize("manifold, alg", [("lens:5:2", "cyclic:5"), ("lens:3:1", "cyclic:3")])
    def test_corollary(self, capsys, manifold, alg):
        assert run(capsys, "verify", "corollary", "--manifold", manifold, "--algebra", alg)[0] == 0

    def test_corollary_refuses_even_cyclic(self, capsys):
        code, _, err = run(capsys, "verify", "corollary", "--manifold", "lens:5:2", "--algebra", "cyclic:4")
        assert code == 1 and "not factorizable" in err

    def test_corollary_needs_lens(self, capsys):
        assert run(capsys, "verify", "corollary", "--manifold", "poincare", "--algebra", "cyclic:3")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hopfknot", "invariant", "kuperberg", "--manifold", "s3", "--algebra", "cyclic:5"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("1.000000000000")
