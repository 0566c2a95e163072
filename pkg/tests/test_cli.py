import numpy as np
import pytest

from khessian.cli import main
from khessian.constructions import make_test_function, random_bump_field
from khessian.grid import Box, GridSpec, sample, save_field


@pytest.fixture
def field_files(tmp_path):
    g = GridSpec(Box.cube(0.0, 2 * np.pi, 2), (65, 65))
    u = random_bump_field(g, seed=4)
    phi = make_test_function("product_bumps", g)
    up, pp = tmp_path / "u.field", tmp_path / "phi.field"
    save_field(u, up)
    save_field(phi, pp)
    return str(up), str(pp)


def test_identities_exit_code_and_determinism(capsys):
    assert main(["identities", "--seed", "1", "--trials", "20"]) == 0
    out1 = capsys.readouterr().out
    assert main(["identities", "--seed", "1", "--trials", "20"]) == 0
    out2 = capsys.readouterr().out
    assert out1 == out2
    assert "result pass" in out1


def test_scaling_end_to_end(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "family = oscillatory\nn = 3\nk = 3\np = 4\ns = 1.0\nrho = 7/6\nm_list = 4 8 16\nseed = 2\n"
    )
    out = tmp_path / "out"
    assert main(["scaling", "--config", str(cfg), "--out", str(out)]) == 0
    assert (out / "report.csv").exists()
    assert (out / "manifest.txt").exists()
    text = (out / "report.csv").read_text()
    assert text.count("\n") == 4  # header + three rows
    manifest = (out / "manifest.txt").read_text()
    assert "seed = 2" in manifest and "khessian version" in manifest


def test_scaling_rejects_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("family = oscillatory\nm_list = 4 8 16\nmystery = 1\n")
    assert main(["scaling", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 2
    assert "unknown key" in capsys.readouterr().err


def test_scaling_accepts_family_alias(tmp_path):
    cfg = tmp_path / "alias.cfg"
    cfg.write_text(
        "family = sect4\nn = 3\nk = 3\np = 4\ns = 1.0\nrho = 7/6\nm_list = 4 8 16\n"
    )
    out = tmp_path / "out"
    assert main(["scaling", "--config", str(cfg), "--out", str(out)]) == 0
    assert "oscillatory" in (out / "report.csv").read_text()


def test_norm_subcommand_gagliardo(field_files, capsys):
    up, _ = field_files
    assert main(["norm", "--field", up, "--s", "1.3", "--p", "2", "--budget", "50000"]) == 0
    out = capsys.readouterr().out
    header, row = out.strip().splitlines()
    assert header == "method,s,p,w1p,seminorm,total,budget,seed"
    cells = row.split(",")
    assert cells[0] == "gagliardo"
    assert float(cells[5]) == pytest.approx(float(cells[3]) + float(cells[4]), rel=1e-9)


def test_norm_subcommand_dyadic(tmp_path, capsys):
    g = GridSpec(Box.cube(0.0, 2 * np.pi, 2), (64, 64), periodic=True)
    u = sample(lambda x, y: np.sin(4 * x) + 0.2 * np.cos(8 * y), g)
    path = tmp_path / "per.field"
    save_field(u, path)
    assert main(["norm", "--field", str(path), "--s", "0.8", "--p", "2", "--method", "dyadic"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[1].startswith("dyadic,")


def test_norm_dyadic_on_closed_grid_is_usage_error(field_files, capsys):
    up, _ = field_files
    assert main(["norm", "--field", up, "--s", "0.8", "--p", "2", "--method", "dyadic"]) == 2
    assert "periodic" in capsys.readouterr().err


def test_pairing_subcommand_methods(field_files, capsys):
    up, pp = field_files
    vals = {}
    for method in ("direct", "weak2"):
        assert main(["pairing", "--field", up, "--phi", pp, "--k", "2", "--method", method]) == 0
        out = capsys.readouterr().out
        header, row = out.strip().splitlines()
        assert header == "method,k,m,value,grid"
        vals[method] = float(row.split(",")[3])
    assert vals["weak2"] == pytest.approx(vals["direct"], rel=0.2)


def test_pairing_weak2_requires_k2(field_files, capsys):
    up, pp = field_files
    assert main(["pairing", "--field", up, "--phi", pp, "--k", "3", "--method", "weak2"]) == 2


def test_pairing_missing_file_is_usage_error(tmp_path, capsys):
    missing = str(tmp_path / "none.field")
    assert main(["pairing", "--field", missing, "--phi", missing, "--k", "2"]) == 2


def test_embedding_subcommand(tmp_path, capsys):
    out = tmp_path / "emb.csv"
    assert main(["embedding", "--k", "3", "--n", "3", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "s,p,case,region"
    assert len(lines) == 401


def test_lemma31_subcommand(capsys):
    assert main(["lemma31", "--k", "2", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "relative error" in out
    assert main(["lemma31", "--k", "2", "--n", "2", "--profile", "odd"]) == 0


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run(
        [sys.executable, "-m", "khessian", "embedding", "--k", "3", "--n", "4", "--out", "/dev/null"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
