import csv
import io
import json
import subprocess
import sys

import pytest

from spectral_sphere import cli, solver
from spectral_sphere.errors import NoConvergenceError


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


DYE = ("--medium", "rose-bengal-dmso", "--radius", "3.300mm")


@pytest.fixture(scope="module")
def dye_tables():
    code_c, text_csv = run("singularities", *DYE)
    code_j, text_json = run("singularities", *DYE, "--format", "json")
    assert code_c == code_j == 0
    return text_csv, text_json


def test_singularities_csv(dye_tables):
    rows = cli.read_solutions_csv(dye_tables[0])
    assert len(rows) == 67
    first = rows[0]
    assert (first["ell"], first["m"]) == (1, 17779)
    assert first["lambda_exact_nm"] == pytest.approx(549.00829751, abs=1e-8)
    assert first["lambda_pert_nm"] == pytest.approx(549.00830142, abs=1e-8)
    assert first["g0_per_cm"] == pytest.approx(4.981546, abs=1e-5)
    assert first["status"] == "ok"
    header = dye_tables[0].splitlines()[0]
    assert header == ",".join(cli.SOLUTION_COLUMNS)


def test_json_roundtrip(dye_tables):
    sols = cli.solutions_from_json(dye_tables[1])
    assert len(sols) == 67
    assert cli.solutions_to_json(sols) == dye_tables[1].rstrip("\n")


def test_csv_and_json_agree_bitwise(dye_tables):
    rows = cli.read_solutions_csv(dye_tables[0])
    sols = cli.solutions_from_json(dye_tables[1])
    for row, sol in zip(rows, sols):
        assert row["lambda_exact_nm"] == sol.lam
        assert row["lambda_pert_nm"] == sol.lam_pert
        assert row["g0_per_cm"] == sol.g0
        assert row["residual"] == sol.residual_mag


def test_diode_count():
    code, text = run("singularities", "--medium", "diode", "--radius", "150um", "--no-refine")
    assert code == 0
    rows = cli.read_solutions_csv(text)
    assert len(rows) == 66
    assert all(r["lambda_exact_nm"] is None for r in rows)


def test_radius_below_minimum(capsys):
    code, text = run("singularities", "--medium", "rose-bengal-dmso", "--radius", "1mm")
    assert code == 0
    assert cli.read_solutions_csv(text) == []
    assert "radius below minimum" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ("singularities", "--medium", "nope", "--radius", "1mm"),
    ("singularities", "--medium", "diode", "--radius", "150"),
    ("singularities", "--medium", "diode", "--radius", "-3mm"),
    ("scan", *DYE, "--window", "549.1:548.9"),
    ("scan", *DYE, "--grid", "0"),
    ("min-radius", "--medium", "diode", "--g0-max", "-1"),
    ("singularities", "--medium", "diode", "--radius", "150um", "--catalog", "/nonexistent/file"),
])
def test_config_errors_exit_2(argv):
    try:
        code, _ = run(*argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    assert code == 2


def test_numerical_failure_exit_3(monkeypatch):
    real = solver.refine_mode

    def flaky(seed, *args, **kwargs):
        if seed.m == 17780:
            raise NoConvergenceError("forced", best=solver.ModeSolution(
                seed.m, seed.lam, seed.g0, seed.kappa0, seed.x, 1.0, "exact",
                seed.lam, seed.g0, "no-convergence"))
        return real(seed, *args, **kwargs)

    monkeypatch.setattr(solver, "refine_mode", flaky)
    code, text = run("singularities", *DYE, "--g0-max", "4.98156")
    assert code == 3
    assert [r["status"] for r in cli.read_solutions_csv(text)] == ["ok", "no-convergence"]


def _split_scan_csv(text):
    samples, peaks = text.split("\r\n\r\n# peaks\r\n")
    return list(csv.DictReader(io.StringIO(samples))), list(csv.DictReader(io.StringIO(peaks)))


def test_scan_fig2():
    code, text = run("scan", *DYE, "--g0", "4.981546", "--window", "548.9:549.1", "--grid", "4000")
    assert code == 0
    samples, peaks = _split_scan_csv(text)
    assert len(samples) == 4000
    cands = [p for p in peaks if p["classification"] == "singularity-candidate"]
    assert len(cands) == 1
    assert float(cands[0]["R"]) > 5e14
    assert float(cands[0]["lambda_nm"]) == pytest.approx(549.00829751, abs=1e-6)


def test_scan_json_and_passive():
    code, text = run("scan", *DYE, "--g0", "0", "--window", "548.9:549.1", "--grid", "500", "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert len(data["samples"]) == 500
    assert all(s["R"] < 1.000001 for s in data["samples"])
    assert not [p for p in data["peaks"] if p["classification"] == "singularity-candidate"]


def test_scan_default_gain_uses_first_critical_value():
    code, text = run("scan", *DYE, "--window", "549.0:549.02", "--grid", "200", "--format", "json")
    assert code == 0
    peaks = json.loads(text)["peaks"]
    assert len(peaks) == 1 and peaks[0]["classification"] == "singularity-candidate"


def test_scan_empty_window():
    code, text = run("scan", *DYE, "--g0", "4.981546", "--window", "548.985:549.0", "--grid", "300")
    assert code == 0
    assert _split_scan_csv(text)[1] == []


def test_min_radius():
    code, text = run("min-radius", "--medium", "rose-bengal-dmso", "--format", "json")
    assert code == 0
    rec = json.loads(text)
    assert rec["radius_mm"] == pytest.approx(3.287825, abs=1e-3)
    assert rec["m"] == 17714
    code, text = run("min-radius", "--medium", "rose-bengal-dmso", "--g0-max", "10", "--format", "json")
    assert json.loads(text)["radius_mm"] == pytest.approx(rec["radius_mm"] / 2, rel=1e-3)


def test_media_list_with_catalog(tmp_path):
    cat = tmp_path / "media.txt"
    cat.write_text("name = slab\nn0 = 1.6\nlambda0_nm = 600\ngamma_hat = 0.05\ng0_max_per_cm = 8\n")
    code, text = run("media", "list", "--catalog", str(cat), "--format", "json")
    assert code == 0
    names = [m["name"] for m in json.loads(text)]
    assert names == ["diode", "rose-bengal-dmso", "slab"]
    code, text = run("min-radius", "--medium", "slab", "--catalog", str(cat))
    assert code == 0


def test_bad_catalog_exit_2(tmp_path, capsys):
    cat = tmp_path / "media.txt"
    cat.write_text("name = slab\nn0 = oops\n")
    code, _ = run("min-radius", "--medium", "slab", "--catalog", str(cat))
    assert code == 2
    assert "line 2" in capsys.readouterr().err
    assert run("media", "list", "--catalog", str(cat))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "spectral_sphere", "media", "list"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "name,n0,lambda0_nm,gamma_hat,g0_max_per_cm"
