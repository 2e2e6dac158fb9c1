import json
import subprocess
import sys

import pytest

from menger_pcm.cli import main
from menger_pcm.config import SpaceConfig, dump_config, load_config, parse_config
from menger_pcm.errors import ConfigError

from conftest import CONFIGS, FIXTURES

SHIPPED = sorted(CONFIGS.glob("*.yaml"))


def run_cli(capsys, *args):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_shipped_configs_exist():
    names = {p.name for p in SHIPPED}
    assert {"heaviside_affine.yaml", "fraction_half_map.yaml", "exp_ratio.yaml",
            "rational_pair.yaml", "heaviside_quad_map.yaml"} <= names


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.stem)
def test_config_round_trip(path):
    cfg = load_config(path)
    again = parse_config(dump_config(cfg))
    assert again == cfg
    assert SpaceConfig.from_mapping(cfg.to_mapping()) == cfg


def test_defaults_are_filled():
    cfg = parse_config("carrier: {interval: {lo: 0, hi: 1}}\nkernel: {family: fraction}\n")
    assert cfg.carrier["interval"]["samples"] == 9
    assert cfg.grids["tolerance"] == 1e-12
    assert cfg.kernel["scalarizer"] == "first-component"


@pytest.mark.parametrize("text,field,line", [
    ("carrier: {interval: {lo: 1, hi: 0}}\nkernel: {family: fraction}\n",
     "carrier.interval.hi", 1),
    ("carrier:\n  interval: {lo: 0, hi: 1, samples: 1}\nkernel: {family: fraction}\n",
     "carrier.interval.samples", 2),
    ("carrier: {interval: {lo: 0, hi: 1}}\nkernel: {family: fraction}\ngrids:\n"
     "  t_values: [0.5, -1]\n", "grids.t_values[1]", 4),
    ("carrier: {interval: {lo: 0, hi: 1}}\nkernel: {family: fraction}\ngrids:\n"
     "  tolerance: 0\n", "grids.tolerance", 4),
    ("carrier: {interval: {lo: 0, hi: 1}}\nkernel: {family: fraction}\ncolour: red\n",
     "colour", 3),
    ("carrier: {interval: {lo: 0, hi: 1}}\nkernel:\n  family: gaussian\n", "kernel.family", 3),
])
def test_config_errors_name_field_and_line(text, field, line):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.field == field
    assert info.value.line == line


def test_cli_check_axioms_fraction(capsys):
    code, out, _ = run_cli(capsys, "check-axioms", CONFIGS / "fraction_half_map.yaml")
    assert code == 0
    doc = json.loads(out)
    assert all(c["status"] == "pass" for c in doc["checks"] if c["axiom_id"].startswith("PCM"))


def test_cli_fixed_point_quad(capsys):
    code, out, _ = run_cli(capsys, "fixed-point", CONFIGS / "heaviside_quad_map.yaml")
    assert code == 0
    doc = json.loads(out)
    fp = next(c for c in doc["checks"] if c["axiom_id"] == "common-fixed-point")
    assert fp["witness"][0] == pytest.approx(0.6339745962, abs=1e-9)


def test_cli_incompatible_family_exit_2(capsys):
    code, out, err = run_cli(capsys, "check-axioms", FIXTURES / "bad_family.yaml")
    assert code == 2 and out == ""
    assert "kernel family incompatible with carrier" in err
    assert "kernel.family (line 5)" in err


def test_cli_broken_metric_exit_1_with_witness(capsys):
    code, out, _ = run_cli(capsys, "check-axioms", FIXTURES / "broken_squared_metric.yaml")
    assert code == 1
    cm4 = next(c for c in json.loads(out)["checks"] if c["axiom_id"] == "CM4")
    assert cm4["status"] == "fail" and cm4["witness"] == [0.0, 0.6, 1.0]


def test_cli_usage_errors(capsys, tmp_path):
    assert main([]) == 2
    assert main(["no-such-suite", "x.yaml"]) == 2
    code, _, err = run_cli(capsys, "diameter", tmp_path / "missing.yaml")
    assert code == 2 and "cannot read" in err
    code, _, err = run_cli(capsys, "diameter", CONFIGS / "exp_ratio.yaml", "--tol", "-1")
    assert code == 2 and "--tol" in err


def test_cli_fixed_point_without_maps_is_config_error(capsys):
    code, _, err = run_cli(capsys, "fixed-point", CONFIGS / "exp_ratio.yaml")
    assert code == 2 and "maps" in err


def test_cli_text_and_out(capsys, tmp_path):
    dest = tmp_path / "r.txt"
    code, out, _ = run_cli(capsys, "diameter", CONFIGS / "fraction_half_map.yaml", "--text",
                           "--out", dest)
    assert code == 0
    assert out.startswith("suite diameter")
    assert dest.read_text().rstrip("\n") == out.rstrip("\n")


def test_cli_tol_override(capsys):
    code, out, _ = run_cli(capsys, "check-axioms", CONFIGS / "exp_ratio.yaml", "--tol", "1e-9")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "menger_pcm", "diameter",
                           str(CONFIGS / "rational_pair.yaml")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["suite"] == "diameter"
