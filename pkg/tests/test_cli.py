"""Command-line behavior: output shapes, exit codes, error channels."""

import json
import subprocess
import sys

import pytest

import support
from dominotwist import cli, explore
from dominotwist import geometry as geo
from dominotwist import tiling as tl
from dominotwist import twist as tw


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


def fixture_files(tmp_path, name):
    """Write a fixture's region and tiling to separate CLI input files."""
    obj = support.load_fixture(name)
    return (
        write_json(tmp_path, name + "_region.json", obj["region"]),
        write_json(tmp_path, name + "_tiling.json", obj["tiling"]),
    )


# ---------------------------------------------------------------------------
# count


def test_count_box_text(capsys):
    code, out, _ = run_cli(capsys, "count", "--box", "2,2,2")
    assert code == 0
    assert out.strip() == "9"


def test_count_box_json(capsys):
    code, out, _ = run_cli(capsys, "count", "--box", "2,2,2", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"count": "9"}


def test_count_region_file(tmp_path, capsys):
    region = write_json(tmp_path, "box.json", {"box": [3, 3, 2]})
    code, out, _ = run_cli(capsys, "count", "--region", region)
    assert code == 0
    assert out.strip() == "229"


def test_count_region_budget(tmp_path, capsys):
    region = write_json(tmp_path, "box.json", {"box": [3, 3, 2]})
    code, out, err = run_cli(capsys, "count", "--region", region, "--limit", "10")
    assert code == 1
    assert "10" in err


def test_count_needs_exactly_one_source(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["count"])
    assert exc.value.code == 2
    region = write_json(tmp_path, "box.json", {"box": [2, 2, 2]})
    with pytest.raises(SystemExit) as exc:
        cli.main(["count", "--box", "2,2,2", "--region", region])
    assert exc.value.code == 2


def test_count_rejects_malformed_box(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["count", "--box", "2,2"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# enumerate


def test_enumerate_streams_tilings_as_json(tmp_path, capsys):
    region = write_json(tmp_path, "box.json", {"box": [2, 2, 2]})
    code, out, _ = run_cli(capsys, "enumerate", "--region", region,
                           "--format", "json")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln]
    assert len(lines) == 9
    seen = {tl.tiling_from_json(json.loads(ln)) for ln in lines}
    assert len(seen) == 9


def test_enumerate_respects_limit(tmp_path, capsys):
    region = write_json(tmp_path, "box.json", {"box": [2, 2, 2]})
    code, out, _ = run_cli(capsys, "enumerate", "--region", region,
                           "--limit", "4", "--format", "json")
    assert code == 0
    assert len([ln for ln in out.splitlines() if ln]) == 4


def test_enumerate_text_prints_readable_pictures(tmp_path, capsys):
    region = write_json(tmp_path, "box.json", {"box": [2, 2, 2]})
    code, out, _ = run_cli(capsys, "enumerate", "--region", region)
    assert code == 0
    blocks = [b for b in out.split("\n\n") if b.strip()]
    assert len(blocks) == 9
    box = geo.make_box(2, 2, 2)
    for block in blocks:
        assert tl.tiling_from_ascii(block).region == box


# ---------------------------------------------------------------------------
# twist


def test_twist_of_a_tiling_file(tmp_path, capsys):
    region, tiling = fixture_files(tmp_path, "negtrit_left")
    code, out, _ = run_cli(capsys, "twist", "--tiling", tiling, "--region", region)
    assert code == 0
    assert out.strip() == "1"
    code, out, _ = run_cli(capsys, "twist", "--tiling", tiling,
                           "--region", region, "--format", "json")
    assert code == 0
    assert json.loads(out) == {"twist": 1}


def test_twist_region_defaults_to_the_dominoes(tmp_path, capsys):
    _, tiling = fixture_files(tmp_path, "negtrit_left")
    code, out, _ = run_cli(capsys, "twist", "--tiling", tiling)
    assert code == 0
    assert out.strip() == "1"


def test_twist_undefined_off_cylinders(tmp_path, capsys):
    region, tiling = fixture_files(tmp_path, "twodimers")
    code, out, err = run_cli(capsys, "twist", "--tiling", tiling, "--region", region)
    assert code == 1
    assert out == ""
    assert "error" in err


def test_pretwists_report_and_signal_fractional_values(tmp_path, capsys):
    region, tiling = fixture_files(tmp_path, "twodimers")
    code, out, _ = run_cli(capsys, "twist", "--tiling", tiling,
                           "--region", region, "--pretwists")
    assert code == 1
    assert out.strip() == "x:0 y:0 z:1/4"
    code, out, _ = run_cli(capsys, "twist", "--tiling", tiling,
                           "--region", region, "--pretwists", "--format", "json")
    assert code == 1
    assert json.loads(out) == {"x": 0, "y": 0, "z": "1/4"}


def test_pretwists_exit_zero_when_integral_and_equal(tmp_path, capsys):
    region, tiling = fixture_files(tmp_path, "negtrit_left")
    code, out, _ = run_cli(capsys, "twist", "--tiling", tiling,
                           "--region", region, "--pretwists")
    assert code == 0
    assert out.strip() == "x:1 y:1 z:1"


def test_twist_axis_flag(tmp_path, capsys):
    region, tiling = fixture_files(tmp_path, "pseudomultiplex")
    code, out, _ = run_cli(capsys, "twist", "--tiling", tiling,
                           "--region", region, "--axis", "z")
    assert code == 0
    assert out.strip() == "1"
    _, t = support.fixture_tiling("pseudomultiplex")
    expected = tw.pretwist(t, geo.neg(geo.EZ))
    code, out, _ = run_cli(capsys, "twist", "--tiling", tiling,
                           "--region", region, "--axis=-z")
    assert code == 0
    assert out.strip() == str(expected)


def test_twist_rejects_unknown_axis(tmp_path, capsys):
    region, tiling = fixture_files(tmp_path, "pseudomultiplex")
    code, _, err = run_cli(capsys, "twist", "--tiling", tiling,
                           "--region", region, "--axis", "w")
    assert code == 1
    assert "error" in err


def test_twist_requires_a_tiling(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["twist"])
    assert exc.value.code == 2


def test_missing_file_is_a_domain_error(capsys):
    code, _, err = run_cli(capsys, "twist", "--tiling", "/no/such/file.json")
    assert code == 1
    assert "error" in err


# ---------------------------------------------------------------------------
# validate


def test_validate_accepts_a_correct_tiling(tmp_path, capsys):
    region, tiling = fixture_files(tmp_path, "negtrit_left")
    code, out, _ = run_cli(capsys, "validate", "--tiling", tiling, "--region", region)
    assert code == 0
    assert "ok: 9 dominoes tile a box" in out
    code, out, _ = run_cli(capsys, "validate", "--tiling", tiling,
                           "--region", region, "--format", "json")
    assert json.loads(out) == {"ok": True, "dominoes": 9, "kind": "box"}


def test_validate_rejects_a_broken_tiling(tmp_path, capsys):
    bad = write_json(tmp_path, "bad.json", {
        "dominoes": [[[0, 0, 0], [1, 0, 0]], [[0, 1, 0], [1, 0, 0]]],
    })
    code, _, err = run_cli(capsys, "validate", "--tiling", bad)
    assert code == 1
    assert "error" in err


# ---------------------------------------------------------------------------
# construct


def test_construct_from_a_square_base(tmp_path, capsys):
    base = geo.PlanarRegion.of(geo.EZ, 0, [(0, 0), (0, 1), (1, 0), (1, 1)])
    path = write_json(tmp_path, "base.json", geo.planar_region_to_json(base))
    code, out, _ = run_cli(capsys, "construct", "--region", path, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    region = geo.region_from_json(payload["region"])
    t = tl.tiling_from_json(payload["tiling"], region)
    assert tw.pretwist(t, geo.EZ) == payload["axis_pretwist"]
    assert isinstance(payload["axis_pretwist"], int)


def test_construct_text_reports_the_pretwist(tmp_path, capsys):
    base = geo.PlanarRegion.of(geo.EZ, 0, [(0, 0), (0, 1), (1, 0), (1, 1)])
    path = write_json(tmp_path, "base.json", geo.planar_region_to_json(base))
    code, out, _ = run_cli(capsys, "construct", "--region", path, "--axis=-z")
    assert code == 0
    assert "axis pretwist:" in out


def test_construct_rejects_an_unbalanced_base(tmp_path, capsys):
    base = geo.PlanarRegion.of(geo.EZ, 0, [(0, 0), (0, 1), (1, 1)])
    path = write_json(tmp_path, "base.json", geo.planar_region_to_json(base))
    code, _, err = run_cli(capsys, "construct", "--region", path)
    assert code == 1
    assert "error" in err


def test_construct_rejects_a_solid_region_file(tmp_path, capsys):
    path = write_json(tmp_path, "box.json", {"box": [3, 3, 2]})
    code, _, err = run_cli(capsys, "construct", "--region", path, "--axis", "z")
    assert code == 1
    assert "'base'" in err


def test_construct_rejects_malformed_base_squares(tmp_path, capsys):
    path = write_json(tmp_path, "base.json", {"base": [[0, 0], "oops"]})
    code, _, err = run_cli(capsys, "construct", "--region", path)
    assert code == 1
    assert "error" in err


# ---------------------------------------------------------------------------
# gamma


def test_gamma_against_the_base_tiling(tmp_path, capsys):
    region, tiling = fixture_files(tmp_path, "gamma_nine_curves")
    code, out, _ = run_cli(capsys, "gamma", "--tiling", tiling,
                           "--region", region, "--axis", "z")
    assert code == 0
    assert "9 curves, 5 nontrivial" in out
    code, out, _ = run_cli(capsys, "gamma", "--tiling", tiling,
                           "--region", region, "--axis", "z", "--format", "json")
    payload = json.loads(out)
    assert len(payload["curves"]) == 9
    assert payload["nontrivial"] == 5


def test_gamma_of_a_tiling_with_itself(tmp_path, capsys):
    region, tiling = fixture_files(tmp_path, "gamma_nine_curves")
    code, out, _ = run_cli(capsys, "gamma", "--tiling", tiling,
                           "--tiling", tiling, "--region", region)
    assert code == 0
    assert "16 curves, 0 nontrivial" in out


def test_gamma_usage_errors(tmp_path, capsys):
    region, tiling = fixture_files(tmp_path, "gamma_nine_curves")
    with pytest.raises(SystemExit) as exc:
        cli.main(["gamma", "--region", region])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["gamma", "--tiling", tiling, "--region", region])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# components


def test_components_summary(tmp_path, capsys):
    region = write_json(tmp_path, "box.json", {"box": [2, 2, 2]})
    report = explore.flip_components(geo.make_box(2, 2, 2))
    code, out, _ = run_cli(capsys, "components", "--region", region)
    assert code == 0
    head = out.splitlines()[0]
    assert f"{report.tiling_count} tilings" in head
    assert f"{len(report.components)} components" in head
    code, out, _ = run_cli(capsys, "components", "--region", region,
                           "--format", "json")
    assert code == 0
    assert json.loads(out) == explore.report_to_json(report)


def test_components_budget_reports_partial_work(tmp_path, capsys):
    region = write_json(tmp_path, "box.json", {"box": [3, 3, 2]})
    code, out, err = run_cli(capsys, "components", "--region", region,
                             "--limit", "3", "--format", "json")
    assert code == 1
    assert "error" in err
    partial = json.loads(out)
    assert partial["complete"] is False


# ---------------------------------------------------------------------------
# entry point


def test_unknown_command_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_console_script_is_installed():
    result = subprocess.run(
        [sys.executable, "-c",
         "import sys; from dominotwist.cli import main; sys.exit(main(sys.argv[1:]))",
         "count", "--box", "2,2,2"],
        capture_output=True, text=True, timeout=60,
    )
    assert result.returncode == 0
    assert result.stdout.strip() == "9"
