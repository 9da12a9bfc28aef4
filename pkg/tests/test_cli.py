"""
Command line: validate, render, compare and bench through the typer app
"""

import json
import re
from pathlib import Path

import pytest
from typer.testing import CliRunner

from gifs.cli.app import app
from gifs.cli.errors import EXIT_BUDGET_EXCEEDED, EXIT_CONFIGURATION, EXIT_SUCCESS, EXIT_THRESHOLD_EXCEEDED
from gifs.services.rendering import read_image

runner = CliRunner()

GOLDEN = Path(__file__).resolve().parent / "golden"

QUIET = ["--log-level", "CRITICAL"]


def invoke(*args):
    return runner.invoke(app, QUIET + [str(arg) for arg in args])


@pytest.fixture
def identity_file(tmp_path):
    path = tmp_path / "identity.json"
    path.write_text(json.dumps({
        "dimension": 2,
        "order": 1,
        "maps": [{"matrices": [[[1.0, 0.0], [0.0, 1.0]]], "translation": [0.0, 0.0]}],
    }))
    return path


class TestValidate:
    def test_sample(self, samples_dir):
        result = invoke("validate", "--config", samples_dir / "system_f.json")
        assert result.exit_code == EXIT_SUCCESS
        report = json.loads(result.output)
        assert report["passed"] is True
        assert report["maps"] == 2
        assert report["c"] == pytest.approx(0.51291, abs=1e-4)
        assert [b["index"] for b in report["bounds"]] == [1, 2]

    def test_non_contractive_is_reported(self, identity_file):
        result = invoke("validate", "-c", identity_file)
        assert result.exit_code == EXIT_SUCCESS
        assert json.loads(result.output)["passed"] is False

    def test_non_contractive_strict(self, identity_file):
        result = invoke("validate", "-c", identity_file, "--strict")
        assert result.exit_code == EXIT_CONFIGURATION

    def test_missing_file(self, tmp_path):
        result = invoke("validate", "-c", tmp_path / "absent.json")
        assert result.exit_code == EXIT_CONFIGURATION


class TestRender:
    def test_writes_pgm(self, samples_dir, tmp_path):
        out = tmp_path / "f.pgm"
        result = invoke(
            "render", "-c", samples_dir / "system_f.json", "--out", out,
            "--depth", "3", "--width", "64", "--height", "48",
        )
        assert result.exit_code == EXIT_SUCCESS
        assert out.read_bytes().startswith(b"P5\n64 48\n255\n")
        assert "Wrote 64x48 image" in result.output
        assert result.output.rstrip().endswith(", 0 outside the viewport")

    def test_reports_points_outside_viewport(self, samples_dir, tmp_path):
        # every image under h_2 or h_3 has a coordinate of at least 0.5
        result = invoke(
            "render", "-c", samples_dir / "system_h.json", "-o", tmp_path / "corner.pgm",
            "--algorithm", "affine-shortcut", "--depth", "2", "--viewport", "0,0.2,0,0.2",
            "--width", "16", "--height", "16",
        )
        assert result.exit_code == EXIT_SUCCESS
        dropped = int(re.search(r", (\d+) outside the viewport", result.output).group(1))
        assert dropped >= 1

    def test_writes_png(self, samples_dir, tmp_path):
        out = tmp_path / "g.png"
        result = invoke("render", "-c", samples_dir / "system_g.json", "-o", out, "--depth", "3", "--width", "32", "--height", "32")
        assert result.exit_code == EXIT_SUCCESS
        image = read_image(out)
        assert (image.width, image.height) == (32, 32)

    def test_chaos_renders_are_byte_identical(self, samples_dir, tmp_path):
        outputs = []
        for name in ("first.pgm", "second.pgm"):
            out = tmp_path / name
            result = invoke(
                "render", "-c", samples_dir / "system_h.json", "-o", out,
                "--points", "5000", "--seed", "42", "--width", "100", "--height", "100",
            )
            assert result.exit_code == EXIT_SUCCESS
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

    def test_chaos_render_matches_golden(self, samples_dir, tmp_path):
        # h_2 images lie in the top-left quadrant, h_3 images bottom-right, h_1 images bottom-left
        out = tmp_path / "quadrants.pgm"
        result = invoke(
            "render", "-c", samples_dir / "system_h.json", "-o", out,
            "--points", "100000", "--seed", "42", "--width", "2", "--height", "2",
            "--viewport=-0.1,0.9,-0.1,0.9", "--mode", "binary",
        )
        assert result.exit_code == EXIT_SUCCESS
        assert out.read_bytes() == (GOLDEN / "system_h_chaos_quadrants.pgm").read_bytes()

    def test_algorithm_override_and_viewport(self, samples_dir, tmp_path):
        out = tmp_path / "h.pgm"
        result = invoke(
            "render", "-c", samples_dir / "system_h.json", "-o", out,
            "--algorithm", "affine-full", "--depth", "2", "--viewport=-0.1,1,-0.1,1",
            "--width", "20", "--height", "20", "--mode", "binary",
        )
        assert result.exit_code == EXIT_SUCCESS
        assert read_image(out).pixels.max() == 255

    def test_budget_exceeded(self, samples_dir, tmp_path):
        result = invoke(
            "render", "-c", samples_dir / "system_f.json", "-o", tmp_path / "x.pgm",
            "--algorithm", "affine-shortcut", "--depth", "8",
        )
        assert result.exit_code == EXIT_BUDGET_EXCEEDED

    def test_bad_viewport(self, samples_dir, tmp_path):
        result = invoke("render", "-c", samples_dir / "system_f.json", "-o", tmp_path / "x.pgm", "--viewport", "1,0,0,1")
        assert result.exit_code == EXIT_CONFIGURATION

    def test_unwritable_output(self, samples_dir, tmp_path):
        result = invoke("render", "-c", samples_dir / "system_f.json", "-o", tmp_path / "no" / "x.pgm", "--depth", "2")
        assert result.exit_code == EXIT_CONFIGURATION


class TestCompare:
    def test_affine_algorithms_agree(self, samples_dir):
        result = invoke(
            "compare", "-c", samples_dir / "system_f.json",
            "--algorithm", "affine-shortcut", "--against", "affine-full",
            "--depth", "3", "--against-depth", "3", "--threshold", "1e-9",
        )
        assert result.exit_code == EXIT_SUCCESS
        report = json.loads(result.output)
        assert report["passed"] is True
        assert report["first"]["label"] == "affine-shortcut"

    def test_threshold_exceeded(self, samples_dir):
        result = invoke(
            "compare", "-c", samples_dir / "system_f.json",
            "--algorithm", "deterministic-simplified", "--depth", "1",
            "--against", "affine-shortcut", "--against-depth", "4",
            "--threshold", "1e-6",
        )
        assert result.exit_code == EXIT_THRESHOLD_EXCEEDED
        assert json.loads(result.output)["passed"] is False


class TestBench:
    def test_reports_each_algorithm(self, samples_dir):
        result = invoke(
            "bench", "-c", samples_dir / "system_g.json",
            "-a", "affine-shortcut", "-a", "chaos", "--depth", "3", "--points", "1000",
        )
        assert result.exit_code == EXIT_SUCCESS
        report = json.loads(result.output)
        assert report["total_count"] == 2
        assert [r["algorithm"] for r in report["results"]] == ["affine-shortcut", "chaos"]
        assert all(r["elapsed_ms"] >= 0 for r in report["results"])


class TestUsageErrors:
    @pytest.mark.parametrize("arguments", [
        ["--algorithm", "bogus"],
        ["--depth", "abc"],
        ["--no-such-flag"],
    ])
    def test_bad_render_arguments(self, samples_dir, tmp_path, arguments):
        result = invoke("render", "-c", samples_dir / "system_f.json", "-o", tmp_path / "x.pgm", *arguments)
        assert result.exit_code == EXIT_CONFIGURATION
        assert not (tmp_path / "x.pgm").exists()

    def test_unknown_command(self):
        assert invoke("draw").exit_code == EXIT_CONFIGURATION

    def test_missing_required_option(self):
        assert invoke("validate").exit_code == EXIT_CONFIGURATION