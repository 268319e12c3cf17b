"""End-to-end tests for the command-line frontend.

Everything drives main() in-process so exit codes and both output
streams can be asserted cheaply; one subprocess smoke test covers the
module entry point.
"""

import subprocess
import sys

import pytest

from shipsearch.cli import banner_text, main
from shipsearch.rules import parse_rule
from shipsearch.statespace import SearchParams

LIFE = parse_rule("B3/S23")

GLIDER_RLE = "x = 3, y = 3\nbob$2bo$3o!\n"
BLINKER_RLE = "x = 3, y = 1, rule = B3/S23\n3o!\n"
BLOCK_RLE = "x = 2, y = 2, rule = B3/S23\n2o$2o!\n"
EMPTY_RLE = "x = 0, y = 0, rule = B3/S23\n!\n"


def search_args(*extra):
    return ["search", "--rule", "B3/S23", "--period", "2", "--offset", "1",
            "--width", "5", "--symmetry", "glide", "--quiet", *extra]


class TestSearchCommand:
    def test_ship_found_exit_zero(self, capsys):
        assert main(search_args()) == 0
        out = capsys.readouterr().out
        assert "#C period 4, dx 0, dy -2, speed 2c/4 = c/2" in out
        assert "rule = B3/S23" in out

    def test_banner_on_stderr(self, capsys):
        main(search_args())
        err = capsys.readouterr().err
        assert "2^20" in err
        assert "glide-reflect" in err

    def test_banner_exponent_formula(self):
        text = banner_text(SearchParams(LIFE, 7, 1, 9))
        assert "2^126" in text

    def test_exhausted_exit_one(self, capsys):
        args = ["search", "--rule", "B3/S23", "--period", "2", "--offset", "1",
                "--width", "3", "--quiet"]
        assert main(args) == 1
        assert capsys.readouterr().out == ""

    @pytest.mark.parametrize(
        "tweak",
        [
            ["--period", "3", "--offset", "3"],
            ["--period", "4", "--offset", "2"],
            ["--rule", "B03/S23"],
            ["--translation", "diagonal", "--symmetry", "even"],
        ],
    )
    def test_bad_parameters_exit_two(self, tweak, capsys):
        args = search_args()
        for flag, value in zip(tweak[::2], tweak[1::2]):
            if flag in args:
                args[args.index(flag) + 1] = value
            else:
                args += [flag, value]
        assert main(args) == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_flag_is_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["search", "--rule", "B3/S23"])
        assert info.value.code == 2

    def test_output_file_reverifies(self, tmp_path, capsys):
        path = tmp_path / "ship.rle"
        assert main(search_args("--output", str(path))) == 0
        assert capsys.readouterr().out == ""
        assert main(["verify", str(path)]) == 0
        assert "speed 2c/4 = c/2" in capsys.readouterr().out

    def test_progress_goes_to_stderr(self, capsys):
        args = ["search", "--rule", "B3/S23", "--period", "2", "--offset", "1",
                "--width", "3"]
        assert main(args) == 1
        captured = capsys.readouterr()
        assert "progress:" in captured.err
        assert "search ended: exhausted" in captured.err
        assert captured.out == ""


class TestVerifyCommand:
    def write(self, tmp_path, text):
        path = tmp_path / "pattern.rle"
        path.write_text(text)
        return str(path)

    def test_glider_with_rule_override(self, tmp_path, capsys):
        path = self.write(tmp_path, GLIDER_RLE)
        assert main(["verify", path, "--rule", "B3/S23"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("period 4")
        assert "c/4" in out
        assert ", slope " in out

    def test_rule_header_required(self, tmp_path, capsys):
        path = self.write(tmp_path, GLIDER_RLE)
        assert main(["verify", path]) == 2
        assert "--rule" in capsys.readouterr().err

    def test_blinker(self, tmp_path, capsys):
        path = self.write(tmp_path, BLINKER_RLE)
        assert main(["verify", path]) == 1
        assert "not a spaceship (oscillator, period 2)" in capsys.readouterr().out

    def test_block(self, tmp_path, capsys):
        path = self.write(tmp_path, BLOCK_RLE)
        assert main(["verify", path]) == 1
        assert "not a spaceship (still life)" in capsys.readouterr().out

    def test_empty(self, tmp_path, capsys):
        path = self.write(tmp_path, EMPTY_RLE)
        assert main(["verify", path]) == 1
        assert "not a spaceship (empty)" in capsys.readouterr().out

    def test_unparseable_exit_two(self, tmp_path, capsys):
        path = self.write(tmp_path, "no header here\n")
        assert main(["verify", path]) == 2
        assert "header" in capsys.readouterr().err

    def test_missing_file_exit_two(self, tmp_path, capsys):
        assert main(["verify", str(tmp_path / "absent.rle")]) == 2
        assert "error:" in capsys.readouterr().err


class TestStatsCommand:
    def test_life_pruned_fraction(self, capsys):
        assert main(["stats", "--rule", "B3/S23"]) == 0
        out = capsys.readouterr().out
        assert "pruned: 18.5%" in out
        assert "pair strip table density" in out

    def test_b27s0_pruned_fraction(self, capsys):
        assert main(["stats", "--rule", "B27/S0"]) == 0
        assert "pruned: 68.3%" in capsys.readouterr().out

    def test_rule_with_nothing_pruned(self, capsys):
        # found by scripts/scan_prune_rates.py: the pair table rejects nothing
        assert main(["stats", "--rule", "B25/S1458"]) == 0
        assert "pruned: 0.0%" in capsys.readouterr().out

    def test_higher_period_reports_chain_table(self, capsys):
        assert main(["stats", "--rule", "B3/S23", "--period", "3"]) == 0
        out = capsys.readouterr().out
        assert "lookahead chain table density" in out
        assert "pruned:" not in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "shipsearch.cli", "stats", "--rule", "B3/S23"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "pruned: 18.5%" in proc.stdout
