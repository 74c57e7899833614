import json

import pytest

from ssamask import fixtures, textio
from ssamask.cli import EXIT_MISMATCH, EXIT_OK, EXIT_VALIDATION, main
from ssamask.masking import mask_signal
from ssamask.session import mask_provenance
from ssamask.ssa import Series

from conftest import TINY_MICROFILE
from test_session import make_reference_plan

CONFIG_TEXT = """\
group:
  vital_attributes: [duty]
  vital_combinations: [[mil]]
  parameter_attribute: age
  parameter_values: ["17", "18", "19"]
"""

CONFIG_WITH_MASK = CONFIG_TEXT + """\
mask:
  window_length: 2
  grouping: "1|2"
  trend_subset: 1
  trend:
    mode: scale
    factor: 1.0
"""


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "tiny.csv").write_text(TINY_MICROFILE)
    (tmp_path / "config.yaml").write_text(CONFIG_TEXT)
    (tmp_path / "config_mask.yaml").write_text(CONFIG_WITH_MASK)
    signal_path = tmp_path / "q.txt"
    textio.write_signal(fixtures.adjusted_signal(), signal_path)
    trend_path = tmp_path / "trend.txt"
    textio.write_series(
        Series(fixtures.REPLACEMENT_TREND, label="replacement"), trend_path
    )
    return tmp_path


class TestSignal:
    def test_counts_tiny_microfile(self, workdir, capsys):
        code = main([
            "signal", str(workdir / "tiny.csv"),
            "--config", str(workdir / "config.yaml"),
            "--out-dir", str(workdir / "out"),
        ])
        assert code == EXIT_OK
        signal = textio.read_signal(workdir / "out" / "quantity_signal.txt")
        assert list(signal.counts) == [2, 1, 1]
        assert signal.parameter_labels == ("17", "18", "19")

    def test_missing_config_is_validation_error(self, workdir, capsys):
        code = main([
            "signal", str(workdir / "tiny.csv"),
            "--config", str(workdir / "missing.yaml"),
        ])
        assert code == EXIT_VALIDATION
        assert "error:" in capsys.readouterr().err


class TestDecompose:
    def test_reference_components(self, workdir, capsys):
        code = main([
            "decompose", str(workdir / "q.txt"),
            "--window", "20",
            "--grouping", fixtures.GROUPING_TEXT,
            "--trend-subset", "1",
            "--out-dir", str(workdir / "out"),
        ])
        assert code == EXIT_OK
        spectrum, _ = textio.read_series(workdir / "out" / "spectrum.txt")
        assert spectrum.values[0] == pytest.approx(1692.739, abs=0.01)
        for k, expected in enumerate(fixtures.ADJUSTED_COMPONENTS, start=1):
            component, _ = textio.read_series(
                workdir / "out" / f"component_{k}.txt"
            )
            assert component.values[0] == pytest.approx(expected[0], abs=5e-3)

    def test_bad_grouping_is_validation_error(self, workdir, capsys):
        code = main([
            "decompose", str(workdir / "q.txt"),
            "--window", "20",
            "--grouping", "1,2|2,3",
        ])
        assert code == EXIT_VALIDATION


class TestSpectrum:
    def test_prints_advice(self, workdir, capsys):
        code = main(["spectrum", str(workdir / "q.txt"), "--window", "20"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "# candidate pairs: [(3, 4), (5, 6)]" in out
        assert "# noise cutoff: 7" in out
        assert "# trend candidates: [1, 2]" in out


class TestMask:
    def test_reference_masking_from_series(self, workdir, capsys):
        code = main([
            "mask", str(workdir / "q.txt"),
            "--window", "20",
            "--grouping", fixtures.GROUPING_TEXT,
            "--trend-subset", "1",
            "--trend-file", str(workdir / "trend.txt"),
            "--out-dir", str(workdir / "out"),
        ])
        assert code == EXIT_OK
        masked = textio.read_signal(workdir / "out" / "masked_signal.txt")
        assert tuple(int(v) for v in masked.counts) == fixtures.Q_MASKED
        report = json.loads(
            (workdir / "out" / "utility_report.json").read_text()
        )
        assert len(report["components"]) == 3

    def test_export_bytes_match_service(self, workdir):
        main([
            "mask", str(workdir / "q.txt"),
            "--window", "20",
            "--grouping", fixtures.GROUPING_TEXT,
            "--trend-subset", "1",
            "--trend-file", str(workdir / "trend.txt"),
            "--out-dir", str(workdir / "out"),
        ])
        cli_bytes = (workdir / "out" / "masked_signal.txt").read_bytes()

        plan = make_reference_plan()
        masked, _, _ = mask_signal(fixtures.adjusted_signal(), plan)
        expected = textio.format_signal(
            masked, provenance=mask_provenance(plan)
        )
        assert cli_bytes.decode("utf-8") == expected

    def test_microfile_masking_with_config(self, workdir, capsys):
        code = main([
            "mask",
            "--microfile", str(workdir / "tiny.csv"),
            "--config", str(workdir / "config_mask.yaml"),
            "--seed", "3",
            "--out-dir", str(workdir / "out"),
        ])
        assert code == EXIT_OK
        assert (workdir / "out" / "modified_microfile.csv").exists()

    def test_plan_flags_and_config_conflict(self, workdir, capsys):
        code = main([
            "mask",
            "--microfile", str(workdir / "tiny.csv"),
            "--config", str(workdir / "config_mask.yaml"),
            "--window", "2",
        ])
        assert code == EXIT_VALIDATION

    def test_missing_plan_is_validation_error(self, workdir, capsys):
        code = main(["mask", str(workdir / "q.txt")])
        assert code == EXIT_VALIDATION

    def test_unknown_trend_strategy(self, workdir, capsys):
        code = main([
            "mask", str(workdir / "q.txt"),
            "--window", "20",
            "--grouping", fixtures.GROUPING_TEXT,
            "--trend-strategy", "sorcery:1",
        ])
        assert code == EXIT_VALIDATION


class TestApply:
    def test_round_trip(self, workdir, capsys):
        target_path = workdir / "target.txt"
        from ssamask.microdata import QuantitySignal

        target = QuantitySignal(
            series=Series([1, 1, 1], label="target"),
            parameter_labels=("17", "18", "19"),
        )
        textio.write_signal(target, target_path)
        code = main([
            "apply", str(workdir / "tiny.csv"), str(target_path),
            "--config", str(workdir / "config.yaml"),
            "--seed", "5",
            "--out-dir", str(workdir / "out"),
        ])
        assert code == EXIT_OK
        from ssamask.microdata import build_quantity_signal, load_microfile
        from ssamask.textio import group_definition_from_config, load_config

        modified = load_microfile(workdir / "out" / "modified_microfile.csv")
        group = group_definition_from_config(
            load_config(str(workdir / "config.yaml"))
        )
        assert list(build_quantity_signal(modified, group).counts) == [1, 1, 1]


class TestVerifyPaper:
    def test_bundled_fixtures_pass(self, capsys):
        code = main(["verify-paper"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "FAIL" not in out
        assert "PASS" in out

    def test_perturbed_fixture_fails(self, tmp_path, capsys):
        import pathlib
        import shutil

        source = pathlib.Path(fixtures.fixture_directory())
        for name in fixtures.FIXTURE_FILES.values():
            shutil.copy(source / name, tmp_path / name)
        target = tmp_path / fixtures.FIXTURE_FILES["quantity_masked"]
        lines = target.read_text().splitlines()
        for i, line in enumerate(lines):
            if not line.startswith("#"):
                lines[i] = str(int(line) + 1)
                break
        target.write_text("\n".join(lines) + "\n")

        code = main(["verify-paper", str(tmp_path)])
        out = capsys.readouterr().out
        assert code == EXIT_MISMATCH
        assert "FAIL" in out

    def test_missing_fixture_dir_is_validation_error(self, tmp_path, capsys):
        code = main(["verify-paper", str(tmp_path / "empty")])
        assert code == EXIT_VALIDATION
