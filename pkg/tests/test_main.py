"""Tests for the command-line entry point."""

import json
from pathlib import Path
from typing import Generator
from unittest.mock import patch

import pytest

from hlr_toolkit.config import ENV_OVERRIDES
from hlr_toolkit.fuzz import MutationSpec, fuzz
from hlr_toolkit.library import load_example
from hlr_toolkit.main import main, parse_arguments, run_command
from hlr_toolkit.serialization import dumps, parse


@pytest.fixture(autouse=True)
def workdir(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> Generator[Path, None, None]:
    """Run every command in an empty directory without HLR_* variables."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOME", str(tmp_path / "home"))
    for variable in ENV_OVERRIDES:
        monkeypatch.delenv(variable, raising=False)
    yield tmp_path


def write_example(directory: Path, name: str) -> str:
    path = directory / f"{name}.json"
    path.write_text(dumps(load_example(name)), encoding="utf-8")
    return str(path)


def test_parse_arguments() -> None:
    """Test subcommands and shared flags."""
    args = parse_arguments(["fuzz", "doc.json", "--seed", "4", "--cat4-mode", "strict"])
    assert args.command == "fuzz"
    assert args.seed == 4
    assert args.cat4_mode == "strict"
    args = parse_arguments(["pushout", "f.json", "g.json", "--peiffer-sign", "signed"])
    assert args.files == ["f.json", "g.json"]


def test_no_command_is_usage_error() -> None:
    """Test running without a subcommand."""
    code, text = run_command([])
    assert code == 2
    assert "no command" in text


def test_unknown_flag_is_usage_error() -> None:
    """Test argparse failures map to exit code 2."""
    code, _ = run_command(["validate", "x.json", "--cat4-mode", "sideways"])
    assert code == 2


def test_validate_exit_codes(workdir: Path) -> None:
    """Test 0 for valid, 1 for invalid and 2 for unreadable documents."""
    code, text = run_command(["validate", write_example(workdir, "crossed-ideal")])
    assert code == 0
    assert "crossed-module: valid" in text

    path = write_example(workdir, "crossed-ideal-cm1-mutated")
    code, text = run_command(["validate", path])
    assert code == 1
    assert "[CM1] x=e2, m=e1" in text

    bad = workdir / "bad.json"
    bad.write_text(
        '{"kind": "hom-leibniz", "payload": {}, "schema_version": "1"}', "utf-8"
    )
    code, text = run_command(["validate", str(bad)])
    assert code == 2
    assert text.startswith("error:")


def test_precondition_failure_exits_one(workdir: Path) -> None:
    """Test converting an invalid crossed module reports its failures."""
    path = write_example(workdir, "crossed-ideal-cm1-mutated")
    code, text = run_command(["to-cat1", path])
    assert code == 1
    assert "error: crossed module is not valid" in text
    assert "[CM1]" in text


def test_broken_morphism_endpoint_exits_one(workdir: Path) -> None:
    """Test a cat1 morphism whose source base has a wrong unit is rejected."""
    site = "payload.source.base.base.unit[0]"
    original = load_example("morphism-cat1-identity")
    doc = fuzz(original, MutationSpec(0, target_path=site))
    path = workdir / "broken.json"
    path.write_text(dumps(doc), encoding="utf-8")
    for command in ("check-morphism", "validate"):
        code, text = run_command([command, str(path)])
        assert code == 1
        assert "[source.L.A:UNIT]" in text


def test_fuzzed_leibniz_seed_one_exits_one(workdir: Path) -> None:
    """Test seed 1 on leibniz-dim2 breaks multiplicativity of alpha."""
    path = workdir / "leibniz.json"
    path.write_text(dumps(fuzz(load_example("leibniz-dim2"), MutationSpec(1))), "utf-8")
    code, text = run_command(["validate", str(path)])
    assert code == 1
    assert "[MULT] x=e2, y=e2" in text


def test_roundtrip_command(workdir: Path) -> None:
    """Test the round trip on the dual-number crossed module."""
    code, text = run_command(["roundtrip", write_example(workdir, "crossed-dxmod")])
    assert code == 0
    assert text.startswith(
        "round trip is isomorphic to the input via (alpha_M, alpha_L)\n"
    )


def test_output_file(workdir: Path) -> None:
    """Test --output writes the canonical document instead of printing it."""
    target = workdir / "cat1.json"
    code, text = run_command(
        ["to-cat1", write_example(workdir, "crossed-ideal"), "--output", str(target)]
    )
    assert code == 0
    assert '"kind"' not in text
    assert parse(target.read_text(encoding="utf-8")).kind == "cat1"


def test_json_format(workdir: Path) -> None:
    """Test the JSON report format."""
    code, text = run_command(
        ["validate", write_example(workdir, "crossed-trivial"), "--format", "json"]
    )
    assert code == 0
    data = json.loads(text)
    assert data["reports"][0]["valid"] is True


def test_init_and_config_file(workdir: Path) -> None:
    """Test init writes the defaults and a configured strict mode is used."""
    code, text = run_command(["init"])
    assert code == 0
    assert (workdir / ".hlr" / "config.ini").exists()
    code, text = run_command(["init"])
    assert "already exists" in text

    config = workdir / ".hlr" / "config.ini"
    config.write_text(
        config.read_text(encoding="utf-8").replace("reconstructed", "strict"),
        encoding="utf-8",
    )
    code, _ = run_command(["to-cat1", write_example(workdir, "crossed-dxmod")])
    assert code == 1
    code, _ = run_command(
        [
            "to-cat1",
            write_example(workdir, "crossed-dxmod"),
            "--cat4-mode",
            "reconstructed",
        ]
    )
    assert code == 0


def test_invalid_config_exits_two(
    workdir: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    """Test a bad environment override is a usage error."""
    monkeypatch.setenv("HLR_OUTPUT_FORMAT", "yaml")
    code, text = run_command(["examples"])
    assert code == 2
    assert "Invalid output format" in text


def test_examples_listing() -> None:
    """Test the examples command lists every library name."""
    code, text = run_command(["examples"])
    assert code == 0
    assert "crossed-dxmod" in text


def test_main_exits_with_code(capsys: pytest.CaptureFixture[str]) -> None:
    """Test main writes stdout and raises SystemExit with the status."""
    with patch("sys.argv", ["hlr", "examples", "Q-trivial"]):
        with pytest.raises(SystemExit) as excinfo:
            main()
    assert excinfo.value.code == 0
    assert '"kind": "comm-algebra"' in capsys.readouterr().out
