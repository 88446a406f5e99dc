# pylint: disable=missing-module-docstring,missing-function-docstring

import csv
import io
import json
from pathlib import Path

import pytest

from burnside_sharp.cli import BOUND_COLUMNS, COMPARISON_COLUMNS, main
from burnside_sharp._utils.settings import MAX_N_ENV


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def test_constant(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, "constant", "a-star", "--digits", "9")
    assert code == 0
    value, residual = out.splitlines()
    assert value == "0.428844044"
    assert residual.startswith("residual ")
    assert abs(float(residual.split()[1])) < 1e-24


def test_constant_truncates(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, "constant", "a-star", "--digits", "1")
    assert code == 0
    assert out.splitlines()[0] == "0.4"


@pytest.mark.parametrize("digits", ["0", "29", "x"])
def test_constant_digits_out_of_range(
    capsys: pytest.CaptureFixture[str], digits: str
) -> None:
    code, _, err = run(capsys, "constant", "a-star", "--digits", digits)
    assert code == 2
    assert "digits" in err


def test_solve(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, "solve", "--n", "10", "--format", "csv")
    assert code == 0
    (row,) = parse_csv(out)
    assert row["n"] == "10"
    assert row["converged"] == "true"
    assert 0.428844044 < float(row["a_n"]) < 0.5


def test_solve_rejects_n_zero(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, _ = run(capsys, "solve", "--n", "0")
    assert code == 2


def test_solve_rejects_bad_tolerance(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, _ = run(capsys, "solve", "--n", "3", "--tol", "tiny")
    assert code == 2


def test_verify_bounds_csv(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, err = run(
        capsys, "verify", "bounds", "--n-max", "1000", "--format", "csv"
    )
    assert code == 0
    assert out.splitlines()[0] == ",".join(BOUND_COLUMNS)
    assert "\r" not in out
    rows = parse_csv(out)
    assert len(rows) == 1000
    assert rows[0]["status"] == "defining-equality"
    assert {row["status"] for row in rows[1:]} == {"strict-pass"}
    assert "0 fail" in err


def test_verify_bounds_is_deterministic(
    capsys: pytest.CaptureFixture[str], tmp_path: Path
) -> None:
    paths = [tmp_path / "first.csv", tmp_path / "second.csv"]
    for path in paths:
        code, out, _ = run(
            capsys,
            "verify",
            "bounds",
            "--n-max",
            "200",
            "--format",
            "csv",
            "--out",
            str(path),
        )
        assert code == 0
        assert not out
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_verify_bounds_json(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(
        capsys, "verify", "bounds", "--n-from", "3", "--n-to", "7", "--format", "json"
    )
    assert code == 0
    rows = json.loads(out)
    assert [row["n"] for row in rows] == [3, 4, 5, 6, 7]
    assert set(rows[0]) == set(BOUND_COLUMNS)
    assert isinstance(rows[0]["log_fact"], str)
    assert float(rows[0]["log_fact"]) == pytest.approx(1.791759469228055)


def test_verify_bounds_table(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, "verify", "bounds", "--n-max", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == list(BOUND_COLUMNS)
    assert len(lines) == 6


def test_verify_bounds_range(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, _ = run(capsys, "verify", "bounds", "--n-max", "2000000")
    assert code == 2


def test_environment_lowers_the_ceiling(
    capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.setenv(MAX_N_ENV, "50")
    assert run(capsys, "verify", "bounds", "--n-max", "50", "--format", "csv")[0] == 0
    assert run(capsys, "verify", "bounds", "--n-max", "51")[0] == 2
    monkeypatch.setenv(MAX_N_ENV, "many")
    assert run(capsys, "verify", "bounds", "--n-max", "5")[0] == 2


def test_verify_monotone(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, err = run(
        capsys, "verify", "monotone", "--n-max", "100", "--format", "csv"
    )
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 100
    assert rows[0]["step"] == ""
    assert "monotone pass" in err


def test_verify_limits(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, err = run(
        capsys, "verify", "limits", "--ladder", "10:1000", "--format", "csv"
    )
    assert code == 0
    rows = parse_csv(out)
    assert [row["n"] for row in rows] == ["10", "100", "1000"]
    assert "limits pass" in err


def test_verify_limits_default_ladder(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, "verify", "limits", "--format", "csv")
    assert code == 0
    assert len(parse_csv(out)) == 6


@pytest.mark.parametrize("ladder", ["10", "0:100", "100:10", "a:b"])
def test_verify_limits_bad_ladder(
    capsys: pytest.CaptureFixture[str], ladder: str
) -> None:
    assert run(capsys, "verify", "limits", "--ladder", ladder)[0] == 2


def test_verify_accuracy(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, err = run(
        capsys, "verify", "accuracy", "--n-max", "300", "--format", "csv"
    )
    assert code == 0
    assert len(parse_csv(out)) == 300
    assert "0 violations" in err


def test_verify_optimality(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(
        capsys, "verify", "optimality", "--n", "10000", "--format", "csv"
    )
    assert code == 0
    rows = parse_csv(out)
    assert [row["probe"] for row in rows] == ["lower", "upper"]
    assert {row["status"] for row in rows} == {"fail"}


def test_verify_optimality_too_small_n(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(capsys, "verify", "optimality", "--n", "10")[0] == 1


def test_table(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(
        capsys,
        "table",
        "approx-comparison",
        "--n-from",
        "1",
        "--n-to",
        "5",
        "--format",
        "csv",
    )
    assert code == 0
    assert out.splitlines()[0] == ",".join(COMPARISON_COLUMNS)
    rows = parse_csv(out)
    assert len(rows) == 5
    assert rows[0]["stirling_error"].startswith("-0.0778")
    assert rows[0]["burnside_error"].startswith("0.0275")


def test_table_rejects_n_zero(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, _ = run(capsys, "table", "approx-comparison", "--n-from", "0")
    assert code == 2


def test_unwritable_output(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    target = tmp_path / "missing" / "out.csv"
    assert run(capsys, "verify", "bounds", "--n-max", "5", "--out", str(target))[0] == 3


def test_usage_errors(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(capsys)[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "verify", "bounds", "--format", "xml")[0] == 2


def test_version(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert out.strip()
