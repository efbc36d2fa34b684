import json

import pytest

from geoverify.cli import main

FAST_ARGS = {
    "spotit": [],
    "clock": [],
    "frame": [],
    "sphere": ["--triangles", "100"],
    "tent": [],
    "park": [],
    "tube": ["--samples", "20000", "--poses", "2000"],
    "crofton": ["--samples", "50000"],
    "flux": ["--rounds", "10000"],
    "family": [],
    "table": [],
    "cone": [],
    "ovals": [],
    "string": ["--samples-curve", "16"],
    "equitangent": ["--samples-step", "16"],
    "ivory": ["--count", "20"],
    "chasles": ["--count", "20"],
    "caustic": ["--orbits", "5", "--bounces", "50"],
    "pentagram": ["--count", "10"],
    "fta": ["--degree", "5", "--count", "2"],
    "swallowtail": [],
}


@pytest.mark.parametrize("command", sorted(FAST_ARGS))
def test_subcommand_passes(command, capsys):
    code = main([command, *FAST_ARGS[command]])
    out = capsys.readouterr().out
    assert code == 0, out
    assert "overall: PASS" in out


@pytest.mark.parametrize("command", ["spotit", "flux", "pentagram", "fta"])
def test_json_schema(command, capsys):
    code = main([command, *FAST_ARGS[command], "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["problem"] == command
    assert payload["passed"] is True
    assert {"name", "passed", "value"} <= set(payload["checks"][0])
    assert "version" in payload and "seed" in payload


@pytest.mark.parametrize("command", ["clock", "family", "pentagram", "fta", "tube"])
def test_reports_byte_reproducible(command, capsys):
    main([command, *FAST_ARGS[command], "--json", "--seed", "7"])
    first = capsys.readouterr().out
    main([command, *FAST_ARGS[command], "--json", "--seed", "7"])
    second = capsys.readouterr().out
    assert first == second


def test_exact_rationals_serialized_as_strings(capsys):
    main(["family", "--granularity", "weekday", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert payload["outputs"]["both_boys_given_one_distinguished"] == "13/27"


def test_invalid_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["no-such-command"])
    assert err.value.code == 2


def test_invalid_flag_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["spotit", "--bogus"])
    assert err.value.code == 2


def test_invalid_input_value_exits_2(capsys):
    code = main(["spotit", "--q", "6"])  # not prime
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_parametrized_floor_names(capsys):
    assert main(["table", "--floor", "saddle:0.08"]) == 0
    capsys.readouterr()
    assert main(["table", "--floor", "bogus"]) == 2
    assert "unknown floor" in capsys.readouterr().err


def test_failing_verification_exits_1(capsys):
    # an impossibly tight tolerance forces a verification failure
    code = main(["sphere", "--triangles", "50", "--tol", "1e-30"])
    out = capsys.readouterr().out
    assert code == 1
    assert "overall: FAIL" in out


def test_deck_output_file(tmp_path, capsys):
    target = tmp_path / "deck.json"
    code = main(["spotit", "--q", "3", "--deck-out", str(target)])
    capsys.readouterr()
    assert code == 0
    payload = json.loads(target.read_text())
    assert len(payload["cards"]) == 13


def test_svg_output_is_well_formed(tmp_path, capsys):
    import xml.dom.minidom

    target = tmp_path / "figure.svg"
    code = main(["pentagram", "--count", "5", "--svg", str(target)])
    capsys.readouterr()
    assert code == 0
    doc = xml.dom.minidom.parse(str(target))
    assert doc.documentElement.tagName == "svg"
    assert doc.documentElement.getAttribute("version") == "1.1"


def test_csv_output(tmp_path, capsys):
    target = tmp_path / "cloud.csv"
    code = main(["swallowtail", "--csv", str(target)])
    capsys.readouterr()
    assert code == 0
    lines = target.read_text().strip().splitlines()
    assert lines[0] == "u,v,w"
    assert len(lines) > 1
