import json

import pytest

from cli_interface import build_parser, main


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_field_info(capsys):
    code, out = _run(capsys, "field", "info", "--n", "3")
    assert code == 0
    assert json.loads(out.out) == {"n": 3, "q": 27, "modulus": [1, 0, 2, 1], "alphaOrder": 26}


def test_rejected_input_exits_two(capsys):
    code, out = _run(capsys, "field", "info", "--n", "3", "--poly", "0,0,0,1")
    assert code == 2
    assert "[ERROR]" in out.err
    assert _run(capsys, "verify", "lin", "--n", "4")[0] == 2


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nothing"])
    assert exc.value.code == 2


def test_global_flags_before_or_after_subcommand():
    parser = build_parser()
    before = parser.parse_args(["--json", "--jobs", "3", "verify", "lin", "--n", "3"])
    after = parser.parse_args(["verify", "lin", "--n", "3", "--json", "--jobs", "3"])
    assert before.json and after.json
    assert before.jobs == after.jobs == 3
    assert parser.parse_args(["verify", "lin", "--n", "3"]).json is False


def test_verify_lin_json(capsys):
    code, out = _run(capsys, "verify", "lin", "--n", "3", "--json")
    assert code == 0
    report = json.loads(out.out)
    assert report["pass"] is True
    assert report["command"] == "verify lin"
    assert "elapsedMs" not in report


def test_verify_hamming_timing(capsys):
    code, out = _run(capsys, "verify", "hamming", "--n", "5", "--json", "--timing")
    assert code == 0
    assert "elapsedMs" in json.loads(out.out)


def test_seq_gen_and_autocorr(capsys, tmp_path):
    path = tmp_path / "lin3.json"
    code, _ = _run(capsys, "seq", "gen", "--family", "lin", "--n", "3", "--out", str(path))
    assert code == 0 and path.exists()

    code, out = _run(capsys, "seq", "autocorr", str(path), "--json")
    assert code == 0
    payload = json.loads(out.out)
    assert payload["twoLevel"] is True
    assert len(payload["rows"]) == 26

    code, out = _run(capsys, "seq", "autocorr", str(path), "--csv")
    assert code == 0
    assert len(out.out.strip().splitlines()) == 27


def test_seq_gen_dht_defaults_to_lin_pair(capsys, tmp_path):
    path = tmp_path / "dht3.json"
    code, out = _run(capsys, "seq", "gen", "--family", "dht", "--n", "3", "--out", str(path), "--json")
    assert code == 0
    assert json.loads(out.out)["family"] == "dhtRealized"
    assert _run(capsys, "seq", "autocorr", str(path))[0] == 0


def test_seq_gen_unrealizable_pair_fails(capsys, tmp_path):
    code, _ = _run(capsys, "seq", "gen", "--family", "dht", "--n", "3", "--v", "2", "--t", "23",
                   "--out", str(tmp_path / "x.json"))
    assert code == 1


def test_dht_commands(capsys):
    code, out = _run(capsys, "dht", "spectrum", "--n", "3", "--v", "16", "--t", "7", "--gamma", "0", "--csv")
    assert code == 0
    lines = out.out.strip().splitlines()
    assert lines[0] == "lambda,a,b,k" and len(lines) == 28

    code, out = _run(capsys, "dht", "check-pair", "--n", "3", "--v", "16", "--t", "7", "--json")
    assert code == 0
    assert json.loads(out.out)["pass"] is True

    assert _run(capsys, "dht", "check-pair", "--n", "3", "--v", "2", "--t", "23")[0] == 1

    code, out = _run(capsys, "dht", "search", "--n", "3", "--v-from", "16", "--v-to", "16", "--json")
    assert code == 0
    assert any(c["t"] == 7 for c in json.loads(out.out)["confirmed"])


def test_gauss_check_command(capsys):
    code, out = _run(capsys, "gauss", "check", "--n", "3", "--tol", "1e-6", "--json")
    assert code == 0
    assert json.loads(out.out)["params"]["tol"] == 1e-6
