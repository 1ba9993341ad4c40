import json

import pytest

from nonlevel.cli import main
from nonlevel.utils.errors import InvariantError

EX_FLAT_RUN = "1,3,6,8,9,9,9,10"
EX_INCONCLUSIVE = "1,3,6,10,15,21,18,17,17"


def run(capsys, *argv):
    code = main(["--no-log-file", "--verbosity", "silent", *argv])
    captured = capsys.readouterr()
    return code, captured.out


def run_json(capsys, *argv):
    code, out = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_growth_text(capsys):
    code, out = run(capsys, "growth", "--value", "16", "--degree", "7")
    assert code == 0
    assert "16 = C(8,7) + C(7,6) + C(5,5)" in out
    assert "16^<7> = 18" in out


def test_growth_of_zero(capsys):
    code, out = run(capsys, "growth", "--value", "0", "--degree", "3")
    assert code == 0
    assert "0^<3> = 0" in out


def test_growth_json(capsys):
    code, document = run_json(capsys, "growth", "--value", "16", "--degree", "7")
    assert code == 0
    assert document["schema_version"] == 1
    assert document["command"] == "growth"
    (result,) = document["results"]
    assert result["growth"] == 18
    assert result["expansion"] == [
        {"top": 8, "bottom": 7},
        {"top": 7, "bottom": 6},
        {"top": 5, "bottom": 5},
    ]


@pytest.mark.parametrize("value, degree", [("-1", "3"), ("4", "0")])
def test_growth_out_of_domain(capsys, value, degree):
    code, _ = run(capsys, "growth", "--value", value, "--degree", degree)
    assert code == 2


def test_validate_reports_violation_degree(capsys):
    code, document = run_json(capsys, "validate", "--seq", "1,3,6,11")
    assert code == 0
    (result,) = document["results"]
    assert result["valid"] is False
    assert result["violation"] == 3
    assert result["bound"] == 10


def test_validate_rejects_malformed_sequence(capsys):
    assert run(capsys, "validate", "--seq", "2,3")[0] == 2
    assert run(capsys, "validate", "--seq", "1,,3")[0] == 2


def test_sequence_and_corpus_are_exclusive(capsys):
    assert run(capsys, "validate")[0] == 2
    assert run(capsys, "validate", "--seq", "1,3", "--corpus", "@examples")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "betti", "--seq", "1,3,2,2", "--method", "magic")[0] == 2


def test_lex_ideal_generators(capsys):
    code, document = run_json(capsys, "lex-ideal", "--seq", "1,3,2,2", "--gens-only")
    assert code == 0
    (result,) = document["results"]
    assert result["variables"] == 3
    assert result["generators"][0] == {
        "degree": 2,
        "monomials": ["x1^2", "x1*x2", "x1*x3", "x2^2"],
    }


def test_betti_ek(capsys):
    code, document = run_json(capsys, "betti", "--seq", EX_INCONCLUSIVE)
    assert code == 0
    table = document["results"][0]["table"]
    assert {"q": 1, "shift": 9, "mult": 4} in table
    assert {"q": 2, "shift": 9, "mult": 3} in table


@pytest.mark.parametrize("seq", ["1,3,2,2", "1,3,5,6,6,7"])
def test_betti_ek_and_oracle_agree(capsys, seq):
    ek = run(capsys, "betti", "--seq", seq, "--method", "ek")
    oracle = run(capsys, "betti", "--seq", seq, "--method", "oracle")
    assert ek == oracle
    ek = run(capsys, "--json", "betti", "--seq", seq, "--method", "ek")
    oracle = run(capsys, "--json", "betti", "--seq", seq, "--method", "oracle", "--cross-check")
    assert ek == oracle


def test_betti_closed(capsys):
    code, document = run_json(capsys, "betti", "--seq", EX_INCONCLUSIVE, "--method", "closed")
    assert code == 0
    (result,) = document["results"]
    assert (result["d"], result["i"], result["j"]) == (7, 10, 1)
    assert result["table"] == [
        {"q": 1, "shift": 9, "mult": 4},
        {"q": 2, "shift": 9, "mult": 3},
    ]
    assert result["diagnostics"] == []


def test_betti_closed_needs_a_plateau(capsys):
    assert run(capsys, "betti", "--seq", "1,3,3,1", "--method", "closed")[0] == 2


def test_level_check_not_level(capsys):
    code, out = run(capsys, "level-check", "--seq", EX_FLAT_RUN)
    assert code == 10
    assert f"{EX_FLAT_RUN}: NotLevel via flat-run-jump, socle degrees [5]" in out


def test_level_check_unknown(capsys):
    code, document = run_json(capsys, "level-check", "--seq", "1,3,3,1")
    assert code == 0
    (result,) = document["results"]
    assert result["verdict"] == "Unknown"
    assert len(result["diagnostics"]) == 6


def test_level_check_invalid_sequence(capsys):
    assert run(capsys, "level-check", "--seq", "1,3,6,11")[0] == 2


def test_level_check_packaged_corpus(capsys):
    code, document = run_json(capsys, "level-check", "--corpus", "@examples")
    assert code == 10
    assert len(document["results"]) == 10
    verdicts = {",".join(map(str, r["sequence"])): r["verdict"] for r in document["results"]}
    assert verdicts[EX_FLAT_RUN] == "NotLevel"
    assert verdicts[EX_INCONCLUSIVE] == "Unknown"


def test_level_check_corpus_file(capsys, tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("# two sequences\n1,3,3,1\n\n1,3,2,2  # low plateau\n", encoding="utf-8")
    code, document = run_json(capsys, "level-check", "--corpus", str(corpus))
    assert code == 10
    assert [r["verdict"] for r in document["results"]] == ["Unknown", "NotLevel"]


def test_corpus_errors(capsys, tmp_path):
    assert run(capsys, "level-check", "--corpus", str(tmp_path / "missing.txt"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("1,3,2,2\n1,x\n", encoding="utf-8")
    assert run(capsys, "level-check", "--corpus", str(bad))[0] == 2


def test_typevector_inspection(capsys):
    code, document = run_json(capsys, "typevector", "--tv", "(2,5)", "--to-hf", "--shifts")
    assert code == 0
    (result,) = document["results"]
    assert result["typevector"] == "(2,5)"
    assert result["level"] == 2
    assert result["hf"] == [1, 2, 2, 1, 1]
    assert result["shifts"]["socle_degrees"] == [2]


def test_typevector_extraction(capsys):
    code, document = run_json(capsys, "typevector", "--seq", EX_FLAT_RUN, "--shifts")
    assert code == 0
    (result,) = document["results"]
    assert result["decomposable"] is True
    assert result["typevector"] == "((2),(1,3,6,7),(1,2,3,4,5,6,7,8))"
    assert result["shifts"]["socle_degrees"] == [5]


def test_typevector_rejects_invalid_input(capsys):
    assert run(capsys, "typevector", "--seq", "1,3,6,11")[0] == 2
    assert run(capsys, "typevector", "--seq", "1,2,2,2,2,3")[0] == 2
    assert run(capsys, "typevector", "--tv", "(3,2)")[0] == 2
    assert run(capsys, "typevector", "--tv", "(2,5)", "--seq", "1,2")[0] == 2


def test_socle(capsys):
    code, out = run(capsys, "socle", "--seq", "1,3,2,2")
    assert code == 0
    assert "  socle degree 1: x1" in out
    assert "  socle degree 3: x2*x3^2, x3^3" in out


def test_enumerate_is_independent_of_jobs(capsys):
    box = ["enumerate", "--codim", "3", "--max-socle-degree", "3", "--max-value", "5"]
    code, serial = run_json(capsys, *box, "--jobs", "1")
    assert code == 0
    code, parallel = run_json(capsys, *box, "--jobs", "2")
    assert code == 0
    assert serial == parallel
    census = serial["census"]
    assert census["total"] == len(serial["results"])
    assert census["not_level"] + census["unknown"] == census["total"]
    assert sum(census["criteria"].values()) == census["not_level"]


def test_enumerate_rejects_zero_jobs(capsys):
    box = ["enumerate", "--codim", "3", "--max-socle-degree", "2", "--max-value", "4"]
    assert run(capsys, *box, "--jobs", "0")[0] == 2


def test_config_file(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("NONLEVEL_SCHEMA", "1")
    config = tmp_path / "config.yaml"
    config.write_text("oracle:\n  prime: 101\noutput:\n  schema_version: ${NONLEVEL_SCHEMA}\n", encoding="utf-8")
    code, document = run_json(capsys, "--config", str(config), "betti", "--seq", "1,3,2,2", "--method", "oracle")
    assert code == 0
    assert document["schema_version"] == 1
    assert {"q": 2, "shift": 6, "mult": 2} in document["results"][0]["table"]


def test_missing_config_file(capsys, tmp_path):
    assert run(capsys, "--config", str(tmp_path / "none.yaml"), "validate", "--seq", "1,3")[0] == 2


def test_log_file(capsys, tmp_path):
    log_file = tmp_path / "run.log"
    code = main(["--verbosity", "silent", "--log-file-path", str(log_file), "validate", "--seq", "1,3,3"])
    capsys.readouterr()
    assert code == 0
    assert "Executing ValidateCommand" in log_file.read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "error", [InvariantError("lex slice lost a monomial"), RuntimeError("worker died")]
)
def test_internal_failures_exit_3(capsys, monkeypatch, error):
    def broken(H):
        raise error

    monkeypatch.setattr("nonlevel.commands.level_check.level_check", broken)
    assert run(capsys, "level-check", "--seq", EX_FLAT_RUN)[0] == 3
