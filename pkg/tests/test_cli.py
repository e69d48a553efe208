import json

import pytest

from cliquegames.circuit import parse_circuit, evaluate
from cliquegames.cli import main

P4 = "c path\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n"
C5 = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n"


@pytest.fixture
def p4_file(tmp_path):
    path = tmp_path / "p4.col"
    path.write_text(P4)
    return str(path)


@pytest.fixture
def c5_file(tmp_path):
    path = tmp_path / "c5.col"
    path.write_text(C5)
    return str(path)


class TestOracleCommand:
    def test_text_golden(self, p4_file, capsys):
        assert main(["oracle", p4_file, "--output", "text"]) == 0
        assert capsys.readouterr().out == "omega=2 omega_b=3 mc=3 edge_biclique=2\n"

    def test_json(self, c5_file, capsys):
        assert main(["oracle", c5_file]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj == {"omega": 2, "omega_b": 3, "mc": 5, "edge_biclique": 2}


class TestPlayCommand:
    def test_json_output(self, p4_file, capsys):
        assert main(["play", p4_file, "--game", "biclique", "--a", "1,2", "--b", "3,4"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["game"] == "biclique"
        assert obj["a"] == [1, 2] and obj["b"] == [3, 4]
        assert sorted(obj["nonedge"]) == obj["nonedge"]
        assert obj["promise_verified"] is True

    def test_byte_identical_runs(self, p4_file, capsys):
        main(["play", p4_file, "--game", "biclique", "--a", "1,2", "--b", "3,4"])
        first = capsys.readouterr().out
        main(["play", p4_file, "--game", "biclique", "--a", "1,2", "--b", "3,4"])
        assert capsys.readouterr().out == first

    def test_clique_game_text(self, c5_file, capsys):
        assert (
            main(["play", c5_file, "--game", "clique", "--a", "1,3", "--b", "5",
                  "--output", "text"])
            == 0
        )
        out = capsys.readouterr().out
        assert "kind_of_answer=within_a" in out

    def test_promise_violation_exit(self, p4_file, capsys):
        assert main(["play", p4_file, "--game", "biclique", "--a", "1", "--b", "4"]) == 1
        assert "rejected input" in capsys.readouterr().err

    def test_star_stripped_vertex_named(self, tmp_path, capsys):
        path = tmp_path / "star.col"
        path.write_text("p edge 4 3\ne 1 2\ne 1 3\ne 1 4\n")
        code = main(["play", str(path), "--game", "biclique", "--a", "1", "--b", "2"])
        assert code == 1
        assert "removed by star stripping" in capsys.readouterr().err


class TestBuildCircuitCommand:
    def test_round_trip(self, p4_file, capsys):
        assert (
            main(["build-circuit", p4_file, "--game", "biclique", "--k", "2",
                  "--output", "text"])
            == 0
        )
        circ = parse_circuit(capsys.readouterr().out, var_count=3)
        # incidence vector of {0,1} accepted, complement of {2,3} rejected
        assert evaluate(circ, (1, 1, 1)) == 1
        assert evaluate(circ, (0, 0, 0)) == 0

    def test_json_metadata(self, p4_file, capsys):
        assert main(["build-circuit", p4_file, "--game", "biclique", "--k", "2"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["depth"] == 4 and obj["k"] == 2
        parse_circuit(obj["circuit"], var_count=3)


class TestStatsCommand:
    def test_p4(self, p4_file, capsys):
        assert main(["stats", p4_file, "--game", "biclique"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["max_bits"] == 7 and obj["bound"] == 7


class TestVerifyCommand:
    def test_suite_passes(self, capsys):
        assert main(["verify", "--suite", "induced-clique", "--n-max", "4"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["passed"] is True and obj["failures"] == []


class TestExitCodes:
    def test_usage_error_is_2(self):
        with pytest.raises(SystemExit) as err:
            main(["play", "nofile", "--game", "nonsense", "--a", "1", "--b", "2"])
        assert err.value.code == 2

    def test_parse_error_is_3(self, tmp_path, capsys):
        bad = tmp_path / "bad.col"
        bad.write_text("p edge 2 1\ne 1 5\n")
        assert main(["oracle", str(bad)]) == 3
        assert "out of range" in capsys.readouterr().err

    def test_missing_file_is_3(self, capsys):
        assert main(["oracle", "/does/not/exist.col"]) == 3

    def test_oracle_limit_is_4(self, tmp_path, capsys):
        lines = ["p edge 18 17"] + [f"e {i} {i + 1}" for i in range(1, 18)]
        big = tmp_path / "big.col"
        big.write_text("\n".join(lines) + "\n")
        assert main(["oracle", str(big)]) == 4
        assert "oracle limit" in capsys.readouterr().err

    def test_env_override(self, p4_file, capsys, monkeypatch):
        monkeypatch.setenv("CLIQUEGAMES_OUTPUT", "text")
        assert main(["oracle", p4_file]) == 0
        assert capsys.readouterr().out.startswith("omega=")
