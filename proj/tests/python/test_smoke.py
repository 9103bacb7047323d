from pathlib import Path

import pytest

import ncgame

GAMES = Path(__file__).resolve().parents[2] / "games"


def test_chsh_has_no_perfect_strategy():
    v = ncgame.decide(GAMES / "chsh.game")
    assert v["outcome"] == "NoPerfect"
    assert v["exit_code"] == 1


def test_ghz_witness_is_eight_dimensional():
    v = ncgame.decide(GAMES / "ghz.game")
    assert v["outcome"] == "Perfect"
    assert v["dimension"] == 8


def test_decide_text_and_dialect_override():
    text = (GAMES / "chsh.game").read_text()
    assert ncgame.decide_text(text, "projector")["outcome"] == "NoPerfect"


def test_parse_error_carries_line():
    with pytest.raises(ncgame.ParseError, match="line 3"):
        ncgame.decide_text("shape 2 2 2\nxor\nclause 0:0 1:7 = 0\n")


def test_cli_round_trip(tmp_path):
    code, out, _ = ncgame.run(["decide", str(GAMES / "ghz.game"), "--out", str(tmp_path / "ghz")])
    assert code == 0
    assert "Perfect" in out
    code, _, _ = ncgame.verify(tmp_path / "ghz.strategy", GAMES / "ghz.game")
    assert code == 0
    code, _, _ = ncgame.verify(tmp_path / "ghz.strategy", GAMES / "chsh.game")
    assert code == 65
