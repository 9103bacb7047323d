"""Decide whether nonlocal games have perfect commuting-operator strategies."""

from os import PathLike, fspath

from ._ncgame import ParseError, UsageError, decide_text, run

__all__ = ["ParseError", "UsageError", "decide", "decide_text", "run", "verify"]


def decide(path: str | PathLike, dialect: str | None = None, cap: int = 6) -> dict:
    """Decide the game stored at `path`."""
    with open(fspath(path), encoding="utf-8") as f:
        return decide_text(f.read(), dialect, cap)


def verify(artifact: str | PathLike, game: str | PathLike | None = None) -> tuple[int, str, str]:
    """Re-check an artifact file, optionally against the game it claims to be about."""
    args = ["verify", fspath(artifact)]
    if game is not None:
        args += ["--game", fspath(game)]
    return run(args)
