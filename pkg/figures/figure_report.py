"""Verdict-line registry for the figure checks, printed by conftest."""

LINES = []


def record(status, name, detail=""):
    line = f"[{status}] {name}"
    if detail:
        line += f" -- {detail}"
    LINES.append(line)
