"""Shared list of acceptance result lines, printed at the end of the run."""
LINES: list[str] = []


def record(number: int, title: str, ok: bool, detail: str = "") -> str:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}"
    if detail:
        line += f" | {detail}"
    LINES.append(line)
    print(line)
    return line
