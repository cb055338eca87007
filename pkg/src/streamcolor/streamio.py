"""Text formats for update streams and colorings.

Stream file: a header line `n <N>`, an optional `delta <D>` line, then
one update per line, `+ <u> <v>` or `- <u> <v>`.  Blank lines and lines
starting with `#` are ignored.

Coloring file: one line `<vertex> <color>` per vertex, ascending, one
for every vertex 1..n.  Both writers emit LF endings so output bytes
are platform independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import StreamFormatError
from .graph import EdgeUpdate, PartialColoring


@dataclass(frozen=True)
class StreamFile:
    n: int
    delta: int | None
    updates: tuple[EdgeUpdate, ...]


def loads_stream(text: str) -> StreamFile:
    n: int | None = None
    delta: int | None = None
    updates: list[EdgeUpdate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "n":
                if n is not None or len(parts) != 2:
                    raise ValueError
                n = int(parts[1])
            elif parts[0] == "delta":
                if delta is not None or n is None or len(parts) != 2:
                    raise ValueError
                delta = int(parts[1])
            elif parts[0] in ("+", "-"):
                if n is None or len(parts) != 3:
                    raise ValueError
                sign = 1 if parts[0] == "+" else -1
                updates.append(EdgeUpdate(sign, int(parts[1]), int(parts[2])))
            else:
                raise ValueError
        except ValueError as exc:
            raise StreamFormatError(f"line {lineno}: cannot parse {raw!r}") from exc
    if n is None:
        raise StreamFormatError("missing `n <N>` header")
    if n < 0:
        raise StreamFormatError("n must be nonnegative")
    if delta is not None and delta < 0:
        raise StreamFormatError("delta must be nonnegative")
    return StreamFile(n, delta, tuple(updates))


def dumps_stream(n: int, updates, delta: int | None = None) -> str:
    lines = [f"n {n}"]
    if delta is not None:
        lines.append(f"delta {delta}")
    for sign, u, v in updates:
        lines.append(f"{'+' if sign == 1 else '-'} {u} {v}")
    return "\n".join(lines) + "\n"


def read_stream(path: str | Path) -> StreamFile:
    return loads_stream(Path(path).read_text())


def write_stream(path: str | Path, n: int, updates, delta: int | None = None) -> None:
    Path(path).write_text(dumps_stream(n, updates, delta), newline="\n")


def loads_coloring(text: str) -> PartialColoring:
    """Parse a coloring file; palette is the largest color present."""
    rows: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise StreamFormatError(f"line {lineno}: expected `<vertex> <color>`")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise StreamFormatError(f"line {lineno}: cannot parse {raw!r}") from exc
    if not rows:
        raise StreamFormatError("empty coloring file")
    n = len(rows)
    colors: list[int] = []
    for expected, (v, c) in enumerate(rows, start=1):
        if v != expected:
            raise StreamFormatError(
                f"vertex lines must be 1..{n} ascending; saw {v} at position {expected}"
            )
        if c < 1:
            raise StreamFormatError(f"vertex {v}: color {c} is not positive")
        colors.append(c)
    return PartialColoring(n, max(colors), colors)


def dumps_coloring(coloring: PartialColoring) -> str:
    coloring.require_total()
    cols = coloring.colors()
    return "\n".join(f"{v} {cols[v - 1]}" for v in range(1, coloring.n + 1)) + "\n"


def read_coloring(path: str | Path) -> PartialColoring:
    return loads_coloring(Path(path).read_text())


def write_coloring(path: str | Path, coloring: PartialColoring) -> None:
    Path(path).write_text(dumps_coloring(coloring), newline="\n")
