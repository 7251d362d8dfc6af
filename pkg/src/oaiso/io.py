"""Design files and counting-vector JSON.

Text layout: an optional header line ``N d``, then one run per line as d
space-separated 0/1 tokens. Lines starting with ``#`` and blank lines are
skipped. A ``.json`` file holds a counting vector ``{"d": ..., "counts": [...]}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from .design import CountingVector, Design, counting_vector

__all__ = ["DesignFormatError", "parse_design", "read_design", "write_design", "format_design", "read_designs"]


class DesignFormatError(ValueError):
    def __init__(self, message: str, lineno: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)
        self.lineno = lineno
        self.source = source


def _header(tokens: list[str], body: list[tuple[int, list[str]]]) -> tuple[int, int] | None:
    if len(tokens) != 2:
        return None
    try:
        n, d = int(tokens[0]), int(tokens[1])
    except ValueError:
        return None
    if not set(tokens) <= {"0", "1"}:
        return n, d
    # tokens look like a data row too; only a consistent header wins
    if n == len(body) and all(len(t) == d for _, t in body):
        return n, d
    return None


def parse_design(text: str, source: str | None = None) -> Design:
    lines = [
        (i, line.split())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise DesignFormatError("no runs found", source=source)
    header = _header(lines[0][1], lines[1:])
    body = lines[1:] if header else lines
    if not body:
        raise DesignFormatError("no runs found", source=source)
    d = header[1] if header else len(body[0][1])
    if d < 1:
        raise DesignFormatError(f"invalid factor count {d}", lines[0][0], source)
    runs = []
    for lineno, tokens in body:
        if len(tokens) != d:
            raise DesignFormatError(f"expected {d} tokens, found {len(tokens)}", lineno, source)
        bad = [tok for tok in tokens if tok not in ("0", "1")]
        if bad:
            raise DesignFormatError(f"levels must be 0 or 1, found {bad[0]!r}", lineno, source)
        runs.append(tuple(int(tok) for tok in tokens))
    if header and header[0] != len(runs):
        raise DesignFormatError(f"header declares N={header[0]} but {len(runs)} runs follow", lines[0][0], source)
    return Design(d, tuple(runs))


def read_design(path: str | Path) -> Design:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        try:
            return CountingVector.from_json(json.loads(text)).to_design()
        except (ValueError, KeyError, TypeError) as exc:
            raise DesignFormatError(f"bad counting vector JSON: {exc}", source=str(path)) from exc
    return parse_design(text, source=str(path))


def format_design(f: Design | CountingVector, comment: str | None = None) -> str:
    if isinstance(f, CountingVector):
        f = f.to_design()
    lines = [f"# {comment}"] if comment else []
    lines.append(f"{f.N} {f.d}")
    lines.extend(" ".join(str(x) for x in run) for run in f.runs)
    return "\n".join(lines) + "\n"


def write_design(path: str | Path, f: Design | CountingVector, comment: str | None = None) -> None:
    Path(path).write_text(format_design(f, comment))


def read_designs(paths: Iterable[str | Path]) -> list[tuple[str, Design]]:
    """Read designs from files and directories (directory entries in name order)."""
    out = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            files = sorted(q for q in p.iterdir() if q.is_file() and q.suffix in (".txt", ".json", ".oa", ""))
            out.extend((q.stem, read_design(q)) for q in files)
        else:
            out.append((p.stem, read_design(p)))
    return out


def counts_json(f: Design) -> dict:
    return counting_vector(f).to_json()
