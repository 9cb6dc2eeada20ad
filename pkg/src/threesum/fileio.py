"""Text file formats: integer sets, query batteries, answers.

Instance sets are one decimal integer per line, sorted and deduplicated.
A query file holds blocks separated by blank lines; each block has three
sections headed by the literal lines A', B', C', each followed by one
integer per line.  An answers file mirrors the block structure with one
"<target> <0|1> <count>" line per target.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import QueryAnswer
from .errors import ParseError

_HEADERS = ("A'", "B'", "C'")


@dataclass
class QueryBlock:
    a: list[int]
    b: list[int]
    c: list[int]  # order preserved; engines answer targets in this order

    def sections(self):
        return self.a, self.b, self.c


def write_integer_file(path, values) -> None:
    arr = np.unique(np.asarray(list(values), dtype=np.int64))
    Path(path).write_text("".join(f"{int(v)}\n" for v in arr))


def read_integer_file(path) -> np.ndarray:
    out = []
    with open(path, "r", encoding="ascii") as fh:
        for line_no, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            try:
                out.append(int(text))
            except ValueError:
                raise ParseError(path, line_no, f"expected an integer, got {text!r}") from None
    return np.asarray(sorted(set(out)), dtype=np.int64)


def write_query_file(path, blocks: list[QueryBlock]) -> None:
    parts = []
    for block in blocks:
        lines = []
        for header, values in zip(_HEADERS, block.sections()):
            lines.append(header)
            lines.extend(str(int(v)) for v in values)
        parts.append("\n".join(lines))
    Path(path).write_text("\n\n".join(parts) + "\n" if parts else "")


def read_query_file(path) -> list[QueryBlock]:
    blocks: list[QueryBlock] = []
    sections: list[list[int]] = []
    current: list[int] | None = None

    def close_block(line_no):
        nonlocal sections, current
        if current is None and not sections:
            return
        if len(sections) != 3:
            raise ParseError(path, line_no, f"query block has {len(sections)} of 3 sections")
        blocks.append(QueryBlock(*sections))
        sections = []
        current = None

    with open(path, "r", encoding="ascii") as fh:
        line_no = 0
        for line_no, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                close_block(line_no)
                continue
            if text in _HEADERS:
                expected = _HEADERS[len(sections)] if len(sections) < 3 else None
                if text != expected:
                    raise ParseError(path, line_no, f"expected section {expected!r}, got {text!r}")
                current = []
                sections.append(current)
                continue
            if current is None:
                raise ParseError(path, line_no, f"expected section header {_HEADERS[0]!r}, got {text!r}")
            try:
                current.append(int(text))
            except ValueError:
                raise ParseError(path, line_no, f"expected an integer, got {text!r}") from None
        close_block(line_no + 1)
    return blocks


def format_answer(answer: QueryAnswer) -> str:
    return "".join(f"{e.value} {1 if e.hit else 0} {e.count}\n" for e in answer)


def write_answers_file(path, answers: list[QueryAnswer]) -> None:
    Path(path).write_text("\n\n".join(format_answer(ans).rstrip("\n") for ans in answers) + "\n" if answers else "")


def read_answers_file(path) -> list[list[tuple[int, int, int]]]:
    groups: list[list[tuple[int, int, int]]] = [[]]
    with open(path, "r", encoding="ascii") as fh:
        for line_no, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                if groups[-1]:
                    groups.append([])
                continue
            parts = text.split()
            if len(parts) != 3:
                raise ParseError(path, line_no, f"expected '<target> <0|1> <count>', got {text!r}")
            try:
                groups[-1].append((int(parts[0]), int(parts[1]), int(parts[2])))
            except ValueError:
                raise ParseError(path, line_no, f"expected integers, got {text!r}") from None
    if groups and not groups[-1]:
        groups.pop()
    return groups
