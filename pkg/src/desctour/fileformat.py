"""Plain-text instance and certificate files.

Instance file::

    # optional comment lines
    n m k
    u v        (m lines, arc u -> v, 0-based ids)

Certificate file: one ``u v`` line per deleted arc, sorted. Files are ASCII
with LF line endings and single spaces.
"""

from __future__ import annotations

from typing import Iterable

from .digraph import Arc, Digraph, Instance


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _int_fields(text: str, count: int, lineno: int) -> list[int]:
    parts = text.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} integers, got {len(parts)} fields", lineno)
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"non-integer field in {text.strip()!r}", lineno) from None
    return values


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, line


def parse_instance(text: str) -> Instance:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing 'n m k' header")
    head_no, head = lines[0]
    n, m, k = _int_fields(head, 3, head_no)
    if n < 0 or m < 0 or k < 0:
        raise ParseError("n, m and k must be nonnegative", head_no)
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else head_no
        raise ParseError(f"header announces {m} arcs but {len(body)} arc lines follow", last)
    arcs: set[Arc] = set()
    for lineno, line in body:
        u, v = _int_fields(line, 2, lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if (u, v) in arcs:
            raise ParseError(f"duplicate arc ({u}, {v})", lineno)
        arcs.add((u, v))
    return Instance(Digraph(n, arcs), k)


def format_instance(inst: Instance, comments: Iterable[str] = ()) -> str:
    g = inst.graph
    out = [f"# {c}" for c in comments]
    out.append(f"{g.n} {len(g.arcs)} {inst.budget}")
    out.extend(f"{u} {v}" for u, v in g.sorted_arcs())
    return "\n".join(out) + "\n"


def parse_certificate(text: str) -> list[Arc]:
    arcs = []
    seen = set()
    for lineno, line in _content_lines(text):
        u, v = _int_fields(line, 2, lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate arc ({u}, {v})", lineno)
        seen.add((u, v))
        arcs.append((u, v))
    return arcs


def format_certificate(arcs: Iterable[Arc]) -> str:
    return "".join(f"{u} {v}\n" for u, v in sorted(arcs))


def read_instance(path: str) -> Instance:
    with open(path, encoding="ascii", newline="") as fh:
        return parse_instance(fh.read())


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
