"""Text formats: graph6 (short form, n <= 62), edge-list, and DOT export."""

from __future__ import annotations

from .graph import Graph, GraphError, from_edges, subgraph_code


class FormatError(ValueError):
    """Malformed graph text."""


def encode_graph6(g: Graph) -> str:
    """Standard short-form graph6: size byte 63+n, then 6 adjacency bits per byte."""
    if g.n > 62:
        raise FormatError("graph6 short form supports at most 62 vertices")
    nbits = g.n * (g.n - 1) // 2
    code = subgraph_code(g, tuple(range(g.n)))
    out = [chr(63 + g.n)]
    for start in range(0, nbits, 6):
        group = 0
        for k in range(6):
            if start + k < nbits:
                group |= (code >> (start + k) & 1) << (5 - k)
        out.append(chr(63 + group))
    return "".join(out)


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if not s:
        raise FormatError("empty graph6 string")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    first = ord(s[0])
    if first == 126:
        raise FormatError("long-form graph6 headers (n > 62) are not supported")
    if not 63 <= first <= 125:
        raise FormatError(f"bad graph6 size byte {s[0]!r}")
    n = first - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = s[1:]
    if len(body) != nbytes:
        raise FormatError(
            f"graph6 body for n={n} needs {nbytes} bytes, got {len(body)}")
    bits = []
    for ch in body:
        v = ord(ch) - 63
        if not 0 <= v <= 63:
            raise FormatError(f"graph6 byte {ch!r} out of range")
        for k in range(5, -1, -1):
            bits.append(v >> k & 1)
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits in graph6 body")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return from_edges(n, edges)


def encode_edgelist(g: Graph) -> str:
    """Plain text: first line "n m", then one "u v" line per edge, 0-indexed."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def decode_edgelist(text: str) -> Graph:
    rows = [r for r in (line.strip() for line in text.splitlines())
            if r and not r.startswith("#")]
    if not rows:
        raise FormatError("empty edge-list text")
    head = rows[0].split()
    if len(head) != 2:
        raise FormatError(f"edge-list header must be 'n m', got {rows[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError(f"bad edge-list header {rows[0]!r}") from exc
    if len(rows) - 1 != m:
        raise FormatError(f"edge-list declares {m} edges, found {len(rows) - 1}")
    edges = []
    for row in rows[1:]:
        parts = row.split()
        if len(parts) != 2:
            raise FormatError(f"bad edge line {row!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise FormatError(f"bad edge line {row!r}") from exc
    try:
        return from_edges(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def encode_dot(g: Graph) -> str:
    lines = ["graph G {"]
    lines.extend(f"  {v};" for v in range(g.n))
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    """Parse one graph; edge-list is detected by its integer 'n m' header."""
    if fmt == "graph6":
        return decode_graph6(text)
    if fmt == "edgelist":
        return decode_edgelist(text)
    if fmt != "auto":
        raise FormatError(f"unknown format {fmt!r}")
    stripped = text.strip()
    head = stripped.splitlines()[0].split() if stripped else []
    if len(head) == 2 and all(p.isdigit() for p in head):
        return decode_edgelist(text)
    return decode_graph6(text)
