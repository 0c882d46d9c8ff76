"""graph6 and plain edge-list readers/writers.

graph6 layout: a size header ``N(n)`` followed by the upper triangle of the
adjacency matrix in column order ``x(0,1), x(0,2), x(1,2), x(0,3), ...``,
packed six bits per byte (big end first), zero padded, each byte offset by 63.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidEdge, MalformedEdgeList, MalformedGraph6, Unsupported
from .graph import Graph, graph_from_edges

GRAPH6_HEADER = b">>graph6<<"
MAX_GRAPH6_N = 258047


@dataclass(frozen=True)
class GraphDocument:
    source_format: str  # "graph6" | "edgelist"
    graph: Graph
    label: str | None = None

    def serialize(self) -> bytes:
        if self.source_format == "graph6":
            return serialize_graph6(self.graph)
        return serialize_edgelist(self.graph).encode()


def _encode_size(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= MAX_GRAPH6_N:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise Unsupported(f"graph6 with n={n} > {MAX_GRAPH6_N} is not supported")


def serialize_graph6(g: Graph) -> bytes:
    """Canonical graph6 bytes for ``g`` (no header, no newline)."""
    head = _encode_size(g.n)
    out = bytearray(head)
    adj = g.adj
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def parse_graph6(line: bytes | str) -> Graph:
    if isinstance(line, str):
        line = line.encode("ascii", errors="strict")
    data = line.rstrip(b"\r\n")
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if not data:
        raise MalformedGraph6("empty graph6 string")
    for b in data:
        if not 63 <= b <= 126:
            raise MalformedGraph6(f"byte {b} outside the printable range 63..126")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    else:
        if len(data) < 4:
            raise MalformedGraph6("truncated size header")
        if data[1] == 126:
            raise Unsupported("graph6 with n > 258047 is not supported")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        if n <= 62:
            raise MalformedGraph6("non-canonical long size header")
        pos = 4
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != nbytes:
        kind = "truncated" if len(body) < nbytes else "overlong"
        raise MalformedGraph6(f"{kind} body: expected {nbytes} bytes, got {len(body)}")
    rows = [0] * n
    k = 0
    i, j = 0, 1
    for byte in body:
        chunk = byte - 63
        for shift in range(5, -1, -1):
            if k == nbits:
                if chunk & ((1 << (shift + 1)) - 1):
                    raise MalformedGraph6("non-zero padding bits")
                break
            if chunk >> shift & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, rows)


def parse_edgelist(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``; ``#`` starts a comment."""
    lines = []
    for raw in text.splitlines():
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append(content)
    if not lines:
        raise MalformedEdgeList("missing 'n m' header")
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise MalformedEdgeList(f"bad header {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise MalformedEdgeList("negative counts in header")
    body = lines[1:]
    if len(body) != m:
        raise MalformedEdgeList(f"header announces {m} edges, found {len(body)}")
    edges = []
    seen = set()
    for line in body:
        parts = line.split()
        if len(parts) != 2:
            raise MalformedEdgeList(f"bad edge line {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedEdgeList(f"bad edge line {line!r}") from None
        key = (min(u, v), max(u, v))
        if key in seen:
            raise MalformedEdgeList(f"duplicate edge {key}")
        seen.add(key)
        edges.append((u, v))
    try:
        return graph_from_edges(n, edges)
    except InvalidEdge as exc:
        raise MalformedEdgeList(str(exc)) from exc


def serialize_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges()))
    return "\n".join(lines) + "\n"


def _looks_like_edgelist(text: str) -> bool:
    for raw in text.splitlines():
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        parts = content.split()
        return len(parts) == 2 and all(p.lstrip("-").isdigit() for p in parts)
    return False


def parse_documents(data: bytes | str, label: str | None = None) -> list[GraphDocument]:
    """Autodetect format; a graph6 payload may hold one graph per line."""
    text = data.decode() if isinstance(data, bytes) else data
    if _looks_like_edgelist(text):
        return [GraphDocument("edgelist", parse_edgelist(text), label)]
    docs = []
    for idx, line in enumerate(text.splitlines()):
        if line.strip():
            name = label if label is None else f"{label}#{idx}"
            docs.append(GraphDocument("graph6", parse_graph6(line.strip()), name))
    if not docs:
        raise MalformedGraph6("no graphs found")
    return docs


def read_graphs(path: str | Path) -> list[GraphDocument]:
    path = Path(path)
    docs = parse_documents(path.read_bytes(), label=path.stem)
    if len(docs) == 1:
        docs[0] = GraphDocument(docs[0].source_format, docs[0].graph, path.stem)
    return docs


def write_graphs(path: str | Path, graphs, fmt: str | None = None) -> None:
    """Write graphs; ``fmt`` defaults from the suffix (``.g6`` or anything else)."""
    path = Path(path)
    graphs = list(graphs)
    if fmt is None:
        fmt = "graph6" if path.suffix in (".g6", ".graph6") else "edgelist"
    if fmt == "graph6":
        path.write_bytes(b"".join(serialize_graph6(g) + b"\n" for g in graphs))
    else:
        if len(graphs) != 1:
            raise Unsupported("edge-list files hold exactly one graph")
        path.write_text(serialize_edgelist(graphs[0]))
