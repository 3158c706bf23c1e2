"""
Text formats: graph6, edge list, embedding, Hist certificate, DOT.

graph6 follows the nauty definition bit for bit: a size header (one byte
n+63, or '~' plus three 6-bit bytes for 63 <= n <= 258047) followed by the
upper triangle of the adjacency matrix in column-major order
(0,1),(0,2),(1,2),(0,3),... packed big-endian into 6-bit groups, each +63.
"""
from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Iterable, Optional

from core.errors import (
    GraphFormatError,
    InvalidByte,
    MalformedHeader,
    TruncatedPayload,
    UnsupportedSize,
)
from core.graph import EdgeSet, Graph
from core.types import EmbeddedGraph, RotationSystem

_log = logging.getLogger("histlab.formats")

GRAPH6_HEADER = ">>graph6<<"
GRAPH6_SHORT_MAX = 62
GRAPH6_LONG_MAX = 258047

_COMMENT = re.compile(r"#.*$")


# --- decoding ---

def decode_text(data: bytes, source: str = "input", encoding: str = "utf-8") -> str:
    """Decode file bytes; undecodable input is a format error, not a crash."""
    try:
        return data.decode(encoding)
    except UnicodeDecodeError as exc:
        raise InvalidByte(
            f"{source}: byte 0x{data[exc.start]:02x} at offset {exc.start} is not {encoding}",
            path=source, offset=exc.start,
        ) from None


# --- graph6 ---

def _check_byte(ch: str, position: int) -> int:
    value = ord(ch)
    if not 63 <= value <= 126:
        raise InvalidByte(f"byte {value!r} at position {position} outside 63..126", position=position)
    return value - 63


def parse_graph6(text: str) -> Graph:
    line = text.strip()
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
    if not line:
        raise MalformedHeader("empty graph6 line")

    first = ord(line[0])
    if not 63 <= first <= 126:
        raise MalformedHeader(f"header byte {first!r} outside 63..126")
    if line[0] != "~":
        n = first - 63
        pos = 1
    else:
        if len(line) >= 2 and line[1] == "~":
            raise UnsupportedSize("8-byte graph6 size header (n > 258047) is not supported")
        if len(line) < 4:
            raise TruncatedPayload("long-form size header needs three bytes after '~'")
        n = 0
        for i in range(1, 4):
            n = (n << 6) | _check_byte(line[i], i)
        pos = 4

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    payload = line[pos:]
    if len(payload) < nbytes:
        raise TruncatedPayload(f"need {nbytes} payload bytes for n={n}, got {len(payload)}", n=n)
    if len(payload) > nbytes:
        raise GraphFormatError(f"{len(payload) - nbytes} trailing bytes after graph6 payload", n=n)

    edges: list[tuple[int, int]] = []
    k = 0
    values = [_check_byte(ch, pos + i) for i, ch in enumerate(payload)]
    for j in range(1, n):
        for i in range(j):
            if values[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def write_graph6(graph: Graph) -> str:
    n = graph.n
    if n > GRAPH6_LONG_MAX:
        raise UnsupportedSize(f"n={n} exceeds {GRAPH6_LONG_MAX}", n=n)
    if n <= GRAPH6_SHORT_MAX:
        header = chr(n + 63)
    else:
        header = "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))

    nbits = n * (n - 1) // 2
    values = [0] * ((nbits + 5) // 6)
    for u, v in graph.edges:
        # u < v, so the pair sits in column v at row u
        k = v * (v - 1) // 2 + u
        values[k // 6] |= 1 << (5 - k % 6)
    return header + "".join(chr(value + 63) for value in values)


def read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    graphs = []
    for raw in lines:
        line = raw.strip()
        if line.startswith(GRAPH6_HEADER):
            line = line[len(GRAPH6_HEADER):]
        if not line:
            continue
        graphs.append(parse_graph6(line))
    return graphs


def read_graph6_file(path: Path) -> list[Graph]:
    """Multi-line .g6 reader; blank lines and the optional header are skipped."""
    data = Path(path).read_bytes()
    return read_graph6_lines(decode_text(data, str(path), "ascii").splitlines())


# --- edge list ---

def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT.sub("", raw).strip()
        if line:
            out.append((lineno, line))
    return out


def _parse_ints(line: str, count: int, lineno: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise GraphFormatError(f"line {lineno}: expected {count} integers, got {line!r}", line=lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphFormatError(f"line {lineno}: not an integer in {line!r}", line=lineno) from None


def _parse_edge_block(lines: list[tuple[int, str]]) -> tuple[int, list[tuple[int, int]], int]:
    """Returns n, edges in file order, and the number of lines consumed."""
    if not lines:
        raise GraphFormatError("empty edge list")
    lineno, header = lines[0]
    n, m = _parse_ints(header, 2, lineno)
    if len(lines) < 1 + m:
        raise TruncatedPayload(f"edge list announces {m} edges, found {len(lines) - 1}", m=m)
    edges = []
    for lineno, line in lines[1:1 + m]:
        u, v = _parse_ints(line, 2, lineno)
        edges.append((u, v))
    return n, edges, 1 + m


def parse_edge_list(text: str) -> Graph:
    lines = _content_lines(text)
    n, edges, used = _parse_edge_block(lines)
    if used != len(lines):
        raise GraphFormatError(f"unexpected content after {len(edges)} edges (line {lines[used][0]})")
    return Graph.from_edges(n, edges)


def write_edge_list(graph: Graph, comment: Optional[str] = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"{graph.n} {graph.m}")
    out.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(out) + "\n"


# --- embedding ---

def parse_embedded(text: str, provenance: Optional[dict] = None) -> EmbeddedGraph:
    """Edge-list block, a line "rotations", then one "v: e1 e2 ..." line per vertex.

    Rotation entries index the edge lines in file order; they are mapped to
    canonical edge indices here.
    """
    lines = _content_lines(text)
    n, edges, used = _parse_edge_block(lines)
    graph = Graph.from_edges(n, edges)
    file_to_canonical = [graph.edge_index(u, v) for u, v in edges]

    rest = lines[used:]
    if not rest or rest[0][1].lower() != "rotations":
        raise GraphFormatError("missing 'rotations' line after the edge list")
    rotations: list[Optional[tuple[int, ...]]] = [None] * n
    for lineno, line in rest[1:]:
        head, sep, tail = line.partition(":")
        if not sep:
            raise GraphFormatError(f"line {lineno}: expected 'v: e1 e2 ...'", line=lineno)
        try:
            v = int(head)
            local = [int(p) for p in tail.split()]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: not an integer in {line!r}", line=lineno) from None
        if not 0 <= v < n or rotations[v] is not None:
            raise GraphFormatError(f"line {lineno}: bad or repeated vertex {v}", line=lineno)
        if any(not 0 <= e < len(edges) for e in local):
            raise GraphFormatError(f"line {lineno}: edge index out of range", line=lineno)
        rotations[v] = tuple(file_to_canonical[e] for e in local)
    missing = [v for v, rot in enumerate(rotations) if rot is None]
    if missing:
        raise TruncatedPayload(f"no rotation for vertices {missing[:5]}", vertices=missing[:5])

    rotation = RotationSystem(tuple(rot for rot in rotations if rot is not None))
    return EmbeddedGraph(graph, rotation, dict(provenance or {}))


def write_embedded(embedded: EmbeddedGraph, comment: Optional[str] = None) -> str:
    out = [write_edge_list(embedded.graph, comment).rstrip("\n"), "rotations"]
    for v, rot in enumerate(embedded.rotation.rotations):
        out.append(f"{v}: " + " ".join(str(e) for e in rot))
    return "\n".join(out) + "\n"


# --- certificate ---

def write_certificate(graph: Graph, tree_edges: EdgeSet) -> str:
    out = [f"hist {graph.n}"]
    out.extend(f"{u} {v}" for u, v in tree_edges.pairs(graph))
    return "\n".join(out) + "\n"


def parse_certificate(text: str, graph: Graph) -> EdgeSet:
    """Read "hist n" plus tree edge lines; edges must exist in graph."""
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("empty certificate")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "hist":
        raise MalformedHeader(f"line {lineno}: expected 'hist n', got {header!r}")
    try:
        n = int(parts[1])
    except ValueError:
        raise MalformedHeader(f"line {lineno}: bad vertex count {parts[1]!r}") from None
    if n != graph.n:
        raise GraphFormatError(f"certificate is for n={n}, graph has n={graph.n}")
    pairs = [tuple(_parse_ints(line, 2, ln)) for ln, line in lines[1:]]
    return EdgeSet.from_pairs(graph, pairs)  # type: ignore[arg-type]


# --- DOT ---

def write_dot(graph: Graph, tree_edges: Optional[EdgeSet] = None, name: str = "G") -> str:
    """Undirected DOT; with a certificate, edges carry class=tree|cycle."""
    out = [f"graph {name} {{"]
    out.extend(f"  {v} [label=\"{v}\"];" for v in range(graph.n))
    for idx, (u, v) in enumerate(graph.edges):
        if tree_edges is None:
            out.append(f"  {u} -- {v};")
        elif idx in tree_edges:
            out.append(f"  {u} -- {v} [class=tree, penwidth=3, color=\"black\"];")
        else:
            out.append(f"  {u} -- {v} [class=cycle, style=dashed, color=\"red\"];")
    out.append("}")
    return "\n".join(out) + "\n"
