"""External formats: plain edge lists and certificate JSON.

Edge-list format: first line is the vertex count n; each later non-empty line
is "u v" with 0 <= u < v < n; '#' starts a comment.  Serialisation emits the
bit-exact normal form (edges sorted lexicographically), so
serialize(parse(serialize(x))) == serialize(x).

Certificate JSON: {"host": {"n":..,"edges":[[u,v],..]}, "pattern": {...},
"target_edges": [[u,v],..], "copies": [[image..],..]} with edges sorted and
copies sorted by image array.  A certificate that is not a valid partition
still parses; `verify_decomposition` is the judge of validity.
"""

from __future__ import annotations

import json

from .errors import ParseError
from .graphs import Decomposition, EmbeddedCopy, Graph


def parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise ParseError("expected vertex count", line=lineno)
            if n < 0:
                raise ParseError("vertex count must be nonnegative", line=lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'u v'", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", line=lineno)
        if u == v:
            raise ParseError(f"loop at {u} not allowed", line=lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u},{v}) out of range", line=lineno)
        if (min(u, v), max(u, v)) in set(edges):
            raise ParseError(f"duplicate edge ({u},{v})", line=lineno)
        edges.append((min(u, v), max(u, v)))
    if n is None:
        raise ParseError("empty input: missing vertex count", line=1)
    return Graph(n, edges)


def serialize_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def _graph_to_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}


def _graph_from_obj(obj, what: str) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed {what} object: {exc}")
    for u, v in edges:
        if u == v:
            raise ParseError(f"loop at {u} in {what}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u},{v}) out of range in {what}")
    return Graph(n, edges)


def serialize_certificate(dec: Decomposition) -> str:
    pattern = dec.pattern
    obj = {
        "host": _graph_to_obj(dec.host),
        "pattern": _graph_to_obj(pattern) if pattern else {"n": 0, "edges": []},
        "target_edges": [list(e) for e in sorted(dec.target_edges)],
        "copies": sorted([list(c.image) for c in dec.copies]),
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def parse_certificate(text: str) -> Decomposition:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", line=exc.lineno, offset=exc.colno)
    if not isinstance(obj, dict):
        raise ParseError("certificate must be a JSON object")
    host = _graph_from_obj(obj.get("host"), "host")
    pattern = _graph_from_obj(obj.get("pattern"), "pattern")
    try:
        target = [(int(u), int(v)) for u, v in obj.get("target_edges", [])]
        images = [tuple(int(x) for x in img) for img in obj.get("copies", [])]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed certificate arrays: {exc}")
    for u, v in target:
        if not (0 <= u < host.n and 0 <= v < host.n) or u == v:
            raise ParseError(f"target edge ({u},{v}) out of range")
    copies = []
    for img in images:
        if len(img) != pattern.n:
            raise ParseError("copy image length does not match pattern")
        if any(not (0 <= x < host.n) for x in img):
            raise ParseError("copy image vertex out of range")
        copies.append(EmbeddedCopy(pattern, host, img))
    return Decomposition(host, frozenset(target), copies)


def io_roundtrip(data: bytes | str, fmt: str):
    """Parse `data` per format; the parse/serialize pair is idempotent."""
    text = data.decode() if isinstance(data, bytes) else data
    if fmt == "edge_list":
        return parse_edge_list(text)
    if fmt == "certificate_json":
        return parse_certificate(text)
    raise ParseError(f"unknown format {fmt!r}")
