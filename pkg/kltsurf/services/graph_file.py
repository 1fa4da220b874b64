"""
Graph file reader/writer.

Text form, one graph per file::

    # comments and blank lines are ignored
    weights: 3 2
    edge: 1 2
    curve: 1 0

A file whose first non-blank character is ``{`` is read as a JSON object with keys
``weights``, ``edges`` and optionally ``curve``.
"""

import json
import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import ValidationError

from kltsurf.core.errors import GraphFormatError
from kltsurf.schemas.graph import CurveAttachment, DualGraph, GraphDocument, GraphPayload

logger = logging.getLogger(__name__)

DIRECTIVES = ("weights", "edge", "curve")


def _integers(raw: str, key: str, *, path: Optional[str], line: int) -> List[int]:
    try:
        return [int(token) for token in raw.split()]
    except ValueError:
        raise GraphFormatError(
            f"expected integers after '{key}:', got '{raw.strip()}'", path=path, line=line
        ) from None


def parse_graph_text(text: str, path: Optional[str] = None) -> GraphDocument:
    """Parse either encoding. Raises GraphFormatError with a 1-based line number."""
    if text.lstrip().startswith("{"):
        return _parse_json(text, path)

    weights: Optional[Tuple[int, List[int]]] = None
    curve: Optional[Tuple[int, List[int]]] = None
    edges: List[Tuple[int, Tuple[int, int]]] = []

    for number, raw_line in enumerate(text.splitlines(), start=1):
        content = raw_line.split("#", 1)[0].strip()
        if not content:
            continue
        key, sep, rest = content.partition(":")
        key = key.strip().lower()
        if not sep or key not in DIRECTIVES:
            raise GraphFormatError(
                f"unrecognised line '{content}' (expected weights:, edge: or curve:)",
                path=path,
                line=number,
            )
        values = _integers(rest, key, path=path, line=number)

        if key == "weights":
            if weights is not None:
                raise GraphFormatError("duplicate 'weights:' line", path=path, line=number)
            if not values:
                raise GraphFormatError("'weights:' needs at least one value", path=path, line=number)
            if any(w < 1 for w in values):
                raise GraphFormatError("weights must be positive integers", path=path, line=number)
            weights = (number, values)
        elif key == "edge":
            if len(values) != 2:
                raise GraphFormatError(
                    f"'edge:' takes two vertices, got {len(values)}", path=path, line=number
                )
            edges.append((number, (values[0], values[1])))
        else:
            if curve is not None:
                raise GraphFormatError("duplicate 'curve:' line", path=path, line=number)
            if any(c < 0 for c in values):
                raise GraphFormatError(
                    "curve intersection numbers must be non-negative", path=path, line=number
                )
            curve = (number, values)

    if weights is None:
        raise GraphFormatError("missing 'weights:' line", path=path, line=1)
    n = len(weights[1])

    for number, (a, b) in edges:
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", path=path, line=number)
        for v in (a, b):
            if not 1 <= v <= n:
                raise GraphFormatError(f"vertex {v} is outside 1..{n}", path=path, line=number)

    attachment = None
    if curve is not None:
        number, values = curve
        if len(values) != n:
            raise GraphFormatError(
                f"'curve:' has {len(values)} entries for {n} vertices", path=path, line=number
            )
        attachment = CurveAttachment(c=tuple(values))

    graph = DualGraph(weights=tuple(weights[1]), edges=tuple(edge for _, edge in edges))
    return GraphDocument(graph=graph, curve=attachment, source=path)


def _parse_json(text: str, path: Optional[str]) -> GraphDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"invalid JSON: {e.msg}", path=path, line=e.lineno) from None
    try:
        payload = GraphPayload.model_validate(data)
        graph = payload.graph()
        curve = payload.attachment()
    except ValidationError as e:
        first = e.errors()[0]
        loc = first.get("loc", ())
        where = ".".join(str(p) for p in loc) or "object"
        line = _key_line(text, str(loc[0])) if loc else 1
        raise GraphFormatError(f"{where}: {first['msg']}", path=path, line=line) from None
    if curve is not None and len(curve.c) != graph.n:
        raise GraphFormatError(
            f"curve has {len(curve.c)} entries for {graph.n} vertices",
            path=path,
            line=_key_line(text, "curve"),
        )
    return GraphDocument(graph=graph, curve=curve, source=path)


def load_graph(path: Union[str, Path]) -> GraphDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise GraphFormatError(f"cannot read file: {e.strerror}", path=str(path)) from None
    document = parse_graph_text(text, str(path))
    logger.debug("Loaded %s from %s", document.graph.label(), path)
    return document


def dump_graph(
    graph: DualGraph, curve: Optional[CurveAttachment] = None, comment: Optional[str] = None
) -> str:
    lines = []
    if comment:
        lines.extend(f"# {row}" for row in comment.splitlines())
    lines.append("weights: " + " ".join(str(w) for w in graph.weights))
    lines.extend(f"edge: {a} {b}" for a, b in graph.edges)
    if curve is not None:
        lines.append("curve: " + " ".join(str(c) for c in curve.c))
    return "\n".join(lines) + "\n"


def dump_graph_json(graph: DualGraph, curve: Optional[CurveAttachment] = None) -> str:
    payload = GraphPayload(
        weights=list(graph.weights),
        edges=[tuple(edge) for edge in graph.edges],
        curve=list(curve.c) if curve is not None else None,
    )
    return json.dumps(payload.model_dump(exclude_none=True)) + "\n"


def _key_line(text: str, key: str) -> int:
    """Line of the first occurrence of the JSON key, else 1."""
    needle = json.dumps(key)
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return 1
