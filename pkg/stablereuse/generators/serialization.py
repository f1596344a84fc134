"""Instance and matching files.

Instances are JSON documents::

    {
      "L": 2,
      "S": 2,
      "constraints": [[1, 2]],
      "utility": {"U": [[5, 0], [3, 0]]}
    }

with exactly one of ``ranking: {"RL": ..., "RS": ...}`` or
``utility: {"U": ...}``. Matrices are row-major with 1-based channel
columns; reals are written with 17 significant digits so they load back
bit-exactly. Matchings are ``{"assignment": [...]}`` plus free metadata.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

import numpy as np

from ..core.errors import InstanceParseError, InvalidArgumentError, ValidationError
from ..core.model import ConstraintGraph, Instance, Matching, RankingProfile, UtilityProfile

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _format_real(value: float) -> str:
    text = f"{float(value):.17g}"
    if text in ("inf", "-inf", "nan"):
        raise ValidationError(f"cannot serialise non-finite value {text}")
    return text


def _format_matrix(rows: Iterable[Iterable], formatter, indent: str) -> str:
    lines = ["[" + ", ".join(formatter(v) for v in row) + "]" for row in rows]
    if not lines:
        return "[]"
    inner = f",\n{indent}  ".join(lines)
    return f"[\n{indent}  {inner}\n{indent}]"


def instance_to_json(instance: Instance) -> str:
    """Render ``instance`` as the JSON instance document."""
    edges = ", ".join(json.dumps([a, b]) for a, b in instance.constraints.edges())
    parts = [
        f'  "L": {instance.num_cells}',
        f'  "S": {instance.num_channels}',
        f'  "constraints": [{edges}]',
    ]
    indent = "    "
    if instance.is_ranking:
        rl = _format_matrix(instance.profile.cell_ranks.tolist(), str, indent)
        rs = _format_matrix(instance.profile.channel_ranks.tolist(), str, indent)
        parts.append(f'  "ranking": {{\n{indent}"RL": {rl},\n{indent}"RS": {rs}\n  }}')
    else:
        u = _format_matrix(instance.profile.utilities.tolist(), _format_real, indent)
        parts.append(f'  "utility": {{\n{indent}"U": {u}\n  }}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    """The instance document as plain JSON-compatible data."""
    return json.loads(instance_to_json(instance))


def save_instance(instance: Instance, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(instance_to_json(instance), encoding="utf-8")
    logger.debug("Saved instance L=%d S=%d to %s", instance.num_cells, instance.num_channels, path)
    return path


def _parse_document(text: str, what: str) -> Dict[str, Any]:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceParseError(f"malformed {what} JSON: {e.msg}", line=e.lineno) from e
    if not isinstance(document, dict):
        raise InstanceParseError(f"{what} document must be a JSON object")
    return document


def _require(document: Dict[str, Any], key: str, prefix: str = "") -> Any:
    if key not in document:
        raise InstanceParseError("missing required field", field=prefix + key)
    return document[key]


def _integer(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceParseError(f"expected an integer, got {value!r}", field=field)
    return value


def _matrix(value: Any, field: str, *, integer: bool) -> np.ndarray:
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise InstanceParseError("expected a list of rows", field=field)
    for row in value:
        for entry in row:
            if isinstance(entry, bool) or not isinstance(entry, (int, float)):
                raise InstanceParseError(f"non-numeric entry {entry!r}", field=field)
            if integer and not isinstance(entry, int):
                raise InstanceParseError(f"ranks must be integers, got {entry!r}", field=field)
    if len({len(row) for row in value}) > 1:
        raise InstanceParseError("rows have different lengths", field=field)
    return np.array(value, dtype=np.int64 if integer else np.float64)


def instance_from_dict(document: Dict[str, Any]) -> Instance:
    """Build an Instance from a parsed instance document.

    Raises:
        InstanceParseError: On missing or mistyped fields
        ValidationError: If the values violate an instance invariant
    """
    num_cells = _integer(_require(document, "L"), "L")
    num_channels = _integer(_require(document, "S"), "S")
    raw_edges = _require(document, "constraints")
    if not isinstance(raw_edges, list):
        raise InstanceParseError("expected a list of [from, to] pairs", field="constraints")
    edges: List[tuple] = []
    for index, edge in enumerate(raw_edges):
        field = f"constraints[{index}]"
        if not isinstance(edge, list) or len(edge) != 2:
            raise InstanceParseError("expected a [from, to] pair", field=field)
        edges.append((_integer(edge[0], field), _integer(edge[1], field)))

    has_ranking = "ranking" in document
    has_utility = "utility" in document
    if has_ranking == has_utility:
        raise InstanceParseError("exactly one of 'ranking' or 'utility' is required", field="ranking|utility")

    try:
        graph = ConstraintGraph.from_edges(max(num_cells, 0), edges)
        if has_ranking:
            section = document["ranking"]
            if not isinstance(section, dict):
                raise InstanceParseError("expected an object", field="ranking")
            profile = RankingProfile(
                _matrix(_require(section, "RL", "ranking."), "ranking.RL", integer=True),
                _matrix(_require(section, "RS", "ranking."), "ranking.RS", integer=True),
            )
        else:
            section = document["utility"]
            if not isinstance(section, dict):
                raise InstanceParseError("expected an object", field="utility")
            profile = UtilityProfile(_matrix(_require(section, "U", "utility."), "utility.U", integer=False))
        return Instance(num_cells, num_channels, graph, profile)
    except InvalidArgumentError as e:
        raise ValidationError(str(e)) from e


def load_instance(path: PathLike) -> Instance:
    """Read an instance file.

    Raises:
        FileNotFoundError: If ``path`` does not exist
        InstanceParseError: On malformed JSON or missing fields
        ValidationError: If the instance violates an invariant
    """
    path = Path(path)
    document = _parse_document(path.read_text(encoding="utf-8"), "instance")
    instance = instance_from_dict(document)
    logger.debug("Loaded instance L=%d S=%d from %s", instance.num_cells, instance.num_channels, path)
    return instance


def matching_to_dict(matching: Matching, **meta: Any) -> Dict[str, Any]:
    document = {"assignment": list(matching.assignment)}
    document.update(meta)
    return document


def save_matching(matching: Matching, path: PathLike, **meta: Any) -> Path:
    """Write ``{"assignment": [...], **meta}`` to ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(matching_to_dict(matching, **meta), indent=2) + "\n", encoding="utf-8")
    return path


def matching_from_dict(document: Dict[str, Any]) -> Matching:
    """Build a Matching from a parsed matching document.

    Raises:
        InstanceParseError: If ``assignment`` is missing or not a list
        ValidationError: If an entry is not an integer channel index
    """
    assignment = _require(document, "assignment")
    if not isinstance(assignment, list):
        raise InstanceParseError("expected a list of channel indices", field="assignment")
    for cell, channel in enumerate(assignment, start=1):
        if isinstance(channel, bool) or not isinstance(channel, int):
            raise ValidationError(f"matching is not total: cell {cell} has channel {channel!r}")
    return Matching(tuple(assignment))


def load_matching(path: PathLike) -> Matching:
    path = Path(path)
    return matching_from_dict(_parse_document(path.read_text(encoding="utf-8"), "matching"))
