"""In-memory property graph with named key indexes and triple-dump ingestion.

Nodes carry a unique key plus arbitrary properties, relationships are
directed and labeled, and a named exact-match index maps keys to nodes.
The build phase is single-writer; once ingested the graph is treated as
immutable and can be read concurrently.
"""

from __future__ import annotations

import math
import re
import unicodedata
from dataclasses import dataclass, field

from .errors import DuplicateKeyError, UnknownNodeError

DEFAULT_INDEX = "DBPediaIndex"

# The literature around this dataset spells the default index both as
# "DBPediaIndex" and "DBPedia"; both resolve to the same index.
INDEX_ALIASES = {"DBPedia": DEFAULT_INDEX}

Value = str | int | float | bool | list


@dataclass
class Node:
    id: int
    key: str
    properties: dict[str, Value] = field(default_factory=dict)


@dataclass
class Relationship:
    id: int
    label: str
    start: int
    end: int
    properties: dict[str, Value] = field(default_factory=dict)


@dataclass
class IngestReport:
    nodes: int = 0
    relationships: int = 0
    properties: int = 0
    skipped: int = 0


@dataclass(frozen=True)
class GraphStats:
    nodes: int
    relationships: int
    properties: int


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _check_value(value: Value) -> Value:
    if isinstance(value, bool) or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite property value: {value!r}")
        return value
    if isinstance(value, list):
        if not value:
            raise ValueError("list property values must be non-empty")
        return [str(v) for v in value]
    raise ValueError(f"unsupported property value type: {type(value).__name__}")


# object forms in a triple line: quoted literal with optional ^^type or
# @lang suffix, else a bare entity token
_LITERAL_RE = re.compile(r'^"((?:[^"\\]|\\.)*)"(?:\^\^(\S+)|@(\w[\w-]*))?$')


def _unescape(text: str) -> str:
    return text.replace('\\"', '"').replace("\\\\", "\\")


class PropertyGraph:
    """Desk-scale property graph with a default key index."""

    def __init__(self, default_index: str = DEFAULT_INDEX, aliases: dict[str, str] | None = None):
        self.default_index = default_index
        self.nodes: list[Node] = []
        self.relationships: list[Relationship] = []
        self.indexes: dict[str, dict[str, set[int]]] = {default_index: {}}
        self.aliases = dict(INDEX_ALIASES) if aliases is None else dict(aliases)
        self._out: dict[int, list[int]] = {}
        self._in: dict[int, list[int]] = {}

    # -- construction -------------------------------------------------

    def create_node(self, key: str, properties: dict[str, Value] | None = None) -> int:
        key = _nfc(key)
        if not key:
            raise ValueError("node key must be non-empty")
        index = self.indexes[self.default_index]
        if key in index:
            raise DuplicateKeyError(f"key already indexed: {key}")
        node = Node(id=len(self.nodes), key=key, properties={})
        for name, value in (properties or {}).items():
            node.properties[_nfc(name)] = _check_value(value)
        self.nodes.append(node)
        index[key] = {node.id}
        self._out[node.id] = []
        self._in[node.id] = []
        return node.id

    def create_relationship(
        self, start: int, label: str, end: int, properties: dict[str, Value] | None = None
    ) -> int:
        if not label:
            raise ValueError("relationship label must be non-empty")
        for endpoint in (start, end):
            if not self.has_node(endpoint):
                raise UnknownNodeError(f"no such node: {endpoint}")
        rel = Relationship(
            id=len(self.relationships),
            label=_nfc(label),
            start=start,
            end=end,
            properties={_nfc(k): _check_value(v) for k, v in (properties or {}).items()},
        )
        self.relationships.append(rel)
        self._out[start].append(rel.id)
        self._in[end].append(rel.id)
        return rel.id

    # -- lookup --------------------------------------------------------

    def has_node(self, node_id: int) -> bool:
        return 0 <= node_id < len(self.nodes)

    def node(self, node_id: int) -> Node:
        if not self.has_node(node_id):
            raise UnknownNodeError(f"no such node: {node_id}")
        return self.nodes[node_id]

    def resolve_index(self, name: str) -> str:
        return self.aliases.get(name, name)

    def index_lookup(self, index: str, key: str) -> set[int]:
        entries = self.indexes.get(self.resolve_index(index))
        if entries is None:
            return set()
        return set(entries.get(_nfc(key), set()))

    def node_by_key(self, key: str) -> Node | None:
        ids = self.index_lookup(self.default_index, key)
        if len(ids) == 1:
            return self.nodes[next(iter(ids))]
        return None

    def neighbors(
        self, node_id: int, label: str | None = None, direction: str = "out"
    ) -> list[tuple[Relationship, int]]:
        """Relationships touching ``node_id``, with the far endpoint.

        Results are ordered by ascending relationship id; ``both`` never
        reports the same relationship twice (a self-loop appears once).
        """
        if not self.has_node(node_id):
            raise UnknownNodeError(f"no such node: {node_id}")
        if direction not in ("out", "in", "both"):
            raise ValueError(f"bad direction: {direction}")
        rel_ids: set[int] = set()
        if direction in ("out", "both"):
            rel_ids.update(self._out[node_id])
        if direction in ("in", "both"):
            rel_ids.update(self._in[node_id])
        result = []
        for rid in sorted(rel_ids):
            rel = self.relationships[rid]
            if label is not None and rel.label != label:
                continue
            other = rel.end if rel.start == node_id else rel.start
            result.append((rel, other))
        return result

    def stats(self) -> GraphStats:
        props = 0
        for node in self.nodes:
            for value in node.properties.values():
                props += len(value) if isinstance(value, list) else 1
        for rel in self.relationships:
            for value in rel.properties.values():
                props += len(value) if isinstance(value, list) else 1
        return GraphStats(len(self.nodes), len(self.relationships), props)

    def property_names(self) -> set[str]:
        names: set[str] = set()
        for node in self.nodes:
            names.update(node.properties)
        return names

    def relationship_labels(self) -> set[str]:
        return {rel.label for rel in self.relationships}

    # -- ingestion -----------------------------------------------------

    def _node_for_key(self, key: str, report: IngestReport) -> int:
        ids = self.index_lookup(self.default_index, key)
        if ids:
            return next(iter(ids))
        report.nodes += 1
        return self.create_node(key)

    def load_triples(self, path) -> IngestReport:
        """Ingest a tab-separated ``subject  predicate  object`` dump.

        Quoted objects (optionally ``^^int``/``^^float`` typed or
        ``@lang`` tagged) become node properties; bare tokens become
        relationships to auto-created nodes. Repeated literal lines for
        the same (subject, predicate) accumulate into a list of text.
        Malformed lines are counted in the report, comments (``#``) and
        blank lines are ignored outright.
        """
        report = IngestReport()
        with open(path, encoding="utf-8") as handle:
            for raw in handle:
                line = raw.rstrip("\n")
                if not line.strip() or line.lstrip().startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 3 or not all(p.strip() for p in parts):
                    report.skipped += 1
                    continue
                subject, predicate, obj = (_nfc(p.strip()) for p in parts)
                match = _LITERAL_RE.match(obj)
                if match is None:
                    if '"' in obj:
                        report.skipped += 1
                        continue
                    start = self._node_for_key(subject, report)
                    end = self._node_for_key(obj, report)
                    self.create_relationship(start, predicate, end)
                    report.relationships += 1
                    continue
                text, typename = _unescape(match.group(1)), match.group(2)
                try:
                    value = self._typed_literal(text, typename)
                except ValueError:
                    report.skipped += 1
                    continue
                node = self.nodes[self._node_for_key(subject, report)]
                existing = node.properties.get(predicate)
                if existing is None:
                    node.properties[predicate] = value
                elif isinstance(existing, list):
                    existing.append(str(value))
                else:
                    node.properties[predicate] = [str(existing), str(value)]
                report.properties += 1
        return report

    @staticmethod
    def _typed_literal(text: str, typename: str | None) -> Value:
        if typename == "int":
            return int(text)
        if typename == "float":
            value = float(text)
            if not math.isfinite(value):
                raise ValueError("non-finite literal")
            return value
        return text

    # -- snapshots -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "default_index": self.default_index,
            "aliases": self.aliases,
            "nodes": [
                {"id": n.id, "key": n.key, "properties": n.properties} for n in self.nodes
            ],
            "relationships": [
                {
                    "id": r.id,
                    "label": r.label,
                    "start": r.start,
                    "end": r.end,
                    "properties": r.properties,
                }
                for r in self.relationships
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PropertyGraph":
        graph = cls(
            default_index=data.get("default_index", DEFAULT_INDEX),
            aliases=data.get("aliases"),
        )
        for entry in data["nodes"]:
            node_id = graph.create_node(entry["key"], entry.get("properties") or {})
            assert node_id == entry["id"], "snapshot ids must be dense and ordered"
        for entry in data["relationships"]:
            graph.create_relationship(
                entry["start"], entry["label"], entry["end"], entry.get("properties") or {}
            )
        return graph
