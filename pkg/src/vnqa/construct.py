"""Turn question keywords into graph entities, property names and
relationship labels.

Proper nouns become entities; type words ("tập đoàn", "vua", …)
immediately preceding an entity are dropped; remaining keyword runs are
resolved against a role dictionary (longest compound first) and finally
by a KB-aware binary logistic-regression classifier.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from enum import Enum

from .classifier import FeatureVector, MaxentModel, TrainConfig
from .classifier import train as _train_maxent
from .errors import ConfigError, NoEntityError
from .graph import PropertyGraph
from .nlp import Tag, TaggedToken


class Role(str, Enum):
    PROPERTY = "P"
    RELATIONSHIP = "R"


@dataclass(frozen=True)
class EntityMention:
    surface: str
    key: str


@dataclass(frozen=True)
class SchemaTerm:
    surface: str
    role: Role
    graph_name: str
    confidence: float


@dataclass
class ConstructionResult:
    entities: list[EntityMention] = field(default_factory=list)
    properties: list[SchemaTerm] = field(default_factory=list)
    relationships: list[SchemaTerm] = field(default_factory=list)
    dropped: list[str] = field(default_factory=list)  # type words, for the trace


# generic class nouns that qualify a following proper noun and carry no
# schema content of their own
TYPE_WORDS = frozenset(
    ["tập_đoàn", "vua", "thủ_tướng", "tổng_thống", "thành_phố", "tp.", "công_ty", "tỉnh"]
)


def to_graph_name(surface: str) -> str:
    """Underscore-joined surface → camelCase graph name, diacritics kept.

    ``thành_viên_chủ_chốt`` → ``thànhViênChủChốt``; idempotent on output.
    """
    surface = unicodedata.normalize("NFC", surface)
    syllables = [s for s in surface.replace("_", " ").split() if s]
    if not syllables:
        return ""
    head = syllables[0]
    if len(syllables) == 1:
        return head
    parts = [head[:1].lower() + head[1:]]
    for syllable in syllables[1:]:
        parts.append(syllable[:1].upper() + syllable[1:])
    return "".join(parts)


class RoleDictionary:
    """Surface → (role, graph-name override); entries beat the classifier."""

    def __init__(self):
        self.entries: dict[str, tuple[Role, str]] = {}

    def add(self, surface: str, role: Role, graph_name: str | None = None) -> None:
        surface = unicodedata.normalize("NFC", surface).casefold()
        self.entries[surface] = (role, graph_name or to_graph_name(surface))

    def lookup(self, surface: str) -> tuple[Role, str] | None:
        return self.entries.get(unicodedata.normalize("NFC", surface).casefold())

    def __contains__(self, surface: str) -> bool:
        return self.lookup(surface) is not None

    @classmethod
    def load(cls, path) -> "RoleDictionary":
        """Load ``surface<TAB>P|R<TAB>graphName`` lines."""
        dictionary = cls()
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise ConfigError(f"{path}:{lineno}: expected 3 tab-separated fields")
                surface, role, graph_name = parts
                try:
                    dictionary.add(surface, Role(role), graph_name or None)
                except ValueError as exc:
                    raise ConfigError(f"{path}:{lineno}: {exc}") from exc
        return dictionary


def role_features(surface: str, graph: PropertyGraph | None) -> FeatureVector:
    """Features for the property-vs-relationship decision: word identity,
    syllable count, and whether the graph already knows the name."""
    name = to_graph_name(surface)
    features: FeatureVector = {
        f"word={surface.casefold()}": 1.0,
        f"syllables={surface.count('_') + 1}": 1.0,
    }
    if graph is not None:
        if name in graph.property_names():
            features["kb_property"] = 1.0
        if name in graph.relationship_labels():
            features["kb_relationship"] = 1.0
    return features


class RoleClassifier:
    """Binary logistic regression over role features."""

    def __init__(self, model: MaxentModel):
        self.model = model

    def predict(self, features: FeatureVector) -> tuple[Role, float]:
        role, dist = self.model.predict(features)
        return role, dist[role]


def train_role_classifier(dataset, config: TrainConfig | None = None) -> RoleClassifier:
    """Same optimizer contract as the answer-type classifier; both roles
    must be present in the data."""
    present = {role for _, role in dataset}
    if len(present) < 2:
        raise ConfigError("role training data must contain both roles")
    model = _train_maxent(dataset, config, labels=[Role.PROPERTY, Role.RELATIONSHIP])
    return RoleClassifier(model)


def train_role_classifier_from_graph(
    graph: PropertyGraph, config: TrainConfig | None = None
) -> RoleClassifier:
    """Bootstrap role training data from the live KB's own schema names."""
    dataset = []
    for name in sorted(graph.property_names()):
        dataset.append((role_features(_surface_from_graph_name(name), graph), Role.PROPERTY))
    for label in sorted(graph.relationship_labels()):
        dataset.append((role_features(_surface_from_graph_name(label), graph), Role.RELATIONSHIP))
    return train_role_classifier(dataset, config)


def _surface_from_graph_name(name: str) -> str:
    """Inverse of to_graph_name, e.g. ``dânSố`` → ``dân_số``."""
    syllables: list[str] = []
    current = ""
    for ch in name:
        if ch.isupper() and current:
            syllables.append(current)
            current = ch.lower()
        else:
            current += ch
    if current:
        syllables.append(current)
    return "_".join(syllables)


def construct(
    keywords: list[TaggedToken],
    dictionary: RoleDictionary,
    classifier: RoleClassifier | None = None,
    graph: PropertyGraph | None = None,
) -> ConstructionResult:
    """Partition keywords into entities, properties and relationships.

    Every keyword lands in exactly one of the three lists or, for type
    words qualifying an entity, in ``dropped``. Raises NoEntityError when
    no proper noun is present.
    """
    result = ConstructionResult()
    is_entity = [tt.tag is Tag.Np for tt in keywords]
    consumed = [False] * len(keywords)

    for i, tt in enumerate(keywords):
        if is_entity[i]:
            key = unicodedata.normalize("NFC", tt.surface)
            result.entities.append(EntityMention(tt.surface, key))
            consumed[i] = True
        elif (
            i + 1 < len(keywords)
            and is_entity[i + 1]
            and tt.surface.casefold() in TYPE_WORDS
        ):
            result.dropped.append(tt.surface)
            consumed[i] = True

    if not result.entities:
        raise NoEntityError("no proper-noun entity among the keywords")

    i = 0
    while i < len(keywords):
        if consumed[i]:
            i += 1
            continue
        # longest dictionary compound over the contiguous unconsumed run
        run_end = i
        while run_end < len(keywords) and not consumed[run_end]:
            run_end += 1
        placed = False
        for j in range(run_end, i, -1):
            compound = "_".join(tt.surface for tt in keywords[i:j])
            hit = dictionary.lookup(compound)
            if hit is not None:
                role, graph_name = hit
                _place(result, SchemaTerm(compound, role, graph_name, 1.0))
                i = j
                placed = True
                break
        if placed:
            continue
        surface = keywords[i].surface
        if classifier is not None:
            role, confidence = classifier.predict(role_features(surface, graph))
        else:
            role, confidence = Role.PROPERTY, 0.5
        _place(result, SchemaTerm(surface, role, to_graph_name(surface), confidence))
        i += 1
    return result


def _place(result: ConstructionResult, term: SchemaTerm) -> None:
    if term.role is Role.PROPERTY:
        result.properties.append(term)
    else:
        result.relationships.append(term)
