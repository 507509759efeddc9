"""Select query templates by answer type and construction shape, and
enumerate candidate queries by leaf substitution.

Candidates are ranked; the engine tries them in order because a schema
term may be stored either as a node property or as a relationship in the
graph. Multi-entity templates emit one candidate group per entity so the
service can collect answers for every entity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classifier import AnswerType
from .construct import ConstructionResult, SchemaTerm
from .cypher.ast import (
    Comparison,
    Hop,
    PathPattern,
    PropertyAccess,
    QueryAst,
    ReturnItem,
    StartBinding,
)
from .cypher.render import render
from .engine import ResultTable
from .errors import NoTemplateError
from .graph import DEFAULT_INDEX

ABSTRACT_PROPERTY = "abstract"


@dataclass(frozen=True)
class CandidateQuery:
    ast: QueryAst
    text: str
    template: str
    substitutions: dict = field(hash=False)
    rank: int
    group: int = 0


@dataclass(frozen=True)
class QueryTemplate:
    id: str
    shape: str  # human-readable applicability condition
    question_form: str
    skeletons: tuple[str, ...]  # canonical text with $TYPED slots
    sort: None = None  # slots exist in the schema but no bundled template
    limit: None = None  # populates them


TEMPLATE_CATALOG = (
    QueryTemplate(
        "definition",
        "entities only",
        "E là [ai|gì|ở đâu]?",
        ('START n = node:IDX(key=$ENTITY_KEY) RETURN n.abstract',),
    ),
    QueryTemplate(
        "property",
        "one entity, properties",
        "p của E [là|bằng] bao nhiêu?",
        ('START n = node:IDX(key=$ENTITY_KEY) RETURN n.$PROPERTY_NAME…',),
    ),
    QueryTemplate(
        "relationship",
        "one entity, relationships",
        "r của E là gì?",
        (
            'START x = node:IDX(key=$ENTITY_KEY) RETURN DISTINCT x.$RELATIONSHIP_LABEL',
            'START x = node:IDX(key=$ENTITY_KEY) MATCH (x)-[:$RELATIONSHIP_LABEL]->(m) RETURN DISTINCT m',
        ),
    ),
    QueryTemplate(
        "chained",
        "one entity, properties and relationships",
        "p của r của E là gì?",
        (
            'START n = node:IDX(key=$ENTITY_KEY) MATCH (n)-[:$RELATIONSHIP_LABEL]->(m) RETURN DISTINCT m.$PROPERTY_NAME…',
            'START n = node:IDX(key=$ENTITY_KEY) RETURN DISTINCT n.$RELATIONSHIP_LABEL',
        ),
    ),
    QueryTemplate(
        "multi-shared",
        "several entities, relationships",
        "E1 và E2 có r là gì?",
        ("per entity: the relationship template",),
    ),
    QueryTemplate(
        "comparative",
        "several entities, properties",
        "p1 và p2 của E1 và E2 bằng bao nhiêu?",
        ("per entity: the property template",),
    ),
    QueryTemplate(
        "inverse",
        "ENTY answer type, relationships",
        "E là r của ai/nước nào?",
        (
            'MATCH (n)-[:$RELATIONSHIP_LABEL]->(m) WHERE m.key = $ENTITY_KEY RETURN n',
            'MATCH (n) WHERE n.$RELATIONSHIP_LABEL = $ENTITY_KEY RETURN n',
        ),
    ),
    QueryTemplate(
        "existence",
        "YESNO answer type, two entities and a relationship",
        "E1 có phải là r của E2 không?",
        (
            'START n = node:IDX(key=$ENTITY_KEY_2) MATCH (n)-[:$RELATIONSHIP_LABEL]->(m) WHERE m.key = $ENTITY_KEY_1 RETURN m',
            'START n = node:IDX(key=$ENTITY_KEY_1) MATCH (n)-[:$RELATIONSHIP_LABEL]->(m) WHERE m.key = $ENTITY_KEY_2 RETURN m',
            'START n = node:IDX(key=$ENTITY_KEY_2) WHERE n.$RELATIONSHIP_LABEL = $ENTITY_KEY_1 RETURN n',
        ),
    ),
)


def catalog_as_dicts() -> list[dict]:
    return [
        {
            "id": t.id,
            "shape": t.shape,
            "question_form": t.question_form,
            "skeletons": list(t.skeletons),
            "sort": t.sort,
            "limit": t.limit,
        }
        for t in TEMPLATE_CATALOG
    ]


def _dictionary_first(terms: list[SchemaTerm]) -> list[SchemaTerm]:
    # stable: dictionary-resolved (confidence 1.0) ahead of classifier calls,
    # question order within each class
    return sorted(terms, key=lambda t: 0 if t.confidence >= 1.0 else 1)


def _start(var: str, key: str, index: str) -> StartBinding:
    return StartBinding(var, index, "key", key)


class _Emitter:
    def __init__(self, index: str):
        self.index = index
        self.candidates: list[CandidateQuery] = []

    def emit(self, ast: QueryAst, template: str, substitutions: dict, group: int) -> None:
        self.candidates.append(
            CandidateQuery(
                ast=ast,
                text=render(ast),
                template=template,
                substitutions=substitutions,
                rank=len(self.candidates),
                group=group,
            )
        )


def build_candidates(
    answer_type: AnswerType,
    construction: ConstructionResult,
    index: str = DEFAULT_INDEX,
) -> list[CandidateQuery]:
    """Ordered candidate queries for an analyzed question."""
    entities = construction.entities
    props = construction.properties
    rels = construction.relationships
    if not entities:
        raise NoTemplateError("no template without at least one entity")

    emitter = _Emitter(index)
    if answer_type is AnswerType.YESNO and len(entities) >= 2 and rels:
        _build_existence(emitter, entities, rels)
    elif answer_type is AnswerType.ENTY and rels and not props:
        _build_inverse(emitter, entities, rels)
    elif not props and not rels:
        _build_definition(emitter, entities)
    elif props and not rels:
        _build_property(emitter, entities, props)
    elif rels and not props:
        _build_relationship(emitter, entities, rels)
    else:
        _build_chained(emitter, entities, props, rels)
    return emitter.candidates


def _build_definition(emitter, entities) -> None:
    for group, entity in enumerate(entities):
        ast = QueryAst(
            start=(_start("n", entity.key, emitter.index),),
            returns=(ReturnItem("n", ABSTRACT_PROPERTY),),
        )
        emitter.emit(ast, "definition", {"ENTITY_KEY": entity.key}, group)


def _build_property(emitter, entities, props) -> None:
    template = "property" if len(entities) == 1 else "comparative"
    for group, entity in enumerate(entities):
        ast = QueryAst(
            start=(_start("n", entity.key, emitter.index),),
            returns=tuple(ReturnItem("n", p.graph_name) for p in props),
        )
        emitter.emit(
            ast,
            template,
            {"ENTITY_KEY": entity.key, "PROPERTY_NAME": ",".join(p.graph_name for p in props)},
            group,
        )


def _build_relationship(emitter, entities, rels) -> None:
    template = "relationship" if len(entities) == 1 else "multi-shared"
    for group, entity in enumerate(entities):
        for rel in _dictionary_first(rels):
            subs = {"ENTITY_KEY": entity.key, "RELATIONSHIP_LABEL": rel.graph_name}
            property_variant = QueryAst(
                start=(_start("x", entity.key, emitter.index),),
                returns=(ReturnItem("x", rel.graph_name),),
                distinct=True,
            )
            edge_variant = QueryAst(
                start=(_start("x", entity.key, emitter.index),),
                match=(PathPattern("x", (Hop(rel.graph_name, "m", "out"),)),),
                returns=(ReturnItem("m", None),),
                distinct=True,
            )
            emitter.emit(property_variant, template, subs, group)
            emitter.emit(edge_variant, template, subs, group)


def _build_chained(emitter, entities, props, rels) -> None:
    for group, entity in enumerate(entities):
        ordered = _dictionary_first(rels)
        for rel in ordered:
            ast = QueryAst(
                start=(_start("n", entity.key, emitter.index),),
                match=(PathPattern("n", (Hop(rel.graph_name, "m", "out"),)),),
                returns=tuple(ReturnItem("m", p.graph_name) for p in props),
                distinct=True,
            )
            emitter.emit(
                ast,
                "chained",
                {
                    "ENTITY_KEY": entity.key,
                    "RELATIONSHIP_LABEL": rel.graph_name,
                    "PROPERTY_NAME": ",".join(p.graph_name for p in props),
                },
                group,
            )
        for rel in ordered:
            fallback = QueryAst(
                start=(_start("n", entity.key, emitter.index),),
                returns=(ReturnItem("n", rel.graph_name),),
                distinct=True,
            )
            emitter.emit(
                fallback,
                "chained",
                {"ENTITY_KEY": entity.key, "RELATIONSHIP_LABEL": rel.graph_name},
                group,
            )


def _build_inverse(emitter, entities, rels) -> None:
    for group, entity in enumerate(entities):
        for rel in _dictionary_first(rels):
            subs = {"ENTITY_KEY": entity.key, "RELATIONSHIP_LABEL": rel.graph_name}
            edge_scan = QueryAst(
                match=(PathPattern("n", (Hop(rel.graph_name, "m", "out"),)),),
                where=Comparison(PropertyAccess("m", "key"), "=", entity.key),
                returns=(ReturnItem("n", None),),
            )
            property_scan = QueryAst(
                match=(PathPattern("n"),),
                where=Comparison(PropertyAccess("n", rel.graph_name), "=", entity.key),
                returns=(ReturnItem("n", None),),
            )
            emitter.emit(edge_scan, "inverse", subs, group)
            emitter.emit(property_scan, "inverse", subs, group)


def _build_existence(emitter, entities, rels) -> None:
    first, second = entities[0], entities[1]
    for rel in _dictionary_first(rels):
        subs = {
            "ENTITY_KEY_1": first.key,
            "ENTITY_KEY_2": second.key,
            "RELATIONSHIP_LABEL": rel.graph_name,
        }

        def edge_check(subject_key, object_key):
            return QueryAst(
                start=(_start("n", subject_key, emitter.index),),
                match=(PathPattern("n", (Hop(rel.graph_name, "m", "out"),)),),
                where=Comparison(PropertyAccess("m", "key"), "=", object_key),
                returns=(ReturnItem("m", None),),
            )

        emitter.emit(edge_check(second.key, first.key), "existence", subs, 0)
        emitter.emit(edge_check(first.key, second.key), "existence", subs, 0)
        property_check = QueryAst(
            start=(_start("n", second.key, emitter.index),),
            where=Comparison(PropertyAccess("n", rel.graph_name), "=", first.key),
            returns=(ReturnItem("n", None),),
        )
        emitter.emit(property_check, "existence", subs, 0)


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def answer_from_result(table: ResultTable, answer_type: AnswerType | None = None) -> list[str]:
    """Flatten a result table into short answer strings.

    Whole-node columns yield the node key with underscores replaced by
    spaces; property cells are stringified; null cells are skipped.
    """
    answers: list[str] = []
    node_column = [("." not in name) for name in table.columns]
    for row in table.rows:
        for is_node, cell in zip(node_column, row):
            if cell is None:
                continue
            values = cell if isinstance(cell, list) else [cell]
            for value in values:
                text = format_value(value)
                if is_node:
                    text = text.replace("_", " ")
                answers.append(text)
    return answers
