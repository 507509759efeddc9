import pytest

from vnqa.builder import (
    ABSTRACT_PROPERTY,
    answer_from_result,
    build_candidates,
    catalog_as_dicts,
)
from vnqa.classifier import AnswerType
from vnqa.construct import ConstructionResult, EntityMention, Role, SchemaTerm
from vnqa.cypher import parse
from vnqa.engine import ResultTable
from vnqa.errors import NoTemplateError


def _entity(key):
    return EntityMention(key, key)


def _term(surface, role, name=None, confidence=1.0):
    from vnqa.construct import to_graph_name

    return SchemaTerm(surface, role, name or to_graph_name(surface), confidence)


def test_fpt_candidate_one_matches_worked_example():
    construction = ConstructionResult(
        entities=[_entity("FPT")],
        relationships=[_term("thành_viên_chủ_chốt", Role.RELATIONSHIP)],
    )
    candidates = build_candidates(AnswerType.HUM, construction)
    assert candidates[0].text == (
        'START x = node:DBPediaIndex(key="FPT") RETURN DISTINCT x.thànhViênChủChốt'
    )
    assert candidates[1].text == (
        'START x = node:DBPediaIndex(key="FPT") MATCH (x)-[:thànhViênChủChốt]->(m) '
        "RETURN DISTINCT m"
    )


def test_hanoi_two_property_candidate():
    construction = ConstructionResult(
        entities=[_entity("Hà_Nội")],
        properties=[_term("dân_số", Role.PROPERTY), _term("diện_tích", Role.PROPERTY)],
    )
    (candidate,) = build_candidates(AnswerType.NUM, construction)
    assert candidate.text == 'START n = node:DBPediaIndex(key="Hà_Nội") RETURN n.dânSố, n.diệnTích'


def test_definition_template_uses_abstract():
    (candidate,) = build_candidates(
        AnswerType.DEF, ConstructionResult(entities=[_entity("Facebook")])
    )
    assert candidate.text == 'START n = node:DBPediaIndex(key="Facebook") RETURN n.abstract'
    assert ABSTRACT_PROPERTY in candidate.text


def test_no_entities_no_template():
    with pytest.raises(NoTemplateError):
        build_candidates(AnswerType.ENTY, ConstructionResult())


def test_chained_template_with_fallback():
    construction = ConstructionResult(
        entities=[_entity("Trần_Thái_Tông")],
        properties=[_term("tên", Role.PROPERTY)],
        relationships=[_term("vợ", Role.RELATIONSHIP)],
    )
    candidates = build_candidates(AnswerType.HUM, construction)
    assert candidates[0].text == (
        'START n = node:DBPediaIndex(key="Trần_Thái_Tông") MATCH (n)-[:vợ]->(m) '
        "RETURN DISTINCT m.tên"
    )
    assert candidates[1].text == (
        'START n = node:DBPediaIndex(key="Trần_Thái_Tông") RETURN DISTINCT n.vợ'
    )


def test_inverse_template_for_enty():
    construction = ConstructionResult(
        entities=[_entity("Bangkok")],
        relationships=[_term("thủ_đô", Role.RELATIONSHIP)],
    )
    candidates = build_candidates(AnswerType.ENTY, construction)
    assert candidates[0].text == 'MATCH (n)-[:thủĐô]->(m) WHERE m.key = "Bangkok" RETURN n'
    assert candidates[1].text == 'MATCH (n) WHERE n.thủĐô = "Bangkok" RETURN n'


def test_existence_template_for_yesno():
    construction = ConstructionResult(
        entities=[_entity("Hà_Nội"), _entity("Việt_Nam")],
        relationships=[_term("thủ_đô", Role.RELATIONSHIP)],
    )
    candidates = build_candidates(AnswerType.YESNO, construction)
    assert candidates[0].text == (
        'START n = node:DBPediaIndex(key="Việt_Nam") MATCH (n)-[:thủĐô]->(m) '
        'WHERE m.key = "Hà_Nội" RETURN m'
    )
    assert len(candidates) == 3


def test_multi_entity_templates_emit_groups():
    construction = ConstructionResult(
        entities=[_entity("Việt_Nam"), _entity("Thái_Lan")],
        relationships=[_term("thủ_đô", Role.RELATIONSHIP)],
    )
    candidates = build_candidates(AnswerType.DEF, construction)
    assert [c.group for c in candidates] == [0, 0, 1, 1]
    assert 'key="Việt_Nam"' in candidates[0].text
    assert 'key="Thái_Lan"' in candidates[2].text


def test_dictionary_resolved_terms_rank_before_classifier_terms():
    construction = ConstructionResult(
        entities=[_entity("X")],
        relationships=[
            _term("mơ_hồ", Role.RELATIONSHIP, confidence=0.6),
            _term("thủ_đô", Role.RELATIONSHIP, confidence=1.0),
        ],
    )
    candidates = build_candidates(AnswerType.DEF, construction)
    assert "thủĐô" in candidates[0].text
    assert "mơHồ" in candidates[2].text


def test_every_candidate_reparses_to_its_ast():
    constructions = [
        (AnswerType.HUM, ConstructionResult(entities=[_entity("FPT")],
                                            relationships=[_term("vợ", Role.RELATIONSHIP)])),
        (AnswerType.NUM, ConstructionResult(entities=[_entity("Hà_Nội")],
                                            properties=[_term("dân_số", Role.PROPERTY)])),
        (AnswerType.ENTY, ConstructionResult(entities=[_entity("Bangkok")],
                                             relationships=[_term("thủ_đô", Role.RELATIONSHIP)])),
        (AnswerType.YESNO, ConstructionResult(entities=[_entity("A"), _entity("B")],
                                              relationships=[_term("thủ_đô", Role.RELATIONSHIP)])),
        (AnswerType.DEF, ConstructionResult(entities=[_entity("Facebook")])),
        (AnswerType.LOC, ConstructionResult(entities=[_entity("Hà_Nội")],
                                            properties=[_term("tên", Role.PROPERTY)],
                                            relationships=[_term("vợ", Role.RELATIONSHIP)])),
    ]
    for answer_type, construction in constructions:
        candidates = build_candidates(answer_type, construction)
        assert [c.rank for c in candidates] == list(range(len(candidates)))
        again = build_candidates(answer_type, construction)
        assert [c.text for c in candidates] == [c.text for c in again]
        for candidate in candidates:
            assert parse(candidate.text) == candidate.ast


def test_answer_from_result_node_columns_replace_underscores():
    table = ResultTable(columns=["m"], rows=[["Nguyễn_Du"]])
    assert answer_from_result(table) == ["Nguyễn Du"]


def test_answer_from_result_stringifies_and_skips_nulls():
    table = ResultTable(columns=["n.dânSố", "n.q"], rows=[[8053663, None], [3358.6, "x_y"]])
    assert answer_from_result(table) == ["8053663", "3358.6", "x_y"]
    assert answer_from_result(ResultTable(columns=["n"], rows=[])) == []


def test_catalog_exposes_unpopulated_sort_and_limit_slots():
    catalog = catalog_as_dicts()
    assert {t["id"] for t in catalog} >= {
        "definition", "property", "relationship", "chained",
        "multi-shared", "comparative", "inverse", "existence",
    }
    assert all(t["sort"] is None and t["limit"] is None for t in catalog)
