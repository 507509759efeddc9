import json
from concurrent.futures import ThreadPoolExecutor

import pytest

from vnqa.cypher import parse
from vnqa.engine import execute
from vnqa.builder import answer_from_result
from vnqa.classifier import AnswerType
from vnqa.errors import VnqaError
from vnqa.service import QAService, ServiceConfig, answer_to_json

TABLE_1_QUESTIONS = [
    "Nguyễn Tấn Dũng là ai?",
    "Facebook là gì?",
    "Dân số của Hà Nội bằng bao nhiêu?",
    "Thủ đô của Thái Lan là gì?",
    "Vợ của thủ tướng Nguyễn Tấn Dũng là ai?",
    "Chủ tịch HĐQT tập đoàn FPT là ai?",
    "Tên của vợ vua Trần Thái Tông là gì?",
    "Nơi sinh của chủ tịch UBND TP. Hà Nội ở đâu?",
    "Việt Nam và Thái Lan có thủ đô là gì?",
]


def test_fpt_worked_example(service):
    answer = service.answer("Thành viên chủ chốt của tập đoàn FPT là những ai?")
    assert answer.short_answers == ["Trương Gia Bình", "Bùi Quang Ngọc", "Đỗ Cao Bảo"]
    assert answer.cypher == (
        'START x = node:DBPediaIndex(key="FPT") RETURN DISTINCT x.thànhViênChủChốt'
    )
    assert answer.answer_type == "HUM"


def test_kieu_worked_example_with_long_answer(service):
    answer = service.answer("Tác giả của Truyện Kiều là ai?")
    assert answer.short_answers == ["Nguyễn Du"]
    assert answer.long_answer and answer.long_answer.startswith("Nguyễn Du tên chữ Tố Như")


def test_empty_question_fails_at_segmentation(service):
    answer = service.answer("")
    assert answer.short_answers == []
    assert answer.long_answer is None
    assert answer.trace.failure_stage == "SEGMENT"


def test_unknown_entity_fails_at_execute(service):
    answer = service.answer("Dân số của Atlantis là bao nhiêu?")
    assert answer.short_answers == []
    assert answer.trace.failure_stage == "EXECUTE"


def test_no_entity_fails_at_construct(service):
    answer = service.answer("dân số của vua là bao nhiêu?")
    assert answer.short_answers == []
    assert answer.trace.failure_stage == "CONSTRUCT"


def test_trace_completeness_and_replayability(service):
    answer = service.answer("Thủ đô của Thái Lan là gì?")
    trace = answer.trace
    assert trace.tokens and trace.tagged and trace.keywords
    assert trace.answer_type and trace.distribution
    assert trace.construction and trace.candidates
    assert trace.winning_index >= 0
    assert trace.result is not None
    assert set(trace.elapsed_ms) >= {"SEGMENT", "TAG", "CLASSIFY", "CONSTRUCT", "BUILD", "EXECUTE"}
    assert all(v >= 0 for v in trace.elapsed_ms.values())
    # the winning candidate replays to the same short answers
    winning_text = next(c["text"] for c in trace.candidates if c["rank"] == trace.winning_index)
    table = execute(parse(winning_text), service.graph)
    assert answer_from_result(table) == answer.short_answers


def test_answer_is_stateless(service):
    question = "Dân số và diện tích của Hà Nội là bao nhiêu?"

    def canonical(answer):
        payload = json.loads(answer_to_json(answer))
        payload["trace"]["elapsed_ms"] = {}
        return json.dumps(payload, ensure_ascii=False, sort_keys=True)

    assert canonical(service.answer(question)) == canonical(service.answer(question))


def test_population_paraphrases_agree(service):
    first = service.answer("Dân số của Hà Nội là bao nhiêu?")
    second = service.answer("Hà Nội có dân số bằng bao nhiêu?")
    assert first.trace.candidates[0]["text"] == second.trace.candidates[0]["text"]
    assert first.short_answers == second.short_answers == ["8053663"]


def test_bangkok_paraphrases_agree(service):
    first = service.answer("Bangkok là thủ đô của nước nào?")
    second = service.answer("Nước nào có thủ đô là Bangkok?")
    assert first.trace.candidates[0]["text"] == second.trace.candidates[0]["text"]
    assert first.short_answers == second.short_answers == ["Thái Lan"]


@pytest.mark.parametrize("question", TABLE_1_QUESTIONS)
def test_question_type_catalog_is_covered(service, question):
    answer = service.answer(question)
    assert answer.trace.candidates, question
    assert answer.short_answers, question


def test_yesno_affirmative_and_negative(service):
    assert service.answer("Hà Nội có phải là thủ đô của Việt Nam không?").short_answers == ["có"]
    negative = service.answer("Bangkok có phải là thủ đô của Việt Nam không?")
    assert negative.short_answers == ["không"]
    assert negative.trace.failure_stage is None
    assert negative.cypher  # the executed check is still reported


def test_comparative_question_concatenates_groups(service):
    answer = service.answer("Diện tích và dân số của Hà Nội và Thái Bình bằng bao nhiêu?")
    assert answer.short_answers == ["3358.6", "8053663", "1570.5", "1860447"]
    assert [list(g) for g in answer.trace.group_winners] == [[0, 0], [1, 1]]


def test_concurrent_answering_is_consistent(service):
    questions = TABLE_1_QUESTIONS * 2
    expected = [service.answer(q).short_answers for q in questions]
    with ThreadPoolExecutor(max_workers=6) as pool:
        results = list(pool.map(lambda q: service.answer(q).short_answers, questions))
    assert results == expected


def test_missing_kb_is_an_infrastructure_error(tmp_path):
    config = ServiceConfig.bundled()
    config.kb_path = str(tmp_path / "missing.tsv")
    with pytest.raises(VnqaError):
        QAService(config)


def test_config_file_with_partial_keys(tmp_path, service):
    model_path = tmp_path / "model.json"
    service.model.save(model_path)
    config_path = tmp_path / "config.json"
    config_path.write_text(
        json.dumps({"model_path": str(model_path), "port": 9100}), encoding="utf-8"
    )
    config = ServiceConfig.from_file(config_path)
    assert config.port == 9100
    assert config.model_path == str(model_path)
    # unspecified paths fall back to the bundled fixtures
    assert config.kb_path == ServiceConfig.bundled().kb_path
    assert QAService(config).answer("Thủ đô của Đức là gì?").short_answers == ["Berlin"]


def test_model_file_config_roundtrip(tmp_path, service):
    model_path = tmp_path / "model.json"
    service.model.save(model_path)
    config = ServiceConfig.bundled()
    config.model_path = str(model_path)
    clone = QAService(config)
    question = "Thủ đô của Pháp là gì?"
    assert clone.answer(question).short_answers == service.answer(question).short_answers
