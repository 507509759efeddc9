"""End-to-end question answering: segmentation, tagging, classification,
entity construction, candidate queries, execution and answer assembly.

A QAService owns an immutable KB/model snapshot built at startup;
``answer`` never raises for well-formed text, it degrades to an empty
answer carrying the failure stage in the trace.
"""

from __future__ import annotations

import json
import time
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from . import builder, construct as construction_mod, nlp
from .classifier import AnswerType, MaxentModel, TrainConfig, extract_features, train
from .construct import RoleClassifier, RoleDictionary, train_role_classifier_from_graph
from .engine import execute_all
from .errors import EvalError, NoEntityError, NoTemplateError, VnqaError
from .graph import PropertyGraph
from .resources import (
    EVAL_DATASET,
    LEXICON,
    MINI_KB,
    QUESTIONS,
    ROLES,
    STOPWORDS,
    data_path,
)

STAGES = ("SEGMENT", "TAG", "CLASSIFY", "CONSTRUCT", "BUILD", "EXECUTE")

YES, NO = "có", "không"


@dataclass
class ServiceConfig:
    kb_path: str
    lexicon_path: str
    stoplist_path: str
    roles_path: str
    corpus_path: str | None = None
    model_path: str | None = None
    port: int = 8000

    @classmethod
    def bundled(cls) -> "ServiceConfig":
        return cls(
            kb_path=str(data_path(MINI_KB)),
            lexicon_path=str(data_path(LEXICON)),
            stoplist_path=str(data_path(STOPWORDS)),
            roles_path=str(data_path(ROLES)),
            corpus_path=str(data_path(QUESTIONS)),
        )

    @classmethod
    def from_file(cls, path) -> "ServiceConfig":
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
        base = cls.bundled()
        return cls(
            kb_path=raw.get("kb_path", base.kb_path),
            lexicon_path=raw.get("lexicon_path", base.lexicon_path),
            stoplist_path=raw.get("stoplist_path", base.stoplist_path),
            roles_path=raw.get("roles_path", base.roles_path),
            corpus_path=raw.get("corpus_path", base.corpus_path),
            model_path=raw.get("model_path"),
            port=int(raw.get("port", 8000)),
        )

    def default_eval_dataset(self) -> str:
        return str(data_path(EVAL_DATASET))


@dataclass
class PipelineTrace:
    tokens: list[str] | None = None
    tagged: list[list[str]] | None = None
    keywords: list[list[str]] | None = None
    answer_type: str | None = None
    distribution: dict[str, float] | None = None
    construction: dict | None = None
    candidates: list[dict] | None = None
    winning_index: int = -1
    group_winners: list[list[int]] = field(default_factory=list)
    result: dict | None = None
    candidate_errors: list[list] = field(default_factory=list)
    elapsed_ms: dict[str, float] = field(default_factory=dict)
    failure_stage: str | None = None

    def to_dict(self) -> dict:
        return {
            "tokens": self.tokens,
            "tagged": self.tagged,
            "keywords": self.keywords,
            "answer_type": self.answer_type,
            "distribution": self.distribution,
            "construction": self.construction,
            "candidates": self.candidates,
            "winning_index": self.winning_index,
            "group_winners": self.group_winners,
            "result": self.result,
            "candidate_errors": self.candidate_errors,
            "elapsed_ms": self.elapsed_ms,
            "failure_stage": self.failure_stage,
        }


@dataclass
class Answer:
    short_answers: list[str]
    long_answer: str | None
    answer_type: str | None
    cypher: str | None
    trace: PipelineTrace

    def to_dict(self) -> dict:
        return {
            "short_answers": self.short_answers,
            "long_answer": self.long_answer,
            "answer_type": self.answer_type,
            "cypher": self.cypher,
            "trace": self.trace.to_dict(),
        }


def load_corpus(path) -> list[tuple[str, AnswerType]]:
    """``LABEL<TAB>question`` lines."""
    corpus = []
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            label, _, question = line.partition("\t")
            corpus.append((question, AnswerType(label)))
    return corpus


def load_graph(path) -> PropertyGraph:
    """Triple dump (.tsv) or JSON snapshot (.json)."""
    graph = PropertyGraph()
    if str(path).endswith(".json"):
        with open(path, encoding="utf-8") as handle:
            return PropertyGraph.from_dict(json.load(handle))
    graph.load_triples(path)
    return graph


class QAService:
    def __init__(self, config: ServiceConfig | None = None):
        self.config = config or ServiceConfig.bundled()
        if not Path(self.config.kb_path).exists():
            raise VnqaError(f"knowledge base not found: {self.config.kb_path}")
        self.graph = load_graph(self.config.kb_path)
        self.lexicon = nlp.Lexicon.load(self.config.lexicon_path)
        self.stoplist = nlp.load_stoplist(self.config.stoplist_path)
        self.roles = RoleDictionary.load(self.config.roles_path)
        self.model = self._load_or_train_model()
        self.role_classifier: RoleClassifier = train_role_classifier_from_graph(self.graph)

    def _load_or_train_model(self) -> MaxentModel:
        if self.config.model_path:
            return MaxentModel.load(self.config.model_path)
        if not self.config.corpus_path:
            raise VnqaError("service needs either a model file or a training corpus")
        return train_model_from_corpus(
            self.config.corpus_path, self.lexicon
        )

    def stats(self):
        return self.graph.stats()

    # -- the pipeline ----------------------------------------------------

    def answer(self, question: str) -> Answer:
        trace = PipelineTrace()
        total_start = time.perf_counter()

        def timed(stage):
            start = time.perf_counter()

            def done():
                trace.elapsed_ms[stage] = (time.perf_counter() - start) * 1000.0

            return done

        def failed(stage: str) -> Answer:
            trace.failure_stage = stage
            trace.elapsed_ms["total"] = (time.perf_counter() - total_start) * 1000.0
            return Answer([], None, trace.answer_type, None, trace)

        done = timed("SEGMENT")
        tokens = nlp.segment(question or "", self.lexicon)
        done()
        trace.tokens = [t.surface for t in tokens]
        if not tokens:
            return failed("SEGMENT")

        done = timed("TAG")
        tagged = nlp.tag(tokens, self.lexicon)
        keywords = nlp.extract_keywords(tagged, self.stoplist)
        done()
        trace.tagged = [[tt.surface, tt.tag.value] for tt in tagged]
        trace.keywords = [[tt.surface, tt.tag.value] for tt in keywords]

        done = timed("CLASSIFY")
        answer_type, distribution = self.model.predict(extract_features(tagged))
        done()
        trace.answer_type = answer_type.value
        trace.distribution = {label.value: prob for label, prob in distribution.items()}

        done = timed("CONSTRUCT")
        try:
            parts = construction_mod.construct(
                keywords, self.roles, self.role_classifier, self.graph
            )
        except NoEntityError:
            done()
            return failed("CONSTRUCT")
        done()
        trace.construction = {
            "entities": [e.key for e in parts.entities],
            "properties": [_term_dict(t) for t in parts.properties],
            "relationships": [_term_dict(t) for t in parts.relationships],
            "dropped": parts.dropped,
        }

        done = timed("BUILD")
        try:
            candidates = builder.build_candidates(
                answer_type, parts, index=self.graph.default_index
            )
        except NoTemplateError:
            done()
            return failed("BUILD")
        done()
        trace.candidates = [
            {"rank": c.rank, "group": c.group, "template": c.template, "text": c.text}
            for c in candidates
        ]

        done = timed("EXECUTE")
        answers: list[str] = []
        winning_text = None
        groups: list[int] = []
        for candidate in candidates:
            if candidate.group not in groups:
                groups.append(candidate.group)
        for group in groups:
            members = [c for c in candidates if c.group == group]
            try:
                outcome = execute_all([c.ast for c in members], self.graph)
            except EvalError as exc:
                trace.candidate_errors.append([members[0].rank, str(exc)])
                continue
            for offset, message in outcome.errors:
                trace.candidate_errors.append([members[offset].rank, message])
            if outcome.winner < 0:
                continue
            winner = members[outcome.winner]
            trace.group_winners.append([group, winner.rank])
            if winning_text is None:
                winning_text = winner.text
                trace.winning_index = winner.rank
                trace.result = outcome.table.to_dict()
            answers.extend(builder.answer_from_result(outcome.table, answer_type))
        done()

        if answer_type is AnswerType.YESNO:
            short = [YES] if answers else [NO]
            cypher = winning_text or candidates[0].text
        else:
            short = answers
            cypher = winning_text
            if not short:
                trace.failure_stage = "EXECUTE"
        long_answer = self._long_answer(short, answer_type)
        trace.elapsed_ms["total"] = (time.perf_counter() - total_start) * 1000.0
        return Answer(short, long_answer, answer_type.value, cypher, trace)

    def _long_answer(self, short: list[str], answer_type: AnswerType) -> str | None:
        if len(short) != 1 or answer_type is AnswerType.YESNO:
            return None
        node = self.graph.node_by_key(short[0].replace(" ", "_"))
        if node is None:
            return None
        abstract = node.properties.get(builder.ABSTRACT_PROPERTY)
        if isinstance(abstract, str):
            return abstract
        return None


def train_model_from_corpus(
    corpus_path,
    lexicon: nlp.Lexicon,
    config: TrainConfig | None = None,
) -> MaxentModel:
    corpus = load_corpus(corpus_path)
    dataset = [
        (extract_features(nlp.tag(nlp.segment(question, lexicon), lexicon)), label)
        for question, label in corpus
    ]
    return train(dataset, config)


def _term_dict(term) -> dict:
    return {
        "surface": term.surface,
        "graph_name": term.graph_name,
        "confidence": round(term.confidence, 6),
    }


def answer_to_json(answer: Answer) -> str:
    """Canonical UTF-8 JSON used by both the CLI and the HTTP API."""
    return json.dumps(
        _normalize(answer.to_dict()), ensure_ascii=False, separators=(", ", ": ")
    )


def _normalize(value):
    if isinstance(value, str):
        return unicodedata.normalize("NFC", value)
    if isinstance(value, dict):
        return {_normalize(k): _normalize(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_normalize(v) for v in value]
    return value
