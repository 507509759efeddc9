"""Accuracy evaluation over a gold question/answer/query dataset.

QA accuracy compares normalized answer sets (unanswered counts as
incorrect); query-construction accuracy compares the first candidate
query against the gold query, both passed through parse-render
canonicalization so formatting never decides the verdict.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field

from .cypher import parse, render
from .errors import CypherSyntaxError, EvalError
from .service import QAService


@dataclass(frozen=True)
class EvalRecord:
    question: str
    answers: frozenset[str]
    cypher: str | None = None


@dataclass
class RecordVerdict:
    question: str
    qa_correct: bool
    query_correct: bool | None  # None when the record has no gold query
    predicted: list[str]
    expected: list[str]
    predicted_query: str | None
    failure_stage: str | None

    def to_dict(self) -> dict:
        return self.__dict__.copy()


@dataclass
class EvalReport:
    n: int
    qa_correct: int
    query_n: int
    query_correct: int
    verdicts: list[RecordVerdict] = field(default_factory=list)
    failure_stages: dict[str, int] = field(default_factory=dict)

    @property
    def qa_accuracy(self) -> float:
        return self.qa_correct / self.n if self.n else 0.0

    @property
    def query_accuracy(self) -> float:
        return self.query_correct / self.query_n if self.query_n else 0.0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "qa_correct": self.qa_correct,
            "qa_accuracy": round(self.qa_accuracy, 4),
            "query_n": self.query_n,
            "query_correct": self.query_correct,
            "query_accuracy": round(self.query_accuracy, 4),
            "failure_stages": self.failure_stages,
            "verdicts": [v.to_dict() for v in self.verdicts],
        }

    def table(self) -> str:
        lines = [
            f"{'records':<34}{self.n}",
            f"{'QA accuracy':<34}{self.qa_accuracy:.4f} ({self.qa_correct}/{self.n})",
            f"{'query construction accuracy':<34}"
            f"{self.query_accuracy:.4f} ({self.query_correct}/{self.query_n})",
        ]
        if self.failure_stages:
            histogram = ", ".join(f"{k}={v}" for k, v in sorted(self.failure_stages.items()))
            lines.append(f"{'failure stages':<34}{histogram}")
        return "\n".join(lines)


def normalize_answer(text: str) -> str:
    """NFC, casefold, underscores to spaces, canonical numbers."""
    text = unicodedata.normalize("NFC", str(text)).casefold().replace("_", " ")
    text = " ".join(text.split())
    try:
        number = float(text)
    except ValueError:
        return text
    if number == int(number):
        return str(int(number))
    return repr(number)


def canonical_query(text: str) -> str | None:
    try:
        return render(parse(text))
    except (CypherSyntaxError, EvalError):
        return None


def load_dataset(path) -> list[EvalRecord]:
    """JSON-lines records ``{"q": …, "answers": […], "cypher": …}``."""
    records = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            entry = json.loads(line)
            question = entry["q"]
            answers = frozenset(str(a) for a in entry["answers"])
            if not question or not answers:
                raise ValueError(f"{path}:{lineno}: empty question or answer set")
            records.append(EvalRecord(question, answers, entry.get("cypher")))
    return records


def evaluate(dataset: list[EvalRecord], service: QAService, strict: bool = True) -> EvalReport:
    """Score a dataset; ``strict`` demands answer-set equality, otherwise
    every gold answer must be among the predictions."""
    report = EvalReport(n=len(dataset), qa_correct=0, query_n=0, query_correct=0)
    for record in dataset:
        answer = service.answer(record.question)
        predicted = {normalize_answer(a) for a in answer.short_answers}
        expected = {normalize_answer(a) for a in record.answers}
        if strict:
            qa_ok = bool(predicted) and predicted == expected
        else:
            qa_ok = bool(predicted) and expected <= predicted
        report.qa_correct += qa_ok

        query_ok: bool | None = None
        first = None
        if record.cypher is not None:
            report.query_n += 1
            candidates = answer.trace.candidates or []
            first = candidates[0]["text"] if candidates else None
            gold = canonical_query(record.cypher)
            mine = canonical_query(first) if first else None
            query_ok = gold is not None and mine is not None and gold == mine
            report.query_correct += query_ok

        stage = answer.trace.failure_stage
        if not qa_ok and stage:
            report.failure_stages[stage] = report.failure_stages.get(stage, 0) + 1
        report.verdicts.append(
            RecordVerdict(
                question=record.question,
                qa_correct=qa_ok,
                query_correct=query_ok,
                predicted=sorted(predicted),
                expected=sorted(expected),
                predicted_query=first,
                failure_stage=stage,
            )
        )
    return report
