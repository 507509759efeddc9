"""Vietnamese factoid question answering over an in-memory property graph."""

from .classifier import AnswerType
from .engine import ResultTable, execute, execute_all
from .graph import PropertyGraph
from .service import Answer, QAService, ServiceConfig

__all__ = [
    "Answer",
    "AnswerType",
    "PropertyGraph",
    "QAService",
    "ResultTable",
    "ServiceConfig",
    "execute",
    "execute_all",
]
